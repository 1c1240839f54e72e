//! Brute-force Margolis homology of a graded space with a nilpotent operator.
//!
//! Per degree, the operator is a bit matrix from the monomial basis of that
//! degree to the basis of the target degree; homology is kernel rank minus
//! image rank, with canonical representatives obtained by reducing kernel
//! vectors against the echelonized image. This module is the ground truth the
//! structural theorems are checked against.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use alloc::collections::BTreeSet;

use crate::action::OperatorId;
use crate::matrix::{EchelonForm, F2Matrix};

/// A graded F2 vector space with a monomial basis per degree and an operator
/// action expressed on monomials (as an XOR set of basis monomials).
pub trait GradedSpace {
    type Mono: Clone + Ord + core::fmt::Display;

    fn label(&self) -> String;

    /// Whether the operator raises internal degree (cohomological grading,
    /// e.g. the polynomial algebra of `BZ/2^k`) instead of lowering it.
    fn raises_degree(&self) -> bool {
        false
    }

    fn supports(&self, _op: OperatorId) -> bool {
        true
    }

    /// Basis monomials of exactly this degree, in canonical order.
    fn basis(&self, degree: u32) -> Vec<Self::Mono>;

    /// The operator applied to one basis monomial, already collapsed mod 2.
    fn act(&self, op: OperatorId, m: &Self::Mono) -> BTreeSet<Self::Mono>;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    UnsupportedOperator { space: String, op: OperatorId },
    NotAdmissible { space: String, source: String, produced: String },
    DegreeOutOfRange { degree: u32, valid_through: u32 },
    NotNilpotent { detail: String },
    GradingViolation { detail: String },
}

impl core::fmt::Display for OracleError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            OracleError::UnsupportedOperator { space, op } => {
                write!(f, "operator {} is not defined on space {}", op, space)
            }
            OracleError::NotAdmissible { space, source, produced } => write!(
                f,
                "action on {} produced {} which is not admissible in {}",
                source, produced, space
            ),
            OracleError::DegreeOutOfRange { degree, valid_through } => write!(
                f,
                "degree {} exceeds valid_through {}; raise max_degree",
                degree, valid_through
            ),
            OracleError::NotNilpotent { detail } => write!(f, "operator is not nilpotent: {}", detail),
            OracleError::GradingViolation { detail } => write!(f, "grading violation: {}", detail),
        }
    }
}

/// Per-degree matrices of one operator on one space, truncated at
/// `max_degree`.
pub struct GradedOperator<S: GradedSpace> {
    space: S,
    op: OperatorId,
    max_degree: u32,
    bases: Vec<Vec<S::Mono>>,
    // mats[d]: rows = |basis d|, cols = |basis target(d)|; None when the
    // target degree is beyond the truncation (raising operators only).
    mats: Vec<Option<F2Matrix>>,
}

/// Typed homology data at one degree.
#[derive(Debug, Clone)]
pub struct DegreeHomology<M> {
    pub degree: u32,
    pub basis_dim: usize,
    pub kernel_dim: usize,
    pub image_dim: usize,
    pub homology_dim: usize,
    /// Canonical representatives, each a sorted XOR list of basis monomials.
    pub representatives: Vec<Vec<M>>,
}

/// Rendered per-degree summary used by reports and the CLI.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSummary {
    pub d: u32,
    pub basis: usize,
    pub ker: usize,
    pub im: usize,
    pub h: usize,
    pub reps: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyReport {
    pub space: String,
    pub operator: OperatorId,
    pub max_degree: u32,
    pub valid_through: u32,
    pub degrees: Vec<DegreeSummary>,
}

impl HomologyReport {
    pub fn dim_at(&self, d: u32) -> Option<usize> {
        self.degrees.iter().find(|x| x.d == d).map(|x| x.h)
    }
}

/// Populate the per-degree matrices by acting on every basis monomial and
/// expanding in the target basis. Fails if the action leaves the space.
pub fn build_operator<S: GradedSpace>(
    space: S,
    op: OperatorId,
    max_degree: u32,
) -> Result<GradedOperator<S>, OracleError> {
    if !space.supports(op) {
        return Err(OracleError::UnsupportedOperator {
            space: space.label(),
            op,
        });
    }
    let bases: Vec<Vec<S::Mono>> = (0..=max_degree).map(|d| space.basis(d)).collect();
    let mut mats = Vec::with_capacity(bases.len());
    let delta = op.degree() as i64;
    for d in 0..=max_degree as i64 {
        let target = if space.raises_degree() { d + delta } else { d - delta };
        if target > max_degree as i64 {
            mats.push(None);
            continue;
        }
        let source_basis = &bases[d as usize];
        let target_basis: &[S::Mono] = if target < 0 { &[] } else { &bases[target as usize] };
        let mut mat = F2Matrix::zero(source_basis.len(), target_basis.len());
        for (r, m) in source_basis.iter().enumerate() {
            for t in space.act(op, m) {
                match target_basis.binary_search(&t) {
                    Ok(c) => {
                        // XOR semantics: act() already collapsed duplicates
                        mat.set(r, c, true);
                    }
                    Err(_) => {
                        return Err(OracleError::NotAdmissible {
                            space: space.label(),
                            source: m.to_string(),
                            produced: t.to_string(),
                        });
                    }
                }
            }
        }
        mats.push(Some(mat));
    }
    Ok(GradedOperator {
        space,
        op,
        max_degree,
        bases,
        mats,
    })
}

impl<S: GradedSpace> GradedOperator<S> {
    pub fn space(&self) -> &S {
        &self.space
    }

    pub fn operator(&self) -> OperatorId {
        self.op
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Image into degree d needs sources at distance `op.degree()` on the far
    /// side of the truncation, so the report is only trustworthy through here.
    /// Saturates at 0: with `max_degree` below the operator degree, degree 0
    /// stays queryable and treats the missing source range as empty.
    pub fn valid_through(&self) -> u32 {
        self.max_degree.saturating_sub(self.op.degree())
    }

    pub fn basis(&self, degree: u32) -> &[S::Mono] {
        &self.bases[degree as usize]
    }

    pub fn matrix(&self, degree: u32) -> Option<&F2Matrix> {
        self.mats[degree as usize].as_ref()
    }

    /// The degree whose sources map *into* `d`.
    fn image_source(&self, d: u32) -> Option<u32> {
        let delta = self.op.degree() as i64;
        let s = if self.space.raises_degree() {
            d as i64 - delta
        } else {
            d as i64 + delta
        };
        (0..=self.max_degree as i64).contains(&s).then_some(s as u32)
    }

    /// Kernel/image/homology at one degree; errors past `valid_through` —
    /// silent truncation bias is the main correctness trap here.
    pub fn homology_degree(&self, d: u32) -> Result<DegreeHomology<S::Mono>, OracleError> {
        if d > self.valid_through() {
            return Err(OracleError::DegreeOutOfRange {
                degree: d,
                valid_through: self.valid_through(),
            });
        }
        let mat = self.mats[d as usize]
            .as_ref()
            .expect("matrix exists for all degrees <= valid_through");
        let kernel = mat.row_combination_kernel();
        let image = match self.image_source(d) {
            Some(s) => {
                let src = self.mats[s as usize]
                    .as_ref()
                    .expect("image source within truncation");
                EchelonForm::new(src.clone())
            }
            None => EchelonForm::new(F2Matrix::zero(0, self.bases[d as usize].len())),
        };
        let kernel_dim = kernel.rows();
        let image_dim = image.rank();
        // reduce kernel vectors mod the image, then re-echelonize for a
        // canonical representative set
        let n = self.bases[d as usize].len();
        let mut reduced = F2Matrix::zero(0, n);
        for r in 0..kernel.rows() {
            let mut v = kernel.row(r).to_vec();
            image.reduce(&mut v);
            reduced.push_row(&v);
        }
        reduced.rref();
        let mut representatives = Vec::new();
        for r in 0..reduced.rows() {
            if reduced.row_is_zero(r) {
                continue;
            }
            let monos: Vec<S::Mono> = (0..n)
                .filter(|&c| reduced.get(r, c))
                .map(|c| self.bases[d as usize][c].clone())
                .collect();
            representatives.push(monos);
        }
        let homology_dim = kernel_dim - image_dim;
        debug_assert_eq!(representatives.len(), homology_dim);
        Ok(DegreeHomology {
            degree: d,
            basis_dim: n,
            kernel_dim,
            image_dim,
            homology_dim,
            representatives,
        })
    }

    /// Full report over all valid degrees.
    pub fn homology(&self) -> HomologyReport {
        let degrees = (0..=self.valid_through())
            .map(|d| {
                let h = self
                    .homology_degree(d)
                    .expect("all degrees <= valid_through are computable");
                summarize(&h)
            })
            .collect();
        HomologyReport {
            space: self.space.label(),
            operator: self.op,
            max_degree: self.max_degree,
            valid_through: self.valid_through(),
            degrees,
        }
    }

    /// Check `M_{target} . M_d = 0` wherever both matrices exist.
    pub fn verify_nilpotent(&self) -> bool {
        let delta = self.op.degree() as i64;
        for d in 0..=self.max_degree as i64 {
            let target = if self.space.raises_degree() { d + delta } else { d - delta };
            if !(0..=self.max_degree as i64).contains(&target) {
                continue;
            }
            let (Some(first), Some(second)) =
                (&self.mats[d as usize], &self.mats[target as usize])
            else {
                continue;
            };
            if !first.multiply(second).is_zero() {
                return false;
            }
        }
        true
    }
}

pub fn summarize<M: core::fmt::Display>(h: &DegreeHomology<M>) -> DegreeSummary {
    DegreeSummary {
        d: h.degree,
        basis: h.basis_dim,
        ker: h.kernel_dim,
        im: h.image_dim,
        h: h.homology_dim,
        reps: h.representatives.iter().map(|r| render_sum(r)).collect(),
    }
}

/// Render an XOR list of monomials as a sum, in basis order.
pub fn render_sum<M: core::fmt::Display>(monos: &[M]) -> String {
    if monos.is_empty() {
        return String::from("0");
    }
    let mut out = String::new();
    for (k, m) in monos.iter().enumerate() {
        if k > 0 {
            out.push_str(" + ");
        }
        out.push_str(&format!("{}", m));
    }
    out
}

/// An explicit finite-dimensional module over `Lambda(Q1, P21)`: a named
/// basis, a grade per basis element (reduced length for the `M_J` family),
/// and one matrix per operator with rows mapping basis elements to their
/// images.
pub struct FiniteModule {
    pub label: String,
    pub names: Vec<String>,
    pub grades: Vec<u32>,
    pub q1: F2Matrix,
    pub p21: F2Matrix,
}

#[derive(Debug, Clone)]
pub struct GradeHomology {
    pub grade: u32,
    pub basis_dim: usize,
    pub kernel_dim: usize,
    pub image_dim: usize,
    pub homology_dim: usize,
    /// Representatives as XOR lists of basis indices.
    pub representatives: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct FiniteHomology {
    pub label: String,
    pub operator: OperatorId,
    pub total_dim: usize,
    pub grades: Vec<GradeHomology>,
}

impl FiniteHomology {
    pub fn dim_at_grade(&self, grade: u32) -> usize {
        self.grades
            .iter()
            .find(|g| g.grade == grade)
            .map(|g| g.homology_dim)
            .unwrap_or(0)
    }
}

/// Exact homology of a finite module with respect to `Q1` or `P21`; no
/// truncation caveat. Rejects non-nilpotent matrices and matrices that do not
/// lower the grade by the operator's step (1 for Q1, 2 for P21).
pub fn finite_module_homology(
    module: &FiniteModule,
    op: OperatorId,
) -> Result<FiniteHomology, OracleError> {
    let (mat, step) = match op {
        OperatorId::Q1 => (&module.q1, 1u32),
        OperatorId::P21 => (&module.p21, 2u32),
        other => {
            return Err(OracleError::UnsupportedOperator {
                space: module.label.clone(),
                op: other,
            })
        }
    };
    let n = module.names.len();
    assert_eq!(mat.rows(), n);
    assert_eq!(mat.cols(), n);
    if !mat.multiply(mat).is_zero() {
        return Err(OracleError::NotNilpotent {
            detail: format!("{} on {}", op, module.label),
        });
    }
    for r in 0..n {
        for c in 0..n {
            if mat.get(r, c) && module.grades[r] != module.grades[c] + step {
                return Err(OracleError::GradingViolation {
                    detail: format!(
                        "{}: {} -> {} is not a drop by {}",
                        module.label, module.names[r], module.names[c], step
                    ),
                });
            }
        }
    }

    let top = module.grades.iter().copied().max().unwrap_or(0);
    let by_grade: Vec<Vec<usize>> = (0..=top)
        .map(|g| (0..n).filter(|&i| module.grades[i] == g).collect())
        .collect();

    // block of the operator from grade g, rows indexed by by_grade[g]
    let block = |g: i64| -> F2Matrix {
        if !(0..=top as i64).contains(&g) {
            return F2Matrix::zero(0, 0);
        }
        let sources = &by_grade[g as usize];
        let targets: &[usize] = if g - step as i64 >= 0 {
            &by_grade[(g - step as i64) as usize]
        } else {
            &[]
        };
        let mut b = F2Matrix::zero(sources.len(), targets.len());
        for (r, &src) in sources.iter().enumerate() {
            for (c, &tgt) in targets.iter().enumerate() {
                if mat.get(src, tgt) {
                    b.set(r, c, true);
                }
            }
        }
        b
    };

    let mut grades = Vec::new();
    let mut total = 0;
    for g in 0..=top {
        let own = block(g as i64);
        let kernel = own.row_combination_kernel();
        let image = EchelonForm::new(block(g as i64 + step as i64));
        let mut reduced = F2Matrix::zero(0, by_grade[g as usize].len());
        for r in 0..kernel.rows() {
            let mut v = kernel.row(r).to_vec();
            image.reduce(&mut v);
            reduced.push_row(&v);
        }
        reduced.rref();
        let mut representatives = Vec::new();
        for r in 0..reduced.rows() {
            if reduced.row_is_zero(r) {
                continue;
            }
            representatives.push(
                (0..by_grade[g as usize].len())
                    .filter(|&c| reduced.get(r, c))
                    .map(|c| by_grade[g as usize][c])
                    .collect(),
            );
        }
        let h = kernel.rows() - image.rank();
        debug_assert_eq!(representatives.len(), h);
        total += h;
        grades.push(GradeHomology {
            grade: g,
            basis_dim: by_grade[g as usize].len(),
            kernel_dim: kernel.rows(),
            image_dim: image.rank(),
            homology_dim: h,
            representatives,
        });
    }
    Ok(FiniteHomology {
        label: module.label.clone(),
        operator: op,
        total_dim: total,
        grades,
    })
}

/// Convert a finite homology into the common report shape (degrees are
/// grades, i.e. reduced lengths, for the `M_J` family).
pub fn finite_report(module: &FiniteModule, h: &FiniteHomology) -> HomologyReport {
    let top = module.grades.iter().copied().max().unwrap_or(0);
    HomologyReport {
        space: h.label.clone(),
        operator: h.operator,
        max_degree: top,
        valid_through: top,
        degrees: h
            .grades
            .iter()
            .map(|g| DegreeSummary {
                d: g.grade,
                basis: g.basis_dim,
                ker: g.kernel_dim,
                im: g.image_dim,
                h: g.homology_dim,
                reps: g
                    .representatives
                    .iter()
                    .map(|idxs| {
                        render_sum(
                            &idxs
                                .iter()
                                .map(|&i| module.names[i].clone())
                                .collect::<Vec<_>>(),
                        )
                    })
                    .collect(),
            })
            .collect(),
    }
}

/// The zeta-monomial spaces as graded oracle inputs.
pub struct ZetaSpace(pub crate::f2::SpaceDescriptor);

impl GradedSpace for ZetaSpace {
    type Mono = crate::f2::ZetaMonomial;

    fn label(&self) -> String {
        self.0.label()
    }

    fn basis(&self, degree: u32) -> Vec<Self::Mono> {
        crate::f2::enumerate_basis(self.0, degree)
    }

    fn act(&self, op: OperatorId, m: &Self::Mono) -> BTreeSet<Self::Mono> {
        let p = crate::f2::F2Poly::from_monomial(m.clone());
        crate::action::act(op, &p).terms().cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2::SpaceDescriptor;

    #[test]
    fn degree_zero_block_of_p21_on_t() {
        let gop = build_operator(ZetaSpace(SpaceDescriptor::T), OperatorId::P21, 0).unwrap();
        let m = gop.matrix(0).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 0));
        // valid_through saturates at 0; degree 0 homology is 1
        let h = gop.homology_degree(0).unwrap();
        assert_eq!(h.homology_dim, 1);
    }

    #[test]
    fn q0_homology_matches_closed_form() {
        let gop = build_operator(ZetaSpace(SpaceDescriptor::T), OperatorId::Q0, 24).unwrap();
        assert!(gop.verify_nilpotent());
        let report = gop.homology();
        // F2[z1^8, z2^4]: dims by generating function over degrees 8 and 12
        for s in &report.degrees {
            let expect = (0..=s.d / 8)
                .filter(|&a| (s.d - 8 * a) % 12 == 0)
                .count();
            assert_eq!(s.h, expect, "degree {}", s.d);
        }
    }

    #[test]
    fn representatives_are_cycles_not_boundaries() {
        let gop = build_operator(ZetaSpace(SpaceDescriptor::T), OperatorId::P21, 36).unwrap();
        assert!(gop.verify_nilpotent());
        for d in 0..=gop.valid_through() {
            let h = gop.homology_degree(d).unwrap();
            assert_eq!(h.kernel_dim + gop.matrix(d).unwrap().rank(), h.basis_dim);
            let src = gop.matrix(d + OperatorId::P21.degree()).unwrap();
            let image = EchelonForm::new(src.clone());
            for rep in &h.representatives {
                let p = crate::f2::F2Poly::from_monomials(rep.iter().cloned());
                assert!(crate::action::p21_action(&p).is_zero());
                // not in the image span
                let mut v = alloc::vec![0u64; h.basis_dim.div_ceil(64).max(1)];
                for m in rep {
                    let c = gop.basis(d).binary_search(m).unwrap();
                    v[c / 64] ^= 1 << (c % 64);
                }
                assert!(!image.contains(&v[..src.cols().div_ceil(64)]));
            }
        }
    }

    #[test]
    fn self_consistency_across_truncations() {
        let a = build_operator(ZetaSpace(SpaceDescriptor::T), OperatorId::P21, 30).unwrap();
        let b = build_operator(ZetaSpace(SpaceDescriptor::T), OperatorId::P21, 40).unwrap();
        for d in 0..=a.valid_through() {
            let (ha, hb) = (a.homology_degree(d).unwrap(), b.homology_degree(d).unwrap());
            assert_eq!(ha.homology_dim, hb.homology_dim);
            assert_eq!(ha.representatives, hb.representatives);
        }
    }

    #[test]
    fn out_of_range_query_is_an_error() {
        let gop = build_operator(ZetaSpace(SpaceDescriptor::T), OperatorId::P21, 20).unwrap();
        assert_eq!(gop.valid_through(), 14);
        assert!(matches!(
            gop.homology_degree(15),
            Err(OracleError::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn finite_module_rejects_bad_input() {
        use alloc::string::ToString;
        // a 2x2 involution is not nilpotent
        let mut swap = F2Matrix::zero(2, 2);
        swap.set(0, 1, true);
        swap.set(1, 0, true);
        let module = FiniteModule {
            label: "bad".to_string(),
            names: alloc::vec!["a".to_string(), "b".to_string()],
            grades: alloc::vec![1, 0],
            q1: F2Matrix::zero(2, 2),
            p21: swap.clone(),
        };
        assert!(matches!(
            finite_module_homology(&module, OperatorId::P21),
            Err(OracleError::NotNilpotent { .. })
        ));
        // nilpotent but the grade drop is 1, not the P21 step of 2
        let mut drop1 = F2Matrix::zero(2, 2);
        drop1.set(0, 1, true);
        let module = FiniteModule {
            label: "skew".to_string(),
            names: alloc::vec!["a".to_string(), "b".to_string()],
            grades: alloc::vec![1, 0],
            q1: F2Matrix::zero(2, 2),
            p21: drop1,
        };
        assert!(matches!(
            finite_module_homology(&module, OperatorId::P21),
            Err(OracleError::GradingViolation { .. })
        ));
        // Q0/Q2 make no sense on a Lambda(Q1, P21) module
        let module = FiniteModule {
            label: "ops".to_string(),
            names: alloc::vec!["a".to_string()],
            grades: alloc::vec![0],
            q1: F2Matrix::zero(1, 1),
            p21: F2Matrix::zero(1, 1),
        };
        assert!(matches!(
            finite_module_homology(&module, OperatorId::Q0),
            Err(OracleError::UnsupportedOperator { .. })
        ));
    }

    #[test]
    fn m1_homology_representatives() {
        let module = crate::lss::build_mj(crate::lss::IndexSet::single(1)).to_finite_module();
        let h = finite_module_homology(&module, OperatorId::P21).unwrap();
        assert_eq!(h.total_dim, 2);
        let rendered: alloc::vec::Vec<String> = h
            .grades
            .iter()
            .flat_map(|g| {
                g.representatives
                    .iter()
                    .map(|idxs| render_sum(&idxs.iter().map(|&i| module.names[i].clone()).collect::<alloc::vec::Vec<_>>()))
            })
            .collect();
        assert_eq!(rendered, alloc::vec!["t1", "x1"]);
    }

    #[test]
    fn closure_failure_is_reported() {
        // Q0(z4) = z3^2 leaves K as soon as degree 15 is enumerated
        let err = build_operator(ZetaSpace(SpaceDescriptor::K), OperatorId::Q0, 20);
        assert!(matches!(err, Err(OracleError::NotAdmissible { .. })));
        // and P21(z4 z5) = z2^4 z3^4 leaves K once products appear
        let err = build_operator(ZetaSpace(SpaceDescriptor::K), OperatorId::P21, 46);
        assert!(matches!(err, Err(OracleError::NotAdmissible { .. })));
    }
}
