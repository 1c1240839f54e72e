//! The iterated basis algorithm for the P21 Margolis homology of tmf.
//!
//! The exchange involution `(t_I x_J)^e = t_J x_I` realizes the self-duality
//! of the modules `M_K`; a class is a non-boundary exactly when its exchange
//! is a cycle. The sets `B_[n]` are built inductively from `B_[0] = {1}`:
//!
//! ```text
//! B_[2t+1] = { Q1(b*x_{2t+1}) : b in B_[2t] } u { Q1(b*x_{2t+1})^e : ... }
//! B_[2t+2] = { Q1(b*x_{2t+1})*x_{2t+2} : ... } u { Q1(b*x_{2t+1})^e*t_{2t+2} : ... }
//! ```
//!
//! and transport along the order-preserving relabeling to any finite index
//! set `J`. Assembling `t_I x_I * b` over all `J`, `I` disjoint from `J`, and
//! `b in B_J` yields a basis of the full homology, which the brute-force
//! oracle confirms degree by degree.

use alloc::vec::Vec;

use crate::lss::{q1_tx, t_degree, x_degree, IndexSet, TxMonomial, TxPoly};

/// Where an element sits in the inductive construction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BasisKind {
    /// Member of an even-level set `B_[2t]`.
    EvenLevel,
    /// First branch of an odd level: `Q1(b * x_{2t+1})`.
    OddQ1,
    /// Second branch of an odd level: `Q1(b * x_{2t+1})^e`.
    OddQ1Exchanged,
}

/// An element of some `B_J`, with its home index set attached. Every term
/// `t_A x_B` of `value` satisfies `A + B = J` (disjoint union), and the
/// element is killed by d2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisElement {
    pub value: TxPoly,
    pub home: IndexSet,
    pub kind: BasisKind,
}

impl BasisElement {
    /// Internal degree in the tmf grading. Elements are homogeneous: all
    /// terms share `A + B = J` and the same reduced length.
    pub fn degree(&self) -> u32 {
        self.value
            .terms()
            .next()
            .map(|m| m.degree())
            .unwrap_or(0)
    }

    pub fn reduced_length(&self) -> u32 {
        self.value
            .terms()
            .next()
            .map(|m| m.reduced_length())
            .unwrap_or(0)
    }
}

/// Termwise swap of the t- and x-index sets; linear, an involution.
pub fn exchange(p: &TxPoly) -> TxPoly {
    TxPoly::from_monomials(p.terms().map(|m| m.exchange()))
}

/// The standard sets `B_[n]` on the index set `{1, ..., n}`, in recursion
/// order with the `Q1(b*x)` branch before the exchanged branch.
pub fn build_basis_standard(n: u32) -> Vec<BasisElement> {
    if n == 0 {
        return alloc::vec![BasisElement {
            value: TxPoly::one(),
            home: IndexSet::EMPTY,
            kind: BasisKind::EvenLevel,
        }];
    }
    // walk even levels, emitting when the requested level is reached
    let mut evens: Vec<TxPoly> = alloc::vec![TxPoly::one()];
    let mut level = 0;
    loop {
        let odd_index = level + 1;
        let qs: Vec<TxPoly> = evens
            .iter()
            .map(|b| q1_tx(&b.mul_monomial(&TxMonomial::x_gen(odd_index))))
            .collect();
        if n == level + 1 {
            let home = IndexSet::range(1, n);
            let mut out: Vec<BasisElement> = qs
                .iter()
                .map(|q| BasisElement {
                    value: q.clone(),
                    home,
                    kind: BasisKind::OddQ1,
                })
                .collect();
            out.extend(qs.iter().map(|q| BasisElement {
                value: exchange(q),
                home,
                kind: BasisKind::OddQ1Exchanged,
            }));
            return out;
        }
        let even_index = level + 2;
        let mut next: Vec<TxPoly> = qs
            .iter()
            .map(|q| q.mul_monomial(&TxMonomial::x_gen(even_index)))
            .collect();
        next.extend(
            qs.iter()
                .map(|q| exchange(q).mul_monomial(&TxMonomial::t_gen(even_index))),
        );
        evens = next;
        level += 2;
        if n == level {
            let home = IndexSet::range(1, n);
            return evens
                .into_iter()
                .map(|value| BasisElement {
                    value,
                    home,
                    kind: BasisKind::EvenLevel,
                })
                .collect();
        }
    }
}

/// Relabel every index of a polynomial through `map`.
pub fn relabel(p: &TxPoly, map: impl Fn(u32) -> u32) -> TxPoly {
    TxPoly::from_monomials(p.terms().map(|m| {
        TxMonomial::new(
            IndexSet::from_indices(&m.t_set().iter().map(&map).collect::<Vec<_>>()),
            IndexSet::from_indices(&m.x_set().iter().map(&map).collect::<Vec<_>>()),
        )
    }))
}

/// `B_J`: push `B_[|J|]` along the unique order-preserving bijection
/// `[|J|] -> J`.
pub fn transport_basis(j: IndexSet) -> Vec<BasisElement> {
    let targets = j.to_vec();
    build_basis_standard(j.len())
        .into_iter()
        .map(|b| BasisElement {
            value: relabel(&b.value, |i| targets[(i - 1) as usize]),
            home: j,
            kind: b.kind,
        })
        .collect()
}

/// Pass/fail for the seven exchange identities, evaluated on an
/// even-level element `b in B_[2t]` with `x_{2t+1}` the next fresh index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub results: [bool; 7],
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.results.iter().all(|&b| b)
    }
}

/// Evaluate, for `b` at even level `2t` with fresh index `m = 2t+1`:
///
/// 1. `Q1(b) = Q1(b^e)`
/// 2. `Q1(Q1(b)^e) = b + b^e`
/// 3. `P21(Q1(b)^e) = Q1(b)`
/// 4. `P21(b) = 0 = P21(b^e)`
/// 5. `Q1(Q1(b*x_m)^e) = Q1(b*x_m)`
/// 6. `P21(Q1(b*x_m)) = 0`
/// 7. `P21(Q1(b*x_m)^e) = 0`
pub fn verify_relations(b: &BasisElement) -> RelationReport {
    use crate::lss::d2;
    assert!(
        b.home.len().is_multiple_of(2),
        "the exchange identities are about even-level elements"
    );
    let fresh = b.home.iter().max().unwrap_or(0) + 1;
    let v = &b.value;
    let ve = exchange(v);
    let q1b = q1_tx(v);
    let bx = v.mul_monomial(&TxMonomial::x_gen(fresh));
    let q1bx = q1_tx(&bx);
    let results = [
        q1b == q1_tx(&ve),
        q1_tx(&exchange(&q1b)) == v.add(&ve),
        d2(&exchange(&q1b)) == q1b,
        d2(v).is_zero() && d2(&ve).is_zero(),
        q1_tx(&exchange(&q1bx)) == q1bx,
        d2(&q1bx).is_zero(),
        d2(&exchange(&q1bx)).is_zero(),
    ];
    RelationReport { results }
}

/// `dim MM(M_J, P21)` at reduced length `l` for `|J| = n`: `2^t` when
/// `n = 2t, l = t` or `n = 2t+1, l in {t, t+1}`, and 0 otherwise.
pub fn dimension_formula(n: u32, l: u32) -> u64 {
    let t = n / 2;
    let hit = if n.is_multiple_of(2) {
        l == t
    } else {
        l == t || l == t + 1
    };
    if hit {
        1u64 << t
    } else {
        0
    }
}

/// One item of the assembled homology basis: `value = t_I x_I * b` for
/// `b in B_J` with `I` disjoint from `J`.
#[derive(Clone, Debug)]
pub struct AssembledElement {
    pub s_indices: IndexSet,
    pub home: IndexSet,
    pub kind: BasisKind,
    pub value: TxPoly,
    pub degree: u32,
    pub reduced_length: u32,
}

/// Degree data for the assembly enumeration. The tmf grading is the default;
/// smash powers and BZ/2 reuse the same structure with their own degree
/// functions and index universe.
pub struct AssemblyGrading<'a> {
    /// Degree of `t_i`.
    pub deg_t: &'a dyn Fn(u32) -> u32,
    /// Degree of `x_i`.
    pub deg_x: &'a dyn Fn(u32) -> u32,
    /// Indices allowed in `I` and `J`; `None` means all indices whose
    /// generators fit under the degree bound.
    pub universe: Option<IndexSet>,
}

impl AssemblyGrading<'_> {
    pub fn tmf() -> AssemblyGrading<'static> {
        AssemblyGrading {
            deg_t: &t_degree,
            deg_x: &x_degree,
            universe: None,
        }
    }

    fn monomial_degree(&self, m: &TxMonomial) -> u32 {
        m.t_set().iter().map(self.deg_t).sum::<u32>()
            + m.x_set().iter().map(self.deg_x).sum::<u32>()
    }

    fn poly_degree(&self, p: &TxPoly) -> u32 {
        p.terms().next().map(|m| self.monomial_degree(m)).unwrap_or(0)
    }

    /// Indices usable at all under the bound: the cheapest generator at
    /// index i is t_i, so t-degree decides membership.
    fn candidate_indices(&self, max_degree: u32) -> Vec<u32> {
        match self.universe {
            Some(u) => u.iter().filter(|&i| (self.deg_t)(i) <= max_degree).collect(),
            None => {
                let mut out = Vec::new();
                let mut i = 1;
                while i <= 64 && (self.deg_t)(i) <= max_degree {
                    out.push(i);
                    i += 1;
                }
                out
            }
        }
    }
}

/// All products `t_I x_I * b` of total degree at most `max_degree`, over all
/// finite `J` in the universe, `b in B_J`, and `I` disjoint from `J`.
/// Sorted by degree, then by value; canonical and deterministic.
pub fn assemble_basis(grading: &AssemblyGrading<'_>, max_degree: u32) -> Vec<AssembledElement> {
    let candidates = grading.candidate_indices(max_degree);
    let all = IndexSet::from_indices(&candidates);
    let mut out = Vec::new();
    for j in all.subsets() {
        // every term of a B_J element uses all of J, so the cheapest element
        // costs at least sum over J of min(deg t, deg x)
        let floor: u32 = j
            .iter()
            .map(|i| core::cmp::min((grading.deg_t)(i), (grading.deg_x)(i)))
            .sum();
        if floor > max_degree {
            continue;
        }
        for b in transport_basis(j) {
            let b_degree = grading.poly_degree(&b.value);
            if b_degree > max_degree {
                continue;
            }
            let budget = max_degree - b_degree;
            let s_candidates: Vec<u32> = all
                .difference(j)
                .iter()
                .filter(|&i| (grading.deg_t)(i) + (grading.deg_x)(i) <= budget)
                .collect();
            let mut stack = alloc::vec![(0usize, IndexSet::EMPTY, 0u32)];
            while let Some((pos, picked, used)) = stack.pop() {
                if pos == s_candidates.len() {
                    let s = TxMonomial::new(picked, picked);
                    let value = b.value.mul_monomial(&s);
                    out.push(AssembledElement {
                        s_indices: picked,
                        home: j,
                        kind: b.kind,
                        value,
                        degree: b_degree + used,
                        reduced_length: b.reduced_length(),
                    });
                    continue;
                }
                let i = s_candidates[pos];
                let cost = (grading.deg_t)(i) + (grading.deg_x)(i);
                stack.push((pos + 1, picked, used));
                if used + cost <= budget {
                    stack.push((pos + 1, picked.union(IndexSet::single(i)), used + cost));
                }
            }
        }
    }
    out.sort_by(|a, b| (a.degree, &a.value).cmp(&(b.degree, &b.value)));
    out
}

/// The tmf assembly at the standard grading.
pub fn assemble_tmf_basis(max_degree: u32) -> Vec<AssembledElement> {
    assemble_basis(&AssemblyGrading::tmf(), max_degree)
}

/// Per-degree counts of an assembled basis, indexed by degree.
pub fn counts_per_degree(elements: &[AssembledElement], max_degree: u32) -> Vec<usize> {
    let mut counts = alloc::vec![0usize; max_degree as usize + 1];
    for e in elements {
        counts[e.degree as usize] += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lss::{build_mj, d2, tx_poly_to_zeta};
    use crate::matrix::F2Matrix;
    use crate::oracle::finite_module_homology;
    use crate::OperatorId;
    use alloc::collections::BTreeSet;
    use alloc::string::ToString;
    use alloc::vec;

    fn tx(t: &[u32], x: &[u32]) -> TxMonomial {
        TxMonomial::new(IndexSet::from_indices(t), IndexSet::from_indices(x))
    }

    fn poly(terms: &[TxMonomial]) -> TxPoly {
        TxPoly::from_monomials(terms.iter().copied())
    }

    #[test]
    fn exchange_fixtures() {
        assert_eq!(
            exchange(&poly(&[tx(&[2], &[1, 3])])),
            poly(&[tx(&[1, 3], &[2])])
        );
        assert_eq!(exchange(&TxPoly::one()), TxPoly::one());
        let sym = poly(&[tx(&[1], &[2]), tx(&[2], &[1])]);
        assert_eq!(exchange(&sym), sym);
    }

    #[test]
    fn standard_basis_small_levels() {
        let b0: Vec<TxPoly> = build_basis_standard(0).iter().map(|b| b.value.clone()).collect();
        assert_eq!(b0, vec![TxPoly::one()]);

        let b1: Vec<TxPoly> = build_basis_standard(1).iter().map(|b| b.value.clone()).collect();
        assert_eq!(b1, vec![poly(&[tx(&[1], &[])]), poly(&[tx(&[], &[1])])]);

        let b2: Vec<TxPoly> = build_basis_standard(2).iter().map(|b| b.value.clone()).collect();
        assert_eq!(b2, vec![poly(&[tx(&[1], &[2])]), poly(&[tx(&[2], &[1])])]);

        let b3: Vec<TxPoly> = build_basis_standard(3).iter().map(|b| b.value.clone()).collect();
        assert_eq!(
            b3,
            vec![
                poly(&[tx(&[1, 2], &[3]), tx(&[1, 3], &[2])]),
                poly(&[tx(&[1, 2], &[3]), tx(&[2, 3], &[1])]),
                poly(&[tx(&[3], &[1, 2]), tx(&[2], &[1, 3])]),
                poly(&[tx(&[3], &[1, 2]), tx(&[1], &[2, 3])]),
            ]
        );

        let b4: Vec<TxPoly> = build_basis_standard(4).iter().map(|b| b.value.clone()).collect();
        assert_eq!(
            b4,
            vec![
                poly(&[tx(&[1, 2], &[3, 4]), tx(&[1, 3], &[2, 4])]),
                poly(&[tx(&[1, 2], &[3, 4]), tx(&[2, 3], &[1, 4])]),
                poly(&[tx(&[3, 4], &[1, 2]), tx(&[2, 4], &[1, 3])]),
                poly(&[tx(&[3, 4], &[1, 2]), tx(&[1, 4], &[2, 3])]),
            ]
        );
    }

    #[test]
    fn transport_fixture() {
        let j = IndexSet::from_indices(&[2, 4, 6, 9]);
        let bj: Vec<TxPoly> = transport_basis(j).iter().map(|b| b.value.clone()).collect();
        assert_eq!(
            bj,
            vec![
                poly(&[tx(&[2, 4], &[6, 9]), tx(&[2, 6], &[4, 9])]),
                poly(&[tx(&[2, 4], &[6, 9]), tx(&[4, 6], &[2, 9])]),
                poly(&[tx(&[6, 9], &[2, 4]), tx(&[4, 9], &[2, 6])]),
                poly(&[tx(&[6, 9], &[2, 4]), tx(&[2, 9], &[4, 6])]),
            ]
        );
        assert_eq!(
            transport_basis(IndexSet::from_indices(&[5]))
                .iter()
                .map(|b| b.value.to_string())
                .collect::<Vec<_>>(),
            vec!["t5", "x5"]
        );
        assert_eq!(
            transport_basis(IndexSet::EMPTY)[0].value,
            TxPoly::one()
        );
    }

    #[test]
    fn counts_and_stratification() {
        for n in 0..=10u32 {
            let basis = build_basis_standard(n);
            assert_eq!(basis.len() as u64, 1 << n.div_ceil(2), "size at n={}", n);
            let t = n / 2;
            if n % 2 == 0 {
                assert!(basis.iter().all(|b| b.reduced_length() == t));
            } else {
                let low = basis.iter().filter(|b| b.reduced_length() == t).count() as u64;
                let high = basis.iter().filter(|b| b.reduced_length() == t + 1).count() as u64;
                assert_eq!(low, 1 << t);
                assert_eq!(high, 1 << t);
                assert_eq!(low, dimension_formula(n, t));
                assert_eq!(high, dimension_formula(n, t + 1));
            }
        }
    }

    #[test]
    fn elements_are_homogeneous() {
        for n in 0..=8u32 {
            for b in build_basis_standard(n) {
                let degrees: BTreeSet<u32> = b.value.terms().map(|m| m.degree()).collect();
                assert!(degrees.len() <= 1, "inhomogeneous element at n={}", n);
                let rls: BTreeSet<u32> = b.value.terms().map(|m| m.reduced_length()).collect();
                assert!(rls.len() <= 1);
            }
        }
    }

    #[test]
    fn relations_hand_examples() {
        // b = t1 x2 in B_[2]: (ii) Q1(Q1(b)^e) = b + b^e and (iii) d2(x1x2) = t1t2
        let b = BasisElement {
            value: poly(&[tx(&[1], &[2])]),
            home: IndexSet::from_indices(&[1, 2]),
            kind: BasisKind::EvenLevel,
        };
        let q1b = q1_tx(&b.value);
        assert_eq!(q1b, poly(&[tx(&[1, 2], &[])]));
        assert_eq!(
            q1_tx(&exchange(&q1b)),
            poly(&[tx(&[1], &[2]), tx(&[2], &[1])])
        );
        assert_eq!(d2(&poly(&[tx(&[], &[1, 2])])), poly(&[tx(&[1, 2], &[])]));
        assert!(verify_relations(&b).all_hold());
    }

    #[test]
    fn relations_hold_through_level_six() {
        for t in 0..=3u32 {
            for b in build_basis_standard(2 * t) {
                let report = verify_relations(&b);
                assert!(report.all_hold(), "relation fails at t={}: {:?}", t, report);
            }
        }
    }

    #[test]
    fn exchange_closure_of_levels() {
        for n in 0..=8u32 {
            let set: BTreeSet<TxPoly> = build_basis_standard(n)
                .into_iter()
                .map(|b| b.value)
                .collect();
            let exchanged: BTreeSet<TxPoly> = set.iter().map(exchange).collect();
            assert_eq!(set, exchanged, "B_[{}] not exchange-closed", n);
        }
    }

    #[test]
    fn dimension_formula_fixtures() {
        assert_eq!(dimension_formula(4, 2), 4);
        assert_eq!(dimension_formula(5, 3), 4);
        assert_eq!(dimension_formula(5, 2), 4);
        assert_eq!(dimension_formula(4, 1), 0);
        assert_eq!(dimension_formula(0, 0), 1);
    }

    /// Coordinates of each element over the M_[n] basis have full rank.
    #[test]
    fn linear_independence_through_ten() {
        for n in 1..=10u32 {
            let module = build_mj(IndexSet::range(1, n));
            let basis = build_basis_standard(n);
            let mut mat = F2Matrix::zero(0, module.dim());
            for b in &basis {
                let v = module.coordinates(&b.value).expect("supported on M_[n]");
                mat.push_row(&v);
            }
            assert_eq!(mat.rank(), basis.len(), "rank drop at n={}", n);
        }
    }

    #[test]
    fn cycles_and_exchange_cycles() {
        for n in 0..=6u32 {
            for b in build_basis_standard(n) {
                assert!(d2(&b.value).is_zero());
                assert!(d2(&exchange(&b.value)).is_zero());
            }
        }
    }

    #[test]
    fn transport_matches_finite_homology_dims() {
        let universe = IndexSet::range(1, 6);
        for j in universe.subsets() {
            let module = build_mj(j).to_finite_module();
            let h = finite_module_homology(&module, OperatorId::P21).unwrap();
            for l in 0..=j.len() + 1 {
                assert_eq!(
                    h.dim_at_grade(l) as u64,
                    dimension_formula(j.len(), l),
                    "J={:?} l={}",
                    j,
                    l
                );
            }
        }
    }

    #[test]
    fn assembly_small_degrees() {
        let assembled = assemble_tmf_basis(20);
        let counts = counts_per_degree(&assembled, 20);
        assert_eq!(counts[0], 1);
        assert_eq!(counts[12], 1, "t1 at degree 12");
        assert_eq!(counts[15], 1, "x1 at degree 15");
        let at12: Vec<_> = assembled.iter().filter(|e| e.degree == 12).collect();
        assert_eq!(at12[0].value.to_string(), "t1");
        assert_eq!(tx_poly_to_zeta(&at12[0].value).to_string(), "z2^4");
        let at15: Vec<_> = assembled.iter().filter(|e| e.degree == 15).collect();
        assert_eq!(at15[0].value.to_string(), "x1");
        assert_eq!(tx_poly_to_zeta(&at15[0].value).to_string(), "z4");
    }

    #[test]
    fn assembly_matches_oracle_low_degrees() {
        use crate::f2::SpaceDescriptor;
        use crate::oracle::{build_operator, ZetaSpace};
        let max = 34u32;
        let gop = build_operator(ZetaSpace(SpaceDescriptor::T), OperatorId::P21, max).unwrap();
        let report = gop.homology();
        let assembled = assemble_tmf_basis(gop.valid_through());
        let counts = counts_per_degree(&assembled, gop.valid_through());
        for s in &report.degrees {
            assert_eq!(
                counts[s.d as usize], s.h,
                "assembly/oracle mismatch at degree {}",
                s.d
            );
        }
    }

    #[test]
    fn assembly_degrees_match_zeta_rendering() {
        for e in assemble_tmf_basis(34) {
            for term in e.value.terms() {
                assert_eq!(tx_poly_to_zeta(&TxPoly::from_monomial(*term)).terms().next().unwrap().degree(), e.degree);
            }
        }
    }

    /// A non-order-preserving bijection also transports to a valid basis.
    #[test]
    fn alternative_bijection_yields_valid_basis() {
        // psi: 1 -> 9, 2 -> 4, 3 -> 2, 4 -> 6 onto J = {2, 4, 6, 9}
        let map = |i: u32| [9, 4, 2, 6][(i - 1) as usize];
        let j = IndexSet::from_indices(&[2, 4, 6, 9]);
        let module = build_mj(j);
        let mut mat = F2Matrix::zero(0, module.dim());
        for b in build_basis_standard(4) {
            let v = relabel(&b.value, map);
            assert!(d2(&v).is_zero());
            assert!(d2(&exchange(&v)).is_zero());
            mat.push_row(&module.coordinates(&v).unwrap());
        }
        assert_eq!(mat.rank(), 4);
        // spot-check one listed element of psi_*(B_[4])
        let first = relabel(&build_basis_standard(4)[0].value, map);
        assert_eq!(first, poly(&[tx(&[4, 9], &[2, 6]), tx(&[2, 9], &[4, 6])]));
    }
}
