//! Exact polynomial arithmetic over F2 in the zeta generators of the dual
//! Steenrod algebra.
//!
//! A monomial is a finitely supported exponent vector over the generators
//! `z1, z2, z3, ...` with `|z_i| = 2^i - 1`. A polynomial is a finite set of
//! monomials; addition is symmetric difference, so `p + p = 0` holds by
//! construction. The subalgebras relevant to tmf are encoded as
//! [`SpaceDescriptor`] variants with per-generator exponent congruences.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use alloc::collections::BTreeSet;

/// A monomial in the generators `z1, z2, ...`, stored as a sorted list of
/// `(index, exponent)` pairs with all exponents strictly positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZetaMonomial {
    exps: Vec<(u32, u32)>,
}

impl ZetaMonomial {
    /// The empty monomial, i.e. the multiplicative unit.
    pub fn one() -> Self {
        ZetaMonomial { exps: Vec::new() }
    }

    /// `z_i^e`. Indices start at 1; exponent 0 gives the unit.
    pub fn gen_pow(index: u32, exponent: u32) -> Self {
        assert!(index >= 1, "generator indices start at 1");
        if exponent == 0 {
            return Self::one();
        }
        ZetaMonomial {
            exps: alloc::vec![(index, exponent)],
        }
    }

    /// Build from arbitrary `(index, exponent)` pairs; repeated indices are
    /// merged and zero exponents dropped.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Self {
        let mut m = Self::one();
        for &(i, e) in pairs {
            m = m.mul(&Self::gen_pow(i, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Exponent of `z_i` (0 when absent).
    pub fn exponent(&self, index: u32) -> u32 {
        self.exps
            .binary_search_by_key(&index, |&(i, _)| i)
            .map(|p| self.exps[p].1)
            .unwrap_or(0)
    }

    /// The support as `(index, exponent)` pairs in ascending index order.
    pub fn exponents(&self) -> &[(u32, u32)] {
        &self.exps
    }

    /// `sum_i e_i (2^i - 1)`.
    pub fn degree(&self) -> u32 {
        self.exps
            .iter()
            .map(|&(i, e)| e * ((1u32 << i) - 1))
            .sum()
    }

    /// Monomial product: exponent vectors add.
    pub fn mul(&self, other: &ZetaMonomial) -> ZetaMonomial {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(ia, ea)), Some(&&(ib, eb))) => match ia.cmp(&ib) {
                    Ordering::Less => {
                        exps.push((ia, ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        exps.push((ib, eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        exps.push((ia, ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(_), None) => {
                    exps.extend(a.by_ref().copied());
                    break;
                }
                (None, Some(_)) => {
                    exps.extend(b.by_ref().copied());
                    break;
                }
                (None, None) => break,
            }
        }
        ZetaMonomial { exps }
    }

    /// Divide out one copy of `z_i`; `None` if `z_i` does not divide `self`.
    pub fn div_gen(&self, index: u32) -> Option<ZetaMonomial> {
        let pos = self
            .exps
            .binary_search_by_key(&index, |&(i, _)| i)
            .ok()?;
        let mut exps = self.exps.clone();
        if exps[pos].1 == 1 {
            exps.remove(pos);
        } else {
            exps[pos].1 -= 1;
        }
        Some(ZetaMonomial { exps })
    }
}

// Canonical order: lexicographic on the ascending (index, exponent) list.
impl Ord for ZetaMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exps.cmp(&other.exps)
    }
}

impl PartialOrd for ZetaMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ZetaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(i, e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "z{}", i)?;
            } else {
                write!(f, "z{}^{}", i, e)?;
            }
        }
        Ok(())
    }
}

// Debug goes through Display; the text form is canonical.
impl fmt::Debug for ZetaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A characteristic-2 polynomial: a finite set of monomials under XOR
/// addition. The zero polynomial is the empty set.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct F2Poly {
    terms: BTreeSet<ZetaMonomial>,
}

impl F2Poly {
    pub fn zero() -> Self {
        F2Poly {
            terms: BTreeSet::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_monomial(ZetaMonomial::one())
    }

    pub fn from_monomial(m: ZetaMonomial) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(m);
        F2Poly { terms }
    }

    pub fn from_monomials<I: IntoIterator<Item = ZetaMonomial>>(iter: I) -> Self {
        let mut p = Self::zero();
        for m in iter {
            p.toggle(m);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = &ZetaMonomial> {
        self.terms.iter()
    }

    pub fn contains(&self, m: &ZetaMonomial) -> bool {
        self.terms.contains(m)
    }

    /// XOR a single monomial in or out.
    pub fn toggle(&mut self, m: ZetaMonomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    /// XOR addition.
    pub fn add(&self, other: &F2Poly) -> F2Poly {
        let mut out = self.clone();
        for m in &other.terms {
            out.toggle(m.clone());
        }
        out
    }

    /// Bilinear product; coefficients collapse mod 2.
    pub fn multiply(&self, other: &F2Poly) -> F2Poly {
        let mut out = F2Poly::zero();
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.mul(b));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &ZetaMonomial) -> F2Poly {
        F2Poly::from_monomials(self.terms.iter().map(|t| t.mul(m)))
    }
}

impl fmt::Display for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for m in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", m)?;
        }
        Ok(())
    }
}

impl fmt::Debug for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The graded spaces the engine works over.
///
/// `T` is the homology of tmf, `F2[z1^8, z2^4, z3^2, z4, z5, ...]`. `E` is its
/// even subalgebra (all of `z4, z5, ...` squared), `K` the exterior complement
/// `Lambda(z4, z5, ...)`, and `FullDual` the unrestricted polynomial algebra.
/// `Bz2` and `SmashT` carry their own monomial types; see the `spaces` module.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpaceDescriptor {
    T,
    E,
    K,
    FullDual,
    Bz2 { k: u32 },
    SmashT { r: u32 },
}

impl SpaceDescriptor {
    pub fn label(&self) -> String {
        match self {
            SpaceDescriptor::T => String::from("tmf"),
            SpaceDescriptor::E => String::from("E"),
            SpaceDescriptor::K => String::from("K"),
            SpaceDescriptor::FullDual => String::from("full-dual"),
            SpaceDescriptor::Bz2 { k } => alloc::format!("bz2(k={})", k),
            SpaceDescriptor::SmashT { r } => alloc::format!("smash(r={})", r),
        }
    }

    fn is_zeta_kind(&self) -> bool {
        matches!(
            self,
            SpaceDescriptor::T | SpaceDescriptor::E | SpaceDescriptor::K | SpaceDescriptor::FullDual
        )
    }

    /// Smallest admissible positive exponent step for `z_i`, or `None` when
    /// the generator is excluded from the space. For `K` the exponent is
    /// additionally capped at 1 (square-free).
    fn exponent_step(&self, index: u32) -> Option<u32> {
        match self {
            SpaceDescriptor::T => Some(match index {
                1 => 8,
                2 => 4,
                3 => 2,
                _ => 1,
            }),
            SpaceDescriptor::E => Some(match index {
                1 => 8,
                2 => 4,
                _ => 2,
            }),
            SpaceDescriptor::K => {
                if index >= 4 {
                    Some(1)
                } else {
                    None
                }
            }
            SpaceDescriptor::FullDual => Some(1),
            _ => unreachable!("exponent_step is only defined for zeta-monomial spaces"),
        }
    }
}

/// Whether `m` satisfies the exponent congruences of `space`.
///
/// Only defined for the zeta-monomial kinds (`T`, `E`, `K`, `FullDual`);
/// panics on `Bz2`/`SmashT`, whose monomials are a different type entirely.
pub fn admissible(m: &ZetaMonomial, space: SpaceDescriptor) -> bool {
    assert!(
        space.is_zeta_kind(),
        "admissible({}) needs a zeta-monomial space",
        space.label()
    );
    m.exponents().iter().all(|&(i, e)| match space.exponent_step(i) {
        None => false,
        Some(step) => {
            e % step == 0 && !(space == SpaceDescriptor::K && e > 1)
        }
    })
}

/// All admissible monomials of exactly the given degree, each once, in the
/// canonical lexicographic order.
pub fn enumerate_basis(space: SpaceDescriptor, degree: u32) -> Vec<ZetaMonomial> {
    assert!(
        space.is_zeta_kind(),
        "enumerate_basis({}) needs a zeta-monomial space; slotted spaces enumerate in `spaces`",
        space.label()
    );
    // Generators with unit degree <= target; unit degree step*(2^i - 1) grows
    // geometrically, so the list stays short.
    let mut gens: Vec<(u32, u32, u32)> = Vec::new(); // (index, step, unit degree)
    let mut index = 1;
    loop {
        let gen_degree_base = (1u64 << index) - 1;
        if gen_degree_base > degree as u64 {
            break;
        }
        if let Some(step) = space.exponent_step(index) {
            let unit = step as u64 * gen_degree_base;
            if unit <= degree as u64 {
                gens.push((index, step, unit as u32));
            }
        }
        index += 1;
    }

    let mut out = Vec::new();
    let mut current: Vec<(u32, u32)> = Vec::new();
    enumerate_rec(space, &gens, 0, degree, &mut current, &mut out);
    out.sort();
    out
}

fn enumerate_rec(
    space: SpaceDescriptor,
    gens: &[(u32, u32, u32)],
    pos: usize,
    remaining: u32,
    current: &mut Vec<(u32, u32)>,
    out: &mut Vec<ZetaMonomial>,
) {
    if remaining == 0 {
        out.push(ZetaMonomial {
            exps: current.clone(),
        });
        return;
    }
    if pos == gens.len() {
        return;
    }
    let (index, step, unit) = gens[pos];
    let max_mult = if space == SpaceDescriptor::K { 1 } else { remaining / unit };
    // multiplicity 0 first keeps recursion simple; ordering is fixed by the sort.
    enumerate_rec(space, gens, pos + 1, remaining, current, out);
    for mult in 1..=max_mult {
        if unit * mult > remaining {
            break;
        }
        current.push((index, step * mult));
        enumerate_rec(space, gens, pos + 1, remaining - unit * mult, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    fn z(i: u32) -> ZetaMonomial {
        ZetaMonomial::gen_pow(i, 1)
    }

    fn zp(i: u32, e: u32) -> ZetaMonomial {
        ZetaMonomial::gen_pow(i, e)
    }

    #[test]
    fn multiply_identity() {
        let p = F2Poly::from_monomials(vec![z(4), zp(3, 4)]);
        assert_eq!(F2Poly::one().multiply(&p), p);
    }

    #[test]
    fn multiply_frobenius_square() {
        // (z4 + z5)^2 = z4^2 + z5^2: cross terms cancel in pairs.
        let p = F2Poly::from_monomials(vec![z(4), z(5)]);
        let sq = p.multiply(&p);
        assert_eq!(sq, F2Poly::from_monomials(vec![zp(4, 2), zp(5, 2)]));
    }

    #[test]
    fn multiply_adds_exponents() {
        let a = F2Poly::from_monomial(zp(3, 4));
        assert_eq!(
            a.multiply(&a),
            F2Poly::from_monomial(zp(3, 8))
        );
    }

    #[test]
    fn degree_values() {
        assert_eq!(ZetaMonomial::one().degree(), 0);
        assert_eq!(z(4).degree(), 15);
        assert_eq!(ZetaMonomial::from_pairs(&[(1, 8), (2, 4)]).degree(), 20);
    }

    #[test]
    fn admissibility() {
        assert!(admissible(&zp(1, 8), SpaceDescriptor::T));
        assert!(!admissible(&zp(1, 4), SpaceDescriptor::T));
        assert!(admissible(&z(4).mul(&z(5)), SpaceDescriptor::K));
        assert!(!admissible(&zp(4, 2), SpaceDescriptor::K));
        assert!(!admissible(&z(3), SpaceDescriptor::K));
        assert!(admissible(&zp(4, 2), SpaceDescriptor::E));
        assert!(!admissible(&z(4), SpaceDescriptor::E));
        assert!(admissible(&z(1), SpaceDescriptor::FullDual));
    }

    #[test]
    fn enumerate_fixtures() {
        assert_eq!(enumerate_basis(SpaceDescriptor::T, 0), vec![ZetaMonomial::one()]);
        assert_eq!(enumerate_basis(SpaceDescriptor::T, 15), vec![z(4)]);
        assert_eq!(enumerate_basis(SpaceDescriptor::T, 8), vec![zp(1, 8)]);
        assert_eq!(enumerate_basis(SpaceDescriptor::T, 1), vec![]);
    }

    #[test]
    fn enumerate_no_duplicates_and_degrees() {
        for d in 0..=40 {
            let basis = enumerate_basis(SpaceDescriptor::T, d);
            for w in basis.windows(2) {
                assert!(w[0] < w[1], "order/duplicate violation at degree {}", d);
            }
            for m in &basis {
                assert_eq!(m.degree(), d);
                assert!(admissible(m, SpaceDescriptor::T));
            }
        }
    }

    /// Coefficients of prod_g 1/(1 - x^{deg g}) (or (1 + x^{deg g}) for
    /// exterior generators) truncated at `max`, as an independent count.
    fn series_counts(gen_degrees: &[(u32, bool)], max: u32) -> Vec<u64> {
        let mut coeffs = vec![0u64; max as usize + 1];
        coeffs[0] = 1;
        for &(d, exterior) in gen_degrees {
            let mut next = coeffs.clone();
            if exterior {
                for i in (d as usize)..next.len() {
                    next[i] += coeffs[i - d as usize];
                }
            } else {
                for i in (d as usize)..next.len() {
                    let add = next[i - d as usize];
                    next[i] += add;
                }
            }
            coeffs = next;
        }
        coeffs
    }

    #[test]
    fn enumerate_matches_generating_function() {
        let max = 45u32;
        let mut gens = vec![(8, false), (12, false), (14, false)];
        let mut i = 4;
        while (1u32 << i) - 1 <= max {
            gens.push(((1u32 << i) - 1, false));
            i += 1;
        }
        let counts = series_counts(&gens, max);
        for d in 0..=max {
            assert_eq!(
                enumerate_basis(SpaceDescriptor::T, d).len() as u64,
                counts[d as usize],
                "count mismatch at degree {}",
                d
            );
        }
    }

    #[test]
    fn addition_is_involution_exhaustive_small() {
        for d in 0..=20 {
            let p = F2Poly::from_monomials(enumerate_basis(SpaceDescriptor::T, d));
            assert!(p.add(&p).is_zero());
        }
    }

    #[test]
    fn multiply_commutative_exhaustive_low_degree() {
        let mut monos = Vec::new();
        for d in 0..=20 {
            monos.extend(enumerate_basis(SpaceDescriptor::T, d));
        }
        for a in &monos {
            for b in &monos {
                assert_eq!(a.mul(b), b.mul(a));
            }
        }
    }

    #[test]
    fn rendering() {
        let m = ZetaMonomial::from_pairs(&[(3, 4), (7, 1), (9, 1)]);
        assert_eq!(m.to_string(), "z3^4*z7*z9");
        assert_eq!(ZetaMonomial::one().to_string(), "1");
        assert_eq!(F2Poly::zero().to_string(), "0");
        let p = F2Poly::from_monomials(vec![zp(2, 4), z(4)]);
        assert_eq!(p.to_string(), "z2^4 + z4");
    }

    fn arb_t_monomial(max_degree: u32) -> impl Strategy<Value = ZetaMonomial> {
        // exponent multipliers for z1^8, z2^4, z3^2, z4, z5
        (0u32..4, 0u32..4, 0u32..4, 0u32..6, 0u32..2).prop_filter_map(
            "degree bound",
            move |(a, b, c, d, e)| {
                let m = ZetaMonomial::from_pairs(&[
                    (1, 8 * a),
                    (2, 4 * b),
                    (3, 2 * c),
                    (4, d),
                    (5, e),
                ]);
                (m.degree() <= max_degree).then_some(m)
            },
        )
    }

    proptest! {
        #[test]
        fn multiply_associative(a in arb_t_monomial(60), b in arb_t_monomial(60), c in arb_t_monomial(60)) {
            let ab_c = a.mul(&b).mul(&c);
            let a_bc = a.mul(&b.mul(&c));
            prop_assert_eq!(ab_c, a_bc);
        }

        #[test]
        fn poly_addition_involution(ms in proptest::collection::vec(arb_t_monomial(40), 0..8)) {
            let p = F2Poly::from_monomials(ms);
            prop_assert!(p.add(&p).is_zero());
        }

        #[test]
        fn degree_additive(a in arb_t_monomial(60), b in arb_t_monomial(60)) {
            prop_assert_eq!(a.mul(&b).degree(), a.degree() + b.degree());
        }
    }
}
