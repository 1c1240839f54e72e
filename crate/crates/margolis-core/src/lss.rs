//! The length filtration and its spectral sequence.
//!
//! Length of a zeta monomial counts odd exponents; it induces an increasing
//! filtration respected by Q1 and P21, whose spectral sequence collapses at
//! E3 with only d0 and d2 nonzero. The E2 page is the exterior algebra on
//! classes `t_i = z_{i+1}^4` and `x_i = z_{i+3}`, carried here by
//! [`TxMonomial`] with index sets as bit masks, so the exterior relations
//! `t_i^2 = x_i^2 = 0` are set semantics. The explicit d2 is the pair sum of
//! `d2(t_I x_J) = sum_{K in J[2]} t_K t_I x_{J-K}`, and the page decomposes
//! over the permanent-cycle subalgebra `S = Lambda(t_i x_i)` into the finite
//! modules [`MjModule`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use alloc::collections::BTreeSet;

use crate::f2::{F2Poly, ZetaMonomial};
use crate::matrix::F2Matrix;
use crate::oracle::FiniteModule;

/// A finite set of positive indices, stored as a bit mask (index i at bit
/// i-1). Comparison is lexicographic on the ascending index list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IndexSet(u64);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub fn single(index: u32) -> Self {
        assert!((1..=64).contains(&index));
        IndexSet(1 << (index - 1))
    }

    pub fn from_indices(indices: &[u32]) -> Self {
        let mut s = IndexSet::EMPTY;
        for &i in indices {
            s = s.union(IndexSet::single(i));
        }
        s
    }

    pub fn range(lo: u32, hi: u32) -> Self {
        let mut s = IndexSet::EMPTY;
        for i in lo..=hi {
            s = s.union(IndexSet::single(i));
        }
        s
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, index: u32) -> bool {
        (1..=64).contains(&index) && self.0 >> (index - 1) & 1 == 1
    }

    pub fn union(self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 | other.0)
    }

    /// Union, `None` on overlap; this is the exterior product on index sets.
    pub fn union_disjoint(self, other: IndexSet) -> Option<IndexSet> {
        (self.0 & other.0 == 0).then_some(IndexSet(self.0 | other.0))
    }

    pub fn intersection(self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 & other.0)
    }

    pub fn difference(self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 & !other.0)
    }

    pub fn remove(self, index: u32) -> IndexSet {
        IndexSet(self.0 & !(1u64 << (index - 1)))
    }

    pub fn iter(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() + 1;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.iter().collect()
    }

    /// All subsets, in mask order (deterministic).
    pub fn subsets(self) -> impl Iterator<Item = IndexSet> {
        let full = self.0;
        let mut sub: u64 = 0;
        let mut done = false;
        core::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = IndexSet(sub);
            if sub == full {
                done = true;
            } else {
                sub = (sub.wrapping_sub(full)) & full;
            }
            Some(out)
        })
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl core::fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i)?;
        }
        write!(f, "}}")
    }
}

/// An E2-page monomial `t_I x_J`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct TxMonomial {
    t: IndexSet,
    x: IndexSet,
}

/// Degree of `t_i` in the tmf grading: `t_i = z_{i+1}^4`.
pub fn t_degree(i: u32) -> u32 {
    (1u32 << (i + 3)) - 4
}

/// Degree of `x_i` in the tmf grading: `x_i = z_{i+3}`.
pub fn x_degree(i: u32) -> u32 {
    (1u32 << (i + 3)) - 1
}

impl TxMonomial {
    pub fn one() -> Self {
        TxMonomial {
            t: IndexSet::EMPTY,
            x: IndexSet::EMPTY,
        }
    }

    pub fn new(t: IndexSet, x: IndexSet) -> Self {
        TxMonomial { t, x }
    }

    pub fn t_gen(i: u32) -> Self {
        TxMonomial {
            t: IndexSet::single(i),
            x: IndexSet::EMPTY,
        }
    }

    pub fn x_gen(i: u32) -> Self {
        TxMonomial {
            t: IndexSet::EMPTY,
            x: IndexSet::single(i),
        }
    }

    pub fn t_set(&self) -> IndexSet {
        self.t
    }

    pub fn x_set(&self) -> IndexSet {
        self.x
    }

    pub fn is_one(&self) -> bool {
        self.t.is_empty() && self.x.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.t.iter().map(t_degree).sum::<u32>() + self.x.iter().map(x_degree).sum::<u32>()
    }

    /// Filtration length `L = |J|`.
    pub fn length(&self) -> u32 {
        self.x.len()
    }

    /// Reduced length `l = |J \ I|`.
    pub fn reduced_length(&self) -> u32 {
        self.x.difference(self.t).len()
    }

    /// Exterior product; `None` is the zero value (repeated index).
    pub fn try_mul(&self, other: &TxMonomial) -> Option<TxMonomial> {
        Some(TxMonomial {
            t: self.t.union_disjoint(other.t)?,
            x: self.x.union_disjoint(other.x)?,
        })
    }

    /// The exchange involution `(t_I x_J)^e = t_J x_I`.
    pub fn exchange(&self) -> TxMonomial {
        TxMonomial {
            t: self.x,
            x: self.t,
        }
    }
}

impl Ord for TxMonomial {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.t, self.x).cmp(&(other.t, other.x))
    }
}

impl PartialOrd for TxMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl core::fmt::Display for TxMonomial {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for i in self.t.iter() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "t{}", i)?;
        }
        for j in self.x.iter() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "x{}", j)?;
        }
        Ok(())
    }
}

impl core::fmt::Debug for TxMonomial {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        core::fmt::Display::fmt(self, f)
    }
}

/// A sum of E2-page monomials under XOR addition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct TxPoly {
    terms: BTreeSet<TxMonomial>,
}

impl TxPoly {
    pub fn zero() -> Self {
        TxPoly::default()
    }

    pub fn one() -> Self {
        Self::from_monomial(TxMonomial::one())
    }

    pub fn from_monomial(m: TxMonomial) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(m);
        TxPoly { terms }
    }

    pub fn from_monomials<I: IntoIterator<Item = TxMonomial>>(iter: I) -> Self {
        let mut p = TxPoly::zero();
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

    pub fn terms(&self) -> impl Iterator<Item = &TxMonomial> {
        self.terms.iter()
    }

    pub fn contains(&self, m: &TxMonomial) -> bool {
        self.terms.contains(m)
    }

    pub fn toggle(&mut self, m: TxMonomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add(&self, other: &TxPoly) -> TxPoly {
        let mut out = self.clone();
        for m in &other.terms {
            out.toggle(*m);
        }
        out
    }

    /// Multiply by a monomial; colliding terms vanish (exterior algebra).
    pub fn mul_monomial(&self, m: &TxMonomial) -> TxPoly {
        TxPoly::from_monomials(self.terms.iter().filter_map(|a| a.try_mul(m)))
    }

    pub fn multiply(&self, other: &TxPoly) -> TxPoly {
        let mut out = TxPoly::zero();
        for a in &self.terms {
            for b in &other.terms {
                if let Some(ab) = a.try_mul(b) {
                    out.toggle(ab);
                }
            }
        }
        out
    }
}

impl core::fmt::Display for TxPoly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
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

impl core::fmt::Debug for TxPoly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        core::fmt::Display::fmt(self, f)
    }
}

/// Number of odd exponents of a zeta monomial.
pub fn length(m: &ZetaMonomial) -> u32 {
    m.exponents().iter().filter(|&&(_, e)| e % 2 == 1).count() as u32
}

/// Unique factorization `m = e * k` with `e` even throughout and `k` the
/// square-free product of the odd-exponent generators.
pub fn ek_decompose(m: &ZetaMonomial) -> (ZetaMonomial, ZetaMonomial) {
    let mut e_pairs = Vec::new();
    let mut k_pairs = Vec::new();
    for &(i, e) in m.exponents() {
        if e % 2 == 1 {
            k_pairs.push((i, 1));
            if e > 1 {
                e_pairs.push((i, e - 1));
            }
        } else {
            e_pairs.push((i, e));
        }
    }
    (
        ZetaMonomial::from_pairs(&e_pairs),
        ZetaMonomial::from_pairs(&k_pairs),
    )
}

/// Reduced length `l(t_I x_J) = |J \ I|`.
pub fn reduced_length(m: &TxMonomial) -> u32 {
    m.reduced_length()
}

/// `Q1(t_I x_J) = sum_{j in J} t_j t_I x_{J - j}`; terms with `j in I` vanish.
pub fn q1_tx(p: &TxPoly) -> TxPoly {
    let mut out = TxPoly::zero();
    for m in p.terms() {
        for j in m.x_set().iter() {
            if let Some(t) = m.t_set().union_disjoint(IndexSet::single(j)) {
                out.toggle(TxMonomial::new(t, m.x_set().remove(j)));
            }
        }
    }
    out
}

/// The d2 differential `d2(t_I x_J) = sum_{K in J[2]} t_K t_I x_{J - K}`;
/// terms with `K` meeting `I` vanish.
pub fn d2(p: &TxPoly) -> TxPoly {
    let mut out = TxPoly::zero();
    for m in p.terms() {
        let xs = m.x_set().to_vec();
        for a in 0..xs.len() {
            for b in (a + 1)..xs.len() {
                let pair = IndexSet::from_indices(&[xs[a], xs[b]]);
                if let Some(t) = m.t_set().union_disjoint(pair) {
                    out.toggle(TxMonomial::new(t, m.x_set().difference(pair)));
                }
            }
        }
    }
    out
}

/// Factor `t_I x_J = (t_{I&J} x_{I&J}) * (t_{I\J} x_{J\I})`: the S-part and
/// the W-part, with disjoint index data on the W side.
pub fn sw_factor(m: &TxMonomial) -> (TxMonomial, TxMonomial) {
    let common = m.t_set().intersection(m.x_set());
    (
        TxMonomial::new(common, common),
        TxMonomial::new(m.t_set().difference(common), m.x_set().difference(common)),
    )
}

/// The substitution `t_i -> z_{i+1}^4`, `x_j -> z_{j+3}`.
pub fn tx_to_zeta(m: &TxMonomial) -> ZetaMonomial {
    let mut out = ZetaMonomial::one();
    for i in m.t_set().iter() {
        out = out.mul(&ZetaMonomial::gen_pow(i + 1, 4));
    }
    for j in m.x_set().iter() {
        out = out.mul(&ZetaMonomial::gen_pow(j + 3, 1));
    }
    out
}

pub fn tx_poly_to_zeta(p: &TxPoly) -> F2Poly {
    F2Poly::from_monomials(p.terms().map(tx_to_zeta))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TxConvertError {
    pub monomial: String,
    pub reason: String,
}

impl core::fmt::Display for TxConvertError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{} is not on the E2 page: {}", self.monomial, self.reason)
    }
}

/// Inverse of [`tx_to_zeta`]: the zeta monomial must factor as a square-free
/// product of `z_{i+1}^4` times a square-free product of `z_{j+3}`.
pub fn zeta_to_tx(m: &ZetaMonomial) -> Result<TxMonomial, TxConvertError> {
    let reject = |reason: String| TxConvertError {
        monomial: format!("{}", m),
        reason,
    };
    let mut t = IndexSet::EMPTY;
    let mut x = IndexSet::EMPTY;
    for &(n, e) in m.exponents() {
        let odd = e % 2;
        if odd == 1 && n < 4 {
            return Err(reject(format!("odd exponent on z{}", n)));
        }
        match e - odd {
            0 => {}
            4 => {
                if n < 2 {
                    return Err(reject(String::from("z1^4 is not a t generator")));
                }
                t = t.union(IndexSet::single(n - 1));
            }
            other => {
                return Err(reject(format!("even part z{}^{} is not a single t generator", n, other)));
            }
        }
        if odd == 1 {
            x = x.union(IndexSet::single(n - 3));
        }
    }
    Ok(TxMonomial::new(t, x))
}

/// The module `M_J`: all `2^|J|` splittings `t_A x_B` with `A + B = J`, the
/// Q1 and d2 actions as matrices over that basis.
pub struct MjModule {
    pub indices: IndexSet,
    pub basis: Vec<TxMonomial>,
    pub q1: F2Matrix,
    pub p21: F2Matrix,
}

/// Build `M_J` from its index set. The basis is sorted canonically; both
/// action matrices are closed on the basis because `A + B = J` is preserved.
pub fn build_mj(j: IndexSet) -> MjModule {
    let mut basis: Vec<TxMonomial> = j
        .subsets()
        .map(|a| TxMonomial::new(a, j.difference(a)))
        .collect();
    basis.sort();
    let n = basis.len();
    let mut q1m = F2Matrix::zero(n, n);
    let mut p21m = F2Matrix::zero(n, n);
    for (r, m) in basis.iter().enumerate() {
        let p = TxPoly::from_monomial(*m);
        for term in q1_tx(&p).terms() {
            let c = basis.binary_search(term).expect("q1 stays in M_J");
            q1m.set(r, c, true);
        }
        for term in d2(&p).terms() {
            let c = basis.binary_search(term).expect("d2 stays in M_J");
            p21m.set(r, c, true);
        }
    }
    MjModule {
        indices: j,
        basis,
        q1: q1m,
        p21: p21m,
    }
}

impl MjModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn label(&self) -> String {
        format!("M{:?}", self.indices)
    }

    /// View as an explicit graded module (grades are reduced lengths).
    pub fn to_finite_module(&self) -> FiniteModule {
        FiniteModule {
            label: self.label(),
            names: self.basis.iter().map(|m| format!("{}", m)).collect(),
            grades: self.basis.iter().map(|m| m.reduced_length()).collect(),
            q1: self.q1.clone(),
            p21: self.p21.clone(),
        }
    }

    /// Coordinates of a polynomial supported on this module's basis.
    pub fn coordinates(&self, p: &TxPoly) -> Option<Vec<u64>> {
        let mut v = alloc::vec![0u64; self.basis.len().div_ceil(64).max(1)];
        for term in p.terms() {
            let c = self.basis.binary_search(term).ok()?;
            v[c / 64] ^= 1 << (c % 64);
        }
        Some(v)
    }
}
