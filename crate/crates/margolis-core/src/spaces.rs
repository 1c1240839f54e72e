//! Space-level drivers: smash powers of tmf, `(BZ/2^k)_+`, the reindexing
//! isomorphism between them and the single-tmf page, and Mahowald-weight
//! summand filtering.
//!
//! The r-fold smash power carries slotted monomials (tensor factors with
//! disjoint generator alphabets). Its E2 page is generated by `t_{i,j}` and
//! `x_{i,j}` (generator family i, slot j), and `iota(i,j) = r(i-1)+j`
//! identifies that alphabet with the single-tmf one as `Lambda(Q1, P21)`
//! modules, though not degree-preservingly. For `(BZ/2^k)_+` the polynomial
//! algebra `F2[x_1..x_k]` carries `Q1(x_i) = x_i^4`, `P21(x_i) = 0`, with the
//! cohomological grading (the actions raise degree); setting `t_i = x_i^4`
//! the same assembled basis machinery applies with `deg t = 4`, `deg x = 1`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use alloc::collections::BTreeSet;

use crate::action::{self, OperatorId};
use crate::basis::{assemble_basis, AssembledElement, AssemblyGrading};
use crate::f2::{enumerate_basis, F2Poly, SpaceDescriptor, ZetaMonomial};
use crate::lss::{t_degree, x_degree, IndexSet, TxMonomial, TxPoly};
use crate::oracle::{build_operator, GradedSpace, HomologyReport, OracleError};

/// A monomial of `T^{tensor r}`: one T-monomial per slot.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiZetaMonomial {
    slots: Vec<ZetaMonomial>,
}

impl MultiZetaMonomial {
    pub fn new(slots: Vec<ZetaMonomial>) -> Self {
        MultiZetaMonomial { slots }
    }

    pub fn one(r: u32) -> Self {
        MultiZetaMonomial {
            slots: alloc::vec![ZetaMonomial::one(); r as usize],
        }
    }

    pub fn slots(&self) -> &[ZetaMonomial] {
        &self.slots
    }

    pub fn degree(&self) -> u32 {
        self.slots.iter().map(|m| m.degree()).sum()
    }

    /// Total length: lengths add across tensor factors.
    pub fn length(&self) -> u32 {
        self.slots.iter().map(crate::lss::length).sum()
    }

    fn with_slot(&self, j: usize, m: ZetaMonomial) -> Self {
        let mut slots = self.slots.clone();
        slots[j] = m;
        MultiZetaMonomial { slots }
    }
}

impl core::fmt::Display for MultiZetaMonomial {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for (k, m) in self.slots.iter().enumerate() {
            if k > 0 {
                write!(f, "|")?;
            }
            write!(f, "{}", m)?;
        }
        Ok(())
    }
}

impl core::fmt::Debug for MultiZetaMonomial {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        core::fmt::Display::fmt(self, f)
    }
}

/// Q_i acts slot-wise (it is primitive); P21 acts through its diagonal:
/// slot-wise P21 plus Q1 x Q1 across every pair of slots.
pub fn smash_act(op: OperatorId, m: &MultiZetaMonomial) -> BTreeSet<MultiZetaMonomial> {
    let r = m.slots.len();
    let mut out: BTreeSet<MultiZetaMonomial> = BTreeSet::new();
    let mut toggle = |m: MultiZetaMonomial| {
        if !out.remove(&m) {
            out.insert(m);
        }
    };
    let slot_polys = |j: usize, op: OperatorId| -> Vec<ZetaMonomial> {
        action::act(op, &F2Poly::from_monomial(m.slots[j].clone()))
            .terms()
            .cloned()
            .collect()
    };
    for j in 0..r {
        for t in slot_polys(j, op) {
            toggle(m.with_slot(j, t));
        }
    }
    if op == OperatorId::P21 {
        for j in 0..r {
            let qj = slot_polys(j, OperatorId::Q1);
            for k in (j + 1)..r {
                let qk = slot_polys(k, OperatorId::Q1);
                for a in &qj {
                    for b in &qk {
                        toggle(m.with_slot(j, a.clone()).with_slot(k, b.clone()));
                    }
                }
            }
        }
    }
    out
}

/// Linear extension of [`smash_act`] to sums of slotted monomials.
pub fn smash_actions(
    op: OperatorId,
    terms: &BTreeSet<MultiZetaMonomial>,
) -> BTreeSet<MultiZetaMonomial> {
    let mut out: BTreeSet<MultiZetaMonomial> = BTreeSet::new();
    for m in terms {
        for t in smash_act(op, m) {
            if !out.remove(&t) {
                out.insert(t);
            }
        }
    }
    out
}

/// `T^{tensor r}` as an oracle space.
pub struct SmashSpace {
    pub r: u32,
}

fn tuples(r: u32, degree: u32) -> Vec<Vec<ZetaMonomial>> {
    if r == 1 {
        return enumerate_basis(SpaceDescriptor::T, degree)
            .into_iter()
            .map(|m| alloc::vec![m])
            .collect();
    }
    let mut out = Vec::new();
    for a in 0..=degree {
        for head in enumerate_basis(SpaceDescriptor::T, a) {
            for tail in tuples(r - 1, degree - a) {
                let mut slots = alloc::vec![head.clone()];
                slots.extend(tail);
                out.push(slots);
            }
        }
    }
    out
}

impl GradedSpace for SmashSpace {
    type Mono = MultiZetaMonomial;

    fn label(&self) -> String {
        SpaceDescriptor::SmashT { r: self.r }.label()
    }

    fn basis(&self, degree: u32) -> Vec<Self::Mono> {
        let mut out: Vec<MultiZetaMonomial> = tuples(self.r, degree)
            .into_iter()
            .map(MultiZetaMonomial::new)
            .collect();
        out.sort();
        out
    }

    fn act(&self, op: OperatorId, m: &Self::Mono) -> BTreeSet<Self::Mono> {
        smash_act(op, m)
    }
}

/// A monomial of `F2[x_1, ..., x_k]` for `(BZ/2^k)_+`; cohomological degree
/// is the exponent sum.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bz2Monomial {
    exps: Vec<u32>,
}

impl Bz2Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Bz2Monomial { exps }
    }

    pub fn one(k: u32) -> Self {
        Bz2Monomial {
            exps: alloc::vec![0; k as usize],
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    fn bump(&self, i: usize, by: i64) -> Self {
        let mut exps = self.exps.clone();
        exps[i] = (exps[i] as i64 + by) as u32;
        Bz2Monomial { exps }
    }
}

impl core::fmt::Display for Bz2Monomial {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.exps.iter().all(|&e| e == 0) {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

impl core::fmt::Debug for Bz2Monomial {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        core::fmt::Display::fmt(self, f)
    }
}

/// `Q1(x_i) = x_i^4` as a derivation: odd exponents step up by 3.
pub fn bz2_q1(m: &Bz2Monomial) -> BTreeSet<Bz2Monomial> {
    let mut out = BTreeSet::new();
    for i in 0..m.exps.len() {
        if m.exps[i] % 2 == 1 {
            let t = m.bump(i, 3);
            if !out.remove(&t) {
                out.insert(t);
            }
        }
    }
    out
}

/// P21 via the pair sum with `P21(x_i) = 0` and `Q1(x_i) = x_i^4`: pairs of
/// factor positions each step an exponent up by 3.
pub fn bz2_p21(m: &Bz2Monomial) -> BTreeSet<Bz2Monomial> {
    let mut out = BTreeSet::new();
    let mut toggle = |t: Bz2Monomial| {
        if !out.remove(&t) {
            out.insert(t);
        }
    };
    let k = m.exps.len();
    for i in 0..k {
        for j in i..k {
            let odd = if i == j {
                let e = m.exps[i];
                e % 4 == 2 || e % 4 == 3 // C(e, 2) mod 2
            } else {
                m.exps[i] % 2 == 1 && m.exps[j] % 2 == 1
            };
            if odd {
                if i == j {
                    toggle(m.bump(i, 6));
                } else {
                    toggle(m.bump(i, 3).bump(j, 3));
                }
            }
        }
    }
    out
}

/// `F2[x_1..x_k]` as an oracle space; the actions raise degree.
pub struct Bz2Space {
    pub k: u32,
}

fn compositions(k: u32, degree: u32) -> Vec<Vec<u32>> {
    if k == 1 {
        return alloc::vec![alloc::vec![degree]];
    }
    let mut out = Vec::new();
    for e in 0..=degree {
        for tail in compositions(k - 1, degree - e) {
            let mut v = alloc::vec![e];
            v.extend(tail);
            out.push(v);
        }
    }
    out
}

impl GradedSpace for Bz2Space {
    type Mono = Bz2Monomial;

    fn label(&self) -> String {
        SpaceDescriptor::Bz2 { k: self.k }.label()
    }

    fn raises_degree(&self) -> bool {
        true
    }

    fn supports(&self, op: OperatorId) -> bool {
        matches!(op, OperatorId::Q1 | OperatorId::P21)
    }

    fn basis(&self, degree: u32) -> Vec<Self::Mono> {
        let mut out: Vec<Bz2Monomial> = compositions(self.k, degree)
            .into_iter()
            .map(Bz2Monomial::new)
            .collect();
        out.sort();
        out
    }

    fn act(&self, op: OperatorId, m: &Self::Mono) -> BTreeSet<Self::Mono> {
        match op {
            OperatorId::Q1 => bz2_q1(m),
            OperatorId::P21 => bz2_p21(m),
            _ => BTreeSet::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReindexError {
    pub i: u32,
    pub j: u32,
    pub r: u32,
}

impl core::fmt::Display for ReindexError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "slot index ({},{}) out of range for r = {}",
            self.i, self.j, self.r
        )
    }
}

/// `iota(i, j) = r(i-1) + j`, defined for `i >= 1`, `1 <= j <= r`.
pub fn reindex_pair(r: u32, i: u32, j: u32) -> Result<u32, ReindexError> {
    if i == 0 || j == 0 || j > r {
        return Err(ReindexError { i, j, r });
    }
    Ok(r * (i - 1) + j)
}

/// Inverse of [`reindex_pair`].
pub fn unreindex(r: u32, m: u32) -> (u32, u32) {
    assert!(m >= 1);
    ((m - 1) / r + 1, (m - 1) % r + 1)
}

/// A slotted E2-page monomial on generators `t_{i,j}`, `x_{i,j}`; the index
/// data are sorted pair lists, kept independent of the reindexing map.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct SlottedTxMonomial {
    pub t: Vec<(u32, u32)>,
    pub x: Vec<(u32, u32)>,
}

impl SlottedTxMonomial {
    pub fn new(mut t: Vec<(u32, u32)>, mut x: Vec<(u32, u32)>) -> Self {
        t.sort_unstable();
        x.sort_unstable();
        SlottedTxMonomial { t, x }
    }
}

impl core::fmt::Display for SlottedTxMonomial {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.t.is_empty() && self.x.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(i, j) in &self.t {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "t{},{}", i, j)?;
        }
        for &(i, j) in &self.x {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "x{},{}", i, j)?;
        }
        Ok(())
    }
}

/// `Q1(x_{i,j}) = t_{i,j}` extended as on the single page.
pub fn q1_slotted(m: &SlottedTxMonomial) -> BTreeSet<SlottedTxMonomial> {
    let mut out = BTreeSet::new();
    for (pos, &p) in m.x.iter().enumerate() {
        if m.t.binary_search(&p).is_ok() {
            continue;
        }
        let mut t = m.t.clone();
        t.push(p);
        let mut x = m.x.clone();
        x.remove(pos);
        let term = SlottedTxMonomial::new(t, x);
        if !out.remove(&term) {
            out.insert(term);
        }
    }
    out
}

/// d2 on the slotted page: pair sum over 2-subsets of the x-indices.
pub fn d2_slotted(m: &SlottedTxMonomial) -> BTreeSet<SlottedTxMonomial> {
    let mut out = BTreeSet::new();
    for a in 0..m.x.len() {
        for b in (a + 1)..m.x.len() {
            let (pa, pb) = (m.x[a], m.x[b]);
            if m.t.binary_search(&pa).is_ok() || m.t.binary_search(&pb).is_ok() {
                continue;
            }
            let mut t = m.t.clone();
            t.push(pa);
            t.push(pb);
            let mut x = m.x.clone();
            x.remove(b);
            x.remove(a);
            let term = SlottedTxMonomial::new(t, x);
            if !out.remove(&term) {
                out.insert(term);
            }
        }
    }
    out
}

/// Pull a single-index monomial to the slotted alphabet through `iota^{-1}`.
pub fn tx_to_slotted(r: u32, m: &TxMonomial) -> SlottedTxMonomial {
    SlottedTxMonomial::new(
        m.t_set().iter().map(|idx| unreindex(r, idx)).collect(),
        m.x_set().iter().map(|idx| unreindex(r, idx)).collect(),
    )
}

/// Push a slotted monomial to the single-index alphabet through `iota`.
pub fn slotted_to_tx(r: u32, m: &SlottedTxMonomial) -> Result<TxMonomial, ReindexError> {
    let mut t = IndexSet::EMPTY;
    for &(i, j) in &m.t {
        t = t.union(IndexSet::single(reindex_pair(r, i, j)?));
    }
    let mut x = IndexSet::EMPTY;
    for &(i, j) in &m.x {
        x = x.union(IndexSet::single(reindex_pair(r, i, j)?));
    }
    Ok(TxMonomial::new(t, x))
}

/// Render a slotted page monomial in tensor coordinates:
/// `t_{i,j} = z_{i+1}^4` and `x_{i,j} = z_{i+3}` in slot j.
pub fn slotted_to_multizeta(r: u32, m: &SlottedTxMonomial) -> MultiZetaMonomial {
    let mut slots = alloc::vec![ZetaMonomial::one(); r as usize];
    for &(i, j) in &m.t {
        let s = &mut slots[(j - 1) as usize];
        *s = s.mul(&ZetaMonomial::gen_pow(i + 1, 4));
    }
    for &(i, j) in &m.x {
        let s = &mut slots[(j - 1) as usize];
        *s = s.mul(&ZetaMonomial::gen_pow(i + 3, 1));
    }
    MultiZetaMonomial::new(slots)
}

/// One element of the smash homology basis: the single-index assembly datum
/// together with its slotted degree and tensor rendering.
#[derive(Clone, Debug)]
pub struct SmashElement {
    pub single: AssembledElement,
    /// Sum of tensor monomials, canonically ordered.
    pub zeta_slots: Vec<MultiZetaMonomial>,
}

impl SmashElement {
    pub fn render_slots(&self) -> String {
        let parts: Vec<String> = self.zeta_slots.iter().map(|m| m.to_string()).collect();
        parts.join(" + ")
    }
}

/// Assembled basis of `MM(tmf^{smash r}, P21)` with true slotted degrees,
/// filtered by `max_degree`, sorted by (degree, value).
pub fn smash_basis(r: u32, max_degree: u32) -> Vec<SmashElement> {
    let deg_t = move |idx: u32| t_degree(unreindex(r, idx).0);
    let deg_x = move |idx: u32| x_degree(unreindex(r, idx).0);
    let grading = AssemblyGrading {
        deg_t: &deg_t,
        deg_x: &deg_x,
        universe: None,
    };
    assemble_basis(&grading, max_degree)
        .into_iter()
        .map(|single| {
            let mut zeta_slots: Vec<MultiZetaMonomial> = single
                .value
                .terms()
                .map(|m| slotted_to_multizeta(r, &tx_to_slotted(r, m)))
                .collect();
            zeta_slots.sort();
            SmashElement { single, zeta_slots }
        })
        .collect()
}

/// One element of the structural BZ/2 basis.
#[derive(Clone, Debug)]
pub struct Bz2Element {
    pub single: AssembledElement,
    /// Sum of polynomial-algebra monomials, canonically ordered.
    pub monomials: Vec<Bz2Monomial>,
}

impl Bz2Element {
    pub fn render(&self) -> String {
        let parts: Vec<String> = self.monomials.iter().map(|m| m.to_string()).collect();
        parts.join(" + ")
    }
}

fn tx_term_to_bz2(k: u32, m: &TxMonomial) -> Bz2Monomial {
    let mut exps = alloc::vec![0u32; k as usize];
    for i in m.t_set().iter() {
        exps[(i - 1) as usize] += 4;
    }
    for i in m.x_set().iter() {
        exps[(i - 1) as usize] += 1;
    }
    Bz2Monomial::new(exps)
}

/// Structural basis of `MM((BZ/2^k)_+, P21)`: the assembled `S_J (x) B_J`
/// over `J` inside `[k]`, with `deg t_i = 4`, `deg x_i = 1`.
pub fn bz2_basis(k: u32, max_degree: u32) -> Vec<Bz2Element> {
    let deg_t = |_: u32| 4u32;
    let deg_x = |_: u32| 1u32;
    let grading = AssemblyGrading {
        deg_t: &deg_t,
        deg_x: &deg_x,
        universe: Some(IndexSet::range(1, k)),
    };
    assemble_basis(&grading, max_degree)
        .into_iter()
        .map(|single| {
            let mut monomials: Vec<Bz2Monomial> =
                single.value.terms().map(|m| tx_term_to_bz2(k, m)).collect();
            monomials.sort();
            Bz2Element { single, monomials }
        })
        .collect()
}

/// Structural basis next to the direct oracle, with the per-degree verdict.
pub struct Bz2Margolis {
    pub basis: Vec<Bz2Element>,
    pub oracle: HomologyReport,
    /// (degree, structural count, oracle dim) for every valid degree.
    pub per_degree: Vec<(u32, usize, usize)>,
    pub matches: bool,
}

/// Run both routes for `(BZ/2^k)_+` and compare through the oracle's valid
/// range.
pub fn bz2_margolis(k: u32, max_degree: u32) -> Result<Bz2Margolis, OracleError> {
    let gop = build_operator(Bz2Space { k }, OperatorId::P21, max_degree)?;
    let oracle = gop.homology();
    let basis = bz2_basis(k, oracle.valid_through);
    let mut counts = alloc::vec![0usize; oracle.valid_through as usize + 1];
    for e in &basis {
        counts[e.single.degree as usize] += 1;
    }
    let per_degree: Vec<(u32, usize, usize)> = oracle
        .degrees
        .iter()
        .map(|s| (s.d, counts[s.d as usize], s.h))
        .collect();
    let matches = per_degree.iter().all(|&(_, a, b)| a == b);
    Ok(Bz2Margolis {
        basis,
        oracle,
        per_degree,
        matches,
    })
}

/// Mahowald weight `w(z_i) = 2^{i-1}`, additive on products.
pub fn mahowald_weight(m: &ZetaMonomial) -> u64 {
    m.exponents()
        .iter()
        .map(|&(i, e)| e as u64 * (1u64 << (i - 1)))
        .sum()
}

/// Per-slot weights of a tensor monomial.
pub fn slot_weights(m: &MultiZetaMonomial) -> Vec<u64> {
    m.slots().iter().map(mahowald_weight).collect()
}

/// Keep the elements all of whose tensor terms have slot-j weight exactly
/// `8 * weights[j]`; this cuts out the smash of Brown-Gitler summands.
pub fn bo_summand_filter(r: u32, weights: &[u32], basis: &[SmashElement]) -> Vec<SmashElement> {
    assert_eq!(weights.len(), r as usize);
    basis
        .iter()
        .filter(|e| {
            e.zeta_slots.iter().all(|term| {
                slot_weights(term)
                    .iter()
                    .zip(weights)
                    .all(|(&w, &i)| w == 8 * i as u64)
            })
        })
        .cloned()
        .collect()
}

/// Exhaustive check that `iota` intertwines the slotted and single-index
/// page actions, over all monomials with single indices up to `max_index`.
pub fn check_reindex_intertwining(r: u32, max_index: u32) -> bool {
    let universe = IndexSet::range(1, max_index);
    for tset in universe.subsets() {
        for xset in universe.subsets() {
            let single = TxMonomial::new(tset, xset);
            let slotted = tx_to_slotted(r, &single);
            let q1_single = crate::lss::q1_tx(&TxPoly::from_monomial(single));
            let q1_mapped: Result<BTreeSet<TxMonomial>, _> = q1_slotted(&slotted)
                .iter()
                .map(|m| slotted_to_tx(r, m))
                .collect();
            let q1_mapped = q1_mapped.expect("slots in range");
            if q1_mapped != q1_single.terms().copied().collect::<BTreeSet<_>>() {
                return false;
            }
            let d2_single = crate::lss::d2(&TxPoly::from_monomial(single));
            let d2_mapped: Result<BTreeSet<TxMonomial>, _> = d2_slotted(&slotted)
                .iter()
                .map(|m| slotted_to_tx(r, m))
                .collect();
            let d2_mapped = d2_mapped.expect("slots in range");
            if d2_mapped != d2_single.terms().copied().collect::<BTreeSet<_>>() {
                return false;
            }
        }
    }
    true
}
