//! Right actions of Q0, Q1, Q2 and P21 on zeta polynomials.
//!
//! Following the usual convention for homology computations, `a(x)` here
//! always means the right action `(x)a`. On generators the Milnor primitives
//! act by `Q_i(z_n) = z_{n-i-1}^{2^{i+1}}` and extend as derivations. P21 is
//! not primitive; its diagonal gives the product rule
//! `P21(xy) = P21(x)y + Q1(x)Q1(y) + xP21(y)`, which together with
//! `P21(z_n) = 0` yields the closed pair-sum formula implemented in
//! [`p21_action`]. Out-of-range generator indices follow the convention
//! `z_0 = 1`, `z_m = 0` for `m < 0`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::f2::{F2Poly, ZetaMonomial};

/// The four operators the engine implements.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum OperatorId {
    Q0,
    Q1,
    Q2,
    P21,
}

impl OperatorId {
    /// Homological degree of the operator; the right action on the dual
    /// Steenrod algebra lowers degree by exactly this amount.
    pub fn degree(self) -> u32 {
        match self {
            OperatorId::Q0 => 1,
            OperatorId::Q1 => 3,
            OperatorId::Q2 => 7,
            OperatorId::P21 => 6,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            OperatorId::Q0 => "Q0",
            OperatorId::Q1 => "Q1",
            OperatorId::Q2 => "Q2",
            OperatorId::P21 => "P21",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "Q0" | "q0" => Some(OperatorId::Q0),
            "Q1" | "q1" => Some(OperatorId::Q1),
            "Q2" | "q2" => Some(OperatorId::Q2),
            "P21" | "p21" => Some(OperatorId::P21),
            _ => None,
        }
    }

    pub const ALL: [OperatorId; 4] = [
        OperatorId::Q0,
        OperatorId::Q1,
        OperatorId::Q2,
        OperatorId::P21,
    ];
}

impl core::fmt::Display for OperatorId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.label())
    }
}

/// `Q_i(z_n)` as a factor, with the index conventions applied.
enum QImage {
    Zero,
    One,
    Gen(u32, u32),
}

fn q_on_generator(i: u32, n: u32) -> QImage {
    let exp = 1u32 << (i + 1);
    if n > i + 1 {
        QImage::Gen(n - i - 1, exp)
    } else if n == i + 1 {
        QImage::One // z_0 = 1
    } else {
        QImage::Zero // z_m = 0 for m < 0
    }
}

fn q_on_monomial(i: u32, m: &ZetaMonomial) -> F2Poly {
    let mut out = F2Poly::zero();
    for &(n, e) in m.exponents() {
        if e % 2 == 0 {
            continue; // derivation: even exponents contribute 0 mod 2
        }
        match q_on_generator(i, n) {
            QImage::Zero => {}
            QImage::One => out.toggle(m.div_gen(n).unwrap()),
            QImage::Gen(idx, exp) => {
                out.toggle(m.div_gen(n).unwrap().mul(&ZetaMonomial::gen_pow(idx, exp)))
            }
        }
    }
    out
}

/// Right action of `Q_i` for `i` in `{0, 1, 2}`, extended F2-linearly.
pub fn q_action(i: u32, p: &F2Poly) -> F2Poly {
    assert!(i <= 2, "only Q0, Q1, Q2 are implemented");
    let mut out = F2Poly::zero();
    for m in p.terms() {
        out = out.add(&q_on_monomial(i, m));
    }
    out
}

// C(e,2) mod 2; e(e-1)/2 is odd exactly when e = 2,3 mod 4.
fn choose2_parity(e: u32) -> bool {
    e % 4 == 2 || e % 4 == 3
}

/// Multiply one `Q1(z_n)` factor in, observing the index conventions.
/// Returns `None` when the factor is zero.
fn mul_q1_image(m: ZetaMonomial, n: u32) -> Option<ZetaMonomial> {
    if n > 2 {
        Some(m.mul(&ZetaMonomial::gen_pow(n - 2, 4)))
    } else if n == 2 {
        Some(m) // z_0^4 = 1
    } else {
        None
    }
}

fn p21_on_monomial(m: &ZetaMonomial) -> F2Poly {
    // Pair sum over the factor sequence of m, grouped by generator index:
    // a pair at positions with indices (n_a, n_b) replaces one factor of each
    // by Q1(z_n) = z_{n-2}^4. The number of such position pairs is e_a*e_b for
    // distinct indices and C(e_a, 2) within one index; only its parity counts.
    let exps = m.exponents();
    let mut out = F2Poly::zero();
    for a in 0..exps.len() {
        for b in a..exps.len() {
            let (na, ea) = exps[a];
            let (nb, eb) = exps[b];
            let odd = if a == b {
                choose2_parity(ea)
            } else {
                ea % 2 == 1 && eb % 2 == 1
            };
            if !odd {
                continue;
            }
            // parity forces e_a >= 2 when a == b, so both divisions succeed
            let base = m.div_gen(na).unwrap().div_gen(nb).unwrap();
            let term = mul_q1_image(base, na).and_then(|t| mul_q1_image(t, nb));
            if let Some(t) = term {
                out.toggle(t);
            }
        }
    }
    out
}

/// Right action of P21 via the closed pair-sum formula, extended F2-linearly.
/// Cancellation mod 2 across pairs is essential and handled by XOR.
pub fn p21_action(p: &F2Poly) -> F2Poly {
    let mut out = F2Poly::zero();
    for m in p.terms() {
        out = out.add(&p21_on_monomial(m));
    }
    out
}

/// Independent P21 evaluator: peel off one generator factor and apply the
/// product rule `P21(z_n * m') = Q1(z_n)Q1(m') + z_n P21(m')` recursively.
/// Slower than [`p21_action`]; kept as the cross-checking route.
pub fn p21_action_product_rule(p: &F2Poly) -> F2Poly {
    let mut out = F2Poly::zero();
    for m in p.terms() {
        out = out.add(&p21_rec(m));
    }
    out
}

fn p21_rec(m: &ZetaMonomial) -> F2Poly {
    let Some(&(n, _)) = m.exponents().first() else {
        return F2Poly::zero(); // P21(1) = 0
    };
    let rest = m.div_gen(n).unwrap();
    // Q1(z_n) * Q1(rest)
    let mut out = F2Poly::zero();
    let q1_rest = q_on_monomial(1, &rest);
    for t in q1_rest.terms() {
        if let Some(term) = mul_q1_image(t.clone(), n) {
            out.toggle(term);
        }
    }
    // z_n * P21(rest)
    let zn = ZetaMonomial::gen_pow(n, 1);
    out.add(&p21_rec(&rest).mul_monomial(&zn))
}

/// P21 restricted to the even subalgebra E, where Q1 vanishes and P21 is a
/// derivation over the E-generators `z1^8, z2^4, z3^2, z4^2, z5^2, ...` with
/// `P21(z1^8) = P21(z2^4) = 0` and `P21(z_i^2) = z_{i-2}^8` for `i >= 3`.
///
/// All input monomials must have even exponents throughout (and exponents of
/// `z1, z2` divisible by 8 and 4); this is the E1-page fast path.
pub fn p21_even_derivation(p: &F2Poly) -> F2Poly {
    let mut out = F2Poly::zero();
    for m in p.terms() {
        for &(n, e) in m.exponents() {
            debug_assert!(e % 2 == 0, "p21_even_derivation needs even exponents");
            let gen_exp = match n {
                1 => 8,
                2 => 4,
                _ => 2,
            };
            debug_assert!(e % gen_exp == 0);
            if (e / gen_exp) % 2 == 0 || n <= 2 {
                continue; // P21 kills z1^8 and z2^4; even generator powers die
            }
            // replace one z_n^2 by z_{n-2}^8
            let term = m
                .div_gen(n)
                .unwrap()
                .div_gen(n)
                .unwrap()
                .mul(&ZetaMonomial::gen_pow(n - 2, 8));
            out.toggle(term);
        }
    }
    out
}

/// Dispatch to the operator's action. Every term of the result has degree
/// exactly `degree(m) - op.degree()`, termwise.
pub fn act(op: OperatorId, p: &F2Poly) -> F2Poly {
    match op {
        OperatorId::Q0 => q_action(0, p),
        OperatorId::Q1 => q_action(1, p),
        OperatorId::Q2 => q_action(2, p),
        OperatorId::P21 => p21_action(p),
    }
}

/// Render the operator list for diagnostics.
pub fn operator_labels() -> Vec<String> {
    OperatorId::ALL.iter().map(|o| String::from(o.label())).collect()
}
