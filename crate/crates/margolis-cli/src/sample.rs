//! Seeded random T-monomials for the randomized verification passes.
//!
//! The seed changes only which monomials get sampled, never any reported
//! mathematics.

use margolis_core::ZetaMonomial;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generators of T with unit degree at most `max_degree`, as
/// (index, exponent step, unit degree).
fn t_generators(max_degree: u32) -> Vec<(u32, u32, u32)> {
    let mut gens = Vec::new();
    let mut i = 1u32;
    loop {
        let step = match i {
            1 => 8,
            2 => 4,
            3 => 2,
            _ => 1,
        };
        let unit = step * ((1u32 << i) - 1);
        if unit > max_degree {
            break;
        }
        gens.push((i, step, unit));
        i += 1;
    }
    gens
}

/// `count` T-monomials of degree at most `max_degree`, reproducible from the
/// seed. Exponents are drawn generator by generator within the remaining
/// degree budget.
pub fn random_t_monomials(seed: u64, count: usize, max_degree: u32) -> Vec<ZetaMonomial> {
    let gens = t_generators(max_degree);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut pairs = Vec::new();
        let mut remaining = max_degree;
        // visit generators in a random order so the budget is not always
        // eaten by z1 first
        let mut order: Vec<usize> = (0..gens.len()).collect();
        for k in (1..order.len()).rev() {
            let swap = rng.random_range(0..=k);
            order.swap(k, swap);
        }
        for &g in &order {
            let (index, step, unit) = gens[g];
            let cap = remaining / unit;
            if cap == 0 {
                continue;
            }
            let mult = rng.random_range(0..=cap);
            if mult > 0 {
                pairs.push((index, step * mult));
                remaining -= unit * mult;
            }
        }
        out.push(ZetaMonomial::from_pairs(&pairs));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use margolis_core::f2::{admissible, SpaceDescriptor};

    #[test]
    fn samples_are_admissible_and_bounded() {
        for m in random_t_monomials(7, 500, 60) {
            assert!(m.degree() <= 60);
            assert!(admissible(&m, SpaceDescriptor::T));
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        assert_eq!(random_t_monomials(3, 100, 60), random_t_monomials(3, 100, 60));
        assert_ne!(random_t_monomials(3, 100, 60), random_t_monomials(4, 100, 60));
    }
}
