//! Cross-module integration: the structural route (page algebra, exchange
//! basis, assembly) against the brute-force oracle, through the public API
//! only.

use margolis_core::basis::{transport_basis, verify_relations};
use margolis_core::f2::SpaceDescriptor;
use margolis_core::lss::{build_mj, IndexSet};
use margolis_core::oracle::{build_operator, finite_module_homology, ZetaSpace};
use margolis_core::spaces::{smash_basis, SmashSpace};
use margolis_core::OperatorId;
use proptest::prelude::*;

/// Triple smash power: structural counts against the tensor oracle. The
/// r = 2 case is covered elsewhere; this exercises three genuinely
/// interleaved slots.
#[test]
fn smash_cube_counts_match_oracle() {
    let gop = build_operator(SmashSpace { r: 3 }, OperatorId::P21, 22).expect("closed actions");
    let report = gop.homology();
    let basis = smash_basis(3, report.valid_through);
    let mut counts = vec![0usize; report.valid_through as usize + 1];
    for e in &basis {
        counts[e.single.degree as usize] += 1;
    }
    for s in &report.degrees {
        assert_eq!(counts[s.d as usize], s.h, "r=3 mismatch at degree {}", s.d);
    }
}

/// The exchange identities hold for transported bases, not just the
/// standard index sets.
#[test]
fn relations_hold_for_transported_even_bases() {
    for j in [&[2, 5][..], &[1, 4, 6, 9][..], &[3, 4, 7, 8][..]] {
        for b in transport_basis(IndexSet::from_indices(j)) {
            assert!(
                verify_relations(&b).all_hold(),
                "relations fail for J={:?}",
                j
            );
        }
    }
}

/// Truncation discipline end to end: a report never changes when computed
/// under a deeper truncation.
#[test]
fn deeper_truncation_is_conservative() {
    for op in [OperatorId::Q0, OperatorId::Q2, OperatorId::P21] {
        let shallow = build_operator(ZetaSpace(SpaceDescriptor::T), op, 28)
            .unwrap()
            .homology();
        let deep = build_operator(ZetaSpace(SpaceDescriptor::T), op, 36)
            .unwrap()
            .homology();
        for s in &shallow.degrees {
            let d = deep.degrees.iter().find(|x| x.d == s.d).unwrap();
            assert_eq!(s, d, "operator {} drifts at degree {}", op, s.d);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Random index sets: the oracle homology of M_J is concentrated in the
    /// two middle reduced lengths with the power-of-two dimensions.
    #[test]
    fn finite_module_dims_follow_the_closed_form(
        indices in proptest::collection::btree_set(1u32..=9, 0..=5)
    ) {
        let j = IndexSet::from_indices(&indices.iter().copied().collect::<Vec<_>>());
        let module = build_mj(j).to_finite_module();
        let h = finite_module_homology(&module, OperatorId::P21).unwrap();
        let n = j.len();
        let t = n / 2;
        for l in 0..=(n + 2) {
            let expect = if (n.is_multiple_of(2) && l == t) || (n % 2 == 1 && (l == t || l == t + 1)) {
                1u64 << t
            } else {
                0
            };
            prop_assert_eq!(h.dim_at_grade(l) as u64, expect);
        }
    }
}
