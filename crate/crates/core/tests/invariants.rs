mod common;

use common::*;
use domdelay::generators::{gen_chordal, gen_pk_free_chordal};
use domdelay::rn_enum::{enumerate_rn, Mode, Prepared};
use domdelay::VertexSet;
use proptest::prelude::*;

#[test]
fn structural_on_corpus() {
    for g in chordal_corpus() {
        structural(&g, None).unwrap();
        set_system(&g).unwrap();
    }
}

#[test]
fn emitted_sets_keep_membership_under_deletion() {
    for g in chordal_corpus() {
        for mode in [Mode::P7, Mode::P8] {
            let k = if mode == Mode::P7 { 7 } else { 8 };
            if !in_class(&g, k) {
                continue;
            }
            let prep = Prepared::new(g.clone(), mode).unwrap();
            for a in enumerate_rn(&prep) {
                let kept = a.iter().filter(|&x| prep.is_in_drn(&a.without(x))).count();
                match mode {
                    Mode::P7 => assert_eq!(kept, a.len(), "{a} on {}", g.to_plain()),
                    Mode::P8 => assert!(a.is_empty() || kept > 0, "{a} on {}", g.to_plain()),
                }
            }
        }
    }
}

fn random_subsets(n: usize, masks: &[u32]) -> Vec<VertexSet> {
    masks.iter().map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn structural_on_class_samples(
        n in 4usize..=9,
        k in 7usize..=9,
        seed in any::<u64>(),
        masks in prop::collection::vec(any::<u32>(), 40),
    ) {
        let g = gen_pk_free_chordal(n, k, seed).unwrap();
        prop_assert!(in_class(&g, k));
        let subsets = random_subsets(n, &masks);
        prop_assert_eq!(structural(&g, Some(subsets)), Ok(()));
        prop_assert_eq!(set_system(&g), Ok(()));
    }

    #[test]
    fn structural_on_chordal_samples(n in 2usize..=9, density in 0.0f64..=1.0, seed in any::<u64>()) {
        let g = gen_chordal(n, density, seed).unwrap();
        prop_assert_eq!(structural(&g, None), Ok(()));
    }
}
