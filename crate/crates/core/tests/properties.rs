use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use rankfilt_core::combinat::{enumerate_summands, pushforward, IndexTuple, MaxRank, PointedMap, RankContext};
use rankfilt_core::decomp::{enumerate_chain_types, ChainType};
use rankfilt_core::orbitspace::descriptor::Factor;
use rankfilt_core::orbitspace::{flag_poincare_oracle, molien_poincare};
use rankfilt_core::spectra::special_gamma_check;
use rankfilt_core::OrbitDescriptor;

fn pointed_map(source: usize, target: usize) -> impl Strategy<Value = PointedMap> {
    prop::collection::vec(0..=target, source).prop_map(move |v| PointedMap::new(target, v).unwrap())
}

fn context() -> impl Strategy<Value = RankContext> {
    (1u32..=8, 1u32..=3).prop_map(|(k, l)| RankContext::new(k, l).unwrap())
}

proptest! {
    #[test]
    fn pushforward_never_raises_rank(
        ctx in context(),
        (alpha, entries) in (1usize..5, 0usize..4)
            .prop_flat_map(|(t, s)| (pointed_map(t, s), prop::collection::vec(0u32..4, t))),
    ) {
        let x = IndexTuple::new(ctx, entries);
        let y = pushforward(&alpha, &x).unwrap();
        prop_assert!(y.rank() <= x.rank());
        prop_assert_eq!(y.len(), alpha.target_size());
    }

    #[test]
    fn filtration_is_nested_and_a_subfunctor(
        ctx in context(),
        m in 0u32..4,
        (alpha, t) in (1usize..4, 1usize..4).prop_flat_map(|(t, s)| (pointed_map(t, s), Just(t))),
    ) {
        let small = enumerate_summands(ctx, t, MaxRank::Finite(m));
        let large = enumerate_summands(ctx, t, MaxRank::Finite(m + 1));
        for x in &small.tuples {
            prop_assert!(large.contains(&x.entries));
            let y = pushforward(&alpha, x).unwrap();
            let image = enumerate_summands(ctx, alpha.target_size(), MaxRank::Finite(m));
            prop_assert!(y.is_basepoint() || image.contains(&y.entries));
        }
    }

    #[test]
    fn wedge_summands_split(l in 1u32..3, s in 0usize..4, t in 0usize..4, r in 1u32..4) {
        prop_assert!(special_gamma_check(l, s, t, r).unwrap());
    }

    #[test]
    fn descriptor_canonical_form_ignores_order(
        blocks in prop::collection::vec((1u32..3, 1u32..3, 1u32..3), 1..4),
        seed in any::<u64>(),
    ) {
        let factors: Vec<Factor> = blocks
            .iter()
            .map(|&(copies, size, l)| Factor::wreath(copies, Factor::block(size, l)))
            .collect();
        let used: u32 = blocks.iter().map(|&(c, a, l)| c * a * l).sum();
        let mut shuffled = factors.clone();
        shuffled.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        let a = OrbitDescriptor::new(used + 1, Factor::Product(factors), 1).unwrap();
        let b = OrbitDescriptor::new(used + 1, Factor::Product(shuffled), 1).unwrap();
        prop_assert_eq!(&a, &b);
        let reparsed: OrbitDescriptor = a.to_string().parse().unwrap();
        prop_assert_eq!(reparsed, a);
    }

    #[test]
    fn flag_manifolds_satisfy_duality(parts in prop::collection::vec(1u32..4, 1..4)) {
        let k: u32 = parts.iter().sum();
        let blocks: Vec<(u32, u32)> = parts.iter().map(|&a| (a, 1)).collect();
        let d = OrbitDescriptor::levi(k, &blocks, 0).unwrap();
        let p = molien_poincare(&d).unwrap();
        prop_assert!(p.is_palindromic());
        prop_assert_eq!(p.degree(), Some(d.real_dimension()));
        prop_assert_eq!(p, flag_poincare_oracle(&parts));
    }
}

#[test]
fn chain_canonical_form_is_idempotent_and_order_free() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for m in 1..=5u32 {
        let counts: Vec<u32> = (2..=m).collect();
        for mask in 0u32..(1 << counts.len()) {
            let u: Vec<u32> = counts.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &c)| c).collect();
            for chain in enumerate_chain_types(m, &u).unwrap() {
                let again: ChainType = chain.to_string().parse().unwrap();
                assert_eq!(again, chain);
                let mut root = chain.root().clone();
                shuffle_tree(&mut root, &mut rng);
                assert_eq!(ChainType::new(root).unwrap(), chain);
                assert_eq!(chain.level_counts(), u);
            }
        }
    }
}

fn shuffle_tree(node: &mut rankfilt_core::decomp::ChainNode, rng: &mut impl rand::Rng) {
    node.children.shuffle(rng);
    for c in &mut node.children {
        shuffle_tree(c, rng);
    }
}
