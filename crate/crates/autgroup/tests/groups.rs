use cc_autgroup::{automorphisms, exact_motion, motion_by_enumeration, orbital_configuration, stabilizer_chain};
use cc_core::{Configuration, Graph};
use cc_families::{drg_to_scheme, gen_cycle, gen_hamming, gen_johnson, gen_paley, line_graph_scheme};
use cc_wl::wl_stabilize;
use num_bigint::BigUint;
use proptest::prelude::*;

fn instances() -> Vec<(&'static str, Configuration, u64, u64)> {
    // (name, configuration, group order, motion)
    vec![
        ("petersen", Configuration::from_graph(&Graph::petersen()).unwrap(), 120, 6),
        ("J(5,2)", gen_johnson(5, 2).unwrap(), 120, 6),
        ("T(7)", gen_johnson(7, 2).unwrap(), 5040, 10),
        ("J(6,3)", gen_johnson(6, 3).unwrap(), 1440, 12),
        ("H(2,3)", gen_hamming(2, 3).unwrap(), 72, 6),
        ("H(3,2)", gen_hamming(3, 2).unwrap(), 48, 4),
        ("H(3,3)", gen_hamming(3, 3).unwrap(), 1296, 18),
        ("C7", gen_cycle(7).unwrap(), 14, 6),
        ("C8", gen_cycle(8).unwrap(), 16, 6),
        ("paley13", gen_paley(13).unwrap(), 78, 12),
        ("heawood drg", drg_to_scheme(&Graph::heawood()).unwrap().config, 336, 8),
        ("L(petersen)", line_graph_scheme(&Graph::petersen()).unwrap().config, 120, 12),
    ]
}

#[test]
fn orders_and_motions() {
    for (name, cfg, order, motion) in instances() {
        let g = automorphisms(&cfg).unwrap();
        assert_eq!(g.order, BigUint::from(order), "{name}");
        assert_eq!(g.motion, motion, "{name}");
        assert!(g.exact, "{name}");
        for s in &g.generators {
            assert!(cfg.is_automorphism(s), "{name}");
        }
    }
}

#[test]
fn motion_agrees_with_enumeration() {
    for (name, cfg, _, _) in instances() {
        let chain = stabilizer_chain(&cfg).unwrap();
        let enumerated = motion_by_enumeration(&chain, 1_000_000).unwrap();
        let m = exact_motion(&cfg).unwrap();
        assert_eq!(m.motion, enumerated, "{name}");
        assert!(m.lower_bound <= m.motion, "{name}");
        let mut count = 0u64;
        let mut distinct = std::collections::BTreeSet::new();
        chain.for_each_element(1_000_000, |g| {
            count += 1;
            if count <= 2000 {
                assert!(cfg.is_automorphism(g), "{name}");
                distinct.insert(g.to_vec());
            }
        });
        assert_eq!(BigUint::from(count), chain.order(), "{name}");
        assert_eq!(distinct.len() as u64, count.min(2000), "{name}: elements repeat");
    }
}

#[test]
fn orbital_of_automorphisms_refines_stable_coloring() {
    for (name, cfg, _, _) in instances() {
        let g = automorphisms(&cfg).unwrap();
        let orb = orbital_configuration(&g.generators, cfg.n()).unwrap();
        let stable = wl_stabilize(&cfg).unwrap().stable.unwrap();
        let mut seen = std::collections::BTreeMap::new();
        for (a, b) in orb.as_flat().iter().zip(stable.as_flat()) {
            assert_eq!(*seen.entry(*a).or_insert(*b), *b, "{name}: orbital color straddles two stable colors");
        }
        // these instances are all Schurian
        assert_eq!(orb.rank(), stable.rank(), "{name}");
    }
}

#[test]
fn johnson_orbital_is_johnson() {
    let cfg = gen_johnson(5, 2).unwrap();
    let g = automorphisms(&cfg).unwrap();
    let orb = orbital_configuration(&g.generators, 10).unwrap();
    for u in 0..10 {
        for v in 0..10 {
            assert_eq!(orb.color(u, v) == orb.color(0, 1), cfg.color(u, v) == cfg.color(0, 1));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn relabeling_conjugates_the_group(seed in any::<u64>(), pick in 0usize..12) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let (name, cfg, order, motion) = instances().swap_remove(pick);
        let mut perm: Vec<usize> = (0..cfg.n()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let relabeled = cfg.relabel(&perm);
        let g = automorphisms(&relabeled).unwrap();
        prop_assert_eq!(g.order, BigUint::from(order), "{}", name);
        prop_assert_eq!(g.motion, motion, "{}", name);
        for s in &g.generators {
            prop_assert!(relabeled.is_automorphism(s));
        }
    }
}
