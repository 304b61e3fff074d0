use cc_core::{check_coherence, Configuration, Graph};
use cc_wl::{greedy_distinguishing_set, individualize, is_discrete, splits_completely, wl_round, wl_stabilize};
use proptest::prelude::*;

fn random_graph(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::new(n);
    let mut it = bits.iter().cycle();
    for u in 0..n {
        for v in u + 1..n {
            if *it.next().unwrap() {
                g.add_edge(u, v);
            }
        }
    }
    g
}

#[test]
fn petersen_is_already_stable() {
    let cfg = Configuration::from_graph(&Graph::petersen()).unwrap();
    let trace = wl_stabilize(&cfg).unwrap();
    assert_eq!(trace.stable().rank(), 3);
    assert_eq!(wl_round(&cfg).unwrap().rank(), 3);
}

#[test]
fn greedy_set_splits_the_heawood_graph() {
    let cfg = wl_stabilize(&Configuration::from_graph(&Graph::heawood()).unwrap()).unwrap().stable().clone();
    let s = greedy_distinguishing_set(&cfg).unwrap();
    assert!(splits_completely(&cfg, &s).unwrap());
    assert!(!is_discrete(&cfg));
    assert!(individualize(&cfg, &[14]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn stable_output_is_coherent_and_fixed(n in 2usize..20, bits in proptest::collection::vec(any::<bool>(), 1..40)) {
        let cfg = Configuration::from_graph(&random_graph(n, &bits)).unwrap();
        let stable = wl_stabilize(&cfg).unwrap().stable().clone();
        prop_assert!(check_coherence(&stable).is_ok());
        prop_assert_eq!(wl_round(&stable).unwrap().rank(), stable.rank());
        prop_assert!(stable.rank() >= cfg.rank());
    }

    #[test]
    fn rank_history_increases(n in 2usize..16, bits in proptest::collection::vec(any::<bool>(), 1..30)) {
        let trace = wl_stabilize(&Configuration::from_graph(&random_graph(n, &bits)).unwrap()).unwrap();
        prop_assert!(trace.rank_history.windows(2).all(|w| w[0] <= w[1]));
    }
}
