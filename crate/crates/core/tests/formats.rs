use cc_core::{ccf, intersection_tensor, Configuration, Graph, IntersectionTensor};
use proptest::prelude::*;

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
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
fn tensor_json_is_validated() {
    let t = intersection_tensor(&Configuration::from_graph(&Graph::petersen()).unwrap()).unwrap();
    let json = serde_json::to_value(&t).unwrap();
    let back: IntersectionTensor = serde_json::from_value(json.clone()).unwrap();
    assert_eq!(back, t);
    let mut broken = json;
    broken["k"].as_array_mut().unwrap().pop();
    assert!(serde_json::from_value::<IntersectionTensor>(broken).is_err());
}

#[test]
fn ccf_rejects_truncated_input() {
    let text = ccf::write(&Configuration::from_graph(&Graph::cycle(5)).unwrap());
    let cut: String = text.lines().take(4).map(|l| format!("{l}\n")).collect();
    assert!(ccf::parse(&cut).is_err());
    assert!(ccf::parse("ccf 2\nn=1 r=1\n0\n").is_err());
}

proptest! {
    #[test]
    fn ccf_round_trip(n in 1usize..24, bits in proptest::collection::vec(any::<bool>(), 1..64)) {
        let cfg = Configuration::from_graph(&graph_from_bits(n, &bits)).unwrap();
        prop_assert_eq!(ccf::parse(&ccf::write(&cfg)).unwrap(), cfg);
    }

    #[test]
    fn tensor_is_invariant_under_relabeling(seed in proptest::collection::vec(any::<u32>(), 10)) {
        let cfg = Configuration::from_graph(&Graph::petersen()).unwrap();
        let mut perm: Vec<usize> = (0..10).collect();
        perm.sort_by_key(|&v| seed[v]);
        let a = intersection_tensor(&cfg).unwrap();
        let b = intersection_tensor(&cfg.relabel(&perm)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn degree_identity_on_coherent_graphs(n in 3usize..30) {
        let t = intersection_tensor(&Configuration::from_graph(&Graph::cycle(n)).unwrap());
        // cycles of length > 5 are not coherent as plain graph configurations
        if let Ok(t) = t {
            for i in 0..t.rank() as u32 {
                for j in 0..t.rank() as u32 {
                    for s in 0..t.rank() as u32 {
                        prop_assert_eq!(t.p(i, j, s) * t.k(s), t.p(s, t.pairing(j), i) * t.k(i));
                    }
                }
            }
        }
    }
}
