use cc_core::rational::{int, rat};
use cc_core::{intersection_tensor, Configuration};
use cc_distinguish::{bounded_degree_bound, d_from_tensor, distinguishing_report, pair_distinguishing, tightest_delta};
use cc_families::{gen_cycle, gen_hamming, gen_johnson, gen_paley};
use proptest::prelude::*;

/// Points seeing `u` and `v` in different colors, counted directly.
fn brute_d(cfg: &Configuration, u: usize, v: usize) -> u64 {
    (0..cfg.n()).filter(|&x| cfg.color(x, u) != cfg.color(x, v)).count() as u64
}

fn schemes() -> Vec<Configuration> {
    vec![
        gen_johnson(6, 2).unwrap(),
        gen_johnson(7, 3).unwrap(),
        gen_hamming(3, 3).unwrap(),
        gen_cycle(11).unwrap(),
        gen_paley(13).unwrap(),
    ]
}

#[test]
fn tensor_formula_matches_counting() {
    for cfg in schemes() {
        let t = intersection_tensor(&cfg).unwrap();
        let report = distinguishing_report(&cfg).unwrap();
        for (c, d) in &report.d_by_color {
            assert_eq!(*d, d_from_tensor(&t, *c));
        }
        for u in 0..cfg.n() {
            for v in 0..cfg.n() {
                if u != v {
                    assert_eq!(brute_d(&cfg, u, v), report.d_by_color[&cfg.color(u, v)]);
                }
            }
        }
    }
}

#[test]
fn bounded_degree_on_paley() {
    // r = 3, delta = 6/13: min(6/13, 7/13) / 12 * 13 = 1/2
    let t = intersection_tensor(&gen_paley(13).unwrap()).unwrap();
    assert_eq!(tightest_delta(&t), rat(6, 13));
    assert_eq!(bounded_degree_bound(&t, &rat(6, 13)).unwrap(), rat(1, 2));
    assert!(bounded_degree_bound(&t, &int(1)).is_err());
}

proptest! {
    #[test]
    fn pair_counts_are_symmetric(u in 0usize..35, v in 0usize..35) {
        let cfg = gen_johnson(7, 3).unwrap();
        prop_assume!(u != v);
        let d = pair_distinguishing(&cfg, u, v).unwrap();
        prop_assert_eq!(d, pair_distinguishing(&cfg, v, u).unwrap());
        prop_assert_eq!(d, brute_d(&cfg, u, v));
    }
}
