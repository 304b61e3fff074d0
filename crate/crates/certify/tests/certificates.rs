use cc_autgroup::{exact_motion, orbital_configuration};
use cc_certify::{
    audit, certify, claw_degree_ratio, classify_rank4, clique_degree_ratio, corollary_halved, corollary_same_side,
    lemma_k2_large, line_graph_branch, param_inequalities, srg_branch_checks, sun_wilmes_check, theorem_diam2,
    triangle_inequality, Branch, Certificate, CertifyError, Ctx, Diam2Outcome, Family, VerdictKind, DIAM2_EPS,
};
use cc_core::rational::{int, rat, ten_pow_neg};
use cc_core::{intersection_tensor, Configuration, Graph, Rational};
use cc_families::{gen_hamming, gen_johnson, gen_paley, line_graph_scheme, FamilySpec};
use proptest::prelude::*;

/// Cyclotomic scheme on `Z_p`: orbitals of `x -> x + 1` and `x -> g^e x`
/// for a primitive root `g`.
fn cyclotomic(p: usize, g: usize, e: u32) -> Configuration {
    let shift: Vec<usize> = (0..p).map(|x| (x + 1) % p).collect();
    let mul = g.pow(e) % p;
    let scale: Vec<usize> = (0..p).map(|x| x * mul % p).collect();
    orbital_configuration(&[shift, scale], p).unwrap()
}

/// Rank-4 primitive association schemes of diameter 2.
fn rank4_diameter_two() -> Vec<(String, Configuration)> {
    [(13, 2, 3), (19, 2, 3), (31, 3, 3), (37, 2, 3)]
        .into_iter()
        .map(|(p, g, e)| (format!("cyc({p},3)"), cyclotomic(p, g, e)))
        .collect()
}

fn small_corpus() -> Vec<(String, Configuration)> {
    let mut out: Vec<(String, Configuration)> = FamilySpec::corpus()
        .into_iter()
        .filter_map(|s| Some((s.to_string(), s.build(60).ok()?)))
        .collect();
    out.extend(rank4_diameter_two());
    out
}

#[test]
fn cyclotomic_fixtures_are_rank4_diameter_two() {
    for (name, cfg) in rank4_diameter_two() {
        let t = intersection_tensor(&cfg).unwrap();
        assert_eq!(t.rank(), 4, "{name}");
        assert_eq!(classify_rank4(&t), Ok(Branch::AssocDiameter2), "{name}");
    }
}

#[test]
fn cube_is_imprimitive_and_fails_the_degree_precondition() {
    let t = intersection_tensor(&gen_hamming(3, 2).unwrap()).unwrap();
    assert_eq!(classify_rank4(&t), Err(CertifyError::NotPrimitive));
    assert!(param_inequalities(&t, &rat(1, 2)).is_err());
}

#[test]
fn equal_degrees_give_a_sixth() {
    for (name, cfg) in rank4_diameter_two() {
        let t = intersection_tensor(&cfg).unwrap();
        let n = t.n() as u64;
        let s = lemma_k2_large(&t, &int(1)).unwrap().expect("k2 = k3");
        assert_eq!(s.bound, Some(rat(n as i64, 6)), "{name}");
        assert!(lemma_k2_large(&t, &int(2)).unwrap().is_none(), "{name}");
        assert!(rat(n as i64, 6) <= int(exact_motion(&cfg).unwrap().motion), "{name}");
        // all degrees equal: max(k1, k2) <= eps k3 / 2 needs eps >= 2
        assert!(matches!(param_inequalities(&t, &int(1)), Err(CertifyError::PreconditionViolated(_))));
        let step = param_inequalities(&t, &int(2)).unwrap();
        assert!(step.all_hold(), "{name}: saturated boundary");
    }
}

#[test]
fn triangle_tools_on_rank4() {
    for (name, cfg) in rank4_diameter_two() {
        let t = intersection_tensor(&cfg).unwrap();
        let eps = int(2);
        for i in 1..=2 {
            for j in 1..=2 {
                for s in 1..=2 {
                    assert!(corollary_same_side(&t, &eps, i, j, s).unwrap().holds, "{name}");
                    let (main, sharp) = corollary_halved(&t, &eps, i, j, s).unwrap();
                    assert!(main.holds, "{name}");
                    assert!(sharp.map_or(true, |c| c.holds), "{name}");
                }
            }
        }
        for c in t.edge_colors() {
            let check = triangle_inequality(&t, [c, c, c], [0, c, c]).unwrap();
            assert!(check.holds, "{name}");
        }
    }
}

#[test]
fn diameter_two_outcomes_never_empty() {
    for (name, cfg) in rank4_diameter_two() {
        let t = intersection_tensor(&cfg).unwrap();
        let report = theorem_diam2(Ctx { tensor: &t, cfg: Some(&cfg) }, &ten_pow_neg(DIAM2_EPS)).unwrap();
        assert!(report.outcomes.contains(&Diam2Outcome::Distinguished), "{name}");
        assert!(report.step.holds("some_outcome"), "{name}");
        // no -2 constituent on these small circulants
        assert!(matches!(
            srg_branch_checks(Ctx::tensor_only(&t)),
            Err(CertifyError::HypothesisViolated { .. })
        ));
        let claw = claw_degree_ratio(&t, &rat(1, 100), &rat(1, 100)).unwrap();
        assert!(claw.holds("k2 <= 20 k1"), "{name}");
        let cl = clique_degree_ratio(Ctx::tensor_only(&t), 3, &rat(1, 20)).unwrap();
        assert!(cl.holds("p_23^1 <= (m^2-2)/2 k1") || !cl.holds("geometry"), "{name}");
    }
}

#[test]
fn line_graph_of_petersen() {
    let ls = line_graph_scheme(&Graph::petersen()).unwrap();
    let steps = line_graph_branch(&ls.config, ls.line_color.unwrap()).unwrap();
    let b = steps[0].bound.clone().unwrap();
    assert!(b <= int(exact_motion(&ls.config).unwrap().motion));
    assert!(b >= rat(15, 16));
    let k33 = line_graph_scheme(&Graph::complete_bipartite(3, 3)).unwrap();
    assert!(matches!(line_graph_branch(&k33.config, k33.line_color.unwrap()), Err(CertifyError::NotApplicable(_))));
}

#[test]
fn triangular_five_cliques() {
    let cfg = gen_johnson(5, 2).unwrap();
    let r = sun_wilmes_check(&cfg, &[1], &rat(1, 4)).unwrap();
    assert_eq!(r.alpha_interior, int(0));
    assert!(r.bound.unwrap() <= int(exact_motion(&cfg).unwrap().motion));
}

#[test]
fn exceptional_verdicts() {
    let j = certify(&gen_johnson(7, 2).unwrap());
    assert_eq!(j.verdict.kind, VerdictKind::Exceptional);
    assert_eq!(j.verdict.family, Some(Family::Johnson { m: 7, d: 2 }));
    let h = certify(&gen_hamming(2, 4).unwrap());
    assert_eq!(h.verdict.family, Some(Family::Hamming { d: 2, m: 4 }));
    let p = certify(&gen_paley(13).unwrap());
    assert_eq!(p.verdict.kind, VerdictKind::MotionAtLeast);
    assert!(p.verdict.bound().unwrap() <= int(exact_motion(&gen_paley(13).unwrap()).unwrap().motion));
}

#[test]
fn every_bound_is_at_most_the_motion() {
    for (name, cfg) in small_corpus() {
        let cert = certify(&cfg);
        let Ok(m) = exact_motion(&cfg) else { continue };
        assert!(m.exact, "{name}");
        let motion = int(m.motion);
        for s in &cert.steps {
            if let Some(b) = &s.bound {
                assert!(*b <= motion, "{name}: {} claims {b} > {}", s.rule, m.motion);
            }
        }
        if let Some(b) = cert.verdict.bound() {
            assert!(b <= motion, "{name}");
            assert_eq!(Some(b), cert.best_bound(), "{name}");
        }
    }
}

fn round_trip(cert: &Certificate) -> Certificate {
    serde_json::from_str(&serde_json::to_string(cert).unwrap()).unwrap()
}

#[test]
fn certificates_replay() {
    for (name, cfg) in small_corpus() {
        let cert = round_trip(&certify(&cfg));
        let full = audit(&cert, Some(&cfg)).unwrap();
        assert!(full.ok(), "{name}: {:?}", full.mismatches);
        assert_eq!(full.skipped, 0);
        let tensor_only = audit(&cert, None).unwrap();
        assert!(tensor_only.ok(), "{name}: {:?}", tensor_only.mismatches);
        assert_eq!(tensor_only.replayed + tensor_only.skipped, cert.steps.len());
    }
}

#[test]
fn tampering_is_caught() {
    let cfg = gen_paley(13).unwrap();
    let mut cert = certify(&cfg);
    let step = cert.steps.iter_mut().find(|s| s.bound.is_some()).unwrap();
    step.bound = Some(step.bound.clone().unwrap() + Rational::from_integer(1.into()));
    let report = audit(&cert, Some(&cfg)).unwrap();
    assert!(!report.ok());
    let other = gen_paley(17).unwrap();
    assert!(matches!(audit(&cert, Some(&other)), Err(CertifyError::HashMismatch { .. })));
}

#[test]
fn incoherent_input_is_inconclusive() {
    let cfg = Configuration::from_graph(&Graph::path(5)).unwrap();
    let cert = certify(&cfg);
    assert_eq!(cert.verdict.kind, VerdictKind::Inconclusive);
    assert!(cert.verdict.reason.unwrap().contains("coherent"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn relabeling_keeps_the_verdict(seed in any::<u64>(), pick in 0usize..4) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let (name, cfg) = rank4_diameter_two().swap_remove(pick);
        let mut perm: Vec<usize> = (0..cfg.n()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let relabeled = cfg.relabel(&perm);
        let a = certify(&cfg);
        let b = certify(&relabeled);
        prop_assert_eq!(a.verdict.kind, b.verdict.kind, "{}", &name);
        prop_assert!(audit(&b, Some(&relabeled)).unwrap().ok());
    }
}
