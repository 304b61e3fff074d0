//! Bounds that apply to any homogeneous coherent configuration.

use cc_core::rational::{format, int};
use cc_core::{structural_flags, Color, Rational};
use cc_distinguish::{bounded_degree_bound, d_from_tensor, tightest_delta};
use cc_spectral::{spectral_motion_bound, union_spectrum};
use num_traits::{One, Signed};

use crate::step::{colors_param, colors_values, param, Ctx, Step};
use crate::{CertifyError, Values};

pub(crate) const DMIN: &str = "minimum-distinguishing";
pub(crate) const SPECTRAL: &str = "spectral-gap";
pub(crate) const BOUNDED: &str = "bounded-degree";

/// `motion >= D_min`.
pub fn distinguishing_step(ctx: &Ctx) -> Result<Step, CertifyError> {
    let t = ctx.tensor;
    let mut s = Step::new(DMIN, "a nontrivial automorphism moves every distinguisher of some moved pair");
    if !s.check("homogeneous", t.is_homogeneous()) {
        s.conclusion = "not homogeneous".into();
        return Ok(s);
    }
    let mut dmin = None;
    for i in t.edge_colors() {
        let d = d_from_tensor(t, i);
        s.value(format!("D_{i}"), d);
        dmin = Some(dmin.map_or(d, |m: u64| m.min(d)));
    }
    match dmin {
        Some(d) => {
            s.value("Dmin", d);
            s.bound = Some(int(d));
            s.conclusion = format!("motion >= {d}");
        }
        None => s.conclusion = "single point".into(),
    }
    Ok(s)
}

/// Mixing-lemma bound `n (k - ξ - q) / k` for the undirected graph `X_I`.
pub fn spectral_step(ctx: &Ctx, set: &[Color]) -> Result<Step, CertifyError> {
    eval_spectral(ctx, &colors_values(set))
}

pub(crate) fn eval_spectral(ctx: &Ctx, params: &Values) -> Result<Step, CertifyError> {
    let t = ctx.tensor;
    let set = colors_param(params)?;
    let mut s = Step::new(SPECTRAL, "expander mixing: few common neighbors and a spectral gap force large support")
        .with_params(params);
    let spec = union_spectrum(t, &set)?;
    let xi = spec.xi_upper();
    let q = t.union_q(&set);
    s.value("n", t.n() as u64);
    s.value("k", spec.k);
    s.value("q", q);
    s.rational("xi_upper", xi.clone());
    s.check("xi_verified", spec.xi_at_most(&xi));
    let b = spectral_motion_bound(t.n() as u64, spec.k, &xi, q);
    s.conclusion = format!("motion >= {} for colors {set:?}", format(&b));
    if b.is_positive() {
        s.bound = Some(b);
    }
    Ok(s)
}

/// `motion >= min(δ, 1 - δ) n / (6 (r - 1))` when every degree is at most `δ n`.
pub fn bounded_degree_step(ctx: &Ctx, delta: &Rational) -> Result<Step, CertifyError> {
    let mut params = Values::new();
    params.insert("delta".into(), delta.clone());
    eval_bounded(ctx, &params)
}

pub(crate) fn eval_bounded(ctx: &Ctx, params: &Values) -> Result<Step, CertifyError> {
    let t = ctx.tensor;
    let delta = param(params, "delta")?;
    let mut s = Step::new(BOUNDED, "primitive configurations with all degrees at most delta n have linear motion")
        .with_params(params);
    let kmax = t.edge_colors().into_iter().map(|i| t.k(i)).max().unwrap_or(0);
    s.value("n", t.n() as u64);
    s.value("k_max", kmax);
    s.value("rank", t.rank() as u64);
    s.check("primitive", structural_flags(t).primitive);
    s.check("degrees_bounded", int(kmax) <= &delta * int(t.n() as u64));
    s.check("delta_in_range", delta.is_positive() && delta < Rational::one());
    if s.all_hold() {
        let b = bounded_degree_bound(t, &delta)?;
        s.conclusion = format!("motion >= {}", format(&b));
        if b.is_positive() {
            s.bound = Some(b);
        }
    } else {
        s.conclusion = "hypotheses fail".into();
    }
    Ok(s)
}

/// Color classes `{i, i*}` of a homogeneous tensor.
pub(crate) fn classes(ctx: &Ctx) -> Vec<Vec<Color>> {
    let t = ctx.tensor;
    let mut out: Vec<Vec<Color>> = Vec::new();
    for i in t.edge_colors() {
        let star = t.pairing(i);
        if star >= i {
            out.push(if star == i { vec![i] } else { vec![i, star] });
        }
    }
    out
}

/// Generic tools: `D_min`, spectral bounds over single color classes and
/// pairs of them, and the bounded-degree bound at the tightest `δ`.
pub(crate) fn fallbacks(ctx: Ctx, steps: &mut Vec<Step>, warnings: &mut Vec<String>) {
    let mut push = |r: Result<Step, CertifyError>| match r {
        Ok(s) => steps.push(s),
        Err(e) => warnings.push(e.to_string()),
    };
    push(distinguishing_step(&ctx));
    let cls = classes(&ctx);
    let mut sets: Vec<Vec<Color>> = cls.clone();
    if cls.len() <= 6 {
        for a in 0..cls.len() {
            for b in a + 1..cls.len() {
                let mut u = [cls[a].clone(), cls[b].clone()].concat();
                u.sort_unstable();
                if u.len() + 1 < ctx.tensor.rank() {
                    sets.push(u);
                }
            }
        }
    }
    for set in sets {
        push(spectral_step(&ctx, &set));
    }
    let delta = tightest_delta(ctx.tensor);
    if delta < Rational::one() && structural_flags(ctx.tensor).primitive {
        push(bounded_degree_step(&ctx, &delta));
    }
}
