//! Rank-4 association schemes: classification, parameter inequalities and
//! the diameter-2 case analysis.

use cc_core::rational::{format, int, rat, ten_pow_neg};
use cc_core::{structural_flags, Color, IntersectionTensor, Rational};
use cc_geometry::{recognize_srg_minus2, SrgMinus2};
use cc_spectral::{spectral_motion_bound, union_spectrum};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cliques::{line_graph_base, line_graph_branch, sun_wilmes_check};
use crate::exceptional::metric_order;
use crate::step::{param, Ctx, Step};
use crate::{Branch, CertifyError, Values};

pub(crate) const CLASSIFY: &str = "classify-rank4";
pub(crate) const DRG: &str = "distance-regular";
pub(crate) const K2_LARGE: &str = "large-second-degree";
pub(crate) const PARAMS: &str = "small-degree-inequalities";
pub(crate) const TRIANGLES: &str = "triangle-inequalities";
pub(crate) const DIAM2: &str = "diameter-two-outcomes";
pub(crate) const X12_SRG: &str = "small-union-strongly-regular";
pub(crate) const X2_SRG: &str = "second-constituent-strongly-regular";
pub(crate) const X1_SRG: &str = "first-constituent-strongly-regular";
pub(crate) const CLAW: &str = "claw-degree-ratio";
pub(crate) const CLIQUE_RATIO: &str = "clique-geometry-degree-ratio";

/// The `ε` of the diameter-2 classification: `10^-16`.
pub const DIAM2_EPS: u32 = 16;

/// Colors of a rank-4 homogeneous tensor in degree order: position 0 is
/// the diagonal, positions 1..=3 the edge colors by `(k, id)`.
#[derive(Clone, Copy)]
pub(crate) struct Ordered<'a> {
    pub t: &'a IntersectionTensor,
    pub c: [Color; 4],
}

impl<'a> Ordered<'a> {
    pub fn new(t: &'a IntersectionTensor) -> Result<Self, CertifyError> {
        if t.rank() != 4 {
            return Err(CertifyError::NotRank4 { rank: t.rank() });
        }
        if !t.is_homogeneous() {
            return Err(CertifyError::PreconditionViolated("not homogeneous".into()));
        }
        let mut e = t.edge_colors();
        e.sort_by_key(|&i| (t.k(i), i));
        Ok(Ordered { t, c: [t.diagonal_colors()[0], e[0], e[1], e[2]] })
    }

    pub fn k(&self, a: usize) -> u64 {
        self.t.k(self.c[a])
    }

    pub fn p(&self, a: usize, b: usize, s: usize) -> u64 {
        self.t.p(self.c[a], self.c[b], self.c[s])
    }

    pub fn set(&self, pos: &[usize]) -> Vec<Color> {
        let mut v: Vec<Color> = pos.iter().map(|&a| self.c[a]).collect();
        v.sort_unstable();
        v
    }

    pub fn kr(&self, a: usize) -> Rational {
        int(self.k(a))
    }

    pub fn pr(&self, a: usize, b: usize, s: usize) -> Rational {
        int(self.p(a, b, s))
    }
}

fn setting_assoc_diam2(t: &IntersectionTensor) -> Result<Ordered<'_>, CertifyError> {
    let o = Ordered::new(t)?;
    if !t.is_association_scheme() {
        return Err(CertifyError::PreconditionViolated("not an association scheme".into()));
    }
    let f = structural_flags(t);
    if !f.primitive {
        return Err(CertifyError::NotPrimitive);
    }
    if f.scheme_diameter != Some(2) {
        return Err(CertifyError::PreconditionViolated("scheme diameter is not 2".into()));
    }
    Ok(o)
}

pub fn classify_rank4(t: &IntersectionTensor) -> Result<Branch, CertifyError> {
    if t.rank() != 4 {
        return Err(CertifyError::NotRank4 { rank: t.rank() });
    }
    let f = structural_flags(t);
    if !f.primitive {
        return Err(CertifyError::NotPrimitive);
    }
    if !f.association_scheme {
        Ok(Branch::OrientedColors)
    } else if t.edge_colors().iter().any(|&i| t.constituent_diameter(i) == Some(3)) {
        Ok(Branch::DRGDiameter3)
    } else {
        Ok(Branch::AssocDiameter2)
    }
}

fn branch_code(b: Branch) -> u64 {
    match b {
        Branch::Unclassified => 0,
        Branch::OrientedColors => 1,
        Branch::DRGDiameter3 => 2,
        Branch::AssocDiameter2 => 3,
    }
}

pub(crate) fn classify_step(ctx: &Ctx) -> Step {
    let t = ctx.tensor;
    let mut s = Step::new(CLASSIFY, "primitive rank-4 configurations split into three classes");
    let f = structural_flags(t);
    s.value("rank", t.rank() as u64);
    s.value("oriented_colors", t.edge_colors().iter().filter(|&&i| !t.is_symmetric_color(i)).count() as u64);
    if let Some(d) = f.scheme_diameter {
        s.value("diameter", d);
    }
    s.check("rank4", t.rank() == 4);
    s.check("primitive", f.primitive);
    let branch = classify_rank4(t).unwrap_or(Branch::Unclassified);
    s.value("branch", branch_code(branch));
    s.conclusion = format!("{branch:?}");
    s
}

pub(crate) fn branch_of(step: &Step) -> Branch {
    match step.hypotheses.get("branch").and_then(|v| v.to_integer().to_u64()) {
        Some(1) => Branch::OrientedColors,
        Some(2) => Branch::DRGDiameter3,
        Some(3) => Branch::AssocDiameter2,
        _ => Branch::Unclassified,
    }
}

/// Records the intersection array; the diameter-3 classification itself is
/// not replayed, the generic tools run instead.
pub(crate) fn drg_step(ctx: &Ctx) -> Result<Step, CertifyError> {
    let t = ctx.tensor;
    let mut s = Step::new(DRG, "a diameter-3 constituent makes the scheme metric");
    let found = t.edge_colors().into_iter().find_map(|i| Some((i, metric_order(t, i)?)));
    s.check("distance_regular", found.is_some());
    if let Some((i, order)) = found {
        s.value("color", i);
        for j in 0..order.len() - 1 {
            s.value(format!("b_{j}"), t.p(i, order[j + 1], order[j]));
            s.value(format!("c_{}", j + 1), t.p(i, order[j], order[j + 1]));
        }
        s.conclusion = "distance-regular of diameter 3; generic tools apply".into();
    } else {
        s.conclusion = "no metric color".into();
    }
    Ok(s)
}

fn eps_values(eps: &Rational) -> Values {
    let mut v = Values::new();
    v.insert("eps".into(), eps.clone());
    v
}

/// `k_2 >= γ k_3` gives `D_min >= γ n / 6`.
pub fn lemma_k2_large(t: &IntersectionTensor, gamma: &Rational) -> Result<Option<Step>, CertifyError> {
    let mut params = Values::new();
    params.insert("gamma".into(), gamma.clone());
    let s = eval_k2_large(&Ctx::tensor_only(t), &params)?;
    if !s.holds("setting") {
        return Err(CertifyError::PreconditionViolated("rank-4 association scheme of diameter 2 required".into()));
    }
    Ok(s.bound.is_some().then_some(s))
}

pub(crate) fn eval_k2_large(ctx: &Ctx, params: &Values) -> Result<Step, CertifyError> {
    let gamma = param(params, "gamma")?;
    let mut s = Step::new(K2_LARGE, "a large second degree forces every pair to be well distinguished")
        .with_params(params);
    let o = match setting_assoc_diam2(ctx.tensor) {
        Ok(o) => o,
        Err(_) => {
            s.check("setting", false);
            s.conclusion = "not a rank-4 association scheme of diameter 2".into();
            return Ok(s);
        }
    };
    s.check("setting", true);
    s.value("n", ctx.tensor.n() as u64);
    s.value("k2", o.k(2));
    s.value("k3", o.k(3));
    let holds = s.check("k2 >= gamma k3", o.kr(2) >= &gamma * o.kr(3)) && gamma.is_positive();
    if holds {
        let b = gamma * int(ctx.tensor.n() as u64) / int(6);
        s.conclusion = format!("every pair is distinguished by at least {}", format(&b));
        s.bound = Some(b);
    } else {
        s.conclusion = "k2 < gamma k3".into();
    }
    Ok(s)
}

/// The five consequences of `max(k_1, k_2) <= ε k_3 / 2`.
pub fn param_inequalities(t: &IntersectionTensor, eps: &Rational) -> Result<Step, CertifyError> {
    let s = eval_params(&Ctx::tensor_only(t), &eps_values(eps))?;
    if !s.holds("setting") || !s.holds("precondition") {
        return Err(CertifyError::PreconditionViolated("max(k1, k2) <= eps k3 / 2 fails".into()));
    }
    Ok(s)
}

pub(crate) fn eval_params(ctx: &Ctx, params: &Values) -> Result<Step, CertifyError> {
    let eps = param(params, "eps")?;
    let mut s = Step::new(PARAMS, "small degrees force small intersection numbers").with_params(params);
    let o = match setting_assoc_diam2(ctx.tensor) {
        Ok(o) => o,
        Err(_) => {
            s.check("setting", false);
            s.conclusion = "not a rank-4 association scheme of diameter 2".into();
            return Ok(s);
        }
    };
    s.check("setting", true);
    for a in 1..=3 {
        s.value(format!("k{a}"), o.k(a));
    }
    for (a, b, c) in [(1, 2, 3), (1, 1, 3), (2, 2, 3), (3, 3, 1), (3, 3, 2)] {
        s.value(format!("p_{a}{b}^{c}"), o.p(a, b, c));
    }
    let pre = s.check("precondition", int(2 * o.k(1).max(o.k(2))) <= &eps * o.kr(3));
    let one_minus = int(1) - &eps;
    let results = [
        ("p_12^3 <= eps k1", o.pr(1, 2, 3) <= &eps * o.kr(1)),
        ("p_11^3 <= eps k1", o.pr(1, 1, 3) <= &eps * o.kr(1)),
        ("p_22^3 <= eps k2", o.pr(2, 2, 3) <= &eps * o.kr(2)),
        ("p_33^1 >= (1-eps) k3", o.pr(3, 3, 1) >= &one_minus * o.kr(3)),
        ("p_33^2 >= (1-eps) k3", o.pr(3, 3, 2) >= &one_minus * o.kr(3)),
    ];
    for (name, holds) in results {
        s.check(name, holds);
        if pre && !holds {
            return Err(CertifyError::Soundness(format!("{name} fails under its precondition")));
        }
    }
    s.conclusion = if pre { "all five inequalities hold".into() } else { "precondition fails".into() };
    Ok(s)
}

/// Outcome of one inequality `lhs <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub holds: bool,
    #[serde(with = "cc_core::rational::as_string")]
    pub lhs: Rational,
    #[serde(with = "cc_core::rational::as_string")]
    pub rhs: Rational,
    /// `rhs - lhs`.
    #[serde(with = "cc_core::rational::as_string")]
    pub slack: Rational,
}

impl InequalityCheck {
    fn new(lhs: Rational, rhs: Rational) -> Self {
        InequalityCheck { holds: lhs <= rhs, slack: &rhs - &lhs, lhs, rhs }
    }
}

/// `p_{i,j}^s + p_{j,l}^r <= k_j + p_{i,l}^t` for a triangle with sides of
/// colors `(s, r, t)`. Colors are raw ids.
pub fn triangle_inequality(
    t: &IntersectionTensor,
    [i, j, l]: [Color; 3],
    [s, r, tt]: [Color; 3],
) -> Result<InequalityCheck, CertifyError> {
    if !t.is_association_scheme() || !t.is_homogeneous() {
        return Err(CertifyError::PreconditionViolated("homogeneous association scheme required".into()));
    }
    let rank = t.rank() as Color;
    if [i, j, l, s, r, tt].iter().any(|&c| c >= rank) {
        return Err(CertifyError::Core(cc_core::CoreError::ColorOutOfRange { color: rank, rank: rank as usize }));
    }
    if t.p(s, r, tt) == 0 {
        return Err(CertifyError::NoSuchTriangle { s, r, t: tt });
    }
    Ok(InequalityCheck::new(int(t.p(i, j, s) + t.p(j, l, r)), int(t.k(j) + t.p(i, l, tt))))
}

fn corollary_setting<'a>(t: &'a IntersectionTensor, eps: &Rational) -> Result<Ordered<'a>, CertifyError> {
    let o = setting_assoc_diam2(t)?;
    if int(2 * o.k(1).max(o.k(2))) > eps * o.kr(3) {
        return Err(CertifyError::PreconditionViolated("max(k1, k2) <= eps k3 / 2 fails".into()));
    }
    Ok(o)
}

fn check_positions(pos: &[usize], allowed: &[usize]) -> Result<(), CertifyError> {
    if pos.iter().all(|a| allowed.contains(a)) {
        Ok(())
    } else {
        Err(CertifyError::PreconditionViolated(format!("positions {pos:?} out of range")))
    }
}

/// With a triangle of sides `(s, t, 3)`: `p_{i,j}^s <= p_{i,3}^t + ε k_j`,
/// `i, j ∈ {1, 2}`. Positions are in degree order.
pub fn corollary_shared_side(
    t: &IntersectionTensor,
    eps: &Rational,
    s: usize,
    tt: usize,
    i: usize,
    j: usize,
) -> Result<InequalityCheck, CertifyError> {
    let o = corollary_setting(t, eps)?;
    check_positions(&[i, j], &[1, 2])?;
    check_positions(&[s, tt], &[1, 2, 3])?;
    if o.p(s, 3, tt) == 0 {
        return Err(CertifyError::NoSuchTriangle { s: o.c[s], r: o.c[3], t: o.c[tt] });
    }
    Ok(InequalityCheck::new(o.pr(i, j, s), o.pr(i, 3, tt) + eps * o.kr(j)))
}

/// `p_{i,j}^s <= p_{i,3}^s + ε k_j` for `i, j, s ∈ {1, 2}`.
pub fn corollary_same_side(
    t: &IntersectionTensor,
    eps: &Rational,
    i: usize,
    j: usize,
    s: usize,
) -> Result<InequalityCheck, CertifyError> {
    let o = corollary_setting(t, eps)?;
    check_positions(&[i, j, s], &[1, 2])?;
    Ok(InequalityCheck::new(o.pr(i, j, s), o.pr(i, 3, s) + eps * o.kr(j)))
}

/// `2 p_{i,j}^s <= k_j + ε k_i` for `i, j, s ∈ {1, 2}`; with `(i, j, s) =
/// (1, 2, 2)` and `k_1 <= k_2` also the sharper `2 p_{1,2}^2 <= (1 + ε) k_1`,
/// returned second.
pub fn corollary_halved(
    t: &IntersectionTensor,
    eps: &Rational,
    i: usize,
    j: usize,
    s: usize,
) -> Result<(InequalityCheck, Option<InequalityCheck>), CertifyError> {
    let o = corollary_setting(t, eps)?;
    check_positions(&[i, j, s], &[1, 2])?;
    let main = InequalityCheck::new(int(2) * o.pr(i, j, s), o.kr(j) + eps * o.kr(i));
    let sharp = ((i, j, s) == (1, 2, 2) && o.k(1) <= o.k(2))
        .then(|| InequalityCheck::new(int(2) * o.pr(1, 2, 2), (int(1) + eps) * o.kr(1)));
    Ok((main, sharp))
}

pub(crate) fn eval_triangles(ctx: &Ctx, params: &Values) -> Result<Step, CertifyError> {
    let eps = param(params, "eps")?;
    let t = ctx.tensor;
    let mut s = Step::new(TRIANGLES, "triangle inequality for intersection numbers").with_params(params);
    if !s.check("setting", t.is_association_scheme() && t.is_homogeneous()) {
        s.conclusion = "not a homogeneous association scheme".into();
        return Ok(s);
    }
    let r = t.rank() as Color;
    let mut count = 0u64;
    let mut min_slack: Option<Rational> = None;
    for sc in 0..r {
        for rc in 0..r {
            for tc in 0..r {
                if t.p(sc, rc, tc) == 0 {
                    continue;
                }
                for i in 0..r {
                    for j in 0..r {
                        for l in 0..r {
                            let c = triangle_inequality(t, [i, j, l], [sc, rc, tc])?;
                            if !c.holds {
                                return Err(CertifyError::Soundness(format!(
                                    "triangle inequality fails at ({i},{j},{l}) ({sc},{rc},{tc})"
                                )));
                            }
                            count += 1;
                            if min_slack.as_ref().map_or(true, |m| c.slack < *m) {
                                min_slack = Some(c.slack);
                            }
                        }
                    }
                }
            }
        }
    }
    s.value("instances", count);
    s.rational("min_slack", min_slack.unwrap_or_else(Rational::zero));
    s.check("general", true);
    let corollaries = corollary_setting(t, &eps).is_ok();
    s.check("corollary_precondition", corollaries);
    if corollaries {
        let mut n = 0u64;
        let mut fail = |name: &str, c: InequalityCheck| -> Result<(), CertifyError> {
            n += 1;
            if c.holds {
                Ok(())
            } else {
                Err(CertifyError::Soundness(format!("{name} fails: {} > {}", format(&c.lhs), format(&c.rhs))))
            }
        };
        for i in 1..=2 {
            for j in 1..=2 {
                for sp in 1..=2 {
                    fail("same-side corollary", corollary_same_side(t, &eps, i, j, sp)?)?;
                    let (main, sharp) = corollary_halved(t, &eps, i, j, sp)?;
                    fail("halved corollary", main)?;
                    if let Some(c) = sharp {
                        fail("sharp halved corollary", c)?;
                    }
                }
                for sp in 1..=3 {
                    for tp in 1..=3 {
                        match corollary_shared_side(t, &eps, sp, tp, i, j) {
                            Ok(c) => fail("shared-side corollary", c)?,
                            Err(CertifyError::NoSuchTriangle { .. }) => {}
                            Err(e) => return Err(e),
                        }
                    }
                }
            }
        }
        s.value("corollary_instances", n);
    }
    s.conclusion = format!("{count} triangle inequalities hold");
    Ok(s)
}

/// Shape evidence for a constituent or a union.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shape {
    SrgMinus2(SrgMinus2),
    /// Line graph of a connected regular triangle-free graph.
    LineOfTriangleFree { base_n: usize, base_k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Diam2Outcome {
    Distinguished,
    /// Degree position 1 or 2.
    SpectralGap(usize),
    X1Line(Shape),
    X2Line(Shape),
    X12Srg(SrgMinus2),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diam2Report {
    pub outcomes: Vec<Diam2Outcome>,
    pub step: Step,
}

/// Strongly regular parameters of the undirected `X_I` in a homogeneous
/// association scheme, with `-2` as smallest eigenvalue.
pub(crate) fn srg_minus2(t: &IntersectionTensor, set: &[Color]) -> Result<Option<SrgMinus2>, CertifyError> {
    let inside: Vec<u64> = set.iter().map(|&c| t.union_common(set, c)).collect();
    let outside: Vec<u64> =
        t.edge_colors().into_iter().filter(|c| !set.contains(c)).map(|c| t.union_common(set, c)).collect();
    if outside.is_empty() || inside.iter().any(|&x| x != inside[0]) || outside.iter().any(|&x| x != outside[0]) {
        return Ok(None);
    }
    if !union_spectrum(t, set)?.smallest_is(-2) {
        return Ok(None);
    }
    let (n, k) = (t.n() as u64, t.union_degree(set));
    Ok(recognize_srg_minus2(n, k, inside[0], outside[0]).ok())
}

fn line_shape(ctx: &Ctx, c: Color) -> Option<Shape> {
    let cfg = ctx.cfg?;
    let base = line_graph_base(&cfg.constituent_graph(&[c])).ok()?;
    Some(Shape::LineOfTriangleFree { base_n: base.graph.n(), base_k: base.k })
}

fn srg_code(s: &SrgMinus2) -> (u64, u64) {
    match *s {
        SrgMinus2::Triangular(x) => (1, x),
        SrgMinus2::Lattice(x) => (2, x),
        SrgMinus2::CocktailParty(x) => (3, x),
        SrgMinus2::Sporadic => (4, 0),
        SrgMinus2::None => (5, 0),
    }
}

/// Every outcome of the diameter-2 classification that holds, evaluated
/// directly. `NoOutcome` if none does.
pub fn theorem_diam2(ctx: Ctx, eps: &Rational) -> Result<Diam2Report, CertifyError> {
    let (step, outcomes) = diam2(&ctx, &eps_values(eps))?;
    if !step.holds("setting") {
        return Err(CertifyError::PreconditionViolated("rank-4 association scheme of diameter 2 required".into()));
    }
    if outcomes.is_empty() {
        return Err(CertifyError::NoOutcome);
    }
    Ok(Diam2Report { outcomes, step })
}

pub(crate) fn eval_diam2(ctx: &Ctx, params: &Values) -> Result<Step, CertifyError> {
    Ok(diam2(ctx, params)?.0)
}

fn diam2(ctx: &Ctx, params: &Values) -> Result<(Step, Vec<Diam2Outcome>), CertifyError> {
    let eps = param(params, "eps")?;
    let t = ctx.tensor;
    let mut s = Step::new(DIAM2, "rank-4 diameter-2 schemes: distinguished, spectral gap, or a -2 / line-graph constituent")
        .with_params(params);
    let mut out = Vec::new();
    let o = match setting_assoc_diam2(t) {
        Ok(o) => o,
        Err(_) => {
            s.check("setting", false);
            s.conclusion = "not a rank-4 association scheme of diameter 2".into();
            return Ok((s, out));
        }
    };
    s.check("setting", true);
    let n = t.n() as u64;
    s.value("n", n);
    for a in 1..=3 {
        s.value(format!("k{a}"), o.k(a));
    }

    let dmin = t.edge_colors().into_iter().map(|i| cc_distinguish::d_from_tensor(t, i)).min().unwrap_or(0);
    s.value("Dmin", dmin);
    if s.check("outcome1_distinguished", int(dmin) >= &eps * int(n) / int(12)) {
        out.push(Diam2Outcome::Distinguished);
    }

    for a in 1..=2 {
        let set = o.set(&[a]);
        let spec = union_spectrum(t, &set)?;
        let q = t.union_q(&set);
        s.value(format!("q{a}"), q);
        let room = (int(1) - &eps) * o.kr(a) - int(q);
        let gap = !room.is_negative() && spec.xi_at_most(&room);
        if s.check(format!("outcome2_spectral_gap_{a}"), gap) {
            out.push(Diam2Outcome::SpectralGap(a));
        }
    }

    let ratio = 100 * o.k(2) <= 101 * o.k(1);
    s.check("k2 <= 101/100 k1", ratio);
    for a in 1..=2 {
        let c = o.c[a];
        let srg = srg_minus2(t, &[c])?;
        if let Some(f) = &srg {
            let (code, x) = srg_code(f);
            s.value(format!("x{a}_srg_family"), code);
            s.value(format!("x{a}_srg_param"), x);
        }
        s.check(format!("x{a}_srg_minus2"), srg.is_some());
        let line = if ctx.cfg.is_some() { line_shape(ctx, c) } else { None };
        s.check(format!("x{a}_line_graph"), line.is_some());
        let shape = srg.map(Shape::SrgMinus2).or(line);
        let holds = shape.is_some() && (a == 1 || ratio);
        if s.check(format!("outcome{}_x{a}", a + 2), holds) {
            let shape = shape.unwrap();
            out.push(if a == 1 { Diam2Outcome::X1Line(shape) } else { Diam2Outcome::X2Line(shape) });
        }
    }

    let x12 = srg_minus2(t, &o.set(&[1, 2]))?;
    if let Some(f) = &x12 {
        let (code, x) = srg_code(f);
        s.value("x12_srg_family", code);
        s.value("x12_srg_param", x);
    }
    s.check("x12_srg_minus2", x12.is_some());
    let holds5 = n < 12 || (x12.is_some() && ratio);
    if s.check("outcome5_x12", holds5) {
        if let Some(f) = x12 {
            out.push(Diam2Outcome::X12Srg(f));
        }
    }
    let some = s.check("some_outcome", !out.is_empty() || n < 12);
    s.conclusion = if some { format!("{} outcome(s) hold", out.len()) } else { "no outcome holds".into() };
    Ok((s, out))
}

/// Conclusion checks of the three "one of X_1, X_2, X_{1,2} is strongly
/// regular with smallest eigenvalue -2" cases. Each applicable case becomes a
/// step; its bound comes from the spectral gap or from the clique lemma.
pub fn srg_branch_checks(ctx: Ctx) -> Result<Vec<Step>, CertifyError> {
    let o = setting_assoc_diam2(ctx.tensor)?;
    let mut steps = Vec::new();
    if srg_minus2(ctx.tensor, &o.set(&[1, 2]))?.is_some() {
        steps.push(eval_x12(&ctx, &Values::new())?);
    }
    if srg_minus2(ctx.tensor, &o.set(&[2]))?.is_some() {
        steps.push(eval_x2(&ctx, &Values::new())?);
    }
    if srg_minus2(ctx.tensor, &o.set(&[1]))?.is_some() {
        steps.push(eval_x1(&ctx, &Values::new())?);
    }
    if steps.is_empty() {
        return Err(CertifyError::HypothesisViolated {
            which: "none of X1, X2, X12 is strongly regular with smallest eigenvalue -2".into(),
        });
    }
    Ok(steps)
}

/// Exact `q(Y) + ξ(Y) <= f k_Y` and the mixing-lemma bound for `Y`.
fn gap_check(o: &Ordered, pos: &[usize], factor: &Rational) -> Result<(bool, Rational), CertifyError> {
    let set = o.set(pos);
    let spec = union_spectrum(o.t, &set)?;
    let q = o.t.union_q(&set);
    let room = factor * int(spec.k) - int(q);
    let holds = !room.is_negative() && spec.xi_at_most(&room);
    let b = spectral_motion_bound(o.t.n() as u64, spec.k, &spec.xi_upper(), q);
    Ok((holds, b))
}

fn escalate(s: &Step, hyps: &[&str], conclusion: &str) -> Result<(), CertifyError> {
    if hyps.iter().all(|h| s.holds(h)) && !s.holds(conclusion) {
        return Err(CertifyError::Soundness(format!("{}: hypotheses hold but {conclusion} fails", s.rule)));
    }
    Ok(())
}

pub(crate) fn eval_x12(ctx: &Ctx, params: &Values) -> Result<Step, CertifyError> {
    let o = setting_assoc_diam2(ctx.tensor)?;
    let t = ctx.tensor;
    let mut s = Step::new(X12_SRG, "if X12 is T(s), cliques are well distinguished or X1, X2 is a line graph")
        .with_params(params);
    let n = t.n() as u64;
    s.value("n", n);
    s.value("k1", o.k(1));
    s.value("k2", o.k(2));
    s.value("k3", o.k(3));
    s.check("n >= 29", n >= 29);
    s.check("k2 <= eps k3 / 2, eps < 1/100", 200 * o.k(2) < o.k(3));
    s.check("k2 <= 11/10 k1", 10 * o.k(2) <= 11 * o.k(1));
    let set = o.set(&[1, 2]);
    s.check("x12_srg_minus2", srg_minus2(t, &set)?.is_some());
    let alpha = rat(1, 16);
    s.rational("alpha", alpha.clone());
    let sw = match ctx.cfg {
        Some(cfg) => sun_wilmes_check(cfg, &set, &alpha).ok(),
        None => None,
    };
    let sw_holds = sw.as_ref().is_some_and(|w| w.holds);
    if let Some(w) = &sw {
        s.rational("alpha_true", w.alpha_true.clone());
    }
    s.check("cliques_well_distinguished", sw_holds);
    let line = (1..=2).any(|a| line_shape(ctx, o.c[a]).is_some());
    s.check("x1_or_x2_line_graph", line);
    s.check("conclusion", sw_holds || line);
    escalate(&s, &["n >= 29", "k2 <= eps k3 / 2, eps < 1/100", "k2 <= 11/10 k1", "x12_srg_minus2"], "conclusion")?;
    if let Some(w) = sw.filter(|w| w.holds) {
        s.bound = w.bound.clone();
        s.conclusion = format!("motion >= {}", format(w.bound.as_ref().unwrap()));
    } else {
        s.conclusion = if line { "a constituent is a line graph".into() } else { "conclusion not reached".into() };
    }
    Ok(s)
}

pub(crate) fn eval_x2(ctx: &Ctx, params: &Values) -> Result<Step, CertifyError> {
    let o = setting_assoc_diam2(ctx.tensor)?;
    let t = ctx.tensor;
    let mut s = Step::new(X2_SRG, "if X2 is strongly regular with eigenvalue -2, X12 has a spectral gap")
        .with_params(params);
    let n = t.n() as u64;
    s.value("n", n);
    s.value("k1", o.k(1));
    s.value("k2", o.k(2));
    s.value("k3", o.k(3));
    s.check("n >= 29", n >= 29);
    s.check("k2 <= eps k3 / 2, eps < 10^-11", int(2 * o.k(2)) < ten_pow_neg(11) * o.kr(3));
    s.check("k2 <= 101/100 k1", 100 * o.k(2) <= 101 * o.k(1));
    s.check("x2_srg_minus2", srg_minus2(t, &o.set(&[2]))?.is_some());
    let (holds, b) = gap_check(&o, &[1, 2], &rat(99, 100))?;
    s.check("q12 + xi12 <= 99/100 (k1 + k2)", holds);
    escalate(
        &s,
        &["n >= 29", "k2 <= eps k3 / 2, eps < 10^-11", "k2 <= 101/100 k1", "x2_srg_minus2"],
        "q12 + xi12 <= 99/100 (k1 + k2)",
    )?;
    s.conclusion = format!("spectral bound on X12: {}", format(&b));
    s.bound = b.is_positive().then_some(b);
    Ok(s)
}

pub(crate) fn eval_x1(ctx: &Ctx, params: &Values) -> Result<Step, CertifyError> {
    let o = setting_assoc_diam2(ctx.tensor)?;
    let t = ctx.tensor;
    let mut s = Step::new(X1_SRG, "if X1 is strongly regular with eigenvalue -2, X2 or X12 has a spectral gap")
        .with_params(params);
    let n = t.n() as u64;
    let eps = ten_pow_neg(26);
    s.value("n", n);
    s.value("k1", o.k(1));
    s.value("k2", o.k(2));
    s.value("k3", o.k(3));
    s.check("n >= 29", n >= 29);
    s.check("k2 <= eps k3 / 2, eps = 10^-26", int(2 * o.k(2)) <= &eps * o.kr(3));
    s.check("x1_srg_minus2", srg_minus2(t, &o.set(&[1]))?.is_some());
    let factor = int(1) - eps;
    let (h2, b2) = gap_check(&o, &[2], &factor)?;
    let (h12, b12) = gap_check(&o, &[1, 2], &factor)?;
    s.check("q2 + xi2 <= (1-eps) k2", h2);
    s.check("q12 + xi12 <= (1-eps)(k1 + k2)", h12);
    s.check("conclusion", h2 || h12);
    escalate(&s, &["n >= 29", "k2 <= eps k3 / 2, eps = 10^-26", "x1_srg_minus2"], "conclusion")?;
    let b = b2.max(b12);
    s.conclusion = format!("best spectral bound over X2, X12: {}", format(&b));
    s.bound = b.is_positive().then_some(b);
    Ok(s)
}

/// `k_2 <= 20 k_1` from the claw argument, as a predicate. An error means
/// the hypotheses held and the conclusion did not.
pub fn claw_degree_ratio(t: &IntersectionTensor, eps: &Rational, delta: &Rational) -> Result<Step, CertifyError> {
    let mut params = eps_values(eps);
    params.insert("delta".into(), delta.clone());
    eval_claw(&Ctx::tensor_only(t), &params)
}

pub(crate) fn eval_claw(ctx: &Ctx, params: &Values) -> Result<Step, CertifyError> {
    let eps = param(params, "eps")?;
    let delta = param(params, "delta")?;
    let mut s = Step::new(CLAW, "no 3-claws in colors (2, 3) bound k2 by 20 k1").with_params(params);
    let o = match setting_assoc_diam2(ctx.tensor) {
        Ok(o) => o,
        Err(_) => {
            s.check("setting", false);
            s.conclusion = "not a rank-4 association scheme of diameter 2".into();
            return Ok(s);
        }
    };
    s.check("setting", true);
    let hundredth = rat(1, 100);
    s.value("k1", o.k(1));
    s.value("k2", o.k(2));
    s.value("k3", o.k(3));
    s.value("p_22^2", o.p(2, 2, 2));
    s.value("p_22^1", o.p(2, 2, 1));
    s.check("0 < eps <= 1/100", eps.is_positive() && eps <= hundredth);
    s.check("0 < delta <= 1/100", delta.is_positive() && delta <= hundredth);
    s.check("k2 <= eps k3 / 2", int(2 * o.k(2)) <= &eps * o.kr(3));
    s.check("p_22^2 >= (1-delta)/2 k2", o.pr(2, 2, 2) >= (int(1) - &delta) / int(2) * o.kr(2));
    s.check("k2/8 <= p_22^1 <= k2/3", 8 * o.p(2, 2, 1) >= o.k(2) && 3 * o.p(2, 2, 1) <= o.k(2));
    s.check("k2 <= 20 k1", o.k(2) <= 20 * o.k(1));
    escalate(
        &s,
        &["0 < eps <= 1/100", "0 < delta <= 1/100", "k2 <= eps k3 / 2", "p_22^2 >= (1-delta)/2 k2", "k2/8 <= p_22^1 <= k2/3"],
        "k2 <= 20 k1",
    )?;
    s.conclusion = if s.holds("k2 <= 20 k1") { "k2 <= 20 k1".into() } else { "k2 > 20 k1".into() };
    Ok(s)
}

/// `p_{2,3}^1 <= (m^2 - 2)/2 k_1` and `k_2 <= 3/(2 - 4ε) (m^2 - 2) k_1` for a
/// clique geometry of `X_{1,2}` with at most `m` lines per vertex. The
/// geometry is taken as given (`geometry = 1`) or verified from the
/// configuration when one is present.
pub fn clique_degree_ratio(ctx: Ctx, m: u64, eps: &Rational) -> Result<Step, CertifyError> {
    let mut params = eps_values(eps);
    params.insert("m".into(), int(m));
    eval_clique_ratio(&ctx, &params)
}

pub(crate) fn eval_clique_ratio(ctx: &Ctx, params: &Values) -> Result<Step, CertifyError> {
    let eps = param(params, "eps")?;
    let m = crate::step::param_u32(params, "m")? as i64;
    let mut s = Step::new(CLIQUE_RATIO, "a clique geometry of X12 bounds k2 / k1").with_params(params);
    let o = match setting_assoc_diam2(ctx.tensor) {
        Ok(o) => o,
        Err(_) => {
            s.check("setting", false);
            s.conclusion = "not a rank-4 association scheme of diameter 2".into();
            return Ok(s);
        }
    };
    s.check("setting", true);
    let t = ctx.tensor;
    s.value("n", t.n() as u64);
    s.value("k1", o.k(1));
    s.value("k2", o.k(2));
    s.value("k3", o.k(3));
    s.value("p_23^1", o.p(2, 3, 1));
    s.check("n >= 29", t.n() >= 29);
    s.check("eps < 1/10", eps < rat(1, 10) && eps.is_positive());
    s.check("k2 <= eps k3 / 2", int(2 * o.k(2)) <= &eps * o.kr(3));
    let geometry = match ctx.cfg {
        Some(cfg) => {
            let g = cfg.constituent_graph(&o.set(&[1, 2]));
            cc_geometry::MetschParams::from_graph(&g, m as u64)
                .and_then(|p| cc_geometry::extract_lines(&g, &p))
                .is_ok()
        }
        None => false,
    };
    s.check("geometry", geometry);
    let m2 = int(m * m);
    s.check("p_23^1 <= (m^2-2)/2 k1", o.pr(2, 3, 1) <= (&m2 - int(2)) / int(2) * o.kr(1));
    s.check(
        "k2 <= 3/(2-4eps) (m^2-2) k1",
        eps < rat(1, 2) && o.kr(2) <= int(3) / (int(2) - int(4) * &eps) * (&m2 - int(2)) * o.kr(1),
    );
    let x1 = srg_minus2(t, &o.set(&[1]))?.is_some();
    s.check("x1_srg_minus2", x1);
    let hyps = ["n >= 29", "eps < 1/10", "k2 <= eps k3 / 2", "geometry"];
    escalate(&s, &hyps, "p_23^1 <= (m^2-2)/2 k1")?;
    escalate(&s, &hyps, "k2 <= 3/(2-4eps) (m^2-2) k1")?;
    if x1 {
        s.check("p_23^1 <= (m^2-4)/8 k1", o.pr(2, 3, 1) <= (&m2 - int(4)) / int(8) * o.kr(1));
        escalate(&s, &hyps, "p_23^1 <= (m^2-4)/8 k1")?;
    }
    s.conclusion = "degree-ratio inequalities evaluated".into();
    Ok(s)
}

/// The rank-4 diameter-2 steps in audit order.
pub(crate) fn diameter_two_steps(ctx: Ctx, steps: &mut Vec<Step>, warnings: &mut Vec<String>) {
    let Ok(o) = setting_assoc_diam2(ctx.tensor) else {
        warnings.push("diameter-2 setting does not hold".into());
        return;
    };
    let push = |r: Result<Step, CertifyError>, steps: &mut Vec<Step>, warnings: &mut Vec<String>| match r {
        Ok(s) => steps.push(s),
        Err(e) => warnings.push(e.to_string()),
    };
    let mut gamma = Values::new();
    gamma.insert("gamma".into(), Rational::new(o.k(2).into(), o.k(3).into()));
    push(eval_k2_large(&ctx, &gamma), steps, warnings);
    let eps = Rational::new((2 * o.k(1).max(o.k(2))).into(), o.k(3).into());
    push(eval_params(&ctx, &eps_values(&eps)), steps, warnings);
    push(eval_triangles(&ctx, &eps_values(&eps)), steps, warnings);
    let diam = eval_diam2(&ctx, &eps_values(&ten_pow_neg(DIAM2_EPS)));
    let lines: Vec<Color> = match &diam {
        Ok(d) => (1..=2).filter(|a| d.holds(&format!("x{a}_line_graph")) && !d.holds(&format!("x{a}_srg_minus2"))).map(|a| o.c[a]).collect(),
        Err(_) => Vec::new(),
    };
    push(diam, steps, warnings);
    match srg_branch_checks(ctx) {
        Ok(s) => steps.extend(s),
        Err(CertifyError::HypothesisViolated { .. }) => {}
        Err(e) => warnings.push(e.to_string()),
    }
    if let Some(cfg) = ctx.cfg {
        for c in lines {
            match line_graph_branch(cfg, c) {
                Ok(s) => steps.extend(s),
                Err(e) => warnings.push(e.to_string()),
            }
        }
    }
    let mut claw = eps_values(&rat(1, 100));
    claw.insert("delta".into(), rat(1, 100));
    push(eval_claw(&ctx, &claw), steps, warnings);
}
