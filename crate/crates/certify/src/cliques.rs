//! Clique arguments: line-graph constituents and the within-clique
//! distinguishing check on triangular unions.

use std::collections::BTreeMap;

use cc_autgroup::automorphisms;
use cc_core::rational::{format, int, rat};
use cc_core::{intersection_tensor, Color, Configuration, Graph, Rational};
use cc_geometry::{extract_lines_with_threshold, reconstruct_root_graph, SrgMinus2};
use num_traits::Signed;

use crate::rank4::srg_minus2;
use crate::step::{colors_param, colors_values, param, param_u32, Ctx, Step};
use crate::{CertifyError, Values};

pub(crate) const LINE_GRAPH: &str = "line-graph-constituent";
pub(crate) const SUN_WILMES: &str = "clique-distinguishing";

/// Largest base order on which the automorphism groups of `X` and `L(X)` are
/// compared directly.
const WHITNEY_ORACLE_MAX: usize = 40;

/// `X` with `L(X)` equal to the input, for `X` connected, regular and
/// triangle-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineGraphBase {
    pub graph: Graph,
    pub k: usize,
    /// `edge_to_vertex[(a, b)]` is the input vertex of base edge `ab`.
    pub edge_to_vertex: BTreeMap<(usize, usize), usize>,
}

/// Reconstruct the base of a line graph of a `k`-regular graph. The stars
/// are the maximal cliques of size at least `k`, so only those are used.
pub fn line_graph_base(g: &Graph) -> Result<LineGraphBase, CertifyError> {
    let kl = g.regular_degree().ok_or_else(|| CertifyError::NotLineGraph("not regular".into()))?;
    if kl % 2 != 0 || kl < 2 {
        return Err(CertifyError::NotLineGraph(format!("degree {kl} is not 2(k - 1)")));
    }
    if !g.is_connected() {
        return Err(CertifyError::NotLineGraph("not connected".into()));
    }
    let k = kl / 2 + 1;
    let geom = extract_lines_with_threshold(g, 2, k as i64).map_err(|e| CertifyError::NotLineGraph(e.to_string()))?;
    let root = reconstruct_root_graph(g, &geom).map_err(|e| CertifyError::NotLineGraph(e.to_string()))?;
    let y = root.graph;
    if y.regular_degree() != Some(k) || !y.is_connected() {
        return Err(CertifyError::NotLineGraph("root graph is not connected and regular".into()));
    }
    if y.find_triangle().is_some() {
        return Err(CertifyError::BaseHasTriangle);
    }
    Ok(LineGraphBase { graph: y, k, edge_to_vertex: root.edge_to_vertex })
}

fn strongly_regular(g: &Graph) -> bool {
    let n = g.n();
    let (mut lambda, mut mu) = (None, None);
    for u in 0..n {
        for v in u + 1..n {
            let c = g.common_neighbors(u, v);
            let slot = if g.has_edge(u, v) { &mut lambda } else { &mut mu };
            if *slot.get_or_insert(c) != c {
                return false;
            }
        }
    }
    g.regular_degree().is_some()
}

/// Smallest number of vertices of `g` adjacent to exactly one of a pair,
/// counting the pair itself.
fn graph_dmin(g: &Graph) -> u64 {
    let n = g.n();
    let mut best = u64::MAX;
    for u in 0..n {
        for v in u + 1..n {
            let d = (0..n).filter(|&w| w == u || w == v || g.has_edge(w, u) != g.has_edge(w, v)).count() as u64;
            best = best.min(d);
        }
    }
    best
}

fn color_class(cfg: &Configuration, c: Color) -> Vec<Color> {
    let star = cfg.pairing(c);
    if star == c {
        vec![c]
    } else {
        vec![c.min(star), c.max(star)]
    }
}

/// Motion bound for a constituent that is the line graph of a connected
/// regular triangle-free graph.
pub fn line_graph_branch(cfg: &Configuration, color: Color) -> Result<Vec<Step>, CertifyError> {
    let t = intersection_tensor(cfg)?;
    let mut params = Values::new();
    params.insert("color".into(), int(color));
    Ok(vec![eval_line_graph(&Ctx { tensor: &t, cfg: Some(cfg) }, &params)?])
}

pub(crate) fn eval_line_graph(ctx: &Ctx, params: &Values) -> Result<Step, CertifyError> {
    let cfg = ctx.cfg()?;
    let color = param_u32(params, "color")?;
    if color as usize >= cfg.rank() || cfg.is_vertex_color(color) {
        return Err(CertifyError::NotApplicable(format!("{color} is not an edge color")));
    }
    let g = cfg.constituent_graph(&color_class(cfg, color));
    let base = line_graph_base(&g)?;
    if strongly_regular(&g) {
        return Err(CertifyError::NotApplicable("the constituent is strongly regular".into()));
    }
    if base.graph.is_bipartite() {
        return Err(CertifyError::NotApplicable("bipartite base: no 5-cycle, so the base would be complete bipartite".into()));
    }
    let y = &base.graph;
    let (n, k, nl) = (y.n() as u64, base.k as u64, g.n() as u64);
    let mut s = Step::new(LINE_GRAPH, "a line graph of a triangle-free regular graph has linear motion").with_params(params);
    s.value("n_base", n);
    s.value("k_base", k);
    s.value("n_line", nl);
    s.check("k >= 3", k >= 3);
    s.check("n >= 5", n >= 5);
    s.check("triangle_free", true);
    s.check("diameter 2", g.diameter() == Some(2));
    s.check("k >= n/8", 8 * k >= n);
    let dmin = graph_dmin(y);
    s.value("D_base", dmin);
    s.check("D_base >= n/8", 8 * dmin >= n);
    if n as usize <= WHITNEY_ORACLE_MAX {
        let a = automorphisms(&Configuration::from_graph(y)?)?;
        let b = automorphisms(&Configuration::from_graph(&g)?)?;
        s.check("aut(base) = aut(line graph)", a.order == b.order);
    }
    // A nontrivial automorphism moves at least D_base base vertices; each
    // has at most one fixed incident edge, and an edge has two ends.
    let whitney = s.checks.get("aut(base) = aut(line graph)").copied().unwrap_or(true);
    let quarter = int(nl) / int(16);
    s.rational("n_line/16", quarter.clone());
    if k >= 3 && n >= 5 && whitney {
        let b = int(dmin * (k - 1)) / int(2);
        s.check("bound >= n_line/16", b >= quarter || !s.holds("diameter 2"));
        s.conclusion = format!("motion >= {}", format(&b));
        s.bound = b.is_positive().then_some(b);
    } else {
        s.conclusion = "base too small for the edge-moving argument".into();
    }
    Ok(s)
}

/// Within-clique distinguishing on a triangular union `X_I = T(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SunWilmes {
    pub s: u64,
    pub holds: bool,
    /// Smallest fraction of a line distinguishing two of its points, the
    /// points themselves included.
    pub alpha_true: Rational,
    /// The same with the two points left out.
    pub alpha_interior: Rational,
    pub bound: Option<Rational>,
    /// Line index and a pair attaining `alpha_true`.
    pub witness: Option<(usize, usize, usize)>,
    pub step: Step,
}

pub fn sun_wilmes_check(cfg: &Configuration, set: &[Color], alpha: &Rational) -> Result<SunWilmes, CertifyError> {
    let t = intersection_tensor(cfg)?;
    let mut params = colors_values(set);
    params.insert("alpha".into(), alpha.clone());
    sun_wilmes(&Ctx { tensor: &t, cfg: Some(cfg) }, &params)
}

pub(crate) fn eval_sun_wilmes(ctx: &Ctx, params: &Values) -> Result<Step, CertifyError> {
    Ok(sun_wilmes(ctx, params)?.step)
}

fn sun_wilmes(ctx: &Ctx, params: &Values) -> Result<SunWilmes, CertifyError> {
    let cfg = ctx.cfg()?;
    let alpha = param(params, "alpha")?;
    let mut set = colors_param(params)?;
    set.sort_unstable();
    set.dedup();
    let s = match srg_minus2(ctx.tensor, &set) {
        Ok(Some(SrgMinus2::Triangular(s))) if s >= 5 => s,
        _ => return Err(CertifyError::NotTriangular),
    };
    let g = cfg.constituent_graph(&set);
    let geom = extract_lines_with_threshold(&g, 2, s as i64 - 1)?;
    if geom.lines.len() as u64 != s || geom.lines.iter().any(|l| l.len() as u64 != s - 1) {
        return Err(CertifyError::NotTriangular);
    }
    let mut best: Option<(usize, usize, usize, usize)> = None;
    for (idx, line) in geom.lines.iter().enumerate() {
        for (a, &x) in line.iter().enumerate() {
            for &y in &line[a + 1..] {
                let d = line.iter().filter(|&&z| cfg.color(z, x) != cfg.color(z, y)).count();
                if best.map_or(true, |b| d < b.3) {
                    best = Some((idx, x, y, d));
                }
            }
        }
    }
    let (idx, x, y, d) = best.ok_or(CertifyError::NotTriangular)?;
    let size = s - 1;
    let alpha_true = rat(d as i64, size as i64);
    let alpha_interior = rat(d as i64 - 2, size as i64);
    let n = cfg.n() as u64;

    let mut step = Step::new(SUN_WILMES, "cliques whose points are well distinguished inside give linear motion")
        .with_params(params);
    step.value("n", n);
    step.value("s", s);
    step.value("lines", geom.lines.len() as u64);
    step.value("line_size", size);
    step.rational("alpha_true", alpha_true.clone());
    step.rational("alpha_interior", alpha_interior.clone());
    step.check("triangular", true);
    step.check("0 < alpha < 1/2", alpha.is_positive() && alpha < rat(1, 2));
    let holds = step.check("alpha <= alpha_true", alpha <= alpha_true) && step.holds("0 < alpha < 1/2");
    let bound = holds.then(|| &alpha * int(n) / int(2));
    let witness = (!holds).then_some((idx, x, y));
    match &bound {
        Some(b) => {
            step.conclusion = format!("motion >= {}; |Aut| = n^O(log n) via a splitting set", format(b));
            step.bound = Some(b.clone());
        }
        None => {
            step.value("witness_line", idx as u64);
            step.value("witness_x", x as u64);
            step.value("witness_y", y as u64);
            step.conclusion = format!("line {idx}, points {x} and {y}: fraction {}", format(&alpha_true));
        }
    }
    Ok(SunWilmes { s, holds, alpha_true, alpha_interior, bound, witness, step })
}
