//! Clique geometries and small-eigenvalue recognizers.
//!
//! A clique geometry is a family of maximal cliques ("lines") covering every
//! edge exactly once. Metsch's criterion produces one from local counts
//! `λ1 <= λ(u, v) <= λ2` on edges and `μ` on non-edges; with at most two
//! lines per vertex the graph is a line graph and its root graph can be
//! rebuilt from the lines.

use std::collections::{BTreeMap, BTreeSet};

use cc_core::rational::int;
use cc_core::{Color, Configuration, Graph, Rational};
use cc_spectral::Spectrum;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Above this size `clique_mu_bound` skips its audit and `claw_search`
/// refuses to run.
pub const AUDIT_CAP: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph has no edges")]
    NoEdges,
    #[error("Metsch conditions fail for these parameters")]
    MetschFails,
    #[error("geometry check failed: {0}")]
    GeometryViolation(String),
    #[error("vertex {vertex} lies in {count} lines, expected 2")]
    VertexNotInTwoLines { vertex: usize, count: usize },
    #[error("theta_min must be negative")]
    NonNegativeTheta,
    #[error("parameters ({n}, {k}, {lambda}, {mu}) do not give smallest eigenvalue -2")]
    NotSmallestEigenvalueMinus2 { n: u64, k: u64, lambda: u64, mu: u64 },
    #[error("color sets must be disjoint, nonempty sets of edge colors")]
    BadColorSets,
    #[error("n = {n} exceeds the cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("soundness check failed: {0}")]
    Soundness(String),
}

/// Local parameters for Metsch's criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetschParams {
    pub lambda1: u64,
    pub lambda2: u64,
    pub mu: u64,
    pub k: u64,
    pub m: u64,
}

impl MetschParams {
    /// Exact counts read off the graph: `λ1`/`λ2` are the least and most
    /// common neighbors over edges, `μ` the most over non-edges (at least 1,
    /// which only weakens the hypothesis), `k` the largest degree.
    pub fn from_graph(g: &Graph, m: u64) -> Result<Self, GeometryError> {
        let edges = g.edges();
        if edges.is_empty() {
            return Err(GeometryError::NoEdges);
        }
        let lambdas: Vec<u64> = edges.iter().map(|&(u, v)| g.common_neighbors(u, v) as u64).collect();
        let mut mu = 1;
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                if !g.has_edge(u, v) {
                    mu = mu.max(g.common_neighbors(u, v) as u64);
                }
            }
        }
        Ok(MetschParams {
            lambda1: *lambdas.iter().min().unwrap(),
            lambda2: *lambdas.iter().max().unwrap(),
            mu,
            k: (0..g.n()).map(|v| g.degree(v) as u64).max().unwrap_or(0),
            m,
        })
    }

    /// Smallest size of a line: `λ1 + 2 - (m - 1)(μ - 1)`.
    pub fn line_threshold(&self) -> i64 {
        self.lambda1 as i64 + 2 - (self.m as i64 - 1) * (self.mu as i64 - 1)
    }
}

/// Conditions 3 and 4 of Metsch's criterion, in integers:
/// `2λ1 - λ2 > (2m - 1)(μ - 1) - 1` and `2k < 2(m + 1)(λ1 + 1) - m(m + 1)(μ - 1)`.
pub fn metsch_check(p: &MetschParams) -> bool {
    if p.mu < 1 || p.m < 1 || p.lambda1 > p.lambda2 {
        return false;
    }
    let (l1, l2, mu, k, m) = (p.lambda1 as i128, p.lambda2 as i128, p.mu as i128, p.k as i128, p.m as i128);
    let c3 = 2 * l1 - l2 > (2 * m - 1) * (mu - 1) - 1;
    let c4 = 2 * k < 2 * (m + 1) * (l1 + 1) - m * (m + 1) * (mu - 1);
    c3 && c4
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueGeometry {
    pub m: u64,
    /// Lines, each sorted; the list is sorted.
    pub lines: Vec<Vec<usize>>,
    /// Number of lines through each vertex.
    pub per_vertex: Vec<usize>,
    pub per_vertex_max: usize,
}

/// Maximal cliques of `g` containing `base` and drawn from `candidates`
/// (the common neighbors of `base`), of total size at least `min_size`.
fn cliques_through(g: &Graph, base: &[usize], candidates: Vec<usize>, min_size: usize, out: &mut BTreeSet<Vec<usize>>) {
    fn bk(g: &Graph, r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, min_size: usize, out: &mut BTreeSet<Vec<usize>>) {
        if r.len() + p.len() < min_size {
            return;
        }
        if p.is_empty() {
            if x.is_empty() {
                let mut c = r.clone();
                c.sort_unstable();
                out.insert(c);
            }
            return;
        }
        let pivot = p.iter().chain(&x).copied().max_by_key(|&u| p.iter().filter(|&&v| g.has_edge(u, v)).count()).unwrap();
        let branch: Vec<usize> = p.iter().copied().filter(|&v| !g.has_edge(pivot, v)).collect();
        let (mut p, mut x) = (p, x);
        for v in branch {
            r.push(v);
            let np = p.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            let nx = x.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            bk(g, r, np, nx, min_size, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
    let mut r = base.to_vec();
    bk(g, &mut r, candidates, Vec::new(), min_size, out);
}

/// Lines of `g` for Metsch parameters `params`, verified.
pub fn extract_lines(g: &Graph, params: &MetschParams) -> Result<CliqueGeometry, GeometryError> {
    if !g.is_connected() {
        return Err(GeometryError::NotConnected);
    }
    if !metsch_check(params) {
        return Err(GeometryError::MetschFails);
    }
    extract_lines_with_threshold(g, params.m, params.line_threshold())
}

/// All maximal cliques of size at least `threshold`, checked to form a
/// clique geometry with at most `m` lines per vertex.
pub fn extract_lines_with_threshold(g: &Graph, m: u64, threshold: i64) -> Result<CliqueGeometry, GeometryError> {
    let min_size = threshold.max(2) as usize;
    let mut lines = BTreeSet::new();
    for (u, v) in g.edges() {
        let common: Vec<usize> = g.neighbors(u).iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        cliques_through(g, &[u, v], common, min_size, &mut lines);
    }
    let lines: Vec<Vec<usize>> = lines.into_iter().collect();
    let mut per_vertex = vec![0; g.n()];
    for line in &lines {
        for &v in line {
            per_vertex[v] += 1;
        }
    }
    let geom = CliqueGeometry { m, per_vertex_max: per_vertex.iter().copied().max().unwrap_or(0), lines, per_vertex };
    verify_geometry(g, &geom)?;
    Ok(geom)
}

/// Every edge in exactly one line, lines are cliques meeting pairwise in at
/// most one vertex, at most `m` lines per vertex.
pub fn verify_geometry(g: &Graph, geom: &CliqueGeometry) -> Result<(), GeometryError> {
    let fail = |s: String| Err(GeometryError::GeometryViolation(s));
    let mut cover: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut per_vertex = vec![0; g.n()];
    for line in &geom.lines {
        for (a, &x) in line.iter().enumerate() {
            if x >= g.n() {
                return fail(format!("vertex {x} out of range"));
            }
            per_vertex[x] += 1;
            for &y in &line[a + 1..] {
                if !g.has_edge(x, y) {
                    return fail(format!("line {line:?} is not a clique"));
                }
                *cover.entry((x.min(y), x.max(y))).or_default() += 1;
            }
        }
    }
    for (u, v) in g.edges() {
        match cover.get(&(u.min(v), u.max(v))) {
            Some(1) => {}
            Some(c) => return fail(format!("edge ({u}, {v}) lies in {c} lines")),
            None => return fail(format!("edge ({u}, {v}) lies in no line")),
        }
    }
    if per_vertex != geom.per_vertex {
        return fail("per-vertex counts disagree with the lines".into());
    }
    if let Some(v) = (0..g.n()).find(|&v| per_vertex[v] as u64 > geom.m) {
        return fail(format!("vertex {v} lies in {} > m = {} lines", per_vertex[v], geom.m));
    }
    Ok(())
}

/// Is every nontrivial eigenvalue at least `-m`?
pub fn smallest_eigenvalue_floor(geom: &CliqueGeometry, spectrum: &Spectrum) -> bool {
    spectrum.min_at_least(&-int(geom.m))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootGraph {
    /// Vertices are the lines; two lines are adjacent when they meet.
    pub graph: Graph,
    /// `edge_to_vertex[(a, b)]` with `a < b` is the vertex of the input in
    /// lines `a` and `b`.
    pub edge_to_vertex: BTreeMap<(usize, usize), usize>,
}

/// `Y` with `L(Y)` isomorphic to `g`, from a geometry with exactly two
/// lines per vertex. The bijection is checked edge by edge.
pub fn reconstruct_root_graph(g: &Graph, geom: &CliqueGeometry) -> Result<RootGraph, GeometryError> {
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (idx, line) in geom.lines.iter().enumerate() {
        for &v in line {
            through[v].push(idx);
        }
    }
    let mut y = Graph::new(geom.lines.len());
    let mut edge_to_vertex = BTreeMap::new();
    let mut vertex_to_edge = vec![(0, 0); g.n()];
    for (v, ls) in through.iter().enumerate() {
        if ls.len() != 2 {
            return Err(GeometryError::VertexNotInTwoLines { vertex: v, count: ls.len() });
        }
        let e = (ls[0].min(ls[1]), ls[0].max(ls[1]));
        if edge_to_vertex.insert(e, v).is_some() {
            return Err(GeometryError::GeometryViolation(format!("lines {e:?} meet twice")));
        }
        y.add_edge(e.0, e.1);
        vertex_to_edge[v] = e;
    }
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let (a, b) = (vertex_to_edge[u], vertex_to_edge[v]);
            let share = a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;
            if share != g.has_edge(u, v) {
                return Err(GeometryError::Soundness(format!("L(Y) disagrees with the input at ({u}, {v})")));
            }
        }
    }
    Ok(RootGraph { graph: y, edge_to_vertex })
}

/// Largest number of common neighbors of two non-adjacent vertices.
pub fn graph_mu(g: &Graph) -> u64 {
    let mut mu = 0;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if !g.has_edge(u, v) {
                mu = mu.max(g.common_neighbors(u, v) as u64);
            }
        }
    }
    mu
}

/// `μ <= m^2` for a graph with a clique geometry of at most `m` lines per
/// vertex. The actual `μ` is checked against it for `n <= AUDIT_CAP`.
pub fn clique_mu_bound(g: &Graph, geom: &CliqueGeometry) -> Result<u64, GeometryError> {
    let bound = geom.m * geom.m;
    if g.n() <= AUDIT_CAP {
        let mu = graph_mu(g);
        if mu > bound {
            return Err(GeometryError::Soundness(format!("mu = {mu} exceeds m^2 = {bound}")));
        }
    }
    Ok(bound)
}

/// Largest possible clique in a distance-regular graph: `1 - k / θ_min`.
pub fn delsarte_clique_size(k: u64, theta_min: &Rational) -> Result<Rational, GeometryError> {
    if !theta_min.is_negative() {
        return Err(GeometryError::NonNegativeTheta);
    }
    Ok(int(1) - int(k) / theta_min)
}

/// Do all lines have the Delsarte size?
pub fn is_delsarte_geometry(geom: &CliqueGeometry, k: u64, theta_min: &Rational) -> Result<bool, GeometryError> {
    let size = delsarte_clique_size(k, theta_min)?;
    Ok(!geom.lines.is_empty() && geom.lines.iter().all(|l| int(l.len() as u64) == size))
}

/// Strongly regular parameters with smallest eigenvalue -2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SrgMinus2 {
    Triangular(u64),
    Lattice(u64),
    /// `K_{t x 2}`, complement of a perfect matching.
    CocktailParty(u64),
    /// No infinite family matches and `n <= 28`.
    Sporadic,
    /// No family matches and `n > 28`: inconsistent with the classification.
    None,
}

/// Smallest eigenvalue of the parameter set is exactly -2: the restricted
/// eigenvalues are the roots of `x^2 - (λ - μ) x - (k - μ)`.
fn has_min_minus2(k: u64, lambda: u64, mu: u64) -> bool {
    let (k, l, m) = (k as i128, lambda as i128, mu as i128);
    // -2 is a root, and the other root (λ - μ) + 2 is not smaller.
    4 + 2 * (l - m) - (k - m) == 0 && l - m + 2 >= -2
}

pub fn recognize_srg_minus2(n: u64, k: u64, lambda: u64, mu: u64) -> Result<SrgMinus2, GeometryError> {
    if !has_min_minus2(k, lambda, mu) {
        return Err(GeometryError::NotSmallestEigenvalueMinus2 { n, k, lambda, mu });
    }
    // T(s): n = s(s-1)/2, k = 2(s-2), λ = s-2, μ = 4
    if k % 2 == 0 && k >= 4 {
        let s = k / 2 + 2;
        if n == s * (s - 1) / 2 && lambda == s - 2 && mu == 4 {
            return Ok(SrgMinus2::Triangular(s));
        }
    }
    // L2(s): n = s^2, k = 2(s-1), λ = s-2, μ = 2
    if k % 2 == 0 && k >= 2 {
        let s = k / 2 + 1;
        if n == s * s && lambda == s - 2 && mu == 2 {
            return Ok(SrgMinus2::Lattice(s));
        }
    }
    if n % 2 == 0 && n >= 4 && k == n - 2 && lambda == n - 4 && mu == n - 2 {
        return Ok(SrgMinus2::CocktailParty(n / 2));
    }
    Ok(if n <= 28 { SrgMinus2::Sporadic } else { SrgMinus2::None })
}

/// Connected regular graphs with smallest eigenvalue above -2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AboveMinus2 {
    Complete,
    OddPolygon,
    /// Neither; inconsistent with the classification.
    None,
}

/// Parameter check for a connected `k`-regular graph on `n` vertices.
pub fn recognize_above_minus2(n: u64, k: u64) -> AboveMinus2 {
    if n >= 1 && k == n - 1 {
        AboveMinus2::Complete
    } else if k == 2 && n % 2 == 1 && n >= 3 {
        AboveMinus2::OddPolygon
    } else {
        AboveMinus2::None
    }
}

/// A vertex `center` and `leaves` with `c(center, y) ∈ I` and
/// `c(y, y') ∈ J` for distinct leaves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claw {
    pub center: usize,
    pub leaves: Vec<usize>,
}

/// Exhaustive search for a `t`-claw in colors `(I, J)`.
pub fn claw_search(cfg: &Configuration, i_set: &[Color], j_set: &[Color], t: usize) -> Result<Option<Claw>, GeometryError> {
    let n = cfg.n();
    if n > AUDIT_CAP {
        return Err(GeometryError::TooLarge { n, cap: AUDIT_CAP });
    }
    let edge = |c: Color| (c as usize) < cfg.rank() && !cfg.is_vertex_color(c);
    if i_set.is_empty() || j_set.is_empty() || !i_set.iter().chain(j_set).all(|&c| edge(c)) || i_set.iter().any(|c| j_set.contains(c)) {
        return Err(GeometryError::BadColorSets);
    }
    fn extend(cfg: &Configuration, cand: &[usize], j_set: &[Color], t: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == t {
            return true;
        }
        for (pos, &y) in cand.iter().enumerate() {
            if chosen.iter().all(|&z| j_set.contains(&cfg.color(z, y)) && j_set.contains(&cfg.color(y, z))) {
                chosen.push(y);
                if extend(cfg, &cand[pos + 1..], j_set, t, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    for x in 0..n {
        let cand: Vec<usize> = (0..n).filter(|&y| i_set.contains(&cfg.color(x, y))).collect();
        if cand.len() < t {
            continue;
        }
        let mut chosen = Vec::new();
        if extend(cfg, &cand, j_set, t, &mut chosen) {
            return Ok(Some(Claw { center: x, leaves: chosen }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cc_core::rational::rat;

    fn triangular(s: usize) -> Graph {
        Graph::complete(s).line_graph().0
    }

    fn rook(s: usize) -> Graph {
        Graph::complete_bipartite(s, s).line_graph().0
    }

    #[test]
    fn metsch_examples() {
        let t11 = MetschParams { lambda1: 9, lambda2: 9, mu: 4, k: 18, m: 2 };
        assert!(metsch_check(&t11));
        let t9 = MetschParams { lambda1: 7, lambda2: 7, mu: 4, k: 14, m: 2 };
        assert!(!metsch_check(&t9));
        let cliques = MetschParams { lambda1: 4, lambda2: 4, mu: 1, k: 5, m: 1 };
        assert!(metsch_check(&cliques));
        assert_eq!(MetschParams::from_graph(&triangular(11), 2).unwrap(), t11);
    }

    #[test]
    fn triangular_lines() {
        let g = triangular(11);
        let p = MetschParams::from_graph(&g, 2).unwrap();
        assert_eq!(p.line_threshold(), 8);
        let geom = extract_lines(&g, &p).unwrap();
        assert_eq!(geom.lines.len(), 11);
        assert!(geom.lines.iter().all(|l| l.len() == 10));
        assert!(geom.per_vertex.iter().all(|&c| c == 2));
        let root = reconstruct_root_graph(&g, &geom).unwrap();
        assert_eq!(root.graph.n(), 11);
        assert_eq!(root.graph.edge_count(), 55);
        assert_eq!(clique_mu_bound(&g, &geom).unwrap(), 4);
        assert_eq!(graph_mu(&g), 4);
    }

    #[test]
    fn rook_lines() {
        let g = rook(5);
        // λ = 3, μ = 2: Metsch with m = 2 needs 6 > 2 and 8 < 2*3*4 - 6 = 18
        let p = MetschParams::from_graph(&g, 2).unwrap();
        let geom = extract_lines(&g, &p).unwrap();
        assert_eq!(geom.lines.len(), 10);
        assert!(geom.lines.iter().all(|l| l.len() == 5));
        let root = reconstruct_root_graph(&g, &geom).unwrap();
        assert!(root.graph.is_bipartite());
        assert_eq!(root.graph.regular_degree(), Some(5));
        assert_eq!(graph_mu(&g), 2);
    }

    #[test]
    fn disconnected_rejected() {
        let mut g = Graph::new(6);
        for (u, v) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)] {
            g.add_edge(u, v);
        }
        let p = MetschParams::from_graph(&g, 1).unwrap();
        assert_eq!(extract_lines(&g, &p), Err(GeometryError::NotConnected));
        let geom = extract_lines_with_threshold(&g, 1, p.line_threshold()).unwrap();
        assert_eq!(geom.lines.len(), 2);
        assert_eq!(clique_mu_bound(&g, &geom).unwrap(), 1);
    }

    #[test]
    fn petersen_has_no_two_line_geometry() {
        let g = Graph::petersen();
        let geom = extract_lines_with_threshold(&g, 3, 2).unwrap();
        assert_eq!(geom.lines.len(), 15);
        assert!(matches!(reconstruct_root_graph(&g, &geom), Err(GeometryError::VertexNotInTwoLines { count: 3, .. })));
    }

    #[test]
    fn delsarte() {
        assert_eq!(delsarte_clique_size(10, &int(-2)).unwrap(), int(6));
        assert_eq!(delsarte_clique_size(3, &int(-2)).unwrap(), rat(5, 2));
        assert_eq!(delsarte_clique_size(0, &int(-2)).unwrap(), int(1));
        assert_eq!(delsarte_clique_size(3, &int(0)), Err(GeometryError::NonNegativeTheta));
    }

    #[test]
    fn srg_recognition() {
        assert_eq!(recognize_srg_minus2(15, 8, 4, 4).unwrap(), SrgMinus2::Triangular(6));
        assert_eq!(recognize_srg_minus2(36, 10, 4, 2).unwrap(), SrgMinus2::Lattice(6));
        assert_eq!(recognize_srg_minus2(28, 12, 6, 4).unwrap(), SrgMinus2::Triangular(8));
        assert_eq!(recognize_srg_minus2(10, 3, 0, 1).unwrap(), SrgMinus2::Sporadic);
        assert_eq!(recognize_srg_minus2(16, 10, 6, 6).unwrap(), SrgMinus2::Sporadic);
        assert_eq!(recognize_srg_minus2(40, 38, 36, 38).unwrap(), SrgMinus2::CocktailParty(20));
        assert!(recognize_srg_minus2(9, 4, 1, 2).is_ok());
        assert!(matches!(recognize_srg_minus2(13, 6, 2, 3), Err(GeometryError::NotSmallestEigenvalueMinus2 { .. })));
        assert_eq!(recognize_above_minus2(7, 6), AboveMinus2::Complete);
        assert_eq!(recognize_above_minus2(7, 2), AboveMinus2::OddPolygon);
        assert_eq!(recognize_above_minus2(8, 2), AboveMinus2::None);
    }

    #[test]
    fn claws() {
        // rook's graph H(2,3): colors 0 diag, 1 adjacent, 2 non-adjacent
        let cfg = Configuration::from_fn(9, |u, v| ((u / 3 != v / 3) as u32) + ((u % 3 != v % 3) as u32)).unwrap();
        let claw = claw_search(&cfg, &[1], &[2], 2).unwrap().unwrap();
        assert_eq!(claw.leaves.len(), 2);
        assert_eq!(cfg.color(claw.leaves[0], claw.leaves[1]), 2);
        assert_eq!(claw_search(&cfg, &[1], &[2], 3).unwrap(), None);
        let k4 = Configuration::from_fn(4, |u, v| (u != v) as u32).unwrap();
        assert!(matches!(claw_search(&k4, &[1], &[1], 2), Err(GeometryError::BadColorSets)));
        assert!(matches!(claw_search(&k4, &[1], &[], 2), Err(GeometryError::BadColorSets)));
    }
}
