//! Automorphism groups of small coherent configurations.
//!
//! The base is built by individualizing a vertex of the largest
//! non-singleton cell and refining, until every vertex has its own color.
//! Refinement ids are canonical, so two individualized configurations that
//! are isomorphic by a map respecting the individualized points refine to
//! the same coloring. Generators are found bottom-up along the base by a
//! backtracking search over individualizations; every leaf is checked
//! against the input before it is accepted.
//!
//! The minimal degree (motion) is computed exactly by recursion over point
//! stabilizers: a non-identity element of least support either fixes some
//! moved point `b`, and then lies in the stabilizer of `b`, or it moves
//! every point the group moves.

use std::collections::{BTreeMap, BTreeSet};

use cc_core::{check_coherence, Color, Configuration, CoreError};
use cc_wl::{individualize, wl_stabilize_with_cap, WlError};
use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

/// Default largest `n` accepted by [`automorphisms`] and [`exact_motion`].
pub const DEFAULT_CAP: usize = 60;
/// Search nodes allowed in the motion recursion before giving up on
/// exactness.
pub const MOTION_NODE_BUDGET: u64 = 200_000;
/// Groups up to this order may be enumerated element by element.
pub const ENUMERATION_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error("n = {n} exceeds the cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("generators do not act transitively")]
    NotTransitive,
    #[error("generator {index} is not a permutation of 0..{n}")]
    BadPermutation { index: usize, n: usize },
    #[error("soundness check failed: {0}")]
    Soundness(String),
    #[error(transparent)]
    Wl(#[from] WlError),
    #[error(transparent)]
    Core(#[from] CoreError),
}

fn refine(cfg: &Configuration) -> Result<Configuration, AutError> {
    Ok(wl_stabilize_with_cap(cfg, usize::MAX)?.stable.expect("stabilize returns its configuration"))
}

/// First vertex of the largest cell with more than one vertex.
fn target_vertex(cfg: &Configuration) -> Option<usize> {
    let vc = cfg.vertex_colors();
    let mut size: BTreeMap<Color, usize> = BTreeMap::new();
    for &c in &vc {
        *size.entry(c).or_default() += 1;
    }
    let (&color, &s) = size.iter().max_by_key(|&(&c, &s)| (s, std::cmp::Reverse(c)))?;
    if s < 2 {
        return None;
    }
    vc.iter().position(|&c| c == color)
}

fn histogram(cfg: &Configuration) -> Vec<usize> {
    let mut h = vec![0; cfg.rank()];
    for &c in cfg.as_flat() {
        h[c as usize] += 1;
    }
    h
}

/// An automorphism of `original` carrying the individualization behind
/// `left` to the one behind `right`, if there is one.
fn find_isomorphism(original: &Configuration, left: &Configuration, right: &Configuration) -> Result<Option<Vec<usize>>, AutError> {
    if histogram(left) != histogram(right) {
        return Ok(None);
    }
    let Some(x) = target_vertex(left) else {
        let n = left.n();
        let mut where_right = vec![usize::MAX; left.rank()];
        for w in 0..n {
            where_right[right.vertex_color(w) as usize] = w;
        }
        let sigma: Vec<usize> = (0..n).map(|v| where_right[left.vertex_color(v) as usize]).collect();
        if sigma.iter().any(|&w| w == usize::MAX) {
            return Ok(None);
        }
        return Ok(original.is_automorphism(&sigma).then_some(sigma));
    };
    let l2 = refine(&individualize(left, &[x])?)?;
    let c = left.vertex_color(x);
    for y in (0..right.n()).filter(|&y| right.vertex_color(y) == c) {
        let r2 = refine(&individualize(right, &[y])?)?;
        if let Some(sigma) = find_isomorphism(original, &l2, &r2)? {
            return Ok(Some(sigma));
        }
    }
    Ok(None)
}

/// Coset representatives: `point -> element mapping the base point to it`.
fn transversal(n: usize, base_point: usize, gens: &[Vec<usize>]) -> BTreeMap<usize, Vec<usize>> {
    let mut reps = BTreeMap::new();
    reps.insert(base_point, (0..n).collect::<Vec<usize>>());
    let mut queue = vec![base_point];
    while let Some(p) = queue.pop() {
        let t = reps[&p].clone();
        for g in gens {
            let q = g[p];
            if !reps.contains_key(&q) {
                reps.insert(q, t.iter().map(|&x| g[x]).collect());
                queue.push(q);
            }
        }
    }
    reps
}

/// Base, strong generators and transversals of the automorphism group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerChain {
    pub n: usize,
    pub base: Vec<usize>,
    pub generators: Vec<Vec<usize>>,
    /// `transversals[i]` maps each point of the orbit of `base[i]` under the
    /// stabilizer of `base[..i]` to an element taking `base[i]` there.
    pub transversals: Vec<BTreeMap<usize, Vec<usize>>>,
}

impl StabilizerChain {
    pub fn order(&self) -> BigUint {
        self.transversals.iter().fold(BigUint::one(), |acc, t| acc * BigUint::from(t.len()))
    }

    pub fn is_trivial(&self) -> bool {
        self.transversals.iter().all(|t| t.len() == 1)
    }

    /// Orbits on points, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.n, &self.generators)
    }

    /// Visit every element exactly once. Returns false when the order
    /// exceeds `limit` (nothing is visited then).
    pub fn for_each_element(&self, limit: u64, mut f: impl FnMut(&[usize])) -> bool {
        if self.order() > BigUint::from(limit) {
            return false;
        }
        let levels: Vec<Vec<&Vec<usize>>> = self.transversals.iter().map(|t| t.values().collect()).collect();
        fn go(levels: &[Vec<&Vec<usize>>], acc: &[usize], f: &mut impl FnMut(&[usize])) {
            match levels.split_first() {
                None => f(acc),
                Some((first, rest)) => {
                    for t in first {
                        let next: Vec<usize> = acc.iter().map(|&x| t[x]).collect();
                        go(rest, &next, f);
                    }
                }
            }
        }
        // g = t_0 t_1 ... t_l; build right to left so that acc = t_i ... t_l.
        let mut rev = levels;
        rev.reverse();
        go(&rev, &(0..self.n).collect::<Vec<_>>(), &mut f);
        true
    }
}

fn orbits_of(n: usize, gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for g in gens {
        for x in 0..n {
            let (a, b) = (find(&mut parent, x), find(&mut parent, g[x]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        groups.entry(r).or_default().push(x);
    }
    groups.into_values().collect()
}

/// Chain for the automorphisms of `original` that fix every point
/// individualized in `start` (which must be refined).
fn chain_from(original: &Configuration, start: Configuration) -> Result<StabilizerChain, AutError> {
    let n = original.n();
    let mut levels = vec![start];
    let mut base = Vec::new();
    while let Some(x) = target_vertex(levels.last().unwrap()) {
        base.push(x);
        let next = refine(&individualize(levels.last().unwrap(), &[x])?)?;
        levels.push(next);
    }
    let mut generators: Vec<Vec<usize>> = Vec::new();
    let mut transversals = vec![BTreeMap::new(); base.len()];
    for i in (0..base.len()).rev() {
        let b = base[i];
        let level = &levels[i];
        let mut trans = transversal(n, b, &generators);
        let cell: Vec<usize> = (0..n).filter(|&c| level.vertex_color(c) == level.vertex_color(b)).collect();
        for c in cell {
            if trans.contains_key(&c) {
                continue;
            }
            let right = refine(&individualize(level, &[c])?)?;
            if let Some(g) = find_isomorphism(original, &levels[i + 1], &right)? {
                generators.push(g);
                trans = transversal(n, b, &generators);
            }
        }
        transversals[i] = trans;
    }
    Ok(StabilizerChain { n, base, generators, transversals })
}

fn guard(cfg: &Configuration, cap: usize) -> Result<(), AutError> {
    if cfg.n() > cap {
        return Err(AutError::TooLarge { n: cfg.n(), cap });
    }
    Ok(())
}

pub fn stabilizer_chain(cfg: &Configuration) -> Result<StabilizerChain, AutError> {
    stabilizer_chain_with_cap(cfg, DEFAULT_CAP)
}

pub fn stabilizer_chain_with_cap(cfg: &Configuration, cap: usize) -> Result<StabilizerChain, AutError> {
    guard(cfg, cap)?;
    chain_from(cfg, refine(cfg)?)
}

fn order_as_string<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn order_from_string<'de, D: serde::Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    #[serde(serialize_with = "order_as_string", deserialize_with = "order_from_string")]
    pub order: BigUint,
    /// Least support of a non-identity element; `n` for the trivial group.
    pub motion: u64,
    pub exact: bool,
    pub orbit_count: usize,
    pub generators: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MotionResult {
    /// Exact motion, or the best upper bound found when `exact` is false.
    pub motion: u64,
    /// Certified lower bound from distinguishing numbers of the refined
    /// configuration.
    pub lower_bound: u64,
    pub exact: bool,
}

pub fn automorphisms(cfg: &Configuration) -> Result<GroupInfo, AutError> {
    automorphisms_with_cap(cfg, DEFAULT_CAP)
}

pub fn automorphisms_with_cap(cfg: &Configuration, cap: usize) -> Result<GroupInfo, AutError> {
    guard(cfg, cap)?;
    let chain = chain_from(cfg, refine(cfg)?)?;
    let m = motion_of(cfg, &chain)?;
    Ok(GroupInfo {
        order: chain.order(),
        motion: m.motion,
        exact: m.exact,
        orbit_count: chain.orbits().len(),
        generators: chain.generators,
    })
}

pub fn exact_motion(cfg: &Configuration) -> Result<MotionResult, AutError> {
    exact_motion_with_cap(cfg, DEFAULT_CAP)
}

pub fn exact_motion_with_cap(cfg: &Configuration, cap: usize) -> Result<MotionResult, AutError> {
    guard(cfg, cap)?;
    let chain = chain_from(cfg, refine(cfg)?)?;
    motion_of(cfg, &chain)
}

/// Least `D(u, v)` over distinct `u`, `v` in a common orbit, where `D`
/// counts points telling `u` and `v` apart in `refined`. Every element
/// moving `u` to `v` moves all of them.
fn support_lower_bound(refined: &Configuration, orbits: &[Vec<usize>]) -> u64 {
    let n = refined.n();
    let mut best = u64::MAX;
    for orbit in orbits.iter().filter(|o| o.len() > 1) {
        let u = orbit[0];
        for &v in &orbit[1..] {
            let d = (0..n).filter(|&x| refined.color(x, u) != refined.color(x, v)).count() as u64;
            best = best.min(d);
        }
    }
    best
}

struct MotionSearch<'a> {
    original: &'a Configuration,
    best: u64,
    nodes: u64,
    exhausted: bool,
}

impl MotionSearch<'_> {
    fn visit(&mut self, refined: &Configuration, chain: &StabilizerChain) -> Result<(), AutError> {
        self.nodes += 1;
        if self.nodes > MOTION_NODE_BUDGET {
            self.exhausted = true;
            return Ok(());
        }
        if chain.is_trivial() {
            return Ok(());
        }
        let orbits = chain.orbits();
        let fixed = orbits.iter().filter(|o| o.len() == 1).count();
        self.best = self.best.min((chain.n - fixed) as u64);
        if support_lower_bound(refined, &orbits) >= self.best {
            return Ok(());
        }
        for orbit in orbits.iter().filter(|o| o.len() > 1) {
            let child = refine(&individualize(refined, &[orbit[0]])?)?;
            let child_chain = chain_from(self.original, child.clone())?;
            self.visit(&child, &child_chain)?;
        }
        Ok(())
    }
}

fn motion_of(cfg: &Configuration, chain: &StabilizerChain) -> Result<MotionResult, AutError> {
    let n = cfg.n() as u64;
    if chain.is_trivial() {
        return Ok(MotionResult { motion: n, lower_bound: n, exact: true });
    }
    let refined = refine(cfg)?;
    let lower_bound = support_lower_bound(&refined, &chain.orbits());
    let mut search = MotionSearch { original: cfg, best: n, nodes: 0, exhausted: false };
    search.visit(&refined, chain)?;
    if search.best < lower_bound {
        return Err(AutError::Soundness(format!("motion {} below distinguishing bound {lower_bound}", search.best)));
    }
    Ok(MotionResult { motion: search.best, lower_bound, exact: !search.exhausted })
}

/// Least support over all non-identity elements, by enumeration. `None`
/// when the order exceeds `limit`.
pub fn motion_by_enumeration(chain: &StabilizerChain, limit: u64) -> Option<u64> {
    let mut best = chain.n as u64;
    let ok = chain.for_each_element(limit, |g| {
        let s = g.iter().enumerate().filter(|&(i, &x)| i != x).count() as u64;
        if s > 0 {
            best = best.min(s);
        }
    });
    ok.then_some(best)
}

fn check_permutations(gens: &[Vec<usize>], n: usize) -> Result<(), AutError> {
    for (index, g) in gens.iter().enumerate() {
        let distinct: BTreeSet<usize> = g.iter().copied().collect();
        if g.len() != n || distinct.len() != n || g.iter().any(|&x| x >= n) {
            return Err(AutError::BadPermutation { index, n });
        }
    }
    Ok(())
}

/// Colors are the orbits of the group on ordered pairs; requires a
/// transitive group.
pub fn orbital_configuration(gens: &[Vec<usize>], n: usize) -> Result<Configuration, AutError> {
    check_permutations(gens, n)?;
    if orbits_of(n, gens).len() > 1 {
        return Err(AutError::NotTransitive);
    }
    orbital_configuration_any(gens, n)
}

/// Pair orbits of any group. The result is coherent (checked); it is
/// homogeneous exactly when the group is transitive.
pub fn orbital_configuration_any(gens: &[Vec<usize>], n: usize) -> Result<Configuration, AutError> {
    check_permutations(gens, n)?;
    let pair_gens: Vec<Vec<usize>> = gens.iter().map(|g| (0..n * n).map(|p| g[p / n] * n + g[p % n]).collect()).collect();
    let orbits = orbits_of(n * n, &pair_gens);
    let mut colors = vec![0 as Color; n * n];
    for (id, orbit) in orbits.iter().enumerate() {
        for &p in orbit {
            colors[p] = id as Color;
        }
    }
    let cfg = Configuration::from_flat(n, colors)?;
    check_coherence(&cfg).map_err(|e| AutError::Soundness(format!("orbital configuration not coherent: {e}")))?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cc_core::Graph;

    fn petersen() -> Configuration {
        Configuration::from_graph(&Graph::petersen()).unwrap()
    }

    fn cycle(n: usize) -> Configuration {
        Configuration::from_fn(n, |u, v| {
            let d = (u + n - v) % n;
            d.min(n - d) as Color
        })
        .unwrap()
    }

    #[test]
    fn petersen_group() {
        let g = automorphisms(&petersen()).unwrap();
        assert_eq!(g.order, BigUint::from(120u32));
        assert_eq!(g.motion, 6);
        assert!(g.exact);
        assert_eq!(g.orbit_count, 1);
        let cfg = petersen();
        assert!(g.generators.iter().all(|s| cfg.is_automorphism(s)));
    }

    #[test]
    fn complete_graph_group() {
        let k5 = Configuration::from_fn(5, |u, v| (u != v) as Color).unwrap();
        let g = automorphisms(&k5).unwrap();
        assert_eq!(g.order, BigUint::from(120u32));
        assert_eq!(g.motion, 2);
    }

    #[test]
    fn pentagon_motion() {
        let g = automorphisms(&cycle(5)).unwrap();
        assert_eq!(g.order, BigUint::from(10u32));
        assert_eq!(g.motion, 4);
        let chain = stabilizer_chain(&cycle(5)).unwrap();
        assert_eq!(motion_by_enumeration(&chain, 100), Some(4));
    }

    #[test]
    fn trivial_group_motion_is_n() {
        // path of length 3 with distinct end markers has a trivial group
        let mut cfg = Configuration::from_graph(&Graph::path(3)).unwrap().as_flat().to_vec();
        cfg[0] = 3;
        let cfg = Configuration::from_flat_compacting(3, cfg).unwrap();
        let g = automorphisms(&cfg).unwrap();
        assert_eq!(g.order, BigUint::one());
        assert_eq!(g.motion, 3);
        assert!(g.generators.is_empty());
    }

    #[test]
    fn cap_enforced() {
        assert_eq!(automorphisms_with_cap(&petersen(), 9), Err(AutError::TooLarge { n: 10, cap: 9 }));
    }

    #[test]
    fn orbitals() {
        let rot = vec![vec![1, 2, 3, 4, 0]];
        let cfg = orbital_configuration(&rot, 5).unwrap();
        assert_eq!(cfg.rank(), 5);
        assert!((1..5).all(|c| !cfg.is_symmetric_color(c)));
        // squares in F_7 acting by x -> a x + b: rank 3, two oriented colors
        let gens = vec![(0..7).map(|x| (x + 1) % 7).collect::<Vec<_>>(), (0..7).map(|x| (2 * x) % 7).collect()];
        let paley = orbital_configuration(&gens, 7).unwrap();
        assert_eq!(paley.rank(), 3);
        assert!(!paley.is_symmetric_color(1));
        assert_eq!(orbital_configuration(&[vec![1, 0, 2]], 3), Err(AutError::NotTransitive));
        let discrete = orbital_configuration_any(&[], 3).unwrap();
        assert_eq!(discrete.rank(), 9);
        assert!(matches!(orbital_configuration(&[vec![0, 0, 1]], 3), Err(AutError::BadPermutation { .. })));
    }
}
