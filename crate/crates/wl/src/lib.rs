//! Two-dimensional Weisfeiler-Leman refinement.
//!
//! One round recolors every pair `(x, y)` by its old color together with the
//! multiset of color pairs `(c(x, z), c(z, y))` over all `z`. New ids are the
//! ranks of the distinct signatures in lexicographic order, so the output
//! depends only on the isomorphism type of the input: relabeling the points
//! first and refining afterwards gives the same matrix as refining first.

use std::collections::HashMap;

use cc_core::{check_coherence, Color, Configuration, CoreError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default bound on `n` for stabilization.
pub const DEFAULT_STABILIZE_CAP: usize = 512;
/// Largest number of colors a refined matrix may use.
pub const RANK_CAP: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WlError {
    #[error("n = {n} exceeds the refinement cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("refinement produced {rank} colors, above the cap {cap}")]
    RankOverflow { rank: usize, cap: usize },
    #[error(transparent)]
    Core(#[from] CoreError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementTrace {
    /// Rounds that increased the rank.
    pub rounds: usize,
    /// Rank after each executed round; the last entry repeats the previous
    /// one (or is the only entry when the input was already stable).
    pub rank_history: Vec<usize>,
    #[serde(skip)]
    pub stable: Option<Configuration>,
}

impl RefinementTrace {
    pub fn stable(&self) -> &Configuration {
        self.stable.as_ref().expect("trace carries its configuration")
    }
}

fn signature(cfg: &Configuration, x: usize, y: usize, scratch: &mut Vec<u64>) -> Vec<u64> {
    let r = cfg.rank() as u64;
    scratch.clear();
    let row = cfg.row(x);
    for z in 0..cfg.n() {
        scratch.push(row[z] as u64 * r + cfg.color(z, y) as u64);
    }
    scratch.sort_unstable();
    let mut sig = vec![cfg.color(x, y) as u64];
    let mut i = 0;
    while i < scratch.len() {
        let key = scratch[i];
        let mut j = i;
        while j < scratch.len() && scratch[j] == key {
            j += 1;
        }
        sig.push(key);
        sig.push((j - i) as u64);
        i = j;
    }
    sig
}

/// One refinement round.
pub fn wl_round(cfg: &Configuration) -> Result<Configuration, WlError> {
    let n = cfg.n();
    let mut ids: HashMap<Vec<u64>, u32> = HashMap::new();
    let mut temp = Vec::with_capacity(n * n);
    let mut scratch = Vec::with_capacity(n);
    for x in 0..n {
        for y in 0..n {
            let sig = signature(cfg, x, y, &mut scratch);
            let next = ids.len() as u32;
            temp.push(*ids.entry(sig).or_insert(next));
        }
    }
    if ids.len() > RANK_CAP {
        return Err(WlError::RankOverflow { rank: ids.len(), cap: RANK_CAP });
    }
    let mut distinct: Vec<(Vec<u64>, u32)> = ids.into_iter().collect();
    distinct.sort_unstable();
    let mut canonical = vec![0 as Color; distinct.len()];
    for (pos, (_, t)) in distinct.iter().enumerate() {
        canonical[*t as usize] = pos as Color;
    }
    let colors = temp.into_iter().map(|t| canonical[t as usize]).collect();
    Ok(Configuration::from_flat(n, colors)?)
}

pub fn wl_stabilize(cfg: &Configuration) -> Result<RefinementTrace, WlError> {
    wl_stabilize_with_cap(cfg, DEFAULT_STABILIZE_CAP)
}

pub fn wl_stabilize_with_cap(cfg: &Configuration, cap: usize) -> Result<RefinementTrace, WlError> {
    if cfg.n() > cap {
        return Err(WlError::TooLarge { n: cfg.n(), cap });
    }
    let mut current = cfg.clone();
    let mut rounds = 0;
    let mut rank_history = Vec::new();
    loop {
        let next = wl_round(&current)?;
        rank_history.push(next.rank());
        if next.rank() == current.rank() {
            return Ok(RefinementTrace { rounds, rank_history, stable: Some(next) });
        }
        rounds += 1;
        current = next;
    }
}

/// Give each vertex of `set`, in order, a fresh vertex color.
pub fn individualize(cfg: &Configuration, set: &[usize]) -> Result<Configuration, WlError> {
    let n = cfg.n();
    let mut colors = cfg.as_flat().to_vec();
    let mut fresh = cfg.rank() as Color;
    for &v in set {
        if v >= n {
            return Err(CoreError::VertexOutOfRange { vertex: v, n }.into());
        }
        colors[v * n + v] = fresh;
        fresh += 1;
    }
    Ok(Configuration::from_flat_compacting(n, colors)?)
}

/// Does refinement after individualizing `set` give every vertex its own color?
pub fn splits_completely(cfg: &Configuration, set: &[usize]) -> Result<bool, WlError> {
    let stable = wl_stabilize(&individualize(cfg, set)?)?.stable.expect("set");
    Ok(is_discrete(&stable))
}

pub fn is_discrete(cfg: &Configuration) -> bool {
    let mut vc = cfg.vertex_colors();
    vc.sort_unstable();
    vc.dedup();
    vc.len() == cfg.n()
}

fn pairs(m: usize) -> u64 {
    (m as u64) * (m as u64).saturating_sub(1) / 2
}

/// Greedy distinguishing set: repeatedly add the vertex that separates the
/// most pairs not yet separated, lowest id on ties.
pub fn greedy_distinguishing_set(cfg: &Configuration) -> Result<Vec<usize>, WlError> {
    if !cfg.is_homogeneous() {
        return Err(CoreError::NotHomogeneous.into());
    }
    check_coherence(cfg)?;
    let n = cfg.n();
    let mut cells: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut chosen = Vec::new();
    let mut used = vec![false; n];
    let mut buckets: HashMap<Color, usize> = HashMap::new();
    while cells.iter().any(|c| c.len() > 1) {
        let mut best: Option<(u64, usize)> = None;
        for x in (0..n).filter(|&x| !used[x]) {
            let mut gain = 0;
            for cell in cells.iter().filter(|c| c.len() > 1) {
                buckets.clear();
                for &v in cell {
                    *buckets.entry(cfg.color(x, v)).or_default() += 1;
                }
                gain += pairs(cell.len()) - buckets.values().map(|&m| pairs(m)).sum::<u64>();
            }
            if best.map_or(true, |(g, _)| gain > g) {
                best = Some((gain, x));
            }
        }
        let (_, x) = best.expect("some vertex separates a remaining pair");
        used[x] = true;
        chosen.push(x);
        let mut next = Vec::new();
        for cell in cells {
            let mut parts: Vec<(Color, Vec<usize>)> = Vec::new();
            for v in cell {
                let c = cfg.color(x, v);
                match parts.iter_mut().find(|(k, _)| *k == c) {
                    Some((_, p)) => p.push(v),
                    None => parts.push((c, vec![v])),
                }
            }
            next.extend(parts.into_iter().map(|(_, p)| p));
        }
        cells = next;
    }
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cc_core::Graph;

    fn petersen() -> Configuration {
        Configuration::from_graph(&Graph::petersen()).unwrap()
    }

    #[test]
    fn coherent_input_is_fixed() {
        let cfg = petersen();
        assert_eq!(wl_round(&cfg).unwrap(), cfg);
        let trace = wl_stabilize(&cfg).unwrap();
        assert_eq!(trace.rounds, 0);
        assert_eq!(trace.rank_history, vec![3]);
    }

    #[test]
    fn path_refines_to_its_orbits() {
        let cfg = Configuration::from_graph(&Graph::path(4)).unwrap();
        let trace = wl_stabilize(&cfg).unwrap();
        assert!(trace.rounds >= 1);
        let stable = trace.stable();
        check_coherence(stable).unwrap();
        // endpoints versus inner vertices
        let vc = stable.vertex_colors();
        assert_eq!(vc[0], vc[3]);
        assert_eq!(vc[1], vc[2]);
        assert_ne!(vc[0], vc[1]);
        let h = &trace.rank_history;
        assert!(h.windows(2).take(h.len() - 2).all(|w| w[0] < w[1]));
        assert_eq!(h[h.len() - 1], h[h.len() - 2]);
    }

    #[test]
    fn individualizing_raises_rank() {
        let cfg = petersen();
        let ind = individualize(&cfg, &[0]).unwrap();
        assert_eq!(ind.rank(), cfg.rank() + 1);
        assert!(!ind.is_homogeneous());
        let all: Vec<usize> = (0..10).collect();
        let disc = individualize(&cfg, &all).unwrap();
        assert!(is_discrete(&disc));
        assert_eq!(individualize(&cfg, &[10]), Err(WlError::Core(CoreError::VertexOutOfRange { vertex: 10, n: 10 })));
    }

    #[test]
    fn splitting() {
        let cfg = petersen();
        assert!(!splits_completely(&cfg, &[]).unwrap());
        assert!(!splits_completely(&cfg, &[0]).unwrap());
        let s = greedy_distinguishing_set(&cfg).unwrap();
        assert!(splits_completely(&cfg, &s).unwrap());
        // |S| <= floor(2 n ln n / Dmin) + 1 with Dmin = 6
        assert!(s.len() <= 8);
    }

    #[test]
    fn greedy_on_single_point() {
        let cfg = Configuration::from_flat(1, vec![0]).unwrap();
        assert!(greedy_distinguishing_set(&cfg).unwrap().is_empty());
    }

    #[test]
    fn stabilize_cap() {
        assert_eq!(wl_stabilize_with_cap(&petersen(), 5), Err(WlError::TooLarge { n: 10, cap: 5 }));
    }
}
