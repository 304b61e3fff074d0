use serde::{Deserialize, Serialize};

use crate::{graph::Graph, Color, CoreError};

/// Default bound on the number of points accepted by validation.
pub const DEFAULT_N_CAP: usize = 4096;

/// A validated color matrix.
///
/// Invariants: ids are dense in `0..rank`, no id is used both on and off the
/// diagonal, and `color(v, u) == pairing(color(u, v))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Configuration {
    n: usize,
    rank: usize,
    colors: Vec<Color>,
    pairing: Vec<Color>,
    vertex_color: Vec<bool>,
}

/// Validate a row-major color matrix with the default size cap.
pub fn validate_configuration(matrix: &[Vec<Color>]) -> Result<Configuration, CoreError> {
    validate_configuration_with_cap(matrix, DEFAULT_N_CAP)
}

pub fn validate_configuration_with_cap(
    matrix: &[Vec<Color>],
    cap: usize,
) -> Result<Configuration, CoreError> {
    let n = matrix.len();
    if n == 0 {
        return Err(CoreError::Empty);
    }
    if n > cap {
        return Err(CoreError::TooLarge { n, cap });
    }
    for (row, r) in matrix.iter().enumerate() {
        if r.len() != n {
            return Err(CoreError::NotSquare { row, len: r.len(), n });
        }
    }
    let flat: Vec<Color> = matrix.iter().flat_map(|r| r.iter().copied()).collect();
    Configuration::from_flat(n, flat)
}

impl Configuration {
    /// Build from a row-major vector of length `n * n`.
    pub fn from_flat(n: usize, colors: Vec<Color>) -> Result<Self, CoreError> {
        if n == 0 {
            return Err(CoreError::Empty);
        }
        if colors.len() != n * n {
            let row = colors.len() / n;
            return Err(CoreError::NotSquare { row, len: colors.len() % n, n });
        }
        let rank = colors.iter().copied().max().map_or(0, |m| m as usize + 1);
        let mut seen = vec![false; rank];
        for &c in &colors {
            seen[c as usize] = true;
        }
        if let Some(c) = seen.iter().position(|s| !s) {
            return Err(CoreError::UnusedColorId { color: c as Color, rank });
        }

        let mut vertex_color = vec![false; rank];
        let mut first_vertex = vec![usize::MAX; rank];
        for v in 0..n {
            let c = colors[v * n + v] as usize;
            vertex_color[c] = true;
            if first_vertex[c] == usize::MAX {
                first_vertex[c] = v;
            }
        }

        const UNSET: Color = Color::MAX;
        let mut pairing = vec![UNSET; rank];
        let mut pair_src: Vec<(usize, usize)> = vec![(0, 0); rank];
        for u in 0..n {
            for v in 0..n {
                let c = colors[u * n + v];
                if u != v && vertex_color[c as usize] {
                    return Err(CoreError::VertexEdgeColorClash {
                        color: c,
                        vertex: first_vertex[c as usize],
                        u,
                        v,
                    });
                }
                let back = colors[v * n + u];
                let slot = &mut pairing[c as usize];
                if *slot == UNSET {
                    *slot = back;
                    pair_src[c as usize] = (u, v);
                } else if *slot != back {
                    let (u1, v1) = pair_src[c as usize];
                    return Err(CoreError::PairingUndefined {
                        color: c,
                        u1,
                        v1,
                        c1: *slot,
                        u2: u,
                        v2: v,
                        c2: back,
                    });
                }
            }
        }
        Ok(Self { n, rank, colors, pairing, vertex_color })
    }

    /// Matrix `color(u, v) = f(u, v)`, validated.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Color) -> Result<Self, CoreError> {
        let mut colors = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                colors.push(f(u, v));
            }
        }
        Self::from_flat(n, colors)
    }

    /// Like [`Configuration::from_flat`] but first renumbers ids densely,
    /// keeping their relative order.
    pub fn from_flat_compacting(n: usize, mut colors: Vec<Color>) -> Result<Self, CoreError> {
        let mut ids: Vec<Color> = colors.clone();
        ids.sort_unstable();
        ids.dedup();
        if ids.iter().enumerate().any(|(i, &c)| i as Color != c) {
            for c in colors.iter_mut() {
                *c = ids.binary_search(c).expect("present") as Color;
            }
        }
        Self::from_flat(n, colors)
    }

    /// The adjacency coloring of a simple graph: 0 on the diagonal, 1 on
    /// edges, 2 on non-edges (ids compacted when a class is empty).
    pub fn from_graph(g: &Graph) -> Result<Self, CoreError> {
        let n = g.n();
        let mut colors = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                colors.push(if u == v {
                    0
                } else if g.has_edge(u, v) {
                    1
                } else {
                    2
                });
            }
        }
        Self::from_flat_compacting(n, colors)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Color {
        self.colors[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[Color] {
        &self.colors[u * self.n..(u + 1) * self.n]
    }

    pub fn as_flat(&self) -> &[Color] {
        &self.colors
    }

    pub fn pairing(&self, c: Color) -> Color {
        self.pairing[c as usize]
    }

    pub fn pairing_map(&self) -> &[Color] {
        &self.pairing
    }

    pub fn is_vertex_color(&self, c: Color) -> bool {
        self.vertex_color[c as usize]
    }

    pub fn is_symmetric_color(&self, c: Color) -> bool {
        self.pairing[c as usize] == c
    }

    pub fn vertex_color(&self, v: usize) -> Color {
        self.color(v, v)
    }

    pub fn vertex_colors(&self) -> Vec<Color> {
        (0..self.n).map(|v| self.vertex_color(v)).collect()
    }

    pub fn edge_colors(&self) -> Vec<Color> {
        (0..self.rank as Color).filter(|&c| !self.is_vertex_color(c)).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.vertex_color.iter().filter(|&&b| b).count() == 1
    }

    pub fn matrix(&self) -> Vec<Vec<Color>> {
        (0..self.n).map(|u| self.row(u).to_vec()).collect()
    }

    /// Undirected graph whose edges are the pairs `{u, v}` with
    /// `color(u, v)` or `color(v, u)` in `set`.
    pub fn constituent_graph(&self, set: &[Color]) -> Graph {
        let mut mask = vec![false; self.rank];
        for &c in set {
            if (c as usize) < self.rank {
                mask[c as usize] = true;
            }
        }
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if mask[self.color(u, v) as usize] || mask[self.color(v, u) as usize] {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Image under the vertex permutation `perm` (point `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Configuration {
        let n = self.n;
        let mut colors = vec![0; n * n];
        for u in 0..n {
            for v in 0..n {
                colors[perm[u] * n + perm[v]] = self.color(u, v);
            }
        }
        Configuration { colors, ..self.clone() }
    }

    /// Apply an injective recoloring of ids. Result is validated.
    pub fn recolor(&self, map: &[Color]) -> Result<Configuration, CoreError> {
        let colors = self.colors.iter().map(|&c| map[c as usize]).collect();
        Configuration::from_flat(self.n, colors)
    }

    /// Is `perm` a color-preserving permutation of the points?
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        perm.len() == self.n
            && (0..self.n).all(|u| (0..self.n).all(|v| self.color(u, v) == self.color(perm[u], perm[v])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pentagon() -> Vec<Vec<Color>> {
        (0..5)
            .map(|u: i32| {
                (0..5)
                    .map(|v: i32| match (u - v).rem_euclid(5) {
                        0 => 0,
                        1 | 4 => 1,
                        _ => 2,
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn pentagon_is_valid() {
        let cfg = validate_configuration(&pentagon()).unwrap();
        assert_eq!(cfg.rank(), 3);
        assert!(cfg.is_homogeneous());
        assert!((0..3).all(|c| cfg.is_symmetric_color(c)));
    }

    #[test]
    fn diagonal_clash() {
        let m = vec![vec![0, 0], vec![0, 0]];
        assert!(matches!(
            validate_configuration(&m),
            Err(CoreError::VertexEdgeColorClash { color: 0, .. })
        ));
    }

    #[test]
    fn pairing_violation() {
        let m = vec![vec![0, 1, 1], vec![2, 0, 1], vec![1, 1, 0]];
        assert!(matches!(validate_configuration(&m), Err(CoreError::PairingUndefined { .. })));
    }

    #[test]
    fn gap_in_ids() {
        let m = vec![vec![0, 2], vec![2, 0]];
        assert_eq!(
            validate_configuration(&m),
            Err(CoreError::UnusedColorId { color: 1, rank: 3 })
        );
    }

    #[test]
    fn ragged() {
        let m = vec![vec![0, 1], vec![1]];
        assert!(matches!(validate_configuration(&m), Err(CoreError::NotSquare { row: 1, .. })));
    }

    #[test]
    fn cap_enforced() {
        let m = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(
            validate_configuration_with_cap(&m, 1),
            Err(CoreError::TooLarge { n: 2, cap: 1 })
        );
    }

    #[test]
    fn oriented_triangle() {
        let cfg = Configuration::from_fn(3, |u, v| match (v + 3 - u) % 3 {
            0 => 0,
            1 => 1,
            _ => 2,
        })
        .unwrap();
        assert_eq!(cfg.pairing(1), 2);
        assert_eq!(cfg.pairing(2), 1);
        assert!(!cfg.is_symmetric_color(1));
    }

    #[test]
    fn compacting_keeps_order() {
        let cfg = Configuration::from_flat_compacting(2, vec![3, 7, 7, 3]).unwrap();
        assert_eq!(cfg.as_flat(), &[0, 1, 1, 0]);
    }
}
