use serde::{Deserialize, Serialize};

use crate::{Color, CoherenceWitness, Configuration, CoreError};

/// Largest rank for which a dense `r^3` tensor is built.
pub const TENSOR_RANK_CAP: usize = 128;

/// Intersection numbers of a coherent configuration.
///
/// `p(i, j, t)` counts the `w` with `color(u, w) = i` and `color(w, v) = j`
/// for any pair `(u, v)` of color `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTensor")]
pub struct IntersectionTensor {
    n: usize,
    rank: usize,
    p: Vec<u64>,
    k: Vec<u64>,
    pairing: Vec<Color>,
    diagonal: Vec<bool>,
}

#[derive(Deserialize)]
struct RawTensor {
    n: usize,
    rank: usize,
    p: Vec<u64>,
    k: Vec<u64>,
    pairing: Vec<Color>,
    diagonal: Vec<bool>,
}

impl TryFrom<RawTensor> for IntersectionTensor {
    type Error = CoreError;

    fn try_from(r: RawTensor) -> Result<Self, CoreError> {
        if r.rank != r.k.len() {
            return Err(CoreError::NotSquare { row: 0, len: r.k.len(), n: r.rank });
        }
        IntersectionTensor::from_parts(r.n, r.p, r.k, r.pairing, r.diagonal)
    }
}

/// Per-edge-color summary of a homogeneous coherent configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstituentStats {
    pub color: Color,
    pub k: u64,
    /// `p(i, i, i)`.
    pub lambda: u64,
    /// Most common out-neighbors of two distinct points.
    pub q: u64,
    pub diameter: Option<u32>,
    pub connected: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralFlags {
    pub homogeneous: bool,
    pub association_scheme: bool,
    pub primitive: bool,
    pub scheme_diameter: Option<u32>,
}

type Signature = Vec<(u64, u32)>;

fn pair_signature(cfg: &Configuration, u: usize, v: usize, scratch: &mut Vec<u64>) -> Signature {
    let r = cfg.rank() as u64;
    let n = cfg.n();
    scratch.clear();
    let row = cfg.row(u);
    for w in 0..n {
        scratch.push(row[w] as u64 * r + cfg.color(w, v) as u64);
    }
    scratch.sort_unstable();
    let mut sig: Signature = Vec::new();
    for &key in scratch.iter() {
        match sig.last_mut() {
            Some((k, c)) if *k == key => *c += 1,
            _ => sig.push((key, 1)),
        }
    }
    sig
}

fn first_difference(a: &Signature, b: &Signature) -> (u64, u64, u64) {
    let (mut x, mut y) = (0, 0);
    loop {
        let ka = a.get(x).map(|e| e.0);
        let kb = b.get(y).map(|e| e.0);
        match (ka, kb) {
            (Some(p), Some(q)) if p == q => {
                if a[x].1 != b[y].1 {
                    return (p, a[x].1 as u64, b[y].1 as u64);
                }
                x += 1;
                y += 1;
            }
            (Some(p), Some(q)) if p < q => return (p, a[x].1 as u64, 0),
            (Some(_), Some(q)) => return (q, 0, b[y].1 as u64),
            (Some(p), None) => return (p, a[x].1 as u64, 0),
            (None, Some(q)) => return (q, 0, b[y].1 as u64),
            (None, None) => unreachable!("signatures differ"),
        }
    }
}

/// Reference signature per color, or the first coherence violation in
/// row-major order.
fn reference_signatures(cfg: &Configuration) -> Result<Vec<Signature>, CoreError> {
    let n = cfg.n();
    let r = cfg.rank();
    let mut refs: Vec<Option<(Signature, (usize, usize))>> = vec![None; r];
    let mut scratch = Vec::with_capacity(n);
    for u in 0..n {
        for v in 0..n {
            let t = cfg.color(u, v) as usize;
            let sig = pair_signature(cfg, u, v, &mut scratch);
            match &refs[t] {
                None => refs[t] = Some((sig, (u, v))),
                Some((reference, at)) if *reference != sig => {
                    let (key, rc, oc) = first_difference(reference, &sig);
                    return Err(CoreError::NotCoherent(Box::new(CoherenceWitness {
                        i: (key / r as u64) as Color,
                        j: (key % r as u64) as Color,
                        t: t as Color,
                        reference: *at,
                        reference_count: rc,
                        offender: (u, v),
                        offender_count: oc,
                    })));
                }
                _ => {}
            }
        }
    }
    Ok(refs.into_iter().map(|e| e.expect("every color occurs").0).collect())
}

/// `Ok(())` iff the configuration is coherent. Works for any rank.
pub fn check_coherence(cfg: &Configuration) -> Result<(), CoreError> {
    reference_signatures(cfg).map(|_| ())
}

/// Intersection numbers, checked over every pair of every color.
pub fn intersection_tensor(cfg: &Configuration) -> Result<IntersectionTensor, CoreError> {
    let r = cfg.rank();
    if r > TENSOR_RANK_CAP {
        return Err(CoreError::RankTooLarge { rank: r, cap: TENSOR_RANK_CAP });
    }
    let refs = reference_signatures(cfg)?;
    let mut p = vec![0u64; r * r * r];
    for (t, sig) in refs.iter().enumerate() {
        for &(key, count) in sig {
            let (i, j) = ((key / r as u64) as usize, (key % r as u64) as usize);
            p[(i * r + j) * r + t] = count as u64;
        }
    }
    let mut k = vec![0u64; r];
    let mut done = vec![false; r];
    for u in 0..cfg.n() {
        for v in 0..cfg.n() {
            let c = cfg.color(u, v) as usize;
            if !done[c] {
                done[c] = true;
                k[c] = cfg.row(u).iter().filter(|&&x| x as usize == c).count() as u64;
            }
        }
    }
    let diagonal = (0..r as Color).map(|c| cfg.is_vertex_color(c)).collect();
    Ok(IntersectionTensor { n: cfg.n(), rank: r, p, k, pairing: cfg.pairing_map().to_vec(), diagonal })
}

impl IntersectionTensor {
    /// Assemble a tensor from raw parts without a configuration behind it.
    /// Only shapes and the pairing are checked.
    pub fn from_parts(
        n: usize,
        p: Vec<u64>,
        k: Vec<u64>,
        pairing: Vec<Color>,
        diagonal: Vec<bool>,
    ) -> Result<Self, CoreError> {
        let rank = k.len();
        if rank == 0 {
            return Err(CoreError::Empty);
        }
        if rank > TENSOR_RANK_CAP {
            return Err(CoreError::RankTooLarge { rank, cap: TENSOR_RANK_CAP });
        }
        if p.len() != rank * rank * rank || pairing.len() != rank || diagonal.len() != rank {
            return Err(CoreError::NotSquare { row: 0, len: p.len(), n: rank * rank * rank });
        }
        for (i, &j) in pairing.iter().enumerate() {
            if j as usize >= rank || pairing[j as usize] as usize != i {
                return Err(CoreError::ColorOutOfRange { color: j, rank });
            }
        }
        Ok(Self { n, rank, p, k, pairing, diagonal })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn p(&self, i: Color, j: Color, t: Color) -> u64 {
        let r = self.rank;
        self.p[(i as usize * r + j as usize) * r + t as usize]
    }

    pub fn k(&self, i: Color) -> u64 {
        self.k[i as usize]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.k
    }

    pub fn pairing(&self, i: Color) -> Color {
        self.pairing[i as usize]
    }

    pub fn is_diagonal(&self, c: Color) -> bool {
        self.diagonal[c as usize]
    }

    pub fn diagonal_colors(&self) -> Vec<Color> {
        (0..self.rank as Color).filter(|&c| self.is_diagonal(c)).collect()
    }

    pub fn edge_colors(&self) -> Vec<Color> {
        (0..self.rank as Color).filter(|&c| !self.is_diagonal(c)).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.diagonal.iter().filter(|&&d| d).count() == 1
    }

    pub fn is_association_scheme(&self) -> bool {
        self.pairing.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn is_symmetric_color(&self, i: Color) -> bool {
        self.pairing(i) == i
    }

    /// `(B_i)[t][j] = p(i, j, t)`: the matrix of left multiplication by `A_i`.
    pub fn b_matrix(&self, i: Color) -> Vec<Vec<i64>> {
        let r = self.rank as Color;
        (0..r).map(|t| (0..r).map(|j| self.p(i, j, t) as i64).collect()).collect()
    }

    /// Sum of `B_i` over `set`.
    pub fn b_matrix_union(&self, set: &[Color]) -> Vec<Vec<i64>> {
        let r = self.rank;
        let mut m = vec![vec![0i64; r]; r];
        for &i in set {
            for (t, row) in self.b_matrix(i).into_iter().enumerate() {
                for (j, x) in row.into_iter().enumerate() {
                    m[t][j] += x;
                }
            }
        }
        m
    }

    pub fn union_degree(&self, set: &[Color]) -> u64 {
        set.iter().map(|&i| self.k(i)).sum()
    }

    /// Common neighbors in the undirected graph `X_I` of a pair of color `t`:
    /// `sum over a, b in I of p(a, b*, t)`.
    pub fn union_common(&self, set: &[Color], t: Color) -> u64 {
        let mut s = 0;
        for &a in set {
            for &b in set {
                s += self.p(a, self.pairing(b), t);
            }
        }
        s
    }

    /// `q(X_I)`: most common neighbors over distinct points.
    pub fn union_q(&self, set: &[Color]) -> u64 {
        self.edge_colors().into_iter().map(|t| self.union_common(set, t)).max().unwrap_or(0)
    }

    /// `dist_i(j)` for every color `j`: the least `l` such that a pair of
    /// color `j` is joined by a walk of `l` color-`i` steps. `None` means
    /// unreachable. Diagonal colors have distance 0.
    pub fn distances(&self, i: Color) -> Vec<Option<u32>> {
        let r = self.rank;
        let mut dist: Vec<Option<u32>> = (0..r).map(|c| self.diagonal[c].then_some(0)).collect();
        loop {
            let mut changed = false;
            for j in 0..r {
                if dist[j] == Some(0) {
                    continue;
                }
                let best = (0..r)
                    .filter(|&e| self.p(i, e as Color, j as Color) > 0)
                    .filter_map(|e| dist[e])
                    .min()
                    .map(|d| d + 1);
                if let Some(b) = best {
                    if dist[j].map_or(true, |d| b < d) {
                        dist[j] = Some(b);
                        changed = true;
                    }
                }
            }
            if !changed {
                return dist;
            }
        }
    }

    /// Diameter of the constituent `X_i` (directed distance), `None` if it is
    /// not strongly connected.
    pub fn constituent_diameter(&self, i: Color) -> Option<u32> {
        let d = self.distances(i);
        let mut best = 0;
        for c in self.edge_colors() {
            best = best.max(d[c as usize]?);
        }
        Some(best)
    }

    pub fn constituent_stats(&self) -> Vec<ConstituentStats> {
        self.edge_colors()
            .into_iter()
            .map(|i| {
                let star = self.pairing(i);
                let q = self.edge_colors().into_iter().map(|j| self.p(i, star, j)).max().unwrap_or(0);
                let diameter = self.constituent_diameter(i);
                ConstituentStats {
                    color: i,
                    k: self.k(i),
                    lambda: self.p(i, i, i),
                    q,
                    diameter,
                    connected: diameter.is_some(),
                }
            })
            .collect()
    }
}

pub fn structural_flags(tensor: &IntersectionTensor) -> StructuralFlags {
    let homogeneous = tensor.is_homogeneous();
    let diameters: Vec<Option<u32>> =
        tensor.edge_colors().into_iter().map(|i| tensor.constituent_diameter(i)).collect();
    let primitive = homogeneous && diameters.iter().all(Option::is_some);
    let scheme_diameter = if primitive {
        Some(diameters.iter().map(|d| d.unwrap()).max().unwrap_or(0))
    } else {
        None
    };
    StructuralFlags {
        homogeneous,
        association_scheme: tensor.is_association_scheme(),
        primitive,
        scheme_diameter,
    }
}

/// Renumber colors: the diagonal becomes 0, edge colors follow by increasing
/// degree. Ties keep an oriented pair adjacent, then fall back to the
/// original id.
pub fn order_by_degree(cfg: &Configuration) -> Result<Configuration, CoreError> {
    if !cfg.is_homogeneous() {
        return Err(CoreError::NotHomogeneous);
    }
    let tensor = intersection_tensor(cfg)?;
    let mut edges = tensor.edge_colors();
    edges.sort_by_key(|&i| (tensor.k(i), i.min(tensor.pairing(i)), i));
    let mut map = vec![0 as Color; tensor.rank()];
    for (pos, &c) in edges.iter().enumerate() {
        map[c as usize] = pos as Color + 1;
    }
    cfg.recolor(&map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Graph;

    fn petersen_scheme() -> Configuration {
        Configuration::from_graph(&Graph::petersen()).unwrap()
    }

    #[test]
    fn petersen_numbers() {
        let t = intersection_tensor(&petersen_scheme()).unwrap();
        assert_eq!(t.degrees(), &[1, 3, 6]);
        assert_eq!(t.p(1, 1, 1), 0);
        assert_eq!(t.p(1, 1, 2), 1);
        let flags = structural_flags(&t);
        assert!(flags.homogeneous && flags.association_scheme && flags.primitive);
        assert_eq!(flags.scheme_diameter, Some(2));
    }

    #[test]
    fn path_is_not_coherent() {
        let cfg = Configuration::from_graph(&Graph::path(4)).unwrap();
        let err = intersection_tensor(&cfg).unwrap_err();
        let CoreError::NotCoherent(w) = err else { panic!("{err:?}") };
        assert_ne!(w.reference_count, w.offender_count);
        assert_eq!(cfg.color(w.reference.0, w.reference.1), w.t);
        assert_eq!(cfg.color(w.offender.0, w.offender.1), w.t);
    }

    #[test]
    fn hexagon_is_imprimitive() {
        // colors by cyclic distance 0..3 on six points
        let cfg = Configuration::from_fn(6, |u, v| {
            let d = (u + 6 - v) % 6;
            d.min(6 - d) as Color
        })
        .unwrap();
        let t = intersection_tensor(&cfg).unwrap();
        let flags = structural_flags(&t);
        assert!(flags.homogeneous && !flags.primitive);
        assert_eq!(t.constituent_diameter(1), Some(3));
        assert_eq!(t.constituent_diameter(2), None);
    }

    #[test]
    fn ordering_puts_small_degree_first() {
        let cfg = Configuration::from_graph(&Graph::petersen().complement()).unwrap();
        let ordered = order_by_degree(&cfg).unwrap();
        let t = intersection_tensor(&ordered).unwrap();
        assert_eq!(t.degrees(), &[1, 3, 6]);
    }

    #[test]
    fn stats_of_pentagon() {
        let cfg = Configuration::from_graph(&Graph::cycle(5)).unwrap();
        let t = intersection_tensor(&cfg).unwrap();
        let stats = t.constituent_stats();
        assert_eq!(stats.len(), 2);
        assert!(stats.iter().all(|s| s.k == 2 && s.connected && s.diameter == Some(2)));
    }
}
