//! Generators for the schemes used as fixtures and exceptions.
//!
//! Johnson and Hamming schemes, triangular and lattice graphs, crown graphs,
//! cycles, Paley graphs, line graphs of regular triangle-free graphs and the
//! distance scheme of any distance-regular graph. Also the intersection
//! tensor of a distance-regular parameter set computed from its array alone,
//! which lets large parameter sets be examined without building the graph.

mod spec;

use cc_core::{
    intersection_tensor, Color, Configuration, CoreError, Graph, IntersectionTensor, DEFAULT_N_CAP,
};
use cc_wl::{wl_stabilize, WlError};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use spec::{parse_family_spec, BaseGraph, FamilySpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("instance has {n} points, above the cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph contains the triangle {0:?}")]
    HasTriangle((usize, usize, usize)),
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not distance-regular: {0}")]
    NotDistanceRegular(String),
    #[error("intersection array is not feasible: {0}")]
    InfeasibleArray(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Wl(#[from] WlError),
}

fn bad(msg: impl Into<String>) -> FamilyError {
    FamilyError::BadParams(msg.into())
}

fn check_size(n: u128, cap: usize) -> Result<usize, FamilyError> {
    if n > cap as u128 {
        return Err(FamilyError::TooLarge { n: n.min(usize::MAX as u128) as usize, cap });
    }
    Ok(n as usize)
}

fn binom_u128(m: u64, k: u64) -> u128 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((m - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// `d`-subsets of `0..m` in lexicographic order.
fn subsets(m: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..d).collect();
    if d > m {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < m - d + i {
                break;
            }
        }
        cur[i] += 1;
        for j in i + 1..d {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

pub fn gen_johnson(m: usize, d: usize) -> Result<Configuration, FamilyError> {
    gen_johnson_with_cap(m, d, DEFAULT_N_CAP)
}

/// Johnson scheme `J(m, d)`: `d`-subsets, colored by `|U \ W|`.
pub fn gen_johnson_with_cap(m: usize, d: usize, cap: usize) -> Result<Configuration, FamilyError> {
    if d < 1 || m < 2 * d {
        return Err(bad(format!("johnson needs 1 <= d and m >= 2d, got m={m} d={d}")));
    }
    check_size(binom_u128(m as u64, d as u64), cap)?;
    let sets = subsets(m, d);
    let masks: Vec<u128> = sets.iter().map(|s| s.iter().fold(0u128, |a, &x| a | 1 << x)).collect();
    Ok(Configuration::from_fn(sets.len(), |u, v| (masks[u] & !masks[v]).count_ones() as Color)?)
}

pub fn gen_hamming(d: usize, m: usize) -> Result<Configuration, FamilyError> {
    gen_hamming_with_cap(d, m, DEFAULT_N_CAP)
}

/// Hamming scheme `H(d, m)`: words of length `d` over `0..m`, colored by
/// Hamming distance.
pub fn gen_hamming_with_cap(d: usize, m: usize, cap: usize) -> Result<Configuration, FamilyError> {
    if d < 1 || m < 2 {
        return Err(bad(format!("hamming needs d >= 1 and m >= 2, got d={d} m={m}")));
    }
    let n = check_size((m as u128).checked_pow(d as u32).unwrap_or(u128::MAX), cap)?;
    let digits = |mut x: usize| {
        let mut w = vec![0; d];
        for slot in w.iter_mut().rev() {
            *slot = x % m;
            x /= m;
        }
        w
    };
    let words: Vec<Vec<usize>> = (0..n).map(digits).collect();
    Ok(Configuration::from_fn(n, |u, v| {
        words[u].iter().zip(&words[v]).filter(|(a, b)| a != b).count() as Color
    })?)
}

/// `T(s) = J(s, 2)`.
pub fn gen_triangular(s: usize) -> Result<Configuration, FamilyError> {
    if s < 4 {
        return Err(bad("triangular needs s >= 4"));
    }
    gen_johnson(s, 2)
}

/// `L2(s) = H(2, s)`.
pub fn gen_lattice(s: usize) -> Result<Configuration, FamilyError> {
    if s < 2 {
        return Err(bad("lattice needs s >= 2"));
    }
    gen_hamming(2, s)
}

/// `K_{s,s}` minus a perfect matching. Colors: 1 adjacent, 2 same side,
/// 3 matched.
pub fn gen_crown(s: usize) -> Result<Configuration, FamilyError> {
    if s < 2 {
        return Err(bad("crown needs s >= 2"));
    }
    check_size(2 * s as u128, DEFAULT_N_CAP)?;
    Ok(Configuration::from_fn(2 * s, |u, v| {
        if u == v {
            0
        } else if (u < s) == (v < s) {
            2
        } else if u % s == v % s {
            3
        } else {
            1
        }
    })?)
}

/// Distance scheme of the cycle `C_n`.
pub fn gen_cycle(n: usize) -> Result<Configuration, FamilyError> {
    if n < 3 {
        return Err(bad("cycle needs n >= 3"));
    }
    check_size(n as u128, DEFAULT_N_CAP)?;
    Ok(Configuration::from_fn(n, |u, v| {
        let d = (u + n - v) % n;
        d.min(n - d) as Color
    })?)
}

/// The rank-2 scheme on `n` points.
pub fn gen_complete(n: usize) -> Result<Configuration, FamilyError> {
    if n < 2 {
        return Err(bad("complete needs n >= 2"));
    }
    check_size(n as u128, DEFAULT_N_CAP)?;
    Ok(Configuration::from_fn(n, |u, v| (u != v) as Color)?)
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Paley scheme on `F_q`, `q` prime with `q = 1 mod 4`: color 1 when the
/// difference is a nonzero square, 2 otherwise.
pub fn gen_paley(q: usize) -> Result<Configuration, FamilyError> {
    if !is_prime(q) || q % 4 != 1 {
        return Err(bad("paley needs a prime q = 1 mod 4"));
    }
    check_size(q as u128, DEFAULT_N_CAP)?;
    let mut square = vec![false; q];
    for x in 1..q {
        square[x * x % q] = true;
    }
    Ok(Configuration::from_fn(q, |u, v| {
        if u == v {
            0
        } else if square[(u + q - v) % q] {
            1
        } else {
            2
        }
    })?)
}

/// Coherent closure of a line graph of a regular triangle-free graph.
#[derive(Clone, Debug)]
pub struct LineGraphScheme {
    pub config: Configuration,
    pub line_graph: Graph,
    /// Edge of the base graph behind each point.
    pub base_edges: Vec<(usize, usize)>,
    /// The color whose pairs are exactly the edges of the line graph, when
    /// refinement did not split them.
    pub line_color: Option<Color>,
    pub base_degree: usize,
    /// Base degree at least 3 and at least 5 base vertices.
    pub meets_line_setting: bool,
}

pub fn line_graph_scheme(base: &Graph) -> Result<LineGraphScheme, FamilyError> {
    if !base.is_connected() {
        return Err(FamilyError::NotConnected);
    }
    let k = base.regular_degree().ok_or(FamilyError::NotRegular)?;
    if let Some(t) = base.find_triangle() {
        return Err(FamilyError::HasTriangle(t));
    }
    if k < 2 {
        return Err(bad("base graph needs degree >= 2"));
    }
    let (line_graph, base_edges) = base.line_graph();
    let adjacency = Configuration::from_graph(&line_graph)?;
    let config = wl_stabilize(&adjacency)?.stable.expect("stable");
    let n = config.n();
    let mut line_color = None;
    if let Some((a, b)) = line_graph.edges().first().copied() {
        let c = config.color(a, b);
        let exact = (0..n).all(|u| (0..n).all(|v| (config.color(u, v) == c) == line_graph.has_edge(u, v)));
        if exact {
            line_color = Some(c);
        }
    }
    Ok(LineGraphScheme {
        config,
        line_graph,
        base_edges,
        line_color,
        base_degree: k,
        meets_line_setting: k >= 3 && base.n() >= 5,
    })
}

/// Intersection array `{b_0, ..., b_{d-1}; c_1, ..., c_d}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionArray {
    pub b: Vec<u64>,
    pub c: Vec<u64>,
}

impl IntersectionArray {
    pub fn diameter(&self) -> usize {
        self.b.len()
    }

    pub fn johnson(m: u64, d: u64) -> Self {
        Self {
            b: (0..d).map(|i| (d - i) * (m - d - i)).collect(),
            c: (1..=d).map(|i| i * i).collect(),
        }
    }

    pub fn hamming(d: u64, m: u64) -> Self {
        Self { b: (0..d).map(|i| (d - i) * (m - 1)).collect(), c: (1..=d).collect() }
    }
}

/// Distance scheme of a distance-regular graph and its array.
#[derive(Clone, Debug)]
pub struct DrgScheme {
    pub config: Configuration,
    pub array: IntersectionArray,
}

pub fn drg_to_scheme(graph: &Graph) -> Result<DrgScheme, FamilyError> {
    let n = graph.n();
    if n < 2 {
        return Err(bad("need at least two vertices"));
    }
    let dist: Vec<Vec<Option<usize>>> = (0..n).map(|s| graph.distances_from(s)).collect();
    if dist.iter().any(|row| row.iter().any(Option::is_none)) {
        return Err(FamilyError::NotConnected);
    }
    let config = Configuration::from_fn(n, |u, v| dist[u][v].unwrap() as Color)?;
    let tensor = intersection_tensor(&config).map_err(|e| FamilyError::NotDistanceRegular(e.to_string()))?;
    if !tensor.is_homogeneous() {
        return Err(FamilyError::NotDistanceRegular("distance classes are not regular".into()));
    }
    let d = tensor.rank() - 1;
    let array = IntersectionArray {
        b: (0..d).map(|i| tensor.p(1, i as Color + 1, i as Color)).collect(),
        c: (1..=d).map(|i| tensor.p(1, i as Color - 1, i as Color)).collect(),
    };
    Ok(DrgScheme { config, array })
}

/// Tensor of the distance scheme with the given array, computed from the
/// three-term recurrence of the distance matrices without building a graph.
pub fn drg_tensor(array: &IntersectionArray) -> Result<IntersectionTensor, FamilyError> {
    let d = array.diameter();
    if d == 0 || array.c.len() != d || array.c[0] != 1 {
        return Err(FamilyError::InfeasibleArray("need equal lengths and c_1 = 1".into()));
    }
    let r = d + 1;
    let k = array.b[0] as i128;
    let b = |i: usize| if i < d { array.b[i] as i128 } else { 0 };
    let c = |i: usize| if i == 0 { 0 } else { array.c[i - 1] as i128 };
    let a = |i: usize| k - b(i) - c(i);
    if (0..=d).any(|i| a(i) < 0) {
        return Err(FamilyError::InfeasibleArray("negative a_i".into()));
    }
    type M = Vec<Vec<i128>>;
    let mul = |x: &M, y: &M| -> M {
        (0..r).map(|i| (0..r).map(|j| (0..r).map(|l| x[i][l] * y[l][j]).sum()).collect()).collect()
    };
    let identity: M = (0..r).map(|i| (0..r).map(|j| (i == j) as i128).collect()).collect();
    let mut b1: M = vec![vec![0; r]; r];
    for t in 0..r {
        if t > 0 {
            b1[t][t - 1] = c(t);
        }
        b1[t][t] = a(t);
        if t + 1 < r {
            b1[t][t + 1] = b(t);
        }
    }
    let mut bs: Vec<M> = vec![identity, b1.clone()];
    for j in 1..d {
        let prod = mul(&b1, &bs[j]);
        let mut next = vec![vec![0; r]; r];
        for t in 0..r {
            for l in 0..r {
                let num = prod[t][l] - a(j) * bs[j][t][l] - b(j - 1) * bs[j - 1][t][l];
                if num % c(j + 1) != 0 || num < 0 {
                    return Err(FamilyError::InfeasibleArray(format!("B_{} is not a nonnegative integer matrix", j + 1)));
                }
                next[t][l] = num / c(j + 1);
            }
        }
        bs.push(next);
    }
    let mut p = vec![0u64; r * r * r];
    for (i, bi) in bs.iter().enumerate() {
        for t in 0..r {
            for j in 0..r {
                p[(i * r + j) * r + t] = bi[t][j] as u64;
            }
        }
    }
    let degrees: Vec<u64> = (0..r).map(|i| bs[i][0][i] as u64).collect();
    let n = degrees.iter().sum::<u64>() as usize;
    let diagonal = (0..r).map(|i| i == 0).collect();
    let pairing = (0..r as Color).collect();
    Ok(IntersectionTensor::from_parts(n, p, degrees, pairing, diagonal)?)
}

fn binom_big(m: i64, k: i64) -> BigUint {
    if k < 0 || m < 0 || k > m {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from((m - i) as u64);
        acc /= BigUint::from((i + 1) as u64);
    }
    acc
}

/// Support size of a transposition (`two_cycle`) or a 3-cycle acting on one
/// coordinate of the product action of `S_m` on `k`-subsets, `d` factors.
pub fn cameron_min_degree(m: u64, k: u64, d: u32, two_cycle: bool) -> Result<BigUint, FamilyError> {
    if k < 1 || 2 * k > m || d < 1 {
        return Err(bad(format!("need 1 <= k <= m/2 and d >= 1, got m={m} k={k} d={d}")));
    }
    let (m, k) = (m as i64, k as i64);
    let s = if two_cycle { 2 } else { 3 };
    let total = binom_big(m, k);
    let fixed = binom_big(m - s, k) + binom_big(m - s, k - s);
    Ok((&total - fixed) * num_traits::pow(total, d as usize - 1))
}

/// `2 m^(d-1)`: support of a transposition in one coordinate of `H(d, m)`.
pub fn hamming_motion_upper(d: u32, m: u64) -> Result<BigUint, FamilyError> {
    if d < 1 || m < 2 {
        return Err(bad("need d >= 1 and m >= 2"));
    }
    Ok(BigUint::from(2u32) * num_traits::pow(BigUint::from(m), d as usize - 1))
}

/// The Hamming scheme `H(d, m)` with `d = -floor(m ln delta)` has all
/// degrees at most `delta n` yet motion only `2n/m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedDegreeExample {
    pub d: u32,
    pub m: u64,
    pub n: BigUint,
    pub max_degree: BigUint,
    pub motion: BigUint,
}

pub fn hamming_bounded_degree_example(m: u64, delta: f64) -> Result<BoundedDegreeExample, FamilyError> {
    if !(delta > (-1f64).exp() && delta < 1.0) || m < 2 {
        return Err(bad("need 1/e < delta < 1 and m >= 2"));
    }
    let d = (-(delta.ln() * m as f64).floor()) as u32;
    if d < 1 {
        return Err(bad("m too small for this delta"));
    }
    let n = num_traits::pow(BigUint::from(m), d as usize);
    let max_degree = num_traits::pow(BigUint::from(m - 1), d as usize);
    let motion = hamming_motion_upper(d, m)?;
    Ok(BoundedDegreeExample { d, m, n, max_degree, motion })
}
