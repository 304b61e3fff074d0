//! Distinguishing numbers.
//!
//! `D(u, v)` counts the points `x` with `c(x, u) != c(x, v)`. Any
//! automorphism moving `u` to `v` moves all of them, so the minimum over
//! pairs is a lower bound on the motion. In a homogeneous coherent
//! configuration `D(u, v)` depends only on the color of `(u, v)`; the
//! per-color values together with `dist_i(j)` give the degree-based bounds.

use std::collections::BTreeMap;

use cc_core::{intersection_tensor, rational::int, structural_flags, Color, Configuration, CoreError, IntersectionTensor, Rational};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Above this size the per-pair audit of `D(i)` is skipped.
pub const AUDIT_CAP: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistinguishError {
    #[error("u and v are the same vertex")]
    SameVertex,
    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("configuration is not primitive")]
    NotPrimitive,
    #[error("delta must lie strictly between 0 and 1")]
    BadDelta,
    #[error("color {color} has degree {k} > delta * n")]
    DegreeExceedsDelta { color: Color, k: u64 },
    #[error("alpha must lie in (0, 1]")]
    BadAlpha,
    #[error("n must be at least 2")]
    TooSmall,
    #[error("D is not constant on color {color}: {first} at one pair, {other} at ({u}, {v})")]
    AuditFailed { color: Color, first: u64, other: u64, u: usize, v: usize },
    #[error(transparent)]
    Core(#[from] CoreError),
}

pub fn pair_distinguishing(cfg: &Configuration, u: usize, v: usize) -> Result<u64, DistinguishError> {
    let n = cfg.n();
    for vertex in [u, v] {
        if vertex >= n {
            return Err(DistinguishError::OutOfRange { vertex, n });
        }
    }
    if u == v {
        return Err(DistinguishError::SameVertex);
    }
    Ok((0..n).filter(|&x| cfg.color(x, u) != cfg.color(x, v)).count() as u64)
}

/// `D(i) = n - sum_a p(a*, a, i)`, read off the tensor.
pub fn d_from_tensor(tensor: &IntersectionTensor, i: Color) -> u64 {
    let same: u64 = (0..tensor.rank() as Color).map(|a| tensor.p(tensor.pairing(a), a, i)).sum();
    tensor.n() as u64 - same
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinguishReport {
    /// Smallest `D(i)`; absent for a single point.
    pub dmin: Option<u64>,
    pub d_by_color: BTreeMap<Color, u64>,
    /// `dist_table[i][j] = dist_i(j)`, `None` when unreachable.
    pub dist_table: BTreeMap<Color, BTreeMap<Color, Option<u32>>>,
}

pub fn distinguishing_report(cfg: &Configuration) -> Result<DistinguishReport, DistinguishError> {
    if !cfg.is_homogeneous() {
        return Err(CoreError::NotHomogeneous.into());
    }
    let tensor = intersection_tensor(cfg)?;
    let n = cfg.n();
    let mut d_by_color = BTreeMap::new();
    let mut first_pair: Vec<Option<(usize, usize)>> = vec![None; cfg.rank()];
    for u in 0..n {
        for v in 0..n {
            let c = cfg.color(u, v) as usize;
            if u != v && first_pair[c].is_none() {
                first_pair[c] = Some((u, v));
            }
        }
    }
    for i in tensor.edge_colors() {
        let (u, v) = first_pair[i as usize].expect("edge color occurs");
        d_by_color.insert(i, pair_distinguishing(cfg, u, v)?);
    }
    if n <= AUDIT_CAP {
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    continue;
                }
                let c = cfg.color(u, v);
                let d = pair_distinguishing(cfg, u, v)?;
                if d != d_by_color[&c] {
                    return Err(DistinguishError::AuditFailed { color: c, first: d_by_color[&c], other: d, u, v });
                }
            }
        }
    }
    let edges = tensor.edge_colors();
    let dist_table = edges
        .iter()
        .map(|&i| {
            let d = tensor.distances(i);
            (i, edges.iter().map(|&j| (j, d[j as usize])).collect())
        })
        .collect();
    Ok(DistinguishReport { dmin: d_by_color.values().copied().min(), d_by_color, dist_table })
}

/// Motion is at least `min(delta, 1 - delta) / (6 (r - 1)) * n` when every
/// degree is at most `delta * n` and the configuration is primitive.
pub fn bounded_degree_bound(tensor: &IntersectionTensor, delta: &Rational) -> Result<Rational, DistinguishError> {
    if !delta.is_positive() || *delta >= Rational::one() {
        return Err(DistinguishError::BadDelta);
    }
    if !structural_flags(tensor).primitive {
        return Err(DistinguishError::NotPrimitive);
    }
    let n = int(tensor.n() as u64);
    for i in tensor.edge_colors() {
        if int(tensor.k(i)) > delta * &n {
            return Err(DistinguishError::DegreeExceedsDelta { color: i, k: tensor.k(i) });
        }
    }
    let r = tensor.rank() as u64;
    if r < 2 {
        return Ok(Rational::zero());
    }
    let other = Rational::one() - delta;
    let m = if *delta < other { delta.clone() } else { other };
    Ok(m / int(6 * (r - 1)) * n)
}

/// Smallest `delta` accepted by [`bounded_degree_bound`]: largest degree over `n`.
pub fn tightest_delta(tensor: &IntersectionTensor) -> Rational {
    let kmax = tensor.edge_colors().into_iter().map(|i| tensor.k(i)).max().unwrap_or(0);
    Rational::new(kmax.into(), (tensor.n() as u64).into())
}

/// `(3 / alpha) ln n`: the thickness bound for groups of motion at least
/// `alpha n`.
pub fn wielandt_thickness_bound(alpha: f64, n: f64) -> Result<f64, DistinguishError> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(DistinguishError::BadAlpha);
    }
    if !(n >= 2.0) {
        return Err(DistinguishError::TooSmall);
    }
    Ok(3.0 / alpha * n.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use cc_core::{rational::rat, Graph};

    fn petersen() -> Configuration {
        Configuration::from_graph(&Graph::petersen()).unwrap()
    }

    #[test]
    fn petersen_report() {
        let r = distinguishing_report(&petersen()).unwrap();
        assert_eq!(r.dmin, Some(6));
        assert_eq!(r.d_by_color[&1], 6);
        assert_eq!(r.d_by_color[&2], 6);
        assert_eq!(r.dist_table[&1][&2], Some(2));
        assert_eq!(r.dist_table[&2][&1], Some(2));
    }

    #[test]
    fn tensor_formula_agrees() {
        let cfg = petersen();
        let t = intersection_tensor(&cfg).unwrap();
        let r = distinguishing_report(&cfg).unwrap();
        for (&i, &d) in &r.d_by_color {
            assert_eq!(d_from_tensor(&t, i), d);
        }
    }

    #[test]
    fn pair_errors() {
        let cfg = petersen();
        assert_eq!(pair_distinguishing(&cfg, 3, 3), Err(DistinguishError::SameVertex));
        assert!(matches!(pair_distinguishing(&cfg, 0, 10), Err(DistinguishError::OutOfRange { .. })));
        assert_eq!(pair_distinguishing(&cfg, 0, 1).unwrap(), 6);
    }

    #[test]
    fn bounded_degree_values() {
        let t = intersection_tensor(&petersen()).unwrap();
        assert_eq!(bounded_degree_bound(&t, &rat(3, 5)).unwrap(), rat(2, 5) / int(12u64) * int(10u64));
        assert!(matches!(bounded_degree_bound(&t, &rat(1, 2)), Err(DistinguishError::DegreeExceedsDelta { color: 2, .. })));
        assert_eq!(bounded_degree_bound(&t, &rat(0, 1)), Err(DistinguishError::BadDelta));
        assert_eq!(tightest_delta(&t), rat(3, 5));
        let hex = Configuration::from_fn(6, |u, v| {
            let d = (u + 6 - v) % 6;
            d.min(6 - d) as Color
        })
        .unwrap();
        let th = intersection_tensor(&hex).unwrap();
        assert_eq!(bounded_degree_bound(&th, &rat(1, 2)), Err(DistinguishError::NotPrimitive));
    }

    #[test]
    fn thickness() {
        let b = wielandt_thickness_bound(0.5, 100.0).unwrap();
        assert!((b - 6.0 * 100f64.ln()).abs() < 1e-12);
        assert_eq!(wielandt_thickness_bound(0.0, 100.0), Err(DistinguishError::BadAlpha));
        assert_eq!(wielandt_thickness_bound(1.5, 100.0), Err(DistinguishError::BadAlpha));
        assert_eq!(wielandt_thickness_bound(0.5, 1.0), Err(DistinguishError::TooSmall));
    }
}
