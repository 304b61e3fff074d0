//! Spectra of constituents and unions of constituents.
//!
//! The eigenvalues of `A_I = sum_{i in I} A_i` are the eigenvalues of the
//! `r x r` matrix `B_I` (left multiplication in the adjacency algebra), so
//! everything here runs on the intersection tensor. Characteristic
//! polynomials are exact; integer eigenvalues are found exactly, and
//! comparisons such as "smallest eigenvalue is -2" or "ξ <= R" are decided
//! by Sturm sequences rather than by floating point.

pub mod poly;

use cc_core::rational::{int, to_f64, upper_dyadic};
use cc_core::{Color, CoreError, IntersectionTensor, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use poly::{charpoly, count_roots_above, count_roots_below, is_root, real_roots, IntPoly};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("expected a rank-4 scheme, got rank {rank}")]
    WrongRank { rank: usize },
    #[error("configuration is not homogeneous")]
    NotHomogeneous,
    #[error("not an association scheme (some color is oriented)")]
    NotAssociationScheme,
    #[error("color {color} is oriented; use the symmetrized spectrum")]
    OrientedColor { color: Color },
    #[error("color set is not closed under pairing: {color} present, {paired} missing")]
    NotClosedUnderPairing { color: Color, paired: Color },
    #[error("color {color} is a diagonal color")]
    DiagonalColor { color: Color },
    #[error("color {color} out of range for rank {rank}")]
    ColorOutOfRange { color: Color, rank: usize },
    #[error("empty color set")]
    EmptyColorSet,
    #[error("colors must be the three edge colors in some order")]
    BadColorOrder,
    #[error("epsilon must be positive")]
    BadEpsilon,
    #[error("hypothesis violated: {which}")]
    HypothesisViolated { which: String },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("degree mismatch: {f} vs {g}")]
    DegreeMismatch { f: usize, g: usize },
    #[error("polynomial has degree 0")]
    ConstantPolynomial,
    #[error("no root matching within epsilon = {eps}: best found {found}")]
    MatchingFailed { eps: f64, found: f64 },
    #[error("soundness check failed: {0}")]
    Soundness(String),
}

impl From<CoreError> for SpectralError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::ColorOutOfRange { color, rank } => SpectralError::ColorOutOfRange { color, rank },
            _ => SpectralError::NotHomogeneous,
        }
    }
}

/// One eigenvalue: an exact integer, or a numeric approximation of an
/// irrational root.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Eigenvalue {
    Integer(i64),
    Approx(f64),
}

impl Eigenvalue {
    pub fn value(&self) -> f64 {
        match *self {
            Eigenvalue::Integer(v) => v as f64,
            Eigenvalue::Approx(v) => v,
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        match *self {
            Eigenvalue::Integer(v) => Some(v),
            Eigenvalue::Approx(_) => None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Spectrum {
    /// The colors whose adjacency matrices are summed.
    pub color: Vec<Color>,
    /// Trivial eigenvalue: the degree of the (union) graph.
    pub k: u64,
    /// Distinct nontrivial eigenvalues, ascending.
    pub nontrivial: Vec<Eigenvalue>,
    /// Zero-weight spectral radius: largest `|θ|` over `nontrivial`.
    pub xi: f64,
    /// Every nontrivial eigenvalue is an exact integer.
    pub exact: bool,
    /// Built from `A_i + A_{i*}` for an oriented color.
    #[serde(default)]
    pub symmetrized: bool,
    #[serde(skip)]
    factor: Option<IntPoly>,
}

impl PartialEq for Spectrum {
    fn eq(&self, other: &Self) -> bool {
        self.color == other.color
            && self.k == other.k
            && self.nontrivial == other.nontrivial
            && self.xi == other.xi
            && self.exact == other.exact
            && self.symmetrized == other.symmetrized
    }
}

impl Spectrum {
    /// Characteristic polynomial of `B_I` with one factor `x - k` removed.
    pub fn nontrivial_factor(&self) -> Option<&IntPoly> {
        self.factor.as_ref()
    }

    pub fn min_eigenvalue(&self) -> Option<f64> {
        self.nontrivial.first().map(Eigenvalue::value)
    }

    /// Is the smallest eigenvalue exactly `v`? Decided on the polynomial
    /// when available.
    pub fn smallest_is(&self, v: i64) -> bool {
        match &self.factor {
            Some(f) => {
                let x = int(v);
                f.degree() > 0 && is_root(f, &x) && count_roots_below(f, &x) == 0
            }
            None => self.nontrivial.first().and_then(Eigenvalue::as_integer) == Some(v),
        }
    }

    /// Are all nontrivial eigenvalues at least `v`?
    pub fn min_at_least(&self, v: &Rational) -> bool {
        match &self.factor {
            Some(f) => f.degree() == 0 || count_roots_below(f, v) == 0,
            None => self.nontrivial.iter().all(|e| e.value() >= to_f64(v)),
        }
    }

    /// Exact test of `ξ <= r`.
    pub fn xi_at_most(&self, r: &Rational) -> bool {
        if r.is_negative() {
            return false;
        }
        match &self.factor {
            Some(f) => f.degree() == 0 || (count_roots_above(f, r) == 0 && count_roots_below(f, &-r) == 0),
            None => self.xi <= to_f64(r),
        }
    }

    /// A rational `R >= ξ`, verified exactly, within about `2^-40` of ξ.
    pub fn xi_upper(&self) -> Rational {
        if let Some(m) = self.nontrivial.iter().map(|e| e.as_integer().map(i64::abs)).collect::<Option<Vec<_>>>() {
            return int(m.into_iter().max().unwrap_or(0));
        }
        let mut r = upper_dyadic(self.xi);
        let mut step = Rational::new(BigInt::one(), BigInt::from(1u64 << 40));
        while !self.xi_at_most(&r) {
            r += &step;
            step *= int(2);
        }
        r
    }
}

fn check_color(tensor: &IntersectionTensor, c: Color) -> Result<(), SpectralError> {
    if c as usize >= tensor.rank() {
        return Err(SpectralError::ColorOutOfRange { color: c, rank: tensor.rank() });
    }
    if tensor.is_diagonal(c) {
        return Err(SpectralError::DiagonalColor { color: c });
    }
    Ok(())
}

fn spectrum_of(tensor: &IntersectionTensor, set: Vec<Color>, symmetrized: bool) -> Spectrum {
    let b = tensor.b_matrix_union(&set);
    let k = tensor.union_degree(&set);
    let factor = charpoly(&b).deflate(&BigInt::from(k));
    let (ints, others) = real_roots(&factor, k as i64);
    let mut nontrivial: Vec<Eigenvalue> = ints.into_iter().map(Eigenvalue::Integer).collect();
    let exact = others.is_empty();
    nontrivial.extend(others.into_iter().map(Eigenvalue::Approx));
    nontrivial.sort_by(|a, b| a.value().total_cmp(&b.value()));
    let xi = nontrivial.iter().map(|e| e.value().abs()).fold(0.0, f64::max);
    Spectrum { color: set, k, nontrivial, xi, exact, symmetrized, factor: Some(factor) }
}

/// Spectrum of the constituent `X_i` of a symmetric color.
pub fn constituent_spectrum(tensor: &IntersectionTensor, i: Color) -> Result<Spectrum, SpectralError> {
    if !tensor.is_homogeneous() {
        return Err(SpectralError::NotHomogeneous);
    }
    check_color(tensor, i)?;
    if !tensor.is_symmetric_color(i) {
        return Err(SpectralError::OrientedColor { color: i });
    }
    Ok(spectrum_of(tensor, vec![i], false))
}

/// Spectrum of `A_i + A_{i*}`, the undirected graph underlying an oriented
/// color. For a symmetric color this is the constituent itself.
pub fn symmetrized_spectrum(tensor: &IntersectionTensor, i: Color) -> Result<Spectrum, SpectralError> {
    if !tensor.is_homogeneous() {
        return Err(SpectralError::NotHomogeneous);
    }
    check_color(tensor, i)?;
    let star = tensor.pairing(i);
    if star == i {
        return Ok(spectrum_of(tensor, vec![i], false));
    }
    Ok(spectrum_of(tensor, vec![i.min(star), i.max(star)], true))
}

/// Spectrum of `sum_{i in I} A_i`; `I` must be closed under pairing.
pub fn union_spectrum(tensor: &IntersectionTensor, set: &[Color]) -> Result<Spectrum, SpectralError> {
    if !tensor.is_homogeneous() {
        return Err(SpectralError::NotHomogeneous);
    }
    if set.is_empty() {
        return Err(SpectralError::EmptyColorSet);
    }
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    for &c in &s {
        check_color(tensor, c)?;
        let star = tensor.pairing(c);
        if s.binary_search(&star).is_err() {
            return Err(SpectralError::NotClosedUnderPairing { color: c, paired: star });
        }
    }
    Ok(spectrum_of(tensor, s, false))
}

/// `motion >= n (k - ξ - q) / k`, clamped at 0. Pass an upper bound for ξ.
pub fn spectral_motion_bound(n: u64, k: u64, xi: &Rational, q: u64) -> Rational {
    if k == 0 {
        return Rational::zero();
    }
    let v = int(n) * (int(k) - xi - int(q)) / int(k);
    if v.is_negative() {
        Rational::zero()
    } else {
        v
    }
}

/// Coefficients of the cubic `η^3 + a1 η^2 + a2 η + a3` satisfied by the
/// nontrivial eigenvalues of `A_1` in a rank-4 association scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicCoefficients {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
}

impl CubicCoefficients {
    pub fn poly(&self) -> IntPoly {
        IntPoly::from_i64(&[self.a3, self.a2, self.a1, 1])
    }

    /// Real roots, integers exact. Assumes three real roots.
    pub fn roots(&self) -> (Vec<i64>, Vec<f64>) {
        let bound = 1 + self.a1.abs().max(self.a2.abs()).max(self.a3.abs());
        real_roots(&self.poly(), bound)
    }
}

fn rank4_colors(tensor: &IntersectionTensor, order: [Color; 3]) -> Result<(), SpectralError> {
    if tensor.rank() != 4 {
        return Err(SpectralError::WrongRank { rank: tensor.rank() });
    }
    if !tensor.is_homogeneous() {
        return Err(SpectralError::NotHomogeneous);
    }
    if !tensor.is_association_scheme() {
        return Err(SpectralError::NotAssociationScheme);
    }
    let mut sorted = order;
    sorted.sort_unstable();
    if sorted.to_vec() != tensor.edge_colors() {
        return Err(SpectralError::BadColorOrder);
    }
    Ok(())
}

/// The cubic for colors `1, 2, 3` in their natural order.
pub fn rank4_cubic(tensor: &IntersectionTensor) -> Result<CubicCoefficients, SpectralError> {
    rank4_cubic_ordered(tensor, [1, 2, 3])
}

/// The cubic with `order` playing the roles of colors `1, 2, 3`.
pub fn rank4_cubic_ordered(tensor: &IntersectionTensor, order: [Color; 3]) -> Result<CubicCoefficients, SpectralError> {
    rank4_colors(tensor, order)?;
    let [c1, c2, c3] = order;
    let c = [0, c1, c2, c3];
    let p = |i: usize, j: usize, t: usize| tensor.p(c[i], c[j], c[t]) as i128;
    let k1 = tensor.k(c1) as i128;
    let a1 = -(p(1, 1, 1) + p(1, 2, 2) - p(1, 1, 3) - p(1, 2, 3));
    let a2 = (p(1, 2, 2) - p(1, 2, 3)) * (p(1, 1, 1) - p(1, 1, 3))
        - (p(1, 1, 2) - p(1, 1, 3)) * (p(1, 2, 1) - p(1, 2, 3))
        - (k1 - p(1, 1, 3));
    let a3 = (p(1, 2, 2) - p(1, 2, 3)) * (k1 - p(1, 1, 3)) + (p(1, 1, 2) - p(1, 1, 3)) * p(1, 2, 3);
    let fit = |v: i128| i64::try_from(v).map_err(|_| SpectralError::Soundness("cubic coefficient overflow".into()));
    Ok(CubicCoefficients { a1: fit(a1)?, a2: fit(a2)?, a3: fit(a3)? })
}

/// A closed-form upper bound on ξ together with the exact ξ it was checked
/// against.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct XiBound {
    pub bound: f64,
    pub exact_xi: f64,
}

fn hypothesis(holds: bool, which: impl Into<String>) -> Result<(), SpectralError> {
    if holds {
        Ok(())
    } else {
        Err(SpectralError::HypothesisViolated { which: which.into() })
    }
}

fn check_bound(spectrum: &Spectrum, bound: f64) -> Result<XiBound, SpectralError> {
    if !bound.is_finite() || !spectrum.xi_at_most(&upper_dyadic(bound)) {
        return Err(SpectralError::Soundness(format!("exact xi {} exceeds closed-form bound {bound}", spectrum.xi)));
    }
    Ok(XiBound { bound, exact_xi: spectrum.xi })
}

/// Upper bound on `ξ(X_1)` for a rank-4 scheme in which color 3 is rare
/// among the neighbors of a color-1 pair.
pub fn xi_bound_x1(tensor: &IntersectionTensor, eps: &Rational) -> Result<XiBound, SpectralError> {
    xi_bound_x1_ordered(tensor, eps, [1, 2, 3])
}

pub fn xi_bound_x1_ordered(tensor: &IntersectionTensor, eps: &Rational, order: [Color; 3]) -> Result<XiBound, SpectralError> {
    rank4_colors(tensor, order)?;
    if !eps.is_positive() {
        return Err(SpectralError::BadEpsilon);
    }
    let [c1, c2, c3] = order;
    let p = |i, j, t| tensor.p(i, j, t);
    let k1 = int(tensor.k(c1));
    let ek1 = eps * &k1;
    hypothesis(ek1 >= Rational::one(), "1/eps <= k1")?;
    hypothesis(int(p(c1, c1, c3)) <= ek1, "p(1,1;3) <= eps k1")?;
    hypothesis(int(p(c1, c2, c3)) <= ek1, "p(1,2;3) <= eps k1")?;
    let f = |v: u64| v as f64;
    let (p111, p122, p112, p121) = (f(p(c1, c1, c1)), f(p(c1, c2, c2)), f(p(c1, c1, c2)), f(p(c1, c2, c1)));
    let disc = ((p111 - p122).powi(2) + 4.0 * p112 * p121).sqrt();
    let bound = (p111 + p122 + disc) / 2.0 + 25.0 * to_f64(eps).cbrt() * to_f64(&k1);
    check_bound(&constituent_spectrum(tensor, c1)?, bound)
}

/// Upper bound on `ξ(X_{1,2})` for a rank-4 scheme in which color 3 is rare
/// among common neighbors.
pub fn xi_bound_x12(tensor: &IntersectionTensor, eps: &Rational) -> Result<XiBound, SpectralError> {
    xi_bound_x12_ordered(tensor, eps, [1, 2, 3])
}

pub fn xi_bound_x12_ordered(tensor: &IntersectionTensor, eps: &Rational, order: [Color; 3]) -> Result<XiBound, SpectralError> {
    rank4_colors(tensor, order)?;
    if !eps.is_positive() {
        return Err(SpectralError::BadEpsilon);
    }
    let [c1, c2, c3] = order;
    let p = |i, j, t| tensor.p(i, j, t);
    let (k1, k2) = (tensor.k(c1), tensor.k(c2));
    let ek1 = eps * int(k1);
    let ekmin = eps * int(k1.min(k2));
    hypothesis(ek1 >= Rational::one(), "1/eps <= k1")?;
    hypothesis(int(p(c1, c1, c2)) <= ek1, "p(1,1;2) <= eps k1")?;
    hypothesis(int(p(c1, c2, c3)) <= ekmin, "p(1,2;3) <= eps min(k1,k2)")?;
    hypothesis(int(p(c2, c1, c3)) <= ekmin, "p(2,1;3) <= eps min(k1,k2)")?;
    let f = |v: u64| v as f64;
    let (p111, p122, p222, p221) = (f(p(c1, c1, c1)), f(p(c1, c2, c2)), f(p(c2, c2, c2)), f(p(c2, c2, c1)));
    let disc = ((p222 + p122 - p111).powi(2) + 4.0 * p122 * p221).sqrt();
    let bound = (p111 + p122 + p222 + disc) / 2.0 + 25.0 * to_f64(eps).cbrt() * (f(k1) + f(k2));
    check_bound(&union_spectrum(tensor, &[c1, c2])?, bound)
}

/// Root matching between two monic polynomials of equal degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootPerturbation {
    pub m: f64,
    pub eps: f64,
    /// Roots as `[re, im]`.
    pub f_roots: Vec<[f64; 2]>,
    pub g_roots: Vec<[f64; 2]>,
    /// `f_roots[i]` is matched with `g_roots[matching[i]]`.
    pub matching: Vec<usize>,
    pub max_distance: f64,
}

/// Largest matching distance under which the brute-force search is tried.
const BRUTE_FORCE_DEGREE: usize = 8;

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn bottleneck(f: &[[f64; 2]], g: &[[f64; 2]], perm: &[usize]) -> f64 {
    perm.iter().enumerate().map(|(i, &j)| dist(f[i], g[j])).fold(0.0, f64::max)
}

fn best_permutation(f: &[[f64; 2]], g: &[[f64; 2]]) -> (Vec<usize>, f64) {
    fn go(i: usize, f: &[[f64; 2]], g: &[[f64; 2]], used: &mut [bool], cur: &mut Vec<usize>, worst: f64, best: &mut (Vec<usize>, f64)) {
        if worst >= best.1 {
            return;
        }
        if i == f.len() {
            *best = (cur.clone(), worst);
            return;
        }
        for j in 0..g.len() {
            if !used[j] {
                used[j] = true;
                cur.push(j);
                go(i + 1, f, g, used, cur, worst.max(dist(f[i], g[j])), best);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut best = (Vec::new(), f64::INFINITY);
    go(0, f, g, &mut vec![false; g.len()], &mut Vec::new(), 0.0, &mut best);
    best
}

fn sorted_roots(coeffs_desc: &[f64]) -> Vec<[f64; 2]> {
    let asc: Vec<f64> = coeffs_desc.iter().rev().copied().collect();
    let mut r: Vec<[f64; 2]> = poly::complex_roots(&asc).into_iter().map(|z| [z.re, z.im]).collect();
    r.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    r
}

/// For monic `f`, `g` of degree `n` (coefficients highest degree first),
/// compute `M`, `ε = 2n (sum_{i>=1} |b_i - a_i| (2M)^(n-i))^(1/n)` and a
/// matching of roots with every distance at most `ε`.
///
/// `M` is the largest `|a_i|^(1/i)`, `|b_i|^(1/i)` over `1 <= i <= n`.
/// Roots are paired in order of real part; if that pairing exceeds `ε`, a
/// bottleneck-optimal pairing is searched for small degrees.
pub fn root_perturbation(f: &[f64], g: &[f64]) -> Result<RootPerturbation, SpectralError> {
    if f.len() != g.len() {
        return Err(SpectralError::DegreeMismatch { f: f.len().saturating_sub(1), g: g.len().saturating_sub(1) });
    }
    if f.len() < 2 {
        return Err(SpectralError::ConstantPolynomial);
    }
    if f[0] != 1.0 || g[0] != 1.0 {
        return Err(SpectralError::NotMonic);
    }
    let n = f.len() - 1;
    let m = (1..=n)
        .flat_map(|i| [f[i].abs().powf(1.0 / i as f64), g[i].abs().powf(1.0 / i as f64)])
        .fold(0.0, f64::max);
    let sum: f64 = (1..=n).map(|i| (g[i] - f[i]).abs() * (2.0 * m).powi((n - i) as i32)).sum();
    let eps = 2.0 * n as f64 * sum.powf(1.0 / n as f64);
    let f_roots = sorted_roots(f);
    let g_roots = sorted_roots(g);
    let mut matching: Vec<usize> = (0..n).collect();
    let mut max_distance = bottleneck(&f_roots, &g_roots, &matching);
    let slack = 1e-9 * (1.0 + m);
    if max_distance > eps + slack && n <= BRUTE_FORCE_DEGREE {
        (matching, max_distance) = best_permutation(&f_roots, &g_roots);
    }
    if max_distance > eps + slack {
        return Err(SpectralError::MatchingFailed { eps, found: max_distance });
    }
    Ok(RootPerturbation { m, eps, f_roots, g_roots, matching, max_distance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use cc_core::rational::rat;
    use cc_core::{intersection_tensor, Configuration, Graph};

    fn tensor_of(cfg: &Configuration) -> IntersectionTensor {
        intersection_tensor(cfg).unwrap()
    }

    fn hamming(d: usize, m: usize) -> Configuration {
        let n = m.pow(d as u32);
        Configuration::from_fn(n, |u, v| {
            let (mut a, mut b, mut c) = (u, v, 0);
            for _ in 0..d {
                c += (a % m != b % m) as u32;
                a /= m;
                b /= m;
            }
            c
        })
        .unwrap()
    }

    fn ints(s: &Spectrum) -> Vec<i64> {
        s.nontrivial.iter().map(|e| e.as_integer().unwrap()).collect()
    }

    #[test]
    fn petersen_spectrum() {
        let t = tensor_of(&Configuration::from_graph(&Graph::petersen()).unwrap());
        let s = constituent_spectrum(&t, 1).unwrap();
        assert_eq!(ints(&s), vec![-2, 1]);
        assert_eq!(s.xi, 2.0);
        assert!(s.exact);
        assert!(s.smallest_is(-2));
        assert!(!s.smallest_is(-1));
        assert_eq!(s.xi_upper(), int(2));
    }

    #[test]
    fn cube_cubic() {
        let t = tensor_of(&hamming(3, 2));
        let c = rank4_cubic(&t).unwrap();
        assert_eq!((c.a1, c.a2, c.a3), (3, -1, -3));
        assert_eq!(c.roots(), (vec![-3, -1, 1], vec![]));
        let s = constituent_spectrum(&t, 1).unwrap();
        assert_eq!(ints(&s), vec![-3, -1, 1]);
    }

    #[test]
    fn complete_union() {
        let t = tensor_of(&hamming(3, 2));
        let s = union_spectrum(&t, &[1, 2, 3]).unwrap();
        assert_eq!(s.k, 7);
        assert_eq!(ints(&s), vec![-1]);
        assert_eq!(s.xi, 1.0);
        assert_eq!(union_spectrum(&t, &[1]).unwrap(), constituent_spectrum(&t, 1).unwrap());
        assert_eq!(union_spectrum(&t, &[]), Err(SpectralError::EmptyColorSet));
        assert_eq!(union_spectrum(&t, &[0]), Err(SpectralError::DiagonalColor { color: 0 }));
    }

    #[test]
    fn irrational_spectrum() {
        // C_7: eigenvalues 2 cos(2 pi j / 7)
        let cfg = Configuration::from_fn(7, |u, v| {
            let d = (u + 7 - v) % 7;
            d.min(7 - d) as Color
        })
        .unwrap();
        let t = tensor_of(&cfg);
        let s = constituent_spectrum(&t, 1).unwrap();
        assert!(!s.exact);
        let mut expected: Vec<f64> = (1..=3).map(|j| 2.0 * (2.0 * std::f64::consts::PI * j as f64 / 7.0).cos()).collect();
        expected.sort_by(f64::total_cmp);
        for (e, x) in s.nontrivial.iter().zip(&expected) {
            assert!((e.value() - x).abs() < 1e-12);
        }
        let xi = s.xi_upper();
        assert!(s.xi_at_most(&xi));
        assert!(to_f64(&xi) - s.xi < 1e-9);
        assert!(!s.xi_at_most(&rat(18, 10)));
        let (_, roots) = rank4_cubic(&t).unwrap().roots();
        for (r, x) in roots.iter().zip(&expected) {
            assert!((r - x).abs() < 1e-9);
        }
    }

    #[test]
    fn oriented_colors() {
        // directed 3-cycle: colors 0 diag, 1 forward, 2 backward
        let cfg = Configuration::from_fn(3, |u, v| ((v + 3 - u) % 3) as Color).unwrap();
        let t = tensor_of(&cfg);
        assert_eq!(constituent_spectrum(&t, 1), Err(SpectralError::OrientedColor { color: 1 }));
        assert!(matches!(union_spectrum(&t, &[1]), Err(SpectralError::NotClosedUnderPairing { .. })));
        let s = symmetrized_spectrum(&t, 2).unwrap();
        assert!(s.symmetrized);
        assert_eq!(s.k, 2);
        assert_eq!(ints(&s), vec![-1]);
    }

    #[test]
    fn motion_bound_values() {
        assert_eq!(spectral_motion_bound(21, 10, &int(3), 5), rat(21, 5));
        assert_eq!(spectral_motion_bound(9, 4, &int(2), 2), int(0));
        assert_eq!(spectral_motion_bound(8, 3, &int(3), 2), int(0));
        assert_eq!(spectral_motion_bound(8, 0, &int(0), 0), int(0));
    }

    #[test]
    fn xi_bounds() {
        let t = tensor_of(&hamming(3, 2));
        // p(1,2;3) = 3 > eps k1 for small eps
        assert!(matches!(xi_bound_x12(&t, &rat(1, 2)), Err(SpectralError::HypothesisViolated { .. })));
        assert!(matches!(xi_bound_x1(&t, &rat(1, 100)), Err(SpectralError::HypothesisViolated { .. })));
        assert_eq!(xi_bound_x1(&t, &rat(0, 1)), Err(SpectralError::BadEpsilon));
        // eps = 1 satisfies everything on the cube
        let b = xi_bound_x1(&t, &int(1)).unwrap();
        assert!(b.bound >= b.exact_xi);
        assert!((b.bound - (2.0 + 75.0)).abs() < 1e-9);
    }

    #[test]
    fn perturbation_examples() {
        let same = root_perturbation(&[1.0, 0.0, -1.0], &[1.0, 0.0, -1.0]).unwrap();
        assert_eq!(same.eps, 0.0);
        assert_eq!(same.matching, vec![0, 1]);
        let p = root_perturbation(&[1.0, 0.0, -1.0], &[1.0, 0.0, -1.21]).unwrap();
        assert!((p.m - 1.1).abs() < 1e-12);
        assert!((p.eps - 4.0 * 0.21f64.sqrt()).abs() < 1e-12);
        assert!((p.max_distance - 0.1).abs() < 1e-9);
        assert_eq!(root_perturbation(&[2.0, 0.0], &[1.0, 0.0]), Err(SpectralError::NotMonic));
        assert!(matches!(root_perturbation(&[1.0, 0.0], &[1.0, 0.0, 0.0]), Err(SpectralError::DegreeMismatch { .. })));
    }
}
