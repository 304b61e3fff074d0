//! Exact integer polynomials: characteristic polynomials, integer roots,
//! Sturm counts, and numeric roots of what is left.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use cc_core::Rational;

/// Integer polynomial, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly(pub Vec<BigInt>);

impl IntPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        let mut p = IntPoly(coeffs.iter().map(|&c| BigInt::from(c)).collect());
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.len() > 1 && self.0.last().map_or(false, Zero::is_zero) {
            self.0.pop();
        }
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Quotient by `x - r`; the remainder must be zero.
    pub fn deflate(&self, r: &BigInt) -> IntPoly {
        let d = self.degree();
        let mut q = vec![BigInt::zero(); d];
        let mut carry = BigInt::zero();
        for i in (0..=d).rev() {
            let v = &self.0[i] + &carry * r;
            if i == 0 {
                debug_assert!(v.is_zero(), "not a root");
            } else {
                q[i - 1] = v.clone();
            }
            carry = v;
        }
        let mut p = IntPoly(q);
        p.trim();
        p
    }

    fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().map(|c| Rational::from_integer(c.clone())).collect()
    }
}

/// Characteristic polynomial `det(xI - A)` by Faddeev-LeVerrier.
pub fn charpoly(a: &[Vec<i64>]) -> IntPoly {
    let n = a.len();
    let am: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigInt::zero();
                for l in 0..n {
                    if !am[i][l].is_zero() && !m[l][j].is_zero() {
                        s += &am[i][l] * &m[l][j];
                    }
                }
                if i == j {
                    s += &coeffs[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        m = next;
        let mut tr = BigInt::zero();
        for i in 0..n {
            for l in 0..n {
                if !am[i][l].is_zero() {
                    tr += &am[i][l] * &m[l][i];
                }
            }
        }
        let (q, r) = tr.div_rem(&BigInt::from(k as u64));
        assert!(r.is_zero(), "trace not divisible");
        coeffs[n - k] = -q;
    }
    let mut p = IntPoly(coeffs);
    p.trim();
    p
}

/// Integer roots with multiplicity, and the remaining factor.
///
/// Roots are searched in `[-bound, bound]`, which must contain every real
/// root; candidates must divide the constant term of the current factor.
pub fn split_integer_roots(p: &IntPoly, bound: i64) -> (Vec<i64>, IntPoly) {
    let mut rest = p.clone();
    let mut roots = Vec::new();
    while rest.degree() > 0 && rest.0[0].is_zero() {
        roots.push(0);
        rest = rest.deflate(&BigInt::zero());
    }
    for x in (-bound..=bound).filter(|&x| x != 0) {
        let bx = BigInt::from(x);
        while rest.degree() > 0 && rest.0[0].is_multiple_of(&bx) && rest.eval_int(&bx).is_zero() {
            roots.push(x);
            rest = rest.deflate(&bx);
        }
    }
    roots.sort_unstable();
    (roots, rest)
}

fn rtrim(p: &mut Vec<Rational>) {
    while p.len() > 1 && p.last().map_or(false, Zero::is_zero) {
        p.pop();
    }
}

fn reval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    rtrim(&mut r);
    while r.len() > db && !is_zero_poly(&r) {
        let dr = r.len() - 1;
        let f = &r[dr] / &b[db];
        for i in 0..=db {
            let v = &b[i] * &f;
            r[dr - db + i] -= v;
        }
        r.pop();
        if r.is_empty() {
            r.push(Rational::zero());
        }
        rtrim(&mut r);
    }
    r
}

fn is_zero_poly(p: &[Rational]) -> bool {
    p.iter().all(Zero::is_zero)
}

fn sturm_chain(p: &[Rational]) -> Vec<Vec<Rational>> {
    let mut chain = vec![p.to_vec()];
    let mut d: Vec<Rational> = p.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(BigInt::from(i))).collect();
    if d.is_empty() {
        d.push(Rational::zero());
    }
    rtrim(&mut d);
    if is_zero_poly(&d) {
        return chain;
    }
    chain.push(d);
    loop {
        let n = chain.len();
        let r = rem(&chain[n - 2], &chain[n - 1]);
        if is_zero_poly(&r) {
            return chain;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Remove every factor `x - a`.
fn strip_root(p: &IntPoly, a: &Rational) -> Vec<Rational> {
    let mut q = p.to_rational();
    rtrim(&mut q);
    while q.len() > 1 && reval(&q, a).is_zero() {
        // synthetic division by (x - a)
        let d = q.len() - 1;
        let mut out = vec![Rational::zero(); d];
        let mut carry = Rational::zero();
        for i in (0..=d).rev() {
            let v = &q[i] + &carry * a;
            if i > 0 {
                out[i - 1] = v.clone();
            }
            carry = v;
        }
        q = out;
    }
    q
}

/// Number of distinct real roots strictly above `a`.
pub fn count_roots_above(p: &IntPoly, a: &Rational) -> usize {
    let q = strip_root(p, a);
    if q.len() <= 1 {
        return 0;
    }
    let chain = sturm_chain(&q);
    let at_a = sign_changes(chain.iter().map(|s| sign(&reval(s, a))));
    let at_inf = sign_changes(chain.iter().map(|s| sign(s.last().unwrap())));
    at_a - at_inf
}

/// Number of distinct real roots strictly below `a`.
pub fn count_roots_below(p: &IntPoly, a: &Rational) -> usize {
    let q = strip_root(p, a);
    if q.len() <= 1 {
        return 0;
    }
    let chain = sturm_chain(&q);
    let at_a = sign_changes(chain.iter().map(|s| sign(&reval(s, a))));
    let at_neg_inf = sign_changes(chain.iter().map(|s| {
        let deg = s.len() - 1;
        let lead = sign(s.last().unwrap());
        if deg % 2 == 1 {
            -lead
        } else {
            lead
        }
    }));
    at_neg_inf - at_a
}

pub fn is_root(p: &IntPoly, a: &Rational) -> bool {
    p.eval_rational(a).is_zero()
}

/// Number of distinct real roots.
pub fn count_real_roots(p: &IntPoly) -> usize {
    if p.degree() == 0 {
        return 0;
    }
    let q = p.to_rational();
    let chain = sturm_chain(&q);
    let pos = sign_changes(chain.iter().map(|s| sign(s.last().unwrap())));
    let neg = sign_changes(chain.iter().map(|s| {
        let lead = sign(s.last().unwrap());
        if (s.len() - 1) % 2 == 1 {
            -lead
        } else {
            lead
        }
    }));
    neg - pos
}

/// Complex roots of a real polynomial (ascending coefficients) from the
/// eigenvalues of its companion matrix. Exact zero roots are split off
/// first; if the Schur iteration does not converge, Durand-Kerner is used.
pub fn complex_roots(coeffs: &[f64]) -> Vec<nalgebra::Complex<f64>> {
    let zeros = coeffs.iter().take_while(|&&c| c == 0.0).count().min(coeffs.len() - 1);
    let coeffs = &coeffs[zeros..];
    let mut roots = vec![nalgebra::Complex::new(0.0, 0.0); zeros];
    let d = coeffs.len() - 1;
    if d == 0 {
        return roots;
    }
    let lead = coeffs[d];
    let mut m = nalgebra::DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        m[(i, d - 1)] = -coeffs[i] / lead;
    }
    match m.try_schur(f64::EPSILON, 10_000) {
        Some(schur) => roots.extend(schur.complex_eigenvalues().iter().copied()),
        None => roots.extend(durand_kerner(coeffs)),
    }
    roots
}

fn durand_kerner(coeffs: &[f64]) -> Vec<nalgebra::Complex<f64>> {
    use nalgebra::Complex;
    let d = coeffs.len() - 1;
    let lead = coeffs[d];
    let eval = |z: Complex<f64>| coeffs.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c / lead);
    let radius = 1.0 + coeffs[..d].iter().map(|c| (c / lead).abs()).fold(0.0, f64::max);
    let seed = Complex::new(0.4, 0.9);
    let mut z: Vec<Complex<f64>> = (0..d).map(|i| seed.powu(i as u32) * radius).collect();
    for _ in 0..5_000 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let denom = (0..d).filter(|&j| j != i).fold(Complex::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            if denom.norm() == 0.0 {
                continue;
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 * radius {
            break;
        }
    }
    z
}

fn rgcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !is_zero_poly(&b) {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn rdiv(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![Rational::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let f = &r[i + db] / &b[db];
        for j in 0..=db {
            let v = &b[j] * &f;
            r[i + j] -= v;
        }
        q[i] = f;
    }
    q
}

/// `p / gcd(p, p')`: same roots, each simple.
pub fn squarefree(p: &IntPoly) -> Vec<Rational> {
    let q = p.to_rational();
    if q.len() <= 2 {
        return q;
    }
    let mut d: Vec<Rational> = q.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(BigInt::from(i))).collect();
    rtrim(&mut d);
    let g = rgcd(&q, &d);
    rdiv(&q, &g)
}

fn newton_rational(p: &[f64], mut x: f64) -> f64 {
    for _ in 0..60 {
        let (mut f, mut df) = (0.0, 0.0);
        for &c in p.iter().rev() {
            df = df * x + f;
            f = f * x + c;
        }
        if df == 0.0 || !df.is_finite() {
            break;
        }
        let step = f / df;
        if !step.is_finite() {
            break;
        }
        x -= step;
        if step.abs() <= 1e-15 * x.abs().max(1.0) {
            break;
        }
    }
    x
}

/// Distinct real roots of `p`, which must have only real roots.
/// Integer roots are exact; the others are numeric, ascending.
pub fn real_roots(p: &IntPoly, bound: i64) -> (Vec<i64>, Vec<f64>) {
    let (mut ints, rest) = split_integer_roots(p, bound);
    ints.dedup();
    if rest.degree() == 0 {
        return (ints, Vec::new());
    }
    let sf: Vec<f64> = squarefree(&rest).iter().map(cc_core::rational::to_f64).collect();
    let mut others: Vec<f64> = match sf.len() - 1 {
        1 => vec![-sf[0] / sf[1]],
        2 => {
            let (a, b, c) = (sf[2], sf[1], sf[0]);
            let disc = (b * b - 4.0 * a * c).max(0.0).sqrt();
            let q = -0.5 * (b + if b >= 0.0 { disc } else { -disc });
            let v = if q != 0.0 { vec![q / a, c / q] } else { vec![0.0, 0.0] };
            v.into_iter().map(|x| newton_rational(&sf, x)).collect()
        }
        _ => complex_roots(&sf).into_iter().map(|z| newton_rational(&sf, z.re)).collect(),
    };
    others.sort_by(|a, b| a.total_cmp(b));
    others.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * a.abs().max(1.0));
    (ints, others)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cc_core::rational::{int, rat};

    fn sorted(mut v: Vec<nalgebra::Complex<f64>>) -> Vec<(f64, f64)> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v.into_iter().map(|z| (z.re, z.im)).collect()
    }

    #[test]
    fn complex_roots_of_a_pure_power() {
        // the companion matrix of x^3 is nilpotent and stalls the Schur iteration
        assert_eq!(sorted(complex_roots(&[0.0, 0.0, 0.0, 1.0])), vec![(0.0, 0.0); 3]);
        let r = sorted(complex_roots(&[0.0, -1.0, 0.0, 1.0]));
        assert!((r[0].0 + 1.0).abs() < 1e-12 && r[1] == (0.0, 0.0) && (r[2].0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn durand_kerner_fallback() {
        // (x - 1)(x + 2)(x^2 + 1) = x^4 + x^3 - x^2 + x - 2
        let r = sorted(durand_kerner(&[-2.0, 1.0, -1.0, 1.0, 1.0]));
        let want = [(-2.0, 0.0), (0.0, -1.0), (0.0, 1.0), (1.0, 0.0)];
        for (got, w) in r.iter().zip(want) {
            assert!((got.0 - w.0).abs() < 1e-9 && (got.1 - w.1).abs() < 1e-9, "{r:?}");
        }
    }

    #[test]
    fn charpoly_small() {
        // [[0,1],[1,0]] -> x^2 - 1
        assert_eq!(charpoly(&[vec![0, 1], vec![1, 0]]), IntPoly::from_i64(&[-1, 0, 1]));
        // triangular matrix
        let p = charpoly(&[vec![2, 5, 7], vec![0, 3, 1], vec![0, 0, -1]]);
        assert_eq!(p, IntPoly::from_i64(&[6, 1, -4, 1]));
    }

    #[test]
    fn integer_roots_with_multiplicity() {
        // (x-2)^2 (x+3) (x^2 - 2)
        let q = IntPoly::from_i64(&[-2, 0, 1]);
        let mut expected = IntPoly::from_i64(&[1]);
        for f in [IntPoly::from_i64(&[-2, 1]), IntPoly::from_i64(&[-2, 1]), IntPoly::from_i64(&[3, 1]), q.clone()] {
            expected = mul(&expected, &f);
        }
        let (roots, rest) = split_integer_roots(&expected, 10);
        assert_eq!(roots, vec![-3, 2, 2]);
        assert_eq!(rest, q);
    }

    fn mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
        let mut out = vec![BigInt::zero(); a.0.len() + b.0.len() - 1];
        for (i, x) in a.0.iter().enumerate() {
            for (j, y) in b.0.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        IntPoly(out)
    }

    #[test]
    fn sturm_counts() {
        // (x - 1)(x + 1)(x + 3)
        let p = IntPoly::from_i64(&[-3, -1, 3, 1]);
        assert_eq!(count_real_roots(&p), 3);
        assert_eq!(count_roots_above(&p, &int(-1)), 1);
        assert_eq!(count_roots_below(&p, &int(-1)), 1);
        assert_eq!(count_roots_below(&p, &int(-3)), 0);
        assert_eq!(count_roots_above(&p, &rat(1, 2)), 1);
        assert_eq!(count_roots_above(&p, &int(1)), 0);
        // x^2 - 2: irrational roots
        let q = IntPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(count_roots_above(&q, &rat(141, 100)), 1);
        assert_eq!(count_roots_above(&q, &rat(142, 100)), 0);
        // repeated root: (x - 1)^2 (x + 2)
        let r = IntPoly::from_i64(&[2, -3, 0, 1]);
        assert_eq!(count_roots_above(&r, &int(0)), 1);
        assert_eq!(count_roots_below(&r, &int(0)), 1);
    }

    #[test]
    fn repeated_irrational_roots() {
        let q = IntPoly::from_i64(&[-2, 0, 1]);
        let (ints, others) = real_roots(&mul(&q, &q), 4);
        assert!(ints.is_empty());
        assert_eq!(others.len(), 2);
        assert!((others[1] - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn numeric_roots() {
        let q = IntPoly::from_i64(&[-2, 0, 1]);
        let (ints, others) = real_roots(&q, 3);
        assert!(ints.is_empty());
        assert!((others[0] + 2f64.sqrt()).abs() < 1e-12);
        assert!((others[1] - 2f64.sqrt()).abs() < 1e-12);
        // x^3 - 3x + 1, three irrational roots
        let c = IntPoly::from_i64(&[1, -3, 0, 1]);
        let (ints, others) = real_roots(&c, 3);
        assert!(ints.is_empty());
        assert_eq!(others.len(), 3);
        for x in others {
            assert!(c.eval_f64(x).abs() < 1e-10);
        }
    }
}
