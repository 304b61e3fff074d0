//! Rank 4 with an oriented pair `i, i*` and one symmetric color `t`.

use cc_core::rational::{format, int, rat};
use cc_core::{structural_flags, Color, IntersectionTensor};
use cc_distinguish::d_from_tensor;
use cc_geometry::SrgMinus2;

use crate::cliques::sun_wilmes_check;
use crate::rank4::srg_minus2;
use crate::step::{Ctx, Step};
use crate::{CertifyError, Values};

pub(crate) const ORIENTED: &str = "oriented-colors";

/// `(i, i*, t)`: the oriented pair with `i < i*` and the symmetric color.
fn colors(t: &IntersectionTensor) -> Option<(Color, Color, Color)> {
    if t.rank() != 4 || !t.is_homogeneous() {
        return None;
    }
    let e = t.edge_colors();
    let sym: Vec<Color> = e.iter().copied().filter(|&c| t.is_symmetric_color(c)).collect();
    let ori: Vec<Color> = e.iter().copied().filter(|&c| !t.is_symmetric_color(c)).collect();
    (sym.len() == 1 && ori.len() == 2).then(|| (ori[0], ori[1], sym[0]))
}

fn srg_code(f: Option<SrgMinus2>) -> u64 {
    match f {
        Some(SrgMinus2::Triangular(_)) => 1,
        Some(SrgMinus2::Lattice(_)) => 2,
        Some(_) => 3,
        None => 0,
    }
}

/// Steps for the oriented branch. A `motion >= n/18` bound is emitted only
/// when `D_min >= n/18` is verified exactly.
pub fn oriented_branch(ctx: Ctx) -> Result<Vec<Step>, CertifyError> {
    let mut steps = vec![eval_oriented(&ctx, &Values::new())?];
    let t = ctx.tensor;
    let (i, istar, _) = colors(t).ok_or(CertifyError::BranchMismatch { expected: "oriented" })?;
    if steps[0].holds("complement of X_t triangular") {
        if let Some(cfg) = ctx.cfg {
            match sun_wilmes_check(cfg, &[i, istar], &rat(1, 16)) {
                Ok(r) => steps.push(r.step),
                Err(CertifyError::NotTriangular) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(steps)
}

pub(crate) fn eval_oriented(ctx: &Ctx, params: &Values) -> Result<Step, CertifyError> {
    let t = ctx.tensor;
    let (i, istar, tc) = colors(t).ok_or(CertifyError::BranchMismatch { expected: "oriented" })?;
    let mut s = Step::new(ORIENTED, "an oriented pair: X_t is strongly regular and p_ii^i + p_i*i*^i is large")
        .with_params(params);
    let n = t.n() as u64;
    let (ki, kt) = (t.k(i), t.k(tc));
    let primitive = structural_flags(t).primitive;
    s.value("n", n);
    s.value("k_i", ki);
    s.value("k_t", kt);
    s.value("color_i", i);
    s.value("color_t", tc);
    s.check("primitive", primitive);
    s.check("x_t_strongly_regular", t.p(tc, tc, i) == t.p(tc, tc, istar));
    let lhs = t.p(i, i, i) + t.p(istar, istar, i);
    s.value("p_ii^i + p_i*i*^i", lhs);
    let rhs = (int(2 * ki) - int(kt) - int(1)) / int(3);
    s.rational("(2k_i - k_t - 1)/3", rhs.clone());
    let ineq = s.check("p_ii^i + p_i*i*^i >= (2k_i - k_t - 1)/3", int(lhs) >= rhs);
    if primitive && !ineq {
        return Err(CertifyError::Soundness("oriented inequality fails on a primitive configuration".into()));
    }

    let xt = srg_minus2(t, &[tc])?;
    let co = srg_minus2(t, &[i, istar])?;
    s.value("x_t_family", srg_code(xt));
    s.value("complement_family", srg_code(co));
    let tl = s.check("X_t triangular or lattice", matches!(xt, Some(SrgMinus2::Triangular(_) | SrgMinus2::Lattice(_))));
    s.check("complement of X_t triangular", matches!(co, Some(SrgMinus2::Triangular(_))));
    let lattice_complement = s.check("complement of X_t lattice", matches!(co, Some(SrgMinus2::Lattice(_))));
    let large = s.check("n > 100", n > 100);
    if primitive && large && lattice_complement {
        return Err(CertifyError::Soundness("X_t is the complement of a lattice graph".into()));
    }

    let di = d_from_tensor(t, i);
    let dmin = t.edge_colors().into_iter().map(|c| d_from_tensor(t, c)).min().unwrap_or(0);
    s.value("D_i", di);
    s.value("Dmin", dmin);
    s.check("D_i >= n/9", 9 * di >= n);
    s.check("oriented diameter 2", t.constituent_diameter(i) == Some(2));
    let enough = s.check("Dmin >= n/18", 18 * dmin >= n);
    if tl && large && enough {
        let b = int(n) / int(18);
        s.conclusion = format!("motion >= {}", format(&b));
        s.bound = Some(b);
    } else if lattice_complement {
        s.conclusion = "complement of a lattice graph: impossible for primitive n > 100".into();
    } else if !large {
        s.conclusion = "small n: the argument needs n > 100".into();
    } else {
        s.conclusion = "no family match; generic tools apply".into();
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cc_autgroup::orbital_configuration;
    use cc_core::intersection_tensor;

    /// Orbitals of the rotation group of a square: 0, +1, -1, +2.
    fn z4() -> cc_core::Configuration {
        orbital_configuration(&[vec![1, 2, 3, 0]], 4).unwrap()
    }

    #[test]
    fn rotation_scheme() {
        let cfg = z4();
        let t = intersection_tensor(&cfg).unwrap();
        let steps = oriented_branch(Ctx { tensor: &t, cfg: Some(&cfg) }).unwrap();
        let s = &steps[0];
        assert!(!s.holds("primitive"));
        assert!(s.holds("x_t_strongly_regular"));
        assert!(s.holds("p_ii^i + p_i*i*^i >= (2k_i - k_t - 1)/3"));
        assert!(!s.holds("n > 100"));
        assert!(s.bound.is_none());
    }

    #[test]
    fn symmetric_scheme_is_rejected() {
        let t = intersection_tensor(&cc_families::gen_johnson(7, 3).unwrap()).unwrap();
        assert_eq!(
            oriented_branch(Ctx::tensor_only(&t)).unwrap_err(),
            CertifyError::BranchMismatch { expected: "oriented" }
        );
    }
}
