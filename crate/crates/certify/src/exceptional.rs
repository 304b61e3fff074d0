//! Johnson and Hamming schemes, recognized from the intersection array of a
//! color whose distance classes are the colors.

use cc_core::{Color, IntersectionTensor};
use cc_families::IntersectionArray;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::step::{Ctx, Step};
use crate::CertifyError;

pub(crate) const RULE: &str = "exceptional-family";
const ANCHOR: &str = "Johnson and Hamming schemes are the exceptions to linear motion";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Johnson { m: u64, d: u64 },
    Hamming { d: u64, m: u64 },
}

/// Colors in order of distance from the diagonal in `X_i`, if every color
/// is at a different distance.
pub(crate) fn metric_order(tensor: &IntersectionTensor, i: Color) -> Option<Vec<Color>> {
    if !tensor.is_symmetric_color(i) {
        return None;
    }
    let dist = tensor.distances(i);
    let mut order = vec![None; tensor.rank()];
    for (c, d) in dist.iter().enumerate() {
        let d = (*d)? as usize;
        if d >= order.len() || order[d].is_some() {
            return None;
        }
        order[d] = Some(c as Color);
    }
    order.into_iter().collect()
}

fn array_of(tensor: &IntersectionTensor, i: Color, order: &[Color]) -> IntersectionArray {
    let d = order.len() - 1;
    IntersectionArray {
        b: (0..d).map(|j| tensor.p(i, order[j + 1], order[j])).collect(),
        c: (1..=d).map(|j| tensor.p(i, order[j - 1], order[j])).collect(),
    }
}

fn match_array(a: &IntersectionArray) -> Option<Family> {
    let d = a.diameter() as u64;
    let k = *a.b.first()?;
    if d == 0 || k == 0 || k % d != 0 {
        return None;
    }
    let m = k / d + d;
    if m >= 2 * d && IntersectionArray::johnson(m, d) == *a {
        return Some(Family::Johnson { m, d });
    }
    let m = k / d + 1;
    if m >= 2 && IntersectionArray::hamming(d, m) == *a {
        return Some(Family::Hamming { d, m });
    }
    None
}

/// Exact parameter match against `J(m, d)` (`m >= 2d`) and `H(d, m)`.
pub fn recognize_exceptional(tensor: &IntersectionTensor) -> Option<Family> {
    if !tensor.is_homogeneous() {
        return None;
    }
    tensor.edge_colors().into_iter().find_map(|i| match_array(&array_of(tensor, i, &metric_order(tensor, i)?)))
}

pub(crate) fn evaluate(ctx: &Ctx) -> Result<Step, CertifyError> {
    let t = ctx.tensor;
    let mut s = Step::new(RULE, ANCHOR);
    s.value("n", t.n() as u64);
    s.value("rank", t.rank() as u64);
    let metric: Vec<(Color, Vec<Color>)> = if t.is_homogeneous() {
        t.edge_colors().into_iter().filter_map(|i| Some((i, metric_order(t, i)?))).collect()
    } else {
        Vec::new()
    };
    s.check("metric", !metric.is_empty());
    let found = metric.iter().find_map(|(i, order)| {
        let a = array_of(t, *i, order);
        match_array(&a).map(|f| (*i, a, f))
    });
    let (johnson, hamming) = match found {
        Some((i, a, f)) => {
            s.value("metric_color", i);
            for (j, b) in a.b.iter().enumerate() {
                s.value(format!("b_{j}"), *b);
            }
            for (j, c) in a.c.iter().enumerate() {
                s.value(format!("c_{}", j + 1), *c);
            }
            match f {
                Family::Johnson { m, d } => {
                    s.value("m", m);
                    s.value("d", d);
                    s.conclusion = format!("Johnson scheme J({m}, {d})");
                    (true, false)
                }
                Family::Hamming { d, m } => {
                    s.value("m", m);
                    s.value("d", d);
                    s.conclusion = format!("Hamming scheme H({d}, {m})");
                    (false, true)
                }
            }
        }
        None => {
            s.conclusion = "not a Johnson or Hamming scheme".into();
            (false, false)
        }
    };
    s.check("johnson", johnson);
    s.check("hamming", hamming);
    Ok(s)
}

pub(crate) fn family_of(step: &Step) -> Option<Family> {
    if step.rule != RULE {
        return None;
    }
    let get = |k: &str| step.hypotheses.get(k).and_then(|v| v.to_integer().to_u64());
    if step.holds("johnson") {
        Some(Family::Johnson { m: get("m")?, d: get("d")? })
    } else if step.holds("hamming") {
        Some(Family::Hamming { d: get("d")?, m: get("m")? })
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cc_core::{intersection_tensor, Configuration, Graph};
    use cc_families::{drg_to_scheme, gen_cycle, gen_hamming, gen_johnson, gen_paley};

    fn family(cfg: &Configuration) -> Option<Family> {
        recognize_exceptional(&intersection_tensor(cfg).unwrap())
    }

    #[test]
    fn johnson_and_hamming_are_tagged() {
        for m in 4..=9 {
            assert_eq!(family(&gen_johnson(m, 2).unwrap()), Some(Family::Johnson { m: m as u64, d: 2 }));
        }
        assert_eq!(family(&gen_johnson(7, 3).unwrap()), Some(Family::Johnson { m: 7, d: 3 }));
        for (d, m) in [(2, 3), (2, 4), (3, 3), (3, 2)] {
            assert_eq!(family(&gen_hamming(d, m).unwrap()), Some(Family::Hamming { d: d as u64, m: m as u64 }));
        }
    }

    #[test]
    fn others_are_not() {
        assert_eq!(family(&gen_cycle(7).unwrap()), None);
        assert_eq!(family(&gen_paley(13).unwrap()), None);
        assert_eq!(family(&drg_to_scheme(&Graph::heawood()).unwrap().config), None);
    }
}
