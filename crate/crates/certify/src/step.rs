use std::collections::BTreeMap;

use cc_core::rational::{int, map_as_string};
use cc_core::{Configuration, IntersectionTensor, Rational};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::{ser, CertifyError, Values};

/// What a step may look at.
#[derive(Clone, Copy, Debug)]
pub struct Ctx<'a> {
    pub tensor: &'a IntersectionTensor,
    /// Needed by steps that inspect the graph (cliques, line graphs).
    pub cfg: Option<&'a Configuration>,
}

impl<'a> Ctx<'a> {
    pub fn tensor_only(tensor: &'a IntersectionTensor) -> Self {
        Ctx { tensor, cfg: None }
    }

    pub(crate) fn cfg(&self) -> Result<&'a Configuration, CertifyError> {
        self.cfg.ok_or(CertifyError::NeedsConfiguration)
    }
}

/// One checked rule application.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub rule: String,
    /// Short statement of the result the rule applies.
    pub anchor: String,
    /// Inputs chosen by the caller (thresholds, colors).
    #[serde(default, with = "map_as_string")]
    pub params: Values,
    /// Exact values read off the input.
    #[serde(with = "map_as_string")]
    pub hypotheses: Values,
    pub checks: BTreeMap<String, bool>,
    pub conclusion: String,
    /// Motion lower bound established by this step.
    #[serde(default, with = "ser::opt_rational")]
    pub bound: Option<Rational>,
}

impl Step {
    pub(crate) fn new(rule: &str, anchor: &str) -> Self {
        Step {
            rule: rule.into(),
            anchor: anchor.into(),
            params: Values::new(),
            hypotheses: Values::new(),
            checks: BTreeMap::new(),
            conclusion: String::new(),
            bound: None,
        }
    }

    pub(crate) fn with_params(mut self, params: &Values) -> Self {
        self.params = params.clone();
        self
    }

    pub(crate) fn value(&mut self, key: impl Into<String>, v: impl Into<BigInt>) {
        self.hypotheses.insert(key.into(), int(v));
    }

    pub(crate) fn rational(&mut self, key: impl Into<String>, v: Rational) {
        self.hypotheses.insert(key.into(), v);
    }

    pub(crate) fn check(&mut self, key: impl Into<String>, holds: bool) -> bool {
        self.checks.insert(key.into(), holds);
        holds
    }

    pub fn holds(&self, key: &str) -> bool {
        self.checks.get(key).copied().unwrap_or(false)
    }

    pub fn all_hold(&self) -> bool {
        self.checks.values().all(|&b| b)
    }
}

pub(crate) fn param(params: &Values, key: &str) -> Result<Rational, CertifyError> {
    params.get(key).cloned().ok_or_else(|| CertifyError::MissingParam(key.into()))
}

pub(crate) fn param_u32(params: &Values, key: &str) -> Result<u32, CertifyError> {
    let v = param(params, key)?;
    if !v.is_integer() {
        return Err(CertifyError::MissingParam(key.into()));
    }
    v.to_integer().to_u32().ok_or_else(|| CertifyError::MissingParam(key.into()))
}

/// Color sets are stored as `color_0`, `color_1`, ...
pub(crate) fn colors_param(params: &Values) -> Result<Vec<u32>, CertifyError> {
    let mut out = Vec::new();
    while params.contains_key(&format!("color_{}", out.len())) {
        out.push(param_u32(params, &format!("color_{}", out.len()))?);
    }
    if out.is_empty() {
        return Err(CertifyError::MissingParam("color_0".into()));
    }
    Ok(out)
}

pub(crate) fn colors_values(set: &[u32]) -> Values {
    set.iter().enumerate().map(|(i, &c)| (format!("color_{i}"), int(c))).collect()
}
