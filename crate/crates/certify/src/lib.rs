//! Motion certificates for rank-4 primitive coherent configurations.
//!
//! [`certify`] classifies a configuration, runs the checks that apply to its
//! branch and the generic bounds (distinguishing number, spectral gap,
//! bounded degree), and records every check as a [`Step`]. A step stores the
//! exact values it looked at, so [`audit`] can recompute it from the stored
//! tensor (and, for steps that look at the graph itself, from the
//! configuration) and compare.
//!
//! Theorems whose hypotheses involve vanishing constants are evaluated by
//! their conclusions: the hypotheses are recorded as checks, and a bound is
//! emitted only from a conclusion that was verified directly.

mod cliques;
mod exceptional;
mod generic;
mod oriented;
mod rank4;
mod replay;
mod ser;
mod step;

use std::collections::BTreeMap;

use cc_autgroup::AutError;
use cc_core::{ccf, intersection_tensor, Configuration, CoreError, IntersectionTensor, Rational};
use cc_distinguish::DistinguishError;
use cc_geometry::GeometryError;
use cc_spectral::SpectralError;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub use cliques::{line_graph_base, line_graph_branch, sun_wilmes_check, LineGraphBase, SunWilmes};
pub use exceptional::{recognize_exceptional, Family};
pub use generic::{bounded_degree_step, distinguishing_step, spectral_step};
pub use oriented::oriented_branch;
pub use rank4::{
    classify_rank4, claw_degree_ratio, clique_degree_ratio, corollary_halved, corollary_same_side,
    corollary_shared_side, lemma_k2_large, param_inequalities, srg_branch_checks, theorem_diam2, triangle_inequality,
    Diam2Outcome, Diam2Report, InequalityCheck, DIAM2_EPS,
};
pub use replay::{audit, evaluate, AuditReport};
pub use step::{Ctx, Step};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertifyError {
    #[error("expected rank 4, got rank {rank}")]
    NotRank4 { rank: usize },
    #[error("configuration is not primitive")]
    NotPrimitive,
    #[error("configuration is not in the {expected} branch")]
    BranchMismatch { expected: &'static str },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no triangle with sides of colors ({s}, {r}, {t})")]
    NoSuchTriangle { s: u32, r: u32, t: u32 },
    #[error("no outcome of the diameter-2 classification holds")]
    NoOutcome,
    #[error("the union graph is not a triangular graph")]
    NotTriangular,
    #[error("hypothesis violated: {which}")]
    HypothesisViolated { which: String },
    #[error("not a line graph: {0}")]
    NotLineGraph(String),
    #[error("root graph has a triangle")]
    BaseHasTriangle,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("this step needs the configuration, not only the tensor")]
    NeedsConfiguration,
    #[error("unknown rule {0:?}")]
    UnknownRule(String),
    #[error("missing parameter {0:?}")]
    MissingParam(String),
    #[error("input hash mismatch: certificate has {stored}, input hashes to {actual}")]
    HashMismatch { stored: String, actual: String },
    #[error("soundness check failed: {0}")]
    Soundness(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Distinguish(#[from] DistinguishError),
    #[error(transparent)]
    Aut(#[from] AutError),
}

/// Which of the three rank-4 classes the configuration falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    OrientedColors,
    DRGDiameter3,
    AssocDiameter2,
    /// Not a primitive rank-4 configuration; only generic tools apply.
    Unclassified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictKind {
    MotionAtLeast,
    Exceptional,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Best bound found, also for `Exceptional`. Decimal strings.
    #[serde(default)]
    pub bound_num: Option<String>,
    #[serde(default)]
    pub bound_den: Option<String>,
    /// The bound divided by `n`.
    #[serde(default, with = "ser::opt_rational")]
    pub fraction_of_n: Option<Rational>,
}

impl Verdict {
    pub fn bound(&self) -> Option<Rational> {
        let num = self.bound_num.as_ref()?.parse().ok()?;
        let den: num_bigint::BigInt = self.bound_den.as_ref()?.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(Rational::new(num, den))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// SHA-256 of the CCF text of the input.
    pub input_hash: String,
    pub n: usize,
    pub rank: usize,
    pub branch: Branch,
    /// Intersection numbers every tensor-level step is replayed from.
    #[serde(default)]
    pub tensor: Option<IntersectionTensor>,
    pub steps: Vec<Step>,
    pub verdict: Verdict,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl Certificate {
    /// Largest bound over all steps.
    pub fn best_bound(&self) -> Option<Rational> {
        best_bound(&self.steps)
    }
}

pub fn input_hash(cfg: &Configuration) -> String {
    hex::encode(Sha256::digest(ccf::write(cfg).as_bytes()))
}

fn best_bound(steps: &[Step]) -> Option<Rational> {
    steps.iter().filter_map(|s| s.bound.clone()).filter(|b| b.is_positive()).max()
}

/// Verdict from the steps alone, so that replay reproduces it.
pub(crate) fn verdict_from(n: usize, steps: &[Step], inconclusive: Option<String>) -> Verdict {
    let best = best_bound(steps);
    let (bound_num, bound_den, fraction_of_n) = match &best {
        Some(b) => (
            Some(b.numer().to_string()),
            Some(b.denom().to_string()),
            (n > 0).then(|| b / Rational::from_integer((n as u64).into())),
        ),
        None => (None, None, None),
    };
    let family = steps.iter().find_map(exceptional::family_of);
    let (kind, reason) = if family.is_some() {
        (VerdictKind::Exceptional, None)
    } else if best.is_some() {
        (VerdictKind::MotionAtLeast, None)
    } else {
        (VerdictKind::Inconclusive, Some(inconclusive.unwrap_or_else(|| "no positive bound found".into())))
    };
    Verdict { kind, family, reason, bound_num, bound_den, fraction_of_n }
}

/// Run the whole pipeline. Never fails: problems end up as warnings and an
/// `Inconclusive` verdict.
pub fn certify(cfg: &Configuration) -> Certificate {
    let input_hash = input_hash(cfg);
    let mut warnings = Vec::new();
    let tensor = match intersection_tensor(cfg) {
        Ok(t) => t,
        Err(e) => {
            return Certificate {
                input_hash,
                n: cfg.n(),
                rank: cfg.rank(),
                branch: Branch::Unclassified,
                tensor: None,
                steps: Vec::new(),
                verdict: verdict_from(cfg.n(), &[], Some(format!("not coherent: {e}"))),
                warnings,
            }
        }
    };
    let ctx = Ctx { tensor: &tensor, cfg: Some(cfg) };
    let mut steps = Vec::new();
    let push = |r: Result<Step, CertifyError>, warnings: &mut Vec<String>, steps: &mut Vec<Step>| match r {
        Ok(s) => steps.push(s),
        Err(e) => warnings.push(e.to_string()),
    };
    if !tensor.is_homogeneous() {
        return Certificate {
            input_hash,
            n: cfg.n(),
            rank: cfg.rank(),
            branch: Branch::Unclassified,
            tensor: Some(tensor),
            steps,
            verdict: verdict_from(cfg.n(), &[], Some("not homogeneous".into())),
            warnings,
        };
    }

    push(exceptional::evaluate(&ctx), &mut warnings, &mut steps);
    let classify = rank4::classify_step(&ctx);
    let branch = rank4::branch_of(&classify);
    steps.push(classify);
    match branch {
        Branch::Unclassified => warnings.push("not a primitive rank-4 configuration; generic tools only".into()),
        Branch::OrientedColors => match oriented::oriented_branch(ctx) {
            Ok(s) => steps.extend(s),
            Err(e) => warnings.push(e.to_string()),
        },
        Branch::DRGDiameter3 => push(rank4::drg_step(&ctx), &mut warnings, &mut steps),
        Branch::AssocDiameter2 => rank4::diameter_two_steps(ctx, &mut steps, &mut warnings),
    }
    generic::fallbacks(ctx, &mut steps, &mut warnings);

    let small = (branch == Branch::OrientedColors && cfg.n() <= 100).then(|| "small n: the oriented case needs n > 100".to_string());
    let verdict = verdict_from(cfg.n(), &steps, small);
    Certificate { input_hash, n: cfg.n(), rank: cfg.rank(), branch, tensor: Some(tensor), steps, verdict, warnings }
}

/// Values keyed by name, kept as exact rationals.
pub type Values = BTreeMap<String, Rational>;
