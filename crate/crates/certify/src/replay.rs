//! Recompute the steps of a stored certificate and compare.

use cc_core::{intersection_tensor, Configuration};
use serde::{Deserialize, Serialize};

use crate::step::{Ctx, Step};
use crate::{cliques, exceptional, generic, input_hash, oriented, rank4, verdict_from, Certificate, CertifyError, Values};

/// Rules whose outcome depends on the graph and not only on the tensor.
const NEEDS_CONFIGURATION: &[&str] = &[
    cliques::LINE_GRAPH,
    cliques::SUN_WILMES,
    rank4::DIAM2,
    rank4::X12_SRG,
    rank4::CLIQUE_RATIO,
];

/// Evaluate one rule on `ctx` with the given parameters.
pub fn evaluate(ctx: &Ctx, rule: &str, params: &Values) -> Result<Step, CertifyError> {
    match rule {
        exceptional::RULE => exceptional::evaluate(ctx),
        rank4::CLASSIFY => Ok(rank4::classify_step(ctx)),
        rank4::DRG => rank4::drg_step(ctx),
        rank4::K2_LARGE => rank4::eval_k2_large(ctx, params),
        rank4::PARAMS => rank4::eval_params(ctx, params),
        rank4::TRIANGLES => rank4::eval_triangles(ctx, params),
        rank4::DIAM2 => rank4::eval_diam2(ctx, params),
        rank4::X12_SRG => rank4::eval_x12(ctx, params),
        rank4::X2_SRG => rank4::eval_x2(ctx, params),
        rank4::X1_SRG => rank4::eval_x1(ctx, params),
        rank4::CLAW => rank4::eval_claw(ctx, params),
        rank4::CLIQUE_RATIO => rank4::eval_clique_ratio(ctx, params),
        cliques::LINE_GRAPH => cliques::eval_line_graph(ctx, params),
        cliques::SUN_WILMES => cliques::eval_sun_wilmes(ctx, params),
        oriented::ORIENTED => oriented::eval_oriented(ctx, params),
        generic::DMIN => generic::distinguishing_step(ctx),
        generic::SPECTRAL => generic::eval_spectral(ctx, params),
        generic::BOUNDED => generic::eval_bounded(ctx, params),
        other => Err(CertifyError::UnknownRule(other.into())),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub replayed: usize,
    /// Graph-level steps left out because no configuration was given.
    pub skipped: usize,
    /// One entry per step (or the verdict) that did not reproduce.
    pub mismatches: Vec<String>,
}

impl AuditReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Replay every step of `cert`. Tensor-level steps use the stored tensor;
/// graph-level steps need `cfg`, whose hash must match the certificate.
pub fn audit(cert: &Certificate, cfg: Option<&Configuration>) -> Result<AuditReport, CertifyError> {
    let mut report = AuditReport::default();
    if let Some(cfg) = cfg {
        let actual = input_hash(cfg);
        if actual != cert.input_hash {
            return Err(CertifyError::HashMismatch { stored: cert.input_hash.clone(), actual });
        }
    }
    let Some(tensor) = &cert.tensor else {
        if !cert.steps.is_empty() {
            report.mismatches.push("steps without a stored tensor".into());
        }
        return Ok(report);
    };
    if let Some(cfg) = cfg {
        if intersection_tensor(cfg).ok().as_ref() != Some(tensor) {
            report.mismatches.push("stored tensor differs from the configuration".into());
            return Ok(report);
        }
    }
    let ctx = Ctx { tensor, cfg };
    for (idx, step) in cert.steps.iter().enumerate() {
        if cfg.is_none() && NEEDS_CONFIGURATION.contains(&step.rule.as_str()) {
            report.skipped += 1;
            continue;
        }
        report.replayed += 1;
        match evaluate(&ctx, &step.rule, &step.params) {
            Ok(s) if s == *step => {}
            Ok(_) => report.mismatches.push(format!("step {idx} ({}) differs", step.rule)),
            Err(e) => report.mismatches.push(format!("step {idx} ({}): {e}", step.rule)),
        }
    }
    let inconclusive = cert.verdict.reason.clone();
    if verdict_from(cert.n, &cert.steps, inconclusive) != cert.verdict {
        report.mismatches.push("verdict".into());
    }
    Ok(report)
}
