//! `ccmotion`: generate, check and analyze coherent configurations, and
//! certify motion lower bounds.
//!
//! Exit codes: 0 success, 1 validation failure, 2 cap exceeded, 3 soundness
//! failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cc_autgroup::{exact_motion_with_cap, AutError, DEFAULT_CAP as AUT_CAP};
use cc_certify::{audit, certify, Certificate, CertifyError, VerdictKind};
use cc_core::rational::{format as fmt_rational, int};
use cc_core::{ccf, check_coherence, intersection_tensor, structural_flags, Color, Configuration, CoreError, DEFAULT_N_CAP};
use cc_distinguish::{distinguishing_report, DistinguishError};
use cc_families::{parse_family_spec, FamilyError};
use cc_geometry::{extract_lines_with_threshold, metsch_check, reconstruct_root_graph, GeometryError, MetschParams};
use cc_spectral::{constituent_spectrum, symmetrized_spectrum, union_spectrum, SpectralError};
use cc_wl::{wl_stabilize_with_cap, WlError, DEFAULT_STABILIZE_CAP};
use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "ccmotion", version, about = "Motion of coherent configurations")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Size cap, overriding each command's default.
    #[arg(long, global = true, env = "CCMOTION_CAP")]
    cap: Option<usize>,
    /// Relabel the input by a random permutation drawn from this seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a family member as CCF, e.g. `gen johnson 7 2 -o t7.ccf`.
    Gen {
        #[arg(required = true, num_args = 1..)]
        family: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Validate a CCF file and test coherence.
    Check { file: PathBuf },
    /// Intersection tensor, structural flags and per-color statistics.
    Analyze { file: PathBuf },
    /// Weisfeiler-Leman stabilization.
    Wl {
        file: PathBuf,
        /// Write the stable configuration here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Distinguishing numbers per color.
    Distinguish { file: PathBuf },
    /// Spectra of constituents, or of the union of `--colors`.
    Spectrum {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        colors: Option<Vec<Color>>,
    },
    /// Clique geometry of a constituent.
    Geometry {
        file: PathBuf,
        #[arg(long)]
        color: Color,
        #[arg(long)]
        m: u64,
    },
    /// Motion certificate.
    Certify {
        file: PathBuf,
        /// Print the certificate as JSON.
        #[arg(long)]
        json: bool,
        /// Replay a stored certificate for this input instead.
        #[arg(long)]
        audit: Option<PathBuf>,
        /// Compare the bound with the exact motion; on a violation write a
        /// reproduction bundle to this directory and exit 3.
        #[arg(long)]
        oracle: Option<PathBuf>,
    },
    /// Motion: the certified lower bound, or the exact value with `--exact`.
    Motion {
        file: PathBuf,
        #[arg(long)]
        exact: bool,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Cap(String),
    #[error("{0}")]
    Soundness(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) | CliError::Io { .. } => 1,
            CliError::Cap(_) => 2,
            CliError::Soundness(_) => 3,
        }
    }
}

fn core_err(e: CoreError) -> CliError {
    match e {
        CoreError::TooLarge { .. } | CoreError::RankTooLarge { .. } => CliError::Cap(e.to_string()),
        e => CliError::Validation(e.to_string()),
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        core_err(e)
    }
}

impl From<ccf::CcfError> for CliError {
    fn from(e: ccf::CcfError) -> Self {
        match e {
            ccf::CcfError::Invalid(e) => core_err(e),
            e => CliError::Validation(e.to_string()),
        }
    }
}

impl From<WlError> for CliError {
    fn from(e: WlError) -> Self {
        match e {
            WlError::Core(e) => core_err(e),
            e => CliError::Cap(e.to_string()),
        }
    }
}

impl From<AutError> for CliError {
    fn from(e: AutError) -> Self {
        match e {
            AutError::TooLarge { .. } => CliError::Cap(e.to_string()),
            AutError::Soundness(s) => CliError::Soundness(s),
            AutError::Wl(e) => e.into(),
            AutError::Core(e) => core_err(e),
            e => CliError::Validation(e.to_string()),
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::TooLarge { .. } => CliError::Cap(e.to_string()),
            FamilyError::Core(e) => core_err(e),
            FamilyError::Wl(e) => e.into(),
            e => CliError::Validation(e.to_string()),
        }
    }
}

impl From<DistinguishError> for CliError {
    fn from(e: DistinguishError) -> Self {
        match e {
            DistinguishError::Core(e) => core_err(e),
            e => CliError::Validation(e.to_string()),
        }
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::Soundness(s) => CliError::Soundness(s),
            e => CliError::Validation(e.to_string()),
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::TooLarge { .. } => CliError::Cap(e.to_string()),
            GeometryError::Soundness(s) => CliError::Soundness(s),
            e => CliError::Validation(e.to_string()),
        }
    }
}

impl From<CertifyError> for CliError {
    fn from(e: CertifyError) -> Self {
        match e {
            CertifyError::Soundness(s) => CliError::Soundness(s),
            e => CliError::Validation(e.to_string()),
        }
    }
}

/// A command result: JSON for `--format json`, text otherwise.
struct Report {
    json: Value,
    text: String,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

fn load(cli: &Cli, path: &Path) -> Result<Configuration, CliError> {
    let cfg = ccf::parse_with_cap(&read(path)?, cli.cap.unwrap_or(DEFAULT_N_CAP))?;
    Ok(match cli.seed {
        Some(seed) => {
            let mut perm: Vec<usize> = (0..cfg.n()).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            cfg.relabel(&perm)
        }
        None => cfg,
    })
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.cmd {
        Cmd::Gen { family, output } => {
            let spec = parse_family_spec(&family.join(" "))?;
            let cfg = spec.build(cli.cap.unwrap_or(DEFAULT_N_CAP))?;
            let text = ccf::write(&cfg);
            let json = json!({ "family": spec.to_string(), "n": cfg.n(), "rank": cfg.rank() });
            match output {
                Some(path) => {
                    write(path, &text)?;
                    Ok(Report { json, text: format!("wrote {spec} (n={}, r={}) to {}", cfg.n(), cfg.rank(), path.display()) })
                }
                None => Ok(Report { json: json!({ "family": spec.to_string(), "ccf": text }), text: text.trim_end().into() }),
            }
        }
        Cmd::Check { file } => {
            let cfg = load(cli, file)?;
            check_coherence(&cfg)?;
            let t = intersection_tensor(&cfg)?;
            let f = structural_flags(&t);
            Ok(Report {
                json: json!({ "valid": true, "coherent": true, "n": cfg.n(), "rank": cfg.rank(), "flags": f }),
                text: format!(
                    "ok: n={} r={} coherent, homogeneous={} association_scheme={} primitive={}",
                    cfg.n(),
                    cfg.rank(),
                    f.homogeneous,
                    f.association_scheme,
                    f.primitive
                ),
            })
        }
        Cmd::Analyze { file } => {
            let cfg = load(cli, file)?;
            let t = intersection_tensor(&cfg)?;
            let f = structural_flags(&t);
            let stats = if t.is_homogeneous() { t.constituent_stats() } else { Vec::new() };
            let mut text = format!("n={} r={} {:?}\n", t.n(), t.rank(), f);
            for s in &stats {
                text.push_str(&format!("{s:?}\n"));
            }
            Ok(Report {
                json: json!({ "n": t.n(), "rank": t.rank(), "flags": f, "constituents": stats, "tensor": t }),
                text: text.trim_end().into(),
            })
        }
        Cmd::Wl { file, output } => {
            let cfg = load(cli, file)?;
            let trace = wl_stabilize_with_cap(&cfg, cli.cap.unwrap_or(DEFAULT_STABILIZE_CAP))?;
            let stable = trace.stable.as_ref().expect("stabilize returns its configuration");
            if let Some(path) = output {
                write(path, &ccf::write(stable))?;
            }
            Ok(Report {
                json: json!({ "rounds": trace.rounds, "rank_history": trace.rank_history, "rank": stable.rank() }),
                text: format!("{} rounds, ranks {:?}", trace.rounds, trace.rank_history),
            })
        }
        Cmd::Distinguish { file } => {
            let cfg = load(cli, file)?;
            let r = distinguishing_report(&cfg)?;
            let text = format!("Dmin={:?} by color {:?}", r.dmin, r.d_by_color);
            Ok(Report { json: serde_json::to_value(&r).expect("serializable"), text })
        }
        Cmd::Spectrum { file, colors } => {
            let cfg = load(cli, file)?;
            let t = intersection_tensor(&cfg)?;
            let spectra = match colors {
                Some(set) => vec![union_spectrum(&t, set)?],
                None => t
                    .edge_colors()
                    .into_iter()
                    .filter(|&i| t.pairing(i) >= i)
                    .map(|i| if t.is_symmetric_color(i) { constituent_spectrum(&t, i) } else { symmetrized_spectrum(&t, i) })
                    .collect::<Result<_, _>>()?,
            };
            let mut text = String::new();
            for s in &spectra {
                let ev: Vec<String> = s.nontrivial.iter().map(|e| format!("{}", e.value())).collect();
                text.push_str(&format!("colors {:?}: k={} nontrivial [{}] xi={}\n", s.color, s.k, ev.join(", "), s.xi));
            }
            Ok(Report { json: serde_json::to_value(&spectra).expect("serializable"), text: text.trim_end().into() })
        }
        Cmd::Geometry { file, color, m } => {
            let cfg = load(cli, file)?;
            if *color as usize >= cfg.rank() || cfg.is_vertex_color(*color) {
                return Err(CliError::Validation(format!("{color} is not an edge color")));
            }
            let g = cfg.constituent_graph(&[*color, cfg.pairing(*color)]);
            let p = MetschParams::from_graph(&g, *m)?;
            let metsch = metsch_check(&p);
            let geom = extract_lines_with_threshold(&g, *m, p.line_threshold())?;
            let root = if *m == 2 { reconstruct_root_graph(&g, &geom).ok() } else { None };
            let sizes: Vec<usize> = geom.lines.iter().map(Vec::len).collect();
            let mut text = format!("metsch={metsch} lines={} max per vertex={}", geom.lines.len(), geom.per_vertex_max);
            if let Some(r) = &root {
                text.push_str(&format!("\nroot graph: n={} edges={}", r.graph.n(), r.graph.edge_count()));
            }
            Ok(Report {
                json: json!({
                    "params": p,
                    "metsch": metsch,
                    "lines": geom.lines,
                    "line_sizes": sizes,
                    "per_vertex_max": geom.per_vertex_max,
                    "root_graph": root.map(|r| json!({ "n": r.graph.n(), "edges": r.graph.edges() })),
                }),
                text,
            })
        }
        Cmd::Certify { file, json, audit: stored, oracle } => {
            let cfg = load(cli, file)?;
            if let Some(path) = stored {
                let cert: Certificate =
                    serde_json::from_str(&read(path)?).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
                let report = audit(&cert, Some(&cfg))?;
                if !report.ok() {
                    return Err(CliError::Validation(format!("audit failed: {:?}", report.mismatches)));
                }
                return Ok(Report {
                    json: serde_json::to_value(&report).expect("serializable"),
                    text: format!("audit ok: {} steps replayed", report.replayed),
                });
            }
            let cert = certify(&cfg);
            if let Some(dir) = oracle {
                let m = exact_motion_with_cap(&cfg, cli.cap.unwrap_or(AUT_CAP))?;
                if let Some(b) = cert.best_bound() {
                    if m.exact && b > int(m.motion) {
                        fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.clone(), source })?;
                        write(&dir.join("input.ccf"), &ccf::write(&cfg))?;
                        write(&dir.join("certificate.json"), &serde_json::to_string_pretty(&cert).expect("serializable"))?;
                        return Err(CliError::Soundness(format!(
                            "bound {} exceeds motion {}; bundle in {}",
                            fmt_rational(&b),
                            m.motion,
                            dir.display()
                        )));
                    }
                }
            }
            let full = serde_json::to_value(&cert).expect("serializable");
            let text = if *json {
                serde_json::to_string_pretty(&cert).expect("serializable")
            } else {
                let v = &cert.verdict;
                let mut t = match v.kind {
                    VerdictKind::Exceptional => format!("Exceptional({:?})", v.family.expect("family")),
                    VerdictKind::MotionAtLeast => format!("MotionAtLeast({})", fmt_rational(&v.bound().expect("bound"))),
                    VerdictKind::Inconclusive => format!("Inconclusive({})", v.reason.clone().unwrap_or_default()),
                };
                if let (Some(b), VerdictKind::Exceptional) = (v.bound(), v.kind) {
                    t.push_str(&format!(" best bound {}", fmt_rational(&b)));
                }
                t.push_str(&format!("\nbranch {:?}, {} steps", cert.branch, cert.steps.len()));
                for s in &cert.steps {
                    let b = s.bound.as_ref().map(fmt_rational).unwrap_or_else(|| "-".into());
                    t.push_str(&format!("\n  {:<36} bound {:<10} {}", s.rule, b, s.conclusion));
                }
                t
            };
            Ok(Report { json: full, text })
        }
        Cmd::Motion { file, exact } => {
            let cfg = load(cli, file)?;
            if *exact {
                let m = exact_motion_with_cap(&cfg, cli.cap.unwrap_or(AUT_CAP))?;
                let text = if m.exact { m.motion.to_string() } else { format!("<= {} (search budget exhausted)", m.motion) };
                return Ok(Report { json: serde_json::to_value(m).expect("serializable"), text });
            }
            let cert = certify(&cfg);
            let b = cert.best_bound();
            Ok(Report {
                json: json!({ "lower_bound": b.as_ref().map(fmt_rational) }),
                text: match b {
                    Some(b) => format!(">= {}", fmt_rational(&b)),
                    None => "no bound".into(),
                },
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&r.json).expect("serializable")),
                Format::Text => println!("{}", r.text),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
