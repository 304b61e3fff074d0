//! Textual family specifications such as `johnson 7 2` or `line petersen`.

use std::fmt;

use cc_core::{Configuration, Graph};
use serde::{Deserialize, Serialize};

use crate::{
    bad, gen_complete, gen_crown, gen_cycle, gen_hamming_with_cap, gen_johnson_with_cap, gen_paley,
    line_graph_scheme, drg_to_scheme, FamilyError,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaseGraph {
    Petersen,
    Heawood,
    CompleteBipartite(usize, usize),
    Cycle(usize),
}

impl BaseGraph {
    pub fn graph(&self) -> Graph {
        match *self {
            BaseGraph::Petersen => Graph::petersen(),
            BaseGraph::Heawood => Graph::heawood(),
            BaseGraph::CompleteBipartite(a, b) => Graph::complete_bipartite(a, b),
            BaseGraph::Cycle(n) => Graph::cycle(n),
        }
    }
}

impl fmt::Display for BaseGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseGraph::Petersen => write!(f, "petersen"),
            BaseGraph::Heawood => write!(f, "heawood"),
            BaseGraph::CompleteBipartite(a, b) => write!(f, "kmn {a} {b}"),
            BaseGraph::Cycle(n) => write!(f, "cycle {n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilySpec {
    Johnson { m: usize, d: usize },
    Hamming { d: usize, m: usize },
    Triangular(usize),
    Lattice(usize),
    Crown(usize),
    Cycle(usize),
    Complete(usize),
    Paley(usize),
    LineOfTriangleFree(BaseGraph),
    DrgScheme(BaseGraph),
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Johnson { m, d } => write!(f, "johnson {m} {d}"),
            FamilySpec::Hamming { d, m } => write!(f, "hamming {d} {m}"),
            FamilySpec::Triangular(s) => write!(f, "triangular {s}"),
            FamilySpec::Lattice(s) => write!(f, "lattice {s}"),
            FamilySpec::Crown(s) => write!(f, "crown {s}"),
            FamilySpec::Cycle(n) => write!(f, "cycle {n}"),
            FamilySpec::Complete(n) => write!(f, "complete {n}"),
            FamilySpec::Paley(q) => write!(f, "paley {q}"),
            FamilySpec::LineOfTriangleFree(b) => write!(f, "line {b}"),
            FamilySpec::DrgScheme(b) => write!(f, "drg {b}"),
        }
    }
}

/// Parse whitespace-separated tokens, e.g. `hamming 2 3`, `line kmn 3 3`.
pub fn parse_family_spec(text: &str) -> Result<FamilySpec, FamilyError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let (&name, args) = tokens.split_first().ok_or_else(|| bad("empty family spec"))?;
    let num = |i: usize| -> Result<usize, FamilyError> {
        args.get(i)
            .ok_or_else(|| bad(format!("{name}: missing parameter {}", i + 1)))?
            .parse::<usize>()
            .map_err(|_| bad(format!("{name}: parameter {} is not a nonnegative integer", i + 1)))
    };
    let arity = |k: usize| -> Result<(), FamilyError> {
        if args.len() == k {
            Ok(())
        } else {
            Err(bad(format!("{name} takes {k} parameters, got {}", args.len())))
        }
    };
    let base = |rest: &[&str]| -> Result<BaseGraph, FamilyError> {
        let n = |i: usize| -> Result<usize, FamilyError> {
            rest.get(i)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("base graph parameter missing or malformed"))
        };
        let (g, used) = match rest.first().copied() {
            Some("petersen") => (BaseGraph::Petersen, 1),
            Some("heawood") => (BaseGraph::Heawood, 1),
            Some("k33") => (BaseGraph::CompleteBipartite(3, 3), 1),
            Some("kmn") => (BaseGraph::CompleteBipartite(n(1)?, n(2)?), 3),
            Some("cycle") => (BaseGraph::Cycle(n(1)?), 2),
            _ => return Err(bad("base graph must be petersen, heawood, k33, kmn A B or cycle N")),
        };
        if rest.len() != used {
            return Err(bad("trailing tokens after base graph"));
        }
        if let BaseGraph::CompleteBipartite(a, b) = g {
            if a == 0 || b == 0 || a + b > 256 {
                return Err(bad("kmn sides must be in 1..=255"));
            }
        }
        if let BaseGraph::Cycle(c) = g {
            if !(3..=4096).contains(&c) {
                return Err(bad("cycle length must be in 3..=4096"));
            }
        }
        Ok(g)
    };
    let spec = match name {
        "johnson" => {
            arity(2)?;
            FamilySpec::Johnson { m: num(0)?, d: num(1)? }
        }
        "hamming" => {
            arity(2)?;
            FamilySpec::Hamming { d: num(0)?, m: num(1)? }
        }
        "triangular" => {
            arity(1)?;
            FamilySpec::Triangular(num(0)?)
        }
        "lattice" => {
            arity(1)?;
            FamilySpec::Lattice(num(0)?)
        }
        "crown" => {
            arity(1)?;
            FamilySpec::Crown(num(0)?)
        }
        "cycle" => {
            arity(1)?;
            FamilySpec::Cycle(num(0)?)
        }
        "complete" => {
            arity(1)?;
            FamilySpec::Complete(num(0)?)
        }
        "paley" => {
            arity(1)?;
            FamilySpec::Paley(num(0)?)
        }
        "line" => FamilySpec::LineOfTriangleFree(base(args)?),
        "drg" => FamilySpec::DrgScheme(base(args)?),
        other => return Err(bad(format!("unknown family {other:?}"))),
    };
    Ok(spec)
}

impl FamilySpec {
    /// The generated corpus: Johnson `m <= 9, d <= 3`, Hamming `d <= 3,
    /// m <= 4`, `T(s)` and `L2(s)` for `s <= 12`, line-graph schemes of the
    /// Petersen graph, `K_{3,3}` and the Heawood graph, cycles up to 20, and
    /// a few Paley graphs.
    pub fn corpus() -> Vec<FamilySpec> {
        let mut out = Vec::new();
        for d in 1..=3 {
            for m in (2 * d).max(3)..=9 {
                out.push(FamilySpec::Johnson { m, d });
            }
        }
        for d in 1..=3 {
            for m in 2..=4 {
                out.push(FamilySpec::Hamming { d, m });
            }
        }
        out.extend((4..=12).map(FamilySpec::Triangular));
        out.extend((2..=12).map(FamilySpec::Lattice));
        for b in [BaseGraph::Petersen, BaseGraph::CompleteBipartite(3, 3), BaseGraph::Heawood] {
            out.push(FamilySpec::LineOfTriangleFree(b));
        }
        out.extend((3..=20).map(FamilySpec::Cycle));
        out.extend([5, 13, 17, 29].map(FamilySpec::Paley));
        out
    }

    /// Build the configuration, refusing instances with more than `cap` points.
    pub fn build(&self, cap: usize) -> Result<Configuration, FamilyError> {
        let guard = |n: usize| {
            if n > cap {
                Err(FamilyError::TooLarge { n, cap })
            } else {
                Ok(())
            }
        };
        match *self {
            FamilySpec::Johnson { m, d } => gen_johnson_with_cap(m, d, cap),
            FamilySpec::Hamming { d, m } => gen_hamming_with_cap(d, m, cap),
            FamilySpec::Triangular(s) => {
                if s < 4 {
                    return Err(bad("triangular needs s >= 4"));
                }
                gen_johnson_with_cap(s, 2, cap)
            }
            FamilySpec::Lattice(s) => {
                if s < 2 {
                    return Err(bad("lattice needs s >= 2"));
                }
                gen_hamming_with_cap(2, s, cap)
            }
            FamilySpec::Crown(s) => {
                guard(s.saturating_mul(2))?;
                gen_crown(s)
            }
            FamilySpec::Cycle(n) => {
                guard(n)?;
                gen_cycle(n)
            }
            FamilySpec::Complete(n) => {
                guard(n)?;
                gen_complete(n)
            }
            FamilySpec::Paley(q) => {
                guard(q)?;
                gen_paley(q)
            }
            FamilySpec::LineOfTriangleFree(ref b) => {
                let g = b.graph();
                guard(g.edge_count())?;
                Ok(line_graph_scheme(&g)?.config)
            }
            FamilySpec::DrgScheme(ref b) => {
                let g = b.graph();
                guard(g.n())?;
                Ok(drg_to_scheme(&g)?.config)
            }
        }
    }
}
