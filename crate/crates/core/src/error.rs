use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Color;

/// Two pairs of the same color whose color-path counts disagree.
///
/// `reference` is the first pair of color `t` in row-major order and
/// `offender` the first pair of that color whose count of `(i, j)` paths
/// differs from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoherenceWitness {
    pub i: Color,
    pub j: Color,
    pub t: Color,
    pub reference: (usize, usize),
    pub reference_count: u64,
    pub offender: (usize, usize),
    pub offender_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("empty matrix")]
    Empty,
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("n = {n} exceeds cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("rank {rank} exceeds the dense tensor cap {cap}")]
    RankTooLarge { rank: usize, cap: usize },
    #[error("color {color} appears on the diagonal at vertex {vertex} and off it at ({u}, {v})")]
    VertexEdgeColorClash {
        color: Color,
        vertex: usize,
        u: usize,
        v: usize,
    },
    #[error(
        "pairing undefined for color {color}: ({u1},{v1}) reverses to {c1} but ({u2},{v2}) reverses to {c2}"
    )]
    PairingUndefined {
        color: Color,
        u1: usize,
        v1: usize,
        c1: Color,
        u2: usize,
        v2: usize,
        c2: Color,
    },
    #[error("color id {color} is unused (ids must cover 0..{rank})")]
    UnusedColorId { color: Color, rank: usize },
    #[error(
        "not coherent: p[{i}][{j}][{t}] is {} at {:?} but {} at {:?}",
        .0.reference_count, .0.reference, .0.offender_count, .0.offender,
        i = .0.i, j = .0.j, t = .0.t
    )]
    NotCoherent(Box<CoherenceWitness>),
    #[error("configuration is not homogeneous")]
    NotHomogeneous,
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("color {color} out of range for rank {rank}")]
    ColorOutOfRange { color: Color, rank: usize },
}
