//! Coherent configurations on `n` points.
//!
//! A [`Configuration`] is an `n x n` matrix of color ids in which vertex
//! colors and edge colors are disjoint and the color of `(v, u)` is a fixed
//! function of the color of `(u, v)`. [`IntersectionTensor`] holds the counts
//! `p[i][j][t]` of a coherent one, together with degrees and the diagonal
//! colors. Everything downstream (refinement, spectra, certificates) reads
//! from these two types.

pub mod ccf;
mod config;
mod error;
pub mod graph;
pub mod rational;
mod tensor;

pub use config::{validate_configuration, validate_configuration_with_cap, Configuration, DEFAULT_N_CAP};
pub use error::{CoherenceWitness, CoreError};
pub use graph::Graph;
pub use rational::Rational;
pub use tensor::{
    check_coherence, intersection_tensor, order_by_degree, structural_flags, ConstituentStats,
    IntersectionTensor, StructuralFlags, TENSOR_RANK_CAP,
};

/// Color id. Ids of a configuration of rank `r` are exactly `0..r`.
pub type Color = u32;
