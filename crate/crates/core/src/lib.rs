//! Forbidden configurations in uniform hypergraphs: the Q_k(r) and I_k(i)
//! patterns, their detectors and certificates, the number-theoretic inputs
//! (k-good sets, AP-free sets, packings), lower-bound constructions, and an
//! exact Turán-number oracle for small cases.

pub mod budget;
pub mod cli;
mod comb;
pub mod constructions;
pub mod error;
pub mod hypercore;
pub mod numbers;
pub mod patterns;
mod setmap;
pub mod turan;

pub use budget::Budget;
pub use comb::{binomial, colex_rank, factorial, Combinations};
pub use error::{Error, Result};
pub use hypercore::{Hypergraph, Partition, VertexSet};
