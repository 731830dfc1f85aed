//! Topological analysis of word-embedding trajectories.
//!
//! A document is turned into a sequence of word vectors, projected onto a
//! random unit direction to obtain a scalar series, delay-embedded into a
//! point cloud, and summarized by Vietoris-Rips persistent homology. The
//! crate also ships a baseline that runs persistence directly on the raw
//! word vectors, plus diagram post-processing (noise thresholds, summary
//! statistics, persistence images) and a batch pipeline with a reproducible
//! JSON report.
//!
//! The main entry points are [`pipeline::run`] for the full pipeline and the
//! individual stages in [`embedding`], [`signal`], [`tda`] and [`features`].

pub mod embedding;
pub mod error;
pub mod features;
pub mod io;
pub mod pipeline;
pub mod signal;
pub mod tda;

pub use error::{Error, ErrorKind, Result};
