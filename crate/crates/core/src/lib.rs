//! Life-Like network automata on complex networks.
//!
//! The crate evolves binary automata whose tessellation is an undirected
//! network, records the state and neighbor-density time-evolution patterns
//! (TEP, D-TEP, SD-TEP), turns them into normalized histogram feature
//! vectors and classifies networks with repeated stratified cross-validation.
//!
//! Pipeline, bottom-up:
//!
//! - [`graph`]: the immutable [`Network`] type and edge-list ingestion.
//! - [`netgen`]: synthetic generators, noise perturbation and labeled datasets.
//! - [`llna`]: rules, the density/transition step and evolution records.
//! - [`features`]: global, degree and temporal histograms and the combined vectors.
//! - [`classify`]: standardization, linear SVM, k-NN, cross-validation, rule search.
//! - [`pipeline`]: parallel feature extraction and the on-disk file formats.

pub mod classify;
pub mod error;
pub mod features;
pub mod graph;
pub mod llna;
pub mod manifest;
pub mod netgen;
pub mod pipeline;
pub mod seed;

pub use error::{Error, Result};
pub use graph::Network;
pub use llna::{EvolutionRecord, Rule};
