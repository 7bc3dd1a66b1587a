//! Document coherence from bipartite sentence–entity graphs.
//!
//! The crate turns entity grids into two-mode graphs, scores them with clustering,
//! redundancy and linkage coefficients, evaluates the scores with a sentence-swap
//! protocol, and uses them as a query-independent prior to rerank retrieval runs.
//!
//! Coherence metrics are generic over [`Scalar`]; the aliases below fix the common
//! instantiations.

mod bitset;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod grid;
pub mod ir_eval;
pub mod metrics;
pub mod permutation;
pub mod rerank;
pub mod run;
pub mod scalar;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use graph::{BipartiteGraph, ProjectionEdge, SentenceProjection};
pub use grid::{
    apply_order, canonicalize_entity, filter_roles, looks_like_grid_tsv, parse_annotated_text,
    parse_grid_tsv, serialize_grid_tsv, EntityGrid, Permutation, PermutedGrid, Role, RoleSet,
};
pub use ir_eval::{parse_qrels, Measure, MeasureResult, Qrels};
pub use metrics::{CoherenceReport, Metric, MetricScores};
pub use permutation::{AccuracyCurve, PermutationConfig, SwapPlan};
pub use rerank::{
    cross_validate, rerank, CvConfig, CvReport, ParameterGrid, TransformConfig, TransformKind,
};
pub use run::{parse_run, parse_score_table, RunEntry, RunFile, ScoreTable};
pub use scalar::Scalar;

/// Exact rational scores.
pub type Exact = num_rational::Ratio<i64>;

pub type Report = CoherenceReport<f64>;
pub type ExactReport = CoherenceReport<Exact>;
pub type Scores = MetricScores<f64>;
pub type ExactScores = MetricScores<Exact>;

pub type Transform = TransformConfig<f64>;
