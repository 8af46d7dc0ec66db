//! Decision procedures for functions on finite combinatorial cubes.
//!
//! A *combinatorial cube* is a product `X_0 × … × X_{d-1}` of finite sets; a
//! function `f` on the cube assigns each point a value from a finite codomain.
//! This crate decides, at finite scale, the dichotomy between two structural
//! outcomes for such a function:
//!
//! * **Grid partitions** ([`dependence`]): per-coordinate partitions of the
//!   `X_i` into `k` blocks such that inside every cell (a product of one
//!   block per coordinate) the function depends on at most one coordinate.
//!   The module verifies candidate partitions, searches for the minimal
//!   block count `k_min`, and produces certificates.
//! * **Witness chains** ([`witness`]): an ordered split `(u, v)` of the
//!   coordinates and sequences `(x_m)`, `(y_m)` with
//!   `f(x_l ⌢ y_l) ≠ f(x_m ⌢ y_n)` for every `l` and every `m < n`.
//!   The module verifies chains and searches for the longest one, `L_max`.
//!
//! The two outcomes exclude each other quantitatively: a verified `k`-block
//! grid partition forces every witness chain to have length at most `k^d`
//! (pigeonhole on pairs of cells). The [`harness`](analysis) side of the
//! crate scans instance spaces for that bound and measures the empirical
//! threshold `N(d, k)` relating the two quantities.
//!
//! [`ramsey`] implements the triple colorings `h` and `h'` together with the
//! homogeneous-subset searches that extract a clean witness chain from a
//! sequence satisfying one of two weaker patterns, and [`corpus`] generates
//! the structured instance families used throughout (diagonal, Russell-pair,
//! triangular, patchwork, random).
//!
//! Heavy scans are data-parallel via rayon when the default `parallel`
//! feature is enabled; disabling it yields a sequential build with identical
//! output bytes (see [`exec`]).

pub mod analysis;
pub mod cli;
pub mod corpus;
pub mod dependence;
pub mod exec;
pub mod explore;
pub mod ramsey;
pub mod report;
pub mod rng;
pub mod table;
pub mod witness;

pub use analysis::{analyze_table, AnalysisReport, Budgets};
pub use dependence::{
    box_dependence, find_grid_partition, greedy_partition, min_partition_size,
    verify_grid_partition, CellDependence, DependenceStatus, FindPartition, GridPartition,
    MinPartition, SubCube,
};
pub use explore::{empirical_n, exclusivity_scan, EmpiricalNReport, SpaceMode, SpaceSpec};
pub use table::{load_table, save_table, table_hash, FunctionTable, Violation};
pub use witness::{
    greedy_chain, longest_chain, longest_chain_for_split, verify_chain, ChainSearch,
    CoordinateSplit, LongestChain, SearchBudget, WitnessChain,
};

/// Crate-wide error type.
///
/// Invariant violations found by [`table::FunctionTable::validate`] are data,
/// not errors; everything that rejects an *input* outright lands here.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A precondition on an operation input does not hold.
    #[error("invalid input: {0}")]
    Input(String),
    /// A document failed to parse or violated a field invariant.
    #[error("parse error in field `{field}`: {reason}")]
    Parse { field: String, reason: String },
    /// Underlying JSON syntax error.
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    /// CSV encoding error.
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    /// Filesystem error.
    #[error(transparent)]
    Io(#[from] std::io::Error),
    /// An internal consistency check failed; indicates a bug in this crate.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
