//! Whole-table analysis: the `(k_min, L_max)` profile.
//!
//! One call runs both sides of the dichotomy on a table — minimal grid
//! partition and longest witness chain — and packages the results with
//! re-verifiable certificates. The report is deterministic for fixed
//! budgets: node caps are per-search, certificates are canonical, and wall
//! time is filled in by callers that opt into it rather than measured here.

use serde::Serialize;

use crate::dependence::{min_partition_size, GridPartition};
use crate::exec::ExecMode;
use crate::table::{table_hash, FunctionTable};
use crate::witness::{longest_chain_with_mode, SearchBudget, WitnessChain};
use crate::{Error, Result};

/// Node budgets for the two searches.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Budgets {
    pub partition: SearchBudget,
    pub chain: SearchBudget,
}

/// One split's contribution to the chain search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitSummary {
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    pub length: usize,
    pub exact: bool,
    pub nodes: u64,
}

/// Everything `analyze` reports about one table.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    /// SHA-256 of the canonical table serialization.
    pub table_hash: String,
    pub domain_sizes: Vec<usize>,
    pub codomain_size: usize,
    pub k_min: usize,
    pub k_exact: bool,
    /// Verifying partition witnessing `k_min` (or the inexact upper bound).
    pub partition: GridPartition,
    pub l_max: usize,
    pub l_exact: bool,
    /// Best chain found; absent only for arity-1 tables.
    pub best_chain: Option<WitnessChain>,
    pub no_split: bool,
    pub per_split: Vec<SplitSummary>,
    pub partition_nodes: u64,
    pub chain_nodes: u64,
    /// Budgets the searches ran under, for re-deriving the exact flags.
    pub budgets: Budgets,
    /// Filled by callers that asked to time the run; omitted by default so
    /// that identical inputs give identical report bytes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

/// Runs both searches on one table.
pub fn analyze_table(table: &FunctionTable, budgets: Budgets) -> Result<AnalysisReport> {
    analyze_table_with_mode(table, budgets, ExecMode::default())
}

/// [`analyze_table`] with an explicit execution mode for the chain search.
pub fn analyze_table_with_mode(
    table: &FunctionTable,
    budgets: Budgets,
    mode: ExecMode,
) -> Result<AnalysisReport> {
    let violations = table.validate();
    if let Some(v) = violations.first() {
        return Err(Error::input(format!("invalid table: {v}")));
    }
    let partition = min_partition_size(table, budgets.partition);
    let chains = longest_chain_with_mode(table, budgets.chain, mode)?;
    Ok(AnalysisReport {
        table_hash: table_hash(table),
        domain_sizes: table.domain_sizes.clone(),
        codomain_size: table.codomain_size,
        k_min: partition.k_min,
        k_exact: partition.exact,
        partition: partition.certificate,
        l_max: chains.l_max,
        l_exact: chains.exact,
        best_chain: chains.best,
        no_split: chains.no_split,
        per_split: chains
            .per_split
            .into_iter()
            .map(|r| SplitSummary {
                u: r.split.u().to_vec(),
                v: r.split.v().to_vec(),
                length: r.length,
                exact: r.exact,
                nodes: r.nodes,
            })
            .collect(),
        partition_nodes: partition.nodes,
        chain_nodes: chains.nodes,
        budgets,
        wall_ms: None,
    })
}
