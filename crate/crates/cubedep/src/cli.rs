//! The `cubedep` command-line interface.
//!
//! Thin argument plumbing over the library: every subcommand loads or
//! generates a table, calls one library entry point, and renders the result.
//! Exit codes are part of the contract — 0 success, 1 input or usage error,
//! 2 when `--require-exact` is set and a budget ran out before the answer
//! was proven.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{analyze_table_with_mode, Budgets};
use crate::corpus;
use crate::dependence::{find_grid_partition, GridPartition};
use crate::exec::ExecMode;
use crate::explore::{
    empirical_from_profiles, exclusivity_from_profiles, profile_space, EmpiricalNReport,
    ExclusivityReport, SpaceMode, SpaceSpec, SweepBudgets,
};
use crate::ramsey::{extract_chain, ExtractionCase, PatternInput, PatternKind};
use crate::report::{self, ReportFormat};
use crate::table::{load_table, save_table, FunctionTable};
use crate::witness::{
    longest_chain_for_split, longest_chain_with_mode, CoordinateSplit, SearchBudget, WitnessChain,
};
use crate::{Error, Result};

const EXIT_OK: i32 = 0;
const EXIT_INPUT: i32 = 1;
const EXIT_INEXACT: i32 = 2;

/// Decision procedures for functions on finite combinatorial cubes.
#[derive(Debug, Parser)]
#[command(name = "cubedep", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> ReportFormat {
        match f {
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Text => ReportFormat::Text,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PatternArg {
    P5,
    P4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full profile of one table: k_min and L_max with certificates.
    Analyze {
        /// Table JSON file.
        #[arg(long)]
        input: PathBuf,
        /// Node cap for each fixed-k partition search.
        #[arg(long, default_value_t = SearchBudget::DEFAULT_NODE_CAP)]
        k_budget: u64,
        /// Node cap for each per-split chain search.
        #[arg(long, default_value_t = SearchBudget::DEFAULT_NODE_CAP)]
        chain_budget: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        /// Exit 2 unless both answers are proven within budget.
        #[arg(long)]
        require_exact: bool,
        #[command(flatten)]
        common: CommonFlags,
        /// Measure and report wall time (makes output bytes run-dependent).
        #[arg(long)]
        timings: bool,
    },
    /// Search for a verifying grid partition with exactly k blocks.
    Partition {
        #[arg(long)]
        input: PathBuf,
        /// Block count to try.
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = SearchBudget::DEFAULT_NODE_CAP)]
        budget: u64,
        /// Exit 2 if the search was cut off before an answer was proven.
        #[arg(long)]
        require_exact: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Longest witness chain, over all splits or one fixed split.
    Witness {
        #[arg(long)]
        input: PathBuf,
        /// Bitmask choosing u: bit i set puts coordinate i on the u side.
        #[arg(long)]
        split: Option<u64>,
        #[arg(long, default_value_t = SearchBudget::DEFAULT_NODE_CAP)]
        budget: u64,
        /// Exit 2 if any split's search was cut off.
        #[arg(long)]
        require_exact: bool,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Extract a verified chain from a pattern-(5) or pattern-(4) sequence.
    Extract {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        pattern: PatternArg,
        /// u-tuples: coordinates comma-separated, tuples semicolon-separated.
        #[arg(long)]
        xs: String,
        /// v-tuples, same syntax as --xs.
        #[arg(long)]
        ys: String,
        /// Split bitmask the sequences live on.
        #[arg(long, default_value_t = 1)]
        split: u64,
        #[arg(long, default_value_t = SearchBudget::DEFAULT_NODE_CAP)]
        budget: u64,
        /// Include pipeline sizes (H, refined set, case) in the output.
        #[arg(long)]
        trace: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Write a generated table to a JSON file.
    Corpus {
        #[command(subcommand)]
        family: CorpusFamily,
    },
    /// Sweep a table space: per-table CSV plus empirical-N summary.
    Explore {
        /// Domain sizes, comma-separated (e.g. 3,3).
        #[arg(long)]
        sizes: String,
        #[arg(long)]
        codomain: usize,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Sample count (random mode only).
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Inclusive k range, e.g. 1..3.
        #[arg(long)]
        k_range: String,
        /// Destination for the per-table CSV.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = SearchBudget::DEFAULT_NODE_CAP)]
        k_budget: u64,
        #[arg(long, default_value_t = SearchBudget::DEFAULT_NODE_CAP)]
        chain_budget: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        /// Exit 2 if any table's profile is budget-limited.
        #[arg(long)]
        require_exact: bool,
        /// Run single-threaded regardless of the build's default.
        #[arg(long)]
        sequential: bool,
    },
}

/// Flags shared by the subcommands that run searches and emit a document.
#[derive(Debug, Args)]
struct CommonFlags {
    /// Run single-threaded regardless of the build's default.
    #[arg(long)]
    sequential: bool,
    /// Write the report here instead of stdout.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum CorpusFamily {
    /// n×n table, 0 on the diagonal and 1 off it.
    Diagonal {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// 2p×2p table vanishing exactly on its matched pairs.
    Russell {
        /// Number of matched pairs.
        #[arg(long)]
        pairs: usize,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// n×n table, 0 on or below the diagonal.
    Triangular {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Uniformly random table.
    Random {
        #[arg(long)]
        sizes: String,
        #[arg(long)]
        codomain: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Random table verifying a random k-block partition by construction;
    /// the partition is printed to stdout.
    Patchwork {
        #[arg(long)]
        sizes: String,
        /// Block count of the hidden partition.
        #[arg(long)]
        blocks: usize,
        #[arg(long)]
        codomain: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Table depending on one coordinate through an explicit map.
    Single {
        #[arg(long)]
        sizes: String,
        /// The coordinate the table depends on.
        #[arg(long)]
        coord: usize,
        /// Value per element of that coordinate, comma-separated.
        #[arg(long)]
        map: String,
        #[arg(long)]
        codomain: usize,
        #[arg(short, long)]
        out: PathBuf,
    },
}

/// Parses argv and runs the command, translating every outcome into an exit
/// code. Never panics on bad input; clap usage errors land on exit 1.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Analyze {
            input,
            k_budget,
            chain_budget,
            format,
            require_exact,
            common,
            timings,
        } => {
            let table = read_table(&input)?;
            let budgets = Budgets {
                partition: SearchBudget::nodes(k_budget),
                chain: SearchBudget::nodes(chain_budget),
            };
            let started = Instant::now();
            let mut analysis =
                analyze_table_with_mode(&table, budgets, exec_mode(common.sequential))?;
            if timings {
                analysis.wall_ms = Some(started.elapsed().as_millis() as u64);
            }
            emit(
                &common.out,
                &report::render_analysis(&analysis, format.into())?,
            )?;
            Ok(exact_code(
                require_exact,
                analysis.k_exact && analysis.l_exact,
            ))
        }
        Command::Partition {
            input,
            k,
            budget,
            require_exact,
            out,
        } => {
            let table = read_table(&input)?;
            let found = find_grid_partition(&table, k, SearchBudget::nodes(budget))?;
            let output = PartitionOutput {
                k,
                found: found.partition.is_some(),
                exact: found.exact,
                nodes: found.nodes,
                partition: found.partition,
            };
            emit(&out, &report::to_json(&output)?)?;
            Ok(exact_code(require_exact, output.exact))
        }
        Command::Witness {
            input,
            split,
            budget,
            require_exact,
            common,
        } => {
            let table = read_table(&input)?;
            let budget = SearchBudget::nodes(budget);
            let output = match split {
                Some(mask) => {
                    let split = CoordinateSplit::from_mask(mask, table.arity)?;
                    let found = longest_chain_for_split(&table, &split, budget)?;
                    WitnessOutput {
                        l_max: found.chain.len(),
                        exact: found.exact,
                        no_split: false,
                        nodes: found.nodes,
                        chain: Some(found.chain),
                    }
                }
                None => {
                    let found =
                        longest_chain_with_mode(&table, budget, exec_mode(common.sequential))?;
                    WitnessOutput {
                        l_max: found.l_max,
                        exact: found.exact,
                        no_split: found.no_split,
                        nodes: found.nodes,
                        chain: found.best,
                    }
                }
            };
            emit(&common.out, &report::to_json(&output)?)?;
            Ok(exact_code(require_exact, output.exact))
        }
        Command::Extract {
            input,
            pattern,
            xs,
            ys,
            split,
            budget,
            trace,
            out,
        } => {
            let table = read_table(&input)?;
            let split = CoordinateSplit::from_mask(split, table.arity)?;
            let kind = match pattern {
                PatternArg::P5 => PatternKind::P5,
                PatternArg::P4 => PatternKind::P4,
            };
            let input =
                PatternInput::new(table, split, parse_tuples(&xs)?, parse_tuples(&ys)?, kind)?;
            let extraction = extract_chain(&input, SearchBudget::nodes(budget))?;
            let output = ExtractOutput {
                length: extraction.chain.len(),
                exact: extraction.exact,
                trace: trace.then(|| ExtractTrace {
                    h_size: extraction.h_homogeneous.len(),
                    refined_size: extraction.refined.len(),
                    case: match extraction.case {
                        ExtractionCase::AllEqual => "all-equal",
                        ExtractionCase::AllDistinct => "all-distinct",
                    },
                    zero_homogeneous_size: extraction.zero_homogeneous.as_ref().map(Vec::len),
                    final_length: extraction.chain.len(),
                }),
                chain: extraction.chain,
            };
            emit(&out, &report::to_json(&output)?)?;
            Ok(EXIT_OK)
        }
        Command::Corpus { family } => {
            let (table, path, partition) = build_corpus(family)?;
            std::fs::write(&path, save_table(&table))?;
            if let Some(part) = partition {
                let mut bytes = part.to_json();
                bytes.push(b'\n');
                std::io::stdout().write_all(&bytes)?;
            }
            Ok(EXIT_OK)
        }
        Command::Explore {
            sizes,
            codomain,
            mode,
            samples,
            seed,
            k_range,
            out,
            k_budget,
            chain_budget,
            format,
            require_exact,
            sequential,
        } => {
            let sizes = parse_sizes(&sizes)?;
            let mode = match mode {
                ModeArg::Exhaustive => SpaceMode::Exhaustive,
                ModeArg::Random => SpaceMode::Random {
                    samples: samples
                        .ok_or_else(|| Error::input("--mode random requires --samples"))?,
                    seed,
                },
            };
            let spec = SpaceSpec {
                sizes,
                codomain,
                mode,
            };
            let (k_lo, k_hi) = parse_k_range(&k_range)?;
            let budgets = SweepBudgets {
                partition: SearchBudget::nodes(k_budget),
                chain: SearchBudget::nodes(chain_budget),
            };
            let profiles = profile_space(&spec, budgets, exec_mode(sequential))?;
            std::fs::write(&out, report::profiles_csv(&profiles)?)?;
            let empirical = EmpiricalNReport {
                arity: spec.sizes.len(),
                sizes: spec.sizes.clone(),
                codomain: spec.codomain,
                space: spec.describe(),
                rows: empirical_from_profiles(&profiles, k_lo, k_hi),
            };
            let exclusivity =
                exclusivity_from_profiles(spec.describe(), spec.sizes.len(), &profiles);
            if !exclusivity.violations.is_empty() {
                eprintln!(
                    "warning: {} exclusivity violations — the bound L_max <= k_min^d is \
                     proven, so this indicates a bug in the searches",
                    exclusivity.violations.len()
                );
            }
            let all_exact = profiles.iter().all(|p| p.k_exact && p.l_exact);
            let bytes = match ReportFormat::from(format) {
                ReportFormat::Json => report::to_json(&ExploreOutput {
                    empirical,
                    exclusivity,
                })?,
                ReportFormat::Csv => report::empirical_csv(&empirical)?,
                ReportFormat::Text => {
                    let mut text = report::empirical_text(&empirical);
                    let line = format!(
                        "exclusivity: {} tables checked, {} violations\n",
                        exclusivity.checked,
                        exclusivity.violations.len()
                    );
                    text.extend_from_slice(line.as_bytes());
                    text
                }
            };
            std::io::stdout().write_all(&bytes)?;
            Ok(exact_code(require_exact, all_exact))
        }
    }
}

#[derive(Debug, Serialize)]
struct PartitionOutput {
    k: usize,
    found: bool,
    exact: bool,
    nodes: u64,
    partition: Option<GridPartition>,
}

#[derive(Debug, Serialize)]
struct WitnessOutput {
    l_max: usize,
    exact: bool,
    no_split: bool,
    nodes: u64,
    chain: Option<WitnessChain>,
}

#[derive(Debug, Serialize)]
struct ExtractTrace {
    h_size: usize,
    refined_size: usize,
    case: &'static str,
    zero_homogeneous_size: Option<usize>,
    final_length: usize,
}

#[derive(Debug, Serialize)]
struct ExtractOutput {
    length: usize,
    exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<ExtractTrace>,
    chain: WitnessChain,
}

#[derive(Debug, Serialize)]
struct ExploreOutput {
    empirical: EmpiricalNReport,
    exclusivity: ExclusivityReport,
}

fn build_corpus(family: CorpusFamily) -> Result<(FunctionTable, PathBuf, Option<GridPartition>)> {
    match family {
        CorpusFamily::Diagonal { n, out } => Ok((corpus::diagonal_table(n)?, out, None)),
        CorpusFamily::Russell { pairs, out } => Ok((corpus::russell_table(pairs)?, out, None)),
        CorpusFamily::Triangular { n, out } => Ok((corpus::triangular_table(n)?, out, None)),
        CorpusFamily::Random {
            sizes,
            codomain,
            seed,
            out,
        } => Ok((
            corpus::random_table(&parse_sizes(&sizes)?, codomain, seed)?,
            out,
            None,
        )),
        CorpusFamily::Patchwork {
            sizes,
            blocks,
            codomain,
            seed,
            out,
        } => {
            let (table, partition) =
                corpus::random_patchwork(&parse_sizes(&sizes)?, blocks, codomain, seed)?;
            Ok((table, out, Some(partition)))
        }
        CorpusFamily::Single {
            sizes,
            coord,
            map,
            codomain,
            out,
        } => {
            let g = parse_usize_list(&map)?;
            Ok((
                corpus::single_coordinate_table(&parse_sizes(&sizes)?, coord, &g, codomain)?,
                out,
                None,
            ))
        }
    }
}

fn read_table(path: &PathBuf) -> Result<FunctionTable> {
    let bytes = std::fs::read(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    load_table(&bytes)
}

fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn exec_mode(sequential: bool) -> ExecMode {
    if sequential {
        ExecMode::Sequential
    } else {
        ExecMode::default()
    }
}

fn exact_code(require_exact: bool, exact: bool) -> i32 {
    if require_exact && !exact {
        EXIT_INEXACT
    } else {
        EXIT_OK
    }
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| Error::input(format!("expected a nonnegative integer, got {part:?}")))
        })
        .collect()
}

fn parse_sizes(s: &str) -> Result<Vec<usize>> {
    let sizes = parse_usize_list(s)?;
    if sizes.is_empty() {
        return Err(Error::input("at least one domain size is required"));
    }
    Ok(sizes)
}

/// `0,1;2,3` → `[[0,1],[2,3]]`.
fn parse_tuples(s: &str) -> Result<Vec<Vec<usize>>> {
    s.split(';').map(parse_usize_list).collect()
}

/// Inclusive `lo..hi` (or `lo..=hi`).
fn parse_k_range(s: &str) -> Result<(usize, usize)> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| Error::input(format!("expected a range like 1..3, got {s:?}")))?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let parse = |part: &str| {
        part.trim()
            .parse::<usize>()
            .map_err(|_| Error::input(format!("bad range bound {part:?} in {s:?}")))
    };
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if lo == 0 || lo > hi {
        return Err(Error::input(format!(
            "range {s:?} must satisfy 1 <= lo <= hi"
        )));
    }
    Ok((lo, hi))
}
