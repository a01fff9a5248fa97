//! Command-line front end.
//!
//! ```text
//! chaincover compute --algo {boosted|naive|mpc} --input F [--output F]
//! chaincover validate --graph F --chains F [--k K]
//! chaincover gen worst-case --k K --l L [--output F]
//! chaincover gen random --n N --p P --seed S [--output F]
//! chaincover bench --family {worst-case|random} --sizes LIST
//! ```
//!
//! Exit status: 0 on success, 1 for bad input (parse errors, cycles, bad
//! arguments, failed validation), 2 when the pipeline breaks one of its own
//! invariants.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::dag::{self, Dag};
use crate::flow::{decompose_to_mpc, min_flow, FlowError, FlowNetwork};
use crate::mcc::{extract_mcd, extract_mcd_naive, validate_mcd, validate_path_cover, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    /// Chain extraction over mergeable dictionaries.
    Boosted,
    /// Chain extraction over index lists.
    Naive,
    /// Minimum path cover by flow decomposition.
    Mpc,
}

impl Algorithm {
    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Boosted => "boosted",
            Algorithm::Naive => "naive",
            Algorithm::Mpc => "mpc-decompose",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    WorstCase,
    Random,
}

/// Measurements of one pipeline run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub algorithm: Algorithm,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub total_chain_length: usize,
    pub flow_ms: f64,
    pub extract_ms: f64,
    pub dict_ops: u64,
    /// Trie nodes visited (boosted) or indices moved (naive).
    pub dict_node_visits: u64,
}

impl RunSummary {
    pub const CSV_HEADER: &'static str =
        "algorithm,family,size,n,m,k,total_chain_length,flow_ms,extract_ms,dict_ops,dict_node_visits";

    pub fn csv_row(&self, family: &str, size: usize) -> String {
        format!(
            "{},{family},{size},{},{},{},{},{:.3},{:.3},{},{}",
            self.algorithm.tag(),
            self.n,
            self.m,
            self.k,
            self.total_chain_length,
            self.flow_ms,
            self.extract_ms,
            self.dict_ops,
            self.dict_node_visits
        )
    }
}

impl fmt::Display for RunSummary {
    /// A single-line JSON object.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{\"algorithm\":\"{}\",\"n\":{},\"m\":{},\"k\":{},\"total_length\":{},\
             \"flow_ms\":{:.3},\"extract_ms\":{:.3},\"dict_ops\":{},\"dict_node_visits\":{}}}",
            self.algorithm.tag(),
            self.n,
            self.m,
            self.k,
            self.total_chain_length,
            self.flow_ms,
            self.extract_ms,
            self.dict_ops,
            self.dict_node_visits
        )
    }
}

/// Why a pipeline run failed its own checks.
#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("extraction rejected the minimum flow: {0}")]
    Flow(#[from] FlowError),
    #[error("output failed validation: {0}")]
    Invalid(#[from] Violation),
}

/// Builds the reduction, solves minimum flow, extracts with `algorithm`,
/// and validates the result against `|f*|`.
pub fn run_pipeline(dag: &Dag, algorithm: Algorithm) -> Result<(Vec<Vec<usize>>, RunSummary), PipelineError> {
    let start = Instant::now();
    let network = FlowNetwork::build(dag);
    let flow = min_flow(&network);
    let flow_ms = start.elapsed().as_secs_f64() * 1e3;
    let k = flow.size(&network) as usize;

    let start = Instant::now();
    let (chains, dict_ops, visits) = match algorithm {
        Algorithm::Boosted | Algorithm::Naive => {
            let extraction = if algorithm == Algorithm::Boosted {
                extract_mcd(dag, &network, &flow)?
            } else {
                extract_mcd_naive(dag, &network, &flow)?
            };
            (
                extraction.chains.chains,
                extraction.stats.set_ops,
                extraction.stats.work,
            )
        }
        Algorithm::Mpc => (decompose_to_mpc(&network, &flow)?.paths, 0, 0),
    };
    let extract_ms = start.elapsed().as_secs_f64() * 1e3;

    match algorithm {
        Algorithm::Mpc => {
            validate_path_cover(dag, &chains)?;
            if chains.len() != k {
                return Err(Violation::WrongChainCount {
                    expected: k,
                    found: chains.len(),
                }
                .into());
            }
        }
        _ => validate_mcd(dag, &dag::ChainDecomposition::new(chains.clone()), k)?,
    }

    let summary = RunSummary {
        algorithm,
        n: dag.n(),
        m: dag.m(),
        k,
        total_chain_length: chains.iter().map(Vec::len).sum(),
        flow_ms,
        extract_ms,
        dict_ops,
        dict_node_visits: visits,
    };
    Ok((chains, summary))
}

#[derive(Debug, Parser)]
#[command(name = "chaincover", version, about = "Minimum chain decompositions of DAGs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute chains for a DAG given as an edge list.
    Compute {
        #[arg(long, value_enum, default_value = "boosted")]
        algo: Algorithm,
        #[arg(long)]
        input: PathBuf,
        /// Chains file; standard output when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check that a chains file is a minimum chain decomposition.
    Validate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        chains: PathBuf,
        /// Expected chain count; defaults to the width of the graph.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Generate a test instance.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Sweep instance sizes and print a CSV table of both extractors.
    Bench {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
}

#[derive(Debug, Subcommand)]
enum GenFamily {
    /// Sources funnelling through one path into sinks.
    WorstCase {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Random order, independent forward edges.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let rendered = err.render().to_string();
            let sink: &mut dyn Write = if err.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Compute { algo, input, output } => cmd_compute(&input, algo, output.as_deref(), stdout, stderr),
        Command::Validate { graph, chains, k } => cmd_validate(&graph, &chains, k, stdout),
        Command::Gen { family } => cmd_gen(family, stdout),
        Command::Bench { family, sizes } => cmd_bench(family, &sizes, stdout),
    };
    match outcome {
        Ok(()) => 0,
        Err(failure) => {
            let _ = writeln!(stderr, "error: {}", failure.message);
            failure.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl fmt::Display) -> Self {
        Self {
            code: 1,
            message: message.to_string(),
        }
    }

    fn internal(message: impl fmt::Display) -> Self {
        Self {
            code: 2,
            message: message.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::input(format!("standard output: {e}"))),
    }
}

fn cmd_compute(
    input: &Path,
    algorithm: Algorithm,
    output: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), Failure> {
    let dag = dag::parse_dag(&read(input)?).map_err(Failure::input)?;
    let (chains, summary) = run_pipeline(&dag, algorithm).map_err(Failure::internal)?;
    emit(output, &dag::format_chains(&chains), stdout)?;
    let _ = writeln!(stderr, "{summary}");
    Ok(())
}

fn cmd_validate(graph: &Path, chains: &Path, k: Option<usize>, stdout: &mut dyn Write) -> Result<(), Failure> {
    let dag = dag::parse_dag(&read(graph)?).map_err(Failure::input)?;
    let chains = dag::parse_chains(&read(chains)?).map_err(Failure::input)?;
    let network = FlowNetwork::build(&dag);
    let width = min_flow(&network).size(&network) as usize;
    validate_mcd(&dag, &chains, k.unwrap_or(width)).map_err(Failure::input)?;
    if chains.k() != width {
        return Err(Failure::input(format!(
            "{} chains is not minimum: the graph has width {width}",
            chains.k()
        )));
    }
    let _ = writeln!(stdout, "ok: {} chains cover {} vertices", chains.k(), dag.n());
    Ok(())
}

fn cmd_gen(family: GenFamily, stdout: &mut dyn Write) -> Result<(), Failure> {
    let (dag, output) = match family {
        GenFamily::WorstCase { k, l, output } => (dag::gen_worst_case(k, l), output),
        GenFamily::Random { n, p, seed, output } => (dag::gen_random_dag(n, p, seed), output),
    };
    let dag = dag.map_err(Failure::input)?;
    emit(output.as_deref(), &dag::serialize_dag(&dag), stdout)
}

/// Instance for one bench size: `gen_worst_case(size, size)`, or a random
/// DAG on `size` vertices with edge probability `4 / size` and seed 1.
pub fn bench_instance(family: Family, size: usize) -> Result<Dag, dag::DagError> {
    match family {
        Family::WorstCase => dag::gen_worst_case(size, size),
        Family::Random => dag::gen_random_dag(size, (4.0 / size.max(1) as f64).min(1.0), 1),
    }
}

fn cmd_bench(family: Family, sizes: &[usize], stdout: &mut dyn Write) -> Result<(), Failure> {
    let name = match family {
        Family::WorstCase => "worst-case",
        Family::Random => "random",
    };
    let mut table = format!("{}\n", RunSummary::CSV_HEADER);
    for &size in sizes {
        let dag = bench_instance(family, size).map_err(Failure::input)?;
        for algorithm in [Algorithm::Boosted, Algorithm::Naive] {
            let (_, summary) = run_pipeline(&dag, algorithm).map_err(Failure::internal)?;
            table.push_str(&summary.csv_row(name, size));
            table.push('\n');
        }
    }
    emit(None, &table, stdout)
}
