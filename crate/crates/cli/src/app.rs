use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ffblock::metrics::{predict_classical, predict_one_pass, predict_tree, sweep, write_sweep_csv};
use ffblock::oracle::bareiss_one_pass;
use ffblock::random::{random_system, seeded, Sample};
use ffblock::{
    precondition_permute, DomainKind, Error, IntElem, Mat, MulBackend, OpCounts, ParametricSolution,
    PartitionStrategy, PolyElem, Solver,
};

use crate::problem::{parse_problem, render_problem, Problem};
use crate::report;

#[derive(Debug, Parser)]
#[command(name = "ffblock", version, about = "Exact fraction-free linear algebra over Z and Z[t]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the system whose extended matrix is in FILE.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Determinant of the square matrix in FILE.
    Det {
        file: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Adjugate of the square matrix in FILE.
    Adj {
        file: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Solve FILE and compare instrumented operation counts with the predicted ones.
    Count {
        file: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Solve one random n x (n+1) system per size and write counts as CSV.
    Sweep {
        /// Comma-separated, strictly ascending sizes (may be empty).
        #[arg(long, default_value = "")]
        sizes: String,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        algo: AlgoOpts,
    },
    /// Write a random problem file with a nonsingular leading block.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Entries (or coefficients) are drawn from [-bound, bound].
        #[arg(long, default_value_t = 9)]
        bound: i64,
        #[arg(long, default_value = "int")]
        domain: DomainKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MulKind {
    Classical,
    Strassen,
}

#[derive(Debug, Clone, Args)]
pub struct AlgoOpts {
    /// dichotomous, onepass, forward or fixed=<s>
    #[arg(long, default_value = "dichotomous")]
    pub strategy: PartitionStrategy,
    #[arg(long = "mul", value_enum, default_value_t = MulKind::Classical)]
    pub mul: MulKind,
    /// Strassen falls back to the classical product once a dimension is at most this.
    #[arg(long, default_value_t = 8)]
    pub cutoff: usize,
}

impl AlgoOpts {
    pub fn backend(&self) -> Result<MulBackend> {
        Ok(match self.mul {
            MulKind::Classical => MulBackend::Classical,
            MulKind::Strassen => MulBackend::strassen(self.cutoff)?,
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct RunOpts {
    #[command(flatten)]
    pub algo: AlgoOpts,
    /// Reorder rows when a corner minor vanishes.
    #[arg(long)]
    pub permute: bool,
    /// Also print operation counts.
    #[arg(long)]
    pub count: bool,
    /// Parse entries in this domain regardless of the file header.
    #[arg(long)]
    pub domain: Option<DomainKind>,
}

impl RunOpts {
    fn solver(&self) -> Result<Solver> {
        Ok(Solver::new(self.algo.strategy, self.algo.backend()?).with_permute(self.permute))
    }
}

/// Maps a failure to the process exit code.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<Error>() {
        Some(Error::Parse(_)) => 2,
        Some(Error::SingularMinor(_)) => 3,
        Some(Error::StructurallySingular(_)) => 4,
        _ => 1,
    }
}

/// Human-readable error text, with a hint for vanishing corner minors.
pub fn describe(err: &anyhow::Error) -> String {
    match err.downcast_ref::<Error>() {
        Some(Error::SingularMinor(r)) if r.permutation_applied.is_none() => {
            format!("{err}; rerun with --permute to reorder rows")
        }
        _ => format!("{err:#}"),
    }
}

/// Runs one command and returns what goes to stdout.
pub fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Solve { file, opts } => with_problem(&file, &opts, Task::Solve),
        Command::Det { file, opts } => with_problem(&file, &opts, Task::Det),
        Command::Adj { file, opts } => with_problem(&file, &opts, Task::Adj),
        Command::Count { file, opts } => with_problem(&file, &opts, Task::Count),
        Command::Sweep { sizes, out, seed, algo } => cmd_sweep(&sizes, out, seed, &algo),
        Command::Random { n, m, seed, bound, domain, out } => {
            if n == 0 || m < n || bound <= 0 {
                bail!(Error::Config(format!("random needs 1 <= n <= m and bound > 0, got n={n} m={m} bound={bound}")));
            }
            let text = match domain {
                DomainKind::Int => render_problem(&random_system::<IntElem, _>(n, m, bound, &mut seeded(seed))),
                DomainKind::Poly => render_problem(&random_system::<PolyElem, _>(n, m, bound, &mut seeded(seed))),
            };
            emit(text, out)
        }
    }
}

fn emit(text: String, out: Option<PathBuf>) -> Result<String> {
    match out {
        Some(path) => {
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

#[derive(Debug, Clone, Copy)]
enum Task {
    Solve,
    Det,
    Adj,
    Count,
}

fn with_problem(file: &PathBuf, opts: &RunOpts, task: Task) -> Result<String> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    match parse_problem(&text, opts.domain)? {
        Problem::Int(a) => perform(&a, opts, task),
        Problem::Poly(a) => perform(&a, opts, task),
    }
}

/// Domain-specific rendering of a solution.
trait Render: Sample {
    fn solution(sol: &ParametricSolution<Self>) -> String;
}

impl Render for IntElem {
    fn solution(sol: &ParametricSolution<Self>) -> String {
        report::int_solution(sol)
    }
}

impl Render for PolyElem {
    fn solution(sol: &ParametricSolution<Self>) -> String {
        report::poly_solution(sol)
    }
}

fn perform<R: Render>(a: &Mat<R>, opts: &RunOpts, task: Task) -> Result<String> {
    let solver = opts.solver()?;
    let mut ops = OpCounts::default();
    let mut out = match task {
        Task::Solve => R::solution(&solver.solve(a, &mut ops)?),
        Task::Det => format!("{}\n", solver.determinant(a, &mut ops)?),
        Task::Adj => report::matrix_block("adjugate", &solver.adjugate(a, &mut ops)?),
        Task::Count => return count_report(a, opts, solver),
    };
    if opts.count {
        writeln!(out, "ops: {ops} (divisions by delta^0 skipped: {})", ops.elided_divs)?;
    }
    Ok(out)
}

fn count_report<R: Render>(a: &Mat<R>, opts: &RunOpts, solver: Solver) -> Result<String> {
    let (n, m) = a.shape();
    let mut ops = OpCounts::default();
    solver.solve(a, &mut ops)?;
    let predicted = predict_tree(n, m, solver.strategy, solver.backend)?;
    let mut out = format!(
        "{ops} ({} {}/{}/{})\n",
        if predicted == ops { "predicted" } else { "MISMATCH, predicted" },
        predicted.adds,
        predicted.muls,
        predicted.divs
    );
    let dichotomous = matches!(solver.strategy, PartitionStrategy::Dichotomous);
    if let (true, Ok(p)) = (dichotomous, predict_classical(n, m)) {
        match solver.backend {
            MulBackend::Classical => {
                writeln!(out, "closed form A/M/D = {}/{}/{}", p.a_nm, p.m_nm, p.d_nm)?;
            }
            MulBackend::Strassen { cutoff: 1 } => {
                if let Some(md) = p.md_strassen {
                    let got = ops.mul_div() + ops.elided_divs;
                    writeln!(out, "muls+divs (with delta^0 divisions) = {got}; closed form MD^S = {md}")?;
                }
            }
            MulBackend::Strassen { .. } => {}
        }
    }
    if matches!(solver.strategy, PartitionStrategy::OnePass) {
        let work = if opts.permute {
            let (perm, _) = precondition_permute(a)?;
            a.permute_rows(&perm)?
        } else {
            a.clone()
        };
        let mut one = OpCounts::default();
        bareiss_one_pass(&work, &mut one)?;
        write!(out, "one-pass elimination: {one}")?;
        match predict_one_pass(n) {
            Ok(p) if m == n + 1 => writeln!(out, " (predicted {}/{}/{})", p.a_nm, p.m_nm, p.d_nm)?,
            _ => writeln!(out)?,
        }
    }
    Ok(out)
}

fn cmd_sweep(sizes: &str, out: Option<PathBuf>, seed: u64, algo: &AlgoOpts) -> Result<String> {
    let sizes: Vec<usize> = sizes
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Error::Config(format!("bad size `{s}`"))))
        .collect::<Result<_, _>>()?;
    let rows = sweep(&sizes, algo.strategy, algo.backend()?, seed)?;
    for r in &rows {
        match (&r.outcome, r.mul_exponent) {
            (Err(e), _) => eprintln!("n={}: failed: {e}", r.n),
            (Ok(_), Some(x)) => eprintln!("n={}: mul growth exponent {x:.3}", r.n),
            _ => {}
        }
    }
    let mut buf = Vec::new();
    write_sweep_csv(&rows, &mut buf)?;
    emit(String::from_utf8(buf)?, out)
}
