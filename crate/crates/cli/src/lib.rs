//! Command-line front end: re-derivation trace, evenness checks, solution
//! generation, sum-of-two-cubes search and cross-checking.
//!
//! Every command is a library function writing to a caller-supplied sink so
//! the binary and the tests share one code path.

pub mod range;
pub mod records;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use evencubes::derivation::{odd_part_of, Derivation};
use evencubes::identity::{enumerate, Grid, ParametricIdentity, SolutionQuadruple};
use evencubes::oracle::{
    build_index_with, crosscheck, multi_rep, IndexConfig, OracleError, RepresentationIndex,
    DEFAULT_MEMORY_BUDGET,
};
use evencubes::parser::{format, parse_polynomial};
use evencubes::SymbolTable;

use range::RangeArg;
use records::{pair, quad_human, quad_json, reps_json, write_quads_csv};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const MEMORY_BUDGET_ENV: &str = "EVENCUBES_MEMORY_BUDGET";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_USAGE
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(io::Error::other(e))
    }
}

type CmdResult = Result<i32, CliError>;

#[derive(Debug, Parser)]
#[command(name = "evencubes", version, about = "Even cube-sum identity toolkit")]
pub struct Cli {
    /// Worker threads for enumeration and index building.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub workers: Option<u16>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Re-run the derivation and print the verified trace.
    Derive {
        #[arg(long, value_enum, default_value_t = TraceFormat::Human)]
        format: TraceFormat,
    },
    /// Print f(x) - f(-x) for a polynomial in x.
    CheckEven {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Instantiate the identity over a parameter box.
    Generate {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Jsonl)]
        format: OutputFormat,
        /// Write records here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List every N <= bound with two or more representations as a sum of two cubes.
    Search {
        #[arg(long)]
        bound: u64,
        /// Also index pairs with one negative cube.
        #[arg(long)]
        signed: bool,
        #[arg(long)]
        dump_index: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
        format: OutputFormat,
        /// Index memory budget in bytes.
        #[arg(long, env = MEMORY_BUDGET_ENV)]
        memory_budget: Option<usize>,
    },
    /// Generate quadruples and look both sides up in the search index.
    Crosscheck {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        signed: bool,
        #[arg(long, env = MEMORY_BUDGET_ENV)]
        memory_budget: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Args)]
pub struct GridArgs {
    #[arg(long, allow_hyphen_values = true, value_name = "LO..HI")]
    pub p: RangeArg,
    #[arg(long, allow_hyphen_values = true, value_name = "LO..HI")]
    pub q: RangeArg,
    #[arg(long, allow_hyphen_values = true, value_name = "LO..HI")]
    pub x: RangeArg,
    #[arg(long, allow_hyphen_values = true, value_name = "LO..HI")]
    pub y: RangeArg,
}

impl GridArgs {
    pub fn grid(&self) -> Result<Grid, CliError> {
        for (name, r) in [("p", self.p), ("q", self.q), ("x", self.x), ("y", self.y)] {
            if r.0.is_empty() {
                return Err(CliError::Usage(format!("--{name} {r} is empty")));
            }
        }
        Ok(Grid::new(self.p.0, self.q.0, self.x.0, self.y.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TraceFormat {
    Human,
    Jsonl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Jsonl,
    Csv,
    Human,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    run_cli(&cli, out, err)
}

pub fn run_cli(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let pool = Pool::new(cli.workers);
    let result = match &cli.command {
        Command::Derive { format } => cmd_derive(&Derivation::new(), *format, out, err),
        Command::CheckEven { expr } => cmd_check_even(expr, out, err),
        Command::Generate {
            grid,
            format,
            output,
        } => cmd_generate(&pool, grid, *format, output.as_deref(), out),
        Command::Search {
            bound,
            signed,
            dump_index,
            format,
            memory_budget,
        } => cmd_search(
            &pool,
            *bound,
            *signed,
            &index_config(*memory_budget),
            dump_index.as_deref(),
            *format,
            out,
        ),
        Command::Crosscheck {
            grid,
            bound,
            signed,
            memory_budget,
        } => cmd_crosscheck(&pool, grid, *bound, *signed, &index_config(*memory_budget), out, err),
    };
    let code = result.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        e.exit_code()
    });
    let _ = out.flush();
    code
}

fn index_config(memory_budget: Option<usize>) -> IndexConfig {
    IndexConfig {
        memory_budget: memory_budget.unwrap_or(DEFAULT_MEMORY_BUDGET),
        signed_cap: None,
    }
}

/// Rayon pool sized by `--workers`; the global pool otherwise.
pub struct Pool(Option<rayon::ThreadPool>);

impl Pool {
    pub fn new(workers: Option<u16>) -> Self {
        Self(workers.map(|n| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n as usize)
                .build()
                .expect("thread pool")
        }))
    }

    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match &self.0 {
            Some(pool) => pool.install(f),
            None => f(),
        }
    }
}

pub fn cmd_derive(
    derivation: &Derivation,
    format: TraceFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let trace = match derivation.trace_full() {
        Ok(trace) => trace,
        Err(e) => {
            writeln!(err, "derivation failed: {e}")?;
            return Ok(EXIT_VERIFICATION);
        }
    };
    match format {
        TraceFormat::Jsonl => {
            for step in &trace.steps {
                writeln!(out, "{}", serde_json::to_string(step).expect("plain strings"))?;
            }
        }
        TraceFormat::Human => {
            let width = trace.steps.iter().map(|s| s.name.len()).max().unwrap_or(0);
            for step in &trace.steps {
                let mark = if step.verified { "ok  " } else { "FAIL" };
                writeln!(out, "[{mark}] {:width$}  {}", step.name, step.description)?;
                if !step.verified {
                    writeln!(out, "       expected: {}", step.expected)?;
                    writeln!(out, "       computed: {}", step.computed)?;
                }
            }
            writeln!(
                out,
                "{}/{} steps verified",
                trace.verified_count(),
                trace.steps.len()
            )?;
        }
    }
    match trace.first_failure() {
        None => Ok(EXIT_OK),
        Some(step) => {
            writeln!(err, "verification failed at step `{}`", step.name)?;
            Ok(EXIT_VERIFICATION)
        }
    }
}

pub fn cmd_check_even(expr: &str, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let table = SymbolTable::with_names(["x"]);
    let poly = match parse_polynomial(expr, &table) {
        Ok(p) => p,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let x = table.get("x").expect("declared");
    let odd = odd_part_of(&poly, &x);
    writeln!(out, "f(x) - f(-x) = {}", format(&odd))?;
    if odd.is_zero() {
        writeln!(out, "even")?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "not even")?;
        Ok(EXIT_VERIFICATION)
    }
}

fn identity() -> ParametricIdentity {
    Derivation::new()
        .build_identity()
        .expect("built-in identity verifies symbolically")
}

pub fn cmd_generate(
    pool: &Pool,
    grid: &GridArgs,
    format: OutputFormat,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    let grid = grid.grid()?;
    let identity = identity();
    let quads = pool.install(|| enumerate(&identity, &grid));
    match output {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            write_quads(&quads, &identity, format, &mut file)?;
            file.flush()?;
        }
        None => write_quads(&quads, &identity, format, out)?,
    }
    Ok(EXIT_OK)
}

fn write_quads(
    quads: &[SolutionQuadruple],
    identity: &ParametricIdentity,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match format {
        OutputFormat::Jsonl => {
            for s in quads {
                writeln!(out, "{}", quad_json(s))?;
            }
        }
        OutputFormat::Csv => write_quads_csv(out, quads)?,
        OutputFormat::Human => {
            for s in quads {
                out.write_all(quad_human(s, identity).as_bytes())?;
            }
        }
    }
    Ok(())
}

fn build(
    pool: &Pool,
    bound: u64,
    signed: bool,
    config: &IndexConfig,
) -> Result<RepresentationIndex, CliError> {
    pool.install(|| build_index_with(bound, signed, config))
        .map_err(|e| match e {
            OracleError::Io(io) => CliError::Io(io),
            other => CliError::Usage(other.to_string()),
        })
}

pub fn cmd_search(
    pool: &Pool,
    bound: u64,
    signed: bool,
    config: &IndexConfig,
    dump_index: Option<&Path>,
    format: OutputFormat,
    out: &mut dyn Write,
) -> CmdResult {
    let index = build(pool, bound, signed, config)?;
    if let Some(path) = dump_index {
        let mut file = BufWriter::new(File::create(path)?);
        index.write_to(&mut file).map_err(|e| match e {
            OracleError::Io(io) => CliError::Io(io),
            other => CliError::Usage(other.to_string()),
        })?;
    }
    let found = multi_rep(&index);
    match format {
        OutputFormat::Human => {
            for (n, reps) in &found {
                let pairs: Vec<String> = reps.iter().map(pair).collect();
                writeln!(out, "{n} {}", pairs.join(" "))?;
            }
        }
        OutputFormat::Jsonl => {
            for (n, reps) in &found {
                writeln!(out, "{}", reps_json(*n, reps))?;
            }
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["N", "a", "b"])?;
            for (n, reps) in &found {
                for r in reps {
                    w.write_record([n.to_string(), r.a.to_string(), r.b.to_string()])?;
                }
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_crosscheck(
    pool: &Pool,
    grid: &GridArgs,
    bound: u64,
    signed: bool,
    config: &IndexConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let grid = grid.grid()?;
    let identity = identity();
    let index = build(pool, bound, signed, config)?;
    let quads = pool.install(|| enumerate(&identity, &grid));
    report_crosscheck(&quads, &index, out, err)
}

/// Cross-checks the given quadruples and prints the summary; exit 1 on any miss.
pub fn report_crosscheck(
    quads: &[SolutionQuadruple],
    index: &RepresentationIndex,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let report = crosscheck(quads, index);
    for miss in &report.misses {
        let p = &miss.params;
        writeln!(
            out,
            "MISS {} {} {} from ({}, {}, {}, {})",
            miss.n,
            pair(&miss.pairs[0]),
            pair(&miss.pairs[1]),
            p.p,
            p.q,
            p.x,
            p.y
        )?;
    }
    writeln!(out, "quadruples:            {}", quads.len())?;
    writeln!(out, "checked:               {}", report.checked())?;
    writeln!(out, "matched:               {}", report.matched.len())?;
    writeln!(out, "misses:                {}", report.misses.len())?;
    writeln!(out, "skipped (N > bound):   {}", report.skipped_out_of_bound)?;
    writeln!(out, "skipped (unsupported): {}", report.skipped_unsupported)?;
    if report.is_clean() {
        Ok(EXIT_OK)
    } else {
        writeln!(err, "{} quadruple(s) not found in the index", report.misses.len())?;
        Ok(EXIT_VERIFICATION)
    }
}
