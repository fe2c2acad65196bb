use clap::{Args, Parser, Subcommand};
use cubic_census::cache::resolve_path;
use cubic_census::commands::{self, Output};
use cubic_census::config::{parse_list, parse_precision, RunConfig};
use cubic_census::error::{CliError, CliResult};
use cubic_census::format::Format;
use cubic_core::exact::UnitPoly;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "cubic-census", version, about = "Census of complex cubic units and SL3 trace-formula diagnostics")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Global {
    /// Regulator bound R_max.
    #[arg(long, global = true)]
    r_max: Option<f64>,
    /// Bracket width for certified regulators, e.g. 1e-12 or 1/1000.
    #[arg(long, global = true)]
    precision: Option<String>,
    /// Cache file; CUBIC_CENSUS_CACHE takes priority.
    #[arg(long, global = true, default_value = "cubic-census.cache")]
    cache: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Shorthand for --format json.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    shards: u64,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Enumerate units with R <= R_max and append them to the cache.
    Sweep,
    /// Class-number sums against the primitive count.
    Census {
        /// Comma-separated x values; defaults to 0.5, 1, ... up to the cache coverage.
        #[arg(long)]
        x: Option<String>,
    },
    /// Primitive count against N / log N.
    Pgt {
        /// Comma-separated values of N; `e^k` is accepted.
        #[arg(long)]
        x: String,
    },
    /// Partial sums of the length series.
    Lseries {
        #[arg(long)]
        s: String,
        /// Length cutoff; defaults to 3 R of the cache.
        #[arg(long)]
        l_cut: Option<f64>,
    },
    /// Truncated geometric side of the trace formula.
    Geometric {
        #[arg(long = "N")]
        n: u32,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        l_cut: Option<f64>,
    },
    /// Fourier-side test function values.
    #[command(allow_negative_numbers = true)]
    Kernel {
        #[arg(value_name = "N")]
        n_pos: Option<u32>,
        #[arg(value_name = "LAMBDA")]
        lambda_pos: Option<f64>,
        #[arg(value_name = "X")]
        x_pos: Option<String>,
        #[arg(long = "N", conflicts_with = "n_pos")]
        n: Option<u32>,
        #[arg(long, conflicts_with = "lambda_pos")]
        lambda: Option<f64>,
        #[arg(long, conflicts_with = "x_pos")]
        x: Option<String>,
    },
    /// Check the representation-theoretic identities.
    #[command(alias = "verify")]
    Reps,
    /// Arithmetic data of Z[x]/(f) for f given as t,s.
    Order { poly: String },
    /// Class numbers of Z[x]/(f).
    ClassNumber { poly: String },
    /// All cached records with their orders.
    Records,
}

fn config(g: &Global) -> CliResult<RunConfig> {
    let mut c = RunConfig {
        r_max: g.r_max,
        cache: resolve_path(g.cache.clone()),
        format: if g.json { Format::Json } else { g.format },
        shards: g.shards as usize,
        seed: g.seed,
        ..RunConfig::default()
    };
    if let Some(p) = &g.precision {
        c.precision = parse_precision(p)?;
    }
    Ok(c)
}

fn poly(s: &str) -> CliResult<UnitPoly> {
    s.parse().map_err(|e| CliError::Usage(format!("bad polynomial {s:?}: {e}")))
}

fn required<T>(v: Option<T>, name: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("missing {name}")))
}

fn run(cli: Cli) -> CliResult<Output> {
    let cfg = config(&cli.global)?;
    match cli.cmd {
        Cmd::Sweep => commands::sweep(&cfg),
        Cmd::Census { x } => commands::census(&cfg, x.as_deref().map(parse_list).transpose()?),
        Cmd::Pgt { x } => commands::pgt(&cfg, parse_list(&x)?),
        Cmd::Lseries { s, l_cut } => commands::lseries(&cfg, parse_list(&s)?, l_cut),
        Cmd::Geometric { n, lambda, l_cut } => commands::geometric(&cfg, n, parse_list(&lambda)?, l_cut),
        Cmd::Kernel { n_pos, lambda_pos, x_pos, n, lambda, x } => {
            let n = required(n_pos.or(n), "N")?;
            let lambda = required(lambda_pos.or(lambda), "lambda")?;
            let xs = parse_list(&required(x_pos.or(x), "x")?)?;
            commands::kernel(&cfg, n, lambda, xs)
        }
        Cmd::Reps => commands::reps(&cfg),
        Cmd::Order { poly: p } => commands::order(&cfg, poly(&p)?),
        Cmd::ClassNumber { poly: p } => commands::class_number_cmd(&cfg, poly(&p)?),
        Cmd::Records => commands::records(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(4);
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
