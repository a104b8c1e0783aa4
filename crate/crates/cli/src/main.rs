//! `peterson`: structure constants, expansions, restrictions, sweeps and
//! identity certificates from the command line.
//!
//! Exit status: 0 on success, 1 when a verification or certificate fails,
//! 2 for invalid input, 3 for I/O and cache errors.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use peterson_core::bikelock::{verify_identity, IdentityCertificate, IdentityParams};
use peterson_core::output::{expansion_records, render, Format, OutputRecord};
use peterson_core::verify::{
    verify_conversion, verify_formula, verify_identity_grid, verify_restrictions, VerifyReport,
};
use peterson_core::{cache, restrict, Error, StructureConstantKey, StructureEngine, SubsetMask};

/// Worker count for `verify`; defaults to the number of CPUs.
const WORKERS_ENV: &str = "PETERSON_WORKERS";
/// Largest rank accepted by the pairwise sweeps.
const MAX_SWEEP_RANK: u32 = 9;

#[derive(Parser)]
#[command(
    name = "peterson",
    version,
    about = "Peterson Schubert structure constants in type A"
)]
struct Cli {
    #[command(flatten)]
    output: OutputFlags,
    /// Memo snapshot to load before and save after `constant`/`expand`.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(multiple = false)]
struct OutputFlags {
    /// JSON lines.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true)]
    csv: bool,
    /// LaTeX tabular.
    #[arg(long, global = true)]
    latex: bool,
}

impl OutputFlags {
    fn format(&self) -> Format {
        match (self.json, self.csv, self.latex) {
            (true, _, _) => Format::JsonLines,
            (_, true, _) => Format::Csv,
            (_, _, true) => Format::Latex,
            _ => Format::Text,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print b_{A,B}^C.
    Constant {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long)]
        n: u32,
    },
    /// Expand p_A p_B in the Peterson Schubert basis.
    Expand {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        n: u32,
        /// Only the rows with |C| = |A| + |B|.
        #[arg(long)]
        ordinary: bool,
    },
    /// Print the restriction of p_A to the fixed point w_C.
    Restrict {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long)]
        n: u32,
    },
    /// Exhaustive comparison against the oracles.
    Verify(VerifyArgs),
    /// Certificate for the generalized Vandermonde identity at one point.
    Identity {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        w: i64,
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
        #[arg(long, allow_hyphen_values = true)]
        y: i64,
        #[arg(long, allow_hyphen_values = true)]
        z: i64,
        /// Run the bike lock pipeline and correspondence check.
        #[arg(long)]
        bijection: bool,
        /// List every pair of the bijection.
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Formula,
    Oracle,
    Conversion,
    Identity,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "formula")]
    mode: Mode,
    /// Check this rank only.
    #[arg(long, conflicts_with = "max_n")]
    n: Option<u32>,
    /// Check every rank from 2 up to this one.
    #[arg(long, default_value_t = 5)]
    max_n: u32,
    #[arg(long, default_value_t = 3)]
    grid_m: i64,
    #[arg(long, default_value_t = 3)]
    grid_n: i64,
    /// Bound on each of w, x, y, z.
    #[arg(long, default_value_t = 5)]
    grid_max: i64,
    /// Bound on w + m + n.
    #[arg(long, default_value_t = 12)]
    grid_width: i64,
    /// Skip the bike lock pipeline in identity mode.
    #[arg(long)]
    counts_only: bool,
}

enum Failure {
    Check(String),
    Input(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Cache(msg) => Failure::Io(msg),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_workers().and_then(|()| run(&cli));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn configure_workers() -> Outcome {
    let Ok(value) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let workers: usize = value.parse().ok().filter(|&w| w > 0).ok_or_else(|| {
        Failure::Input(format!("{WORKERS_ENV}={value:?} is not a positive integer"))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global()
        .map_err(|e| Failure::Io(e.to_string()))
}

fn subset(n: u32, text: &str) -> Result<SubsetMask, Failure> {
    Ok(SubsetMask::parse(n, text)?)
}

fn emit(text: &str) -> Outcome {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    let format = cli.output.format();
    match &cli.command {
        Command::Constant { a, b, c, n } => {
            let key = StructureConstantKey::new(subset(*n, a)?, subset(*n, b)?, subset(*n, c)?)?;
            let engine = open_engine(cli)?;
            let value = engine.b_general(&key);
            save_engine(cli, &engine)?;
            let record = OutputRecord::new(key.a(), key.b(), key.c(), &value);
            match format {
                Format::Text => emit(&format!("{value}\n")),
                _ => emit(&render(&[record], format)),
            }
        }
        Command::Expand { a, b, n, ordinary } => {
            let (a, b) = (subset(*n, a)?, subset(*n, b)?);
            let engine = open_engine(cli)?;
            let mut table = engine.expand_product(&a, &b)?;
            save_engine(cli, &engine)?;
            if *ordinary {
                table.retain(|c, _| c.len() == a.len() + b.len());
            }
            emit(&render(&expansion_records(&a, &b, &table), format))
        }
        Command::Restrict { a, c, n } => {
            let (a, c) = (subset(*n, a)?, subset(*n, c)?);
            let value = restrict(&a, &c);
            let record = OutputRecord::new(&a, &SubsetMask::empty(*n)?, &c, &value);
            match format {
                Format::Text => emit(&format!("{value}\n")),
                _ => emit(&render(&[record], format)),
            }
        }
        Command::Verify(args) => run_verify(args, format),
        Command::Identity {
            m,
            n,
            w,
            x,
            y,
            z,
            bijection,
            trace,
        } => {
            let params = IdentityParams::new(*m, *n, *w, *x, *y, *z)?;
            let cert = verify_identity(&params, *bijection, *trace)?;
            emit(&render_certificate(&cert, format))?;
            if cert.passed() {
                Ok(())
            } else {
                Err(Failure::Check("certificate failed".into()))
            }
        }
    }
}

fn open_engine(cli: &Cli) -> Result<StructureEngine, Failure> {
    let engine = StructureEngine::new();
    if let Some(path) = &cli.cache {
        cache::load_into(&engine, path)?;
    }
    Ok(engine)
}

fn save_engine(cli: &Cli, engine: &StructureEngine) -> Outcome {
    if let Some(path) = &cli.cache {
        cache::save(engine, path)?;
    }
    Ok(())
}

fn run_verify(args: &VerifyArgs, format: Format) -> Outcome {
    let (min_n, max_n) = match args.n {
        Some(n) => (n, n),
        None => (2, args.max_n),
    };
    let pairwise = matches!(args.mode, Mode::Formula | Mode::Oracle | Mode::Conversion);
    if pairwise && (min_n < 2 || max_n > MAX_SWEEP_RANK) {
        return Err(Failure::Input(format!(
            "ranks must lie in 2..={MAX_SWEEP_RANK}, got {min_n}..={max_n}"
        )));
    }
    let report = match args.mode {
        Mode::Formula => verify_formula(min_n, max_n)?,
        Mode::Oracle => verify_restrictions(min_n, max_n)?,
        Mode::Conversion => verify_conversion(min_n, max_n)?,
        Mode::Identity => verify_identity_grid(
            args.grid_m,
            args.grid_n,
            args.grid_max,
            args.grid_width,
            !args.counts_only,
        )?,
    };
    emit(&render_report(&report, format))?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check(format!("{} mismatches", report.mismatches)))
    }
}

fn render_report(report: &VerifyReport, format: Format) -> String {
    match format {
        Format::Text => format!("{report}\n"),
        Format::JsonLines => format!("{}\n", serde_json::to_string(report).expect("serializable")),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["mode", "checked", "unit", "comparisons", "mismatches", "elapsed_ms"])
                .and_then(|()| {
                    w.write_record([
                        report.mode.to_string(),
                        report.checked.to_string(),
                        report.unit.clone(),
                        report.comparisons.to_string(),
                        report.mismatches.to_string(),
                        format!("{:.1}", report.elapsed_ms),
                    ])
                })
                .expect("in-memory write");
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        }
        Format::Latex => format!(
            "\\begin{{tabular}}{{llll}}\nmode & checked & mismatches & time (ms) \\\\\n\\hline\n{} & {} {} & {} & {:.1} \\\\\n\\end{{tabular}}\n",
            report.mode,
            report.checked,
            report.unit,
            report.mismatches,
            report.elapsed_ms
        ),
    }
}

fn bijection_status(cert: &IdentityCertificate) -> &'static str {
    match &cert.bijection {
        None => "not run",
        Some(report) if report.valid() => "valid",
        Some(_) => "invalid",
    }
}

fn render_certificate(cert: &IdentityCertificate, format: Format) -> String {
    let p = cert.params;
    match format {
        Format::Text => {
            let mut out = format!(
                "params: m={} n={} w={} x={} y={} z={}\nlhs={} rhs={} |S|={} |V|={}{}\nbijection: {}\nelapsed: {:.3} ms\n",
                p.m, p.n, p.w, p.x, p.y, p.z,
                cert.lhs, cert.rhs, cert.s_count, cert.v_count,
                if cert.vacuous { " (vacuous)" } else { "" },
                bijection_status(cert),
                cert.elapsed_ms
            );
            for pair in cert.trace.iter().flatten() {
                out.push_str(&format!("{}  ->  {}\n", pair.v, pair.s));
            }
            out
        }
        Format::JsonLines => format!("{}\n", serde_json::to_string(cert).expect("serializable")),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["m", "n", "w", "x", "y", "z", "lhs", "rhs", "s_count", "v_count", "bijection", "elapsed_ms"])
                .and_then(|()| {
                    w.write_record([
                        p.m.to_string(),
                        p.n.to_string(),
                        p.w.to_string(),
                        p.x.to_string(),
                        p.y.to_string(),
                        p.z.to_string(),
                        cert.lhs.to_string(),
                        cert.rhs.to_string(),
                        cert.s_count.to_string(),
                        cert.v_count.to_string(),
                        bijection_status(cert).to_string(),
                        format!("{:.3}", cert.elapsed_ms),
                    ])
                })
                .expect("in-memory write");
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        }
        Format::Latex => format!(
            "\\begin{{tabular}}{{cccccc|cccc}}\n$m$ & $n$ & $w$ & $x$ & $y$ & $z$ & lhs & rhs & $|\\mathcal S|$ & $|\\mathcal V|$ \\\\\n\\hline\n{} & {} & {} & {} & {} & {} & {} & {} & {} & {} \\\\\n\\end{{tabular}}\n",
            p.m, p.n, p.w, p.x, p.y, p.z, cert.lhs, cert.rhs, cert.s_count, cert.v_count
        ),
    }
}
