use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use pin2mv::report::{run_suite, Params, SUITES};
use pin2mv::steenrod::build_cell_diagram;

#[derive(Parser)]
#[command(
    name = "pin2mv",
    version,
    about = "Exact verification of the Mahowald line computations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        /// One of appendix-a, chern, steenrod, ro, ahss, mahowald, stems, all.
        suite: String,
        #[arg(long)]
        kmax: Option<u64>,
        #[arg(long)]
        mmax: Option<u64>,
        #[arg(long)]
        pmax: Option<u64>,
        #[arg(long)]
        qmax: Option<u64>,
        #[arg(long)]
        deg_bound: Option<u32>,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the cell diagram of `X(m)` between dimensions a and b.
    Diagram {
        /// The spectrum, written `X(m)` or just `m`.
        spectrum: String,
        a: i64,
        b: i64,
        #[arg(long)]
        dot: bool,
    },
}

fn parse_spectrum(s: &str) -> anyhow::Result<u64> {
    let inner = s
        .strip_prefix("X(")
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(s);
    inner
        .parse()
        .with_context(|| format!("expected X(m) with m a non-negative integer, got {s:?}"))
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> anyhow::Result<ExitCode> {
    match Cli::parse().command {
        Command::Verify {
            suite,
            kmax,
            mmax,
            pmax,
            qmax,
            deg_bound,
            jobs,
            format,
            out,
        } => {
            if suite != "all" && !SUITES.contains(&suite.as_str()) {
                eprintln!(
                    "unknown suite {suite:?}; expected one of {}, all",
                    SUITES.join(", ")
                );
                return Ok(ExitCode::from(2));
            }
            let d = Params::default();
            let params = Params {
                kmax: kmax.unwrap_or(d.kmax),
                mmax: mmax.unwrap_or(d.mmax),
                pmax: pmax.unwrap_or(d.pmax),
                qmax: qmax.unwrap_or(d.qmax),
                deg_bound,
            };
            let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
            let start = Instant::now();
            let report = pool
                .install(|| run_suite(&suite, &params))
                .expect("suite name checked above");
            let text = match format {
                Format::Json => report.to_json(),
                Format::Tsv => report.to_tsv(),
            };
            match out {
                Some(path) => std::fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => std::io::stdout().write_all(text.as_bytes())?,
            }
            eprintln!(
                "{}: {} passed, {} failed in {:.2?}",
                report.suite,
                report.pass_count(),
                report.fail_count(),
                start.elapsed()
            );
            if let Some(item) = report.first_failure() {
                eprintln!(
                    "FAIL {}: expected {}, computed {}",
                    item.key, item.expected, item.computed
                );
            }
            Ok(ExitCode::from(report.exit_code()))
        }
        Command::Diagram {
            spectrum,
            a,
            b,
            dot,
        } => {
            let m = parse_spectrum(&spectrum)?;
            if a > b {
                bail!("empty window: a = {a} > b = {b}");
            }
            let desc = build_cell_diagram(m, a, b)?;
            let text = if dot {
                desc.to_dot(&format!("X{m}"))
            } else {
                desc.to_text()
            };
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
    }
}
