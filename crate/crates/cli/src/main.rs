use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::Parser;
use medusa_core::export::{filter_ratio, ExportOptions};
use medusa_core::generate::{generate, GeneratorParams};
use medusa_core::io::{parse_rational, parse_trajectories, write_trajectories};
use medusa_core::kernel::KernelOptions;
use medusa_core::run::{probe_times, run_to_text};
use medusa_core::{Config, Error, Rational};

/// Track the alpha complex of moving points and export its alpha medusa.
#[derive(Debug, Parser)]
#[command(name = "medusa", version)]
struct Args {
    /// Trajectory file to read.
    #[arg(long, conflicts_with = "generate")]
    input: Option<PathBuf>,

    /// Generate the input instead: "n,bends,box,sorting[,churn]".
    #[arg(long, value_name = "SPEC")]
    generate: Option<String>,

    /// Seed for the generator and the probe times.
    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Write the generated input to this file.
    #[arg(long, value_name = "FILE", requires = "generate")]
    save_input: Option<PathBuf>,

    /// Squared alpha radius, as an integer or p/q.
    #[arg(long, value_name = "R")]
    alpha_sq: String,

    /// Medusa output file; standard output if omitted.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Statistics output file.
    #[arg(long)]
    stats: Option<PathBuf>,

    /// Keep a radius certificate on every finite simplex.
    #[arg(long)]
    no_prune: bool,

    /// Use the degree 10 triangle certificate.
    #[arg(long)]
    deg10_triangle: bool,

    /// Always isolate roots, without the sign-variation shortcut.
    #[arg(long)]
    no_filter: bool,

    /// Do not reuse isolated roots.
    #[arg(long)]
    no_cache: bool,

    /// Compare against recomputation at this many random times.
    #[arg(long, default_value_t = 0, value_name = "N")]
    probes: usize,

    /// Skip the per-event consistency checks.
    #[arg(long)]
    no_checks: bool,

    /// Significant digits of decimal time approximations.
    #[arg(long, default_value_t = 12)]
    digits: usize,
}

const EXIT_OTHER: u8 = 1;
const EXIT_DEGENERATE: u8 = 2;
const EXIT_IO: u8 = 3;

fn main() -> ExitCode {
    // clap would exit with 2 on usage errors, which is reserved here
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_OTHER) } else { ExitCode::SUCCESS };
        }
    };
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("medusa: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(err) = cause.downcast_ref::<Error>() {
            return match err {
                err if err.is_degeneracy() => EXIT_DEGENERATE,
                Error::Parse { .. } | Error::InvalidTrajectory(_) => EXIT_IO,
                _ => EXIT_OTHER,
            };
        }
        if cause.is::<std::io::Error>() {
            return EXIT_IO;
        }
    }
    EXIT_OTHER
}

fn run(args: &Args) -> anyhow::Result<()> {
    let alpha2: Rational =
        parse_rational(&args.alpha_sq).ok_or_else(|| anyhow!("--alpha-sq: not a rational number"))?;
    let input = match (&args.input, &args.generate) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            parse_trajectories(&text).with_context(|| format!("in {}", path.display()))?
        }
        (None, Some(spec)) => {
            let params = GeneratorParams::parse(spec)
                .ok_or_else(|| anyhow!("--generate expects n,bends,box,sorting[,churn], got {spec:?}"))?;
            let set = generate(args.seed, &params)?;
            if let Some(path) = &args.save_input {
                std::fs::write(path, write_trajectories(&set)).with_context(|| format!("writing {}", path.display()))?;
            }
            set
        }
        _ => bail!("exactly one of --input and --generate is required"),
    };
    let cfg = Config {
        prune_certificates: !args.no_prune,
        degree6_triangle: !args.deg10_triangle,
        kernel: KernelOptions { descartes_filter: !args.no_filter, root_cache: !args.no_cache },
        check_invariants: !args.no_checks,
        ..Config::new(alpha2)
    };
    let export = ExportOptions { digits: args.digits, ..ExportOptions::default() };
    let probes = probe_times(args.seed, args.probes);
    let (out, medusa, stats) = run_to_text(&input, cfg, &probes, &export)?;
    match &args.output {
        Some(path) => std::fs::write(path, medusa).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{medusa}"),
    }
    if let Some(path) = &args.stats {
        std::fs::write(path, stats).with_context(|| format!("writing {}", path.display()))?;
    }
    let c = &out.counters;
    eprintln!(
        "{} flips, {} radius events, {} certificates, filter {}",
        c.flips,
        c.radius_events,
        c.certificates_built,
        filter_ratio(&out).map_or("n/a".to_string(), |r| format!("{:.1}%", r * 100.0))
    );
    let mismatches = out.probes.iter().filter(|p| !p.ok()).count();
    for v in out.violations.iter().take(10) {
        eprintln!("invariant violated {v}");
    }
    if mismatches > 0 || !out.violations.is_empty() {
        bail!("{mismatches} probe mismatches, {} invariant violations", out.violations.len());
    }
    Ok(())
}
