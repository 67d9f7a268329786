use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use indsup::dimacs::{read_dimacs, write_padoa};
use indsup::output::{write_gates, write_stats, write_support};
use indsup::pipeline::{run_pipeline, PipelineConfig, Verification};
use indsup::{bench, par2};
use indsup_core::padoa::build_padoa;
use indsup_core::CnfFormula;

/// Computes an independent support of a CNF formula's projection set.
#[derive(Parser)]
#[command(version, args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    /// DIMACS input; `-` reads standard input.
    file: Option<PathBuf>,
    #[command(flatten)]
    opts: PipelineArgs,
    /// Check the result by enumeration (small formulas only).
    #[arg(long)]
    verify: bool,
    /// Print recovered gate definitions as comments.
    #[arg(long)]
    dump_gates: bool,
    /// Write the duplicated definability formula to this path.
    #[arg(long, value_name = "PATH")]
    dump_padoa: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every instance under a time limit and report PAR-2.
    Bench {
        files: Vec<PathBuf>,
        #[command(flatten)]
        opts: PipelineArgs,
        /// Per-instance CSV output; defaults to standard output.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct PipelineArgs {
    /// Conflicts per definability query, or `none` for unlimited.
    #[arg(long, default_value = "500", value_parser = parse_limit)]
    conflict_limit: Limit,
    /// Skip gate-based removal.
    #[arg(long)]
    no_explicit: bool,
    /// Skip definability queries.
    #[arg(long)]
    no_implicit: bool,
    /// One solver call per variable instead of the incremental search.
    #[arg(long)]
    simple: bool,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u8).range(2..=5))]
    xor_max_len: u8,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    timeout: Option<f64>,
}

#[derive(Clone, Copy)]
struct Limit(Option<u64>);

fn parse_limit(s: &str) -> Result<Limit, String> {
    if s == "none" {
        return Ok(Limit(None));
    }
    s.parse().map(|n| Limit(Some(n))).map_err(|_| format!("expected a count or `none`, got `{s}`"))
}

impl PipelineArgs {
    fn config(&self, verify: bool) -> Result<PipelineConfig> {
        let wall_timeout = match self.timeout {
            Some(t) => Some(Duration::try_from_secs_f64(t).context("invalid --timeout")?),
            None => None,
        };
        Ok(PipelineConfig {
            conflict_budget_per_var: self.conflict_limit.0,
            run_explicit: !self.no_explicit,
            run_implicit: !self.no_implicit,
            use_simple_search: self.simple,
            xor_max_len: self.xor_max_len as usize,
            verify,
            seed: self.seed,
            wall_timeout,
        })
    }
}

fn read_input(path: &PathBuf) -> Result<CnfFormula> {
    if path.as_os_str() == "-" {
        return Ok(read_dimacs(io::stdin().lock())?);
    }
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    read_dimacs(BufReader::new(file)).with_context(|| format!("cannot parse {}", path.display()))
}

fn run_single(cli: &Cli, path: &PathBuf) -> Result<ExitCode> {
    let f = read_input(path)?;
    let cfg = cli.opts.config(cli.verify)?;
    let r = run_pipeline(&f, &cfg)?;

    let mut out = io::stdout().lock();
    if cli.dump_gates {
        write!(out, "{}", write_gates(&r.gates))?;
    }
    if let Some(p) = &cli.dump_padoa {
        let projection = r.explicit_support.as_deref().unwrap_or(f.projection());
        fs::write(p, write_padoa(&build_padoa(&f, projection)))
            .with_context(|| format!("cannot write {}", p.display()))?;
    }
    writeln!(out, "{}", write_support(&r.support))?;
    write!(out, "{}", write_stats(&r))?;
    let mut code = if r.timed_out { 2 } else { 0 };
    match &r.verification {
        Some(Verification::Passed) => writeln!(out, "c verify PASS")?,
        Some(Verification::Failed) => {
            writeln!(out, "c verify FAIL")?;
            code = 1;
        }
        Some(Verification::Skipped(why)) => writeln!(out, "c verify skipped: {why}")?,
        None => {}
    }
    out.flush()?;

    let s = &r.stats;
    let explicit = s.explicit.as_ref().map_or(0.0, |e| e.time.as_secs_f64());
    let implicit = s.implicit.as_ref().map_or(0.0, |i| i.time.as_secs_f64());
    eprintln!(
        "c time explicit {explicit:.3} implicit {implicit:.3} total {:.3}",
        s.total_time.as_secs_f64()
    );
    Ok(ExitCode::from(code))
}

fn run_bench(files: &[PathBuf], opts: &PipelineArgs, csv: Option<&PathBuf>) -> Result<ExitCode> {
    let timeout = opts.timeout.context("bench needs --timeout")?;
    let mut cfg = opts.config(false)?;
    cfg.wall_timeout = None;
    let records = bench(files, &cfg, Duration::try_from_secs_f64(timeout).context("invalid --timeout")?);
    match csv {
        Some(p) => indsup::bench::write_csv(&records, File::create(p)?)?,
        None => indsup::bench::write_csv(&records, io::stdout().lock())?,
    }
    eprintln!("c par2 {:.3} over {} instances", par2(&records, timeout), records.len());
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match (&cli.command, &cli.file) {
        (Some(Command::Bench { files, opts, csv }), _) => run_bench(files, opts, csv.as_ref()),
        (None, Some(path)) => run_single(&cli, path),
        (None, None) => Err(anyhow::anyhow!("no input file given (use `-` for standard input)")),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
