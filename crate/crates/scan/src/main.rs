use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use multbound::hilbert::HilbertFunction;
use multbound::koszul::DEFAULT_CHARACTERISTIC;
use multbound::monomial::parse_ideal;
use multbound::verdict::ClassifyOptions;
use multbound_scan::check::{check_hf, check_ideal, IdealOptions};
use multbound_scan::scan::canonical_filters;
use multbound_scan::{run_scan, ScanOptions, ScanParams};

#[derive(Parser)]
#[command(name = "multbound", version, about = "Checks the multiplicity upper bound over Hilbert functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every Hilbert function with a given prefix up to a socle degree
    Scan {
        #[arg(long, default_value_t = 3)]
        vars: usize,
        #[arg(long)]
        socle_max: usize,
        #[arg(long, default_value = "1,3")]
        prefix: String,
        #[arg(long, default_value = "er,gen,aci,growth")]
        filters: String,
        #[arg(long, default_value_t = 1_000_000)]
        dfs_cap: usize,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        checkpoint_every: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Worker threads; 0 uses every core
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, hide = true)]
        stop_after: Option<u64>,
    },
    /// Run the cancellation pipeline on one Hilbert function
    CheckHf {
        seq: String,
        #[arg(long, default_value_t = 3)]
        vars: usize,
        #[arg(long, default_value = "er,gen,aci,growth")]
        filters: String,
        #[arg(long, default_value_t = 1_000_000)]
        dfs_cap: usize,
    },
    /// Betti numbers, bounds and truncation analysis of a monomial ideal
    CheckIdeal {
        spec: String,
        #[arg(long)]
        truncate: Option<u32>,
        #[arg(long = "char", default_value_t = DEFAULT_CHARACTERISTIC)]
        characteristic: u64,
        #[arg(long)]
        degree_cap: Option<u32>,
        /// Number of variables; defaults to the highest one used
        #[arg(long)]
        vars: Option<usize>,
        /// Also compute over characteristics 2, 3 and 32003
        #[arg(long)]
        cross_check: bool,
    },
}

fn parse_seq(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|t| t.trim().parse::<u64>().with_context(|| format!("bad entry {t:?} in {text:?}")))
        .collect()
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Scan {
            vars,
            socle_max,
            prefix,
            filters,
            dfs_cap,
            checkpoint,
            checkpoint_every,
            out,
            format,
            jobs,
            stop_after,
        } => {
            let params = ScanParams { vars, socle_max, prefix: parse_seq(&prefix)?, filters: canonical_filters(&filters)?, dfs_cap };
            let options = ScanOptions { jobs, checkpoint, checkpoint_every, stop_after, ..ScanOptions::new(params) };
            let report = run_scan(&options)?;
            if let Some(path) = &out {
                let mut w = BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
                match format {
                    Format::Json => report.write_json(&mut w)?,
                    Format::Csv => report.write_csv(&mut w)?,
                }
                w.flush()?;
            }
            print!("{}", report.summary());
            Ok(if !report.is_complete() {
                ExitCode::from(1)
            } else if report.counts.unresolved > 0 {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::CheckHf { seq, vars, filters, dfs_cap } => {
            let h = HilbertFunction::new(parse_seq(&seq)?)?;
            let options = ClassifyOptions { filters: filters.parse()?, dfs_cap, ..ClassifyOptions::default() };
            let (text, status) = check_hf(&h, vars, &options)?;
            print!("{text}");
            Ok(if status == "UNRESOLVED" { ExitCode::from(2) } else { ExitCode::SUCCESS })
        }
        Command::CheckIdeal { spec, truncate, characteristic, degree_cap, vars, cross_check } => {
            let ideal = parse_ideal(&spec, vars)?;
            let options = IdealOptions { truncate, characteristic, degree_cap, cross_check };
            print!("{}", check_ideal(&ideal, &options)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            match e.downcast_ref::<multbound::Error>() {
                Some(core) => eprintln!("error: {}: {e:#}", core.code()),
                None => eprintln!("error: {e:#}"),
            }
            ExitCode::from(1)
        }
    }
}
