//! `rankfilt`: reports on the rank filtration of the spectra `𝕊^{k,l}`.
//!
//! Exit codes: 0 success, 2 usage or contract error, 3 the two Poincaré
//! engines disagree, 4 a verification failed (the report is still
//! printed), 5 a resource limit was hit, 1 anything else.

mod cache;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Result};
use clap::{Parser, Subcommand};
use rankfilt_core::cartan::{Engine, Evaluator};
use rankfilt_core::combinat::{enumerate_summands, latching_quotient, subquotient_summands, MaxRank, RankContext};
use rankfilt_core::decomp::{cube_report, CubeParams};
use rankfilt_core::spectra::{ku_limit_series, small_range_report, ReportOptions};
use rankfilt_core::{Error, OrbitDescriptor};
use serde::Serialize;

use crate::cache::FileCache;
use crate::config::Config;
use crate::output::Format;

#[derive(Parser)]
#[command(name = "rankfilt", version)]
#[command(about = "Exact invariants of the rank filtration of matrix-algebra spectra")]
struct Cli {
    /// Emit JSON
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,

    /// Emit CSV
    #[arg(long, global = true)]
    csv: bool,

    /// Poincaré engine
    #[arg(long, global = true, value_parser = parse_engine)]
    engine: Option<Engine>,

    /// TOML configuration file
    #[arg(long, global = true, env = "RANKFILT_CONFIG")]
    config: Option<PathBuf>,

    /// JSON cache file for computed polynomials
    #[arg(long, global = true, env = "RANKFILT_CACHE")]
    cache: Option<PathBuf>,

    /// Ignore any cache file
    #[arg(long, global = true)]
    no_cache: bool,

    /// Recompute every cached entry and fail if any differs
    #[arg(long, global = true)]
    verify_cache: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// List wedge-summand index tuples of G_{k,l}([t])
    Summands {
        k: u32,
        l: u32,
        t: usize,
        /// Bound on the rank of the tuples
        #[arg(long)]
        max_rank: Option<u32>,
        /// Tuples of rank exactly m
        #[arg(long, value_name = "M", conflicts_with = "latching")]
        subquotient: Option<u32>,
        /// Tuples with every entry positive
        #[arg(long)]
        latching: bool,
        /// With --subquotient, only tuples with every entry positive
        #[arg(long, requires = "subquotient")]
        positive_only: bool,
    },
    /// Poincaré polynomial of an orbit space U(k)/H
    Poincare {
        descriptor: String,
        #[arg(long)]
        cutoff: Option<u32>,
    },
    /// The cube of chains of decompositions of C^m and its verification
    Cube {
        m: u32,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value_t = 1)]
        l: u32,
        #[arg(long)]
        cutoff: Option<u32>,
        /// Allow m above the configured limit
        #[arg(long)]
        allow_large: bool,
    },
    /// Filtration report for S^{k,l}
    Report {
        k: u32,
        l: u32,
        #[arg(long)]
        cutoff: Option<u32>,
    },
    /// Series of the k → ∞ limit over tuples of bounded rank
    KuSeries {
        l: u32,
        t: u32,
        #[arg(long, default_value_t = 12)]
        cutoff: u32,
        #[arg(long, default_value_t = 1)]
        max_rank: u32,
    },
}

fn parse_engine(s: &str) -> Result<Engine, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// How a successful run ended.
enum Outcome {
    Ok,
    VerificationFailed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(4),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::ContractViolation(_) | Error::Parse { .. } | Error::NotTorusCommensurable(_)) => 2,
        Some(Error::EngineMismatch { .. }) => 3,
        Some(Error::InvariantViolation(_) | Error::NonExactDivision(_)) => 4,
        Some(Error::ResourceLimit { .. }) => 5,
        None => 1,
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Text
    };
    let engine = cli.engine.or(config.engine).unwrap_or_default();
    let engine_config = config.engine_config();
    let mut evaluator = Evaluator::new(engine, engine_config);

    let cache_path = if cli.no_cache { None } else { cli.cache.clone().or(config.cache.clone()) };
    let file_cache = cache_path.as_deref().map(FileCache::open);
    if let Some(fc) = &file_cache {
        evaluator = evaluator.with_cache(fc.memo());
    }

    let mut outcome = Outcome::Ok;
    if cli.verify_cache {
        let fc = file_cache
            .as_ref()
            .ok_or_else(|| anyhow!("--verify-cache needs a cache file (--cache or RANKFILT_CACHE)"))?;
        let mismatches = fc.verify(&engine_config)?;
        for m in &mismatches {
            eprintln!("cache mismatch: {m}");
        }
        eprintln!("verified {} cache entries, {} mismatches", fc.loaded_len(), mismatches.len());
        if !mismatches.is_empty() {
            outcome = Outcome::VerificationFailed;
        }
    }

    let Some(command) = cli.command else {
        if cli.verify_cache {
            return Ok(outcome);
        }
        return Err(Error::ContractViolation("no command given; see --help".into()).into());
    };

    let verified = match command {
        Command::Summands {
            k,
            l,
            t,
            max_rank,
            subquotient,
            latching,
            positive_only,
        } => {
            let context = RankContext::new(k, l)?;
            let bound = max_rank.map_or(MaxRank::Unbounded, MaxRank::Finite);
            let set = match (subquotient, latching) {
                (Some(m), _) => subquotient_summands(context, t, m, positive_only),
                (None, true) => latching_quotient(context, t, bound),
                (None, false) => enumerate_summands(context, t, bound),
            };
            let note = (l > k).then(|| format!("l > k: S^{{{k},{l}}} is contractible"));
            if let Some(n) = &note {
                eprintln!("note: {n}");
            }
            match format {
                Format::Json => output::json(&SummandsOut {
                    k,
                    l,
                    t,
                    rows: set.tuples.iter().map(|x| x.entries.clone()).collect(),
                    note,
                })?,
                f => output::summands(&set, f)?,
            }
            true
        }
        Command::Poincare { descriptor, cutoff } => {
            let descriptor: OrbitDescriptor = descriptor.parse()?;
            let cutoff = cutoff.or(config.cutoff);
            let p = evaluator.poincare(&descriptor, cutoff)?;
            match format {
                Format::Json => output::json(&PoincareOut {
                    descriptor: descriptor.to_string(),
                    engine: engine.name(),
                    truncation: p.truncation(),
                    poincare: &p,
                })?,
                f => output::poincare(&p, f)?,
            }
            true
        }
        Command::Cube {
            m,
            k,
            l,
            cutoff,
            allow_large,
        } => {
            if m > config.max_cube_m() && !allow_large {
                return Err(Error::ContractViolation(format!(
                    "m = {m} is above the limit {}; pass --allow-large",
                    config.max_cube_m()
                ))
                .into());
            }
            let params = CubeParams {
                m,
                l,
                k: k.unwrap_or(l * m),
                cutoff: cutoff.or(config.cutoff),
            };
            let report = cube_report(params, &evaluator)?;
            match format {
                Format::Json => output::json(&report)?,
                f => output::cube(&report, f)?,
            }
            report.all_verified
        }
        Command::Report { k, l, cutoff } => {
            let mut options = ReportOptions {
                cutoff: cutoff.or(config.cutoff),
                max_cube_m: config.max_cube_m(),
                ..ReportOptions::default()
            };
            if let Some(max_k) = config.max_k {
                options.max_k = max_k;
            }
            let report = small_range_report(k, l, &options, &evaluator)?;
            match format {
                Format::Json => output::json(&report)?,
                f => output::report(&report, f)?,
            }
            report.all_verified
        }
        Command::KuSeries { l, t, cutoff, max_rank } => {
            let series = ku_limit_series(l, t, max_rank, cutoff, &[0, 2], &evaluator)?;
            match format {
                Format::Json => output::json(&series)?,
                f => output::ku_series(&series, f)?,
            }
            series.stabilizes()
        }
    };

    if let Some(fc) = &file_cache {
        if let Err(e) = fc.save() {
            eprintln!("warning: could not write cache: {e:#}");
        }
    }
    if !verified {
        outcome = Outcome::VerificationFailed;
    }
    Ok(outcome)
}

#[derive(Serialize)]
struct SummandsOut {
    k: u32,
    l: u32,
    t: usize,
    rows: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

#[derive(Serialize)]
struct PoincareOut<'a> {
    descriptor: String,
    engine: &'static str,
    truncation: Option<u32>,
    poincare: &'a rankfilt_core::PoincarePoly,
}
