//! Plain-text and CSV renderings. JSON goes straight through serde.

use std::io::Write;

use anyhow::Result;
use rankfilt_core::combinat::SummandSet;
use rankfilt_core::decomp::CubeReport;
use rankfilt_core::spectra::{FiltrationReport, KuSeries, Verdict};
use rankfilt_core::PoincarePoly;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub fn json(value: &impl Serialize) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn csv_rows<I, R>(header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(std::io::stdout().lock());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::RationallyTrivial => "rationally trivial",
        Verdict::Failed { .. } => "FAILED",
        Verdict::Skipped { .. } => "skipped",
    }
}

fn tuple(t: &[u32]) -> String {
    let parts: Vec<String> = t.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

fn set(u: &[u32]) -> String {
    let parts: Vec<String> = u.iter().map(u32::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn summands(set: &SummandSet, format: Format) -> Result<()> {
    match format {
        Format::Csv => csv_rows(
            &["tuple", "rank"],
            set.tuples.iter().map(|t| [t.to_string(), t.rank().to_string()]),
        ),
        _ => {
            let mut out = std::io::stdout().lock();
            for t in &set.tuples {
                writeln!(out, "{t}")?;
            }
            Ok(())
        }
    }
}

pub fn poincare(p: &PoincarePoly, format: Format) -> Result<()> {
    match format {
        Format::Csv => csv_rows(
            &["degree", "betti"],
            p.coefficients().iter().map(|(d, c)| [d.to_string(), c.to_string()]),
        ),
        _ => {
            println!("{p}");
            Ok(())
        }
    }
}

pub fn cube(r: &CubeReport, format: Format) -> Result<()> {
    if format == Format::Csv {
        let rows = r.vertices.iter().flat_map(|v| {
            v.orbits.iter().map(move |o| {
                [set(&v.subset), o.chain.to_string(), o.descriptor.to_string(), o.poincare.to_string()]
            })
        });
        return csv_rows(&["subset", "chain", "descriptor", "poincare"], rows);
    }
    let mut out = std::io::stdout().lock();
    let p = r.params;
    writeln!(out, "cube m={} l={} k={}", p.m, p.l, p.k)?;
    for v in &r.vertices {
        writeln!(out, "X({}) = {}", set(&v.subset), v.poincare)?;
        for o in &v.orbits {
            writeln!(out, "  {:<24} {:<32} {}", o.chain.to_string(), o.descriptor.to_string(), o.poincare)?;
        }
    }
    for e in &r.edges {
        let status = if e.verified { "ok" } else { "FAILED" };
        writeln!(out, "edge X({}) -> X({}): {status}", set(&e.extended), set(&e.base))?;
    }
    writeln!(out, "signed sum: {}", r.signed_sum)?;
    for f in &r.failures {
        writeln!(out, "failure: {f}")?;
    }
    writeln!(out, "verdict: {}", if r.all_verified { "verified" } else { "FAILED" })?;
    Ok(())
}

pub fn report(r: &FiltrationReport, format: Format) -> Result<()> {
    if format == Format::Csv {
        let rows = r.stages.iter().map(|s| {
            [
                r.k.to_string(),
                r.l.to_string(),
                s.m.to_string(),
                s.prime_power.to_string(),
                if s.m == 1 { "first stage" } else { verdict_name(&s.verdict) }.to_string(),
                s.poincare.as_ref().map_or(String::new(), ToString::to_string),
            ]
        });
        return csv_rows(&["k", "l", "m", "prime_power", "verdict", "poincare"], rows);
    }
    let mut out = std::io::stdout().lock();
    if r.vanishes {
        writeln!(out, "S^{{{},{}}}: vanishing (l > k)", r.k, r.l)?;
    } else {
        let stages = if r.one_stage { "one-stage".to_string() } else { format!("{} stages", r.length) };
        writeln!(out, "S^{{{},{}}}: {stages}", r.k, r.l)?;
    }
    for s in &r.stages {
        let pp = if s.prime_power { "yes" } else { "no" };
        write!(out, "stage {} (prime power: {pp}): {}: ", s.m, s.model)?;
        match (&s.verdict, &s.poincare) {
            (_, Some(p)) if s.m == 1 => writeln!(out, "{p}")?,
            (Verdict::Failed { failures }, _) => writeln!(out, "FAILED ({})", failures.join("; "))?,
            (Verdict::Skipped { reason }, _) => writeln!(out, "skipped ({reason})")?,
            (v, _) => writeln!(out, "{}", verdict_name(v))?,
        }
    }
    if let Some(p) = &r.rational_homology {
        writeln!(out, "rational homology: {p}")?;
    }
    if let Some(p) = &r.endomorphism {
        writeln!(out, "endomorphisms PU({}): {p}", r.k)?;
    }
    writeln!(out, "pi0 rank: {}", r.pi0)?;
    for n in &r.notes {
        writeln!(out, "note: {n}")?;
    }
    Ok(())
}

pub fn ku_series(s: &KuSeries, format: Format) -> Result<()> {
    if format == Format::Csv {
        let rows = s.summands.iter().map(|(t, p)| [tuple(t), p.to_string()]);
        return csv_rows(&["tuple", "series"], rows);
    }
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", s.series)?;
    for (t, p) in &s.summands {
        writeln!(out, "  {}: {p}", tuple(t))?;
    }
    for x in &s.stabilization {
        let status = if x.agrees { "ok" } else { "FAILED" };
        writeln!(out, "stabilization {} at k={} through t^{}: {status}", tuple(&x.tuple), x.k, x.agrees_through)?;
    }
    Ok(())
}
