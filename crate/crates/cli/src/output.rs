use std::io::Write;

use anyhow::Result;
use clap::ValueEnum;
use hardy_core::continuous::{PartsIdentity, SweepRow};
use hardy_core::fuzz::FuzzSummary;
use hardy_core::muckenhoupt::{ApScan, IntervalClassComparison, P0Solution, SelfImprovementCheck};
use hardy_core::InequalityReport;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        x.to_string()
    }
}

/// Anything a subcommand can print.
pub trait Emit: Serialize {
    fn header(&self) -> Vec<&'static str>;
    fn rows(&self) -> Vec<Vec<String>>;
    /// False when a checked inequality failed.
    fn verdict(&self) -> bool {
        true
    }
}

const REPORT_HEADER: [&str; 5] = ["lhs", "rhs", "ratio", "margin", "holds"];

fn report_row(r: &InequalityReport) -> Vec<String> {
    vec![num(r.lhs), num(r.rhs), num(r.ratio), num(r.margin), r.holds.to_string()]
}

impl Emit for InequalityReport {
    fn header(&self) -> Vec<&'static str> {
        REPORT_HEADER.to_vec()
    }
    fn rows(&self) -> Vec<Vec<String>> {
        vec![report_row(self)]
    }
    fn verdict(&self) -> bool {
        self.holds
    }
}


impl Emit for PartsIdentity {
    fn header(&self) -> Vec<&'static str> {
        vec!["lhs", "rhs", "residual", "tolerance", "holds"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            num(self.lhs),
            num(self.rhs),
            num(self.residual),
            num(self.tolerance),
            self.holds.to_string(),
        ]]
    }
    fn verdict(&self) -> bool {
        self.holds
    }
}

impl Emit for P0Solution {
    fn header(&self) -> Vec<&'static str> {
        vec!["q", "M", "p0", "residual", "iterations"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            num(self.q),
            num(self.m),
            num(self.p0),
            num(self.residual),
            self.iterations.to_string(),
        ]]
    }
}

impl Emit for ApScan {
    fn header(&self) -> Vec<&'static str> {
        vec!["a", "b", "characteristic"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        self.grid
            .iter()
            .zip(&self.characteristics)
            .map(|((a, b), c)| vec![num(*a), num(*b), num(*c)])
            .collect()
    }
}

impl Emit for IntervalClassComparison {
    fn header(&self) -> Vec<&'static str> {
        vec!["p", "prefix_sup", "suffix_sup", "interval_sup", "ratio", "monotone"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            num(self.exponent),
            num(self.prefix_sup),
            num(self.suffix_sup),
            num(self.interval_sup),
            num(self.ratio),
            self.monotone.to_string(),
        ]]
    }
}

impl Emit for SelfImprovementCheck {
    fn header(&self) -> Vec<&'static str> {
        let mut h = REPORT_HEADER.to_vec();
        h.extend(["M", "p0", "M_prime"]);
        h
    }
    fn rows(&self) -> Vec<Vec<String>> {
        let mut row = report_row(&self.report);
        row.extend([num(self.m), num(self.p0), num(self.m_prime)]);
        vec![row]
    }
    fn verdict(&self) -> bool {
        self.report.holds
    }
}

/// Sweep rows serialize as a bare JSON array.
#[derive(Debug, Serialize)]
#[serde(transparent)]
pub struct Sweep(pub Vec<SweepRow>);

impl Emit for Sweep {
    fn header(&self) -> Vec<&'static str> {
        vec!["d", "lhs", "rhs", "ratio"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        self.0
            .iter()
            .map(|r| vec![num(r.d), num(r.lhs), num(r.rhs), num(r.ratio)])
            .collect()
    }
}

/// Several fuzz corpora run under one seed.
#[derive(Debug, Serialize)]
pub struct FuzzRun {
    pub seed: u64,
    pub corpora: Vec<FuzzSummary>,
}

impl Emit for FuzzRun {
    fn header(&self) -> Vec<&'static str> {
        vec!["check", "cases", "failures", "min_relative_margin"]
    }
    fn rows(&self) -> Vec<Vec<String>> {
        self.corpora
            .iter()
            .flat_map(|s| &s.checks)
            .map(|c| {
                vec![
                    c.name.clone(),
                    c.cases.to_string(),
                    c.failures.to_string(),
                    num(c.min_relative_margin),
                ]
            })
            .collect()
    }
    fn verdict(&self) -> bool {
        self.corpora.iter().all(FuzzSummary::passed)
    }
}

pub fn write<E: Emit>(value: &E, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, value)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(value.header())?;
            for row in value.rows() {
                w.write_record(row)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
