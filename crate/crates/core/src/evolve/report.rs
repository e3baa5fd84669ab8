use std::fmt::Write as _;

use serde::Serialize;

use super::CandidateArchive;
use crate::rational::RationalValue;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub delta: u32,
    /// Smallest archived I' at this δ; `None` prints as `Null`.
    pub best: Option<RationalValue>,
    /// Archived records at this δ.
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub n: usize,
    pub k: u32,
    pub rows: Vec<ReportRow>,
}

pub fn report(archive: &CandidateArchive) -> Report {
    let rows = archive
        .scope
        .iter()
        .map(|delta| {
            let at: Vec<_> = archive.records.iter().filter(|r| r.delta == delta).collect();
            ReportRow {
                delta,
                best: at.iter().map(|r| r.i_prime).min(),
                count: at.len(),
            }
        })
        .collect();
    Report {
        n: archive.n,
        k: archive.k,
        rows,
    }
}

fn best_str(best: Option<RationalValue>) -> String {
    best.map_or_else(|| "Null".to_string(), |v| v.to_string())
}

impl Report {
    /// `(δ, I')` pairs, e.g. `(2, 5/1)  (3, Null)`.
    pub fn optima_line(&self) -> String {
        self.rows
            .iter()
            .map(|r| format!("({}, {})", r.delta, best_str(r.best)))
            .collect::<Vec<_>>()
            .join("  ")
    }

    /// Archived-graph counts per δ.
    pub fn counts_line(&self) -> String {
        self.rows
            .iter()
            .map(|r| format!("({}, {})", r.delta, r.count))
            .collect::<Vec<_>>()
            .join("  ")
    }

    pub fn total(&self) -> usize {
        self.rows.iter().map(|r| r.count).sum()
    }

    pub fn to_text(&self) -> String {
        format!(
            "n = {}, k = {}\n(delta, I'):  {}\n(delta, count):  {}\n",
            self.n,
            self.k,
            self.optima_line(),
            self.counts_line()
        )
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,delta,i_prime,count\n");
        for r in &self.rows {
            writeln!(out, "{},{},{},{},{}", self.n, self.k, r.delta, best_str(r.best), r.count).unwrap();
        }
        out
    }
}
