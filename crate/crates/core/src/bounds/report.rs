use serde::Serialize;
use serde_json::json;

pub const REPORT_CSV_HEADER: &str = "check,param_i,param_ell,empirical,bound,sigma,pass";

/// Cells with fewer conditional samples are inconclusive rather than failed.
pub const MIN_CONDITIONAL_SAMPLES: u64 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CellStatus {
    Pass,
    Fail,
    Inconclusive,
}

impl CellStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CellStatus::Pass => "true",
            CellStatus::Fail => "false",
            CellStatus::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cell {
    /// Row label within the check, when it has more than one kind of row.
    pub label: Option<&'static str>,
    pub param_i: Option<u64>,
    pub param_ell: Option<u64>,
    pub empirical: f64,
    pub bound: f64,
    pub sigma: f64,
    /// Samples behind `empirical`.
    pub samples: u64,
    pub status: CellStatus,
}

impl Cell {
    /// Upper-bound cell: passes iff `empirical ≤ bound + 3σ`.
    pub(crate) fn upper(i: Option<u64>, ell: Option<u64>, hits: u64, samples: u64, bound: f64) -> Self {
        let (empirical, sigma) = proportion(hits, samples);
        let status = if samples < MIN_CONDITIONAL_SAMPLES {
            CellStatus::Inconclusive
        } else if empirical <= bound + 3.0 * sigma {
            CellStatus::Pass
        } else {
            CellStatus::Fail
        };
        Self {
            label: None,
            param_i: i,
            param_ell: ell,
            empirical,
            bound,
            sigma,
            samples,
            status,
        }
    }

    pub(crate) fn labelled(mut self, label: &'static str) -> Self {
        self.label = Some(label);
        self
    }
}

/// Empirical proportion and its standard error.
pub(crate) fn proportion(hits: u64, samples: u64) -> (f64, f64) {
    if samples == 0 {
        return (f64::NAN, f64::NAN);
    }
    let p = hits as f64 / samples as f64;
    (p, crate::stats::binomial_sigma(p, samples))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub s: f64,
    pub seed: u64,
    pub trials: u64,
    pub cells: Vec<Cell>,
}

fn opt(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl Report {
    pub fn failures(&self) -> usize {
        self.cells.iter().filter(|c| c.status == CellStatus::Fail).count()
    }

    pub fn inconclusive(&self) -> usize {
        self.cells.iter().filter(|c| c.status == CellStatus::Inconclusive).count()
    }

    pub fn all_pass(&self) -> bool {
        self.failures() == 0
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(REPORT_CSV_HEADER);
        out.push('\n');
        for c in &self.cells {
            let check = match c.label {
                Some(l) => format!("{}:{l}", self.check),
                None => self.check.clone(),
            };
            out.push_str(&format!(
                "{check},{},{},{},{},{},{}\n",
                opt(c.param_i),
                opt(c.param_ell),
                c.empirical,
                c.bound,
                c.sigma,
                c.status.as_str()
            ));
        }
        out
    }

    pub fn summary_json(&self) -> serde_json::Value {
        json!({
            "check": self.check,
            "cells": self.cells.len(),
            "failures": self.failures(),
            "seed": self.seed,
            "trials": self.trials,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_summary() {
        let r = Report {
            check: "t-tail".into(),
            s: 4.0,
            seed: 1,
            trials: 200,
            cells: vec![
                Cell::upper(Some(1), None, 200, 200, 1.0),
                Cell::upper(Some(2), None, 150, 200, 0.5),
                Cell::upper(Some(3), Some(2), 3, 50, 0.1),
            ],
        };
        assert_eq!(r.failures(), 1);
        assert_eq!(r.inconclusive(), 1);
        let csv = r.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], REPORT_CSV_HEADER);
        assert_eq!(lines[1], "t-tail,1,,1,1,0,true");
        assert!(lines[2].ends_with(",false") && lines[3].ends_with(",inconclusive"));
        assert_eq!(r.summary_json()["failures"], 1);
    }
}
