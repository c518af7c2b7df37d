use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;

/// Additive slack, scaled by `|rhs|`, used by default in certifications.
pub const DEFAULT_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// `lhs = rhs = 0`: nothing to certify.
    Degenerate,
    /// `rhs = ∞`: the inequality holds trivially.
    Vacuous,
}

impl Verdict {
    /// Anything but `Fail` counts as certified.
    pub fn ok(self) -> bool {
        self != Verdict::Fail
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Degenerate => "degenerate",
            Verdict::Vacuous => "vacuous",
        })
    }
}

/// `lhs ≤ rhs + slack·|rhs|`, with the degenerate and vacuous cases split out.
pub fn certify(lhs: f64, rhs: f64, slack: f64) -> Verdict {
    if rhs.is_infinite() && rhs > 0.0 {
        Verdict::Vacuous
    } else if rhs == 0.0 && lhs == 0.0 {
        Verdict::Degenerate
    } else if lhs <= rhs + slack * rhs.abs() {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

pub fn ratio(lhs: f64, rhs: f64) -> f64 {
    if rhs == 0.0 {
        f64::NAN
    } else {
        lhs / rhs
    }
}

/// One certified inequality instance, or the worst instance of a campaign.
#[derive(Debug, Clone, Serialize)]
pub struct InequalityReport {
    pub check: String,
    pub lhs: f64,
    pub rhs: f64,
    pub constant: f64,
    /// `lhs / rhs` (NaN when `rhs = 0`); for campaigns, the maximum over trials.
    pub ratio: f64,
    pub slack: f64,
    pub verdict: Verdict,
    pub trials: usize,
    pub attained_at: Option<String>,
    pub grid_meta: BTreeMap<String, String>,
}

impl InequalityReport {
    pub fn new(check: impl Into<String>, lhs: f64, rhs: f64, constant: f64, slack: f64) -> Self {
        Self {
            check: check.into(),
            lhs,
            rhs,
            constant,
            ratio: ratio(lhs, rhs),
            slack,
            verdict: certify(lhs, rhs, slack),
            trials: 1,
            attained_at: None,
            grid_meta: BTreeMap::new(),
        }
    }

    pub fn meta(mut self, key: &str, value: impl ToString) -> Self {
        self.grid_meta.insert(key.to_string(), value.to_string());
        self
    }

    pub fn at(mut self, what: impl Into<String>) -> Self {
        self.attained_at = Some(what.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict.ok()
    }

    /// Marks the report failed with a reason, e.g. a side condition that broke.
    pub fn fail(mut self, reason: impl Into<String>) -> Self {
        self.verdict = Verdict::Fail;
        self.grid_meta.insert("failure".into(), reason.into());
        self
    }
}

/// Result of one campaign trial.
#[derive(Debug, Clone)]
pub struct Trial {
    pub lhs: f64,
    pub rhs: f64,
    pub description: String,
    /// Extra side condition checked in the trial (e.g. a Hölder chain link).
    pub side_ok: bool,
}

/// Runs `trials` independent trials in parallel and merges them in trial
/// order: the report keeps the trial with the largest ratio.
pub fn run_campaign<F>(check: &str, constant: f64, slack: f64, trials: usize, trial: F) -> Result<InequalityReport>
where
    F: Fn(usize) -> Result<Trial> + Sync + Send,
{
    let results: Vec<Result<Trial>> = (0..trials).into_par_iter().map(&trial).collect();
    let mut worst: Option<(f64, Trial)> = None;
    let (mut fails, mut degenerate, mut side_fails) = (0usize, 0usize, 0usize);
    for r in results {
        let t = r?;
        match certify(t.lhs, t.rhs, slack) {
            Verdict::Fail => fails += 1,
            Verdict::Degenerate => degenerate += 1,
            _ => {}
        }
        if !t.side_ok {
            side_fails += 1;
        }
        let q = if t.lhs == 0.0 { 0.0 } else { ratio(t.lhs, t.rhs) };
        let q = if q.is_nan() { f64::INFINITY } else { q };
        if worst.as_ref().is_none_or(|(w, _)| q > *w) {
            worst = Some((q, t));
        }
    }
    let mut report = match worst {
        Some((q, t)) => {
            let mut r = InequalityReport::new(check, t.lhs, t.rhs, constant, slack).at(t.description);
            r.ratio = q;
            r
        }
        None => {
            let mut r = InequalityReport::new(check, 0.0, 0.0, constant, slack);
            r.ratio = 0.0;
            r.verdict = Verdict::Degenerate;
            r
        }
    };
    report.trials = trials;
    report.verdict = if fails > 0 || side_fails > 0 {
        Verdict::Fail
    } else if degenerate == trials {
        Verdict::Degenerate
    } else {
        Verdict::Pass
    };
    Ok(report
        .meta("failed_trials", fails)
        .meta("degenerate_trials", degenerate)
        .meta("side_condition_failures", side_fails))
}
