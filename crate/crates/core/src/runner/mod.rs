//! Batch runner: executes the checks of a TOML configuration and writes a
//! comma-separated summary (`summary.csv`) and one JSON record per row
//! (`records.jsonl`).

mod config;
mod profile;
mod specs;

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

pub use config::{load_config, parse_config, CheckPlan, Overrides, PlannedCheck, RunConfig, Settings, CHECK_KINDS};
pub use profile::{emit_gamma_profile, gamma_profile};
pub use specs::{parse_exponent, parse_symbol_spec, parse_weight_spec};

use crate::error::{Error, Result};
use crate::inequalities::{
    chernykh_check, chi_bound_check, functional_campaign, jackson_campaign, minimal_delta_scan, operator_campaign,
    sharpness_search, v_hat_check, v_star_check, CampaignOptions, InequalityReport, TheoremReport, SHARPNESS_TOL,
};
use crate::kernel::check_weight_admissibility_scaled;
use crate::symbols::is_in_psi;

/// Header of the summary table.
pub const SUMMARY_HEADER: &str = "check,constant,max_ratio,slack,pass";

/// One line of the summary table.
#[derive(Debug, Clone, Serialize)]
pub struct SummaryRow {
    pub check: String,
    pub constant: f64,
    pub max_ratio: f64,
    pub slack: f64,
    pub pass: bool,
}

/// A summary row with its full record.
#[derive(Debug, Clone)]
pub struct CheckOutput {
    pub row: SummaryRow,
    pub record: Value,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub outputs: Vec<CheckOutput>,
    pub summary_path: PathBuf,
    pub records_path: PathBuf,
}

impl RunOutcome {
    pub fn all_passed(&self) -> bool {
        self.outputs.iter().all(|o| o.row.pass)
    }

    /// 0 iff every row passed.
    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }
}

fn report_output(name: String, kind: &str, r: &InequalityReport) -> CheckOutput {
    CheckOutput {
        row: SummaryRow {
            check: name.clone(),
            constant: r.constant,
            max_ratio: r.ratio,
            slack: r.slack,
            pass: r.passed(),
        },
        record: json!({ "check": name, "kind": kind, "report": r }),
    }
}

fn theorem_outputs(name: &str, kind: &str, t: &TheoremReport) -> Vec<CheckOutput> {
    let mut out = Vec::new();
    for e in &t.entries {
        let a = &e.admissibility;
        let check = format!("{name}/m{}/admissibility", e.m);
        out.push(CheckOutput {
            row: SummaryRow {
                check: check.clone(),
                constant: a.factor * a.mean_value,
                max_ratio: a.factor * a.mean_value / a.g.value,
                slack: a.tol,
                pass: a.certified,
            },
            record: json!({ "check": check, "kind": kind, "psi_class": e.psi_class, "admissibility": a }),
        });
        for c in &e.campaigns {
            out.push(report_output(format!("{name}/m{}/p{}", e.m, c.grid_meta["p"]), kind, c));
        }
    }
    out
}

/// Runs one planned check.
pub fn execute(check: &PlannedCheck) -> Result<Vec<CheckOutput>> {
    let name = check.name.clone();
    let kind = check.kind.as_str();
    let opts = CampaignOptions {
        slack: check.slack,
        window: check.window,
    };
    Ok(match &check.plan {
        CheckPlan::Operator { trials, seed, dim } => {
            let (b, e) = operator_campaign(*trials, *dim, *seed, check.slack)?;
            vec![
                report_output(format!("{name}/bound"), kind, &b),
                report_output(format!("{name}/extremal"), kind, &e),
            ]
        }
        CheckPlan::Functional { trials, seed } => {
            let (b, e) = functional_campaign(*trials, *seed, check.slack)?;
            vec![
                report_output(format!("{name}/bound"), kind, &b),
                report_output(format!("{name}/extremal"), kind, &e),
            ]
        }
        CheckPlan::Chernykh { m, n, trials, seed } => {
            vec![report_output(
                name,
                kind,
                &chernykh_check(*m, *n, *trials, *seed, &opts)?,
            )]
        }
        CheckPlan::ChiBound { m, n, trials, seed } => {
            vec![report_output(
                name,
                kind,
                &chi_bound_check(*m, *n, *trials, *seed, check.slack)?,
            )]
        }
        CheckPlan::MinimalDelta {
            m,
            n,
            trials,
            seed,
            step,
            max,
        } => {
            let count = (max / step + 1e-9).floor() as usize;
            let grid: Vec<f64> = (1..=count).map(|k| k as f64 * step).collect();
            let r = minimal_delta_scan(*m, *n, *trials, *seed, &grid)?;
            let observed = r.minimal_delta.unwrap_or(f64::INFINITY);
            vec![CheckOutput {
                row: SummaryRow {
                    check: name.clone(),
                    constant: r.bound,
                    max_ratio: observed / r.bound,
                    slack: r.grid_step / r.bound,
                    pass: r.consistent,
                },
                record: json!({ "check": name, "kind": kind, "scan": r }),
            }]
        }
        CheckPlan::VStar { m_list, trials, seed } => {
            theorem_outputs(&name, kind, &v_star_check(m_list, *trials, *seed, &opts)?)
        }
        CheckPlan::VHat { m_list, trials, seed } => {
            theorem_outputs(&name, kind, &v_hat_check(m_list, *trials, *seed, &opts)?)
        }
        CheckPlan::Admissibility { kernel, gamma, factor } => {
            let a = check_weight_admissibility_scaled(kernel, *gamma, *factor, check.slack.max(1e-6))?;
            vec![CheckOutput {
                row: SummaryRow {
                    check: name.clone(),
                    constant: a.factor * a.mean_value,
                    max_ratio: a.factor * a.mean_value / a.g.value,
                    slack: a.tol,
                    pass: a.certified,
                },
                record: json!({ "check": name, "kind": kind, "admissibility": a }),
            }]
        }
        CheckPlan::Sharpness { kernel, gamma, sigma } => {
            let mut r = sharpness_search(*sigma, kernel, gamma / sigma, None, check.slack)?;
            if !(r.ratio >= 1.0 - SHARPNESS_TOL) {
                let q = r.ratio;
                r = r.fail(format!("ratio {q} below 1 - {SHARPNESS_TOL:e}"));
            }
            vec![report_output(name, kind, &r)]
        }
        CheckPlan::Jackson {
            kernel,
            gamma,
            p,
            trials,
            seed,
        } => {
            vec![report_output(
                name,
                kind,
                &jackson_campaign(kernel, *gamma, *p, *trials, *seed, check.slack)?,
            )]
        }
        CheckPlan::PsiClass { symbol, grid } => {
            let r = is_in_psi(symbol, *grid)?;
            vec![CheckOutput {
                row: SummaryRow {
                    check: name.clone(),
                    constant: 0.0,
                    max_ratio: r.violations.len() as f64,
                    slack: r.tol,
                    pass: r.member,
                },
                record: json!({ "check": name, "kind": kind, "psi_class": r }),
            }]
        }
    })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// The summary table as text, header first.
pub fn summary_table(rows: &[SummaryRow]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            csv_field(&r.check),
            r.constant,
            r.max_ratio,
            r.slack,
            r.pass
        ));
    }
    out
}

/// Runs every check of `config` in a worker pool and writes the artifacts.
/// Rows follow config order whatever the completion order.
pub fn run_checks(config: &RunConfig) -> Result<RunOutcome> {
    let results: Vec<Result<Vec<CheckOutput>>> = config
        .checks
        .par_iter()
        .map(|c| {
            execute(c).map_err(|e| Error::Check {
                name: format!("{} (line {})", c.name, c.line),
                source: Box::new(e),
            })
        })
        .collect();
    let mut outputs = Vec::new();
    for r in results {
        outputs.extend(r?);
    }
    let dir = &config.settings.out;
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let summary_path = dir.join("summary.csv");
    let records_path = dir.join("records.jsonl");
    let rows: Vec<SummaryRow> = outputs.iter().map(|o| o.row.clone()).collect();
    std::fs::write(&summary_path, summary_table(&rows)).map_err(|e| Error::io(&summary_path, e))?;
    let mut records = String::new();
    for o in &outputs {
        records.push_str(&serde_json::to_string(&o.record).expect("records serialize"));
        records.push('\n');
    }
    std::fs::write(&records_path, records).map_err(|e| Error::io(&records_path, e))?;
    Ok(RunOutcome {
        outputs,
        summary_path,
        records_path,
    })
}

/// Loads `path`, applies `overrides` and runs it.
pub fn run_config(path: impl AsRef<Path>, overrides: &Overrides) -> Result<RunOutcome> {
    let config = load_config(path.as_ref(), overrides)?;
    run_checks(&config)
}
