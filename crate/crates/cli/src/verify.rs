//! The estimator-consistency panel.
//!
//! For every law of the panel the series bracket, the forward chain and the
//! stationary estimator must agree at three standard errors, and the
//! Barak-Erdős estimate must fall in the geometric bracket. Sample sizes are
//! fixed by the budget flag alone, so the output files only depend on the
//! seed and the flags.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use infbin::graph::estimate_c;
use infbin::series::{enumerate_minimal, SpeedBracket, Truncation};
use infbin::sim::{run_forward_replicas, stationary_speed, PerfectOptions};
use infbin::words::{classify, coupling_number, Classification, Verdict};
use infbin::{Configuration, MoveDistribution};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::commands::emit;

#[derive(Debug, Error)]
#[error("{failed} of {total} checks failed")]
pub struct VerificationFailed {
    pub failed: usize,
    pub total: usize,
}

#[derive(Debug, Serialize)]
struct Check {
    name: String,
    pass: bool,
    value: f64,
    lower: f64,
    upper: f64,
}

const PANEL: [&str; 4] = ["geom:0.5", "geom:0.8", "unif:2", "unif:3"];
const SERIES_LEN: usize = 10;
const SERIES_MIN_WEIGHT: f64 = 1e-8;

fn parse_budget(s: &str) -> Result<f64> {
    let t = s.trim();
    let (num, unit) = match t.find(|c: char| c.is_ascii_alphabetic()) {
        Some(i) => t.split_at(i),
        None => (t, "s"),
    };
    let x: f64 = num.parse().with_context(|| format!("bad budget {s:?}"))?;
    let secs = match unit {
        "s" => x,
        "m" | "min" => 60.0 * x,
        _ => bail!("bad budget unit in {s:?}"),
    };
    if !(secs > 0.0) {
        bail!("budget must be positive");
    }
    Ok(secs)
}

fn scaled(base: u64, scale: f64) -> u64 {
    ((base as f64 * scale).round() as u64).max(1)
}

fn bracket(mu: &MoveDistribution) -> Result<SpeedBracket> {
    let a = mu
        .max_support()
        .unwrap_or(SERIES_LEN as u32)
        .min(SERIES_LEN as u32);
    let trunc = Truncation::new(SERIES_LEN, a).with_min_weight(SERIES_MIN_WEIGHT);
    Ok(enumerate_minimal(mu, trunc, None)?)
}

fn golden(checks: &mut Vec<Check>) -> Result<()> {
    let cases: [(&[u32], Verdict, Option<bool>); 5] = [
        (&[1], Verdict::Good, Some(true)),
        (&[1, 1], Verdict::Good, Some(false)),
        (&[1, 2], Verdict::Bad, Some(true)),
        (&[2, 1, 2], Verdict::Bad, Some(false)),
        (&[2, 2], Verdict::Neither, None),
    ];
    let words_ok = cases.iter().all(|(w, v, m)| {
        classify(w).ok()
            == Some(Classification {
                verdict: *v,
                minimal: *m,
            })
    });
    let coupling_ok =
        coupling_number(&[2, 3, 2, 2])? == 1 && coupling_number(&[2, 3, 2, 2, 5])? == 0;
    let pass = words_ok && coupling_ok;
    checks.push(Check {
        name: "golden_words".into(),
        pass,
        value: pass as u8 as f64,
        lower: 1.0,
        upper: 1.0,
    });
    Ok(())
}

pub fn run(seed: u64, panel: &str, budget: &str, out: Option<&Path>) -> Result<()> {
    if panel != "default" {
        bail!("unknown panel {panel:?} (only \"default\")");
    }
    let scale = (parse_budget(budget)? / 60.0).clamp(0.05, 100.0);
    let steps = scaled(50_000, scale);
    let replicas = 32;
    let samples = scaled(20_000, scale);
    let graph_n = scaled(5_000, scale);
    let graph_replicas = 40;

    let mut checks = Vec::new();
    let mut rows = Vec::new();
    golden(&mut checks)?;
    let x0 = Configuration::minimal(0);
    for spec in PANEL {
        let mu: MoveDistribution = spec.parse()?;
        let b = bracket(&mu)?;
        let f = run_forward_replicas(&mu, &x0, steps, replicas, seed)?;
        let s = stationary_speed(&mu, samples, seed, PerfectOptions::default())?;
        let sigma = f.stderr.hypot(s.stderr);
        checks.push(Check {
            name: format!("{spec}:forward_in_bracket"),
            pass: b.contains(f.estimate, 3.0 * f.stderr),
            value: f.estimate,
            lower: b.lower - 3.0 * f.stderr,
            upper: b.upper + 3.0 * f.stderr,
        });
        checks.push(Check {
            name: format!("{spec}:stationary_in_bracket"),
            pass: b.contains(s.estimate, 3.0 * s.stderr),
            value: s.estimate,
            lower: b.lower - 3.0 * s.stderr,
            upper: b.upper + 3.0 * s.stderr,
        });
        checks.push(Check {
            name: format!("{spec}:forward_vs_stationary"),
            pass: (f.estimate - s.estimate).abs() <= 3.0 * sigma,
            value: f.estimate - s.estimate,
            lower: -3.0 * sigma,
            upper: 3.0 * sigma,
        });
        if spec == "geom:0.5" {
            let g = estimate_c(0.5, graph_n, graph_replicas, seed)?;
            checks.push(Check {
                name: "begraph:p=0.5_in_bracket".into(),
                pass: b.contains(g.estimate, 3.0 * g.stderr),
                value: g.estimate,
                lower: b.lower - 3.0 * g.stderr,
                upper: b.upper + 3.0 * g.stderr,
            });
        }
        rows.push(json!({
            "mu": spec,
            "bracket": [b.lower, b.upper],
            "frontier_mass": b.frontier_mass,
            "forward": [f.estimate, f.stderr],
            "stationary": [s.estimate, s.stderr],
        }));
    }

    let failed = checks.iter().filter(|c| !c.pass).count();
    let mut csv = String::from("check,pass,value,lower,upper\n");
    for c in &checks {
        writeln!(
            csv,
            "{},{},{},{},{}",
            c.name, c.pass, c.value, c.lower, c.upper
        )?;
        println!("{} {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
    }
    let report = json!({
        "op": "verify",
        "panel": panel,
        "seed": seed,
        "params": {
            "budget_seconds": parse_budget(budget)?,
            "series": { "L": SERIES_LEN, "min_weight": SERIES_MIN_WEIGHT },
            "forward": { "steps": steps, "replicas": replicas },
            "stationary": { "samples": samples },
            "begraph": { "n": graph_n, "replicas": graph_replicas },
        },
        "rows": rows,
        "checks": checks,
        "failed": failed,
    });
    if out.is_some() {
        emit(
            out,
            "verify.json",
            &format!("{}\n", serde_json::to_string_pretty(&report)?),
        )?;
        emit(out, "verify.csv", &csv)?;
    }
    if failed > 0 {
        return Err(VerificationFailed {
            failed,
            total: checks.len(),
        }
        .into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budgets() {
        assert_eq!(parse_budget("60s").unwrap(), 60.0);
        assert_eq!(parse_budget("2m").unwrap(), 120.0);
        assert_eq!(parse_budget("30").unwrap(), 30.0);
        assert!(parse_budget("0s").is_err());
        assert!(parse_budget("1h").is_err());
    }
}
