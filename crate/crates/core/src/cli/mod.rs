//! Scenario files, the verification suites and the report they produce.

pub mod random;
mod scenario;
mod suites;

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use random::RandomGen;
pub use scenario::{generate_random, ChristoffelEntry, Instance, Scenario, SymbolTerm, RANDOM_WEIGHTS};
pub use suites::{
    alternate_a, geodesic_gap, perturbed_params, reference_affine_map, resonant_weights, run_suite, shift_residual,
    Verdict, GEODESIC_TOLERANCE, SUITE_NAMES,
};

use crate::error::{Error, Result};

/// Residual texts longer than this are cut in the report.
pub const RESIDUAL_CHARS: usize = 160;

const SPOT_POINTS: usize = 5;

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Overrides the scenario's suite list when nonempty.
    pub suites: Vec<String>,
    pub float_spot_check: bool,
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub name: String,
    pub verdict: Verdict,
    /// Largest `|residual|` at the spot-check points, when requested.
    pub spot_check: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub outcomes: Vec<SuiteOutcome>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.verdict.passed())
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for o in &self.outcomes {
            match &o.verdict {
                Verdict::Pass => {
                    let _ = writeln!(out, "[PASS] {}", o.name);
                }
                Verdict::Residual { what, residual, .. } => {
                    let _ = writeln!(out, "[FAIL] {}: residual = {} ({what})", o.name, truncate(residual));
                }
                Verdict::Failure(msg) => {
                    let _ = writeln!(out, "[FAIL] {}: {msg}", o.name);
                }
            }
            if let Some(v) = o.spot_check {
                let _ = writeln!(
                    out,
                    "       float spot-check: max |residual| = {v:.6e} at {SPOT_POINTS} points"
                );
            }
        }
        let passed = self.outcomes.iter().filter(|o| o.verdict.passed()).count();
        let _ = writeln!(out, "summary: {passed} passed, {} failed", self.outcomes.len() - passed);
        out
    }
}

fn truncate(s: &str) -> String {
    if s.chars().count() <= RESIDUAL_CHARS {
        s.to_string()
    } else {
        format!("{}...", s.chars().take(RESIDUAL_CHARS).collect::<String>())
    }
}

fn spot_check(verdict: &Verdict, m: usize, seed: u64) -> f64 {
    let polys = match verdict {
        Verdict::Residual { polys, .. } => polys,
        _ => return 0.0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..SPOT_POINTS {
        let x: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        for p in polys {
            if let Ok(v) = p.eval_f64(&x) {
                worst = worst.max(v.abs());
            }
        }
    }
    worst
}

/// Runs the selected suites concurrently; outcomes are ordered by suite name.
pub fn run_scenario(scenario: &Scenario, opts: &RunOptions) -> Result<Report> {
    let mut names: Vec<String> = if !opts.suites.is_empty() {
        opts.suites.clone()
    } else if !scenario.suites.is_empty() {
        scenario.suites.clone()
    } else {
        SUITE_NAMES.iter().map(|s| s.to_string()).collect()
    };
    if let Some(bad) = names.iter().find(|n| !SUITE_NAMES.contains(&n.as_str())) {
        return Err(Error::UnknownSuite(bad.clone()));
    }
    names.sort();
    names.dedup();
    let inst = scenario.instance()?;
    let verdicts: Vec<Verdict> = std::thread::scope(|s| {
        let handles: Vec<_> = names.iter().map(|n| s.spawn(|| run_suite(n, &inst))).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Verdict::Failure("suite panicked".into())))
            .collect()
    });
    let outcomes = names
        .into_iter()
        .zip(verdicts)
        .map(|(name, verdict)| {
            let spot_check = opts
                .float_spot_check
                .then(|| spot_check(&verdict, scenario.m, scenario.seed));
            SuiteOutcome {
                name,
                verdict,
                spot_check,
            }
        })
        .collect();
    Ok(Report { outcomes })
}
