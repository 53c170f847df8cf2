//! Command implementations behind the `renyi-uncertainty` binary.
//!
//! Each command returns its rendered output together with an exit code:
//! 0 when everything holds, 1 for input or usage errors, 2 when a bound
//! violation was detected.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

pub mod fuzz;
pub mod instance;

use crate::bounds::{check_instance, BoundReport};
use crate::entropy::{ConjugatePair, RenyiOrder};
use crate::quantum::COMPLETENESS_TOL;
use crate::scenarios::{paper_example_report, PaperExample};
use fuzz::{run_fuzz, FuzzConfig, FuzzSummary};
use instance::InstanceFile;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

/// Orders evaluated by `check` when the file names none.
pub const DEFAULT_ORDERS: [f64; 3] = [0.5, 1.0, 2.0];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(serde_json::Error),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("usage error: {0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_INPUT
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub text: String,
    pub exit_code: i32,
}

fn fmt9(x: f64) -> String {
    format!("{x:.9}")
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialises")
}

/// `check <file> [--json] [--tol T]`. `tol` overrides the POVM
/// completeness tolerance.
pub fn cmd_check(path: &Path, json: bool, tol: Option<f64>) -> Result<CommandOutput, CliError> {
    let file = InstanceFile::load(path)?;
    check_file(&file, json, tol)
}

pub fn check_file(file: &InstanceFile, json: bool, tol: Option<f64>) -> Result<CommandOutput, CliError> {
    let tol = tol.unwrap_or(COMPLETENESS_TOL);
    if !(tol.is_finite() && tol > 0.0) {
        return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
    }
    let inst = file.resolve(tol)?;
    let orders = if inst.orders.is_empty() && file.orders.is_none() {
        DEFAULT_ORDERS.iter().map(|&a| RenyiOrder::new(a).unwrap()).collect()
    } else {
        inst.orders.clone()
    };
    let pairs: Vec<ConjugatePair> = inst.pair.into_iter().collect();
    let (m_name, m) = &inst.povms[0];
    let n = inst.povms.get(1);
    let mut report = check_instance(m, n.map(|(_, p)| p), &inst.rho, &pairs, &orders)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    report.measurements[0].name = m_name.clone();
    if let Some((n_name, _)) = n {
        report.measurements[1].name = n_name.clone();
    }
    let text = if json { to_json(&report) } else { render_report(&report) };
    Ok(CommandOutput {
        text,
        exit_code: if report.is_ok() { EXIT_OK } else { EXIT_VIOLATION },
    })
}

pub fn render_report(r: &BoundReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "dimension {}", r.dim);
    for m in &r.measurements {
        let _ = writeln!(s, "\nmeasurement {} ({} outcomes)", m.name, m.probabilities.len());
        let probs: Vec<String> = m.probabilities.iter().map(|&p| fmt9(p)).collect();
        let _ = writeln!(s, "  probabilities                  [{}]", probs.join(", "));
        for e in &m.entropies {
            let _ = writeln!(s, "  H_{:<28} {}", e.order.to_string(), fmt9(e.bits));
        }
        let _ = writeln!(s, "  phi                            {}", fmt9(m.phi));
        let _ = writeln!(
            s,
            "  relation2 bound                {}  slack {}",
            fmt9(m.relation2_bound),
            fmt9(m.relation2_slack)
        );
        let _ = writeln!(
            s,
            "  state-independent single bound {}  slack {}",
            fmt9(m.state_independent_single_bound),
            fmt9(m.state_independent_single_slack)
        );
    }
    if let Some(p) = &r.pair {
        let _ = writeln!(s, "\npair");
        if let (Some(f), Some(b)) = (p.f, p.relation1_bound) {
            let _ = writeln!(s, "  f                              {}", fmt9(f));
            let _ = writeln!(s, "  relation1 bound                {}", fmt9(b));
        }
        let _ = writeln!(s, "  max root-product norm          {}", fmt9(p.max_root_product_norm));
        let _ = writeln!(s, "  uncoupled bound                {}", fmt9(p.uncoupled_bound));
        let _ = writeln!(
            s,
            "  state-independent pair bound   {}",
            fmt9(p.state_independent_pair_bound)
        );
        for e in &p.coupled {
            let _ = writeln!(
                s,
                "  (alpha {}, beta {}): H sum {}  relation1 slack {}  uncoupled slack {}  pair slack {}",
                e.alpha,
                e.beta,
                fmt9(e.lhs_entropy_sum),
                fmt9(e.relation1_slack),
                fmt9(e.uncoupled_slack),
                fmt9(e.state_independent_pair_slack)
            );
        }
        let _ = writeln!(
            s,
            "  uncoupled: min H sum {}  slack {}",
            fmt9(p.uncoupled_min_lhs),
            fmt9(p.uncoupled_slack)
        );
    }
    if r.violations.is_empty() {
        let _ = writeln!(s, "\nviolations: none");
    } else {
        let _ = writeln!(s, "\nviolations: {}", r.violations.len());
        for v in &r.violations {
            let _ = writeln!(s, "  {} slack {:e}", v.bound, v.slack);
        }
    }
    s
}

/// `paper-example [--pair A B] [--json]`.
pub fn cmd_paper_example(pair: Option<(f64, f64)>, json: bool) -> Result<CommandOutput, CliError> {
    let pair = match pair {
        Some((a, b)) => {
            ConjugatePair::new(a, b).map_err(|e| CliError::Usage(format!("--pair: {e}")))?
        }
        None => ConjugatePair::from_alpha(2.0).expect("2 is a valid order"),
    };
    let ex = paper_example_report(pair).map_err(|e| CliError::Validation(e.to_string()))?;
    let text = if json { to_json(&ex) } else { render_example(&ex) };
    Ok(CommandOutput {
        text,
        exit_code: if ex.all_pass() { EXIT_OK } else { EXIT_VIOLATION },
    })
}

pub fn render_example(ex: &PaperExample) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "|0> vs |+>: unambiguous POVM (M) and Helstrom PVM (N), alpha = {}, beta = {}\n",
        ex.alpha, ex.beta
    );
    let _ = writeln!(
        s,
        "{:<32} {:>14} {:>14} {:>8}  result",
        "quantity", "computed", "closed form", "printed"
    );
    for r in &ex.rows {
        let printed = r.printed.map(|p| format!("{p}")).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            s,
            "{:<32} {:>14} {:>14} {:>8}  {}",
            r.name,
            fmt9(r.computed),
            fmt9(r.closed_form),
            printed,
            if r.pass { "PASS" } else { "FAIL" }
        );
    }
    let _ = writeln!(
        s,
        "\nbound violations on |0>: {}",
        if ex.report.is_ok() { "none".to_string() } else { ex.report.violations.len().to_string() }
    );
    s
}

/// Parses `LO..HI` (inclusive) or a single value.
pub fn parse_range(text: &str) -> Result<std::ops::RangeInclusive<usize>, CliError> {
    let bad = || CliError::Usage(format!("expected LO..HI, got '{text}'"));
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
        None => (text, text),
    };
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

/// `fuzz --seed S --trials N --dims LO..HI [--outcomes LO..HI] [--rank-one] [--jobs J]`.
pub fn cmd_fuzz(config: &FuzzConfig, json: bool) -> Result<CommandOutput, CliError> {
    let summary = run_fuzz(config).map_err(CliError::Usage)?;
    let text = if json { to_json(&summary) } else { render_fuzz(&summary) };
    let exit_code = if summary.violations > 0 {
        EXIT_VIOLATION
    } else if !summary.errors.is_empty() {
        EXIT_INPUT
    } else {
        EXIT_OK
    };
    Ok(CommandOutput { text, exit_code })
}

pub fn render_fuzz(f: &FuzzSummary) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "master seed {}  trials {}", f.master_seed, f.trials);
    let _ = writeln!(
        s,
        "states: {} pure, {} mixed; rank-one trials {}",
        f.pure_states, f.mixed_states, f.rank_one_trials
    );
    let _ = writeln!(s, "violations: {}", f.violations);
    for t in &f.failed {
        let names: Vec<&str> = t.violations.iter().map(|v| v.bound.as_str()).collect();
        let _ = writeln!(s, "  trial {} seed {}: {}", t.index, t.seed, names.join(", "));
    }
    for e in &f.errors {
        let _ = writeln!(s, "  trial {} seed {} failed: {}", e.index, e.seed, e.error);
    }
    let _ = writeln!(s, "min slack per bound:");
    for (k, v) in &f.min_slack {
        let _ = writeln!(s, "  {k:<26} {}", fmt9(*v));
    }
    if let Some(g) = f.max_saturation_gap {
        let _ = writeln!(s, "max rank-one saturation gap  {g:.3e}");
    }
    let _ = writeln!(
        s,
        "relation1 > uncoupled: {}   uncoupled > relation1: {}",
        f.relation1_above_uncoupled, f.uncoupled_above_relation1
    );
    s
}
