//! Command-line front end: `analyze`, `verify` and `scan`.
//!
//! Exit codes: 0 no entanglement detected / verification passed, 1 input or
//! validation error, 2 entanglement certified, 3 verification tolerance
//! breached.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::angular_momentum::SpinPair;
use crate::criteria::{Analyzer, CriteriaReport, VERDICT_TOL};
use crate::error::Error;
use crate::partial_transpose::{
    combined_sum_rule_residual, moment_matrix_determinant, moment_matrix_determinant_exact,
    vandermonde_determinant,
    SpectrumLiteral, SpectrumSolver, MULTIPLET_SNAP_TOL,
};
use crate::state::{random_state, ring_reduction, thermal_pair, StateLiteral, Su2State};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_ENTANGLED: i32 = 2;
pub const EXIT_BREACH: i32 = 3;

/// Method agreement required by `verify`.
pub const VERIFY_METHOD_TOL: f64 = 1e-9;
/// Residual bound required by `verify`.
pub const VERIFY_RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "su2ent", about = "Partial-transpose spectra and entanglement criteria for SU(2)-invariant spin pairs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every criterion for one state.
    Analyze(AnalyzeArgs),
    /// Cross-check the spectrum methods on seeded random states.
    Verify(VerifyArgs),
    /// Sweep a parameter and emit a CSV table.
    Scan(ScanArgs),
}

#[derive(Debug, Args, Clone)]
pub struct GeneratorArgs {
    /// State literal, e.g. '{"ts1":1,"ts2":1,"A":[1,0]}'.
    #[arg(long)]
    pub state: Option<String>,
    /// Twice the first spin.
    #[arg(long)]
    pub ts1: Option<u32>,
    /// Twice the second spin.
    #[arg(long)]
    pub ts2: Option<u32>,
    /// Multiplet weights, ascending J, comma separated.
    #[arg(long = "A", value_delimiter = ',', allow_hyphen_values = true)]
    pub weights: Option<Vec<f64>>,
    /// Gibbs state of coupling * S1·S2.
    #[arg(long)]
    pub thermal: bool,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub coupling: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    /// Nearest-neighbour pair of a thermal spin-1/2 Heisenberg ring of this size.
    #[arg(long)]
    pub ring: Option<usize>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    #[arg(long, default_value_t = VERDICT_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub ts1: u32,
    #[arg(long)]
    pub ts2: u32,
    #[arg(long, default_value_t = 200)]
    pub samples: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    /// beta | coupling | ring | simplex | a:<index>
    #[arg(long)]
    pub sweep: String,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub from: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub to: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub step: f64,
    #[arg(long, default_value_t = VERDICT_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn input_error(msg: impl std::fmt::Display) -> Self {
        Self { stdout: String::new(), stderr: format!("error: {msg}\n"), code: EXIT_INPUT }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let first = text.lines().next().unwrap_or("invalid arguments").to_string();
                Outcome { stdout: String::new(), stderr: first + "\n", code }
            } else {
                Outcome { stdout: text, stderr: String::new(), code }
            }
        }
    }
}

pub fn execute(command: Command) -> Outcome {
    let (outcome, out) = match command {
        Command::Analyze(a) => {
            let out = a.out.clone();
            (cmd_analyze(&a), out)
        }
        Command::Verify(v) => {
            let out = v.out.clone();
            (cmd_verify(&v), out)
        }
        Command::Scan(s) => {
            let out = s.out.clone();
            (cmd_scan(&s), out)
        }
    };
    match out {
        Some(path) if outcome.code != EXIT_INPUT => match std::fs::write(&path, &outcome.stdout) {
            Ok(()) => Outcome { stdout: String::new(), ..outcome },
            Err(e) => Outcome::input_error(format!("cannot write {}: {e}", path.display())),
        },
        _ => outcome,
    }
}

/// A generated state plus the residual of its dense extraction, if any.
struct Generated {
    state: Su2State,
    source: &'static str,
    invariance_residual: Option<f64>,
}

fn generate(g: &GeneratorArgs) -> Result<Generated, String> {
    if let Some(sites) = g.ring {
        let ex = ring_reduction(sites, g.beta).map_err(|e| e.to_string())?;
        return Ok(Generated {
            state: ex.state,
            source: "ring",
            invariance_residual: Some(ex.invariance_residual),
        });
    }
    if g.thermal {
        let (ts1, ts2) = spins(g)?;
        let state = thermal_pair(ts1, ts2, g.coupling, g.beta).map_err(|e| e.to_string())?;
        return Ok(Generated { state, source: "thermal", invariance_residual: None });
    }
    if let Some(text) = &g.state {
        let lit: StateLiteral =
            serde_json::from_str(text).map_err(|e| format!("malformed state literal: {e}"))?;
        let state = Su2State::from_literal(&lit).map_err(|e| e.to_string())?;
        return Ok(Generated { state, source: "literal", invariance_residual: None });
    }
    let (ts1, ts2) = spins(g)?;
    let weights = g.weights.clone().ok_or("missing --A (or --state, --thermal, --ring)")?;
    let state = Su2State::new(ts1, ts2, weights).map_err(|e| e.to_string())?;
    Ok(Generated { state, source: "literal", invariance_residual: None })
}

fn spins(g: &GeneratorArgs) -> Result<(u32, u32), String> {
    match (g.ts1, g.ts2) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err("both --ts1 and --ts2 are required".into()),
    }
}

#[derive(Serialize)]
struct AnalyzeDocument {
    source: &'static str,
    state: StateLiteral,
    spectrum: SpectrumLiteral,
    report: CriteriaReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    invariance_residual: Option<f64>,
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> Outcome {
    let generated = match generate(&args.generator) {
        Ok(g) => g,
        Err(msg) => return Outcome::input_error(msg),
    };
    let analyzer = Analyzer::new(*generated.state.pair());
    let spectrum = match analyzer.spectrum(&generated.state) {
        Ok(s) => s,
        Err(e) => return Outcome::input_error(e),
    };
    let report = match analyzer.report(&generated.state, args.tol) {
        Ok(r) => r,
        Err(e) => return Outcome::input_error(e),
    };
    let code = if report.entanglement_certified() { EXIT_ENTANGLED } else { EXIT_OK };
    let doc = AnalyzeDocument {
        source: generated.source,
        state: generated.state.to_literal(),
        spectrum: spectrum.to_literal(),
        report,
        invariance_residual: generated.invariance_residual,
    };
    let mut stdout = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    stdout.push('\n');
    Outcome { stdout, stderr: String::new(), code }
}

#[derive(Clone, Debug, Default, Serialize)]
struct SampleMetrics {
    method_deviation: f64,
    eigenvalue_deviation: f64,
    combined_residual: f64,
    trace_defect: f64,
    top_negativity: f64,
    closed_form_deviation: f64,
}

impl SampleMetrics {
    fn within_tolerance(&self) -> bool {
        self.method_deviation <= VERIFY_METHOD_TOL
            && self.eigenvalue_deviation <= VERIFY_METHOD_TOL
            && self.combined_residual <= VERIFY_RESIDUAL_TOL
            && self.trace_defect <= VERIFY_RESIDUAL_TOL
            && self.top_negativity <= 1e-12
            && self.closed_form_deviation <= VERIFY_METHOD_TOL
    }

    fn merge(&mut self, other: &SampleMetrics) {
        self.method_deviation = self.method_deviation.max(other.method_deviation);
        self.eigenvalue_deviation = self.eigenvalue_deviation.max(other.eigenvalue_deviation);
        self.combined_residual = self.combined_residual.max(other.combined_residual);
        self.trace_defect = self.trace_defect.max(other.trace_defect);
        self.top_negativity = self.top_negativity.max(other.top_negativity);
        self.closed_form_deviation = self.closed_form_deviation.max(other.closed_form_deviation);
    }
}

/// Runs all three spectrum methods on `state` and measures their agreement.
pub fn cross_check(solver: &SpectrumSolver, state: &Su2State) -> Result<CrossCheck, Error> {
    let diagonal = solver.from_diagonal(state)?;
    let sum_rules = solver.from_sum_rules(state)?;
    let dense = solver.from_dense(state, MULTIPLET_SNAP_TOL)?;
    let method_deviation = diagonal
        .max_abs_diff(&sum_rules.spectrum)
        .max(diagonal.max_abs_diff(&dense))
        .max(sum_rules.spectrum.max_abs_diff(&dense));
    let eigenvalue_deviation = solver
        .dense_eigenvalues(state)?
        .iter()
        .zip(diagonal.eigenvalues())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let mut combined_residual = 0.0_f64;
    let mut trace_defect = 0.0_f64;
    let mut top_negativity = 0.0_f64;
    for spectrum in [&diagonal, &sum_rules.spectrum, &dense] {
        combined_residual = combined_residual.max(combined_sum_rule_residual(state, spectrum)?.abs());
        trace_defect = trace_defect.max((spectrum.total() - 1.0).abs());
        top_negativity = top_negativity.max(-spectrum.top());
    }
    Ok(CrossCheck {
        method_deviation,
        eigenvalue_deviation,
        combined_residual,
        trace_defect,
        top_negativity,
        closed_form_deviation: sum_rules.closed_form_deviation,
    })
}

/// Agreement figures from [`cross_check`].
#[derive(Clone, Copy, Debug)]
pub struct CrossCheck {
    pub method_deviation: f64,
    pub eigenvalue_deviation: f64,
    pub combined_residual: f64,
    pub trace_defect: f64,
    pub top_negativity: f64,
    pub closed_form_deviation: f64,
}

impl From<CrossCheck> for SampleMetrics {
    fn from(c: CrossCheck) -> Self {
        Self {
            method_deviation: c.method_deviation,
            eigenvalue_deviation: c.eigenvalue_deviation,
            combined_residual: c.combined_residual,
            trace_defect: c.trace_defect,
            top_negativity: c.top_negativity,
            closed_form_deviation: c.closed_form_deviation,
        }
    }
}

#[derive(Serialize)]
struct VerifyDocument {
    ts1: u32,
    ts2: u32,
    samples: u64,
    seed: u64,
    passed: bool,
    #[serde(flatten)]
    metrics: SampleMetrics,
    vandermonde_determinant: f64,
    moment_matrix_determinant: f64,
    moment_matrix_determinant_lu: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    offending_seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    offending_state: Option<StateLiteral>,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<String>,
}

pub fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let pair = match SpinPair::new(args.ts1, args.ts2) {
        Ok(p) => p,
        Err(e) => return Outcome::input_error(e),
    };
    let solver = SpectrumSolver::new(pair);
    let seeds: Vec<u64> = (0..args.samples).map(|i| args.seed.wrapping_add(i)).collect();
    let results: Vec<(u64, Result<SampleMetrics, Error>)> = seeds
        .par_iter()
        .map(|&seed| {
            let metrics = random_state(pair.ts1(), pair.ts2(), seed)
                .and_then(|state| cross_check(&solver, &state))
                .map(SampleMetrics::from);
            (seed, metrics)
        })
        .collect();

    let mut total = SampleMetrics::default();
    let mut offending: Option<(u64, String)> = None;
    for (seed, result) in &results {
        match result {
            Ok(m) => {
                total.merge(m);
                if offending.is_none() && !m.within_tolerance() {
                    offending = Some((*seed, "tolerance exceeded".into()));
                }
            }
            Err(e) => {
                if offending.is_none() {
                    offending = Some((*seed, e.to_string()));
                }
            }
        }
    }

    let vdm = vandermonde_determinant(pair.ts1(), pair.ts2()).expect("pair already validated");
    let lu = moment_matrix_determinant(pair.ts1(), pair.ts2()).expect("pair already validated");
    let exact = moment_matrix_determinant_exact(pair.ts1(), pair.ts2()).expect("pair already validated");
    let det_ok = vdm > 0.0 && ((vdm - exact) / vdm).abs() <= VERIFY_METHOD_TOL;
    if offending.is_none() && !det_ok {
        offending = Some((args.seed, "moment-matrix determinant mismatch".into()));
    }

    let doc = VerifyDocument {
        ts1: pair.ts1(),
        ts2: pair.ts2(),
        samples: args.samples,
        seed: args.seed,
        passed: offending.is_none(),
        metrics: total,
        vandermonde_determinant: vdm,
        moment_matrix_determinant: exact,
        moment_matrix_determinant_lu: lu,
        offending_seed: offending.as_ref().map(|o| o.0),
        offending_state: offending
            .as_ref()
            .and_then(|o| random_state(pair.ts1(), pair.ts2(), o.0).ok())
            .map(|s| s.to_literal()),
        failure: offending.as_ref().map(|o| o.1.clone()),
    };
    let mut stdout = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    stdout.push('\n');
    match &offending {
        None => Outcome { stdout, stderr: String::new(), code: EXIT_OK },
        Some((seed, why)) => Outcome {
            stdout,
            stderr: format!("verification failed for seed {seed}: {why}\n"),
            code: EXIT_BREACH,
        },
    }
}

/// What a scan varies.
#[derive(Clone, Debug, PartialEq)]
pub enum SweepVariable {
    Beta,
    Coupling,
    RingSize,
    /// One weight, the others rescaled to keep the sum at one.
    Weight(usize),
    /// The first two weights on a triangular grid.
    Simplex,
}

impl std::str::FromStr for SweepVariable {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "beta" => Ok(Self::Beta),
            "coupling" => Ok(Self::Coupling),
            "ring" => Ok(Self::RingSize),
            "simplex" => Ok(Self::Simplex),
            other => other
                .strip_prefix("a:")
                .and_then(|i| i.parse().ok())
                .map(Self::Weight)
                .ok_or_else(|| format!("unknown sweep variable '{other}'")),
        }
    }
}

/// Points `from, from + step, ..., <= to`.
pub fn grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>, String> {
    if !(from.is_finite() && to.is_finite() && step.is_finite()) {
        return Err("grid bounds must be finite".into());
    }
    if step <= 0.0 || to < from {
        return Err(format!("empty or non-monotone grid: from {from} to {to} step {step}"));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| from + i as f64 * step).collect())
}

/// Formats a doubled label as `1`, `3/2`, ...
fn half_label(twice: u32) -> String {
    if twice.is_multiple_of(2) {
        (twice / 2).to_string()
    } else {
        format!("{twice}/2")
    }
}

fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Redistributes weight so that component `idx` equals `value`.
fn set_weight(base: &[f64], mult: &[u32], idx: usize, value: f64) -> Vec<f64> {
    set_weights(base, mult, &[(idx, value)])
}

fn set_weights(base: &[f64], mult: &[u32], fixed: &[(usize, f64)]) -> Vec<f64> {
    let is_fixed = |i: usize| fixed.iter().any(|&(j, _)| j == i);
    let remainder = 1.0 - fixed.iter().map(|&(_, v)| v).sum::<f64>();
    let free: Vec<usize> = (0..base.len()).filter(|&i| !is_fixed(i)).collect();
    let mass: f64 = free.iter().map(|&i| base[i]).sum();
    let dim_mass: f64 = free.iter().map(|&i| f64::from(mult[i] + 1)).sum();
    let mut out = vec![0.0; base.len()];
    for &(j, v) in fixed {
        out[j] = v;
    }
    for &i in &free {
        out[i] = if mass > 0.0 {
            remainder * base[i] / mass
        } else {
            remainder * f64::from(mult[i] + 1) / dim_mass
        };
    }
    out
}

struct ScanPoint {
    params: Vec<f64>,
    state: Su2State,
}

fn scan_points(args: &ScanArgs, var: &SweepVariable) -> Result<(Vec<String>, Vec<ScanPoint>), String> {
    let g = &args.generator;
    let err = |e: Error| e.to_string();
    match var {
        SweepVariable::Beta | SweepVariable::Coupling => {
            let values = grid(args.from, args.to, args.step)?;
            let name = if *var == SweepVariable::Beta { "beta" } else { "coupling" };
            let points = values
                .into_iter()
                .map(|v| {
                    let state = if let Some(sites) = g.ring {
                        if *var == SweepVariable::Coupling {
                            return Err("coupling sweeps need --thermal".to_string());
                        }
                        ring_reduction(sites, v).map_err(err)?.state
                    } else {
                        if !g.thermal {
                            return Err(format!("{name} sweeps need --thermal or --ring"));
                        }
                        let (ts1, ts2) = spins(g)?;
                        let (coupling, beta) =
                            if *var == SweepVariable::Beta { (g.coupling, v) } else { (v, g.beta) };
                        thermal_pair(ts1, ts2, coupling, beta).map_err(err)?
                    };
                    Ok(ScanPoint { params: vec![v], state })
                })
                .collect::<Result<Vec<_>, String>>()?;
            Ok((vec![name.to_string()], points))
        }
        SweepVariable::RingSize => {
            let values = grid(args.from, args.to, args.step)?;
            let points = values
                .into_iter()
                .map(|v| {
                    if v.fract() != 0.0 {
                        return Err(format!("ring size {v} is not an integer"));
                    }
                    let state = ring_reduction(v as usize, g.beta).map_err(err)?.state;
                    Ok(ScanPoint { params: vec![v], state })
                })
                .collect::<Result<Vec<_>, String>>()?;
            Ok((vec!["N".to_string()], points))
        }
        SweepVariable::Weight(idx) => {
            let base = base_state(g)?;
            let pair = *base.pair();
            let mult = pair.multiplets();
            if *idx >= mult.len() {
                return Err(format!("weight index {idx} out of range (have {})", mult.len()));
            }
            let values = grid(args.from, args.to, args.step)?;
            if values.iter().any(|&v| !(0.0..=1.0 + 1e-12).contains(&v)) {
                return Err("weight sweep must stay inside [0, 1]".into());
            }
            let points = values
                .into_iter()
                .map(|v| {
                    let w = set_weight(base.weights(), &mult, *idx, v.min(1.0));
                    Ok(ScanPoint { params: vec![v], state: Su2State::with_pair(pair, w).map_err(err)? })
                })
                .collect::<Result<Vec<_>, String>>()?;
            Ok((vec![format!("A(J={})", half_label(mult[*idx]))], points))
        }
        SweepVariable::Simplex => {
            let base = base_state(g)?;
            let pair = *base.pair();
            let mult = pair.multiplets();
            if mult.len() < 3 {
                return Err("simplex sweeps need at least three multiplets".into());
            }
            let axis = grid(0.0, 1.0, args.step)?;
            let mut points = Vec::new();
            for &a0 in &axis {
                for &a1 in &axis {
                    if a0 + a1 > 1.0 + 1e-12 {
                        continue;
                    }
                    let a1 = a1.min(1.0 - a0).max(0.0);
                    let w = set_weights(base.weights(), &mult, &[(0, a0), (1, a1)]);
                    let state = Su2State::with_pair(pair, w).map_err(err)?;
                    points.push(ScanPoint { params: vec![a0, a1], state });
                }
            }
            let names = mult[..2].iter().map(|&t| format!("A(J={})", half_label(t))).collect();
            Ok((names, points))
        }
    }
}

fn base_state(g: &GeneratorArgs) -> Result<Su2State, String> {
    if g.state.is_some() || g.weights.is_some() {
        return generate(g).map(|x| x.state);
    }
    let (ts1, ts2) = spins(g)?;
    Su2State::maximally_mixed(ts1, ts2).map_err(|e| e.to_string())
}

pub fn cmd_scan(args: &ScanArgs) -> Outcome {
    let var: SweepVariable = match args.sweep.parse() {
        Ok(v) => v,
        Err(msg) => return Outcome::input_error(msg),
    };
    let (param_names, points) = match scan_points(args, &var) {
        Ok(p) => p,
        Err(msg) => return Outcome::input_error(msg),
    };
    let pair = *points[0].state.pair();
    let analyzer = Analyzer::new(pair);
    let rows: Result<Vec<(Vec<f64>, CriteriaReport)>, Error> = points
        .par_iter()
        .map(|p| {
            let spectrum = analyzer.spectrum(&p.state)?;
            let report = analyzer.report(&p.state, args.tol)?;
            Ok((spectrum.coeffs().to_vec(), report))
        })
        .collect();
    let rows = match rows {
        Ok(r) => r,
        Err(e) => return Outcome::input_error(e),
    };

    let mut header: Vec<String> = param_names;
    header.push("dot".into());
    header.push("dot_sq".into());
    header.extend(pair.multiplets().iter().map(|&t| format!("B(K={})", half_label(t))));
    for name in ["ppt_negative", "sufficient_npt", "reduction_violated", "majorization_violated", "lur_violated"] {
        header.push(name.into());
    }

    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(&header).expect("in-memory write");
    for (point, (coeffs, report)) in points.iter().zip(&rows) {
        let mut record: Vec<String> = point.params.iter().map(|&v| fmt12(v)).collect();
        record.push(fmt12(report.dot_correlator));
        record.push(fmt12(report.dot_correlator_sq));
        record.extend(coeffs.iter().map(|&b| fmt12(b)));
        for flag in [
            report.ppt_negative,
            report.sufficient_npt,
            report.reduction_violated,
            report.majorization_violated,
            report.lur_violated,
        ] {
            record.push(flag.to_string());
        }
        writer.write_record(&record).expect("in-memory write");
    }
    let bytes = writer.into_inner().expect("in-memory flush");
    let stdout = String::from_utf8(bytes).expect("ascii output");
    let mut stderr = String::new();
    let _ = writeln!(stderr, "{} rows", rows.len());
    Outcome { stdout, stderr, code: EXIT_OK }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_rules() {
        assert_eq!(grid(0.0, 1.0, 0.5).unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(grid(0.0, 5.0, 0.1).unwrap().len(), 51);
        assert!(grid(1.0, 0.0, 0.1).is_err());
        assert!(grid(0.0, 1.0, 0.0).is_err());
        assert!(grid(0.0, 1.0, -0.1).is_err());
        assert_eq!(grid(2.0, 2.0, 1.0).unwrap(), vec![2.0]);
    }

    #[test]
    fn sweep_variable_parsing() {
        assert_eq!("beta".parse::<SweepVariable>().unwrap(), SweepVariable::Beta);
        assert_eq!("a:2".parse::<SweepVariable>().unwrap(), SweepVariable::Weight(2));
        assert!("a:x".parse::<SweepVariable>().is_err());
        assert!("temperature".parse::<SweepVariable>().is_err());
    }

    #[test]
    fn weight_redistribution_keeps_proportions() {
        let w = set_weight(&[0.2, 0.3, 0.5], &[0, 2, 4], 0, 0.6);
        assert!((w[0] - 0.6).abs() < 1e-15);
        assert!((w[1] - 0.4 * 0.375).abs() < 1e-15);
        assert!((w[2] - 0.4 * 0.625).abs() < 1e-15);
        let w = set_weight(&[1.0, 0.0, 0.0], &[0, 2, 4], 0, 0.2);
        assert!((w[1] - 0.8 * 3.0 / 8.0).abs() < 1e-15);
    }

    #[test]
    fn half_labels() {
        assert_eq!(half_label(0), "0");
        assert_eq!(half_label(3), "3/2");
        assert_eq!(half_label(4), "2");
    }
}
