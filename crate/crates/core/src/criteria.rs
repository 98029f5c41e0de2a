//! Entanglement verdicts for SU(2)-invariant states.
//!
//! Every verdict compares a decisive scalar against its threshold with a
//! margin `tol`; values inside the margin are reported as not violated.

use serde::{Deserialize, Serialize};

use crate::angular_momentum::{difference_projector, SpinPair};
use crate::error::{Error, Result};
use crate::linalg::DenseOperator;
use crate::partial_transpose::{PtSpectrum, SpectrumSolver};
use crate::state::Su2State;

/// Default margin on every verdict.
pub const VERDICT_TOL: f64 = 1e-10;
/// Largest tolerated disagreement between spectrum methods inside a report.
pub const METHOD_AGREEMENT_TOL: f64 = 1e-8;

/// `P(K) - P(K+1)` with `P(L)` projecting onto `S1z - S2z = L`.
pub fn witness_operator(pair: &SpinPair, tk: u32) -> Result<DenseOperator> {
    let lo = pair.ts1().abs_diff(pair.ts2());
    if tk < lo || tk >= pair.top() || !(tk - lo).is_multiple_of(2) {
        return Err(Error::WitnessRange { tk });
    }
    let tk = tk as i32;
    Ok(&difference_projector(pair, tk) - &difference_projector(pair, tk + 2))
}

/// `tr[(P(K) - P(K+1)) rho]`, equal to `B(K)/(2K+1)`. Negative values
/// certify entanglement.
pub fn witness_expectation(state: &Su2State, tk: u32) -> Result<f64> {
    let w = witness_operator(state.pair(), tk)?;
    Ok(w.trace_product(&state.to_dense()).re)
}

/// `-S1 S2`, the smallest `<S1·S2>` reachable by a separable state.
fn separable_dot_bound(pair: &SpinPair) -> f64 {
    -pair.first.spin() * pair.second.spin()
}

/// `<S1·S2> < -S1 S2`. Implies a negative partial transpose.
pub fn sufficient_npt(state: &Su2State) -> bool {
    sufficient_npt_with(state, VERDICT_TOL)
}

pub fn sufficient_npt_with(state: &Su2State, tol: f64) -> bool {
    state.dot_moment(1) < separable_dot_bound(state.pair()) - tol
}

/// The condition that must hold whenever every `B(K)` below the top
/// multiplet is negative. Same predicate as [`sufficient_npt`].
pub fn max_negativity_necessary(state: &Su2State) -> bool {
    sufficient_npt(state)
}

/// Reduction criterion. The reduced states are flat, so it is violated iff
/// `max_J A(J)/(2J+1) > 1/(2 max(S1,S2) + 1)`.
pub fn reduction_check(state: &Su2State) -> bool {
    reduction_check_with(state, VERDICT_TOL)
}

pub fn reduction_check_with(state: &Su2State, tol: f64) -> bool {
    let pair = state.pair();
    let threshold = 1.0 / (pair.ts1().max(pair.ts2()) + 1) as f64;
    state
        .weights()
        .iter()
        .zip(pair.multiplets())
        .any(|(a, tj)| a / f64::from(tj + 1) - threshold > tol)
}

/// Majorization criterion: the decreasing spectrum of `rho` must be
/// majorized by each zero-padded reduced spectrum.
pub fn majorization_check(state: &Su2State) -> bool {
    majorization_check_with(state, VERDICT_TOL)
}

pub fn majorization_check_with(state: &Su2State, tol: f64) -> bool {
    let pair = state.pair();
    let mut spectrum = state.eigenvalues();
    spectrum.sort_by(|a, b| b.total_cmp(a));
    [pair.first.dim(), pair.second.dim()].into_iter().any(|local_dim| {
        let level = 1.0 / local_dim as f64;
        let mut acc_rho = 0.0;
        spectrum.iter().enumerate().any(|(k, &x)| {
            acc_rho += x;
            let acc_reduced = level * (k + 1).min(local_dim) as f64;
            acc_rho - acc_reduced > tol
        })
    })
}

/// Local observables for the uncertainty-relation test.
///
/// Only the spin components, with minimal local uncertainty `S`, are
/// implemented; other operator sets would be added as variants here.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LurObservables {
    #[default]
    SpinComponents,
}

/// Local uncertainty relation: entangled if `<S1·S2> < -(S1^2 + S2^2)/2`.
pub fn lur_check(state: &Su2State) -> bool {
    lur_check_with(state, LurObservables::SpinComponents, VERDICT_TOL)
}

pub fn lur_check_with(state: &Su2State, observables: LurObservables, tol: f64) -> bool {
    match observables {
        LurObservables::SpinComponents => {
            let (s1, s2) = (state.pair().first.spin(), state.pair().second.spin());
            state.dot_moment(1) < -(s1 * s1 + s2 * s2) / 2.0 - tol
        }
    }
}

/// Correlator conditions for `S2 = 1`, `S1 = S >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpinOneConditions {
    /// `1 > <S1·S2> + <(S1·S2)^2>/S`, i.e. `B(S-1) < 0`.
    pub lower_negative: bool,
    /// `<(S1·S2)^2> > S(S+1)`, i.e. `B(S) < 0`.
    pub middle_negative: bool,
    /// `<S1·S2> < -S`, necessary for both of the above.
    pub both_necessary: bool,
    /// `-(S-1)/S <S1·S2> + <(S1·S2)^2>/S > 2S`, the reduction criterion.
    pub reduction: bool,
}

pub fn spin_one_conditions(state: &Su2State, tol: f64) -> Result<SpinOneConditions> {
    let (ts1, ts2) = (state.ts1(), state.ts2());
    if ts2 != 2 || ts1 < 2 {
        return Err(Error::UnsupportedSpins { ts1, ts2, reason: "requires S2 = 1 and S1 >= 1" });
    }
    let s = f64::from(ts1) / 2.0;
    let c1 = state.dot_moment(1);
    let c2 = state.dot_moment(2);
    Ok(SpinOneConditions {
        lower_negative: 1.0 - (c1 + c2 / s) > tol,
        middle_negative: c2 - s * (s + 1.0) > tol,
        both_necessary: c1 < -s - tol,
        reduction: -(s - 1.0) / s * c1 + c2 / s - 2.0 * s > tol,
    })
}

/// `S2 = 1/2`: `<S1·S2> < -S/2`, equivalent to `B(S - 1/2) < 0`.
pub fn spin_half_condition(state: &Su2State, tol: f64) -> Result<bool> {
    let (ts1, ts2) = (state.ts1(), state.ts2());
    if ts2 != 1 || ts1 < 1 {
        return Err(Error::UnsupportedSpins { ts1, ts2, reason: "requires S2 = 1/2" });
    }
    Ok(state.dot_moment(1) < -f64::from(ts1) / 4.0 - tol)
}

/// All verdicts for one state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriteriaReport {
    pub ppt_negative: bool,
    /// `K` (not doubled) with `B(K) < -tol`.
    #[serde(rename = "negative_Ks")]
    pub negative_ks: Vec<f64>,
    /// `tr[(P(K) - P(K+1)) rho]` for every `K < S1 + S2`, ascending.
    pub witness_values: Vec<f64>,
    pub sufficient_npt: bool,
    /// Every `B(K)` with `K < S1 + S2` is negative.
    pub all_lower_negative: bool,
    pub max_neg_necessary_met: bool,
    pub reduction_violated: bool,
    pub majorization_violated: bool,
    pub lur_violated: bool,
    pub dot_correlator: f64,
    pub dot_correlator_sq: f64,
    /// Largest `|B_diagonal - B_sum_rules|`.
    pub method_deviation: f64,
}

impl CriteriaReport {
    /// True if any criterion detected entanglement.
    pub fn entanglement_certified(&self) -> bool {
        self.ppt_negative
            || self.sufficient_npt
            || self.reduction_violated
            || self.majorization_violated
            || self.lur_violated
    }
}

/// Per-pair cache for repeated reports.
#[derive(Clone, Debug)]
pub struct Analyzer {
    solver: SpectrumSolver,
    witnesses: Vec<DenseOperator>,
}

impl Analyzer {
    pub fn new(pair: SpinPair) -> Self {
        let witnesses = pair
            .multiplets()
            .into_iter()
            .filter(|&tk| tk < pair.top())
            .map(|tk| witness_operator(&pair, tk).expect("label below the top multiplet"))
            .collect();
        Self { solver: SpectrumSolver::new(pair), witnesses }
    }

    pub fn solver(&self) -> &SpectrumSolver {
        &self.solver
    }

    /// Spectrum by the diagonal method, cross-checked against the sum rules.
    pub fn spectrum(&self, state: &Su2State) -> Result<PtSpectrum> {
        Ok(self.spectrum_with_deviation(state)?.0)
    }

    fn spectrum_with_deviation(&self, state: &Su2State) -> Result<(PtSpectrum, f64)> {
        let diagonal = self.solver.from_diagonal(state)?;
        let sum_rules = self.solver.from_sum_rules(state)?.spectrum;
        let deviation = diagonal.max_abs_diff(&sum_rules);
        if deviation > METHOD_AGREEMENT_TOL {
            return Err(Error::MethodDisagreement { deviation });
        }
        Ok((diagonal, deviation))
    }

    pub fn report(&self, state: &Su2State, tol: f64) -> Result<CriteriaReport> {
        let (spectrum, method_deviation) = self.spectrum_with_deviation(state)?;
        Ok(self.report_with_spectrum(state, &spectrum, method_deviation, tol))
    }

    fn report_with_spectrum(
        &self,
        state: &Su2State,
        spectrum: &PtSpectrum,
        method_deviation: f64,
        tol: f64,
    ) -> CriteriaReport {
        let rho = state.to_dense_with(self.solver.projectors());
        let witness_values = self.witnesses.iter().map(|w| w.trace_product(&rho).re).collect();
        let negative = spectrum.negative_multiplets(tol);
        let lower_count = spectrum.coeffs().len() - 1;
        let all_lower_negative =
            lower_count > 0 && negative.iter().filter(|&&tk| tk < state.pair().top()).count() == lower_count;
        let npt = sufficient_npt_with(state, tol);
        CriteriaReport {
            ppt_negative: !negative.is_empty(),
            negative_ks: negative.iter().map(|&tk| f64::from(tk) / 2.0).collect(),
            witness_values,
            sufficient_npt: npt,
            all_lower_negative,
            max_neg_necessary_met: npt,
            reduction_violated: reduction_check_with(state, tol),
            majorization_violated: majorization_check_with(state, tol),
            lur_violated: lur_check_with(state, LurObservables::SpinComponents, tol),
            dot_correlator: state.dot_moment(1),
            dot_correlator_sq: state.dot_moment(2),
            method_deviation,
        }
    }
}

pub fn full_report(state: &Su2State, tol: f64) -> Result<CriteriaReport> {
    Analyzer::new(*state.pair()).report(state, tol)
}
