//! Spectrum of the partial transpose `rho^T2 = sum_K B(K)/(2K+1) Pi~_K`.
//!
//! `B(K)` is obtained three ways:
//!
//! * from the product-basis diagonal of `rho` ([`b_from_diagonal`]),
//! * from the moment sum rules `sum_K (K(K+1))^n B(K) = tr[((K^2)^n)^T2 rho]`
//!   ([`b_from_sum_rules`]),
//! * by diagonalizing the dense `rho^T2` and sorting eigenvectors into
//!   `K^2` multiplets ([`b_from_dense`]).
//!
//! Closed forms for `S2 = 1/2` and `S2 = 1` live alongside as oracles.

use nalgebra::{DMatrix, LU};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::angular_momentum::{casimir, clebsch_gordan_exact, k_operators, squared_norm, CouplingTable, SpinPair};
use crate::ddouble::Dd;
use crate::error::{Error, Result};
use crate::linalg::DenseOperator;
use crate::state::Su2State;

/// `B(K)` below `-NEGATIVITY_TOL` counts as a negative eigenvalue.
pub const NEGATIVITY_TOL: f64 = 1e-10;
/// Distance from `K(K+1)` within which a `K^2` expectation is accepted.
pub const MULTIPLET_SNAP_TOL: f64 = 1e-6;
/// Eigenvalues of `rho^T2` closer than this are treated as one degenerate block.
const DEGENERACY_TOL: f64 = 1e-7;
/// Relative agreement required between the closed-form and dense sum-rule
/// right-hand sides for `n <= 3`.
pub const CLOSED_FORM_TOL: f64 = 1e-9;

/// Multiplet coefficients `B(K)` of `rho^T2`, ascending in `K`.
#[derive(Clone, Debug, PartialEq)]
pub struct PtSpectrum {
    pair: SpinPair,
    coeffs: Vec<f64>,
}

/// JSON form: `{"ts1": 1, "ts2": 1, "B": [-0.5, 1.5]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumLiteral {
    pub ts1: u32,
    pub ts2: u32,
    #[serde(rename = "B")]
    pub coeffs: Vec<f64>,
}

impl PtSpectrum {
    pub fn new(pair: SpinPair, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != pair.multiplet_count() {
            return Err(Error::WeightCount { expected: pair.multiplet_count(), got: coeffs.len() });
        }
        if coeffs.iter().any(|b| !b.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { pair, coeffs })
    }

    pub fn pair(&self) -> &SpinPair {
        &self.pair
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `B(K)` for doubled `tk`, zero outside the range.
    pub fn coeff(&self, tk: u32) -> f64 {
        self.pair.multiplet_index(tk).map_or(0.0, |i| self.coeffs[i])
    }

    /// `B(S1 + S2)`.
    pub fn top(&self) -> f64 {
        *self.coeffs.last().expect("at least one multiplet")
    }

    pub fn total(&self) -> f64 {
        self.coeffs.iter().sum()
    }

    /// Doubled labels with `B(K) < -tol`.
    pub fn negative_multiplets(&self, tol: f64) -> Vec<u32> {
        self.pair
            .multiplets()
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, &b)| b < -tol)
            .map(|(tk, _)| tk)
            .collect()
    }

    /// Eigenvalues `B(K)/(2K+1)` with multiplicity `2K+1`, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.pair.dim());
        for (&b, tk) in self.coeffs.iter().zip(self.pair.multiplets()) {
            let deg = tk as usize + 1;
            out.extend(std::iter::repeat_n(b / deg as f64, deg));
        }
        out.sort_by(f64::total_cmp);
        out
    }

    pub fn max_abs_diff(&self, other: &PtSpectrum) -> f64 {
        assert_eq!(self.pair, other.pair);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn to_literal(&self) -> SpectrumLiteral {
        SpectrumLiteral { ts1: self.pair.ts1(), ts2: self.pair.ts2(), coeffs: self.coeffs.clone() }
    }

    pub fn from_literal(lit: &SpectrumLiteral) -> Result<Self> {
        Self::new(SpinPair::new(lit.ts1, lit.ts2)?, lit.coeffs.clone())
    }
}

/// Transposes the second factor in the product basis:
/// `<m1 m2| rho^T2 |m1' m2'> = <m1 m2'| rho |m1' m2>`.
pub fn partial_transpose_dense(rho: &DenseOperator, ts1: u32, ts2: u32) -> Result<DenseOperator> {
    let pair = SpinPair::new(ts1, ts2)?;
    if rho.dim() != pair.dim() {
        return Err(Error::Dimension { expected: pair.dim(), got: rho.dim() });
    }
    Ok(partial_transpose_unchecked(rho, &pair))
}

fn partial_transpose_unchecked(rho: &DenseOperator, pair: &SpinPair) -> DenseOperator {
    let d1 = pair.first.dim();
    let d2 = pair.second.dim();
    let m = DMatrix::from_fn(d1 * d2, d1 * d2, |r, c| {
        let (i1, i2) = (r / d2, r % d2);
        let (j1, j2) = (c / d2, c % d2);
        rho.get(i1 * d2 + j2, j1 * d2 + i2)
    });
    DenseOperator::from_matrix(m)
}

/// Solves `sum_k x_k^n z_k = b_n` for `n = 0..len` in place.
///
/// Björck–Pereyra primal algorithm; `x` must be pairwise distinct.
fn solve_vandermonde(x: &[f64], b: &mut [f64]) -> Result<()> {
    let x: Vec<Dd> = x.iter().map(|&v| Dd::from(v)).collect();
    let mut z: Vec<Dd> = b.iter().map(|&v| Dd::from(v)).collect();
    solve_vandermonde_dd(&x, &mut z)?;
    for (out, v) in b.iter_mut().zip(z) {
        *out = v.to_f64();
    }
    Ok(())
}

#[allow(clippy::needless_range_loop)]
fn solve_vandermonde_dd(x: &[Dd], b: &mut [Dd]) -> Result<()> {
    assert_eq!(x.len(), b.len());
    let n = x.len().saturating_sub(1);
    for k in 0..n {
        for i in (k + 1..=n).rev() {
            b[i] = b[i] - x[k] * b[i - 1];
        }
    }
    for k in (0..n).rev() {
        for i in k + 1..=n {
            let d = x[i] - x[i - k - 1];
            if d == Dd::ZERO {
                return Err(Error::Singular);
            }
            b[i] = b[i] / d;
        }
        for i in k..n {
            b[i] = b[i] - b[i + 1];
        }
    }
    Ok(())
}

/// `tr[((K^2)^n)^T2 Pi_J] / (2J+1)` for `n < count`, indexed `[n][J]`.
///
/// Everything is real in the product basis, so the whole computation runs
/// in double-double: `K^2` is sparse (it conserves `m1 - m2`) and each
/// `Pi_J` enters through its exact Clebsch–Gordan squares.
fn precise_functional(pair: &SpinPair, count: usize) -> Vec<Vec<Dd>> {
    let (ts1, ts2) = (pair.ts1() as i32, pair.ts2() as i32);
    let d2 = pair.second.dim();
    let dim = pair.dim();
    let diag_shift = casimir(pair.ts1()) + casimir(pair.ts2());

    // K^2 = s1 + s2 - 2 S1z S2z - (S1+ S2+ + S1- S2-), stored by column
    let mut k2: Vec<Vec<(usize, Dd)>> = vec![Vec::new(); dim];
    for (col, tm1, tm2) in pair.product_states() {
        k2[col].push((col, Dd::from(diag_shift - f64::from(tm1 * tm2) / 2.0)));
        let up = (ts1 - tm1) * (ts1 + tm1 + 2) * (ts2 - tm2) * (ts2 + tm2 + 2);
        if up > 0 {
            let amp = Dd::from(f64::from(up)).sqrt() * 0.25;
            k2[col].push((pair.product_index(tm1 + 2, tm2 + 2), -amp));
        }
        let down = (ts1 + tm1) * (ts1 - tm1 + 2) * (ts2 + tm2) * (ts2 - tm2 + 2);
        if down > 0 {
            let amp = Dd::from(f64::from(down)).sqrt() * 0.25;
            k2[col].push((pair.product_index(tm1 - 2, tm2 - 2), -amp));
        }
    }

    // coupled vectors |J M> as (product index, coefficient)
    let multiplets = pair.multiplets();
    let coupled: Vec<Vec<Vec<(usize, Dd)>>> = multiplets
        .iter()
        .map(|&tj| {
            (0..=tj as i32)
                .map(|k| {
                    let tm = tj as i32 - 2 * k;
                    pair.product_states()
                        .filter(|&(_, tm1, tm2)| tm1 + tm2 == tm)
                        .filter_map(|(idx, tm1, tm2)| {
                            let (neg, sq) = clebsch_gordan_exact(pair.ts1(), pair.ts2(), tm1, tm2, tj, tm)
                                .expect("labels enumerate valid states");
                            if sq.is_zero() {
                                return None;
                            }
                            let c = Dd::from_ratio(&sq).sqrt();
                            Some((idx, if neg { -c } else { c }))
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    let mut power = vec![Dd::ZERO; dim * dim];
    for i in 0..dim {
        power[i * dim + i] = Dd::ONE;
    }
    let mut functional = Vec::with_capacity(count);
    for n in 0..count {
        if n > 0 {
            let mut next = vec![Dd::ZERO; dim * dim];
            for (c, column) in k2.iter().enumerate() {
                for &(k, v) in column {
                    for r in 0..dim {
                        next[r * dim + c] += power[r * dim + k] * v;
                    }
                }
            }
            power = next;
        }
        // <a| X^T2 |b> = <a1 b2| X |b1 a2>
        let pt = |a: usize, b: usize| {
            let (a1, a2) = (a / d2, a % d2);
            let (b1, b2) = (b / d2, b % d2);
            power[(a1 * d2 + b2) * dim + b1 * d2 + a2]
        };
        let row = coupled
            .iter()
            .zip(&multiplets)
            .map(|(states, &tj)| {
                let mut acc = Dd::ZERO;
                for v in states {
                    for &(a, va) in v {
                        for &(b, vb) in v {
                            acc += va * vb * pt(a, b);
                        }
                    }
                }
                acc / Dd::from(f64::from(tj + 1))
            })
            .collect();
        functional.push(row);
    }
    functional
}

/// Dense sum-rule machinery for one spin pair.
#[derive(Clone, Debug)]
pub struct SumRuleSystem {
    pair: SpinPair,
    nodes: Vec<f64>,
    /// `((K^2)^n)^T2` for `n = 0 ..= max(2 min(S1,S2), 3)`.
    pt_powers: Vec<DenseOperator>,
    /// `tr[((K^2)^n)^T2 Pi_J] / (2J+1)`, indexed `[n][J]`.
    functional: Vec<Vec<Dd>>,
}

impl SumRuleSystem {
    pub fn new(pair: SpinPair) -> Self {
        let nodes: Vec<f64> = pair.multiplets().iter().map(|&tk| casimir(tk)).collect();
        let k2 = squared_norm(&k_operators(&pair));
        let count = nodes.len().max(4);
        let mut pt_powers = Vec::with_capacity(count);
        let mut power = DenseOperator::identity(pair.dim());
        for _ in 0..count {
            pt_powers.push(partial_transpose_unchecked(&power, &pair));
            power = &power * &k2;
        }
        let functional = precise_functional(&pair, count);
        Self { pair, nodes, pt_powers, functional }
    }

    /// `2 min(S1, S2) + 1`.
    pub fn equation_count(&self) -> usize {
        self.nodes.len()
    }

    /// `K(K+1)` per multiplet, ascending.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// `tr[((K^2)^n)^T2 rho]` traced against a dense `rho`, `n <= max(2 min, 3)`.
    pub fn dense_rhs(&self, rho: &DenseOperator, n: usize) -> f64 {
        self.pt_powers[n].trace_product(rho).re
    }

    /// All right-hand sides of the square system from a dense `rho`.
    pub fn rhs_from_dense(&self, rho: &DenseOperator) -> Vec<f64> {
        (0..self.equation_count()).map(|n| self.dense_rhs(rho, n)).collect()
    }

    /// Same traces, using `rho`'s linearity in `A(J)`.
    pub fn rhs(&self, state: &Su2State) -> Vec<f64> {
        (0..self.equation_count()).map(|n| self.rhs_power(state, n)).collect()
    }

    fn rhs_power(&self, state: &Su2State, n: usize) -> f64 {
        self.rhs_power_dd(state, n).to_f64()
    }

    fn rhs_power_dd(&self, state: &Su2State, n: usize) -> Dd {
        let mut acc = Dd::ZERO;
        for (t, &a) in self.functional[n].iter().zip(state.weights()) {
            acc += *t * a;
        }
        acc
    }

    /// Solves the system with right-hand sides kept in double-double.
    fn solve_state(&self, state: &Su2State) -> Result<PtSpectrum> {
        let x: Vec<Dd> = self.nodes.iter().map(|&v| Dd::from(v)).collect();
        let mut b: Vec<Dd> = (0..self.equation_count()).map(|n| self.rhs_power_dd(state, n)).collect();
        solve_vandermonde_dd(&x, &mut b)?;
        PtSpectrum::new(self.pair, b.into_iter().map(Dd::to_f64).collect())
    }

    /// `B` from right-hand sides `n = 0 .. equation_count`.
    pub fn solve(&self, rhs: &[f64]) -> Result<PtSpectrum> {
        if rhs.len() != self.equation_count() {
            return Err(Error::WeightCount { expected: self.equation_count(), got: rhs.len() });
        }
        let mut b = rhs.to_vec();
        solve_vandermonde(&self.nodes, &mut b)?;
        PtSpectrum::new(self.pair, b)
    }

    /// Coefficient matrix `M[n][K] = (K(K+1))^n`.
    pub fn moment_matrix(&self) -> DMatrix<f64> {
        let n = self.nodes.len();
        DMatrix::from_fn(n, n, |r, c| self.nodes[c].powi(r as i32))
    }

    /// Largest relative gap between the closed-form and dense right-hand
    /// sides for `n = 0..=3`.
    pub fn closed_form_deviation(&self, state: &Su2State) -> (usize, f64, f64, f64) {
        let mut worst = (0, 0.0, 1.0, 1.0);
        for n in 0..=3 {
            let closed = closed_form_rhs(state, n).expect("n <= 3");
            let dense = self.rhs_power(state, n);
            let dev = (closed - dense).abs() / dense.abs().max(1.0);
            if dev > worst.1 {
                worst = (n, dev, closed, dense);
            }
        }
        worst
    }
}

/// `<(((S1 - S2)^2)^n + corrections)>`, the partially transposed `(K^2)^n`
/// expressed through correlators, for `n <= 3`.
pub fn closed_form_rhs(state: &Su2State, n: usize) -> Option<f64> {
    let s1 = state.pair().first.casimir();
    let s2 = state.pair().second.casimir();
    let dot = |k| state.dot_moment(k);
    let diff = |k| state.diff_moment(k);
    match n {
        0 => Some(1.0),
        1 => Some(diff(1)),
        2 => Some(diff(2) + 4.0 * dot(1)),
        3 => Some(
            diff(3) - 32.0 * dot(2) + 4.0 * (3.0 * (s1 + s2) - 4.0) * dot(1) + 8.0 * s1 * s2,
        ),
        _ => None,
    }
}

/// Output of the sum-rule method.
#[derive(Clone, Debug)]
pub struct SumRuleSolution {
    pub spectrum: PtSpectrum,
    /// Right-hand sides `n = 0 ..= 2 min(S1, S2)`.
    pub rhs: Vec<f64>,
    /// Relative closed-form vs dense deviation over `n <= 3`.
    pub closed_form_deviation: f64,
}

/// Cached per-pair data for all three spectrum methods.
#[derive(Clone, Debug)]
pub struct SpectrumSolver {
    pair: SpinPair,
    table: CouplingTable,
    projectors: Vec<DenseOperator>,
    k_ops: [DenseOperator; 3],
    k_squared: DenseOperator,
    sum_rules: SumRuleSystem,
}

impl SpectrumSolver {
    pub fn new(pair: SpinPair) -> Self {
        let table = CouplingTable::new(pair);
        let projectors = table.projectors();
        let k_ops = k_operators(&pair);
        let k_squared = squared_norm(&k_ops);
        let sum_rules = SumRuleSystem::new(pair);
        Self { pair, table, projectors, k_ops, k_squared, sum_rules }
    }

    pub fn pair(&self) -> &SpinPair {
        &self.pair
    }

    pub fn sum_rules(&self) -> &SumRuleSystem {
        &self.sum_rules
    }

    pub fn projectors(&self) -> &[DenseOperator] {
        &self.projectors
    }

    fn check(&self, state: &Su2State) -> Result<()> {
        if state.pair() != &self.pair {
            Err(Error::SpinMismatch)
        } else {
            Ok(())
        }
    }

    pub fn density(&self, state: &Su2State) -> Result<DenseOperator> {
        self.check(state)?;
        Ok(state.to_dense_with(&self.projectors))
    }

    pub fn partial_transpose(&self, state: &Su2State) -> Result<DenseOperator> {
        Ok(partial_transpose_unchecked(&self.density(state)?, &self.pair))
    }

    /// `B(K)/(2K+1) = sum_{m1-m2=K} rho_diag - sum_{m1-m2=K+1} rho_diag`.
    pub fn from_diagonal(&self, state: &Su2State) -> Result<PtSpectrum> {
        self.check(state)?;
        let diag = state.product_diagonal(&self.table);
        let max_diff = self.pair.top() as usize;
        // sums over m1 - m2 = 2K/2, index by 2K + top
        let mut by_difference = vec![0.0; 2 * max_diff + 1];
        for (idx, tm1, tm2) in self.pair.product_states() {
            by_difference[(tm1 - tm2 + max_diff as i32) as usize] += diag[idx];
        }
        let at = |tk: i32| -> f64 {
            let i = tk + max_diff as i32;
            if i < 0 || i as usize >= by_difference.len() {
                0.0
            } else {
                by_difference[i as usize]
            }
        };
        let coeffs = self
            .pair
            .multiplets()
            .into_iter()
            .map(|tk| {
                let tk = tk as i32;
                f64::from(tk + 1) * (at(tk) - at(tk + 2))
            })
            .collect();
        PtSpectrum::new(self.pair, coeffs)
    }

    pub fn from_sum_rules(&self, state: &Su2State) -> Result<SumRuleSolution> {
        self.check(state)?;
        let rhs = self.sum_rules.rhs(state);
        let spectrum = self.sum_rules.solve_state(state)?;
        let (n, deviation, closed, dense) = self.sum_rules.closed_form_deviation(state);
        if deviation > CLOSED_FORM_TOL {
            return Err(Error::ClosedFormMismatch { n, closed, dense });
        }
        Ok(SumRuleSolution { spectrum, rhs, closed_form_deviation: deviation })
    }

    /// Diagonalizes `rho^T2` and groups eigenvectors by their `K^2`
    /// expectation, snapped to the nearest `K(K+1)` within `tol`.
    pub fn from_dense(&self, state: &Su2State, tol: f64) -> Result<PtSpectrum> {
        let pt = self.partial_transpose(state)?;
        let eig = pt.hermitian_eigen();
        let k2 = self.k_squared.matrix();
        let nodes = self.sum_rules.nodes();
        let multiplets = self.pair.multiplets();
        let mut sums = vec![0.0; nodes.len()];
        let mut counts = vec![0usize; nodes.len()];

        let mut start = 0;
        while start < eig.values.len() {
            let mut end = start + 1;
            while end < eig.values.len() && eig.values[end] - eig.values[end - 1] <= DEGENERACY_TOL {
                end += 1;
            }
            let block = eig.vectors.columns(start, end - start).into_owned();
            // rotate a degenerate block onto K^2 eigenvectors
            let block = if end - start > 1 {
                let restricted = block.adjoint() * k2 * &block;
                let inner = DenseOperator::from_matrix(restricted).hermitian_eigen();
                block * inner.vectors
            } else {
                block
            };
            for (offset, v) in block.column_iter().enumerate() {
                let expectation = (v.adjoint() * k2 * v)[(0, 0)].re;
                let (idx, gap) = nodes
                    .iter()
                    .enumerate()
                    .map(|(i, x)| (i, (expectation - x).abs()))
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .expect("at least one node");
                if gap > tol {
                    return Err(Error::AmbiguousMultiplet { expectation, tol });
                }
                sums[idx] += eig.values[start + offset];
                counts[idx] += 1;
            }
            start = end;
        }

        for (&tk, &count) in multiplets.iter().zip(&counts) {
            if count != tk as usize + 1 {
                return Err(Error::Multiplicity { tk, expected: tk as usize + 1, got: count });
            }
        }
        // (2K+1) * mean over the multiplet
        PtSpectrum::new(self.pair, sums)
    }

    /// `max_a |[rho^T2, K^a]|`, max-abs entry norm.
    pub fn commutator_residual(&self, state: &Su2State) -> Result<f64> {
        let pt = self.partial_transpose(state)?;
        Ok(self.k_ops.iter().map(|k| pt.commutator(k).max_abs()).fold(0.0, f64::max))
    }

    /// Sorted eigenvalues of the dense `rho^T2`.
    pub fn dense_eigenvalues(&self, state: &Su2State) -> Result<Vec<f64>> {
        Ok(self.partial_transpose(state)?.hermitian_eigenvalues())
    }
}

pub fn b_from_diagonal(state: &Su2State) -> PtSpectrum {
    SpectrumSolver::new(*state.pair())
        .from_diagonal(state)
        .expect("solver built for this pair")
}

pub fn b_from_sum_rules(state: &Su2State) -> Result<SumRuleSolution> {
    SpectrumSolver::new(*state.pair()).from_sum_rules(state)
}

pub fn b_from_dense(state: &Su2State, tol: f64) -> Result<PtSpectrum> {
    SpectrumSolver::new(*state.pair()).from_dense(state, tol)
}

/// `S2 = 1/2`: `B(S -+ 1/2) = [S + 2<S1·S2>]/(2S+1)`, `[S + 1 - 2<S1·S2>]/(2S+1)`.
pub fn closed_form_half(state: &Su2State) -> Result<PtSpectrum> {
    let (ts1, ts2) = (state.ts1(), state.ts2());
    if ts2 != 1 || ts1 < 1 {
        return Err(Error::UnsupportedSpins { ts1, ts2, reason: "requires S2 = 1/2 and S1 >= 1/2" });
    }
    let s = f64::from(ts1) / 2.0;
    let c = state.dot_moment(1);
    let norm = 2.0 * s + 1.0;
    PtSpectrum::new(*state.pair(), vec![(s + 2.0 * c) / norm, (s + 1.0 - 2.0 * c) / norm])
}

fn require_spin_one(state: &Su2State) -> Result<f64> {
    let (ts1, ts2) = (state.ts1(), state.ts2());
    if ts2 != 2 || ts1 < 2 {
        return Err(Error::UnsupportedSpins { ts1, ts2, reason: "requires S2 = 1 and S1 >= 1" });
    }
    Ok(f64::from(ts1) / 2.0)
}

/// `S2 = 1`: `B(S-1), B(S), B(S+1)` from `<S1·S2>` and `<(S1·S2)^2>`.
pub fn closed_form_one(state: &Su2State) -> Result<PtSpectrum> {
    let s = require_spin_one(state)?;
    let c1 = state.dot_moment(1);
    let c2 = state.dot_moment(2);
    let norm = 2.0 * s + 1.0;
    let lower = (-1.0 + c1 + c2 / s) / norm;
    let middle = 1.0 - c2 / (s * (s + 1.0));
    let upper = (1.0 - c1 + c2 / (s + 1.0)) / norm;
    PtSpectrum::new(*state.pair(), vec![lower, middle, upper])
}

/// `S2 = 1`: `B(K)` as an affine map of `A(S-1)` and `A(S)`.
pub fn b_from_a_linear(state: &Su2State) -> Result<PtSpectrum> {
    let s = require_spin_one(state)?;
    let a_lower = state.weight(state.ts1() - 2);
    let a_mid = state.weight(state.ts1());
    let n = 2.0 * s + 1.0;
    let lower = (2.0 * s - 1.0) / n - (s - 1.0) / s * a_lower - (2.0 * s - 1.0) / n * (s + 1.0) / s * a_mid;
    let middle = 1.0 / (s + 1.0) - n / (s * (s + 1.0)) * a_lower + (s - 1.0) / s * a_mid;
    let upper = 1.0 / (n * (s + 1.0)) + (s + 2.0) / (s + 1.0) * a_lower + 2.0 / n * a_mid;
    PtSpectrum::new(*state.pair(), vec![lower, middle, upper])
}

/// `S2 = 1`: `(A(S-1), A(S))` recovered from the two correlator moments.
pub fn weights_from_correlators_one(state: &Su2State) -> Result<(f64, f64)> {
    let s = require_spin_one(state)?;
    let c1 = state.dot_moment(1);
    let c2 = state.dot_moment(2);
    let a_lower = (-s - (s - 1.0) * c1 + c2) / (s * (2.0 * s + 1.0));
    let a_mid = 1.0 - (c1 + c2) / (s * (s + 1.0));
    Ok((a_lower, a_mid))
}

/// `2(S1(S1+1) + S2(S2+1)) - sum_L L(L+1)(A(L) + B(L))`; zero for a correct
/// spectrum.
pub fn combined_sum_rule_residual(state: &Su2State, spectrum: &PtSpectrum) -> Result<f64> {
    if state.pair() != spectrum.pair() {
        return Err(Error::SpinMismatch);
    }
    let pair = state.pair();
    let lhs = 2.0 * (pair.first.casimir() + pair.second.casimir());
    let rhs: f64 = pair
        .multiplets()
        .iter()
        .zip(state.weights().iter().zip(spectrum.coeffs()))
        .map(|(&tl, (a, b))| casimir(tl) * (a + b))
        .sum();
    Ok(lhs - rhs)
}

/// `prod_{K > L} (K(K+1) - L(L+1))`.
pub fn vandermonde_determinant(ts1: u32, ts2: u32) -> Result<f64> {
    let pair = SpinPair::new(ts1, ts2)?;
    let nodes: Vec<f64> = pair.multiplets().iter().map(|&t| casimir(t)).collect();
    let mut det = 1.0;
    for (k, xk) in nodes.iter().enumerate() {
        for xl in &nodes[..k] {
            det *= xk - xl;
        }
    }
    Ok(det)
}

/// Determinant of the assembled moment matrix, by LU factorization.
///
/// Rows and columns are first scaled by powers of two, which is exact. The
/// monomial matrix is still badly conditioned: beyond eight nodes the result
/// drifts from the product formula by more than 1e-9 relative.
pub fn moment_matrix_determinant(ts1: u32, ts2: u32) -> Result<f64> {
    let pair = SpinPair::new(ts1, ts2)?;
    let nodes: Vec<f64> = pair.multiplets().iter().map(|&t| casimir(t)).collect();
    let n = nodes.len();
    let mut m = DMatrix::from_fn(n, n, |r, c| nodes[c].powi(r as i32));
    let mut log2_scale = 0i32;
    for mut col in m.column_iter_mut() {
        let e = power_of_two_exponent(col.amax());
        col.iter_mut().for_each(|x| *x = ldexp(*x, -e));
        log2_scale += e;
    }
    for mut row in m.row_iter_mut() {
        let e = power_of_two_exponent(row.amax());
        row.iter_mut().for_each(|x| *x = ldexp(*x, -e));
        log2_scale += e;
    }
    Ok(ldexp(LU::new(m).determinant(), log2_scale))
}

fn power_of_two_exponent(x: f64) -> i32 {
    if x > 0.0 {
        x.log2().ceil() as i32
    } else {
        0
    }
}

fn ldexp(x: f64, e: i32) -> f64 {
    x * 2f64.powi(e)
}

/// Exact determinant of the assembled moment matrix.
///
/// The nodes `K(K+1)` are quarter-integers, so `4 K(K+1)` gives an integer
/// matrix; fraction-free elimination on it is exact.
pub fn moment_matrix_determinant_exact(ts1: u32, ts2: u32) -> Result<f64> {
    let pair = SpinPair::new(ts1, ts2)?;
    let nodes: Vec<BigInt> = pair.multiplets().iter().map(|&t| BigInt::from(t * (t + 2))).collect();
    let n = nodes.len();
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|r| nodes.iter().map(|x| x.pow(r as u32)).collect())
        .collect();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !m[r][k].is_zero()).ok_or(Error::Singular)?;
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].to_f64().ok_or(Error::NonFinite)? * f64::from(sign);
    // each row r carries 4^r
    let shift = -2 * (n * n.saturating_sub(1) / 2) as i32;
    Ok(ldexp(det, shift))
}
