//! SU(2)-invariant two-spin states `rho = sum_J A(J)/(2J+1) Pi_J`.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use serde::{Deserialize, Serialize};

use crate::angular_momentum::{casimir, total_spin_operators, CouplingTable, SpinPair};
use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigen_real, DenseOperator};

/// Weights below this are rejected as negative; above it (and below zero) they
/// are clamped to zero.
pub const WEIGHT_NEGATIVITY_TOL: f64 = 1e-12;
/// Largest normalization defect that is silently renormalized.
pub const NORMALIZATION_TOL: f64 = 1e-9;
/// Default commutator residual accepted by [`from_dense`].
pub const INVARIANCE_TOL: f64 = 1e-10;

/// Multiplet weights `A(J)` of an SU(2)-invariant state, ascending in `J`.
#[derive(Clone, Debug, PartialEq)]
pub struct Su2State {
    pair: SpinPair,
    weights: Vec<f64>,
}

/// JSON form: `{"ts1": 1, "ts2": 1, "A": [1.0, 0.0]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateLiteral {
    pub ts1: u32,
    pub ts2: u32,
    #[serde(rename = "A")]
    pub weights: Vec<f64>,
}

impl Su2State {
    pub fn new(ts1: u32, ts2: u32, weights: Vec<f64>) -> Result<Self> {
        Self::with_pair(SpinPair::new(ts1, ts2)?, weights)
    }

    pub fn with_pair(pair: SpinPair, mut weights: Vec<f64>) -> Result<Self> {
        let multiplets = pair.multiplets();
        if weights.len() != multiplets.len() {
            return Err(Error::WeightCount { expected: multiplets.len(), got: weights.len() });
        }
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::NonFinite);
        }
        for (w, &tj) in weights.iter_mut().zip(&multiplets) {
            if *w < -WEIGHT_NEGATIVITY_TOL {
                return Err(Error::NegativeWeight { tj, value: *w });
            }
            *w = w.max(0.0);
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::Normalization { sum });
        }
        if sum != 1.0 {
            weights.iter_mut().for_each(|w| *w /= sum);
        }
        Ok(Self { pair, weights })
    }

    /// `A(J) = (2J+1)/dim`, i.e. `rho = 1/dim`.
    pub fn maximally_mixed(ts1: u32, ts2: u32) -> Result<Self> {
        let pair = SpinPair::new(ts1, ts2)?;
        let dim = pair.dim() as f64;
        let weights = pair.multiplets().iter().map(|&tj| f64::from(tj + 1) / dim).collect();
        Self::with_pair(pair, weights)
    }

    /// Pure weight on the multiplet `2J = tj`.
    pub fn pure_multiplet(ts1: u32, ts2: u32, tj: u32) -> Result<Self> {
        let pair = SpinPair::new(ts1, ts2)?;
        let idx = pair
            .multiplet_index(tj)
            .ok_or(Error::Triangle { tj1: ts1, tj2: ts2, tj })?;
        let mut weights = vec![0.0; pair.multiplet_count()];
        weights[idx] = 1.0;
        Self::with_pair(pair, weights)
    }

    pub fn pair(&self) -> &SpinPair {
        &self.pair
    }

    pub fn ts1(&self) -> u32 {
        self.pair.ts1()
    }

    pub fn ts2(&self) -> u32 {
        self.pair.ts2()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `A(J)` for doubled `tj`, zero outside the triangle range.
    pub fn weight(&self, tj: u32) -> f64 {
        self.pair.multiplet_index(tj).map_or(0.0, |i| self.weights[i])
    }

    /// Convex combination `lambda * self + (1 - lambda) * other`.
    pub fn mix(&self, other: &Su2State, lambda: f64) -> Result<Self> {
        if self.pair != other.pair {
            return Err(Error::SpinMismatch);
        }
        let w = self
            .weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| lambda * a + (1.0 - lambda) * b)
            .collect();
        Self::with_pair(self.pair, w)
    }

    pub fn to_literal(&self) -> StateLiteral {
        StateLiteral { ts1: self.ts1(), ts2: self.ts2(), weights: self.weights.clone() }
    }

    pub fn from_literal(lit: &StateLiteral) -> Result<Self> {
        Self::new(lit.ts1, lit.ts2, lit.weights.clone())
    }

    /// Eigenvalues of `rho` with multiplicity, unsorted.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.pair.dim());
        for (&a, tj) in self.weights.iter().zip(self.pair.multiplets()) {
            let deg = tj as usize + 1;
            out.extend(std::iter::repeat_n(a / deg as f64, deg));
        }
        out
    }

    /// Diagonal of `rho` in the product basis, from the coupling table.
    pub fn product_diagonal(&self, table: &CouplingTable) -> Vec<f64> {
        debug_assert_eq!(table.pair(), &self.pair);
        let multiplets = self.pair.multiplets();
        (0..self.pair.dim())
            .map(|p| {
                multiplets
                    .iter()
                    .enumerate()
                    .map(|(j, &tj)| {
                        let c = table.coefficient(p, j);
                        self.weights[j] / f64::from(tj + 1) * c * c
                    })
                    .sum()
            })
            .collect()
    }

    /// Dense `rho` given precomputed multiplet projectors.
    pub fn to_dense_with(&self, projectors: &[DenseOperator]) -> DenseOperator {
        let mut rho = DenseOperator::zeros(self.pair.dim());
        for ((&a, tj), proj) in self.weights.iter().zip(self.pair.multiplets()).zip(projectors) {
            if a != 0.0 {
                rho = &rho + &proj.scale(a / f64::from(tj + 1));
            }
        }
        rho
    }

    pub fn to_dense(&self) -> DenseOperator {
        self.to_dense_with(&CouplingTable::new(self.pair).projectors())
    }

    /// `<(S1·S2)^n>`.
    pub fn dot_moment(&self, n: u32) -> f64 {
        self.per_multiplet_moment(n, |tj| dot_eigenvalue(&self.pair, tj))
    }

    /// `<((S1 - S2)^2)^n>`.
    pub fn diff_moment(&self, n: u32) -> f64 {
        self.per_multiplet_moment(n, |tj| diff_eigenvalue(&self.pair, tj))
    }

    pub fn dot_moments(&self) -> MomentVector {
        MomentVector::from_fn(&self.pair, |n| self.dot_moment(n))
    }

    pub fn diff_moments(&self) -> MomentVector {
        MomentVector::from_fn(&self.pair, |n| self.diff_moment(n))
    }

    fn per_multiplet_moment(&self, n: u32, value: impl Fn(u32) -> f64) -> f64 {
        if n == 0 {
            return 1.0;
        }
        self.weights
            .iter()
            .zip(self.pair.multiplets())
            .map(|(a, tj)| a * value(tj).powi(n as i32))
            .sum()
    }
}

/// `S1·S2` on multiplet `J`: `[J(J+1) - S1(S1+1) - S2(S2+1)] / 2`.
pub fn dot_eigenvalue(pair: &SpinPair, tj: u32) -> f64 {
    (casimir(tj) - pair.first.casimir() - pair.second.casimir()) / 2.0
}

/// `(S1 - S2)^2` on multiplet `J`.
pub fn diff_eigenvalue(pair: &SpinPair, tj: u32) -> f64 {
    pair.first.casimir() + pair.second.casimir() - 2.0 * dot_eigenvalue(pair, tj)
}

/// Moments `<X^n>`, `n = 0 ..= 2 min(S1, S2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentVector(pub Vec<f64>);

impl MomentVector {
    fn from_fn(pair: &SpinPair, f: impl Fn(u32) -> f64) -> Self {
        Self((0..pair.multiplet_count() as u32).map(f).collect())
    }
}

/// A state pulled out of a dense matrix, with diagnostics.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub state: Su2State,
    /// `max_a |[rho, J^a]|`, max-abs entry norm.
    pub invariance_residual: f64,
    /// `|rho - to_dense(state)|`, max-abs entry norm.
    pub reconstruction_residual: f64,
}

/// Recovers `A(J) = tr[Pi_J rho]` from a dense invariant density matrix.
pub fn from_dense(rho: &DenseOperator, ts1: u32, ts2: u32, tol: f64) -> Result<Extraction> {
    let pair = SpinPair::new(ts1, ts2)?;
    if rho.dim() != pair.dim() {
        return Err(Error::Dimension { expected: pair.dim(), got: rho.dim() });
    }
    if rho.matrix().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    let trace = rho.trace().re;
    if (trace - 1.0).abs() > tol {
        return Err(Error::Trace { trace, tol });
    }
    let invariance_residual = total_spin_operators(&pair)
        .iter()
        .map(|j| rho.commutator(j).max_abs())
        .fold(0.0, f64::max);
    if invariance_residual > tol {
        return Err(Error::NotInvariant { residual: invariance_residual, tol });
    }
    let table = CouplingTable::new(pair);
    let projectors = table.projectors();
    let mut weights = Vec::with_capacity(projectors.len());
    for (proj, &tj) in projectors.iter().zip(table.multiplets()) {
        let a = proj.trace_product(rho).re;
        if a < -tol {
            return Err(Error::NegativeWeight { tj, value: a });
        }
        weights.push(a.max(0.0));
    }
    let sum: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= sum);
    let state = Su2State::with_pair(pair, weights)?;
    let reconstruction_residual = state.to_dense_with(&projectors).max_abs_diff(rho);
    Ok(Extraction { state, invariance_residual, reconstruction_residual })
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta >= 0.0 {
        Ok(())
    } else {
        Err(Error::Beta(beta))
    }
}

/// Gibbs state of `H = coupling · S1·S2` at inverse temperature `beta`.
pub fn thermal_pair(ts1: u32, ts2: u32, coupling: f64, beta: f64) -> Result<Su2State> {
    check_beta(beta)?;
    if !coupling.is_finite() {
        return Err(Error::NonFinite);
    }
    let pair = SpinPair::new(ts1, ts2)?;
    let multiplets = pair.multiplets();
    let exponents: Vec<f64> = multiplets
        .iter()
        .map(|&tj| -beta * coupling * dot_eigenvalue(&pair, tj))
        .collect();
    let shift = exponents.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let boltzmann: Vec<f64> = multiplets
        .iter()
        .zip(&exponents)
        .map(|(&tj, e)| f64::from(tj + 1) * (e - shift).exp())
        .collect();
    let z: f64 = boltzmann.iter().sum();
    Su2State::with_pair(pair, boltzmann.into_iter().map(|w| w / z).collect())
}

/// Isotropic spin-1/2 Heisenberg ring `H = sum_i S_i · S_{i+1}` (periodic).
///
/// Site 0 is the most significant bit of the basis index; a clear bit is spin
/// up. For `sites == 2` the single bond is counted once.
pub fn heisenberg_ring_hamiltonian(sites: usize) -> Result<DMatrix<f64>> {
    if !(2..=10).contains(&sites) {
        return Err(Error::RingSize(sites));
    }
    let dim = 1usize << sites;
    let bit = |site: usize| 1usize << (sites - 1 - site);
    let bonds: Vec<(usize, usize)> = if sites == 2 {
        vec![(0, 1)]
    } else {
        (0..sites).map(|i| (i, (i + 1) % sites)).collect()
    };
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for state in 0..dim {
        for &(a, b) in &bonds {
            let (ba, bb) = (bit(a), bit(b));
            let aligned = (state & ba != 0) == (state & bb != 0);
            if aligned {
                h[(state, state)] += 0.25;
            } else {
                h[(state, state)] -= 0.25;
                h[(state ^ ba ^ bb, state)] += 0.5;
            }
        }
    }
    Ok(h)
}

/// Reduced density matrix of sites 0 and 1 of the thermal ring, in the
/// two-qubit product basis.
pub fn ring_pair_density(sites: usize, beta: f64) -> Result<DenseOperator> {
    check_beta(beta)?;
    let h = heisenberg_ring_hamiltonian(sites)?;
    let (energies, vectors) = symmetric_eigen_real(h);
    let e0 = energies[0];
    let boltzmann: Vec<f64> = energies.iter().map(|e| (-beta * (e - e0)).exp()).collect();
    let z: f64 = boltzmann.iter().sum();

    let rest = 1usize << (sites - 2);
    let mut reduced = DMatrix::<f64>::zeros(4, 4);
    for (k, w) in boltzmann.iter().enumerate() {
        let p = w / z;
        let v = vectors.column(k);
        for a in 0..4 {
            for b in 0..4 {
                let mut acc = 0.0;
                for r in 0..rest {
                    acc += v[a * rest + r] * v[b * rest + r];
                }
                reduced[(a, b)] += p * acc;
            }
        }
    }
    Ok(DenseOperator::from_real(&reduced))
}

/// Nearest-neighbour pair of a thermal spin-1/2 Heisenberg ring.
pub fn ring_reduction(sites: usize, beta: f64) -> Result<Extraction> {
    let rho = ring_pair_density(sites, beta)?;
    from_dense(&rho, 1, 1, INVARIANCE_TOL)
}

/// Flat-Dirichlet sample on the weight simplex, deterministic in `seed`.
pub fn random_state(ts1: u32, ts2: u32, seed: u64) -> Result<Su2State> {
    let pair = SpinPair::new(ts1, ts2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draws = Vec::with_capacity(pair.multiplet_count());
    while draws.len() < pair.multiplet_count() {
        let x: f64 = Exp1.sample(&mut rng);
        if x > 0.0 {
            draws.push(x);
        }
    }
    let total: f64 = draws.iter().sum();
    Su2State::with_pair(pair, draws.into_iter().map(|x| x / total).collect())
}
