//! Spin algebra for a pair of spins.
//!
//! Every spin length and projection is stored doubled (`2S`, `2m`) so that
//! half-integers stay exact. Single-spin bases run over descending `m`; the
//! product basis index is `(S1 - m1)(2 S2 + 1) + (S2 - m2)`.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{DenseOperator, C64};

/// Largest supported `2S` per subsystem (Hilbert-space dimension 12).
pub const MAX_TWICE_SPIN: u32 = 11;

/// A spin length stored as `2S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwiceSpin(pub u32);

impl TwiceSpin {
    pub fn spin(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }

    /// `S(S+1)`.
    pub fn casimir(self) -> f64 {
        casimir(self.0)
    }

    /// Doubled projections `2m`, descending.
    pub fn projections(self) -> impl Iterator<Item = i32> + Clone {
        let t = self.0 as i32;
        (0..=t).map(move |i| t - 2 * i)
    }
}

impl From<u32> for TwiceSpin {
    fn from(v: u32) -> Self {
        TwiceSpin(v)
    }
}

/// `J(J+1)` for a doubled label.
pub fn casimir(twice: u32) -> f64 {
    let t = f64::from(twice);
    t * (t + 2.0) / 4.0
}

/// Two spins and the bookkeeping of their product space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpinPair {
    pub first: TwiceSpin,
    pub second: TwiceSpin,
}

impl SpinPair {
    pub fn new(ts1: u32, ts2: u32) -> Result<Self> {
        for ts in [ts1, ts2] {
            if ts > MAX_TWICE_SPIN {
                return Err(Error::SpinTooLarge(ts));
            }
        }
        Ok(Self { first: TwiceSpin(ts1), second: TwiceSpin(ts2) })
    }

    pub fn ts1(&self) -> u32 {
        self.first.0
    }

    pub fn ts2(&self) -> u32 {
        self.second.0
    }

    pub fn dim(&self) -> usize {
        self.first.dim() * self.second.dim()
    }

    /// Doubled multiplet labels `2J` (equivalently `2K`), ascending.
    pub fn multiplets(&self) -> Vec<u32> {
        let lo = self.ts1().abs_diff(self.ts2());
        let hi = self.ts1() + self.ts2();
        (lo..=hi).step_by(2).collect()
    }

    pub fn multiplet_count(&self) -> usize {
        self.ts1().min(self.ts2()) as usize + 1
    }

    pub fn multiplet_index(&self, tj: u32) -> Option<usize> {
        let lo = self.ts1().abs_diff(self.ts2());
        let hi = self.ts1() + self.ts2();
        if tj < lo || tj > hi || !(tj - lo).is_multiple_of(2) {
            None
        } else {
            Some(((tj - lo) / 2) as usize)
        }
    }

    /// Largest label `2(S1 + S2)`.
    pub fn top(&self) -> u32 {
        self.ts1() + self.ts2()
    }

    pub fn product_index(&self, tm1: i32, tm2: i32) -> usize {
        let i1 = ((self.ts1() as i32 - tm1) / 2) as usize;
        let i2 = ((self.ts2() as i32 - tm2) / 2) as usize;
        i1 * self.second.dim() + i2
    }

    /// `(index, 2m1, 2m2)` over the product basis in index order.
    pub fn product_states(&self) -> impl Iterator<Item = (usize, i32, i32)> + '_ {
        self.first.projections().flat_map(move |tm1| {
            self.second
                .projections()
                .map(move |tm2| (self.product_index(tm1, tm2), tm1, tm2))
        })
    }
}

/// `(Sx, Sy, Sz)` of a single spin.
pub fn spin_matrices(twice_s: TwiceSpin) -> [DenseOperator; 3] {
    let n = twice_s.dim();
    let ts = twice_s.0 as i32;
    let mut raise = DMatrix::<f64>::zeros(n, n);
    // column i has 2m = ts - 2i; S+ maps it to row i - 1
    for i in 1..n {
        let tm = ts - 2 * i as i32;
        let amp = f64::from(ts * (ts + 2) - tm * (tm + 2)) / 4.0;
        raise[(i - 1, i)] = amp.sqrt();
    }
    let lower = raise.transpose();
    let sx = (&raise + &lower).map(|x| C64::new(x / 2.0, 0.0));
    let sy = (&raise - &lower).map(|x| C64::new(0.0, -x / 2.0));
    let sz = DMatrix::from_fn(n, n, |r, c| {
        if r == c {
            C64::new(f64::from(ts - 2 * r as i32) / 2.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    [
        DenseOperator::from_matrix(sx),
        DenseOperator::from_matrix(sy),
        DenseOperator::from_matrix(sz),
    ]
}

/// `(S1^a ⊗ 1, 1 ⊗ S2^a)` for a = x, y, z.
pub fn local_spin_operators(pair: &SpinPair) -> ([DenseOperator; 3], [DenseOperator; 3]) {
    let id1 = DenseOperator::identity(pair.first.dim());
    let id2 = DenseOperator::identity(pair.second.dim());
    let s1 = spin_matrices(pair.first).map(|s| s.kron(&id2));
    let s2 = spin_matrices(pair.second).map(|s| id1.kron(&s));
    (s1, s2)
}

/// Total spin `J = S1 + S2`.
pub fn total_spin_operators(pair: &SpinPair) -> [DenseOperator; 3] {
    let (s1, s2) = local_spin_operators(pair);
    [&s1[0] + &s2[0], &s1[1] + &s2[1], &s1[2] + &s2[2]]
}

/// `S1 · S2`.
pub fn dot_operator(pair: &SpinPair) -> DenseOperator {
    let (s1, s2) = local_spin_operators(pair);
    let mut out = DenseOperator::zeros(pair.dim());
    for a in 0..3 {
        out = &out + &(&s1[a] * &s2[a]);
    }
    out
}

pub fn squared_norm(ops: &[DenseOperator; 3]) -> DenseOperator {
    let sq: Vec<DenseOperator> = ops.iter().map(|o| o * o).collect();
    &(&sq[0] + &sq[1]) + &sq[2]
}

/// `Kx = S1x - S2x`, `Ky = S1y + S2y`, `Kz = S1z - S2z`.
///
/// This triple commutes with the partial transpose (over the second spin)
/// of any invariant state and obeys the su(2) algebra.
pub fn k_operators(pair: &SpinPair) -> [DenseOperator; 3] {
    let (s1, s2) = local_spin_operators(pair);
    [&s1[0] - &s2[0], &s1[1] + &s2[1], &s1[2] - &s2[2]]
}

/// Diagonal projector onto `S1z - S2z = K`, with `K` doubled.
///
/// Labels with no matching product state give the zero operator.
pub fn difference_projector(pair: &SpinPair, tk: i32) -> DenseOperator {
    let mut diag = vec![0.0; pair.dim()];
    for (idx, tm1, tm2) in pair.product_states() {
        if tm1 - tm2 == tk {
            diag[idx] = 1.0;
        }
    }
    DenseOperator::from_diagonal(&diag)
}

fn check_projection(tj: u32, tm: i32) -> Result<()> {
    if tm.unsigned_abs() > tj {
        return Err(Error::Projection { tj, tm });
    }
    if (tj as i32 + tm) % 2 != 0 {
        return Err(Error::Parity { tj, tm });
    }
    Ok(())
}

fn check_triangle(tj1: u32, tj2: u32, tj: u32) -> Result<()> {
    let ok = tj >= tj1.abs_diff(tj2) && tj <= tj1 + tj2 && (tj1 + tj2 + tj).is_multiple_of(2);
    if ok {
        Ok(())
    } else {
        Err(Error::Triangle { tj1, tj2, tj })
    }
}

fn factorial(n: i64) -> BigInt {
    debug_assert!(n >= 0);
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Clebsch–Gordan coefficient `<j1 m1; j2 m2 | J M>` (Condon–Shortley phase),
/// all arguments doubled.
///
/// Evaluated from the Racah sum in exact rational arithmetic; only the final
/// square root is taken in floating point.
pub fn clebsch_gordan(tj1: u32, tj2: u32, tm1: i32, tm2: i32, tj: u32, tm: i32) -> Result<f64> {
    let (negative, squared) = clebsch_gordan_exact(tj1, tj2, tm1, tm2, tj, tm)?;
    let magnitude = squared.to_f64().unwrap_or(f64::NAN).sqrt();
    Ok(if negative { -magnitude } else { magnitude })
}

/// Sign (`true` if negative) and exact square of [`clebsch_gordan`].
pub(crate) fn clebsch_gordan_exact(
    tj1: u32,
    tj2: u32,
    tm1: i32,
    tm2: i32,
    tj: u32,
    tm: i32,
) -> Result<(bool, BigRational)> {
    check_projection(tj1, tm1)?;
    check_projection(tj2, tm2)?;
    check_projection(tj, tm)?;
    check_triangle(tj1, tj2, tj)?;
    if tm != tm1 + tm2 {
        return Ok((false, BigRational::zero()));
    }
    let (j1, j2, j) = (i64::from(tj1), i64::from(tj2), i64::from(tj));
    let (m1, m2, m) = (i64::from(tm1), i64::from(tm2), i64::from(tm));
    let half = |x: i64| {
        debug_assert!(x % 2 == 0);
        x / 2
    };

    let a = half(j1 + j2 - j);
    let b = half(j1 - m1);
    let c = half(j2 + m2);
    let d = half(j - j2 + m1);
    let e = half(j - j1 - m2);

    let mut prefactor = BigRational::from_integer(BigInt::from(j + 1));
    let num = [a, half(j1 - j2 + j), half(j2 - j1 + j)];
    for x in num {
        prefactor *= BigRational::from_integer(factorial(x));
    }
    prefactor /= BigRational::from_integer(factorial(half(j1 + j2 + j) + 1));
    for x in [half(j1 + m1), b, c, half(j2 - m2), half(j + m), half(j - m)] {
        prefactor *= BigRational::from_integer(factorial(x));
    }

    let k_min = 0.max(-d).max(-e);
    let k_max = a.min(b).min(c);
    let mut sum = BigRational::zero();
    for k in k_min..=k_max {
        let denom = factorial(k)
            * factorial(a - k)
            * factorial(b - k)
            * factorial(c - k)
            * factorial(d + k)
            * factorial(e + k);
        let term = BigRational::new(BigInt::one(), denom);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let squared = &prefactor * &sum * &sum;
    Ok((sum.is_negative(), squared))
}

/// All Clebsch–Gordan coefficients of a spin pair, indexed by product state
/// and multiplet.
#[derive(Clone, Debug)]
pub struct CouplingTable {
    pair: SpinPair,
    multiplets: Vec<u32>,
    /// `coeffs[product][multiplet] = <m1 m2 | J, m1 + m2>`, zero if `|M| > J`.
    coeffs: Vec<Vec<f64>>,
}

impl CouplingTable {
    pub fn new(pair: SpinPair) -> Self {
        let multiplets = pair.multiplets();
        let mut coeffs = vec![vec![0.0; multiplets.len()]; pair.dim()];
        for (idx, tm1, tm2) in pair.product_states() {
            let tm = tm1 + tm2;
            for (jdx, &tj) in multiplets.iter().enumerate() {
                if tm.unsigned_abs() <= tj {
                    coeffs[idx][jdx] =
                        clebsch_gordan(pair.ts1(), pair.ts2(), tm1, tm2, tj, tm)
                            .expect("labels generated from a valid pair");
                }
            }
        }
        Self { pair, multiplets, coeffs }
    }

    pub fn pair(&self) -> &SpinPair {
        &self.pair
    }

    pub fn multiplets(&self) -> &[u32] {
        &self.multiplets
    }

    pub fn coefficient(&self, product: usize, multiplet: usize) -> f64 {
        self.coeffs[product][multiplet]
    }

    /// Coupled vector `|J, M>` in the product basis.
    pub fn coupled_vector(&self, multiplet: usize, tm: i32) -> Vec<f64> {
        let mut v = vec![0.0; self.pair.dim()];
        for (idx, tm1, tm2) in self.pair.product_states() {
            if tm1 + tm2 == tm {
                v[idx] = self.coeffs[idx][multiplet];
            }
        }
        v
    }

    /// Projector onto the multiplet with index `multiplet`.
    pub fn projector(&self, multiplet: usize) -> DenseOperator {
        let tj = self.multiplets[multiplet];
        let n = self.pair.dim();
        let mut m = DMatrix::<f64>::zeros(n, n);
        for tm in TwiceSpin(tj).projections() {
            let v = self.coupled_vector(multiplet, tm);
            for r in 0..n {
                if v[r] == 0.0 {
                    continue;
                }
                for c in 0..n {
                    m[(r, c)] += v[r] * v[c];
                }
            }
        }
        DenseOperator::from_real(&m)
    }

    pub fn projectors(&self) -> Vec<DenseOperator> {
        (0..self.multiplets.len()).map(|j| self.projector(j)).collect()
    }

    /// Unitary whose columns are `|J, M>`, ordered by descending `J`, then
    /// descending `M`.
    pub fn coupled_basis(&self) -> DenseOperator {
        let n = self.pair.dim();
        let mut u = DMatrix::<f64>::zeros(n, n);
        let mut col = 0;
        for (jdx, &tj) in self.multiplets.iter().enumerate().rev() {
            for tm in TwiceSpin(tj).projections() {
                let v = self.coupled_vector(jdx, tm);
                for (r, x) in v.into_iter().enumerate() {
                    u[(r, col)] = x;
                }
                col += 1;
            }
        }
        DenseOperator::from_real(&u)
    }
}

pub fn coupled_basis(pair: &SpinPair) -> DenseOperator {
    CouplingTable::new(*pair).coupled_basis()
}

/// Projector onto total spin `J` (doubled).
pub fn multiplet_projector(pair: &SpinPair, tj: u32) -> Result<DenseOperator> {
    let idx = pair
        .multiplet_index(tj)
        .ok_or(Error::Triangle { tj1: pair.ts1(), tj2: pair.ts2(), tj })?;
    Ok(CouplingTable::new(*pair).projector(idx))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: u32, b: u32) -> SpinPair {
        SpinPair::new(a, b).unwrap()
    }

    #[test]
    fn spin_half_and_one_sz() {
        let [_, _, sz] = spin_matrices(TwiceSpin(1));
        assert_eq!(sz.diagonal_real(), vec![0.5, -0.5]);
        let s = spin_matrices(TwiceSpin(2));
        assert_eq!(s[2].diagonal_real(), vec![1.0, 0.0, -1.0]);
        let cas = squared_norm(&s);
        assert!(cas.max_abs_diff(&DenseOperator::identity(3).scale(2.0)) < 1e-14);
    }

    #[test]
    fn spin_commutators() {
        for ts in 0..=MAX_TWICE_SPIN {
            let [sx, sy, sz] = spin_matrices(TwiceSpin(ts));
            let isz = DenseOperator::from_matrix(sz.matrix().map(|z| z * C64::new(0.0, 1.0)));
            assert!(sx.commutator(&sy).max_abs_diff(&isz) < 1e-13, "2S={ts}");
            let isx = DenseOperator::from_matrix(sx.matrix().map(|z| z * C64::new(0.0, 1.0)));
            assert!(sy.commutator(&sz).max_abs_diff(&isx) < 1e-13);
            let isy = DenseOperator::from_matrix(sy.matrix().map(|z| z * C64::new(0.0, 1.0)));
            assert!(sz.commutator(&sx).max_abs_diff(&isy) < 1e-13);
            let cas = squared_norm(&[sx, sy, sz]);
            let want = DenseOperator::identity(ts as usize + 1).scale(casimir(ts));
            assert!(cas.max_abs_diff(&want) < 1e-12);
        }
    }

    #[test]
    fn singlet_coefficients() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((clebsch_gordan(1, 1, 1, -1, 0, 0).unwrap() - s).abs() < 1e-15);
        assert!((clebsch_gordan(1, 1, -1, 1, 0, 0).unwrap() + s).abs() < 1e-15);
    }

    #[test]
    fn stretched_state_is_one() {
        for a in 0..=6 {
            for b in 0..=6 {
                let c = clebsch_gordan(a, b, a as i32, b as i32, a + b, (a + b) as i32).unwrap();
                assert!((c - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn known_spin_one_values() {
        // <1 1; 1 0 | 1 1> = 1/sqrt(2)
        let c = clebsch_gordan(2, 2, 2, 0, 2, 2).unwrap();
        assert!((c - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        // <1 0; 1 0 | 1 0> = 0
        assert_eq!(clebsch_gordan(2, 2, 0, 0, 2, 0).unwrap(), 0.0);
        // <1 0; 1 0 | 0 0> = -1/sqrt(3)
        let c = clebsch_gordan(2, 2, 0, 0, 0, 0).unwrap();
        assert!((c + 1.0 / 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_labels() {
        assert!(matches!(clebsch_gordan(1, 1, 0, 1, 0, 1), Err(Error::Parity { .. })));
        assert!(matches!(clebsch_gordan(1, 1, 1, -1, 4, 0), Err(Error::Triangle { .. })));
        assert!(matches!(clebsch_gordan(1, 1, 3, -1, 2, 2), Err(Error::Projection { .. })));
        assert!(matches!(clebsch_gordan(2, 2, 0, 0, 1, 1), Err(Error::Triangle { .. })));
        assert!(matches!(clebsch_gordan(2, 2, 1, 0, 2, 1), Err(Error::Parity { .. })));
        assert_eq!(clebsch_gordan(1, 1, 1, 1, 2, 0).unwrap(), 0.0);
    }

    #[test]
    fn two_qubit_coupled_basis() {
        let u = coupled_basis(&pair(1, 1));
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let last: Vec<f64> = (0..4).map(|r| u.get(r, 3).re).collect();
        let want = [0.0, s, -s, 0.0];
        for (a, b) in last.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn k_z_for_two_qubits() {
        let [_, _, kz] = k_operators(&pair(1, 1));
        assert_eq!(kz.diagonal_real(), vec![0.0, 1.0, -1.0, 0.0]);
    }

    #[test]
    fn difference_projector_cases() {
        let p = pair(1, 1);
        assert_eq!(difference_projector(&p, 2).diagonal_real(), vec![0.0, 1.0, 0.0, 0.0]);
        assert_eq!(difference_projector(&p, 4).max_abs(), 0.0);
        let q = pair(2, 2);
        assert_eq!(difference_projector(&q, 0).trace().re, 3.0);
    }

    #[test]
    fn multiplet_projector_rejects_out_of_range() {
        assert!(multiplet_projector(&pair(2, 1), 5).is_err());
        assert!(multiplet_projector(&pair(2, 1), 2).is_err());
        let singlet = multiplet_projector(&pair(1, 1), 0).unwrap();
        assert!((singlet.trace().re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn spin_pair_bounds() {
        assert!(matches!(SpinPair::new(12, 1), Err(Error::SpinTooLarge(12))));
        let p = pair(3, 2);
        assert_eq!(p.multiplets(), vec![1, 3, 5]);
        assert_eq!(p.multiplet_index(3), Some(1));
        assert_eq!(p.multiplet_index(4), None);
        assert_eq!(p.product_index(3, 2), 0);
        assert_eq!(p.product_index(-3, -2), 11);
    }
}
