//! Reference computations built from scratch with real dense matrices.
//!
//! Nothing here calls into the library's coupling tables, projectors or
//! partial transpose; only the state container and spin-pair labels are shared.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use su2ent::{Su2State, SpinPair};

pub fn dim(ts: u32) -> usize {
    ts as usize + 1
}

/// Lowering operator in the basis `m = s, s-1, ..., -s`.
pub fn lowering(ts: u32) -> DMatrix<f64> {
    let n = dim(ts);
    let s = f64::from(ts) / 2.0;
    let mut l = DMatrix::zeros(n, n);
    for i in 0..n - 1 {
        let m = s - i as f64;
        l[(i + 1, i)] = ((s + m) * (s - m + 1.0)).sqrt();
    }
    l
}

pub fn sz(ts: u32) -> DMatrix<f64> {
    let s = f64::from(ts) / 2.0;
    DMatrix::from_diagonal(&DVector::from_fn(dim(ts), |i, _| s - i as f64))
}

/// Real `(S+, S-, Sz)`.
pub fn ladder(ts: u32) -> (DMatrix<f64>, DMatrix<f64>, DMatrix<f64>) {
    let lo = lowering(ts);
    (lo.transpose(), lo, sz(ts))
}

pub fn kron(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    DMatrix::from_fn(ra * rb, ca * cb, |r, c| a[(r / rb, c / cb)] * b[(r % rb, c % cb)])
}

pub fn eye(n: usize) -> DMatrix<f64> {
    DMatrix::identity(n, n)
}

/// `S1·S2 = Sz Sz + (S+ S- + S- S+)/2`.
pub fn dot(ts1: u32, ts2: u32) -> DMatrix<f64> {
    let (p1, m1, z1) = ladder(ts1);
    let (p2, m2, z2) = ladder(ts2);
    kron(&z1, &z2) + (kron(&p1, &m2) + kron(&m1, &p2)) * 0.5
}

pub fn total_lowering(ts1: u32, ts2: u32) -> DMatrix<f64> {
    kron(&lowering(ts1), &eye(dim(ts2))) + kron(&eye(dim(ts1)), &lowering(ts2))
}

pub fn total_sz(ts1: u32, ts2: u32) -> DMatrix<f64> {
    kron(&sz(ts1), &eye(dim(ts2))) + kron(&eye(dim(ts1)), &sz(ts2))
}

/// Coupled vectors `(2J, 2M, v)` by lowering from each highest-weight state.
///
/// Highest weights are found by Gram-Schmidt inside the `M = J` subspace and
/// given the sign that makes the `m1 = S1` component positive.
pub fn coupled_vectors(ts1: u32, ts2: u32) -> Vec<(u32, i32, DVector<f64>)> {
    let (d1, d2) = (dim(ts1), dim(ts2));
    let n = d1 * d2;
    let lower = total_lowering(ts1, ts2);
    let tm_of = |idx: usize| -> i32 {
        let (i1, i2) = (idx / d2, idx % d2);
        (ts1 as i32 - 2 * i1 as i32) + (ts2 as i32 - 2 * i2 as i32)
    };
    let mut found: Vec<(u32, i32, DVector<f64>)> = Vec::new();
    let top = ts1 + ts2;
    let bottom = ts1.abs_diff(ts2);
    let mut tj = top;
    loop {
        let mut hw = None;
        for idx in (0..n).filter(|&i| tm_of(i) == tj as i32) {
            let mut v = DVector::zeros(n);
            v[idx] = 1.0;
            for (_, tm, u) in &found {
                if *tm == tj as i32 {
                    let p = u.dot(&v);
                    v -= u * p;
                }
            }
            if v.norm() > 1e-8 {
                hw = Some(v.normalize());
                break;
            }
        }
        let mut v = hw.expect("highest-weight state exists");
        // component with m1 = S1 (first-factor index 0)
        let lead = (0..d2).map(|i2| v[i2]).find(|x| x.abs() > 1e-12).unwrap_or(1.0);
        if lead < 0.0 {
            v = -v;
        }
        let mut tm = tj as i32;
        loop {
            found.push((tj, tm, v.clone()));
            if tm == -(tj as i32) {
                break;
            }
            v = (&lower * &v).normalize();
            tm -= 2;
        }
        if tj < bottom + 2 {
            break;
        }
        tj -= 2;
    }
    found
}

/// `<m1 m2 | J M>` from [`coupled_vectors`].
pub fn cg_oracle(ts1: u32, ts2: u32, tm1: i32, tm2: i32, tj: u32, tm: i32) -> f64 {
    let d2 = dim(ts2);
    let idx = ((ts1 as i32 - tm1) / 2) as usize * d2 + ((ts2 as i32 - tm2) / 2) as usize;
    coupled_vectors(ts1, ts2)
        .into_iter()
        .find(|(j, m, _)| *j == tj && *m == tm)
        .map(|(_, _, v)| v[idx])
        .unwrap_or(0.0)
}

pub fn projector(ts1: u32, ts2: u32, tj: u32) -> DMatrix<f64> {
    let n = dim(ts1) * dim(ts2);
    let mut p = DMatrix::zeros(n, n);
    for (j, _, v) in coupled_vectors(ts1, ts2) {
        if j == tj {
            p += &v * v.transpose();
        }
    }
    p
}

pub fn multiplets(ts1: u32, ts2: u32) -> Vec<u32> {
    (ts1.abs_diff(ts2)..=ts1 + ts2).step_by(2).collect()
}

/// Cached projectors for one pair.
pub struct Oracle {
    pub ts1: u32,
    pub ts2: u32,
    pub projectors: Vec<DMatrix<f64>>,
    /// Projectors onto the multiplets of `S1 - S2^T`.
    pub k_projectors: Vec<DMatrix<f64>>,
}

/// `W S W^T = -S^T` with `W_{m,-m} = (-1)^(s-m)`.
pub fn flip(ts: u32) -> DMatrix<f64> {
    let n = dim(ts);
    let mut w = DMatrix::zeros(n, n);
    for i in 0..n {
        w[(i, n - 1 - i)] = if i % 2 == 0 { 1.0 } else { -1.0 };
    }
    w
}

impl Oracle {
    pub fn new(ts1: u32, ts2: u32) -> Self {
        let mut coupled: Vec<Vec<DVector<f64>>> = multiplets(ts1, ts2).iter().map(|_| Vec::new()).collect();
        let lo = ts1.abs_diff(ts2);
        for (j, _, v) in coupled_vectors(ts1, ts2) {
            coupled[((j - lo) / 2) as usize].push(v);
        }
        let n = dim(ts1) * dim(ts2);
        let projectors: Vec<DMatrix<f64>> = coupled
            .iter()
            .map(|vs| vs.iter().fold(DMatrix::zeros(n, n), |acc, v| acc + v * v.transpose()))
            .collect();
        let w = kron(&eye(dim(ts1)), &flip(ts2));
        let k_projectors = projectors.iter().map(|p| &w * p * w.transpose()).collect();
        Self { ts1, ts2, projectors, k_projectors }
    }

    pub fn density(&self, weights: &[f64]) -> DMatrix<f64> {
        let n = self.projectors[0].nrows();
        let mut rho = DMatrix::zeros(n, n);
        for ((a, p), tj) in weights.iter().zip(&self.projectors).zip(multiplets(self.ts1, self.ts2)) {
            rho += p * (a / f64::from(tj + 1));
        }
        rho
    }

    /// `B(K) = tr[rho^T2 Pi~_K]`.
    pub fn b(&self, weights: &[f64]) -> Vec<f64> {
        let pt = partial_transpose(&self.density(weights), dim(self.ts1), dim(self.ts2));
        self.k_projectors.iter().map(|p| (&pt * p).trace()).collect()
    }

    pub fn state_b(&self, state: &Su2State) -> Vec<f64> {
        self.b(state.weights())
    }
}

/// Reshapes to `rho[i1, i2, j1, j2]` and swaps `i2 <-> j2`.
pub fn partial_transpose(rho: &DMatrix<f64>, d1: usize, d2: usize) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(d1 * d2, d1 * d2);
    for i1 in 0..d1 {
        for i2 in 0..d2 {
            for j1 in 0..d1 {
                for j2 in 0..d2 {
                    out[(i1 * d2 + j2, j1 * d2 + i2)] = rho[(i1 * d2 + i2, j1 * d2 + j2)];
                }
            }
        }
    }
    out
}

pub fn sorted_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// `exp(m)` by scaling and squaring a Taylor series.
pub fn expm(m: &DMatrix<f64>) -> DMatrix<f64> {
    let norm = m.iter().map(|x| x.abs()).sum::<f64>().max(1e-300);
    let squarings = (norm.log2().ceil().max(0.0) as u32) + 4;
    let scaled = m / 2f64.powi(squarings as i32);
    let n = m.nrows();
    let mut term = eye(n);
    let mut sum = eye(n);
    for k in 1..30 {
        term = &term * &scaled / k as f64;
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// `exp(-beta H) / Z`.
pub fn gibbs(h: &DMatrix<f64>, beta: f64) -> DMatrix<f64> {
    let e = expm(&(h * -beta));
    let z = e.trace();
    e / z
}

/// Heisenberg ring `sum_i S_i·S_(i+1)` built from Kronecker products.
/// Site 0 is the leftmost factor.
pub fn ring_hamiltonian(sites: usize) -> DMatrix<f64> {
    let n = 1usize << sites;
    let bond = dot(1, 1);
    let mut h = DMatrix::zeros(n, n);
    let bonds: Vec<(usize, usize)> =
        if sites == 2 { vec![(0, 1)] } else { (0..sites).map(|i| (i, (i + 1) % sites)).collect() };
    let (p, m, z) = ladder(1);
    let site_op = |op: &DMatrix<f64>, site: usize| -> DMatrix<f64> {
        let left = eye(1 << site);
        let right = eye(1 << (sites - site - 1));
        kron(&kron(&left, op), &right)
    };
    for (a, b) in bonds {
        if b == a + 1 {
            let left = eye(1 << a);
            let right = eye(1 << (sites - b - 1));
            h += kron(&kron(&left, &bond), &right);
        } else {
            h += site_op(&z, a) * site_op(&z, b)
                + (site_op(&p, a) * site_op(&m, b) + site_op(&m, a) * site_op(&p, b)) * 0.5;
        }
    }
    h
}

/// Trace over all factors after the first two qubits.
pub fn reduce_to_first_pair(rho: &DMatrix<f64>, sites: usize) -> DMatrix<f64> {
    let rest = 1usize << (sites - 2);
    DMatrix::from_fn(4, 4, |a, b| (0..rest).map(|r| rho[(a * rest + r, b * rest + r)]).sum())
}

pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

pub fn max_dev(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Spin pairs with both local dimensions at most `max_dim`.
pub fn pairs_up_to(max_dim: u32) -> Vec<SpinPair> {
    let mut out = Vec::new();
    for ts1 in 0..max_dim {
        for ts2 in 0..max_dim {
            out.push(SpinPair::new(ts1, ts2).unwrap());
        }
    }
    out
}

/// `<(S1·S2)^n>` against the dense operator.
pub fn dense_dot_moment(oracle: &Oracle, weights: &[f64], n: u32) -> f64 {
    let rho = oracle.density(weights);
    let d = dot(oracle.ts1, oracle.ts2);
    let mut pow = eye(d.nrows());
    for _ in 0..n {
        pow = &pow * &d;
    }
    (&rho * pow).trace()
}
