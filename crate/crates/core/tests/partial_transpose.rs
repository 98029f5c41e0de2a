mod common;

use common::*;
use nalgebra::DMatrix;
use proptest::prelude::*;
use su2ent::partial_transpose::{closed_form_rhs, moment_matrix_determinant, moment_matrix_determinant_exact, weights_from_correlators_one, MULTIPLET_SNAP_TOL};
use su2ent::{
    b_from_a_linear, b_from_dense, b_from_diagonal, b_from_sum_rules, closed_form_half, closed_form_one,
    combined_sum_rule_residual, partial_transpose_dense, random_state, vandermonde_determinant, Error, SpectrumSolver,
    Su2State,
};

#[test]
fn dense_partial_transpose_matches_reference() {
    for pair in pairs_up_to(6) {
        let s = random_state(pair.ts1(), pair.ts2(), 5).unwrap();
        let rho = s.to_dense();
        let got = partial_transpose_dense(&rho, pair.ts1(), pair.ts2()).unwrap().matrix().map(|z| z.re);
        let want = partial_transpose(&rho.matrix().map(|z| z.re), dim(pair.ts1()), dim(pair.ts2()));
        assert!(max_abs(&(got - want)) < 1e-15);
    }
}

#[test]
fn all_methods_match_reference_spectrum() {
    for pair in pairs_up_to(7) {
        let oracle = Oracle::new(pair.ts1(), pair.ts2());
        let solver = SpectrumSolver::new(pair);
        for seed in 0..10 {
            let s = random_state(pair.ts1(), pair.ts2(), 1000 + seed).unwrap();
            let want = oracle.state_b(&s);
            let diag = solver.from_diagonal(&s).unwrap();
            let rules = solver.from_sum_rules(&s).unwrap().spectrum;
            let dense = solver.from_dense(&s, MULTIPLET_SNAP_TOL).unwrap();
            for (name, b) in [("diagonal", &diag), ("sum rules", &rules), ("dense", &dense)] {
                let dev = max_dev(b.coeffs(), &want);
                assert!(dev < 1e-9, "{name} on {pair:?} seed {seed}: {dev}");
            }
        }
    }
}

#[test]
fn eigenvalue_multiset_law() {
    for pair in pairs_up_to(7) {
        let oracle = Oracle::new(pair.ts1(), pair.ts2());
        let s = random_state(pair.ts1(), pair.ts2(), 17).unwrap();
        let pt = partial_transpose(&oracle.density(s.weights()), dim(pair.ts1()), dim(pair.ts2()));
        let got = sorted_eigenvalues(&pt);
        assert!(max_dev(&got, &b_from_diagonal(&s).eigenvalues()) < 1e-12);
    }
}

#[test]
fn partial_transpose_commutes_with_k() {
    for pair in pairs_up_to(6) {
        let solver = SpectrumSolver::new(pair);
        let s = random_state(pair.ts1(), pair.ts2(), 23).unwrap();
        assert!(solver.commutator_residual(&s).unwrap() < 1e-12);
        // and fails to commute with the total spin in general
        let oracle = Oracle::new(pair.ts1(), pair.ts2());
        for p in &oracle.k_projectors {
            let pt = partial_transpose(&oracle.density(s.weights()), dim(pair.ts1()), dim(pair.ts2()));
            let c = &pt * p - p * &pt;
            assert!(max_abs(&c) < 1e-12);
        }
    }
}

#[test]
fn spectrum_is_affine_in_weights() {
    for pair in pairs_up_to(6) {
        let a = random_state(pair.ts1(), pair.ts2(), 1).unwrap();
        let b = random_state(pair.ts1(), pair.ts2(), 2).unwrap();
        for lambda in [0.0, 0.25, 0.7, 1.0] {
            let mixed = a.mix(&b, lambda).unwrap();
            let ba = b_from_diagonal(&a);
            let bb = b_from_diagonal(&b);
            let bm = b_from_diagonal(&mixed);
            let wa = mixed.weights()[0];
            // mix(a, b, lambda) has weights lambda*a + (1-lambda)*b or the reverse
            let t = if (wa - (lambda * a.weights()[0] + (1.0 - lambda) * b.weights()[0])).abs() < 1e-14 {
                lambda
            } else {
                1.0 - lambda
            };
            let want: Vec<f64> = ba.coeffs().iter().zip(bb.coeffs()).map(|(x, y)| t * x + (1.0 - t) * y).collect();
            assert!(max_dev(bm.coeffs(), &want) < 1e-13);
        }
    }
}

#[test]
fn closed_forms_match_reference() {
    for ts1 in 1..=11 {
        let oracle = Oracle::new(ts1, 1);
        for seed in 0..5 {
            let s = random_state(ts1, 1, seed).unwrap();
            let b = closed_form_half(&s).unwrap();
            assert!(max_dev(b.coeffs(), &oracle.state_b(&s)) < 1e-10);
        }
    }
    for ts1 in 2..=10 {
        let oracle = Oracle::new(ts1, 2);
        for seed in 0..5 {
            let s = random_state(ts1, 2, seed).unwrap();
            let want = oracle.state_b(&s);
            assert!(max_dev(closed_form_one(&s).unwrap().coeffs(), &want) < 1e-10);
            assert!(max_dev(b_from_a_linear(&s).unwrap().coeffs(), &want) < 1e-10);
            let (lower, middle) = weights_from_correlators_one(&s).unwrap();
            assert!((lower - s.weights()[0]).abs() < 1e-10);
            assert!((middle - s.weights()[1]).abs() < 1e-10);
        }
    }
}

#[test]
fn closed_forms_reject_other_pairs() {
    let s = random_state(2, 2, 0).unwrap();
    assert!(matches!(closed_form_half(&s), Err(Error::UnsupportedSpins { .. })));
    let s = random_state(1, 2, 0).unwrap();
    assert!(matches!(closed_form_one(&s), Err(Error::UnsupportedSpins { .. })));
    assert!(matches!(b_from_a_linear(&s), Err(Error::UnsupportedSpins { .. })));
}

#[test]
fn sum_rule_right_hand_sides_match_reference() {
    for pair in pairs_up_to(7) {
        let (ts1, ts2) = (pair.ts1(), pair.ts2());
        let oracle = Oracle::new(ts1, ts2);
        let s = random_state(ts1, ts2, 41).unwrap();
        let pt = partial_transpose(&oracle.density(s.weights()), dim(ts1), dim(ts2));
        let w = kron(&eye(dim(ts1)), &flip(ts2));
        let lo = total_lowering(ts1, ts2);
        let z = total_sz(ts1, ts2);
        let j2 = lo.clone() * lo.transpose() + &z * &z + &z;
        let k2 = &w * j2 * w.transpose();
        let sol = b_from_sum_rules(&s).unwrap();
        let mut pow = eye(pair.dim());
        for (n, rhs) in sol.rhs.iter().enumerate() {
            let want = (&pt * &pow).trace();
            assert!((rhs - want).abs() < 1e-9 * want.abs().max(1.0), "{pair:?} n={n}");
            if let Some(closed) = closed_form_rhs(&s, n) {
                assert!((closed - want).abs() < 1e-9 * want.abs().max(1.0), "closed {pair:?} n={n}");
            }
            pow = &pow * &k2;
        }
        assert!(sol.closed_form_deviation < 1e-9);
    }
}

#[test]
fn combined_rule_closes() {
    for pair in pairs_up_to(7) {
        for seed in 0..10 {
            let s = random_state(pair.ts1(), pair.ts2(), seed).unwrap();
            let r = combined_sum_rule_residual(&s, &b_from_diagonal(&s)).unwrap();
            assert!(r.abs() <= 1e-10);
        }
    }
}

fn reference_determinant(ts1: u32, ts2: u32) -> f64 {
    let nodes: Vec<f64> = multiplets(ts1, ts2)
        .iter()
        .map(|&tk| {
            let k = f64::from(tk) / 2.0;
            k * (k + 1.0)
        })
        .collect();
    let n = nodes.len();
    DMatrix::from_fn(n, n, |r, c| nodes[c].powi(r as i32)).determinant()
}

#[test]
fn vandermonde_determinant_matches_lu() {
    assert_eq!(vandermonde_determinant(1, 1).unwrap(), 2.0);
    assert_eq!(vandermonde_determinant(2, 2).unwrap(), 48.0);
    for ts1 in 0..=11 {
        for ts2 in 0..=11 {
            let product = vandermonde_determinant(ts1, ts2).unwrap();
            assert!(product > 0.0);
            if ts1.min(ts2) <= 6 {
                let lu = reference_determinant(ts1, ts2);
                assert!(((lu - product) / product).abs() < 1e-9, "({ts1},{ts2})");
            }
            let exact = moment_matrix_determinant_exact(ts1, ts2).unwrap();
            assert!(((exact - product) / product).abs() < 1e-12, "({ts1},{ts2})");
            if ts1.min(ts2) <= 7 {
                let lu = moment_matrix_determinant(ts1, ts2).unwrap();
                assert!(((lu - product) / product).abs() < 1e-9, "({ts1},{ts2})");
            }
        }
    }
}

#[test]
fn singlet_and_simple_states() {
    let singlet = Su2State::new(1, 1, vec![1.0, 0.0]).unwrap();
    let b = b_from_dense(&singlet, MULTIPLET_SNAP_TOL).unwrap();
    assert!((b.coeffs()[0] + 0.5).abs() < 1e-12);
    assert!((b.coeffs()[1] - 1.5).abs() < 1e-12);

    // maximally mixed is invariant under partial transposition
    for pair in pairs_up_to(6) {
        let s = Su2State::maximally_mixed(pair.ts1(), pair.ts2()).unwrap();
        let b = b_from_dense(&s, MULTIPLET_SNAP_TOL).unwrap();
        assert!(max_dev(b.coeffs(), s.weights()) < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spectrum_invariants(ts1 in 0u32..=11, ts2 in 0u32..=11, seed in any::<u64>()) {
        let s = random_state(ts1, ts2, seed).unwrap();
        let b = b_from_diagonal(&s);
        prop_assert!((b.total() - 1.0).abs() <= 1e-10);
        prop_assert!(b.top() >= -1e-12);
        prop_assert!(combined_sum_rule_residual(&s, &b).unwrap().abs() <= 1e-9);
        // at most the most negative eigenvalue is bounded by -1/2
        prop_assert!(b.eigenvalues()[0] >= -0.5 - 1e-12);
    }

    #[test]
    fn sum_rules_agree_with_diagonal(ts1 in 0u32..=6, ts2 in 0u32..=6, seed in any::<u64>()) {
        let s = random_state(ts1, ts2, seed).unwrap();
        let a = b_from_diagonal(&s);
        let b = b_from_sum_rules(&s).unwrap().spectrum;
        prop_assert!(a.max_abs_diff(&b) <= 1e-9);
    }
}
