//! Moment equations `tr[rho^T2 (K^2)^n]` and their Vandermonde system.

use su2ent::partial_transpose::{closed_form_rhs, moment_matrix_determinant, moment_matrix_determinant_exact};
use su2ent::{combined_sum_rule_residual, thermal_pair, vandermonde_determinant, SpectrumSolver};

fn main() -> su2ent::Result<()> {
    run()
}

pub fn run() -> su2ent::Result<()> {
    let state = thermal_pair(4, 3, 1.0, 0.8)?;
    let solver = SpectrumSolver::new(*state.pair());
    let system = solver.sum_rules();
    println!("nodes K(K+1): {:?}", system.nodes());

    let solution = solver.from_sum_rules(&state)?;
    let rho = solver.density(&state)?;
    for (n, rhs) in solution.rhs.iter().enumerate() {
        let dense = system.dense_rhs(&rho, n);
        match closed_form_rhs(&state, n) {
            Some(closed) => println!("n={n}: {rhs:>14.8} dense {dense:>14.8} closed {closed:>14.8}"),
            None => println!("n={n}: {rhs:>14.8} dense {dense:>14.8}"),
        }
    }
    println!("B = {:?}", solution.spectrum.coeffs());
    println!("combined residual {:.1e}", combined_sum_rule_residual(&state, &solution.spectrum)?);

    println!("\n ts1 ts2   product        exact          LU");
    for (ts1, ts2) in [(1, 1), (2, 2), (4, 3), (7, 7), (11, 11)] {
        println!(
            "{ts1:>4}{ts2:>4}  {:<13.6e}  {:<13.6e}  {:.6e}",
            vandermonde_determinant(ts1, ts2)?,
            moment_matrix_determinant_exact(ts1, ts2)?,
            moment_matrix_determinant(ts1, ts2)?
        );
    }
    Ok(())
}
