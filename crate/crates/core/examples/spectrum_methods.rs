//! Three routes to `B(K)` on the same random state, plus the dense
//! eigenvalues they must reproduce.

use su2ent::partial_transpose::MULTIPLET_SNAP_TOL;
use su2ent::{random_state, SpectrumSolver};

fn main() -> su2ent::Result<()> {
    run()
}

pub fn run() -> su2ent::Result<()> {
    let state = random_state(5, 4, 2024)?;
    let solver = SpectrumSolver::new(*state.pair());

    let diagonal = solver.from_diagonal(&state)?;
    let sum_rules = solver.from_sum_rules(&state)?;
    let dense = solver.from_dense(&state, MULTIPLET_SNAP_TOL)?;

    println!("A = {:?}", state.weights());
    println!("diagonal  B = {:?}", diagonal.coeffs());
    println!("sum rules B = {:?}", sum_rules.spectrum.coeffs());
    println!("dense     B = {:?}", dense.coeffs());
    println!(
        "max deviation: diagonal/sum rules {:.1e}, diagonal/dense {:.1e}",
        diagonal.max_abs_diff(&sum_rules.spectrum),
        diagonal.max_abs_diff(&dense)
    );

    let eigen = solver.dense_eigenvalues(&state)?;
    let predicted = diagonal.eigenvalues();
    let worst = eigen.iter().zip(&predicted).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    println!("{} eigenvalues, multiset deviation {worst:.1e}", eigen.len());
    Ok(())
}
