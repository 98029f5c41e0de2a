//! Round trip between a dense invariant matrix and its multiplet weights.

use su2ent::{from_dense, partial_transpose_dense, random_state};

fn main() -> su2ent::Result<()> {
    run()
}

pub fn run() -> su2ent::Result<()> {
    let original = random_state(3, 3, 5)?;
    let rho = original.to_dense();
    let extracted = from_dense(&rho, 3, 3, 1e-10)?;
    println!("A in  = {:?}", original.weights());
    println!("A out = {:?}", extracted.state.weights());
    println!(
        "invariance {:.1e}, reconstruction {:.1e}",
        extracted.invariance_residual, extracted.reconstruction_residual
    );

    let pt = partial_transpose_dense(&rho, 3, 3)?;
    let eigen = pt.hermitian_eigenvalues();
    println!("rho^T2: trace {:.12}, smallest eigenvalue {:+.6}", pt.trace().re, eigen[0]);

    // a non-invariant matrix is rejected
    let mut skewed = rho.clone();
    skewed.set(0, 0, skewed.get(0, 0) * 1.5);
    println!("perturbed input: {}", from_dense(&skewed, 3, 3, 1e-10).unwrap_err());
    Ok(())
}
