//! The two-qubit singlet: one negative partial-transpose coefficient.

use su2ent::{b_from_diagonal, full_report, Su2State, VERDICT_TOL};

fn main() -> su2ent::Result<()> {
    run()
}

pub fn run() -> su2ent::Result<()> {
    let singlet = Su2State::new(1, 1, vec![1.0, 0.0])?;
    let b = b_from_diagonal(&singlet);
    for (tk, coeff) in singlet.pair().multiplets().iter().zip(b.coeffs()) {
        println!("B(K={}) = {coeff:+.6}", f64::from(*tk) / 2.0);
    }
    println!("eigenvalues of rho^T2: {:?}", b.eigenvalues());

    let report = full_report(&singlet, VERDICT_TOL)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    Ok(())
}
