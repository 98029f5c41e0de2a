//! Projector-difference witnesses `P(K) - P(K+1)` measured on a dense state.

use su2ent::criteria::witness_operator;
use su2ent::{b_from_diagonal, random_state, witness_expectation};

fn main() -> su2ent::Result<()> {
    run()
}

pub fn run() -> su2ent::Result<()> {
    let state = random_state(4, 2, 31)?;
    let pair = *state.pair();
    let rho = state.to_dense();
    let b = b_from_diagonal(&state);
    for tk in pair.multiplets().into_iter().filter(|&tk| tk < pair.top()) {
        let w = witness_operator(&pair, tk)?;
        let dense = w.trace_product(&rho).re;
        let value = witness_expectation(&state, tk)?;
        println!(
            "K={:<3} tr[W rho]={dense:+.8}  formula={value:+.8}  B(K)/(2K+1)={:+.8}",
            f64::from(tk) / 2.0,
            b.coeff(tk) / f64::from(tk + 1)
        );
    }
    Ok(())
}
