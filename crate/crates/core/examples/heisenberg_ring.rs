//! Nearest-neighbour pair of a thermal spin-1/2 Heisenberg ring.

use su2ent::{b_from_diagonal, ring_reduction};

fn main() -> su2ent::Result<()> {
    run()
}

pub fn run() -> su2ent::Result<()> {
    println!(" N   beta   A(J=0)    B(K=0)    invariance");
    for sites in [2, 4, 6, 8] {
        for beta in [0.5, 2.0, 5.0] {
            let ex = ring_reduction(sites, beta)?;
            let b = b_from_diagonal(&ex.state);
            println!(
                "{sites:>2} {beta:>6} {:>9.5} {:>+9.5} {:>10.1e}",
                ex.state.weights()[0],
                b.coeffs()[0],
                ex.invariance_residual
            );
        }
    }
    Ok(())
}
