//! Correlator formulas for a spin-1/2 or spin-1 partner.

use su2ent::{b_from_a_linear, b_from_diagonal, closed_form_half, closed_form_one, random_state};

fn main() -> su2ent::Result<()> {
    run()
}

pub fn run() -> su2ent::Result<()> {
    for ts1 in [1, 3, 7, 11] {
        let s = random_state(ts1, 1, 9)?;
        let closed = closed_form_half(&s)?;
        println!(
            "S1={:<4} S2=1/2  <S1.S2>={:+.5}  B={:?}  |diff|={:.1e}",
            f64::from(ts1) / 2.0,
            s.dot_moment(1),
            closed.coeffs(),
            closed.max_abs_diff(&b_from_diagonal(&s))
        );
    }
    for ts1 in [2, 5, 10] {
        let s = random_state(ts1, 2, 9)?;
        let closed = closed_form_one(&s)?;
        let linear = b_from_a_linear(&s)?;
        println!(
            "S1={:<4} S2=1    B={:?}  |closed-linear|={:.1e}",
            f64::from(ts1) / 2.0,
            closed.coeffs(),
            closed.max_abs_diff(&linear)
        );
    }
    Ok(())
}
