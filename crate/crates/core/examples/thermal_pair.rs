//! Gibbs state of `J S1.S2` across temperatures.

use su2ent::{b_from_diagonal, full_report, thermal_pair, VERDICT_TOL};

fn main() -> su2ent::Result<()> {
    run()
}

pub fn run() -> su2ent::Result<()> {
    for (ts1, ts2) in [(1, 1), (2, 2), (3, 2)] {
        println!("S1={} S2={}", f64::from(ts1) / 2.0, f64::from(ts2) / 2.0);
        for beta in [0.0, 0.5, 1.0, 2.0, 4.0] {
            let s = thermal_pair(ts1, ts2, 1.0, beta)?;
            let b = b_from_diagonal(&s);
            let r = full_report(&s, VERDICT_TOL)?;
            println!(
                "  beta={beta:<4} <S1.S2>={:+.4}  min B={:+.4}  ppt_negative={}",
                r.dot_correlator,
                b.coeffs().iter().copied().fold(f64::INFINITY, f64::min),
                r.ppt_negative
            );
        }
    }
    // ferromagnetic coupling leaves the pair separable at any temperature
    let s = thermal_pair(1, 1, -1.0, 10.0)?;
    println!("ferromagnet beta=10: B = {:?}", b_from_diagonal(&s).coeffs());
    Ok(())
}
