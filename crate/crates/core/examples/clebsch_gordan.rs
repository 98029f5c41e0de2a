//! Clebsch-Gordan table for 1 x 1/2 and the coupled projectors it builds.

use su2ent::{clebsch_gordan, multiplet_projector, SpinPair};

fn main() -> su2ent::Result<()> {
    run()
}

pub fn run() -> su2ent::Result<()> {
    let (ts1, ts2) = (2, 1);
    for tj in [1, 3] {
        for tm in (-(tj as i32)..=tj as i32).rev().step_by(2) {
            for tm1 in [2, 0, -2] {
                let tm2 = tm - tm1;
                if tm2.abs() != 1 {
                    continue;
                }
                let c = clebsch_gordan(ts1, ts2, tm1, tm2, tj, tm)?;
                println!("<1 {:+}; 1/2 {:+} | {}/2 {:+}/2> = {c:+.6}", tm1 / 2, f64::from(tm2) / 2.0, tj, tm);
            }
        }
    }
    let pair = SpinPair::new(ts1, ts2)?;
    for tj in pair.multiplets() {
        let p = multiplet_projector(&pair, tj)?;
        println!("rank of P(J={}/2) = {:.0}", tj, p.trace().re);
    }
    Ok(())
}
