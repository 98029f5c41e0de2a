//! How often each criterion fires on random states, and the implications
//! between them.

use su2ent::{random_state, Analyzer, SpinPair, VERDICT_TOL};

fn main() -> su2ent::Result<()> {
    run()
}

pub fn run() -> su2ent::Result<()> {
    println!("ts1 ts2    ppt    npt    red    maj    lur");
    for (ts1, ts2) in [(1, 1), (2, 2), (3, 2), (4, 4), (6, 3)] {
        let analyzer = Analyzer::new(SpinPair::new(ts1, ts2)?);
        let mut counts = [0usize; 5];
        for seed in 0..2000 {
            let r = analyzer.report(&random_state(ts1, ts2, seed)?, VERDICT_TOL)?;
            assert!(!r.majorization_violated || r.reduction_violated);
            assert!(!r.reduction_violated || r.ppt_negative);
            assert!(!r.sufficient_npt || r.ppt_negative);
            let flags = [r.ppt_negative, r.sufficient_npt, r.reduction_violated, r.majorization_violated, r.lur_violated];
            for (c, f) in counts.iter_mut().zip(flags) {
                *c += usize::from(f);
            }
        }
        println!(
            "{ts1:>3} {ts2:>3} {:>6} {:>6} {:>6} {:>6} {:>6}",
            counts[0], counts[1], counts[2], counts[3], counts[4]
        );
    }
    Ok(())
}
