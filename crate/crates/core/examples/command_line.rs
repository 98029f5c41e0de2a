//! Driving the command-line interface in-process.

use su2ent::cli::run as su2ent;

fn main() {
    run();
}

pub fn run() {
    for args in [
        "analyze --ts1 2 --ts2 2 --A 0.8,0.2,0",
        "verify --ts1 4 --ts2 3 --samples 20 --seed 1",
        "scan --thermal --ts1 1 --ts2 1 --sweep beta --from 0 --to 2 --step 0.5",
    ] {
        let out = su2ent(std::iter::once("su2ent").chain(args.split_whitespace()));
        println!("$ su2ent {args}\n{}(exit {})\n", out.stdout, out.code);
    }
}
