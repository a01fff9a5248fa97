//! The end-to-end pipeline with timing and dictionary counters, as the
//! command-line tool reports it.

use chaincover::cli::{run_pipeline, Algorithm};
use chaincover::dag::gen_worst_case;

fn main() {
    let dag = gen_worst_case(100, 5000).unwrap();
    for algorithm in [Algorithm::Boosted, Algorithm::Naive, Algorithm::Mpc] {
        let (_, summary) = run_pipeline(&dag, algorithm).unwrap();
        println!("{summary}");
    }
}
