//! k sources funnel through a path of l vertices into k sinks. Every path
//! cover repeats the funnel k times; a chain decomposition uses it once.

use chaincover::dag::gen_worst_case;
use chaincover::flow::{decompose_to_mpc, min_flow, FlowNetwork};
use chaincover::mcc::{extract_mcd, extract_mcd_naive};

fn main() {
    println!("{:>5} {:>6} {:>8} {:>10} {:>12} {:>12}", "k", "l", "chains", "paths", "trie visits", "list moves");
    for (k, l) in [(2, 2), (10, 10), (50, 1000), (300, 300), (500, 20_000)] {
        let dag = gen_worst_case(k, l).unwrap();
        let net = FlowNetwork::build(&dag);
        let f = min_flow(&net);
        let mpc = decompose_to_mpc(&net, &f).unwrap();
        let boosted = extract_mcd(&dag, &net, &f).unwrap();
        let naive = extract_mcd_naive(&dag, &net, &f).unwrap();
        println!(
            "{k:>5} {l:>6} {:>8} {:>10} {:>12} {:>12}",
            boosted.chains.total_length(),
            mpc.total_length(),
            boosted.stats.work,
            naive.stats.work
        );
    }
}
