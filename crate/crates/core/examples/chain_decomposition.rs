//! Minimum chain decomposition of a random DAG with both extractors,
//! checked against the matching-based width.

use chaincover::dag::gen_random_dag;
use chaincover::flow::{min_flow, FlowNetwork};
use chaincover::mcc::{extract_mcd, extract_mcd_naive, validate_mcd};
use chaincover::oracle::width_by_matching;

fn main() {
    let dag = gen_random_dag(30, 0.08, 7).unwrap();
    let net = FlowNetwork::build(&dag);
    let f = min_flow(&net);
    let k = f.size(&net) as usize;
    println!("n = {}, m = {}, width = {k}", dag.n(), dag.m());
    assert_eq!(k, width_by_matching(&dag).unwrap());

    let boosted = extract_mcd(&dag, &net, &f).unwrap();
    let naive = extract_mcd_naive(&dag, &net, &f).unwrap();
    for (name, out) in [("boosted", &boosted), ("naive", &naive)] {
        validate_mcd(&dag, &out.chains, k).unwrap();
        println!("{name}: {} set operations, work {}", out.stats.set_ops, out.stats.work);
    }
    for (i, chain) in boosted.chains.chains.iter().enumerate() {
        println!("C{i}: {chain:?}");
    }
}
