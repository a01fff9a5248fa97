//! Any flow of the reduction, even one ignoring the demands, yields |f|
//! vertex-disjoint chains over the vertices it passes through.

use chaincover::dag::gen_random_dag;
use chaincover::flow::{decompose_to_mpc, flow_from_paths, min_flow, FlowNetwork};
use chaincover::mcc::extract_chains_from_flow;

fn main() {
    let dag = gen_random_dag(25, 0.15, 3).unwrap();
    let net = FlowNetwork::build(&dag);
    let paths = decompose_to_mpc(&net, &min_flow(&net)).unwrap().paths;

    // Keep every other path; the result no longer covers every vertex.
    let kept: Vec<Vec<usize>> = paths.iter().step_by(2).cloned().collect();
    let f = flow_from_paths(&dag, &net, &kept).unwrap();
    println!("{} paths kept of {}, |f| = {}", kept.len(), paths.len(), f.size(&net));
    for p in &kept {
        println!("path  {p:?}");
    }

    let out = extract_chains_from_flow(&dag, &net, &f).unwrap();
    let covered: usize = out.chains.total_length();
    for c in &out.chains.chains {
        println!("chain {c:?}");
    }
    println!("{} disjoint chains covering {covered} of {} vertices", out.chains.k(), dag.n());
}
