//! The flow reduction of a small DAG, its minimum flow, and the path cover
//! it decomposes into.

use chaincover::dag::Dag;
use chaincover::flow::{decompose_to_mpc, min_flow, FlowAssignment, FlowNetwork};

fn main() {
    //   0 → 2 → 3
    //   1 ↗   ↘ 4
    let dag = Dag::new(5, [(0, 2), (1, 2), (2, 3), (2, 4)]).unwrap();
    let net = FlowNetwork::build(&dag);
    println!("{} nodes, {} edges", net.node_count(), net.edge_count());

    let start = FlowAssignment::unit_per_vertex(&net);
    println!("one path per vertex: |f| = {}", start.size(&net));

    let f = min_flow(&net);
    println!("minimum flow: |f| = {}", f.size(&net));
    println!("tail head demand flow");
    print!("{}", net.dump(&f));

    let cover = decompose_to_mpc(&net, &f).unwrap();
    for path in &cover.paths {
        println!("path {path:?}");
    }
    println!("total length {} for {} vertices", cover.total_length(), dag.n());
}
