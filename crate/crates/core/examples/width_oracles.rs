//! Three independent ways to get the width of a DAG.

use chaincover::dag::{gen_random_dag, gen_worst_case};
use chaincover::flow::{min_flow, FlowNetwork};
use chaincover::oracle::{width_by_enumeration, width_by_matching};

fn main() {
    let mut instances = vec![("worst_case(3, 4)".to_string(), gen_worst_case(3, 4).unwrap())];
    for seed in 0..6 {
        instances.push((format!("random(12, 0.2, {seed})"), gen_random_dag(12, 0.2, seed).unwrap()));
    }
    println!("{:<22} {:>5} {:>9} {:>12}", "instance", "flow", "matching", "antichains");
    for (name, dag) in instances {
        let net = FlowNetwork::build(&dag);
        let flow = min_flow(&net).size(&net);
        let matching = width_by_matching(&dag).unwrap();
        let brute = width_by_enumeration(&dag).unwrap();
        println!("{name:<22} {flow:>5} {matching:>9} {brute:>12}");
        assert!(flow as usize == matching && matching == brute);
    }
}
