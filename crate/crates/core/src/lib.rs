//! Minimum chain decompositions of DAGs.
//!
//! The pipeline reduces a DAG to a flow network with unit demands on split
//! vertices, finds a minimum flow (its value is the width `k`), and then
//! extracts `k` vertex-disjoint chains covering every vertex. Extraction
//! runs over mergeable dictionaries with size-based splits, so it costs
//! `O((|V| + |E|) log k)` on top of the flow, instead of the `Θ(k·|V|)` a
//! path decomposition can require.
//!
//! ```
//! use chaincover::{dag::Dag, minimum_chain_decomposition};
//!
//! let dag = Dag::new(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
//! let chains = minimum_chain_decomposition(&dag);
//! assert_eq!(chains.k(), 2);
//! assert_eq!(chains.total_length(), 4);
//! ```
//!
//! Modules:
//!
//! - [`dag`]: graphs, text formats and instance generators.
//! - [`mergeable_dict`]: the trie-based partition of `{1, …, k}`.
//! - [`flow`]: flow reduction, Dinic max flow, minimum flow, path
//!   decomposition.
//! - [`mcc`]: chain extraction and validation.
//! - [`oracle`]: independent checkers used by the tests.
//! - [`cli`]: the `chaincover` command.

pub mod cli;
pub mod dag;
pub mod flow;
pub mod mcc;
pub mod mergeable_dict;
pub mod oracle;

use dag::{ChainDecomposition, Dag};

/// Computes a minimum chain decomposition of `dag`.
pub fn minimum_chain_decomposition(dag: &Dag) -> ChainDecomposition {
    let network = flow::FlowNetwork::build(dag);
    let f = flow::min_flow(&network);
    mcc::extract_mcd(dag, &network, &f)
        .expect("a minimum flow satisfies demands and conservation")
        .chains
}
