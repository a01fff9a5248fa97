//! Chain extraction from a minimum flow.
//!
//! Both extractors walk the DAG in topological order and track, for every
//! vertex `v`, the set `I_v ⊆ {1, …, k}` of flow-path indices passing
//! through it. `v` takes exactly `f(S, v_in)` indices from the source pool
//! and `f(u_out, v_in)` from each in-neighbor `u`, then appends itself to
//! the chain of one index in `I_v`. Indices only ever move along edges, so
//! every list is a chain; each vertex is appended once, so the lists form a
//! decomposition with `|f|` chains.
//!
//! [`extract_mcd_naive`] keeps the sets as lists and pays for every index
//! moved, which is `Θ(k·|V|)` on bad inputs. [`extract_mcd`] keeps them in
//! a [`TriePartition`] and pays `O(log k)` amortized per reduction edge.

use std::collections::VecDeque;

use thiserror::Error;

use crate::dag::{ChainDecomposition, Dag};
use crate::flow::{FlowAssignment, FlowError, FlowNetwork};
use crate::mergeable_dict::{Element, SetHandle, TriePartition};

/// Work performed by one extraction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExtractStats {
    /// Set operations issued: takes/unions/picks for lists, dictionary
    /// calls for tries.
    pub set_ops: u64,
    /// Trie nodes visited (boosted) or indices moved between lists (naive).
    pub work: u64,
    /// Trie nodes created; zero for the list version.
    pub nodes_created: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extraction {
    pub chains: ChainDecomposition,
    pub stats: ExtractStats,
}

/// Chain extraction with index lists: every take of `c` indices costs `c`.
pub fn extract_mcd_naive(
    dag: &Dag,
    network: &FlowNetwork,
    flow: &FlowAssignment,
) -> Result<Extraction, FlowError> {
    network.check_flow(flow, true)?;
    let k = flow.size(network) as Element;
    let mut stats = ExtractStats::default();
    let mut pool: VecDeque<Element> = (1..=k).collect();
    let mut sets: Vec<VecDeque<Element>> = vec![VecDeque::new(); dag.n()];
    let mut chains = vec![Vec::new(); k as usize];

    let mut take = |from: &mut VecDeque<Element>, count: u64, vertex: usize| {
        if count > from.len() as u64 {
            return Err(FlowError::Exhausted {
                vertex,
                requested: count,
                available: from.len() as u64,
            });
        }
        stats.set_ops += 1;
        stats.work += count;
        Ok(from.drain(..count as usize).collect::<VecDeque<_>>())
    };

    let mut unions = 0;
    for &v in dag.topo_order() {
        let mut here = take(&mut pool, flow.value(network.source_edge(v)), v)?;
        for (&u, &e) in dag.in_neighbors(v).iter().zip(network.dag_in_edges(v)) {
            let count = flow.value(e);
            if count == 0 {
                continue;
            }
            let mut part = take(&mut sets[u], count, v)?;
            here.append(&mut part);
            unions += 1;
        }
        if let Some(&i) = here.front() {
            chains[i as usize - 1].push(v);
            unions += 1;
        }
        sets[v] = here;
    }
    stats.set_ops += unions;
    Ok(Extraction {
        chains: ChainDecomposition::new(chains),
        stats,
    })
}

/// The same walk over a [`TriePartition`] with `SIZE-SPLIT`,
/// `MERGE` and `SOME`.
///
/// Runs in `O((|V| + |E|) log k)` given the flow. The chosen index of each
/// vertex is the maximum of its set.
pub fn extract_mcd(
    dag: &Dag,
    network: &FlowNetwork,
    flow: &FlowAssignment,
) -> Result<Extraction, FlowError> {
    network.check_flow(flow, true)?;
    extract_with_tries(dag, network, flow)
}

/// Vertex-disjoint chains from any flow satisfying conservation (demands
/// not required), as obtained by deleting repeated vertices from a unit
/// path decomposition of the flow. Vertices without throughput belong to
/// no chain, and indices that never pick a vertex are dropped, so fewer
/// than `|f|` chains may be returned.
pub fn extract_chains_from_flow(
    dag: &Dag,
    network: &FlowNetwork,
    flow: &FlowAssignment,
) -> Result<Extraction, FlowError> {
    network.check_flow(flow, false)?;
    let mut extraction = extract_with_tries(dag, network, flow)?;
    extraction.chains.chains.retain(|c| !c.is_empty());
    Ok(extraction)
}

fn extract_with_tries(
    dag: &Dag,
    network: &FlowNetwork,
    flow: &FlowAssignment,
) -> Result<Extraction, FlowError> {
    let k = flow.size(network) as usize;
    if k == 0 {
        return Ok(Extraction {
            chains: ChainDecomposition::default(),
            stats: ExtractStats::default(),
        });
    }
    let (mut dict, full) =
        TriePartition::new(k).map_err(|_| FlowError::TooLarge { size: k as u64 })?;
    let mut pool = Some(full);
    let mut sets: Vec<Option<SetHandle>> = vec![None; dag.n()];
    let mut chains = vec![Vec::new(); k];

    let take = |dict: &mut TriePartition, from: &mut Option<SetHandle>, count: u64, vertex: usize| {
        let exhausted = |available| FlowError::Exhausted {
            vertex,
            requested: count,
            available,
        };
        let h = from.ok_or_else(|| exhausted(0))?;
        let (taken, rest) = dict
            .size_split(h, count as usize)
            .map_err(|_| exhausted(dict.len(h).unwrap_or(0) as u64))?;
        *from = rest;
        Ok(taken)
    };

    for &v in dag.topo_order() {
        let from_source = flow.value(network.source_edge(v));
        let mut here = None;
        if from_source > 0 {
            here = take(&mut dict, &mut pool, from_source, v)?;
        }
        for (&u, &e) in dag.in_neighbors(v).iter().zip(network.dag_in_edges(v)) {
            let count = flow.value(e);
            if count == 0 {
                continue;
            }
            let part = take(&mut dict, &mut sets[u], count, v)?;
            here = dict.merge(here, part).expect("live, distinct sets");
        }
        if let Some(h) = here {
            let i = dict.some(h).expect("live set");
            chains[i as usize - 1].push(v);
        }
        sets[v] = here;
    }

    let counters = dict.counters();
    Ok(Extraction {
        chains: ChainDecomposition::new(chains),
        stats: ExtractStats {
            set_ops: counters.operations,
            work: counters.nodes_visited,
            nodes_created: counters.nodes_created,
        },
    })
}

/// First defect found by [`validate_mcd`] or [`validate_path_cover`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("chain {chain} position {position}: vertex {vertex} out of range")]
    VertexOutOfRange {
        chain: usize,
        position: usize,
        vertex: usize,
    },
    #[error("vertex {0} appears more than once")]
    DuplicateVertex(usize),
    #[error("chain {chain}: vertex at position {position} does not reach its successor")]
    NotAChain { chain: usize, position: usize },
    #[error("path {chain}: no edge from position {position} to its successor")]
    NotAPath { chain: usize, position: usize },
    #[error("chain {0} is empty")]
    EmptyChain(usize),
    #[error("expected {expected} chains, found {found}")]
    WrongChainCount { expected: usize, found: usize },
    #[error("vertex {0} is not covered")]
    MissingVertex(usize),
}

/// Checks that `chains` is a chain decomposition of `dag` with exactly
/// `expected_k` nonempty chains: every vertex exactly once, and every
/// vertex reaching its successor in its chain.
pub fn validate_mcd(dag: &Dag, chains: &ChainDecomposition, expected_k: usize) -> Result<(), Violation> {
    let mut seen = vec![false; dag.n()];
    for (c, chain) in chains.chains.iter().enumerate() {
        for (position, &vertex) in chain.iter().enumerate() {
            if vertex >= dag.n() {
                return Err(Violation::VertexOutOfRange {
                    chain: c,
                    position,
                    vertex,
                });
            }
            if std::mem::replace(&mut seen[vertex], true) {
                return Err(Violation::DuplicateVertex(vertex));
            }
        }
    }
    for (c, chain) in chains.chains.iter().enumerate() {
        if let Some(position) = chain.windows(2).position(|w| !dag.reaches(w[0], w[1])) {
            return Err(Violation::NotAChain { chain: c, position });
        }
    }
    if let Some(c) = chains.chains.iter().position(Vec::is_empty) {
        return Err(Violation::EmptyChain(c));
    }
    if chains.k() != expected_k {
        return Err(Violation::WrongChainCount {
            expected: expected_k,
            found: chains.k(),
        });
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(Violation::MissingVertex(v));
    }
    Ok(())
}

/// Checks that `paths` use only DAG edges between consecutive vertices and
/// together cover every vertex at least once.
pub fn validate_path_cover(dag: &Dag, paths: &[Vec<usize>]) -> Result<(), Violation> {
    let mut seen = vec![false; dag.n()];
    for (c, path) in paths.iter().enumerate() {
        for (position, &vertex) in path.iter().enumerate() {
            if vertex >= dag.n() {
                return Err(Violation::VertexOutOfRange {
                    chain: c,
                    position,
                    vertex,
                });
            }
            seen[vertex] = true;
        }
        if let Some(position) = path.windows(2).position(|w| !dag.has_edge(w[0], w[1])) {
            return Err(Violation::NotAPath { chain: c, position });
        }
        if path.is_empty() {
            return Err(Violation::EmptyChain(c));
        }
    }
    match seen.iter().position(|&s| !s) {
        Some(v) => Err(Violation::MissingVertex(v)),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::gen_worst_case;
    use crate::flow::min_flow;

    fn solve(dag: &Dag) -> (FlowNetwork, FlowAssignment) {
        let net = FlowNetwork::build(dag);
        let f = min_flow(&net);
        (net, f)
    }

    fn path(n: usize) -> Dag {
        Dag::new(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    #[test]
    fn path_graph_is_one_chain() {
        let dag = path(3);
        let (net, f) = solve(&dag);
        for extract in [extract_mcd, extract_mcd_naive] {
            let out = extract(&dag, &net, &f).unwrap();
            assert_eq!(out.chains.chains, vec![vec![0, 1, 2]]);
        }
    }

    #[test]
    fn edgeless_graph_gives_singletons() {
        let dag = Dag::new(3, []).unwrap();
        let (net, f) = solve(&dag);
        for extract in [extract_mcd, extract_mcd_naive] {
            let mut chains = extract(&dag, &net, &f).unwrap().chains.chains;
            chains.sort();
            assert_eq!(chains, vec![vec![0], vec![1], vec![2]]);
        }
    }

    #[test]
    fn worst_case_small() {
        let dag = gen_worst_case(2, 2).unwrap();
        let (net, f) = solve(&dag);
        for extract in [extract_mcd, extract_mcd_naive] {
            let out = extract(&dag, &net, &f).unwrap();
            assert_eq!(out.chains.k(), 2);
            assert_eq!(out.chains.total_length(), 6);
            validate_mcd(&dag, &out.chains, 2).unwrap();
        }
    }

    #[test]
    fn worst_case_total_length_is_n() {
        let dag = gen_worst_case(10, 10).unwrap();
        let (net, f) = solve(&dag);
        let out = extract_mcd(&dag, &net, &f).unwrap();
        assert_eq!(out.chains.total_length(), 30);
        validate_mcd(&dag, &out.chains, 10).unwrap();
        // Exactly one chain carries the middle path.
        let middle: Vec<_> = (10..20).collect();
        assert_eq!(
            out.chains
                .chains
                .iter()
                .filter(|c| middle.iter().any(|m| c.contains(m)))
                .count(),
            1
        );
    }

    #[test]
    fn rejects_infeasible_flow() {
        let dag = path(2);
        let net = FlowNetwork::build(&dag);
        let zero = FlowAssignment::zero(&net);
        assert!(extract_mcd(&dag, &net, &zero).is_err());
        assert!(extract_mcd_naive(&dag, &net, &zero).is_err());
    }

    #[test]
    fn disjoint_chains_from_partial_flow() {
        let dag = Dag::new(2, []).unwrap();
        let net = FlowNetwork::build(&dag);
        let mut f = FlowAssignment::zero(&net);
        for e in [net.source_edge(0), net.split_edge(0), net.sink_edge(0)] {
            f.values[e] = 1;
        }
        let out = extract_chains_from_flow(&dag, &net, &f).unwrap();
        assert_eq!(out.chains.chains, vec![vec![0]]);
        assert!(extract_mcd(&dag, &net, &f).is_err());

        let empty = extract_chains_from_flow(&dag, &net, &FlowAssignment::zero(&net)).unwrap();
        assert_eq!(empty.chains.k(), 0);
    }

    #[test]
    fn specialization_matches_extract_mcd() {
        let dag = gen_worst_case(4, 3).unwrap();
        let (net, f) = solve(&dag);
        assert_eq!(
            extract_chains_from_flow(&dag, &net, &f).unwrap().chains,
            extract_mcd(&dag, &net, &f).unwrap().chains
        );
    }

    #[test]
    fn validate_reports_violations() {
        let dag = path(3);
        let ok = ChainDecomposition::new(vec![vec![0, 1, 2]]);
        validate_mcd(&dag, &ok, 1).unwrap();
        assert_eq!(
            validate_mcd(&dag, &ChainDecomposition::new(vec![vec![0, 1, 1, 2]]), 1),
            Err(Violation::DuplicateVertex(1))
        );
        assert_eq!(
            validate_mcd(&dag, &ChainDecomposition::new(vec![vec![1, 0, 2]]), 1),
            Err(Violation::NotAChain { chain: 0, position: 0 })
        );
        assert_eq!(
            validate_mcd(&dag, &ChainDecomposition::new(vec![vec![0, 1], vec![2]]), 1),
            Err(Violation::WrongChainCount { expected: 1, found: 2 })
        );
        assert_eq!(
            validate_mcd(&dag, &ChainDecomposition::new(vec![vec![0, 2]]), 1),
            Err(Violation::MissingVertex(1))
        );
        assert_eq!(
            validate_mcd(&dag, &ChainDecomposition::new(vec![vec![0, 1, 2], vec![]]), 2),
            Err(Violation::EmptyChain(1))
        );
        assert!(matches!(
            validate_mcd(&dag, &ChainDecomposition::new(vec![vec![0, 1, 7]]), 1),
            Err(Violation::VertexOutOfRange { vertex: 7, .. })
        ));

        let edgeless = Dag::new(2, []).unwrap();
        assert_eq!(
            validate_mcd(&edgeless, &ChainDecomposition::new(vec![vec![0, 1]]), 1),
            Err(Violation::NotAChain { chain: 0, position: 0 })
        );
    }

    #[test]
    fn validate_path_cover_checks_edges() {
        let dag = Dag::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        validate_path_cover(&dag, &[vec![0, 1, 2]]).unwrap();
        validate_path_cover(&dag, &[vec![0, 2], vec![1, 2]]).unwrap();
        let skip = Dag::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            validate_path_cover(&skip, &[vec![0, 2], vec![1]]),
            Err(Violation::NotAPath { chain: 0, position: 0 })
        );
        assert_eq!(validate_path_cover(&skip, &[vec![0, 1]]), Err(Violation::MissingVertex(2)));
    }
}
