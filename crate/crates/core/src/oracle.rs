//! Slow, independent ground truth.
//!
//! Nothing here shares code paths with the flow pipeline or the tries:
//! width comes from Dilworth's theorem via bipartite matching on the
//! transitive closure (or brute-force antichain search on tiny graphs), and
//! partition scripts are mirrored on plain sorted vectors.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dag::Dag;
use crate::mergeable_dict::{DictError, Element, Op, OpResult, ReplayOutcome};

pub const CLOSURE_LIMIT: usize = 2000;
pub const ENUMERATION_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("oracle limited to n <= {limit}, got n = {n}")]
pub struct SizeLimit {
    pub n: usize,
    pub limit: usize,
}

/// Reflexive reachability matrix, one bitset row per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl ClosureMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn reaches(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }
}

/// Row of `v` = `{v}` ∪ rows of its out-neighbors, filled in reverse
/// topological order.
pub fn transitive_closure(dag: &Dag) -> Result<ClosureMatrix, SizeLimit> {
    let n = dag.n();
    if n > CLOSURE_LIMIT {
        return Err(SizeLimit { n, limit: CLOSURE_LIMIT });
    }
    let words = n.div_ceil(64).max(1);
    let mut bits = vec![0u64; n * words];
    for &v in dag.topo_order().iter().rev() {
        let mut row = vec![0u64; words];
        row[v / 64] |= 1 << (v % 64);
        for &w in dag.out_neighbors(v) {
            for (a, b) in row.iter_mut().zip(&bits[w * words..(w + 1) * words]) {
                *a |= b;
            }
        }
        bits[v * words..(v + 1) * words].copy_from_slice(&row);
    }
    Ok(ClosureMatrix { n, words, bits })
}

/// Width as `n − |maximum matching|` in the bipartite graph with an edge
/// `(u_L, v_R)` whenever `u ≠ v` and `u` reaches `v`.
pub fn width_by_matching(dag: &Dag) -> Result<usize, SizeLimit> {
    let closure = transitive_closure(dag)?;
    let n = dag.n();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|u| (0..n).filter(|&v| v != u && closure.reaches(u, v)).collect())
        .collect();
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    let mut matched = 0;
    for u in 0..n {
        let mut visited = vec![false; n];
        if augment(u, &succ, &mut match_right, &mut visited) {
            matched += 1;
        }
    }
    Ok(n - matched)
}

// Kuhn's augmenting path search.
fn augment(u: usize, succ: &[Vec<usize>], match_right: &mut [Option<usize>], visited: &mut [bool]) -> bool {
    for &v in &succ[u] {
        if visited[v] {
            continue;
        }
        visited[v] = true;
        if match_right[v].is_none_or(|w| augment(w, succ, match_right, visited)) {
            match_right[v] = Some(u);
            return true;
        }
    }
    false
}

/// Largest antichain by exhaustive branch-and-bound over vertex subsets.
pub fn width_by_enumeration(dag: &Dag) -> Result<usize, SizeLimit> {
    let n = dag.n();
    if n > ENUMERATION_LIMIT {
        return Err(SizeLimit { n, limit: ENUMERATION_LIMIT });
    }
    let closure = transitive_closure(dag)?;
    let comparable: Vec<u32> = (0..n)
        .map(|u| {
            (0..n)
                .filter(|&v| v != u && (closure.reaches(u, v) || closure.reaches(v, u)))
                .fold(0u32, |mask, v| mask | 1 << v)
        })
        .collect();
    let mut best = 0;
    for subset in 1u32..(1u32 << n) {
        let size = subset.count_ones() as usize;
        if size <= best {
            continue;
        }
        let antichain = (0..n)
            .filter(|&v| subset >> v & 1 == 1)
            .all(|v| comparable[v] & subset == 0);
        if antichain {
            best = size;
        }
    }
    Ok(best)
}

/// Chain-by-chain reachability check using the closure rather than the
/// DAG's own search.
pub fn is_chain(closure: &ClosureMatrix, chain: &[usize]) -> bool {
    chain.windows(2).all(|w| w[0] != w[1] && closure.reaches(w[0], w[1]))
}

/// Vertices reachable from `u`, as an ascending list.
pub fn reachable_from(closure: &ClosureMatrix, u: usize) -> Vec<usize> {
    let row = closure.row(u);
    (0..closure.n).filter(|&v| row[v / 64] >> (v % 64) & 1 == 1).collect()
}

/// Sorted-vector mirror of a [`crate::mergeable_dict::TriePartition`].
#[derive(Debug, Clone)]
pub struct NaivePartition {
    k: Element,
    sets: Vec<Vec<Element>>,
}

impl NaivePartition {
    pub fn new(k: usize) -> Result<Self, DictError> {
        if k == 0 {
            return Err(DictError::EmptyUniverse);
        }
        Ok(Self {
            k: k as Element,
            sets: vec![(1..=k as Element).collect()],
        })
    }

    pub fn sets(&self) -> &[Vec<Element>] {
        &self.sets
    }

    fn check_element(&self, j: Element) -> Result<(), DictError> {
        if j == 0 || j > self.k {
            Err(DictError::ElementOutOfRange { element: j, k: self.k })
        } else {
            Ok(())
        }
    }

    fn split_at(&mut self, set: usize, at: usize) -> OpResult {
        let mut low = self.sets.swap_remove(set);
        let high = low.split_off(at);
        let sizes = (low.len(), high.len());
        self.sets.extend([low, high].into_iter().filter(|s| !s.is_empty()));
        OpResult::Split(sizes.0, sizes.1)
    }

    /// Applies one script step with the live-list semantics of
    /// [`crate::mergeable_dict::replay`].
    pub fn apply(&mut self, op: Op) -> OpResult {
        let result = match op {
            Op::Search { set, j } => self
                .check_element(j)
                .map(|_| OpResult::Element(self.sets[set].iter().rev().find(|&&x| x <= j).copied())),
            Op::Some { set } => Ok(OpResult::Element(self.sets[set].last().copied())),
            Op::Select { set, rank } => {
                let len = self.sets[set].len();
                if rank == 0 || rank > len {
                    Err(DictError::RankOutOfRange { rank, len })
                } else {
                    Ok(OpResult::Element(Some(self.sets[set][rank - 1])))
                }
            }
            Op::Split { set, j } => self.check_element(j).map(|_| {
                let at = self.sets[set].iter().take_while(|&&x| x <= j).count();
                self.split_at(set, at)
            }),
            Op::SizeSplit { set, size } => {
                let len = self.sets[set].len();
                if size > len {
                    Err(DictError::SizeOutOfRange { size, len })
                } else {
                    Ok(self.split_at(set, size))
                }
            }
            Op::Merge { a, b } => {
                if a == b {
                    Ok(OpResult::SameSet)
                } else {
                    let x = self.sets.swap_remove(a.max(b));
                    let y = self.sets.swap_remove(a.min(b));
                    let mut merged = Vec::with_capacity(x.len() + y.len());
                    let (mut i, mut j) = (0, 0);
                    while i < x.len() || j < y.len() {
                        if j == y.len() || (i < x.len() && x[i] < y[j]) {
                            merged.push(x[i]);
                            i += 1;
                        } else {
                            merged.push(y[j]);
                            j += 1;
                        }
                    }
                    let len = merged.len();
                    self.sets.push(merged);
                    Ok(OpResult::Merged(len))
                }
            }
        };
        result.unwrap_or_else(OpResult::Error)
    }
}

/// Runs a script on [`NaivePartition`].
pub fn naive_partition_oracle(k: usize, ops: &[Op]) -> Result<ReplayOutcome, DictError> {
    let mut partition = NaivePartition::new(k)?;
    let results = ops.iter().map(|&op| partition.apply(op)).collect();
    Ok(ReplayOutcome {
        results,
        sets: partition.sets,
    })
}

/// A valid-by-construction random script over `{1, …, k}`, with a small
/// share of deliberately invalid steps that must fail identically in both
/// implementations.
pub fn random_script(k: usize, len: usize, seed: u64) -> Vec<Op> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mirror = NaivePartition::new(k).expect("k >= 1");
    let k_el = k as Element;
    let mut ops = Vec::with_capacity(len);
    while ops.len() < len {
        let live = mirror.sets.len();
        let set = rng.random_range(0..live);
        let size = mirror.sets[set].len();
        let op = match rng.random_range(0..100u32) {
            0..=14 => Op::Search { set, j: rng.random_range(1..=k_el) },
            15..=24 => Op::Some { set },
            25..=39 => Op::Select { set, rank: rng.random_range(1..=size) },
            40..=54 => Op::Split { set, j: rng.random_range(1..=k_el) },
            55..=69 => Op::SizeSplit { set, size: rng.random_range(0..=size) },
            70..=96 if live > 1 => {
                let mut b = rng.random_range(0..live - 1);
                if b >= set {
                    b += 1;
                }
                Op::Merge { a: set, b }
            }
            70..=96 => continue,
            _ => match rng.random_range(0..4u32) {
                0 => Op::Select { set, rank: size + 1 },
                1 => Op::SizeSplit { set, size: size + 1 },
                2 => Op::Search { set, j: k_el + 1 },
                _ => Op::Merge { a: set, b: set },
            },
        };
        mirror.apply(op);
        ops.push(op);
    }
    ops
}
