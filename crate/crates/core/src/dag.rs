//! Directed acyclic graphs over the vertex set `0..n`.
//!
//! A [`Dag`] is immutable once built. Construction deduplicates parallel
//! edges, rejects self-loops and out-of-range ids, and computes a
//! topological order, so every `Dag` value in the crate is known to be
//! acyclic.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Errors raised while building, parsing or generating a [`Dag`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DagError {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("graph contains a cycle")]
    CycleDetected,
    #[error("invalid argument: {0}")]
    Argument(String),
}

/// A DAG with cached adjacency lists and topological order.
#[derive(Clone, PartialEq, Eq)]
pub struct Dag {
    n: usize,
    edges: Vec<(usize, usize)>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    topo: Vec<usize>,
    position: Vec<usize>,
}

impl std::fmt::Debug for Dag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Dag")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Dag {
    /// Builds a DAG on `n` vertices. Edges are sorted and deduplicated; the
    /// neighbor lists are therefore in ascending vertex order.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, DagError> {
        let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
        for &(u, v) in &edges {
            for x in [u, v] {
                if x >= n {
                    return Err(DagError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(DagError::SelfLoop(u));
            }
        }
        edges.sort_unstable();
        edges.dedup();

        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        let topo = topological_sort(n, &out_adj)?;
        let mut position = vec![0; n];
        for (i, &v) in topo.iter().enumerate() {
            position[v] = i;
        }
        Ok(Self {
            n,
            edges,
            out_adj,
            in_adj,
            topo,
            position,
        })
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of (deduplicated) edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Out-neighbors of `v`, ascending.
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    /// In-neighbors of `v`, ascending.
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn topo_order(&self) -> &[usize] {
        &self.topo
    }

    /// Index of `v` in [`Dag::topo_order`].
    pub fn topo_position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    /// Whether a (possibly empty) path `u ⇝ v` exists.
    ///
    /// Forward search restricted to vertices whose topological position
    /// does not exceed that of `v`.
    pub fn reaches(&self, u: usize, v: usize) -> bool {
        if u == v || self.has_edge(u, v) {
            return true;
        }
        let limit = self.position[v];
        if self.position[u] > limit {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![u];
        seen[u] = true;
        while let Some(x) = stack.pop() {
            for &y in &self.out_adj[x] {
                if y == v {
                    return true;
                }
                if !seen[y] && self.position[y] < limit {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }
}

/// Kahn's algorithm over `out_adj`. Ties are broken by ascending vertex id,
/// so an edgeless graph yields the identity permutation.
pub fn topological_sort(n: usize, out_adj: &[Vec<usize>]) -> Result<Vec<usize>, DagError> {
    let mut indegree = vec![0usize; n];
    for targets in out_adj {
        for &v in targets {
            indegree[v] += 1;
        }
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &v in &out_adj[u] {
            indegree[v] -= 1;
            if indegree[v] == 0 {
                queue.push_back(v);
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err(DagError::CycleDetected)
    }
}

/// Parses the edge-list format: a header line `n m` followed by `m` lines
/// `u v`. Blank lines are ignored.
pub fn parse_dag(text: &str) -> Result<Dag, DagError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(DagError::Parse {
        line: 1,
        message: "missing header \"n m\"".into(),
    })?;
    let [n, m] = parse_pair(header_line, header)?;

    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        let [u, v] = parse_pair(line, text)?;
        for x in [u, v] {
            if x >= n {
                return Err(DagError::Parse {
                    line,
                    message: format!("vertex {x} out of range for n = {n}"),
                });
            }
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(DagError::Parse {
            line: 1,
            message: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    Dag::new(n, edges)
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2], DagError> {
    let err = |message: String| DagError::Parse { line, message };
    let mut fields = text.split_whitespace();
    let mut out = [0usize; 2];
    for slot in &mut out {
        let field = fields.next().ok_or_else(|| err("expected two integers".into()))?;
        *slot = field
            .parse()
            .map_err(|_| err(format!("invalid non-negative integer {field:?}")))?;
    }
    if fields.next().is_some() {
        return Err(err("trailing fields".into()));
    }
    Ok(out)
}

/// Canonical edge-list text: header then edges in lexicographic order.
pub fn serialize_dag(dag: &Dag) -> String {
    let mut out = String::with_capacity(16 + dag.m() * 12);
    let _ = writeln!(out, "{} {}", dag.n(), dag.m());
    for &(u, v) in dag.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Vertex ids in [`gen_worst_case`]: sources `0..k`, middle path
/// `k..k+l`, sinks `k+l..2k+l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorstCaseLayout {
    pub k: usize,
    pub l: usize,
}

impl WorstCaseLayout {
    pub fn source(&self, i: usize) -> usize {
        i
    }
    pub fn middle(&self, j: usize) -> usize {
        self.k + j
    }
    pub fn sink(&self, i: usize) -> usize {
        self.k + self.l + i
    }
    pub fn n(&self) -> usize {
        2 * self.k + self.l
    }
}

/// The family where `k` sources all funnel into one middle path of length
/// `l` that fans out into `k` sinks. Every minimum path cover has total
/// length at least `k * l`, while a chain decomposition has total length
/// `2k + l`.
pub fn gen_worst_case(k: usize, l: usize) -> Result<Dag, DagError> {
    if k == 0 || l == 0 {
        return Err(DagError::Argument(format!(
            "worst-case family needs k >= 1 and l >= 1 (got k = {k}, l = {l})"
        )));
    }
    let layout = WorstCaseLayout { k, l };
    let mut edges = Vec::with_capacity(2 * k + l - 1);
    edges.extend((0..k).map(|i| (layout.source(i), layout.middle(0))));
    edges.extend((0..l - 1).map(|j| (layout.middle(j), layout.middle(j + 1))));
    edges.extend((0..k).map(|i| (layout.middle(l - 1), layout.sink(i))));
    Dag::new(layout.n(), edges)
}

/// Random DAG: a seeded random permutation fixes the order and each
/// forward pair is kept independently with probability `edge_prob`.
pub fn gen_random_dag(n: usize, edge_prob: f64, seed: u64) -> Result<Dag, DagError> {
    if n == 0 {
        return Err(DagError::Argument("random DAG needs n >= 1".into()));
    }
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(DagError::Argument(format!(
            "edge probability {edge_prob} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(edge_prob) {
                edges.push((order[i], order[j]));
            }
        }
    }
    Dag::new(n, edges)
}

/// `k` vertex lists, each a chain of the source DAG.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChainDecomposition {
    pub chains: Vec<Vec<usize>>,
}

impl ChainDecomposition {
    pub fn new(chains: Vec<Vec<usize>>) -> Self {
        Self { chains }
    }

    /// Number of chains.
    pub fn k(&self) -> usize {
        self.chains.len()
    }

    pub fn total_length(&self) -> usize {
        self.chains.iter().map(Vec::len).sum()
    }
}

/// One line per chain, vertex ids separated by single spaces.
pub fn format_chains(chains: &[Vec<usize>]) -> String {
    let mut out = String::new();
    for chain in chains {
        let mut first = true;
        for v in chain {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{v}");
        }
        out.push('\n');
    }
    out
}

/// Inverse of [`format_chains`]. A trailing newline does not start a new
/// chain; any other empty line is an empty chain.
pub fn parse_chains(text: &str) -> Result<ChainDecomposition, DagError> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    if body.is_empty() {
        return Ok(ChainDecomposition::default());
    }
    let mut chains = Vec::new();
    for (i, line) in body.split('\n').enumerate() {
        let chain = line
            .split_whitespace()
            .map(|f| {
                f.parse::<usize>().map_err(|_| DagError::Parse {
                    line: i + 1,
                    message: format!("invalid vertex id {f:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        chains.push(chain);
    }
    Ok(ChainDecomposition::new(chains))
}
