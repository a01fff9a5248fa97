//! Flow reduction of a DAG, minimum flow, and path decomposition.
//!
//! The reduction splits every vertex `v` into `v_in → v_out` (demand 1),
//! adds a source `S → v_in` and `v_out → T` for every vertex, and maps each
//! DAG edge `(u, v)` to `u_out → v_in`. A minimum feasible flow of this
//! network has value equal to the width of the DAG, and any of its unit
//! path decompositions is a minimum path cover.

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

use crate::dag::Dag;

/// Node id of the global source.
pub const SOURCE: usize = 0;
/// Node id of the global sink.
pub const SINK: usize = 1;

/// Node id of `v_in`.
pub fn node_in(v: usize) -> usize {
    2 + 2 * v
}

/// Node id of `v_out`.
pub fn node_out(v: usize) -> usize {
    3 + 2 * v
}

/// A flow (or candidate flow) violates conservation or demands.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("flow has {found} values for {expected} edges")]
    WrongLength { expected: usize, found: usize },
    #[error("conservation violated at node {node}: inflow {inflow}, outflow {outflow}")]
    Conservation {
        node: String,
        inflow: u64,
        outflow: u64,
    },
    #[error("edge {tail} -> {head} carries {flow} below its demand {demand}")]
    Demand {
        tail: String,
        head: String,
        flow: u64,
        demand: u32,
    },
    #[error("{tail} -> {head} is not an edge of the DAG")]
    NotAnEdge { tail: usize, head: usize },
    #[error("flow of size {size} is too large to index")]
    TooLarge { size: u64 },
    #[error("vertex {vertex}: {requested} indices requested from a set of {available}")]
    Exhausted {
        vertex: usize,
        requested: u64,
        available: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowEdge {
    pub tail: usize,
    pub head: usize,
    pub demand: u32,
}

/// The reduction network of a DAG.
///
/// Edge ids are laid out as `S`-edges `0..n`, split edges `n..2n`,
/// `T`-edges `2n..3n`, then one edge per DAG edge in the DAG's
/// lexicographic edge order.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    n: usize,
    edges: Vec<FlowEdge>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

impl FlowNetwork {
    /// Builds the reduction of `dag` in `O(n + m)`.
    pub fn build(dag: &Dag) -> Self {
        let n = dag.n();
        let mut edges = Vec::with_capacity(3 * n + dag.m());
        edges.extend((0..n).map(|v| FlowEdge {
            tail: SOURCE,
            head: node_in(v),
            demand: 0,
        }));
        edges.extend((0..n).map(|v| FlowEdge {
            tail: node_in(v),
            head: node_out(v),
            demand: 1,
        }));
        edges.extend((0..n).map(|v| FlowEdge {
            tail: node_out(v),
            head: SINK,
            demand: 0,
        }));
        edges.extend(dag.edges().iter().map(|&(u, v)| FlowEdge {
            tail: node_out(u),
            head: node_in(v),
            demand: 0,
        }));

        let nodes = 2 * n + 2;
        let mut out_edges = vec![Vec::new(); nodes];
        let mut in_edges = vec![Vec::new(); nodes];
        for (id, e) in edges.iter().enumerate() {
            out_edges[e.tail].push(id);
            in_edges[e.head].push(id);
        }
        Self {
            n,
            edges,
            out_edges,
            in_edges,
        }
    }

    /// Number of vertices of the underlying DAG.
    pub fn dag_vertices(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        2 * self.n + 2
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[FlowEdge] {
        &self.edges
    }

    pub fn source_edge(&self, v: usize) -> usize {
        v
    }

    pub fn split_edge(&self, v: usize) -> usize {
        self.n + v
    }

    pub fn sink_edge(&self, v: usize) -> usize {
        2 * self.n + v
    }

    /// Id of the reduction edge for the `i`-th DAG edge in lexicographic order.
    pub fn dag_edge(&self, i: usize) -> usize {
        3 * self.n + i
    }

    /// Edges entering `v_in` from other vertices' `out` copies, ascending
    /// by tail vertex.
    pub fn dag_in_edges(&self, v: usize) -> &[usize] {
        // The first entry is always the S-edge.
        &self.in_edges[node_in(v)][1..]
    }

    /// Outgoing edge ids of a node, ascending.
    pub fn out_edges(&self, node: usize) -> &[usize] {
        &self.out_edges[node]
    }

    /// Incoming edge ids of a node, ascending.
    pub fn in_edges(&self, node: usize) -> &[usize] {
        &self.in_edges[node]
    }

    /// DAG vertex a node belongs to, if any.
    pub fn vertex_of(&self, node: usize) -> Option<usize> {
        (node >= 2).then(|| (node - 2) / 2)
    }

    /// `s`, `t`, `{v}i` or `{v}o`.
    pub fn node_label(&self, node: usize) -> String {
        match node {
            SOURCE => "s".into(),
            SINK => "t".into(),
            x if x % 2 == 0 => format!("{}i", (x - 2) / 2),
            x => format!("{}o", (x - 3) / 2),
        }
    }

    /// Checks conservation at every internal node and, if asked, every demand.
    pub fn check_flow(&self, flow: &FlowAssignment, require_demands: bool) -> Result<(), FlowError> {
        if flow.values.len() != self.edges.len() {
            return Err(FlowError::WrongLength {
                expected: self.edges.len(),
                found: flow.values.len(),
            });
        }
        if require_demands {
            for (id, e) in self.edges.iter().enumerate() {
                if flow.values[id] < e.demand as u64 {
                    return Err(FlowError::Demand {
                        tail: self.node_label(e.tail),
                        head: self.node_label(e.head),
                        flow: flow.values[id],
                        demand: e.demand,
                    });
                }
            }
        }
        for node in 2..self.node_count() {
            let inflow: u64 = self.in_edges[node].iter().map(|&e| flow.values[e]).sum();
            let outflow: u64 = self.out_edges[node].iter().map(|&e| flow.values[e]).sum();
            if inflow != outflow {
                return Err(FlowError::Conservation {
                    node: self.node_label(node),
                    inflow,
                    outflow,
                });
            }
        }
        Ok(())
    }

    /// One line per edge, `tail head demand flow`, in edge-id order.
    pub fn dump(&self, flow: &FlowAssignment) -> String {
        let mut out = String::new();
        for (e, &value) in self.edges.iter().zip(&flow.values) {
            let _ = writeln!(
                out,
                "{} {} {} {}",
                self.node_label(e.tail),
                self.node_label(e.head),
                e.demand,
                value
            );
        }
        out
    }
}

/// Integral flow value per reduction edge, indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowAssignment {
    pub values: Vec<u64>,
}

impl FlowAssignment {
    pub fn zero(network: &FlowNetwork) -> Self {
        Self {
            values: vec![0; network.edge_count()],
        }
    }

    /// The feasible flow sending one unit `S → v_in → v_out → T` per vertex.
    pub fn unit_per_vertex(network: &FlowNetwork) -> Self {
        let n = network.dag_vertices();
        let mut values = vec![0; network.edge_count()];
        values[..3 * n].fill(1);
        Self { values }
    }

    /// `|f|`: total flow into `T`.
    pub fn size(&self, network: &FlowNetwork) -> u64 {
        network.in_edges(SINK).iter().map(|&e| self.values[e]).sum()
    }

    pub fn value(&self, edge: usize) -> u64 {
        self.values[edge]
    }
}

/// Encodes DAG paths as a flow: one unit per path from `S` through each
/// of its vertices to `T`. Empty paths are ignored.
pub fn flow_from_paths(dag: &Dag, network: &FlowNetwork, paths: &[Vec<usize>]) -> Result<FlowAssignment, FlowError> {
    let mut flow = FlowAssignment::zero(network);
    for path in paths {
        let (Some(&first), Some(&last)) = (path.first(), path.last()) else {
            continue;
        };
        flow.values[network.source_edge(first)] += 1;
        flow.values[network.sink_edge(last)] += 1;
        for &v in path {
            if v >= dag.n() {
                return Err(FlowError::NotAnEdge { tail: v, head: v });
            }
            flow.values[network.split_edge(v)] += 1;
        }
        for w in path.windows(2) {
            let i = dag
                .edges()
                .binary_search(&(w[0], w[1]))
                .map_err(|_| FlowError::NotAnEdge { tail: w[0], head: w[1] })?;
            flow.values[network.dag_edge(i)] += 1;
        }
    }
    Ok(flow)
}

/// Dinic's blocking-flow maximum flow over integer capacities.
///
/// Arcs are stored in pairs: arc `2i` is the `i`-th added edge and `2i + 1`
/// its residual reverse.
#[derive(Debug, Clone)]
pub struct MaxFlow {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u64>,
    original: Vec<u64>,
}

impl MaxFlow {
    pub fn new(nodes: usize) -> Self {
        Self {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
            original: Vec::new(),
        }
    }

    /// Adds `u → v` with capacity `capacity`; returns its edge id.
    pub fn add_edge(&mut self, u: usize, v: usize, capacity: u64) -> usize {
        let id = self.to.len();
        self.adj[u].push(id);
        self.to.push(v);
        self.cap.push(capacity);
        self.adj[v].push(id + 1);
        self.to.push(u);
        self.cap.push(0);
        self.original.push(capacity);
        id / 2
    }

    /// Flow currently routed on an edge returned by [`MaxFlow::add_edge`].
    pub fn flow(&self, edge: usize) -> u64 {
        self.original[edge] - self.cap[2 * edge]
    }

    /// Pushes a maximum flow from `s` to `t` and returns its value.
    pub fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        if s == t {
            return 0;
        }
        let nodes = self.adj.len();
        let mut total = 0;
        let mut level = vec![u32::MAX; nodes];
        let mut cursor = vec![0usize; nodes];
        let mut queue = VecDeque::new();
        let mut path: Vec<usize> = Vec::new();
        loop {
            level.fill(u32::MAX);
            level[s] = 0;
            queue.clear();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &a in &self.adj[u] {
                    let v = self.to[a];
                    if self.cap[a] > 0 && level[v] == u32::MAX {
                        level[v] = level[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            if level[t] == u32::MAX {
                return total;
            }
            cursor.fill(0);

            // Iterative DFS over the level graph; `path` holds arc ids.
            path.clear();
            let mut u = s;
            loop {
                if u == t {
                    let push = path.iter().map(|&a| self.cap[a]).min().unwrap_or(0);
                    let mut cut = path.len();
                    for (i, &a) in path.iter().enumerate() {
                        self.cap[a] -= push;
                        self.cap[a ^ 1] += push;
                        if self.cap[a] == 0 && cut == path.len() {
                            cut = i;
                        }
                    }
                    total += push;
                    path.truncate(cut);
                    u = path.last().map_or(s, |&a| self.to[a]);
                    continue;
                }
                let mut advanced = false;
                while cursor[u] < self.adj[u].len() {
                    let a = self.adj[u][cursor[u]];
                    let v = self.to[a];
                    if self.cap[a] > 0 && level[v] == level[u] + 1 {
                        path.push(a);
                        u = v;
                        advanced = true;
                        break;
                    }
                    cursor[u] += 1;
                }
                if advanced {
                    continue;
                }
                // Dead end: drop u from the level graph and retreat.
                level[u] = u32::MAX;
                match path.pop() {
                    Some(a) => {
                        u = self.to[a ^ 1];
                        cursor[u] += 1;
                    }
                    None => break,
                }
            }
        }
    }
}

/// A minimum feasible flow of the reduction.
///
/// Starts from [`FlowAssignment::unit_per_vertex`] and cancels a maximum
/// `T → S` flow in its residual network, where each reduction edge may
/// lose `f₀(e) − d(e)` units and gain up to `n`.
pub fn min_flow(network: &FlowNetwork) -> FlowAssignment {
    let n = network.dag_vertices() as u64;
    let base = FlowAssignment::unit_per_vertex(network);
    let mut solver = MaxFlow::new(network.node_count());
    let arcs: Vec<(usize, Option<usize>)> = network
        .edges()
        .iter()
        .zip(&base.values)
        .map(|(e, &f0)| {
            let grow = solver.add_edge(e.tail, e.head, n);
            let slack = f0 - e.demand as u64;
            let shrink = (slack > 0).then(|| solver.add_edge(e.head, e.tail, slack));
            (grow, shrink)
        })
        .collect();
    solver.max_flow(SINK, SOURCE);
    let values = arcs
        .iter()
        .zip(&base.values)
        .map(|(&(grow, shrink), &f0)| f0 + solver.flow(grow) - shrink.map_or(0, |a| solver.flow(a)))
        .collect();
    FlowAssignment { values }
}

/// Unit paths of a flow, trimmed to DAG vertex sequences.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathCover {
    pub paths: Vec<Vec<usize>>,
}

impl PathCover {
    pub fn total_length(&self) -> usize {
        self.paths.iter().map(Vec::len).sum()
    }
}

/// Decomposes a flow satisfying the demands into `|f|` unit `S → T` paths.
///
/// Each path always follows the lowest-numbered out-edge with remaining
/// flow. Per-node cursors never revisit exhausted edges, so the running
/// time is linear in the total length of the output.
pub fn decompose_to_mpc(network: &FlowNetwork, flow: &FlowAssignment) -> Result<PathCover, FlowError> {
    network.check_flow(flow, true)?;
    Ok(decompose_unchecked(network, flow))
}

/// [`decompose_to_mpc`] without the demand requirement: any flow
/// satisfying conservation.
pub fn decompose_paths(network: &FlowNetwork, flow: &FlowAssignment) -> Result<PathCover, FlowError> {
    network.check_flow(flow, false)?;
    Ok(decompose_unchecked(network, flow))
}

fn decompose_unchecked(network: &FlowNetwork, flow: &FlowAssignment) -> PathCover {
    let mut remaining = flow.values.clone();
    let mut cursor = vec![0usize; network.node_count()];
    let count = flow.size(network);
    let n = network.dag_vertices();
    let mut paths = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let mut path = Vec::new();
        let mut x = SOURCE;
        while x != SINK {
            let out = network.out_edges(x);
            while remaining[out[cursor[x]]] == 0 {
                cursor[x] += 1;
            }
            let e = out[cursor[x]];
            remaining[e] -= 1;
            if (n..2 * n).contains(&e) {
                path.push(e - n);
            }
            x = network.edges()[e].head;
        }
        paths.push(path);
    }
    PathCover { paths }
}
