//! Mergeable dictionaries over `{1, …, k}` with order-statistic queries.
//!
//! A [`TriePartition`] maintains a dynamic partition of the universe
//! `{1, …, k}`. Each set is a binary trie whose root-to-leaf paths spell the
//! `depth`-bit big-endian representation of its elements, where
//! `depth = ⌊log₂ k⌋ + 1`. Every node stores the number of leaves below it,
//! which turns rank selection into a single descent.
//!
//! Supported operations and their costs, measured in trie nodes:
//!
//! | operation    | worst case       | structural change                      |
//! |--------------|------------------|----------------------------------------|
//! | `search`     | `O(depth)`       | none                                   |
//! | `some`       | `O(depth)`       | none (returns the maximum)             |
//! | `select`     | `O(depth)`       | none                                   |
//! | `split`      | `O(depth)`       | at most `depth` new nodes              |
//! | `size_split` | `O(depth)`       | `select` followed by `split`           |
//! | `merge`      | overlap of tries | frees one node per overlapping pair    |
//!
//! With the potential taken as the number of live trie nodes, every
//! operation costs `O(log k)` amortized. [`OpCounters`] records the tallies
//! needed to check that bound empirically.
//!
//! Empty sets never own a trie: operations that can produce an empty side
//! return `None` in its place.

use std::cell::Cell;
use std::fmt::{self, Write as _};

use thiserror::Error;

/// An element of the universe `{1, …, k}`.
pub type Element = u32;

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DictError {
    #[error("universe size must be at least 1")]
    EmptyUniverse,
    #[error("universe size {0} exceeds the supported maximum")]
    UniverseTooLarge(u64),
    #[error("stale or foreign set handle {0}")]
    StaleHandle(SetHandle),
    #[error("cannot merge set {0} with itself")]
    SameHandle(SetHandle),
    #[error("element {element} outside 1..={k}")]
    ElementOutOfRange { element: Element, k: Element },
    #[error("rank {rank} outside 1..={len}")]
    RankOutOfRange { rank: usize, len: usize },
    #[error("split size {size} exceeds set size {len}")]
    SizeOutOfRange { size: usize, len: usize },
}

/// Names one live set of a [`TriePartition`].
///
/// A handle is consumed by `split`, `size_split` and `merge`; using it
/// afterwards yields [`DictError::StaleHandle`]. When one side of a split,
/// or one operand of a merge, is empty, the surviving set keeps its handle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetHandle {
    slot: u32,
    generation: u32,
}

impl fmt::Display for SetHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.slot)
    }
}

/// Work tallies of a [`TriePartition`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounters {
    pub nodes_created: u64,
    pub nodes_freed: u64,
    pub nodes_visited: u64,
    /// Public operations issued, including degenerate ones.
    pub operations: u64,
}

impl OpCounters {
    /// Number of live trie nodes.
    pub fn potential(&self) -> u64 {
        self.nodes_created - self.nodes_freed
    }
}

#[derive(Debug, Clone, Copy)]
struct Node {
    child: [u32; 2],
    leaves: u32,
}

#[derive(Debug, Clone, Copy)]
struct Slot {
    root: u32,
    generation: u32,
}

/// A partition of `{1, …, k}` stored as a forest of fixed-depth tries.
#[derive(Debug, Clone)]
pub struct TriePartition {
    k: Element,
    depth: u32,
    nodes: Vec<Node>,
    free_nodes: Vec<u32>,
    slots: Vec<Slot>,
    free_slots: Vec<u32>,
    created: u64,
    freed: u64,
    visited: Cell<u64>,
    operations: Cell<u64>,
}

impl TriePartition {
    /// Creates the partition `{{1, …, k}}` and returns the handle of its
    /// only set.
    pub fn new(k: usize) -> Result<(Self, SetHandle), DictError> {
        if k == 0 {
            return Err(DictError::EmptyUniverse);
        }
        // Node ids and leaf counts are u32, with u32::MAX reserved.
        if k >= (u32::MAX / 4) as usize {
            return Err(DictError::UniverseTooLarge(k as u64));
        }
        let k = k as Element;
        let depth = Element::BITS - k.leading_zeros();
        let mut partition = Self {
            k,
            depth,
            nodes: Vec::with_capacity(2 * k as usize + depth as usize),
            free_nodes: Vec::new(),
            slots: Vec::new(),
            free_slots: Vec::new(),
            created: 0,
            freed: 0,
            visited: Cell::new(0),
            operations: Cell::new(0),
        };
        let root = partition.build_full(0, 0);
        let handle = partition.issue(root);
        Ok((partition, handle))
    }

    /// Universe size.
    pub fn k(&self) -> usize {
        self.k as usize
    }

    /// Length of every root-to-leaf path.
    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn counters(&self) -> OpCounters {
        OpCounters {
            nodes_created: self.created,
            nodes_freed: self.freed,
            nodes_visited: self.visited.get(),
            operations: self.operations.get(),
        }
    }

    /// Cardinality of a set.
    pub fn len(&self, h: SetHandle) -> Result<usize, DictError> {
        let root = self.root(h)?;
        Ok(self.nodes[root as usize].leaves as usize)
    }

    pub fn is_live(&self, h: SetHandle) -> bool {
        self.root(h).is_ok()
    }

    /// `max { i ∈ K : i ≤ j }`, or `None` if every element exceeds `j`.
    pub fn search(&self, h: SetHandle, j: Element) -> Result<Option<Element>, DictError> {
        let root = self.root(h)?;
        self.check_element(j)?;
        self.tick();
        Ok(self.predecessor(root, j))
    }

    /// Some element of the set; pinned to its maximum, `search(h, k)`.
    pub fn some(&self, h: SetHandle) -> Result<Element, DictError> {
        let root = self.root(h)?;
        self.tick();
        Ok(self
            .predecessor(root, self.k)
            .expect("live sets are nonempty"))
    }

    /// The `rank`-th smallest element, `1 ≤ rank ≤ |K|`.
    pub fn select(&self, h: SetHandle, rank: usize) -> Result<Element, DictError> {
        let root = self.root(h)?;
        self.tick();
        self.select_in(root, rank)
    }

    /// Replaces `K` by `{i ∈ K : i ≤ j}` and the remainder. Either side may
    /// be empty, in which case the other side keeps `h` unchanged.
    pub fn split(
        &mut self,
        h: SetHandle,
        j: Element,
    ) -> Result<(Option<SetHandle>, Option<SetHandle>), DictError> {
        let root = self.root(h)?;
        self.check_element(j)?;
        self.tick();
        Ok(self.split_root(h, root, j))
    }

    /// Replaces `K` by its `size` smallest elements and the remainder.
    ///
    /// `size = 0` and `size = |K|` are accepted and do no structural work.
    pub fn size_split(
        &mut self,
        h: SetHandle,
        size: usize,
    ) -> Result<(Option<SetHandle>, Option<SetHandle>), DictError> {
        let root = self.root(h)?;
        self.tick();
        let len = self.nodes[root as usize].leaves as usize;
        if size > len {
            return Err(DictError::SizeOutOfRange { size, len });
        }
        if size == 0 {
            return Ok((None, Some(h)));
        }
        if size == len {
            return Ok((Some(h), None));
        }
        let pivot = self.select_in(root, size)?;
        Ok(self.split_root(h, root, pivot))
    }

    /// Replaces two sets by their union. `None` stands for the empty set and
    /// is the identity. Both handles are consumed unless one side is empty.
    pub fn merge(
        &mut self,
        a: Option<SetHandle>,
        b: Option<SetHandle>,
    ) -> Result<Option<SetHandle>, DictError> {
        self.tick();
        match (a, b) {
            (None, None) => Ok(None),
            (Some(h), None) | (None, Some(h)) => {
                self.root(h)?;
                Ok(Some(h))
            }
            (Some(a), Some(b)) => {
                if a == b {
                    return Err(DictError::SameHandle(a));
                }
                let ra = self.root(a)?;
                let rb = self.root(b)?;
                self.retire(a);
                self.retire(b);
                let root = self.merge_nodes(ra, rb, 0);
                Ok(Some(self.issue(root)))
            }
        }
    }

    /// Sorted contents of a set.
    pub fn elements(&self, h: SetHandle) -> Result<Vec<Element>, DictError> {
        let root = self.root(h)?;
        let mut out = Vec::with_capacity(self.nodes[root as usize].leaves as usize);
        self.collect(root, 0, 0, &mut out);
        Ok(out)
    }

    /// All live sets ordered by handle.
    pub fn live_sets(&self) -> Vec<(SetHandle, Vec<Element>)> {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, s)| s.root != NIL)
            .map(|(i, s)| {
                let h = SetHandle {
                    slot: i as u32,
                    generation: s.generation,
                };
                let mut elems = Vec::new();
                self.collect(s.root, 0, 0, &mut elems);
                (h, elems)
            })
            .collect()
    }

    /// One line per live set: `handle: e1 e2 …`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (h, elems) in self.live_sets() {
            let _ = write!(out, "{h}:");
            for e in elems {
                let _ = write!(out, " {e}");
            }
            out.push('\n');
        }
        out
    }

    /// Pre-order listing of a set's trie as `(bit prefix, leaf count)`; the
    /// root has the empty prefix.
    pub fn trie_snapshot(&self, h: SetHandle) -> Result<Vec<(String, u32)>, DictError> {
        let root = self.root(h)?;
        let mut out = Vec::new();
        let mut stack = vec![(root, String::new())];
        while let Some((x, prefix)) = stack.pop() {
            let node = self.nodes[x as usize];
            for bit in [1, 0] {
                let c = node.child[bit];
                if c != NIL {
                    stack.push((c, format!("{prefix}{bit}")));
                }
            }
            out.push((prefix, node.leaves));
        }
        Ok(out)
    }

    /// Full structural audit: trie shape, leaf counters, node accounting and
    /// the partition property. Returns a description of the first problem.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut seen = vec![false; self.k as usize + 1];
        let mut reachable = 0u64;
        for (slot, s) in self.slots.iter().enumerate() {
            if s.root == NIL {
                continue;
            }
            let mut stack = vec![(s.root, 0u32, 0u32)];
            while let Some((x, level, value)) = stack.pop() {
                reachable += 1;
                let node = self.nodes[x as usize];
                if level == self.depth {
                    if node.child != [NIL, NIL] {
                        return Err(format!("set {slot}: leaf {value} has children"));
                    }
                    if node.leaves != 1 {
                        return Err(format!("set {slot}: leaf {value} counts {}", node.leaves));
                    }
                    if value == 0 || value > self.k {
                        return Err(format!("set {slot}: element {value} outside universe"));
                    }
                    if std::mem::replace(&mut seen[value as usize], true) {
                        return Err(format!("element {value} stored twice"));
                    }
                    continue;
                }
                if node.child == [NIL, NIL] {
                    return Err(format!("set {slot}: internal node at level {level} has no child"));
                }
                let sum: u32 = node
                    .child
                    .iter()
                    .filter(|&&c| c != NIL)
                    .map(|&c| self.nodes[c as usize].leaves)
                    .sum();
                if sum != node.leaves {
                    return Err(format!(
                        "set {slot}: node at level {level} counts {} but has {sum} leaves",
                        node.leaves
                    ));
                }
                for (bit, &c) in node.child.iter().enumerate() {
                    if c != NIL {
                        stack.push((c, level + 1, value << 1 | bit as u32));
                    }
                }
            }
        }
        if let Some(missing) = (1..=self.k as usize).find(|&i| !seen[i]) {
            return Err(format!("element {missing} belongs to no set"));
        }
        let live = (self.nodes.len() - self.free_nodes.len()) as u64;
        if reachable != live || live != self.created - self.freed {
            return Err(format!(
                "node accounting: reachable {reachable}, pool {live}, potential {}",
                self.created - self.freed
            ));
        }
        Ok(())
    }

    fn tick(&self) {
        self.operations.set(self.operations.get() + 1);
    }

    fn visit(&self, count: u64) {
        self.visited.set(self.visited.get() + count);
    }

    fn check_element(&self, j: Element) -> Result<(), DictError> {
        if j == 0 || j > self.k {
            Err(DictError::ElementOutOfRange { element: j, k: self.k })
        } else {
            Ok(())
        }
    }

    fn root(&self, h: SetHandle) -> Result<u32, DictError> {
        match self.slots.get(h.slot as usize) {
            Some(s) if s.generation == h.generation && s.root != NIL => Ok(s.root),
            _ => Err(DictError::StaleHandle(h)),
        }
    }

    fn issue(&mut self, root: u32) -> SetHandle {
        debug_assert_ne!(root, NIL);
        match self.free_slots.pop() {
            Some(slot) => {
                let s = &mut self.slots[slot as usize];
                s.root = root;
                SetHandle {
                    slot,
                    generation: s.generation,
                }
            }
            None => {
                self.slots.push(Slot { root, generation: 0 });
                SetHandle {
                    slot: self.slots.len() as u32 - 1,
                    generation: 0,
                }
            }
        }
    }

    fn retire(&mut self, h: SetHandle) {
        let s = &mut self.slots[h.slot as usize];
        s.root = NIL;
        s.generation = s.generation.wrapping_add(1);
        self.free_slots.push(h.slot);
    }

    fn alloc(&mut self, child: [u32; 2]) -> u32 {
        self.created += 1;
        let leaves = self.count_of(child[0]) + self.count_of(child[1]);
        let node = Node { child, leaves };
        match self.free_nodes.pop() {
            Some(id) => {
                self.nodes[id as usize] = node;
                id
            }
            None => {
                self.nodes.push(node);
                self.nodes.len() as u32 - 1
            }
        }
    }

    fn free(&mut self, id: u32) {
        self.freed += 1;
        self.free_nodes.push(id);
    }

    fn count_of(&self, id: u32) -> u32 {
        if id == NIL {
            0
        } else {
            self.nodes[id as usize].leaves
        }
    }

    fn set_children(&mut self, id: u32, child: [u32; 2]) {
        let leaves = self.count_of(child[0]) + self.count_of(child[1]);
        self.nodes[id as usize] = Node { child, leaves };
    }

    fn bit(&self, value: Element, level: u32) -> usize {
        ((value >> (self.depth - 1 - level)) & 1) as usize
    }

    /// Trie holding `[1, k] ∩ [prefix·2^(depth−level), (prefix+1)·2^(depth−level))`.
    fn build_full(&mut self, level: u32, prefix: u64) -> u32 {
        let span = self.depth - level;
        let lo = prefix << span;
        let hi = ((prefix + 1) << span) - 1;
        if hi < 1 || lo > self.k as u64 {
            return NIL;
        }
        if level == self.depth {
            let id = self.alloc([NIL, NIL]);
            self.nodes[id as usize].leaves = 1;
            return id;
        }
        let left = self.build_full(level + 1, prefix << 1);
        let right = self.build_full(level + 1, prefix << 1 | 1);
        self.alloc([left, right])
    }

    fn predecessor(&self, root: u32, j: Element) -> Option<Element> {
        // Deepest node on j's path where the path turns right and a left
        // subtree exists: the predecessor is the maximum of that subtree.
        let mut fallback: Option<(u32, u32)> = None;
        let mut x = root;
        let mut visits = 0;
        for level in 0..self.depth {
            visits += 1;
            let node = self.nodes[x as usize];
            let b = self.bit(j, level);
            if b == 1 && node.child[0] != NIL {
                fallback = Some((node.child[0], level));
            }
            let next = node.child[b];
            if next == NIL {
                self.visit(visits);
                let (sub, at) = fallback?;
                let prefix = (j >> (self.depth - at)) << 1;
                return Some(self.max_below(sub, at + 1, prefix));
            }
            x = next;
        }
        self.visit(visits + 1);
        Some(j)
    }

    fn max_below(&self, mut x: u32, mut level: u32, mut value: Element) -> Element {
        let mut visits = 0;
        while level < self.depth {
            visits += 1;
            let node = self.nodes[x as usize];
            let bit = if node.child[1] != NIL { 1 } else { 0 };
            x = node.child[bit];
            value = value << 1 | bit as u32;
            level += 1;
        }
        self.visit(visits + 1);
        value
    }

    fn select_in(&self, root: u32, rank: usize) -> Result<Element, DictError> {
        let len = self.nodes[root as usize].leaves as usize;
        if rank == 0 || rank > len {
            return Err(DictError::RankOutOfRange { rank, len });
        }
        let mut s = rank as u32;
        let mut x = root;
        let mut value = 0;
        for _ in 0..self.depth {
            let node = self.nodes[x as usize];
            let left = self.count_of(node.child[0]);
            let bit = if left >= s {
                0
            } else {
                s -= left;
                1
            };
            x = node.child[bit];
            value = value << 1 | bit as u32;
        }
        self.visit(self.depth as u64 + 1);
        Ok(value)
    }

    fn split_root(
        &mut self,
        h: SetHandle,
        root: u32,
        j: Element,
    ) -> (Option<SetHandle>, Option<SetHandle>) {
        match self.split_node(root, 0, j) {
            (l, NIL) => {
                debug_assert_eq!(l, root);
                (Some(h), None)
            }
            (NIL, r) => {
                debug_assert_eq!(r, root);
                (None, Some(h))
            }
            (l, r) => {
                self.retire(h);
                let left = self.issue(l);
                let right = self.issue(r);
                (Some(left), Some(right))
            }
        }
    }

    /// Splits the subtree at `x` into elements `≤ j` and `> j`, following
    /// the path of `j`. Only nodes on that path change; a node whose two
    /// sides are both nonempty is copied, otherwise it is reused.
    fn split_node(&mut self, x: u32, level: u32, j: Element) -> (u32, u32) {
        self.visit(1);
        if level == self.depth {
            return (x, NIL);
        }
        let [l, r] = self.nodes[x as usize].child;
        let (low, high) = if self.bit(j, level) == 0 {
            if l == NIL {
                return (NIL, x);
            }
            let (ll, lr) = self.split_node(l, level + 1, j);
            ([ll, NIL], [lr, r])
        } else {
            if r == NIL {
                return (x, NIL);
            }
            let (rl, rr) = self.split_node(r, level + 1, j);
            ([l, rl], [NIL, rr])
        };
        match (low == [NIL, NIL], high == [NIL, NIL]) {
            (false, true) => {
                self.set_children(x, low);
                (x, NIL)
            }
            (true, false) => {
                self.set_children(x, high);
                (NIL, x)
            }
            (false, false) => {
                self.set_children(x, low);
                let y = self.alloc(high);
                (x, y)
            }
            (true, true) => unreachable!("trie node with no leaves"),
        }
    }

    fn merge_nodes(&mut self, x: u32, y: u32, level: u32) -> u32 {
        if x == NIL {
            return y;
        }
        if y == NIL {
            return x;
        }
        self.visit(2);
        assert!(level < self.depth, "merged sets share an element");
        let [xl, xr] = self.nodes[x as usize].child;
        let [yl, yr] = self.nodes[y as usize].child;
        let left = self.merge_nodes(xl, yl, level + 1);
        let right = self.merge_nodes(xr, yr, level + 1);
        self.set_children(x, [left, right]);
        self.free(y);
        x
    }

    fn collect(&self, x: u32, level: u32, value: Element, out: &mut Vec<Element>) {
        if level == self.depth {
            out.push(value);
            return;
        }
        for (bit, &c) in self.nodes[x as usize].child.iter().enumerate() {
            if c != NIL {
                self.collect(c, level + 1, value << 1 | bit as u32, out);
            }
        }
    }
}

/// One step of a partition script. Sets are addressed by position in a
/// live list: `split`/`size_split` remove the addressed set and append the
/// nonempty sides (low side first); `merge` removes both operands (the
/// higher position first, by swap-removal) and appends the union.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Search { set: usize, j: Element },
    Some { set: usize },
    Select { set: usize, rank: usize },
    Split { set: usize, j: Element },
    SizeSplit { set: usize, size: usize },
    Merge { a: usize, b: usize },
}

/// Observable result of an [`Op`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpResult {
    Element(Option<Element>),
    /// Sizes of the low and high sides of a split.
    Split(usize, usize),
    Merged(usize),
    /// A merge addressed the same set twice.
    SameSet,
    Error(DictError),
}

/// Query results plus the final live list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayOutcome {
    pub results: Vec<OpResult>,
    pub sets: Vec<Vec<Element>>,
}

/// Runs a script on a fresh [`TriePartition`] of `{1, …, k}`.
///
/// Panics if the script addresses a position beyond the live list.
pub fn replay(k: usize, ops: &[Op]) -> Result<(ReplayOutcome, OpCounters), DictError> {
    let (mut partition, full) = TriePartition::new(k)?;
    let mut live = vec![full];
    let mut results = Vec::with_capacity(ops.len());
    for &op in ops {
        let result = match op {
            Op::Search { set, j } => partition.search(live[set], j).map(OpResult::Element),
            Op::Some { set } => partition.some(live[set]).map(|e| OpResult::Element(Some(e))),
            Op::Select { set, rank } => partition
                .select(live[set], rank)
                .map(|e| OpResult::Element(Some(e))),
            Op::Split { set, j } => {
                let h = live[set];
                partition.split(h, j).map(|sides| {
                    live.swap_remove(set);
                    push_sides(&partition, &mut live, sides)
                })
            }
            Op::SizeSplit { set, size } => {
                let h = live[set];
                partition.size_split(h, size).map(|sides| {
                    live.swap_remove(set);
                    push_sides(&partition, &mut live, sides)
                })
            }
            Op::Merge { a, b } if a == b => Ok(OpResult::SameSet),
            Op::Merge { a, b } => {
                let (ha, hb) = (live[a], live[b]);
                partition.merge(Some(ha), Some(hb)).map(|merged| {
                    live.swap_remove(a.max(b));
                    live.swap_remove(a.min(b));
                    let h = merged.expect("union of nonempty sets");
                    live.push(h);
                    OpResult::Merged(partition.len(h).expect("fresh handle"))
                })
            }
        };
        results.push(result.unwrap_or_else(OpResult::Error));
    }
    let sets = live
        .iter()
        .map(|&h| partition.elements(h).expect("live handle"))
        .collect();
    Ok((ReplayOutcome { results, sets }, partition.counters()))
}

fn push_sides(
    partition: &TriePartition,
    live: &mut Vec<SetHandle>,
    (low, high): (Option<SetHandle>, Option<SetHandle>),
) -> OpResult {
    let mut sizes = [0; 2];
    for (size, side) in sizes.iter_mut().zip([low, high]) {
        if let Some(h) = side {
            *size = partition.len(h).expect("fresh handle");
            live.push(h);
        }
    }
    OpResult::Split(sizes[0], sizes[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Peels `{1..k}` into singletons and merges the wanted ones back.
    pub(crate) fn set_of(k: usize, wanted: &[Element]) -> (TriePartition, SetHandle) {
        let (mut p, full) = TriePartition::new(k).unwrap();
        let mut rest = Some(full);
        let mut acc = None;
        for e in 1..=k as Element {
            let (one, r) = p.size_split(rest.unwrap(), 1).unwrap();
            if wanted.contains(&e) {
                acc = p.merge(acc, one).unwrap();
            }
            rest = r;
        }
        (p, acc.unwrap())
    }

    fn sample_set() -> (TriePartition, SetHandle) {
        set_of(15, &[1, 4, 7, 10, 15])
    }

    #[test]
    fn new_partition_depths() {
        let (p, h) = TriePartition::new(1).unwrap();
        assert_eq!(p.depth(), 1);
        assert_eq!(p.elements(h).unwrap(), vec![1]);
        assert_eq!(TriePartition::new(6).unwrap().0.depth(), 3);
        assert_eq!(TriePartition::new(15).unwrap().0.depth(), 4);
        assert_eq!(TriePartition::new(16).unwrap().0.depth(), 5);
        assert_eq!(TriePartition::new(0).unwrap_err(), DictError::EmptyUniverse);
    }

    #[test]
    fn elements_spelled_big_endian() {
        let (p, h) = TriePartition::new(6).unwrap();
        let snap: std::collections::HashMap<_, _> = p.trie_snapshot(h).unwrap().into_iter().collect();
        assert_eq!(snap["011"], 1);
        assert_eq!(snap["01"], 2);
        assert_eq!(snap[""], 6);
        assert!(!snap.contains_key("111"));
        assert!(!snap.contains_key("000"));

        let (p, h) = TriePartition::new(15).unwrap();
        let snap: std::collections::HashMap<_, _> = p.trie_snapshot(h).unwrap().into_iter().collect();
        assert!(snap.contains_key("0100"));
        assert!(snap.contains_key("0111"));
    }

    #[test]
    fn initial_potential_bounded() {
        for k in [1usize, 2, 3, 6, 15, 16, 100, 1024, 1025] {
            let (p, _) = TriePartition::new(k).unwrap();
            let depth = p.depth() as u64;
            assert!(p.counters().potential() <= 2 * k as u64 * depth.max(1) + depth);
            p.check_invariants().unwrap();
        }
    }

    #[test]
    fn sample_fixture_is_right() {
        let (p, h) = sample_set();
        assert_eq!(p.elements(h).unwrap(), vec![1, 4, 7, 10, 15]);
        p.check_invariants().unwrap();
    }

    #[test]
    fn search_examples() {
        let (p, h) = sample_set();
        assert_eq!(p.search(h, 5).unwrap(), Some(4));
        assert_eq!(p.search(h, 15).unwrap(), Some(15));
        assert_eq!(p.search(h, 1).unwrap(), Some(1));
        assert_eq!(p.search(h, 9).unwrap(), Some(7));
        assert_eq!(p.search(h, 14).unwrap(), Some(10));
        assert!(matches!(p.search(h, 0), Err(DictError::ElementOutOfRange { .. })));
        assert!(matches!(p.search(h, 16), Err(DictError::ElementOutOfRange { .. })));

        let (p, set) = set_of(15, &[4, 7]);
        assert_eq!(p.search(set, 3).unwrap(), None);
        assert_eq!(p.search(set, 6).unwrap(), Some(4));
        p.check_invariants().unwrap();
    }

    #[test]
    fn some_is_maximum() {
        let (p, h) = sample_set();
        assert_eq!(p.some(h).unwrap(), 15);
        let (p, h) = TriePartition::new(9).unwrap();
        assert_eq!(p.some(h).unwrap(), 9);
        let (mut p, h) = TriePartition::new(9).unwrap();
        let (low, _) = p.split(h, 3).unwrap();
        let (_, three) = p.split(low.unwrap(), 2).unwrap();
        assert_eq!(p.some(three.unwrap()).unwrap(), 3);
    }

    #[test]
    fn select_examples() {
        let (p, h) = sample_set();
        assert_eq!(p.select(h, 2).unwrap(), 4);
        assert_eq!(p.select(h, 1).unwrap(), 1);
        assert_eq!(p.select(h, 5).unwrap(), 15);
        assert_eq!(
            p.select(h, 6).unwrap_err(),
            DictError::RankOutOfRange { rank: 6, len: 5 }
        );
        assert!(p.select(h, 0).is_err());
    }

    #[test]
    fn select_does_not_change_potential() {
        let (p, h) = sample_set();
        let before = p.counters();
        for r in 1..=5 {
            p.select(h, r).unwrap();
        }
        let after = p.counters();
        assert_eq!(before.potential(), after.potential());
        assert!(after.nodes_visited > before.nodes_visited);
    }

    #[test]
    fn split_examples() {
        let (mut p, h) = sample_set();
        let (low, high) = p.split(h, 4).unwrap();
        assert_eq!(p.elements(low.unwrap()).unwrap(), vec![1, 4]);
        assert_eq!(p.elements(high.unwrap()).unwrap(), vec![7, 10, 15]);
        assert_eq!(p.len(h).unwrap_err(), DictError::StaleHandle(h));
        p.check_invariants().unwrap();

        let (mut p, h) = TriePartition::new(12).unwrap();
        let (low, high) = p.split(h, 12).unwrap();
        assert_eq!(low, Some(h));
        assert_eq!(high, None);
        assert_eq!(p.len(h).unwrap(), 12);
    }

    #[test]
    fn split_two_nine() {
        let (mut p, set) = set_of(12, &[2, 9]);
        let (low, high) = p.split(set, 5).unwrap();
        assert_eq!(p.elements(low.unwrap()).unwrap(), vec![2]);
        assert_eq!(p.elements(high.unwrap()).unwrap(), vec![9]);
        assert_eq!(p.len(low.unwrap()).unwrap(), 1);
        p.check_invariants().unwrap();
    }

    #[test]
    fn size_split_examples() {
        let (mut p, h) = sample_set();
        let (low, high) = p.size_split(h, 2).unwrap();
        assert_eq!(p.elements(low.unwrap()).unwrap(), vec![1, 4]);
        assert_eq!(p.elements(high.unwrap()).unwrap(), vec![7, 10, 15]);

        let h = high.unwrap();
        let created = p.counters().nodes_created;
        assert_eq!(p.size_split(h, 0).unwrap(), (None, Some(h)));
        assert_eq!(p.size_split(h, 3).unwrap(), (Some(h), None));
        assert_eq!(p.counters().nodes_created, created);
        assert_eq!(
            p.size_split(h, 4).unwrap_err(),
            DictError::SizeOutOfRange { size: 4, len: 3 }
        );
        p.check_invariants().unwrap();
    }

    #[test]
    fn merge_examples() {
        let (mut p, h) = sample_set();
        let (low, high) = p.split(h, 4).unwrap();
        let before = p.counters().potential();
        let merged = p.merge(low, high).unwrap().unwrap();
        assert_eq!(p.elements(merged).unwrap(), vec![1, 4, 7, 10, 15]);
        assert!(p.counters().potential() < before);
        assert!(!p.is_live(low.unwrap()));
        assert!(!p.is_live(high.unwrap()));
        p.check_invariants().unwrap();

        assert_eq!(p.merge(Some(merged), None).unwrap(), Some(merged));
        assert_eq!(p.merge(None, None).unwrap(), None);
        assert_eq!(
            p.merge(Some(merged), Some(merged)).unwrap_err(),
            DictError::SameHandle(merged)
        );
        assert!(matches!(
            p.merge(low, Some(merged)),
            Err(DictError::StaleHandle(_))
        ));
    }

    #[test]
    fn merge_interleaved() {
        let (mut p, two_nine) = set_of(12, &[2, 9]);
        let five = p
            .live_sets()
            .into_iter()
            .find(|(_, e)| e == &[5])
            .map(|(h, _)| h);
        let merged = p.merge(Some(two_nine), five).unwrap().unwrap();
        assert_eq!(p.elements(merged).unwrap(), vec![2, 5, 9]);
        p.check_invariants().unwrap();
    }

    #[test]
    fn dump_format() {
        let (mut p, h) = TriePartition::new(5).unwrap();
        let (low, high) = p.split(h, 2).unwrap();
        let dump = p.dump();
        let lines: Vec<_> = dump.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines.contains(&format!("{}: 1 2", low.unwrap()).as_str()));
        assert!(lines.contains(&format!("{}: 3 4 5", high.unwrap()).as_str()));
    }

    #[test]
    fn replay_runs_script() {
        let ops = [
            Op::SizeSplit { set: 0, size: 2 },
            Op::Select { set: 1, rank: 1 },
            Op::Some { set: 0 },
            Op::Merge { a: 0, b: 1 },
            Op::Select { set: 0, rank: 9 },
            Op::Merge { a: 0, b: 0 },
        ];
        let (outcome, counters) = replay(6, &ops).unwrap();
        assert_eq!(
            outcome.results,
            [
                OpResult::Split(2, 4),
                OpResult::Element(Some(3)),
                OpResult::Element(Some(2)),
                OpResult::Merged(6),
                OpResult::Error(DictError::RankOutOfRange { rank: 9, len: 6 }),
                OpResult::SameSet,
            ]
        );
        assert_eq!(outcome.sets, vec![vec![1, 2, 3, 4, 5, 6]]);
        // The SameSet step never reaches the partition.
        assert_eq!(counters.operations, ops.len() as u64 - 1);
    }
}
