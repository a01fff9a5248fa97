#![allow(dead_code)]

use chaincover::dag::{gen_random_dag, gen_worst_case, Dag};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EDGE_PROBS: [f64; 4] = [0.05, 0.1, 0.3, 0.7];

/// 200 seeded random DAGs with n in [1, 40], cycling through `EDGE_PROBS`,
/// followed by the worst-case family for 1 <= k, l <= 8.
pub fn corpus() -> Vec<(String, Dag)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    for i in 0..200u64 {
        let n = rng.random_range(1..=40usize);
        let p = EDGE_PROBS[i as usize % EDGE_PROBS.len()];
        out.push((format!("random(n={n}, p={p}, seed={i})"), gen_random_dag(n, p, i).unwrap()));
    }
    for k in 1..=8 {
        for l in 1..=8 {
            out.push((format!("worst_case(k={k}, l={l})"), gen_worst_case(k, l).unwrap()));
        }
    }
    out
}

/// Minimum number of (possibly overlapping) DAG paths covering every
/// vertex, by breadth-first search over covered-vertex bitmasks. n <= 8.
pub fn brute_force_min_path_cover(dag: &Dag) -> usize {
    let n = dag.n();
    assert!(n <= 8);
    let mut masks = Vec::new();
    fn extend(dag: &Dag, v: usize, mask: u32, out: &mut Vec<u32>) {
        out.push(mask);
        for &w in dag.out_neighbors(v) {
            extend(dag, w, mask | 1 << w, out);
        }
    }
    for v in 0..n {
        extend(dag, v, 1 << v, &mut masks);
    }
    let full = (1u32 << n) - 1;
    let mut dist = vec![usize::MAX; 1 << n];
    dist[0] = 0;
    let mut queue = std::collections::VecDeque::from([0u32]);
    while let Some(m) = queue.pop_front() {
        if m == full {
            return dist[m as usize];
        }
        for &p in &masks {
            let next = m | p;
            if dist[next as usize] == usize::MAX {
                dist[next as usize] = dist[m as usize] + 1;
                queue.push_back(next);
            }
        }
    }
    unreachable!("singleton paths cover everything")
}
