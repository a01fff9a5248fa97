//! Size-split on a binary trie: the set {1, 4, 7, 10, 15} drawn from
//! {1, ..., 15}, split after its second element.

use chaincover::mergeable_dict::TriePartition;

fn print_trie(p: &TriePartition, name: &str, h: chaincover::mergeable_dict::SetHandle) {
    println!("{name} = {:?}", p.elements(h).unwrap());
    for (prefix, leaves) in p.trie_snapshot(h).unwrap() {
        let label = if prefix.is_empty() { "root".to_string() } else { prefix };
        println!("  {label:>5}  {leaves}");
    }
}

fn main() {
    let (mut p, full) = TriePartition::new(15).unwrap();
    println!("universe 1..=15, trie depth {}", p.depth());

    // Peel off singletons and keep the ones we want.
    let mut rest = Some(full);
    let mut set = None;
    for e in 1..=15 {
        let (one, r) = p.size_split(rest.unwrap(), 1).unwrap();
        if [1, 4, 7, 10, 15].contains(&e) {
            set = p.merge(set, one).unwrap();
        }
        rest = r;
    }
    let set = set.unwrap();
    print_trie(&p, "K", set);

    println!("select(K, 2) = {}", p.select(set, 2).unwrap());
    println!("search(K, 9) = {:?}", p.search(set, 9).unwrap());
    println!("some(K) = {}", p.some(set).unwrap());

    let before = p.counters();
    let (low, high) = p.size_split(set, 2).unwrap();
    let after = p.counters();
    print_trie(&p, "K1", low.unwrap());
    print_trie(&p, "K2", high.unwrap());
    println!(
        "size_split visited {} nodes and created {}",
        after.nodes_visited - before.nodes_visited,
        after.nodes_created - before.nodes_created
    );

    let union = p.merge(low, high).unwrap().unwrap();
    println!("merge(K1, K2) = {:?}", p.elements(union).unwrap());
    p.check_invariants().unwrap();
}
