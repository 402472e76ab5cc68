//! Exhaustive Kuratowski subdivision search, used as an independent check of
//! the planarity test on small graphs.

use crate::graph::LabeledGraph;

fn route(adj: &[u64], pairs: &[(usize, usize)], k: usize, blocked: u64) -> bool {
    if k == pairs.len() {
        return true;
    }
    let (s, t) = pairs[k];
    // simple paths s -> t whose interior avoids `blocked`
    fn walk(adj: &[u64], pairs: &[(usize, usize)], k: usize, at: usize, t: usize, blocked: u64, interior: u64) -> bool {
        if adj[at] >> t & 1 == 1 && route(adj, pairs, k + 1, blocked | interior) {
            return true;
        }
        let mut next = adj[at] & !blocked & !interior;
        while next != 0 {
            let w = next.trailing_zeros() as usize;
            next &= next - 1;
            if walk(adj, pairs, k, w, t, blocked, interior | 1 << w) {
                return true;
            }
        }
        false
    }
    walk(adj, pairs, k, s, t, blocked, 0)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// True iff `g` contains a subdivision of K5 or K3,3. Graphs are limited to
/// 64 vertices, but the search is exponential and meant for ~10 vertices.
pub fn has_kuratowski_subdivision(g: &LabeledGraph) -> bool {
    let n = g.num_vertices();
    assert!(n <= 64);
    let adj: Vec<u64> = g
        .adjacency_masks()
        .into_iter()
        .map(|m| m as u64)
        .collect();
    let mask = |vs: &[usize]| vs.iter().fold(0u64, |m, &v| m | 1 << v);

    for b in subsets(n, 5) {
        if b.iter().any(|&v| g.degree(v) < 4) {
            continue;
        }
        let mut pairs = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                pairs.push((b[i], b[j]));
            }
        }
        if route(&adj, &pairs, 0, mask(&b)) {
            return true;
        }
    }
    for six in subsets(n, 6) {
        if six.iter().any(|&v| g.degree(v) < 3) {
            continue;
        }
        // the side containing six[0]
        for rest in subsets(5, 2) {
            let left = [six[0], six[1 + rest[0]], six[1 + rest[1]]];
            let right: Vec<usize> = six.iter().copied().filter(|v| !left.contains(v)).collect();
            let pairs: Vec<(usize, usize)> = left
                .iter()
                .flat_map(|&l| right.iter().map(move |&r| (l, r)))
                .collect();
            if route(&adj, &pairs, 0, mask(&six)) {
                return true;
            }
        }
    }
    false
}
