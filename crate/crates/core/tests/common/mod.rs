//! Brute-force oracles shared by the integration suites. Nothing here calls
//! into the algorithms it is used to check.

#![allow(dead_code)]

use std::path::PathBuf;

use comtree::harness::{random_graph, trial_rng};
use comtree::Graph;

pub fn data_path(name: &str) -> PathBuf {
    let dir = std::env::var_os("COMTREE_DATA_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data"));
    dir.join(name)
}

pub fn karate() -> Graph {
    let text = std::fs::read_to_string(data_path("karate.txt")).expect("karate.txt is vendored");
    comtree::io::load_edge_list(&text).unwrap()
}

fn is_clique(g: &Graph, vs: &[u32]) -> bool {
    vs.iter()
        .enumerate()
        .all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

/// Maximal cliques by enumerating, for every vertex `v`, all subsets of its
/// higher-numbered neighbors and keeping the maximal cliques whose smallest
/// vertex is `v`.
pub fn maximal_cliques_brute(g: &Graph) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for v in g.vertices() {
        let higher: Vec<u32> = g.neighbors(v).iter().copied().filter(|&w| w > v).collect();
        assert!(higher.len() <= 20, "oracle is exponential in the neighborhood");
        for mask in 0u32..(1 << higher.len()) {
            let mut set = vec![v];
            set.extend((0..higher.len()).filter(|&i| mask & (1 << i) != 0).map(|i| higher[i]));
            if !is_clique(g, &set) {
                continue;
            }
            let extendable = g
                .vertices()
                .any(|x| !set.contains(&x) && set.iter().all(|&s| g.has_edge(s, x)));
            if !extendable {
                out.push(set);
            }
        }
    }
    out.sort();
    out
}

/// All k-subsets of the vertex set that are cliques.
pub fn k_cliques_brute(g: &Graph, k: usize) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    assert!(n <= 20);
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let set: Vec<u32> = (0..n as u32).filter(|&i| mask & (1 << i) != 0).collect();
        if is_clique(g, &set) {
            out.push(set);
        }
    }
    out.sort();
    out
}

pub fn triangles_brute(g: &Graph) -> usize {
    let n = g.vertex_count() as u32;
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Minimum vertex cover size over all `2^n` subsets.
pub fn min_cover_brute(g: &Graph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 20);
    let edges: Vec<(u32, u32)> = g.edges().collect();
    (0u32..(1 << n))
        .filter(|mask| edges.iter().all(|&(u, v)| mask & (1 << u) != 0 || mask & (1 << v) != 0))
        .map(u32::count_ones)
        .min()
        .unwrap_or(0) as usize
}

/// Doubled bottleneck distance by trying every assignment of the first
/// diagram's points to distinct points of the second or to the diagonal.
pub fn bottleneck_brute(a: &[(u32, u32)], b: &[(u32, u32)]) -> i64 {
    fn diag(p: (u32, u32)) -> i64 {
        (p.1 as i64 - p.0 as i64).abs()
    }
    fn dist(p: (u32, u32), q: (u32, u32)) -> i64 {
        2 * (p.0 as i64 - q.0 as i64).abs().max((p.1 as i64 - q.1 as i64).abs())
    }
    fn go(i: usize, a: &[(u32, u32)], b: &[(u32, u32)], used: &mut Vec<bool>, worst: i64, best: &mut i64) {
        if worst >= *best {
            return;
        }
        if i == a.len() {
            let rest = b
                .iter()
                .zip(used.iter())
                .filter(|(_, &u)| !u)
                .map(|(&q, _)| diag(q))
                .max()
                .unwrap_or(0);
            *best = (*best).min(worst.max(rest));
            return;
        }
        go(i + 1, a, b, used, worst.max(diag(a[i])), best);
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                go(i + 1, a, b, used, worst.max(dist(a[i], b[j])), best);
                used[j] = false;
            }
        }
    }
    let mut best = i64::MAX;
    go(0, a, b, &mut vec![false; b.len()], 0, &mut best);
    best
}

/// Deterministic G(n, p) sample for oracle sweeps.
pub fn sample_graph(seed: u64, stream: u64, n: usize, p: f64) -> Graph {
    random_graph(n, p, &mut trial_rng(seed, stream))
}
