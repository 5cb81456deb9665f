mod common;

use std::collections::BTreeSet;

use comtree::clique::{k_cliques, max_clique_order, maximal_cliques, maximal_cliques_with};
use comtree::cpm::{all_communities, all_communities_oracle, k_communities, k_communities_oracle};
use comtree::{fixtures, Config, Execution, DEFAULT_CLIQUE_CAP};

use common::*;

fn vertex_lists(cliques: &[comtree::Clique]) -> Vec<Vec<u32>> {
    cliques.iter().map(|c| c.vertices().to_vec()).collect()
}

#[test]
fn karate_maximal_cliques_match_subset_oracle() {
    let g = karate();
    let fast = vertex_lists(&maximal_cliques(&g, DEFAULT_CLIQUE_CAP).unwrap());
    let brute = maximal_cliques_brute(&g);
    assert_eq!(fast, brute);
    assert_eq!(fast.len(), 36);
    let largest = brute.iter().map(Vec::len).max().unwrap();
    assert_eq!(largest, 5);
    assert_eq!(max_clique_order(&g), largest);
}

#[test]
fn random_graph_triangles_match_triple_enumeration() {
    for stream in 0..20 {
        let g = sample_graph(10, stream, 10, 0.5);
        assert_eq!(
            k_cliques(&g, 3, DEFAULT_CLIQUE_CAP).unwrap().len(),
            triangles_brute(&g),
            "stream {stream}"
        );
    }
}

#[test]
fn k_cliques_match_subset_oracle_and_maximal_cover() {
    for stream in 0..40 {
        let n = 4 + (stream as usize % 9);
        let p = [0.3, 0.5, 0.7][stream as usize % 3];
        let g = sample_graph(21, stream, n, p);
        let maximal = maximal_cliques(&g, DEFAULT_CLIQUE_CAP).unwrap();
        assert_eq!(vertex_lists(&maximal), maximal_cliques_brute(&g));
        for k in 1..=n {
            let listed = vertex_lists(&k_cliques(&g, k, DEFAULT_CLIQUE_CAP).unwrap());
            assert_eq!(listed, k_cliques_brute(&g, k), "n={n} k={k}");
            // union of k-subsets of maximal cliques
            let mut from_maximal = BTreeSet::new();
            for c in maximal.iter().filter(|c| c.order() >= k) {
                for sub in subsets(c.vertices(), k) {
                    from_maximal.insert(sub);
                }
            }
            assert_eq!(listed, from_maximal.into_iter().collect::<Vec<_>>());
        }
    }
}

fn subsets(items: &[u32], k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = subsets(&items[1..], k);
    for mut rest in subsets(&items[1..], k - 1) {
        rest.insert(0, items[0]);
        out.push(rest);
    }
    out
}

#[test]
fn enumeration_is_deterministic_across_modes() {
    let g = karate();
    let a = maximal_cliques_with(&g, DEFAULT_CLIQUE_CAP, Execution::Sequential).unwrap();
    let b = maximal_cliques_with(&g, DEFAULT_CLIQUE_CAP, Execution::Parallel).unwrap();
    let c = maximal_cliques_with(&g, DEFAULT_CLIQUE_CAP, Execution::Parallel).unwrap();
    assert_eq!(a, b);
    assert_eq!(b, c);
}

#[test]
fn shared_edge_k5_k4_four_cliques_stay_apart() {
    let g = fixtures::shared_edge_k5_k4();
    let k4_side: Vec<u32> = ["d", "e", "f", "g"].iter().map(|l| g.vertex_id(l).unwrap()).collect();
    let k5_side: Vec<u32> = ["a", "b", "c", "d", "e"]
        .iter()
        .map(|l| g.vertex_id(l).unwrap())
        .collect();
    for c in k_cliques_brute(&g, 4) {
        if c.iter().all(|v| k5_side.contains(v)) {
            let shared = c.iter().filter(|v| k4_side.contains(v)).count();
            assert!(shared <= 2);
        }
    }
    let slice = k_communities_oracle(&g, 4, DEFAULT_CLIQUE_CAP).unwrap();
    let sets: Vec<Vec<u32>> = slice.communities.iter().map(|c| c.vertices().to_vec()).collect();
    let mut k4_sorted = k4_side.clone();
    k4_sorted.sort();
    assert_eq!(sets, vec![k5_side, k4_sorted]);
}

#[test]
fn karate_slices_match_reference_counts() {
    // community counts and sizes per order, cross-checked against an
    // external clique percolation implementation
    let g = karate();
    let slices = all_communities(&g, &Config::default()).unwrap();
    let shape: Vec<Vec<usize>> = slices
        .iter()
        .map(|s| {
            let mut sizes: Vec<usize> = s.communities.iter().map(|c| c.size()).collect();
            sizes.sort();
            sizes
        })
        .collect();
    assert_eq!(shape, vec![vec![34], vec![34], vec![3, 6, 25], vec![4, 4, 6], vec![6]]);
    let oracle = all_communities_oracle(&g, DEFAULT_CLIQUE_CAP).unwrap();
    for (a, b) in slices.iter().zip(&oracle) {
        assert_eq!(a.subgraphs(), b.subgraphs());
    }
}

#[test]
fn fast_path_matches_oracle_on_random_graphs() {
    for stream in 0..60 {
        let n = 5 + (stream as usize % 8);
        let p = [0.3, 0.5, 0.7][stream as usize % 3];
        let g = sample_graph(33, stream, n, p);
        let maximal = maximal_cliques(&g, DEFAULT_CLIQUE_CAP).unwrap();
        for k in 2..=max_clique_order(&g).max(2) {
            let fast = k_communities(&g, k, &maximal).unwrap();
            let oracle = k_communities_oracle(&g, k, DEFAULT_CLIQUE_CAP).unwrap();
            assert_eq!(fast.subgraphs(), oracle.subgraphs(), "stream {stream} k {k}");
        }
    }
}

#[test]
fn communities_nest_in_exactly_one_parent() {
    for stream in 0..60 {
        let g = sample_graph(44, stream, 11, [0.3, 0.5, 0.7][stream as usize % 3]);
        let slices = all_communities(&g, &Config::default()).unwrap();
        for pair in slices.windows(2) {
            for c in &pair[1].communities {
                let parents = pair[0].communities.iter().filter(|p| c.is_subgraph_of(p)).count();
                assert_eq!(parents, 1, "stream {stream} order {}", c.order());
            }
        }
    }
}

#[test]
fn oracle_communities_have_clique_path_witnesses() {
    // BFS over (k-1)-overlap adjacency, independent of the union-find
    for stream in 0..25 {
        let g = sample_graph(55, stream, 9, 0.6);
        for k in 2..=max_clique_order(&g) {
            let slice = k_communities_oracle(&g, k, DEFAULT_CLIQUE_CAP).unwrap();
            let mut seen_total = 0;
            for c in &slice.communities {
                let members = c.members();
                let mut seen = vec![false; members.len()];
                let mut stack = vec![0];
                seen[0] = true;
                while let Some(i) = stack.pop() {
                    for j in 0..members.len() {
                        if !seen[j] && members[i].overlap(&members[j]) == k - 1 {
                            seen[j] = true;
                            stack.push(j);
                        }
                    }
                }
                assert!(seen.iter().all(|&s| s));
                for other in &slice.communities {
                    if other != c {
                        for a in members {
                            assert!(other.members().iter().all(|b| a.overlap(b) < k - 1));
                        }
                    }
                }
                seen_total += members.len();
            }
            assert_eq!(seen_total, k_cliques_brute(&g, k).len());
        }
    }
}
