//! Small named graphs used throughout the tests, benches and docs.

use crate::graph::Graph;

fn build(vertices: &[&str], edges: &[(&str, &str)]) -> Graph {
    Graph::from_vertices_and_edges(vertices, edges).expect("fixture graphs are simple")
}

fn clique_edges<'a>(labels: &[&'a str]) -> Vec<(&'a str, &'a str)> {
    let mut out = Vec::new();
    for (i, &a) in labels.iter().enumerate() {
        for &b in &labels[i + 1..] {
            out.push((a, b));
        }
    }
    out
}

/// K5 on `a..e` glued to K4 on `d,e,f,g` along the edge `d-e`.
///
/// Its community tree is a chain of orders 1-3 splitting into the K5 branch
/// (orders 4 and 5) and the K4 leaf, giving the diagram `{(1,5),(3,4)}`.
pub fn shared_edge_k5_k4() -> Graph {
    let mut edges = clique_edges(&["a", "b", "c", "d", "e"]);
    edges.extend(clique_edges(&["d", "e", "f", "g"]));
    build(&["a", "b", "c", "d", "e", "f", "g"], &edges)
}

/// Disjoint K5 on `a..e` and K4 on `f..i`.
pub fn disjoint_k5_k4() -> Graph {
    let mut edges = clique_edges(&["a", "b", "c", "d", "e"]);
    edges.extend(clique_edges(&["f", "g", "h", "i"]));
    build(&["a", "b", "c", "d", "e", "f", "g", "h", "i"], &edges)
}

/// Two K4s (`a..d`, `e..h`) joined by the single edge `d-e`.
pub fn bridged_k4_pair() -> Graph {
    let mut edges = clique_edges(&["a", "b", "c", "d"]);
    edges.extend(clique_edges(&["e", "f", "g", "h"]));
    edges.push(("d", "e"));
    build(&["a", "b", "c", "d", "e", "f", "g", "h"], &edges)
}

/// Complete graph on `n` vertices labelled `v0..`.
pub fn complete(n: usize) -> Graph {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    Graph::complete(&labels).expect("labels are distinct and non-empty")
}

/// A perturbation pair in which the removed edges (`a-b`, `f-g`) need two
/// covering vertices and every added edge touches the new vertex `h`.
/// Returns `(G, G')` with `G` = [`shared_edge_k5_k4`].
pub fn removal_two_addition_one() -> (Graph, Graph) {
    let g = shared_edge_k5_k4();
    let mut edges: Vec<(&str, &str)> = clique_edges(&["a", "b", "c", "d", "e"])
        .into_iter()
        .chain(clique_edges(&["d", "e", "f", "g"]))
        .filter(|&e| e != ("a", "b") && e != ("f", "g"))
        .collect();
    edges.extend([("h", "a"), ("h", "f"), ("h", "g")]);
    (g, build(&["a", "b", "c", "d", "e", "f", "g", "h"], &edges))
}

/// K5 on `a..e` versus the same graph with every edge at `e` removed: one
/// covering vertex on the removal side, nothing added.
pub fn star_removal_pair() -> (Graph, Graph) {
    let g = build(&["a", "b", "c", "d", "e"], &clique_edges(&["a", "b", "c", "d", "e"]));
    let g_prime = build(&["a", "b", "c", "d", "e"], &clique_edges(&["a", "b", "c", "d"]));
    (g, g_prime)
}
