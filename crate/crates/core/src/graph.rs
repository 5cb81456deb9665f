//! Immutable simple undirected graphs with interned vertex labels.
//!
//! Every algorithm in the crate works on dense [`VertexId`]s; labels only
//! matter at the edges of the system (file ingestion, exports, and aligning
//! two graphs whose vertex sets differ).

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Dense vertex identifier in `[0, vertex_count)`.
pub type VertexId = u32;

/// An undirected edge stored with `u < v`.
pub type Edge = (VertexId, VertexId);

/// Undirected simple graph. Built once, never mutated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
    adjacency: Vec<Vec<VertexId>>,
    edge_count: usize,
}

#[derive(Default)]
struct GraphBuilder {
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
}

impl GraphBuilder {
    fn intern(&mut self, label: &str) -> Result<VertexId, GraphError> {
        if label.is_empty() {
            return Err(GraphError::EmptyLabel);
        }
        if let Some(&id) = self.index.get(label) {
            return Ok(id);
        }
        let id = VertexId::try_from(self.labels.len()).expect("vertex count exceeds u32 range");
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        Ok(id)
    }

    fn add_edge(&mut self, a: &str, b: &str) -> Result<(), GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a.to_owned()));
        }
        let u = self.intern(a)?;
        let v = self.intern(b)?;
        self.edges.push((u.min(v), u.max(v)));
        Ok(())
    }

    fn finish(mut self) -> Graph {
        self.edges.sort_unstable();
        self.edges.dedup();
        let mut adjacency = vec![Vec::new(); self.labels.len()];
        for &(u, v) in &self.edges {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            labels: self.labels,
            index: self.index,
            adjacency,
            edge_count: self.edges.len(),
        }
    }
}

impl Graph {
    /// Builds a graph from labelled edges plus optional extra (possibly
    /// isolated) vertices. Vertex ids follow first appearance, edges first.
    ///
    /// Duplicate and reversed edges collapse; self-loops are rejected.
    pub fn build<S: AsRef<str>>(edges: &[(S, S)], extra_vertices: &[S]) -> Result<Self, GraphError> {
        let mut builder = GraphBuilder::default();
        for (a, b) in edges {
            builder.add_edge(a.as_ref(), b.as_ref())?;
        }
        for label in extra_vertices {
            builder.intern(label.as_ref())?;
        }
        Ok(builder.finish())
    }

    /// Like [`Graph::build`] but interns `vertices` first, so ids follow
    /// their order. Edge endpoints missing from `vertices` are appended.
    pub fn from_vertices_and_edges<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self, GraphError> {
        let mut builder = GraphBuilder::default();
        for label in vertices {
            builder.intern(label.as_ref())?;
        }
        for (a, b) in edges {
            builder.add_edge(a.as_ref(), b.as_ref())?;
        }
        Ok(builder.finish())
    }

    /// Graph with no vertices.
    pub fn empty() -> Self {
        GraphBuilder::default().finish()
    }

    /// Complete graph on the given labels.
    pub fn complete<S: AsRef<str>>(labels: &[S]) -> Result<Self, GraphError> {
        let mut builder = GraphBuilder::default();
        for l in labels {
            builder.intern(l.as_ref())?;
        }
        for (i, a) in labels.iter().enumerate() {
            for b in &labels[i + 1..] {
                builder.add_edge(a.as_ref(), b.as_ref())?;
            }
        }
        Ok(builder.finish())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_id(&self, label: &str) -> Option<VertexId> {
        self.index.get(label).copied()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.labels.len() as VertexId
    }

    /// All edges as `(u, v)` with `u < v`, in ascending id order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let u = u as VertexId;
            list.iter().filter(move |&&v| v > u).map(move |&v| (u, v))
        })
    }

    /// Edges as label pairs, each pair ordered and the list sorted
    /// lexicographically.
    pub fn label_edges(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = self
            .edges()
            .map(|(u, v)| {
                let (a, b) = (self.label(u), self.label(v));
                if a <= b {
                    (a.to_owned(), b.to_owned())
                } else {
                    (b.to_owned(), a.to_owned())
                }
            })
            .collect();
        out.sort();
        out
    }

    /// Induced subgraph on every vertex for which `keep` returns true.
    /// Surviving vertices keep their relative id order.
    pub fn induced_subgraph<F: Fn(VertexId) -> bool>(&self, keep: F) -> Graph {
        let mut builder = GraphBuilder::default();
        for v in self.vertices().filter(|&v| keep(v)) {
            builder.intern(self.label(v)).expect("existing labels are non-empty");
        }
        for (u, v) in self.edges() {
            if keep(u) && keep(v) {
                builder
                    .add_edge(self.label(u), self.label(v))
                    .expect("existing edges are valid");
            }
        }
        builder.finish()
    }

    /// Induced subgraph on `V \ {label}`.
    pub fn remove_vertex(&self, label: &str) -> Result<Graph, GraphError> {
        let gone = self
            .vertex_id(label)
            .ok_or_else(|| GraphError::UnknownVertex(label.to_owned()))?;
        Ok(self.induced_subgraph(|v| v != gone))
    }

    /// Canonical JSON dump: `{"vertices":[...],"edges":[[a,b],...]}` with
    /// vertices in id order and edges sorted lexicographically by label.
    pub fn to_json(&self) -> String {
        let dump = GraphDump {
            vertices: self.labels.clone(),
            edges: self.label_edges().into_iter().map(|(a, b)| [a, b]).collect(),
        };
        serde_json::to_string(&dump).expect("graph dump serializes")
    }

    /// Parses the canonical JSON dump produced by [`Graph::to_json`].
    pub fn from_json(text: &str) -> Result<Graph, GraphError> {
        let dump: GraphDump = serde_json::from_str(text).map_err(|e| GraphError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let mut builder = GraphBuilder::default();
        for label in &dump.vertices {
            builder.intern(label)?;
        }
        for [a, b] in &dump.edges {
            builder.add_edge(a, b)?;
        }
        Ok(builder.finish())
    }

    /// Whitespace-separated edge list, one edge per line, followed by `#`
    /// comment lines naming isolated vertices (which an edge list cannot
    /// otherwise express).
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (a, b) in self.label_edges() {
            out.push_str(&a);
            out.push(' ');
            out.push_str(&b);
            out.push('\n');
        }
        for v in self.vertices().filter(|&v| self.degree(v) == 0) {
            out.push_str("# isolated ");
            out.push_str(self.label(v));
            out.push('\n');
        }
        out
    }

    /// Edge set keyed by labels; two graphs are equal up to id assignment
    /// iff their label sets and label edge sets match.
    pub fn label_edge_set(&self) -> BTreeSet<(String, String)> {
        self.label_edges().into_iter().collect()
    }
}

#[derive(Serialize, Deserialize)]
struct GraphDump {
    vertices: Vec<String>,
    edges: Vec<[String; 2]>,
}

/// Edge difference between two graphs over the union of their labels.
///
/// Ids in `removed` and `added` refer to [`GraphDelta::labels`]: the labels
/// of `G` in id order, followed by labels only present in `G'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDelta {
    pub labels: Vec<String>,
    /// `E(G) \ E(G')`
    pub removed: Vec<Edge>,
    /// `E(G') \ E(G)`
    pub added: Vec<Edge>,
}

impl GraphDelta {
    pub fn between(g: &Graph, g_prime: &Graph) -> GraphDelta {
        let mut labels = g.labels.clone();
        let mut to_union: Vec<VertexId> = Vec::with_capacity(g_prime.vertex_count());
        for label in &g_prime.labels {
            let id = match g.vertex_id(label) {
                Some(id) => id,
                None => {
                    labels.push(label.clone());
                    (labels.len() - 1) as VertexId
                }
            };
            to_union.push(id);
        }
        let first: BTreeSet<Edge> = g.edges().collect();
        let second: BTreeSet<Edge> = g_prime
            .edges()
            .map(|(u, v)| {
                let (a, b) = (to_union[u as usize], to_union[v as usize]);
                (a.min(b), a.max(b))
            })
            .collect();
        GraphDelta {
            labels,
            removed: first.difference(&second).copied().collect(),
            added: second.difference(&first).copied().collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.removed.is_empty() && self.added.is_empty()
    }

    /// Graph on the endpoints of the removed edges.
    pub fn removal_graph(&self) -> Graph {
        self.edge_graph(&self.removed)
    }

    /// Graph on the endpoints of the added edges.
    pub fn addition_graph(&self) -> Graph {
        self.edge_graph(&self.added)
    }

    pub fn removed_labels(&self) -> Vec<(String, String)> {
        self.label_pairs(&self.removed)
    }

    pub fn added_labels(&self) -> Vec<(String, String)> {
        self.label_pairs(&self.added)
    }

    /// Label pairs ordered within each pair, sorted.
    fn label_pairs(&self, edges: &[Edge]) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (&self.labels[u as usize], &self.labels[v as usize]);
                (a.min(b).clone(), a.max(b).clone())
            })
            .collect();
        out.sort();
        out
    }

    fn edge_graph(&self, edges: &[Edge]) -> Graph {
        let pairs: Vec<(&str, &str)> = edges
            .iter()
            .map(|&(u, v)| (self.labels[u as usize].as_str(), self.labels[v as usize].as_str()))
            .collect();
        Graph::build::<&str>(&pairs, &[]).expect("delta edges come from simple graphs")
    }
}

/// Shorthand for [`GraphDelta::between`].
pub fn graph_delta(g: &Graph, g_prime: &Graph) -> GraphDelta {
    GraphDelta::between(g, g_prime)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(edges: &[(&str, &str)]) -> Graph {
        Graph::build(edges, &[]).unwrap()
    }

    #[test]
    fn triangle() {
        let t = g(&[("a", "b"), ("b", "c"), ("a", "c")]);
        assert_eq!(t.vertex_count(), 3);
        assert_eq!(t.edge_count(), 3);
        assert!(t.has_edge(0, 2));
        assert_eq!(t.neighbors(1), &[0, 2]);
    }

    #[test]
    fn isolated_only() {
        let x = Graph::build::<&str>(&[], &["x"]).unwrap();
        assert_eq!((x.vertex_count(), x.edge_count()), (1, 0));
    }

    #[test]
    fn duplicates_collapse() {
        let d = g(&[("a", "b"), ("b", "a"), ("a", "b")]);
        assert_eq!((d.vertex_count(), d.edge_count()), (2, 1));
    }

    #[test]
    fn self_loop_rejected() {
        assert_eq!(
            Graph::build(&[("a", "b"), ("c", "c")], &[]),
            Err(GraphError::SelfLoop("c".into()))
        );
        assert_eq!(Graph::build(&[("", "b")], &[]), Err(GraphError::EmptyLabel));
    }

    #[test]
    fn delta_cases() {
        let tri = g(&[("a", "b"), ("b", "c"), ("a", "c")]);
        assert!(graph_delta(&tri, &tri).is_empty());

        let path = g(&[("a", "b"), ("b", "c")]);
        let edge = g(&[("a", "b")]);
        let d = graph_delta(&path, &edge);
        assert_eq!(d.removed_labels(), vec![("b".to_string(), "c".to_string())]);
        assert!(d.added.is_empty());

        let k4 = Graph::complete(&["a", "b", "c", "d"]).unwrap();
        let k4_minus = g(&[("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]);
        let d = graph_delta(&k4_minus, &k4);
        assert!(d.removed.is_empty());
        assert_eq!(d.added_labels(), vec![("c".to_string(), "d".to_string())]);
    }

    #[test]
    fn delta_over_union_labels() {
        let a = g(&[("a", "b")]);
        let b = g(&[("a", "z")]);
        let d = graph_delta(&a, &b);
        assert_eq!(d.labels, vec!["a", "b", "z"]);
        assert_eq!(d.removed, vec![(0, 1)]);
        assert_eq!(d.added, vec![(0, 2)]);
    }

    #[test]
    fn vertex_removal() {
        let tri = g(&[("a", "b"), ("b", "c"), ("a", "c")]);
        let e = tri.remove_vertex("c").unwrap();
        assert_eq!((e.vertex_count(), e.edge_count()), (2, 1));

        let k5 = Graph::complete(&["a", "b", "c", "d", "e"]).unwrap();
        let k4 = k5.remove_vertex("a").unwrap();
        assert_eq!(
            k4.label_edge_set(),
            Graph::complete(&["b", "c", "d", "e"]).unwrap().label_edge_set()
        );

        let star = g(&[("c", "1"), ("c", "2"), ("c", "3"), ("c", "4"), ("c", "5")]);
        let leaves = star.remove_vertex("c").unwrap();
        assert_eq!((leaves.vertex_count(), leaves.edge_count()), (5, 0));

        assert_eq!(tri.remove_vertex("q"), Err(GraphError::UnknownVertex("q".into())));
    }

    #[test]
    fn json_dump_is_canonical() {
        let p = g(&[("b", "c"), ("b", "a")]);
        assert_eq!(
            p.to_json(),
            r#"{"vertices":["b","c","a"],"edges":[["a","b"],["b","c"]]}"#
        );
        let back = Graph::from_json(&p.to_json()).unwrap();
        assert_eq!(back, p);
    }
}
