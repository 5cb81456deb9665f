//! k-clique communities at one order or at every order.
//!
//! Two independent routes produce the same communities:
//!
//! * the fast path thresholds the overlap structure of the maximal cliques
//!   (two maximal cliques of order `>= k` percolate when they share `>= k-1`
//!   vertices), so a single enumeration serves every order;
//! * the oracle path enumerates every k-clique and joins pairs sharing
//!   exactly `k-1` vertices, straight from the definition.
//!
//! Their agreement is checked by tests, not assumed.

use std::collections::HashMap;

use crate::clique::{self, is_sorted_subset, Clique};
use crate::error::CliqueError;
use crate::graph::{Edge, Graph, VertexId};
use crate::par::{self, Execution};
use crate::unionfind::DisjointSets;
use crate::Config;

/// A community: the union of its member cliques at a given order.
///
/// On the oracle path members are the k-cliques themselves; on the fast
/// path they are the maximal cliques of order `>= k` that percolate
/// together. Vertex and edge sets are derived from the members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Community {
    order: usize,
    members: Vec<Clique>,
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
}

impl Community {
    pub fn from_members(order: usize, mut members: Vec<Clique>) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut vertices: Vec<VertexId> = members.iter().flat_map(|c| c.vertices().iter().copied()).collect();
        vertices.sort_unstable();
        vertices.dedup();
        let mut edges = Vec::new();
        for c in &members {
            let vs = c.vertices();
            for (i, &u) in vs.iter().enumerate() {
                edges.extend(vs[i + 1..].iter().map(|&v| (u, v)));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Community {
            order,
            members,
            vertices,
            edges,
        }
    }

    /// The order-1 community: the whole graph, connected or not.
    pub fn whole_graph(g: &Graph) -> Self {
        Community {
            order: 1,
            members: g.vertices().map(|v| Clique::new(vec![v])).collect(),
            vertices: g.vertices().collect(),
            edges: g.edges().collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn members(&self) -> &[Clique] {
        &self.members
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of vertices.
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn min_vertex(&self) -> Option<VertexId> {
        self.vertices.first().copied()
    }

    /// True if some member clique contains every vertex of `clique`.
    pub fn has_member_containing(&self, clique: &Clique) -> bool {
        self.members.iter().any(|m| clique.is_subset_of(m))
    }

    /// Vertex-set and edge-set inclusion.
    pub fn is_subgraph_of(&self, other: &Community) -> bool {
        is_sorted_subset(&self.vertices, &other.vertices) && is_sorted_subset(&self.edges, &other.edges)
    }

    /// Same vertex and edge sets, whatever the member cliques.
    pub fn same_subgraph(&self, other: &Community) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }

    fn sort_key(&self) -> (Option<VertexId>, usize, &[VertexId], &[Edge]) {
        (self.min_vertex(), self.size(), &self.vertices, &self.edges)
    }
}

/// All communities of one order, sorted by (smallest vertex id, size,
/// vertex list, edge list).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommunitySlice {
    pub order: usize,
    pub communities: Vec<Community>,
}

impl CommunitySlice {
    pub fn new(order: usize, mut communities: Vec<Community>) -> Self {
        communities.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        CommunitySlice { order, communities }
    }

    pub fn len(&self) -> usize {
        self.communities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.communities.is_empty()
    }

    /// (vertex set, edge set) of every community, in slice order.
    pub fn subgraphs(&self) -> Vec<(Vec<VertexId>, Vec<Edge>)> {
        self.communities
            .iter()
            .map(|c| (c.vertices.clone(), c.edges.clone()))
            .collect()
    }
}

fn check_order(k: usize) -> Result<(), CliqueError> {
    if k < 2 {
        return Err(CliqueError::InvalidOrder { min: 2, got: k });
    }
    Ok(())
}

/// Communities at order `k` straight from the definition: every k-clique,
/// joined pairwise when two share exactly `k-1` vertices.
pub fn k_communities_oracle(g: &Graph, k: usize, cap: usize) -> Result<CommunitySlice, CliqueError> {
    check_order(k)?;
    let cliques = clique::k_cliques(g, k, cap)?;
    let mut sets = DisjointSets::new(cliques.len());
    for i in 0..cliques.len() {
        for j in i + 1..cliques.len() {
            if cliques[i].overlap(&cliques[j]) == k - 1 {
                sets.union(i, j);
            }
        }
    }
    let communities = sets
        .groups(|_| true)
        .into_iter()
        .map(|group| Community::from_members(k, group.into_iter().map(|i| cliques[i].clone()).collect()))
        .collect();
    Ok(CommunitySlice::new(k, communities))
}

/// Pairwise overlaps between maximal cliques, computed once and
/// thresholded per order.
#[derive(Debug, Clone)]
pub struct OverlapIndex<'a> {
    cliques: &'a [Clique],
    /// `(i, j, |C_i ∩ C_j|)` for every pair `i < j` sharing a vertex.
    pairs: Vec<(usize, usize, usize)>,
}

impl<'a> OverlapIndex<'a> {
    pub fn new(cliques: &'a [Clique]) -> Self {
        Self::with_execution(cliques, Execution::Sequential)
    }

    /// Builds the index with rows computed under `execution`.
    pub fn with_execution(cliques: &'a [Clique], execution: Execution) -> Self {
        let mut by_vertex: HashMap<VertexId, Vec<usize>> = HashMap::new();
        for (i, c) in cliques.iter().enumerate() {
            for &v in c.vertices() {
                by_vertex.entry(v).or_default().push(i);
            }
        }
        let rows = par::map_range(execution, cliques.len(), |i| {
            let mut shared: HashMap<usize, usize> = HashMap::new();
            for v in cliques[i].vertices() {
                for &j in &by_vertex[v] {
                    if j > i {
                        *shared.entry(j).or_default() += 1;
                    }
                }
            }
            let mut row: Vec<(usize, usize, usize)> = shared.into_iter().map(|(j, n)| (i, j, n)).collect();
            row.sort_unstable();
            row
        });
        OverlapIndex {
            cliques,
            pairs: rows.into_iter().flatten().collect(),
        }
    }

    pub fn cliques(&self) -> &'a [Clique] {
        self.cliques
    }

    pub fn max_order(&self) -> usize {
        self.cliques.iter().map(Clique::order).max().unwrap_or(0)
    }

    /// Communities at order `k >= 2`.
    pub fn slice(&self, k: usize) -> Result<CommunitySlice, CliqueError> {
        check_order(k)?;
        let eligible = |i: usize| self.cliques[i].order() >= k;
        let mut sets = DisjointSets::new(self.cliques.len());
        for &(i, j, shared) in &self.pairs {
            if shared + 1 >= k && eligible(i) && eligible(j) {
                sets.union(i, j);
            }
        }
        let communities = sets
            .groups(eligible)
            .into_iter()
            .map(|group| Community::from_members(k, group.into_iter().map(|i| self.cliques[i].clone()).collect()))
            .collect();
        Ok(CommunitySlice::new(k, communities))
    }
}

/// Communities at order `k >= 2` via the maximal-clique overlap path.
/// `maximal` must be the output of [`clique::maximal_cliques`] for `g`.
pub fn k_communities(g: &Graph, k: usize, maximal: &[Clique]) -> Result<CommunitySlice, CliqueError> {
    let _ = g;
    OverlapIndex::new(maximal).slice(k)
}

/// Slices for every order `1..=max_clique_order(g)` (just the order-1 slice
/// for an edgeless or empty graph). Maximal cliques are enumerated once.
pub fn all_communities(g: &Graph, config: &Config) -> Result<Vec<CommunitySlice>, CliqueError> {
    let maximal = clique::maximal_cliques_with(g, config.clique_cap, config.execution)?;
    let index = OverlapIndex::with_execution(&maximal, config.execution);
    let top = index.max_order().max(1);
    let orders: Vec<usize> = (2..=top).collect();
    let mut slices = vec![CommunitySlice::new(1, vec![Community::whole_graph(g)])];
    for slice in par::map(config.execution, &orders, |&k| index.slice(k)) {
        slices.push(slice?);
    }
    Ok(slices)
}

/// [`all_communities`] built on the brute-force oracle for every order.
pub fn all_communities_oracle(g: &Graph, cap: usize) -> Result<Vec<CommunitySlice>, CliqueError> {
    let top = clique::max_clique_order(g).max(1);
    let mut slices = vec![CommunitySlice::new(1, vec![Community::whole_graph(g)])];
    for k in 2..=top {
        slices.push(k_communities_oracle(g, k, cap)?);
    }
    Ok(slices)
}

/// Runs [`all_communities`] under an explicit execution mode with the
/// default cap.
pub fn all_communities_with(g: &Graph, execution: Execution) -> Result<Vec<CommunitySlice>, CliqueError> {
    all_communities(
        g,
        &Config {
            execution,
            ..Config::default()
        },
    )
}
