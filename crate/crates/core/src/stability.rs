//! Star numbers (RSN, ASN, TSN) and the check that they bound the
//! bottleneck distance between community trees.
//!
//! RSN and ASN are minimum vertex covers of the removed-edge and added-edge
//! graphs. Covers are solved exactly by branch and bound under a node
//! budget; past the budget the answer degrades to an interval.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::graph::{graph_delta, Graph, VertexId};
use crate::persistence::{bottleneck_distance, HalfInt};
use crate::{community_tree, Config};

/// Default branch-and-bound node budget for one cover computation.
pub const DEFAULT_MVC_BUDGET: u64 = 1_000_000;

/// An exact count, or an interval when the search budget ran out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StarValue {
    Exact(usize),
    Bounded { lower: usize, upper: usize },
}

impl StarValue {
    pub fn lower(self) -> usize {
        match self {
            StarValue::Exact(v) => v,
            StarValue::Bounded { lower, .. } => lower,
        }
    }

    pub fn upper(self) -> usize {
        match self {
            StarValue::Exact(v) => v,
            StarValue::Bounded { upper, .. } => upper,
        }
    }

    pub fn exact(self) -> Option<usize> {
        match self {
            StarValue::Exact(v) => Some(v),
            StarValue::Bounded { .. } => None,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, StarValue::Exact(_))
    }
}

impl std::ops::Add for StarValue {
    type Output = StarValue;
    fn add(self, rhs: StarValue) -> StarValue {
        match (self, rhs) {
            (StarValue::Exact(a), StarValue::Exact(b)) => StarValue::Exact(a + b),
            (a, b) => StarValue::Bounded {
                lower: a.lower() + b.lower(),
                upper: a.upper() + b.upper(),
            },
        }
    }
}

impl std::fmt::Display for StarValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StarValue::Exact(v) => write!(f, "{v}"),
            StarValue::Bounded { lower, upper } => write!(f, "[{lower}, {upper}]"),
        }
    }
}

/// Exact values serialize as a bare number, intervals as
/// `{"lower":..,"upper":..}`.
impl Serialize for StarValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            StarValue::Exact(v) => s.serialize_u64(v as u64),
            StarValue::Bounded { lower, upper } => {
                let mut st = s.serialize_struct("Bounded", 2)?;
                st.serialize_field("lower", &lower)?;
                st.serialize_field("upper", &upper)?;
                st.end()
            }
        }
    }
}

/// A vertex set touching every edge of the graph it was computed on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCertificate {
    pub vertices: Vec<VertexId>,
    pub covered_edge_count: usize,
}

impl CoverCertificate {
    /// True if every edge of `g` has an endpoint in the cover.
    pub fn covers(&self, g: &Graph) -> bool {
        g.edges()
            .all(|(u, v)| self.vertices.binary_search(&u).is_ok() || self.vertices.binary_search(&v).is_ok())
    }
}

/// Outcome of [`min_vertex_cover`]: the size (exact or bounded), the
/// smallest cover found, and the matching lower bound used for pruning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverResult {
    pub size: StarValue,
    pub cover: CoverCertificate,
    pub matching_lower_bound: usize,
    pub nodes_explored: u64,
}

/// Greedy maximal matching in ascending edge order.
fn greedy_matching(g: &Graph) -> Vec<(VertexId, VertexId)> {
    let mut used = vec![false; g.vertex_count()];
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        if !used[u as usize] && !used[v as usize] {
            used[u as usize] = true;
            used[v as usize] = true;
            out.push((u, v));
        }
    }
    out
}

enum Step {
    Took(VertexId),
    Dropped(VertexId),
}

struct Search<'a> {
    g: &'a Graph,
    alive: Vec<bool>,
    degree: Vec<usize>,
    log: Vec<Step>,
    cover: Vec<VertexId>,
    best: Vec<VertexId>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
    scratch: Vec<bool>,
}

impl Search<'_> {
    fn take(&mut self, v: VertexId) {
        self.alive[v as usize] = false;
        for &w in self.g.neighbors(v) {
            if self.alive[w as usize] {
                self.degree[w as usize] -= 1;
            }
        }
        self.cover.push(v);
        self.log.push(Step::Took(v));
    }

    fn drop_isolated(&mut self, v: VertexId) {
        self.alive[v as usize] = false;
        self.log.push(Step::Dropped(v));
    }

    fn undo_to(&mut self, mark: usize) {
        while self.log.len() > mark {
            match self.log.pop().expect("log is longer than mark") {
                Step::Took(v) => {
                    self.alive[v as usize] = true;
                    for &w in self.g.neighbors(v) {
                        if self.alive[w as usize] {
                            self.degree[w as usize] += 1;
                        }
                    }
                    self.cover.pop();
                }
                Step::Dropped(v) => self.alive[v as usize] = true,
            }
        }
    }

    /// Degree-0 vertices leave; a degree-1 vertex forces its neighbor into
    /// the cover. Repeats until nothing applies.
    fn reduce(&mut self) {
        let mut changed = true;
        while changed {
            changed = false;
            for v in self.g.vertices() {
                if !self.alive[v as usize] {
                    continue;
                }
                match self.degree[v as usize] {
                    0 => {
                        self.drop_isolated(v);
                        changed = true;
                    }
                    1 => {
                        let w = *self
                            .g
                            .neighbors(v)
                            .iter()
                            .find(|&&w| self.alive[w as usize])
                            .expect("degree-1 vertex has an alive neighbor");
                        self.take(w);
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
    }

    fn matching_bound(&mut self) -> usize {
        self.scratch.iter_mut().for_each(|x| *x = false);
        let mut size = 0;
        for v in self.g.vertices() {
            if !self.alive[v as usize] || self.scratch[v as usize] {
                continue;
            }
            if let Some(&w) = self
                .g
                .neighbors(v)
                .iter()
                .find(|&&w| w > v && self.alive[w as usize] && !self.scratch[w as usize])
            {
                self.scratch[v as usize] = true;
                self.scratch[w as usize] = true;
                size += 1;
            }
        }
        size
    }

    fn run(&mut self) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let mark = self.log.len();
        self.reduce();
        let pick = self
            .g
            .vertices()
            .filter(|&v| self.alive[v as usize])
            .max_by_key(|&v| (self.degree[v as usize], std::cmp::Reverse(v)));
        let Some(v) = pick else {
            if self.cover.len() < self.best.len() {
                self.best = self.cover.clone();
            }
            self.undo_to(mark);
            return;
        };
        if self.cover.len() + self.matching_bound() >= self.best.len() {
            self.undo_to(mark);
            return;
        }

        let branch = self.log.len();
        self.take(v);
        self.run();
        self.undo_to(branch);

        if !self.exhausted {
            let nbrs: Vec<VertexId> = self
                .g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| self.alive[w as usize])
                .collect();
            if self.cover.len() + nbrs.len() < self.best.len() {
                for w in nbrs {
                    self.take(w);
                }
                self.run();
            }
        }
        self.undo_to(mark);
    }
}

/// Minimum vertex cover by branch and bound.
///
/// Branches on a maximum-degree vertex (take it, or take all its
/// neighbors), applies degree-0/1 reductions at every node and prunes with
/// a greedy matching bound. The incumbent starts as the 2-approximation
/// (both endpoints of a greedy maximal matching). When more than `budget`
/// search nodes would be needed the result is the interval
/// `[matching bound, best cover found]`.
pub fn min_vertex_cover(g: &Graph, budget: u64) -> CoverResult {
    let matching = greedy_matching(g);
    let lower = matching.len();
    let mut approx: Vec<VertexId> = matching.iter().flat_map(|&(u, v)| [u, v]).collect();
    approx.sort_unstable();

    let mut search = Search {
        g,
        alive: vec![true; g.vertex_count()],
        degree: g.vertices().map(|v| g.degree(v)).collect(),
        log: Vec::new(),
        cover: Vec::new(),
        best: approx,
        nodes: 0,
        budget,
        exhausted: false,
        scratch: vec![false; g.vertex_count()],
    };
    // A cover matching the lower bound needs no search.
    if search.best.len() > lower {
        search.run();
    }
    let mut best = search.best;
    best.sort_unstable();
    let size = if search.exhausted {
        StarValue::Bounded {
            lower,
            upper: best.len(),
        }
    } else {
        StarValue::Exact(best.len())
    };
    CoverResult {
        size,
        cover: CoverCertificate {
            vertices: best,
            covered_edge_count: g.edge_count(),
        },
        matching_lower_bound: lower,
        nodes_explored: search.nodes,
    }
}

/// A star number with the labels of its covering vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarCover {
    pub value: StarValue,
    pub cover: Vec<String>,
}

fn star_cover(edge_graph: &Graph, budget: u64) -> StarCover {
    let result = min_vertex_cover(edge_graph, budget);
    let mut cover: Vec<String> = result
        .cover
        .vertices
        .iter()
        .map(|&v| edge_graph.label(v).to_owned())
        .collect();
    cover.sort();
    StarCover {
        value: result.size,
        cover,
    }
}

/// Removal star number: the fewest vertices touching every edge of
/// `E(g) \ E(g_prime)`.
pub fn rsn(g: &Graph, g_prime: &Graph, budget: u64) -> StarCover {
    star_cover(&graph_delta(g, g_prime).removal_graph(), budget)
}

/// Addition star number: the fewest vertices touching every edge of
/// `E(g_prime) \ E(g)`. Equals `rsn(g_prime, g)`.
pub fn asn(g: &Graph, g_prime: &Graph, budget: u64) -> StarCover {
    star_cover(&graph_delta(g, g_prime).addition_graph(), budget)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarNumbers {
    pub rsn: StarCover,
    pub asn: StarCover,
    pub tsn: StarValue,
}

impl StarNumbers {
    pub fn is_exact(&self) -> bool {
        self.tsn.is_exact()
    }
}

impl Serialize for StarNumbers {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("StarNumbers", 6)?;
        st.serialize_field("rsn", &self.rsn.value)?;
        st.serialize_field("asn", &self.asn.value)?;
        st.serialize_field("tsn", &self.tsn)?;
        st.serialize_field("exact", &self.is_exact())?;
        st.serialize_field("rsn_cover", &self.rsn.cover)?;
        st.serialize_field("asn_cover", &self.asn.cover)?;
        st.end()
    }
}

/// Total star number: RSN + ASN, interval-aware. Symmetric in its
/// arguments.
pub fn tsn(g: &Graph, g_prime: &Graph, budget: u64) -> StarNumbers {
    let delta = graph_delta(g, g_prime);
    let rsn = star_cover(&delta.removal_graph(), budget);
    let asn = star_cover(&delta.addition_graph(), budget);
    let tsn = rsn.value + asn.value;
    StarNumbers { rsn, asn, tsn }
}

/// Both sides of the stability bound for one graph pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub rsn: StarValue,
    pub asn: StarValue,
    pub tsn: StarValue,
    pub exact: bool,
    pub d_bottleneck: HalfInt,
    pub holds: bool,
    /// TSN (upper value when bounded) minus the bottleneck distance.
    pub slack: HalfInt,
}

/// Builds both community trees, their bottleneck distance and the TSN, and
/// checks `d_B <= TSN` against the TSN upper value.
pub fn verify_stability(g: &Graph, g_prime: &Graph, config: &Config) -> Result<StabilityReport, Error> {
    let t1 = community_tree(g, config)?;
    let t2 = community_tree(g_prime, config)?;
    let (distance, _) = bottleneck_distance(&t1.diagram(), &t2.diagram());
    let stars = tsn(g, g_prime, config.mvc_budget);
    let bound = HalfInt::from_int(stars.tsn.upper() as i64);
    Ok(StabilityReport {
        rsn: stars.rsn.value,
        asn: stars.asn.value,
        tsn: stars.tsn,
        exact: stars.is_exact(),
        d_bottleneck: distance,
        holds: distance <= bound,
        slack: bound - distance,
    })
}
