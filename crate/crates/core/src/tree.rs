//! Community trees, their elder-rule components and persistence diagrams.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::clique::Clique;
use crate::cpm::{Community, CommunitySlice};
use crate::error::TreeError;
use crate::graph::Graph;

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub id: NodeId,
    pub order: usize,
    pub community: Community,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
}

/// One node per (order, community); each order-k node hangs off the unique
/// order-(k-1) community containing it. Node ids follow the slices: the
/// root is 0 and ids grow with order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommunityTree {
    nodes: Vec<TreeNode>,
    root: NodeId,
}

impl CommunityTree {
    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &TreeNode {
        &self.nodes[id]
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn leaves(&self) -> impl Iterator<Item = &TreeNode> {
        self.nodes.iter().filter(|n| n.children.is_empty())
    }

    /// Highest order present in the tree.
    pub fn max_order(&self) -> usize {
        self.nodes.iter().map(|n| n.order).max().unwrap_or(0)
    }

    pub fn components(&self) -> Vec<Component> {
        components(self)
    }

    pub fn diagram(&self) -> PersistenceDiagram {
        persistence_diagram(&self.components())
    }
}

fn inconsistent(msg: impl Into<String>) -> TreeError {
    TreeError::Inconsistent(msg.into())
}

/// Links every community to its parent one order down.
///
/// The parent is located through one (k-1)-sub-clique of the community's
/// first member clique: exactly one (k-1)-community may hold a member
/// containing it.
pub fn build_tree(slices: &[CommunitySlice]) -> Result<CommunityTree, TreeError> {
    let first = slices.first().ok_or_else(|| inconsistent("no slices"))?;
    if first.order != 1 || first.len() != 1 {
        return Err(inconsistent("the order-1 slice must hold exactly the whole graph"));
    }
    for (i, s) in slices.iter().enumerate() {
        if s.order != i + 1 {
            return Err(inconsistent(format!(
                "slice {i} has order {}, expected {}",
                s.order,
                i + 1
            )));
        }
    }

    let mut nodes: Vec<TreeNode> = Vec::new();
    let mut level_start = Vec::with_capacity(slices.len());
    for slice in slices {
        level_start.push(nodes.len());
        for community in &slice.communities {
            if community.order() != slice.order {
                return Err(inconsistent("community order differs from its slice"));
            }
            nodes.push(TreeNode {
                id: nodes.len(),
                order: slice.order,
                community: community.clone(),
                parent: None,
                children: Vec::new(),
            });
        }
    }

    for (level, slice) in slices.iter().enumerate().skip(1) {
        let k = slice.order;
        let below = &slices[level - 1];
        for (offset, community) in slice.communities.iter().enumerate() {
            let id = level_start[level] + offset;
            let probe = community
                .members()
                .first()
                .ok_or_else(|| inconsistent(format!("empty community at order {k}")))?;
            let sub = Clique::new(probe.vertices()[..k - 1].to_vec());
            let mut hits = below
                .communities
                .iter()
                .enumerate()
                .filter(|(_, c)| c.has_member_containing(&sub))
                .map(|(j, _)| j);
            let parent_offset = match (hits.next(), hits.next()) {
                (Some(j), None) => j,
                (None, _) => return Err(inconsistent(format!("no parent for node {id} at order {k}"))),
                (Some(_), Some(_)) => return Err(inconsistent(format!("several parents for node {id} at order {k}"))),
            };
            if !community.is_subgraph_of(&below.communities[parent_offset]) {
                return Err(inconsistent(format!("node {id} is not contained in its parent")));
            }
            let parent = level_start[level - 1] + parent_offset;
            nodes[id].parent = Some(parent);
            nodes[parent].children.push(id);
        }
    }
    Ok(CommunityTree { nodes, root: 0 })
}

/// A leaf-to-merge chain of nested communities.
///
/// `chain` runs from the leaf down to the node where the component dies
/// (its order equals `death`), or down to the root for the survivor, whose
/// death is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub leaf: NodeId,
    pub chain: Vec<NodeId>,
    pub birth: usize,
    pub death: usize,
}

impl Component {
    pub fn persistence(&self) -> usize {
        self.birth - self.death
    }
}

/// Elder-rule decomposition of the tree into one component per leaf.
///
/// At every node with several children the component with the highest
/// birth survives; the others die at that node's order. Equal births go to
/// the component whose leaf community has the smallest vertex id, then the
/// smallest vertex list. The component reaching the root dies at 1.
/// Components are returned in leaf-id order.
pub fn components(tree: &CommunityTree) -> Vec<Component> {
    let mut comps: Vec<Component> = Vec::new();
    let mut alive: Vec<usize> = vec![usize::MAX; tree.len()];
    // Children always have larger ids than their parent.
    for node in tree.nodes.iter().rev() {
        if node.children.is_empty() {
            alive[node.id] = comps.len();
            comps.push(Component {
                leaf: node.id,
                chain: vec![node.id],
                birth: node.order,
                death: 0,
            });
            continue;
        }
        let mut incoming: Vec<usize> = node.children.iter().map(|&c| alive[c]).collect();
        incoming.sort_by(|&a, &b| {
            let (ca, cb) = (&comps[a], &comps[b]);
            let (la, lb) = (&tree.nodes[ca.leaf].community, &tree.nodes[cb.leaf].community);
            cb.birth
                .cmp(&ca.birth)
                .then_with(|| la.min_vertex().cmp(&lb.min_vertex()))
                .then_with(|| la.vertices().cmp(lb.vertices()))
                .then_with(|| ca.leaf.cmp(&cb.leaf))
        });
        for &c in &incoming {
            comps[c].chain.push(node.id);
        }
        for &c in &incoming[1..] {
            comps[c].death = node.order;
        }
        alive[node.id] = incoming[0];
    }
    if let Some(&survivor) = alive.get(tree.root) {
        comps[survivor].death = 1;
    }
    comps.sort_by_key(|c| c.leaf);
    comps
}

/// A diagram point with multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DiagramPoint {
    pub death: u32,
    pub birth: u32,
    pub mult: u32,
}

/// Multiset of `(death, birth)` points; the diagonal is implicit.
/// Points are kept sorted by `(death, birth)` with merged multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PersistenceDiagram {
    points: Vec<DiagramPoint>,
}

impl PersistenceDiagram {
    /// Builds a diagram from `(death, birth)` pairs, one per component.
    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut counts: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for p in pairs {
            *counts.entry(p).or_default() += 1;
        }
        PersistenceDiagram {
            points: counts
                .into_iter()
                .map(|((death, birth), mult)| DiagramPoint { death, birth, mult })
                .collect(),
        }
    }

    pub fn points(&self) -> &[DiagramPoint] {
        &self.points
    }

    /// Every point repeated by its multiplicity.
    pub fn expanded(&self) -> Vec<(u32, u32)> {
        self.points
            .iter()
            .flat_map(|p| std::iter::repeat_n((p.death, p.birth), p.mult as usize))
            .collect()
    }

    /// Number of points counted with multiplicity.
    pub fn total(&self) -> usize {
        self.points.iter().map(|p| p.mult as usize).sum()
    }

    /// `{"points":[{"death":d,"birth":b,"mult":m},...]}`
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        let raw: PersistenceDiagram = serde_json::from_str(text)?;
        Ok(PersistenceDiagram::from_pairs(raw.expanded()))
    }

    /// Plain-text table, one row per distinct point.
    pub fn to_table(&self) -> String {
        let mut out = String::from("death\tbirth\tmult\tpersistence\n");
        for p in &self.points {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}",
                p.death,
                p.birth,
                p.mult,
                p.birth.saturating_sub(p.death)
            );
        }
        out
    }
}

pub fn persistence_diagram(components: &[Component]) -> PersistenceDiagram {
    PersistenceDiagram::from_pairs(components.iter().map(|c| (c.death as u32, c.birth as u32)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportNode {
    pub id: NodeId,
    pub order: usize,
    pub size: usize,
    pub vertices: Vec<String>,
}

/// JSON shape of an exported tree; `edges` hold `[child, parent]` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeExport {
    pub nodes: Vec<ExportNode>,
    pub edges: Vec<[NodeId; 2]>,
    pub root: NodeId,
}

impl TreeExport {
    pub fn new(tree: &CommunityTree, graph: &Graph) -> Self {
        TreeExport {
            nodes: tree
                .nodes
                .iter()
                .map(|n| ExportNode {
                    id: n.id,
                    order: n.order,
                    size: n.community.size(),
                    vertices: n
                        .community
                        .vertices()
                        .iter()
                        .map(|&v| graph.label(v).to_owned())
                        .collect(),
                })
                .collect(),
            edges: tree.nodes.iter().filter_map(|n| n.parent.map(|p| [n.id, p])).collect(),
            root: tree.root,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tree export serializes")
    }

    /// `digraph { "k=5|{a,b,c,d,e}" -> "k=4|{a,b,c,d,e}"; ... }` with one
    /// attribute line per node. Names that would collide get a `#id`
    /// suffix.
    pub fn to_dot(&self) -> String {
        let base: Vec<String> = self
            .nodes
            .iter()
            .map(|n| format!("k={}|{{{}}}", n.order, n.vertices.join(",")))
            .collect();
        let mut seen: HashMap<&str, usize> = HashMap::new();
        for name in &base {
            *seen.entry(name.as_str()).or_default() += 1;
        }
        let names: Vec<String> = base
            .iter()
            .zip(&self.nodes)
            .map(|(name, n)| {
                let name = if seen[name.as_str()] > 1 {
                    format!("{name}#{}", n.id)
                } else {
                    name.clone()
                };
                format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
            })
            .collect();
        let mut out = String::from("digraph {\n");
        for (n, name) in self.nodes.iter().zip(&names) {
            let _ = writeln!(out, "  {name} [order={}, size={}];", n.order, n.size);
        }
        for [child, parent] in &self.edges {
            let _ = writeln!(out, "  {} -> {};", names[*child], names[*parent]);
        }
        out.push_str("}\n");
        out
    }
}

pub fn export_tree(tree: &CommunityTree, graph: &Graph, format: ExportFormat) -> String {
    let export = TreeExport::new(tree, graph);
    match format {
        ExportFormat::Dot => export.to_dot(),
        ExportFormat::Json => export.to_json(),
    }
}
