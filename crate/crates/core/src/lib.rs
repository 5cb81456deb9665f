//! Community trees of undirected networks built from clique percolation at
//! every order, their persistence diagrams, bottleneck distances between
//! them, and the star numbers that bound those distances.
//!
//! ```
//! use comtree::{community_tree, fixtures, Config};
//!
//! let g = fixtures::shared_edge_k5_k4();
//! let tree = community_tree(&g, &Config::default()).unwrap();
//! assert_eq!(tree.diagram().expanded(), vec![(1, 5), (3, 4)]);
//! ```

pub mod clique;
pub mod cpm;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod harness;
pub mod io;
pub mod par;
pub mod persistence;
pub mod stability;
pub mod tree;
pub mod unionfind;

pub use clique::{max_clique_order, maximal_cliques, Clique, DEFAULT_CLIQUE_CAP};
pub use cpm::{all_communities, k_communities, k_communities_oracle, Community, CommunitySlice};
pub use error::{CliqueError, Error, GraphError, Result, TreeError};
pub use graph::{graph_delta, Graph, GraphDelta, VertexId};
pub use par::Execution;
pub use persistence::{bottleneck_distance, tree_distance, HalfInt, Matching};
pub use stability::{
    min_vertex_cover, tsn, verify_stability, StabilityReport, StarNumbers, StarValue, DEFAULT_MVC_BUDGET,
};
pub use tree::{build_tree, export_tree, CommunityTree, Component, ExportFormat, PersistenceDiagram};

/// Limits and execution mode shared by the pipeline stages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    /// Maximum number of cliques a single enumeration may produce.
    pub clique_cap: usize,
    /// Branch-and-bound node budget per vertex cover.
    pub mvc_budget: u64,
    pub execution: Execution,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            clique_cap: DEFAULT_CLIQUE_CAP,
            mvc_budget: DEFAULT_MVC_BUDGET,
            execution: Execution::default(),
        }
    }
}

/// Graph to community tree: every slice via the fast path, then the tree.
pub fn community_tree(g: &Graph, config: &Config) -> Result<CommunityTree> {
    let slices = all_communities(g, config)?;
    Ok(build_tree(&slices)?)
}
