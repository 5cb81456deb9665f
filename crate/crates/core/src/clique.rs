//! Clique enumeration: maximal cliques for the percolation fast path and
//! fixed-order cliques for the brute-force oracle.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::CliqueError;
use crate::graph::{Graph, VertexId};
use crate::par::{self, Execution};

/// Default cap on the number of cliques any single enumeration may produce.
pub const DEFAULT_CLIQUE_CAP: usize = 1_000_000;

/// A clique as a sorted, duplicate-free list of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clique(Vec<VertexId>);

impl Clique {
    /// Wraps `vertices`, sorting and deduplicating them. Does not check
    /// adjacency; see [`Clique::is_clique_in`].
    pub fn new(mut vertices: Vec<VertexId>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Clique(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn is_clique_in(&self, g: &Graph) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, &u)| self.0[i + 1..].iter().all(|&v| g.has_edge(u, v)))
    }

    /// True if every vertex of `self` is in `other`.
    pub fn is_subset_of(&self, other: &Clique) -> bool {
        is_sorted_subset(&self.0, &other.0)
    }

    /// Size of the vertex intersection with `other`.
    pub fn overlap(&self, other: &Clique) -> usize {
        intersection_size(&self.0, &other.0)
    }
}

pub(crate) fn is_sorted_subset<T: Ord>(small: &[T], large: &[T]) -> bool {
    let mut it = large.iter();
    small.iter().all(|x| it.by_ref().any(|y| y == x))
}

pub(crate) fn intersection_size(a: &[VertexId], b: &[VertexId]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

fn intersect(a: &[VertexId], b: &[VertexId]) -> Vec<VertexId> {
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Degeneracy ordering by repeated minimum-degree removal (bucket queue).
pub fn degeneracy_order(g: &Graph) -> Vec<VertexId> {
    let n = g.vertex_count();
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let max_deg = degree.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<VertexId>> = vec![Vec::new(); max_deg + 1];
    for v in g.vertices().rev() {
        buckets[degree[v as usize]].push(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut low = 0;
    while order.len() < n {
        low = low.min(max_deg);
        let v = loop {
            match buckets[low].pop() {
                // stale entries are skipped
                Some(v) if !removed[v as usize] && degree[v as usize] == low => break v,
                Some(_) => {}
                None => low += 1,
            }
        };
        removed[v as usize] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w as usize] {
                degree[w as usize] -= 1;
                buckets[degree[w as usize]].push(w);
                low = low.min(degree[w as usize]);
            }
        }
    }
    order
}

struct Enumerator<'a> {
    graph: &'a Graph,
    cap: usize,
    produced: &'a AtomicUsize,
}

impl Enumerator<'_> {
    fn record(&self, out: &mut Vec<Clique>, clique: Vec<VertexId>) -> Result<(), CliqueError> {
        if self.produced.fetch_add(1, Ordering::Relaxed) >= self.cap {
            return Err(CliqueError::ResourceLimit { cap: self.cap });
        }
        out.push(Clique::new(clique));
        Ok(())
    }

    /// Pivoted expansion: `r` is the current clique, `p` the candidates,
    /// `x` the already-explored vertices. All sets are sorted.
    fn expand(
        &self,
        r: &mut Vec<VertexId>,
        mut p: Vec<VertexId>,
        mut x: Vec<VertexId>,
        out: &mut Vec<Clique>,
    ) -> Result<(), CliqueError> {
        if p.is_empty() {
            if x.is_empty() {
                self.record(out, r.clone())?;
            }
            return Ok(());
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| (intersection_size(&p, self.graph.neighbors(u)), std::cmp::Reverse(u)))
            .expect("p is non-empty");
        let pivot_nbrs = self.graph.neighbors(pivot);
        let branch: Vec<VertexId> = p
            .iter()
            .copied()
            .filter(|v| pivot_nbrs.binary_search(v).is_err())
            .collect();
        for v in branch {
            let nbrs = self.graph.neighbors(v);
            r.push(v);
            self.expand(r, intersect(&p, nbrs), intersect(&x, nbrs), out)?;
            r.pop();
            let at = p.binary_search(&v).expect("branch vertex is a candidate");
            p.remove(at);
            let at = x.binary_search(&v).unwrap_err();
            x.insert(at, v);
        }
        Ok(())
    }
}

/// Enumerates every maximal clique, isolated vertices included as
/// 1-cliques. Output is sorted lexicographically by vertex list.
pub fn maximal_cliques(g: &Graph, cap: usize) -> Result<Vec<Clique>, CliqueError> {
    maximal_cliques_with(g, cap, Execution::default())
}

/// [`maximal_cliques`] with an explicit execution mode. The outer loop runs
/// over vertices in degeneracy order; each vertex seeds an independent
/// branch.
pub fn maximal_cliques_with(g: &Graph, cap: usize, execution: Execution) -> Result<Vec<Clique>, CliqueError> {
    let order = degeneracy_order(g);
    let mut position = vec![0usize; g.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        position[v as usize] = i;
    }
    let produced = AtomicUsize::new(0);
    let enumerator = Enumerator {
        graph: g,
        cap,
        produced: &produced,
    };
    let branches = par::map(execution, &order, |&v| {
        let (mut later, mut earlier) = (Vec::new(), Vec::new());
        for &w in g.neighbors(v) {
            if position[w as usize] > position[v as usize] {
                later.push(w);
            } else {
                earlier.push(w);
            }
        }
        let mut out = Vec::new();
        enumerator.expand(&mut vec![v], later, earlier, &mut out)?;
        Ok(out)
    });
    let mut all = Vec::new();
    for branch in branches {
        all.extend(branch?);
    }
    all.sort_unstable();
    Ok(all)
}

/// Enumerates every clique with exactly `k` vertices, sorted
/// lexicographically.
pub fn k_cliques(g: &Graph, k: usize, cap: usize) -> Result<Vec<Clique>, CliqueError> {
    if k == 0 {
        return Err(CliqueError::InvalidOrder { min: 1, got: 0 });
    }
    fn extend(
        g: &Graph,
        k: usize,
        cap: usize,
        current: &mut Vec<VertexId>,
        candidates: &[VertexId],
        out: &mut Vec<Clique>,
    ) -> Result<(), CliqueError> {
        if current.len() == k {
            if out.len() >= cap {
                return Err(CliqueError::ResourceLimit { cap });
            }
            out.push(Clique(current.clone()));
            return Ok(());
        }
        for (i, &w) in candidates.iter().enumerate() {
            if candidates.len() - i < k - current.len() {
                break;
            }
            current.push(w);
            let next = intersect(&candidates[i + 1..], g.neighbors(w));
            extend(g, k, cap, current, &next, out)?;
            current.pop();
        }
        Ok(())
    }
    let all: Vec<VertexId> = g.vertices().collect();
    let mut out = Vec::new();
    extend(g, k, cap, &mut Vec::with_capacity(k), &all, &mut out)?;
    Ok(out)
}

/// Size of the largest clique: 0 for the empty graph, 1 for an edgeless one.
pub fn max_clique_order(g: &Graph) -> usize {
    fn search(g: &Graph, size: usize, candidates: &[VertexId], best: &mut usize) {
        if candidates.is_empty() {
            *best = (*best).max(size);
            return;
        }
        for (i, &v) in candidates.iter().enumerate() {
            if size + candidates.len() - i <= *best {
                return;
            }
            let next = intersect(&candidates[i + 1..], g.neighbors(v));
            search(g, size + 1, &next, best);
        }
    }
    // Visiting vertices in reverse degeneracy order finds large cliques early.
    let mut order = degeneracy_order(g);
    order.reverse();
    let mut position = vec![0usize; g.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        position[v as usize] = i;
    }
    let mut best = 0;
    for &v in &order {
        let mut later: Vec<VertexId> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| position[w as usize] > position[v as usize])
            .collect();
        later.sort_unstable();
        if 1 + later.len() > best {
            search(g, 1, &later, &mut best);
        }
    }
    best
}
