//! Exact bottleneck distance between persistence diagrams.
//!
//! Diagram coordinates are integers, so every candidate distance is a
//! multiple of 1/2. All arithmetic runs on doubled coordinates and the
//! result is a [`HalfInt`].

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::tree::{CommunityTree, PersistenceDiagram};

/// An exact multiple of 1/2, stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub fn from_doubled(doubled: i64) -> Self {
        HalfInt(doubled)
    }

    pub fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

/// Decimal with exactly one fractional digit: `0.5`, `1.0`, `-1.5`.
impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        write!(f, "{sign}{}.{}", abs / 2, if abs % 2 == 1 { 5 } else { 0 })
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.to_f64())
    }
}

/// A diagram point in doubled coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ScaledPoint {
    pub death2: i64,
    pub birth2: i64,
}

impl ScaledPoint {
    pub fn new(death: u32, birth: u32) -> Self {
        ScaledPoint {
            death2: 2 * i64::from(death),
            birth2: 2 * i64::from(birth),
        }
    }

    /// Doubled L∞ distance to the nearest diagonal point, i.e. `b - d`.
    fn diagonal_cost2(self) -> i64 {
        (self.birth2 - self.death2).abs() / 2
    }
}

/// L∞ distance between two diagram points.
pub fn linf(p: (u32, u32), q: (u32, u32)) -> HalfInt {
    let (a, b) = (ScaledPoint::new(p.0, p.1), ScaledPoint::new(q.0, q.1));
    HalfInt((a.death2 - b.death2).abs().max((a.birth2 - b.birth2).abs()))
}

/// L∞ distance from `(death, birth)` to the diagonal: `(birth - death) / 2`.
pub fn diagonal_distance(p: (u32, u32)) -> HalfInt {
    HalfInt(ScaledPoint::new(p.0, p.1).diagonal_cost2())
}

/// One side of a matched pair: an off-diagonal point (index into the
/// diagram's expanded point list) or a diagonal slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Slot {
    Point(usize),
    Diagonal,
}

/// A bijection between the two augmented point sets. Diagonal-to-diagonal
/// pairs are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub pairs: Vec<(Slot, Slot)>,
    /// Doubled bottleneck cost of the matching.
    pub cost2: i64,
}

struct Augmented {
    left: Vec<ScaledPoint>,
    right: Vec<ScaledPoint>,
}

impl Augmented {
    fn size(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// Left vertices `0..n1` are the first diagram's points, `n1..n1+n2`
    /// diagonal slots; right vertices likewise with the roles swapped.
    fn cost2(&self, i: usize, j: usize) -> i64 {
        let (n1, n2) = (self.left.len(), self.right.len());
        match (i < n1, j < n2) {
            (true, true) => {
                let (a, b) = (self.left[i], self.right[j]);
                (a.death2 - b.death2).abs().max((a.birth2 - b.birth2).abs())
            }
            (true, false) => self.left[i].diagonal_cost2(),
            (false, true) => self.right[j].diagonal_cost2(),
            (false, false) => 0,
        }
    }

    fn slot_left(&self, i: usize) -> Slot {
        if i < self.left.len() {
            Slot::Point(i)
        } else {
            Slot::Diagonal
        }
    }

    fn slot_right(&self, j: usize) -> Slot {
        if j < self.right.len() {
            Slot::Point(j)
        } else {
            Slot::Diagonal
        }
    }
}

const UNMATCHED: usize = usize::MAX;

/// Hopcroft-Karp on the threshold graph `cost2 <= limit`. Returns the
/// right partner of each left vertex when a perfect matching exists.
fn perfect_matching(aug: &Augmented, limit: i64) -> Option<Vec<usize>> {
    let n = aug.size();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| aug.cost2(i, j) <= limit).collect())
        .collect();
    let mut match_left = vec![UNMATCHED; n];
    let mut match_right = vec![UNMATCHED; n];
    let mut dist = vec![0usize; n];
    let mut matched = 0;
    loop {
        // BFS layering from free left vertices
        let mut queue = VecDeque::new();
        for i in 0..n {
            if match_left[i] == UNMATCHED {
                dist[i] = 0;
                queue.push_back(i);
            } else {
                dist[i] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                let next = match_right[j];
                if next == UNMATCHED {
                    found = true;
                } else if dist[next] == usize::MAX {
                    dist[next] = dist[i] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found {
            break;
        }
        fn augment(
            i: usize,
            adj: &[Vec<usize>],
            dist: &mut [usize],
            match_left: &mut [usize],
            match_right: &mut [usize],
        ) -> bool {
            for &j in &adj[i] {
                let next = match_right[j];
                if next == UNMATCHED || (dist[next] == dist[i] + 1 && augment(next, adj, dist, match_left, match_right))
                {
                    match_left[i] = j;
                    match_right[j] = i;
                    return true;
                }
            }
            dist[i] = usize::MAX;
            false
        }
        for i in 0..n {
            if match_left[i] == UNMATCHED && augment(i, &adj, &mut dist, &mut match_left, &mut match_right) {
                matched += 1;
            }
        }
    }
    (matched == n).then_some(match_left)
}

/// Exact bottleneck distance with a witness matching.
///
/// Candidate values (every pairwise cost and every diagonal cost) are
/// sorted and binary-searched; feasibility of a threshold is the existence
/// of a perfect matching in the augmented threshold graph.
pub fn bottleneck_distance(pd1: &PersistenceDiagram, pd2: &PersistenceDiagram) -> (HalfInt, Matching) {
    let aug = Augmented {
        left: pd1
            .expanded()
            .into_iter()
            .map(|(d, b)| ScaledPoint::new(d, b))
            .collect(),
        right: pd2
            .expanded()
            .into_iter()
            .map(|(d, b)| ScaledPoint::new(d, b))
            .collect(),
    };
    let n = aug.size();
    let mut candidates: Vec<i64> = vec![0];
    for i in 0..n {
        for j in 0..n {
            candidates.push(aug.cost2(i, j));
        }
    }
    candidates.sort_unstable();
    candidates.dedup();

    // The largest candidate always admits the full bipartite graph.
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect_matching(&aug, candidates[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let best = candidates[lo];
    let partner = perfect_matching(&aug, best).expect("the chosen threshold is feasible");
    let mut pairs: Vec<(Slot, Slot)> = partner
        .iter()
        .enumerate()
        .map(|(i, &j)| (aug.slot_left(i), aug.slot_right(j)))
        .filter(|&(a, b)| !(a == Slot::Diagonal && b == Slot::Diagonal))
        .collect();
    pairs.sort_unstable();
    let cost2 = partner
        .iter()
        .enumerate()
        .map(|(i, &j)| aug.cost2(i, j))
        .max()
        .unwrap_or(0);
    debug_assert_eq!(cost2, best);
    (HalfInt(best), Matching { pairs, cost2 })
}

/// Bottleneck distance between the diagrams of two community trees.
pub fn tree_distance(t1: &CommunityTree, t2: &CommunityTree) -> HalfInt {
    bottleneck_distance(&t1.diagram(), &t2.diagram()).0
}
