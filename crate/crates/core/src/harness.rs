//! Seeded random graphs and perturbations for exercising the stability
//! bounds. Every trial derives its own ChaCha stream from the seed, so
//! results do not depend on how trials are scheduled.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graph::Graph;
use crate::par;
use crate::persistence::{tree_distance, HalfInt};
use crate::stability::{verify_stability, StabilityReport};
use crate::{community_tree, Config};

/// RNG for trial `stream` under `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Erdős–Rényi `G(n, p)` on labels `0..n`, isolated vertices included.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((labels[i].as_str(), labels[j].as_str()));
            }
        }
    }
    Graph::from_vertices_and_edges(&labels.iter().map(String::as_str).collect::<Vec<_>>(), &edges)
        .expect("generated graphs are simple")
}

/// A perturbed graph and the hub vertices every changed edge touches.
#[derive(Debug, Clone, PartialEq)]
pub struct Perturbation {
    pub graph: Graph,
    pub hubs: Vec<String>,
}

/// Toggles edges around at most `max_hubs` randomly chosen hub vertices
/// (each hub-incident pair flips with probability `flip`). With
/// probability 1/4 one hub is a brand-new vertex.
pub fn perturb<R: Rng>(g: &Graph, max_hubs: usize, flip: f64, rng: &mut R) -> Perturbation {
    let mut labels: Vec<String> = g.labels().to_vec();
    let mut edges = g.label_edge_set();
    let hub_count = rng.gen_range(1..=max_hubs.max(1));
    let mut hubs: Vec<String> = labels.clone();
    hubs.shuffle(rng);
    hubs.truncate(hub_count);
    if rng.gen_bool(0.25) || hubs.is_empty() {
        let fresh = format!("new{}", labels.len());
        labels.push(fresh.clone());
        if hubs.len() == hub_count {
            hubs.pop();
        }
        hubs.push(fresh);
    }
    for hub in &hubs {
        for other in &labels {
            if other == hub || !rng.gen_bool(flip) {
                continue;
            }
            let key = if hub < other {
                (hub.clone(), other.clone())
            } else {
                (other.clone(), hub.clone())
            };
            if !edges.remove(&key) {
                edges.insert(key);
            }
        }
    }
    let pairs: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let vertices: Vec<&str> = labels.iter().map(String::as_str).collect();
    Perturbation {
        graph: Graph::from_vertices_and_edges(&vertices, &pairs).expect("perturbed graphs are simple"),
        hubs,
    }
}

/// Parameters of one randomized perturbation trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialSpec {
    pub n: usize,
    pub p: f64,
    pub max_hubs: usize,
    pub flip: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trial {
    pub index: u64,
    pub original: Graph,
    pub perturbed: Graph,
    pub report: StabilityReport,
}

/// Runs `trials` perturbation trials. Trial `i` uses stream `i` of `seed`.
pub fn stability_trials(spec: TrialSpec, trials: usize, seed: u64, config: &Config) -> Result<Vec<Trial>, Error> {
    par::map_range(config.execution, trials, |i| {
        let mut rng = trial_rng(seed, i as u64);
        let original = random_graph(spec.n, spec.p, &mut rng);
        let perturbed = perturb(&original, spec.max_hubs, spec.flip, &mut rng).graph;
        let inner = Config {
            execution: par::Execution::Sequential,
            ..*config
        };
        let report = verify_stability(&original, &perturbed, &inner)?;
        Ok(Trial {
            index: i as u64,
            original,
            perturbed,
            report,
        })
    })
    .into_iter()
    .collect()
}

/// Bottleneck distance between the tree of `g` and the tree of `g` minus
/// each vertex in turn, in vertex-id order.
pub fn vertex_deletion_sweep(g: &Graph, config: &Config) -> Result<Vec<(String, HalfInt)>, Error> {
    let base = community_tree(g, config)?;
    let vertices: Vec<String> = g.labels().to_vec();
    let inner = Config {
        execution: par::Execution::Sequential,
        ..*config
    };
    par::map(config.execution, &vertices, |label| {
        let smaller = g.remove_vertex(label)?;
        let tree = community_tree(&smaller, &inner)?;
        Ok((label.clone(), tree_distance(&base, &tree)))
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_graphs() {
        let a = random_graph(10, 0.5, &mut trial_rng(7, 3));
        let b = random_graph(10, 0.5, &mut trial_rng(7, 3));
        let c = random_graph(10, 0.5, &mut trial_rng(7, 4));
        assert_eq!(a, b);
        assert_ne!(a.label_edge_set(), c.label_edge_set());
        assert_eq!(a.vertex_count(), 10);
    }

    #[test]
    fn perturbation_is_concentrated_at_hubs() {
        let mut rng = trial_rng(11, 0);
        for _ in 0..50 {
            let g = random_graph(9, 0.4, &mut rng);
            let Perturbation { graph: h, hubs } = perturb(&g, 3, 0.5, &mut rng);
            assert!(!hubs.is_empty() && hubs.len() <= 3);
            let delta = crate::graph::graph_delta(&g, &h);
            for (a, b) in delta.removed_labels().into_iter().chain(delta.added_labels()) {
                assert!(hubs.contains(&a) || hubs.contains(&b));
            }
        }
    }

    #[test]
    fn trials_are_schedule_independent() {
        let spec = TrialSpec {
            n: 8,
            p: 0.5,
            max_hubs: 2,
            flip: 0.5,
        };
        let seq = stability_trials(
            spec,
            6,
            5,
            &Config {
                execution: par::Execution::Sequential,
                ..Config::default()
            },
        )
        .unwrap();
        let par = stability_trials(spec, 6, 5, &Config::default()).unwrap();
        assert_eq!(seq, par);
        assert!(seq.iter().all(|t| t.report.holds));
    }
}
