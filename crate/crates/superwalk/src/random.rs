//! Seeded random simple graphs with random orientations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superwalk_core::Graph;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RandomGraphError {
    #[error("need at least one vertex")]
    NoVertices,
    #[error("edge probability must lie in [0, 1], got {0}")]
    Probability(f64),
}

/// Erdős–Rényi graph `G(n, p)` on `v1..vn`.
///
/// Candidate pairs are visited in lexicographic order; each is kept with
/// probability `p` and, if kept, oriented either way with equal chance.
/// The same `(n, p, seed)` always gives the same graph.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph, RandomGraphError> {
    if n == 0 {
        return Err(RandomGraphError::NoVertices);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(RandomGraphError::Probability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                if rng.random_bool(0.5) {
                    edges.push((&labels[i], &labels[j]));
                } else {
                    edges.push((&labels[j], &labels[i]));
                }
            }
        }
    }
    Ok(Graph::from_labels(&labels, edges).expect("generated pairs are simple"))
}
