use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{Player, Priority};

use super::pgsolver::{Convention, GameDocument, VertexRecord};

/// Game families for test corpora. All are total by construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// `n` vertices with priorities in `0..d` and between `min_out` and
    /// `max_out` distinct successors each.
    Random { n: usize, d: u32, min_out: usize, max_out: usize },
    /// Every vertex moves to every vertex, itself included; priorities in `0..n`.
    Clique { n: usize },
    /// Vertex `i` moves to itself and to `i + 1` modulo `n`.
    Chain { n: usize, d: u32 },
    /// A random graph whose priorities all have `winner`'s parity.
    Paradise { n: usize, winner: Player },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenerateError {
    #[error("a game needs at least one vertex")]
    NoVertices,
    #[error("the number of priorities must be positive")]
    NoPriorities,
    #[error("out-degree bounds {min}..={max} are invalid for {n} vertices")]
    OutDegree { min: usize, max: usize, n: usize },
}

/// Builds a game of `family`; the same seed always gives the same game.
pub fn generate(family: Family, seed: u64) -> Result<GameDocument, GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = match family {
        Family::Random { n, .. } | Family::Clique { n } | Family::Chain { n, .. } | Family::Paradise { n, .. } => n,
    };
    if n == 0 {
        return Err(GenerateError::NoVertices);
    }

    let (priorities, successors): (Vec<Priority>, Vec<Vec<usize>>) = match family {
        Family::Random { d, min_out, max_out, .. } => {
            if d == 0 {
                return Err(GenerateError::NoPriorities);
            }
            if min_out == 0 || min_out > max_out || min_out > n {
                return Err(GenerateError::OutDegree {
                    min: min_out,
                    max: max_out,
                    n,
                });
            }
            let priorities = (0..n).map(|_| rng.random_range(0..d)).collect();
            let successors = (0..n).map(|_| random_successors(&mut rng, n, min_out, max_out.min(n))).collect();
            (priorities, successors)
        }
        Family::Clique { .. } => {
            let priorities = (0..n).map(|_| rng.random_range(0..n as Priority)).collect();
            (priorities, vec![(0..n).collect(); n])
        }
        Family::Chain { d, .. } => {
            if d == 0 {
                return Err(GenerateError::NoPriorities);
            }
            let priorities = (0..n).map(|_| rng.random_range(0..d)).collect();
            let successors = (0..n)
                .map(|i| {
                    let mut list = vec![i, (i + 1) % n];
                    list.sort_unstable();
                    list.dedup();
                    list
                })
                .collect();
            (priorities, successors)
        }
        Family::Paradise { winner, .. } => {
            let parity = winner.to_index() as Priority;
            let priorities = (0..n).map(|_| 2 * rng.random_range(0..n as Priority) + parity).collect();
            let successors = (0..n).map(|_| random_successors(&mut rng, n, 1, n.min(3))).collect();
            (priorities, successors)
        }
    };

    let vertices = priorities
        .into_iter()
        .zip(successors)
        .enumerate()
        .map(|(v, (priority, successors))| VertexRecord {
            id: v as u64,
            priority,
            owner: if rng.random_bool(0.5) { Player::Odd } else { Player::Even },
            successors: successors.into_iter().map(|w| w as u64).collect(),
            name: None,
        })
        .collect();
    Ok(GameDocument {
        declared_max_id: Some(n as u64 - 1),
        start: None,
        vertices,
        convention: Convention::Min,
    })
}

fn random_successors(rng: &mut ChaCha8Rng, n: usize, min: usize, max: usize) -> Vec<usize> {
    let k = rng.random_range(min..=max);
    let mut list = sample(rng, n, k).into_vec();
    list.sort_unstable();
    list
}
