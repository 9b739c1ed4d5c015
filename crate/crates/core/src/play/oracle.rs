use thiserror::Error;

use crate::game::{scc_decompose, ParityGame, Player, Strategy, VertexIndex, VertexSet};
use crate::measure::Measure;

/// Largest game [`brute_force_values`] accepts by default.
pub const DEFAULT_VERTEX_BOUND: usize = 7;

/// Largest number of positional even strategies enumerated.
pub const STRATEGY_BOUND: u64 = 200_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("game has {vertices} vertices, the oracle accepts at most {bound}")]
    TooManyVertices { vertices: usize, bound: usize },
    #[error("game has {0} positional even strategies, too many to enumerate")]
    TooManyStrategies(u64),
}

/// The even player's value at every vertex, computed by enumerating all
/// positional even strategies and, against each, the best play for odd.
pub fn brute_force_values(game: &ParityGame) -> Result<Vec<Measure>, OracleError> {
    brute_force_values_bounded(game, DEFAULT_VERTEX_BOUND)
}

pub fn brute_force_values_bounded(game: &ParityGame, bound: usize) -> Result<Vec<Measure>, OracleError> {
    let n = game.num_vertices();
    if n > bound {
        return Err(OracleError::TooManyVertices { vertices: n, bound });
    }
    let even: Vec<VertexIndex> = game.vertices_owned_by(Player::Even).collect();
    let count = even
        .iter()
        .try_fold(1u64, |acc, &v| acc.checked_mul(game.successors(v).len() as u64))
        .filter(|&c| c <= STRATEGY_BOUND)
        .ok_or(OracleError::TooManyStrategies(u64::MAX))?;

    let mut best = vec![Measure::Top; n];
    let mut digits = vec![0usize; even.len()];
    for _ in 0..count {
        let mut sigma = Strategy::new(Player::Even, n);
        for (&v, &d) in even.iter().zip(&digits) {
            sigma.set(v, game.successors(v)[d]);
        }
        let solitaire = game
            .restrict_to_strategy(&sigma)
            .expect("enumerated choices are edges");
        for (v, value) in odd_best_values(&solitaire).into_iter().enumerate() {
            if value < best[v] {
                best[v] = value;
            }
        }
        for (slot, &v) in digits.iter_mut().zip(&even) {
            *slot += 1;
            if *slot < game.successors(v).len() {
                break;
            }
            *slot = 0;
        }
    }
    Ok(best)
}

/// Best play value odd can reach from each vertex of a game in which even
/// has no choices.
fn odd_best_values(game: &ParityGame) -> Vec<Measure> {
    let n = game.num_vertices();
    let d = game.tuple_len();

    // Vertices of odd priority p lying on a cycle whose priorities are all >= p.
    let mut bad = VertexSet::empty(n);
    for p in (1..d as u32).step_by(2) {
        let members = VertexSet::from_vertices(n, game.vertices().filter(|&v| game.priority(v) >= p));
        for scc in scc_decompose(game, &members) {
            let cyclic = scc.vertices.len() > 1 || game.has_edge(scc.vertices[0], scc.vertices[0]);
            if cyclic {
                for &v in scc.vertices.iter().filter(|&&v| game.priority(v) == p) {
                    bad.insert(v);
                }
            }
        }
    }
    let mut top = bad.clone();
    let mut stack = bad.to_vec();
    while let Some(w) = stack.pop() {
        for &u in game.predecessors(w) {
            if top.insert(u) {
                stack.push(u);
            }
        }
    }

    // Longest path over states (vertex, least priority seen so far) with
    // lexicographic weights; no cycle outside `top` carries weight.
    let levels = d + 1;
    let state = |v: VertexIndex, r: usize| v * levels + r;
    let gain = |p: usize, r: usize| p % 2 == 1 && p <= r;
    let mut value: Vec<Vec<u32>> = vec![vec![0; d]; n * levels];
    let mut changed = true;
    let mut rounds = 0;
    while changed {
        changed = false;
        rounds += 1;
        assert!(rounds <= n * levels + 1, "positive cycle in a top-free region");
        for v in game.vertices().filter(|&v| !top.contains(v)) {
            for r in 0..levels {
                let mut best = value[state(v, r)].clone();
                for &w in game.successors(v) {
                    let p = game.priority(w) as usize;
                    let mut cand = value[state(w, r.min(p))].clone();
                    if gain(p, r) {
                        cand[p] += 1;
                    }
                    if cand > best {
                        best = cand;
                    }
                }
                if best != value[state(v, r)] {
                    value[state(v, r)] = best;
                    changed = true;
                }
            }
        }
    }

    game.vertices()
        .map(|v| {
            if top.contains(v) {
                return Measure::Top;
            }
            let p = game.priority(v) as usize;
            let mut m = value[state(v, p)].clone();
            if p % 2 == 1 {
                m[p] += 1;
            }
            Measure::Finite(m)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::six_vertex_example;
    use crate::solvers::{spm, LiftPolicy};

    #[test]
    fn example_values_match_least_measure() {
        let game = six_vertex_example();
        let values = brute_force_values(&game).unwrap();
        assert_eq!(values, spm(&game, LiftPolicy::Worklist).measure.unwrap().values());
        assert_eq!(values[1], Measure::Finite(vec![0, 0, 0, 1]));
    }

    #[test]
    fn single_vertex_self_loops() {
        let even = ParityGame::new(vec![Player::Odd], vec![2], vec![vec![0]]).unwrap();
        assert_eq!(brute_force_values(&even).unwrap(), vec![Measure::Finite(vec![0, 0, 0])]);
        let odd = ParityGame::new(vec![Player::Even], vec![3], vec![vec![0]]).unwrap();
        assert_eq!(brute_force_values(&odd).unwrap(), vec![Measure::Top]);
    }

    #[test]
    fn size_bound_is_enforced() {
        let game = ParityGame::new(vec![Player::Even; 8], vec![0; 8], (0..8).map(|v| vec![(v + 1) % 8]).collect())
            .unwrap();
        assert_eq!(
            brute_force_values(&game),
            Err(OracleError::TooManyVertices { vertices: 8, bound: 7 })
        );
    }
}
