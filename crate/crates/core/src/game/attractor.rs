use thiserror::Error;

use super::{ParityGame, Player, Priority, Strategy, VertexIndex, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AttractorError {
    #[error("target vertex {0} lies outside the guarded region")]
    TargetOutsideGuard(VertexIndex),
}

/// The `player`-attractor into `target`, computed in the subgame induced by
/// `within`. Edges leaving `within` are ignored.
///
/// The returned strategy is defined on the attracted `player` vertices
/// outside `target`. Vertices are added in rounds; a vertex joining in round
/// `r` moves to its lowest-indexed successor that was already attracted
/// before round `r`, so following the strategy reaches `target`.
pub fn attractor(
    game: &ParityGame,
    player: Player,
    target: &VertexSet,
    within: &VertexSet,
) -> (VertexSet, Strategy) {
    debug_assert!(target.is_subset(within));
    attract(game, player, target, within, within)
}

/// The odd-player attractor into `target` that may only pass through
/// vertices of `region` with priority at least `min_priority`.
///
/// Odd vertices join once some successor is attracted. Even vertices join
/// once all of their successors inside `region`, regardless of priority,
/// are attracted.
pub fn guarded_attractor(
    game: &ParityGame,
    min_priority: Priority,
    target: &VertexSet,
    region: &VertexSet,
) -> Result<(VertexSet, Strategy), AttractorError> {
    let guard = VertexSet::from_vertices(
        game.num_vertices(),
        region.iter().filter(|&v| game.priority(v) >= min_priority),
    );
    if let Some(v) = target.iter().find(|&v| !guard.contains(v)) {
        return Err(AttractorError::TargetOutsideGuard(v));
    }
    Ok(attract(game, Player::Odd, target, &guard, region))
}

/// Shared fixpoint: `candidates` may join, opponent vertices need every
/// successor in `counted` to be attracted.
fn attract(
    game: &ParityGame,
    player: Player,
    target: &VertexSet,
    candidates: &VertexSet,
    counted: &VertexSet,
) -> (VertexSet, Strategy) {
    let n = game.num_vertices();
    let mut attracted = target.clone();
    let mut strategy = Strategy::new(player, n);

    // Remaining unattracted successors of opponent candidates.
    let mut remaining = vec![0usize; n];
    let mut pending = VertexSet::empty(n);
    let mut batch: Vec<VertexIndex> = Vec::new();
    for u in candidates.iter() {
        if game.owner(u) != player && !attracted.contains(u) {
            let count = game
                .successors(u)
                .iter()
                .filter(|&&w| counted.contains(w))
                .count();
            remaining[u] = count;
            if count == 0 && pending.insert(u) {
                batch.push(u);
            }
        }
    }

    let mut frontier: Vec<VertexIndex> = target.to_vec();
    while !frontier.is_empty() || !batch.is_empty() {
        for &x in &frontier {
            for &u in game.predecessors(x) {
                if !candidates.contains(u) || attracted.contains(u) || pending.contains(u) {
                    continue;
                }
                if game.owner(u) == player {
                    pending.insert(u);
                    batch.push(u);
                } else {
                    remaining[u] -= 1;
                    if remaining[u] == 0 {
                        pending.insert(u);
                        batch.push(u);
                    }
                }
            }
        }

        batch.sort_unstable();
        for &u in &batch {
            if game.owner(u) == player {
                let choice = game
                    .successors(u)
                    .iter()
                    .copied()
                    .filter(|&w| attracted.contains(w))
                    .min()
                    .expect("attracted player vertex has an attracted successor");
                strategy.set(u, choice);
            }
        }
        for &u in &batch {
            attracted.insert(u);
            pending.remove(u);
        }
        frontier = std::mem::take(&mut batch);
    }

    (attracted, strategy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::six_vertex_example;

    fn set(vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(6, vs.iter().copied())
    }

    #[test]
    fn odd_attractor_into_v6() {
        let game = six_vertex_example();
        let (a, sigma) = attractor(&game, Player::Odd, &set(&[5]), &VertexSet::full(6));
        assert_eq!(a.to_vec(), vec![3, 4, 5]);
        assert_eq!(sigma.iter().collect::<Vec<_>>(), vec![(3, 5), (4, 5)]);
    }

    #[test]
    fn empty_target_attracts_nothing() {
        let game = six_vertex_example();
        let (a, sigma) = attractor(&game, Player::Even, &VertexSet::empty(6), &VertexSet::full(6));
        assert!(a.is_empty());
        assert!(sigma.is_empty());
    }

    #[test]
    fn even_attractor_into_v1_v5() {
        let game = six_vertex_example();
        let (a, sigma) = attractor(&game, Player::Even, &set(&[0, 4]), &VertexSet::full(6));
        assert_eq!(a.to_vec(), vec![0, 1, 2, 4]);
        assert_eq!(sigma.iter().collect::<Vec<_>>(), vec![(1, 0), (2, 1)]);
    }

    #[test]
    fn within_hides_outside_edges() {
        let game = six_vertex_example();
        // Inside {v4, v5, v6} the odd vertex v4 can still escape to v6.
        let within = set(&[3, 4, 5]);
        let (a, _) = attractor(&game, Player::Even, &set(&[4]), &within);
        assert_eq!(a.to_vec(), vec![4]);
    }

    #[test]
    fn guarded_attractor_examples() {
        let game = six_vertex_example();
        let all = VertexSet::full(6);
        let (a, sigma) = guarded_attractor(&game, 1, &set(&[5]), &all).unwrap();
        assert_eq!(a.to_vec(), vec![3, 5]);
        assert_eq!(sigma.iter().collect::<Vec<_>>(), vec![(3, 5)]);

        let (a, sigma) = guarded_attractor(&game, 3, &set(&[1]), &all).unwrap();
        assert_eq!(a.to_vec(), vec![1]);
        assert!(sigma.is_empty());

        assert_eq!(
            guarded_attractor(&game, 1, &set(&[0]), &all),
            Err(AttractorError::TargetOutsideGuard(0))
        );
    }

    #[test]
    fn unguarded_matches_plain_odd_attractor() {
        let game = six_vertex_example();
        let all = VertexSet::full(6);
        for target in [&[5][..], &[0], &[1, 4], &[2]] {
            let t = set(target);
            let plain = attractor(&game, Player::Odd, &t, &all);
            let guarded = guarded_attractor(&game, 0, &t, &all).unwrap();
            assert_eq!(plain, guarded);
        }
    }
}
