use std::time::Instant;

use crate::game::{attractor, ParityGame, Player, Strategy, VertexSet};
use crate::solvers::{SolveResult, SolveStats};

/// Recursive attractor decomposition, with positional winning strategies
/// for both players.
pub fn zielonka(game: &ParityGame) -> SolveResult {
    let started = Instant::now();
    let n = game.num_vertices();
    let mut stats = SolveStats::default();
    let solved = solve(game, VertexSet::full(n), &mut stats);
    stats.millis = started.elapsed().as_secs_f64() * 1e3;
    SolveResult {
        even_region: solved.even,
        odd_region: solved.odd,
        even_strategy: solved.even_strategy,
        odd_strategy: solved.odd_strategy,
        measure: None,
        stats,
    }
}

struct Solved {
    even: VertexSet,
    odd: VertexSet,
    even_strategy: Strategy,
    odd_strategy: Strategy,
}

impl Solved {
    fn empty(n: usize) -> Self {
        Solved {
            even: VertexSet::empty(n),
            odd: VertexSet::empty(n),
            even_strategy: Strategy::new(Player::Even, n),
            odd_strategy: Strategy::new(Player::Odd, n),
        }
    }

    fn region_mut(&mut self, player: Player) -> &mut VertexSet {
        match player {
            Player::Even => &mut self.even,
            Player::Odd => &mut self.odd,
        }
    }

    fn region(&self, player: Player) -> &VertexSet {
        match player {
            Player::Even => &self.even,
            Player::Odd => &self.odd,
        }
    }

    fn strategy_mut(&mut self, player: Player) -> &mut Strategy {
        match player {
            Player::Even => &mut self.even_strategy,
            Player::Odd => &mut self.odd_strategy,
        }
    }

    fn strategy(&self, player: Player) -> &Strategy {
        match player {
            Player::Even => &self.even_strategy,
            Player::Odd => &self.odd_strategy,
        }
    }
}

fn solve(game: &ParityGame, arena: VertexSet, stats: &mut SolveStats) -> Solved {
    let n = game.num_vertices();
    let mut out = Solved::empty(n);
    let Some(p) = arena.iter().map(|v| game.priority(v)).min() else {
        return out;
    };
    let alpha = Player::of_priority(p);
    let beta = alpha.opponent();

    let top = VertexSet::from_vertices(n, arena.iter().filter(|&v| game.priority(v) == p));
    let (attr, attr_strategy) = attractor(game, alpha, &top, &arena);
    stats.attractors += 1;
    let sub = solve(game, arena.difference(&attr), stats);

    if sub.region(beta).is_empty() {
        *out.region_mut(alpha) = arena.clone();
        let sigma = out.strategy_mut(alpha);
        sigma.fill_from(sub.strategy(alpha));
        sigma.fill_from(&attr_strategy);
        for v in top.iter().filter(|&v| game.owner(v) == alpha) {
            let stay = game
                .successors(v)
                .iter()
                .copied()
                .filter(|&w| arena.contains(w))
                .min()
                .expect("arena induces a total subgame");
            sigma.set(v, stay);
        }
        return out;
    }

    let (lost, lost_strategy) = attractor(game, beta, sub.region(beta), &arena);
    stats.attractors += 1;
    let rest = solve(game, arena.difference(&lost), stats);

    *out.region_mut(alpha) = rest.region(alpha).clone();
    out.strategy_mut(alpha).fill_from(rest.strategy(alpha));
    let mut beta_region = lost;
    beta_region.union_with(rest.region(beta));
    *out.region_mut(beta) = beta_region;
    let tau = out.strategy_mut(beta);
    tau.fill_from(rest.strategy(beta));
    tau.fill_from(sub.strategy(beta));
    tau.fill_from(&lost_strategy);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::six_vertex_example;

    #[test]
    fn example_partition() {
        let game = six_vertex_example();
        let result = zielonka(&game);
        assert_eq!(result.even_region.to_vec(), vec![0, 1, 2]);
        assert_eq!(result.odd_region.to_vec(), vec![3, 4, 5]);
        for v in [1, 2] {
            assert!(result.even_strategy.is_defined(v));
        }
        for v in [0, 3, 4, 5] {
            if game.owner(v) == Player::Odd && result.odd_region.contains(v) {
                assert!(result.odd_strategy.is_defined(v));
            }
        }
    }

    #[test]
    fn paradise_is_all_even() {
        let game = ParityGame::new(
            vec![Player::Odd, Player::Even, Player::Odd],
            vec![0, 2, 4],
            vec![vec![1, 2], vec![2], vec![0]],
        )
        .unwrap();
        let result = zielonka(&game);
        assert_eq!(result.even_region.len(), 3);
        assert!(result.odd_region.is_empty());
    }
}
