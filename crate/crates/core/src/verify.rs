//! Independent checks of strategies, dominions and solutions.
//!
//! A strategy is checked on the game in which the player's choices are
//! fixed: the region must be closed under the remaining moves, and no
//! cycle inside it may have a least priority of the opponent's parity.

use std::collections::VecDeque;

use thiserror::Error;

use crate::game::{scc_decompose, ParityGame, Player, Strategy, StrategyError, VertexIndex, VertexSet};
use crate::play::{zielonka, LassoPlay};
use crate::solvers::SolveResult;

/// Games up to this size are cross-checked against the recursive solver.
pub const PARTITION_ORACLE_BOUND: usize = 512;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("strategy belongs to {found}, expected {expected}")]
    WrongPlayer { expected: Player, found: Player },
    #[error(transparent)]
    Invalid(#[from] StrategyError),
    #[error("strategy is undefined at vertex {0} of the region")]
    Undefined(VertexIndex),
    #[error("region refers to a universe of {region} vertices, the game has {game}")]
    SizeMismatch { region: usize, game: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A move that leaves the region.
    Escape { from: VertexIndex, to: VertexIndex },
    /// A play inside the region that the opponent wins.
    Cycle(LassoPlay),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Winning,
    Losing(Witness),
}

impl Verdict {
    pub fn is_winning(&self) -> bool {
        matches!(self, Verdict::Winning)
    }
}

/// Whether `strategy` wins every play from `region` for `player`.
pub fn check_strategy(
    game: &ParityGame,
    player: Player,
    region: &VertexSet,
    strategy: &Strategy,
) -> Result<Verdict, VerifyError> {
    if strategy.player() != player {
        return Err(VerifyError::WrongPlayer {
            expected: player,
            found: strategy.player(),
        });
    }
    if region.universe() != game.num_vertices() {
        return Err(VerifyError::SizeMismatch {
            region: region.universe(),
            game: game.num_vertices(),
        });
    }
    strategy.validate(game)?;
    if let Some(v) = region
        .iter()
        .find(|&v| game.owner(v) == player && !strategy.is_defined(v))
    {
        return Err(VerifyError::Undefined(v));
    }

    let fixed = game.restrict_to_strategy(&strategy.restricted_to(region))?;
    for v in region.iter() {
        if let Some(&w) = fixed.successors(v).iter().find(|&&w| !region.contains(w)) {
            return Ok(Verdict::Losing(Witness::Escape { from: v, to: w }));
        }
    }

    let opponent = player.opponent();
    let mut priorities: Vec<_> = region.iter().map(|v| fixed.priority(v)).collect();
    priorities.sort_unstable();
    priorities.dedup();
    for p in priorities.into_iter().filter(|&p| Player::of_priority(p) == opponent) {
        let members = VertexSet::from_vertices(
            game.num_vertices(),
            region.iter().filter(|&v| fixed.priority(v) >= p),
        );
        for scc in scc_decompose(&fixed, &members) {
            let inside = VertexSet::from_vertices(game.num_vertices(), scc.vertices.iter().copied());
            let Some(&u) = scc.vertices.iter().find(|&&v| fixed.priority(v) == p) else {
                continue;
            };
            if let Some(cycle) = cycle_through(&fixed, u, &inside) {
                let play = LassoPlay::new(game, Vec::new(), cycle).expect("cycle follows game edges");
                return Ok(Verdict::Losing(Witness::Cycle(play)));
            }
        }
    }
    Ok(Verdict::Winning)
}

/// Shortest cycle through `u` using only vertices of `inside`.
fn cycle_through(game: &ParityGame, u: VertexIndex, inside: &VertexSet) -> Option<Vec<VertexIndex>> {
    let mut parent = vec![usize::MAX; game.num_vertices()];
    let mut queue = VecDeque::from([u]);
    let mut seen = VertexSet::empty(game.num_vertices());
    while let Some(v) = queue.pop_front() {
        for &w in game.successors(v) {
            if !inside.contains(w) {
                continue;
            }
            if w == u {
                let mut cycle = vec![v];
                let mut at = v;
                while at != u {
                    at = parent[at];
                    cycle.push(at);
                }
                cycle.reverse();
                return Some(cycle);
            }
            if seen.insert(w) {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Whether `strategy` witnesses `dominion` as a dominion of `player`: no
/// play from it leaves it, and every play inside is won by `player`.
pub fn check_dominion(
    game: &ParityGame,
    player: Player,
    dominion: &VertexSet,
    strategy: &Strategy,
) -> Result<Verdict, VerifyError> {
    check_strategy(game, player, dominion, strategy)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrategyCheck {
    NotProvided,
    Checked(Verdict),
    Rejected(String),
}

impl StrategyCheck {
    fn passed(&self) -> bool {
        matches!(self, StrategyCheck::NotProvided | StrategyCheck::Checked(Verdict::Winning))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionReport {
    pub disjoint_cover: bool,
    pub even_strategy: StrategyCheck,
    pub odd_strategy: StrategyCheck,
    /// `None` when the game exceeds [`PARTITION_ORACLE_BOUND`].
    pub oracle_agrees: Option<bool>,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.disjoint_cover
            && self.even_strategy.passed()
            && self.odd_strategy.passed()
            && self.oracle_agrees != Some(false)
    }
}

/// Checks a solver's output: the regions partition the game, every
/// provided strategy wins its region, and on small games the partition
/// agrees with the recursive solver.
pub fn check_partition(game: &ParityGame, result: &SolveResult) -> PartitionReport {
    let n = game.num_vertices();
    let even = &result.even_region;
    let odd = &result.odd_region;
    let disjoint_cover =
        even.universe() == n && odd.universe() == n && even.is_disjoint(odd) && even.len() + odd.len() == n;

    let check = |player: Player| {
        let strategy = result.strategy(player);
        let region = result.region(player);
        let needs_moves = region.iter().any(|v| game.owner(v) == player);
        if strategy.is_empty() && needs_moves {
            return StrategyCheck::NotProvided;
        }
        match check_strategy(game, player, region, strategy) {
            Ok(verdict) => StrategyCheck::Checked(verdict),
            Err(err) => StrategyCheck::Rejected(err.to_string()),
        }
    };
    let (even_strategy, odd_strategy) = if disjoint_cover {
        (check(Player::Even), check(Player::Odd))
    } else {
        (StrategyCheck::NotProvided, StrategyCheck::NotProvided)
    };

    let oracle_agrees = (n <= PARTITION_ORACLE_BOUND).then(|| zielonka(game).even_region == *even);
    PartitionReport {
        disjoint_cover,
        even_strategy,
        odd_strategy,
        oracle_agrees,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::six_vertex_example;
    use crate::solvers::{spm, LiftPolicy};

    fn set(vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(6, vs.iter().copied())
    }

    fn strategy(player: Player, moves: &[(usize, usize)]) -> Strategy {
        let mut s = Strategy::new(player, 6);
        for &(v, w) in moves {
            s.set(v, w);
        }
        s
    }

    #[test]
    fn example_strategies() {
        let game = six_vertex_example();
        let odd = set(&[3, 4, 5]);
        let good = strategy(Player::Odd, &[(3, 5), (4, 5), (5, 3)]);
        assert_eq!(check_strategy(&game, Player::Odd, &odd, &good), Ok(Verdict::Winning));

        let greedy = strategy(Player::Odd, &[(3, 4), (4, 5), (5, 3)]);
        match check_strategy(&game, Player::Odd, &odd, &greedy).unwrap() {
            Verdict::Losing(Witness::Cycle(play)) => {
                let mut cycle = play.cycle().to_vec();
                cycle.sort();
                assert_eq!(cycle, vec![3, 4, 5]);
            }
            other => panic!("unexpected {other:?}"),
        }

        let even = strategy(Player::Even, &[(1, 0), (2, 1)]);
        assert_eq!(check_strategy(&game, Player::Even, &set(&[0, 1, 2]), &even), Ok(Verdict::Winning));
    }

    #[test]
    fn dominions() {
        let game = six_vertex_example();
        let sigma = strategy(Player::Odd, &[(3, 5), (5, 3)]);
        assert_eq!(check_dominion(&game, Player::Odd, &set(&[3, 5]), &sigma), Ok(Verdict::Winning));
        assert_eq!(
            check_dominion(&game, Player::Odd, &set(&[2, 3, 5]), &sigma),
            Ok(Verdict::Losing(Witness::Escape { from: 2, to: 1 }))
        );
    }

    #[test]
    fn rejects_bad_strategies() {
        let game = six_vertex_example();
        let odd = set(&[3, 4, 5]);
        assert_eq!(
            check_strategy(&game, Player::Odd, &odd, &strategy(Player::Odd, &[(3, 5), (5, 3)])),
            Err(VerifyError::Undefined(4))
        );
        assert!(matches!(
            check_strategy(&game, Player::Odd, &odd, &strategy(Player::Odd, &[(3, 0), (4, 5), (5, 3)])),
            Err(VerifyError::Invalid(StrategyError::NotAnEdge { from: 3, to: 0 }))
        ));
        assert!(matches!(
            check_strategy(&game, Player::Even, &odd, &strategy(Player::Odd, &[])),
            Err(VerifyError::WrongPlayer { .. })
        ));
    }

    #[test]
    fn partitions() {
        let game = six_vertex_example();
        let result = spm(&game, LiftPolicy::Worklist);
        let report = check_partition(&game, &result);
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.oracle_agrees, Some(true));

        let mut wrong = result.clone();
        wrong.odd_region.remove(5);
        wrong.even_region.insert(5);
        wrong.even_strategy = Strategy::new(Player::Even, 6);
        let report = check_partition(&game, &wrong);
        assert!(!report.passed());
        assert_eq!(report.oracle_agrees, Some(false));
    }
}
