//! The lifting-based solvers.

mod espm;
mod lifting;
mod suitability;
mod within;

pub use espm::{espm, espm_with_options, EspmOptions};
pub use lifting::LiftPolicy;
pub use suitability::{check_suitable, SuitabilityViolation};
pub use within::{solve_with_strategies, solve_with_strategies_traced, TopEvent};

pub(crate) use lifting::Lifter;

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::game::{ParityGame, Player, Strategy, VertexIndex, VertexSet};
use crate::measure::{cmp_opt, MeasureDomain, MeasureMap};

/// Counters collected while solving.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SolveStats {
    /// Effective lifts over all measures the solver maintained.
    pub lifts: u64,
    /// Lifts whose result was top.
    pub tops: u64,
    pub attractors: u64,
    pub sccs: u64,
    pub millis: f64,
}

/// Winning regions, strategies and (where the solver has one) the final
/// even-biased measure.
#[derive(Clone, Debug)]
pub struct SolveResult {
    pub even_region: VertexSet,
    pub odd_region: VertexSet,
    pub even_strategy: Strategy,
    pub odd_strategy: Strategy,
    pub measure: Option<MeasureMap>,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn region(&self, player: Player) -> &VertexSet {
        match player {
            Player::Even => &self.even_region,
            Player::Odd => &self.odd_region,
        }
    }

    pub fn strategy(&self, player: Player) -> &Strategy {
        match player {
            Player::Even => &self.even_strategy,
            Player::Odd => &self.odd_strategy,
        }
    }

    pub fn winner(&self, v: VertexIndex) -> Player {
        if self.even_region.contains(v) {
            Player::Even
        } else {
            Player::Odd
        }
    }

    /// Winner per vertex, in index order.
    pub fn winners(&self) -> Vec<Player> {
        (0..self.even_region.universe()).map(|v| self.winner(v)).collect()
    }

    pub(crate) fn from_measure(game: &ParityGame, measure: MeasureMap, odd_strategy: Strategy, stats: SolveStats) -> Self {
        let odd_region = measure.top_set();
        let even_region = odd_region.complement();
        let even_strategy = extract_even_strategy(game, &measure);
        SolveResult {
            even_region,
            odd_region,
            even_strategy,
            odd_strategy,
            measure: Some(measure),
            stats,
        }
    }
}

/// The classic small progress measures algorithm: lift from the zero
/// measure until stable. Even wins exactly where the result is not top.
pub fn spm(game: &ParityGame, policy: LiftPolicy) -> SolveResult {
    let started = Instant::now();
    let domain = MeasureDomain::for_game(game);
    let mut measure = MeasureMap::for_domain(game, &domain);
    let mut lifter = Lifter::new(game, &domain, None, policy);
    let mut tops = 0;
    while let Some(v) = lifter.next(&mut measure) {
        if measure.is_top(v) {
            tops += 1;
        }
    }
    let stats = SolveStats {
        lifts: measure.total_lifts(),
        tops,
        millis: started.elapsed().as_secs_f64() * 1e3,
        ..SolveStats::default()
    };
    SolveResult::from_measure(game, measure, Strategy::new(Player::Odd, game.num_vertices()), stats)
}

/// Even strategy read off a stable measure: at every even vertex with a
/// finite value, move to a successor of least value (lowest index on ties).
pub fn extract_even_strategy(game: &ParityGame, measure: &MeasureMap) -> Strategy {
    let mut strategy = Strategy::new(Player::Even, game.num_vertices());
    for v in game.vertices_owned_by(Player::Even) {
        if measure.is_top(v) {
            continue;
        }
        let mut best = game.successors(v)[0];
        for &w in &game.successors(v)[1..] {
            let ord = cmp_opt(measure.slot(w), measure.slot(best), usize::MAX);
            if ord.is_lt() || (ord.is_eq() && w < best) {
                best = w;
            }
        }
        strategy.set(v, best);
    }
    strategy
}
