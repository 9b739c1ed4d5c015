use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::game::{attractor, scc_decompose, subgame, ParityGame, Player, Strategy, VertexSet};
use crate::measure::{MeasureDomain, MeasureMap};

use super::{extract_even_strategy, LiftPolicy, Lifter, SolveResult, SolveStats};

const DUAL_SEED_MASK: u64 = 0x9e37_79b9_7f4a_7c15;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EspmOptions {
    pub policy: LiftPolicy,
    /// After the race, also stabilise the losing side so that strategies
    /// for both players are available on every component.
    pub complete_strategies: bool,
}

/// Races even and odd measures over bottom components, strategies for both
/// players included.
pub fn espm(game: &ParityGame, policy: LiftPolicy) -> SolveResult {
    espm_with_options(
        game,
        EspmOptions {
            policy,
            complete_strategies: true,
        },
    )
}

pub fn espm_with_options(game: &ParityGame, options: EspmOptions) -> SolveResult {
    let started = Instant::now();
    let n = game.num_vertices();
    let mut stats = SolveStats::default();
    let mut even_region = VertexSet::empty(n);
    let mut odd_region = VertexSet::empty(n);
    let mut even_strategy = Strategy::new(Player::Even, n);
    let mut odd_strategy = Strategy::new(Player::Odd, n);

    let mut remaining = VertexSet::full(n);
    while !remaining.is_empty() {
        let component = scc_decompose(game, &remaining)
            .into_iter()
            .find(|c| c.bottom)
            .expect("a non-empty graph has a bottom component");
        stats.sccs += 1;
        let members = VertexSet::from_vertices(n, component.vertices.iter().copied());
        let (local, original) = subgame(game, &members)
            .to_game()
            .expect("a bottom component of a total subgame is total");

        let solved = race(&local, options, &mut stats);
        let mut won_even = VertexSet::empty(n);
        let mut won_odd = VertexSet::empty(n);
        for (i, &v) in original.iter().enumerate() {
            if solved.even_wins[i] {
                won_even.insert(v);
            } else {
                won_odd.insert(v);
            }
        }
        for (i, w) in solved.even_strategy.iter() {
            even_strategy.set(original[i], original[w]);
        }
        for (i, w) in solved.odd_strategy.iter() {
            odd_strategy.set(original[i], original[w]);
        }

        let (attr_even, sigma) = attractor(game, Player::Even, &won_even, &remaining);
        even_strategy.fill_from(&sigma);
        remaining.difference_with(&attr_even);
        let (attr_odd, tau) = attractor(game, Player::Odd, &won_odd, &remaining);
        odd_strategy.fill_from(&tau);
        remaining.difference_with(&attr_odd);
        stats.attractors += 2;

        even_region.union_with(&attr_even);
        odd_region.union_with(&attr_odd);
    }

    stats.millis = started.elapsed().as_secs_f64() * 1e3;
    SolveResult {
        even_strategy: even_strategy.restricted_to(&even_region),
        odd_strategy: odd_strategy.restricted_to(&odd_region),
        even_region,
        odd_region,
        measure: None,
        stats,
    }
}

struct Race {
    even_wins: Vec<bool>,
    even_strategy: Strategy,
    odd_strategy: Strategy,
}

/// Alternates single lifts of the even measure on `game` and of the even
/// measure on its dual until one of them is stable.
fn race(game: &ParityGame, options: EspmOptions, stats: &mut SolveStats) -> Race {
    let dual = game.dualize();
    let domain = MeasureDomain::for_game(game);
    let dual_domain = MeasureDomain::for_game(&dual);
    let dual_policy = match options.policy {
        LiftPolicy::Random { seed } => LiftPolicy::Random {
            seed: seed ^ DUAL_SEED_MASK,
        },
        other => other,
    };

    let mut even = MeasureMap::for_domain(game, &domain);
    let mut odd = MeasureMap::for_domain(&dual, &dual_domain);
    let mut even_lifter = Lifter::new(game, &domain, None, options.policy);
    let mut odd_lifter = Lifter::new(&dual, &dual_domain, None, dual_policy);

    let even_stable = loop {
        let lifted = even_lifter.next(&mut even);
        if lifted.is_some_and(|v| even.is_top(v)) {
            stats.tops += 1;
        }
        if lifted.is_none() {
            break true;
        }
        let lifted = odd_lifter.next(&mut odd);
        if lifted.is_some_and(|v| odd.is_top(v)) {
            stats.tops += 1;
        }
        if lifted.is_none() {
            break false;
        }
    };
    stats.lifts += even.total_lifts() + odd.total_lifts();

    if options.complete_strategies {
        if even_stable {
            odd_lifter.run_to_fixpoint(&mut odd);
        } else {
            even_lifter.run_to_fixpoint(&mut even);
        }
    }

    let even_wins: Vec<bool> = if even_stable {
        game.vertices().map(|v| !even.is_top(v)).collect()
    } else {
        game.vertices().map(|v| odd.is_top(v)).collect()
    };
    let n = game.num_vertices();
    let mut even_strategy = Strategy::new(Player::Even, n);
    let mut odd_strategy = Strategy::new(Player::Odd, n);
    if even_stable || options.complete_strategies {
        for (v, w) in extract_even_strategy(game, &even).iter() {
            even_strategy.set(v, w);
        }
    }
    if !even_stable || options.complete_strategies {
        for (v, w) in extract_even_strategy(&dual, &odd).iter() {
            odd_strategy.set(v, w);
        }
    }
    Race {
        even_wins,
        even_strategy,
        odd_strategy,
    }
}
