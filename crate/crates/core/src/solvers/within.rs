//! Single-pass solving with strategy synthesis for both players.
//!
//! Lifting runs on the even-biased measure only. The first time a vertex
//! `v` of priority `k` reaches top inside the working set `W`, odd owns a
//! dominion around `v` that never sees a priority below `k`. The solver
//! fixes odd's move at `v` to a successor of maximal measure, pulls in the
//! guarded attractor of `v`, recurses on the part of `W` that even cannot
//! steer towards priorities below `k`, and finally removes the resulting
//! odd dominion together with its attractor from `W`.

use std::time::Instant;

use crate::game::{attractor, guarded_attractor, ParityGame, Player, Priority, Strategy, VertexIndex, VertexSet};
use crate::measure::{cmp_opt, MeasureDomain, MeasureMap};

use super::{check_suitable, LiftPolicy, Lifter, SolveResult, SolveStats};

/// One resolved top event, recorded by [`solve_with_strategies_traced`].
#[derive(Clone, Debug)]
pub struct TopEvent {
    /// The vertex that was lifted to top.
    pub vertex: VertexIndex,
    pub priority: Priority,
    /// The working set at the time.
    pub working_set: VertexSet,
    /// Vertices resolved by the guarded attractor of `vertex`.
    pub resolved: VertexSet,
    /// The odd dominion assembled after the recursive call.
    pub dominion: VertexSet,
}

/// Solves `game`, returning the least progress measure, both winning
/// regions and winning strategies for both players.
pub fn solve_with_strategies(game: &ParityGame, policy: LiftPolicy) -> SolveResult {
    run(game, policy, false).0
}

/// As [`solve_with_strategies`], additionally returning every top event in
/// the order it was handled.
pub fn solve_with_strategies_traced(game: &ParityGame, policy: LiftPolicy) -> (SolveResult, Vec<TopEvent>) {
    run(game, policy, true)
}

fn run(game: &ParityGame, policy: LiftPolicy, trace: bool) -> (SolveResult, Vec<TopEvent>) {
    let started = Instant::now();
    let domain = MeasureDomain::for_game(game);
    let mut solver = WithinSolver {
        game,
        domain: &domain,
        policy,
        measure: MeasureMap::for_domain(game, &domain),
        odd_strategy: Strategy::new(Player::Odd, game.num_vertices()),
        stats: SolveStats::default(),
        events: trace.then(Vec::new),
    };
    solver.solve_within(VertexSet::full(game.num_vertices()));

    let WithinSolver {
        measure,
        odd_strategy,
        mut stats,
        events,
        ..
    } = solver;
    stats.lifts = measure.total_lifts();
    stats.millis = started.elapsed().as_secs_f64() * 1e3;
    (
        SolveResult::from_measure(game, measure, odd_strategy, stats),
        events.unwrap_or_default(),
    )
}

struct WithinSolver<'g> {
    game: &'g ParityGame,
    domain: &'g MeasureDomain,
    policy: LiftPolicy,
    measure: MeasureMap,
    odd_strategy: Strategy,
    stats: SolveStats,
    events: Option<Vec<TopEvent>>,
}

impl WithinSolver<'_> {
    fn solve_within(&mut self, mut working: VertexSet) {
        let game = self.game;
        let n = game.num_vertices();
        loop {
            debug_assert_eq!(
                check_suitable(game, &self.measure, &working),
                Ok(()),
                "working set {working:?} lost suitability"
            );

            let Some(v) = self.lift_until_first_top(&working) else {
                return;
            };
            self.stats.tops += 1;
            let k = game.priority(v);

            if game.owner(v) == Player::Odd {
                let choice = self.max_successor(v, &working);
                self.odd_strategy.set(v, choice);
            }

            let target = VertexSet::from_vertices(n, [v]);
            let (resolved, attract_strategy) = guarded_attractor(game, k, &target, &working)
                .expect("a vertex lifted to top has odd priority and lies in the working set");
            self.stats.attractors += 1;
            self.odd_strategy.fill_from(&attract_strategy);
            for u in resolved.iter() {
                self.measure.set_top(u);
            }

            let low = VertexSet::from_vertices(n, working.iter().filter(|&u| game.priority(u) < k));
            let (irrelevant, _) = attractor(game, Player::Even, &low, &working);
            self.stats.attractors += 1;
            let remaining = working.difference(&resolved.union(&irrelevant));
            if !remaining.is_empty() {
                self.solve_within(remaining.clone());
            }

            let mut dominion = resolved.clone();
            dominion.union_with(&VertexSet::from_vertices(
                n,
                remaining.iter().filter(|&u| self.measure.is_top(u)),
            ));
            let (attracted, attract_strategy) = attractor(game, Player::Odd, &dominion, &working);
            self.stats.attractors += 1;
            self.odd_strategy.fill_from(&attract_strategy);
            for u in attracted.iter() {
                self.measure.set_top(u);
            }

            if let Some(events) = self.events.as_mut() {
                events.push(TopEvent {
                    vertex: v,
                    priority: k,
                    working_set: working.clone(),
                    resolved,
                    dominion,
                });
            }

            working.difference_with(&attracted);
            if working.is_empty() {
                return;
            }
        }
    }

    /// Lifts inside `working` until stable (`None`) or until a lift yields top.
    fn lift_until_first_top(&mut self, working: &VertexSet) -> Option<VertexIndex> {
        let mut lifter = Lifter::new(self.game, self.domain, Some(working), self.policy);
        while let Some(v) = lifter.next(&mut self.measure) {
            if self.measure.is_top(v) {
                return Some(v);
            }
        }
        None
    }

    /// Successor inside `working` with the largest current measure, lowest
    /// index on ties.
    fn max_successor(&self, v: VertexIndex, working: &VertexSet) -> VertexIndex {
        let mut best: Option<VertexIndex> = None;
        for &w in self.game.successors(v) {
            if !working.contains(w) {
                continue;
            }
            best = match best {
                None => Some(w),
                Some(b) => {
                    let ord = cmp_opt(self.measure.slot(w), self.measure.slot(b), usize::MAX);
                    if ord.is_gt() || (ord.is_eq() && w < b) {
                        Some(w)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        best.expect("working set induces a total subgame")
    }
}
