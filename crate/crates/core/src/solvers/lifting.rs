use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::game::{ParityGame, VertexIndex, VertexSet};
use crate::measure::{LiftScratch, MeasureDomain, MeasureMap};

/// Order in which vertices are offered to the lifting operator. The least
/// fixpoint does not depend on it; running time does.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum LiftPolicy {
    /// Start with every vertex queued; after an effective lift, queue the
    /// lifted vertex's predecessors.
    #[default]
    Worklist,
    /// Sweep all vertices in index order until a full sweep changes nothing.
    RoundRobin,
    /// Like `RoundRobin`, but every sweep uses a fresh seeded permutation.
    Random { seed: u64 },
}

enum Schedule {
    Worklist {
        queue: VecDeque<VertexIndex>,
        queued: Vec<bool>,
    },
    RoundRobin {
        order: Vec<VertexIndex>,
        cursor: usize,
        misses: usize,
    },
    Random {
        order: Vec<VertexIndex>,
        cursor: usize,
        lifted_this_sweep: bool,
        rng: Box<ChaCha8Rng>,
    },
}

/// Drives lifting of a measure map over a fixed vertex set, one effective
/// lift per call to [`Lifter::next`].
pub(crate) struct Lifter<'g> {
    game: &'g ParityGame,
    domain: &'g MeasureDomain,
    members: Option<VertexSet>,
    schedule: Schedule,
    scratch: LiftScratch,
}

impl<'g> Lifter<'g> {
    /// Lifting over all of `game` (`members == None`) or over the subgame
    /// induced by `members`, looking only at successors inside it.
    pub(crate) fn new(
        game: &'g ParityGame,
        domain: &'g MeasureDomain,
        members: Option<&VertexSet>,
        policy: LiftPolicy,
    ) -> Self {
        let order: Vec<VertexIndex> = match members {
            Some(set) => set.to_vec(),
            None => game.vertices().collect(),
        };
        let schedule = match policy {
            LiftPolicy::Worklist => {
                let mut queued = vec![false; game.num_vertices()];
                for &v in &order {
                    queued[v] = true;
                }
                Schedule::Worklist {
                    queue: order.into(),
                    queued,
                }
            }
            LiftPolicy::RoundRobin => Schedule::RoundRobin {
                order,
                cursor: 0,
                misses: 0,
            },
            LiftPolicy::Random { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut order = order;
                order.shuffle(&mut rng);
                Schedule::Random {
                    order,
                    cursor: 0,
                    lifted_this_sweep: false,
                    rng: Box::new(rng),
                }
            }
        };
        Lifter {
            game,
            domain,
            members: members.cloned(),
            schedule,
            scratch: LiftScratch::new(domain.tuple_len()),
        }
    }

    /// Performs lifts until one is effective and returns that vertex, or
    /// returns `None` once the map is stable on the member set.
    pub(crate) fn next(&mut self, map: &mut MeasureMap) -> Option<VertexIndex> {
        let game = self.game;
        let domain = self.domain;
        let members = self.members.as_ref();
        let scratch = &mut self.scratch;
        match &mut self.schedule {
            Schedule::Worklist { queue, queued } => {
                while let Some(v) = queue.pop_front() {
                    queued[v] = false;
                    if map.lift_within(domain, game, v, members, scratch) {
                        for &u in game.predecessors(v) {
                            if !queued[u] && members.is_none_or(|s| s.contains(u)) {
                                queued[u] = true;
                                queue.push_back(u);
                            }
                        }
                        return Some(v);
                    }
                }
                None
            }
            Schedule::RoundRobin {
                order,
                cursor,
                misses,
            } => {
                while *misses < order.len() {
                    let v = order[*cursor];
                    *cursor = (*cursor + 1) % order.len();
                    if map.lift_within(domain, game, v, members, scratch) {
                        *misses = 0;
                        return Some(v);
                    }
                    *misses += 1;
                }
                None
            }
            Schedule::Random {
                order,
                cursor,
                lifted_this_sweep,
                rng,
            } => loop {
                if *cursor == order.len() {
                    if !*lifted_this_sweep {
                        return None;
                    }
                    order.shuffle(rng);
                    *cursor = 0;
                    *lifted_this_sweep = false;
                }
                let v = order[*cursor];
                *cursor += 1;
                if map.lift_within(domain, game, v, members, scratch) {
                    *lifted_this_sweep = true;
                    return Some(v);
                }
            },
        }
    }

    /// Lifts until stable and returns the number of effective lifts.
    pub(crate) fn run_to_fixpoint(&mut self, map: &mut MeasureMap) -> u64 {
        let mut count = 0;
        while self.next(map).is_some() {
            count += 1;
        }
        count
    }
}
