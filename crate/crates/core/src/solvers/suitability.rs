use thiserror::Error;

use crate::game::{attractor, ParityGame, Player, VertexIndex, VertexSet};
use crate::measure::MeasureMap;

/// A broken precondition of the strategy-deriving recursion.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SuitabilityViolation {
    #[error("vertex {0} in the working set is already top")]
    TopInside(VertexIndex),
    #[error("vertex {0} has no successor inside the working set")]
    DeadEnd(VertexIndex),
    #[error("odd vertex {from} escapes to {to}, outside the even attractor of lower priorities")]
    ProfitableOddEscape { from: VertexIndex, to: VertexIndex },
    #[error("even vertex {from} escapes to {to}, which is not top")]
    FiniteEvenEscape { from: VertexIndex, to: VertexIndex },
}

/// Checks that `set` is a valid working set under `measure`:
/// no top values inside, the induced subgame is total, every odd escape
/// leads into the even attractor (over non-top vertices) of priorities
/// below the set's minimum, and every even escape leads to a top vertex.
pub fn check_suitable(
    game: &ParityGame,
    measure: &MeasureMap,
    set: &VertexSet,
) -> Result<(), SuitabilityViolation> {
    if let Some(v) = set.iter().find(|&v| measure.is_top(v)) {
        return Err(SuitabilityViolation::TopInside(v));
    }
    if let Some(v) = set
        .iter()
        .find(|&v| !game.successors(v).iter().any(|&w| set.contains(w)))
    {
        return Err(SuitabilityViolation::DeadEnd(v));
    }

    let n = game.num_vertices();
    let min_priority = set.iter().map(|v| game.priority(v)).min();
    let mut safe: Option<VertexSet> = None;
    for v in set.iter() {
        for &w in game.successors(v) {
            if set.contains(w) {
                continue;
            }
            match game.owner(v) {
                Player::Even => {
                    if !measure.is_top(w) {
                        return Err(SuitabilityViolation::FiniteEvenEscape { from: v, to: w });
                    }
                }
                Player::Odd => {
                    let safe = safe.get_or_insert_with(|| {
                        let non_top = measure.top_set().complement();
                        let low = VertexSet::from_vertices(
                            n,
                            non_top
                                .iter()
                                .filter(|&u| Some(game.priority(u)) < min_priority),
                        );
                        attractor(game, Player::Even, &low, &non_top).0
                    });
                    if !safe.contains(w) {
                        return Err(SuitabilityViolation::ProfitableOddEscape { from: v, to: w });
                    }
                }
            }
        }
    }
    Ok(())
}
