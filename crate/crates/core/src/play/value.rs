use thiserror::Error;

use crate::game::{ParityGame, Priority, VertexIndex};
use crate::measure::Measure;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlayError {
    #[error("a lasso needs a non-empty cycle")]
    EmptyCycle,
    #[error("vertex {0} is not in the game")]
    UnknownVertex(VertexIndex),
    #[error("{from} -> {to} is not an edge")]
    NotAnEdge { from: VertexIndex, to: VertexIndex },
}

/// The infinite play `stem · cycle^ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LassoPlay {
    stem: Vec<VertexIndex>,
    cycle: Vec<VertexIndex>,
}

impl LassoPlay {
    /// Checks that every consecutive pair, including stem to cycle and the
    /// cycle's wrap-around, is an edge of `game`.
    pub fn new(game: &ParityGame, stem: Vec<VertexIndex>, cycle: Vec<VertexIndex>) -> Result<Self, PlayError> {
        if cycle.is_empty() {
            return Err(PlayError::EmptyCycle);
        }
        if let Some(&v) = stem.iter().chain(&cycle).find(|&&v| v >= game.num_vertices()) {
            return Err(PlayError::UnknownVertex(v));
        }
        let walk: Vec<VertexIndex> = stem.iter().chain(&cycle).copied().chain([cycle[0]]).collect();
        for pair in walk.windows(2) {
            if !game.has_edge(pair[0], pair[1]) {
                return Err(PlayError::NotAnEdge {
                    from: pair[0],
                    to: pair[1],
                });
            }
        }
        Ok(LassoPlay { stem, cycle })
    }

    pub fn stem(&self) -> &[VertexIndex] {
        &self.stem
    }

    pub fn cycle(&self) -> &[VertexIndex] {
        &self.cycle
    }
}

/// Value of a play for the even player: top if the least priority on the
/// cycle is odd, otherwise for each odd `i` the number of occurrences of
/// `i` before the first priority below `i`.
pub fn play_value(game: &ParityGame, play: &LassoPlay) -> Measure {
    let prio = |vs: &[VertexIndex]| -> Vec<Priority> { vs.iter().map(|&v| game.priority(v)).collect() };
    lasso_value(&prio(&play.stem), &prio(&play.cycle), game.tuple_len())
}

/// [`play_value`] on a priority word `stem · cycle^ω` with tuples of length `d`.
pub fn lasso_value(stem: &[Priority], cycle: &[Priority], d: usize) -> Measure {
    let min = cycle.iter().min().expect("cycle is non-empty");
    if min % 2 == 1 {
        return Measure::Top;
    }
    // One pass over the cycle suffices: its minimum is even and closes
    // every odd window above it.
    finite_word_value(stem.iter().chain(cycle), d)
}

/// Counts along a finite play; no top clause applies.
pub fn finite_play_value(game: &ParityGame, play: &[VertexIndex]) -> Measure {
    finite_word_value(play.iter().map(|&v| game.priority(v)).collect::<Vec<_>>().iter(), game.tuple_len())
}

fn finite_word_value<'a>(word: impl Iterator<Item = &'a Priority>, d: usize) -> Measure {
    let mut counts = vec![0u32; d];
    let mut running_min = Priority::MAX;
    for &p in word {
        if p % 2 == 1 && p <= running_min {
            counts[p as usize] += 1;
        }
        running_min = running_min.min(p);
    }
    Measure::Finite(counts)
}
