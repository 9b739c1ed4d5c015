//! Replaying a lifting history backwards to play for the odd player.
//!
//! The replay walks the history graph in step with the play. At odd
//! vertices it moves to the successor whose snapshot value was largest; at
//! even vertices the opponent picks. Revisiting a vertex after an
//! odd-dominated stretch rewinds the visited list to the earlier visit.

use std::collections::HashMap;

use thiserror::Error;

use crate::game::{ParityGame, Player, Priority, VertexIndex};
use crate::measure::Measure;

use super::lhg::{LiftHistory, NodeId};
use super::value::{finite_play_value, lasso_value};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OddResponseError {
    #[error("vertex {0} does not occur in the lifting history")]
    UnknownVertex(VertexIndex),
    #[error("{choice} is not a successor of {vertex}")]
    InvalidChoice { vertex: VertexIndex, choice: VertexIndex },
    #[error("no even choice is pending")]
    NotAwaitingChoice,
}

/// Extra reason to stop besides reaching a zero value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TermCond {
    #[default]
    Never,
    /// Stop on reaching a vertex that is top in the history's final measure.
    TopVertex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    ZeroMeasure,
    TermCond,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Terminated(Termination),
    /// The current vertex is even's; call [`OddResponse::choose`].
    AwaitEven { vertex: VertexIndex, choices: Vec<VertexIndex> },
    /// Odd moved from `from` to `to`.
    OddMoved { from: VertexIndex, to: VertexIndex },
}

#[derive(Clone, Debug)]
struct Visit {
    node: NodeId,
    /// Least priority on the play from this visit up to the present.
    min_since: Priority,
}

/// Summary of the replay state that determines its future.
pub type StateKey = (NodeId, Vec<(NodeId, Priority)>);

#[derive(Clone, Debug)]
pub struct OddResponse<'h> {
    game: &'h ParityGame,
    history: &'h LiftHistory,
    termcond: TermCond,
    current: NodeId,
    played: Vec<VertexIndex>,
    visited: Vec<Visit>,
    awaiting: bool,
    finished: Option<Termination>,
    odd_choices: Vec<(VertexIndex, VertexIndex)>,
}

impl<'h> OddResponse<'h> {
    /// Starts at the current history node of `v0`.
    pub fn new(
        game: &'h ParityGame,
        history: &'h LiftHistory,
        v0: VertexIndex,
        termcond: TermCond,
    ) -> Result<Self, OddResponseError> {
        let current = history.latest(v0).ok_or(OddResponseError::UnknownVertex(v0))?;
        Ok(OddResponse {
            game,
            history,
            termcond,
            current,
            played: Vec::new(),
            visited: Vec::new(),
            awaiting: false,
            finished: None,
            odd_choices: Vec::new(),
        })
    }

    pub fn vertex(&self) -> VertexIndex {
        self.history.node(self.current).vertex
    }

    pub fn value(&self) -> &Measure {
        &self.history.node(self.current).value
    }

    /// The play so far, excluding the current vertex.
    pub fn played(&self) -> &[VertexIndex] {
        &self.played
    }

    /// Odd's moves so far, as `(from, to)` pairs.
    pub fn odd_choices(&self) -> &[(VertexIndex, VertexIndex)] {
        &self.odd_choices
    }

    pub fn finished(&self) -> Option<Termination> {
        self.finished
    }

    pub fn key(&self) -> StateKey {
        (
            self.current,
            self.visited.iter().map(|v| (v.node, v.min_since)).collect(),
        )
    }

    /// Advances by one move, or reports termination or a pending even choice.
    pub fn step(&mut self) -> Step {
        if let Some(reason) = self.finished {
            return Step::Terminated(reason);
        }
        let u = self.vertex();
        if self.awaiting {
            return Step::AwaitEven {
                vertex: u,
                choices: self.game.successors(u).to_vec(),
            };
        }

        let reason = if self.value().is_zero() {
            Some(Termination::ZeroMeasure)
        } else if self.termcond == TermCond::TopVertex && self.history.measure().is_top(u) {
            Some(Termination::TermCond)
        } else {
            None
        };
        if let Some(reason) = reason {
            self.finished = Some(reason);
            return Step::Terminated(reason);
        }

        let p = self.game.priority(u);
        if let Some(j) = self.visited.iter().position(|visit| {
            self.history.node(visit.node).vertex == u && visit.min_since.min(p) % 2 == 1
        }) {
            self.current = self.visited[j].node;
            self.visited.truncate(j);
        }

        for visit in &mut self.visited {
            visit.min_since = visit.min_since.min(p);
        }
        self.played.push(u);
        self.visited.push(Visit {
            node: self.current,
            min_since: Priority::MAX,
        });

        match self.game.owner(u) {
            Player::Even => {
                self.awaiting = true;
                Step::AwaitEven {
                    vertex: u,
                    choices: self.game.successors(u).to_vec(),
                }
            }
            Player::Odd => {
                let next = self
                    .history
                    .max_successor(self.current)
                    .expect("non-zero values were produced by a lift");
                self.current = next;
                let to = self.vertex();
                self.odd_choices.push((u, to));
                Step::OddMoved { from: u, to }
            }
        }
    }

    /// Applies even's choice after [`Step::AwaitEven`].
    pub fn choose(&mut self, choice: VertexIndex) -> Result<(), OddResponseError> {
        if !self.awaiting {
            return Err(OddResponseError::NotAwaitingChoice);
        }
        let u = self.vertex();
        let node = self.history.node(self.current);
        let slot = self
            .game
            .successors(u)
            .iter()
            .position(|&w| w == choice)
            .ok_or(OddResponseError::InvalidChoice { vertex: u, choice })?;
        self.current = node.snapshot[slot];
        self.awaiting = false;
        Ok(())
    }
}

/// A finished replay: either terminated, or caught in a loop in which case
/// `cycle_start` marks where the repeating part of `play` begins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub play: Vec<VertexIndex>,
    pub odd_choices: Vec<(VertexIndex, VertexIndex)>,
    pub termination: Option<Termination>,
    pub cycle_start: Option<usize>,
}

impl Transcript {
    pub fn met_termcond(&self) -> bool {
        self.termination == Some(Termination::TermCond)
    }

    /// Play value of the transcript: the counts along a finite play, or the
    /// value of the infinite play for a looping one.
    pub fn value(&self, game: &ParityGame) -> Measure {
        match self.cycle_start {
            None => finite_play_value(game, &self.play),
            Some(start) => {
                let prio: Vec<Priority> = self.play.iter().map(|&v| game.priority(v)).collect();
                lasso_value(&prio[..start], &prio[start..], game.tuple_len())
            }
        }
    }
}

/// Replays against the given even adversary until termination or until a
/// replay state repeats.
pub fn odd_response(
    game: &ParityGame,
    history: &LiftHistory,
    v0: VertexIndex,
    termcond: TermCond,
    mut adversary: impl FnMut(VertexIndex, &[VertexIndex]) -> VertexIndex,
) -> Result<Transcript, OddResponseError> {
    let mut replay = OddResponse::new(game, history, v0, termcond)?;
    let mut seen: HashMap<StateKey, usize> = HashMap::new();
    loop {
        if let Some(start) = seen.insert(replay.key(), replay.played().len()) {
            return Ok(transcript(&replay, Some(start)));
        }
        match replay.step() {
            Step::Terminated(_) => return Ok(transcript(&replay, None)),
            Step::AwaitEven { vertex, choices } => replay.choose(adversary(vertex, &choices))?,
            Step::OddMoved { .. } => {}
        }
    }
}

fn transcript(replay: &OddResponse<'_>, cycle_start: Option<usize>) -> Transcript {
    Transcript {
        play: replay.played().to_vec(),
        odd_choices: replay.odd_choices().to_vec(),
        termination: replay.finished(),
        cycle_start,
    }
}

/// Every transcript the replay can produce from `v0`, over all even choices.
/// Stops collecting once `limit` transcripts have been found.
pub fn all_transcripts(
    game: &ParityGame,
    history: &LiftHistory,
    v0: VertexIndex,
    termcond: TermCond,
    limit: usize,
) -> Result<Vec<Transcript>, OddResponseError> {
    let start = OddResponse::new(game, history, v0, termcond)?;
    let mut out = Vec::new();
    let mut path: HashMap<StateKey, usize> = HashMap::new();
    explore(start, &mut path, &mut out, limit);
    Ok(out)
}

fn explore<'h>(
    mut replay: OddResponse<'h>,
    path: &mut HashMap<StateKey, usize>,
    out: &mut Vec<Transcript>,
    limit: usize,
) {
    let mut added = Vec::new();
    loop {
        if out.len() >= limit {
            break;
        }
        let key = replay.key();
        if let Some(&start) = path.get(&key) {
            out.push(transcript(&replay, Some(start)));
            break;
        }
        path.insert(key.clone(), replay.played().len());
        added.push(key);
        match replay.step() {
            Step::Terminated(_) => {
                out.push(transcript(&replay, None));
                break;
            }
            Step::OddMoved { .. } => {}
            Step::AwaitEven { choices, .. } => {
                let mut distinct = choices;
                distinct.sort_unstable();
                distinct.dedup();
                for choice in distinct {
                    let mut branch = replay.clone();
                    branch.choose(choice).expect("choice is a successor");
                    explore(branch, path, out, limit);
                }
                break;
            }
        }
    }
    for key in added {
        path.remove(&key);
    }
}

/// Whether a transcript either met the termination condition or reached a
/// value of at least `bound`.
pub fn transcript_meets_bound(game: &ParityGame, transcript: &Transcript, bound: &Measure) -> bool {
    transcript.met_termcond() || transcript.value(game) >= *bound
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::play::lhg::record_lhg;
    use crate::samples::six_vertex_example;
    use crate::solvers::LiftPolicy;

    #[test]
    fn example_replay_reaches_v6() {
        let game = six_vertex_example();
        let history = record_lhg(&game, LiftPolicy::Worklist, true);
        let top_node = history.latest(5).unwrap();
        let v0 = history.node(history.max_successor(top_node).unwrap()).vertex;
        assert_eq!(v0, 3);

        let transcripts = all_transcripts(&game, &history, v0, TermCond::TopVertex, 1000).unwrap();
        assert!(!transcripts.is_empty());
        for t in &transcripts {
            assert!(t.met_termcond(), "{t:?}");
            assert_eq!(t.play.first(), Some(&3));
        }
        let bound = history.measure().get(v0);
        assert!(transcripts.iter().all(|t| transcript_meets_bound(&game, t, &bound)));
    }

    #[test]
    fn zero_start_terminates_immediately() {
        let game = six_vertex_example();
        let history = record_lhg(&game, LiftPolicy::Worklist, false);
        let t = odd_response(&game, &history, 0, TermCond::Never, |_, c| c[0]).unwrap();
        assert!(t.play.is_empty());
        assert_eq!(t.termination, Some(Termination::ZeroMeasure));
    }

    #[test]
    fn unknown_start_is_rejected() {
        let game = six_vertex_example();
        let history = record_lhg(&game, LiftPolicy::Worklist, false);
        assert_eq!(
            OddResponse::new(&game, &history, 17, TermCond::Never).unwrap_err(),
            OddResponseError::UnknownVertex(17)
        );
    }

    #[test]
    fn play_value_bound_on_example() {
        let game = six_vertex_example();
        let history = record_lhg(&game, LiftPolicy::Worklist, false);
        for v0 in game.vertices() {
            let bound = history.measure().get(v0);
            for t in all_transcripts(&game, &history, v0, TermCond::Never, 10_000).unwrap() {
                assert!(transcript_meets_bound(&game, &t, &bound), "v0={v0} {t:?}");
            }
        }
    }
}
