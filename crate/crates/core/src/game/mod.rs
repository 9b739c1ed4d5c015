//! Parity game graphs and the structural operations every solver builds on.
//!
//! Games use the min-parity convention: the parity of the least priority
//! that occurs infinitely often decides the winner.

mod attractor;
mod scc;
mod set;
mod strategy;
mod subgame;

pub use attractor::{attractor, guarded_attractor, AttractorError};
pub use scc::{scc_decompose, Scc};
pub use set::VertexSet;
pub use strategy::{Strategy, StrategyError};
pub use subgame::{subgame, Subgame};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense vertex index in `0..n`.
pub type VertexIndex = usize;

/// Vertex priority. Smaller values are more significant.
pub type Priority = u32;

/// The two players. `Even` wins plays whose decisive priority is even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    Even,
    Odd,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Even => Player::Odd,
            Player::Odd => Player::Even,
        }
    }

    /// The player favoured by a priority.
    pub fn of_priority(priority: Priority) -> Player {
        if priority % 2 == 0 {
            Player::Even
        } else {
            Player::Odd
        }
    }

    /// Owner bit as used by the PGSolver format.
    pub fn to_index(self) -> usize {
        match self {
            Player::Even => 0,
            Player::Odd => 1,
        }
    }

    pub fn from_index(index: usize) -> Option<Player> {
        match index {
            0 => Some(Player::Even),
            1 => Some(Player::Odd),
            _ => None,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::Even => write!(f, "even"),
            Player::Odd => write!(f, "odd"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("a parity game needs at least one vertex")]
    Empty,
    #[error("vertex {0} has no successors")]
    NoSuccessors(VertexIndex),
    #[error("vertex {from} has successor {to} which is not a vertex")]
    DanglingEdge { from: VertexIndex, to: VertexIndex },
    #[error("owner, priority and successor lists disagree in length")]
    LengthMismatch,
}

/// Result of [`ParityGame::solitaire_player`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solitaire {
    /// Only this player has vertices with more than one successor.
    Only(Player),
    /// Both players have a real choice somewhere.
    Both,
    /// Every vertex has exactly one successor.
    Neither,
}

/// A parity game with a total edge relation, stored in compressed
/// adjacency form with a precomputed predecessor relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityGame {
    owner: Vec<Player>,
    priority: Vec<Priority>,
    succ_offsets: Vec<usize>,
    succ: Vec<VertexIndex>,
    pred_offsets: Vec<usize>,
    pred: Vec<VertexIndex>,
    names: Vec<Option<String>>,
}

impl ParityGame {
    /// Builds a game, checking totality and that every edge target exists.
    pub fn new(
        owner: Vec<Player>,
        priority: Vec<Priority>,
        successors: Vec<Vec<VertexIndex>>,
    ) -> Result<Self, GameError> {
        let n = owner.len();
        if n == 0 {
            return Err(GameError::Empty);
        }
        if priority.len() != n || successors.len() != n {
            return Err(GameError::LengthMismatch);
        }

        let mut succ_offsets = Vec::with_capacity(n + 1);
        let mut succ = Vec::new();
        succ_offsets.push(0);
        for (v, list) in successors.iter().enumerate() {
            if list.is_empty() {
                return Err(GameError::NoSuccessors(v));
            }
            for &w in list {
                if w >= n {
                    return Err(GameError::DanglingEdge { from: v, to: w });
                }
                succ.push(w);
            }
            succ_offsets.push(succ.len());
        }

        let mut in_degree = vec![0usize; n];
        for &w in &succ {
            in_degree[w] += 1;
        }
        let mut pred_offsets = Vec::with_capacity(n + 1);
        pred_offsets.push(0);
        for v in 0..n {
            pred_offsets.push(pred_offsets[v] + in_degree[v]);
        }
        let mut fill = pred_offsets.clone();
        let mut pred = vec![0; succ.len()];
        for v in 0..n {
            for &w in &succ[succ_offsets[v]..succ_offsets[v + 1]] {
                pred[fill[w]] = v;
                fill[w] += 1;
            }
        }

        Ok(ParityGame {
            owner,
            priority,
            succ_offsets,
            succ,
            pred_offsets,
            pred,
            names: vec![None; n],
        })
    }

    /// Attaches optional vertex names. Missing trailing entries stay unnamed.
    pub fn with_names(mut self, names: Vec<Option<String>>) -> Self {
        for (slot, name) in self.names.iter_mut().zip(names) {
            *slot = name;
        }
        self
    }

    pub fn num_vertices(&self) -> usize {
        self.owner.len()
    }

    pub fn num_edges(&self) -> usize {
        self.succ.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexIndex> {
        0..self.num_vertices()
    }

    pub fn owner(&self, v: VertexIndex) -> Player {
        self.owner[v]
    }

    pub fn priority(&self, v: VertexIndex) -> Priority {
        self.priority[v]
    }

    pub fn successors(&self, v: VertexIndex) -> &[VertexIndex] {
        &self.succ[self.succ_offsets[v]..self.succ_offsets[v + 1]]
    }

    pub fn predecessors(&self, v: VertexIndex) -> &[VertexIndex] {
        &self.pred[self.pred_offsets[v]..self.pred_offsets[v + 1]]
    }

    pub fn has_edge(&self, from: VertexIndex, to: VertexIndex) -> bool {
        self.successors(from).contains(&to)
    }

    pub fn name(&self, v: VertexIndex) -> Option<&str> {
        self.names[v].as_deref()
    }

    /// Name if present, otherwise the index.
    pub fn label(&self, v: VertexIndex) -> String {
        match self.name(v) {
            Some(name) => name.to_string(),
            None => v.to_string(),
        }
    }

    pub fn names(&self) -> &[Option<String>] {
        &self.names
    }

    pub fn owners(&self) -> &[Player] {
        &self.owner
    }

    pub fn priorities(&self) -> &[Priority] {
        &self.priority
    }

    pub fn max_priority(&self) -> Priority {
        self.priority.iter().copied().max().unwrap_or(0)
    }

    /// Length of measure tuples: one more than the largest priority.
    pub fn tuple_len(&self) -> usize {
        self.max_priority() as usize + 1
    }

    /// All edges in vertex order, successors in stored order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexIndex, VertexIndex)> + '_ {
        self.vertices()
            .flat_map(move |v| self.successors(v).iter().map(move |&w| (v, w)))
    }

    pub fn vertices_owned_by(&self, player: Player) -> impl Iterator<Item = VertexIndex> + '_ {
        self.vertices().filter(move |&v| self.owner[v] == player)
    }

    /// Swaps ownership and shifts every priority up by one. The winning
    /// regions of the result are those of `self` with players exchanged.
    pub fn dualize(&self) -> ParityGame {
        ParityGame {
            owner: self.owner.iter().map(|p| p.opponent()).collect(),
            priority: self.priority.iter().map(|p| p + 1).collect(),
            succ_offsets: self.succ_offsets.clone(),
            succ: self.succ.clone(),
            pred_offsets: self.pred_offsets.clone(),
            pred: self.pred.clone(),
            names: self.names.clone(),
        }
    }

    /// Keeps only the chosen edge at every vertex in the strategy's domain.
    pub fn restrict_to_strategy(&self, strategy: &Strategy) -> Result<ParityGame, StrategyError> {
        strategy.validate(self)?;
        let successors = self
            .vertices()
            .map(|v| match strategy.get(v) {
                Some(w) => vec![w],
                None => self.successors(v).to_vec(),
            })
            .collect();
        let game = ParityGame::new(self.owner.clone(), self.priority.clone(), successors)
            .expect("restriction of a total game by a valid strategy is total");
        Ok(game.with_names(self.names.clone()))
    }

    /// Which player, if any, has a real choice in this game.
    pub fn solitaire_player(&self) -> Solitaire {
        let chooses = |player: Player| {
            self.vertices_owned_by(player)
                .any(|v| distinct_count(self.successors(v)) > 1)
        };
        match (chooses(Player::Even), chooses(Player::Odd)) {
            (true, true) => Solitaire::Both,
            (true, false) => Solitaire::Only(Player::Even),
            (false, true) => Solitaire::Only(Player::Odd),
            (false, false) => Solitaire::Neither,
        }
    }
}

fn distinct_count(list: &[VertexIndex]) -> usize {
    let mut sorted = list.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len()
}
