use thiserror::Error;

use super::{ParityGame, Player, VertexIndex, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StrategyError {
    #[error("strategy for {player} is defined on vertex {vertex}, which belongs to the opponent")]
    WrongOwner { player: Player, vertex: VertexIndex },
    #[error("strategy moves from {from} to {to}, which is not an edge")]
    NotAnEdge { from: VertexIndex, to: VertexIndex },
    #[error("strategy covers {len} vertices but the game has {expected}")]
    SizeMismatch { len: usize, expected: usize },
}

/// A partial positional strategy: for some vertices of `player`, the
/// successor to move to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strategy {
    player: Player,
    choice: Vec<Option<VertexIndex>>,
}

impl Strategy {
    pub fn new(player: Player, num_vertices: usize) -> Self {
        Strategy {
            player,
            choice: vec![None; num_vertices],
        }
    }

    pub fn player(&self) -> Player {
        self.player
    }

    pub fn num_vertices(&self) -> usize {
        self.choice.len()
    }

    pub fn get(&self, v: VertexIndex) -> Option<VertexIndex> {
        self.choice.get(v).copied().flatten()
    }

    pub fn set(&mut self, v: VertexIndex, successor: VertexIndex) {
        self.choice[v] = Some(successor);
    }

    pub fn unset(&mut self, v: VertexIndex) {
        self.choice[v] = None;
    }

    pub fn is_defined(&self, v: VertexIndex) -> bool {
        self.get(v).is_some()
    }

    /// `(vertex, successor)` pairs in ascending vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (VertexIndex, VertexIndex)> + '_ {
        self.choice
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.map(|w| (v, w)))
    }

    pub fn domain(&self) -> VertexSet {
        VertexSet::from_vertices(self.choice.len(), self.iter().map(|(v, _)| v))
    }

    pub fn len(&self) -> usize {
        self.choice.iter().filter(|c| c.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Copies every choice of `other` whose vertex is not yet defined here.
    pub fn fill_from(&mut self, other: &Strategy) {
        debug_assert_eq!(self.player, other.player);
        for (v, w) in other.iter() {
            if self.choice[v].is_none() {
                self.choice[v] = Some(w);
            }
        }
    }

    /// Copies every choice of `other`, overwriting existing ones.
    pub fn override_with(&mut self, other: &Strategy) {
        debug_assert_eq!(self.player, other.player);
        for (v, w) in other.iter() {
            self.choice[v] = Some(w);
        }
    }

    /// The strategy with its domain cut down to `set`.
    pub fn restricted_to(&self, set: &VertexSet) -> Strategy {
        let mut out = Strategy::new(self.player, self.choice.len());
        for (v, w) in self.iter().filter(|(v, _)| set.contains(*v)) {
            out.set(v, w);
        }
        out
    }

    /// Checks that every choice belongs to the strategy's player and follows an edge.
    pub fn validate(&self, game: &ParityGame) -> Result<(), StrategyError> {
        if self.choice.len() != game.num_vertices() {
            return Err(StrategyError::SizeMismatch {
                len: self.choice.len(),
                expected: game.num_vertices(),
            });
        }
        for (v, w) in self.iter() {
            if game.owner(v) != self.player {
                return Err(StrategyError::WrongOwner {
                    player: self.player,
                    vertex: v,
                });
            }
            if !game.has_edge(v, w) {
                return Err(StrategyError::NotAnEdge { from: v, to: w });
            }
        }
        Ok(())
    }
}
