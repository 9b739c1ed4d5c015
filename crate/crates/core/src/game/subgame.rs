use super::{GameError, ParityGame, VertexIndex, VertexSet};

/// The structure induced by a vertex subset: only edges with both ends
/// inside `members` remain.
#[derive(Clone, Debug)]
pub struct Subgame<'a> {
    game: &'a ParityGame,
    members: VertexSet,
    total: bool,
}

/// Restricts `game` to `members`. Whether the result is a proper game (no
/// dead ends) is reported by [`Subgame::is_total`].
pub fn subgame<'a>(game: &'a ParityGame, members: &VertexSet) -> Subgame<'a> {
    let total = members
        .iter()
        .all(|v| game.successors(v).iter().any(|&w| members.contains(w)));
    Subgame {
        game,
        members: members.clone(),
        total,
    }
}

impl<'a> Subgame<'a> {
    pub fn game(&self) -> &'a ParityGame {
        self.game
    }

    pub fn members(&self) -> &VertexSet {
        &self.members
    }

    pub fn is_total(&self) -> bool {
        self.total
    }

    pub fn successors(&self, v: VertexIndex) -> impl Iterator<Item = VertexIndex> + '_ {
        self.game
            .successors(v)
            .iter()
            .copied()
            .filter(move |&w| self.members.contains(w))
    }

    pub fn edges(&self) -> Vec<(VertexIndex, VertexIndex)> {
        self.members
            .iter()
            .flat_map(|v| self.successors(v).map(move |w| (v, w)))
            .collect()
    }

    /// Copies the subgame into a standalone game with vertices renumbered
    /// densely in ascending order. Returns the game and, for each new vertex,
    /// its index in the host game.
    pub fn to_game(&self) -> Result<(ParityGame, Vec<VertexIndex>), GameError> {
        let host = self.game;
        let original: Vec<VertexIndex> = self.members.to_vec();
        let mut renumber = vec![usize::MAX; host.num_vertices()];
        for (new, &old) in original.iter().enumerate() {
            renumber[old] = new;
        }
        let successors = original
            .iter()
            .map(|&v| self.successors(v).map(|w| renumber[w]).collect())
            .collect();
        let game = ParityGame::new(
            original.iter().map(|&v| host.owner(v)).collect(),
            original.iter().map(|&v| host.priority(v)).collect(),
            successors,
        )?;
        let names = original.iter().map(|&v| host.names()[v].clone()).collect();
        Ok((game.with_names(names), original))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::six_vertex_example;

    #[test]
    fn restriction_to_bottom_component() {
        let game = six_vertex_example();
        let sub = subgame(&game, &VertexSet::from_vertices(6, [3, 4, 5]));
        assert!(sub.is_total());
        assert_eq!(sub.edges(), vec![(3, 4), (3, 5), (4, 5), (5, 3)]);
        let (standalone, map) = sub.to_game().unwrap();
        assert_eq!(map, vec![3, 4, 5]);
        assert_eq!(standalone.successors(0), &[1, 2]);
        assert_eq!(standalone.name(2), Some("v6"));
    }

    #[test]
    fn whole_game_and_dead_end() {
        let game = six_vertex_example();
        let all = subgame(&game, &VertexSet::full(6));
        assert!(all.is_total());
        assert_eq!(all.edges(), game.edges().collect::<Vec<_>>());

        let lonely = subgame(&game, &VertexSet::from_vertices(6, [4]));
        assert!(!lonely.is_total());
        assert!(lonely.to_game().is_err());
    }
}
