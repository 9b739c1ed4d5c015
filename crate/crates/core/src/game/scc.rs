use super::{ParityGame, VertexIndex, VertexSet};

/// A strongly connected component of a (sub)game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scc {
    /// Members in ascending order.
    pub vertices: Vec<VertexIndex>,
    /// No edge leaves the component (inside the decomposed subgame).
    pub bottom: bool,
}

/// Tarjan's algorithm on the subgame induced by `members`, with an explicit
/// call stack. Components come out in reverse topological order, so every
/// component's successors were emitted before it.
pub fn scc_decompose(game: &ParityGame, members: &VertexSet) -> Vec<Scc> {
    const UNVISITED: usize = usize::MAX;
    let n = game.num_vertices();
    let mut index = vec![UNVISITED; n];
    let mut lowlink = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut component = vec![UNVISITED; n];
    let mut stack: Vec<VertexIndex> = Vec::new();
    // (vertex, position in its successor list)
    let mut calls: Vec<(VertexIndex, usize)> = Vec::new();
    let mut next_index = 0;
    let mut components: Vec<Vec<VertexIndex>> = Vec::new();

    for root in members.iter() {
        if index[root] != UNVISITED {
            continue;
        }
        calls.push((root, 0));
        index[root] = next_index;
        lowlink[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(top) = calls.last_mut() {
            let v = top.0;
            let succ = game.successors(v);
            if top.1 < succ.len() {
                let w = succ[top.1];
                top.1 += 1;
                if !members.contains(w) {
                    continue;
                }
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    lowlink[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    calls.push((w, 0));
                } else if on_stack[w] {
                    lowlink[v] = lowlink[v].min(index[w]);
                }
                continue;
            }

            calls.pop();
            if let Some(&(parent, _)) = calls.last() {
                lowlink[parent] = lowlink[parent].min(lowlink[v]);
            }
            if lowlink[v] == index[v] {
                let id = components.len();
                let mut scc = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack holds the component");
                    on_stack[w] = false;
                    component[w] = id;
                    scc.push(w);
                    if w == v {
                        break;
                    }
                }
                scc.sort_unstable();
                components.push(scc);
            }
        }
    }

    components
        .into_iter()
        .enumerate()
        .map(|(id, vertices)| {
            let bottom = vertices.iter().all(|&v| {
                game.successors(v)
                    .iter()
                    .all(|&w| !members.contains(w) || component[w] == id)
            });
            Scc { vertices, bottom }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Player;
    use crate::samples::six_vertex_example;

    #[test]
    fn example_game_components() {
        let game = six_vertex_example();
        let sccs = scc_decompose(&game, &VertexSet::full(6));
        let mut found: Vec<(Vec<usize>, bool)> =
            sccs.into_iter().map(|c| (c.vertices, c.bottom)).collect();
        found.sort();
        assert_eq!(
            found,
            vec![(vec![0, 1, 2], false), (vec![3, 4, 5], true)]
        );
    }

    #[test]
    fn self_loop_and_two_cycle() {
        let single = ParityGame::new(vec![Player::Even], vec![0], vec![vec![0]]).unwrap();
        let sccs = scc_decompose(&single, &VertexSet::full(1));
        assert_eq!(sccs, vec![Scc { vertices: vec![0], bottom: true }]);

        let pair =
            ParityGame::new(vec![Player::Even; 2], vec![0, 1], vec![vec![1], vec![0]]).unwrap();
        let sccs = scc_decompose(&pair, &VertexSet::full(2));
        assert_eq!(sccs, vec![Scc { vertices: vec![0, 1], bottom: true }]);
    }

    #[test]
    fn long_chain_does_not_recurse() {
        let n = 200_000;
        let successors = (0..n).map(|v| vec![(v + 1) % n]).collect();
        let game = ParityGame::new(vec![Player::Odd; n], vec![1; n], successors).unwrap();
        let sccs = scc_decompose(&game, &VertexSet::full(n));
        assert_eq!(sccs.len(), 1);
        assert!(sccs[0].bottom);
    }
}
