//! Small hand-made games used by tests, documentation and the CLI.

use crate::game::{ParityGame, Player};

/// Six vertices `v1..v6` (indices 0..5). Even wins `{v1, v2, v3}` by moving
/// `v2 -> v1` and `v3 -> v2`; odd wins `{v4, v5, v6}` by moving `v4 -> v6`
/// and `v5 -> v6`.
pub fn six_vertex_example() -> ParityGame {
    use Player::*;
    ParityGame::new(
        vec![Odd, Even, Even, Odd, Odd, Odd],
        vec![0, 3, 3, 2, 0, 1],
        vec![vec![0, 1], vec![2, 0], vec![3, 1], vec![4, 5], vec![5], vec![3]],
    )
    .expect("example game is total")
    .with_names((1..=6).map(|i| Some(format!("v{i}"))).collect())
}
