//! Small reference games used by the tests, the CLI and the docs.

use std::collections::BTreeMap;

use crate::arena::{ReachabilityGame, WeightedArena};
use crate::mealy::{memoryless_machine, MealyMachine};

/// Three players; `v0` belongs to player 1, `v2` to player 2, the rest to
/// player 0. Unit weights everywhere.
pub fn three_player_game() -> ReachabilityGame {
    let mut a = WeightedArena::new(3);
    let v: Vec<_> = [1, 0, 2, 0, 0, 0]
        .iter()
        .enumerate()
        .map(|(k, &o)| a.add_vertex(format!("v{k}"), o))
        .collect();
    for (x, y) in [(0, 1), (0, 2), (1, 3), (1, 2), (2, 4), (2, 5), (3, 3), (4, 4), (5, 5)] {
        a.add_edge(v[x], v[y], &[1, 1, 1]);
    }
    ReachabilityGame::new(a, vec![vec![v[3], v[4]], vec![v[3], v[5]], vec![v[1], v[4]]], v[0])
}

/// Memoryless strategy of [`three_player_game`] moving `v1 -> v2` or, with
/// `direct`, `v1 -> v3`.
pub fn three_player_strategy(game: &ReachabilityGame, direct: bool) -> MealyMachine {
    let choice = BTreeMap::from([
        (1, if direct { 3 } else { 2 }),
        (3, 3),
        (4, 4),
        (5, 5),
    ]);
    memoryless_machine(game, &choice).expect("valid strategy")
}

/// Two players; player 1 may loop on `v0` for as long as it likes before
/// moving to `v1`, the common target. Player 0 pays 1 per step.
pub fn waiting_game() -> ReachabilityGame {
    let mut a = WeightedArena::new(2);
    let v0 = a.add_vertex("v0", 1);
    let v1 = a.add_vertex("v1", 0);
    a.add_edge(v0, v0, &[1, 0]);
    a.add_edge(v0, v1, &[1, 0]);
    a.add_edge(v1, v1, &[1, 0]);
    ReachabilityGame::new(a, vec![vec![v1], vec![v1]], v0)
}

/// Three players, zero weights, no targets; used to illustrate products.
pub fn product_demo_game() -> ReachabilityGame {
    let mut a = WeightedArena::new(3);
    let v: Vec<_> = [2, 0, 0, 1]
        .iter()
        .enumerate()
        .map(|(k, &o)| a.add_vertex(format!("v{k}"), o))
        .collect();
    for (x, y) in [(0, 1), (0, 3), (1, 3), (1, 1), (1, 2), (2, 3), (2, 2), (3, 1)] {
        a.add_edge(v[x], v[y], &[0, 0, 0]);
    }
    ReachabilityGame::new(a, vec![vec![], vec![], vec![]], v[0])
}

/// Two-state nondeterministic machine for [`product_demo_game`].
pub fn product_demo_machine(game: &ReachabilityGame) -> MealyMachine {
    let n = game.vertex_count();
    let mut update = vec![vec![vec![0]; n], vec![vec![1]; n]];
    update[0][3] = vec![0, 1];
    let mut next_move = vec![vec![Vec::new(); n], vec![Vec::new(); n]];
    next_move[0][1] = vec![1, 3];
    next_move[0][2] = vec![3];
    next_move[1][1] = vec![2];
    next_move[1][2] = vec![2];
    MealyMachine::new(game, vec!["m0".into(), "m1".into()], 0, update, next_move)
        .expect("valid machine")
}
