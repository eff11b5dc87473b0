#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use reachgames::mealy::MealyMachine;
use reachgames::{Lasso, ReachabilityGame, VertexId, WeightedArena};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_vertices: usize,
    /// environment players
    pub env: usize,
    pub max_weight: u64,
    pub max_out: usize,
}

/// Random game with every vertex having one to `max_out` successors and
/// every player owning a random subset of vertices.
pub fn random_game(r: &mut ChaCha8Rng, s: Shape) -> ReachabilityGame {
    let n = r.gen_range(1..=s.max_vertices);
    let players = s.env + 1;
    let mut a = WeightedArena::new(players);
    for k in 0..n {
        a.add_vertex(format!("v{k}"), r.gen_range(0..players));
    }
    for v in 0..n {
        let mut succ: Vec<VertexId> = (0..n).collect();
        succ.shuffle(r);
        let deg = r.gen_range(1..=s.max_out.min(n));
        let mut out = succ[..deg].to_vec();
        out.sort_unstable();
        for w in out {
            let weights: Vec<u64> = (0..players).map(|_| r.gen_range(0..=s.max_weight)).collect();
            a.add_edge(v, w, &weights);
        }
    }
    let targets = (0..players)
        .map(|_| (0..n).filter(|_| r.gen_bool(0.3)).collect())
        .collect();
    ReachabilityGame::new(a, targets, 0)
}

pub fn random_choice(r: &mut ChaCha8Rng, game: &ReachabilityGame) -> BTreeMap<VertexId, VertexId> {
    let a = game.arena();
    a.vertices()
        .filter(|&v| a.owner(v) == 0)
        .map(|v| {
            let succ: Vec<VertexId> = a.succ(v).collect();
            (v, *succ.choose(r).unwrap())
        })
        .collect()
}

/// Machine with up to `max_states` states; every image is a random
/// nonempty subset, so the machine is usually nondeterministic.
pub fn random_machine(r: &mut ChaCha8Rng, game: &ReachabilityGame, max_states: usize) -> MealyMachine {
    let a = game.arena();
    let k = r.gen_range(1..=max_states);
    let n = a.vertex_count();
    let subset = |r: &mut ChaCha8Rng, items: Vec<usize>| -> Vec<usize> {
        let mut picked: Vec<usize> = items.iter().copied().filter(|_| r.gen_bool(0.4)).collect();
        if picked.is_empty() {
            picked.push(*items.choose(r).unwrap());
        }
        picked
    };
    let update = (0..k)
        .map(|_| (0..n).map(|_| subset(r, (0..k).collect())).collect())
        .collect();
    let next_move = (0..k)
        .map(|_| {
            (0..n)
                .map(|v| if a.owner(v) == 0 { subset(r, a.succ(v).collect()) } else { Vec::new() })
                .collect()
        })
        .collect();
    let names = (0..k).map(|m| format!("m{m}")).collect();
    MealyMachine::new(game, names, 0, update, next_move).expect("random machine is valid")
}

/// Random walk from the initial vertex closed into a lasso at a random
/// earlier position of the same vertex.
pub fn random_lasso(r: &mut ChaCha8Rng, game: &ReachabilityGame, max_steps: usize) -> Lasso {
    let a = game.arena();
    let mut walk = vec![game.initial()];
    let steps = r.gen_range(1..=max_steps);
    loop {
        let v = *walk.last().unwrap();
        let succ: Vec<VertexId> = a.succ(v).collect();
        let w = *succ.choose(r).unwrap();
        let earlier: Vec<usize> = (0..walk.len()).filter(|&k| walk[k] == w).collect();
        if walk.len() >= steps && !earlier.is_empty() {
            let k = *earlier.choose(r).unwrap();
            let cycle = walk[k..].to_vec();
            walk.truncate(k);
            return Lasso::raw(walk, cycle);
        }
        walk.push(w);
    }
}
