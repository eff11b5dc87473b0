use std::collections::{HashMap, VecDeque};

use crate::arena::{check_lasso, Lasso, ReachabilityGame, VertexId};
use crate::cost::{Cost, PlayerSet};
use crate::error::{Error, Result};
use crate::mealy::ProductGame;
use crate::parikh::viable_region;
use crate::zerosum::{min_cost_reach_values, ZeroSumView};

/// `values[v]` is the zero-sum value of the owner of `v` (an environment
/// player) for its own cost against everybody else, player 0 included.
/// Entries at player-0 vertices are TOP and never read.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValTable {
    pub values: Vec<Cost>,
}

impl ValTable {
    pub fn get(&self, v: VertexId) -> Cost {
        self.values[v]
    }
}

pub fn compute_val_star(game: &ReachabilityGame) -> ValTable {
    let arena = game.arena();
    let mut values = vec![Cost::Top; arena.vertex_count()];
    for i in 1..game.players() {
        if !arena.vertices().any(|v| arena.owner(v) == i) {
            continue;
        }
        let val = min_cost_reach_values(ZeroSumView::new(arena, i), &game.target_mask(i), i);
        for v in arena.vertices().filter(|&v| arena.owner(v) == i) {
            values[v] = val[v];
        }
    }
    ValTable { values }
}

/// Cost for player `i` of the suffix of `pi` starting at position `n`.
pub fn suffix_cost(game: &ReachabilityGame, pi: &Lasso, n: usize, i: usize) -> Cost {
    let arena = game.arena();
    let horizon = n.max(pi.prefix().len()) + 2 * pi.cycle().len();
    let mut acc = 0u64;
    for k in n..=horizon {
        let v = pi.at(k);
        if k > n {
            acc += arena.weight(pi.at(k - 1), v, i).expect("lasso edge");
        }
        if game.in_target(v, i) {
            return Cost::Fin(acc);
        }
    }
    Cost::Top
}

/// Whether every player of `players`, at each of its own vertices before its
/// first target visit, gets a suffix cost no larger than the table value there.
pub fn visit_val_consistent(
    game: &ReachabilityGame,
    table: &ValTable,
    pi: &Lasso,
    players: PlayerSet,
) -> bool {
    let arena = game.arena();
    let mut visited = PlayerSet::empty();
    // positions past |μν| repeat earlier ones with a smaller visit set
    for n in 0..pi.len() {
        let v = pi.at(n);
        let i = arena.owner(v);
        if i != 0 && players.contains(i) && !visited.contains(i) && suffix_cost(game, pi, n, i) > table.get(v) {
            return false;
        }
        visited = visited.union(game.targets_of(v));
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Goal {
    /// player 0 reaches its target with cost at most `c`
    AtMost(u64),
    /// player 0 pays more than `c`
    Above(u64),
}

const NO_BOUND: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct NeState {
    v: VertexId,
    visited: PlayerSet,
    acc0: u64,
    /// per player: remaining budget before the pending value constraint fails
    slack: Vec<u32>,
}

/// Breadth-first search for a lasso that is an NE outcome (by the value
/// characterization) and meets `goal` for player 0.
fn ne_outcome_search(game: &ReachabilityGame, table: &ValTable, goal: Goal) -> Option<Lasso> {
    let arena = game.arena();
    let players = game.players();
    let c = match goal {
        Goal::AtMost(c) | Goal::Above(c) => c,
    };
    let slack_of = |x: Cost| -> u32 {
        match x {
            Cost::Fin(s) => s.min(NO_BOUND as u64 - 1) as u32,
            Cost::Top => NO_BOUND,
        }
    };

    // entering vertex `u`: first visits then the owner's pending constraint
    let arrive = |mut s: NeState| -> Option<NeState> {
        let u = s.v;
        for i in game.targets_of(u).iter() {
            if s.visited.contains(i) {
                continue;
            }
            if i == 0 {
                match goal {
                    Goal::AtMost(_) if s.acc0 > c => return None,
                    Goal::Above(_) if s.acc0 <= c => return None,
                    _ => {}
                }
            }
            s.visited.insert(i);
            if i > 0 {
                s.slack[i] = NO_BOUND;
            }
        }
        let o = arena.owner(u);
        if o != 0 && !s.visited.contains(o) {
            s.slack[o] = s.slack[o].min(slack_of(table.get(u)));
        }
        Some(s)
    };
    let step = |s: &NeState, to: VertexId, w: &[u64]| -> Option<NeState> {
        let mut n = s.clone();
        n.v = to;
        if !s.visited.contains(0) {
            n.acc0 = (s.acc0 + w[0]).min(c + 1);
        }
        for i in 1..players {
            if n.slack[i] != NO_BOUND {
                let x = n.slack[i] as u64;
                if w[i] > x {
                    return None;
                }
                n.slack[i] = (x - w[i]) as u32;
            }
        }
        arrive(n)
    };

    let mut quiet_cache: HashMap<PlayerSet, Vec<bool>> = HashMap::new();
    let mut quiet_region = |visited: PlayerSet| -> Vec<bool> {
        quiet_cache
            .entry(visited)
            .or_insert_with(|| {
                let allowed: Vec<bool> = arena
                    .vertices()
                    .map(|u| {
                        game.targets_of(u).is_subset(visited) && {
                            let o = arena.owner(u);
                            o == 0 || visited.contains(o) || table.get(u).is_top()
                        }
                    })
                    .collect();
                viable_region(arena, &allowed)
            })
            .clone()
    };
    let closable = |s: &NeState| -> bool {
        (1..players).all(|i| s.visited.contains(i) || s.slack[i] == NO_BOUND)
            && (matches!(goal, Goal::Above(_)) || s.visited.contains(0))
    };

    let init = NeState {
        v: game.initial(),
        visited: PlayerSet::empty(),
        acc0: 0,
        slack: vec![NO_BOUND; players],
    };
    let init = arrive(init)?;
    let mut parent: HashMap<NeState, Option<NeState>> = HashMap::new();
    parent.insert(init.clone(), None);
    let mut queue = VecDeque::from([init]);
    let mut found = None;
    while let Some(s) = queue.pop_front() {
        if closable(&s) {
            let region = quiet_region(s.visited);
            if region[s.v] {
                found = Some((s, region));
                break;
            }
        }
        for e in arena.out_edges(s.v) {
            if let Some(n) = step(&s, e.to, &e.weights) {
                if !parent.contains_key(&n) {
                    parent.insert(n.clone(), Some(s.clone()));
                    queue.push_back(n);
                }
            }
        }
    }
    let (goal_state, region) = found?;
    let mut path = vec![goal_state.v];
    let mut cur = goal_state;
    while let Some(Some(p)) = parent.get(&cur) {
        path.push(p.v);
        cur = p.clone();
    }
    path.reverse();
    Some(close_inside(game, path, &region))
}

/// Closes a path into a lasso by walking inside `region` until a repeat.
pub(crate) fn close_inside(game: &ReachabilityGame, mut path: Vec<VertexId>, region: &[bool]) -> Lasso {
    let arena = game.arena();
    let last = *path.last().unwrap();
    let mut walk = vec![last];
    let mut pos = HashMap::from([(last, 0usize)]);
    loop {
        let u = *walk.last().unwrap();
        let w = arena
            .succ(u)
            .find(|&w| region[w])
            .expect("region is viable");
        if let Some(&i) = pos.get(&w) {
            if i == 0 {
                let mut cycle = walk[1..].to_vec();
                cycle.push(last);
                return Lasso::new(path, cycle);
            }
            path.extend_from_slice(&walk[1..i]);
            return Lasso::new(path, walk[i..].to_vec());
        }
        pos.insert(w, walk.len());
        walk.push(w);
    }
}

/// Cooperative synthesis: is there a strategy of player 0 and an NE (with
/// that strategy fixed) whose outcome costs player 0 at most `c`?
pub fn solve_cns(game: &ReachabilityGame, c: u64) -> Result<(bool, Option<Lasso>)> {
    let table = compute_val_star(game);
    let found = ne_outcome_search(game, &table, Goal::AtMost(c));
    if let Some(pi) = &found {
        debug_assert!(visit_val_consistent(game, &table, pi, game.env_players()));
        check_lasso(game, pi)?;
    }
    Ok((found.is_some(), found))
}

/// Non-cooperative verification for a deterministic machine: does every NE
/// outcome (machine strategy fixed) cost player 0 at most `c`? On a negative
/// answer, returns a counterexample lasso in the product.
pub fn verify_ncnv(product: &ProductGame, c: u64) -> Result<(bool, Option<Lasso>)> {
    if !product.is_deterministic() {
        return Err(Error::Precondition(
            "machine is nondeterministic; use verify_uncnv".into(),
        ));
    }
    verify_uncnv(product, c)
}

/// Universal non-cooperative verification: for every strategy encoded by the
/// machine and every NE, player 0 pays at most `c`.
pub fn verify_uncnv(product: &ProductGame, c: u64) -> Result<(bool, Option<Lasso>)> {
    let game = &product.game;
    let table = compute_val_star(game);
    let found = ne_outcome_search(game, &table, Goal::Above(c));
    if let Some(pi) = &found {
        debug_assert!(visit_val_consistent(game, &table, pi, game.env_players()));
    }
    Ok((found.is_none(), found))
}
