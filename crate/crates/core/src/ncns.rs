use std::collections::{HashMap, VecDeque};

use crate::arena::{Lasso, ReachabilityGame, VertexId, WeightedArena};
use crate::cost::{Cost, PlayerSet};
use crate::error::{Error, Result};
use crate::nash::close_inside;
use crate::zerosum::{attractor, min_cost_reach_values, ZeroSumView};

/// Vertex of the extended arena: base vertex, capped accumulated weights and
/// the players that have visited their target.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtVertex {
    pub v: VertexId,
    pub costs: Vec<Cost>,
    pub visited: PlayerSet,
}

/// Reachable part of the arena enriched with accumulated weights. Costs of
/// players in `visited` are frozen; a cost exceeding its bound becomes TOP.
#[derive(Clone, Debug)]
pub struct ExtendedArena {
    pub bounds: Vec<u64>,
    vertices: Vec<ExtVertex>,
    index: HashMap<ExtVertex, VertexId>,
    /// Unweighted copy of the extended graph, owners as in the base game.
    game: ReachabilityGame,
}

impl ExtendedArena {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, x: VertexId) -> &ExtVertex {
        &self.vertices[x]
    }

    pub fn vertices(&self) -> &[ExtVertex] {
        &self.vertices
    }

    pub fn index_of(&self, x: &ExtVertex) -> Option<VertexId> {
        self.index.get(x).copied()
    }

    pub fn arena(&self) -> &WeightedArena {
        self.game.arena()
    }

    /// Always index 0.
    pub fn initial(&self) -> VertexId {
        0
    }

    pub fn project(&self, pi: &Lasso) -> Lasso {
        pi.map(|x| self.vertices[x].v).canonical()
    }
}

pub fn build_extended_arena(game: &ReachabilityGame, bounds: &[u64]) -> ExtendedArena {
    let base = game.arena();
    let players = game.players();
    assert_eq!(bounds.len(), players, "one bound per player");
    let v0 = game.initial();
    let init = ExtVertex {
        v: v0,
        costs: vec![Cost::ZERO; players],
        visited: game.targets_of(v0),
    };
    let mut vertices = vec![init.clone()];
    let mut index = HashMap::from([(init, 0)]);
    let mut succ: Vec<Vec<VertexId>> = Vec::new();
    let mut k = 0;
    while k < vertices.len() {
        let x = vertices[k].clone();
        let mut out = Vec::new();
        for e in base.out_edges(x.v) {
            let costs = (0..players)
                .map(|i| match x.costs[i] {
                    c if x.visited.contains(i) => c,
                    Cost::Top => Cost::Top,
                    Cost::Fin(c) => Cost::Fin(c + e.weights[i]).cap(bounds[i]),
                })
                .collect();
            let y = ExtVertex {
                v: e.to,
                costs,
                visited: x.visited.union(game.targets_of(e.to)),
            };
            let id = *index.entry(y.clone()).or_insert_with(|| {
                vertices.push(y);
                vertices.len() - 1
            });
            out.push(id);
        }
        succ.push(out);
        k += 1;
    }
    let mut arena = WeightedArena::new(players);
    for x in &vertices {
        let costs: Vec<String> = x.costs.iter().map(|c| c.to_string()).collect();
        arena.add_vertex(
            format!("{}|{}|{}", base.name(x.v), costs.join(","), x.visited),
            base.owner(x.v),
        );
    }
    let zero = vec![0; players];
    for (x, out) in succ.iter().enumerate() {
        for &y in out {
            arena.add_edge(x, y, &zero);
        }
    }
    let game = ReachabilityGame::new(arena, vec![Vec::new(); players], 0);
    ExtendedArena {
        bounds: bounds.to_vec(),
        vertices,
        index,
        game,
    }
}

#[derive(Clone, Debug)]
pub struct WitnessVerdict {
    pub answer: bool,
    /// Lasso over extended vertices; absent when the answer comes from
    /// player 0 winning outright.
    pub witness: Option<Lasso>,
    /// Environment cost of the witness.
    pub d: Cost,
    /// Extended arena the witness lives in.
    pub extended: Option<ExtendedArena>,
}

impl WitnessVerdict {
    pub fn base_witness(&self) -> Option<Lasso> {
        Some(self.extended.as_ref()?.project(self.witness.as_ref()?))
    }
}

/// NCNS with a single environment player: is there a strategy of player 0
/// such that every NE (player 0 fixed) costs player 0 at most `c`?
pub fn solve_ncns_one_env(game: &ReachabilityGame, c: u64) -> Result<WitnessVerdict> {
    if game.players() != 2 {
        return Err(Error::Unsupported(format!(
            "exact NCNS needs exactly one environment player, got {}; use the oracle",
            game.players() - 1
        )));
    }
    let arena = game.arena();
    let v0 = game.initial();
    let val = min_cost_reach_values(ZeroSumView::new(arena, 0), &game.target_mask(0), 0);
    if val[v0] <= Cost::Fin(c) {
        return Ok(WitnessVerdict {
            answer: true,
            witness: None,
            d: Cost::Top,
            extended: None,
        });
    }
    let dmax = 2 * arena.vertex_count() as u64 * arena.max_weight();
    for d in 0..=dmax {
        if let Some(w) = witness_for(game, c, d) {
            return Ok(WitnessVerdict {
                answer: true,
                witness: Some(w.0),
                d: Cost::Fin(d),
                extended: Some(w.1),
            });
        }
    }
    Ok(WitnessVerdict {
        answer: false,
        witness: None,
        d: Cost::Top,
        extended: None,
    })
}

/// Player 0's winning region for "cost_0 ≤ c or cost_1 > d" in the extended
/// arena with bounds (c, d).
pub fn punishing_region(ext: &ExtendedArena, c: u64, d: u64) -> Vec<bool> {
    let arena = ext.arena();
    let good0: Vec<bool> = ext
        .vertices()
        .iter()
        .map(|x| x.visited.contains(0) && x.costs[0] <= Cost::Fin(c))
        .collect();
    let bad1: Vec<bool> = ext
        .vertices()
        .iter()
        .map(|x| x.visited.contains(1) && x.costs[1] <= Cost::Fin(d))
        .collect();
    let rescue = attractor(ZeroSumView::new(arena, 0), &good0);
    let lost: Vec<bool> = (0..arena.vertex_count()).map(|x| bad1[x] && !rescue[x]).collect();
    attractor(ZeroSumView::new(arena, 1), &lost)
        .into_iter()
        .map(|b| !b)
        .collect()
}

fn witness_for(game: &ReachabilityGame, c: u64, d: u64) -> Option<(Lasso, ExtendedArena)> {
    let ext = build_extended_arena(game, &[c, d]);
    let arena = ext.arena();
    let w0 = punishing_region(&ext, c, d);
    for x in arena.vertices().filter(|&x| w0[x]) {
        let o = arena.owner(x);
        debug_assert!(if o == 0 {
            arena.succ(x).any(|y| w0[y])
        } else {
            arena.succ(x).all(|y| w0[y])
        });
    }
    let goal = |x: &ExtVertex| {
        x.visited.contains(0)
            && x.costs[0] <= Cost::Fin(c)
            && x.visited.contains(1)
            && x.costs[1] == Cost::Fin(d)
    };
    let start = ext.initial();
    if !w0[start] {
        return None;
    }
    let mut parent = vec![usize::MAX; arena.vertex_count()];
    parent[start] = start;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        if goal(ext.vertex(x)) {
            let mut path = vec![x];
            let mut cur = x;
            while parent[cur] != cur {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            let pi = close_inside(&ext.game, path, &w0);
            return Some((pi, ext));
        }
        for y in arena.succ(x) {
            if w0[y] && parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}
