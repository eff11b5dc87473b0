use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::arena::{Lasso, PlayerId, ReachabilityGame, VertexId, WeightedArena};
use crate::error::{Error, Result};

pub type StateId = usize;

/// Nondeterministic Mealy machine for player 0.
///
/// `update(m, v)` is the set of memory states after reading `v` in state `m`;
/// `next_move(m, v)` is the set of allowed successors of a player-0 vertex `v`
/// when the memory before reading `v` is `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MealyMachine {
    names: Vec<String>,
    initial: StateId,
    update: Vec<Vec<Vec<StateId>>>,
    next_move: Vec<Vec<Vec<VertexId>>>,
}

impl MealyMachine {
    /// Assembles a machine without checking it against a game.
    /// `update[m][v]` and `next_move[m][v]` are indexed by state then vertex.
    pub fn from_parts(
        names: Vec<String>,
        initial: StateId,
        update: Vec<Vec<Vec<StateId>>>,
        next_move: Vec<Vec<Vec<VertexId>>>,
    ) -> Self {
        let mut m = MealyMachine {
            names,
            initial,
            update,
            next_move,
        };
        for row in m.update.iter_mut().chain(m.next_move.iter_mut()) {
            for set in row.iter_mut() {
                set.sort_unstable();
                set.dedup();
            }
        }
        m
    }

    /// Assembles and validates a machine for `game`.
    pub fn new(
        game: &ReachabilityGame,
        names: Vec<String>,
        initial: StateId,
        update: Vec<Vec<Vec<StateId>>>,
        next_move: Vec<Vec<Vec<VertexId>>>,
    ) -> Result<Self> {
        let m = MealyMachine::from_parts(names, initial, update, next_move);
        let problems = validate_machine(game, &m);
        if problems.is_empty() {
            Ok(m)
        } else {
            Err(Error::Machine(problems.join("; ")))
        }
    }

    pub fn state_count(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, m: StateId) -> &str {
        &self.names[m]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn update(&self, m: StateId, v: VertexId) -> &[StateId] {
        &self.update[m][v]
    }

    pub fn next_move(&self, m: StateId, v: VertexId) -> &[VertexId] {
        &self.next_move[m][v]
    }

    /// True when every image of the update and next-move maps is a singleton.
    pub fn is_deterministic(&self, arena: &WeightedArena) -> bool {
        (0..self.state_count()).all(|m| {
            arena.vertices().all(|v| {
                self.update[m][v].len() == 1
                    && (arena.owner(v) != 0 || self.next_move[m][v].len() == 1)
            })
        })
    }
}

/// Lists every broken machine invariant with respect to `game`.
pub fn validate_machine(game: &ReachabilityGame, machine: &MealyMachine) -> Vec<String> {
    let arena = game.arena();
    let k = machine.state_count();
    let mut out = Vec::new();
    if k == 0 {
        out.push("machine has no states".into());
        return out;
    }
    if machine.initial >= k {
        out.push(format!("initial state #{} is not declared", machine.initial));
    }
    if machine.update.len() != k || machine.next_move.len() != k {
        out.push("machine tables do not cover every state".into());
        return out;
    }
    for m in 0..k {
        let mname = machine.name(m);
        for v in arena.vertices() {
            let vname = arena.name(v);
            match machine.update[m].get(v) {
                None => out.push(format!("update is missing for ({mname}, {vname})")),
                Some(s) if s.is_empty() => {
                    out.push(format!("update is missing for ({mname}, {vname})"))
                }
                Some(s) => {
                    if let Some(bad) = s.iter().find(|&&x| x >= k) {
                        out.push(format!("update ({mname}, {vname}) names undeclared state #{bad}"));
                    }
                }
            }
            let moves = machine.next_move[m].get(v).map(|s| s.as_slice()).unwrap_or(&[]);
            if arena.owner(v) == 0 {
                if moves.is_empty() {
                    out.push(format!("next move is missing for ({mname}, {vname})"));
                }
                for &w in moves {
                    if w >= arena.vertex_count() || arena.edge(v, w).is_none() {
                        let wname = if w < arena.vertex_count() {
                            arena.name(w).to_string()
                        } else {
                            format!("#{w}")
                        };
                        out.push(format!(
                            "next move ({mname}, {vname}) proposes {wname}, which is not a successor of {vname}"
                        ));
                    }
                }
            } else if !moves.is_empty() {
                out.push(format!(
                    "next move given for ({mname}, {vname}) but {vname} is not a player-0 vertex"
                ));
            }
        }
    }
    out
}

/// One-state deterministic machine playing `choice` at every player-0 vertex.
pub fn memoryless_machine(
    game: &ReachabilityGame,
    choice: &BTreeMap<VertexId, VertexId>,
) -> Result<MealyMachine> {
    let arena = game.arena();
    let mut next_move = vec![Vec::new(); arena.vertex_count()];
    for v in arena.vertices().filter(|&v| arena.owner(v) == 0) {
        let w = *choice.get(&v).ok_or_else(|| {
            Error::Machine(format!("no choice given for player-0 vertex {}", arena.name(v)))
        })?;
        next_move[v] = vec![w];
    }
    let update = vec![vec![0]; arena.vertex_count()];
    MealyMachine::new(game, vec!["m0".into()], 0, vec![update], vec![next_move])
}

/// One-state machine allowing every move: `⟦M⟧` is the set of all memoryless
/// and finite-memory strategies once the product is taken.
pub fn full_machine(game: &ReachabilityGame) -> MealyMachine {
    let arena = game.arena();
    let next_move = arena
        .vertices()
        .map(|v| {
            if arena.owner(v) == 0 {
                arena.succ(v).collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    MealyMachine::from_parts(
        vec!["m0".into()],
        0,
        vec![vec![vec![0]; arena.vertex_count()]],
        vec![next_move],
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProductVertex {
    /// `(v, m)`: at `v` with memory `m` before reading `v`.
    State { v: VertexId, m: StateId },
    /// `(v, v', m)`: the move `v → v'` was taken, memory update pending.
    Move { v: VertexId, next: VertexId, m: StateId },
}

/// Game over `(v, m)` and `(v, v', m)` vertices, pruned to the part reachable
/// from `(v0, m0)`.
#[derive(Clone, Debug)]
pub struct ProductGame {
    pub game: ReachabilityGame,
    pub back: Vec<ProductVertex>,
    deterministic: bool,
}

impl ProductGame {
    /// Original vertex of a product vertex (the source vertex for moves).
    pub fn original(&self, pv: VertexId) -> VertexId {
        match self.back[pv] {
            ProductVertex::State { v, .. } | ProductVertex::Move { v, .. } => v,
        }
    }

    pub fn is_state(&self, pv: VertexId) -> bool {
        matches!(self.back[pv], ProductVertex::State { .. })
    }

    /// Whether the machine it was built from is deterministic.
    pub fn is_deterministic(&self) -> bool {
        self.deterministic
    }

    /// Projects a product play to the original game by dropping move vertices.
    pub fn project(&self, pi: &Lasso) -> Lasso {
        let keep = |seq: &[VertexId]| -> Vec<VertexId> {
            seq.iter()
                .filter(|&&p| self.is_state(p))
                .map(|&p| self.original(p))
                .collect()
        };
        Lasso::new(keep(pi.prefix()), keep(pi.cycle()))
    }

    pub fn project_history(&self, h: &[VertexId]) -> Vec<VertexId> {
        h.iter()
            .filter(|&&p| self.is_state(p))
            .map(|&p| self.original(p))
            .collect()
    }

    pub fn index_of(&self, pv: ProductVertex) -> Option<VertexId> {
        self.back.iter().position(|&b| b == pv)
    }
}

/// Product of a game with a player-0 machine.
pub fn product_game(game: &ReachabilityGame, machine: &MealyMachine) -> Result<ProductGame> {
    let arena = game.arena();
    for m in 0..machine.state_count() {
        for v in arena.vertices().filter(|&v| arena.owner(v) == 0) {
            for &w in machine.next_move(m, v) {
                if arena.edge(v, w).is_none() {
                    return Err(Error::Machine(format!(
                        "next move ({}, {}) proposes {}, which is not a successor",
                        machine.name(m),
                        arena.name(v),
                        if w < arena.vertex_count() { arena.name(w) } else { "?" }
                    )));
                }
            }
        }
    }
    let problems = validate_machine(game, machine);
    if !problems.is_empty() {
        return Err(Error::Machine(problems.join("; ")));
    }

    let mut index: HashMap<ProductVertex, VertexId> = HashMap::new();
    let mut back = Vec::new();
    let mut queue = VecDeque::new();
    let mut edges: Vec<(VertexId, VertexId, Vec<u64>)> = Vec::new();
    let mut intern = |pv: ProductVertex, back: &mut Vec<ProductVertex>, queue: &mut VecDeque<VertexId>| {
        *index.entry(pv).or_insert_with(|| {
            back.push(pv);
            queue.push_back(back.len() - 1);
            back.len() - 1
        })
    };
    let start = ProductVertex::State {
        v: game.initial(),
        m: machine.initial(),
    };
    intern(start, &mut back, &mut queue);
    let zero = vec![0u64; arena.players()];
    while let Some(p) = queue.pop_front() {
        match back[p] {
            ProductVertex::State { v, m } => {
                for e in arena.out_edges(v) {
                    if arena.owner(v) == 0 && !machine.next_move(m, v).contains(&e.to) {
                        continue;
                    }
                    let q = intern(ProductVertex::Move { v, next: e.to, m }, &mut back, &mut queue);
                    edges.push((p, q, e.weights.clone()));
                }
            }
            ProductVertex::Move { v, next, m } => {
                for &m2 in machine.update(m, v) {
                    let q = intern(ProductVertex::State { v: next, m: m2 }, &mut back, &mut queue);
                    edges.push((p, q, zero.clone()));
                }
            }
        }
    }

    let mut parena = WeightedArena::new(arena.players());
    for pv in &back {
        match *pv {
            ProductVertex::State { v, m } => {
                parena.add_vertex(format!("{}@{}", arena.name(v), machine.name(m)), arena.owner(v))
            }
            ProductVertex::Move { v, next, m } => parena.add_vertex(
                format!("{}>{}@{}", arena.name(v), arena.name(next), machine.name(m)),
                0 as PlayerId,
            ),
        };
    }
    for (p, q, w) in edges {
        parena.add_edge(p, q, &w);
    }
    let targets = (0..arena.players())
        .map(|i| {
            back.iter()
                .enumerate()
                .filter(|(_, pv)| matches!(pv, ProductVertex::State { v, .. } if game.in_target(*v, i)))
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    Ok(ProductGame {
        game: ReachabilityGame::new(parena, targets, 0),
        back,
        deterministic: machine.is_deterministic(arena),
    })
}
