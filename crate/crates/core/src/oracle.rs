//! Brute-force reference procedures. Slow and budgeted; used to cross-check
//! the solvers on small instances.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::arena::{cost_of_lasso, Lasso, PlayerId, ReachabilityGame, VertexId, WeightedArena};
use crate::cost::{Cost, CostVector, PlayerSet};
use crate::error::{Error, Result};
use crate::mealy::{product_game, MealyMachine};
use crate::parikh::viable_region;
use crate::zerosum::ZeroSumView;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Strategy profiles (zero-sum) or player-0 strategies (synthesis) tried.
    pub max_profiles: u64,
    /// Longest lasso |μν| enumerated by the lasso-set procedures.
    pub max_lasso_length: usize,
    /// Explicit states explored by the unfolding procedures.
    pub max_states: usize,
    /// Memory size of the second strategy family (the first is memoryless).
    pub memory: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_profiles: 200_000,
            max_lasso_length: 8,
            max_states: 2_000_000,
            memory: 2,
        }
    }
}

impl FromStr for OracleBudget {
    type Err = Error;

    /// `profiles=N,lasso=N,states=N,memory=N`, any subset, in any order.
    fn from_str(s: &str) -> Result<Self> {
        let mut b = OracleBudget::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidInput(format!("budget entry `{part}` is not key=value")))?;
            let n: u64 = v
                .parse()
                .map_err(|_| Error::InvalidInput(format!("budget value `{v}` is not a number")))?;
            match k {
                "profiles" => b.max_profiles = n,
                "lasso" => b.max_lasso_length = n as usize,
                "states" => b.max_states = n as usize,
                "memory" => b.memory = n.max(1) as usize,
                _ => return Err(Error::InvalidInput(format!("unknown budget key `{k}`"))),
            }
        }
        Ok(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Problem {
    Cns,
    Cps,
    Ncnv,
    Ncpv,
    Uncnv,
    Uncpv,
    Ncns,
    NcnsBounded,
}

impl Problem {
    pub const ALL: [Problem; 8] = [
        Problem::Cns,
        Problem::Cps,
        Problem::Ncnv,
        Problem::Ncpv,
        Problem::Uncnv,
        Problem::Uncpv,
        Problem::Ncns,
        Problem::NcnsBounded,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Problem::Cns => "cns",
            Problem::Cps => "cps",
            Problem::Ncnv => "ncnv",
            Problem::Ncpv => "ncpv",
            Problem::Uncnv => "uncnv",
            Problem::Uncpv => "uncpv",
            Problem::Ncns => "ncns",
            Problem::NcnsBounded => "ncns-bounded",
        }
    }

    pub fn needs_machine(self) -> bool {
        matches!(self, Problem::Ncnv | Problem::Ncpv | Problem::Uncnv | Problem::Uncpv)
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase().replace('_', "-");
        Problem::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown problem `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Inconclusive(String),
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Verdict::Yes => Some(true),
            Verdict::No => Some(false),
            Verdict::Inconclusive(_) => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes => f.write_str("YES"),
            Verdict::No => f.write_str("NO"),
            Verdict::Inconclusive(why) => write!(f, "INCONCLUSIVE ({why})"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct OracleInstance<'a> {
    pub game: &'a ReachabilityGame,
    pub threshold: u64,
    pub machine: Option<&'a MealyMachine>,
    /// Satisficing bounds `d_i` (indexed by player, entry 0 unused) for
    /// [`Problem::NcnsBounded`]: player i is content iff cost_i < d_i.
    pub env_bounds: Option<&'a [u64]>,
}

/// Restricts every player-0 vertex to the chosen successor.
pub fn fix_strategy(game: &ReachabilityGame, choice: &BTreeMap<VertexId, VertexId>) -> Result<ReachabilityGame> {
    let arena = game.arena();
    let mut a = WeightedArena::new(game.players());
    for v in arena.vertices() {
        a.add_vertex(arena.name(v), arena.owner(v));
    }
    for v in arena.vertices() {
        let chosen = if arena.owner(v) == 0 {
            let w = *choice.get(&v).ok_or_else(|| {
                Error::InvalidInput(format!("no choice for player-0 vertex {}", arena.name(v)))
            })?;
            if arena.edge(v, w).is_none() {
                return Err(Error::InvalidInput(format!(
                    "{} is not a successor of {}",
                    arena.name(w),
                    arena.name(v)
                )));
            }
            Some(w)
        } else {
            None
        };
        for e in arena.out_edges(v) {
            if chosen.is_none_or(|w| w == e.to) {
                a.add_edge(v, e.to, &e.weights);
            }
        }
    }
    Ok(ReachabilityGame::new(a, game.targets().to_vec(), game.initial()))
}

/// Memoryless outcome cost from `v`: walk until the target or a repeat.
fn outcome_cost(arena: &WeightedArena, choice: &[VertexId], target: &[bool], weight_of: PlayerId, v: VertexId) -> Cost {
    let mut seen = vec![false; arena.vertex_count()];
    let mut u = v;
    let mut acc = 0;
    loop {
        if target[u] {
            return Cost::Fin(acc);
        }
        if seen[u] {
            return Cost::Top;
        }
        seen[u] = true;
        let w = choice[u];
        acc += arena.weight(u, w, weight_of).unwrap();
        u = w;
    }
}

/// Odometer over per-vertex successor choices; `free` lists the vertices
/// whose choice varies.
fn next_choice(arena: &WeightedArena, succ: &[Vec<VertexId>], idx: &mut [usize], choice: &mut [VertexId], free: &[VertexId]) -> bool {
    let _ = arena;
    for &v in free {
        idx[v] += 1;
        if idx[v] < succ[v].len() {
            choice[v] = succ[v][idx[v]];
            return true;
        }
        idx[v] = 0;
        choice[v] = succ[v][0];
    }
    false
}

/// Min over Eve's memoryless strategies of max over the coalition's
/// memoryless strategies of the cost from each vertex.
pub fn oracle_zero_sum_value(
    view: ZeroSumView,
    target: &[bool],
    weight_of: PlayerId,
    budget: &OracleBudget,
) -> Result<Vec<Cost>> {
    let arena = view.arena;
    let n = arena.vertex_count();
    let succ: Vec<Vec<VertexId>> = arena.vertices().map(|v| arena.succ(v).collect()).collect();
    let eve: Vec<VertexId> = arena.vertices().filter(|&v| view.eve_owns(v) && succ[v].len() > 1).collect();
    let adam: Vec<VertexId> = arena.vertices().filter(|&v| !view.eve_owns(v) && succ[v].len() > 1).collect();
    let profiles = eve
        .iter()
        .chain(&adam)
        .try_fold(1u64, |acc, &v| acc.checked_mul(succ[v].len() as u64))
        .unwrap_or(u64::MAX);
    if profiles > budget.max_profiles {
        return Err(Error::Budget(format!(
            "{profiles} memoryless profiles exceed the budget of {}",
            budget.max_profiles
        )));
    }
    let mut best = vec![Cost::Top; n];
    let mut choice: Vec<VertexId> = succ.iter().map(|s| s[0]).collect();
    let mut idx = vec![0usize; n];
    loop {
        let mut worst = vec![Cost::ZERO; n];
        for x in &adam {
            idx[*x] = 0;
            choice[*x] = succ[*x][0];
        }
        loop {
            for v in 0..n {
                worst[v] = worst[v].max(outcome_cost(arena, &choice, target, weight_of, v));
            }
            if !next_choice(arena, &succ, &mut idx, &mut choice, &adam) {
                break;
            }
        }
        for v in 0..n {
            best[v] = best[v].min(worst[v]);
        }
        if !next_choice(arena, &succ, &mut idx, &mut choice, &eve) {
            break;
        }
    }
    Ok(best)
}

fn deviation_values(game: &ReachabilityGame, budget: &OracleBudget) -> Result<Vec<Vec<Cost>>> {
    let arena = game.arena();
    let mut vals = vec![Vec::new(); game.players()];
    for i in game.env_players().iter() {
        vals[i] = oracle_zero_sum_value(ZeroSumView::new(arena, i), &game.target_mask(i), i, budget)?;
    }
    Ok(vals)
}

/// Whether `pi` is an NE outcome: for every environment player i and every
/// deviation hv at one of i's vertices before i's first visit, the others can
/// hold i to at least cost_i(pi) from v.
pub fn ne_outcome_by_deviations(game: &ReachabilityGame, vals: &[Vec<Cost>], pi: &Lasso) -> bool {
    let arena = game.arena();
    let costs = match cost_of_lasso(game, pi) {
        Ok(c) => c,
        Err(_) => return false,
    };
    let mut acc = vec![0u64; game.players()];
    let mut visited = PlayerSet::empty();
    for n in 0..pi.len() {
        let u = pi.at(n);
        if n > 0 {
            let e = arena.edge(pi.at(n - 1), u).unwrap();
            for (a, w) in acc.iter_mut().zip(&e.weights) {
                *a += w;
            }
        }
        visited = visited.union(game.targets_of(u));
        let i = arena.owner(u);
        if i == 0 || visited.contains(i) {
            continue;
        }
        let next = pi.at(n + 1);
        for e in arena.out_edges(u).filter(|e| e.to != next) {
            let dev = Cost::Fin(acc[i] + e.weights[i]) + vals[i][e.to];
            if dev < costs[i] {
                return false;
            }
        }
    }
    true
}

/// All canonical lassos from the initial vertex with |μν| ≤ `max_len`.
pub fn enumerate_lassos(game: &ReachabilityGame, max_len: usize) -> BTreeSet<Lasso> {
    let arena = game.arena();
    let mut out = BTreeSet::new();
    let mut h = vec![game.initial()];
    fn rec(arena: &WeightedArena, h: &mut Vec<VertexId>, max_len: usize, out: &mut BTreeSet<Lasso>) {
        let last = *h.last().unwrap();
        for w in arena.succ(last) {
            for k in 0..h.len() {
                if h[k] == w {
                    out.insert(Lasso::new(h[..k].to_vec(), h[k..].to_vec()));
                }
            }
        }
        if h.len() < max_len {
            let succ: Vec<VertexId> = arena.succ(last).collect();
            for w in succ {
                h.push(w);
                rec(arena, h, max_len, out);
                h.pop();
            }
        }
    }
    rec(arena, &mut h, max_len, &mut out);
    out
}

/// NE outcomes (player 0 fixed to `sigma0` when given) among the lassos of
/// length at most `budget.max_lasso_length`.
pub fn oracle_nash_outcomes(
    game: &ReachabilityGame,
    sigma0: Option<&BTreeMap<VertexId, VertexId>>,
    budget: &OracleBudget,
) -> Result<BTreeSet<Lasso>> {
    let fixed;
    let g = match sigma0 {
        Some(choice) => {
            fixed = fix_strategy(game, choice)?;
            &fixed
        }
        None => game,
    };
    let vals = deviation_values(g, budget)?;
    Ok(enumerate_lassos(g, budget.max_lasso_length)
        .into_iter()
        .filter(|pi| ne_outcome_by_deviations(g, &vals, pi))
        .collect())
}

fn env_payoff(costs: &CostVector) -> CostVector {
    CostVector(costs.iter().skip(1).collect())
}

/// Minimal elements of a set of cost vectors under the strict Pareto order.
pub fn minimal_vectors(vs: &BTreeSet<CostVector>) -> BTreeSet<CostVector> {
    vs.iter()
        .filter(|p| !vs.iter().any(|q| q.lt(p)))
        .cloned()
        .collect()
}

/// Minimal environment cost vectors over the lassos of length at most
/// `budget.max_lasso_length` (player 0 fixed to `sigma0` when given).
pub fn oracle_pareto_front(
    game: &ReachabilityGame,
    sigma0: Option<&BTreeMap<VertexId, VertexId>>,
    budget: &OracleBudget,
) -> Result<BTreeSet<CostVector>> {
    let fixed;
    let g = match sigma0 {
        Some(choice) => {
            fixed = fix_strategy(game, choice)?;
            &fixed
        }
        None => game,
    };
    let all: BTreeSet<CostVector> = enumerate_lassos(g, budget.max_lasso_length)
        .iter()
        .map(|pi| env_payoff(&cost_of_lasso(g, pi).unwrap()))
        .collect();
    Ok(minimal_vectors(&all))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Goal0 {
    AtMost(u64),
    Above(u64),
}

/// How environment players judge their costs.
#[derive(Clone, Copy, Debug)]
enum Rationality<'a> {
    Minimizing,
    /// content iff cost_i < d_i
    Satisficing(&'a [u64]),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Unfolded {
    v: VertexId,
    visited: PlayerSet,
    /// entry 0 capped at c + 1; environment entries only for content players
    acc: Vec<u64>,
    /// content players: largest cost allowed; minimizing players: weight
    /// still allowed before the target; TOP when unconstrained
    bound: Vec<Cost>,
}

/// Explicit search for a lasso that is an NE outcome (deviation check with
/// brute-force punishment values) and meets the goal for player 0. Player 0
/// vertices with several successors are chosen along the play and join the
/// punishing coalition.
fn ne_exists(game: &ReachabilityGame, goal: Goal0, rat: Rationality, budget: &OracleBudget) -> Result<bool> {
    let arena = game.arena();
    let players = game.players();
    let vals = deviation_values(game, budget)?;
    let c = match goal {
        Goal0::AtMost(c) | Goal0::Above(c) => c,
    };
    // content players track their capped cost; minimizing ones only track
    // the slack left under their tightest deviation bound
    let cap = |i: PlayerId| -> u64 {
        match rat {
            _ if i == 0 => c + 1,
            Rationality::Minimizing => 0,
            Rationality::Satisficing(d) => d[i],
        }
    };

    let arrive = |mut s: Unfolded| -> Option<Unfolded> {
        for i in game.targets_of(s.v).minus(s.visited).iter() {
            if i == 0 {
                let ok = match goal {
                    Goal0::AtMost(_) => s.acc[0] <= c,
                    Goal0::Above(_) => s.acc[0] > c,
                };
                if !ok {
                    return None;
                }
            } else {
                if Cost::Fin(s.acc[i]) > s.bound[i] {
                    return None;
                }
                s.acc[i] = 0;
                s.bound[i] = Cost::Top;
            }
            s.visited.insert(i);
        }
        Some(s)
    };
    let step = |s: &Unfolded, to: VertexId, w: &[u64]| -> Option<Unfolded> {
        let mut n = s.clone();
        let o = arena.owner(s.v);
        if o != 0 && !s.visited.contains(o) {
            for e in arena.out_edges(s.v).filter(|e| e.to != to) {
                let dev = Cost::Fin(s.acc[o] + e.weights[o]) + vals[o][e.to];
                let limit = match rat {
                    Rationality::Minimizing => dev,
                    Rationality::Satisficing(d) if dev < Cost::Fin(d[o]) => Cost::Fin(d[o] - 1),
                    Rationality::Satisficing(_) => Cost::Top,
                };
                n.bound[o] = n.bound[o].min(limit);
            }
        }
        for i in 0..players {
            if s.visited.contains(i) {
                continue;
            }
            if i > 0 && matches!(rat, Rationality::Minimizing) {
                n.bound[i] = n.bound[i].minus(w[i])?;
                continue;
            }
            n.acc[i] = (s.acc[i] + w[i]).min(cap(i));
            if i > 0 && Cost::Fin(n.acc[i]) > n.bound[i] {
                return None;
            }
        }
        n.v = to;
        arrive(n)
    };

    let init = Unfolded {
        v: game.initial(),
        visited: PlayerSet::empty(),
        acc: vec![0; players],
        bound: vec![Cost::Top; players],
    };
    let Some(init) = arrive(init) else {
        return Ok(false);
    };
    let mut index: HashMap<Unfolded, usize> = HashMap::from([(init.clone(), 0)]);
    let mut states = vec![init];
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut k = 0;
    while k < states.len() {
        if states.len() > budget.max_states {
            return Err(Error::Budget(format!("more than {} unfolded states", budget.max_states)));
        }
        let s = states[k].clone();
        let mut out = Vec::new();
        for e in arena.out_edges(s.v) {
            if let Some(n) = step(&s, e.to, &e.weights) {
                let id = *index.entry(n.clone()).or_insert_with(|| {
                    states.push(n);
                    states.len() - 1
                });
                out.push(id);
            }
        }
        succ.push(out);
        k += 1;
    }
    let eligible: Vec<bool> = states
        .iter()
        .map(|s| {
            game.env_players()
                .iter()
                .all(|i| s.visited.contains(i) || s.bound[i].is_top())
                && (matches!(goal, Goal0::Above(_)) || s.visited.contains(0))
        })
        .collect();
    // an infinite path through eligible states exists iff some survive pruning
    let mut live = eligible;
    loop {
        let mut changed = false;
        for x in 0..states.len() {
            if live[x] && !succ[x].iter().any(|&y| live[y]) {
                live[x] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(live.iter().any(|&b| b))
}

/// Realized (environment payoff, capped cost_0) pairs of the plays of a game
/// where player 0 has no choice left, explored with dominance pruning.
fn realized_payoffs(game: &ReachabilityGame, c: u64, budget: &OracleBudget) -> Result<BTreeSet<(CostVector, Cost)>> {
    let arena = game.arena();
    let players = game.players();
    type Key = (VertexId, PlayerSet, u64);
    let mut front: HashMap<Key, Vec<Vec<u64>>> = HashMap::new();
    let mut queue: VecDeque<(Key, Vec<u64>)> = VecDeque::new();
    let v0 = game.initial();
    queue.push_back(((v0, game.targets_of(v0), 0), vec![0; players]));
    let mut stored = 0usize;
    while let Some((key, acc)) = queue.pop_front() {
        let slot = front.entry(key).or_default();
        if slot.iter().any(|a| a.iter().zip(&acc).all(|(x, y)| x <= y)) {
            continue;
        }
        slot.retain(|a| !a.iter().zip(&acc).all(|(x, y)| y <= x));
        slot.push(acc.clone());
        stored += 1;
        if stored > budget.max_states {
            return Err(Error::Budget(format!("more than {} payoff states", budget.max_states)));
        }
        let (v, f, acc0) = key;
        for e in arena.out_edges(v) {
            let nacc0 = if f.contains(0) { acc0 } else { (acc0 + e.weights[0]).min(c + 1) };
            let mut nacc = acc.clone();
            for i in 1..players {
                if !f.contains(i) {
                    nacc[i] += e.weights[i];
                }
            }
            let nf = f.union(game.targets_of(e.to));
            queue.push_back(((e.to, nf, nacc0), nacc));
        }
    }
    let mut regions: HashMap<PlayerSet, Vec<bool>> = HashMap::new();
    let mut out = BTreeSet::new();
    for ((v, f, acc0), accs) in front {
        let region = regions.entry(f).or_insert_with(|| {
            let quiet: Vec<bool> = arena.vertices().map(|u| game.targets_of(u).is_subset(f)).collect();
            viable_region(arena, &quiet)
        });
        if !region[v] {
            continue;
        }
        let cost0 = if f.contains(0) { Cost::Fin(acc0) } else { Cost::Top };
        for acc in accs {
            let p = CostVector(
                (1..players)
                    .map(|i| if f.contains(i) { Cost::Fin(acc[i]) } else { Cost::Top })
                    .collect(),
            );
            out.insert((p, cost0));
        }
    }
    Ok(out)
}

/// Capped cost_0 values of the Pareto-optimal plays.
fn po_costs(game: &ReachabilityGame, c: u64, budget: &OracleBudget) -> Result<BTreeSet<Cost>> {
    let pairs = realized_payoffs(game, c, budget)?;
    let all: BTreeSet<CostVector> = pairs.iter().map(|(p, _)| p.clone()).collect();
    let front = minimal_vectors(&all);
    Ok(pairs
        .into_iter()
        .filter(|(p, _)| front.contains(p))
        .map(|(_, c0)| c0)
        .collect())
}

/// Deterministic finite-memory strategies of player 0 with `k` memory states,
/// enumerated lazily over the (vertex, memory) pairs they reach. Each complete
/// strategy is handed to `f` as the game it induces; `f` returns true to stop.
fn for_each_strategy(
    game: &ReachabilityGame,
    k: usize,
    budget: &OracleBudget,
    f: &mut dyn FnMut(&ReachabilityGame) -> Result<bool>,
) -> Result<bool> {
    struct Enum<'a> {
        game: &'a ReachabilityGame,
        k: usize,
        assign: HashMap<(VertexId, usize), (usize, Option<VertexId>)>,
        count: u64,
        budget: &'a OracleBudget,
    }

    impl Enum<'_> {
        fn moves(&self, v: VertexId, m: usize) -> Vec<(VertexId, usize)> {
            let (m2, next) = self.assign[&(v, m)];
            let arena = self.game.arena();
            match next {
                Some(w) => vec![(w, m2)],
                None => arena.succ(v).map(|w| (w, m2)).collect(),
            }
        }

        /// Reachable pairs in BFS order, and the first unassigned one.
        fn explore(&self) -> (Vec<(VertexId, usize)>, Option<(VertexId, usize)>) {
            let start = (self.game.initial(), 0);
            let mut seen = HashSet::from([start]);
            let mut order = vec![start];
            let mut i = 0;
            while i < order.len() {
                let p = order[i];
                if !self.assign.contains_key(&p) {
                    return (order, Some(p));
                }
                for q in self.moves(p.0, p.1) {
                    if seen.insert(q) {
                        order.push(q);
                    }
                }
                i += 1;
            }
            (order, None)
        }

        fn build(&self, order: &[(VertexId, usize)]) -> ReachabilityGame {
            let base = self.game.arena();
            let index: HashMap<(VertexId, usize), usize> =
                order.iter().enumerate().map(|(i, &p)| (p, i)).collect();
            let mut a = WeightedArena::new(self.game.players());
            for &(v, m) in order {
                a.add_vertex(format!("{}#{m}", base.name(v)), base.owner(v));
            }
            for &(v, m) in order {
                for (w, m2) in self.moves(v, m) {
                    let e = base.edge(v, w).unwrap();
                    a.add_edge(index[&(v, m)], index[&(w, m2)], &e.weights);
                }
            }
            let targets = (0..self.game.players())
                .map(|i| {
                    order
                        .iter()
                        .enumerate()
                        .filter(|(_, p)| self.game.in_target(p.0, i))
                        .map(|(x, _)| x)
                        .collect()
                })
                .collect();
            ReachabilityGame::new(a, targets, 0)
        }

        fn rec(&mut self, f: &mut dyn FnMut(&ReachabilityGame) -> Result<bool>) -> Result<bool> {
            let (order, open) = self.explore();
            let Some((v, m)) = open else {
                self.count += 1;
                if self.count > self.budget.max_profiles {
                    return Err(Error::Budget(format!(
                        "more than {} strategies with memory {}",
                        self.budget.max_profiles, self.k
                    )));
                }
                return f(&self.build(&order));
            };
            let arena = self.game.arena();
            let nexts: Vec<Option<VertexId>> = if arena.owner(v) == 0 {
                arena.succ(v).map(Some).collect()
            } else {
                vec![None]
            };
            for m2 in 0..self.k {
                for &next in &nexts {
                    self.assign.insert((v, m), (m2, next));
                    if self.rec(f)? {
                        return Ok(true);
                    }
                }
            }
            self.assign.remove(&(v, m));
            Ok(false)
        }
    }

    let mut e = Enum {
        game,
        k,
        assign: HashMap::new(),
        count: 0,
        budget,
    };
    e.rec(f)
}

/// Runs an existential strategy question for memoryless strategies and for
/// `budget.memory` states; disagreement yields an inconclusive verdict.
fn exists_strategy(
    game: &ReachabilityGame,
    budget: &OracleBudget,
    mut good: impl FnMut(&ReachabilityGame) -> Result<bool>,
) -> Result<Verdict> {
    let small = for_each_strategy(game, 1, budget, &mut good)?;
    if small || budget.memory <= 1 {
        return Ok(Verdict::from_bool(small));
    }
    let large = for_each_strategy(game, budget.memory, budget, &mut good)?;
    Ok(if large {
        Verdict::Inconclusive(format!(
            "a strategy with {} memory states succeeds where memoryless ones fail",
            budget.memory
        ))
    } else {
        Verdict::No
    })
}

/// Decides `problem` by exhaustive enumeration within the budget.
pub fn oracle_decide(problem: Problem, inst: &OracleInstance, budget: &OracleBudget) -> Result<Verdict> {
    let game = inst.game;
    let c = inst.threshold;
    let product = match (problem.needs_machine(), inst.machine) {
        (true, Some(m)) => Some(product_game(game, m)?),
        (true, None) => {
            return Err(Error::InvalidInput(format!("{problem} needs a machine")));
        }
        _ => None,
    };
    match problem {
        Problem::Cns => Ok(Verdict::from_bool(ne_exists(
            game,
            Goal0::AtMost(c),
            Rationality::Minimizing,
            budget,
        )?)),
        Problem::Ncnv | Problem::Uncnv => {
            let p = product.unwrap();
            if problem == Problem::Ncnv && !p.is_deterministic() {
                return Err(Error::Precondition("machine is nondeterministic".into()));
            }
            let bad = ne_exists(&p.game, Goal0::Above(c), Rationality::Minimizing, budget)?;
            Ok(Verdict::from_bool(!bad))
        }
        Problem::Ncpv => {
            let p = product.unwrap();
            if !p.is_deterministic() {
                return Err(Error::Precondition("machine is nondeterministic".into()));
            }
            let costs = po_costs(&p.game, c, budget)?;
            Ok(Verdict::from_bool(costs.iter().all(|&x| x <= Cost::Fin(c))))
        }
        Problem::Cps => exists_strategy(game, budget, |g| {
            Ok(po_costs(g, c, budget)?.iter().any(|&x| x <= Cost::Fin(c)))
        }),
        Problem::Uncpv => {
            let p = product.unwrap();
            let v = exists_strategy(&p.game, budget, |g| {
                Ok(po_costs(g, c, budget)?.iter().any(|&x| x > Cost::Fin(c)))
            })?;
            Ok(match v {
                Verdict::Yes => Verdict::No,
                Verdict::No => Verdict::Yes,
                other => other,
            })
        }
        Problem::Ncns => exists_strategy(game, budget, |g| {
            Ok(!ne_exists(g, Goal0::Above(c), Rationality::Minimizing, budget)?)
        }),
        Problem::NcnsBounded => {
            let d = inst
                .env_bounds
                .ok_or_else(|| Error::InvalidInput("ncns-bounded needs environment bounds".into()))?;
            if d.len() != game.players() {
                return Err(Error::InvalidInput("one environment bound per player expected".into()));
            }
            exists_strategy(game, budget, |g| {
                Ok(!ne_exists(g, Goal0::Above(c), Rationality::Satisficing(d), budget)?)
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_parsing() {
        let b: OracleBudget = "profiles=10, lasso=4".parse().unwrap();
        assert_eq!(b.max_profiles, 10);
        assert_eq!(b.max_lasso_length, 4);
        assert!("bogus=1".parse::<OracleBudget>().is_err());
        assert_eq!("NCNS_BOUNDED".parse::<Problem>().unwrap(), Problem::NcnsBounded);
    }

    #[test]
    fn trivial_values() {
        let mut a = WeightedArena::new(1);
        let x = a.add_vertex("x", 0);
        let y = a.add_vertex("y", 0);
        a.add_edge(x, x, &[1]);
        a.add_edge(y, y, &[1]);
        let b = OracleBudget::default();
        let v = oracle_zero_sum_value(ZeroSumView::new(&a, 0), &[true, false], 0, &b).unwrap();
        assert_eq!(v, vec![Cost::ZERO, Cost::Top]);
    }
}
