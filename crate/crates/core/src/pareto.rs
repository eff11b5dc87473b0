use std::collections::{BTreeMap, HashMap};

use crate::arena::{cost_of_history, cost_of_lasso, Lasso, PlayerId, ReachabilityGame, VertexId};
use crate::cost::{Cost, CostVector, PlayerSet};
use crate::error::{Error, Result};
use crate::mealy::ProductGame;
use crate::nash::close_inside;
use crate::parikh::{viable_region, DimBound, DpState, DpTable, Subgraph, WeightDp};
use crate::zerosum::{
    solve_bounded_reach_conjunction, BoundedObjectiveCombo, ReachTerm, SafetyComboSolver, SafetyTerm,
    ZeroSumView,
};

/// The environment players act as one player with one target per member.
/// Payoffs are full-length cost vectors whose entry 0 is ignored.
#[derive(Clone, Copy, Debug)]
pub struct ParetoContext<'a> {
    pub game: &'a ReachabilityGame,
    /// Largest finite payoff entry a normalized certificate can carry.
    pub bound: u64,
}

impl<'a> ParetoContext<'a> {
    pub fn new(game: &'a ReachabilityGame) -> Self {
        let t = game.players() as u64 - 1;
        let n = game.vertex_count() as u64;
        ParetoContext {
            game,
            bound: (t + 2) * n * game.arena().max_weight(),
        }
    }

    /// Bound used when player 0's cost must stay above `c`.
    pub fn with_threshold(game: &'a ReachabilityGame, c: u64) -> Self {
        let t = game.players() as u64 - 1;
        let n = game.vertex_count() as u64;
        ParetoContext {
            game,
            bound: (c + (t + 2) * n) * game.arena().max_weight(),
        }
    }
}

/// Payoff of a cost vector: the environment entries, entry 0 reset to zero.
pub fn payoff(costs: &CostVector) -> CostVector {
    let mut p = costs.clone();
    if !p.is_empty() {
        p.0[0] = Cost::ZERO;
    }
    p
}

/// Whether no play from the initial vertex has a payoff strictly below `p`,
/// in a game where player 0 has no choice left.
pub fn is_pareto_optimal(ctx: &ParetoContext, p: &CostVector) -> Result<bool> {
    let game = ctx.game;
    let arena = game.arena();
    if let Some(v) = arena
        .vertices()
        .find(|&v| arena.owner(v) == 0 && arena.out_degree(v) > 1)
    {
        return Err(Error::Precondition(format!(
            "player 0 still has a choice at {}",
            arena.name(v)
        )));
    }
    let env = game.env_players();
    let view = ZeroSumView::coalition(arena, env);
    for j in env.iter() {
        if p[j] == Cost::ZERO {
            continue;
        }
        let mut terms = Vec::new();
        for i in env.iter() {
            let bound = if i == j {
                p[j]
            } else {
                match p[i] {
                    // no constraint: every cost is at most TOP
                    Cost::Top => continue,
                    Cost::Fin(x) => Cost::Fin(x + 1),
                }
            };
            terms.push(ReachTerm {
                target: game.target_mask(i),
                weight_of: i,
                bound,
            });
        }
        if solve_bounded_reach_conjunction(view, game.initial(), &terms)?.0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An environment deviation `hv` off a reference play.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deviation {
    pub branch_index: usize,
    pub from: VertexId,
    pub to: VertexId,
    pub visit_class: PlayerSet,
    /// `w_i(hv)` for each environment player whose target `h` has not visited.
    pub carried_weights: Vec<(PlayerId, u64)>,
}

/// Earliest deviations of `pi`, one per (branch vertex, visit class, target).
pub fn deviations(game: &ReachabilityGame, pi: &Lasso) -> Vec<Deviation> {
    let arena = game.arena();
    let players = game.players();
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut visited = PlayerSet::empty();
    let mut acc = vec![0u64; players];
    for n in 0..pi.len() {
        let u = pi.at(n);
        if n > 0 {
            let e = arena.edge(pi.at(n - 1), u).expect("lasso edge");
            for i in 0..players {
                acc[i] += e.weights[i];
            }
        }
        visited = visited.union(game.targets_of(u));
        if arena.owner(u) == 0 {
            continue;
        }
        let next = pi.at(n + 1);
        for e in arena.out_edges(u) {
            if e.to == next || !seen.insert((u, visited, e.to)) {
                continue;
            }
            let carried = game
                .env_players()
                .minus(visited)
                .iter()
                .map(|i| (i, acc[i] + e.weights[i]))
                .collect();
            out.push(Deviation {
                branch_index: n,
                from: u,
                to: e.to,
                visit_class: visited,
                carried_weights: carried,
            });
        }
    }
    out
}

/// Whether player 0 can play so that `pi` is consistent and its payoff `p`
/// is Pareto-optimal: every environment deviation must be answerable so that
/// the deviating play is not strictly better for the environment.
pub fn ensure_po(game: &ReachabilityGame, pi: &Lasso, p: &CostVector) -> Result<bool> {
    let costs = cost_of_lasso(game, pi)?;
    let env = game.env_players();
    if env.iter().any(|i| costs[i] != p[i]) {
        return Err(Error::Precondition(format!(
            "payoff {p} does not match the lasso costs {costs}"
        )));
    }
    let mut memo = HashMap::new();
    Ok(ensure_po_inner(game, pi, p, &mut memo))
}

type DeviationKey = (VertexId, Vec<(PlayerId, Cost)>);

fn ensure_po_inner(
    game: &ReachabilityGame,
    pi: &Lasso,
    p: &CostVector,
    memo: &mut HashMap<DeviationKey, bool>,
) -> bool {
    let view = ZeroSumView::new(game.arena(), 0);
    deviations(game, pi)
        .into_iter()
        .all(|d| deviation_answerable(game, view, &d, p, memo))
}

fn deviation_answerable(
    game: &ReachabilityGame,
    view: ZeroSumView,
    d: &Deviation,
    p: &CostVector,
    memo: &mut HashMap<DeviationKey, bool>,
) -> bool {
    let mut residual = Vec::new();
    for &(i, q) in &d.carried_weights {
        match p[i].minus(q) {
            // the deviation already costs player i more than p_i
            None => return true,
            Some(r) => residual.push((i, r)),
        }
    }
    let key = (d.to, residual.clone());
    if let Some(&r) = memo.get(&key) {
        return r;
    }
    let combo = BoundedObjectiveCombo {
        terms: residual
            .iter()
            .map(|&(i, r)| SafetyTerm {
                target: game.target_mask(i),
                weight_of: i,
                bound: r,
            })
            .collect(),
        // p_i = +∞ cannot be beaten from above
        strict_top: true,
    };
    let r = SafetyComboSolver::new(view, &combo).with_memo().solve(d.to);
    memo.insert(key, r);
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Want {
    /// lassos with cost_0 ≤ c
    Cheap(u64),
    /// lassos with cost_0 > c; player 0's running cost also delimits blocks
    Expensive(u64),
}

/// Depth-first enumeration of block-normal lassos: inside a block (between two
/// changes of the visited set, or of player 0's capped cost for `Expensive`)
/// no vertex repeats, and the lasso closes on a vertex of the last block.
struct LassoSearch<'a, F: FnMut(&Lasso, &CostVector) -> bool> {
    game: &'a ReachabilityGame,
    want: Want,
    accept: F,
    path: Vec<VertexId>,
    block_start: usize,
    in_block: Vec<bool>,
}

impl<F: FnMut(&Lasso, &CostVector) -> bool> LassoSearch<'_, F> {
    fn run(&mut self) -> Option<Lasso> {
        let v0 = self.game.initial();
        let visited = self.game.targets_of(v0);
        if !self.alive(visited, 0) {
            return None;
        }
        self.path.push(v0);
        self.in_block[v0] = true;
        self.extend(visited, 0)
    }

    fn cap(&self) -> u64 {
        match self.want {
            Want::Cheap(c) | Want::Expensive(c) => c + 1,
        }
    }

    fn alive(&self, visited: PlayerSet, acc0: u64) -> bool {
        match self.want {
            Want::Cheap(c) => acc0 <= c,
            Want::Expensive(c) => !visited.contains(0) || acc0 > c,
        }
    }

    fn extend(&mut self, visited: PlayerSet, acc0: u64) -> Option<Lasso> {
        let game = self.game;
        let arena = game.arena();
        let u = *self.path.last().unwrap();
        let mut succ: Vec<(VertexId, u64)> = arena.out_edges(u).map(|e| (e.to, e.weights[0])).collect();
        succ.sort_unstable();
        for (w, w0) in succ {
            let nacc0 = if visited.contains(0) {
                acc0
            } else {
                (acc0 + w0).min(self.cap())
            };
            let nvisited = visited.union(game.targets_of(w));
            let new_block = nvisited != visited
                || (matches!(self.want, Want::Expensive(_)) && nacc0 != acc0);
            if !new_block && self.in_block[w] {
                let k = self.path[self.block_start..]
                    .iter()
                    .position(|&x| x == w)
                    .unwrap()
                    + self.block_start;
                let pi = Lasso::new(self.path[..k].to_vec(), self.path[k..].to_vec());
                let done = match self.want {
                    Want::Cheap(_) => visited.contains(0),
                    Want::Expensive(_) => true,
                };
                if done {
                    let costs = cost_of_history(game, &pi.head());
                    if (self.accept)(&pi, &costs) {
                        return Some(pi);
                    }
                }
                continue;
            }
            if !self.alive(nvisited, nacc0) {
                continue;
            }
            let saved_start = self.block_start;
            let saved_block: Vec<VertexId>;
            if new_block {
                saved_block = self.path[self.block_start..].to_vec();
                for &x in &saved_block {
                    self.in_block[x] = false;
                }
                self.block_start = self.path.len();
            } else {
                saved_block = Vec::new();
            }
            self.path.push(w);
            self.in_block[w] = true;
            let r = self.extend(nvisited, nacc0);
            self.path.pop();
            self.in_block[w] = false;
            if new_block {
                self.block_start = saved_start;
                for &x in &saved_block {
                    self.in_block[x] = true;
                }
            }
            if r.is_some() {
                return r;
            }
        }
        None
    }
}

fn search_lassos<F: FnMut(&Lasso, &CostVector) -> bool>(
    game: &ReachabilityGame,
    want: Want,
    accept: F,
) -> Option<Lasso> {
    let mut s = LassoSearch {
        game,
        want,
        accept,
        path: Vec::new(),
        block_start: 0,
        in_block: vec![false; game.vertex_count()],
    };
    s.run()
}

/// Cooperative Pareto synthesis: is there a strategy of player 0 and a play
/// whose payoff is Pareto-optimal under that strategy with cost_0 ≤ c?
pub fn solve_cps(game: &ReachabilityGame, c: u64) -> Result<(bool, Option<(Lasso, CostVector)>)> {
    let mut memo = HashMap::new();
    let found = search_lassos(game, Want::Cheap(c), |pi, costs| {
        ensure_po_inner(game, pi, &payoff(costs), &mut memo)
    });
    Ok(match found {
        Some(pi) => {
            let costs = cost_of_lasso(game, &pi)?;
            (true, Some((pi, costs)))
        }
        None => (false, None),
    })
}

/// Universal Pareto verification: for every strategy of the machine and every
/// Pareto-optimal play under it, player 0 pays at most `c`.
pub fn verify_uncpv(product: &ProductGame, c: u64) -> Result<(bool, Option<Lasso>)> {
    let game = &product.game;
    let mut memo = HashMap::new();
    let found = search_lassos(game, Want::Expensive(c), |pi, costs| {
        ensure_po_inner(game, pi, &payoff(costs), &mut memo)
    });
    Ok((found.is_none(), found))
}

/// Pareto verification for a deterministic machine: does every Pareto-optimal
/// play of the product cost player 0 at most `c`?
///
/// The complement is searched marker by marker. Between two first target
/// visits the play stays outside every unvisited target; each such portion
/// is explored over exact weight vectors, the vectors are composed, and the
/// resulting payoffs are confirmed with [`is_pareto_optimal`].
pub fn verify_ncpv(product: &ProductGame, c: u64) -> Result<(bool, Option<Lasso>)> {
    if !product.is_deterministic() {
        return Err(Error::Precondition(
            "machine is nondeterministic; use verify_uncpv".into(),
        ));
    }
    let found = ncpv_counterexample(&product.game, c)?;
    Ok((found.is_none(), found))
}

pub(crate) fn ncpv_counterexample(game: &ReachabilityGame, c: u64) -> Result<Option<Lasso>> {
    let arena = game.arena();
    let players = game.players();
    let env = game.env_players();
    let ctx = ParetoContext::new(game);
    // finite entries of Pareto-optimal payoffs are realized by plays whose
    // first visits sit on at most `players` simple segments
    let env_cap = (players as u64) * (arena.weighted_vertex_count() as u64) * arena.max_weight();
    let dims: Vec<PlayerId> = (0..players).collect();
    let bounds: Vec<DimBound> = (0..players)
        .map(|i| DimBound::Saturate(if i == 0 { c } else { env_cap }))
        .collect();

    let v0 = game.initial();
    let f0 = game.targets_of(v0);
    if f0.contains(0) {
        return Ok(None);
    }
    let mut layers: BTreeMap<(u32, PlayerSet), Vec<DpState>> = BTreeMap::new();
    let mut links: HashMap<(PlayerSet, DpState), (PlayerSet, DpState)> = HashMap::new();
    let mut tables: HashMap<PlayerSet, DpTable> = HashMap::new();
    layers.insert((f0.len() as u32, f0), vec![(v0, vec![0; players])]);
    let mut po_memo: HashMap<CostVector, bool> = HashMap::new();

    while let Some(((_, f), seeds)) = layers.pop_first() {
        let unvisited_target: Vec<bool> = arena
            .vertices()
            .map(|v| !game.targets_of(v).is_subset(f))
            .collect();
        let sub = Subgraph {
            vertices: vec![true; arena.vertex_count()],
            no_exit: unvisited_target.clone(),
        };
        let dp = WeightDp {
            arena,
            subgraph: &sub,
            dims: dims.clone(),
            bounds: bounds.clone(),
        };
        let table = dp.run(&seeds, f);
        let quiet: Vec<bool> = unvisited_target.iter().map(|&b| !b).collect();
        let region = viable_region(arena, &quiet);
        for s in table.states() {
            let (v, acc) = s;
            if unvisited_target[*v] {
                let newly = game.targets_of(*v).minus(f);
                let dead = newly
                    .iter()
                    .any(|i| if i == 0 { acc[0] <= c } else { acc[i] > env_cap });
                if dead {
                    continue;
                }
                let nf = f.union(newly);
                let entry = layers.entry((nf.len() as u32, nf)).or_default();
                if !links.contains_key(&(nf, s.clone())) {
                    links.insert((nf, s.clone()), (f, s.clone()));
                    entry.push(s.clone());
                }
                continue;
            }
            if !region[*v] {
                continue;
            }
            let p = CostVector(
                (0..players)
                    .map(|i| {
                        if i == 0 {
                            Cost::ZERO
                        } else if f.contains(i) {
                            Cost::Fin(acc[i])
                        } else {
                            Cost::Top
                        }
                    })
                    .collect(),
            );
            if p.iter().skip(1).any(|x| matches!(x, Cost::Fin(y) if y > env_cap)) {
                continue;
            }
            let po = match po_memo.get(&p) {
                Some(&r) => r,
                None => {
                    let r = is_pareto_optimal(&ctx, &p)?;
                    po_memo.insert(p.clone(), r);
                    r
                }
            };
            if !po {
                continue;
            }
            // rebuild the play through the layers
            let mut pieces = vec![table.path_to(s)];
            let mut cur = (f, table.seed_of(s));
            while let Some((pf, ps)) = links.get(&cur) {
                let t = &tables[pf];
                pieces.push(t.path_to(ps));
                cur = (*pf, t.seed_of(ps));
            }
            pieces.reverse();
            let mut path: Vec<VertexId> = Vec::new();
            for piece in pieces {
                if path.is_empty() {
                    path = piece;
                } else {
                    path.extend_from_slice(&piece[1..]);
                }
            }
            let pi = close_inside(game, path, &region);
            debug_assert!(env.iter().all(|i| cost_of_lasso(game, &pi).unwrap()[i] == p[i]));
            return Ok(Some(pi));
        }
        tables.insert(f, table);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::WeightedArena;

    #[test]
    fn zero_payoff_is_optimal() {
        let mut a = WeightedArena::new(3);
        let x = a.add_vertex("x", 1);
        a.add_edge(x, x, &[1, 1, 1]);
        let g = ReachabilityGame::new(a, vec![vec![], vec![x], vec![x]], x);
        let p = CostVector(vec![Cost::ZERO; 3]);
        assert!(is_pareto_optimal(&ParetoContext::new(&g), &p).unwrap());
    }

    #[test]
    fn single_play_has_no_deviation() {
        let mut a = WeightedArena::new(2);
        let x = a.add_vertex("x", 1);
        let y = a.add_vertex("y", 1);
        a.add_edge(x, y, &[1, 1]);
        a.add_edge(y, y, &[1, 1]);
        let g = ReachabilityGame::new(a, vec![vec![], vec![]], x);
        let pi = Lasso::new(vec![x], vec![y]);
        assert!(deviations(&g, &pi).is_empty());
        assert!(ensure_po(&g, &pi, &CostVector(vec![Cost::Top, Cost::Top])).unwrap());
        assert!(ensure_po(&g, &pi, &CostVector(vec![Cost::Top, Cost::Fin(0)])).is_err());
    }
}
