use std::collections::{HashMap, VecDeque};

use crate::arena::{Lasso, PlayerId, VertexId, WeightedArena};
use crate::cost::{Cost, PlayerSet};
use crate::error::{Error, Result};

/// Two-player zero-sum reading of an arena: the protagonist players (Eve)
/// against everybody else merged into one opponent (Adam).
#[derive(Clone, Copy, Debug)]
pub struct ZeroSumView<'a> {
    pub arena: &'a WeightedArena,
    pub protagonist: PlayerSet,
}

impl<'a> ZeroSumView<'a> {
    pub fn new(arena: &'a WeightedArena, protagonist: PlayerId) -> Self {
        ZeroSumView {
            arena,
            protagonist: PlayerSet::singleton(protagonist),
        }
    }

    pub fn coalition(arena: &'a WeightedArena, protagonist: PlayerSet) -> Self {
        ZeroSumView { arena, protagonist }
    }

    pub fn eve_owns(&self, v: VertexId) -> bool {
        self.protagonist.contains(self.arena.owner(v))
    }
}

/// Least cost Eve can guarantee for reaching `target`, measured with player
/// `weight_of`'s weights, against a maximizing Adam. Values above `|V|·W`
/// cannot occur for finite games and are reported as TOP.
pub fn min_cost_reach_values(view: ZeroSumView, target: &[bool], weight_of: PlayerId) -> Vec<Cost> {
    let arena = view.arena;
    let n = arena.vertex_count();
    let cap = (n as u64).saturating_mul(arena.max_weight());
    let mut val: Vec<Cost> = (0..n)
        .map(|v| if target[v] { Cost::ZERO } else { Cost::Top })
        .collect();
    let mut rounds = 0;
    loop {
        let mut changed = false;
        for v in 0..n {
            if target[v] {
                continue;
            }
            let options = arena.out_edges(v).map(|e| val[e.to].plus(e.weights[weight_of]));
            let best = if view.eve_owns(v) {
                options.min()
            } else {
                options.max()
            }
            .unwrap_or(Cost::Top)
            .cap(cap);
            if best != val[v] {
                val[v] = best;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        rounds += 1;
        assert!(rounds <= n, "value iteration did not stabilize within |V| rounds");
    }
    val
}

/// Vertices from which Eve forces a visit to `target`.
pub fn attractor(view: ZeroSumView, target: &[bool]) -> Vec<bool> {
    let arena = view.arena;
    let n = arena.vertex_count();
    let mut pred: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for v in arena.vertices() {
        for w in arena.succ(v) {
            pred[w].push(v);
        }
    }
    let mut remaining: Vec<usize> = arena.vertices().map(|v| arena.out_degree(v)).collect();
    let mut attr = target.to_vec();
    let mut queue: VecDeque<VertexId> = (0..n).filter(|&v| attr[v]).collect();
    while let Some(w) = queue.pop_front() {
        for &u in &pred[w] {
            if attr[u] {
                continue;
            }
            remaining[u] -= 1;
            if view.eve_owns(u) || remaining[u] == 0 {
                attr[u] = true;
                queue.push_back(u);
            }
        }
    }
    attr
}

/// Reach `target` with a cost (under `weight_of`) strictly below `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachTerm {
    pub target: Vec<bool>,
    pub weight_of: PlayerId,
    pub bound: Cost,
}

/// Decides whether some play from `start` meets every term, in a game where
/// only Eve has choices. Returns a witness lasso with `|μν| ≤ (t+2)|V|`.
///
/// Search runs over (vertex, satisfied terms, accumulated weights), where a
/// weight reaching its bound before the term is met kills the state.
pub fn solve_bounded_reach_conjunction(
    view: ZeroSumView,
    start: VertexId,
    terms: &[ReachTerm],
) -> Result<(bool, Option<Lasso>)> {
    let arena = view.arena;
    if let Some(v) = arena
        .vertices()
        .find(|&v| !view.eve_owns(v) && arena.out_degree(v) > 1)
    {
        return Err(Error::Precondition(format!(
            "opponent has a choice at vertex {}",
            arena.name(v)
        )));
    }
    if terms.iter().any(|t| t.bound == Cost::ZERO) {
        return Ok((false, None));
    }
    let all: u32 = if terms.len() >= 32 { u32::MAX } else { (1 << terms.len()) - 1 };

    type State = (VertexId, u32, Vec<u64>);
    let settle = |v: VertexId, mut sat: u32, acc: &[u64]| -> u32 {
        for (i, t) in terms.iter().enumerate() {
            if sat & (1 << i) == 0 && t.target[v] && Cost::Fin(acc[i]) < t.bound {
                sat |= 1 << i;
            }
        }
        sat
    };
    let zero = vec![0u64; terms.len()];
    let init: State = (start, settle(start, 0, &zero), zero.clone());
    let mut parent: HashMap<State, Option<State>> = HashMap::new();
    parent.insert(init.clone(), None);
    let mut queue = VecDeque::from([init]);
    let mut goal = None;
    while let Some(state) = queue.pop_front() {
        if state.1 == all {
            goal = Some(state);
            break;
        }
        let (v, sat, acc) = &state;
        for e in arena.out_edges(*v) {
            let mut next = acc.clone();
            let mut dead = false;
            for (i, t) in terms.iter().enumerate() {
                if sat & (1 << i) != 0 {
                    next[i] = 0;
                    continue;
                }
                if let Cost::Fin(d) = t.bound {
                    next[i] = acc[i] + e.weights[t.weight_of];
                    if next[i] >= d {
                        dead = true;
                    }
                }
            }
            if dead {
                continue;
            }
            let nsat = settle(e.to, *sat, &next);
            for (i, x) in next.iter_mut().enumerate() {
                if nsat & (1 << i) != 0 {
                    *x = 0;
                }
            }
            let ns: State = (e.to, nsat, next);
            if !parent.contains_key(&ns) {
                parent.insert(ns.clone(), Some(state.clone()));
                queue.push_back(ns);
            }
        }
    }
    let Some(goal) = goal else {
        return Ok((false, None));
    };
    let mut path = vec![goal.0];
    let mut cur = goal;
    while let Some(Some(p)) = parent.get(&cur) {
        path.push(p.0);
        cur = p.clone();
    }
    path.reverse();
    Ok((true, Some(close_with_simple_walk(arena, path))))
}

/// Extends a finite path into a lasso by walking first successors from its
/// last vertex until a vertex repeats.
pub(crate) fn close_with_simple_walk(arena: &WeightedArena, mut path: Vec<VertexId>) -> Lasso {
    let last = *path.last().expect("nonempty path");
    let mut walk = vec![last];
    let mut pos = HashMap::from([(last, 0usize)]);
    loop {
        let w = arena.succ(*walk.last().unwrap()).next().expect("vertex without successor");
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

/// One index `i` of the objective: `cost_i ≥ bound` in the strict part and
/// `cost_i ≥ bound + 1` in the relaxed part (with TOP + 1 = TOP).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SafetyTerm {
    pub target: Vec<bool>,
    pub weight_of: PlayerId,
    pub bound: Cost,
}

/// Eve wins a play when either every term keeps its cost at or above its
/// bound, or some term exceeds its bound.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundedObjectiveCombo {
    pub terms: Vec<SafetyTerm>,
    /// When set, a term bounded by +∞ can never exceed its bound; otherwise
    /// +∞ + 1 = +∞ and a play avoiding the target satisfies both parts.
    pub strict_top: bool,
}

impl BoundedObjectiveCombo {
    pub fn strict_bound(&self, i: usize) -> Cost {
        self.terms[i].bound
    }

    pub fn relaxed_bound(&self, i: usize) -> Cost {
        self.terms[i].bound.plus(1)
    }

    /// Whether term `i` can be won through its relaxed bound at all.
    pub fn has_relaxed(&self, i: usize) -> bool {
        !(self.strict_top && self.terms[i].bound.is_top())
    }
}

#[derive(Clone, Debug, Default)]
pub struct ComboStats {
    pub nodes: u64,
    pub max_depth: usize,
}

/// Depth-first exploration of the play tree with the branch-cutting rules of
/// the bounded-safety objective. Memoization is exact (the key includes the
/// current segment) and disabled by default.
pub struct SafetyComboSolver<'a> {
    view: ZeroSumView<'a>,
    combo: &'a BoundedObjectiveCombo,
    memo: Option<HashMap<MemoKey, bool>>,
    depth_limit: usize,
    pub stats: ComboStats,
}

type MemoKey = (VertexId, Vec<u64>, u32, bool, Vec<bool>);

impl<'a> SafetyComboSolver<'a> {
    pub fn new(view: ZeroSumView<'a>, combo: &'a BoundedObjectiveCombo) -> Self {
        let n = view.arena.vertex_count();
        SafetyComboSolver {
            view,
            combo,
            memo: None,
            depth_limit: combo.terms.len() * n + n + 1,
            stats: ComboStats::default(),
        }
    }

    pub fn with_memo(mut self) -> Self {
        self.memo = Some(HashMap::new());
        self
    }

    pub fn depth_limit(&self) -> usize {
        self.depth_limit
    }

    pub fn solve(&mut self, start: VertexId) -> bool {
        let n = self.view.arena.vertex_count();
        let costs = vec![0; self.combo.terms.len()];
        let mut segment = vec![false; n];
        self.enter(start, costs, 0, false, &mut segment, 1)
    }

    fn enter(
        &mut self,
        v: VertexId,
        costs: Vec<u64>,
        mut visited: u32,
        mut dropped: bool,
        segment: &mut Vec<bool>,
        depth: usize,
    ) -> bool {
        assert!(depth <= self.depth_limit, "branch longer than t|V| + |V| + 1");
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let combo = self.combo;
        let terms = &combo.terms;
        let all: u32 = if terms.len() >= 32 { u32::MAX } else { (1 << terms.len()) - 1 };

        // (a) some unvisited term already exceeds its bound
        for (i, t) in terms.iter().enumerate() {
            if visited & (1 << i) == 0 {
                if let Cost::Fin(d) = t.bound {
                    if costs[i] > d {
                        return true;
                    }
                }
            }
        }
        // (b), (c) first visits
        let mut changed = false;
        for (i, t) in terms.iter().enumerate() {
            if visited & (1 << i) == 0 && t.target[v] {
                if Cost::Fin(costs[i]) < t.bound {
                    dropped = true;
                }
                visited |= 1 << i;
                changed = true;
            }
        }
        // (d)
        if !dropped && visited == all {
            return true;
        }
        // (e)
        if dropped && visited == all {
            return false;
        }
        // (f) repetition inside the current segment
        let mut fresh;
        let seg: &mut Vec<bool> = if changed {
            fresh = vec![false; segment.len()];
            &mut fresh
        } else {
            if segment[v] {
                // the play can avoid every pending target forever
                return !dropped
                    || (0..terms.len()).any(|i| visited & (1 << i) == 0 && combo.has_relaxed(i));
            }
            segment
        };

        let key = self
            .memo
            .as_ref()
            .map(|_| (v, costs.clone(), visited, dropped, seg.clone()));
        if let (Some(memo), Some(k)) = (&self.memo, &key) {
            if let Some(&r) = memo.get(k) {
                return r;
            }
        }

        seg[v] = true;
        let eve = self.view.eve_owns(v);
        let arena = self.view.arena;
        let mut result = !eve;
        let succs: Vec<(VertexId, Vec<u64>)> = arena
            .out_edges(v)
            .map(|e| {
                let next = terms
                    .iter()
                    .enumerate()
                    .map(|(i, t)| {
                        if visited & (1 << i) != 0 || t.bound.is_top() {
                            costs[i]
                        } else {
                            let d = t.bound.finite().unwrap();
                            (costs[i] + e.weights[t.weight_of]).min(d + 1)
                        }
                    })
                    .collect();
                (e.to, next)
            })
            .collect();
        for (w, next) in succs {
            let r = self.enter(w, next, visited, dropped, seg, depth + 1);
            if r == eve {
                result = eve;
                break;
            }
        }
        seg[v] = false;

        if let (Some(memo), Some(k)) = (&mut self.memo, key) {
            memo.insert(k, result);
        }
        result
    }
}

/// Whether Eve wins the bounded-safety combination from `start`.
pub fn solve_bounded_safety_combo(
    view: ZeroSumView,
    combo: &BoundedObjectiveCombo,
    start: VertexId,
) -> bool {
    SafetyComboSolver::new(view, combo).solve(start)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(weight: u64) -> WeightedArena {
        let mut a = WeightedArena::new(2);
        let v0 = a.add_vertex("v0", 1);
        let v1 = a.add_vertex("v1", 1);
        a.add_edge(v0, v1, &[0, weight]);
        a.add_edge(v1, v1, &[0, 0]);
        a
    }

    #[test]
    fn attractor_corner_cases() {
        let a = chain(1);
        let view = ZeroSumView::new(&a, 0);
        assert_eq!(attractor(view, &[true, true]), vec![true, true]);
        assert_eq!(attractor(view, &[false, false]), vec![false, false]);
        assert_eq!(attractor(view, &[false, true]), vec![true, true]);
    }

    #[test]
    fn conjunction_on_chain() {
        let a = chain(5);
        let view = ZeroSumView::new(&a, 1);
        let term = |d| ReachTerm {
            target: vec![false, true],
            weight_of: 1,
            bound: d,
        };
        assert!(!solve_bounded_reach_conjunction(view, 0, &[term(Cost::Fin(3))]).unwrap().0);
        let (ok, w) = solve_bounded_reach_conjunction(view, 0, &[term(Cost::Fin(6))]).unwrap();
        assert!(ok);
        assert_eq!(w.unwrap(), Lasso::new(vec![0], vec![1]));
    }

    #[test]
    fn opponent_choice_is_rejected() {
        let mut a = chain(1);
        a.add_edge(0, 0, &[0, 0]);
        let view = ZeroSumView::new(&a, 0);
        assert!(solve_bounded_reach_conjunction(view, 0, &[]).is_err());
    }

    #[test]
    fn combo_rules_on_small_cases() {
        let mut a = WeightedArena::new(2);
        let v0 = a.add_vertex("v0", 1);
        a.add_edge(v0, v0, &[0, 0]);
        let combo = BoundedObjectiveCombo {
            terms: vec![SafetyTerm {
                target: vec![true],
                weight_of: 1,
                bound: Cost::Fin(1),
            }],
            strict_top: false,
        };
        // visit at cost 0 < 1 drops the strict part, then nothing is left
        assert!(!solve_bounded_safety_combo(ZeroSumView::new(&a, 0), &combo, v0));

        let a = chain(5);
        let combo = BoundedObjectiveCombo {
            terms: vec![SafetyTerm {
                target: vec![false, true],
                weight_of: 1,
                bound: Cost::Fin(3),
            }],
            strict_top: false,
        };
        assert!(solve_bounded_safety_combo(ZeroSumView::new(&a, 0), &combo, 0));

        let combo = BoundedObjectiveCombo {
            terms: vec![SafetyTerm {
                target: vec![false, false],
                weight_of: 1,
                bound: Cost::Top,
            }],
            strict_top: false,
        };
        assert!(solve_bounded_safety_combo(ZeroSumView::new(&a, 0), &combo, 0));
        // the first term is dropped and the second can only be avoided
        let combo = BoundedObjectiveCombo {
            terms: vec![
                SafetyTerm { target: vec![false, true], weight_of: 1, bound: Cost::Fin(9) },
                SafetyTerm { target: vec![false, false], weight_of: 1, bound: Cost::Top },
            ],
            strict_top: true,
        };
        assert!(!solve_bounded_safety_combo(ZeroSumView::new(&a, 0), &combo, 0));
        let lax = BoundedObjectiveCombo { strict_top: false, ..combo };
        assert!(solve_bounded_safety_combo(ZeroSumView::new(&a, 0), &lax, 0));
    }
}
