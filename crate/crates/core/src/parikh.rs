//! Exact weight-vector path search, a deterministic stand-in for Parikh
//! automaton emptiness on the small instances the solvers produce.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::arena::{PlayerId, VertexId, WeightedArena};
use crate::cost::PlayerSet;

/// Vertex restriction plus a set of vertices whose outgoing edges are cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub vertices: Vec<bool>,
    pub no_exit: Vec<bool>,
}

impl Subgraph {
    pub fn full(n: usize) -> Self {
        Subgraph {
            vertices: vec![true; n],
            no_exit: vec![false; n],
        }
    }

    pub fn induced(vertices: Vec<bool>) -> Self {
        let n = vertices.len();
        Subgraph {
            vertices,
            no_exit: vec![false; n],
        }
    }

    pub fn allows_edge(&self, from: VertexId, to: VertexId) -> bool {
        self.vertices[from] && self.vertices[to] && !self.no_exit[from]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathQuery {
    pub subgraph: Subgraph,
    pub source: VertexId,
    pub sink: VertexId,
    /// Tracked weight functions, by player id.
    pub dims: Vec<PlayerId>,
    pub required: Vec<u64>,
    pub caps: Vec<u64>,
}

/// How a tracked dimension behaves when it passes its cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimBound {
    /// States above the cap are discarded.
    Drop(u64),
    /// Values above the cap collapse to `cap + 1`.
    Saturate(u64),
}

pub type DpState = (VertexId, Vec<u64>);

/// Breadth-first search over (vertex, weight vector) states.
pub struct WeightDp<'a> {
    pub arena: &'a WeightedArena,
    pub subgraph: &'a Subgraph,
    pub dims: Vec<PlayerId>,
    pub bounds: Vec<DimBound>,
}

/// Reachable states with breadth-first parent pointers.
#[derive(Clone, Debug, Default)]
pub struct DpTable {
    parent: HashMap<DpState, Option<DpState>>,
    order: Vec<DpState>,
}

impl DpTable {
    pub fn contains(&self, s: &DpState) -> bool {
        self.parent.contains_key(s)
    }

    /// States in discovery order (seeds first).
    pub fn states(&self) -> &[DpState] {
        &self.order
    }

    /// Vertex sequence from the seed that produced `s` to `s`.
    pub fn path_to(&self, s: &DpState) -> Vec<VertexId> {
        let mut path = vec![s.0];
        let mut cur = s.clone();
        while let Some(Some(p)) = self.parent.get(&cur) {
            path.push(p.0);
            cur = p.clone();
        }
        path.reverse();
        path
    }

    pub fn seed_of(&self, s: &DpState) -> DpState {
        let mut cur = s.clone();
        while let Some(Some(p)) = self.parent.get(&cur) {
            cur = p.clone();
        }
        cur
    }
}

impl WeightDp<'_> {
    /// Explores from the seeds; dimensions whose player is in `frozen` are not
    /// incremented. States at `no_exit` vertices are recorded but not expanded.
    pub fn run(&self, seeds: &[DpState], frozen: PlayerSet) -> DpTable {
        let mut table = DpTable::default();
        let mut queue = VecDeque::new();
        for s in seeds {
            if !table.parent.contains_key(s) {
                table.parent.insert(s.clone(), None);
                table.order.push(s.clone());
                queue.push_back(s.clone());
            }
        }
        while let Some(state) = queue.pop_front() {
            let (v, acc) = &state;
            if self.subgraph.no_exit[*v] {
                continue;
            }
            'edges: for e in self.arena.out_edges(*v) {
                if !self.subgraph.allows_edge(*v, e.to) {
                    continue;
                }
                let mut next = acc.clone();
                for (k, &p) in self.dims.iter().enumerate() {
                    if frozen.contains(p) {
                        continue;
                    }
                    let x = next[k].saturating_add(e.weights[p]);
                    next[k] = match self.bounds[k] {
                        DimBound::Drop(cap) if x > cap => continue 'edges,
                        DimBound::Drop(_) => x,
                        DimBound::Saturate(cap) => x.min(cap + 1),
                    };
                }
                let ns = (e.to, next);
                if !table.parent.contains_key(&ns) {
                    table.parent.insert(ns.clone(), Some(state.clone()));
                    table.order.push(ns.clone());
                    queue.push_back(ns);
                }
            }
        }
        table
    }
}

/// Whether a path from `q.source` to `q.sink` inside the subgraph accumulates
/// exactly `q.required` on the tracked dimensions. The empty path counts when
/// source and sink coincide.
pub fn exact_weight_path_exists(arena: &WeightedArena, q: &PathQuery) -> (bool, Option<Vec<VertexId>>) {
    if !q.subgraph.vertices[q.source] || !q.subgraph.vertices[q.sink] {
        return (false, None);
    }
    if q.required.iter().zip(&q.caps).any(|(r, c)| r > c) {
        return (false, None);
    }
    // nonnegative weights: anything above the requirement is dead
    let dp = WeightDp {
        arena,
        subgraph: &q.subgraph,
        dims: q.dims.clone(),
        bounds: q.required.iter().map(|&r| DimBound::Drop(r)).collect(),
    };
    let seed = (q.source, vec![0; q.dims.len()]);
    let table = dp.run(&[seed], PlayerSet::empty());
    let goal = (q.sink, q.required.clone());
    if table.contains(&goal) {
        (true, Some(table.path_to(&goal)))
    } else {
        (false, None)
    }
}

/// All weight vectors (each dimension at most its cap) with which each vertex
/// is reachable from `source` inside the subgraph.
pub fn reachable_weight_vectors(
    arena: &WeightedArena,
    subgraph: &Subgraph,
    source: VertexId,
    dims: &[PlayerId],
    caps: &[u64],
) -> Vec<BTreeSet<Vec<u64>>> {
    let mut out = vec![BTreeSet::new(); arena.vertex_count()];
    if !subgraph.vertices[source] {
        return out;
    }
    let dp = WeightDp {
        arena,
        subgraph,
        dims: dims.to_vec(),
        bounds: caps.iter().map(|&c| DimBound::Drop(c)).collect(),
    };
    let table = dp.run(&[(source, vec![0; dims.len()])], PlayerSet::empty());
    for (v, acc) in table.order {
        out[v].insert(acc);
    }
    out
}

/// Whether some nonempty cycle through `anchor` stays inside the subgraph and
/// avoids `forbidden`.
pub fn cycle_avoiding_exists(
    arena: &WeightedArena,
    subgraph: &Subgraph,
    anchor: VertexId,
    forbidden: &[bool],
) -> bool {
    if forbidden[anchor] || !subgraph.vertices[anchor] {
        return false;
    }
    let ok = |u: VertexId, w: VertexId| subgraph.allows_edge(u, w) && !forbidden[w];
    let mut seen = vec![false; arena.vertex_count()];
    let mut stack = vec![anchor];
    while let Some(u) = stack.pop() {
        for w in arena.succ(u) {
            if !ok(u, w) {
                continue;
            }
            if w == anchor {
                return true;
            }
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

/// Vertices of `allowed` from which an infinite path stays inside `allowed`.
pub fn viable_region(arena: &WeightedArena, allowed: &[bool]) -> Vec<bool> {
    let mut live = allowed.to_vec();
    loop {
        let mut changed = false;
        for v in arena.vertices() {
            if live[v] && !arena.succ(v).any(|w| live[w]) {
                live[v] = false;
                changed = true;
            }
        }
        if !changed {
            return live;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> WeightedArena {
        let mut a = WeightedArena::new(2);
        let v0 = a.add_vertex("v0", 1);
        let v1 = a.add_vertex("v1", 0);
        a.add_edge(v0, v0, &[1, 0]);
        a.add_edge(v0, v1, &[1, 0]);
        a.add_edge(v1, v1, &[1, 0]);
        a
    }

    #[test]
    fn loops_realize_exact_costs() {
        let a = g2();
        let q = PathQuery {
            subgraph: Subgraph::full(2),
            source: 0,
            sink: 1,
            dims: vec![0],
            required: vec![3],
            caps: vec![10],
        };
        let (ok, path) = exact_weight_path_exists(&a, &q);
        assert!(ok);
        assert_eq!(path.unwrap(), vec![0, 0, 0, 1]);
    }

    #[test]
    fn empty_path_and_parity() {
        let a = g2();
        let q = PathQuery {
            subgraph: Subgraph::full(2),
            source: 1,
            sink: 1,
            dims: vec![0],
            required: vec![0],
            caps: vec![4],
        };
        assert_eq!(exact_weight_path_exists(&a, &q), (true, Some(vec![1])));

        let mut b = WeightedArena::new(1);
        let x = b.add_vertex("x", 0);
        let y = b.add_vertex("y", 0);
        b.add_edge(x, y, &[2]);
        b.add_edge(y, y, &[2]);
        let q = PathQuery {
            subgraph: Subgraph::full(2),
            source: x,
            sink: y,
            dims: vec![0],
            required: vec![1],
            caps: vec![5],
        };
        assert!(!exact_weight_path_exists(&b, &q).0);
    }

    #[test]
    fn vector_sets() {
        let a = g2();
        let r = reachable_weight_vectors(&a, &Subgraph::full(2), 0, &[0], &[5]);
        let at_v1: Vec<u64> = r[1].iter().map(|v| v[0]).collect();
        assert_eq!(at_v1, vec![1, 2, 3, 4, 5]);
        let r = reachable_weight_vectors(&a, &Subgraph::full(2), 0, &[0], &[0]);
        assert_eq!(r[0].len(), 1);
        assert!(r[1].is_empty());
    }

    #[test]
    fn cycles() {
        let a = g2();
        assert!(cycle_avoiding_exists(&a, &Subgraph::full(2), 1, &[false, false]));
        assert!(!cycle_avoiding_exists(&a, &Subgraph::full(2), 1, &[false, true]));
        let mut b = WeightedArena::new(1);
        let x = b.add_vertex("x", 0);
        let y = b.add_vertex("y", 0);
        b.add_edge(x, y, &[0]);
        b.add_edge(y, y, &[0]);
        assert!(!cycle_avoiding_exists(&b, &Subgraph::full(2), x, &[false, false]));
    }
}
