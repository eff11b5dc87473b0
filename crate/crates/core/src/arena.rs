use std::collections::HashMap;
use std::fmt;

use crate::cost::{Cost, CostVector, PlayerSet};
use crate::error::{Error, Result};

pub type VertexId = usize;
pub type PlayerId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: VertexId,
    pub to: VertexId,
    pub weights: Vec<u64>,
}

/// Directed graph whose vertices are partitioned among players `0..players`,
/// with one nonnegative weight function per player.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedArena {
    players: usize,
    names: Vec<String>,
    owner: Vec<PlayerId>,
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
}

impl WeightedArena {
    pub fn new(players: usize) -> Self {
        WeightedArena {
            players,
            names: Vec::new(),
            owner: Vec::new(),
            edges: Vec::new(),
            out: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self, name: impl Into<String>, owner: PlayerId) -> VertexId {
        self.names.push(name.into());
        self.owner.push(owner);
        self.out.push(Vec::new());
        self.names.len() - 1
    }

    /// Adds an edge. Out-of-range endpoints and malformed weight lists are kept
    /// so that [`validate_game`] can report them.
    pub fn add_edge(&mut self, from: VertexId, to: VertexId, weights: &[u64]) {
        let idx = self.edges.len();
        self.edges.push(Edge {
            from,
            to,
            weights: weights.to_vec(),
        });
        if from < self.out.len() {
            self.out[from].push(idx);
        }
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.names.len()
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn owner(&self, v: VertexId) -> PlayerId {
        self.owner[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = &Edge> + '_ {
        self.out[v].iter().map(move |&e| &self.edges[e])
    }

    pub fn succ(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.out[v].iter().map(move |&e| self.edges[e].to)
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out[v].len()
    }

    pub fn edge(&self, from: VertexId, to: VertexId) -> Option<&Edge> {
        if from >= self.out.len() {
            return None;
        }
        self.out_edges(from).find(|e| e.to == to)
    }

    /// Weight of the edge `from → to` for player `i`, if the edge exists.
    pub fn weight(&self, from: VertexId, to: VertexId, i: PlayerId) -> Option<u64> {
        self.edge(from, to).map(|e| e.weights[i])
    }

    /// Largest weight over all players and edges (the `W` of the size analysis).
    pub fn max_weight(&self) -> u64 {
        self.edges
            .iter()
            .flat_map(|e| e.weights.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Number of vertices with at least one positively weighted outgoing edge.
    /// A simple path accumulates at most this many nonzero steps.
    pub fn weighted_vertex_count(&self) -> usize {
        self.vertices()
            .filter(|&v| self.out_edges(v).any(|e| e.weights.iter().any(|&w| w > 0)))
            .count()
    }

    /// Sum of player `i`'s weights along a finite path.
    pub fn path_weight(&self, path: &[VertexId], i: PlayerId) -> u64 {
        path.windows(2)
            .map(|w| self.weight(w[0], w[1], i).unwrap_or(0))
            .sum()
    }
}

/// Arena with one target set per player and an initial vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachabilityGame {
    arena: WeightedArena,
    targets: Vec<Vec<VertexId>>,
    target_mask: Vec<PlayerSet>,
    initial: VertexId,
}

impl ReachabilityGame {
    pub fn new(arena: WeightedArena, targets: Vec<Vec<VertexId>>, initial: VertexId) -> Self {
        let mut targets = targets;
        targets.resize(arena.players(), Vec::new());
        for t in &mut targets {
            t.sort_unstable();
            t.dedup();
        }
        let mut target_mask = vec![PlayerSet::empty(); arena.vertex_count()];
        for (i, t) in targets.iter().enumerate() {
            for &v in t {
                if v < target_mask.len() && i < PlayerSet::MAX_PLAYERS {
                    target_mask[v].insert(i);
                }
            }
        }
        ReachabilityGame {
            arena,
            targets,
            target_mask,
            initial,
        }
    }

    pub fn arena(&self) -> &WeightedArena {
        &self.arena
    }

    pub fn initial(&self) -> VertexId {
        self.initial
    }

    pub fn players(&self) -> usize {
        self.arena.players()
    }

    /// Environment players `1..players`.
    pub fn env_players(&self) -> PlayerSet {
        PlayerSet::all(self.players()).without(0)
    }

    pub fn vertex_count(&self) -> usize {
        self.arena.vertex_count()
    }

    pub fn target(&self, i: PlayerId) -> &[VertexId] {
        &self.targets[i]
    }

    pub fn targets(&self) -> &[Vec<VertexId>] {
        &self.targets
    }

    pub fn target_mask(&self, i: PlayerId) -> Vec<bool> {
        (0..self.vertex_count())
            .map(|v| self.target_mask[v].contains(i))
            .collect()
    }

    /// Players whose target set contains `v`.
    pub fn targets_of(&self, v: VertexId) -> PlayerSet {
        self.target_mask[v]
    }

    pub fn in_target(&self, v: VertexId, i: PlayerId) -> bool {
        self.target_mask[v].contains(i)
    }

    pub fn with_initial(&self, initial: VertexId) -> ReachabilityGame {
        ReachabilityGame {
            initial,
            ..self.clone()
        }
    }
}

/// Lists every broken invariant of the game. Empty means well-formed.
pub fn validate_game(game: &ReachabilityGame) -> Vec<String> {
    let arena = game.arena();
    let n = arena.vertex_count();
    let mut out = Vec::new();
    if arena.players() == 0 {
        out.push("game declares no players".to_string());
    }
    if arena.players() > PlayerSet::MAX_PLAYERS {
        out.push(format!(
            "game declares {} players, at most {} are supported",
            arena.players(),
            PlayerSet::MAX_PLAYERS
        ));
    }
    for v in arena.vertices() {
        if arena.owner(v) >= arena.players() {
            out.push(format!(
                "vertex `{}` is owned by undeclared player {}",
                arena.name(v),
                arena.owner(v)
            ));
        }
    }
    let label = |v: VertexId| {
        if v < n {
            format!("`{}`", arena.name(v))
        } else {
            format!("#{v}")
        }
    };
    let mut seen = HashMap::new();
    for e in arena.edges() {
        if e.from >= n || e.to >= n {
            out.push(format!(
                "edge {} -> {} has an undeclared endpoint",
                label(e.from),
                label(e.to)
            ));
            continue;
        }
        if e.weights.len() != arena.players() {
            out.push(format!(
                "edge {} -> {} carries {} weights, expected {}",
                label(e.from),
                label(e.to),
                e.weights.len(),
                arena.players()
            ));
        }
        if seen.insert((e.from, e.to), ()).is_some() {
            out.push(format!("edge {} -> {} is declared twice", label(e.from), label(e.to)));
        }
    }
    for v in arena.vertices() {
        if arena.out_degree(v) == 0 {
            out.push(format!("vertex `{}` has no successor", arena.name(v)));
        }
    }
    for (i, t) in game.targets().iter().enumerate() {
        for &v in t {
            if v >= n {
                out.push(format!("target set of player {i} names undeclared vertex #{v}"));
            }
        }
    }
    if game.initial() >= n {
        out.push(format!("initial vertex #{} is not declared", game.initial()));
    }
    out
}

/// Ultimately periodic play `prefix · cycle^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lasso {
    prefix: Vec<VertexId>,
    cycle: Vec<VertexId>,
}

impl Lasso {
    /// Builds the unique minimal representation of `prefix · cycle^ω`.
    pub fn new(prefix: Vec<VertexId>, cycle: Vec<VertexId>) -> Self {
        Lasso::raw(prefix, cycle).canonical()
    }

    /// Keeps the given representation as is.
    pub fn raw(prefix: Vec<VertexId>, cycle: Vec<VertexId>) -> Self {
        assert!(!cycle.is_empty(), "lasso cycle must be nonempty");
        Lasso { prefix, cycle }
    }

    pub fn canonical(&self) -> Lasso {
        let mut cycle = self.cycle.clone();
        let n = cycle.len();
        let period = (1..=n)
            .find(|&p| n % p == 0 && (p..n).all(|k| cycle[k] == cycle[k - p]))
            .unwrap_or(n);
        cycle.truncate(period);
        let mut prefix = self.prefix.clone();
        while let Some(&last) = prefix.last() {
            if last != *cycle.last().unwrap() {
                break;
            }
            prefix.pop();
            cycle.rotate_right(1);
        }
        Lasso { prefix, cycle }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    pub fn prefix(&self) -> &[VertexId] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[VertexId] {
        &self.cycle
    }

    /// `|μν|`.
    pub fn len(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> VertexId {
        self.at(0)
    }

    /// Vertex at position `n` of the play.
    pub fn at(&self, n: usize) -> VertexId {
        if n < self.prefix.len() {
            self.prefix[n]
        } else {
            self.cycle[(n - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// `μν` as one sequence.
    pub fn head(&self) -> Vec<VertexId> {
        let mut h = self.prefix.clone();
        h.extend_from_slice(&self.cycle);
        h
    }

    /// First `n` vertices of the play.
    pub fn unrolled(&self, n: usize) -> Vec<VertexId> {
        (0..n).map(|k| self.at(k)).collect()
    }

    pub fn map(&self, f: impl Fn(VertexId) -> VertexId) -> Lasso {
        Lasso {
            prefix: self.prefix.iter().map(|&v| f(v)).collect(),
            cycle: self.cycle.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn display<'a>(&'a self, arena: &'a WeightedArena) -> LassoDisplay<'a> {
        LassoDisplay { lasso: self, arena }
    }
}

pub struct LassoDisplay<'a> {
    lasso: &'a Lasso,
    arena: &'a WeightedArena,
}

impl fmt::Display for LassoDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &v in self.lasso.prefix() {
            write!(f, "{} ", self.arena.name(v))?;
        }
        f.write_str("(")?;
        for (k, &v) in self.lasso.cycle().iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.arena.name(v))?;
        }
        f.write_str(")^w")
    }
}

pub fn check_history(arena: &WeightedArena, h: &[VertexId]) -> Result<()> {
    for &v in h {
        if v >= arena.vertex_count() {
            return Err(Error::InvalidInput(format!("vertex #{v} is not declared")));
        }
    }
    for w in h.windows(2) {
        if arena.edge(w[0], w[1]).is_none() {
            return Err(Error::InvalidInput(format!(
                "no edge {} -> {}",
                arena.name(w[0]),
                arena.name(w[1])
            )));
        }
    }
    Ok(())
}

/// Checks that `pi` is a play of the arena (edges only, any start).
pub fn check_play(arena: &WeightedArena, pi: &Lasso) -> Result<()> {
    let mut h = pi.head();
    h.push(pi.cycle()[0]);
    check_history(arena, &h)
}

/// Checks that `pi` is a play of the game starting at its initial vertex.
pub fn check_lasso(game: &ReachabilityGame, pi: &Lasso) -> Result<()> {
    if pi.first() != game.initial() {
        return Err(Error::InvalidInput(format!(
            "lasso starts at #{} instead of the initial vertex",
            pi.first()
        )));
    }
    check_play(game.arena(), pi)
}

/// Cost of a finite history for every player (TOP where its target is not met).
pub fn cost_of_history(game: &ReachabilityGame, h: &[VertexId]) -> CostVector {
    let players = game.players();
    let mut cost = vec![Cost::Top; players];
    let mut acc = vec![0u64; players];
    for (k, &v) in h.iter().enumerate() {
        if k > 0 {
            let e = game.arena().edge(h[k - 1], v).expect("history edge");
            for i in 0..players {
                acc[i] = acc[i].saturating_add(e.weights[i]);
            }
        }
        for i in game.targets_of(v).iter() {
            if cost[i].is_top() {
                cost[i] = Cost::Fin(acc[i]);
            }
        }
    }
    CostVector(cost)
}

/// Cost vector of the play `μ(ν)^ω`. Scans `μν` once, since every vertex of
/// the play already occurs there.
pub fn cost_of_lasso(game: &ReachabilityGame, pi: &Lasso) -> Result<CostVector> {
    check_lasso(game, pi)?;
    Ok(cost_of_history(game, &pi.head()))
}

/// Players whose targets the history visits.
pub fn visit_set(game: &ReachabilityGame, h: &[VertexId]) -> Result<PlayerSet> {
    check_history(game.arena(), h)?;
    Ok(visits_of(game, h))
}

pub(crate) fn visits_of(game: &ReachabilityGame, h: &[VertexId]) -> PlayerSet {
    h.iter()
        .fold(PlayerSet::empty(), |s, &v| s.union(game.targets_of(v)))
}

/// Cycle-removal normalization of a lasso.
///
/// Cycles lying between two consecutive first target visits are cut, then the
/// play is followed from the last first visit up to its first repeated vertex.
/// With `preserve = Some((j, c))` and `c < cost_j(pi) < TOP`, cuts that would
/// lower player `j`'s accumulated weight inside the longest prefix of weight
/// at most `c` are skipped, so the result still costs `j` more than `c`.
///
/// The result keeps a representation where `Visit(μ) = Visit(μν)`; call
/// [`Lasso::canonical`] for the minimal one.
pub fn normalize_lasso(
    game: &ReachabilityGame,
    pi: &Lasso,
    preserve: Option<(PlayerId, u64)>,
) -> Result<Lasso> {
    check_lasso(game, pi)?;
    let arena = game.arena();
    let head = pi.head();
    let protect = match preserve {
        Some((j, c)) => {
            let cost = cost_of_history(game, &head)[j];
            match cost {
                Cost::Fin(x) if x > c => Some((j, c)),
                _ => None,
            }
        }
        None => None,
    };

    let first_visits = |seq: &[VertexId]| {
        let mut seen = PlayerSet::empty();
        let mut marks = Vec::new();
        for (k, &v) in seq.iter().enumerate() {
            let t = game.targets_of(v);
            if !t.is_subset(seen) {
                marks.push(k);
                seen = seen.union(t);
            }
        }
        marks
    };
    let last = first_visits(&head).last().copied().unwrap_or(0);
    let mut seq = head[..=last].to_vec();

    loop {
        let marks = first_visits(&seq);
        // longest protected prefix: positions whose accumulated weight is <= c
        let protected_end = protect.map(|(j, c)| {
            let mut acc = 0u64;
            let mut end = 0;
            for k in 1..seq.len() {
                acc += arena.weight(seq[k - 1], seq[k], j).unwrap();
                if acc > c {
                    break;
                }
                end = k;
            }
            end
        });
        let mut cut = None;
        'search: for a in 0..seq.len() {
            let seg_end = marks
                .iter()
                .copied()
                .find(|&m| m > a)
                .unwrap_or(seq.len() - 1);
            for b in (a + 1..=seg_end).rev() {
                if seq[a] != seq[b] {
                    continue;
                }
                let allowed = match (protect, protected_end) {
                    (Some((j, _)), Some(end)) if a <= end => arena.path_weight(&seq[a..=b], j) == 0,
                    _ => true,
                };
                if allowed {
                    cut = Some((a, b));
                    break 'search;
                }
            }
        }
        match cut {
            Some((a, b)) => {
                seq.drain(a..b);
            }
            None => break,
        }
    }

    // follow the original play from its last first visit until a vertex repeats
    let mut tail = vec![pi.at(last)];
    let mut pos = HashMap::new();
    pos.insert(tail[0], 0usize);
    let mut k = last + 1;
    let loop_start = loop {
        let v = pi.at(k);
        if let Some(&i) = pos.get(&v) {
            break i;
        }
        pos.insert(v, tail.len());
        tail.push(v);
        k += 1;
    };
    let (prefix, cycle) = if loop_start == 0 {
        let mut cycle = tail[1..].to_vec();
        cycle.push(tail[0]);
        (seq, cycle)
    } else {
        let mut prefix = seq;
        prefix.extend_from_slice(&tail[1..loop_start]);
        (prefix, tail[loop_start..].to_vec())
    };
    Ok(Lasso::raw(prefix, cycle))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_loop() -> ReachabilityGame {
        // v0 loops with weight (1,0), v0 -> v1, v1 loops; both players target v1
        let mut a = WeightedArena::new(2);
        let v0 = a.add_vertex("v0", 1);
        let v1 = a.add_vertex("v1", 1);
        a.add_edge(v0, v0, &[1, 0]);
        a.add_edge(v0, v1, &[1, 0]);
        a.add_edge(v1, v1, &[1, 0]);
        ReachabilityGame::new(a, vec![vec![v1], vec![v1]], v0)
    }

    #[test]
    fn canonical_form_is_minimal() {
        let l = Lasso::new(vec![0, 1, 2, 1, 2], vec![1, 2, 1, 2]);
        assert_eq!(l.prefix(), &[0]);
        assert_eq!(l.cycle(), &[1, 2]);
        let l = Lasso::new(vec![3, 3, 3], vec![3]);
        assert!(l.prefix().is_empty());
        assert_eq!(l.cycle(), &[3]);
        assert_eq!(Lasso::new(vec![5], vec![7, 5]).cycle(), &[5, 7]);
    }

    #[test]
    fn sink_and_bad_initial_are_reported() {
        let mut a = WeightedArena::new(1);
        a.add_vertex("s", 0);
        let g = ReachabilityGame::new(a, vec![vec![]], 0);
        let v = validate_game(&g);
        assert_eq!(v.len(), 1);
        assert!(v[0].contains("`s`"));
        let g2 = two_loop().with_initial(9);
        assert_eq!(validate_game(&g2).len(), 1);
    }

    #[test]
    fn cost_of_initial_target_is_zero() {
        let g = two_loop().with_initial(1);
        let c = cost_of_lasso(&g, &Lasso::new(vec![], vec![1])).unwrap();
        assert_eq!(c, CostVector(vec![Cost::Fin(0), Cost::Fin(0)]));
    }

    #[test]
    fn broken_lassos_are_rejected() {
        let g = two_loop();
        assert!(cost_of_lasso(&g, &Lasso::new(vec![1], vec![0])).is_err());
        assert!(cost_of_lasso(&g, &Lasso::new(vec![], vec![1])).is_err());
        assert!(visit_set(&g, &[1, 0]).is_err());
        assert_eq!(visit_set(&g, &[]).unwrap(), PlayerSet::empty());
    }

    #[test]
    fn normalization_keeps_expensive_prefix() {
        let g = two_loop();
        let pi = Lasso::new(vec![0; 7], vec![1]);
        let plain = normalize_lasso(&g, &pi, None).unwrap().canonical();
        assert_eq!(plain, Lasso::new(vec![0], vec![1]));
        let kept = normalize_lasso(&g, &pi, Some((0, 5))).unwrap();
        let cost = cost_of_lasso(&g, &kept).unwrap();
        assert_eq!(kept.canonical(), pi);
        assert_eq!(cost[0], Cost::Fin(7));
    }
}
