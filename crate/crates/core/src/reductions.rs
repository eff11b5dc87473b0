//! Instance generators for the hardness constructions. They build games only;
//! deciding the source problems is left to the caller.
//!
//! Every generator splits a "parallel" choice `u -(w)-> x` into `u -(w)-> m -(0)-> x`
//! through a fresh one-successor vertex, since arenas carry a single edge per
//! ordered pair of vertices.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::arena::{PlayerId, ReachabilityGame, VertexId, WeightedArena};
use crate::error::{Error, Result};

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

/// Meaningful lines of a source-problem document: comments (`#`) and blank
/// lines dropped, each split into words, with 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(n, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then(|| (n + 1, l.split_whitespace().collect()))
    })
}

fn num(word: &str, line: usize) -> Result<u64> {
    word.parse()
        .map_err(|_| bad(format!("line {line}: `{word}` is not a natural number")))
}

/// Turn-based countdown game: player 0 picks a duration, player 1 a
/// successor; player 0 wins iff the running total hits `threshold` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountdownGame {
    pub states: Vec<String>,
    /// `(from, duration, to)`, durations positive
    pub edges: Vec<(usize, u64, usize)>,
    pub initial: usize,
    pub threshold: u64,
}

impl CountdownGame {
    pub fn validate(&self) -> Result<()> {
        if self.initial >= self.states.len() {
            return Err(bad("countdown initial state out of range"));
        }
        for &(s, d, t) in &self.edges {
            if s >= self.states.len() || t >= self.states.len() {
                return Err(bad("countdown edge endpoint out of range"));
            }
            if d == 0 {
                return Err(bad(format!("countdown edge from {} has duration 0", self.states[s])));
            }
        }
        for (s, name) in self.states.iter().enumerate() {
            if !self.edges.iter().any(|e| e.0 == s) {
                return Err(bad(format!("countdown state {name} has no duration")));
            }
        }
        Ok(())
    }

    /// Durations available at `s`, ascending, without repeats.
    pub fn durations(&self, s: usize) -> Vec<u64> {
        let mut ds: Vec<u64> = self.edges.iter().filter(|e| e.0 == s).map(|e| e.1).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn successors(&self, s: usize, d: u64) -> Vec<usize> {
        let mut ts: Vec<usize> = self.edges.iter().filter(|e| e.0 == s && e.1 == d).map(|e| e.2).collect();
        ts.sort_unstable();
        ts.dedup();
        ts
    }
}

impl FromStr for CountdownGame {
    type Err = Error;

    /// ```text
    /// threshold 3
    /// initial s
    /// edge s 1 s
    /// edge s 2 s
    /// ```
    fn from_str(text: &str) -> Result<Self> {
        let mut states: Vec<String> = Vec::new();
        let idx = |name: &str, states: &mut Vec<String>| {
            states.iter().position(|s| s == name).unwrap_or_else(|| {
                states.push(name.to_string());
                states.len() - 1
            })
        };
        let (mut threshold, mut initial, mut edges) = (None, None, Vec::new());
        for (n, w) in lines(text) {
            match w.as_slice() {
                ["countdown"] => {}
                ["threshold", c] => threshold = Some(num(c, n)?),
                ["initial", s] => initial = Some(idx(s, &mut states)),
                ["edge", s, d, t] => {
                    let d = num(d, n)?;
                    let s = idx(s, &mut states);
                    let t = idx(t, &mut states);
                    edges.push((s, d, t));
                }
                _ => return Err(bad(format!("line {n}: unrecognized countdown line"))),
            }
        }
        let cg = CountdownGame {
            states,
            edges,
            initial: initial.ok_or_else(|| bad("countdown game without `initial`"))?,
            threshold: threshold.ok_or_else(|| bad("countdown game without `threshold`"))?,
        };
        cg.validate()?;
        Ok(cg)
    }
}

/// Adds `from -> mid -> to`, the weight on the first hop.
fn via(a: &mut WeightedArena, from: VertexId, mid: VertexId, to: VertexId, w: &[u64]) {
    a.add_edge(from, mid, w);
    a.add_edge(mid, to, &vec![0; w.len()]);
}

/// Three-player game where player 0's NCNS threshold `2c` is achievable iff
/// player 0 wins the countdown game. Player 2 owns the entry and the sinks;
/// player 1 may leave the countdown through `E` at any move vertex.
pub fn gen_countdown_ncns(cg: &CountdownGame) -> Result<(ReachabilityGame, u64)> {
    cg.validate()?;
    let c = cg.threshold;
    let mut a = WeightedArena::new(3);
    let v0 = a.add_vertex("v0", 2);
    let d = a.add_vertex("D", 2);
    let e = a.add_vertex("E", 2);
    let s: Vec<VertexId> = cg.states.iter().map(|n| a.add_vertex(n.clone(), 0)).collect();
    a.add_edge(v0, d, &[2 * c, 0, 2 * c]);
    a.add_edge(v0, s[cg.initial], &[0, 0, 0]);
    a.add_edge(d, d, &[0, 0, 0]);
    a.add_edge(e, e, &[0, 0, 0]);
    for (x, name) in cg.states.iter().enumerate() {
        for dur in cg.durations(x) {
            let m = a.add_vertex(format!("{name}/{}", 2 * dur), 1);
            a.add_edge(s[x], m, &[0, 0, 0]);
            for y in cg.successors(x, dur) {
                a.add_edge(m, s[y], &[2 * dur, 0, 2 * dur]);
            }
            a.add_edge(m, e, &[2 * dur, 0, 1]);
        }
    }
    let all: Vec<VertexId> = a.vertices().collect();
    Ok((ReachabilityGame::new(a, vec![vec![d, e], all, vec![d, e]], v0), 2 * c))
}

/// Two-player game with satisficing objectives `cost < c + 1` on `{v1, v2}`
/// for both players: player 0 can make every NE cost at most `c` iff it wins
/// the countdown game. Returns the game, the threshold and the per-player
/// bounds (entry 0 unused).
pub fn gen_countdown_ncns_bounded(cg: &CountdownGame) -> Result<(ReachabilityGame, u64, Vec<u64>)> {
    cg.validate()?;
    let c = cg.threshold;
    let mut a = WeightedArena::new(2);
    let s: Vec<VertexId> = cg.states.iter().map(|n| a.add_vertex(n.clone(), 0)).collect();
    let e = a.add_vertex("E", 1);
    let v1 = a.add_vertex("v1", 1);
    let v2 = a.add_vertex("v2", 1);
    a.add_edge(e, v1, &[c + 1, 1]);
    a.add_edge(e, v2, &[0, 0]);
    a.add_edge(v1, v1, &[0, 0]);
    a.add_edge(v2, v2, &[0, 0]);
    for (x, name) in cg.states.iter().enumerate() {
        a.add_edge(s[x], e, &[0, 0]);
        for dur in cg.durations(x) {
            let m = a.add_vertex(format!("{name}/{dur}"), 1);
            a.add_edge(s[x], m, &[0, 0]);
            for y in cg.successors(x, dur) {
                a.add_edge(m, s[y], &[dur, dur]);
            }
        }
    }
    let goal = vec![v1, v2];
    let g = ReachabilityGame::new(a, vec![goal.clone(), goal], s[cg.initial]);
    Ok((g, c, vec![0, c + 1]))
}

/// `∀P1∈{A1,B1} ∃P2∈{E1,F1} … ∀P(2n-1)∈{An,Bn} ∃P(2n)∈{En,Fn}: ΣP = target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetSumGame {
    /// `[A, B, E, F]` per round
    pub rounds: Vec<[u64; 4]>,
    pub target: u64,
}

impl FromStr for SubsetSumGame {
    type Err = Error;

    /// ```text
    /// target 3
    /// round 1 2 2 1
    /// ```
    fn from_str(text: &str) -> Result<Self> {
        let (mut target, mut rounds) = (None, Vec::new());
        for (n, w) in lines(text) {
            match w.as_slice() {
                ["subsetsum"] => {}
                ["target", t] => target = Some(num(t, n)?),
                ["round", a, b, e, f] => rounds.push([num(a, n)?, num(b, n)?, num(e, n)?, num(f, n)?]),
                _ => return Err(bad(format!("line {n}: unrecognized subset-sum line"))),
            }
        }
        Ok(SubsetSumGame {
            rounds,
            target: target.ok_or_else(|| bad("subset-sum game without `target`"))?,
        })
    }
}

/// Two-player NCNS instance with threshold `(2n-1)T`. Constants above `T`
/// are normalized: an existential constant above `T` is replaced by the other
/// one; a universal constant above `T`, or both existential ones, makes the
/// formula false and is rejected.
pub fn gen_subsetsum_ncns(psi: &SubsetSumGame) -> Result<(ReachabilityGame, u64)> {
    let t = psi.target;
    let n = psi.rounds.len() as u64;
    let mut a = WeightedArena::new(2);
    let v0 = a.add_vertex("v0", 1);
    let l = a.add_vertex("L", 0);
    a.add_edge(v0, l, &[0, t + 1]);
    a.add_edge(l, l, &[0, 0]);
    let mut cur = v0;
    for (k, &[ca, cb, ce, cf]) in psi.rounds.iter().enumerate() {
        let r = k + 1;
        if ca > t || cb > t {
            return Err(bad(format!("round {r}: universal constant exceeds the target")));
        }
        let (ce, cf) = match (ce > t, cf > t) {
            (true, true) => return Err(bad(format!("round {r}: both existential constants exceed the target"))),
            (true, false) => (cf, cf),
            (false, true) => (ce, ce),
            _ => (ce, cf),
        };
        let q = a.add_vertex(format!("q{r}"), 0);
        for (label, x) in [("A", ca), ("B", cb)] {
            let m = a.add_vertex(format!("{label}{r}"), 1);
            via(&mut a, cur, m, q, &[t - x, x]);
        }
        let next = if r as u64 == n {
            a.add_vertex("R", 0)
        } else {
            a.add_vertex(format!("p{}", r + 1), 1)
        };
        for (label, x) in [("E", ce), ("F", cf)] {
            let m = a.add_vertex(format!("{label}{r}"), 0);
            via(&mut a, q, m, next, &[t - x, x]);
        }
        cur = next;
    }
    let r = if n == 0 {
        let r = a.add_vertex("R", 0);
        a.add_edge(v0, r, &[0, 0]);
        r
    } else {
        cur
    };
    a.add_edge(r, r, &[0, 0]);
    let threshold = (2 * n).saturating_sub(1) * t;
    Ok((ReachabilityGame::new(a, vec![vec![r], vec![r, l]], v0), threshold))
}

/// Chain `v1 … vn R` where player 0 sends each `a_i` to one side; player 1
/// may leave at `v0` towards `L` instead.
fn bipartition_chain(s: &[u64], left: [u64; 2], side: impl Fn(u64) -> ([u64; 2], [u64; 2])) -> (WeightedArena, VertexId, VertexId) {
    let mut a = WeightedArena::new(2);
    let v0 = a.add_vertex("v0", 1);
    let l = a.add_vertex("L", 0);
    a.add_edge(v0, l, &left);
    a.add_edge(l, l, &[0, 0]);
    let mut cur = a.add_vertex(if s.is_empty() { "R".to_string() } else { "v1".to_string() }, 0);
    a.add_edge(v0, cur, &[0, 0]);
    for (k, &x) in s.iter().enumerate() {
        let i = k + 1;
        let next = a.add_vertex(if i == s.len() { "R".to_string() } else { format!("v{}", i + 1) }, 0);
        let (wa, wb) = side(x);
        let ma = a.add_vertex(format!("a{i}"), 0);
        via(&mut a, cur, ma, next, &wa);
        let mb = a.add_vertex(format!("b{i}"), 0);
        via(&mut a, cur, mb, next, &wb);
        cur = next;
    }
    a.add_edge(cur, cur, &[0, 0]);
    (a, l, cur)
}

fn half_total(s: &[u64]) -> Result<u64> {
    let total: u64 = s.iter().sum();
    if total % 2 == 1 {
        return Err(bad(format!("total {total} is odd")));
    }
    Ok(total / 2)
}

/// CNS instance with threshold `T/2`, positive iff `s` splits into two halves
/// of equal sum.
pub fn gen_bipartition_cns(s: &[u64]) -> Result<(ReachabilityGame, u64)> {
    let half = half_total(s)?;
    let (a, l, r) = bipartition_chain(s, [0, half], |x| ([x, 0], [0, x]));
    Ok((ReachabilityGame::new(a, vec![vec![r], vec![l, r]], 0), half))
}

/// UNCNV instance (with the machine allowing every player-0 move) and
/// threshold `T/2 - 1`, negative iff `s` splits into two halves of equal sum.
pub fn gen_bipartition_uncnv(s: &[u64]) -> Result<(ReachabilityGame, u64)> {
    let half = half_total(s)?;
    if half == 0 {
        return Err(bad("total must be positive"));
    }
    let total = 2 * half;
    let n = s.len() as u64;
    let (a, l, r) = bipartition_chain(s, [0, half * (2 * n - 1)], |x| ([x, total], [0, total - x]));
    let t = vec![l, r];
    Ok((ReachabilityGame::new(a, vec![t.clone(), t], 0), half - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantifier {
    Exists,
    Forall,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

/// Prenex CNF with at most three literals per clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Qbf {
    /// quantifier prefix, outermost first
    pub vars: Vec<(Quantifier, String)>,
    pub clauses: Vec<Vec<Literal>>,
}

impl Qbf {
    pub fn validate(&self) -> Result<()> {
        for (k, c) in self.clauses.iter().enumerate() {
            if c.is_empty() || c.len() > 3 {
                return Err(bad(format!("clause {} has {} literals, expected 1 to 3", k + 1, c.len())));
            }
            if c.iter().any(|l| l.var >= self.vars.len()) {
                return Err(bad(format!("clause {} uses an undeclared variable", k + 1)));
            }
        }
        Ok(())
    }

    pub fn eval(&self, valuation: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| valuation[l.var] == l.positive))
    }

    fn split_sigma2(&self) -> Result<usize> {
        let n = self.vars.iter().take_while(|v| v.0 == Quantifier::Exists).count();
        if self.vars[n..].iter().any(|v| v.0 == Quantifier::Exists) {
            return Err(bad("expected an existential block followed by a universal block"));
        }
        Ok(n)
    }
}

impl FromStr for Qbf {
    type Err = Error;

    /// ```text
    /// exists x
    /// forall y
    /// clause x -y
    /// ```
    /// Quantifier lines may repeat and alternate; their order is the prefix.
    fn from_str(text: &str) -> Result<Self> {
        let mut vars: Vec<(Quantifier, String)> = Vec::new();
        let mut clauses = Vec::new();
        for (n, w) in lines(text) {
            let q = match w[0] {
                "exists" => Some(Quantifier::Exists),
                "forall" => Some(Quantifier::Forall),
                "qbf" => continue,
                "clause" => None,
                other => return Err(bad(format!("line {n}: unrecognized keyword `{other}`"))),
            };
            match q {
                Some(q) => {
                    for v in &w[1..] {
                        if vars.iter().any(|x| x.1 == *v) {
                            return Err(bad(format!("line {n}: variable `{v}` declared twice")));
                        }
                        vars.push((q, v.to_string()));
                    }
                }
                None => {
                    let mut c = Vec::new();
                    for lit in &w[1..] {
                        let (positive, name) = match lit.strip_prefix('-') {
                            Some(rest) => (false, rest),
                            None => (true, *lit),
                        };
                        let var = vars
                            .iter()
                            .position(|x| x.1 == name)
                            .ok_or_else(|| bad(format!("line {n}: undeclared variable `{name}`")))?;
                        c.push(Literal { var, positive });
                    }
                    clauses.push(c);
                }
            }
        }
        let q = Qbf { vars, clauses };
        q.validate()?;
        Ok(q)
    }
}

impl fmt::Display for Qbf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (q, v) in &self.vars {
            let kw = match q {
                Quantifier::Exists => "exists",
                Quantifier::Forall => "forall",
            };
            writeln!(f, "{kw} {v}")?;
        }
        for c in &self.clauses {
            write!(f, "clause")?;
            for l in c {
                write!(f, " {}{}", if l.positive { "" } else { "-" }, self.vars[l.var].1)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Names and targets for an arena where each env player is a single target set.
struct TargetBook {
    names: Vec<String>,
    sets: Vec<Vec<VertexId>>,
}

impl TargetBook {
    fn player(&mut self, name: String) -> PlayerId {
        self.names.push(name);
        self.sets.push(Vec::new());
        self.sets.len() - 1
    }
}

/// Literal vertex pairs `(positive, negative)` for `vars` along a chain
/// starting at `start`; returns them and the final junction.
fn valuation_chain(a: &mut WeightedArena, tag: &str, vars: &[String], start: VertexId, owners: &[PlayerId]) -> (Vec<(VertexId, VertexId)>, VertexId) {
    let z = vec![0; a.players()];
    let mut cur = start;
    let mut lits = Vec::new();
    for (k, v) in vars.iter().enumerate() {
        let pos = a.add_vertex(format!("{tag}:{v}"), 1);
        let neg = a.add_vertex(format!("{tag}:-{v}"), 1);
        let next = if k + 1 == vars.len() {
            a.add_vertex(format!("{tag}:end"), 1)
        } else {
            a.add_vertex(format!("{tag}:{}", k + 2), owners[k + 1])
        };
        a.add_edge(cur, pos, &z);
        a.add_edge(cur, neg, &z);
        a.add_edge(pos, next, &z);
        a.add_edge(neg, next, &z);
        lits.push((pos, neg));
        cur = next;
    }
    (lits, cur)
}

/// A generated qualitative game together with the meaning of each
/// environment player's target.
#[derive(Clone, Debug)]
pub struct LabeledGame {
    pub game: ReachabilityGame,
    /// `labels[i]` names player i's target (entry 0 is player 0)
    pub labels: Vec<String>,
}

/// Player 1 alone moves; NCPV with threshold 0 fails iff some valuation of
/// the existential block falsifies the formula for every universal valuation.
/// Each target of the single moving player becomes its own environment player.
pub fn gen_qbf_ncpv(phi: &Qbf) -> Result<LabeledGame> {
    phi.validate()?;
    let nx = phi.split_sigma2()?;
    let x: Vec<String> = phi.vars[..nx].iter().map(|v| v.1.clone()).collect();
    let all: Vec<String> = phi.vars.iter().map(|v| v.1.clone()).collect();
    let players = 2 + 2 * nx + phi.clauses.len();
    let mut a = WeightedArena::new(players);
    let z = vec![0; players];
    let v0 = a.add_vertex("v0", 1);
    let v1 = a.add_vertex("v1", 1);
    let v2 = a.add_vertex("v2", 1);
    a.add_edge(v0, v1, &z);
    a.add_edge(v0, v2, &z);
    let ones = vec![1; all.len()];
    let (lits1, end1) = valuation_chain(&mut a, "a1", &x, v1, &ones);
    let (lits2, end2) = valuation_chain(&mut a, "a2", &all, v2, &ones);
    a.add_edge(end1, end1, &z);
    a.add_edge(end2, end2, &z);

    let mut book = TargetBook { names: vec!["reach v2".into()], sets: vec![vec![v2]] };
    let p = book.player("reach v2".into());
    book.sets[p].push(v2);
    for (k, v) in x.iter().enumerate() {
        let p = book.player(v.clone());
        book.sets[p].extend([lits1[k].0, lits2[k].0]);
        let p = book.player(format!("-{v}"));
        book.sets[p].extend([lits1[k].1, lits2[k].1]);
    }
    for (k, c) in phi.clauses.iter().enumerate() {
        let p = book.player(format!("C{}", k + 1));
        book.sets[p].push(v1);
        for l in c {
            let (pos, neg) = lits2[l.var];
            book.sets[p].push(if l.positive { pos } else { neg });
        }
    }
    Ok(LabeledGame {
        game: ReachabilityGame::new(a, book.sets, v0),
        labels: book.names,
    })
}

/// CPS with threshold 0 holds iff the existential player (player 0 at the
/// existential quantifier vertices) can falsify the formula.
pub fn gen_coqbf_cps(phi: &Qbf) -> Result<LabeledGame> {
    phi.validate()?;
    let players = 2 + phi.clauses.len();
    let mut a = WeightedArena::new(players);
    let z = vec![0; players];
    let owners: Vec<PlayerId> = phi
        .vars
        .iter()
        .map(|v| if v.0 == Quantifier::Exists { 0 } else { 1 })
        .collect();
    let names: Vec<String> = phi.vars.iter().map(|v| v.1.clone()).collect();
    let v0 = a.add_vertex("v0", 1);
    let v1 = a.add_vertex("v1", 1);
    a.add_edge(v0, v1, &z);
    a.add_edge(v1, v1, &z);
    let q1 = a.add_vertex("Q1", owners.first().copied().unwrap_or(1));
    a.add_edge(v0, q1, &z);
    let (lits, end) = if names.is_empty() {
        (Vec::new(), q1)
    } else {
        valuation_chain(&mut a, "q", &names, q1, &owners)
    };
    a.add_edge(end, end, &z);
    let mut book = TargetBook { names: vec!["reach v1".into()], sets: vec![vec![v1]] };
    let p = book.player("reach Q1".into());
    book.sets[p].push(q1);
    for (k, c) in phi.clauses.iter().enumerate() {
        let p = book.player(format!("C{}", k + 1));
        book.sets[p].push(v1);
        for l in c {
            let (pos, neg) = lits[l.var];
            book.sets[p].push(if l.positive { pos } else { neg });
        }
    }
    Ok(LabeledGame {
        game: ReachabilityGame::new(a, book.sets, v0),
        labels: book.names,
    })
}

/// Vertex names of `game` keyed by name, for tests and reports.
pub fn vertex_index(game: &ReachabilityGame) -> BTreeMap<String, VertexId> {
    let arena = game.arena();
    arena.vertices().map(|v| (arena.name(v).to_string(), v)).collect()
}
