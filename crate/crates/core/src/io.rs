//! Game, machine and certificate documents.
//!
//! The text format is line oriented. `#` starts a comment.
//!
//! ```text
//! reachgames-game 1
//! players 2
//! vertex v0 1
//! vertex v1 0
//! edge v0 v0 1 0
//! edge v0 v1 1 0
//! edge v1 v1 1 0
//! target 0 v1
//! target 1 v1
//! initial v0
//! problem ncns-bounded 3
//! bounds 0 4
//! ```
//!
//! ```text
//! reachgames-machine 1
//! states m0 m1
//! initial m0
//! update m0 * -> m0        # every vertex not listed explicitly
//! update m0 v3 -> m0 m1
//! move m0 v1 -> v1 v3
//! ```
//!
//! Both document kinds also have a JSON form carrying the same fields; the
//! parsers accept either.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arena::{validate_game, Lasso, ReachabilityGame, VertexId, WeightedArena};
use crate::cost::CostVector;
use crate::mealy::{validate_machine, MealyMachine};

pub const SCHEMA_VERSION: u32 = 1;
const GAME_MAGIC: &str = "reachgames-game";
const MACHINE_MAGIC: &str = "reachgames-machine";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    /// 1-based; 0 when the problem concerns the whole document
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            f.write_str(&self.message)
        } else {
            write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub diagnostics: Vec<Diagnostic>,
}

impl ParseError {
    fn whole(messages: Vec<String>) -> Self {
        ParseError {
            diagnostics: messages
                .into_iter()
                .map(|message| Diagnostic { line: 0, column: 0, message })
                .collect(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, d) in self.diagnostics.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}`, expected text or json")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub name: String,
    pub owner: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub from: String,
    pub to: String,
    pub weights: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemDoc {
    pub name: String,
    pub threshold: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub machine: Option<String>,
    /// satisficing bounds, one per player, for `ncns-bounded`
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bounds: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameDocument {
    pub schema: u32,
    pub players: usize,
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
    /// `targets[i]` lists player i's target vertices
    pub targets: Vec<Vec<String>>,
    pub initial: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub problem: Option<ProblemDoc>,
}

/// Whitespace-separated words with their 1-based columns.
fn words(line: &str) -> Vec<(usize, &str)> {
    let code = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in code.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &code[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &code[s..]));
    }
    out.into_iter()
        .map(|(b, w)| (code[..b].chars().count() + 1, w))
        .collect()
}

struct Diags(Vec<Diagnostic>);

impl Diags {
    fn at(&mut self, line: usize, column: usize, message: impl Into<String>) {
        self.0.push(Diagnostic { line, column, message: message.into() });
    }

    fn number<T: std::str::FromStr>(&mut self, line: usize, (col, w): (usize, &str), what: &str) -> Option<T> {
        match w.parse() {
            Ok(x) => Some(x),
            Err(_) => {
                self.at(line, col, format!("expected {what}, found `{w}`"));
                None
            }
        }
    }

    fn finish<T>(self, value: T) -> Result<T, ParseError> {
        if self.0.is_empty() {
            Ok(value)
        } else {
            Err(ParseError { diagnostics: self.0 })
        }
    }
}

fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

fn json_error(e: serde_json::Error) -> ParseError {
    ParseError {
        diagnostics: vec![Diagnostic { line: e.line(), column: e.column(), message: e.to_string() }],
    }
}

/// Checks the magic line; returns the remaining meaningful lines.
fn header<'a>(text: &'a str, magic: &str, d: &mut Diags) -> Vec<(usize, Vec<(usize, &'a str)>)> {
    let mut body: Vec<(usize, Vec<(usize, &str)>)> = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, words(l)))
        .filter(|(_, w)| !w.is_empty())
        .collect();
    if body.is_empty() {
        d.at(1, 1, format!("empty document, expected `{magic} {SCHEMA_VERSION}`"));
        return body;
    }
    let (n, first) = body.remove(0);
    match first.as_slice() {
        [(_, m), (c, v)] if *m == magic => {
            if let Some(ver) = d.number::<u32>(n, (*c, v), "a schema version") {
                if ver != SCHEMA_VERSION {
                    d.at(n, *c, format!("unsupported schema version {ver}, expected {SCHEMA_VERSION}"));
                }
            }
        }
        _ => d.at(n, first[0].0, format!("expected `{magic} {SCHEMA_VERSION}` header")),
    }
    body
}

impl GameDocument {
    pub fn from_game(game: &ReachabilityGame) -> Self {
        let a = game.arena();
        GameDocument {
            schema: SCHEMA_VERSION,
            players: game.players(),
            vertices: a
                .vertices()
                .map(|v| VertexDoc { name: a.name(v).to_string(), owner: a.owner(v) })
                .collect(),
            edges: a
                .edges()
                .iter()
                .map(|e| EdgeDoc {
                    from: a.name(e.from).to_string(),
                    to: a.name(e.to).to_string(),
                    weights: e.weights.clone(),
                })
                .collect(),
            targets: game
                .targets()
                .iter()
                .map(|t| t.iter().map(|&v| a.name(v).to_string()).collect())
                .collect(),
            initial: a.name(game.initial()).to_string(),
            problem: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        if looks_like_json(text) {
            let doc: GameDocument = serde_json::from_str(text).map_err(json_error)?;
            if doc.schema != SCHEMA_VERSION {
                return Err(ParseError::whole(vec![format!(
                    "unsupported schema version {}, expected {SCHEMA_VERSION}",
                    doc.schema
                )]));
            }
            return Ok(doc);
        }
        let mut d = Diags(Vec::new());
        let body = header(text, GAME_MAGIC, &mut d);
        let mut doc = GameDocument {
            schema: SCHEMA_VERSION,
            players: 0,
            vertices: Vec::new(),
            edges: Vec::new(),
            targets: Vec::new(),
            initial: String::new(),
            problem: None,
        };
        let mut seen_players = false;
        let mut seen_initial = false;
        let mut bounds = Vec::new();
        for (n, w) in body {
            let (kc, kw) = w[0];
            let args = &w[1..];
            match kw {
                "players" if args.len() == 1 => {
                    if let Some(p) = d.number(n, args[0], "a player count") {
                        doc.players = p;
                        doc.targets.resize(p, Vec::new());
                        seen_players = true;
                    }
                }
                "vertex" if args.len() == 2 => {
                    if let Some(owner) = d.number(n, args[1], "an owner") {
                        doc.vertices.push(VertexDoc { name: args[0].1.to_string(), owner });
                    }
                }
                "edge" if args.len() >= 2 => {
                    let weights: Vec<Option<u64>> =
                        args[2..].iter().map(|&a| d.number(n, a, "a natural weight")).collect();
                    if weights.len() != doc.players {
                        d.at(
                            n,
                            kc,
                            format!(
                                "edge {} -> {} carries {} weights, expected {}",
                                args[0].1,
                                args[1].1,
                                weights.len(),
                                doc.players
                            ),
                        );
                    }
                    doc.edges.push(EdgeDoc {
                        from: args[0].1.to_string(),
                        to: args[1].1.to_string(),
                        weights: weights.into_iter().map(|w| w.unwrap_or(0)).collect(),
                    });
                }
                "target" if !args.is_empty() => {
                    if let Some(i) = d.number::<usize>(n, args[0], "a player") {
                        if i >= doc.players {
                            d.at(n, args[0].0, format!("target of undeclared player {i}"));
                        } else {
                            doc.targets[i].extend(args[1..].iter().map(|a| a.1.to_string()));
                        }
                    }
                }
                "initial" if args.len() == 1 => {
                    doc.initial = args[0].1.to_string();
                    seen_initial = true;
                }
                "problem" if (2..=3).contains(&args.len()) => {
                    if let Some(threshold) = d.number(n, args[1], "a threshold") {
                        doc.problem = Some(ProblemDoc {
                            name: args[0].1.to_string(),
                            threshold,
                            machine: args.get(2).map(|a| a.1.to_string()),
                            bounds: std::mem::take(&mut bounds),
                        });
                    }
                }
                "bounds" => {
                    let parsed: Vec<u64> =
                        args.iter().filter_map(|&a| d.number(n, a, "a natural bound")).collect();
                    match &mut doc.problem {
                        Some(p) => p.bounds = parsed,
                        None => bounds = parsed,
                    }
                }
                "players" | "vertex" | "edge" | "target" | "initial" | "problem" => {
                    d.at(n, kc, format!("wrong number of arguments for `{kw}`"))
                }
                _ => d.at(n, kc, format!("unknown keyword `{kw}`")),
            }
        }
        if !seen_players {
            d.at(0, 0, "missing `players` line");
        }
        if !seen_initial {
            d.at(0, 0, "missing `initial` line");
        }
        d.finish(doc)
    }

    pub fn to_game(&self) -> Result<ReachabilityGame, ParseError> {
        let mut errs = Vec::new();
        let mut a = WeightedArena::new(self.players);
        let mut index: HashMap<&str, VertexId> = HashMap::new();
        for v in &self.vertices {
            if index.insert(&v.name, a.add_vertex(v.name.clone(), v.owner)).is_some() {
                errs.push(format!("vertex `{}` declared twice", v.name));
            }
        }
        let look = |name: &str, errs: &mut Vec<String>| -> Option<VertexId> {
            let r = index.get(name).copied();
            if r.is_none() {
                errs.push(format!("undeclared vertex `{name}`"));
            }
            r
        };
        for e in &self.edges {
            if let (Some(x), Some(y)) = (look(&e.from, &mut errs), look(&e.to, &mut errs)) {
                a.add_edge(x, y, &e.weights);
            }
        }
        let targets: Vec<Vec<VertexId>> = self
            .targets
            .iter()
            .map(|t| t.iter().filter_map(|n| look(n, &mut errs)).collect())
            .collect();
        if self.targets.len() > self.players {
            errs.push(format!("{} target sets for {} players", self.targets.len(), self.players));
        }
        let initial = look(&self.initial, &mut errs).unwrap_or(0);
        if !errs.is_empty() {
            return Err(ParseError::whole(errs));
        }
        let g = ReachabilityGame::new(a, targets, initial);
        let problems = validate_game(&g);
        if problems.is_empty() {
            Ok(g)
        } else {
            Err(ParseError::whole(problems))
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{GAME_MAGIC} {}\nplayers {}\n", self.schema, self.players);
        for v in &self.vertices {
            s += &format!("vertex {} {}\n", v.name, v.owner);
        }
        for e in &self.edges {
            let w: Vec<String> = e.weights.iter().map(|x| x.to_string()).collect();
            s += &format!("edge {} {} {}\n", e.from, e.to, w.join(" "));
        }
        for (i, t) in self.targets.iter().enumerate() {
            if !t.is_empty() {
                s += &format!("target {i} {}\n", t.join(" "));
            }
        }
        s += &format!("initial {}\n", self.initial);
        if let Some(p) = &self.problem {
            s += &format!("problem {} {}", p.name, p.threshold);
            if let Some(m) = &p.machine {
                s += &format!(" {m}");
            }
            s += "\n";
            if !p.bounds.is_empty() {
                let b: Vec<String> = p.bounds.iter().map(|x| x.to_string()).collect();
                s += &format!("bounds {}\n", b.join(" "));
            }
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => serde_json::to_string_pretty(self).expect("serializable") + "\n",
        }
    }
}

/// Parses and validates a game in either format.
pub fn parse_game(text: &str) -> Result<ReachabilityGame, ParseError> {
    GameDocument::parse(text)?.to_game()
}

pub fn serialize_game(game: &ReachabilityGame, format: Format) -> String {
    GameDocument::from_game(game).render(format)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionDoc {
    pub state: String,
    /// vertex name, or `*` for every vertex without its own entry
    pub vertex: String,
    pub to: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineDocument {
    pub schema: u32,
    pub states: Vec<String>,
    pub initial: String,
    pub update: Vec<TransitionDoc>,
    #[serde(rename = "move")]
    pub moves: Vec<TransitionDoc>,
}

impl MachineDocument {
    pub fn from_machine(machine: &MealyMachine, game: &ReachabilityGame) -> Self {
        let a = game.arena();
        let mut update = Vec::new();
        let mut moves = Vec::new();
        for m in 0..machine.state_count() {
            let state = machine.name(m).to_string();
            for v in a.vertices() {
                let vertex = a.name(v).to_string();
                update.push(TransitionDoc {
                    state: state.clone(),
                    vertex: vertex.clone(),
                    to: machine.update(m, v).iter().map(|&s| machine.name(s).to_string()).collect(),
                });
                let mv = machine.next_move(m, v);
                if !mv.is_empty() {
                    moves.push(TransitionDoc {
                        state: state.clone(),
                        vertex,
                        to: mv.iter().map(|&w| a.name(w).to_string()).collect(),
                    });
                }
            }
        }
        MachineDocument {
            schema: SCHEMA_VERSION,
            states: machine.names().to_vec(),
            initial: machine.name(machine.initial()).to_string(),
            update,
            moves,
        }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        if looks_like_json(text) {
            let doc: MachineDocument = serde_json::from_str(text).map_err(json_error)?;
            if doc.schema != SCHEMA_VERSION {
                return Err(ParseError::whole(vec![format!(
                    "unsupported schema version {}, expected {SCHEMA_VERSION}",
                    doc.schema
                )]));
            }
            return Ok(doc);
        }
        let mut d = Diags(Vec::new());
        let body = header(text, MACHINE_MAGIC, &mut d);
        let mut doc = MachineDocument {
            schema: SCHEMA_VERSION,
            states: Vec::new(),
            initial: String::new(),
            update: Vec::new(),
            moves: Vec::new(),
        };
        for (n, w) in body {
            let (kc, kw) = w[0];
            let args: Vec<&str> = w[1..].iter().map(|a| a.1).collect();
            match kw {
                "states" => doc.states.extend(args.iter().map(|s| s.to_string())),
                "initial" if args.len() == 1 => doc.initial = args[0].to_string(),
                "update" | "move" => {
                    if args.len() < 4 || args[2] != "->" {
                        d.at(n, kc, format!("expected `{kw} STATE VERTEX -> TARGET...`"));
                        continue;
                    }
                    let t = TransitionDoc {
                        state: args[0].to_string(),
                        vertex: args[1].to_string(),
                        to: args[3..].iter().map(|s| s.to_string()).collect(),
                    };
                    if kw == "update" {
                        doc.update.push(t);
                    } else {
                        doc.moves.push(t);
                    }
                }
                "initial" => d.at(n, kc, "wrong number of arguments for `initial`"),
                _ => d.at(n, kc, format!("unknown keyword `{kw}`")),
            }
        }
        if doc.initial.is_empty() {
            d.at(0, 0, "missing `initial` line");
        }
        d.finish(doc)
    }

    pub fn to_machine(&self, game: &ReachabilityGame) -> Result<MealyMachine, ParseError> {
        let a = game.arena();
        let n = a.vertex_count();
        let k = self.states.len();
        let mut errs = Vec::new();
        let state_ix: HashMap<&str, usize> =
            self.states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let state = |s: &str, errs: &mut Vec<String>| {
            let r = state_ix.get(s).copied();
            if r.is_none() {
                errs.push(format!("undeclared state `{s}`"));
            }
            r
        };
        let vertex = |v: &str, errs: &mut Vec<String>| {
            let r = a.vertex_by_name(v);
            if r.is_none() {
                errs.push(format!("unknown vertex `{v}`"));
            }
            r
        };
        // explicit entries override wildcards
        let fill = |entries: &[TransitionDoc], as_state: bool, errs: &mut Vec<String>| {
            let mut table: Vec<Vec<Option<Vec<usize>>>> = vec![vec![None; n]; k];
            for pass in [true, false] {
                for e in entries.iter().filter(|e| (e.vertex == "*") == pass) {
                    let Some(m) = state(&e.state, errs) else { continue };
                    let to: Vec<usize> = e
                        .to
                        .iter()
                        .filter_map(|t| if as_state { state(t, errs) } else { vertex(t, errs) })
                        .collect();
                    if pass {
                        for v in 0..n {
                            if !as_state && a.owner(v) != 0 {
                                continue;
                            }
                            table[m][v] = Some(to.clone());
                        }
                    } else if let Some(v) = vertex(&e.vertex, errs) {
                        table[m][v] = Some(to);
                    }
                }
            }
            table
                .into_iter()
                .map(|row| row.into_iter().map(|c| c.unwrap_or_default()).collect())
                .collect::<Vec<Vec<Vec<usize>>>>()
        };
        let update = fill(&self.update, true, &mut errs);
        let next_move = fill(&self.moves, false, &mut errs);
        let initial = state(&self.initial, &mut errs).unwrap_or(0);
        if !errs.is_empty() {
            return Err(ParseError::whole(errs));
        }
        let m = MealyMachine::from_parts(self.states.clone(), initial, update, next_move);
        let problems = validate_machine(game, &m);
        if problems.is_empty() {
            Ok(m)
        } else {
            Err(ParseError::whole(problems))
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{MACHINE_MAGIC} {}\nstates {}\ninitial {}\n",
            self.schema,
            self.states.join(" "),
            self.initial
        );
        for t in &self.update {
            s += &format!("update {} {} -> {}\n", t.state, t.vertex, t.to.join(" "));
        }
        for t in &self.moves {
            s += &format!("move {} {} -> {}\n", t.state, t.vertex, t.to.join(" "));
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => serde_json::to_string_pretty(self).expect("serializable") + "\n",
        }
    }
}

pub fn parse_machine(text: &str, game: &ReachabilityGame) -> Result<MealyMachine, ParseError> {
    MachineDocument::parse(text)?.to_machine(game)
}

pub fn serialize_machine(machine: &MealyMachine, game: &ReachabilityGame, format: Format) -> String {
    MachineDocument::from_machine(machine, game).render(format)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LassoDoc {
    pub prefix: Vec<String>,
    pub cycle: Vec<String>,
}

impl LassoDoc {
    pub fn from_lasso(pi: &Lasso, arena: &WeightedArena) -> Self {
        let names = |s: &[VertexId]| s.iter().map(|&v| arena.name(v).to_string()).collect();
        LassoDoc { prefix: names(pi.prefix()), cycle: names(pi.cycle()) }
    }

    pub fn to_lasso(&self, arena: &WeightedArena) -> Result<Lasso, String> {
        let ids = |s: &[String]| -> Result<Vec<VertexId>, String> {
            s.iter()
                .map(|n| arena.vertex_by_name(n).ok_or_else(|| format!("unknown vertex `{n}`")))
                .collect()
        };
        Ok(Lasso::raw(ids(&self.prefix)?, ids(&self.cycle)?))
    }
}

/// Answer of a solver together with the play that justifies it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub schema: u32,
    pub problem: String,
    pub threshold: u64,
    /// `YES` or `NO`
    pub verdict: String,
    /// play in the original game
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lasso: Option<LassoDoc>,
    /// the same play in the product with the machine, when one was used
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product_lasso: Option<LassoDoc>,
    /// cost vector of `lasso`, player 0 first
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub costs: Option<CostVector>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, String>,
}

impl CertificateDoc {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let doc: CertificateDoc = serde_json::from_str(text).map_err(json_error)?;
        if doc.schema != SCHEMA_VERSION {
            return Err(ParseError::whole(vec![format!(
                "unsupported schema version {}, expected {SCHEMA_VERSION}",
                doc.schema
            )]));
        }
        Ok(doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const WAITING: &str = "reachgames-game 1
players 2
vertex v0 1
vertex v1 0   # sink
edge v0 v0 1 0
edge v0 v1 1 0
edge v1 v1 1 0
target 0 v1
target 1 v1
initial v0
";

    #[test]
    fn text_round_trip() {
        let g = parse_game(WAITING).unwrap();
        assert_eq!(g.vertex_count(), 2);
        let again = parse_game(&serialize_game(&g, Format::Text)).unwrap();
        assert_eq!(g, again);
        let json = parse_game(&serialize_game(&g, Format::Json)).unwrap();
        assert_eq!(g, json);
    }

    #[test]
    fn missing_weight_is_located() {
        let text = WAITING.replace("edge v0 v1 1 0", "edge v0 v1 1");
        let err = parse_game(&text).unwrap_err();
        let d = &err.diagnostics[0];
        assert_eq!((d.line, d.column), (6, 1));
        assert!(d.message.contains("v0 -> v1"), "{d}");
    }

    #[test]
    fn bad_number_column() {
        let text = WAITING.replace("edge v0 v0 1 0", "edge v0 v0 1 x");
        let err = parse_game(&text).unwrap_err();
        assert_eq!((err.diagnostics[0].line, err.diagnostics[0].column), (5, 14));
    }

    #[test]
    fn wildcard_updates() {
        let g = parse_game(WAITING).unwrap();
        let m = parse_machine(
            "reachgames-machine 1\nstates m0\ninitial m0\nupdate m0 * -> m0\nmove m0 * -> v1\n",
            &g,
        )
        .unwrap();
        assert!(m.is_deterministic(g.arena()));
        let text = serialize_machine(&m, &g, Format::Text);
        assert_eq!(parse_machine(&text, &g).unwrap(), m);
    }

    #[test]
    fn machine_rejects_non_successor() {
        let g = parse_game(WAITING).unwrap();
        let err = parse_machine(
            "reachgames-machine 1\nstates m0\ninitial m0\nupdate m0 * -> m0\nmove m0 v1 -> v0\n",
            &g,
        )
        .unwrap_err();
        assert!(err.to_string().contains("not a successor"), "{err}");
    }
}
