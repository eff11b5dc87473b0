//! Acceptance criteria. Each criterion prints one PASS/FAIL line; run with
//! `cargo test --test acceptance -- --nocapture` to see them.
//!
//! The test fails on any unexpected item failure. Items listed in
//! `KNOWN_DEVIATIONS` are reported as FAIL but do not fail the test.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::Instant;

use rand::Rng;

use common::{random_choice, random_game, random_lasso, random_machine, rng, Shape};
use reachgames::fixtures::*;
use reachgames::mealy::{full_machine, memoryless_machine, product_game};
use reachgames::nash::{compute_val_star, solve_cns, verify_ncnv, verify_uncnv, visit_val_consistent};
use reachgames::ncns::solve_ncns_one_env;
use reachgames::oracle::*;
use reachgames::pareto::{solve_cps, verify_ncpv, verify_uncpv};
use reachgames::reductions::*;
use reachgames::zerosum::{
    min_cost_reach_values, BoundedObjectiveCombo, SafetyComboSolver, SafetyTerm, ZeroSumView,
};
use reachgames::{
    cost_of_lasso, normalize_lasso, visit_set, Cost, CostVector, Error, Lasso, ReachabilityGame,
};

/// The Nash example claims the detour strategy is safe at threshold 3, but a
/// memory-aware environment makes v0 v1 v2 (v5)^w an equilibrium.
const KNOWN_DEVIATIONS: &[&str] = &["NCNV(detour, 3) = YES"];

#[derive(Default)]
struct Criterion {
    items: Vec<(String, bool)>,
    info: Vec<String>,
}

impl Criterion {
    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.items.push((name.into(), ok));
    }

    fn note(&mut self, s: impl Into<String>) {
        self.info.push(s.into());
    }

    /// Prints the line and returns the unexpected failures.
    fn report(&self, n: usize, title: &str) -> Vec<String> {
        let failed: Vec<&String> = self.items.iter().filter(|(_, ok)| !ok).map(|(s, _)| s).collect();
        let verdict = if failed.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!("criterion {n} ({title}): {verdict}: {} items", self.items.len());
        if !failed.is_empty() {
            let names: Vec<&str> = failed.iter().map(|s| s.as_str()).collect();
            line += &format!(", failed [{}]", names.join("; "));
        }
        for i in &self.info {
            line += &format!("; {i}");
        }
        println!("{line}");
        failed
            .into_iter()
            .filter(|s| !KNOWN_DEVIATIONS.contains(&s.as_str()))
            .map(|s| format!("criterion {n}: {s}"))
            .collect()
    }
}

fn shown(g: &ReachabilityGame, pi: &Lasso) -> String {
    pi.display(g.arena()).to_string()
}

fn figure_one() -> Criterion {
    let mut cr = Criterion::default();
    let start = Instant::now();
    let g = three_player_game();
    let detour = three_player_strategy(&g, false);
    let direct = three_player_strategy(&g, true);
    let pd = product_game(&g, &detour).unwrap();
    let pdir = product_game(&g, &direct).unwrap();

    let (ok3, cex3) = verify_ncnv(&pd, 3).unwrap();
    cr.check("NCNV(detour, 3) = YES", ok3);
    if let Some(pi) = cex3 {
        cr.note(format!("NCNV(detour, 3) counterexample {}", shown(&g, &pd.project(&pi))));
    }
    let (ok2, cex2) = verify_ncnv(&pd, 2).unwrap();
    let pi3 = cex2.map(|pi| pd.project(&pi));
    cr.check("NCNV(detour, 2) = NO", !ok2);
    cr.check(
        "certificate v0 v1 v2 (v4)^w",
        pi3.as_ref().map(|pi| shown(&g, pi)).as_deref() == Some("v0 v1 v2 (v4)^w"),
    );
    cr.check(
        "certificate cost_0 = 3",
        pi3.map(|pi| cost_of_lasso(&g, &pi).unwrap()[0]) == Some(Cost::Fin(3)),
    );
    cr.check("NCNV(direct, 2) = YES", verify_ncnv(&pdir, 2).unwrap().0);
    cr.check("CNS(3) = YES", solve_cns(&g, 3).unwrap().0);
    cr.check("CPS(2) = YES", solve_cps(&g, 2).unwrap().0);
    for c in 0..=10 {
        cr.check(format!("NCPV(detour, {c}) = NO"), !verify_ncpv(&pd, c).unwrap().0);
    }
    cr.check("NCPV(direct, 2) = YES", verify_ncpv(&pdir, 2).unwrap().0);
    let choice = BTreeMap::from([(1, 2), (3, 3), (4, 4), (5, 5)]);
    let front = oracle_pareto_front(&g, Some(&choice), &OracleBudget::default()).unwrap();
    let want: BTreeSet<CostVector> = [
        CostVector(vec![Cost::Fin(2), Cost::Top]),
        CostVector(vec![Cost::Fin(3), Cost::Fin(1)]),
    ]
    .into();
    cr.check("Pareto front of detour = {(2, inf), (3, 1)}", front == want);
    let secs = start.elapsed().as_secs_f64();
    cr.check("under 1 s", secs < 1.0);
    cr.note(format!("{secs:.3} s"));
    cr
}

fn figure_two() -> Criterion {
    let mut cr = Criterion::default();
    let g = waiting_game();
    let m = memoryless_machine(&g, &BTreeMap::from([(1, 1)])).unwrap();
    let p = product_game(&g, &m).unwrap();
    for c in [1, 3, 7, 15] {
        let start = Instant::now();
        let (ok, cex) = verify_ncpv(&p, c).unwrap();
        let secs = start.elapsed().as_secs_f64();
        cr.check(format!("NCPV(G2, {c}) = NO"), !ok);
        let pi = cex.map(|pi| p.project(&pi));
        let cost0 = pi.as_ref().map(|pi| cost_of_lasso(&g, pi).unwrap()[0]);
        cr.check(format!("c = {c}: cost_0 = {}", c + 1), cost0 == Some(Cost::Fin(c + 1)));
        let len = pi.as_ref().map_or(0, |pi| pi.len());
        cr.check(format!("c = {c}: length {len} > {c}"), len as u64 > c);
        cr.check(format!("c = {c}: under 1 s"), secs < 1.0);
    }
    cr
}

#[derive(Default)]
struct Tally {
    agree: usize,
    inconclusive: usize,
    budget: usize,
    disagreements: Vec<String>,
}

impl Tally {
    fn compare(&mut self, what: &str, solver: bool, oracle: reachgames::Result<Verdict>) {
        match oracle {
            Ok(Verdict::Inconclusive(_)) => self.inconclusive += 1,
            Err(Error::Budget(_)) => self.budget += 1,
            Err(e) => self.disagreements.push(format!("{what}: oracle error {e}")),
            Ok(v) if v.as_bool() == Some(solver) => self.agree += 1,
            Ok(v) => self.disagreements.push(format!("{what}: solver {solver}, oracle {v}")),
        }
    }
}

fn oracle_equivalence() -> Criterion {
    let mut cr = Criterion::default();
    let start = Instant::now();
    let budget = OracleBudget::default();
    let mut t = Tally::default();
    let mut r = rng(0x5eed_0003);
    let games = 200;
    for k in 0..games {
        let env = 1 + k % 2;
        let shape = Shape { max_vertices: 5, env, max_weight: 2, max_out: 2 };
        let g = random_game(&mut r, shape);
        let c: u64 = r.gen_range(0..=4);
        let tag = |p: &str| format!("game {k} {p}({c})");
        let inst = |m| OracleInstance { game: &g, threshold: c, machine: m, env_bounds: None };

        t.compare(&tag("CNS"), solve_cns(&g, c).unwrap().0, oracle_decide(Problem::Cns, &inst(None), &budget));
        t.compare(&tag("CPS"), solve_cps(&g, c).unwrap().0, oracle_decide(Problem::Cps, &inst(None), &budget));

        let det = memoryless_machine(&g, &random_choice(&mut r, &g)).unwrap();
        let pd = product_game(&g, &det).unwrap();
        t.compare(&tag("NCNV"), verify_ncnv(&pd, c).unwrap().0, oracle_decide(Problem::Ncnv, &inst(Some(&det)), &budget));
        t.compare(&tag("NCPV"), verify_ncpv(&pd, c).unwrap().0, oracle_decide(Problem::Ncpv, &inst(Some(&det)), &budget));

        let m = random_machine(&mut r, &g, 2);
        let pm = product_game(&g, &m).unwrap();
        t.compare(&tag("UNCNV"), verify_uncnv(&pm, c).unwrap().0, oracle_decide(Problem::Uncnv, &inst(Some(&m)), &budget));
        t.compare(&tag("UNCPV"), verify_uncpv(&pm, c).unwrap().0, oracle_decide(Problem::Uncpv, &inst(Some(&m)), &budget));

        if env == 1 {
            t.compare(
                &tag("NCNS"),
                solve_ncns_one_env(&g, c).unwrap().answer,
                oracle_decide(Problem::Ncns, &inst(None), &budget),
            );
        }
    }
    let secs = start.elapsed().as_secs_f64();
    for d in &t.disagreements {
        println!("  disagreement: {d}");
    }
    cr.check("100% agreement on conclusive instances", t.disagreements.is_empty());
    cr.check("within 10 min", secs < 600.0);
    cr.note(format!(
        "{games} games, {} agreeing, {} disagreeing, {} inconclusive, {} over budget, {secs:.1} s",
        t.agree,
        t.disagreements.len(),
        t.inconclusive,
        t.budget
    ));
    cr
}

fn zero_sum_values() -> Criterion {
    let mut cr = Criterion::default();
    let budget = OracleBudget::default();
    let mut r = rng(0x5eed_0004);
    let views = 150;
    let mut mismatches = 0;
    let mut out_of_range = 0;
    for _ in 0..views {
        let env = r.gen_range(1..=2);
        let g = random_game(&mut r, Shape { max_vertices: 5, env, max_weight: 3, max_out: 3 });
        let a = g.arena();
        let who = r.gen_range(0..=env);
        let target: Vec<bool> = a.vertices().map(|_| r.gen_bool(0.3)).collect();
        let view = ZeroSumView::new(a, who);
        let fast = min_cost_reach_values(view, &target, who);
        let slow = oracle_zero_sum_value(view, &target, who, &budget).unwrap();
        if fast != slow {
            mismatches += 1;
        }
        let cap = (a.vertex_count() as u64) * a.max_weight();
        out_of_range += fast.iter().filter(|&&c| matches!(c, Cost::Fin(x) if x > cap)).count();
    }
    cr.check("values equal the oracle", mismatches == 0);
    cr.check("values within {0..|V|W, inf}", out_of_range == 0);
    cr.note(format!("{views} views, {mismatches} mismatches"));
    cr
}

/// Eve wins iff every term keeps cost_i ≥ d_i or some term has
/// cost_i ≥ d_i + 1; unvisited terms cost inf.
fn combo_wins(statuses: &[Option<u64>], combo: &BoundedObjectiveCombo) -> bool {
    let cost = |i: usize| statuses[i].map_or(Cost::Top, Cost::Fin);
    let n = combo.terms.len();
    (0..n).all(|i| cost(i) >= combo.strict_bound(i)) || (0..n).any(|i| combo.has_relaxed(i) && cost(i) >= combo.relaxed_bound(i))
}

/// Exact reference for the bounded-safety combination: the statuses of the
/// terms only move forward, so Eve wins iff she can make the play stay
/// forever among winning statuses, a Büchi game on (vertex, statuses).
fn combo_reference(view: ZeroSumView, combo: &BoundedObjectiveCombo, start: usize) -> bool {
    type State = (usize, Vec<u64>, Vec<Option<u64>>);
    let a = view.arena;
    let n = combo.terms.len();
    let cap = |i: usize| match combo.terms[i].bound {
        Cost::Fin(d) => d + 1,
        Cost::Top => 0,
    };
    let settle = |v: usize, acc: &[u64], st: &mut Vec<Option<u64>>| {
        for i in 0..n {
            if st[i].is_none() && combo.terms[i].target[v] {
                st[i] = Some(acc[i]);
            }
        }
    };
    let mut st0 = vec![None; n];
    settle(start, &vec![0; n], &mut st0);
    let init: State = (start, vec![0; n], st0);
    let mut index: HashMap<State, usize> = HashMap::from([(init.clone(), 0)]);
    let mut states = vec![init];
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut k = 0;
    while k < states.len() {
        let (v, acc, st) = states[k].clone();
        let mut out = Vec::new();
        for e in a.out_edges(v) {
            let acc2: Vec<u64> = (0..n)
                .map(|i| {
                    if st[i].is_some() {
                        0
                    } else {
                        (acc[i] + e.weights[combo.terms[i].weight_of]).min(cap(i))
                    }
                })
                .collect();
            let mut st2 = st.clone();
            settle(e.to, &acc2, &mut st2);
            let s2 = (e.to, acc2, st2);
            let id = *index.entry(s2.clone()).or_insert_with(|| {
                states.push(s2);
                states.len() - 1
            });
            out.push(id);
        }
        succ.push(out);
        k += 1;
    }
    let m = states.len();
    let eve: Vec<bool> = states.iter().map(|s| view.eve_owns(s.0)).collect();
    // a pending term costs inf so far, which is as good as exceeding its bound
    let good: Vec<bool> = states.iter().map(|(_, _, st)| combo_wins(st, combo)).collect();
    let attractor = |alive: &[bool], target: &[bool], for_eve: bool| -> Vec<bool> {
        let mut attr: Vec<bool> = (0..m).map(|x| alive[x] && target[x]).collect();
        loop {
            let mut changed = false;
            for x in 0..m {
                if !alive[x] || attr[x] {
                    continue;
                }
                let live = succ[x].iter().filter(|&&y| alive[y]);
                let mine = eve[x] == for_eve;
                let joins = if mine {
                    live.clone().any(|&y| attr[y])
                } else {
                    live.clone().all(|&y| attr[y])
                };
                if joins {
                    attr[x] = true;
                    changed = true;
                }
            }
            if !changed {
                return attr;
            }
        }
    };
    let mut alive = vec![true; m];
    loop {
        let reach = attractor(&alive, &good, true);
        let trap: Vec<bool> = (0..m).map(|x| alive[x] && !reach[x]).collect();
        if !trap.iter().any(|&b| b) {
            return alive[0];
        }
        let lost = attractor(&alive, &trap, false);
        for x in 0..m {
            if lost[x] {
                alive[x] = false;
            }
        }
    }
}

fn bounded_safety_combo() -> Criterion {
    let mut cr = Criterion::default();
    let mut r = rng(0x5eed_0005);
    let instances = 300;
    let mut mismatches = 0;
    let mut memo_mismatches = 0;
    let mut deepest = 0;
    for _ in 0..instances {
        let t = r.gen_range(1..=2);
        let g = random_game(&mut r, Shape { max_vertices: 4, env: t, max_weight: 2, max_out: 2 });
        let a = g.arena();
        let who = r.gen_range(0..=t);
        let combo = BoundedObjectiveCombo {
            terms: (0..t)
                .map(|i| SafetyTerm {
                    target: a.vertices().map(|_| r.gen_bool(0.35)).collect(),
                    weight_of: 1 + i,
                    bound: if r.gen_bool(0.2) { Cost::Top } else { Cost::Fin(r.gen_range(1..=3)) },
                })
                .collect(),
            strict_top: r.gen_bool(0.5),
        };
        let view = ZeroSumView::new(a, who);
        let mut solver = SafetyComboSolver::new(view, &combo);
        let got = solver.solve(0);
        deepest = deepest.max(solver.stats.max_depth);
        assert!(solver.stats.max_depth <= solver.depth_limit());
        if got != combo_reference(view, &combo, 0) {
            mismatches += 1;
        }
        if got != SafetyComboSolver::new(view, &combo).with_memo().solve(0) {
            memo_mismatches += 1;
        }
    }
    cr.check("solver equals reference", mismatches == 0);
    cr.check("memoization keeps verdicts", memo_mismatches == 0);
    cr.check("depth bound t|V| + |V| + 1 respected", true);
    cr.note(format!("{instances} instances, {mismatches} mismatches, deepest branch {deepest}"));
    cr
}

fn nash_characterization() -> Criterion {
    let mut cr = Criterion::default();
    let budget = OracleBudget { max_lasso_length: 7, ..OracleBudget::default() };
    let mut r = rng(0x5eed_0006);
    let games = 80;
    let mut mismatches = 0;
    let mut outcomes = 0;
    for _ in 0..games {
        let env = r.gen_range(1..=2);
        let g = random_game(&mut r, Shape { max_vertices: 5, env, max_weight: 2, max_out: 2 });
        let choice = random_choice(&mut r, &g);
        let fixed = fix_strategy(&g, &choice).unwrap();
        let table = compute_val_star(&fixed);
        let by_values: BTreeSet<Lasso> = enumerate_lassos(&fixed, budget.max_lasso_length)
            .into_iter()
            .filter(|pi| visit_val_consistent(&fixed, &table, pi, fixed.env_players()))
            .collect();
        let by_deviations = oracle_nash_outcomes(&g, Some(&choice), &budget).unwrap();
        outcomes += by_values.len();
        if by_values != by_deviations {
            mismatches += 1;
        }
    }
    cr.check("lasso sets coincide", mismatches == 0);
    cr.note(format!("{games} games, {outcomes} equilibrium outcomes, {mismatches} mismatches"));
    cr
}

fn splits(s: &[u64]) -> bool {
    let total: u64 = s.iter().sum();
    (0u32..1 << s.len()).any(|m| {
        let part: u64 = (0..s.len()).filter(|i| m >> i & 1 == 1).map(|i| s[i]).sum();
        2 * part == total
    })
}

fn countdown_wins(cg: &CountdownGame, s: usize, k: u64) -> bool {
    if k >= cg.threshold {
        return k == cg.threshold;
    }
    cg.durations(s)
        .into_iter()
        .any(|d| cg.successors(s, d).into_iter().all(|t| countdown_wins(cg, t, k + d)))
}

fn subset_sum_holds(psi: &SubsetSumGame, round: usize, acc: u64) -> bool {
    match psi.rounds.get(round) {
        None => acc == psi.target,
        Some(&[a, b, e, f]) => {
            [a, b].iter().all(|x| [e, f].iter().any(|y| subset_sum_holds(psi, round + 1, acc + x + y)))
        }
    }
}

/// ∃x ∀y ¬φ by truth table.
fn exists_forall_falsified(phi: &Qbf) -> bool {
    let nx = phi.vars.iter().filter(|v| v.0 == Quantifier::Exists).count();
    let ny = phi.vars.len() - nx;
    (0u32..1 << nx).any(|x| {
        (0u32..1 << ny).all(|y| {
            let val: Vec<bool> =
                (0..nx).map(|i| x >> i & 1 == 1).chain((0..ny).map(|i| y >> i & 1 == 1)).collect();
            !phi.eval(&val)
        })
    })
}

fn reductions() -> Criterion {
    let mut cr = Criterion::default();
    for (s, want) in [(&[1u64, 2, 3][..], true), (&[1, 1, 4][..], false)] {
        let (g, c) = gen_bipartition_cns(s).unwrap();
        cr.check(format!("bipartition {s:?}: source truth {want}"), splits(s) == want);
        cr.check(format!("bipartition {s:?}: threshold 3"), c == 3);
        cr.check(format!("bipartition {s:?} -> CNS {want}"), solve_cns(&g, c).unwrap().0 == want);
    }

    let psi = SubsetSumGame { rounds: vec![[1, 2, 2, 1]], target: 3 };
    let (g, c) = gen_subsetsum_ncns(&psi).unwrap();
    cr.check("subset-sum source truth", subset_sum_holds(&psi, 0, 0));
    cr.check("subset-sum threshold 3", c == 3);
    cr.check("subset-sum -> NCNS YES", solve_ncns_one_env(&g, c).unwrap().answer);

    let cg: CountdownGame = "threshold 3\ninitial s\nedge s 1 s\nedge s 2 s\n".parse().unwrap();
    let truth = countdown_wins(&cg, cg.initial, 0);
    let (g, c) = gen_countdown_ncns(&cg).unwrap();
    cr.check("countdown threshold 6", c == 6);
    cr.check("countdown has 3 players", g.players() == 3);
    let inst = OracleInstance { game: &g, threshold: c, machine: None, env_bounds: None };
    let v = oracle_decide(Problem::Ncns, &inst, &OracleBudget::default()).unwrap();
    cr.check("countdown -> NCNS agrees with source truth", v == Verdict::from_bool(truth));

    let lits = ["x", "-x", "y", "-y"];
    let mut clauses: Vec<String> = lits.iter().map(|l| l.to_string()).collect();
    for i in 0..4 {
        for j in i + 1..4 {
            clauses.push(format!("{} {}", lits[i], lits[j]));
        }
    }
    let mut formulas = Vec::new();
    for i in 0..clauses.len() {
        formulas.push(vec![i]);
        for j in i + 1..clauses.len() {
            formulas.push(vec![i, j]);
        }
    }
    let mut mismatches = 0;
    for f in &formulas {
        let mut text = String::from("exists x\nforall y\n");
        for &i in f {
            text += &format!("clause {}\n", clauses[i]);
        }
        let phi: Qbf = text.parse().unwrap();
        let lg = gen_qbf_ncpv(&phi).unwrap();
        let p = product_game(&lg.game, &full_machine(&lg.game)).unwrap();
        let (ok, _) = verify_ncpv(&p, 0).unwrap();
        if ok == exists_forall_falsified(&phi) {
            mismatches += 1;
        }
    }
    cr.check("QBF -> NCPV matches truth tables", mismatches == 0);
    cr.note(format!("{} QBF instances", formulas.len()));
    cr
}

fn normalization() -> Criterion {
    let mut cr = Criterion::default();
    let mut r = rng(0x5eed_0008);
    let lassos = 600;
    let (mut cycle_bad, mut prefix_bad, mut visit_bad, mut cost_bad, mut kept_bad) = (0, 0, 0, 0, 0);
    let mut literal = 0;
    for _ in 0..lassos {
        let env = r.gen_range(1..=2);
        let g = random_game(&mut r, Shape { max_vertices: 6, env, max_weight: 2, max_out: 3 });
        let pi = random_lasso(&mut r, &g, 30);
        let n = g.vertex_count();
        let t = env;
        let before = cost_of_lasso(&g, &pi).unwrap();
        let preserve = if r.gen_bool(0.5) {
            let j = r.gen_range(0..=env);
            Some((j, r.gen_range(0..=4u64)))
        } else {
            None
        };
        let out = normalize_lasso(&g, &pi, preserve).unwrap();
        let after = cost_of_lasso(&g, &out).unwrap();
        let active = preserve.filter(|&(j, c)| before[j] > Cost::Fin(c));
        let (bound, literal_bound) = match active {
            Some((_, c)) => ((c as usize + t + 3) * (n - 1) + 1, c as usize + (t + 1) * n),
            None => ((t + 2) * (n - 1) + 1, (t + 1) * n),
        };
        cycle_bad += (out.cycle().len() > n) as usize;
        prefix_bad += (out.prefix().len() > bound) as usize;
        literal += (out.prefix().len() > literal_bound) as usize;
        let full = out.head();
        visit_bad += (visit_set(&g, out.prefix()).unwrap() != visit_set(&g, &full).unwrap()) as usize;
        cost_bad += (0..=env).any(|i| after[i] > before[i]) as usize;
        if let Some((j, c)) = active {
            kept_bad += (after[j] <= Cost::Fin(c)) as usize;
        }
    }
    cr.check("|cycle| <= |V|", cycle_bad == 0);
    cr.check("|prefix| within the corrected bound", prefix_bad == 0);
    cr.check("Visit(prefix) = Visit(prefix cycle)", visit_bad == 0);
    cr.check("costs do not increase", cost_bad == 0);
    cr.check("protected cost stays above c", kept_bad == 0);
    cr.note(format!("{lassos} lassos, {literal} exceed the literal (t+1)|V| prefix bound (informational)"));
    cr
}

#[test]
fn acceptance() {
    let mut unexpected = Vec::new();
    unexpected.extend(figure_one().report(1, "first example"));
    unexpected.extend(figure_two().report(2, "waiting game"));
    unexpected.extend(oracle_equivalence().report(3, "oracle equivalence"));
    unexpected.extend(zero_sum_values().report(4, "zero-sum values"));
    unexpected.extend(bounded_safety_combo().report(5, "bounded-safety combination"));
    unexpected.extend(nash_characterization().report(6, "equilibrium characterization"));
    unexpected.extend(reductions().report(7, "reductions"));
    unexpected.extend(normalization().report(8, "lasso normalization"));
    assert!(unexpected.is_empty(), "unexpected failures: {unexpected:#?}");
}
