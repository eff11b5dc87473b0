use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use reachgames::io::{CertificateDoc, Format, GameDocument, LassoDoc, SCHEMA_VERSION};
use reachgames::mealy::{product_game, MealyMachine, ProductGame};
use reachgames::nash::{compute_val_star, solve_cns, verify_ncnv, verify_uncnv, visit_val_consistent};
use reachgames::ncns::solve_ncns_one_env;
use reachgames::oracle::{oracle_decide, OracleBudget, OracleInstance, Problem, Verdict};
use reachgames::pareto::{
    ensure_po, is_pareto_optimal, payoff, solve_cps, verify_ncpv, verify_uncpv, ParetoContext,
};
use reachgames::reductions::{
    gen_bipartition_cns, gen_bipartition_uncnv, gen_coqbf_cps, gen_countdown_ncns,
    gen_countdown_ncns_bounded, gen_qbf_ncpv, gen_subsetsum_ncns, CountdownGame, Qbf,
    SubsetSumGame,
};
use reachgames::{cost_of_lasso, Cost, Lasso, ReachabilityGame};

const BUDGET_VAR: &str = "REACHGAMES_BUDGET";

#[derive(Parser)]
#[command(name = "reachgames", version, about = "Solve and verify weighted reachability games")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Instance {
    #[arg(long)]
    game: PathBuf,
    /// defaults to the threshold in the game's `problem` line
    #[arg(long)]
    threshold: Option<u64>,
    #[arg(long)]
    machine: Option<PathBuf>,
}

#[derive(Args)]
struct Output {
    /// write the certificate as JSON
    #[arg(long)]
    certificate: Option<PathBuf>,
    #[arg(long, default_value = "text")]
    format: Format,
    /// accepted for compatibility; solving is sequential
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Synthesis problems
    Solve {
        problem: SolveProblem,
        #[command(flatten)]
        inst: Instance,
        #[command(flatten)]
        out: Output,
    },
    /// Verification problems for a machine strategy
    Verify {
        problem: VerifyProblem,
        #[command(flatten)]
        inst: Instance,
        #[command(flatten)]
        out: Output,
    },
    /// Brute-force reference decision
    Oracle {
        problem: Problem,
        #[command(flatten)]
        inst: Instance,
        #[command(flatten)]
        out: Output,
        /// e.g. `profiles=100000,lasso=8,states=1000000,memory=2`
        #[arg(long, env = BUDGET_VAR)]
        budget: Option<String>,
        /// satisficing bounds for ncns-bounded, one per player
        #[arg(long, value_delimiter = ',')]
        bounds: Option<Vec<u64>>,
    },
    /// Generate a game from a source instance
    Gen {
        kind: GenKind,
        /// instance file, or the numbers for bipartition
        input: Vec<String>,
        /// countdown: satisficing variant; bipartition: UNCNV variant
        #[arg(long)]
        variant: bool,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Validate game and machine files
    Check {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        machine: Option<PathBuf>,
    },
    /// Replay a certificate against its game
    CheckCertificate {
        #[command(flatten)]
        inst: Instance,
        #[arg(long)]
        certificate: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveProblem {
    Cns,
    Cps,
    Ncns1,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyProblem {
    Ncnv,
    Uncnv,
    Ncpv,
    Uncpv,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Countdown,
    Subsetsum,
    Bipartition,
    Qbf,
    Coqbf,
}

impl SolveProblem {
    fn name(self) -> &'static str {
        match self {
            SolveProblem::Cns => "cns",
            SolveProblem::Cps => "cps",
            SolveProblem::Ncns1 => "ncns1",
        }
    }
}

impl VerifyProblem {
    fn name(self) -> &'static str {
        match self {
            VerifyProblem::Ncnv => "ncnv",
            VerifyProblem::Uncnv => "uncnv",
            VerifyProblem::Ncpv => "ncpv",
            VerifyProblem::Uncpv => "uncpv",
        }
    }
}

struct Loaded {
    doc: GameDocument,
    game: ReachabilityGame,
    threshold: u64,
    machine: Option<MealyMachine>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(inst: &Instance, need_machine: bool) -> Result<Loaded> {
    let text = read(&inst.game)?;
    let doc = GameDocument::parse(&text).map_err(|e| anyhow!("{}:\n{e}", inst.game.display()))?;
    let game = doc.to_game().map_err(|e| anyhow!("{}:\n{e}", inst.game.display()))?;
    let threshold = inst
        .threshold
        .or(doc.problem.as_ref().map(|p| p.threshold))
        .ok_or_else(|| anyhow!("no --threshold and no `problem` line in {}", inst.game.display()))?;
    let machine_path = inst.machine.clone().or_else(|| {
        let m = doc.problem.as_ref()?.machine.as_ref()?;
        Some(inst.game.parent().unwrap_or(Path::new(".")).join(m))
    });
    let machine = match machine_path {
        Some(p) => Some(load_machine(&p, &game)?),
        None if need_machine => bail!("this problem needs --machine"),
        None => None,
    };
    Ok(Loaded { doc, game, threshold, machine })
}

fn load_machine(path: &Path, game: &ReachabilityGame) -> Result<MealyMachine> {
    reachgames::io::parse_machine(&read(path)?, game).map_err(|e| anyhow!("{}:\n{e}", path.display()))
}

fn product_of(l: &Loaded) -> Result<ProductGame> {
    let m = l.machine.as_ref().ok_or_else(|| anyhow!("this problem needs --machine"))?;
    Ok(product_game(&l.game, m)?)
}

fn certificate(problem: &str, threshold: u64, verdict: &Verdict) -> CertificateDoc {
    CertificateDoc {
        schema: SCHEMA_VERSION,
        problem: problem.to_string(),
        threshold,
        verdict: match verdict {
            Verdict::Yes => "YES".into(),
            Verdict::No => "NO".into(),
            Verdict::Inconclusive(_) => "INCONCLUSIVE".into(),
        },
        lasso: None,
        product_lasso: None,
        costs: None,
        notes: BTreeMap::new(),
    }
}

fn attach(cert: &mut CertificateDoc, game: &ReachabilityGame, pi: &Lasso) -> Result<()> {
    cert.costs = Some(cost_of_lasso(game, pi)?);
    cert.lasso = Some(LassoDoc::from_lasso(pi, game.arena()));
    Ok(())
}

fn attach_product(cert: &mut CertificateDoc, l: &Loaded, p: &ProductGame, pi: &Lasso) -> Result<()> {
    cert.product_lasso = Some(LassoDoc::from_lasso(pi, p.game.arena()));
    attach(cert, &l.game, &p.project(pi))
}

fn solve(problem: SolveProblem, l: &Loaded) -> Result<(Verdict, CertificateDoc)> {
    let c = l.threshold;
    let mut cert;
    let verdict = match problem {
        SolveProblem::Cns => {
            let (ok, pi) = solve_cns(&l.game, c)?;
            let v = Verdict::from_bool(ok);
            cert = certificate(problem.name(), c, &v);
            if let Some(pi) = pi {
                attach(&mut cert, &l.game, &pi)?;
            }
            v
        }
        SolveProblem::Cps => {
            let (ok, found) = solve_cps(&l.game, c)?;
            let v = Verdict::from_bool(ok);
            cert = certificate(problem.name(), c, &v);
            if let Some((pi, _)) = found {
                attach(&mut cert, &l.game, &pi)?;
            }
            v
        }
        SolveProblem::Ncns1 => {
            let r = solve_ncns_one_env(&l.game, c)?;
            let v = Verdict::from_bool(r.answer);
            cert = certificate(problem.name(), c, &v);
            if let Some(pi) = r.base_witness() {
                attach(&mut cert, &l.game, &pi)?;
                cert.notes.insert("environment_cost".into(), r.d.to_string());
            } else if r.answer {
                cert.notes.insert("reason".into(), "player 0 wins outright".into());
            }
            v
        }
    };
    Ok((verdict, cert))
}

fn verify(problem: VerifyProblem, l: &Loaded) -> Result<(Verdict, CertificateDoc)> {
    let c = l.threshold;
    let p = product_of(l)?;
    let (ok, pi) = match problem {
        VerifyProblem::Ncnv => verify_ncnv(&p, c)?,
        VerifyProblem::Uncnv => verify_uncnv(&p, c)?,
        VerifyProblem::Ncpv => verify_ncpv(&p, c)?,
        VerifyProblem::Uncpv => verify_uncpv(&p, c)?,
    };
    let v = Verdict::from_bool(ok);
    let mut cert = certificate(problem.name(), c, &v);
    if let Some(pi) = pi {
        attach_product(&mut cert, l, &p, &pi)?;
    }
    Ok((v, cert))
}

fn budget(spec: Option<&str>) -> Result<OracleBudget> {
    Ok(match spec {
        Some(s) => s.parse()?,
        None => OracleBudget::default(),
    })
}

fn oracle(problem: Problem, l: &Loaded, budget: &OracleBudget, bounds: Option<&[u64]>) -> Result<(Verdict, CertificateDoc)> {
    let inst = OracleInstance {
        game: &l.game,
        threshold: l.threshold,
        machine: l.machine.as_ref(),
        env_bounds: bounds,
    };
    let v = oracle_decide(problem, &inst, budget)?;
    let mut cert = certificate(problem.name(), l.threshold, &v);
    cert.notes.insert("method".into(), "oracle".into());
    if let Verdict::Inconclusive(why) = &v {
        cert.notes.insert("reason".into(), why.clone());
    }
    Ok((v, cert))
}

fn report(v: &Verdict, cert: &CertificateDoc, game: &ReachabilityGame, out: &Output, started: Instant) -> Result<ExitCode> {
    if let Some(path) = &out.certificate {
        fs::write(path, cert.to_json()).with_context(|| format!("cannot write {}", path.display()))?;
    }
    match out.format {
        Format::Json => print!("{}", cert.to_json()),
        Format::Text => {
            println!("problem: {}", cert.problem);
            println!("threshold: {}", cert.threshold);
            println!("verdict: {v}");
            if let Some(ld) = &cert.lasso {
                let pi = ld.to_lasso(game.arena()).map_err(|e| anyhow!(e))?;
                println!("certificate: {}", pi.display(game.arena()));
            }
            if let Some(pl) = &cert.product_lasso {
                let pre = pl.prefix.join(" ");
                println!("product play: {pre} ({})^w", pl.cycle.join(" "));
            }
            if let Some(costs) = &cert.costs {
                println!("costs: {costs}");
            }
            for (k, val) in &cert.notes {
                println!("{k}: {val}");
            }
            println!("time: {:.3} s", started.elapsed().as_secs_f64());
        }
    }
    Ok(exit_for(v))
}

fn exit_for(v: &Verdict) -> ExitCode {
    match v {
        Verdict::Yes => ExitCode::from(0),
        Verdict::No => ExitCode::from(1),
        Verdict::Inconclusive(_) => ExitCode::from(2),
    }
}

fn generate(kind: GenKind, input: &[String], variant: bool, format: Format) -> Result<()> {
    let file = || -> Result<String> {
        match input {
            [path] => read(Path::new(path)),
            _ => bail!("expected exactly one instance file"),
        }
    };
    let mut header = Vec::new();
    let (game, problem, threshold, bounds) = match kind {
        GenKind::Countdown => {
            let cg: CountdownGame = file()?.parse()?;
            if variant {
                let (g, c, d) = gen_countdown_ncns_bounded(&cg)?;
                (g, "ncns-bounded", c, d)
            } else {
                let (g, c) = gen_countdown_ncns(&cg)?;
                (g, "ncns", c, Vec::new())
            }
        }
        GenKind::Subsetsum => {
            let psi: SubsetSumGame = file()?.parse()?;
            let (g, c) = gen_subsetsum_ncns(&psi)?;
            (g, "ncns", c, Vec::new())
        }
        GenKind::Bipartition => {
            let s = input
                .iter()
                .map(|x| x.parse::<u64>().with_context(|| format!("`{x}` is not a natural number")))
                .collect::<Result<Vec<_>>>()?;
            if variant {
                let (g, c) = gen_bipartition_uncnv(&s)?;
                header.push("machine: the full machine of this game".to_string());
                (g, "uncnv", c, Vec::new())
            } else {
                let (g, c) = gen_bipartition_cns(&s)?;
                (g, "cns", c, Vec::new())
            }
        }
        GenKind::Qbf | GenKind::Coqbf => {
            let phi: Qbf = file()?.parse()?;
            let lg = if matches!(kind, GenKind::Qbf) { gen_qbf_ncpv(&phi)? } else { gen_coqbf_cps(&phi)? };
            for (i, label) in lg.labels.iter().enumerate() {
                header.push(format!("player {i}: {label}"));
            }
            let p = if matches!(kind, GenKind::Qbf) { "ncpv" } else { "cps" };
            (lg.game, p, 0, Vec::new())
        }
    };
    let mut doc = GameDocument::from_game(&game);
    doc.problem = Some(reachgames::io::ProblemDoc {
        name: problem.into(),
        threshold,
        machine: None,
        bounds,
    });
    match format {
        Format::Text => {
            for h in header {
                println!("# {h}");
            }
            print!("{}", doc.to_text());
        }
        Format::Json => print!("{}", doc.render(Format::Json)),
    }
    Ok(())
}

fn check(game: &Path, machine: Option<&Path>) -> Result<()> {
    let g = reachgames::io::parse_game(&read(game)?).map_err(|e| anyhow!("{}:\n{e}", game.display()))?;
    println!(
        "{}: {} vertices, {} players, {} edges",
        game.display(),
        g.vertex_count(),
        g.players(),
        g.arena().edges().len()
    );
    if let Some(m) = machine {
        let mm = load_machine(m, &g)?;
        println!(
            "{}: {} states, {}",
            m.display(),
            mm.state_count(),
            if mm.is_deterministic(g.arena()) { "deterministic" } else { "nondeterministic" }
        );
    }
    Ok(())
}

/// Recomputes costs and the verdict predicate of a certificate.
fn replay(l: &Loaded, cert: &CertificateDoc) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let c = cert.threshold;
    let arena = l.game.arena();
    let lasso = cert
        .lasso
        .as_ref()
        .map(|ld| ld.to_lasso(arena).map(|pi| pi.canonical()))
        .transpose()
        .map_err(|e| anyhow!(e))?;
    if let Some(pi) = &lasso {
        if let Err(e) = reachgames::arena::check_lasso(&l.game, pi) {
            problems.push(format!("not a play of the game: {e}"));
            return Ok(problems);
        }
        let costs = cost_of_lasso(&l.game, pi)?;
        if cert.costs.as_ref().is_some_and(|claimed| *claimed != costs) {
            problems.push(format!("claimed costs {} but the play costs {costs}", cert.costs.as_ref().unwrap()));
        }
    }
    let cost0 = |pi: &Lasso| -> Result<Cost> { Ok(cost_of_lasso(&l.game, pi)?[0]) };
    let claimed = match cert.verdict.as_str() {
        "YES" => true,
        "NO" => false,
        other => bail!("verdict `{other}` cannot be replayed"),
    };
    let rerun = |problems: &mut Vec<String>, got: Verdict| {
        if got.as_bool() != Some(claimed) {
            problems.push(format!("recomputed verdict {got}, certificate says {}", cert.verdict));
        }
    };
    let oracle_problem: Option<Problem> = cert.problem.parse().ok();
    if cert.notes.get("method").map(String::as_str) == Some("oracle") {
        let p = oracle_problem.ok_or_else(|| anyhow!("unknown problem `{}`", cert.problem))?;
        let bounds = l.doc.problem.as_ref().map(|p| p.bounds.clone()).filter(|b| !b.is_empty());
        let budget = budget(std::env::var(BUDGET_VAR).ok().as_deref())?;
        let relaxed = Loaded { doc: l.doc.clone(), game: l.game.clone(), threshold: c, machine: l.machine.clone() };
        rerun(&mut problems, oracle(p, &relaxed, &budget, bounds.as_deref())?.0);
        return Ok(problems);
    }
    match (cert.problem.as_str(), claimed, &lasso) {
        ("cns", true, Some(pi)) => {
            let table = compute_val_star(&l.game);
            if !visit_val_consistent(&l.game, &table, pi, l.game.env_players()) {
                problems.push("play is not a Nash equilibrium outcome".into());
            }
            if cost0(pi)? > Cost::Fin(c) {
                problems.push("player 0 pays more than the threshold".into());
            }
        }
        ("cps", true, Some(pi)) => {
            let costs = cost_of_lasso(&l.game, pi)?;
            if !ensure_po(&l.game, pi, &payoff(&costs))? {
                problems.push("player 0 cannot make the payoff Pareto-optimal".into());
            }
            if costs[0] > Cost::Fin(c) {
                problems.push("player 0 pays more than the threshold".into());
            }
        }
        ("ncns1", true, Some(pi)) => {
            if cost0(pi)? > Cost::Fin(c) {
                problems.push("witness costs player 0 more than the threshold".into());
            }
            rerun(&mut problems, Verdict::from_bool(solve_ncns_one_env(&l.game, c)?.answer));
        }
        (name @ ("ncnv" | "uncnv" | "ncpv" | "uncpv"), false, Some(pi)) => {
            let p = product_of(l)?;
            let pl = cert
                .product_lasso
                .as_ref()
                .ok_or_else(|| anyhow!("counterexample without product play"))?
                .to_lasso(p.game.arena())
                .map_err(|e| anyhow!(e))?;
            if let Err(e) = reachgames::arena::check_lasso(&p.game, &pl) {
                problems.push(format!("not a play of the product: {e}"));
                return Ok(problems);
            }
            if p.project(&pl).canonical() != *pi {
                problems.push("product play does not project to the certificate play".into());
            }
            let costs = cost_of_lasso(&p.game, &pl)?;
            if costs[0] <= Cost::Fin(c) {
                problems.push("counterexample does not exceed the threshold".into());
            }
            let rational = match name {
                "ncnv" | "uncnv" => {
                    let table = compute_val_star(&p.game);
                    visit_val_consistent(&p.game, &table, &pl, p.game.env_players())
                }
                "ncpv" => is_pareto_optimal(&ParetoContext::new(&p.game), &payoff(&costs))?,
                _ => ensure_po(&p.game, &pl, &payoff(&costs))?,
            };
            if !rational {
                problems.push("counterexample is not a rational outcome".into());
            }
        }
        (name, _, _) => {
            let got = if let Ok(sp) = SolveProblem::from_str(name, true) {
                solve(sp, l)?.0
            } else if let Ok(vp) = VerifyProblem::from_str(name, true) {
                verify(vp, l)?.0
            } else {
                bail!("unknown problem `{name}`");
            };
            rerun(&mut problems, got);
        }
    }
    Ok(problems)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let started = Instant::now();
    match cli.cmd {
        Cmd::Solve { problem, inst, out } => {
            let l = load(&inst, false)?;
            let (v, cert) = solve(problem, &l)?;
            report(&v, &cert, &l.game, &out, started)
        }
        Cmd::Verify { problem, inst, out } => {
            let l = load(&inst, true)?;
            let (v, cert) = verify(problem, &l)?;
            report(&v, &cert, &l.game, &out, started)
        }
        Cmd::Oracle { problem, inst, out, budget: spec, bounds } => {
            let l = load(&inst, problem.needs_machine())?;
            let bounds = bounds.or_else(|| l.doc.problem.as_ref().map(|p| p.bounds.clone()).filter(|b| !b.is_empty()));
            let (v, cert) = oracle(problem, &l, &budget(spec.as_deref())?, bounds.as_deref())?;
            report(&v, &cert, &l.game, &out, started)
        }
        Cmd::Gen { kind, input, variant, format } => {
            generate(kind, &input, variant, format)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Check { game, machine } => {
            check(&game, machine.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::CheckCertificate { inst, certificate } => {
            let cert = CertificateDoc::parse(&read(&certificate)?)
                .map_err(|e| anyhow!("{}:\n{e}", certificate.display()))?;
            let mut inst = inst;
            inst.threshold = Some(cert.threshold);
            let needs_machine = matches!(cert.problem.as_str(), "ncnv" | "uncnv" | "ncpv" | "uncpv");
            let l = load(&inst, needs_machine)?;
            let problems = replay(&l, &cert)?;
            if problems.is_empty() {
                println!("certificate OK: {} {} at threshold {}", cert.problem, cert.verdict, cert.threshold);
                Ok(ExitCode::SUCCESS)
            } else {
                for p in problems {
                    println!("certificate mismatch: {p}");
                }
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
