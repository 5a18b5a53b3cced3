use std::path::Path;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{json, Value};

use clarith::arena::{eval_elementary, AgentFault, EvalConfig, MatchConfig, MatchOutcome, Truth};
use clarith::bounds::{check_regularity, dds_table, default_grid, AuditConfig, RegularityReport, Triple};
use clarith::cl12::{check_proof, CheckConfig, Cl12Proof, LineStatus, ProofReport, ProofVerdict};
use clarith::cla11::{check_theory_proof, Cla11Proof, TheoryCheckConfig, TheoryLineStatus, TheoryParams, TheoryReport, TheoryVerdict};
use clarith::strategies::{agent_from_spec, exhaustive_matches, small_values, EnvSpec};
use clarith::syntax::{parse_formula, Formula, Player};

use crate::report::{Exit, Failure, Report};
use crate::{Cli, Command};

type Outcome = Result<Report, Failure>;

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Check { files, theory, extended } => check(cli, files, theory.as_deref(), *extended),
        Command::Play { game, agent, env, max_moves, runs } => play(cli, game, agent, env, *max_moves, *runs),
        Command::Regularity { triple, grid, index } => regularity(cli, triple, grid.as_deref(), *index),
        Command::TableDds { grid, index } => table_dds(cli, grid.as_deref(), *index),
        Command::Eval { formula } => eval(cli, formula),
    }
}

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(Exit::Io, format!("{path}: {e}")))
}

fn cl12_config(cli: &Cli) -> CheckConfig {
    CheckConfig { permissive: cli.permissive, ..CheckConfig::default() }
}

fn check(cli: &Cli, files: &[String], theory: Option<&str>, extended: bool) -> Outcome {
    let params = match theory {
        Some(path) => {
            let p = TheoryParams::from_toml(&read(path)?).map_err(|e| Failure::new(Exit::Parse, format!("{path}: {e}")))?;
            Some(p)
        }
        None => None,
    };
    for f in files {
        if !(f.ends_with(".cl12") || f.ends_with(".cla11")) {
            return Err(Failure::new(Exit::Usage, format!("{f}: expected a .cl12 or .cla11 file")));
        }
        if f.ends_with(".cla11") && params.is_none() {
            return Err(Failure::new(Exit::Usage, format!("{f}: theory proofs need --theory <file.cfg>")));
        }
    }
    let results: Vec<Result<Report, Failure>> = files
        .par_iter()
        .map(|f| {
            if f.ends_with(".cl12") {
                check_cl12(cli, f)
            } else {
                check_cla11(cli, f, params.as_ref().expect("checked above"), extended)
            }
        })
        .collect();
    let mut reports = Vec::new();
    for r in results {
        reports.push(r?);
    }
    if reports.len() == 1 {
        return Ok(reports.pop().expect("one report"));
    }
    let exit = reports.iter().fold(Exit::Ok, |e, r| e.max(r.exit));
    let plain = reports.iter().map(|r| r.plain.as_str()).collect::<Vec<_>>().join("\n");
    Ok(Report { exit, plain, json: Value::Array(reports.into_iter().map(|r| r.json).collect()) })
}

fn cl12_verdict(v: &ProofVerdict) -> &'static str {
    match v {
        ProofVerdict::Accepted => "accepted",
        ProofVerdict::AcceptedWithObligations(_) => "accepted-with-obligations",
        ProofVerdict::Rejected { .. } => "rejected",
    }
}

fn cl12_json(file: &str, r: &ProofReport) -> Value {
    let lines: Vec<Value> = r
        .lines
        .iter()
        .map(|(n, st)| match st {
            LineStatus::Ok => json!({ "line": n, "status": "ok" }),
            LineStatus::Obligation(o) => json!({ "line": n, "status": "obligation", "detail": o }),
            LineStatus::Rejected(e) => json!({ "line": n, "status": "rejected", "detail": e }),
        })
        .collect();
    let mut v = json!({
        "file": file,
        "kind": "cl12",
        "verdict": cl12_verdict(&r.verdict),
        "lines": lines,
        "proves": r.proves.as_ref().map(|s| s.to_string()),
    });
    if let ProofVerdict::Rejected { line, reason } = &r.verdict {
        v["rejected"] = json!({ "line": line, "reason": reason });
    }
    v
}

fn check_cl12(cli: &Cli, file: &str) -> Outcome {
    let proof = Cl12Proof::parse(&read(file)?).map_err(|e| Failure::new(Exit::Parse, format!("{file}: {e}")))?;
    let cfg = cl12_config(cli);
    let report = check_proof(&proof, &cfg);
    let exit = if report.accepted() {
        Exit::Ok
    } else if !cfg.permissive && check_proof(&proof, &CheckConfig { permissive: true, ..cfg }).accepted() {
        Exit::Budget
    } else {
        Exit::Failed
    };
    Ok(Report { exit, plain: format!("{file}\n{report}"), json: cl12_json(file, &report) })
}

fn theory_json(file: &str, r: &TheoryReport) -> Value {
    let lines: Vec<Value> = r
        .lines
        .iter()
        .map(|(n, st)| {
            let (status, detail) = match st {
                TheoryLineStatus::Ok(d) => ("ok", d),
                TheoryLineStatus::Trusted(d) => ("trusted", d),
                TheoryLineStatus::Obligation(d) => ("obligation", d),
                TheoryLineStatus::Rejected(d) => ("rejected", d),
            };
            json!({ "line": n, "status": status, "detail": detail })
        })
        .collect();
    let verdict = match &r.verdict {
        TheoryVerdict::Accepted => "accepted",
        TheoryVerdict::AcceptedWithObligations(_) => "accepted-with-obligations",
        TheoryVerdict::Rejected { .. } => "rejected",
    };
    let mut v = json!({
        "file": file,
        "kind": "cla11",
        "verdict": verdict,
        "lines": lines,
        "trusted": r.trusted,
        "proves": r.proves.as_ref().map(|f| f.to_string()),
    });
    if let TheoryVerdict::Rejected { line, reason } = &r.verdict {
        v["rejected"] = json!({ "line": line, "reason": reason });
    }
    v
}

fn check_cla11(cli: &Cli, file: &str, params: &TheoryParams, extended: bool) -> Outcome {
    let proof = Cla11Proof::load(Path::new(file))
        .map_err(|e| Failure::new(Exit::Io, format!("{file}: {e}")))?
        .map_err(|e| Failure::new(Exit::Parse, format!("{file}: {e}")))?;
    let mut params = params.clone();
    if let Some(b) = cli.budget {
        params.budget = b;
    }
    let cfg = TheoryCheckConfig { extended, cl12: cl12_config(cli), eval: EvalConfig::with_bound(cli.blind_bound) };
    let report = check_theory_proof(&params, &proof, &cfg);
    let exit = match (report.accepted(), report.undecided()) {
        (true, _) => Exit::Ok,
        (false, true) => Exit::Budget,
        (false, false) => Exit::Failed,
    };
    Ok(Report { exit, plain: format!("{file}\n{report}"), json: theory_json(file, &report) })
}

fn sentence(src: &str) -> Result<Formula, Failure> {
    let text = if Path::new(src).is_file() { read(src)? } else { src.to_string() };
    let f = parse_formula(text.trim()).map_err(|e| Failure::new(Exit::Parse, e.to_string()))?;
    if !f.is_sentence() {
        return Err(Failure::new(Exit::Parse, format!("`{f}` has free variables")));
    }
    Ok(f)
}

/// Missing files named inside agent and environment specs are I/O errors, not bad flags.
fn spec_failure(spec: &str, msg: String) -> Failure {
    let file = spec.strip_prefix("extract:").or_else(|| spec.strip_prefix("script:"));
    match file {
        Some(f) if !Path::new(f).is_file() => Failure::new(Exit::Io, msg),
        Some(_) => Failure::new(Exit::Parse, msg),
        None => Failure::new(Exit::Usage, msg),
    }
}

fn fault(e: AgentFault) -> Failure {
    Failure::new(Exit::AgentFault, e.to_string())
}

fn match_exit(o: &MatchOutcome) -> Exit {
    match o.verdict.winner() {
        Some(Player::Top) => Exit::Ok,
        Some(Player::Bottom) => Exit::Failed,
        None => Exit::Budget,
    }
}

fn match_json(o: &MatchOutcome) -> Value {
    json!({
        "transcript": o.transcript.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "verdict": o.verdict.to_string(),
        "meter": {
            "time": o.meter.time,
            "space": o.meter.space_peak,
            "amplitude": o.meter.amplitude,
            "background": o.meter.background,
        },
        "final": o.final_game.as_ref().map(|g| g.to_string()),
    })
}

fn play(cli: &Cli, game: &str, agent: &str, env: &str, max_moves: usize, runs: u64) -> Outcome {
    let game = sentence(game)?;
    let cfg = CheckConfig { permissive: true, ..CheckConfig::default() };
    agent_from_spec(agent, &cfg).map_err(|e| spec_failure(agent, e))?;
    let env_spec = EnvSpec::parse(env, cli.seed).map_err(|e| spec_failure(env, e))?;
    let mcfg = MatchConfig { eval: EvalConfig::with_bound(cli.blind_bound), max_moves };
    let new_agent = || agent_from_spec(agent, &cfg).expect("validated above");
    match env_spec {
        EnvSpec::Exhaustive(depth) => {
            let outcomes = exhaustive_matches(new_agent().as_ref(), &game, depth, &small_values(), &mcfg).map_err(fault)?;
            summarize(format!("exhaustive:{depth}"), outcomes.iter().map(|o| (None, o)).collect())
        }
        EnvSpec::Random(seed) if runs > 1 => {
            let outcomes: Result<Vec<(u64, MatchOutcome)>, AgentFault> = (seed..seed + runs)
                .into_par_iter()
                .map(|s| {
                    let mut env = EnvSpec::Random(s).agent().expect("random environments are agents");
                    clarith::arena::run_match(new_agent().as_mut(), env.as_mut(), &game, &mcfg).map(|o| (s, o))
                })
                .collect();
            let outcomes = outcomes.map_err(fault)?;
            summarize(format!("random:{seed}..{}", seed + runs), outcomes.iter().map(|(s, o)| (Some(*s), o)).collect())
        }
        spec => {
            let mut env = spec.agent().expect("non-exhaustive environments are agents");
            let o = clarith::arena::run_match(new_agent().as_mut(), env.as_mut(), &game, &mcfg).map_err(fault)?;
            Ok(Report { exit: match_exit(&o), plain: o.render(), json: match_json(&o) })
        }
    }
}

fn summarize(label: String, outcomes: Vec<(Option<u64>, &MatchOutcome)>) -> Outcome {
    let mut plain = String::new();
    let mut exit = Exit::Ok;
    let mut won = 0;
    for (i, (seed, o)) in outcomes.iter().enumerate() {
        let tag = seed.map(|s| format!("seed {s}")).unwrap_or_else(|| format!("run {i}"));
        let moves: Vec<String> = o.transcript.iter().map(|l| l.to_string()).collect();
        plain.push_str(&format!("{tag}: {} [{}] time={} space={}\n", o.verdict, moves.join(", "), o.meter.time, o.meter.space_peak));
        exit = exit.max(match_exit(o));
        won += usize::from(match_exit(o) == Exit::Ok);
    }
    plain.push_str(&format!("environment: {label}\nwon: {won}/{}\n", outcomes.len()));
    let json = json!({
        "environment": label,
        "won": won,
        "runs": outcomes.iter().map(|(s, o)| {
            let mut v = match_json(o);
            v["seed"] = json!(s);
            v
        }).collect::<Vec<_>>(),
    });
    Ok(Report { exit, plain, json })
}

fn audit_config(cli: &Cli, grid: Option<&[u64]>, index: usize) -> AuditConfig {
    AuditConfig {
        budget: cli.budget.unwrap_or(500),
        grid: grid.map(|g| g.iter().map(|&v| BigUint::from(v)).collect()).unwrap_or_else(default_grid),
        index,
        ..AuditConfig::default()
    }
}

fn regularity_json(r: &RegularityReport) -> Value {
    json!({
        "triple": r.triple,
        "description": r.description,
        "conditions": r.entries().iter().map(|(name, c)| json!({
            "name": name,
            "status": c.kind(),
            "detail": c.detail(),
        })).collect::<Vec<_>>(),
    })
}

fn regularity(cli: &Cli, triple: &str, grid: Option<&[u64]>, index: usize) -> Outcome {
    let cfg = audit_config(cli, grid, index);
    let report = if triple.ends_with(".cfg") {
        let mut params = TheoryParams::from_toml(&read(triple)?).map_err(|e| Failure::new(Exit::Parse, format!("{triple}: {e}")))?;
        params.audit(&cfg).clone()
    } else {
        let t = Triple::parse(triple, index).map_err(|e| Failure::new(Exit::Parse, e))?;
        check_regularity(&t, &cfg)
    };
    let exit = if report.falsified().is_empty() { Exit::Ok } else { Exit::Failed };
    Ok(Report { exit, plain: report.render(), json: regularity_json(&report) })
}

fn table_dds(cli: &Cli, grid: Option<&[u64]>, index: usize) -> Outcome {
    let table = dds_table(&audit_config(cli, grid, index));
    let exit = if table.any_falsified() { Exit::Failed } else { Exit::Ok };
    let json = Value::Array(table.rows.iter().map(regularity_json).collect());
    Ok(Report { exit, plain: table.render(), json })
}

fn eval(cli: &Cli, src: &str) -> Outcome {
    let f = sentence(src)?;
    if !f.is_elementary() {
        return Err(Failure::new(Exit::Parse, format!("`{f}` contains choice operators")));
    }
    let truth = eval_elementary(&f, &EvalConfig::with_bound(cli.blind_bound));
    let exit = match truth {
        Truth::True => Exit::Ok,
        Truth::False => Exit::Failed,
        Truth::Unknown => Exit::Budget,
    };
    Ok(Report { exit, plain: format!("{truth}\n"), json: json!({ "formula": f.to_string(), "truth": truth.to_string() }) })
}
