//! Command-line front end. Every command reads JSON or flags, prints one JSON
//! report with sorted keys, and exits with 0 (yes), 1 (no), 2 (input error) or
//! 3 (undecided).

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::classes::xi_bracket;
use crate::classes::zeta_star;
use crate::closure::{build_triple, verify_triple};
use crate::error::{Error, Result};
use crate::roots::{classify, p as p_form, q as q_form, DimVector, Weights};
use crate::scalar::set_max_field_order;
use crate::solver::{
    conjecture_condition, construct_rigid, decide_closure_additive, decide_closure_multiplicative, decide_rigid,
    enumerate_admissible_decompositions, generic_xi, verify_solution, Answer, Mode, Problem, Verdict, VerifyMode,
    VertexOrder,
};
use crate::wire::{self, Certificate, Equation};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

/// Environment variable capping the cyclotomic field order.
pub const MAX_FIELD_ORDER_ENV: &str = "DSFORGE_MAX_FIELD_ORDER";

const DEFAULT_LIMIT: usize = 10_000;

#[derive(Parser, Debug)]
#[command(name = "dsforge", version, about = "Exact decisions for products of matrices in conjugacy class closures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solvability of A_1...A_k = 1 (or A_1+...+A_k = 0) with A_i in the closures.
    DecideClosure(ProblemArgs),
    /// Existence of a rigid irreducible solution in the classes themselves.
    DecideRigid(ProblemArgs),
    /// Construct the rigid irreducible solution.
    SolveRigid(ProblemArgs),
    /// Solvability of A_1+...+A_k = 0 with rational eigenvalues.
    DecideAdditive(ProblemArgs),
    /// Re-verify a certificate file.
    CheckSolution(CheckArgs),
    /// Classify a vector as a real root, imaginary root or non-root.
    ClassifyRoot(RootArgs),
    /// Roots of unity making a dimension vector generic over a finite box.
    GenericXi(GenericArgs),
}

#[derive(Args, Debug)]
struct ProblemArgs {
    /// Problem file (JSON).
    #[arg(long)]
    input: PathBuf,
    /// multiplicative | additive (decide-closure); zero | integer (decide-additive).
    #[arg(long)]
    mode: Option<String>,
    /// Maximum number of decompositions to enumerate.
    #[arg(long)]
    limit: Option<usize>,
    /// Write a certificate accepted by check-solution.
    #[arg(long)]
    emit_certificate: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Certificate file (JSON).
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args, Debug)]
struct RootArgs {
    /// Arm weights, e.g. 2,2,2.
    #[arg(long, required_unless_present = "input")]
    weights: Option<String>,
    /// Coordinates in vertex order 0, [1,1], [1,2], ..., e.g. 2,1,1,1.
    #[arg(long, required_unless_present = "input")]
    vector: Option<String>,
    /// JSON file with "weights" and "vector".
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenericArgs {
    #[command(flatten)]
    root: RootArgs,
    /// Upper corner of the checked box, in vertex order (defaults to the vector).
    #[arg(long = "box")]
    box_bound: Option<String>,
    /// Smallest field order to try.
    #[arg(long)]
    hint: Option<u64>,
    /// Seed for the exponent search.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// A finished command: exit code and JSON report.
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

/// Parses arguments, runs the command and renders the report.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_YES };
            return (code, e.to_string());
        }
    };
    let outcome = configure().and_then(|()| execute(cli.command)).unwrap_or_else(error_outcome);
    let mut text = serde_json::to_string_pretty(&outcome.report).expect("JSON values serialize");
    text.push('\n');
    (outcome.code, text)
}

fn configure() -> Result<()> {
    if let Ok(v) = std::env::var(MAX_FIELD_ORDER_ENV) {
        let max = v
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&m| m > 0)
            .ok_or_else(|| Error::Input(format!("{MAX_FIELD_ORDER_ENV}={v} is not a positive integer")))?;
        set_max_field_order(max);
    }
    Ok(())
}

fn error_outcome(e: Error) -> Outcome {
    let kind = match &e {
        Error::Syntax { .. } => "syntax",
        Error::FieldOrderTooLarge { .. } => "field-order",
        Error::Internal(_) => "internal",
        _ => "input",
    };
    Outcome { code: EXIT_INPUT, report: json!({ "error": { "kind": kind, "message": e.to_string() } }) }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_json(path: &Path, v: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v).expect("JSON values serialize");
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))
}

fn code_of(a: Answer) -> i32 {
    match a {
        Answer::Yes => EXIT_YES,
        Answer::No => EXIT_NO,
        Answer::Undecided => EXIT_UNDECIDED,
    }
}

fn execute(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::DecideClosure(a) => decide_closure_cmd(&a),
        Command::DecideRigid(a) => decide_rigid_cmd(&a),
        Command::SolveRigid(a) => solve_rigid_cmd(&a),
        Command::DecideAdditive(a) => decide_additive_cmd(&a),
        Command::CheckSolution(a) => check_solution_cmd(&a.input),
        Command::ClassifyRoot(a) => classify_root_cmd(&a),
        Command::GenericXi(a) => generic_xi_cmd(&a),
    }
}

fn load_problem(a: &ProblemArgs) -> Result<(wire::ProblemFile, Problem)> {
    let file = wire::parse_problem(&read(&a.input)?)?;
    let problem = Problem::new(file.classes.clone())?;
    Ok((file, problem))
}

fn limit_of(a: &ProblemArgs, file: &wire::ProblemFile) -> usize {
    a.limit
        .or_else(|| file.options.get("limit").and_then(Value::as_u64).map(|l| l as usize))
        .unwrap_or(DEFAULT_LIMIT)
}

fn base_report(command: &str, problem: &Problem) -> Value {
    json!({
        "command": command,
        "dimension_vector": wire::dimvec_to_json(problem.alpha()),
        "weights": problem.weights().as_slice(),
    })
}

fn insert(report: &mut Value, key: &str, v: Value) {
    report.as_object_mut().expect("reports are objects").insert(key.into(), v);
}

/// Certificate for a verdict: the construction if any, else the decomposition.
fn verdict_certificate(v: &Verdict, mode: Mode, problem: &Problem) -> Option<Value> {
    if let Some(c) = &v.construction {
        let triples: Vec<_> =
            problem.classes().iter().zip(&c.mats).map(|(class, m)| build_triple(class, m).ok()).collect();
        return Some(wire::solution_certificate(true, problem.classes(), &c.mats, &triples));
    }
    v.decomposition
        .as_ref()
        .map(|d| wire::decomposition_certificate(mode, problem.classes(), &d.roots()))
}

fn emit(path: Option<&PathBuf>, cert: Option<Value>, report: &mut Value) -> Result<()> {
    if let Some(path) = path {
        match cert {
            Some(c) => {
                write_json(path, &c)?;
                insert(report, "certificate", Value::String(path.display().to_string()));
            }
            None => insert(report, "certificate", Value::Null),
        }
    }
    Ok(())
}

fn decide_closure_cmd(a: &ProblemArgs) -> Result<Outcome> {
    let (file, problem) = load_problem(a)?;
    let equation = match &a.mode {
        Some(m) => Equation::parse(m)?,
        None => file.equation,
    };
    let (verdict, mode) = match equation {
        Equation::Multiplicative => (decide_closure_multiplicative(&problem)?, Mode::Multiplicative),
        Equation::Additive => (decide_closure_additive(&problem)?, Mode::AdditiveZero),
    };
    let mut report = base_report("decide-closure", &problem);
    insert(&mut report, "mode", Value::String(equation.name().into()));
    insert(&mut report, "verdict", wire::verdict_to_json(&verdict));
    if a.limit.is_some() {
        let all = enumerate_admissible_decompositions(&problem, mode, limit_of(a, &file))?;
        insert(
            &mut report,
            "decompositions",
            json!({
                "listed": all.decompositions.iter().map(wire::decomposition_to_json).collect::<Vec<_>>(),
                "limit_reached": all.limit_reached,
            }),
        );
    }
    emit(a.emit_certificate.as_ref(), verdict_certificate(&verdict, mode, &problem), &mut report)?;
    Ok(Outcome { code: code_of(verdict.answer), report })
}

fn decide_additive_cmd(a: &ProblemArgs) -> Result<Outcome> {
    let (_, problem) = load_problem(a)?;
    let mode = match a.mode.as_deref() {
        None | Some("zero") => Mode::AdditiveZero,
        Some("integer") => Mode::AdditiveInteger,
        Some(other) => return Err(Error::Input(format!("unknown additive mode \"{other}\" (zero | integer)"))),
    };
    let verdict = if mode == Mode::AdditiveZero {
        decide_closure_additive(&problem)?
    } else {
        let found = enumerate_admissible_decompositions(&problem, mode, 1)?;
        let criterion = "sum of positive roots with integer zeta-bracket, zero on non-strict parts";
        match found.decompositions.into_iter().next() {
            Some(d) => Verdict {
                answer: Answer::Yes,
                criterion: criterion.into(),
                reason: format!("decomposition into {} part(s)", d.parts.len()),
                unconstructed_parts: d.parts.iter().filter(|x| x.class.strict).map(|x| x.root.clone()).collect(),
                decomposition: Some(d),
                construction: None,
            },
            None => Verdict {
                answer: Answer::No,
                criterion: criterion.into(),
                reason: "no admissible decomposition".into(),
                decomposition: None,
                construction: None,
                unconstructed_parts: Vec::new(),
            },
        }
    };
    let mut report = base_report("decide-additive", &problem);
    insert(&mut report, "mode", Value::String(wire::mode_name(mode).into()));
    insert(&mut report, "verdict", wire::verdict_to_json(&verdict));
    emit(a.emit_certificate.as_ref(), verdict_certificate(&verdict, mode, &problem), &mut report)?;
    Ok(Outcome { code: code_of(verdict.answer), report })
}

fn decide_rigid_cmd(a: &ProblemArgs) -> Result<Outcome> {
    let (file, problem) = load_problem(a)?;
    let verdict = decide_rigid(&problem)?;
    let conj = conjecture_condition(&problem, limit_of(a, &file))?;
    let mut report = base_report("decide-rigid", &problem);
    insert(&mut report, "verdict", wire::verdict_to_json(&verdict));
    insert(
        &mut report,
        "conjecture",
        json!({
            "label": "CONJECTURAL",
            "note": "combinatorial condition for irreducible solutions; not a statement about existence",
            "positive_root": conj.positive_root,
            "bracket_one": conj.bracket_one,
            "p": conj.p_alpha,
            "condition": conj.condition().map_or(Value::String("undetermined".into()), Value::Bool),
            "decompositions_checked": conj.decompositions_checked,
            "violating_decomposition": conj.violating.as_ref().map_or(Value::Null, wire::decomposition_to_json),
        }),
    );
    let cert = verdict.decomposition.as_ref().map(|d| {
        wire::decomposition_certificate(Mode::Multiplicative, problem.classes(), &d.roots())
    });
    emit(a.emit_certificate.as_ref(), cert, &mut report)?;
    Ok(Outcome { code: code_of(verdict.answer), report })
}

fn solve_rigid_cmd(a: &ProblemArgs) -> Result<Outcome> {
    let (_, problem) = load_problem(a)?;
    let verdict = decide_rigid(&problem)?;
    let mut report = base_report("solve-rigid", &problem);
    insert(&mut report, "verdict", wire::verdict_to_json(&verdict));
    if verdict.answer != Answer::Yes {
        emit(a.emit_certificate.as_ref(), None, &mut report)?;
        return Ok(Outcome { code: EXIT_NO, report });
    }
    let rep = construct_rigid(&problem, VertexOrder::CenterFirst)?;
    insert(&mut report, "matrices", Value::Array(rep.mats().iter().map(wire::matrix_to_json).collect()));
    insert(&mut report, "p", json!(p_form(problem.weights(), problem.alpha())?));
    let cert = wire::solution_certificate(false, problem.classes(), rep.mats(), &[]);
    emit(a.emit_certificate.as_ref(), Some(cert), &mut report)?;
    Ok(Outcome { code: EXIT_YES, report })
}

fn check_solution_cmd(path: &Path) -> Result<Outcome> {
    let cert = wire::parse_certificate(&read(path)?)?;
    let mut failures: Vec<String> = Vec::new();
    let mut report = json!({ "command": "check-solution" });
    match cert {
        Certificate::Solution { closure, classes, matrices, triples } => {
            let problem = Problem::new(classes)?;
            let mode = if closure { VerifyMode::Closure } else { VerifyMode::Exact };
            let r = verify_solution(&matrices, &problem, mode)?;
            failures.extend(r.failures);
            for (i, t) in triples.iter().enumerate() {
                let Some(t) = t else { continue };
                let (Some(class), Some(m)) = (problem.classes().get(i), matrices.get(i)) else {
                    failures.push(format!("triple {} has no matching class", i + 1));
                    continue;
                };
                let consistent = t.xi == class.eigenvalues && t.dims[..t.dims.len().saturating_sub(1)] == class.dims[..];
                if !consistent || !verify_triple(t, m, &class.eigenvalues)? {
                    failures.push(format!("triple certificate for A_{} does not verify", i + 1));
                }
            }
            insert(&mut report, "kind", json!("solution"));
            insert(&mut report, "check", json!(if closure { "closure" } else { "exact" }));
            insert(&mut report, "product_is_identity", json!(r.product_is_identity));
            insert(&mut report, "class_ok", json!(r.class_ok));
        }
        Certificate::Decomposition { mode, classes, parts } => {
            let problem = Problem::new(classes)?;
            let w = problem.weights();
            let additive = match mode {
                Mode::Multiplicative => None,
                _ => Some(problem.additive_type()?),
            };
            let mut sum = DimVector::zero(w);
            for (i, part) in parts.iter().enumerate() {
                part.check_shape(w)?;
                sum = sum.add(part);
                let positive_root = part.is_nonnegative() && !part.is_zero() && classify(w, part)?.is_positive_root();
                if !positive_root {
                    failures.push(format!("part {} is not a positive root", i + 1));
                    continue;
                }
                let ok = match (&additive, mode) {
                    (None, _) => xi_bracket(problem.type_data(), part)?.is_one(),
                    (Some(t), Mode::AdditiveInteger) if part.is_strict() => zeta_star(t, part)?.is_integer(),
                    (Some(t), _) => num_traits::Zero::is_zero(&zeta_star(t, part)?),
                };
                if !ok {
                    failures.push(format!("part {} does not satisfy the bracket condition", i + 1));
                }
            }
            if &sum != problem.alpha() {
                failures.push(format!("parts sum to {sum}, not {}", problem.alpha()));
            }
            insert(&mut report, "kind", json!("decomposition"));
            insert(&mut report, "mode", json!(wire::mode_name(mode)));
        }
    }
    let ok = failures.is_empty();
    insert(&mut report, "valid", json!(ok));
    insert(&mut report, "first_failure", failures.first().map_or(Value::Null, |f| json!(f)));
    insert(&mut report, "failures", json!(failures));
    Ok(Outcome { code: if ok { EXIT_YES } else { EXIT_NO }, report })
}

fn root_input(a: &RootArgs) -> Result<(Weights, DimVector, Option<Value>)> {
    let (weights, flat, extra) = match &a.input {
        Some(path) => {
            let v = wire::parse_json(&read(path)?)?;
            let weights: Vec<i64> = v
                .get("weights")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Input("$.weights: expected an array".into()))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| Error::Input("$.weights: expected integers".into())))
                .collect::<Result<_>>()?;
            let w = to_weights(&weights)?;
            let vec_v = v.get("vector").ok_or_else(|| Error::Input("$: missing field \"vector\"".into()))?;
            let flat = match vec_v {
                Value::Array(xs) => xs
                    .iter()
                    .map(|x| x.as_i64().ok_or_else(|| Error::Input("$.vector: expected integers".into())))
                    .collect::<Result<Vec<_>>>()?,
                _ => wire::dimvec_from_json(vec_v, "$.vector")?.flat(),
            };
            (w, flat, v.get("box").cloned())
        }
        None => {
            let w = to_weights(&wire::parse_int_list(a.weights.as_deref().unwrap_or_default())?)?;
            (w, wire::parse_int_list(a.vector.as_deref().unwrap_or_default())?, None)
        }
    };
    let vector = DimVector::from_flat(&weights, &flat)?;
    Ok((weights, vector, extra))
}

fn to_weights(xs: &[i64]) -> Result<Weights> {
    let w = xs
        .iter()
        .map(|&x| usize::try_from(x).map_err(|_| Error::Input(format!("weight {x} is negative"))))
        .collect::<Result<Vec<_>>>()?;
    Weights::new(w)
}

fn classify_root_cmd(a: &RootArgs) -> Result<Outcome> {
    let (w, vector, _) = root_input(a)?;
    let class = classify(&w, &vector)?;
    let report = json!({
        "command": "classify-root",
        "weights": w.as_slice(),
        "vector": wire::dimvec_to_json(&vector),
        "classification": wire::root_class_to_json(&class),
        "q": q_form(&w, &vector)?,
        "p": p_form(&w, &vector)?,
    });
    Ok(Outcome { code: if class.is_root() { EXIT_YES } else { EXIT_NO }, report })
}

fn generic_xi_cmd(a: &GenericArgs) -> Result<Outcome> {
    let (w, vector, file_box) = root_input(&a.root)?;
    let box_bound = match (&a.box_bound, file_box) {
        (Some(b), _) => DimVector::from_flat(&w, &wire::parse_int_list(b)?)?,
        (None, Some(Value::Array(xs))) => DimVector::from_flat(
            &w,
            &xs.iter()
                .map(|x| x.as_i64().ok_or_else(|| Error::Input("$.box: expected integers".into())))
                .collect::<Result<Vec<_>>>()?,
        )?,
        (None, Some(v)) => wire::dimvec_from_json(&v, "$.box")?,
        (None, None) => vector.clone(),
    };
    let g = match generic_xi(&w, &vector, &box_bound, a.hint, a.seed) {
        Ok(g) => g,
        Err(e @ Error::FieldOrderTooLarge { .. }) => {
            return Ok(Outcome {
                code: EXIT_UNDECIDED,
                report: json!({ "command": "generic-xi", "error": { "kind": "field-order", "message": e.to_string() } }),
            })
        }
        Err(e) => return Err(e),
    };
    let report = json!({
        "command": "generic-xi",
        "weights": w.as_slice(),
        "vector": wire::dimvec_to_json(&vector),
        "order": g.order,
        "exponents": g.exponents,
        "eigenvalues": g.t.rows.iter().map(|r| r.iter().map(wire::scalar_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "proof": {
            "box": wire::dimvec_to_json(&g.box_bound),
            "points_checked": g.points_checked,
            "multiples_in_box": g.multiples_in_box.iter().map(wire::dimvec_to_json).collect::<Vec<_>>(),
            "scope": "bracket equals 1 exactly at multiples of the vector, checked at every point of the box only",
        },
    });
    Ok(Outcome { code: EXIT_YES, report })
}
