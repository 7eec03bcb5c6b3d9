use std::fmt;
use std::path::Path;

use ncreal::calculus::{
    delta_block, delta_closed_form, lla_check, lla_check_extended, tt_coefficient, tt_series_eval,
    tt_series_eval_bruteforce, LlaCertified, Word,
};
use ncreal::expr::{equivalence_check, eval_expr, Verdict};
use ncreal::io::{lla_report_to_json, mat_from_json, mat_to_json, point_from_json, point_to_json, realization_from_json, realization_to_json};
use ncreal::selftest::run_selftest;
use ncreal::synthesis::{compile, find_similarity, minimize, realize_expr};
use ncreal::{parse, Error, MatTuple, QExpr, QMat, QPoint, QRealization, Rat};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::output::{json_text, mat_out, mat_text};
use crate::{Cli, Command, Format, Source};

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 3,
            CliError::Lib(e) => match e {
                Error::Domain { .. }
                | Error::CentreSingular { .. }
                | Error::SingularPencil
                | Error::AlgebraSingular
                | Error::NotNilpotent
                | Error::Singular => 2,
                Error::ScalarStructureViolation | Error::LlaViolation => 1,
                Error::Shape(_) | Error::Parse { .. } | Error::LevelMismatch { .. } | Error::Arity { .. } | Error::Input(_) => 3,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }

    fn verdict(text: String, pass: bool) -> Self {
        Output { text, code: if pass { 0 } else { 1 } }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Io(format!("{} is not valid JSON: {e}", path.display())))
}

fn read_point(path: &Path) -> CliResult<QPoint> {
    Ok(point_from_json(&read_json(path)?)?)
}

fn read_list<T>(path: &Path, what: &str, f: impl Fn(&Value) -> ncreal::Result<T>) -> CliResult<Vec<T>> {
    let v = read_json(path)?;
    let items = v.as_array().ok_or_else(|| CliError::Io(format!("{} must hold a JSON array of {what}", path.display())))?;
    Ok(items.iter().map(f).collect::<ncreal::Result<Vec<_>>>()?)
}

fn read_realization(path: &Path) -> CliResult<QRealization> {
    Ok(realization_from_json(&read_json(path)?)?)
}

fn parse_expr(text: &str) -> CliResult<QExpr> {
    Ok(parse(text)?)
}

enum Func {
    Expr(QExpr),
    Real(QRealization),
}

impl Func {
    fn load(src: &Source) -> CliResult<Self> {
        match (&src.expr, &src.realization, &src.centre) {
            (Some(e), None, None) => Ok(Func::Expr(parse_expr(e)?)),
            (Some(e), None, Some(c)) => Ok(Func::Real(realize_expr(&parse_expr(e)?, &read_point(c)?)?)),
            (None, Some(r), None) => Ok(Func::Real(read_realization(r)?)),
            _ => Err(CliError::Io("give either --expr (optionally with --centre) or --realization".into())),
        }
    }

    fn eval(&self, x: &QPoint) -> ncreal::Result<QMat> {
        match self {
            Func::Expr(e) => eval_expr(e, x),
            Func::Real(r) if x.level().is_multiple_of(r.s()) => r.eval(x),
            Func::Real(r) => r.eval_at_level_n(x),
        }
    }

    fn realization(&self) -> CliResult<&QRealization> {
        match self {
            Func::Real(r) => Ok(r),
            Func::Expr(_) => Err(CliError::Io("this command needs --realization, or --expr with --centre".into())),
        }
    }
}

fn seeded(cli: &Cli) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cli.run.seed)
}

pub fn run(cli: &Cli) -> CliResult<Output> {
    let format = cli.run.format;
    match &cli.command {
        Command::Eval { source, point } => {
            let value = Func::load(source)?.eval(&read_point(point)?)?;
            Ok(Output::ok(mat_out(&value, format)))
        }
        Command::Realize { expr, centre, no_minimize } => {
            let e = parse_expr(expr)?;
            let y = read_point(centre)?;
            let r = if *no_minimize { compile(&e, &y)? } else { realize_expr(&e, &y)? };
            Ok(Output::ok(json_text(&realization_to_json(&r))))
        }
        Command::Minimize { realization } => {
            let r = minimize(&read_realization(realization)?);
            Ok(Output::ok(json_text(&realization_to_json(&r))))
        }
        Command::Similar { first, second } => {
            let (r1, r2) = (read_realization(first)?, read_realization(second)?);
            let t = find_similarity(&r1, &r2);
            let text = match (format, &t) {
                (Format::Json, _) => json_text(&json!({ "similar": t.is_some(), "T": t.as_ref().map(mat_to_json) })),
                (Format::Text, Some(t)) => format!("similar: true\n{}", mat_text(t)),
                (Format::Text, None) => "similar: false\n".into(),
            };
            Ok(Output::verdict(text, t.is_some()))
        }
        Command::CheckLla { realization, extended } => {
            let r = read_realization(realization)?;
            let basis = lla_check(&r);
            let mut pass = basis.pass();
            let mut doc = json!({ "seed": cli.run.seed, "basis": lla_report_to_json(&basis, r.s()) });
            if let Some(nm) = extended {
                let rep = lla_check_extended(&r, nm[0], nm[1], cli.run.trials, cli.run.bound, &mut seeded(cli))?;
                pass &= rep.pass();
                doc["extended"] = lla_report_to_json(&rep, r.s());
                doc["extended"]["levels"] = json!(nm);
            }
            doc["pass"] = json!(pass);
            let text = match format {
                Format::Json => json_text(&doc),
                Format::Text => {
                    let mut t = format!("seed: {}\npass: {pass}\n{}\n", cli.run.seed, basis.interpretation());
                    for v in &basis.violations {
                        t += &format!("violation ({}) at {}\n{}", v.equation, doc_witness(&v.witness, r.s()), mat_text(&v.residual));
                    }
                    if let Some(ext) = doc.get("extended") {
                        t += &format!("extended check pass: {}\n", ext["pass"]);
                    }
                    t
                }
            };
            Ok(Output::verdict(text, pass))
        }
        Command::Domain { source, point } => {
            let f = Func::load(source)?;
            let x = read_point(point)?;
            let inside = match &f {
                Func::Expr(e) => match eval_expr(e, &x) {
                    Ok(_) => true,
                    Err(Error::Domain { .. }) => false,
                    Err(e) => return Err(e.into()),
                },
                Func::Real(r) if x.level() % r.s() == 0 => r.in_domain(&x)?,
                Func::Real(r) => r.in_domain_at_level_n(&x)?,
            };
            let text = match format {
                Format::Json => json_text(&json!({ "in_domain": inside })),
                Format::Text => format!("in-domain: {inside}\n"),
            };
            Ok(Output::ok(text))
        }
        Command::Taylor { source, word, dirs, point } => {
            let f = Func::load(source)?;
            let r = f.realization()?;
            match (word, dirs, point) {
                (Some(w), Some(dirs), None) => {
                    let w = Word::parse(w)?;
                    let z = read_list(dirs, "matrices", mat_from_json)?;
                    Ok(Output::ok(mat_out(&tt_coefficient(r, &w, &z)?, format)))
                }
                (None, None, Some(p)) => {
                    let x = read_point(p)?;
                    let series = tt_series_eval(r, &x)?;
                    let agree = tt_series_eval_bruteforce(r, &x)? == series && r.eval(&x)? == series;
                    let text = match format {
                        Format::Json => json_text(&json!({ "value": mat_to_json(&series), "oracles_agree": agree })),
                        Format::Text => format!("{}oracles agree: {agree}\n", mat_text(&series)),
                    };
                    Ok(Output::verdict(text, agree))
                }
                _ => Err(CliError::Io("give --word with --dirs, or --point".into())),
            }
        }
        Command::Derive { source, word, points, dirs } => {
            let f = Func::load(source)?;
            let w = Word::parse(word)?;
            let pts = read_list(points, "points", point_from_json)?;
            let z = read_list(dirs, "matrices", mat_from_json)?;
            let value = delta_block(|p| f.eval(p), &w, &pts, &z)?;
            let closed = match &f {
                Func::Real(r) if closed_form_applies(r, &pts) => match LlaCertified::certify(r) {
                    Ok(cert) => Some(delta_closed_form(&cert, &w, &pts[0], &z)? == value),
                    Err(_) => None,
                },
                _ => None,
            };
            let pass = closed != Some(false);
            let text = match format {
                Format::Json => json_text(&json!({ "value": mat_to_json(&value), "closed_form_agrees": closed })),
                Format::Text => {
                    let mut t = mat_text(&value);
                    if let Some(c) = closed {
                        t += &format!("closed form agrees: {c}\n");
                    }
                    t
                }
            };
            Ok(Output::verdict(text, pass))
        }
        Command::Equiv { first, second } => {
            let (e1, e2) = (parse_expr(first)?, parse_expr(second)?);
            let verdict = equivalence_check(&e1, &e2, cli.run.trials, &cli.run.levels, cli.run.bound, &mut seeded(cli))?;
            let (doc, text, pass) = match &verdict {
                Verdict::NoCounterexample { compared, skipped } => (
                    json!({ "seed": cli.run.seed, "counterexample": false, "compared": compared, "skipped": skipped }),
                    format!("seed: {}\nno counterexample ({compared} points compared, {skipped} outside a domain)\n", cli.run.seed),
                    true,
                ),
                Verdict::Counterexample { level, point, left, right } => (
                    json!({
                        "seed": cli.run.seed, "counterexample": true, "level": level,
                        "point": point_to_json(point), "left": mat_to_json(left), "right": mat_to_json(right),
                    }),
                    format!(
                        "seed: {}\ncounterexample at level {level}\npoint:\n{}left:\n{}right:\n{}",
                        cli.run.seed,
                        point.mats().iter().map(mat_text).collect::<Vec<_>>().join("--\n"),
                        mat_text(left),
                        mat_text(right)
                    ),
                    false,
                ),
            };
            Ok(Output::verdict(if format == Format::Json { json_text(&doc) } else { text }, pass))
        }
        Command::Selftest => {
            let rep = run_selftest(cli.run.seed, cli.run.trials, cli.run.jobs);
            let text = match format {
                Format::Json => json_text(&json!({
                    "seed": rep.seed,
                    "trials": rep.trials,
                    "pass": rep.pass(),
                    "checks": rep.checks.iter().map(|c| json!({
                        "name": c.name, "passed": c.passed, "skipped": c.skipped, "failures": c.failures,
                    })).collect::<Vec<_>>(),
                })),
                Format::Text => rep.to_string(),
            };
            Ok(Output::verdict(text, rep.pass()))
        }
    }
}

fn closed_form_applies(r: &QRealization, pts: &[MatTuple<Rat>]) -> bool {
    let Some(first) = pts.first() else { return false };
    if first.level() % r.s() != 0 {
        return false;
    }
    let centre = r.centre().kron_identity(first.level() / r.s());
    pts[1..].iter().all(|p| *p == centre)
}

fn doc_witness(w: &ncreal::calculus::LlaWitness, s: usize) -> String {
    use ncreal::calculus::{unit_label, LlaWitness};
    let unit = |u: &Option<usize>| u.map(|u| unit_label(u, s));
    match w {
        LlaWitness::Basis { s: su, z1, z2, i1, i2 } => {
            let mut parts = vec![format!("S={}", unit_label(*su, s))];
            parts.extend(unit(z1).map(|u| format!("Z1={u}")));
            parts.extend(unit(z2).map(|u| format!("Z2={u}")));
            parts.extend(i1.map(|i| format!("i1={i}")));
            parts.extend(i2.map(|i| format!("i2={i}")));
            parts.join(" ")
        }
        LlaWitness::Trial { trial, i1, i2 } => {
            let mut parts = vec![format!("trial {trial}")];
            parts.extend(i1.map(|i| format!("i1={i}")));
            parts.extend(i2.map(|i| format!("i2={i}")));
            parts.join(" ")
        }
    }
}
