//! The `lcr` command line.
//!
//! Every subcommand prints one JSON object with a `"status"` field on
//! standard output (or a short text report with `--pretty`) and exits with:
//! 0 success or holds, 1 fails or countermodel found, 2 usage error,
//! 3 malformed input, 4 search budget exhausted.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::parser::{parse, parse_corpus, print, ParseError};
use crate::proof::{check_derivation, DerivationDoc};
use crate::search::{
    check_preservation, countermodel_search, falsifying_assignment, filtrate, random_fid_model,
    random_model, SearchBounds, SearchError, SearchOutcome,
};
use crate::semantics::{check_fid, eval, extension, KripkeModel, ModelDoc};
use crate::syntax::{is_subformula_closed, subformula_closure, Formula};
use crate::truth::TruthValue;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MALFORMED: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "lcr", version, about = "Łukasiewicz m-valued conditional logic toolkit")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a formula, print its tree and check that printing round-trips.
    Parse {
        #[arg(long)]
        formula: String,
    },
    /// Truth-table check of the propositional base.
    Taut {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        formula: String,
        /// Treat each maximal conditional subformula as an atom.
        #[arg(long)]
        abstract_conditionals: bool,
    },
    /// Value of a formula at one world of a model.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        world: String,
        #[arg(long)]
        formula: String,
    },
    /// Whether a formula is 1 at every world of a model.
    Valid {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Whether every world satisfying all of sigma satisfies the formula.
    Entails {
        #[arg(long)]
        model: PathBuf,
        /// File with one formula per line; `#` starts a comment.
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Bounded countermodel search.
    Search {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        max_worlds: usize,
        #[arg(long)]
        formula: String,
        /// Only enumerate models satisfying fid.
        #[arg(long)]
        fid: bool,
        /// Comma-separated relation numerators to enumerate, e.g. `0,2`.
        #[arg(long, value_delimiter = ',')]
        values: Option<Vec<u32>>,
        /// Maximum number of candidate models to evaluate.
        #[arg(long)]
        budget: Option<u64>,
        /// Enumerate on one thread.
        #[arg(long)]
        serial: bool,
    },
    /// Filtrate a model through a subformula-closed set and check preservation.
    Filtrate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Use the subformula closure of the listed formulas.
        #[arg(long)]
        close: bool,
    },
    /// Check the fid condition on every stored relation.
    FidCheck {
        #[arg(long)]
        model: PathBuf,
    },
    /// Check a derivation file.
    Proofcheck {
        #[arg(long)]
        file: PathBuf,
        /// Formula the last line must equal; defaults to the file's `goal`.
        #[arg(long)]
        goal: Option<String>,
    },
    /// Write a seeded random model.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        worlds: usize,
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        /// Extra random partitions to store relations for.
        #[arg(long, default_value_t = 0)]
        extra: usize,
        /// Draw relations satisfying fid.
        #[arg(long)]
        fid: bool,
    },
}

/// A finished command: exit code, JSON body and text rendering.
struct Report {
    code: i32,
    json: Value,
    text: String,
}

impl Report {
    fn new(code: i32, status: &str, fields: Value, text: String) -> Report {
        let mut obj = Map::new();
        obj.insert("status".into(), json!(status));
        if let Value::Object(rest) = fields {
            obj.extend(rest);
        }
        Report {
            code,
            json: Value::Object(obj),
            text,
        }
    }
}

/// A failure before a command could produce its result.
struct Failure {
    code: i32,
    message: String,
}

fn malformed(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_MALFORMED,
        message: message.into(),
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let pretty = cli.pretty;
    let report = match dispatch(cli.command) {
        Ok(r) => r,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            Report::new(
                f.code,
                "error",
                json!({ "error": f.message }),
                format!("error: {}", f.message),
            )
        }
    };
    let _ = if pretty {
        writeln!(out, "{}", report.text)
    } else {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&report.json).expect("report serializes")
        )
    };
    report.code
}

fn dispatch(cmd: Command) -> Result<Report, Failure> {
    match cmd {
        Command::Parse { formula } => cmd_parse(&formula),
        Command::Taut {
            m,
            formula,
            abstract_conditionals,
        } => cmd_taut(m, &formula, abstract_conditionals),
        Command::Eval {
            model,
            world,
            formula,
        } => cmd_eval(&model, &world, &formula),
        Command::Valid { model, formula } => cmd_valid(&model, &formula),
        Command::Entails {
            model,
            sigma,
            formula,
        } => cmd_entails(&model, &sigma, &formula),
        Command::Search {
            m,
            max_worlds,
            formula,
            fid,
            values,
            budget,
            serial,
        } => {
            let mut bounds = SearchBounds::new(max_worlds);
            bounds.relation_values = values;
            bounds.budget = budget;
            bounds.parallel = !serial;
            cmd_search(m, &formula, &bounds, fid)
        }
        Command::Filtrate {
            model,
            sigma,
            out,
            close,
        } => cmd_filtrate(&model, &sigma, &out, close),
        Command::FidCheck { model } => cmd_fid_check(&model),
        Command::Proofcheck { file, goal } => cmd_proofcheck(&file, goal.as_deref()),
        Command::Gen {
            seed,
            m,
            worlds,
            vars,
            out,
            extra,
            fid,
        } => cmd_gen(seed, m, worlds, &vars, &out, extra, fid),
    }
}

fn parse_formula(text: &str) -> Result<Formula, Failure> {
    parse(text).map_err(|e| parse_failure(text, &e))
}

fn parse_failure(text: &str, e: &ParseError) -> Failure {
    malformed(format!("cannot parse `{text}`: {e}"))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| malformed(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| malformed(format!("cannot write {}: {e}", path.display())))
}

fn load_model(path: &Path) -> Result<KripkeModel, Failure> {
    let text = read(path)?;
    let model = KripkeModel::from_json(&text).map_err(|e| malformed(format!("{}: {e}", path.display())))?;
    let diags = model.validate();
    if !diags.is_empty() {
        let list: Vec<String> = diags.iter().map(|d| d.to_string()).collect();
        return Err(malformed(format!("{}: {}", path.display(), list.join("; "))));
    }
    Ok(model)
}

fn load_corpus(path: &Path) -> Result<Vec<Formula>, Failure> {
    let text = read(path)?;
    parse_corpus(&text)
        .map(|v| v.into_iter().map(|(_, f)| f).collect())
        .map_err(|(line, e)| malformed(format!("{}:{line}: {e}", path.display())))
}

fn tv_json(v: TruthValue) -> Value {
    json!(v.reduced())
}

fn ast(f: &Formula) -> Value {
    let op = match f {
        Formula::Var(name) => return json!({ "var": name }),
        Formula::Top => return json!({ "const": "T" }),
        Formula::Bot => return json!({ "const": "F" }),
        Formula::J(i, a) => return json!({ "op": "J", "index": i.to_string(), "args": [ast(a)] }),
        Formula::I(i, a) => return json!({ "op": "I", "index": i.to_string(), "args": [ast(a)] }),
        Formula::Not(_) => "not",
        Formula::Imp(..) => "imp",
        Formula::Cond(..) => "cond",
        Formula::And(..) => "and",
        Formula::Or(..) => "or",
        Formula::OPlus(..) => "oplus",
        Formula::OTimes(..) => "otimes",
        Formula::OMinus(..) => "ominus",
        Formula::Iff(..) => "iff",
    };
    json!({ "op": op, "args": f.children().into_iter().map(ast).collect::<Vec<_>>() })
}

fn cmd_parse(text: &str) -> Result<Report, Failure> {
    let f = parse_formula(text)?;
    let printed = print(&f);
    let round_trip = parse(&printed).map(|g| g == f).unwrap_or(false);
    let code = if round_trip { EXIT_OK } else { EXIT_FAILS };
    Ok(Report::new(
        code,
        if round_trip { "ok" } else { "round_trip_failed" },
        json!({ "formula": printed, "round_trip": round_trip, "ast": ast(&f) }),
        format!("{printed}\nround trip: {}", if round_trip { "ok" } else { "FAILED" }),
    ))
}

fn cmd_taut(m: u32, text: &str, abstract_conditionals: bool) -> Result<Report, Failure> {
    if m < 2 {
        return Err(usage(format!("--m must be at least 2, got {m}")));
    }
    let f = parse_formula(text)?;
    match falsifying_assignment(&f, m, abstract_conditionals) {
        Ok(None) => Ok(Report::new(
            EXIT_OK,
            "holds",
            json!({ "m": m, "formula": print(&f) }),
            format!("{} is a tautology at m = {m}", print(&f)),
        )),
        Ok(Some(w)) => {
            let mut witness = Map::new();
            for (atom, v) in &w {
                witness.insert(print(atom), tv_json(*v));
            }
            let text = w
                .iter()
                .map(|(a, v)| format!("{} = {}", print(a), v.reduced()))
                .collect::<Vec<_>>()
                .join(", ");
            Ok(Report::new(
                EXIT_FAILS,
                "fails",
                json!({ "m": m, "formula": print(&f), "witness": witness }),
                format!("{} fails at m = {m} under {text}", print(&f)),
            ))
        }
        Err(e) => Err(malformed(e.to_string())),
    }
}

fn cmd_eval(model: &Path, world: &str, text: &str) -> Result<Report, Failure> {
    let model = load_model(model)?;
    let f = parse_formula(text)?;
    let v = eval(&model, world, &f).map_err(|e| malformed(e.to_string()))?;
    Ok(Report::new(
        EXIT_OK,
        "ok",
        json!({ "world": world, "formula": print(&f), "value": tv_json(v), "numerator": v.numerator() }),
        format!("{} = {} at {world}", print(&f), v.reduced()),
    ))
}

fn cmd_valid(model: &Path, text: &str) -> Result<Report, Failure> {
    let model = load_model(model)?;
    let f = parse_formula(text)?;
    let ext = extension(&model, &f).map_err(|e| malformed(e.to_string()))?;
    let failing: Vec<Value> = ext
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_one())
        .map(|(w, v)| json!({ "world": model.worlds()[w], "value": tv_json(*v) }))
        .collect();
    let holds = failing.is_empty();
    Ok(Report::new(
        if holds { EXIT_OK } else { EXIT_FAILS },
        if holds { "holds" } else { "fails" },
        json!({ "formula": print(&f), "failing_worlds": failing }),
        if holds {
            format!("{} is valid in the model", print(&f))
        } else {
            format!("{} fails at {} world(s)", print(&f), failing.len())
        },
    ))
}

fn cmd_entails(model: &Path, sigma: &Path, text: &str) -> Result<Report, Failure> {
    let model = load_model(model)?;
    let sigma = load_corpus(sigma)?;
    let f = parse_formula(text)?;
    let premises = sigma
        .iter()
        .map(|s| extension(&model, s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| malformed(e.to_string()))?;
    let concl = extension(&model, &f).map_err(|e| malformed(e.to_string()))?;
    let counter: Vec<&String> = (0..model.world_count())
        .filter(|&w| premises.iter().all(|p| p[w].is_one()) && !concl[w].is_one())
        .map(|w| &model.worlds()[w])
        .collect();
    let holds = counter.is_empty();
    Ok(Report::new(
        if holds { EXIT_OK } else { EXIT_FAILS },
        if holds { "holds" } else { "fails" },
        json!({ "formula": print(&f), "counter_worlds": counter }),
        if holds {
            "entailment holds in the model".to_string()
        } else {
            format!("entailment fails at {}", counter.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(", "))
        },
    ))
}

fn cmd_search(m: u32, text: &str, bounds: &SearchBounds, fid: bool) -> Result<Report, Failure> {
    let f = parse_formula(text)?;
    match countermodel_search(&f, m, bounds, fid) {
        Ok(SearchOutcome::Found(cm)) => {
            let world = cm.model.worlds()[cm.world].clone();
            let doc = serde_json::to_value(ModelDoc::from_model(&cm.model)).expect("model serializes");
            let mut fields = doc.as_object().cloned().expect("object");
            fields.insert("witness_world".into(), json!(world));
            fields.insert("value".into(), tv_json(cm.value));
            fields.insert("candidate".into(), json!(cm.candidate));
            Ok(Report::new(
                EXIT_FAILS,
                "countermodel",
                Value::Object(fields),
                format!(
                    "countermodel found (candidate {}): {} = {} at {world}\n{}",
                    cm.candidate,
                    print(&f),
                    cm.value.reduced(),
                    cm.model.to_json()
                ),
            ))
        }
        Ok(SearchOutcome::NoneWithinBounds { candidates }) => Ok(Report::new(
            EXIT_OK,
            "none_within_bounds",
            json!({ "candidates": candidates, "max_worlds": bounds.max_worlds }),
            format!(
                "no countermodel with at most {} world(s) ({candidates} candidates); not a validity proof",
                bounds.max_worlds
            ),
        )),
        Err(SearchError::BudgetExhausted { candidates }) => Ok(Report::new(
            EXIT_BUDGET,
            "budget_exhausted",
            json!({ "candidates": candidates }),
            format!("budget exhausted after {candidates} candidates"),
        )),
        Err(e @ SearchError::InvalidBounds(_)) => Err(usage(e.to_string())),
        Err(e) => Err(malformed(e.to_string())),
    }
}

fn cmd_filtrate(model_path: &Path, sigma: &Path, out: &Path, close: bool) -> Result<Report, Failure> {
    let model = load_model(model_path)?;
    let mut sigma = load_corpus(sigma)?;
    if close {
        let mut all = indexmap::IndexSet::new();
        for f in &sigma {
            all.extend(subformula_closure(f));
        }
        sigma = all.into_iter().collect();
    } else if !is_subformula_closed(&sigma) {
        return Err(malformed("sigma is not closed under subformulas (use --close)"));
    }
    let filt = filtrate(&model, &sigma).map_err(|e| malformed(e.to_string()))?;
    let report = check_preservation(&model, &filt.model, &filt.class_of, &sigma)
        .map_err(|e| malformed(e.to_string()))?;
    let class_map: Map<String, Value> = filt
        .class_map(&model)
        .into_iter()
        .map(|(w, c)| (w, json!(c)))
        .collect();
    let mut doc = serde_json::to_value(ModelDoc::from_model(&filt.model)).expect("model serializes");
    doc.as_object_mut()
        .expect("object")
        .insert("class_map".into(), Value::Object(class_map.clone()));
    write_file(out, &(serde_json::to_string_pretty(&doc).expect("serializes") + "\n"))?;
    let bound = (model.m() as f64).powi(sigma.len() as i32);
    let discrepancies: Vec<Value> = report
        .iter()
        .map(|d| {
            json!({
                "formula": print(&d.formula),
                "world": d.world,
                "original": tv_json(d.original),
                "filtered": tv_json(d.filtered),
            })
        })
        .collect();
    let ok = discrepancies.is_empty();
    Ok(Report::new(
        if ok { EXIT_OK } else { EXIT_FAILS },
        if ok { "preserved" } else { "discrepancies" },
        json!({
            "out": out.display().to_string(),
            "worlds": model.world_count(),
            "classes": filt.model.world_count(),
            "sigma_size": sigma.len(),
            "size_bound": bound,
            "class_map": class_map,
            "discrepancies": discrepancies,
        }),
        format!(
            "{} worlds -> {} classes (bound m^|Σ| = {bound}); {} discrepancies; written to {}",
            model.world_count(),
            filt.model.world_count(),
            report.len(),
            out.display()
        ),
    ))
}

fn cmd_fid_check(path: &Path) -> Result<Report, Failure> {
    let model = load_model(path)?;
    let violations = check_fid(&model);
    let list: Vec<Value> = violations
        .iter()
        .map(|v| {
            json!({
                "relation": v.relation,
                "from": model.worlds()[v.from],
                "to": model.worlds()[v.to],
                "degree": v.degree,
                "cell": v.cell,
            })
        })
        .collect();
    let ok = list.is_empty();
    Ok(Report::new(
        if ok { EXIT_OK } else { EXIT_FAILS },
        if ok { "holds" } else { "fails" },
        json!({ "violations": list }),
        if ok {
            "fid holds".to_string()
        } else {
            format!("fid fails at {} entries", list.len())
        },
    ))
}

fn cmd_proofcheck(path: &Path, goal: Option<&str>) -> Result<Report, Failure> {
    let text = read(path)?;
    let doc = DerivationDoc::from_json(&text).map_err(|e| malformed(e.to_string()))?;
    let d = doc.to_derivation().map_err(|e| malformed(e.to_string()))?;
    let goal = match goal {
        Some(g) => parse_formula(g)?,
        None => doc
            .goal()
            .map_err(|e| malformed(e.to_string()))?
            .ok_or_else(|| usage("no --goal given and the file has no goal"))?,
    };
    match check_derivation(&d, &goal) {
        Ok(()) => Ok(Report::new(
            EXIT_OK,
            "accepted",
            json!({ "lines": d.lines.len(), "goal": print(&goal) }),
            format!("accepted: {} lines derive {}", d.lines.len(), print(&goal)),
        )),
        Err(e) => Ok(Report::new(
            EXIT_FAILS,
            "rejected",
            json!({ "line": e.line, "rule": e.rule, "message": e.kind.to_string() }),
            format!("rejected: {e}"),
        )),
    }
}

fn cmd_gen(
    seed: u64,
    m: u32,
    worlds: usize,
    vars: &[String],
    out: &Path,
    extra: usize,
    fid: bool,
) -> Result<Report, Failure> {
    if m < 2 || worlds == 0 {
        return Err(usage("--m must be at least 2 and --worlds at least 1"));
    }
    if let Some(bad) = vars.iter().find(|v| !matches!(parse(v), Ok(Formula::Var(_)))) {
        return Err(usage(format!("`{bad}` is not a variable name")));
    }
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let model = if fid {
        random_fid_model(seed, m, worlds, &names, extra)
    } else {
        random_model(seed, m, worlds, &names, extra)
    };
    write_file(out, &(model.to_json() + "\n"))?;
    Ok(Report::new(
        EXIT_OK,
        "ok",
        json!({ "out": out.display().to_string(), "worlds": worlds, "relations": model.relations().len() }),
        format!("wrote {}", out.display()),
    ))
}
