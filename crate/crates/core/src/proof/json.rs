//! The derivation file format.
//!
//! ```json
//! { "m": 3, "premises": [],
//!   "lines": [
//!     { "formula": "q & r <-> r & q", "rule": "LTaut" },
//!     { "formula": "(p => q & r) <-> (p => r & q)", "rule": "RCEC", "args": { "line": 1 } } ] }
//! ```
//!
//! Rule arguments: `Premise {"index"}`, `MP {"lines": [i, j]}`,
//! `RCEA`/`RCEC {"line"}`, `Ra {"a", "phi", "gammas", "gamma", "lines"}`,
//! `RaGen {"a", "a_list", "phi", "chis", "chi", "lines"}`. Indices are
//! strings such as `"1/2"`. `A1`, `A2`, `A3`, `LID` and `LTaut` take none.
//! Optional top-level fields: the booleans `allow_lid` and
//! `rules_on_premises`, and `goal`, the formula the derivation is meant to
//! reach.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::parser::{parse, print, ParseError};
use crate::proof::{Axiom, Derivation, Justification, Line};
use crate::syntax::Formula;
use crate::truth::Index;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("invalid derivation JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("premise {index}: {error}")]
    Premise { index: usize, error: ParseError },
    #[error("goal: {0}")]
    Goal(ParseError),
    /// Any problem local to one line; `line` is 1-based.
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
}

impl LoadError {
    /// The 1-based derivation line the error belongs to, if any.
    pub fn line(&self) -> Option<usize> {
        match self {
            LoadError::Line { line, .. } => Some(*line),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineDoc {
    pub formula: String,
    pub rule: String,
    #[serde(default, skip_serializing_if = "is_empty_args")]
    pub args: Value,
}

fn is_empty_args(v: &Value) -> bool {
    v.is_null() || v.as_object().is_some_and(|o| o.is_empty())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivationDoc {
    pub m: u32,
    #[serde(default)]
    pub premises: Vec<String>,
    pub lines: Vec<LineDoc>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub allow_lid: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub rules_on_premises: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goal: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PremiseArgs {
    index: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MpArgs {
    lines: [usize; 2],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OneLine {
    line: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RaArgs {
    a: String,
    phi: String,
    gammas: Vec<String>,
    gamma: String,
    lines: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RaGenArgs {
    a: String,
    a_list: Vec<String>,
    phi: String,
    chis: Vec<String>,
    chi: String,
    lines: Vec<usize>,
}

impl DerivationDoc {
    pub fn from_json(text: &str) -> Result<DerivationDoc, LoadError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("derivation serializes")
    }

    pub fn to_derivation(&self) -> Result<Derivation, LoadError> {
        let premises = self
            .premises
            .iter()
            .enumerate()
            .map(|(i, s)| parse(s).map_err(|error| LoadError::Premise { index: i + 1, error }))
            .collect::<Result<_, _>>()?;
        let lines = self
            .lines
            .iter()
            .enumerate()
            .map(|(i, l)| {
                load_line(l).map_err(|message| LoadError::Line {
                    line: i + 1,
                    message,
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(Derivation {
            m: self.m,
            premises,
            lines,
            allow_lid: self.allow_lid,
            rules_on_premises: self.rules_on_premises,
        })
    }

    pub fn from_derivation(d: &Derivation) -> DerivationDoc {
        DerivationDoc {
            m: d.m,
            premises: d.premises.iter().map(print).collect(),
            lines: d
                .lines
                .iter()
                .map(|l| LineDoc {
                    formula: print(&l.formula),
                    rule: l.justification.rule_name().to_string(),
                    args: args_of(&l.justification),
                })
                .collect(),
            allow_lid: d.allow_lid,
            rules_on_premises: d.rules_on_premises,
            goal: None,
        }
    }

    /// The parsed `goal` field, if present.
    pub fn goal(&self) -> Result<Option<Formula>, LoadError> {
        self.goal
            .as_deref()
            .map(|g| parse(g).map_err(LoadError::Goal))
            .transpose()
    }
}

fn formula(what: &str, s: &str) -> Result<Formula, String> {
    parse(s).map_err(|e| format!("{what}: {e}"))
}

fn formulas(what: &str, ss: &[String]) -> Result<Vec<Formula>, String> {
    ss.iter().map(|s| formula(what, s)).collect()
}

fn index(s: &str) -> Result<Index, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn args<T: for<'de> Deserialize<'de>>(rule: &str, v: &Value) -> Result<T, String> {
    serde_json::from_value(v.clone()).map_err(|e| format!("bad arguments for {rule}: {e}"))
}

fn load_line(l: &LineDoc) -> Result<Line, String> {
    let f = formula("formula", &l.formula)?;
    let no_args = || {
        if is_empty_args(&l.args) {
            Ok(())
        } else {
            Err(format!("{} takes no arguments", l.rule))
        }
    };
    let justification = match l.rule.as_str() {
        "Premise" => Justification::Premise(args::<PremiseArgs>("Premise", &l.args)?.index),
        "LTaut" => no_args().map(|_| Justification::LTaut)?,
        "A1" => no_args().map(|_| Justification::Ax(Axiom::A1))?,
        "A2" => no_args().map(|_| Justification::Ax(Axiom::A2))?,
        "A3" => no_args().map(|_| Justification::Ax(Axiom::A3))?,
        "LID" => no_args().map(|_| Justification::Ax(Axiom::Lid))?,
        "MP" => {
            let [i, j] = args::<MpArgs>("MP", &l.args)?.lines;
            Justification::MP(i, j)
        }
        "RCEA" => Justification::RCEA(args::<OneLine>("RCEA", &l.args)?.line),
        "RCEC" => Justification::RCEC(args::<OneLine>("RCEC", &l.args)?.line),
        "Ra" => {
            let a: RaArgs = args("Ra", &l.args)?;
            Justification::Ra {
                a: index(&a.a)?,
                phi: formula("phi", &a.phi)?,
                gammas: formulas("gammas", &a.gammas)?,
                gamma: formula("gamma", &a.gamma)?,
                lines: a.lines,
            }
        }
        "RaGen" => {
            let a: RaGenArgs = args("RaGen", &l.args)?;
            Justification::RaGen {
                a: index(&a.a)?,
                a_list: a.a_list.iter().map(|s| index(s)).collect::<Result<_, _>>()?,
                phi: formula("phi", &a.phi)?,
                chis: formulas("chis", &a.chis)?,
                chi: formula("chi", &a.chi)?,
                lines: a.lines,
            }
        }
        other => return Err(format!("unknown rule `{other}`")),
    };
    Ok(Line {
        formula: f,
        justification,
    })
}

fn args_of(j: &Justification) -> Value {
    let strs = |fs: &[Formula]| fs.iter().map(print).collect::<Vec<_>>();
    match j {
        Justification::Premise(i) => json!({ "index": i }),
        Justification::MP(i, k) => json!({ "lines": [i, k] }),
        Justification::RCEA(i) | Justification::RCEC(i) => json!({ "line": i }),
        Justification::Ra {
            a,
            phi,
            gammas,
            gamma,
            lines,
        } => json!({
            "a": a.to_string(),
            "phi": print(phi),
            "gammas": strs(gammas),
            "gamma": print(gamma),
            "lines": lines,
        }),
        Justification::RaGen {
            a,
            a_list,
            phi,
            chis,
            chi,
            lines,
        } => json!({
            "a": a.to_string(),
            "a_list": a_list.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
            "phi": print(phi),
            "chis": strs(chis),
            "chi": print(chi),
            "lines": lines,
        }),
        Justification::LTaut | Justification::Ax(_) => Value::Null,
    }
}

impl Derivation {
    pub fn from_json(text: &str) -> Result<Derivation, LoadError> {
        DerivationDoc::from_json(text)?.to_derivation()
    }

    pub fn to_json(&self) -> String {
        DerivationDoc::from_derivation(self).to_json()
    }
}
