//! Hilbert-style derivation checking.
//!
//! A derivation is a numbered list of lines, each justified by a premise, a
//! propositional tautology, an axiom, or a rule citing earlier lines. Line
//! numbers are 1-based everywhere, in files and in error reports.
//!
//! The propositional base is checked by truth tables with conditionals
//! abstracted to atoms. Rule matching compares formulas structurally after
//! expanding `T` and `F`; `J` and `I` are compared as nodes.

mod check;
mod json;

use crate::syntax::Formula;
use crate::truth::Index;

pub use check::{check_derivation, check_line, match_axiom, CheckError, CheckErrorKind};
pub use json::{DerivationDoc, LineDoc, LoadError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// `(φ ≻ (ψ ∧ θ)) → ((φ ≻ ψ) ∧ (φ ≻ θ))`
    A1,
    /// `((φ ≻ ψ) ∧ (φ ≻ θ)) → (φ ≻ (ψ ∧ θ))`
    A2,
    /// `φ ≻ T`
    A3,
    /// `φ ≻ φ`, only with [`Derivation::allow_lid`].
    Lid,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::A1 => "A1",
            Axiom::A2 => "A2",
            Axiom::A3 => "A3",
            Axiom::Lid => "LID",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    /// 1-based position in the premise list.
    Premise(usize),
    LTaut,
    Ax(Axiom),
    /// `MP(i, j)`: line `j` is `line_i → this`.
    MP(usize, usize),
    RCEA(usize),
    RCEC(usize),
    /// The rule with `a_i = (m-i)/(m-1)`; `gammas` has `m` entries and
    /// `lines` one premise line per `b`, in descending `b`.
    Ra {
        a: Index,
        phi: Formula,
        gammas: Vec<Formula>,
        gamma: Formula,
        lines: Vec<usize>,
    },
    /// The generalized rule with caller-chosen `a_1 .. a_n`; still one
    /// premise line per `b`, in descending `b`.
    RaGen {
        a: Index,
        a_list: Vec<Index>,
        phi: Formula,
        chis: Vec<Formula>,
        chi: Formula,
        lines: Vec<usize>,
    },
}

impl Justification {
    pub fn rule_name(&self) -> &'static str {
        match self {
            Justification::Premise(_) => "Premise",
            Justification::LTaut => "LTaut",
            Justification::Ax(ax) => ax.name(),
            Justification::MP(..) => "MP",
            Justification::RCEA(_) => "RCEA",
            Justification::RCEC(_) => "RCEC",
            Justification::Ra { .. } => "Ra",
            Justification::RaGen { .. } => "RaGen",
        }
    }

    /// Line numbers this justification cites.
    pub fn cited(&self) -> Vec<usize> {
        match self {
            Justification::MP(i, j) => vec![*i, *j],
            Justification::RCEA(i) | Justification::RCEC(i) => vec![*i],
            Justification::Ra { lines, .. } | Justification::RaGen { lines, .. } => lines.clone(),
            _ => Vec::new(),
        }
    }

    fn map_formulas(&self, f: &dyn Fn(&Formula) -> Formula) -> Justification {
        match self {
            Justification::Ra {
                a,
                phi,
                gammas,
                gamma,
                lines,
            } => Justification::Ra {
                a: *a,
                phi: f(phi),
                gammas: gammas.iter().map(f).collect(),
                gamma: f(gamma),
                lines: lines.clone(),
            },
            Justification::RaGen {
                a,
                a_list,
                phi,
                chis,
                chi,
                lines,
            } => Justification::RaGen {
                a: *a,
                a_list: a_list.clone(),
                phi: f(phi),
                chis: chis.iter().map(f).collect(),
                chi: f(chi),
                lines: lines.clone(),
            },
            other => other.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub m: u32,
    pub premises: Vec<Formula>,
    pub lines: Vec<Line>,
    /// Admit `φ ≻ φ` as an axiom.
    pub allow_lid: bool,
    /// Let RCEA, RCEC and Ra cite lines that depend on premises. Off by
    /// default: only MP propagates premise consequences.
    pub rules_on_premises: bool,
}

impl Derivation {
    pub fn new(m: u32) -> Derivation {
        Derivation {
            m,
            premises: Vec::new(),
            lines: Vec::new(),
            allow_lid: false,
            rules_on_premises: false,
        }
    }

    pub fn push(&mut self, formula: Formula, justification: Justification) -> &mut Self {
        self.lines.push(Line {
            formula,
            justification,
        });
        self
    }

    /// The same derivation with every variable renamed by `map`.
    pub fn rename(&self, map: &dyn Fn(&str) -> String) -> Derivation {
        let f = |g: &Formula| g.rename(map);
        Derivation {
            m: self.m,
            premises: self.premises.iter().map(f).collect(),
            lines: self
                .lines
                .iter()
                .map(|l| Line {
                    formula: f(&l.formula),
                    justification: l.justification.map_formulas(&f),
                })
                .collect(),
            allow_lid: self.allow_lid,
            rules_on_premises: self.rules_on_premises,
        }
    }
}
