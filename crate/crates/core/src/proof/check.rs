use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::proof::{Axiom, Derivation, Justification};
use crate::search::{falsifying_assignment, SearchError};
use crate::syntax::{expand_constants, imp_chain, Formula};
use crate::truth::{Index, TruthError, TruthValue};

/// Why a line failed, reported with its 1-based line number and rule.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line} ({rule}): {kind}")]
pub struct CheckError {
    pub line: usize,
    pub rule: &'static str,
    pub kind: CheckErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckErrorKind {
    EmptyDerivation,
    /// The line's formula, or a cited line, is not the formula the rule
    /// produces.
    Mismatch {
        what: &'static str,
        expected: Formula,
        found: Formula,
    },
    /// A cited line has the wrong main connective for the rule.
    Shape {
        what: &'static str,
        expected: &'static str,
        found: Formula,
    },
    BadReference(usize),
    PremiseOutOfRange(usize),
    /// A rule other than MP cites a line that depends on premises.
    DependsOnPremises(usize),
    NotTautology(String),
    NotAnAxiom(Formula),
    WrongCount {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    Truth(TruthError),
    Search(SearchError),
}

impl fmt::Display for CheckErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckErrorKind::EmptyDerivation => write!(f, "derivation has no lines"),
            CheckErrorKind::Mismatch {
                what,
                expected,
                found,
            } => write!(f, "{what}: expected `{expected}`, found `{found}`"),
            CheckErrorKind::Shape {
                what,
                expected,
                found,
            } => write!(f, "{what}: expected the shape `{expected}`, found `{found}`"),
            CheckErrorKind::BadReference(i) => write!(f, "cites line {i}, which is not a preceding line"),
            CheckErrorKind::PremiseOutOfRange(i) => write!(f, "there is no premise {i}"),
            CheckErrorKind::DependsOnPremises(i) => {
                write!(f, "cited line {i} depends on premises; rules other than MP need theorems")
            }
            CheckErrorKind::NotTautology(w) => write!(f, "not a tautology: fails at {w}"),
            CheckErrorKind::NotAnAxiom(found) => write!(f, "`{found}` is not an instance of the axiom"),
            CheckErrorKind::WrongCount {
                what,
                expected,
                found,
            } => write!(f, "expected {expected} {what}, found {found}"),
            CheckErrorKind::Truth(e) => write!(f, "{e}"),
            CheckErrorKind::Search(e) => write!(f, "{e}"),
        }
    }
}

fn mv(name: &str) -> Formula {
    Formula::var(format!("?{name}"))
}

fn schema(ax: Axiom) -> Formula {
    let (a, b, c) = (mv("phi"), mv("psi"), mv("theta"));
    let cond = Formula::cond;
    match ax {
        Axiom::A1 => Formula::imp(
            cond(a.clone(), Formula::and(b.clone(), c.clone())),
            Formula::and(cond(a.clone(), b), cond(a, c)),
        ),
        Axiom::A2 => Formula::imp(
            Formula::and(cond(a.clone(), b.clone()), cond(a.clone(), c.clone())),
            cond(a, Formula::and(b, c)),
        ),
        Axiom::A3 => cond(a, Formula::Top),
        Axiom::Lid => cond(a.clone(), a),
    }
}

fn unify(pattern: &Formula, f: &Formula, binding: &mut HashMap<String, Formula>) -> bool {
    if let Formula::Var(name) = pattern {
        if name.starts_with('?') {
            return match binding.get(name) {
                Some(bound) => bound == f,
                None => {
                    binding.insert(name.clone(), f.clone());
                    true
                }
            };
        }
    }
    if std::mem::discriminant(pattern) != std::mem::discriminant(f) {
        return false;
    }
    match (pattern, f) {
        (Formula::Var(a), Formula::Var(b)) => a == b,
        (Formula::J(i, _), Formula::J(k, _)) | (Formula::I(i, _), Formula::I(k, _)) if i != k => false,
        _ => {
            let (ps, fs) = (pattern.children(), f.children());
            ps.len() == fs.len() && ps.iter().zip(fs).all(|(p, g)| unify(p, g, binding))
        }
    }
}

/// The first axiom schema, in the order A1, A2, A3, LID, that `f` instantiates.
pub fn match_axiom(f: &Formula, allow_lid: bool) -> Option<Axiom> {
    let f = expand_constants(f);
    [Axiom::A1, Axiom::A2, Axiom::A3, Axiom::Lid]
        .into_iter()
        .filter(|&ax| allow_lid || ax != Axiom::Lid)
        .find(|&ax| unify(&expand_constants(&schema(ax)), &f, &mut HashMap::new()))
}

fn same(a: &Formula, b: &Formula) -> bool {
    expand_constants(a) == expand_constants(b)
}

struct Checker<'a> {
    d: &'a Derivation,
    /// `dependent[k]` for 0-based line `k`: it rests on some premise.
    dependent: Vec<bool>,
}

impl<'a> Checker<'a> {
    fn new(d: &'a Derivation) -> Checker<'a> {
        Checker {
            d,
            dependent: Vec::with_capacity(d.lines.len()),
        }
    }

    /// Checks 1-based line `n`, given that lines before it were checked.
    fn check(&mut self, n: usize) -> Result<(), CheckError> {
        let line = &self.d.lines[n - 1];
        let rule = line.justification.rule_name();
        let err = |kind| CheckError { line: n, rule, kind };
        for &c in &line.justification.cited() {
            if c == 0 || c >= n {
                return Err(err(CheckErrorKind::BadReference(c)));
            }
        }
        let by_rule = !matches!(
            line.justification,
            Justification::Premise(_) | Justification::MP(..)
        );
        if by_rule && !self.d.rules_on_premises {
            if let Some(&c) = line.justification.cited().iter().find(|&&c| self.dependent[c - 1]) {
                return Err(err(CheckErrorKind::DependsOnPremises(c)));
            }
        }
        self.rule(&line.formula, &line.justification).map_err(err)?;
        let dep = match &line.justification {
            Justification::Premise(_) => true,
            j => j.cited().iter().any(|&c| self.dependent[c - 1]),
        };
        if self.dependent.len() < n {
            self.dependent.push(dep);
        }
        Ok(())
    }

    fn cited(&self, i: usize) -> &Formula {
        &self.d.lines[i - 1].formula
    }

    fn rule(&self, f: &Formula, j: &Justification) -> Result<(), CheckErrorKind> {
        let m = self.d.m;
        let mismatch = |what, expected: Formula, found: &Formula| {
            if same(&expected, found) {
                Ok(())
            } else {
                Err(CheckErrorKind::Mismatch {
                    what,
                    expected,
                    found: found.clone(),
                })
            }
        };
        match j {
            Justification::Premise(k) => {
                let p = k
                    .checked_sub(1)
                    .and_then(|i| self.d.premises.get(i))
                    .ok_or(CheckErrorKind::PremiseOutOfRange(*k))?;
                mismatch("line formula", p.clone(), f)
            }
            Justification::LTaut => {
                match falsifying_assignment(f, m, true).map_err(CheckErrorKind::Search)? {
                    None => Ok(()),
                    Some(w) => Err(CheckErrorKind::NotTautology(
                        w.iter()
                            .map(|(atom, v)| format!("{atom} = {}", v.reduced()))
                            .collect::<Vec<_>>()
                            .join(", "),
                    )),
                }
            }
            Justification::Ax(ax) => {
                let lid_ok = self.d.allow_lid || *ax != Axiom::Lid;
                let pattern = expand_constants(&schema(*ax));
                if lid_ok && unify(&pattern, &expand_constants(f), &mut HashMap::new()) {
                    Ok(())
                } else {
                    Err(CheckErrorKind::NotAnAxiom(f.clone()))
                }
            }
            Justification::MP(i, k) => mismatch(
                "second cited line",
                Formula::imp(self.cited(*i).clone(), f.clone()),
                self.cited(*k),
            ),
            Justification::RCEA(i) | Justification::RCEC(i) => {
                let antecedent_side = matches!(j, Justification::RCEA(_));
                let Formula::Iff(a, b) = self.cited(*i) else {
                    return Err(CheckErrorKind::Shape {
                        what: "cited line",
                        expected: "φ <-> ψ",
                        found: self.cited(*i).clone(),
                    });
                };
                let shape = if antecedent_side {
                    "(φ => θ) <-> (ψ => θ)"
                } else {
                    "(θ => φ) <-> (θ => ψ)"
                };
                let bad_shape = || CheckErrorKind::Shape {
                    what: "line formula",
                    expected: shape,
                    found: f.clone(),
                };
                let Formula::Iff(l, r) = f else { return Err(bad_shape()) };
                let (Formula::Cond(l1, l2), Formula::Cond(_, _)) = (l.as_ref(), r.as_ref()) else {
                    return Err(bad_shape());
                };
                let expected = if antecedent_side {
                    let theta = l2.as_ref().clone();
                    Formula::iff(
                        Formula::cond(a.as_ref().clone(), theta.clone()),
                        Formula::cond(b.as_ref().clone(), theta),
                    )
                } else {
                    let theta = l1.as_ref().clone();
                    Formula::iff(
                        Formula::cond(theta.clone(), a.as_ref().clone()),
                        Formula::cond(theta, b.as_ref().clone()),
                    )
                };
                mismatch("line formula", expected, f)
            }
            Justification::Ra {
                a,
                phi,
                gammas,
                gamma,
                lines,
            } => {
                if gammas.len() != m as usize {
                    return Err(CheckErrorKind::WrongCount {
                        what: "gammas",
                        expected: m as usize,
                        found: gammas.len(),
                    });
                }
                let a_list = (1..=m)
                    .map(|i| TruthValue::new(m - i, m).map(TruthValue::to_index))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(CheckErrorKind::Truth)?;
                self.ra(f, *a, &a_list, phi, gammas, gamma, lines)
            }
            Justification::RaGen {
                a,
                a_list,
                phi,
                chis,
                chi,
                lines,
            } => {
                if a_list.len() != chis.len() {
                    return Err(CheckErrorKind::WrongCount {
                        what: "formulas for the indices in a_list",
                        expected: a_list.len(),
                        found: chis.len(),
                    });
                }
                self.ra(f, *a, a_list, phi, chis, chi, lines)
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn ra(
        &self,
        f: &Formula,
        a: Index,
        a_list: &[Index],
        phi: &Formula,
        gammas: &[Formula],
        gamma: &Formula,
        lines: &[usize],
    ) -> Result<(), CheckErrorKind> {
        let m = self.d.m;
        if lines.len() != m as usize {
            return Err(CheckErrorKind::WrongCount {
                what: "premise lines (one per b)",
                expected: m as usize,
                found: lines.len(),
            });
        }
        let tv = |i: Index| TruthValue::from_index(i, m).map_err(CheckErrorKind::Truth);
        let a_tv = tv(a)?;
        let a_tvs = a_list.iter().map(|&i| tv(i)).collect::<Result<Vec<_>, _>>()?;
        for (k, &line) in lines.iter().enumerate() {
            // descending b: 1, (m-2)/(m-1), ..., 0
            let b = TruthValue::new(m - 1 - k as u32, m).map_err(CheckErrorKind::Truth)?;
            let times = |x: TruthValue| x.otimes(b).map(TruthValue::to_index).map_err(CheckErrorKind::Truth);
            let antecedents = a_tvs
                .iter()
                .zip(gammas)
                .map(|(&ai, g)| Ok(Formula::i(times(ai)?, g.clone())))
                .collect::<Result<Vec<_>, CheckErrorKind>>()?;
            let expected = imp_chain(&antecedents, Formula::i(times(a_tv)?, gamma.clone()));
            let found = self.cited(line);
            if !same(&expected, found) {
                return Err(CheckErrorKind::Mismatch {
                    what: "premise line for b",
                    expected,
                    found: found.clone(),
                });
            }
        }
        let antecedents: Vec<Formula> = a_list
            .iter()
            .zip(gammas)
            .map(|(&ai, g)| Formula::i(ai, Formula::cond(phi.clone(), g.clone())))
            .collect();
        let expected = imp_chain(&antecedents, Formula::i(a, Formula::cond(phi.clone(), gamma.clone())));
        if same(&expected, f) {
            Ok(())
        } else {
            Err(CheckErrorKind::Mismatch {
                what: "line formula",
                expected,
                found: f.clone(),
            })
        }
    }
}

/// Checks 1-based line `n` of `d`, assuming nothing about earlier lines
/// except what is needed to know which of them depend on premises.
pub fn check_line(d: &Derivation, n: usize) -> Result<(), CheckError> {
    if n == 0 || n > d.lines.len() {
        return Err(CheckError {
            line: n,
            rule: "derivation",
            kind: CheckErrorKind::BadReference(n),
        });
    }
    let mut c = Checker::new(d);
    for k in 1..n {
        // dependence only; validity of earlier lines is not re-asserted
        let j = &d.lines[k - 1].justification;
        let dep = match j {
            Justification::Premise(_) => true,
            _ => j.cited().iter().any(|&i| i >= 1 && i < k && c.dependent[i - 1]),
        };
        c.dependent.push(dep);
    }
    c.check(n)
}

/// Checks every line in order and that the last line is `goal`.
///
/// Returns the first failing line. A goal mismatch is reported against the
/// last line.
pub fn check_derivation(d: &Derivation, goal: &Formula) -> Result<(), CheckError> {
    if d.lines.is_empty() {
        return Err(CheckError {
            line: 0,
            rule: "derivation",
            kind: CheckErrorKind::EmptyDerivation,
        });
    }
    let mut c = Checker::new(d);
    for n in 1..=d.lines.len() {
        c.check(n)?;
    }
    let last = d.lines.last().expect("nonempty");
    if same(&last.formula, goal) {
        Ok(())
    } else {
        Err(CheckError {
            line: d.lines.len(),
            rule: "goal",
            kind: CheckErrorKind::Mismatch {
                what: "last line",
                expected: goal.clone(),
                found: last.formula.clone(),
            },
        })
    }
}
