//! Formula trees for the conditional language, derived connectives, and the
//! syntactic `J`/`I` constructions.
//!
//! The core connectives are `¬`, `→` and `≻`. Everything else (`∧`, `∨`,
//! `⊕`, `⊙`, `⊖`, `↔`, `t`, `f`, `J_a`, `I_a`) is kept as a first-class node
//! so the evaluator can interpret it directly, and [`normalize`] rewrites it
//! into the core.

use std::collections::BTreeSet;

use indexmap::IndexSet;
use thiserror::Error;

use crate::truth::{Index, TruthError, TruthValue};

/// Variable used by the expansion of `T`/`F` (`t = r → r`).
///
/// It cannot be written in concrete syntax, so it never clashes with user
/// variables. Evaluators treat it as a fixed atom.
pub const RESERVED_ATOM: &str = "_t";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("{0} requires a nonempty list")]
    EmptyList(&'static str),
    #[error(transparent)]
    Truth(#[from] TruthError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Top,
    Bot,
    Not(Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    /// The conditional `φ ≻ ψ`.
    Cond(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    OPlus(Box<Formula>, Box<Formula>),
    OTimes(Box<Formula>, Box<Formula>),
    OMinus(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    J(Index, Box<Formula>),
    I(Index, Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Formula {
        Formula::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn cond(a: Formula, b: Formula) -> Formula {
        Formula::Cond(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn oplus(a: Formula, b: Formula) -> Formula {
        Formula::OPlus(Box::new(a), Box::new(b))
    }

    pub fn otimes(a: Formula, b: Formula) -> Formula {
        Formula::OTimes(Box::new(a), Box::new(b))
    }

    pub fn ominus(a: Formula, b: Formula) -> Formula {
        Formula::OMinus(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn j(index: Index, f: Formula) -> Formula {
        Formula::J(index, Box::new(f))
    }

    pub fn i(index: Index, f: Formula) -> Formula {
        Formula::I(index, Box::new(f))
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            Var(_) | Top | Bot => vec![],
            Not(a) | J(_, a) | I(_, a) => vec![a],
            Imp(a, b) | Cond(a, b) | And(a, b) | Or(a, b) | OPlus(a, b) | OTimes(a, b)
            | OMinus(a, b) | Iff(a, b) => vec![a, b],
        }
    }

    /// Sorted set of variable names occurring in the formula.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        if let Formula::Var(name) = self {
            out.insert(name.clone());
        }
        for c in self.children() {
            c.collect_vars(out);
        }
    }

    /// Maximum number of `≻` nodes on a root-to-leaf path.
    pub fn conditional_depth(&self) -> usize {
        let below = self
            .children()
            .into_iter()
            .map(Formula::conditional_depth)
            .max()
            .unwrap_or(0);
        match self {
            Formula::Cond(..) => below + 1,
            _ => below,
        }
    }

    pub fn contains_conditional(&self) -> bool {
        self.conditional_depth() > 0
    }

    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
    }

    /// True if only `Var`, `Not`, `Imp` and `Cond` occur.
    pub fn is_core(&self) -> bool {
        match self {
            Formula::Var(_) | Formula::Not(_) | Formula::Imp(..) | Formula::Cond(..) => {
                self.children().into_iter().all(Formula::is_core)
            }
            _ => false,
        }
    }

    /// Every `J`/`I` index occurring in the formula.
    pub fn indices(&self) -> Vec<Index> {
        let mut out = Vec::new();
        self.collect_indices(&mut out);
        out
    }

    fn collect_indices(&self, out: &mut Vec<Index>) {
        if let Formula::J(a, _) | Formula::I(a, _) = self {
            out.push(*a);
        }
        for c in self.children() {
            c.collect_indices(out);
        }
    }

    /// Rebuilds this node with new children (same arity, same order).
    pub fn with_children(&self, mut kids: Vec<Formula>) -> Formula {
        use Formula::*;
        let mut next = || Box::new(kids.remove(0));
        match self {
            Var(_) | Top | Bot => self.clone(),
            Not(_) => Not(next()),
            J(a, _) => J(*a, next()),
            I(a, _) => I(*a, next()),
            Imp(..) => Imp(next(), next()),
            Cond(..) => Cond(next(), next()),
            And(..) => And(next(), next()),
            Or(..) => Or(next(), next()),
            OPlus(..) => OPlus(next(), next()),
            OTimes(..) => OTimes(next(), next()),
            OMinus(..) => OMinus(next(), next()),
            Iff(..) => Iff(next(), next()),
        }
    }

    /// Consistently renames variables; unmapped names are kept.
    pub fn rename(&self, map: &dyn Fn(&str) -> String) -> Formula {
        match self {
            Formula::Var(name) => Formula::Var(map(name)),
            _ => self.with_children(self.children().into_iter().map(|c| c.rename(map)).collect()),
        }
    }
}

fn top_core() -> Formula {
    let r = Formula::var(RESERVED_ATOM);
    Formula::imp(r.clone(), r)
}

/// Rewrites only `T` and `F` into `r → r` and `¬(r → r)`.
pub fn expand_constants(f: &Formula) -> Formula {
    match f {
        Formula::Top => top_core(),
        Formula::Bot => Formula::not(top_core()),
        _ => f.with_children(f.children().into_iter().map(expand_constants).collect()),
    }
}

// Expansions of the derived binary connectives, on already-core arguments.
fn or_core(a: Formula, b: Formula) -> Formula {
    Formula::imp(Formula::imp(a, b.clone()), b)
}

fn and_core(a: Formula, b: Formula) -> Formula {
    Formula::not(or_core(Formula::not(a), Formula::not(b)))
}

fn oplus_core(a: Formula, b: Formula) -> Formula {
    Formula::imp(Formula::not(a), b)
}

fn otimes_core(a: Formula, b: Formula) -> Formula {
    Formula::not(Formula::imp(a, Formula::not(b)))
}

fn iff_core(a: Formula, b: Formula) -> Formula {
    and_core(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
}

/// Rewrites `φ` into the core connectives `¬`, `→`, `≻`.
///
/// `J`/`I` nodes are expanded with [`mk_j`] and [`mk_i`] at scale `m`.
pub fn normalize(f: &Formula, m: u32) -> Result<Formula, SyntaxError> {
    use Formula::*;
    let bin = |a: &Formula, b: &Formula| -> Result<(Formula, Formula), SyntaxError> {
        Ok((normalize(a, m)?, normalize(b, m)?))
    };
    Ok(match f {
        Var(_) => f.clone(),
        Top => top_core(),
        Bot => Formula::not(top_core()),
        Not(a) => Formula::not(normalize(a, m)?),
        Imp(a, b) => {
            let (a, b) = bin(a, b)?;
            Formula::imp(a, b)
        }
        Cond(a, b) => {
            let (a, b) = bin(a, b)?;
            Formula::cond(a, b)
        }
        And(a, b) => {
            let (a, b) = bin(a, b)?;
            and_core(a, b)
        }
        Or(a, b) => {
            let (a, b) = bin(a, b)?;
            or_core(a, b)
        }
        OPlus(a, b) => {
            let (a, b) = bin(a, b)?;
            oplus_core(a, b)
        }
        OTimes(a, b) => {
            let (a, b) = bin(a, b)?;
            otimes_core(a, b)
        }
        OMinus(a, b) => {
            let (a, b) = bin(a, b)?;
            otimes_core(a, Formula::not(b))
        }
        Iff(a, b) => {
            let (a, b) = bin(a, b)?;
            iff_core(a, b)
        }
        J(idx, a) => mk_j(*idx, a, m)?,
        I(idx, a) => mk_i(*idx, a, m)?,
    })
}

/// `∏ φ_i`, folded to the left: `((φ_1 ⊙ φ_2) ⊙ φ_3) ...`
pub fn strong_product(fs: &[Formula]) -> Result<Formula, SyntaxError> {
    fold_left(fs, "strong product", Formula::otimes)
}

/// `Σ φ_i`, folded to the left with `⊕`.
pub fn strong_sum(fs: &[Formula]) -> Result<Formula, SyntaxError> {
    fold_left(fs, "strong sum", Formula::oplus)
}

fn fold_left(
    fs: &[Formula],
    what: &'static str,
    op: fn(Formula, Formula) -> Formula,
) -> Result<Formula, SyntaxError> {
    let (first, rest) = fs.split_first().ok_or(SyntaxError::EmptyList(what))?;
    Ok(rest.iter().cloned().fold(first.clone(), op))
}

/// `φ_k → (φ_{k-1} → ... (φ_1 → ψ))`; the last antecedent is outermost.
pub fn imp_chain(antecedents: &[Formula], consequent: Formula) -> Formula {
    antecedents
        .iter()
        .cloned()
        .fold(consequent, |acc, a| Formula::imp(a, acc))
}

fn power(f: &Formula, times: u32) -> Formula {
    let copies = vec![f.clone(); times as usize];
    // times >= 1 at every call site
    strong_product(&copies).expect("nonempty product")
}

/// Core formula that takes value 1 exactly where `φ` takes value `a`, else 0.
pub fn mk_j(a: Index, f: &Formula, m: u32) -> Result<Formula, SyntaxError> {
    let a = TruthValue::from_index(a, m)?;
    let f = normalize(f, m)?;
    Ok(build_j(a, f, m))
}

fn build_j(a: TruthValue, f: Formula, m: u32) -> Formula {
    let top = a.top();
    let k = a.numerator();
    if k == top {
        return normalize(&power(&f, top), m).expect("core input");
    }
    if 2 * k < top {
        return build_j(a.neg(), Formula::not(f), m);
    }
    let n = a.n_value().expect("1/2 <= a < 1");
    let d = top - k;
    let neg_power = Formula::not(normalize(&power(&f, n), m).expect("core input"));
    if n * d == k {
        let one = TruthValue::one(m).expect("valid scale");
        build_j(one, iff_core(neg_power, f), m)
    } else {
        // n·(1-a) > a, and n·(1-a) < 1, so the new index lies strictly above a.
        let b = TruthValue::new(n * d, m).expect("n·d < m-1");
        build_j(b, neg_power, m)
    }
}

/// Core formula that takes value 1 where `φ >= a`, else 0.
///
/// Built as `J_a(φ) ∨ ... ∨ J_1(φ)` over the chain values `c >= a`, ascending
/// and associated to the left.
pub fn mk_i(a: Index, f: &Formula, m: u32) -> Result<Formula, SyntaxError> {
    let a = TruthValue::from_index(a, m)?;
    let f = normalize(f, m)?;
    let mut acc: Option<Formula> = None;
    for c in a.numerator()..m {
        let c = TruthValue::new(c, m)?;
        let j = build_j(c, f.clone(), m);
        acc = Some(match acc {
            None => j,
            Some(prev) => or_core(prev, j),
        });
    }
    Ok(acc.expect("at least one chain value >= a"))
}

/// All subformulas as written, deduplicated, in post-order of first occurrence.
pub fn subformula_closure(f: &Formula) -> Vec<Formula> {
    let mut out = IndexSet::new();
    closure_into(f, &mut out);
    out.into_iter().collect()
}

fn closure_into(f: &Formula, out: &mut IndexSet<Formula>) {
    for c in f.children() {
        closure_into(c, out);
    }
    if !out.contains(f) {
        out.insert(f.clone());
    }
}

/// True if every subformula of every member is itself a member.
pub fn is_subformula_closed(set: &[Formula]) -> bool {
    let members: std::collections::HashSet<&Formula> = set.iter().collect();
    set.iter()
        .all(|f| f.children().into_iter().all(|c| members.contains(c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::var("p")
    }
    fn q() -> Formula {
        Formula::var("q")
    }
    fn idx(n: u64, d: u64) -> Index {
        Index::new(n, d).unwrap()
    }

    // Independent truth-table oracle over the core connectives only.
    fn core_value(f: &Formula, m: u32, v: u32) -> u32 {
        let top = m - 1;
        match f {
            Formula::Var(name) if name == "p" => v,
            Formula::Var(_) => 0,
            Formula::Not(a) => top - core_value(a, m, v),
            Formula::Imp(a, b) => top.min(top - core_value(a, m, v) + core_value(b, m, v)),
            other => panic!("not core: {other:?}"),
        }
    }

    #[test]
    fn normalize_examples() {
        let or = normalize(&Formula::or(p(), q()), 3).unwrap();
        assert_eq!(or, Formula::imp(Formula::imp(p(), q()), q()));

        let and = normalize(&Formula::and(p(), q()), 3).unwrap();
        let expected = Formula::not(Formula::imp(
            Formula::imp(Formula::not(p()), Formula::not(q())),
            Formula::not(q()),
        ));
        assert_eq!(and, expected);

        let times = normalize(&Formula::otimes(p(), q()), 3).unwrap();
        assert_eq!(times, Formula::not(Formula::imp(p(), Formula::not(q()))));
    }

    #[test]
    fn normalize_constants_use_reserved_atom() {
        let t = normalize(&Formula::Top, 3).unwrap();
        assert_eq!(t, Formula::imp(Formula::var(RESERVED_ATOM), Formula::var(RESERVED_ATOM)));
        assert_eq!(normalize(&Formula::Bot, 3).unwrap(), Formula::not(t));
    }

    #[test]
    fn normalize_rejects_unrepresentable_index() {
        let f = Formula::j(idx(1, 2), p());
        assert!(matches!(
            normalize(&f, 4),
            Err(SyntaxError::Truth(TruthError::Unrepresentable { .. }))
        ));
    }

    #[test]
    fn mk_j_examples() {
        let j1 = mk_j(Index::one(), &p(), 3).unwrap();
        assert_eq!(j1, Formula::not(Formula::imp(p(), Formula::not(p()))));

        let j0 = mk_j(Index::zero(), &p(), 3).unwrap();
        assert_eq!(j0, mk_j(Index::one(), &Formula::not(p()), 3).unwrap());

        let jhalf = mk_j(idx(1, 2), &p(), 3).unwrap();
        let inner = normalize(&Formula::iff(Formula::not(p()), p()), 3).unwrap();
        assert_eq!(jhalf, mk_j(Index::one(), &inner, 3).unwrap());
        assert_eq!(
            (0..3).map(|v| core_value(&jhalf, 3, v)).collect::<Vec<_>>(),
            vec![0, 2, 0]
        );
    }

    #[test]
    fn mk_i_examples() {
        assert_eq!(mk_i(Index::one(), &p(), 3).unwrap(), mk_j(Index::one(), &p(), 3).unwrap());
        let ihalf = mk_i(idx(1, 2), &p(), 3).unwrap();
        let expected = normalize(
            &Formula::or(
                mk_j(idx(1, 2), &p(), 3).unwrap(),
                mk_j(Index::one(), &p(), 3).unwrap(),
            ),
            3,
        )
        .unwrap();
        assert_eq!(ihalf, expected);
        let i0 = mk_i(Index::zero(), &p(), 3).unwrap();
        assert!((0..3).all(|v| core_value(&i0, 3, v) == 2));
    }

    #[test]
    fn j_and_i_expansions_are_indicators_exhaustive() {
        for m in 2..=7u32 {
            for a in 0..m {
                let index = idx(a as u64, (m - 1) as u64);
                let j = mk_j(index, &p(), m).unwrap();
                let i = mk_i(index, &p(), m).unwrap();
                assert!(j.is_core() && i.is_core());
                for v in 0..m {
                    let want_j = if v == a { m - 1 } else { 0 };
                    let want_i = if v >= a { m - 1 } else { 0 };
                    assert_eq!(core_value(&j, m, v), want_j, "J m={m} a={a} v={v}");
                    assert_eq!(core_value(&i, m, v), want_i, "I m={m} a={a} v={v}");
                }
            }
        }
    }

    #[test]
    fn classical_j1_is_identity() {
        let j = mk_j(Index::one(), &p(), 2).unwrap();
        assert_eq!(j, p());
    }

    #[test]
    fn imp_chain_examples() {
        assert_eq!(imp_chain(&[], q()), q());
        assert_eq!(imp_chain(&[p()], q()), Formula::imp(p(), q()));
        let (p1, p2) = (Formula::var("p1"), Formula::var("p2"));
        assert_eq!(
            imp_chain(&[p1.clone(), p2.clone()], q()),
            Formula::imp(p2, Formula::imp(p1, q()))
        );
    }

    #[test]
    fn products_and_sums() {
        assert_eq!(strong_product(&[p()]).unwrap(), p());
        assert_eq!(strong_product(&[p(), q()]).unwrap(), Formula::otimes(p(), q()));
        assert_eq!(
            strong_product(&[p(), p(), p()]).unwrap(),
            Formula::otimes(Formula::otimes(p(), p()), p())
        );
        assert_eq!(strong_sum(&[p(), q()]).unwrap(), Formula::oplus(p(), q()));
        assert!(matches!(strong_product(&[]), Err(SyntaxError::EmptyList(_))));
        assert!(strong_sum(&[]).is_err());
    }

    #[test]
    fn closure_examples() {
        assert_eq!(subformula_closure(&p()), vec![p()]);
        let c = Formula::cond(p(), q());
        assert_eq!(subformula_closure(&c), vec![p(), q(), c.clone()]);
        let pq = Formula::imp(p(), q());
        let f = Formula::imp(p(), pq.clone());
        assert_eq!(subformula_closure(&f), vec![p(), q(), pq, f.clone()]);
        assert!(is_subformula_closed(&subformula_closure(&f)));
        assert!(!is_subformula_closed(&[f]));
    }

    #[test]
    fn depth_and_variables() {
        let f = Formula::cond(p(), Formula::imp(q(), Formula::cond(q(), p())));
        assert_eq!(f.conditional_depth(), 2);
        assert_eq!(f.variables().into_iter().collect::<Vec<_>>(), vec!["p", "q"]);
    }
}
