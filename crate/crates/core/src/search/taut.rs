use indexmap::IndexSet;

use crate::search::SearchError;
use crate::syntax::Formula;
use crate::truth::TruthValue;

/// Whether `f` takes value 1 under every assignment of the m-valued chain.
///
/// With `abstract_conditionals`, each maximal `≻`-subformula is treated as an
/// atom (structurally equal subformulas share one atom). Without it, a `≻`
/// anywhere in `f` is an error.
pub fn is_l_tautology(f: &Formula, m: u32, abstract_conditionals: bool) -> Result<bool, SearchError> {
    Ok(falsifying_assignment(f, m, abstract_conditionals)?.is_none())
}

/// An assignment (atom, value) under which `f` is not 1, if one exists.
///
/// Assignments are tried in lexicographic order over atoms in order of
/// first occurrence.
pub fn falsifying_assignment(
    f: &Formula,
    m: u32,
    abstract_conditionals: bool,
) -> Result<Option<Vec<(Formula, TruthValue)>>, SearchError> {
    let chain = TruthValue::chain(m)?;
    let mut atoms = IndexSet::new();
    collect_atoms(f, abstract_conditionals, &mut atoms)?;
    let k = atoms.len();
    let mut digits = vec![0usize; k];
    loop {
        let v = value(f, &atoms, &digits, &chain)?;
        if !v.is_one() {
            return Ok(Some(
                atoms
                    .into_iter()
                    .zip(digits.iter().map(|&d| chain[d]))
                    .collect(),
            ));
        }
        // odometer, last atom fastest
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < chain.len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

fn collect_atoms(
    f: &Formula,
    abstract_conditionals: bool,
    atoms: &mut IndexSet<Formula>,
) -> Result<(), SearchError> {
    match f {
        Formula::Var(_) => {
            atoms.insert(f.clone());
        }
        Formula::Cond(..) if abstract_conditionals => {
            atoms.insert(f.clone());
        }
        Formula::Cond(..) => return Err(SearchError::ConditionalInPropositional),
        _ => {
            for c in f.children() {
                collect_atoms(c, abstract_conditionals, atoms)?;
            }
        }
    }
    Ok(())
}

fn value(
    f: &Formula,
    atoms: &IndexSet<Formula>,
    digits: &[usize],
    chain: &[TruthValue],
) -> Result<TruthValue, SearchError> {
    let m = chain.len() as u32;
    let rec = |g: &Formula| value(g, atoms, digits, chain);
    Ok(match f {
        Formula::Var(_) | Formula::Cond(..) => {
            let i = atoms.get_index_of(f).expect("atom collected");
            chain[digits[i]]
        }
        Formula::Top => TruthValue::one(m)?,
        Formula::Bot => TruthValue::zero(m)?,
        Formula::Not(a) => rec(a)?.neg(),
        Formula::Imp(a, b) => rec(a)?.imp(rec(b)?)?,
        Formula::And(a, b) => rec(a)?.meet(rec(b)?)?,
        Formula::Or(a, b) => rec(a)?.join(rec(b)?)?,
        Formula::OPlus(a, b) => rec(a)?.oplus(rec(b)?)?,
        Formula::OTimes(a, b) => rec(a)?.otimes(rec(b)?)?,
        Formula::OMinus(a, b) => rec(a)?.ominus(rec(b)?)?,
        Formula::Iff(a, b) => rec(a)?.iff(rec(b)?)?,
        Formula::J(idx, a) => {
            let target = TruthValue::from_index(*idx, m)?;
            crisp(rec(a)? == target, m)?
        }
        Formula::I(idx, a) => {
            let target = TruthValue::from_index(*idx, m)?;
            crisp(rec(a)?.numerator() >= target.numerator(), m)?
        }
    })
}

fn crisp(b: bool, m: u32) -> Result<TruthValue, SearchError> {
    Ok(if b {
        TruthValue::one(m)?
    } else {
        TruthValue::zero(m)?
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;
    use crate::syntax::normalize;

    fn taut(s: &str, m: u32) -> bool {
        is_l_tautology(&parse(s).unwrap(), m, true).unwrap()
    }

    #[test]
    fn weakening_is_a_tautology() {
        for m in [3, 4, 5] {
            assert!(taut("p -> (q -> p)", m));
        }
    }

    #[test]
    fn excluded_middle_fails_at_half() {
        let f = parse("p | ~p").unwrap();
        let witness = falsifying_assignment(&f, 3, false).unwrap().unwrap();
        assert_eq!(witness, vec![(Formula::var("p"), TruthValue::new(1, 3).unwrap())]);
        assert!(taut("p | ~p", 2));
    }

    #[test]
    fn abstraction_shares_equal_conditionals() {
        assert!(taut("(p => q) -> (p => q)", 3));
        assert!(!taut("(p => q) -> (q => p)", 3));
        assert!(matches!(
            is_l_tautology(&parse("(p => q) -> (p => q)").unwrap(), 3, false),
            Err(SearchError::ConditionalInPropositional)
        ));
    }

    #[test]
    fn constants_and_indices() {
        assert!(taut("T", 3));
        assert!(!taut("F", 3));
        assert!(taut("J{1/2}(p) | I{1/1}(p) | J{0/1}(p)", 3));
        assert!(is_l_tautology(&parse("J{1/3}(p)").unwrap(), 3, true).is_err());
    }

    #[test]
    fn expansion_and_node_agree_on_tautology() {
        for s in ["I{1/2}(p & q) <-> I{1/2}(p) & I{1/2}(q)", "J{1/1}(p) -> p", "J{1/2}(p) -> p"] {
            let f = parse(s).unwrap();
            let n = normalize(&f, 3).unwrap();
            assert_eq!(
                is_l_tautology(&f, 3, false).unwrap(),
                is_l_tautology(&n, 3, false).unwrap(),
                "{s}"
            );
        }
    }

    // Independent two-valued oracle.
    fn classical(f: &Formula, env: &dyn Fn(&str) -> bool) -> bool {
        match f {
            Formula::Var(v) => env(v),
            Formula::Top => true,
            Formula::Bot => false,
            Formula::Not(a) => !classical(a, env),
            Formula::Imp(a, b) => !classical(a, env) || classical(b, env),
            Formula::And(a, b) | Formula::OTimes(a, b) => classical(a, env) && classical(b, env),
            Formula::Or(a, b) | Formula::OPlus(a, b) => classical(a, env) || classical(b, env),
            Formula::OMinus(a, b) => classical(a, env) && !classical(b, env),
            Formula::Iff(a, b) => classical(a, env) == classical(b, env),
            Formula::J(i, a) => classical(a, env) == (i.numer() == 1 && i.denom() == 1),
            Formula::I(i, a) => i.numer() == 0 || classical(a, env),
            Formula::Cond(..) => unreachable!(),
        }
    }

    fn classical_taut(f: &Formula) -> bool {
        let vars: Vec<String> = f.variables().into_iter().collect();
        (0..1u32 << vars.len()).all(|bits| {
            let env = |v: &str| {
                let i = vars.iter().position(|x| x == v).unwrap();
                bits >> i & 1 == 1
            };
            classical(f, &env)
        })
    }

    #[test]
    fn two_valued_agrees_with_classical_oracle() {
        for s in [
            "p | ~p",
            "p -> (q -> p)",
            "(p -> q) -> (~q -> ~p)",
            "p (+) q -> q",
            "(p (*) q) <-> (p & q)",
            "p (-) q -> p",
            "((p -> q) -> p) -> p",
            "p & ~p",
            "J{1/1}(p) <-> p",
            "I{0/1}(p & ~q)",
        ] {
            let f = parse(s).unwrap();
            assert_eq!(is_l_tautology(&f, 2, false).unwrap(), classical_taut(&f), "{s}");
        }
    }
}
