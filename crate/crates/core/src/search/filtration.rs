//! Filtration of a model through a subformula-closed set.
//!
//! Worlds agreeing on every formula of `Σ` are merged; relations of the
//! antecedent propositions occurring in `Σ` are lifted by taking the
//! supremum over representatives.

use std::collections::HashMap;

use crate::search::SearchError;
use crate::semantics::{extension, EvalError, KripkeModel, Proposition};
use crate::syntax::{is_subformula_closed, Formula};
use crate::truth::TruthValue;

/// A filtered model together with the map from original worlds to classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    pub model: KripkeModel,
    /// `class_of[w]` is the index of the class of world `w` in `model`.
    pub class_of: Vec<usize>,
}

impl Filtration {
    /// Original world name → class world name.
    pub fn class_map(&self, original: &KripkeModel) -> Vec<(String, String)> {
        original
            .worlds()
            .iter()
            .zip(&self.class_of)
            .map(|(w, &c)| (w.clone(), self.model.worlds()[c].clone()))
            .collect()
    }
}

/// Filtrates `model` through `sigma`, which must be closed under subformulas.
///
/// Classes are ordered by their least representative and named `[w]` after
/// it. Only variables occurring in `sigma` are kept. The default relation
/// policy is inherited.
pub fn filtrate(model: &KripkeModel, sigma: &[Formula]) -> Result<Filtration, SearchError> {
    if !is_subformula_closed(sigma) {
        return Err(SearchError::NotSubformulaClosed);
    }
    let m = model.m();
    let n = model.world_count();
    let exts: Vec<Vec<TruthValue>> = sigma
        .iter()
        .map(|f| extension(model, f))
        .collect::<Result<_, _>>()?;

    let mut class_of = vec![0usize; n];
    let mut reps: Vec<usize> = Vec::new();
    let mut by_signature: HashMap<Vec<u32>, usize> = HashMap::new();
    for w in 0..n {
        let sig: Vec<u32> = exts.iter().map(|e| e[w].numerator()).collect();
        let next = reps.len();
        let c = *by_signature.entry(sig).or_insert(next);
        if c == next {
            reps.push(w);
        }
        class_of[w] = c;
    }
    let k = reps.len();
    let names = reps
        .iter()
        .map(|&w| format!("[{}]", model.worlds()[w]))
        .collect();
    let mut out = KripkeModel::new(m, names);
    out.set_default_relation(model.default_relation());

    let sigma_vars: Vec<&str> = model
        .vars()
        .filter(|v| sigma.iter().any(|f| matches!(f, Formula::Var(x) if x == v)))
        .collect();
    for var in sigma_vars {
        out.declare_var(var);
        for (c, &w) in reps.iter().enumerate() {
            if let Some(v) = model.value(var, w) {
                out.set_value(var, c, v);
            }
        }
    }

    for f in sigma {
        let Formula::Cond(antecedent, _) = f else { continue };
        let pos = sigma.iter().position(|g| g == antecedent.as_ref()).expect("closed");
        let prop = Proposition::from_values(&exts[pos], m);
        let Some(rel) = model.relation(&prop) else { continue };
        let mut cells = vec![Vec::new(); m as usize];
        for (c, &w) in reps.iter().enumerate() {
            let cell = prop.cell_of(w).expect("partition built from values");
            cells[cell].push(c);
        }
        let image = Proposition::new(cells);
        if out.relation(&image).is_some() {
            continue;
        }
        let mut sup = vec![0u32; k * k];
        for x in 0..n {
            for y in 0..n {
                let v = rel.matrix.get(x * n + y).copied().flatten().ok_or_else(|| {
                    EvalError::MissingRelationEntry {
                        from: model.worlds()[x].clone(),
                        to: model.worlds()[y].clone(),
                    }
                })?;
                let slot = &mut sup[class_of[x] * k + class_of[y]];
                *slot = (*slot).max(v);
            }
        }
        out.add_full_relation(image, sup);
    }
    Ok(Filtration {
        model: out,
        class_of,
    })
}

/// A formula of `Σ` whose value at a world differs from the value at its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub formula: Formula,
    pub world: String,
    pub original: TruthValue,
    pub filtered: TruthValue,
}

/// Compares every formula of `sigma` at every world with its class.
pub fn check_preservation(
    original: &KripkeModel,
    filtered: &KripkeModel,
    class_of: &[usize],
    sigma: &[Formula],
) -> Result<Vec<Discrepancy>, SearchError> {
    let mut out = Vec::new();
    for f in sigma {
        let before = extension(original, f)?;
        let after = extension(filtered, f)?;
        for (w, &v) in before.iter().enumerate() {
            let fv = after[class_of[w]];
            if v != fv {
                out.push(Discrepancy {
                    formula: f.clone(),
                    world: original.worlds()[w].clone(),
                    original: v,
                    filtered: fv,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;
    use crate::syntax::subformula_closure;

    fn closure(s: &str) -> Vec<Formula> {
        subformula_closure(&parse(s).unwrap())
    }

    // Two worlds that agree on p and q, plus one that does not.
    fn mergeable() -> KripkeModel {
        let mut m = KripkeModel::with_world_count(3, 3);
        for (w, (p, q)) in [(2, 1), (2, 1), (0, 2)].into_iter().enumerate() {
            m.set_value("p", w, p);
            m.set_value("q", w, q);
        }
        m.set_value("r", 0, 0);
        m.set_value("r", 1, 1);
        m.set_value("r", 2, 2);
        let p = Proposition::new(vec![vec![2], vec![], vec![0, 1]]);
        // rows w0, w1, w2
        m.add_full_relation(p, vec![0, 0, 0, 0, 0, 1, 0, 0, 0]);
        m
    }

    #[test]
    fn supremum_over_merged_class() {
        let m = mergeable();
        let sigma = closure("p => q");
        let filt = filtrate(&m, &sigma).unwrap();
        assert_eq!(filt.class_of, vec![0, 0, 1]);
        assert_eq!(filt.model.worlds(), &["[w0]", "[w2]"]);
        // r is not in Σ
        assert_eq!(filt.model.vars().collect::<Vec<_>>(), vec!["p", "q"]);
        let rel = &filt.model.relations()[0];
        assert_eq!(rel.prop.cells(), &[vec![1], vec![], vec![0]]);
        // ([w0], [w2]) = max(R(w0,w2), R(w1,w2)) = max(0, 1/2)
        assert_eq!(rel.matrix, vec![Some(0), Some(1), Some(0), Some(0)]);
        assert!(check_preservation(&m, &filt.model, &filt.class_of, &sigma)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn distinguishable_worlds_stay_apart() {
        let m = mergeable();
        let sigma = closure("(p => q) -> r");
        let filt = filtrate(&m, &sigma).unwrap();
        assert_eq!(filt.class_of, vec![0, 1, 2]);
        assert_eq!(filt.model.relations()[0].matrix, m.relations()[0].matrix);
        assert!(check_preservation(&m, &filt.model, &filt.class_of, &sigma)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn variable_only_sigma() {
        let m = mergeable();
        let sigma = closure("p");
        let filt = filtrate(&m, &sigma).unwrap();
        assert_eq!(filt.model.world_count(), 2);
        assert!(filt.model.relations().is_empty());
        assert!(check_preservation(&m, &filt.model, &filt.class_of, &sigma)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn open_sigma_is_rejected() {
        let m = mergeable();
        assert_eq!(
            filtrate(&m, &[parse("p => q").unwrap()]),
            Err(SearchError::NotSubformulaClosed)
        );
    }

    #[test]
    fn class_map_names() {
        let m = mergeable();
        let filt = filtrate(&m, &closure("p")).unwrap();
        assert_eq!(
            filt.class_map(&m),
            vec![
                ("w0".to_string(), "[w0]".to_string()),
                ("w1".to_string(), "[w0]".to_string()),
                ("w2".to_string(), "[w2]".to_string())
            ]
        );
    }
}
