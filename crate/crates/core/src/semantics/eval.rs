use crate::semantics::{DefaultRelation, EvalError, KripkeModel, Proposition};
use crate::syntax::{Formula, RESERVED_ATOM};
use crate::truth::{TruthError, TruthValue};

/// Value of `f` at every world, in world order.
///
/// Computed bottom-up, so a conditional costs `O(|W|²)` once rather than
/// once per world.
pub fn extension(model: &KripkeModel, f: &Formula) -> Result<Vec<TruthValue>, EvalError> {
    let m = model.m();
    let n = model.world_count();
    let zip = |a: &Formula,
               b: &Formula,
               op: fn(TruthValue, TruthValue) -> Result<TruthValue, TruthError>|
     -> Result<Vec<TruthValue>, EvalError> {
        let (xs, ys) = (extension(model, a)?, extension(model, b)?);
        Ok(xs
            .into_iter()
            .zip(ys)
            .map(|(x, y)| op(x, y))
            .collect::<Result<_, _>>()?)
    };
    match f {
        Formula::Var(name) if name == RESERVED_ATOM => Ok(vec![TruthValue::zero(m)?; n]),
        Formula::Var(name) => {
            let vals = model
                .valuation
                .get(name)
                .ok_or_else(|| EvalError::UndeclaredVariable(name.clone()))?;
            vals.iter()
                .enumerate()
                .map(|(w, v)| {
                    let v = v.ok_or_else(|| EvalError::MissingValuation {
                        var: name.clone(),
                        world: model.worlds()[w].clone(),
                    })?;
                    Ok(TruthValue::new(v, m)?)
                })
                .collect()
        }
        Formula::Top => Ok(vec![TruthValue::one(m)?; n]),
        Formula::Bot => Ok(vec![TruthValue::zero(m)?; n]),
        Formula::Not(a) => Ok(extension(model, a)?.into_iter().map(TruthValue::neg).collect()),
        Formula::Imp(a, b) => zip(a, b, TruthValue::imp),
        Formula::And(a, b) => zip(a, b, TruthValue::meet),
        Formula::Or(a, b) => zip(a, b, TruthValue::join),
        Formula::OPlus(a, b) => zip(a, b, TruthValue::oplus),
        Formula::OTimes(a, b) => zip(a, b, TruthValue::otimes),
        Formula::OMinus(a, b) => zip(a, b, TruthValue::ominus),
        Formula::Iff(a, b) => zip(a, b, TruthValue::iff),
        Formula::J(idx, a) | Formula::I(idx, a) => {
            let target = TruthValue::from_index(*idx, m)?;
            let exact = matches!(f, Formula::J(..));
            let (one, zero) = (TruthValue::one(m)?, TruthValue::zero(m)?);
            Ok(extension(model, a)?
                .into_iter()
                .map(|v| {
                    let hit = if exact {
                        v == target
                    } else {
                        v.numerator() >= target.numerator()
                    };
                    if hit {
                        one
                    } else {
                        zero
                    }
                })
                .collect())
        }
        Formula::Cond(a, b) => {
            let prop = Proposition::from_values(&extension(model, a)?, m);
            let consequent = extension(model, b)?;
            let access = |x: usize, y: usize| -> Result<TruthValue, EvalError> {
                match model.relation(&prop) {
                    Some(rel) => {
                        let v = rel.matrix.get(x * n + y).copied().flatten().ok_or_else(|| {
                            EvalError::MissingRelationEntry {
                                from: model.worlds()[x].clone(),
                                to: model.worlds()[y].clone(),
                            }
                        })?;
                        Ok(TruthValue::new(v, m)?)
                    }
                    None => match model.default_relation() {
                        DefaultRelation::Constant(c) => Ok(TruthValue::new(c, m)?),
                        DefaultRelation::Error => Err(EvalError::MissingRelation(prop.clone())),
                    },
                }
            };
            (0..n)
                .map(|x| {
                    let mut inf = TruthValue::one(m)?;
                    for (y, &c) in consequent.iter().enumerate() {
                        inf = inf.meet(access(x, y)?.imp(c)?)?;
                    }
                    Ok(inf)
                })
                .collect()
        }
    }
}

/// Value of `f` at the world with index `world`.
pub fn eval_at(model: &KripkeModel, world: usize, f: &Formula) -> Result<TruthValue, EvalError> {
    if world >= model.world_count() {
        return Err(EvalError::UnknownWorld(format!("#{world}")));
    }
    Ok(extension(model, f)?[world])
}

/// Value of `f` at the named world.
pub fn eval(model: &KripkeModel, world: &str, f: &Formula) -> Result<TruthValue, EvalError> {
    let idx = model
        .world_index(world)
        .ok_or_else(|| EvalError::UnknownWorld(world.to_string()))?;
    eval_at(model, idx, f)
}

/// The proposition `|f|` expressed by `f` in `model`.
pub fn proposition_of(model: &KripkeModel, f: &Formula) -> Result<Proposition, EvalError> {
    Ok(Proposition::from_values(&extension(model, f)?, model.m()))
}

/// `f` takes the designated value at every world.
pub fn valid_in_model(model: &KripkeModel, f: &Formula) -> Result<bool, EvalError> {
    Ok(extension(model, f)?.iter().all(|v| v.is_one()))
}

/// At every world where all of `sigma` is designated, so is `f`.
pub fn entails_in_model(
    model: &KripkeModel,
    sigma: &[Formula],
    f: &Formula,
) -> Result<bool, EvalError> {
    let premises = sigma
        .iter()
        .map(|s| extension(model, s))
        .collect::<Result<Vec<_>, _>>()?;
    let conclusion = extension(model, f)?;
    Ok((0..model.world_count())
        .filter(|&w| premises.iter().all(|ext| ext[w].is_one()))
        .all(|w| conclusion[w].is_one()))
}

/// A stored relation entry breaking the fid condition: `R_X(x, y) = (i-1)/(m-1)`
/// while `y` lies in a cell `X_j` with `j < i` (or in no cell).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FidViolation {
    pub relation: usize,
    pub from: usize,
    pub to: usize,
    pub degree: u32,
    pub cell: Option<usize>,
}

/// All entries of stored relations violating fid; empty means fid holds.
pub fn check_fid(model: &KripkeModel) -> Vec<FidViolation> {
    let n = model.world_count();
    let mut out = Vec::new();
    for (ri, rel) in model.relations().iter().enumerate() {
        for (k, entry) in rel.matrix.iter().enumerate() {
            let Some(degree) = *entry else { continue };
            let to = k % n;
            let cell = rel.prop.cell_of(to);
            if cell.map_or(true, |j| j < degree as usize) {
                out.push(FidViolation {
                    relation: ri,
                    from: k / n,
                    to,
                    degree,
                    cell,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;
    use crate::semantics::DefaultRelation;
    use crate::syntax::normalize;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn single(v: u32) -> KripkeModel {
        let mut m = KripkeModel::with_world_count(3, 1);
        m.set_value("p", 0, v);
        m
    }

    fn ck_model() -> KripkeModel {
        // x = w0, y = w1
        let mut m = KripkeModel::new(3, vec!["x".into(), "y".into()]);
        for (var, vals) in [("p", [0, 1]), ("q", [0, 1]), ("r", [0, 0])] {
            for (w, v) in vals.into_iter().enumerate() {
                m.set_value(var, w, v);
            }
        }
        // |p| = ({x}, {y}, ∅); R(x,x)=0, R(x,y)=1/2
        m.add_full_relation(Proposition::new(vec![vec![0], vec![1], vec![]]), vec![0, 1, 0, 0]);
        m
    }

    #[test]
    fn eval_examples() {
        let m = single(1);
        assert_eq!(eval(&m, "w0", &f("p -> p")).unwrap().numerator(), 2);
        assert_eq!(eval(&m, "w0", &f("J{1/2}(p)")).unwrap().numerator(), 2);
        assert_eq!(eval(&m, "w0", &f("J{1/1}(p)")).unwrap().numerator(), 0);
        assert_eq!(eval(&m, "w0", &f("I{1/2}(p)")).unwrap().numerator(), 2);
    }

    #[test]
    fn ck_fails_at_half() {
        let m = ck_model();
        let ck = f("(p => (q -> r)) -> ((p => q) -> (p => r))");
        let v = eval(&m, "x", &ck).unwrap();
        assert_eq!(v, TruthValue::new(1, 3).unwrap());
    }

    #[test]
    fn proposition_examples() {
        let m = single(2);
        assert_eq!(
            proposition_of(&m, &f("p")).unwrap().cells(),
            &[vec![], vec![], vec![0]]
        );
        assert_eq!(
            proposition_of(&m, &f("~p")).unwrap().cells(),
            &[vec![0], vec![], vec![]]
        );
        let mut two = KripkeModel::with_world_count(3, 2);
        two.set_value("p", 0, 0);
        two.set_value("p", 1, 1);
        assert_eq!(
            proposition_of(&two, &f("p")).unwrap().cells(),
            &[vec![0], vec![1], vec![]]
        );
    }

    #[test]
    fn validity_and_entailment() {
        let mut m = ck_model();
        assert!(valid_in_model(&m, &f("p => T")).unwrap());
        assert!(!valid_in_model(&single(1), &f("p")).unwrap());
        assert!(entails_in_model(&m, &[f("p")], &f("p")).unwrap());
        // q is never designated, so it entails anything
        assert!(entails_in_model(&m, &[f("q")], &f("r")).unwrap());
        m.set_value("q", 0, 2);
        assert!(!entails_in_model(&m, &[f("q")], &f("r")).unwrap());
    }

    #[test]
    fn eval_errors() {
        let m = single(1);
        assert_eq!(
            eval(&m, "w0", &f("q")).unwrap_err(),
            EvalError::UndeclaredVariable("q".into())
        );
        assert!(matches!(
            eval(&m, "w0", &f("p => p")).unwrap_err(),
            EvalError::MissingRelation(_)
        ));
        assert!(matches!(
            eval(&m, "w0", &f("J{1/3}(p)")).unwrap_err(),
            EvalError::Truth(TruthError::Unrepresentable { .. })
        ));
        assert!(matches!(eval(&m, "nowhere", &f("p")), Err(EvalError::UnknownWorld(_))));
    }

    #[test]
    fn default_constant_zero_makes_conditionals_vacuous() {
        let mut m = single(0);
        m.set_default_relation(DefaultRelation::Constant(0));
        assert!(eval(&m, "w0", &f("p => p")).unwrap().is_one());
        m.set_default_relation(DefaultRelation::Constant(2));
        assert!(eval(&m, "w0", &f("p => p")).unwrap().is_zero());
    }

    #[test]
    fn fid_examples() {
        let mut m = KripkeModel::with_world_count(3, 2);
        m.set_value("p", 0, 0);
        m.set_value("p", 1, 1);
        let x = Proposition::new(vec![vec![0], vec![1], vec![]]);
        m.add_full_relation(x.clone(), vec![0; 4]);
        assert!(check_fid(&m).is_empty());
        // R(x, y) = 1/2 with y in X_2 is allowed
        m.add_full_relation(x.clone(), vec![0, 1, 0, 0]);
        assert!(check_fid(&m).is_empty());
        // R(x, w0) = 1 with w0 in X_1 is not
        m.add_full_relation(x, vec![2, 0, 0, 0]);
        let v = check_fid(&m);
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].from, v[0].to, v[0].degree, v[0].cell), (0, 0, 2, Some(0)));
    }

    #[test]
    fn node_and_expansion_agree_on_fixed_model() {
        let m = ck_model();
        for s in ["J{1/2}(q)", "I{1/2}(p -> r)", "p & q", "p (-) q", "p <-> ~q", "T", "F"] {
            let g = f(s);
            assert_eq!(
                extension(&m, &g).unwrap(),
                extension(&m, &normalize(&g, 3).unwrap()).unwrap(),
                "{s}"
            );
        }
    }
}
