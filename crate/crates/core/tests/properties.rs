use proptest::prelude::*;

use lcr::proof::{check_derivation, Derivation};
use lcr::search::{check_preservation, filtrate, is_l_tautology, random_model};
use lcr::semantics::{extension, DefaultRelation};
use lcr::syntax::{mk_i, mk_j, subformula_closure};
use lcr::truth::Index;
use lcr::{parse, print, Formula};

fn index() -> impl Strategy<Value = Index> {
    (1u64..=6).prop_flat_map(|d| (0..=d).prop_map(move |k| Index::new(k, d).unwrap()))
}

fn atom() -> impl Strategy<Value = Formula> {
    prop_oneof![
        Just(Formula::Top),
        Just(Formula::Bot),
        prop::sample::select(vec!["p", "q", "r", "s"]).prop_map(Formula::var),
    ]
}

fn formula() -> impl Strategy<Value = Formula> {
    atom().prop_recursive(8, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::cond(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::oplus(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::otimes(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::ominus(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
            (index(), inner.clone()).prop_map(|(i, a)| Formula::j(i, a)),
            (index(), inner).prop_map(|(i, a)| Formula::i(i, a)),
        ]
    })
}

/// Formulas over p, q, r with conditional nesting of at most one.
fn shallow() -> impl Strategy<Value = Formula> {
    let prop = prop::sample::select(vec!["p", "q", "r"])
        .prop_map(Formula::var)
        .prop_recursive(2, 8, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::and(a, b)),
            ]
        });
    prop_oneof![
        prop.clone(),
        (prop.clone(), prop.clone()).prop_map(|(a, b)| Formula::cond(a, b)),
        (prop.clone(), prop.clone(), prop).prop_map(|(a, b, c)| Formula::imp(Formula::cond(a, b), c)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse_is_identity(f in formula()) {
        prop_assert_eq!(parse(&print(&f)).unwrap(), f);
    }

    #[test]
    fn axioms_hold_in_random_models(
        seed in any::<u64>(),
        n in 1usize..=3,
        c in 0u32..3,
        a in shallow(),
        b in shallow(),
        d in shallow(),
    ) {
        let mut model = random_model(seed, 3, n, &["p", "q", "r"], 2);
        model.set_default_relation(DefaultRelation::Constant(c));
        let a1 = Formula::imp(
            Formula::cond(a.clone(), Formula::and(b.clone(), d.clone())),
            Formula::and(Formula::cond(a.clone(), b.clone()), Formula::cond(a.clone(), d.clone())),
        );
        let a2 = Formula::imp(
            Formula::and(Formula::cond(a.clone(), b.clone()), Formula::cond(a.clone(), d.clone())),
            Formula::cond(a.clone(), Formula::and(b, d)),
        );
        let a3 = Formula::cond(a, Formula::Top);
        for f in [a1, a2, a3] {
            if f.conditional_depth() > 3 {
                continue;
            }
            prop_assert!(extension(&model, &f).unwrap().iter().all(|v| v.is_one()), "{}", f);
        }
    }

    #[test]
    fn j_i_nodes_agree_with_expansions(
        m in 2u32..=6,
        seed in any::<u64>(),
        f in shallow(),
        k in 0u32..6,
    ) {
        let a = k % m;
        let idx = Index::new(a as u64, (m - 1) as u64).unwrap();
        let mut model = random_model(seed, m, 3, &["p", "q", "r"], 1);
        model.set_default_relation(DefaultRelation::Constant(seed as u32 % m));
        prop_assert_eq!(
            extension(&model, &Formula::j(idx, f.clone())).unwrap(),
            extension(&model, &mk_j(idx, &f, m).unwrap()).unwrap()
        );
        prop_assert_eq!(
            extension(&model, &Formula::i(idx, f.clone())).unwrap(),
            extension(&model, &mk_i(idx, &f, m).unwrap()).unwrap()
        );
    }

    #[test]
    fn filtration_preserves_sigma(seed in any::<u64>(), n in 1usize..=4, f in shallow()) {
        let mut model = random_model(seed, 3, n, &["p", "q", "r"], 1);
        model.set_default_relation(DefaultRelation::Constant((seed % 3) as u32));
        let sigma = subformula_closure(&f);
        let filt = filtrate(&model, &sigma).unwrap();
        let report = check_preservation(&model, &filt.model, &filt.class_of, &sigma).unwrap();
        prop_assert!(report.is_empty(), "{:?}", report);
        prop_assert!(filt.model.world_count() <= n);
    }
}

fn classical_taut(f: &Formula) -> bool {
    fn value(f: &Formula, env: &dyn Fn(&str) -> bool) -> bool {
        match f {
            Formula::Var(v) => env(v),
            Formula::Top => true,
            Formula::Bot => false,
            Formula::Not(a) => !value(a, env),
            Formula::Imp(a, b) => !value(a, env) || value(b, env),
            Formula::And(a, b) | Formula::OTimes(a, b) => value(a, env) && value(b, env),
            Formula::Or(a, b) | Formula::OPlus(a, b) => value(a, env) || value(b, env),
            Formula::OMinus(a, b) => value(a, env) && !value(b, env),
            Formula::Iff(a, b) => value(a, env) == value(b, env),
            _ => unreachable!(),
        }
    }
    (0..8u32).all(|bits| {
        value(f, &|v: &str| match v {
            "p" => bits & 1 != 0,
            "q" => bits & 2 != 0,
            _ => bits & 4 != 0,
        })
    })
}

fn propositional() -> impl Strategy<Value = Formula> {
    prop::sample::select(vec!["p", "q", "r"])
        .prop_map(Formula::var)
        .prop_recursive(5, 32, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::oplus(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::otimes(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::ominus(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
            ]
        })
}

proptest! {
    #[test]
    fn two_valued_tautologies_are_classical(f in propositional()) {
        prop_assert_eq!(is_l_tautology(&f, 2, false).unwrap(), classical_taut(&f));
    }

    #[test]
    fn acceptance_is_invariant_under_renaming(
        targets in prop::sample::subsequence(vec!["a", "b", "c", "x1", "y_2", "zz"], 3).prop_shuffle()
    ) {
        let text = std::fs::read_to_string(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/data/derivations/rcec_commute.json"
        ))
        .unwrap();
        let d = Derivation::from_json(&text).unwrap();
        let goal = parse("(p => q & r) -> (p => r & q)").unwrap();
        prop_assert_eq!(check_derivation(&d, &goal), Ok(()));
        let map = |v: &str| match v {
            "p" => targets[0].to_string(),
            "q" => targets[1].to_string(),
            "r" => targets[2].to_string(),
            other => other.to_string(),
        };
        let renamed = d.rename(&map);
        prop_assert_eq!(check_derivation(&renamed, &goal.rename(&map)), Ok(()));
        // non-injective renamings are substitutions too
        let collapse = |v: &str| if v == "r" { "q".to_string() } else { v.to_string() };
        prop_assert_eq!(check_derivation(&d.rename(&collapse), &goal.rename(&collapse)), Ok(()));
    }
}
