//! The propositional theorem corpus: 21 schemas, each instantiated with
//! distinct variables (`p`, `q`, `r`) and every admissible index.
//!
//! Two schemas are stated here in a repaired form:
//! schema 1 uses `J_1` as its indicator, and schema 15 chains its antecedent
//! `m-1` times. [`literal_schema_15`] gives the unrepaired shape, which is
//! not a tautology for `m >= 3`.

use crate::syntax::{imp_chain, Formula};
use crate::truth::{Index, TruthValue};

/// One instance of a schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    /// Schema number, 1 to 21.
    pub schema: u8,
    /// Index parameters used, e.g. `a=1/2 b=1/1`; empty when unindexed.
    pub params: String,
    pub formula: Formula,
}

fn p() -> Formula {
    Formula::var("p")
}
fn q() -> Formula {
    Formula::var("q")
}
fn r() -> Formula {
    Formula::var("r")
}

fn chain_indices(m: u32) -> Vec<Index> {
    TruthValue::chain(m)
        .expect("m >= 2")
        .into_iter()
        .map(TruthValue::to_index)
        .collect()
}

/// Every instance of every schema at scale `m`, in schema order.
pub fn instances(m: u32) -> Vec<Instance> {
    assert!(m >= 2, "scale must be at least 2");
    let t = chain_indices(m);
    let one = Index::one();
    let mut out = Vec::new();
    let mut push = |schema: u8, params: String, formula: Formula| {
        out.push(Instance {
            schema,
            params,
            formula,
        })
    };
    use Formula as F;

    push(1, String::new(), imp_chain(&vec![p(); m as usize - 1], F::j(one, p())));
    push(2, String::new(), F::imp(F::and(p(), q()), F::and(q(), p())));
    for &a in &t {
        let ja = F::j(a, p());
        push(
            3,
            format!("a={a}"),
            F::imp(
                F::imp(ja.clone(), F::imp(ja.clone(), q())),
                F::imp(ja, q()),
            ),
        );
    }
    let premises: Vec<Formula> = t.iter().map(|&c| F::imp(F::j(c, p()), q())).collect();
    push(4, String::new(), imp_chain(&premises, q()));
    push(5, String::new(), F::imp(F::j(one, p()), p()));
    push(
        6,
        String::new(),
        F::imp(
            F::imp(p(), F::imp(q(), r())),
            F::imp(q(), F::imp(p(), r())),
        ),
    );
    push(7, String::new(), F::imp(F::and(p(), q()), p()));
    push(8, String::new(), F::iff(p(), F::not(F::not(p()))));
    push(9, String::new(), F::imp(p(), F::imp(q(), p())));
    push(10, String::new(), F::imp(F::otimes(q(), F::imp(q(), r())), r()));
    push(
        11,
        String::new(),
        F::iff(
            F::imp(F::otimes(p(), q()), r()),
            F::imp(p(), F::imp(q(), r())),
        ),
    );
    push(
        12,
        String::new(),
        F::imp(
            F::imp(p(), q()),
            F::imp(F::imp(p(), r()), F::imp(p(), F::and(q(), r()))),
        ),
    );
    for &a in &t {
        for &b in t.iter().filter(|&&b| a < b) {
            push(
                13,
                format!("a={a} b={b}"),
                F::imp(F::j(a, q()), F::not(F::i(b, q()))),
            );
        }
    }
    let premises: Vec<Formula> = t
        .iter()
        .map(|&c| F::iff(F::j(c, p()), F::j(c, q())))
        .collect();
    push(14, String::new(), imp_chain(&premises, F::iff(p(), q())));
    for &c in &t {
        let antecedents = vec![F::iff(p(), q()); m as usize - 1];
        push(
            15,
            format!("c={c}"),
            imp_chain(&antecedents, F::iff(F::j(c, p()), F::j(c, q()))),
        );
    }
    for &a in &t {
        push(
            16,
            format!("a={a}"),
            F::iff(F::j(one, F::j(a, q())), F::j(a, q())),
        );
    }
    for &a in &t {
        let ia = F::i(a, p());
        push(
            17,
            format!("a={a}"),
            F::imp(
                F::imp(ia.clone(), F::imp(ia.clone(), q())),
                F::imp(ia, q()),
            ),
        );
    }
    for &a in &t {
        push(
            18,
            format!("a={a}"),
            F::iff(F::i(a, F::and(q(), r())), F::and(F::i(a, q()), F::i(a, r()))),
        );
    }
    for &a in &t {
        for &b in &t {
            for &c in &t {
                let (ia, ib, ic) = (F::i(a, p()), F::i(b, q()), F::i(c, r()));
                push(
                    19,
                    format!("a={a} b={b} c={c}"),
                    F::iff(
                        F::imp(ia.clone(), F::imp(ib.clone(), ic.clone())),
                        F::imp(F::and(ia, ib), ic),
                    ),
                );
            }
        }
    }
    for &a in &t {
        let nia = F::not(F::i(a, p()));
        push(20, format!("a={a}"), F::iff(F::j(one, nia.clone()), nia));
    }
    for &a in &t {
        for &b in t.iter().filter(|&&b| a >= b) {
            push(
                21,
                format!("a={a} b={b}"),
                F::imp(F::i(a, q()), F::i(b, q())),
            );
        }
    }
    out
}

/// Schema 15 with a single antecedent: `(p ↔ q) → (J_c(p) ↔ J_c(q))`.
pub fn literal_schema_15(m: u32) -> Vec<Instance> {
    chain_indices(m)
        .into_iter()
        .map(|c| Instance {
            schema: 15,
            params: format!("c={c}"),
            formula: Formula::imp(
                Formula::iff(p(), q()),
                Formula::iff(Formula::j(c, p()), Formula::j(c, q())),
            ),
        })
        .collect()
}
