//! Seeded random models.
//!
//! The generator is ChaCha8 seeded with `seed_from_u64`, so a seed names the
//! same model on every platform. Draw order: valuation (variables in the
//! given order, worlds in order), then one matrix per new variable
//! proposition, then each extra partition followed by its matrix.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::semantics::{KripkeModel, Proposition};

/// A model with uniform valuation and uniform relation degrees.
///
/// Relations are stored for `|p|` of every variable and for `n_extra` random
/// partitions; a proposition that was already stored is skipped. The default
/// relation policy is `Error`, so every conditional with an unstored
/// antecedent fails loudly.
pub fn random_model(seed: u64, m: u32, n_worlds: usize, vars: &[&str], n_extra: usize) -> KripkeModel {
    generate(seed, m, n_worlds, vars, n_extra, false)
}

/// Like [`random_model`], but every `R_X(x, y)` is drawn from `0..=j` where
/// `y` lies in `X_j`, so the model satisfies fid.
pub fn random_fid_model(
    seed: u64,
    m: u32,
    n_worlds: usize,
    vars: &[&str],
    n_extra: usize,
) -> KripkeModel {
    generate(seed, m, n_worlds, vars, n_extra, true)
}

fn generate(
    seed: u64,
    m: u32,
    n: usize,
    vars: &[&str],
    n_extra: usize,
    fid: bool,
) -> KripkeModel {
    assert!(m >= 2 && n >= 1, "random_model needs m >= 2 and at least one world");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut model = KripkeModel::with_world_count(m, n);
    for var in vars {
        model.declare_var(var);
        for w in 0..n {
            model.set_value(var, w, rng.gen_range(0..m));
        }
    }
    let mut props = Vec::new();
    for var in vars {
        let cells = (0..n)
            .map(|w| model.value(var, w).expect("just set") as usize)
            .collect();
        props.push(cells);
    }
    let add = |model: &mut KripkeModel, rng: &mut ChaCha8Rng, cell_of: Vec<usize>| {
        let mut cells = vec![Vec::new(); m as usize];
        for (w, &c) in cell_of.iter().enumerate() {
            cells[c].push(w);
        }
        let prop = Proposition::new(cells);
        if model.relation(&prop).is_some() {
            return;
        }
        let matrix = (0..n * n)
            .map(|k| {
                let hi = if fid { cell_of[k % n] as u32 } else { m - 1 };
                rng.gen_range(0..=hi)
            })
            .collect();
        model.add_full_relation(prop, matrix);
    };
    for cells in props {
        add(&mut model, &mut rng, cells);
    }
    for _ in 0..n_extra {
        let cells = (0..n).map(|_| rng.gen_range(0..m as usize)).collect();
        add(&mut model, &mut rng, cells);
    }
    model
}
