//! Kripke models with many-valued accessibility relations indexed by
//! propositions, and the evaluation of formulas in them.

mod eval;
mod json;

use std::collections::HashMap;
use std::fmt;

use indexmap::IndexMap;
use thiserror::Error;

use crate::truth::{TruthError, TruthValue};

pub use eval::{
    check_fid, entails_in_model, eval, eval_at, extension, proposition_of, valid_in_model,
    FidViolation,
};
pub use json::{DefaultRelationDoc, LoadError, ModelDoc, RelationDoc};

/// The denotation of a formula: `m` disjoint cells of world indices covering
/// `W`, where cell `i` (0-based) holds the worlds with value `i/(m-1)`.
///
/// Cells are kept sorted, so structurally equal partitions compare and hash
/// equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Proposition {
    cells: Vec<Vec<usize>>,
}

impl Proposition {
    pub fn new(mut cells: Vec<Vec<usize>>) -> Proposition {
        for c in &mut cells {
            c.sort_unstable();
        }
        Proposition { cells }
    }

    /// Groups world indices by value.
    pub fn from_values(values: &[TruthValue], m: u32) -> Proposition {
        let mut cells = vec![Vec::new(); m as usize];
        for (w, v) in values.iter().enumerate() {
            cells[v.numerator() as usize].push(w);
        }
        Proposition { cells }
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    /// Index of the cell containing `world`, if any.
    pub fn cell_of(&self, world: usize) -> Option<usize> {
        self.cells.iter().position(|c| c.binary_search(&world).is_ok())
    }
}

/// What a conditional does when no relation is stored for its antecedent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DefaultRelation {
    /// Evaluation fails with [`EvalError::MissingRelation`].
    #[default]
    Error,
    /// Every pair of worlds is related to this degree (a numerator).
    Constant(u32),
}

/// `R_X` for one proposition `X`: a row-major `|W|×|W|` matrix of numerators.
///
/// Entries are optional so that partial input can be represented and
/// reported by [`KripkeModel::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub prop: Proposition,
    pub matrix: Vec<Option<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("undeclared variable `{0}`")]
    UndeclaredVariable(String),
    #[error("no value for `{var}` at world `{world}`")]
    MissingValuation { var: String, world: String },
    #[error("no relation stored for proposition {0:?}")]
    MissingRelation(Proposition),
    #[error("relation entry ({from}, {to}) missing")]
    MissingRelationEntry { from: String, to: String },
    #[error(transparent)]
    Truth(#[from] TruthError),
}

/// A finite Kripke model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel {
    m: u32,
    worlds: Vec<String>,
    valuation: IndexMap<String, Vec<Option<u32>>>,
    relations: Vec<Relation>,
    lookup: HashMap<Proposition, usize>,
    default_relation: DefaultRelation,
}

/// One problem found by [`KripkeModel::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    InvalidScale(u32),
    NoWorlds,
    DuplicateWorld(String),
    MissingValuation { var: String, world: String },
    ValueOutOfRange { what: String, value: u32 },
    WrongCellCount { relation: usize, found: usize },
    WorldOutOfRange { relation: usize, world: usize },
    OverlappingCells { relation: usize, world: String },
    UncoveredWorld { relation: usize, world: String },
    DuplicateRelation { relation: usize },
    WrongMatrixSize { relation: usize, found: usize },
    MissingMatrixEntry { relation: usize, from: String, to: String },
    DefaultOutOfRange(u32),
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Diagnostic::*;
        match self {
            InvalidScale(m) => write!(f, "scale m = {m} must be at least 2"),
            NoWorlds => f.write_str("model has no worlds"),
            DuplicateWorld(w) => write!(f, "world `{w}` declared twice"),
            MissingValuation { var, world } => write!(f, "no value for `{var}` at `{world}`"),
            ValueOutOfRange { what, value } => write!(f, "{what}: value {value} out of range"),
            WrongCellCount { relation, found } => {
                write!(f, "relation #{relation}: proposition has {found} cells")
            }
            WorldOutOfRange { relation, world } => {
                write!(f, "relation #{relation}: world index {world} out of range")
            }
            OverlappingCells { relation, world } => {
                write!(f, "relation #{relation}: world `{world}` lies in several cells")
            }
            UncoveredWorld { relation, world } => {
                write!(f, "relation #{relation}: world `{world}` lies in no cell")
            }
            DuplicateRelation { relation } => {
                write!(f, "relation #{relation}: proposition stored twice")
            }
            WrongMatrixSize { relation, found } => {
                write!(f, "relation #{relation}: matrix has {found} entries")
            }
            MissingMatrixEntry { relation, from, to } => {
                write!(f, "relation #{relation}: no entry for ({from}, {to})")
            }
            DefaultOutOfRange(c) => write!(f, "default relation value {c} out of range"),
        }
    }
}

impl KripkeModel {
    pub fn new(m: u32, worlds: Vec<String>) -> KripkeModel {
        KripkeModel {
            m,
            worlds,
            valuation: IndexMap::new(),
            relations: Vec::new(),
            lookup: HashMap::new(),
            default_relation: DefaultRelation::Error,
        }
    }

    /// Worlds named `w0, w1, ...`.
    pub fn with_world_count(m: u32, n: usize) -> KripkeModel {
        Self::new(m, (0..n).map(|i| format!("w{i}")).collect())
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn world_count(&self) -> usize {
        self.worlds.len()
    }

    pub fn world_index(&self, name: &str) -> Option<usize> {
        self.worlds.iter().position(|w| w == name)
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.valuation.keys().map(String::as_str)
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn default_relation(&self) -> DefaultRelation {
        self.default_relation
    }

    pub fn set_default_relation(&mut self, d: DefaultRelation) {
        self.default_relation = d;
    }

    /// Declares a variable with no values yet.
    pub fn declare_var(&mut self, var: &str) {
        let n = self.worlds.len();
        self.valuation
            .entry(var.to_string())
            .or_insert_with(|| vec![None; n]);
    }

    pub fn set_value(&mut self, var: &str, world: usize, numerator: u32) {
        self.declare_var(var);
        self.valuation[var][world] = Some(numerator);
    }

    /// Raw stored numerator, if any.
    pub fn value(&self, var: &str, world: usize) -> Option<u32> {
        self.valuation.get(var).and_then(|vals| vals[world])
    }

    /// Stores (or replaces) the relation for `prop`.
    pub fn add_relation(&mut self, prop: Proposition, matrix: Vec<Option<u32>>) {
        if let Some(&i) = self.lookup.get(&prop) {
            self.relations[i].matrix = matrix;
        } else {
            self.lookup.insert(prop.clone(), self.relations.len());
            self.relations.push(Relation { prop, matrix });
        }
    }

    /// Convenience for a complete matrix.
    pub fn add_full_relation(&mut self, prop: Proposition, matrix: Vec<u32>) {
        self.add_relation(prop, matrix.into_iter().map(Some).collect());
    }

    pub(crate) fn pop_relation(&mut self) -> Option<Relation> {
        let r = self.relations.pop()?;
        self.lookup.remove(&r.prop);
        Some(r)
    }

    pub fn relation(&self, prop: &Proposition) -> Option<&Relation> {
        self.lookup.get(prop).map(|&i| &self.relations[i])
    }

    /// Every problem that makes this structure not a well-formed model.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let m = self.m;
        if m < 2 {
            out.push(Diagnostic::InvalidScale(m));
        }
        let n = self.worlds.len();
        if n == 0 {
            out.push(Diagnostic::NoWorlds);
        }
        for (i, w) in self.worlds.iter().enumerate() {
            if self.worlds[..i].contains(w) {
                out.push(Diagnostic::DuplicateWorld(w.clone()));
            }
        }
        for (var, vals) in &self.valuation {
            for (w, v) in vals.iter().enumerate() {
                match v {
                    None => out.push(Diagnostic::MissingValuation {
                        var: var.clone(),
                        world: self.worlds[w].clone(),
                    }),
                    Some(v) if *v >= m => out.push(Diagnostic::ValueOutOfRange {
                        what: format!("valuation of `{var}` at `{}`", self.worlds[w]),
                        value: *v,
                    }),
                    _ => {}
                }
            }
        }
        let mut seen: Vec<&Proposition> = Vec::new();
        for (ri, rel) in self.relations.iter().enumerate() {
            let cells = rel.prop.cells();
            if cells.len() != m as usize {
                out.push(Diagnostic::WrongCellCount {
                    relation: ri,
                    found: cells.len(),
                });
            }
            let mut count = vec![0usize; n];
            for &w in cells.iter().flatten() {
                if w >= n {
                    out.push(Diagnostic::WorldOutOfRange { relation: ri, world: w });
                } else {
                    count[w] += 1;
                }
            }
            for (w, c) in count.iter().enumerate() {
                let world = self.worlds[w].clone();
                if *c > 1 {
                    out.push(Diagnostic::OverlappingCells { relation: ri, world });
                } else if *c == 0 {
                    out.push(Diagnostic::UncoveredWorld { relation: ri, world });
                }
            }
            if seen.contains(&&rel.prop) {
                out.push(Diagnostic::DuplicateRelation { relation: ri });
            }
            seen.push(&rel.prop);
            if rel.matrix.len() != n * n {
                out.push(Diagnostic::WrongMatrixSize {
                    relation: ri,
                    found: rel.matrix.len(),
                });
                continue;
            }
            for (k, entry) in rel.matrix.iter().enumerate() {
                let (from, to) = (self.worlds[k / n].clone(), self.worlds[k % n].clone());
                match entry {
                    None => out.push(Diagnostic::MissingMatrixEntry {
                        relation: ri,
                        from,
                        to,
                    }),
                    Some(v) if *v >= m => out.push(Diagnostic::ValueOutOfRange {
                        what: format!("relation #{ri} entry ({from}, {to})"),
                        value: *v,
                    }),
                    _ => {}
                }
            }
        }
        if let DefaultRelation::Constant(c) = self.default_relation {
            if c >= m {
                out.push(Diagnostic::DefaultOutOfRange(c));
            }
        }
        out
    }
}

/// Free-function form of [`KripkeModel::validate`].
pub fn validate_model(model: &KripkeModel) -> Vec<Diagnostic> {
    model.validate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_worlds() -> KripkeModel {
        let mut m = KripkeModel::with_world_count(3, 2);
        m.set_value("p", 0, 0);
        m.set_value("p", 1, 1);
        m
    }

    #[test]
    fn well_formed_model_has_no_diagnostics() {
        let mut m = two_worlds();
        m.add_full_relation(Proposition::new(vec![vec![0], vec![1], vec![]]), vec![0, 1, 2, 0]);
        assert!(m.validate().is_empty());
    }

    #[test]
    fn overlapping_cells_are_reported() {
        let mut m = two_worlds();
        m.add_full_relation(Proposition::new(vec![vec![0, 1], vec![1], vec![]]), vec![0; 4]);
        assert_eq!(
            m.validate(),
            vec![Diagnostic::OverlappingCells {
                relation: 0,
                world: "w1".into()
            }]
        );
    }

    #[test]
    fn missing_valuation_is_reported() {
        let mut m = two_worlds();
        m.declare_var("q");
        m.set_value("q", 0, 2);
        assert_eq!(
            m.validate(),
            vec![Diagnostic::MissingValuation {
                var: "q".into(),
                world: "w1".into()
            }]
        );
    }

    #[test]
    fn structural_problems_are_reported() {
        let mut m = KripkeModel::new(3, vec![]);
        assert_eq!(m.validate(), vec![Diagnostic::NoWorlds]);
        m = two_worlds();
        m.set_value("p", 0, 7);
        m.add_relation(Proposition::new(vec![vec![0], vec![]]), vec![Some(0), None, Some(3)]);
        m.set_default_relation(DefaultRelation::Constant(5));
        let d = m.validate();
        assert!(d.iter().any(|x| matches!(x, Diagnostic::ValueOutOfRange { value: 7, .. })));
        assert!(d.contains(&Diagnostic::WrongCellCount { relation: 0, found: 2 }));
        assert!(d.contains(&Diagnostic::UncoveredWorld {
            relation: 0,
            world: "w1".into()
        }));
        assert!(d.contains(&Diagnostic::WrongMatrixSize { relation: 0, found: 3 }));
        assert!(d.contains(&Diagnostic::DefaultOutOfRange(5)));
    }

    #[test]
    fn proposition_cells_are_canonical() {
        let a = Proposition::new(vec![vec![2, 0], vec![1], vec![]]);
        let b = Proposition::new(vec![vec![0, 2], vec![1], vec![]]);
        assert_eq!(a, b);
        assert_eq!(a.cell_of(2), Some(0));
        assert_eq!(a.cell_of(5), None);
    }
}
