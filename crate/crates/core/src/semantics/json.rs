//! The model JSON format.
//!
//! ```json
//! { "m": 3, "worlds": ["x", "y"], "vars": ["p"],
//!   "valuation": { "p": { "x": 0, "y": 1 } },
//!   "relations": [ { "prop": [["x"], ["y"], []],
//!                    "matrix": { "x": { "x": 0, "y": 1 }, "y": { "x": 0, "y": 0 } } } ],
//!   "default_relation": "error" }
//! ```
//!
//! All values are numerators over `m - 1`. `default_relation` is either the
//! string `"error"` or a numerator.

use indexmap::IndexMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::semantics::{DefaultRelation, KripkeModel, Proposition};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("invalid model JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown world `{0}` referenced in {1}")]
    UnknownWorld(String, &'static str),
    #[error("variable `{0}` has a valuation but is not listed in vars")]
    UnlistedVariable(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefaultRelationDoc {
    Error,
    Constant(u32),
}

impl Default for DefaultRelationDoc {
    fn default() -> Self {
        DefaultRelationDoc::Error
    }
}

impl Serialize for DefaultRelationDoc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            DefaultRelationDoc::Error => s.serialize_str("error"),
            DefaultRelationDoc::Constant(c) => s.serialize_u32(*c),
        }
    }
}

impl<'de> Deserialize<'de> for DefaultRelationDoc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(c) => Ok(DefaultRelationDoc::Constant(c)),
            Raw::Str(s) if s == "error" => Ok(DefaultRelationDoc::Error),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "default_relation must be \"error\" or a numerator, got {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationDoc {
    pub prop: Vec<Vec<String>>,
    pub matrix: IndexMap<String, IndexMap<String, u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDoc {
    pub m: u32,
    pub worlds: Vec<String>,
    pub vars: Vec<String>,
    pub valuation: IndexMap<String, IndexMap<String, u32>>,
    #[serde(default)]
    pub relations: Vec<RelationDoc>,
    #[serde(default)]
    pub default_relation: DefaultRelationDoc,
}

impl ModelDoc {
    pub fn from_json(text: &str) -> Result<ModelDoc, LoadError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    /// Resolves world names. Missing entries stay missing, so that
    /// [`KripkeModel::validate`] can report them.
    pub fn to_model(&self) -> Result<KripkeModel, LoadError> {
        let mut model = KripkeModel::new(self.m, self.worlds.clone());
        let index = |w: &str, ctx: &'static str| {
            model_world(&self.worlds, w).ok_or_else(|| LoadError::UnknownWorld(w.to_string(), ctx))
        };
        for var in &self.vars {
            model.declare_var(var);
        }
        for (var, vals) in &self.valuation {
            if !self.vars.contains(var) {
                return Err(LoadError::UnlistedVariable(var.clone()));
            }
            for (w, v) in vals {
                model.set_value(var, index(w, "valuation")?, *v);
            }
        }
        let n = self.worlds.len();
        for rel in &self.relations {
            let cells = rel
                .prop
                .iter()
                .map(|cell| cell.iter().map(|w| index(w, "proposition")).collect())
                .collect::<Result<Vec<Vec<usize>>, _>>()?;
            let mut matrix = vec![None; n * n];
            for (from, row) in &rel.matrix {
                let x = index(from, "matrix")?;
                for (to, v) in row {
                    matrix[x * n + index(to, "matrix")?] = Some(*v);
                }
            }
            model.add_relation(Proposition::new(cells), matrix);
        }
        model.set_default_relation(match self.default_relation {
            DefaultRelationDoc::Error => DefaultRelation::Error,
            DefaultRelationDoc::Constant(c) => DefaultRelation::Constant(c),
        });
        Ok(model)
    }

    /// Canonical document: vars, worlds and matrix rows in model order.
    pub fn from_model(model: &KripkeModel) -> ModelDoc {
        let worlds = model.worlds().to_vec();
        let n = worlds.len();
        let valuation = model
            .vars()
            .map(|var| {
                let row = (0..n)
                    .filter_map(|w| model.value(var, w).map(|v| (worlds[w].clone(), v)))
                    .collect();
                (var.to_string(), row)
            })
            .collect();
        let relations = model
            .relations()
            .iter()
            .map(|rel| RelationDoc {
                prop: rel
                    .prop
                    .cells()
                    .iter()
                    .map(|c| c.iter().filter_map(|&w| worlds.get(w).cloned()).collect())
                    .collect(),
                matrix: (0..n)
                    .map(|x| {
                        let row = (0..n)
                            .filter_map(|y| {
                                rel.matrix
                                    .get(x * n + y)
                                    .copied()
                                    .flatten()
                                    .map(|v| (worlds[y].clone(), v))
                            })
                            .collect();
                        (worlds[x].clone(), row)
                    })
                    .collect(),
            })
            .collect();
        ModelDoc {
            m: model.m(),
            vars: model.vars().map(str::to_string).collect(),
            worlds,
            valuation,
            relations,
            default_relation: match model.default_relation() {
                DefaultRelation::Error => DefaultRelationDoc::Error,
                DefaultRelation::Constant(c) => DefaultRelationDoc::Constant(c),
            },
        }
    }
}

fn model_world(worlds: &[String], name: &str) -> Option<usize> {
    worlds.iter().position(|w| w == name)
}

impl KripkeModel {
    pub fn from_json(text: &str) -> Result<KripkeModel, LoadError> {
        ModelDoc::from_json(text)?.to_model()
    }

    pub fn to_json(&self) -> String {
        ModelDoc::from_model(self).to_json()
    }
}
