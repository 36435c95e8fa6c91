//! Łukasiewicz m-valued conditional logic.
//!
//! * [`truth`]: exact arithmetic on the m-element chain.
//! * [`syntax`] and [`parser`]: formulas, derived connectives, `J`/`I`.
//! * [`semantics`]: Kripke models with proposition-indexed many-valued
//!   accessibility, evaluation, fid.
//! * [`search`]: truth tables, bounded countermodel search, filtration and
//!   random models.
//! * [`proof`]: a checker for Hilbert-style derivations.
//! * [`cli`]: the `lcr` command-line front end.

pub mod cli;
pub mod proof;
pub mod semantics;
pub mod search;
pub mod syntax;
pub mod theorems;
pub mod truth;
pub mod parser;

pub use parser::{parse, print, ParseError, SourceSpan};
pub use semantics::{KripkeModel, Proposition};
pub use syntax::Formula;
pub use truth::{Index, TruthValue};
