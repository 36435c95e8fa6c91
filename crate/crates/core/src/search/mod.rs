//! Tautology checking for the propositional base, bounded countermodel
//! search, filtration and random model generation.

mod countermodel;
mod filtration;
mod random;
mod taut;

use thiserror::Error;

use crate::semantics::EvalError;
use crate::truth::TruthError;

pub use countermodel::{
    countermodel_search, Countermodel, SearchBounds, SearchOutcome, MAX_CONDITIONAL_DEPTH,
};
pub use filtration::{check_preservation, filtrate, Discrepancy, Filtration};
pub use random::{random_fid_model, random_model};
pub use taut::{falsifying_assignment, is_l_tautology};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("formula contains a conditional; enable conditional abstraction")]
    ConditionalInPropositional,
    #[error("invalid search bounds: {0}")]
    InvalidBounds(String),
    #[error("conditional nesting depth {0} exceeds the supported maximum of 3")]
    NestingTooDeep(usize),
    #[error("budget exhausted after {candidates} candidates")]
    BudgetExhausted { candidates: u64 },
    #[error("set is not closed under subformulas")]
    NotSubformulaClosed,
    #[error(transparent)]
    Truth(#[from] TruthError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}
