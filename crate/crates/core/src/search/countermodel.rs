//! Bounded countermodel search.
//!
//! Candidates are enumerated in a fixed order: world count ascending, then
//! valuations in lexicographic numerator order (variables sorted by name,
//! worlds in order, first slot most significant), then relation matrices
//! row-major over the allowed values. Only propositions actually consulted by
//! a conditional of the target formula get a relation; they are discovered
//! while evaluating, so antecedents of nested conditionals are re-derived for
//! every choice of outer relations.

use rayon::prelude::*;

use crate::search::SearchError;
use crate::semantics::{extension, DefaultRelation, EvalError, KripkeModel, Proposition};
use crate::syntax::{Formula, RESERVED_ATOM};
use crate::truth::TruthValue;

/// Deepest `≻` nesting the search accepts.
pub const MAX_CONDITIONAL_DEPTH: usize = 3;

const CHUNK: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_worlds: usize,
    /// Relation degrees to enumerate, as numerators; `None` means all of the chain.
    pub relation_values: Option<Vec<u32>>,
    /// Maximum number of candidate models evaluated; `None` for no limit.
    pub budget: Option<u64>,
    pub parallel: bool,
}

impl SearchBounds {
    pub fn new(max_worlds: usize) -> SearchBounds {
        SearchBounds {
            max_worlds,
            relation_values: None,
            budget: None,
            parallel: true,
        }
    }
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds::new(2)
    }
}

/// A model and world where the formula is not designated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    pub model: KripkeModel,
    pub world: usize,
    pub value: TruthValue,
    /// 1-based position of this candidate in the enumeration.
    pub candidate: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Countermodel),
    /// Every candidate within bounds was checked. Not a validity proof.
    NoneWithinBounds { candidates: u64 },
}

enum Local {
    Found(Box<Countermodel>),
    Done(u64),
    Exhausted,
}

struct Ctx<'a> {
    formula: &'a Formula,
    values: &'a [u32],
    require_fid: bool,
}

/// Searches for a model with at most `bounds.max_worlds` worlds in which `f`
/// is not valid.
///
/// Returns [`SearchError::BudgetExhausted`] when the budget runs out before
/// the enumeration completes. Parallel and serial runs return the same
/// answer.
pub fn countermodel_search(
    f: &Formula,
    m: u32,
    bounds: &SearchBounds,
    require_fid: bool,
) -> Result<SearchOutcome, SearchError> {
    if m < 2 {
        return Err(SearchError::InvalidBounds(format!("scale m = {m} must be at least 2")));
    }
    if bounds.max_worlds == 0 {
        return Err(SearchError::InvalidBounds("max_worlds must be at least 1".into()));
    }
    let mut values = match &bounds.relation_values {
        Some(v) => v.clone(),
        None => (0..m).collect(),
    };
    values.sort_unstable();
    values.dedup();
    if values.is_empty() {
        return Err(SearchError::InvalidBounds("relation_values is empty".into()));
    }
    if let Some(bad) = values.iter().find(|&&v| v >= m) {
        return Err(SearchError::InvalidBounds(format!(
            "relation value {bad} out of range for m = {m}"
        )));
    }
    let depth = f.conditional_depth();
    if depth > MAX_CONDITIONAL_DEPTH {
        return Err(SearchError::NestingTooDeep(depth));
    }
    for idx in f.indices() {
        TruthValue::from_index(idx, m)?;
    }

    let budget = bounds.budget.unwrap_or(u64::MAX);
    let ctx = Ctx {
        formula: f,
        values: &values,
        require_fid,
    };
    let vars: Vec<String> = f
        .variables()
        .into_iter()
        .filter(|v| v != RESERVED_ATOM)
        .collect();
    let mut used: u64 = 0;

    for n in 1..=bounds.max_worlds {
        let slots = vars.len() * n;
        let total = (m as u128).checked_pow(slots as u32).ok_or_else(|| {
            SearchError::InvalidBounds(format!("{slots} valuation slots overflow the enumeration"))
        })?;
        let mut base = KripkeModel::with_world_count(m, n);
        for v in &vars {
            base.declare_var(v);
        }
        let mut start: u128 = 0;
        while start < total {
            let end = (start + CHUNK as u128).min(total);
            let cap = budget - used;
            let run = |code: u128| {
                let mut model = base.clone();
                assign(&mut model, &vars, n, m, code);
                let mut count = 0;
                dfs(&ctx, &mut model, cap, &mut count)
            };
            let results: Vec<Local> = if bounds.parallel {
                (start..end).into_par_iter().map(run).collect()
            } else {
                let mut out = Vec::new();
                for code in start..end {
                    let r = run(code);
                    let stop = !matches!(r, Local::Done(_));
                    out.push(r);
                    if stop {
                        break;
                    }
                }
                out
            };
            for r in results {
                match r {
                    Local::Found(mut cm) => {
                        if used + cm.candidate > budget {
                            return Err(SearchError::BudgetExhausted { candidates: budget });
                        }
                        cm.candidate += used;
                        cm.model.set_default_relation(DefaultRelation::Constant(0));
                        return Ok(SearchOutcome::Found(*cm));
                    }
                    Local::Done(k) => {
                        used += k;
                        if used > budget {
                            return Err(SearchError::BudgetExhausted { candidates: budget });
                        }
                    }
                    Local::Exhausted => {
                        return Err(SearchError::BudgetExhausted { candidates: budget })
                    }
                }
            }
            start = end;
        }
    }
    Ok(SearchOutcome::NoneWithinBounds { candidates: used })
}

/// Decodes valuation number `code` (base m, first slot most significant).
fn assign(model: &mut KripkeModel, vars: &[String], n: usize, m: u32, mut code: u128) {
    let slots = vars.len() * n;
    let mut digits = vec![0u32; slots];
    for d in digits.iter_mut().rev() {
        *d = (code % m as u128) as u32;
        code /= m as u128;
    }
    for (s, d) in digits.into_iter().enumerate() {
        model.set_value(&vars[s / n], s % n, d);
    }
}

fn dfs(ctx: &Ctx, model: &mut KripkeModel, cap: u64, count: &mut u64) -> Local {
    match extension(model, ctx.formula) {
        Ok(vals) => {
            if *count == cap {
                return Local::Exhausted;
            }
            *count += 1;
            match vals.iter().position(|v| !v.is_one()) {
                Some(world) => Local::Found(Box::new(Countermodel {
                    model: model.clone(),
                    world,
                    value: vals[world],
                    candidate: *count,
                })),
                None => Local::Done(*count),
            }
        }
        Err(EvalError::MissingRelation(prop)) => {
            let n = model.world_count();
            let cells = n * n;
            let mut digits = vec![0usize; cells];
            loop {
                let matrix: Vec<u32> = digits.iter().map(|&d| ctx.values[d]).collect();
                if !ctx.require_fid || satisfies_fid(&prop, &matrix, n) {
                    model.add_full_relation(prop.clone(), matrix);
                    let r = dfs(ctx, model, cap, count);
                    model.pop_relation();
                    if !matches!(r, Local::Done(_)) {
                        return r;
                    }
                }
                let mut i = cells;
                loop {
                    if i == 0 {
                        return Local::Done(*count);
                    }
                    i -= 1;
                    digits[i] += 1;
                    if digits[i] < ctx.values.len() {
                        break;
                    }
                    digits[i] = 0;
                }
            }
        }
        // Preconditions were checked up front, so any other error is a bug in
        // candidate construction.
        Err(e) => panic!("candidate model failed to evaluate: {e}"),
    }
}

fn satisfies_fid(prop: &Proposition, matrix: &[u32], n: usize) -> bool {
    matrix
        .iter()
        .enumerate()
        .all(|(k, &r)| prop.cell_of(k % n).is_some_and(|j| j >= r as usize))
}
