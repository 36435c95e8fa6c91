//! Filtrate a random model through the subformula closure of a formula.

use lcr::search::{check_preservation, filtrate, random_model};
use lcr::syntax::subformula_closure;
use lcr::parse;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse("(p => q) -> q")?;
    let sigma = subformula_closure(&f);
    for seed in 0..5 {
        let model = random_model(seed, 3, 6, &["p", "q"], 0);
        let filt = filtrate(&model, &sigma)?;
        let report = check_preservation(&model, &filt.model, &filt.class_of, &sigma)?;
        println!(
            "seed {seed}: {} worlds -> {} classes, {} discrepancies, classes {:?}",
            model.world_count(),
            filt.model.world_count(),
            report.len(),
            filt.class_of
        );
    }
    Ok(())
}
