//! CK does not hold: search for a countermodel and re-check it.

use lcr::search::{countermodel_search, SearchBounds, SearchOutcome};
use lcr::semantics::eval_at;
use lcr::parse;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ck = parse("(p => (q -> r)) -> ((p => q) -> (p => r))")?;
    match countermodel_search(&ck, 3, &SearchBounds::new(2), false)? {
        SearchOutcome::Found(cm) => {
            let world = &cm.model.worlds()[cm.world];
            println!("countermodel after {} candidates, CK = {} at {world}", cm.candidate, cm.value);
            assert_eq!(eval_at(&cm.model, cm.world, &ck)?, cm.value);
            println!("{}", cm.model.to_json());
        }
        SearchOutcome::NoneWithinBounds { candidates } => {
            println!("no countermodel among {candidates} candidates");
        }
    }

    // p => p has a countermodel, unless the search is restricted to fid models.
    let id = parse("p => p")?;
    for fid in [false, true] {
        let found = matches!(countermodel_search(&id, 3, &SearchBounds::new(2), fid)?, SearchOutcome::Found(_));
        println!("p => p, fid = {fid}: countermodel found = {found}");
    }
    Ok(())
}
