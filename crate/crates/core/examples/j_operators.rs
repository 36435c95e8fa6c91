//! J_a and I_a as nodes and as their core-connective expansions.

use lcr::search::is_l_tautology;
use lcr::syntax::{mk_i, mk_j};
use lcr::{parse, print, Formula, TruthValue};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = 3;
    let p = Formula::var("p");
    for a in TruthValue::chain(m)? {
        let j = mk_j(a.to_index(), &p, m)?;
        println!("J_{{{}}}(p) = {}", a.to_index(), print(&j));
    }
    let i = mk_i(TruthValue::new(1, m)?.to_index(), &p, m)?;
    println!("I_{{1/2}}(p) has {} nodes once expanded", i.size());

    // The node and its expansion are interchangeable.
    let node = parse("J{1/2}(p)")?;
    let both = Formula::iff(node, mk_j(TruthValue::new(1, m)?.to_index(), &p, m)?);
    println!("J node <-> expansion is a tautology: {}", is_l_tautology(&both, m, false)?);

    // At m = 6 the construction takes its biconditional branch.
    let j = mk_j("3/5".parse()?, &p, 6)?;
    println!("J_{{3/5}}(p) at m = 6 has {} nodes", j.size());
    Ok(())
}
