//! Build a two-world model by hand, evaluate formulas, and round-trip JSON.

use lcr::semantics::{eval, proposition_of, valid_in_model};
use lcr::{parse, KripkeModel, Proposition};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut model = KripkeModel::new(3, vec!["x".into(), "y".into()]);
    model.set_value("p", 0, 0);
    model.set_value("p", 1, 1);
    model.set_value("q", 0, 2);
    model.set_value("q", 1, 1);
    // |p| = ({x}, {y}, {}); x sees y to degree 1/2
    model.add_full_relation(Proposition::new(vec![vec![0], vec![1], vec![]]), vec![0, 1, 0, 0]);

    for s in ["p", "q", "p => q", "p => p", "p => T", "~p -> q"] {
        let f = parse(s)?;
        println!("{s:>8}: x = {}, y = {}", eval(&model, "x", &f)?, eval(&model, "y", &f)?);
    }
    println!("|p| cells: {:?}", proposition_of(&model, &parse("p")?)?.cells());
    println!("p => T valid: {}", valid_in_model(&model, &parse("p => T")?)?);

    let text = model.to_json();
    assert_eq!(KripkeModel::from_json(&text)?, model);
    println!("{text}");
    Ok(())
}
