//! Arithmetic on the five-element chain: the MV operations and n(a).

use lcr::truth::{BinaryOp, TruthValue};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = 5;
    let chain = TruthValue::chain(m)?;
    println!("chain at m = {m}: {}", chain.iter().map(|v| v.reduced()).collect::<Vec<_>>().join(", "));

    let a = TruthValue::new(3, m)?;
    let b = TruthValue::new(2, m)?;
    println!("a = {}, b = {}", a.reduced(), b.reduced());
    println!("~a      = {}", a.neg().reduced());
    println!("a -> b  = {}", a.imp(b)?.reduced());
    for op in [BinaryOp::Meet, BinaryOp::Join, BinaryOp::OPlus, BinaryOp::OTimes, BinaryOp::OMinus] {
        println!("{op:?}: {}", a.binary(op, b)?.reduced());
    }

    // n(a): the largest n with n(1 - a) < 1, defined for 1/2 <= a < 1
    for v in chain.iter().filter(|v| 2 * v.numerator() >= v.top() && !v.is_one()) {
        println!("n({}) = {}", v.reduced(), v.n_value()?);
    }
    Ok(())
}
