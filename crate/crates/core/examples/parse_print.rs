//! Parse formulas, print them with minimal parentheses, and show errors.

use lcr::parser::parse_corpus;
use lcr::{parse, print};

fn main() {
    for s in [
        "p -> q -> r",
        "(p -> q) -> r",
        "~p & q | r",
        "p (+) q (*) r",
        "(p => q) <-> (p => ~~q)",
        "J{2/4}(p) -> I{1/1}(p | q)",
        "T => F",
    ] {
        let f = parse(s).expect("valid");
        println!("{s:32} => {}", print(&f));
    }
    for bad in ["p ->", "(p & q", "J{3/2}(p)", "p => q => r", "_t"] {
        match parse(bad) {
            Ok(f) => println!("{bad:12} parsed as {f}"),
            Err(e) => println!("{bad:12} error: {e}"),
        }
    }
    let corpus = "# one formula per line\np -> p\n\n(p => q) & r\n";
    for (line, f) in parse_corpus(corpus).expect("valid corpus") {
        println!("line {line}: {f}");
    }
}
