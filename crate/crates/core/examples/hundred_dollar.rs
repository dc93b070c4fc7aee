//! Cumulative voting: spreading exactly 100 dollars over constructs.
//!
//! `cargo run --example hundred_dollar`

use repgrid::{catalog_default_constructs, PriorityAllocation};

fn main() {
    let constructs = catalog_default_constructs();

    let attempts: Vec<Vec<(&str, i64)>> = vec![
        vec![("C11", 20), ("C12", 20), ("C16", 20), ("C1", 10), ("C9", 10), ("C14", 10), ("C15", 10)],
        vec![("C1", 50), ("C2", 49)],
        vec![("C1", 120), ("C2", -20)],
        vec![("C99", 100)],
    ];
    for pairs in attempts {
        match PriorityAllocation::new(pairs.clone(), &constructs) {
            Ok(p) => println!("{pairs:?}\n  ok, prioritized: {:?}", p.prioritized().collect::<Vec<_>>()),
            Err(e) => println!("{pairs:?}\n  rejected: {e}"),
        }
    }

    // what-if weights need not total 100
    let what_if = PriorityAllocation::unnormalized([("C11", 3), ("C16", 1)]);
    println!("what-if total: {}", what_if.total());
}
