//! The built-in elements and constructs, and what grid validation reports.
//!
//! `cargo run --example catalogs`

use repgrid::{catalog_default_constructs, catalog_default_elements, validate_grid, Construct, Grid, Rating};

fn main() {
    let elements = catalog_default_elements();
    let constructs = catalog_default_constructs();

    println!("elements:");
    for e in &elements {
        println!("  {} {:<10} {}", e.ordinal, e.id, e.label);
    }
    println!("constructs:");
    for c in &constructs {
        println!("  {:<4} {}  <->  {}", c.id, c.similarity_pole, c.contrast_pole);
    }

    // a grid with one hole, one out-of-range value and a duplicate construct
    let mut with_dup = constructs.clone();
    with_dup.push(Construct::custom("C1", "again", "again", ""));
    let mut grid = Grid::uniform(elements, with_dup, Rating::NEUTRAL);
    grid.remove("C3", "LOW");
    grid.set("C5", "HIGH", 7);

    println!("violations:");
    for v in validate_grid(&grid) {
        println!("  {v}");
    }
}
