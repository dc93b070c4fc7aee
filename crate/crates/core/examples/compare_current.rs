//! Comparing a recommendation with how testing time is spent today.
//!
//! `cargo run --example compare_current`

use repgrid::{
    catalog_default_constructs, catalog_default_elements, compare, recommend, Distribution, Grid,
    PriorityAllocation, Rating,
};

fn main() -> repgrid::Result<()> {
    let constructs = catalog_default_constructs();
    let mut grid = Grid::uniform(catalog_default_elements(), constructs.clone(), Rating::NEUTRAL);
    for (e, v) in [("FREESTYLE", 3), ("HIGH", 3), ("SCRIPTED", 1)] {
        grid.set("C16", e, v);
    }
    let priorities = PriorityAllocation::new([("C16", 60), ("C2", 40)], &constructs)?;
    let result = recommend(&grid, &priorities)?;

    let current = Distribution::new([("FREESTYLE", 5.0), ("HIGH", 5.0), ("MEDIUM", 10.0), ("LOW", 20.0), ("SCRIPTED", 60.0)])?;
    for levels in [vec!["FREESTYLE", "HIGH"], vec!["FREESTYLE", "HIGH", "MEDIUM"]] {
        let levels: Vec<String> = levels.into_iter().map(String::from).collect();
        let report = compare(&result, &current, &levels)?;
        println!(
            "exploratory {:?}: recommended {:.1}%, current {:.1}%, {:+.1} points",
            levels, report.recommended_share, report.current_share, report.share_delta
        );
        for (e, d) in &report.deltas {
            println!("  {e:<10} {d:+.1}");
        }
    }

    match Distribution::new([("FREESTYLE", 50.0), ("SCRIPTED", 40.0)]) {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
