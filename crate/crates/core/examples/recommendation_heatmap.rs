//! Weighted-sum recommendation, contribution heat-map and CSV export.
//!
//! `cargo run --example recommendation_heatmap`

use repgrid::recommendation::contribution_report_csv;
use repgrid::{
    catalog_default_constructs, catalog_default_elements, contribution_matrix, heatmap_bins, recommend, Grid,
    PriorityAllocation, Rating,
};

fn main() -> repgrid::Result<()> {
    let elements = catalog_default_elements();
    let constructs = catalog_default_constructs();
    let mut grid = Grid::uniform(elements, constructs.clone(), Rating::NEUTRAL);
    // exploratory levels win on creativity, scripted testing on repeatability
    for (e, v) in ["FREESTYLE", "HIGH", "MEDIUM", "LOW", "SCRIPTED"].iter().zip([3, 3, 2, 1, 1]) {
        grid.set("C16", e, v);
    }
    for (e, v) in ["FREESTYLE", "HIGH", "MEDIUM", "LOW", "SCRIPTED"].iter().zip([1, 1, 2, 3, 3]) {
        grid.set("C11", e, v);
        grid.set("C12", e, v);
    }

    let priorities = PriorityAllocation::new(
        [("C11", 20), ("C12", 20), ("C16", 20), ("C1", 10), ("C9", 10), ("C14", 10), ("C15", 10)],
        &constructs,
    )?;
    let result = recommend(&grid, &priorities)?;
    let shown = result.display_percentages();
    for (e, score) in &result.scores {
        println!("{e:<10} score {score:>4}  {:>5.1}%", shown[e]);
    }

    let matrix = contribution_matrix(&grid, &priorities)?;
    let heat = heatmap_bins(&matrix, 3)?;
    println!("\nheat-map bins over [{}, {}]:", heat.min, heat.max);
    for row in &matrix.rows {
        if row.priority == 0 {
            continue;
        }
        let bins: Vec<String> = matrix.elements.iter().map(|e| heat.bin(&row.construct, e).unwrap().to_string()).collect();
        println!("  {:<4} {}", row.construct, bins.join(" "));
    }
    println!("\ntop cells:");
    for (key, v) in matrix.top_cells(3) {
        println!("  {key} {v}");
    }

    print!("\n{}", contribution_report_csv(&matrix, &result));
    Ok(())
}
