//! Survey import and agreement classification.
//!
//! `cargo run --example agreement`

use repgrid::aggregation::{format_survey_csv, parse_survey_csv, CellMap};
use repgrid::grid::{FREESTYLE, SCRIPTED};
use repgrid::{
    agreement_matrix, catalog_default_constructs, catalog_default_elements, classify_agreement, AgreementLevel,
    Rating, SurveyResponse,
};

fn main() -> repgrid::Result<()> {
    for (values, n) in [(&[3, 3, 3, 3, 3][..], 5), (&[3, 3, 3, 2, 1], 5), (&[3, 3, 2, 2, 1], 5), (&[3, 3], 5), (&[], 5)] {
        println!("{values:?} of {n} respondents -> {}", classify_agreement(values, n)?);
    }

    let elements = catalog_default_elements();
    let constructs = catalog_default_constructs();

    // the empty template respondents fill in
    let template = format_survey_csv(&CellMap::new(), &elements, &constructs);
    println!("\ntemplate starts with:\n{}", template.lines().take(3).collect::<Vec<_>>().join("\n"));

    // three respondents, every cell rated; they disagree on C9
    let mut responses = Vec::new();
    for (who, c9) in [("ana", 1), ("ben", 2), ("cho", 3)] {
        let mut text = String::from(template.lines().next().unwrap());
        text.push('\n');
        for c in &constructs {
            let v = if c.id == "C9" { c9 } else { 2 };
            text.push_str(&format!("{},{v},{v},{v},{v},{v}\n", c.id));
        }
        let cells = parse_survey_csv(&text, &elements, &constructs)?;
        responses.push(SurveyResponse::new(who, cells));
    }
    // one respondent revises a single cell
    responses[0].set("C1", FREESTYLE, Rating::POSITIVE);

    let m = agreement_matrix(&responses, &elements, &constructs)?;
    println!("\nrespondents: {}", m.respondents);
    for level in [AgreementLevel::Full, AgreementLevel::GoodMedium, AgreementLevel::Low, AgreementLevel::NoData] {
        println!("  {level:<12} {}", m.count(level));
    }
    let cell = m.get("C9", SCRIPTED).unwrap();
    println!("C9 x SCRIPTED: {} with histogram {:?}", cell.level, cell.histogram);
    Ok(())
}
