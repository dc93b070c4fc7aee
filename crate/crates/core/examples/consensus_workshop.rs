//! A complete workshop in memory: surveys, consensus, voting, recommendation,
//! and the audit trail it leaves behind.
//!
//! `cargo run --example consensus_workshop`

use repgrid::aggregation::CellMap;
use repgrid::report::{recommendation_report, ReportOptions};
use repgrid::{AgreementLevel, Phase, Rating, Session, SurveyResponse};

fn main() -> repgrid::Result<()> {
    let mut s = Session::with_default_catalogs("facilitator");
    s.advance_phase(Phase::Survey, "facilitator")?;

    let elements: Vec<String> = s.elements().iter().map(|e| e.id.clone()).collect();
    let constructs: Vec<String> = s.constructs().iter().map(|c| c.id.clone()).collect();
    for (r, who) in ["ana", "ben", "cho", "dev"].iter().enumerate() {
        let mut cells = CellMap::new();
        for (ci, c) in constructs.iter().enumerate() {
            for (ei, e) in elements.iter().enumerate() {
                let v = 1 + ((ci + ei + r * (ci % 3)) % 3) as i64;
                cells.entry(c.clone()).or_default().insert(e.clone(), Rating::new(v)?);
            }
        }
        s.submit_survey(SurveyResponse::new(*who, cells), who)?;
    }

    let agreement = s.agreement()?;
    println!(
        "agreement: {} FULL, {} GOOD_MEDIUM, {} LOW",
        agreement.count(AgreementLevel::Full),
        agreement.count(AgreementLevel::GoodMedium),
        agreement.count(AgreementLevel::Low)
    );

    s.advance_phase(Phase::Consensus, "facilitator")?;
    let mut discussed = 0;
    for cell in agreement.cells.clone() {
        let h = &cell.histogram;
        let rating = [Rating::NEUTRAL, Rating::POSITIVE, Rating::NEGATIVE]
            .into_iter()
            .max_by_key(|r| h.count(*r))
            .unwrap();
        let rationale = if cell.level == AgreementLevel::Low {
            discussed += 1;
            "settled in discussion"
        } else {
            ""
        };
        s.record_consensus(&cell.construct, &cell.element, rating, rationale, "facilitator")?;
    }
    println!("consensus recorded, {discussed} cells needed discussion");

    s.advance_phase(Phase::Prioritization, "facilitator")?;
    if let Err(e) = s.set_priorities([("C11", 50), ("C16", 40)], "facilitator") {
        println!("first vote rejected: {e}");
    }
    s.set_priorities([("C11", 30), ("C12", 20), ("C16", 40), ("C9", 10)], "facilitator")?;
    s.advance_phase(Phase::Recommendation, "facilitator")?;

    let report = recommendation_report(&s, &ReportOptions::default())?;
    for (e, p) in &report.display_percentages {
        println!("  {e:<10} {p:>5.1}%");
    }

    s.advance_phase(Phase::Closed, "facilitator")?;
    println!("after closing: {}", s.set_priorities([("C1", 100)], "facilitator").unwrap_err());

    println!("audit trail ({} entries), last three:", s.audit_log().len());
    for entry in s.audit_log().iter().rev().take(3) {
        println!("  {} {} {:?}", entry.timestamp, entry.actor, entry.event);
    }
    Ok(())
}
