//! Workflow state of one facilitated session and its versioned JSON
//! document.
//!
//! A session moves SETUP -> SURVEY -> CONSENSUS -> PRIORITIZATION ->
//! RECOMMENDATION -> CLOSED. Phases only move forward, except that
//! PRIORITIZATION may return to CONSENSUS when discussion reopens ratings.
//! Every mutation appends to the audit log.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use chrono::{DateTime, Utc};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::aggregation::{agreement_matrix, AgreementLevel, AgreementMatrix, ConsensusCell, SurveyResponse};
use crate::error::{Error, Result};
use crate::grid::{
    catalog_default_constructs, catalog_default_elements, validate_catalogs, CellKey, Construct,
    Element, Grid, Rating,
};
use crate::recommendation::{recommend, Distribution, PriorityAllocation, RecommendationResult};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Phase {
    Setup,
    Survey,
    Consensus,
    Prioritization,
    Recommendation,
    Closed,
}

impl Phase {
    pub const ALL: [Phase; 6] = [
        Phase::Setup,
        Phase::Survey,
        Phase::Consensus,
        Phase::Prioritization,
        Phase::Recommendation,
        Phase::Closed,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Setup => "SETUP",
            Phase::Survey => "SURVEY",
            Phase::Consensus => "CONSENSUS",
            Phase::Prioritization => "PRIORITIZATION",
            Phase::Recommendation => "RECOMMENDATION",
            Phase::Closed => "CLOSED",
        }
    }

    pub fn can_transition_to(self, target: Phase) -> bool {
        self != Phase::Closed
            && (target > self || (self == Phase::Prioritization && target == Phase::Consensus))
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Phase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Phase::ALL
            .into_iter()
            .find(|p| p.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::invalid(format!("unknown phase {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum AuditEvent {
    SessionCreated {
        elements: usize,
        constructs: usize,
    },
    PhaseChanged {
        from: Phase,
        to: Phase,
    },
    SurveySubmitted {
        respondent_id: String,
        replaced: bool,
    },
    ConsensusRecorded {
        construct: String,
        element: String,
        rating: Rating,
        rationale: String,
        resolved_from: AgreementLevel,
    },
    PrioritiesSet {
        dollars: BTreeMap<String, u64>,
    },
    CurrentDistributionSet {
        percentages: IndexMap<String, f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditEntry {
    pub timestamp: DateTime<Utc>,
    pub actor: String,
    pub event: AuditEvent,
}

/// construct -> element -> consensus value
pub type ConsensusMap = BTreeMap<String, BTreeMap<String, ConsensusCell>>;

#[derive(Debug, Clone, PartialEq)]
pub struct Session {
    elements: Vec<Element>,
    constructs: Vec<Construct>,
    responses: Vec<SurveyResponse>,
    consensus: ConsensusMap,
    priorities: Option<PriorityAllocation>,
    current_distribution: Option<Distribution>,
    phase: Phase,
    audit_log: Vec<AuditEntry>,
}

/// On-disk layout. Field order is the document's field order.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    schema_version: u64,
    elements: Vec<Element>,
    constructs: Vec<Construct>,
    responses: Vec<SurveyResponse>,
    consensus: ConsensusMap,
    priorities: Option<PriorityAllocation>,
    current_distribution: Option<Distribution>,
    phase: Phase,
    audit_log: Vec<AuditEntry>,
}

#[derive(Deserialize)]
struct VersionProbe {
    schema_version: Option<u64>,
}

impl Session {
    /// A new session in SETUP. Elements are stored in ordinal order.
    pub fn create(mut elements: Vec<Element>, constructs: Vec<Construct>, actor: &str) -> Result<Self> {
        let mut problems = Vec::new();
        if elements.is_empty() {
            problems.push("a session needs at least one element".to_owned());
        }
        if constructs.is_empty() {
            problems.push("a session needs at least one construct".to_owned());
        }
        problems.extend(
            validate_catalogs(&elements, &constructs)
                .iter()
                .map(ToString::to_string),
        );
        if !problems.is_empty() {
            return Err(Error::Validation(problems));
        }
        elements.sort_by_key(|e| e.ordinal);
        let mut session = Self {
            elements,
            constructs,
            responses: Vec::new(),
            consensus: ConsensusMap::new(),
            priorities: None,
            current_distribution: None,
            phase: Phase::Setup,
            audit_log: Vec::new(),
        };
        session.log(
            actor,
            AuditEvent::SessionCreated {
                elements: session.elements.len(),
                constructs: session.constructs.len(),
            },
        );
        Ok(session)
    }

    /// A session over the built-in five elements and seventeen constructs.
    pub fn with_default_catalogs(actor: &str) -> Self {
        Self::create(catalog_default_elements(), catalog_default_constructs(), actor)
            .expect("built-in catalogs are valid")
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn constructs(&self) -> &[Construct] {
        &self.constructs
    }

    pub fn responses(&self) -> &[SurveyResponse] {
        &self.responses
    }

    pub fn consensus(&self) -> &ConsensusMap {
        &self.consensus
    }

    pub fn consensus_cell(&self, construct: &str, element: &str) -> Option<&ConsensusCell> {
        self.consensus.get(construct)?.get(element)
    }

    pub fn priorities(&self) -> Option<&PriorityAllocation> {
        self.priorities.as_ref()
    }

    pub fn current_distribution(&self) -> Option<&Distribution> {
        self.current_distribution.as_ref()
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn audit_log(&self) -> &[AuditEntry] {
        &self.audit_log
    }

    fn log(&mut self, actor: &str, event: AuditEvent) {
        self.audit_log.push(AuditEntry {
            timestamp: Utc::now(),
            actor: actor.to_owned(),
            event,
        });
    }

    fn ensure_open(&self) -> Result<()> {
        if self.phase == Phase::Closed {
            Err(Error::SessionClosed)
        } else {
            Ok(())
        }
    }

    fn require_phase(&self, operation: &'static str, allowed: &[Phase]) -> Result<()> {
        self.ensure_open()?;
        if allowed.contains(&self.phase) {
            Ok(())
        } else {
            Err(Error::WrongPhase {
                operation,
                current: self.phase,
                required: allowed
                    .iter()
                    .map(|p| p.as_str())
                    .collect::<Vec<_>>()
                    .join(" or "),
            })
        }
    }

    fn check_cell(&self, construct: &str, element: &str) -> Result<()> {
        let known_construct = self.constructs.iter().any(|c| c.id == construct);
        let known_element = self.elements.iter().any(|e| e.id == element);
        if known_construct && known_element {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "unknown cell {}",
                CellKey::new(construct, element)
            )))
        }
    }

    pub fn advance_phase(&mut self, target: Phase, actor: &str) -> Result<()> {
        self.ensure_open()?;
        if !self.phase.can_transition_to(target) {
            return Err(Error::IllegalTransition {
                from: self.phase,
                to: target,
            });
        }
        let from = std::mem::replace(&mut self.phase, target);
        self.log(actor, AuditEvent::PhaseChanged { from, to: target });
        Ok(())
    }

    /// Stores a respondent's survey; a resubmission replaces the earlier one.
    pub fn submit_survey(&mut self, response: SurveyResponse, actor: &str) -> Result<()> {
        self.require_phase("survey submission", &[Phase::Survey])?;
        response.validate(&self.elements, &self.constructs)?;
        let respondent_id = response.respondent_id.clone();
        let replaced = match self
            .responses
            .iter_mut()
            .find(|r| r.respondent_id == respondent_id)
        {
            Some(existing) => {
                *existing = response;
                true
            }
            None => {
                self.responses.push(response);
                false
            }
        };
        self.log(
            actor,
            AuditEvent::SurveySubmitted {
                respondent_id,
                replaced,
            },
        );
        Ok(())
    }

    /// Agreement over the submitted surveys. Participants who never
    /// submitted do not count toward n.
    pub fn agreement(&self) -> Result<AgreementMatrix> {
        agreement_matrix(&self.responses, &self.elements, &self.constructs)
    }

    /// Records (or overwrites) the consensus value of one cell. The
    /// agreement level at this moment is kept alongside it.
    pub fn record_consensus(
        &mut self,
        construct: &str,
        element: &str,
        rating: Rating,
        rationale: &str,
        actor: &str,
    ) -> Result<()> {
        self.require_phase("consensus recording", &[Phase::Consensus])?;
        self.check_cell(construct, element)?;
        let key = CellKey::new(construct, element);
        let resolved_from = self.agreement()?.level(construct, element);
        let cell = ConsensusCell::new(&key, rating, rationale, resolved_from)?;
        self.consensus
            .entry(key.construct.clone())
            .or_default()
            .insert(key.element.clone(), cell);
        self.log(
            actor,
            AuditEvent::ConsensusRecorded {
                construct: key.construct,
                element: key.element,
                rating,
                rationale: rationale.to_owned(),
                resolved_from,
            },
        );
        Ok(())
    }

    pub fn set_priorities<I, K>(&mut self, dollars: I, actor: &str) -> Result<&PriorityAllocation>
    where
        I: IntoIterator<Item = (K, i64)>,
        K: Into<String>,
    {
        self.require_phase(
            "priority allocation",
            &[Phase::Prioritization, Phase::Recommendation],
        )?;
        let allocation = PriorityAllocation::new(dollars, &self.constructs)?;
        self.log(
            actor,
            AuditEvent::PrioritiesSet {
                dollars: allocation.dollars.clone(),
            },
        );
        Ok(self.priorities.insert(allocation))
    }

    pub fn set_current_distribution(&mut self, distribution: Distribution, actor: &str) -> Result<()> {
        self.ensure_open()?;
        distribution.validate()?;
        distribution.validate_for(&self.elements)?;
        // keep the session's element order
        let percentages: IndexMap<String, f64> = self
            .elements
            .iter()
            .map(|e| (e.id.clone(), distribution.percentages[e.id.as_str()]))
            .collect();
        self.log(
            actor,
            AuditEvent::CurrentDistributionSet {
                percentages: percentages.clone(),
            },
        );
        self.current_distribution = Some(Distribution { percentages });
        Ok(())
    }

    /// The consensus values as a (possibly incomplete) grid.
    pub fn consensus_grid(&self) -> Grid {
        consensus_to_grid(&self.elements, &self.constructs, &self.consensus)
    }

    /// Constructs with nonzero priority that still lack consensus cells.
    pub fn missing_consensus(&self) -> Vec<CellKey> {
        let Some(priorities) = &self.priorities else {
            return Vec::new();
        };
        let grid = self.consensus_grid();
        priorities
            .prioritized()
            .flat_map(|c| self.elements.iter().map(move |e| CellKey::new(c, &e.id)))
            .filter(|k| grid.cell(&k.construct, &k.element).is_none())
            .collect()
    }

    pub fn recommendation(&self) -> Result<RecommendationResult> {
        let priorities = self.priorities.as_ref().ok_or(Error::PrioritiesNotSet)?;
        recommend(&self.consensus_grid(), priorities)
    }

    /// Rebuilds consensus values and priorities from the audit log alone.
    pub fn replay_inputs(&self) -> (Grid, Option<PriorityAllocation>) {
        let mut consensus = ConsensusMap::new();
        let mut priorities = None;
        for entry in &self.audit_log {
            match &entry.event {
                AuditEvent::ConsensusRecorded {
                    construct,
                    element,
                    rating,
                    rationale,
                    resolved_from,
                } => {
                    consensus.entry(construct.clone()).or_default().insert(
                        element.clone(),
                        ConsensusCell {
                            rating: *rating,
                            rationale: rationale.clone(),
                            resolved_from: *resolved_from,
                        },
                    );
                }
                AuditEvent::PrioritiesSet { dollars } => {
                    priorities = Some(PriorityAllocation {
                        dollars: dollars.clone(),
                    });
                }
                _ => {}
            }
        }
        (
            consensus_to_grid(&self.elements, &self.constructs, &consensus),
            priorities,
        )
    }

    /// Serializes to the versioned session document.
    pub fn to_json(&self) -> String {
        let doc = Document {
            schema_version: SCHEMA_VERSION,
            elements: self.elements.clone(),
            constructs: self.constructs.clone(),
            responses: self.responses.clone(),
            consensus: self.consensus.clone(),
            priorities: self.priorities.clone(),
            current_distribution: self.current_distribution.clone(),
            phase: self.phase,
            audit_log: self.audit_log.clone(),
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("session documents always serialize");
        out.push('\n');
        out
    }

    /// Parses and validates a session document. Either the whole document is
    /// accepted or an error is returned.
    pub fn from_json(text: &str) -> Result<Self> {
        let probe: VersionProbe = serde_json::from_str(text).map_err(|e| Error::from_json(&e))?;
        match probe.schema_version {
            Some(SCHEMA_VERSION) => {}
            Some(other) => return Err(Error::UnsupportedVersion(other)),
            None => {
                return Err(Error::Parse {
                    line: 1,
                    column: 1,
                    message: "missing field `schema_version`".to_owned(),
                })
            }
        }
        let doc: Document = serde_json::from_str(text).map_err(|e| Error::from_json(&e))?;
        let session = Self {
            elements: doc.elements,
            constructs: doc.constructs,
            responses: doc.responses,
            consensus: doc.consensus,
            priorities: doc.priorities,
            current_distribution: doc.current_distribution,
            phase: doc.phase,
            audit_log: doc.audit_log,
        };
        session.check_loaded()?;
        Ok(session)
    }

    fn check_loaded(&self) -> Result<()> {
        let mut problems: Vec<String> = validate_catalogs(&self.elements, &self.constructs)
            .iter()
            .map(ToString::to_string)
            .collect();
        if self.elements.is_empty() || self.constructs.is_empty() {
            problems.push("session needs elements and constructs".to_owned());
        }
        if self.elements.windows(2).any(|w| w[0].ordinal > w[1].ordinal) {
            problems.push("elements are not stored in ordinal order".to_owned());
        }
        let mut respondents = BTreeSet::new();
        for r in &self.responses {
            if !respondents.insert(r.respondent_id.as_str()) {
                problems.push(format!("duplicate respondent {}", r.respondent_id));
            }
            if let Err(e) = r.validate(&self.elements, &self.constructs) {
                problems.extend(e.messages());
            }
        }
        for (construct, row) in &self.consensus {
            for element in row.keys() {
                if let Err(e) = self.check_cell(construct, element) {
                    problems.extend(e.messages());
                }
            }
        }
        if let Some(p) = &self.priorities {
            let as_signed = p.dollars.iter().map(|(k, &v)| (k.clone(), v as i64));
            if let Err(e) = PriorityAllocation::new(as_signed, &self.constructs) {
                problems.extend(e.messages());
            }
        }
        if let Some(d) = &self.current_distribution {
            if let Err(e) = d.validate().and_then(|_| d.validate_for(&self.elements)) {
                problems.extend(e.messages());
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(problems))
        }
    }
}

fn consensus_to_grid(elements: &[Element], constructs: &[Construct], consensus: &ConsensusMap) -> Grid {
    let mut grid = Grid::new(elements.to_vec(), constructs.to_vec());
    for (construct, row) in consensus {
        for (element, cell) in row {
            grid.set_rating(construct, element, cell.rating);
        }
    }
    grid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aggregation::CellMap;
    use crate::grid::{FREESTYLE, HIGH, MEDIUM};

    fn r(v: i64) -> Rating {
        Rating::new(v).unwrap()
    }

    #[test]
    fn default_session() {
        let s = Session::with_default_catalogs("tester");
        assert_eq!(s.elements().len(), 5);
        assert_eq!(s.constructs().len(), 17);
        assert_eq!(s.phase(), Phase::Setup);
        assert_eq!(s.audit_log().len(), 1);
    }

    #[test]
    fn custom_elements_and_bad_catalogs() {
        let mut els = catalog_default_elements();
        els.push(Element::new("HYBRID", "Hybrid", "", 5));
        let s = Session::create(els, catalog_default_constructs(), "t").unwrap();
        assert_eq!(s.elements().len(), 6);

        assert!(Session::create(catalog_default_elements(), vec![], "t").is_err());
        let mut dup = catalog_default_constructs();
        dup.push(dup[0].clone());
        let err = Session::create(catalog_default_elements(), dup, "t").unwrap_err();
        assert!(err.to_string().contains("duplicate construct id C1"));
    }

    #[test]
    fn phase_rules() {
        let mut s = Session::with_default_catalogs("t");
        s.advance_phase(Phase::Survey, "t").unwrap();
        let err = s.advance_phase(Phase::Setup, "t").unwrap_err();
        assert!(err.to_string().contains("SURVEY") && err.to_string().contains("SETUP"));
        s.advance_phase(Phase::Prioritization, "t").unwrap();
        s.advance_phase(Phase::Consensus, "t").unwrap();
        s.advance_phase(Phase::Prioritization, "t").unwrap();
        assert!(s.advance_phase(Phase::Prioritization, "t").is_err());
        s.advance_phase(Phase::Closed, "t").unwrap();
        assert!(matches!(s.advance_phase(Phase::Closed, "t"), Err(Error::SessionClosed)));
        assert!(matches!(
            s.set_current_distribution(Distribution::new([("FREESTYLE", 100.0)]).unwrap(), "t"),
            Err(Error::SessionClosed)
        ));
    }

    #[test]
    fn phase_parsing() {
        assert_eq!("consensus".parse::<Phase>().unwrap(), Phase::Consensus);
        assert!("later".parse::<Phase>().is_err());
    }

    #[test]
    fn survey_submission_and_replacement() {
        let mut s = Session::with_default_catalogs("t");
        let resp = SurveyResponse::new("R1", CellMap::new());
        let err = s.submit_survey(resp.clone(), "R1").unwrap_err();
        assert!(err.to_string().contains("phase"));
        s.advance_phase(Phase::Survey, "t").unwrap();
        s.submit_survey(resp.clone(), "R1").unwrap();
        assert_eq!(s.responses().len(), 1);
        let mut second = resp;
        second.set("C1", FREESTYLE, r(3));
        s.submit_survey(second, "R1").unwrap();
        assert_eq!(s.responses().len(), 1);
        assert_eq!(s.responses()[0].get("C1", FREESTYLE), Some(r(3)));
        let submissions = s
            .audit_log()
            .iter()
            .filter(|e| matches!(e.event, AuditEvent::SurveySubmitted { .. }))
            .count();
        assert_eq!(submissions, 2);
        s.advance_phase(Phase::Consensus, "t").unwrap();
        let err = s.submit_survey(SurveyResponse::new("R2", CellMap::new()), "R2").unwrap_err();
        assert!(err.to_string().contains("phase"));
    }

    fn surveyed_session() -> Session {
        let mut s = Session::with_default_catalogs("t");
        s.advance_phase(Phase::Survey, "t").unwrap();
        for (i, c9) in [1, 1, 2, 2, 3].into_iter().enumerate() {
            let mut resp = SurveyResponse::new(format!("R{i}"), CellMap::new());
            resp.set("C1", FREESTYLE, r(3));
            resp.set("C9", FREESTYLE, r(c9));
            s.submit_survey(resp, "p").unwrap();
        }
        s.advance_phase(Phase::Consensus, "facilitator").unwrap();
        s
    }

    #[test]
    fn consensus_recording() {
        let mut s = surveyed_session();
        let err = s.record_consensus("C9", FREESTYLE, r(1), "", "f").unwrap_err();
        assert!(err.to_string().contains("rationale required"));
        s.record_consensus("C9", FREESTYLE, r(1), "legal knowledge needed", "f").unwrap();
        assert_eq!(s.consensus_cell("C9", FREESTYLE).unwrap().resolved_from, AgreementLevel::Low);
        s.record_consensus("C1", FREESTYLE, r(3), "", "f").unwrap();
        assert_eq!(s.consensus_cell("C1", FREESTYLE).unwrap().resolved_from, AgreementLevel::Full);
        // NO_DATA cells may be resolved too
        s.record_consensus("C2", HIGH, r(2), "", "f").unwrap();
        // overwrite
        s.record_consensus("C1", FREESTYLE, r(2), "reopened", "f").unwrap();
        assert_eq!(s.consensus_cell("C1", FREESTYLE).unwrap().rating, r(2));
        assert!(s.record_consensus("C99", FREESTYLE, r(2), "", "f").is_err());
        assert!(s.record_consensus("C1", "NOPE", r(2), "", "f").is_err());
    }

    #[test]
    fn priorities_and_recommendation_gate() {
        let mut s = surveyed_session();
        assert!(s.set_priorities([("C1", 100)], "f").is_err());
        for e in [FREESTYLE, HIGH, MEDIUM, "LOW", "SCRIPTED"] {
            s.record_consensus("C1", e, r(2), "", "f").unwrap();
        }
        s.advance_phase(Phase::Prioritization, "f").unwrap();
        assert!(matches!(s.recommendation(), Err(Error::PrioritiesNotSet)));
        let err = s.set_priorities([("C1", 50), ("C2", 49)], "f").unwrap_err();
        assert!(err.to_string().contains("sum is 99"));
        s.set_priorities([("C1", 50), ("C2", 50)], "f").unwrap();
        assert_eq!(s.missing_consensus().len(), 5);
        assert!(matches!(s.recommendation(), Err(Error::MissingConsensus { .. })));
        s.set_priorities([("C1", 100)], "f").unwrap();
        let rec = s.recommendation().unwrap();
        assert!(rec.percentages.values().all(|&p| (p - 20.0).abs() < 1e-12));
        let (grid, priorities) = s.replay_inputs();
        assert_eq!(grid, s.consensus_grid());
        assert_eq!(priorities.as_ref(), s.priorities());
    }

    #[test]
    fn document_round_trip() {
        let s = Session::with_default_catalogs("t");
        assert_eq!(Session::from_json(&s.to_json()).unwrap(), s);

        let mut s = surveyed_session();
        s.record_consensus("C9", FREESTYLE, r(1), "unless you are a lawyer", "f").unwrap();
        s.advance_phase(Phase::Prioritization, "f").unwrap();
        s.set_priorities([("C9", 100)], "f").unwrap();
        s.set_current_distribution(
            Distribution::new([("FREESTYLE", 5.0), ("HIGH", 15.0), ("MEDIUM", 0.1), ("LOW", 19.9), ("SCRIPTED", 60.0)])
                .unwrap(),
            "f",
        )
        .unwrap();
        let text = s.to_json();
        assert!(text.starts_with("{\n  \"schema_version\": 1,\n  \"elements\""));
        assert_eq!(Session::from_json(&text).unwrap(), s);
    }

    #[test]
    fn malformed_documents() {
        let text = Session::with_default_catalogs("t").to_json();
        let truncated = &text[..text.len() / 2];
        assert!(matches!(Session::from_json(truncated), Err(Error::Parse { .. })));

        let v2 = text.replacen("\"schema_version\": 1", "\"schema_version\": 2", 1);
        assert!(matches!(Session::from_json(&v2), Err(Error::UnsupportedVersion(2))));

        let extra = text.replacen("\"schema_version\": 1,", "\"schema_version\": 1, \"extra\": true,", 1);
        let err = Session::from_json(&extra).unwrap_err();
        assert!(err.to_string().contains("extra"));

        let bad_rating = text.replacen("\"ordinal\": 4", "\"ordinal\": 9", 1);
        assert!(matches!(Session::from_json(&bad_rating), Err(Error::Validation(_))));

        assert!(matches!(Session::from_json("{}"), Err(Error::Parse { .. })));
    }
}
