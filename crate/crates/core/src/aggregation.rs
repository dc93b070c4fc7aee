//! Individual survey responses, per-cell agreement classification and
//! facilitated consensus values.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{CellKey, Construct, Element, Rating};

/// Sparse construct -> element -> rating map, as stored in session documents.
pub type CellMap = BTreeMap<String, BTreeMap<String, Rating>>;

/// One respondent's individual ratings. Cells may be skipped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurveyResponse {
    pub respondent_id: String,
    pub grid_cells: CellMap,
    pub submitted_at: DateTime<Utc>,
}

impl SurveyResponse {
    pub fn new(respondent_id: impl Into<String>, grid_cells: CellMap) -> Self {
        Self {
            respondent_id: respondent_id.into(),
            grid_cells,
            submitted_at: Utc::now(),
        }
    }

    pub fn get(&self, construct: &str, element: &str) -> Option<Rating> {
        self.grid_cells.get(construct)?.get(element).copied()
    }

    pub fn set(&mut self, construct: &str, element: &str, rating: Rating) {
        self.grid_cells
            .entry(construct.to_owned())
            .or_default()
            .insert(element.to_owned(), rating);
    }

    /// Every referenced construct and element must be declared.
    pub fn validate(&self, elements: &[Element], constructs: &[Construct]) -> Result<()> {
        let mut problems = Vec::new();
        if self.respondent_id.trim().is_empty() {
            problems.push("respondent id must not be empty".to_owned());
        }
        let element_ids: BTreeSet<&str> = elements.iter().map(|e| e.id.as_str()).collect();
        let construct_ids: BTreeSet<&str> = constructs.iter().map(|c| c.id.as_str()).collect();
        for (construct, row) in &self.grid_cells {
            if !construct_ids.contains(construct.as_str()) {
                problems.push(format!(
                    "response {} references unknown construct {construct}",
                    self.respondent_id
                ));
            }
            for element in row.keys() {
                if !element_ids.contains(element.as_str()) {
                    problems.push(format!(
                        "response {} references unknown element {element}",
                        self.respondent_id
                    ));
                }
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(problems))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AgreementLevel {
    /// Every session respondent gave the same rating.
    Full,
    GoodMedium,
    /// The modal rating covers at most half of the respondents.
    Low,
    /// Nobody rated the cell.
    NoData,
}

impl fmt::Display for AgreementLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AgreementLevel::Full => "FULL",
            AgreementLevel::GoodMedium => "GOOD_MEDIUM",
            AgreementLevel::Low => "LOW",
            AgreementLevel::NoData => "NO_DATA",
        })
    }
}

/// Count of each rating value among the submitted answers for one cell.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Histogram {
    #[serde(rename = "1")]
    pub negative: u32,
    #[serde(rename = "2")]
    pub neutral: u32,
    #[serde(rename = "3")]
    pub positive: u32,
}

impl Histogram {
    pub fn add(&mut self, rating: Rating) {
        match rating.value() {
            1 => self.negative += 1,
            2 => self.neutral += 1,
            _ => self.positive += 1,
        }
    }

    pub fn count(&self, rating: Rating) -> u32 {
        match rating.value() {
            1 => self.negative,
            2 => self.neutral,
            _ => self.positive,
        }
    }

    pub fn total(&self) -> u32 {
        self.negative + self.neutral + self.positive
    }

    /// Multiplicity of the most frequent value.
    pub fn modal_count(&self) -> u32 {
        self.negative.max(self.neutral).max(self.positive)
    }

    /// Level for these answers when `n_respondents` took part in the survey.
    pub fn classify(&self, n_respondents: usize) -> AgreementLevel {
        let answered = self.total() as usize;
        let modal = self.modal_count() as usize;
        if answered == 0 {
            AgreementLevel::NoData
        } else if modal == answered && answered == n_respondents {
            AgreementLevel::Full
        } else if modal <= n_respondents / 2 {
            AgreementLevel::Low
        } else {
            AgreementLevel::GoodMedium
        }
    }
}

/// Classifies the answers given for one cell.
///
/// With `k` the modal count and `r` the number of answers: no answers is
/// `NoData`, `k = r = n` is `Full`, `k <= n/2` is `Low`, anything else is
/// `GoodMedium`. Skipped answers count against unanimity since `n` is the
/// number of session respondents.
pub fn classify_agreement(values: &[i64], n_respondents: usize) -> Result<AgreementLevel> {
    if values.len() > n_respondents {
        return Err(Error::invalid(format!(
            "{} ratings for a cell but only {n_respondents} respondents",
            values.len()
        )));
    }
    let mut hist = Histogram::default();
    for &v in values {
        hist.add(Rating::new(v)?);
    }
    Ok(hist.classify(n_respondents))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementCell {
    pub construct: String,
    pub element: String,
    pub level: AgreementLevel,
    pub histogram: Histogram,
}

/// Agreement classification of every cell, in catalog order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementMatrix {
    pub respondents: usize,
    pub cells: Vec<AgreementCell>,
}

impl AgreementMatrix {
    pub fn get(&self, construct: &str, element: &str) -> Option<&AgreementCell> {
        self.cells
            .iter()
            .find(|c| c.construct == construct && c.element == element)
    }

    pub fn level(&self, construct: &str, element: &str) -> AgreementLevel {
        self.get(construct, element)
            .map_or(AgreementLevel::NoData, |c| c.level)
    }

    pub fn count(&self, level: AgreementLevel) -> usize {
        self.cells.iter().filter(|c| c.level == level).count()
    }
}

/// Builds the agreement matrix over `constructs` x `elements` (in the order
/// given) with `n` = number of responses.
pub fn agreement_matrix(
    responses: &[SurveyResponse],
    elements: &[Element],
    constructs: &[Construct],
) -> Result<AgreementMatrix> {
    let mut problems = Vec::new();
    for r in responses {
        if let Err(e) = r.validate(elements, constructs) {
            problems.extend(e.messages());
        }
    }
    if !problems.is_empty() {
        return Err(Error::Validation(problems));
    }

    let n = responses.len();
    let cells = constructs
        .iter()
        .flat_map(|c| elements.iter().map(move |e| (c, e)))
        .map(|(c, e)| {
            let mut histogram = Histogram::default();
            for r in responses {
                if let Some(rating) = r.get(&c.id, &e.id) {
                    histogram.add(rating);
                }
            }
            AgreementCell {
                construct: c.id.clone(),
                element: e.id.clone(),
                level: histogram.classify(n),
                histogram,
            }
        })
        .collect();
    Ok(AgreementMatrix {
        respondents: n,
        cells,
    })
}

/// The value a facilitated discussion settled on for one cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConsensusCell {
    pub rating: Rating,
    pub rationale: String,
    pub resolved_from: AgreementLevel,
}

impl ConsensusCell {
    /// Low-agreement cells need a non-blank rationale.
    pub fn new(
        cell: &CellKey,
        rating: Rating,
        rationale: impl Into<String>,
        resolved_from: AgreementLevel,
    ) -> Result<Self> {
        let rationale = rationale.into();
        if resolved_from == AgreementLevel::Low && rationale.trim().is_empty() {
            return Err(Error::RationaleRequired {
                construct: cell.construct.clone(),
                element: cell.element.clone(),
            });
        }
        Ok(Self {
            rating,
            rationale,
            resolved_from,
        })
    }
}

/// Parses a survey sheet: header `construct_id,<element ids in ordinal
/// order>`, one row per construct, cells `1`/`2`/`3` or empty.
pub fn parse_survey_csv(text: &str, elements: &[Element], constructs: &[Construct]) -> Result<CellMap> {
    let mut ordered: Vec<&Element> = elements.iter().collect();
    ordered.sort_by_key(|e| e.ordinal);
    let expected_header = survey_header(&ordered);

    let mut lines = text.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l));
    let header = lines.next().unwrap_or_default();
    if header != expected_header {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: format!("expected header {expected_header:?}, found {header:?}"),
        });
    }

    let construct_ids: BTreeSet<&str> = constructs.iter().map(|c| c.id.as_str()).collect();
    let mut cells = CellMap::new();
    let mut problems = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line_no = idx + 2;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != ordered.len() + 1 {
            return Err(Error::Parse {
                line: line_no,
                column: 1,
                message: format!("expected {} fields, found {}", ordered.len() + 1, fields.len()),
            });
        }
        let construct = fields[0];
        if !construct_ids.contains(construct) {
            problems.push(format!("line {line_no}: unknown construct {construct}"));
            continue;
        }
        if cells.contains_key(construct) {
            problems.push(format!("line {line_no}: duplicate row for construct {construct}"));
            continue;
        }
        let row = cells.entry(construct.to_owned()).or_default();
        for (element, raw) in ordered.iter().zip(&fields[1..]) {
            if raw.is_empty() {
                continue;
            }
            match raw.parse::<i64>().map_err(|_| ()).and_then(|v| Rating::new(v).map_err(|_| ())) {
                Ok(r) => {
                    row.insert(element.id.clone(), r);
                }
                Err(()) => problems.push(format!(
                    "line {line_no}: invalid rating {raw:?} for ({construct}, {})",
                    element.id
                )),
            }
        }
    }
    cells.retain(|_, row| !row.is_empty());
    if problems.is_empty() {
        Ok(cells)
    } else {
        Err(Error::Validation(problems))
    }
}

/// Writes a survey sheet in the format read by [`parse_survey_csv`].
pub fn format_survey_csv(cells: &CellMap, elements: &[Element], constructs: &[Construct]) -> String {
    let mut ordered: Vec<&Element> = elements.iter().collect();
    ordered.sort_by_key(|e| e.ordinal);
    let mut out = survey_header(&ordered);
    out.push('\n');
    for c in constructs {
        out.push_str(&c.id);
        for e in &ordered {
            out.push(',');
            if let Some(r) = cells.get(&c.id).and_then(|row| row.get(&e.id)) {
                out.push_str(&r.to_string());
            }
        }
        out.push('\n');
    }
    out
}

fn survey_header(ordered: &[&Element]) -> String {
    std::iter::once("construct_id")
        .chain(ordered.iter().map(|e| e.id.as_str()))
        .collect::<Vec<_>>()
        .join(",")
}
