//! Domain model of a repertory grid: elements (degrees of exploration),
//! bipolar constructs, ratings on the 1..=3 scale and the grid tying them
//! together, plus the built-in catalogs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One decision alternative: a degree of exploration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Element {
    pub id: String,
    pub label: String,
    pub description: String,
    /// Position on the exploration continuum, 0 = most exploratory.
    pub ordinal: u32,
}

impl Element {
    pub fn new(id: &str, label: &str, description: &str, ordinal: u32) -> Self {
        Self {
            id: id.to_owned(),
            label: label.to_owned(),
            description: description.to_owned(),
            ordinal,
        }
    }
}

/// A bipolar decision criterion. The similarity pole is the desired end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Construct {
    pub id: String,
    pub similarity_pole: String,
    pub contrast_pole: String,
    pub description: String,
    pub builtin: bool,
}

impl Construct {
    /// A user-defined construct.
    pub fn custom(id: &str, similarity_pole: &str, contrast_pole: &str, description: &str) -> Self {
        Self {
            id: id.to_owned(),
            similarity_pole: similarity_pole.to_owned(),
            contrast_pole: contrast_pole.to_owned(),
            description: description.to_owned(),
            builtin: false,
        }
    }

    fn builtin(id: &str, similarity_pole: &str, contrast_pole: &str, description: &str) -> Self {
        Self {
            builtin: true,
            ..Self::custom(id, similarity_pole, contrast_pole, description)
        }
    }
}

/// Effect of an element on a construct: 1 negative, 2 neutral, 3 positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "u8")]
pub struct Rating(u8);

impl Rating {
    pub const NEGATIVE: Rating = Rating(1);
    pub const NEUTRAL: Rating = Rating(2);
    pub const POSITIVE: Rating = Rating(3);

    pub fn new(value: i64) -> Result<Self> {
        match value {
            1..=3 => Ok(Rating(value as u8)),
            other => Err(Error::InvalidRating(other)),
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl TryFrom<i64> for Rating {
    type Error = Error;

    fn try_from(value: i64) -> Result<Self> {
        Rating::new(value)
    }
}

impl From<Rating> for u8 {
    fn from(r: Rating) -> u8 {
        r.0
    }
}

impl fmt::Display for Rating {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Address of one grid cell.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CellKey {
    pub construct: String,
    pub element: String,
}

impl CellKey {
    pub fn new(construct: &str, element: &str) -> Self {
        Self {
            construct: construct.to_owned(),
            element: element.to_owned(),
        }
    }
}

impl fmt::Display for CellKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.construct, self.element)
    }
}

/// Elements and constructs with a rating per cell.
///
/// Cells hold raw values so that an unchecked grid can be inspected with
/// [`validate_grid`]; consumers that need a [`Rating`] go through
/// [`Grid::rating`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    elements: Vec<Element>,
    constructs: Vec<Construct>,
    cells: BTreeMap<CellKey, i64>,
}

impl Grid {
    /// An empty grid. Elements are kept in ordinal order.
    pub fn new(mut elements: Vec<Element>, constructs: Vec<Construct>) -> Self {
        elements.sort_by_key(|e| e.ordinal);
        Self {
            elements,
            constructs,
            cells: BTreeMap::new(),
        }
    }

    /// A complete grid with the same value in every cell.
    pub fn uniform(elements: Vec<Element>, constructs: Vec<Construct>, value: Rating) -> Self {
        let mut grid = Self::new(elements, constructs);
        let keys: Vec<CellKey> = grid.keys().collect();
        for key in keys {
            grid.cells.insert(key, value.value().into());
        }
        grid
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn constructs(&self) -> &[Construct] {
        &self.constructs
    }

    pub fn set(&mut self, construct: &str, element: &str, value: i64) -> &mut Self {
        self.cells.insert(CellKey::new(construct, element), value);
        self
    }

    pub fn set_rating(&mut self, construct: &str, element: &str, rating: Rating) -> &mut Self {
        self.set(construct, element, rating.value().into())
    }

    pub fn remove(&mut self, construct: &str, element: &str) -> Option<i64> {
        self.cells.remove(&CellKey::new(construct, element))
    }

    /// Raw stored value, if any.
    pub fn cell(&self, construct: &str, element: &str) -> Option<i64> {
        self.cells.get(&CellKey::new(construct, element)).copied()
    }

    /// `Ok(None)` for a hole, `Err` for an out-of-range value.
    pub fn rating(&self, construct: &str, element: &str) -> Result<Option<Rating>> {
        self.cell(construct, element).map(Rating::new).transpose()
    }

    pub fn cells(&self) -> impl Iterator<Item = (&CellKey, i64)> {
        self.cells.iter().map(|(k, v)| (k, *v))
    }

    /// Cross product of constructs and elements in catalog order.
    pub fn keys(&self) -> impl Iterator<Item = CellKey> + '_ {
        self.constructs.iter().flat_map(move |c| {
            self.elements
                .iter()
                .map(move |e| CellKey::new(&c.id, &e.id))
        })
    }
}

/// One broken grid invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GridViolation {
    InvalidElementId(String),
    InvalidConstructId(String),
    DuplicateElement(String),
    DuplicateConstruct(String),
    NonContiguousOrdinals(Vec<u32>),
    InvalidPoles(String),
    MissingCell(CellKey),
    OutOfRange { cell: CellKey, value: i64 },
    DanglingCell(CellKey),
}

impl fmt::Display for GridViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridViolation::InvalidElementId(id) => write!(f, "invalid element id {id:?}"),
            GridViolation::InvalidConstructId(id) => write!(f, "invalid construct id {id:?}"),
            GridViolation::DuplicateElement(id) => write!(f, "duplicate element id {id}"),
            GridViolation::DuplicateConstruct(id) => write!(f, "duplicate construct id {id}"),
            GridViolation::NonContiguousOrdinals(ords) => {
                write!(f, "element ordinals {ords:?} are not a contiguous range from 0")
            }
            GridViolation::InvalidPoles(id) => {
                write!(f, "construct {id} needs two distinct non-empty poles")
            }
            GridViolation::MissingCell(cell) => write!(f, "missing cell {cell}"),
            GridViolation::OutOfRange { cell, value } => {
                write!(f, "cell {cell} has out-of-range rating {value}")
            }
            GridViolation::DanglingCell(cell) => {
                write!(f, "cell {cell} references an undeclared construct or element")
            }
        }
    }
}

/// Ids double as CSV column keys.
pub fn is_valid_id(id: &str) -> bool {
    !id.is_empty() && id.chars().all(|c| c.is_ascii_graphic() && c != ',' && c != '"')
}

/// Catalog-level checks shared by [`validate_grid`] and session creation.
pub fn validate_catalogs(elements: &[Element], constructs: &[Construct]) -> Vec<GridViolation> {
    let mut out = Vec::new();

    let mut seen = BTreeSet::new();
    for e in elements {
        if !is_valid_id(&e.id) {
            out.push(GridViolation::InvalidElementId(e.id.clone()));
        }
        if !seen.insert(e.id.as_str()) {
            out.push(GridViolation::DuplicateElement(e.id.clone()));
        }
    }
    let mut ordinals: Vec<u32> = elements.iter().map(|e| e.ordinal).collect();
    ordinals.sort_unstable();
    if ordinals.iter().enumerate().any(|(i, &o)| o as usize != i) {
        out.push(GridViolation::NonContiguousOrdinals(ordinals));
    }

    let mut seen = BTreeSet::new();
    for c in constructs {
        if !is_valid_id(&c.id) {
            out.push(GridViolation::InvalidConstructId(c.id.clone()));
        }
        if !seen.insert(c.id.as_str()) {
            out.push(GridViolation::DuplicateConstruct(c.id.clone()));
        }
        if c.similarity_pole.trim().is_empty()
            || c.contrast_pole.trim().is_empty()
            || c.similarity_pole == c.contrast_pole
        {
            out.push(GridViolation::InvalidPoles(c.id.clone()));
        }
    }
    out
}

/// Reports every broken invariant of `grid`. An empty report means valid.
pub fn validate_grid(grid: &Grid) -> Vec<GridViolation> {
    let mut out = validate_catalogs(&grid.elements, &grid.constructs);

    for key in grid.keys() {
        match grid.cells.get(&key) {
            None => out.push(GridViolation::MissingCell(key)),
            Some(&v) if Rating::new(v).is_err() => {
                out.push(GridViolation::OutOfRange { cell: key, value: v })
            }
            Some(_) => {}
        }
    }

    let element_ids: BTreeSet<&str> = grid.elements.iter().map(|e| e.id.as_str()).collect();
    let construct_ids: BTreeSet<&str> = grid.constructs.iter().map(|c| c.id.as_str()).collect();
    for key in grid.cells.keys() {
        if !element_ids.contains(key.element.as_str())
            || !construct_ids.contains(key.construct.as_str())
        {
            out.push(GridViolation::DanglingCell(key.clone()));
        }
    }
    out
}

pub const FREESTYLE: &str = "FREESTYLE";
pub const HIGH: &str = "HIGH";
pub const MEDIUM: &str = "MEDIUM";
pub const LOW: &str = "LOW";
pub const SCRIPTED: &str = "SCRIPTED";

/// The five degrees of exploration, from freestyle to scripted testing.
pub fn catalog_default_elements() -> Vec<Element> {
    vec![
        Element::new(
            FREESTYLE,
            "Freestyle testing",
            "Only the test object is provided; the tester has full freedom over what and how to test.",
            0,
        ),
        Element::new(
            HIGH,
            "High degree of exploration",
            "The charter adds little guidance beyond the test object; most decisions are left to the tester.",
            1,
        ),
        Element::new(
            MEDIUM,
            "Medium degree of exploration",
            "The charter guides the session more closely, balancing given direction and tester freedom.",
            2,
        ),
        Element::new(
            LOW,
            "Low degree of exploration",
            "The charter is detailed and leaves the tester limited freedom.",
            3,
        ),
        Element::new(
            SCRIPTED,
            "Scripted testing",
            "The test steps as well as the test data are defined; no freedom of exploration.",
            4,
        ),
    ]
}

/// The seventeen built-in influence factors, C1..C17.
pub fn catalog_default_constructs() -> Vec<Construct> {
    [
        ("C1", "Better learning", "Poor learning",
         "Refers to the learning that occurs during the test session (including learning to test and learning the system)."),
        ("C2", "Easy to trace coverage", "Hard to trace coverage",
         "Ability to determine the coverage after testing has been concluded (e.g. coverage of functions/code etc.)."),
        ("C3", "Time efficient", "Time inefficient",
         "Resource efficiency (time to conduct the tests during the test session)."),
        ("C4", "Less effort to prepare tests", "Effort intensive test preparation",
         "Effort in preparing for prior to conducting the test session."),
        ("C5", "Easy to design new tests", "Difficult to design new tests",
         "Perceived ease or difficulty of designing new tests."),
        ("C6", "Easier/ provides freedom to change test cases", "Resilient to change test cases",
         "Perceived ease with which guiding test information can be modified prior to the test session (e.g. modification to charters)."),
        ("C7", "Less effort to maintain test cases", "More effort to maintain test cases",
         "Effort needed to maintain tests used in the test sessions."),
        ("C8", "Easier to fill knowledge gap when adding new requirements",
         "Difficult to fill knowledge gap when adding new requirements",
         "Ease or difficulty to fill a knowledge gap about new requirements using testing."),
        ("C9", "Easier to verify conformance/ legal requirements",
         "Difficult to verify conformance/ legal requirements",
         "Ability to verify conformance and legal requirements (e.g. fulfillment of standards)."),
        ("C10", "High relevance of bias", "Low relevance of bias",
         "Effect of biases (e.g. previous knowledge about the system and tests) during the test session."),
        ("C11", "Efficient in checking verification of requirements",
         "Inefficient in checking verification of requirements",
         "Efficiency of determining to what degree requirements have been verified through the tests (confidence)."),
        ("C12", "Easier to reproduce defects", "Difficult to reproduce defects",
         "Ability to reproduce defects (e.g. in the development organization) to be able to debug and rework."),
        ("C13", "Helps more to check performance issues", "Does not help in checking performance issues",
         "Ability to check performance related issues."),
        ("C14", "Motivates critical thinking to challenge expected outcomes",
         "Bounds the tester to follow the test plan",
         "Degree by which the tester is triggered to think critical."),
        ("C15", "Finds more significant/ critical defects", "Finds less critical defects",
         "Ability to detect critical defects."),
        ("C16", "Helps to uncover unknown defects",
         "Does not help finding unknown defects to a great extent",
         "Ability to find unknown (new) defects"),
        ("C17", "Motivates the tester", "Uninteresting", "Degree of motivation."),
    ]
    .into_iter()
    .map(|(id, sim, con, desc)| Construct::builtin(id, sim, con, desc))
    .collect()
}
