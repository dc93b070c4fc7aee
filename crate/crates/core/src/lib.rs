//! Repertory-grid decision support for distributing testing time across
//! degrees of exploratory testing.
//!
//! A [`Session`] walks a group through the workflow: individual surveys rate
//! each exploration level ([`Element`]) against bipolar criteria
//! ([`Construct`]); the [`aggregation`] module classifies how well the
//! respondents agree; a facilitator records consensus values; the group
//! spreads 100 dollars over the constructs; and the [`recommendation`]
//! module turns priorities and consensus ratings into a recommended share of
//! testing time per level, with a contribution heat-map and a comparison
//! against current practice.
//!
//! The `examples/` directory has one runnable program per capability.

pub mod aggregation;
pub mod cli;
pub mod error;
pub mod grid;
pub mod recommendation;
pub mod report;
pub mod service;
pub mod session;
pub mod store;

pub use aggregation::{
    agreement_matrix, classify_agreement, AgreementLevel, AgreementMatrix, ConsensusCell, SurveyResponse,
};
pub use error::{Error, Result};
pub use grid::{
    catalog_default_constructs, catalog_default_elements, validate_grid, CellKey, Construct, Element, Grid,
    GridViolation, Rating,
};
pub use recommendation::{
    compare, contribution_matrix, heatmap_bins, recommend, ComparisonReport, ContributionMatrix, Distribution,
    PriorityAllocation, RecommendationResult,
};
pub use session::{Phase, Session};
pub use store::SessionStore;
