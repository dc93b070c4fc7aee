//! Recommendation reports shared by the CLI and the HTTP service, so both
//! produce identical numbers and identical CSV bytes.

use indexmap::IndexMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::recommendation::{
    compare, contribution_matrix, contribution_report_csv, heatmap_bins, recommend, ComparisonReport,
    ContributionMatrix, Distribution, HeatmapBins, PriorityAllocation, RecommendationResult,
    DEFAULT_EXPLORATORY_LEVELS,
};
use crate::session::Session;

pub const DEFAULT_HEATMAP_BINS: usize = 3;

#[derive(Debug, Clone)]
pub struct ReportOptions {
    /// What-if weights used instead of the stored allocation.
    pub priorities: Option<PriorityAllocation>,
    /// Current distribution used instead of the stored one.
    pub current: Option<Distribution>,
    pub exploratory_levels: Vec<String>,
    pub n_bins: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            priorities: None,
            current: None,
            exploratory_levels: DEFAULT_EXPLORATORY_LEVELS.iter().map(|s| s.to_string()).collect(),
            n_bins: DEFAULT_HEATMAP_BINS,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RecommendationReport {
    pub priorities: PriorityAllocation,
    pub what_if: bool,
    pub recommendation: RecommendationResult,
    /// One-decimal values that add up to exactly 100.0.
    pub display_percentages: IndexMap<String, f64>,
    pub contributions: ContributionMatrix,
    pub heatmap: HeatmapBins,
    pub comparison: Option<ComparisonReport>,
}

pub fn recommendation_report(session: &Session, options: &ReportOptions) -> Result<RecommendationReport> {
    let (priorities, what_if) = match &options.priorities {
        Some(p) => (p.clone(), true),
        None => (session.priorities().cloned().ok_or(Error::PrioritiesNotSet)?, false),
    };
    let grid = session.consensus_grid();
    let recommendation = recommend(&grid, &priorities)?;
    let contributions = contribution_matrix(&grid, &priorities)?;
    let heatmap = heatmap_bins(&contributions, options.n_bins)?;
    let current = options.current.as_ref().or(session.current_distribution());
    let comparison = current
        .map(|c| compare(&recommendation, c, &options.exploratory_levels))
        .transpose()?;
    Ok(RecommendationReport {
        priorities,
        what_if,
        display_percentages: recommendation.display_percentages(),
        recommendation,
        contributions,
        heatmap,
        comparison,
    })
}

/// The heat-map CSV export for the stored allocation.
pub fn report_csv(session: &Session) -> Result<String> {
    let priorities = session.priorities().ok_or(Error::PrioritiesNotSet)?;
    let grid = session.consensus_grid();
    let result = recommend(&grid, priorities)?;
    let matrix = contribution_matrix(&grid, priorities)?;
    Ok(contribution_report_csv(&matrix, &result))
}

/// Parses `ID=value` pairs separated by commas or given as separate items;
/// `:` is accepted in place of `=`.
pub fn parse_pairs<S: AsRef<str>>(items: &[S]) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for item in items {
        for part in item.as_ref().split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .or_else(|| part.split_once(':'))
                .ok_or_else(|| Error::invalid(format!("expected ID=VALUE, got {part:?}")))?;
            out.push((k.trim().to_owned(), v.trim().to_owned()));
        }
    }
    Ok(out)
}

pub fn parse_dollars<S: AsRef<str>>(items: &[S]) -> Result<Vec<(String, i64)>> {
    parse_pairs(items)?
        .into_iter()
        .map(|(k, v)| {
            let n = v
                .parse::<i64>()
                .map_err(|_| Error::invalid(format!("dollars for {k} must be an integer, got {v:?}")))?;
            Ok((k, n))
        })
        .collect()
}

pub fn parse_distribution<S: AsRef<str>>(items: &[S]) -> Result<Distribution> {
    let pairs = parse_pairs(items)?
        .into_iter()
        .map(|(k, v)| {
            let n = v
                .trim_end_matches('%')
                .parse::<f64>()
                .map_err(|_| Error::invalid(format!("share for {k} must be a number, got {v:?}")))?;
            Ok((k, n))
        })
        .collect::<Result<Vec<_>>>()?;
    Distribution::new(pairs)
}

/// What-if weights: any non-negative integers.
pub fn parse_weights<S: AsRef<str>>(items: &[S]) -> Result<PriorityAllocation> {
    let dollars = parse_dollars(items)?;
    let mut weights = Vec::with_capacity(dollars.len());
    for (k, v) in dollars {
        if v < 0 {
            return Err(Error::NegativePriority { construct: k, value: v });
        }
        weights.push((k, v as u64));
    }
    Ok(PriorityAllocation::unnormalized(weights))
}

pub fn parse_levels(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(str::to_owned)
        .collect()
}
