//! Hundred-dollar priorities, the weighted-sum recommendation, contribution
//! heat-map and comparison against the current distribution.
//!
//! Scores are exact integers (dollars times ratings); only the final
//! percentages are floating point.

use std::collections::{BTreeMap, BTreeSet};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{CellKey, Construct, Element, Grid, FREESTYLE, HIGH};

/// Budget every participant group distributes over the constructs.
pub const BUDGET: u64 = 100;

/// Levels whose combined share is reported as "exploratory" by default.
pub const DEFAULT_EXPLORATORY_LEVELS: [&str; 2] = [FREESTYLE, HIGH];

/// Cumulative-voting allocation. Constructs that are not mentioned get 0.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PriorityAllocation {
    pub dollars: BTreeMap<String, u64>,
}

impl PriorityAllocation {
    /// A validated allocation: no negatives, only declared constructs, and
    /// exactly [`BUDGET`] dollars in total.
    pub fn new<I, K>(dollars: I, constructs: &[Construct]) -> Result<Self>
    where
        I: IntoIterator<Item = (K, i64)>,
        K: Into<String>,
    {
        let known: BTreeSet<&str> = constructs.iter().map(|c| c.id.as_str()).collect();
        let mut out = BTreeMap::new();
        let mut sum: i64 = 0;
        let mut unknown = Vec::new();
        for (id, value) in dollars {
            let id = id.into();
            if value < 0 {
                return Err(Error::NegativePriority {
                    construct: id,
                    value,
                });
            }
            if !known.contains(id.as_str()) {
                unknown.push(format!("unknown construct {id} in priorities"));
                continue;
            }
            sum += value;
            *out.entry(id).or_insert(0) += value as u64;
        }
        if !unknown.is_empty() {
            return Err(Error::Validation(unknown));
        }
        if sum != BUDGET as i64 {
            return Err(Error::PrioritySum { sum });
        }
        Ok(Self { dollars: out })
    }

    /// Arbitrary non-negative weights, no budget check. The recommendation
    /// only depends on the weights' ratios, so this backs what-if queries.
    pub fn unnormalized<I, K>(weights: I) -> Self
    where
        I: IntoIterator<Item = (K, u64)>,
        K: Into<String>,
    {
        let mut dollars = BTreeMap::new();
        for (k, v) in weights {
            *dollars.entry(k.into()).or_insert(0) += v;
        }
        Self { dollars }
    }

    pub fn dollars_for(&self, construct: &str) -> u64 {
        self.dollars.get(construct).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.dollars.values().sum()
    }

    /// Constructs with a nonzero allocation.
    pub fn prioritized(&self) -> impl Iterator<Item = &str> {
        self.dollars
            .iter()
            .filter(|(_, &v)| v > 0)
            .map(|(k, _)| k.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContributionRow {
    pub construct: String,
    pub priority: u64,
    /// Priority times consensus rating, per element.
    pub cells: IndexMap<String, u64>,
}

/// Priority x rating for every cell, rows in construct order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContributionMatrix {
    pub elements: Vec<String>,
    pub rows: Vec<ContributionRow>,
}

impl ContributionMatrix {
    pub fn get(&self, construct: &str, element: &str) -> Option<u64> {
        self.rows
            .iter()
            .find(|r| r.construct == construct)?
            .cells
            .get(element)
            .copied()
    }

    pub fn column_sums(&self) -> IndexMap<String, u64> {
        self.elements
            .iter()
            .map(|e| {
                let sum = self.rows.iter().map(|r| r.cells[e.as_str()]).sum();
                (e.clone(), sum)
            })
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (CellKey, u64)> + '_ {
        self.rows.iter().flat_map(|r| {
            r.cells
                .iter()
                .map(move |(e, &v)| (CellKey::new(&r.construct, e), v))
        })
    }

    /// The `n` largest contributions, ties kept in catalog order.
    pub fn top_cells(&self, n: usize) -> Vec<(CellKey, u64)> {
        let mut cells: Vec<_> = self.iter().collect();
        cells.sort_by_key(|c| std::cmp::Reverse(c.1));
        cells.truncate(n);
        cells
    }
}

fn check_priority_keys(grid: &Grid, priorities: &PriorityAllocation) -> Result<()> {
    let known: BTreeSet<&str> = grid.constructs().iter().map(|c| c.id.as_str()).collect();
    let unknown: Vec<String> = priorities
        .dollars
        .keys()
        .filter(|k| !known.contains(k.as_str()))
        .map(|k| format!("unknown construct {k} in priorities"))
        .collect();
    if unknown.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation(unknown))
    }
}

/// Multiplies each construct's priority with its consensus ratings.
///
/// Constructs with zero priority contribute 0 and may have holes; every
/// other construct needs a valid rating for every element.
pub fn contribution_matrix(
    consensus: &Grid,
    priorities: &PriorityAllocation,
) -> Result<ContributionMatrix> {
    check_priority_keys(consensus, priorities)?;
    let elements: Vec<String> = consensus.elements().iter().map(|e| e.id.clone()).collect();
    let mut rows = Vec::with_capacity(consensus.constructs().len());
    for construct in consensus.constructs() {
        let priority = priorities.dollars_for(&construct.id);
        let mut cells = IndexMap::with_capacity(elements.len());
        for element in &elements {
            let value = if priority == 0 {
                0
            } else {
                let rating = consensus
                    .rating(&construct.id, element)?
                    .ok_or_else(|| Error::MissingConsensus {
                        construct: construct.id.clone(),
                        element: element.clone(),
                    })?;
                priority * u64::from(rating.value())
            };
            cells.insert(element.clone(), value);
        }
        rows.push(ContributionRow {
            construct: construct.id.clone(),
            priority,
            cells,
        });
    }
    Ok(ContributionMatrix { elements, rows })
}

/// Per-element scores and their shares of the total.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecommendationResult {
    pub scores: IndexMap<String, u64>,
    pub percentages: IndexMap<String, f64>,
    pub total_score: u64,
}

impl RecommendationResult {
    fn from_scores(scores: IndexMap<String, u64>) -> Result<Self> {
        let total_score: u64 = scores.values().sum();
        if total_score == 0 {
            return Err(Error::NoPrioritizedConstructs);
        }
        let percentages = scores
            .iter()
            .map(|(e, &s)| (e.clone(), 100.0 * s as f64 / total_score as f64))
            .collect();
        Ok(Self {
            scores,
            percentages,
            total_score,
        })
    }

    /// Percentages rounded to one decimal. The rounding residue goes to the
    /// largest share so the displayed values add up to exactly 100.0.
    pub fn display_percentages(&self) -> IndexMap<String, f64> {
        let mut tenths: Vec<i64> = self
            .percentages
            .values()
            .map(|p| (p * 10.0).round() as i64)
            .collect();
        let residue = 1000 - tenths.iter().sum::<i64>();
        if let Some(largest) = self
            .percentages
            .values()
            .enumerate()
            .fold(None::<(usize, f64)>, |best, (i, &p)| match best {
                Some((_, bp)) if bp >= p => best,
                _ => Some((i, p)),
            })
            .map(|(i, _)| i)
        {
            tenths[largest] += residue;
        }
        self.percentages
            .keys()
            .zip(tenths)
            .map(|(e, t)| (e.clone(), t as f64 / 10.0))
            .collect()
    }

    pub fn share(&self, levels: &[String]) -> f64 {
        levels
            .iter()
            .filter_map(|l| self.percentages.get(l))
            .sum()
    }
}

/// Weighted-sum recommendation: per element the sum over constructs of
/// priority x rating, then each score's share of the grand total.
pub fn recommend(consensus: &Grid, priorities: &PriorityAllocation) -> Result<RecommendationResult> {
    if consensus.elements().is_empty() {
        return Err(Error::invalid("grid has no elements"));
    }
    check_priority_keys(consensus, priorities)?;
    if priorities.total() == 0 {
        return Err(Error::NoPrioritizedConstructs);
    }
    let matrix = contribution_matrix(consensus, priorities)?;
    RecommendationResult::from_scores(matrix.column_sums())
}

/// A distribution of testing time over elements, in percent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Distribution {
    pub percentages: IndexMap<String, f64>,
}

impl Distribution {
    pub const TOLERANCE: f64 = 1e-6;

    /// Values must lie in [0, 100] and sum to 100.
    pub fn new<I, K>(percentages: I) -> Result<Self>
    where
        I: IntoIterator<Item = (K, f64)>,
        K: Into<String>,
    {
        let percentages: IndexMap<String, f64> =
            percentages.into_iter().map(|(k, v)| (k.into(), v)).collect();
        let dist = Self { percentages };
        dist.validate()?;
        Ok(dist)
    }

    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        for (e, &v) in &self.percentages {
            if !(0.0..=100.0).contains(&v) {
                problems.push(format!("share {v} for {e} is outside [0, 100]"));
            }
        }
        let sum: f64 = self.percentages.values().sum();
        if (sum - 100.0).abs() > Self::TOLERANCE {
            problems.push(format!("distribution sums to {sum}, must be 100"));
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(problems))
        }
    }

    /// Checks the keys match the session's elements exactly.
    pub fn validate_for(&self, elements: &[Element]) -> Result<()> {
        let ids: Vec<&str> = elements.iter().map(|e| e.id.as_str()).collect();
        let keys: Vec<&str> = self.percentages.keys().map(String::as_str).collect();
        element_set_difference(&ids, &keys, "current distribution")
    }

    pub fn share(&self, levels: &[String]) -> f64 {
        levels
            .iter()
            .filter_map(|l| self.percentages.get(l))
            .sum()
    }
}

fn element_set_difference(expected: &[&str], actual: &[&str], what: &str) -> Result<()> {
    let expected: BTreeSet<&str> = expected.iter().copied().collect();
    let actual: BTreeSet<&str> = actual.iter().copied().collect();
    let mut problems = Vec::new();
    for missing in expected.difference(&actual) {
        problems.push(format!("{what} is missing element {missing}"));
    }
    for extra in actual.difference(&expected) {
        problems.push(format!("{what} has unknown element {extra}"));
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation(problems))
    }
}

/// Recommended versus current distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    /// Recommended minus current, in percentage points.
    pub deltas: IndexMap<String, f64>,
    pub exploratory_levels: Vec<String>,
    pub recommended_share: f64,
    pub current_share: f64,
    pub share_delta: f64,
}

pub fn compare(
    recommended: &RecommendationResult,
    current: &Distribution,
    exploratory_levels: &[String],
) -> Result<ComparisonReport> {
    let rec_ids: Vec<&str> = recommended.percentages.keys().map(String::as_str).collect();
    let cur_ids: Vec<&str> = current.percentages.keys().map(String::as_str).collect();
    element_set_difference(&rec_ids, &cur_ids, "current distribution")?;
    let unknown: Vec<String> = exploratory_levels
        .iter()
        .filter(|l| !recommended.percentages.contains_key(l.as_str()))
        .map(|l| format!("exploratory level {l} is not an element"))
        .collect();
    if !unknown.is_empty() {
        return Err(Error::Validation(unknown));
    }

    let deltas = recommended
        .percentages
        .iter()
        .map(|(e, &p)| (e.clone(), p - current.percentages[e.as_str()]))
        .collect();
    let recommended_share = recommended.share(exploratory_levels);
    let current_share = current.share(exploratory_levels);
    Ok(ComparisonReport {
        deltas,
        exploratory_levels: exploratory_levels.to_vec(),
        recommended_share,
        current_share,
        share_delta: recommended_share - current_share,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeatCell {
    pub construct: String,
    pub element: String,
    pub value: u64,
    pub bin: usize,
}

/// Equal-width bins over the contribution range; bin `n_bins - 1` is the
/// hottest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeatmapBins {
    pub n_bins: usize,
    pub min: u64,
    pub max: u64,
    pub cells: Vec<HeatCell>,
}

impl HeatmapBins {
    pub fn bin(&self, construct: &str, element: &str) -> Option<usize> {
        self.cells
            .iter()
            .find(|c| c.construct == construct && c.element == element)
            .map(|c| c.bin)
    }
}

/// Assigns every contribution to one of `n_bins` equal-width bins spanning
/// [min, max]. A constant matrix puts every cell in bin 0.
pub fn heatmap_bins(matrix: &ContributionMatrix, n_bins: usize) -> Result<HeatmapBins> {
    if n_bins < 2 {
        return Err(Error::invalid(format!("heat-map needs at least 2 bins, got {n_bins}")));
    }
    let min = matrix.iter().map(|(_, v)| v).min().unwrap_or(0);
    let max = matrix.iter().map(|(_, v)| v).max().unwrap_or(0);
    let span = max - min;
    let cells = matrix
        .iter()
        .map(|(key, value)| {
            let bin = if span == 0 {
                0
            } else {
                // exact in integers: floor((v - min) * n / span), top edge clamped
                (((value - min) as u128 * n_bins as u128 / span as u128) as usize).min(n_bins - 1)
            };
            HeatCell {
                construct: key.construct,
                element: key.element,
                value,
                bin,
            }
        })
        .collect();
    Ok(HeatmapBins {
        n_bins,
        min,
        max,
        cells,
    })
}

/// Heat-map export: one row per construct with its priority and integer
/// contributions, then `SCORE` and `PERCENT` rows.
pub fn contribution_report_csv(matrix: &ContributionMatrix, result: &RecommendationResult) -> String {
    let mut out = String::from("construct_id,priority");
    for e in &matrix.elements {
        out.push(',');
        out.push_str(e);
    }
    out.push('\n');
    for row in &matrix.rows {
        out.push_str(&row.construct);
        out.push(',');
        out.push_str(&row.priority.to_string());
        for v in row.cells.values() {
            out.push(',');
            out.push_str(&v.to_string());
        }
        out.push('\n');
    }
    let total_priority: u64 = matrix.rows.iter().map(|r| r.priority).sum();
    out.push_str(&format!("SCORE,{total_priority}"));
    for e in &matrix.elements {
        out.push_str(&format!(",{}", result.scores[e.as_str()]));
    }
    out.push('\n');
    let display = result.display_percentages();
    out.push_str("PERCENT,100.0");
    for e in &matrix.elements {
        out.push_str(&format!(",{:.1}", display[e.as_str()]));
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{catalog_default_constructs, catalog_default_elements, Rating};

    fn two_construct_grid() -> Grid {
        let constructs = vec![
            Construct::custom("Ca", "good", "bad", ""),
            Construct::custom("Cb", "fast", "slow", ""),
        ];
        let mut g = Grid::new(catalog_default_elements(), constructs);
        let ids: Vec<String> = g.elements().iter().map(|e| e.id.clone()).collect();
        for (e, (a, b)) in ids.iter().zip([3, 3, 2, 1, 1].into_iter().zip([1, 1, 2, 3, 3])) {
            g.set("Ca", e, a);
            g.set("Cb", e, b);
        }
        g
    }

    #[test]
    fn priority_validation() {
        let cs = catalog_default_constructs();
        assert!(PriorityAllocation::new([("C1", 100)], &cs).is_ok());
        let err = PriorityAllocation::new([("C1", 50), ("C2", 49)], &cs).unwrap_err();
        assert!(err.to_string().contains("sum is 99, must be 100"));
        let err = PriorityAllocation::new([("C1", 120), ("C2", -20)], &cs).unwrap_err();
        assert!(err.to_string().contains("C2"));
        let err = PriorityAllocation::new([("C1", 50), ("C99", 50)], &cs).unwrap_err();
        assert!(err.to_string().contains("C99"));
        let seven = [("C11", 20), ("C12", 20), ("C16", 20), ("C1", 10), ("C2", 10), ("C9", 10), ("C14", 10)];
        let alloc = PriorityAllocation::new(seven, &cs).unwrap();
        assert_eq!(alloc.prioritized().count(), 7);
        assert_eq!(alloc.dollars_for("C3"), 0);
    }

    #[test]
    fn contribution_cells() {
        let g = two_construct_grid();
        let p = PriorityAllocation::unnormalized([("Ca", 80), ("Cb", 20)]);
        let m = contribution_matrix(&g, &p).unwrap();
        assert_eq!(m.get("Ca", "FREESTYLE"), Some(240));
        let sums: Vec<u64> = m.column_sums().values().copied().collect();
        assert_eq!(sums, vec![260, 260, 200, 140, 140]);

        let p = PriorityAllocation::unnormalized([("Ca", 100)]);
        let m = contribution_matrix(&g, &p).unwrap();
        assert!(m.rows[1].cells.values().all(|&v| v == 0));
    }

    #[test]
    fn derived_percentages() {
        let g = two_construct_grid();
        let p = PriorityAllocation::unnormalized([("Ca", 80), ("Cb", 20)]);
        let r = recommend(&g, &p).unwrap();
        assert_eq!(r.total_score, 1000);
        let pct: Vec<f64> = r.percentages.values().copied().collect();
        for (got, want) in pct.iter().zip([26.0, 26.0, 20.0, 14.0, 14.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn uniform_ratings_give_equal_shares() {
        let g = Grid::uniform(catalog_default_elements(), catalog_default_constructs(), Rating::NEUTRAL);
        let p = PriorityAllocation::new([("C4", 33), ("C8", 67)], g.constructs()).unwrap();
        let r = recommend(&g, &p).unwrap();
        assert!(r.percentages.values().all(|&v| (v - 20.0).abs() < 1e-12));
    }

    #[test]
    fn zero_priority_constructs_may_have_holes() {
        let mut g = two_construct_grid();
        g.remove("Cb", "LOW");
        let p = PriorityAllocation::unnormalized([("Ca", 100)]);
        assert!(recommend(&g, &p).is_ok());
        let p = PriorityAllocation::unnormalized([("Ca", 50), ("Cb", 50)]);
        let err = recommend(&g, &p).unwrap_err();
        assert!(matches!(err, Error::MissingConsensus { ref construct, ref element } if construct == "Cb" && element == "LOW"));
    }

    #[test]
    fn all_zero_priorities() {
        let g = two_construct_grid();
        let err = recommend(&g, &PriorityAllocation::default()).unwrap_err();
        assert_eq!(err.to_string(), "no prioritized constructs");
    }

    #[test]
    fn display_rounding_sums_to_100() {
        let scores: IndexMap<String, u64> =
            [("A", 1u64), ("B", 1), ("C", 1)].into_iter().map(|(k, v)| (k.to_owned(), v)).collect();
        let r = RecommendationResult::from_scores(scores).unwrap();
        let d = r.display_percentages();
        let tenths: i64 = d.values().map(|v| (v * 10.0).round() as i64).sum();
        assert_eq!(tenths, 1000);
        assert_eq!(d["A"], 33.4);
        assert_eq!(d["B"], 33.3);
    }

    #[test]
    fn comparison() {
        let rec = RecommendationResult::from_scores(
            [("FREESTYLE", 14u64), ("HIGH", 20), ("MEDIUM", 22), ("LOW", 23), ("SCRIPTED", 21)]
                .into_iter()
                .map(|(k, v)| (k.to_owned(), v))
                .collect(),
        )
        .unwrap();
        let current = Distribution::new([("FREESTYLE", 5.0), ("HIGH", 15.0), ("MEDIUM", 10.0), ("LOW", 20.0), ("SCRIPTED", 50.0)])
            .unwrap();
        let levels: Vec<String> = DEFAULT_EXPLORATORY_LEVELS.iter().map(|s| s.to_string()).collect();
        let report = compare(&rec, &current, &levels).unwrap();
        assert!((report.recommended_share - 34.0).abs() < 1e-9);
        assert!((report.current_share - 20.0).abs() < 1e-9);
        assert!((report.share_delta - 14.0).abs() < 1e-9);
        assert!((report.deltas["SCRIPTED"] + 29.0).abs() < 1e-9);

        let all: Vec<String> = rec.percentages.keys().cloned().collect();
        let report = compare(&rec, &current, &all).unwrap();
        assert!((report.recommended_share - 100.0).abs() < 1e-9);
        assert!(report.share_delta.abs() < 1e-9);

        let same = Distribution::new(rec.percentages.clone()).unwrap();
        assert!(compare(&rec, &same, &levels).unwrap().deltas.values().all(|d| d.abs() < 1e-12));

        let partial = Distribution::new([("FREESTYLE", 50.0), ("HIGH", 50.0)]).unwrap();
        let err = compare(&rec, &partial, &levels).unwrap_err();
        assert!(err.to_string().contains("MEDIUM"));
    }

    #[test]
    fn distribution_validation() {
        assert!(Distribution::new([("A", 60.0), ("B", 30.0)]).is_err());
        assert!(Distribution::new([("A", 120.0), ("B", -20.0)]).is_err());
    }

    fn matrix_of(values: &[u64]) -> ContributionMatrix {
        ContributionMatrix {
            elements: (0..values.len()).map(|i| format!("E{i}")).collect(),
            rows: vec![ContributionRow {
                construct: "C".into(),
                priority: 1,
                cells: values.iter().enumerate().map(|(i, &v)| (format!("E{i}"), v)).collect(),
            }],
        }
    }

    #[test]
    fn heatmap_binning() {
        let bins = heatmap_bins(&matrix_of(&[0, 30, 60]), 3).unwrap();
        let got: Vec<usize> = bins.cells.iter().map(|c| c.bin).collect();
        assert_eq!(got, vec![0, 1, 2]);
        let bins = heatmap_bins(&matrix_of(&[40, 40, 40]), 5).unwrap();
        assert!(bins.cells.iter().all(|c| c.bin == 0));
        assert!(heatmap_bins(&matrix_of(&[1, 2]), 1).is_err());
    }

    #[test]
    fn report_csv_layout() {
        let g = two_construct_grid();
        let p = PriorityAllocation::unnormalized([("Ca", 80), ("Cb", 20)]);
        let m = contribution_matrix(&g, &p).unwrap();
        let r = recommend(&g, &p).unwrap();
        assert_eq!(
            contribution_report_csv(&m, &r),
            "construct_id,priority,FREESTYLE,HIGH,MEDIUM,LOW,SCRIPTED\n\
             Ca,80,240,240,160,80,80\n\
             Cb,20,20,20,40,60,60\n\
             SCORE,100,260,260,200,140,140\n\
             PERCENT,100.0,26.0,26.0,20.0,14.0,14.0\n"
        );
    }
}
