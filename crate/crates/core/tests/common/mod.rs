#![allow(dead_code, clippy::needless_range_loop)]

use proptest::prelude::*;
use repgrid::{Construct, Element, Grid, PriorityAllocation, Rating};

/// Brute-force reference for the weighted-sum recommendation: plain nested
/// loops over `dollars[c]` and `ratings[c][e]`, floating point throughout.
pub fn oracle_percentages(dollars: &[u64], ratings: &[Vec<u8>]) -> Vec<f64> {
    let n_elements = ratings[0].len();
    let mut scores = vec![0.0f64; n_elements];
    for c in 0..dollars.len() {
        for e in 0..n_elements {
            scores[e] += dollars[c] as f64 * ratings[c][e] as f64;
        }
    }
    let mut total = 0.0;
    for e in 0..n_elements {
        total += scores[e];
    }
    let mut out = Vec::new();
    for e in 0..n_elements {
        out.push(scores[e] / total * 100.0);
    }
    out
}

/// Column sums of priority x rating, by hand.
pub fn oracle_scores(dollars: &[u64], ratings: &[Vec<u8>]) -> Vec<u64> {
    let n_elements = ratings[0].len();
    let mut scores = vec![0u64; n_elements];
    for c in 0..dollars.len() {
        for e in 0..n_elements {
            scores[e] += dollars[c] * ratings[c][e] as u64;
        }
    }
    scores
}

/// A random recommendation problem: `dollars[c]` sums to 100 and
/// `ratings[c][e]` lies in 1..=3.
#[derive(Debug, Clone)]
pub struct Instance {
    pub n_elements: usize,
    pub dollars: Vec<u64>,
    pub ratings: Vec<Vec<u8>>,
}

impl Instance {
    pub fn element_ids(&self) -> Vec<String> {
        (0..self.n_elements).map(|e| format!("E{e}")).collect()
    }

    pub fn construct_ids(&self) -> Vec<String> {
        (0..self.dollars.len()).map(|c| format!("K{c}")).collect()
    }

    pub fn elements(&self) -> Vec<Element> {
        self.element_ids()
            .iter()
            .enumerate()
            .map(|(i, id)| Element::new(id, id, "", i as u32))
            .collect()
    }

    pub fn constructs(&self) -> Vec<Construct> {
        self.construct_ids()
            .iter()
            .map(|id| Construct::custom(id, "plus", "minus", ""))
            .collect()
    }

    pub fn grid(&self) -> Grid {
        let mut g = Grid::new(self.elements(), self.constructs());
        let eids = self.element_ids();
        for (c, cid) in self.construct_ids().iter().enumerate() {
            for (e, eid) in eids.iter().enumerate() {
                g.set(cid, eid, self.ratings[c][e] as i64);
            }
        }
        g
    }

    pub fn allocation(&self) -> PriorityAllocation {
        let pairs: Vec<(String, i64)> = self
            .construct_ids()
            .into_iter()
            .zip(self.dollars.iter().map(|&d| d as i64))
            .collect();
        PriorityAllocation::new(pairs, &self.constructs()).expect("generated allocations sum to 100")
    }
}

/// `n` non-negative integers summing to 100 (stars and bars).
pub fn hundred_dollars(n: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..=100, n - 1).prop_map(move |mut cuts| {
        cuts.sort_unstable();
        let mut out = Vec::with_capacity(n);
        let mut prev = 0;
        for c in cuts {
            out.push(c - prev);
            prev = c;
        }
        out.push(100 - prev);
        out
    })
}

pub fn instance(elements: std::ops::RangeInclusive<usize>, constructs: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Instance> {
    (elements, constructs).prop_flat_map(|(m, n)| {
        (
            hundred_dollars(n),
            prop::collection::vec(prop::collection::vec(1u8..=3, m), n),
        )
            .prop_map(move |(dollars, ratings)| Instance {
                n_elements: m,
                dollars,
                ratings,
            })
    })
}

pub fn rating(v: i64) -> Rating {
    Rating::new(v).unwrap()
}

/// Drives a fresh session through every phase with `inst`'s ratings as the
/// consensus grid and its dollars as priorities.
pub fn complete_session(inst: &Instance) -> repgrid::Session {
    use repgrid::{Phase, Session};
    let mut s = Session::create(inst.elements(), inst.constructs(), "test").unwrap();
    s.advance_phase(Phase::Survey, "test").unwrap();
    s.advance_phase(Phase::Consensus, "test").unwrap();
    let eids = inst.element_ids();
    for (c, cid) in inst.construct_ids().iter().enumerate() {
        for (e, eid) in eids.iter().enumerate() {
            s.record_consensus(cid, eid, rating(inst.ratings[c][e] as i64), "", "test")
                .unwrap();
        }
    }
    s.advance_phase(Phase::Prioritization, "test").unwrap();
    let pairs: Vec<(String, i64)> = inst
        .construct_ids()
        .into_iter()
        .zip(inst.dollars.iter().map(|&d| d as i64))
        .collect();
    s.set_priorities(pairs, "test").unwrap();
    s.advance_phase(Phase::Recommendation, "test").unwrap();
    s
}

/// One step of a randomized session history over the built-in catalogs.
#[derive(Debug, Clone)]
pub enum Op {
    Phase(usize),
    Survey {
        respondent: u8,
        cells: Vec<(usize, usize, u8)>,
    },
    Consensus {
        construct: usize,
        element: usize,
        value: u8,
        rationale: bool,
    },
    Priorities(Vec<(usize, i64)>),
    Current(Vec<u64>),
}

pub fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        2 => (0usize..6).prop_map(Op::Phase),
        3 => (0u8..6, prop::collection::vec((0usize..17, 0usize..5, 1u8..=3), 0..40))
            .prop_map(|(respondent, cells)| Op::Survey { respondent, cells }),
        4 => (0usize..17, 0usize..5, 1u8..=3, any::<bool>()).prop_map(|(construct, element, value, rationale)| {
            Op::Consensus { construct, element, value, rationale }
        }),
        2 => (1usize..=7).prop_flat_map(|n| {
            (prop::collection::vec(0usize..17, n), hundred_dollars(n), -1i64..=1)
        })
        .prop_map(|(cs, dollars, skew)| {
            let mut pairs: Vec<(usize, i64)> = cs.into_iter().zip(dollars.into_iter().map(|d| d as i64)).collect();
            pairs[0].1 += skew;
            Op::Priorities(pairs)
        }),
        1 => hundred_dollars(5).prop_map(Op::Current),
    ]
}

/// Applies `op`; errors are expected for out-of-phase or invalid steps.
pub fn apply(s: &mut repgrid::Session, op: &Op) -> repgrid::Result<()> {
    use repgrid::aggregation::CellMap;
    use repgrid::{Distribution, Phase, SurveyResponse};
    let els: Vec<String> = s.elements().iter().map(|e| e.id.clone()).collect();
    let cs: Vec<String> = s.constructs().iter().map(|c| c.id.clone()).collect();
    match op {
        Op::Phase(i) => s.advance_phase(Phase::ALL[*i], "facilitator"),
        Op::Survey { respondent, cells } => {
            let mut resp = SurveyResponse::new(format!("R{respondent}"), CellMap::new());
            for &(c, e, v) in cells {
                resp.set(&cs[c], &els[e], rating(v as i64));
            }
            s.submit_survey(resp, "participant")
        }
        Op::Consensus {
            construct,
            element,
            value,
            rationale,
        } => {
            let text = if *rationale { "agreed after discussion" } else { "" };
            s.record_consensus(&cs[*construct], &els[*element], rating(*value as i64), text, "facilitator")
        }
        Op::Priorities(pairs) => {
            let pairs: Vec<(String, i64)> = pairs.iter().map(|(c, d)| (cs[*c].clone(), *d)).collect();
            s.set_priorities(pairs, "facilitator").map(|_| ())
        }
        Op::Current(shares) => {
            let dist = Distribution::new(els.iter().cloned().zip(shares.iter().map(|&v| v as f64)))?;
            s.set_current_distribution(dist, "facilitator")
        }
    }
}
