//! Coherence metrics computed directly on the bipartite sentence–entity graph.
//!
//! * distance-based clustering coefficient (`bipDCC`): Jaccard overlap of two
//!   sentences' entity sets divided by their positional distance;
//! * asymmetric clustering coefficient (`bipACC`): shared entities relative to the
//!   source sentence only, divided by distance;
//! * redundancy: share of a sentence's entity pairs that some other sentence also links;
//! * linkage coefficient (`bipLC`): mean inverse distance to the closest other
//!   sentence containing each entity pair;
//! * forward out-degree on the one-mode projection, as a baseline.
//!
//! Every score is written against [`Scalar`], so the same code evaluates in `f64` or in
//! exact rationals. Sentences without partners or with fewer than two entities score 0
//! and still count towards the document mean.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::grid::EntityGrid;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    BipDcc,
    BipAcc,
    BipLc,
    Redundancy,
    OutDegree,
}

impl Metric {
    pub const ALL: [Metric; 5] = [
        Metric::BipDcc,
        Metric::BipAcc,
        Metric::BipLc,
        Metric::Redundancy,
        Metric::OutDegree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::BipDcc => "bipDCC",
            Metric::BipAcc => "bipACC",
            Metric::BipLc => "bipLC",
            Metric::Redundancy => "redundancy",
            Metric::OutDegree => "out-degree",
        }
    }

    /// Whether per-sentence scores are confined to `[0, 1]`.
    pub fn is_bounded(self) -> bool {
        self != Metric::OutDegree
    }

    pub fn sentence_scores<S: Scalar>(self, g: &BipartiteGraph) -> Vec<S> {
        match self {
            Metric::BipDcc => (0..g.sentence_count())
                .map(|i| dcc_sentence(g, i))
                .collect(),
            Metric::BipAcc => (0..g.sentence_count())
                .map(|i| acc_sentence(g, i))
                .collect(),
            Metric::BipLc => (0..g.sentence_count()).map(|i| linkage(g, i).1).collect(),
            Metric::Redundancy => (0..g.sentence_count()).map(|i| linkage(g, i).0).collect(),
            Metric::OutDegree => out_degrees(g),
        }
    }

    pub fn evaluate<S: Scalar>(self, g: &BipartiteGraph) -> MetricScores<S> {
        MetricScores::from_sentences(self.sentence_scores(g))
    }

    /// Document-level score only.
    pub fn document_score<S: Scalar>(self, g: &BipartiteGraph) -> S {
        S::mean(&self.sentence_scores::<S>(g))
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bipdcc" | "dcc" => Ok(Metric::BipDcc),
            "bipacc" | "acc" => Ok(Metric::BipAcc),
            "biplc" | "lc" => Ok(Metric::BipLc),
            "redundancy" | "rd" => Ok(Metric::Redundancy),
            "out-degree" | "outdegree" | "out_degree" => Ok(Metric::OutDegree),
            _ => Err(Error::Config(format!("unknown metric '{s}'"))),
        }
    }
}

/// Per-sentence scores (document order) and their arithmetic mean.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricScores<S> {
    pub document_score: S,
    pub sentence_scores: Vec<S>,
}

impl<S: Scalar> MetricScores<S> {
    pub fn from_sentences(sentence_scores: Vec<S>) -> Self {
        MetricScores {
            document_score: S::mean(&sentence_scores),
            sentence_scores,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceReport<S> {
    pub doc_id: String,
    pub scores: Vec<(Metric, MetricScores<S>)>,
}

impl<S: Scalar> CoherenceReport<S> {
    pub fn get(&self, metric: Metric) -> Option<&MetricScores<S>> {
        self.scores
            .iter()
            .find(|(m, _)| *m == metric)
            .map(|(_, s)| s)
    }
}

pub fn score_graph<S: Scalar>(
    doc_id: &str,
    g: &BipartiteGraph,
    metrics: &[Metric],
) -> CoherenceReport<S> {
    CoherenceReport {
        doc_id: doc_id.to_string(),
        scores: metrics.iter().map(|&m| (m, m.evaluate(g))).collect(),
    }
}

pub fn score_grid<S: Scalar>(grid: &EntityGrid, metrics: &[Metric]) -> CoherenceReport<S> {
    score_graph(grid.doc_id(), &BipartiteGraph::from_grid(grid), metrics)
}

fn check_pair(g: &BipartiteGraph, i: usize, j: usize) -> Result<usize> {
    g.check_sentence(i)?;
    g.check_sentence(j)?;
    if i == j {
        return Err(Error::contract(
            "sentence pair must consist of two distinct sentences",
        ));
    }
    let shared = g.top_set(i).intersection_count(g.top_set(j));
    if shared == 0 {
        return Err(Error::contract(format!(
            "sentences {i} and {j} share no entity"
        )));
    }
    Ok(shared)
}

fn dcc_value<S: Scalar>(g: &BipartiteGraph, i: usize, j: usize, shared: usize) -> S {
    let union = g.top_set(i).union_count(g.top_set(j));
    S::from_count(shared) / (S::from_count(union) * S::from_count(i.abs_diff(j)))
}

fn acc_value<S: Scalar>(g: &BipartiteGraph, i: usize, j: usize, shared: usize) -> S {
    let own = g.degree_top(i);
    S::from_count(shared) / (S::from_count(own) * S::from_count(i.abs_diff(j)))
}

/// Distance-discounted Jaccard overlap of two sentences that share an entity.
/// Symmetric in `i` and `j`.
pub fn bip_dcc_pair<S: Scalar>(g: &BipartiteGraph, i: usize, j: usize) -> Result<S> {
    let shared = check_pair(g, i, j)?;
    Ok(dcc_value(g, i, j, shared))
}

/// Distance-discounted share of sentence `i`'s entities that also occur in `j`.
pub fn bip_acc_pair<S: Scalar>(g: &BipartiteGraph, i: usize, j: usize) -> Result<S> {
    let shared = check_pair(g, i, j)?;
    Ok(acc_value(g, i, j, shared))
}

fn partner_mean<S: Scalar>(
    g: &BipartiteGraph,
    i: usize,
    pair: impl Fn(&BipartiteGraph, usize, usize, usize) -> S,
) -> S {
    let own = g.top_set(i);
    if own.is_empty() {
        return S::zero();
    }
    let mut sum = S::zero();
    let mut partners = 0;
    for j in (0..g.sentence_count()).filter(|&j| j != i) {
        let shared = own.intersection_count(g.top_set(j));
        if shared > 0 {
            sum = sum + pair(g, i, j, shared);
            partners += 1;
        }
    }
    if partners == 0 {
        S::zero()
    } else {
        sum / S::from_count(partners)
    }
}

fn dcc_sentence<S: Scalar>(g: &BipartiteGraph, i: usize) -> S {
    partner_mean(g, i, dcc_value)
}

fn acc_sentence<S: Scalar>(g: &BipartiteGraph, i: usize) -> S {
    partner_mean(g, i, acc_value)
}

/// Mean distance-based clustering coefficient over the sentences sharing an entity
/// with sentence `i`.
pub fn bip_dcc_sentence<S: Scalar>(g: &BipartiteGraph, i: usize) -> Result<S> {
    g.check_sentence(i)?;
    Ok(dcc_sentence(g, i))
}

pub fn bip_acc_sentence<S: Scalar>(g: &BipartiteGraph, i: usize) -> Result<S> {
    g.check_sentence(i)?;
    Ok(acc_sentence(g, i))
}

pub fn bip_dcc<S: Scalar>(g: &BipartiteGraph) -> MetricScores<S> {
    Metric::BipDcc.evaluate(g)
}

pub fn bip_acc<S: Scalar>(g: &BipartiteGraph) -> MetricScores<S> {
    Metric::BipAcc.evaluate(g)
}

/// Redundancy and linkage coefficient of sentence `i`, computed in one pass over its
/// entity pairs.
fn linkage<S: Scalar>(g: &BipartiteGraph, i: usize) -> (S, S) {
    let entities: Vec<usize> = g.top_set(i).iter().collect();
    let m = entities.len();
    if m < 2 {
        return (S::zero(), S::zero());
    }
    let mut linked = 0usize;
    let mut inverse_sum = S::zero();
    for (a, &ek) in entities.iter().enumerate() {
        for &el in &entities[a + 1..] {
            if let Some(d) = g.bot_set(ek).nearest_common(g.bot_set(el), i) {
                linked += 1;
                inverse_sum = inverse_sum + S::one() / S::from_count(d);
            }
        }
    }
    let pairs = S::from_count(m * (m - 1) / 2);
    (S::from_count(linked) / pairs, inverse_sum / pairs)
}

/// Fraction of the entity pairs of sentence `i` that co-occur in at least one other
/// sentence. Zero when the sentence has fewer than two entities.
pub fn redundancy<S: Scalar>(g: &BipartiteGraph, i: usize) -> Result<S> {
    g.check_sentence(i)?;
    Ok(linkage(g, i).0)
}

/// Mean over the entity pairs of sentence `i` of the inverse distance to the closest
/// other sentence containing both entities (0 for pairs no other sentence links).
pub fn bip_lc_sentence<S: Scalar>(g: &BipartiteGraph, i: usize) -> Result<S> {
    g.check_sentence(i)?;
    Ok(linkage(g, i).1)
}

pub fn bip_lc<S: Scalar>(g: &BipartiteGraph) -> MetricScores<S> {
    Metric::BipLc.evaluate(g)
}

pub fn redundancy_scores<S: Scalar>(g: &BipartiteGraph) -> MetricScores<S> {
    Metric::Redundancy.evaluate(g)
}

fn out_degrees<S: Scalar>(g: &BipartiteGraph) -> Vec<S> {
    let n = g.sentence_count();
    (0..n)
        .map(|i| {
            let deg = (i + 1..n)
                .filter(|&j| g.top_set(i).intersects(g.top_set(j)))
                .count();
            S::from_count(deg)
        })
        .collect()
}

/// Average forward out-degree of the sentence projection.
pub fn out_degree_baseline<S: Scalar>(g: &BipartiteGraph) -> MetricScores<S> {
    Metric::OutDegree.evaluate(g)
}
