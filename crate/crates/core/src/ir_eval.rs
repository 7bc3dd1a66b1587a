//! Retrieval effectiveness: MRR, P@k, ERR@k, NDCG@k and MAP@k over graded judgments.
//!
//! A query takes part in a mean only when the qrels give it at least one relevant
//! (grade > 0) document. Other queries are listed as excluded. Unjudged documents
//! have grade 0. Means are summed in ascending query-id order.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::run::RunFile;

/// Graded relevance judgments.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Qrels {
    judgments: BTreeMap<String, HashMap<String, u32>>,
    max_grade: u32,
}

impl Qrels {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, qid: impl Into<String>, doc_id: impl Into<String>, grade: u32) {
        self.max_grade = self.max_grade.max(grade);
        self.judgments
            .entry(qid.into())
            .or_default()
            .insert(doc_id.into(), grade);
    }

    pub fn grade(&self, qid: &str, doc_id: &str) -> u32 {
        self.judgments
            .get(qid)
            .and_then(|q| q.get(doc_id))
            .copied()
            .unwrap_or(0)
    }

    /// Largest grade over all queries.
    pub fn max_grade(&self) -> u32 {
        self.max_grade
    }

    pub fn query_ids(&self) -> impl Iterator<Item = &str> {
        self.judgments.keys().map(String::as_str)
    }

    pub fn judged_grades(&self, qid: &str) -> Vec<u32> {
        self.judgments
            .get(qid)
            .map(|q| q.values().copied().collect())
            .unwrap_or_default()
    }

    pub fn relevant_count(&self, qid: &str) -> usize {
        self.judgments
            .get(qid)
            .map_or(0, |q| q.values().filter(|&&g| g > 0).count())
    }

    /// Queries with at least one relevant document, ascending.
    pub fn eligible_queries(&self) -> Vec<String> {
        self.judgments
            .keys()
            .filter(|q| self.relevant_count(q) > 0)
            .cloned()
            .collect()
    }
}

/// Parses `qid 0 docid grade` lines. Negative grades (e.g. spam labels) are read as 0.
pub fn parse_qrels(text: &str) -> Result<Qrels> {
    let mut qrels = Qrels::new();
    for (li, line) in text.lines().enumerate() {
        let line_no = li + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(Error::parse(
                line_no,
                0,
                format!("expected 4 fields, found {}", fields.len()),
            ));
        }
        let grade: i64 = fields[3]
            .parse()
            .map_err(|_| Error::parse(line_no, 4, format!("invalid grade {:?}", fields[3])))?;
        let grade =
            u32::try_from(grade.max(0)).map_err(|_| Error::parse(line_no, 4, "grade too large"))?;
        qrels.insert(fields[0], fields[2], grade);
    }
    Ok(qrels)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    Mrr,
    Precision(usize),
    Err(usize),
    Ndcg(usize),
    Map(usize),
}

impl Measure {
    /// The five measures reported by default: MRR, P@10, ERR@20, NDCG@20, MAP@1000.
    pub const STANDARD: [Measure; 5] = [
        Measure::Mrr,
        Measure::Precision(10),
        Measure::Err(20),
        Measure::Ndcg(20),
        Measure::Map(1000),
    ];

    /// Scores one ranking. `ranked` holds the grades of the retrieved documents in rank
    /// order; `judged` holds every judged grade for the query. `None` when the measure
    /// is undefined (no relevant document).
    pub fn score_ranking<F: Float>(
        &self,
        ranked: &[u32],
        judged: &[u32],
        max_grade: u32,
    ) -> Option<F> {
        let total_relevant = judged.iter().filter(|&&g| g > 0).count();
        if total_relevant == 0 {
            return None;
        }
        Some(match *self {
            Measure::Mrr => reciprocal_rank(ranked),
            Measure::Precision(k) => precision_at(ranked, k),
            Measure::Err(k) => err_at(ranked, k, max_grade),
            Measure::Ndcg(k) => ndcg_at(ranked, judged, k)?,
            Measure::Map(k) => average_precision_at(ranked, k, total_relevant),
        })
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::Mrr => write!(f, "mrr"),
            Measure::Precision(k) => write!(f, "p@{k}"),
            Measure::Err(k) => write!(f, "err@{k}"),
            Measure::Ndcg(k) => write!(f, "ndcg@{k}"),
            Measure::Map(k) => write!(f, "map@{k}"),
        }
    }
}

impl FromStr for Measure {
    type Err = Error;

    /// Accepts `mrr`, `p@10`, `err@20`, `ndcg@20`, `map@1000` (case-insensitive). A
    /// name without `@k` takes the default cutoff.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let (name, cutoff) = match lower.split_once('@') {
            Some((n, k)) => {
                let k: usize = k
                    .parse()
                    .ok()
                    .filter(|&k| k > 0)
                    .ok_or_else(|| Error::Config(format!("invalid cutoff in '{s}'")))?;
                (n, Some(k))
            }
            None => (lower.as_str(), None),
        };
        match name {
            "mrr" | "rr" if cutoff.is_none() => Ok(Measure::Mrr),
            "p" | "precision" => Ok(Measure::Precision(cutoff.unwrap_or(10))),
            "err" => Ok(Measure::Err(cutoff.unwrap_or(20))),
            "ndcg" => Ok(Measure::Ndcg(cutoff.unwrap_or(20))),
            "map" | "ap" => Ok(Measure::Map(cutoff.unwrap_or(1000))),
            _ => Err(Error::Config(format!("unknown measure '{s}'"))),
        }
    }
}

pub fn reciprocal_rank<F: Float>(ranked: &[u32]) -> F {
    ranked
        .iter()
        .position(|&g| g > 0)
        .map_or_else(F::zero, |r| F::one() / count::<F>(r + 1))
}

pub fn precision_at<F: Float>(ranked: &[u32], cutoff: usize) -> F {
    let hits = ranked.iter().take(cutoff).filter(|&&g| g > 0).count();
    count::<F>(hits) / count::<F>(cutoff)
}

/// Expected reciprocal rank with stopping probability `(2^g - 1) / 2^max_grade`.
pub fn err_at<F: Float>(ranked: &[u32], cutoff: usize, max_grade: u32) -> F {
    let denom = F::powi(count::<F>(2), max_grade as i32);
    let mut not_stopped = F::one();
    let mut total = F::zero();
    for (r, &g) in ranked.iter().take(cutoff).enumerate() {
        let stop = gain::<F>(g) / denom;
        total = total + not_stopped * stop / count::<F>(r + 1);
        not_stopped = not_stopped * (F::one() - stop);
    }
    total
}

fn dcg<F: Float>(grades: impl Iterator<Item = u32>, cutoff: usize) -> F {
    grades
        .take(cutoff)
        .enumerate()
        .fold(F::zero(), |acc, (r, g)| {
            acc + gain::<F>(g) / count::<F>(r + 2).log2()
        })
}

/// NDCG with gain `2^g - 1` and discount `log2(r + 1)`, normalized by the ideal
/// ordering of all judged documents. `None` when the ideal DCG is zero.
pub fn ndcg_at<F: Float>(ranked: &[u32], judged: &[u32], cutoff: usize) -> Option<F> {
    let mut ideal = judged.to_vec();
    ideal.sort_unstable_by(|a, b| b.cmp(a));
    let ideal_dcg: F = dcg(ideal.into_iter(), cutoff);
    if ideal_dcg <= F::zero() {
        return None;
    }
    Some(dcg::<F>(ranked.iter().copied(), cutoff) / ideal_dcg)
}

pub fn average_precision_at<F: Float>(ranked: &[u32], cutoff: usize, total_relevant: usize) -> F {
    if total_relevant == 0 {
        return F::zero();
    }
    let mut hits = 0;
    let mut sum = F::zero();
    for (r, &g) in ranked.iter().take(cutoff).enumerate() {
        if g > 0 {
            hits += 1;
            sum = sum + count::<F>(hits) / count::<F>(r + 1);
        }
    }
    sum / count::<F>(total_relevant)
}

fn gain<F: Float>(grade: u32) -> F {
    F::powi(count::<F>(2), grade as i32) - F::one()
}

fn count<F: Float>(n: usize) -> F {
    F::from(n).expect("count representable as float")
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureResult {
    pub measure: Measure,
    /// Values for participating queries, ascending query id.
    pub per_query: BTreeMap<String, f64>,
    pub mean: f64,
    /// Queries seen in the run or qrels that had no relevant document.
    pub excluded: Vec<String>,
}

/// Grades of the run's ranking for `qid`, in rank order.
pub(crate) fn ranked_grades(run: &RunFile, qrels: &Qrels, qid: &str) -> Vec<u32> {
    run.query(qid)
        .map(|entries| {
            entries
                .iter()
                .map(|e| qrels.grade(qid, &e.doc_id))
                .collect()
        })
        .unwrap_or_default()
}

pub(crate) fn mean_in_order<'a>(values: impl Iterator<Item = &'a f64>) -> f64 {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

pub fn evaluate(run: &RunFile, qrels: &Qrels, measure: Measure) -> MeasureResult {
    let mut per_query = BTreeMap::new();
    let mut excluded = Vec::new();
    let mut all: Vec<&str> = qrels.query_ids().collect();
    all.extend(run.queries().map(|(q, _)| q));
    all.sort_unstable();
    all.dedup();
    for qid in all {
        let judged = qrels.judged_grades(qid);
        let ranked = ranked_grades(run, qrels, qid);
        match measure.score_ranking::<f64>(&ranked, &judged, qrels.max_grade()) {
            Some(v) => {
                per_query.insert(qid.to_string(), v);
            }
            None => excluded.push(qid.to_string()),
        }
    }
    let mean = mean_in_order(per_query.values());
    MeasureResult {
        measure,
        per_query,
        mean,
        excluded,
    }
}

/// Per-query TSV (`qid`, one column per measure) followed by an `all` row of means,
/// four decimals. Queries excluded from every measure are omitted.
pub fn format_results_tsv(results: &[MeasureResult]) -> String {
    let mut out = String::from("qid");
    for r in results {
        let _ = write!(out, "\t{}", r.measure);
    }
    out.push('\n');
    let mut qids: Vec<&String> = results.iter().flat_map(|r| r.per_query.keys()).collect();
    qids.sort_unstable();
    qids.dedup();
    for qid in qids {
        out.push_str(qid);
        for r in results {
            match r.per_query.get(qid) {
                Some(v) => {
                    let _ = write!(out, "\t{v:.4}");
                }
                None => out.push_str("\tNA"),
            }
        }
        out.push('\n');
    }
    out.push_str("all");
    for r in results {
        let _ = write!(out, "\t{:.4}", r.mean);
    }
    out.push('\n');
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantileBucket {
    /// `(qid, percentage improvement)`, in bucket order.
    pub improvements: Vec<(String, f64)>,
}

impl QuantileBucket {
    pub fn mean_improvement(&self) -> f64 {
        mean_in_order(self.improvements.iter().map(|(_, v)| v))
    }
}

/// Queries bucketed by baseline difficulty: Q1 holds the highest baseline scores,
/// Q4 the lowest non-zero ones.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantileTable {
    pub buckets: [QuantileBucket; 4],
    /// Queries dropped because their baseline score is zero.
    pub zero_baseline: Vec<String>,
}

impl QuantileTable {
    pub fn means(&self) -> [f64; 4] {
        std::array::from_fn(|i| self.buckets[i].mean_improvement())
    }
}

/// Splits queries into four equal-count buckets by decreasing baseline score (ties by
/// query id; earlier buckets take the remainder) and reports the percentage change
/// `(reranked - baseline) / baseline * 100` per query.
pub fn difficulty_quantiles(
    baseline: &BTreeMap<String, f64>,
    reranked: &BTreeMap<String, f64>,
) -> Result<QuantileTable> {
    let mut zero_baseline = Vec::new();
    let mut eligible: Vec<(&String, f64, f64)> = Vec::new();
    for (qid, &b) in baseline {
        let r = *reranked
            .get(qid)
            .ok_or_else(|| Error::contract(format!("query {qid} missing from reranked scores")))?;
        if b == 0.0 {
            zero_baseline.push(qid.clone());
        } else {
            eligible.push((qid, b, r));
        }
    }
    if eligible.len() < 4 {
        return Err(Error::Insufficient(format!(
            "need at least 4 queries with non-zero baseline, found {}",
            eligible.len()
        )));
    }
    eligible.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let base = eligible.len() / 4;
    let extra = eligible.len() % 4;
    let mut it = eligible.into_iter();
    let buckets = std::array::from_fn(|q| {
        let size = base + usize::from(q < extra);
        QuantileBucket {
            improvements: it
                .by_ref()
                .take(size)
                .map(|(qid, b, r)| (qid.clone(), (r - b) / b * 100.0))
                .collect(),
        }
    });
    Ok(QuantileTable {
        buckets,
        zero_baseline,
    })
}

/// Quantile improvements aggregated over several measures, in both readings: the
/// mean of per-measure bucket means, and the mean over all pooled (query, measure)
/// improvements.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantileSummary {
    pub per_measure_mean: [f64; 4],
    pub pooled: [f64; 4],
    pub zero_baseline_total: usize,
}

pub fn summarize_quantiles(tables: &[QuantileTable]) -> QuantileSummary {
    let per_measure_mean = std::array::from_fn(|q| {
        mean_in_order(
            tables
                .iter()
                .map(|t| t.buckets[q].mean_improvement())
                .collect::<Vec<_>>()
                .iter(),
        )
    });
    let pooled = std::array::from_fn(|q| {
        mean_in_order(
            tables
                .iter()
                .flat_map(|t| t.buckets[q].improvements.iter().map(|(_, v)| v)),
        )
    });
    QuantileSummary {
        per_measure_mean,
        pooled,
        zero_baseline_total: tables.iter().map(|t| t.zero_baseline.len()).sum(),
    }
}
