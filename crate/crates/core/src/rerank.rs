//! Coherence as a query-independent prior: the reranking score is `R = B + Ĉ`, where
//! `B` is the baseline retrieval score and `Ĉ` a log, saturating or sigmoid transform
//! of the document's coherence `C`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Float;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ir_eval::{mean_in_order, Measure, Qrels};
use crate::run::{RunEntry, RunFile, ScoreTable};

/// Floor applied to `C` before taking its logarithm.
pub const LOG_FLOOR: f64 = 1e-6;
pub const DEFAULT_DEPTH: usize = 1000;
pub const DEFAULT_FOLDS: usize = 5;
pub const DEFAULT_FOLD_SEED: u64 = 20_170_607;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransformKind {
    Log,
    Satu,
    Sigmoid,
}

impl TransformKind {
    pub const ALL: [TransformKind; 3] = [
        TransformKind::Log,
        TransformKind::Satu,
        TransformKind::Sigmoid,
    ];
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransformKind::Log => "log",
            TransformKind::Satu => "satu",
            TransformKind::Sigmoid => "sigmoid",
        })
    }
}

impl FromStr for TransformKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "log" => Ok(TransformKind::Log),
            "satu" => Ok(TransformKind::Satu),
            "sigmoid" => Ok(TransformKind::Sigmoid),
            _ => Err(Error::Config(format!("unknown transform '{s}'"))),
        }
    }
}

/// Transform parameters. `k` is ignored by `log`; `alpha` only matters for `sigmoid`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformConfig<F> {
    pub kind: TransformKind,
    pub w: F,
    pub k: F,
    pub alpha: F,
}

impl<F: Float> TransformConfig<F> {
    pub fn log(w: F) -> Self {
        TransformConfig {
            kind: TransformKind::Log,
            w,
            k: F::one(),
            alpha: F::one(),
        }
    }

    pub fn satu(w: F, k: F) -> Self {
        TransformConfig {
            kind: TransformKind::Satu,
            w,
            k,
            alpha: F::one(),
        }
    }

    pub fn sigmoid(w: F, k: F, alpha: F) -> Self {
        TransformConfig {
            kind: TransformKind::Sigmoid,
            w,
            k,
            alpha,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: F| v.is_finite() && v > F::zero();
        if !(self.w.is_finite() && self.w >= F::zero()) {
            return Err(Error::Config("w must be finite and >= 0".into()));
        }
        if self.kind != TransformKind::Log && !positive(self.k) {
            return Err(Error::Config("k must be finite and > 0".into()));
        }
        if self.kind == TransformKind::Sigmoid && !positive(self.alpha) {
            return Err(Error::Config("alpha must be finite and > 0".into()));
        }
        Ok(())
    }

    /// `Ĉ` for a coherence score `c >= 0`.
    pub fn apply(&self, c: F) -> F {
        match self.kind {
            TransformKind::Log => {
                let floor = F::from(LOG_FLOOR).expect("floor representable");
                self.w * c.max(floor).ln()
            }
            // w * (c / (k + c)) keeps satu(k) == w / 2 exact
            TransformKind::Satu => self.w * (c / (self.k + c)),
            TransformKind::Sigmoid => {
                let ca = c.powf(self.alpha);
                self.w * (ca / (self.k.powf(self.alpha) + ca))
            }
        }
    }
}

impl<F: Float + fmt::Display> fmt::Display for TransformConfig<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TransformKind::Log => write!(f, "log w={}", self.w),
            TransformKind::Satu => write!(f, "satu w={} k={}", self.w, self.k),
            TransformKind::Sigmoid => {
                write!(f, "sigmoid w={} k={} alpha={}", self.w, self.k, self.alpha)
            }
        }
    }
}

/// Positions of the reranked list: the first `depth` entries ordered by decreasing
/// `baseline + Ĉ` (stable, so equal scores keep baseline order), then the rest in
/// baseline order. Returns `(index into input, new score)`.
fn rerank_positions(
    baseline: &[f64],
    coherence: &[f64],
    cfg: &TransformConfig<f64>,
    depth: usize,
) -> Vec<(usize, f64)> {
    let cut = depth.min(baseline.len());
    let mut head: Vec<(usize, f64)> = (0..cut)
        .map(|i| (i, baseline[i] + cfg.apply(coherence[i])))
        .collect();
    head.sort_by(|a, b| b.1.total_cmp(&a.1));
    let mut floor = head.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    for (i, &b) in baseline.iter().enumerate().skip(cut) {
        floor = floor.min(b);
        head.push((i, floor));
    }
    head
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reranked {
    pub run: RunFile,
    /// Run entries whose document had no coherence score (treated as 0).
    pub missing_scores: usize,
}

/// Reranks the top `depth` documents of every query by `B + Ĉ`. Documents below the
/// cut keep their order after the reranked block; their scores are capped so scores
/// stay non-increasing. Ranks are renumbered from 1.
pub fn rerank(
    run: &RunFile,
    scores: &ScoreTable,
    cfg: &TransformConfig<f64>,
    depth: usize,
) -> Result<Reranked> {
    cfg.validate()?;
    if depth == 0 {
        return Err(Error::Config("depth must be at least 1".into()));
    }
    let mut out = RunFile::new(run.tag());
    let mut missing_scores = 0;
    for (qid, entries) in run.queries() {
        let baseline: Vec<f64> = entries.iter().map(|e| e.score).collect();
        let coherence: Vec<f64> = entries
            .iter()
            .map(|e| {
                scores.get(&e.doc_id).unwrap_or_else(|| {
                    missing_scores += 1;
                    0.0
                })
            })
            .collect();
        let reranked = rerank_positions(&baseline, &coherence, cfg, depth)
            .into_iter()
            .enumerate()
            .map(|(r, (i, score))| RunEntry {
                doc_id: entries[i].doc_id.clone(),
                rank: r + 1,
                score,
            })
            .collect();
        out.insert_unchecked(qid.to_string(), reranked);
    }
    Ok(Reranked {
        run: out,
        missing_scores,
    })
}

/// Candidate parameter values for grid search.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterGrid {
    pub w: Vec<f64>,
    pub k: Vec<f64>,
    pub alpha: Vec<f64>,
}

fn tenths(from: u32, to: u32) -> Vec<f64> {
    (from..=to).map(|i| f64::from(i) / 10.0).collect()
}

impl ParameterGrid {
    /// w in 0.0..=2.0, k in 0.1..=2.0, alpha in 0.1..=1.0, all in steps of 0.1.
    /// k = 0 and alpha = 0 are left out: both make the transform degenerate.
    pub fn standard() -> Self {
        ParameterGrid {
            w: tenths(0, 20),
            k: tenths(1, 20),
            alpha: tenths(1, 10),
        }
    }

    /// Grid points for `kind` in lexicographic `(w, k, alpha)` order, after sorting
    /// and deduplicating each axis.
    pub fn configs(&self, kind: TransformKind) -> Vec<TransformConfig<f64>> {
        let axis = |v: &[f64]| {
            let mut v = v.to_vec();
            v.sort_by(f64::total_cmp);
            v.dedup();
            v
        };
        let (w, k, alpha) = (axis(&self.w), axis(&self.k), axis(&self.alpha));
        let mut out = Vec::new();
        for &w in &w {
            match kind {
                TransformKind::Log => out.push(TransformConfig::log(w)),
                TransformKind::Satu => out.extend(k.iter().map(|&k| TransformConfig::satu(w, k))),
                TransformKind::Sigmoid => {
                    for &k in &k {
                        out.extend(alpha.iter().map(|&a| TransformConfig::sigmoid(w, k, a)));
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvConfig {
    pub folds: usize,
    pub seed: u64,
    pub depth: usize,
    pub grid: ParameterGrid,
}

impl Default for CvConfig {
    fn default() -> Self {
        CvConfig {
            folds: DEFAULT_FOLDS,
            seed: DEFAULT_FOLD_SEED,
            depth: DEFAULT_DEPTH,
            grid: ParameterGrid::standard(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoldOutcome {
    pub test_queries: Vec<String>,
    pub best: TransformConfig<f64>,
    pub train_score: f64,
    pub test_score: f64,
    pub baseline_test_score: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvReport {
    pub measure: Measure,
    pub kind: TransformKind,
    pub folds: Vec<FoldOutcome>,
    /// Mean of the per-fold test scores.
    pub mean_test_score: f64,
    /// Mean of the per-fold baseline scores on the same test folds.
    pub mean_baseline_score: f64,
    pub missing_scores: usize,
}

struct PreparedQuery {
    baseline: Vec<f64>,
    coherence: Vec<f64>,
    grades: Vec<u32>,
    judged: Vec<u32>,
}

impl PreparedQuery {
    fn score(
        &self,
        measure: Measure,
        max_grade: u32,
        cfg: Option<&TransformConfig<f64>>,
        depth: usize,
    ) -> f64 {
        let ranked: Vec<u32> = match cfg {
            Some(cfg) => rerank_positions(&self.baseline, &self.coherence, cfg, depth)
                .into_iter()
                .map(|(i, _)| self.grades[i])
                .collect(),
            None => self.grades.clone(),
        };
        measure
            .score_ranking(&ranked, &self.judged, max_grade)
            .expect("only queries with relevant documents are prepared")
    }
}

/// Deterministic fold assignment: ids sorted, shuffled with `seed`, then cut into
/// `folds` contiguous chunks whose sizes differ by at most one.
pub fn assign_folds(queries: &[String], folds: usize, seed: u64) -> Result<Vec<Vec<String>>> {
    if folds == 0 {
        return Err(Error::Config("fold count must be at least 1".into()));
    }
    if queries.len() < folds {
        return Err(Error::Insufficient(format!(
            "{} queries cannot fill {folds} folds",
            queries.len()
        )));
    }
    let mut ids = queries.to_vec();
    ids.sort_unstable();
    ids.dedup();
    if ids.len() < folds {
        return Err(Error::Insufficient(format!(
            "{} distinct queries cannot fill {folds} folds",
            ids.len()
        )));
    }
    ids.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let base = ids.len() / folds;
    let extra = ids.len() % folds;
    let mut it = ids.into_iter();
    Ok((0..folds)
        .map(|f| it.by_ref().take(base + usize::from(f < extra)).collect())
        .collect())
}

/// k-fold cross-validated grid search of the transform parameters. Queries are the
/// qrels queries with at least one relevant document. Within each fold the grid point
/// with the best mean training score wins (ties go to the earliest point in
/// `(w, k, alpha)` order) and is scored on the held-out queries.
pub fn cross_validate(
    run: &RunFile,
    scores: &ScoreTable,
    qrels: &Qrels,
    measure: Measure,
    kind: TransformKind,
    config: &CvConfig,
) -> Result<CvReport> {
    if config.depth == 0 {
        return Err(Error::Config("depth must be at least 1".into()));
    }
    let candidates = config.grid.configs(kind);
    if candidates.is_empty() {
        return Err(Error::Config("parameter grid is empty".into()));
    }
    for c in &candidates {
        c.validate()?;
    }
    let queries = qrels.eligible_queries();
    let folds = assign_folds(&queries, config.folds, config.seed)?;

    let mut missing_scores = 0;
    let prepared: BTreeMap<String, PreparedQuery> = queries
        .iter()
        .map(|qid| {
            let entries = run.query(qid).unwrap_or(&[]);
            let coherence = entries
                .iter()
                .map(|e| {
                    scores.get(&e.doc_id).unwrap_or_else(|| {
                        missing_scores += 1;
                        0.0
                    })
                })
                .collect();
            let q = PreparedQuery {
                baseline: entries.iter().map(|e| e.score).collect(),
                coherence,
                grades: entries
                    .iter()
                    .map(|e| qrels.grade(qid, &e.doc_id))
                    .collect(),
                judged: qrels.judged_grades(qid),
            };
            (qid.clone(), q)
        })
        .collect();
    let max_grade = qrels.max_grade();
    let mean_over = |ids: &[&String], cfg: Option<&TransformConfig<f64>>| {
        let values: Vec<f64> = ids
            .iter()
            .map(|q| prepared[*q].score(measure, max_grade, cfg, config.depth))
            .collect();
        mean_in_order(values.iter())
    };

    let mut outcomes = Vec::with_capacity(folds.len());
    for (f, test) in folds.iter().enumerate() {
        let mut train: Vec<&String> = folds
            .iter()
            .enumerate()
            .filter(|(g, _)| *g != f)
            .flat_map(|(_, qs)| qs.iter())
            .collect();
        train.sort_unstable();
        let mut test_ids: Vec<&String> = test.iter().collect();
        test_ids.sort_unstable();

        // evaluated in parallel, reduced in grid order
        let train_scores: Vec<f64> = candidates
            .par_iter()
            .map(|cfg| mean_over(&train, Some(cfg)))
            .collect();
        let mut best = 0;
        for (i, &s) in train_scores.iter().enumerate() {
            if s > train_scores[best] {
                best = i;
            }
        }
        outcomes.push(FoldOutcome {
            test_queries: test_ids.iter().map(|q| q.to_string()).collect(),
            best: candidates[best],
            train_score: train_scores[best],
            test_score: mean_over(&test_ids, Some(&candidates[best])),
            baseline_test_score: mean_over(&test_ids, None),
        });
    }
    Ok(CvReport {
        measure,
        kind,
        mean_test_score: mean_in_order(outcomes.iter().map(|o| &o.test_score)),
        mean_baseline_score: mean_in_order(outcomes.iter().map(|o| &o.baseline_test_score)),
        folds: outcomes,
        missing_scores,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir_eval::evaluate;
    use proptest::prelude::*;

    #[test]
    fn transform_basics() {
        assert_eq!(TransformConfig::log(0.7).apply(1.0), 0.0);
        assert_eq!(TransformConfig::satu(1.0, 0.3).apply(0.3), 0.5);
        assert_eq!(TransformConfig::satu(0.1, 0.3).apply(0.3), 0.05);
        let floor = TransformConfig::log(1.0).apply(0.0);
        assert_eq!(floor, LOG_FLOOR.ln());
        assert_eq!(TransformConfig::sigmoid(2.0, 1.0, 0.5).apply(0.0), 0.0);
        for c in [0.0, 0.2, 1.0, 7.5] {
            assert_eq!(
                TransformConfig::sigmoid(1.3, 0.4, 1.0).apply(c),
                TransformConfig::satu(1.3, 0.4).apply(c)
            );
        }
    }

    #[test]
    fn transform_validation() {
        assert!(TransformConfig::satu(1.0, 0.0).validate().is_err());
        assert!(TransformConfig::sigmoid(1.0, 1.0, 0.0).validate().is_err());
        assert!(TransformConfig::log(-0.1).validate().is_err());
        assert!(TransformConfig::log(0.0).validate().is_ok());
        assert_eq!(
            "SATU".parse::<TransformKind>().unwrap(),
            TransformKind::Satu
        );
        assert!("exp".parse::<TransformKind>().is_err());
    }

    fn two_doc_run() -> RunFile {
        let mut run = RunFile::new("base");
        run.insert_ranking("q", [("d1", 2.0), ("d2", 1.9)]).unwrap();
        run
    }

    #[test]
    fn satu_flips_order() {
        let scores: ScoreTable = [("d1", 0.0), ("d2", 1.0)].into_iter().collect();
        let out = rerank(
            &two_doc_run(),
            &scores,
            &TransformConfig::satu(1.0, 1.0),
            1000,
        )
        .unwrap();
        let q = out.run.query("q").unwrap();
        assert_eq!(q[0].doc_id, "d2");
        assert_eq!(q[0].score, 2.4);
        assert_eq!(q[1].score, 2.0);
        assert_eq!(out.missing_scores, 0);
    }

    #[test]
    fn zero_weight_is_identity() {
        let scores: ScoreTable = [("d2", 5.0)].into_iter().collect();
        for kind in TransformKind::ALL {
            let cfg = TransformConfig {
                kind,
                w: 0.0,
                k: 1.0,
                alpha: 0.5,
            };
            let out = rerank(&two_doc_run(), &scores, &cfg, 1000).unwrap();
            assert_eq!(out.run, two_doc_run(), "{kind}");
            assert_eq!(out.missing_scores, 1);
        }
    }

    #[test]
    fn depth_limits_reranking() {
        let mut run = RunFile::new("t");
        run.insert_ranking("q", [("a", 3.0), ("b", 2.0), ("c", 1.0)])
            .unwrap();
        let scores: ScoreTable = [("a", 0.0), ("b", 9.0), ("c", 9.0)].into_iter().collect();
        let out = rerank(&run, &scores, &TransformConfig::satu(2.0, 1.0), 1).unwrap();
        let order: Vec<&str> = out
            .run
            .query("q")
            .unwrap()
            .iter()
            .map(|e| e.doc_id.as_str())
            .collect();
        assert_eq!(order, vec!["a", "b", "c"]);
        let out = rerank(&run, &scores, &TransformConfig::satu(2.0, 1.0), 2).unwrap();
        let q = out.run.query("q").unwrap();
        let order: Vec<&str> = q.iter().map(|e| e.doc_id.as_str()).collect();
        assert_eq!(order, vec!["b", "a", "c"]);
        assert!(q.windows(2).all(|w| w[0].score >= w[1].score));
        assert!(rerank(&run, &scores, &TransformConfig::satu(2.0, 1.0), 0).is_err());
    }

    #[test]
    fn standard_grid_sizes() {
        let g = ParameterGrid::standard();
        assert_eq!(g.configs(TransformKind::Log).len(), 21);
        assert_eq!(g.configs(TransformKind::Satu).len(), 21 * 20);
        assert_eq!(g.configs(TransformKind::Sigmoid).len(), 21 * 20 * 10);
        assert_eq!(g.w[3], 0.3);
        let c = g.configs(TransformKind::Sigmoid);
        assert_eq!((c[0].w, c[0].k, c[0].alpha), (0.0, 0.1, 0.1));
        assert_eq!((c[1].w, c[1].k, c[1].alpha), (0.0, 0.1, 0.2));
    }

    #[test]
    fn folds_are_balanced_and_reproducible() {
        let qs: Vec<String> = (0..12).map(|i| format!("q{i:02}")).collect();
        let a = assign_folds(&qs, 5, 3).unwrap();
        let sizes: Vec<usize> = a.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![3, 3, 2, 2, 2]);
        let mut rev = qs.clone();
        rev.reverse();
        assert_eq!(assign_folds(&rev, 5, 3).unwrap(), a);
        let mut all: Vec<String> = a.concat();
        all.sort();
        assert_eq!(all, qs);
        assert!(assign_folds(&qs[..4], 5, 3).is_err());
    }

    fn separable_fixture(queries: usize) -> (RunFile, ScoreTable, Qrels) {
        let mut run = RunFile::new("base");
        let mut qrels = Qrels::new();
        let mut scores = ScoreTable::new();
        for q in 0..queries {
            let qid = format!("{}", 100 + q);
            let bad = format!("bad{q}");
            let good = format!("good{q}");
            run.insert_ranking(
                qid.clone(),
                [
                    (bad.clone(), 10.0 - q as f64 * 0.1),
                    (good.clone(), 9.99 - q as f64 * 0.1),
                ],
            )
            .unwrap();
            qrels.insert(qid.clone(), good.clone(), 1);
            qrels.insert(qid, bad.clone(), 0);
            scores.insert(good, 1.0).unwrap();
            scores.insert(bad, 0.0).unwrap();
        }
        (run, scores, qrels)
    }

    #[test]
    fn perfect_separation_reaches_full_mrr() {
        let (run, scores, qrels) = separable_fixture(10);
        let base = evaluate(&run, &qrels, Measure::Mrr);
        assert_eq!(base.mean, 0.5);
        for kind in TransformKind::ALL {
            let cfg = CvConfig::default();
            let report = cross_validate(&run, &scores, &qrels, Measure::Mrr, kind, &cfg).unwrap();
            assert_eq!(report.mean_test_score, 1.0, "{kind}");
            assert_eq!(report.mean_baseline_score, 0.5);
            assert!(report.folds.iter().all(|f| f.best.w > 0.0));
        }
    }

    #[test]
    fn zero_only_grid_reproduces_baseline() {
        let (run, scores, qrels) = separable_fixture(7);
        let cfg = CvConfig {
            grid: ParameterGrid {
                w: vec![0.0],
                k: vec![1.0],
                alpha: vec![1.0],
            },
            ..Default::default()
        };
        let report = cross_validate(
            &run,
            &scores,
            &qrels,
            Measure::Ndcg(20),
            TransformKind::Satu,
            &cfg,
        )
        .unwrap();
        assert_eq!(report.mean_test_score, report.mean_baseline_score);
    }

    #[test]
    fn too_few_queries() {
        let (run, scores, qrels) = separable_fixture(3);
        let err = cross_validate(
            &run,
            &scores,
            &qrels,
            Measure::Mrr,
            TransformKind::Log,
            &CvConfig::default(),
        );
        assert!(matches!(err, Err(Error::Insufficient(_))));
    }

    #[test]
    fn grid_search_is_deterministic() {
        let (run, scores, qrels) = separable_fixture(10);
        let cfg = CvConfig::default();
        let a = cross_validate(
            &run,
            &scores,
            &qrels,
            Measure::Mrr,
            TransformKind::Satu,
            &cfg,
        )
        .unwrap();
        let b = cross_validate(
            &run,
            &scores,
            &qrels,
            Measure::Mrr,
            TransformKind::Satu,
            &cfg,
        )
        .unwrap();
        assert_eq!(a, b);
        // every w > 0 ties on training, so the smallest grid point wins
        assert!(a.folds.iter().all(|f| (f.best.w, f.best.k) == (0.1, 0.1)));
    }

    proptest! {
        #[test]
        fn transforms_are_monotone(c1 in 0.0f64..10.0, dc in 0.0f64..10.0, w in 0.0f64..2.0, k in 0.1f64..2.0, a in 0.1f64..1.0) {
            let c2 = c1 + dc;
            for cfg in [TransformConfig::log(w), TransformConfig::satu(w, k), TransformConfig::sigmoid(w, k, a)] {
                prop_assert!(cfg.apply(c1) <= cfg.apply(c2) + 1e-15);
                if cfg.kind != TransformKind::Log {
                    prop_assert!(cfg.apply(c2) <= w);
                }
            }
        }

        #[test]
        fn shift_invariance(
            base in proptest::collection::vec(0.0f64..10.0, 2..12),
            coh in proptest::collection::vec(0.0f64..1.0, 12),
            shift in -5.0f64..5.0,
            w in 0.1f64..2.0,
        ) {
            let mut b = base.clone();
            b.sort_by(|x, y| y.total_cmp(x));
            let cfg = TransformConfig::satu(w, 0.5);
            let r: Vec<f64> = b.iter().zip(&coh).map(|(b, c)| b + cfg.apply(*c)).collect();
            // skip near-ties where rounding of the shift could decide the order
            let mut sorted = r.clone();
            sorted.sort_by(f64::total_cmp);
            prop_assume!(sorted.windows(2).all(|w| w[1] - w[0] > 1e-9));
            let shifted: Vec<f64> = b.iter().map(|x| x + shift).collect();
            let p1: Vec<usize> = rerank_positions(&b, &coh, &cfg, 1000).into_iter().map(|p| p.0).collect();
            let p2: Vec<usize> = rerank_positions(&shifted, &coh, &cfg, 1000).into_iter().map(|p| p.0).collect();
            prop_assert_eq!(p1, p2);
        }
    }
}
