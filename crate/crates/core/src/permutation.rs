//! Sentence-swap evaluation of coherence metrics.
//!
//! For each document and each `n` in `1..=n_max`, `n` disjoint sentence pairs are
//! drawn at random and swapped. A metric predicts correctly when the original
//! document scores no lower than the swapped one. Documents with fewer than `2n`
//! sentences are skipped at that `n`.

use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::grid::{apply_order, EntityGrid, Permutation};
use crate::metrics::Metric;

pub const DEFAULT_SEED: u64 = 20_170_607;
pub const DEFAULT_MAX_SWAPS: usize = 20;

/// Absolute difference below which two document scores count as tied. Guards the
/// "not lower than" test against summation-order rounding.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// `n` disjoint sentence pairs to exchange.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapPlan {
    n: usize,
    pairs: Vec<(usize, usize)>,
    seed: u64,
}

impl SwapPlan {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Pairs as `(lower, higher)` sentence indices; all `2n` indices are distinct.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn permutation(&self, sentence_count: usize) -> Result<Permutation> {
        Permutation::from_swaps(sentence_count, &self.pairs)
    }
}

/// Draws `n` disjoint pairs uniformly from the grid's sentences. Returns `Ok(None)`
/// when the grid has fewer than `2n` sentences.
pub fn make_swap_plan(grid: &EntityGrid, n: usize, seed: u64) -> Result<Option<SwapPlan>> {
    make_swap_plan_for(grid.sentence_count(), n, seed)
}

fn make_swap_plan_for(sentence_count: usize, n: usize, seed: u64) -> Result<Option<SwapPlan>> {
    if n == 0 {
        return Err(Error::Config(
            "number of swapped pairs must be at least 1".into(),
        ));
    }
    if sentence_count < 2 * n {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picked = sample(&mut rng, sentence_count, 2 * n).into_vec();
    let pairs = picked
        .chunks_exact(2)
        .map(|p| (p[0].min(p[1]), p[0].max(p[1])))
        .collect();
    Ok(Some(SwapPlan { n, pairs, seed }))
}

/// Seed for one (document, n, trial) cell: the base seed offset by a stable FNV-1a
/// hash, so results do not depend on scheduling or corpus order.
pub fn trial_seed(base_seed: u64, doc_id: &str, n: usize, trial: usize) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    let mut feed = |bytes: &[u8]| {
        for &b in bytes {
            h ^= u64::from(b);
            h = h.wrapping_mul(PRIME);
        }
    };
    feed(doc_id.as_bytes());
    feed(&[0xff]);
    feed(&(n as u64).to_le_bytes());
    feed(&(trial as u64).to_le_bytes());
    base_seed.wrapping_add(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermutationConfig {
    pub max_swaps: usize,
    pub trials_per_n: usize,
    pub seed: u64,
}

impl Default for PermutationConfig {
    fn default() -> Self {
        PermutationConfig {
            max_swaps: DEFAULT_MAX_SWAPS,
            trials_per_n: 1,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub n: usize,
    pub documents_evaluated: usize,
    /// documents_evaluated × trials_per_n
    pub trials: usize,
    pub correct: usize,
    /// Trials where original and permuted scores were equal (counted correct).
    pub ties: usize,
}

impl CurvePoint {
    /// `None` when no document was long enough for this `n`.
    pub fn accuracy(&self) -> Option<f64> {
        (self.trials > 0).then(|| self.correct as f64 / self.trials as f64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyCurve {
    pub metric: Metric,
    pub points: Vec<CurvePoint>,
}

impl AccuracyCurve {
    /// Mean of the per-`n` accuracies over the `n` values with at least one document.
    pub fn overall(&self) -> Option<f64> {
        let accs: Vec<f64> = self
            .points
            .iter()
            .filter_map(CurvePoint::accuracy)
            .collect();
        (!accs.is_empty()).then(|| accs.iter().sum::<f64>() / accs.len() as f64)
    }

    /// Correct predictions over all trials, pooled across `n`.
    pub fn pooled(&self) -> Option<f64> {
        let trials: usize = self.points.iter().map(|p| p.trials).sum();
        let correct: usize = self.points.iter().map(|p| p.correct).sum();
        (trials > 0).then(|| correct as f64 / trials as f64)
    }

    pub fn ties(&self) -> usize {
        self.points.iter().map(|p| p.ties).sum()
    }
}

#[derive(Default, Clone, Copy)]
struct Tally {
    docs: usize,
    trials: usize,
    correct: usize,
    ties: usize,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally {
            docs: self.docs + o.docs,
            trials: self.trials + o.trials,
            correct: self.correct + o.correct,
            ties: self.ties + o.ties,
        }
    }
}

/// Outcome of comparing an original score against a permuted one.
pub fn judge(original: f64, permuted: f64) -> (bool, bool) {
    let tie = (original - permuted).abs() <= TIE_TOLERANCE;
    (tie || original >= permuted, tie)
}

pub fn evaluate_metric(
    corpus: &[EntityGrid],
    metric: Metric,
    config: &PermutationConfig,
) -> Result<AccuracyCurve> {
    Ok(evaluate_metrics(corpus, &[metric], config)?.remove(0))
}

/// Evaluates several metrics against the same swap plans. Documents are processed in
/// parallel; tallies are integer sums, so results do not depend on thread count.
pub fn evaluate_metrics(
    corpus: &[EntityGrid],
    metrics: &[Metric],
    config: &PermutationConfig,
) -> Result<Vec<AccuracyCurve>> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    if metrics.is_empty() {
        return Err(Error::Config("no metric selected".into()));
    }
    if config.max_swaps == 0 || config.trials_per_n == 0 {
        return Err(Error::Config(
            "max_swaps and trials_per_n must both be at least 1".into(),
        ));
    }
    let cells = metrics.len() * config.max_swaps;
    let tallies = corpus
        .par_iter()
        .map(|grid| evaluate_document(grid, metrics, config))
        .try_reduce(
            || vec![Tally::default(); cells],
            |a, b| Ok(a.into_iter().zip(b).map(|(x, y)| x.merge(y)).collect()),
        )?;

    Ok(metrics
        .iter()
        .enumerate()
        .map(|(mi, &metric)| AccuracyCurve {
            metric,
            points: (0..config.max_swaps)
                .map(|ni| {
                    let t = tallies[mi * config.max_swaps + ni];
                    CurvePoint {
                        n: ni + 1,
                        documents_evaluated: t.docs,
                        trials: t.trials,
                        correct: t.correct,
                        ties: t.ties,
                    }
                })
                .collect(),
        })
        .collect())
}

fn evaluate_document(
    grid: &EntityGrid,
    metrics: &[Metric],
    config: &PermutationConfig,
) -> Result<Vec<Tally>> {
    let mut tallies = vec![Tally::default(); metrics.len() * config.max_swaps];
    let graph = BipartiteGraph::from_grid(grid);
    let originals: Vec<f64> = metrics.iter().map(|m| m.document_score(&graph)).collect();
    for n in 1..=config.max_swaps {
        if grid.sentence_count() < 2 * n {
            break;
        }
        for (mi, _) in metrics.iter().enumerate() {
            tallies[mi * config.max_swaps + n - 1].docs += 1;
        }
        for trial in 0..config.trials_per_n {
            let seed = trial_seed(config.seed, grid.doc_id(), n, trial);
            let plan = make_swap_plan(grid, n, seed)?.expect("length checked above");
            let permuted = apply_order(grid, &plan.permutation(grid.sentence_count())?)?;
            let permuted = BipartiteGraph::from_grid(&permuted);
            for (mi, metric) in metrics.iter().enumerate() {
                let (correct, tie) = judge(originals[mi], metric.document_score(&permuted));
                let t = &mut tallies[mi * config.max_swaps + n - 1];
                t.trials += 1;
                t.correct += usize::from(correct);
                t.ties += usize::from(tie);
            }
        }
    }
    Ok(tallies)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), |a| format!("{a:.6}"))
}

/// TSV report: one row per (metric, n) plus an `all` summary row per metric carrying
/// the mean accuracy over `n`.
pub fn format_accuracy_tsv(curves: &[AccuracyCurve]) -> String {
    let mut out = String::from("metric\tn\tdocuments_evaluated\taccuracy\tties\n");
    for c in curves {
        for p in &c.points {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                c.metric,
                p.n,
                p.documents_evaluated,
                fmt_opt(p.accuracy()),
                p.ties
            );
        }
        let docs = c.points.first().map_or(0, |p| p.documents_evaluated);
        let _ = writeln!(
            out,
            "{}\tall\t{}\t{}\t{}",
            c.metric,
            docs,
            fmt_opt(c.overall()),
            c.ties()
        );
    }
    out
}
