//! Brute-force reference implementations of the coherence metrics, written directly
//! from the set definitions over plain entity lists. Nothing here touches the
//! library's bit sets or its scoring code.
#![allow(dead_code)]

use bipcoh::{BipartiteGraph, EntityGrid, Role};
use num_rational::Ratio;
use rand::Rng;

pub type Q = Ratio<i64>;

pub fn q(n: i64, d: i64) -> Q {
    Ratio::new(n, d)
}

/// Entity lists per sentence, in document order.
#[derive(Debug, Clone)]
pub struct Doc {
    pub entity_count: usize,
    pub sentences: Vec<Vec<usize>>,
}

impl Doc {
    pub fn new(entity_count: usize, mut sentences: Vec<Vec<usize>>) -> Self {
        for s in &mut sentences {
            s.sort_unstable();
            s.dedup();
        }
        Doc {
            entity_count,
            sentences,
        }
    }

    pub fn graph(&self) -> BipartiteGraph {
        BipartiteGraph::from_neighborhoods(self.entity_count, &self.sentences).unwrap()
    }

    /// Grid with every entity column used; unused entity ids are dropped.
    pub fn grid(&self, doc_id: &str) -> EntityGrid {
        let mut used: Vec<usize> = self.sentences.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        let names = used.iter().map(|k| format!("ent{k}")).collect();
        let rows = self
            .sentences
            .iter()
            .map(|s| {
                s.iter()
                    .map(|k| (used.binary_search(k).unwrap(), Role::Subject))
                    .collect()
            })
            .collect();
        EntityGrid::new(doc_id, names, rows).unwrap()
    }

    fn shared(&self, i: usize, j: usize) -> usize {
        self.sentences[i]
            .iter()
            .filter(|e| self.sentences[j].contains(e))
            .count()
    }

    fn union(&self, i: usize, j: usize) -> usize {
        self.sentences[i].len() + self.sentences[j].len() - self.shared(i, j)
    }

    fn dist(i: usize, j: usize) -> i64 {
        (i as i64 - j as i64).abs()
    }

    pub fn dcc_pair(&self, i: usize, j: usize) -> Q {
        q(1, Self::dist(i, j)) * q(self.shared(i, j) as i64, self.union(i, j) as i64)
    }

    pub fn acc_pair(&self, i: usize, j: usize) -> Q {
        q(1, Self::dist(i, j)) * q(self.shared(i, j) as i64, self.sentences[i].len() as i64)
    }

    fn partners(&self, i: usize) -> Vec<usize> {
        (0..self.sentences.len())
            .filter(|&j| j != i && self.shared(i, j) >= 1)
            .collect()
    }

    fn mean(values: &[Q]) -> Q {
        if values.is_empty() {
            return q(0, 1);
        }
        let mut s = q(0, 1);
        for v in values {
            s += v;
        }
        s / q(values.len() as i64, 1)
    }

    pub fn dcc_sentence(&self, i: usize) -> Q {
        let v: Vec<Q> = self
            .partners(i)
            .into_iter()
            .map(|j| self.dcc_pair(i, j))
            .collect();
        Self::mean(&v)
    }

    pub fn acc_sentence(&self, i: usize) -> Q {
        let v: Vec<Q> = self
            .partners(i)
            .into_iter()
            .map(|j| self.acc_pair(i, j))
            .collect();
        Self::mean(&v)
    }

    fn entity_pairs(&self, i: usize) -> Vec<(usize, usize)> {
        let s = &self.sentences[i];
        let mut out = Vec::new();
        for a in 0..s.len() {
            for b in a + 1..s.len() {
                out.push((s[a], s[b]));
            }
        }
        out
    }

    fn others_with(&self, i: usize, u: usize, w: usize) -> Vec<usize> {
        (0..self.sentences.len())
            .filter(|&v| v != i && self.sentences[v].contains(&u) && self.sentences[v].contains(&w))
            .collect()
    }

    pub fn redundancy(&self, i: usize) -> Q {
        let pairs = self.entity_pairs(i);
        if pairs.is_empty() {
            return q(0, 1);
        }
        let linked = pairs
            .iter()
            .filter(|&&(u, w)| !self.others_with(i, u, w).is_empty())
            .count();
        q(linked as i64, pairs.len() as i64)
    }

    pub fn lc_sentence(&self, i: usize) -> Q {
        let pairs = self.entity_pairs(i);
        if pairs.is_empty() {
            return q(0, 1);
        }
        let mut total = q(0, 1);
        for (u, w) in &pairs {
            if let Some(d) = self
                .others_with(i, *u, *w)
                .into_iter()
                .map(|v| Self::dist(i, v))
                .min()
            {
                total += q(1, d);
            }
        }
        total / q(pairs.len() as i64, 1)
    }

    pub fn out_degree(&self, i: usize) -> Q {
        let n = (i + 1..self.sentences.len())
            .filter(|&j| self.shared(i, j) >= 1)
            .count();
        q(n as i64, 1)
    }

    pub fn sentence_scores(&self, metric: bipcoh::Metric) -> Vec<Q> {
        use bipcoh::Metric::*;
        (0..self.sentences.len())
            .map(|i| match metric {
                BipDcc => self.dcc_sentence(i),
                BipAcc => self.acc_sentence(i),
                BipLc => self.lc_sentence(i),
                Redundancy => self.redundancy(i),
                OutDegree => self.out_degree(i),
            })
            .collect()
    }

    pub fn document(&self, metric: bipcoh::Metric) -> Q {
        Self::mean(&self.sentence_scores(metric))
    }
}

/// S1 {e1,e2}, S2 {e2..e5}, S3 {e3,e4,e5}, S4 {e3..e7}, S5 {e6,e7} (0-based ids).
pub fn example_doc() -> Doc {
    Doc::new(
        7,
        vec![
            vec![0, 1],
            vec![1, 2, 3, 4],
            vec![2, 3, 4],
            vec![2, 3, 4, 5, 6],
            vec![5, 6],
        ],
    )
}

pub fn random_doc<R: Rng>(
    rng: &mut R,
    max_sentences: usize,
    max_entities: usize,
    density: f64,
) -> Doc {
    let n = rng.gen_range(1..=max_sentences);
    let m = rng.gen_range(1..=max_entities);
    let sentences = (0..n)
        .map(|_| (0..m).filter(|_| rng.gen_bool(density)).collect())
        .collect();
    Doc::new(m, sentences)
}
