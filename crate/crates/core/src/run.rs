//! TREC run files and document score tables.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RunEntry {
    pub doc_id: String,
    pub rank: usize,
    pub score: f64,
}

/// Ranked lists per query. Within a query entries are ordered by rank and scores are
/// non-increasing.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunFile {
    tag: String,
    queries: BTreeMap<String, Vec<RunEntry>>,
}

impl RunFile {
    pub fn new(tag: impl Into<String>) -> Self {
        RunFile {
            tag: tag.into(),
            queries: BTreeMap::new(),
        }
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn set_tag(&mut self, tag: impl Into<String>) {
        self.tag = tag.into();
    }

    /// Queries in ascending id order.
    pub fn queries(&self) -> impl Iterator<Item = (&str, &[RunEntry])> {
        self.queries.iter().map(|(q, e)| (q.as_str(), e.as_slice()))
    }

    pub fn query(&self, qid: &str) -> Option<&[RunEntry]> {
        self.queries.get(qid).map(Vec::as_slice)
    }

    pub fn query_count(&self) -> usize {
        self.queries.len()
    }

    /// Adds a ranked list given as `(doc_id, score)` in rank order; ranks are
    /// assigned from 1. Replaces any previous list for `qid`.
    pub fn insert_ranking<I, S>(&mut self, qid: impl Into<String>, ranking: I) -> Result<()>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let entries: Vec<RunEntry> = ranking
            .into_iter()
            .enumerate()
            .map(|(r, (doc, score))| RunEntry {
                doc_id: doc.into(),
                rank: r + 1,
                score,
            })
            .collect();
        let qid = qid.into();
        validate_query(&qid, &entries)?;
        self.queries.insert(qid, entries);
        Ok(())
    }

    pub(crate) fn insert_unchecked(&mut self, qid: String, entries: Vec<RunEntry>) {
        self.queries.insert(qid, entries);
    }

    /// Whitespace-separated `qid Q0 docid rank score tag` lines, scores with six
    /// decimals.
    pub fn to_trec(&self) -> String {
        let mut out = String::new();
        for (qid, entries) in &self.queries {
            for e in entries {
                let _ = writeln!(
                    out,
                    "{qid} Q0 {} {} {:.6} {}",
                    e.doc_id, e.rank, e.score, self.tag
                );
            }
        }
        out
    }
}

fn validate_query(qid: &str, entries: &[RunEntry]) -> Result<()> {
    let mut seen = HashSet::with_capacity(entries.len());
    for w in entries.windows(2) {
        if w[1].rank <= w[0].rank {
            return Err(Error::contract(format!(
                "query {qid}: ranks not strictly increasing"
            )));
        }
        if w[1].score > w[0].score {
            return Err(Error::contract(format!(
                "query {qid}: score increases from rank {} to rank {}",
                w[0].rank, w[1].rank
            )));
        }
    }
    for e in entries {
        if !e.score.is_finite() {
            return Err(Error::contract(format!("query {qid}: non-finite score")));
        }
        if !seen.insert(e.doc_id.as_str()) {
            return Err(Error::contract(format!(
                "query {qid}: document {} listed twice",
                e.doc_id
            )));
        }
    }
    Ok(())
}

/// Parses a TREC run. Blank lines and `#` comment lines are ignored. Entries are
/// ordered by rank within each query; duplicate documents or ranks, and scores that
/// increase with rank, are errors.
pub fn parse_run(text: &str) -> Result<RunFile> {
    let mut tag: Option<String> = None;
    let mut grouped: BTreeMap<String, Vec<(usize, RunEntry)>> = BTreeMap::new();
    for (li, line) in text.lines().enumerate() {
        let line_no = li + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 6 {
            return Err(Error::parse(
                line_no,
                0,
                format!("expected 6 fields, found {}", fields.len()),
            ));
        }
        let rank = fields[3]
            .parse::<usize>()
            .map_err(|_| Error::parse(line_no, 4, format!("invalid rank {:?}", fields[3])))?;
        let score = fields[4]
            .parse::<f64>()
            .ok()
            .filter(|s| s.is_finite())
            .ok_or_else(|| Error::parse(line_no, 5, format!("invalid score {:?}", fields[4])))?;
        tag.get_or_insert_with(|| fields[5].to_string());
        grouped.entry(fields[0].to_string()).or_default().push((
            line_no,
            RunEntry {
                doc_id: fields[2].to_string(),
                rank,
                score,
            },
        ));
    }

    let mut run = RunFile::new(tag.unwrap_or_default());
    for (qid, mut rows) in grouped {
        rows.sort_by_key(|(_, e)| e.rank);
        let mut seen: HashSet<&str> = HashSet::with_capacity(rows.len());
        for (pos, (line_no, e)) in rows.iter().enumerate() {
            if !seen.insert(e.doc_id.as_str()) {
                return Err(Error::parse(
                    *line_no,
                    3,
                    format!("document {} listed twice for query {qid}", e.doc_id),
                ));
            }
            if pos > 0 {
                let prev = &rows[pos - 1].1;
                if prev.rank == e.rank {
                    return Err(Error::parse(
                        *line_no,
                        4,
                        format!("duplicate rank {} for query {qid}", e.rank),
                    ));
                }
                if e.score > prev.score {
                    return Err(Error::parse(
                        *line_no,
                        5,
                        format!("score increases with rank for query {qid}"),
                    ));
                }
            }
        }
        run.insert_unchecked(qid, rows.into_iter().map(|(_, e)| e).collect());
    }
    Ok(run)
}

/// Query-independent coherence score per document.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScoreTable {
    scores: HashMap<String, f64>,
}

impl ScoreTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, doc_id: impl Into<String>, score: f64) -> Result<()> {
        if !(score.is_finite() && score >= 0.0) {
            return Err(Error::contract(format!(
                "coherence score must be finite and non-negative, got {score}"
            )));
        }
        self.scores.insert(doc_id.into(), score);
        Ok(())
    }

    pub fn get(&self, doc_id: &str) -> Option<f64> {
        self.scores.get(doc_id).copied()
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

impl<S: Into<String>> FromIterator<(S, f64)> for ScoreTable {
    /// Panics on negative or non-finite scores.
    fn from_iter<I: IntoIterator<Item = (S, f64)>>(iter: I) -> Self {
        let mut t = ScoreTable::new();
        for (d, s) in iter {
            t.insert(d, s).expect("valid coherence score");
        }
        t
    }
}

/// Parses `docid<TAB>score` lines. Blank and `#` lines are skipped.
pub fn parse_score_table(text: &str) -> Result<ScoreTable> {
    let mut table = ScoreTable::new();
    for (li, line) in text.lines().enumerate() {
        let line_no = li + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::parse(line_no, 0, "expected 'docid<TAB>score'"));
        }
        let score: f64 = fields[1]
            .parse()
            .map_err(|_| Error::parse(line_no, 2, format!("invalid score {:?}", fields[1])))?;
        if table.get(fields[0]).is_some() {
            return Err(Error::parse(
                line_no,
                1,
                format!("duplicate document {}", fields[0]),
            ));
        }
        table
            .insert(fields[0], score)
            .map_err(|e| Error::parse(line_no, 2, e.to_string()))?;
    }
    Ok(table)
}
