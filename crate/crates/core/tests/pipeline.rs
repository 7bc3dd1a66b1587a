//! Annotated text through scoring, permutation evaluation, reranking and evaluation.

use bipcoh::ir_eval::evaluate;
use bipcoh::permutation::{evaluate_metrics, format_accuracy_tsv};
use bipcoh::{
    filter_roles, parse_annotated_text, parse_qrels, parse_run, rerank, Metric, PermutationConfig,
    Report, RoleSet, ScoreTable, TransformConfig,
};

const COHERENT: &str = "\
[The court]{s} heard [the merger case]{o} on Monday.
[The court]{s} questioned [the merger case]{o} at length.
[The merger case]{s} drew [objections]{o} from [rivals]{x}.
[Objections]{s} slowed [the merger case]{o}.
";

const SCATTERED: &str = "\
[A storm]{s} hit [the coast]{o}.
[Prices]{s} rose in [markets]{x}.
[The team]{s} won [the final]{o}.
[A storm]{s} hit [the coast]{o} again.
";

fn grid(doc_id: &str, text: &str) -> bipcoh::EntityGrid {
    filter_roles(
        &parse_annotated_text(doc_id, text).unwrap(),
        RoleSet::salient(),
    )
}

#[test]
fn coherent_text_scores_higher_and_wins_after_rerank() {
    let docs = [grid("coherent", COHERENT), grid("scattered", SCATTERED)];
    let reports: Vec<Report> = docs
        .iter()
        .map(|g| bipcoh::metrics::score_grid(g, &Metric::ALL))
        .collect();
    let lc = |r: &Report| r.get(Metric::BipLc).unwrap().document_score;
    assert!(lc(&reports[0]) > lc(&reports[1]));

    let table: ScoreTable = reports.iter().map(|r| (r.doc_id.clone(), lc(r))).collect();
    let run = parse_run("q1 Q0 scattered 1 2.00 lm\nq1 Q0 coherent 2 1.99 lm\n").unwrap();
    let qrels = parse_qrels("q1 0 coherent 1\nq1 0 scattered 0\n").unwrap();
    let before = evaluate(&run, &qrels, "mrr".parse().unwrap()).mean;
    let out = rerank(&run, &table, &TransformConfig::satu(1.0, 0.5), 1000).unwrap();
    assert_eq!(out.missing_scores, 0);
    let after = evaluate(&out.run, &qrels, "mrr".parse().unwrap()).mean;
    assert_eq!((before, after), (0.5, 1.0));
}

#[test]
fn permutation_report_over_small_corpus() {
    let corpus = vec![grid("coherent", COHERENT), grid("scattered", SCATTERED)];
    let cfg = PermutationConfig {
        max_swaps: 3,
        trials_per_n: 4,
        ..PermutationConfig::default()
    };
    let curves = evaluate_metrics(&corpus, &Metric::ALL, &cfg).unwrap();
    assert_eq!(curves.len(), 5);
    for c in &curves {
        assert_eq!(c.points[0].documents_evaluated, 2);
        assert_eq!(c.points[0].trials, 8);
        assert_eq!(c.points[2].documents_evaluated, 0);
        assert!(c.points[2].accuracy().is_none());
    }
    let tsv = format_accuracy_tsv(&curves);
    assert!(tsv.contains("bipLC\t3\t0\tNA\t0\n"), "{tsv}");
    assert_eq!(
        tsv,
        format_accuracy_tsv(&evaluate_metrics(&corpus, &Metric::ALL, &cfg).unwrap())
    );
}
