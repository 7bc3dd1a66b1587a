mod common;

use bipcoh::ir_eval::{ndcg_at, precision_at};
use bipcoh::metrics::bip_dcc_pair;
use bipcoh::{
    apply_order, filter_roles, parse_grid_tsv, rerank, serialize_grid_tsv, EntityGrid, Metric,
    Permutation, Role, RoleSet, RunFile, ScoreTable, TransformConfig,
};
use common::Doc;
use proptest::prelude::*;

fn docs(max_sentences: usize, max_entities: usize) -> impl Strategy<Value = Doc> {
    (1..=max_sentences, 1..=max_entities).prop_flat_map(|(n, m)| {
        prop::collection::vec(prop::collection::vec(0..m, 0..=m), n)
            .prop_map(move |s| Doc::new(m, s))
    })
}

fn role() -> impl Strategy<Value = Role> {
    prop::sample::select(Role::ALL.to_vec())
}

/// Grids whose every entity column is used at least once.
fn grids() -> impl Strategy<Value = EntityGrid> {
    (1usize..8, 1usize..6).prop_flat_map(|(n, m)| {
        prop::collection::vec(prop::collection::vec(prop::option::of(role()), m), n).prop_map(
            move |cells| {
                let mut rows: Vec<Vec<(usize, Role)>> = cells
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter_map(|(k, c)| c.map(|c| (k, c)))
                            .collect()
                    })
                    .collect();
                for k in 0..m {
                    if !rows.iter().any(|r| r.iter().any(|&(e, _)| e == k)) {
                        rows[k % n].push((k, Role::Other));
                        rows[k % n].sort_unstable();
                    }
                }
                let names = (0..m).map(|k| format!("entity {k}")).collect();
                EntityGrid::new("g", names, rows).unwrap()
            },
        )
    })
}

fn permutations(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #[test]
    fn float_scores_track_exact_oracle(doc in docs(7, 7)) {
        let g = doc.graph();
        for metric in Metric::ALL {
            let got: Vec<f64> = metric.sentence_scores(&g);
            for (a, b) in got.iter().zip(doc.sentence_scores(metric)) {
                let b = *b.numer() as f64 / *b.denom() as f64;
                prop_assert!((a - b).abs() < 1e-12, "{}: {a} vs {b}", metric.name());
            }
        }
    }

    #[test]
    fn spreading_sentences_apart_never_raises_dcc(doc in docs(6, 5), gap in 1usize..4) {
        let g = doc.graph();
        let n = doc.sentences.len();
        for i in 0..n {
            for j in i + 1..n {
                if g.top_set(i).intersection_count(g.top_set(j)) == 0 {
                    continue;
                }
                let mut spread = doc.sentences.clone();
                for _ in 0..gap {
                    spread.insert(j, Vec::new());
                }
                let sg = Doc::new(doc.entity_count, spread).graph();
                let near: f64 = bip_dcc_pair(&g, i, j).unwrap();
                let far: f64 = bip_dcc_pair(&sg, i, j + gap).unwrap();
                prop_assert!(far < near);
            }
        }
    }

    #[test]
    fn grid_tsv_round_trips(grid in grids()) {
        prop_assert_eq!(parse_grid_tsv(&serialize_grid_tsv(&grid)).unwrap(), grid);
    }

    #[test]
    fn role_filter_is_idempotent(grid in grids(), s in any::<bool>(), o in any::<bool>(), x in any::<bool>()) {
        let keep: Vec<Role> = [(s, Role::Subject), (o, Role::Object), (x, Role::Other)]
            .into_iter()
            .filter_map(|(on, r)| on.then_some(r))
            .collect();
        prop_assume!(!keep.is_empty());
        let roles = RoleSet::new(&keep).unwrap();
        let once = filter_roles(&grid, roles);
        prop_assert_eq!(filter_roles(&once, roles), once.clone());
        prop_assert!(once.rows().iter().flatten().all(|&(_, r)| roles.contains(r)));
        prop_assert_eq!(once.sentence_count(), grid.sentence_count());
    }

    #[test]
    fn reordering_then_inverting_restores_grid(
        (grid, p) in grids().prop_flat_map(|g| { let n = g.sentence_count(); (Just(g), permutations(n)) })
    ) {
        let moved = apply_order(&grid, &p).unwrap();
        prop_assert_eq!(apply_order(&moved, &p.inverse()).unwrap(), grid.clone());
        prop_assert_eq!(grid.cell_count(), moved.cell_count());
    }

    #[test]
    fn precision_ignores_order_within_cutoff(
        (grades, p) in prop::collection::vec(0u32..3, 10..30)
            .prop_flat_map(|g| (Just(g), permutations(10)))
    ) {
        let mut shuffled = grades.clone();
        for (dst, &src) in p.as_slice().iter().enumerate() {
            shuffled[dst] = grades[src];
        }
        prop_assert_eq!(precision_at::<f64>(&grades, 10), precision_at::<f64>(&shuffled, 10));
    }

    #[test]
    fn ndcg_is_at_most_one(judged in prop::collection::vec(0u32..4, 1..25), cutoff in 1usize..30) {
        let mut ranked = judged.clone();
        ranked.reverse();
        if let Some(v) = ndcg_at::<f64>(&ranked, &judged, cutoff) {
            prop_assert!((0.0..=1.0 + 1e-12).contains(&v));
        }
    }

    #[test]
    fn rerank_keeps_documents_and_order_of_scores(
        base in prop::collection::vec(-10.0f64..10.0, 1..30),
        coh in prop::collection::vec(0.0f64..1.0, 30),
        w in 0.0f64..2.0,
        k in 0.1f64..2.0,
        depth in 1usize..40,
    ) {
        let mut base = base;
        base.sort_by(|a, b| b.total_cmp(a));
        let mut run = RunFile::new("t");
        run.insert_ranking("q", base.iter().enumerate().map(|(d, &s)| (format!("d{d}"), s))).unwrap();
        let table: ScoreTable = coh.iter().enumerate().map(|(d, &c)| (format!("d{d}"), c)).collect();
        let out = rerank(&run, &table, &TransformConfig::satu(w, k), depth).unwrap().run;
        let entries = out.query("q").unwrap();
        let mut ids: Vec<&str> = entries.iter().map(|e| e.doc_id.as_str()).collect();
        ids.sort_unstable();
        let mut want: Vec<String> = (0..base.len()).map(|d| format!("d{d}")).collect();
        want.sort_unstable();
        prop_assert_eq!(ids, want.iter().map(String::as_str).collect::<Vec<_>>());
        prop_assert!(entries.windows(2).all(|w| w[0].score >= w[1].score));
        prop_assert!(entries.iter().enumerate().all(|(r, e)| e.rank == r + 1));
    }
}
