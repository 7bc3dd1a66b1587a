//! `bipcoh`: score entity grids, evaluate metrics by sentence swapping, rerank runs
//! with coherence priors, and evaluate runs.

mod input;

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use bipcoh::ir_eval::{difficulty_quantiles, evaluate, format_results_tsv, summarize_quantiles};
use bipcoh::metrics::score_grid;
use bipcoh::permutation::{evaluate_metrics, format_accuracy_tsv, DEFAULT_MAX_SWAPS, DEFAULT_SEED};
use bipcoh::rerank::{DEFAULT_DEPTH, DEFAULT_FOLDS};
use bipcoh::{
    cross_validate, parse_qrels, parse_run, parse_score_table, rerank, CvConfig, EntityGrid,
    Measure, Metric, PermutationConfig, Report, RoleSet, TransformConfig, TransformKind,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use input::{load_corpus, parse_with, require_docs, Format};
use rayon::prelude::*;

#[derive(Parser)]
#[command(
    name = "bipcoh",
    version,
    about = "Bipartite entity-graph coherence toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score documents with one or more coherence metrics.
    Score(ScoreArgs),
    /// Sentence-swap discrimination accuracy per metric.
    PermuteEval(PermuteArgs),
    /// Rerank a TREC run with a coherence score table.
    Rerank(RerankArgs),
    /// Cross-validated grid search of the rerank transform.
    Cv(CvArgs),
    /// Evaluate a TREC run against qrels.
    IrEval(IrEvalArgs),
}

#[derive(Args)]
struct DocInput {
    /// Input files or directories (one document per file).
    #[arg(short, long = "input", required = true, num_args = 1..)]
    input: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Auto)]
    format: Format,
    /// Roles kept before building graphs, e.g. `s,o` or `s,o,x`.
    #[arg(long, default_value = "s,o")]
    roles: RoleSet,
    /// Worker threads (defaults to all cores). Output does not depend on it.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct ScoreArgs {
    #[command(flatten)]
    docs: DocInput,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Metric names, comma separated, or `all`.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    metric: Vec<String>,
    /// Append a comma-separated sentence_scores column.
    #[arg(long)]
    per_sentence: bool,
    /// Write a `docid<TAB>score` table for `rerank` (needs exactly one metric).
    #[arg(long, conflicts_with = "per_sentence")]
    table: bool,
}

#[derive(Args)]
struct PermuteArgs {
    #[command(flatten)]
    docs: DocInput,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "all")]
    metric: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest number of swapped sentence pairs.
    #[arg(long, default_value_t = DEFAULT_MAX_SWAPS)]
    n_max: usize,
    /// Swap trials per document and n.
    #[arg(long, default_value_t = 1)]
    trials: usize,
}

#[derive(Args)]
struct TransformArgs {
    #[arg(long, value_enum)]
    transform: Option<KindArg>,
    #[arg(long)]
    w: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Log,
    Satu,
    Sigmoid,
}

impl From<KindArg> for TransformKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Log => TransformKind::Log,
            KindArg::Satu => TransformKind::Satu,
            KindArg::Sigmoid => TransformKind::Sigmoid,
        }
    }
}

#[derive(Args)]
struct RerankArgs {
    /// TREC run to rerank.
    #[arg(short, long)]
    input: PathBuf,
    /// `docid<TAB>score` coherence table.
    #[arg(long)]
    scores: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    transform: TransformArgs,
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    depth: usize,
}

#[derive(Args)]
struct CvArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long)]
    scores: PathBuf,
    #[arg(long)]
    qrels: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Transform to tune; all three when omitted.
    #[arg(long, value_enum)]
    transform: Option<KindArg>,
    #[arg(long, default_value = "mrr")]
    measure: Measure,
    #[arg(long, default_value_t = DEFAULT_FOLDS)]
    folds: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    depth: usize,
}

#[derive(Args)]
struct IrEvalArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long)]
    qrels: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Measures, comma separated (default: mrr,p@10,err@20,ndcg@20,map@1000).
    #[arg(long, value_delimiter = ',')]
    measure: Vec<Measure>,
    /// Baseline run; adds a difficulty quantile table of improvements over it.
    #[arg(long)]
    baseline: Option<PathBuf>,
}

/// `#` lines recording everything needed to reproduce an output.
fn config_header(command: &str, fields: &[(&str, String)]) -> String {
    let mut out = format!("# bipcoh {} {command}\n", env!("CARGO_PKG_VERSION"));
    for (k, v) in fields {
        let _ = writeln!(out, "# {k}: {v}");
    }
    out
}

fn paths(p: &[PathBuf]) -> String {
    p.iter()
        .map(|p| p.display().to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(out.flush()?)
        }
    }
}

fn resolve_metrics(names: &[String]) -> Result<Vec<Metric>> {
    let mut out = Vec::new();
    for n in names {
        if n.eq_ignore_ascii_case("all") {
            out.extend(Metric::ALL);
        } else {
            out.push(n.parse::<Metric>()?);
        }
    }
    let mut uniq = Vec::new();
    for m in out {
        if !uniq.contains(&m) {
            uniq.push(m);
        }
    }
    if uniq.is_empty() {
        bail!("no metric selected");
    }
    Ok(uniq)
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    if jobs == Some(0) {
        bail!("--jobs must be at least 1");
    }
    Ok(rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()?)
}

fn doc_fields(d: &DocInput, metrics: &[Metric]) -> Vec<(&'static str, String)> {
    let names: Vec<&str> = metrics.iter().map(|m| m.name()).collect();
    vec![
        ("input", paths(&d.input)),
        ("format", format!("{:?}", d.format).to_lowercase()),
        ("roles", d.roles.to_string()),
        ("metric", names.join(",")),
    ]
}

/// Returns whether any input file had to be skipped.
fn cmd_score(args: &ScoreArgs) -> Result<bool> {
    let metrics = resolve_metrics(&args.metric)?;
    if args.table && metrics.len() != 1 {
        bail!("--table needs exactly one metric");
    }
    let corpus = load_corpus(&args.docs.input, args.docs.format, args.docs.roles);
    report_diagnostics(&corpus.diagnostics);
    require_docs(&corpus)?;
    let reports: Vec<Report> = pool(args.docs.jobs)?.install(|| {
        corpus
            .docs
            .par_iter()
            .map(|(_, g)| score_grid(g, &metrics))
            .collect()
    });

    let mut fields = doc_fields(&args.docs, &metrics);
    fields.push(("per_sentence", args.per_sentence.to_string()));
    fields.push(("table", args.table.to_string()));
    let mut out = config_header("score", &fields);
    if !args.table {
        out.push_str("doc_id\tmetric\tdocument_score");
        if args.per_sentence {
            out.push_str("\tsentence_scores");
        }
        out.push('\n');
    }
    for r in &reports {
        for (metric, scores) in &r.scores {
            if args.table {
                let _ = writeln!(out, "{}\t{:.6}", r.doc_id, scores.document_score);
                continue;
            }
            let _ = write!(
                out,
                "{}\t{}\t{:.6}",
                r.doc_id,
                metric.name(),
                scores.document_score
            );
            if args.per_sentence {
                let s: Vec<String> = scores
                    .sentence_scores
                    .iter()
                    .map(|v| format!("{v:.6}"))
                    .collect();
                let _ = write!(out, "\t{}", s.join(","));
            }
            out.push('\n');
        }
    }
    emit(&args.output, &out)?;
    Ok(!corpus.diagnostics.is_empty())
}

fn cmd_permute_eval(args: &PermuteArgs) -> Result<bool> {
    let metrics = resolve_metrics(&args.metric)?;
    let corpus = load_corpus(&args.docs.input, args.docs.format, args.docs.roles);
    report_diagnostics(&corpus.diagnostics);
    require_docs(&corpus)?;
    let config = PermutationConfig {
        max_swaps: args.n_max,
        trials_per_n: args.trials,
        seed: args.seed,
    };
    let grids: Vec<EntityGrid> = corpus.docs.into_values().collect();
    let curves = pool(args.docs.jobs)?.install(|| evaluate_metrics(&grids, &metrics, &config))?;

    let mut fields = doc_fields(&args.docs, &metrics);
    fields.push(("seed", args.seed.to_string()));
    fields.push(("n_max", args.n_max.to_string()));
    fields.push(("trials", args.trials.to_string()));
    fields.push(("documents", grids.len().to_string()));
    let mut out = config_header("permute-eval", &fields);
    out.push_str(&format_accuracy_tsv(&curves));
    emit(&args.output, &out)?;
    Ok(!corpus.diagnostics.is_empty())
}

fn single_transform(t: &TransformArgs) -> Result<TransformConfig<f64>> {
    let kind = t.transform.context("--transform is required")?;
    let w = t.w.context("--w is required")?;
    let cfg = match TransformKind::from(kind) {
        TransformKind::Log => TransformConfig::log(w),
        TransformKind::Satu => TransformConfig::satu(w, t.k),
        TransformKind::Sigmoid => TransformConfig::sigmoid(w, t.k, t.alpha),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_rerank(args: &RerankArgs) -> Result<bool> {
    let cfg = single_transform(&args.transform)?;
    let run = parse_with(&args.input, "run", parse_run)?;
    let scores = parse_with(&args.scores, "score", parse_score_table)?;
    let out = rerank(&run, &scores, &cfg, args.depth)?;
    // The run stays plain TREC so other tools can read it; the config goes to stderr.
    eprint!(
        "{}",
        config_header(
            "rerank",
            &[
                ("input", args.input.display().to_string()),
                ("scores", args.scores.display().to_string()),
                ("transform", cfg.to_string()),
                ("depth", args.depth.to_string()),
            ],
        )
    );
    if out.missing_scores > 0 {
        eprintln!(
            "warning: {} run entries had no coherence score (used 0)",
            out.missing_scores
        );
    }
    emit(&args.output, &out.run.to_trec())?;
    Ok(false)
}

fn cmd_cv(args: &CvArgs) -> Result<bool> {
    let run = parse_with(&args.input, "run", parse_run)?;
    let scores = parse_with(&args.scores, "score", parse_score_table)?;
    let qrels = parse_with(&args.qrels, "qrels", parse_qrels)?;
    let kinds: Vec<TransformKind> = match args.transform {
        Some(k) => vec![k.into()],
        None => TransformKind::ALL.to_vec(),
    };
    let config = CvConfig {
        folds: args.folds,
        seed: args.seed,
        depth: args.depth,
        ..CvConfig::default()
    };
    let reports = kinds
        .iter()
        .map(|&kind| cross_validate(&run, &scores, &qrels, args.measure, kind, &config))
        .collect::<bipcoh::Result<Vec<_>>>()?;

    let kind_names: Vec<String> = kinds.iter().map(ToString::to_string).collect();
    let mut out = config_header(
        "cv",
        &[
            ("input", args.input.display().to_string()),
            ("scores", args.scores.display().to_string()),
            ("qrels", args.qrels.display().to_string()),
            ("transform", kind_names.join(",")),
            ("measure", args.measure.to_string()),
            ("folds", args.folds.to_string()),
            ("seed", args.seed.to_string()),
            ("depth", args.depth.to_string()),
        ],
    );
    out.push_str("transform\tfold\tqueries\tw\tk\talpha\ttrain\ttest\tbaseline\n");
    for r in &reports {
        for (f, fold) in r.folds.iter().enumerate() {
            let b = &fold.best;
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{:.4}\t{:.4}\t{:.4}",
                r.kind,
                f + 1,
                fold.test_queries.len(),
                b.w,
                b.k,
                b.alpha,
                fold.train_score,
                fold.test_score,
                fold.baseline_test_score
            );
        }
        let queries: usize = r.folds.iter().map(|f| f.test_queries.len()).sum();
        let _ = writeln!(
            out,
            "{}\tall\t{queries}\t-\t-\t-\t-\t{:.4}\t{:.4}",
            r.kind, r.mean_test_score, r.mean_baseline_score
        );
    }
    if let Some(missing) = reports.first().map(|r| r.missing_scores).filter(|&m| m > 0) {
        eprintln!("warning: {missing} run entries had no coherence score (used 0)");
    }
    emit(&args.output, &out)?;
    Ok(false)
}

fn cmd_ir_eval(args: &IrEvalArgs) -> Result<bool> {
    let run = parse_with(&args.input, "run", parse_run)?;
    let qrels = parse_with(&args.qrels, "qrels", parse_qrels)?;
    let measures: Vec<Measure> = if args.measure.is_empty() {
        Measure::STANDARD.to_vec()
    } else {
        args.measure.clone()
    };
    let results: Vec<_> = measures
        .iter()
        .map(|&m| evaluate(&run, &qrels, m))
        .collect();

    let names: Vec<String> = measures.iter().map(ToString::to_string).collect();
    let mut fields = vec![
        ("input", args.input.display().to_string()),
        ("qrels", args.qrels.display().to_string()),
        ("measure", names.join(",")),
    ];
    if let Some(b) = &args.baseline {
        fields.push(("baseline", b.display().to_string()));
    }
    let mut out = config_header("ir-eval", &fields);
    if let Some(r) = results.first().filter(|r| !r.excluded.is_empty()) {
        let _ = writeln!(
            out,
            "# excluded (no relevant documents): {}",
            r.excluded.join(",")
        );
    }
    out.push_str(&format_results_tsv(&results));

    if let Some(path) = &args.baseline {
        let base = parse_with(path, "baseline run", parse_run)?;
        let tables = results
            .iter()
            .map(|r| {
                difficulty_quantiles(&evaluate(&base, &qrels, r.measure).per_query, &r.per_query)
            })
            .collect::<bipcoh::Result<Vec<_>>>()?;
        let summary = summarize_quantiles(&tables);
        out.push('\n');
        out.push_str("quantile");
        for n in &names {
            let _ = write!(out, "\t{n}");
        }
        out.push_str("\tmean_of_measures\tpooled\n");
        for q in 0..4 {
            let _ = write!(out, "Q{}", q + 1);
            for t in &tables {
                let _ = write!(out, "\t{:.4}", t.means()[q]);
            }
            let _ = writeln!(
                out,
                "\t{:.4}\t{:.4}",
                summary.per_measure_mean[q], summary.pooled[q]
            );
        }
        let _ = writeln!(
            out,
            "# zero-baseline queries excluded: {} (summed over measures)",
            summary.zero_baseline_total
        );
    }
    emit(&args.output, &out)?;
    Ok(false)
}

fn report_diagnostics(diagnostics: &[String]) {
    for d in diagnostics {
        eprintln!("error: {d}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Score(a) => cmd_score(a),
        Command::PermuteEval(a) => cmd_permute_eval(a),
        Command::Rerank(a) => cmd_rerank(a),
        Command::Cv(a) => cmd_cv(a),
        Command::IrEval(a) => cmd_ir_eval(a),
    };
    match outcome {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
