use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use bipcoh::{
    filter_roles, looks_like_grid_tsv, parse_annotated_text, parse_grid_tsv, EntityGrid, RoleSet,
};
use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Auto,
    Grid,
    Annotated,
}

/// Documents keyed by doc id, plus one diagnostic per file that could not be used.
pub struct Corpus {
    pub docs: BTreeMap<String, EntityGrid>,
    pub diagnostics: Vec<String>,
}

/// Expands directories (recursively, sorted, hidden entries skipped) into files.
fn collect_files(paths: &[PathBuf], out: &mut Vec<PathBuf>, diagnostics: &mut Vec<String>) {
    for p in paths {
        if p.is_dir() {
            let mut entries: Vec<PathBuf> = match fs::read_dir(p) {
                Ok(rd) => rd
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|e| {
                        !e.file_name()
                            .is_some_and(|n| n.to_string_lossy().starts_with('.'))
                    })
                    .collect(),
                Err(e) => {
                    diagnostics.push(format!("{}: {e}", p.display()));
                    continue;
                }
            };
            entries.sort();
            collect_files(&entries, out, diagnostics);
        } else {
            out.push(p.clone());
        }
    }
}

fn load_one(path: &Path, format: Format) -> Result<EntityGrid> {
    let text = fs::read_to_string(path).with_context(|| "cannot read file".to_string())?;
    let grid_tsv = match format {
        Format::Auto => looks_like_grid_tsv(&text),
        Format::Grid => true,
        Format::Annotated => false,
    };
    if grid_tsv {
        Ok(parse_grid_tsv(&text)?)
    } else {
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        Ok(parse_annotated_text(&stem, &text)?)
    }
}

pub fn load_corpus(paths: &[PathBuf], format: Format, roles: RoleSet) -> Corpus {
    let mut files = Vec::new();
    let mut diagnostics = Vec::new();
    collect_files(paths, &mut files, &mut diagnostics);
    let mut docs = BTreeMap::new();
    for f in files {
        match load_one(&f, format) {
            Ok(grid) => {
                let grid = filter_roles(&grid, roles);
                if docs.contains_key(grid.doc_id()) {
                    diagnostics.push(format!(
                        "{}: duplicate doc id {:?}",
                        f.display(),
                        grid.doc_id()
                    ));
                } else {
                    docs.insert(grid.doc_id().to_string(), grid);
                }
            }
            Err(e) => diagnostics.push(format!("{}: {e:#}", f.display())),
        }
    }
    Corpus { docs, diagnostics }
}

pub fn read(path: &Path, what: &str) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {what} file {}", path.display()))
}

pub fn parse_with<T>(
    path: &Path,
    what: &str,
    parse: impl Fn(&str) -> bipcoh::Result<T>,
) -> Result<T> {
    let text = read(path, what)?;
    parse(&text).with_context(|| format!("{what} file {}", path.display()))
}

pub fn require_docs(corpus: &Corpus) -> Result<()> {
    if corpus.docs.is_empty() {
        bail!("no documents found");
    }
    Ok(())
}
