//! Entity grids: sentences × discourse entities, each cell holding the grammatical
//! role an entity plays in a sentence.
//!
//! Sentence and entity indices are 0-based throughout the API. The Grid-TSV format
//! prints 1-based sentence numbers.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Grammatical role of an entity mention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Subject,
    Object,
    Other,
}

impl Role {
    pub const ALL: [Role; 3] = [Role::Subject, Role::Object, Role::Other];

    pub fn symbol(self) -> char {
        match self {
            Role::Subject => 's',
            Role::Object => 'o',
            Role::Other => 'x',
        }
    }

    pub fn from_symbol(c: char) -> Option<Role> {
        match c {
            's' => Some(Role::Subject),
            'o' => Some(Role::Object),
            'x' => Some(Role::Other),
            _ => None,
        }
    }

    /// Higher is more salient: subject > object > other.
    pub fn salience(self) -> u8 {
        match self {
            Role::Subject => 2,
            Role::Object => 1,
            Role::Other => 0,
        }
    }

    fn index(self) -> usize {
        match self {
            Role::Subject => 0,
            Role::Object => 1,
            Role::Other => 2,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A non-empty set of roles, used to select which grid cells count as entities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RoleSet([bool; 3]);

impl RoleSet {
    pub fn new(roles: &[Role]) -> Result<Self> {
        if roles.is_empty() {
            return Err(Error::Config("role set must not be empty".into()));
        }
        let mut flags = [false; 3];
        for r in roles {
            flags[r.index()] = true;
        }
        Ok(RoleSet(flags))
    }

    pub fn all() -> Self {
        RoleSet([true; 3])
    }

    /// Subjects and objects only.
    pub fn salient() -> Self {
        RoleSet([true, true, false])
    }

    pub fn contains(&self, role: Role) -> bool {
        self.0[role.index()]
    }

    pub fn roles(&self) -> impl Iterator<Item = Role> + '_ {
        Role::ALL.into_iter().filter(|r| self.contains(*r))
    }
}

impl Default for RoleSet {
    fn default() -> Self {
        RoleSet::salient()
    }
}

impl FromStr for RoleSet {
    type Err = Error;

    /// Parses comma-separated role letters, e.g. `s,o` or `s,o,x`.
    fn from_str(s: &str) -> Result<Self> {
        let mut roles = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let mut chars = part.chars();
            match (chars.next().and_then(Role::from_symbol), chars.next()) {
                (Some(r), None) => roles.push(r),
                _ => return Err(Error::Config(format!("unknown role '{part}'"))),
            }
        }
        RoleSet::new(&roles)
    }
}

impl fmt::Display for RoleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<String> = self.roles().map(|r| r.symbol().to_string()).collect();
        write!(f, "{}", letters.join(","))
    }
}

/// Canonical entity name: Unicode lowercase with whitespace runs collapsed to a single
/// space and trimmed.
pub fn canonicalize_entity(surface: &str) -> String {
    surface
        .split_whitespace()
        .map(str::to_lowercase)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Sentences × entities with a grammatical role in each non-empty cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntityGrid {
    doc_id: String,
    entities: Vec<String>,
    // per sentence, (entity index, role) sorted by entity index
    rows: Vec<Vec<(usize, Role)>>,
}

impl EntityGrid {
    /// Builds a grid, checking every structural invariant: at least one sentence,
    /// unique non-empty canonical entity names, in-range cells, at most one cell per
    /// (sentence, entity), and no entity without cells.
    pub fn new(
        doc_id: impl Into<String>,
        entities: Vec<String>,
        rows: Vec<Vec<(usize, Role)>>,
    ) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::contract("a grid needs at least one sentence"));
        }
        let mut seen = HashMap::with_capacity(entities.len());
        for (k, name) in entities.iter().enumerate() {
            if name.is_empty() || canonicalize_entity(name) != *name {
                return Err(Error::contract(format!(
                    "entity name {name:?} is not in canonical form"
                )));
            }
            if seen.insert(name.as_str(), k).is_some() {
                return Err(Error::contract(format!("duplicate entity {name:?}")));
            }
        }
        let mut used = vec![false; entities.len()];
        let mut rows = rows;
        for (i, row) in rows.iter_mut().enumerate() {
            row.sort_by_key(|&(k, _)| k);
            for w in row.windows(2) {
                if w[0].0 == w[1].0 {
                    return Err(Error::contract(format!(
                        "sentence {i} has two cells for entity {}",
                        w[0].0
                    )));
                }
            }
            for &(k, _) in row.iter() {
                if k >= entities.len() {
                    return Err(Error::contract(format!(
                        "sentence {i} references entity {k} of {}",
                        entities.len()
                    )));
                }
                used[k] = true;
            }
        }
        if let Some(k) = used.iter().position(|u| !u) {
            return Err(Error::contract(format!(
                "entity {:?} appears in no sentence",
                entities[k]
            )));
        }
        Ok(EntityGrid {
            doc_id: doc_id.into(),
            entities,
            rows,
        })
    }

    pub fn doc_id(&self) -> &str {
        &self.doc_id
    }

    pub fn sentence_count(&self) -> usize {
        self.rows.len()
    }

    pub fn entity_count(&self) -> usize {
        self.entities.len()
    }

    pub fn entities(&self) -> &[String] {
        &self.entities
    }

    pub fn entity_index(&self, name: &str) -> Option<usize> {
        let canonical = canonicalize_entity(name);
        self.entities.iter().position(|e| *e == canonical)
    }

    /// Non-empty cells of sentence `i`, ordered by entity index.
    pub fn row(&self, i: usize) -> &[(usize, Role)] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<(usize, Role)>] {
        &self.rows
    }

    pub fn cell(&self, sentence: usize, entity: usize) -> Option<Role> {
        let row = self.rows.get(sentence)?;
        row.binary_search_by_key(&entity, |&(k, _)| k)
            .ok()
            .map(|p| row[p].1)
    }

    pub fn cell_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn with_doc_id(mut self, doc_id: impl Into<String>) -> Self {
        self.doc_id = doc_id.into();
        self
    }
}

/// Drops cells whose role is not in `keep`, then removes entity columns left empty.
/// Sentence count is unchanged.
pub fn filter_roles(grid: &EntityGrid, keep: RoleSet) -> EntityGrid {
    let mut remap = vec![None; grid.entity_count()];
    let mut entities = Vec::new();
    let mut rows = Vec::with_capacity(grid.sentence_count());
    for row in &grid.rows {
        let mut kept = Vec::with_capacity(row.len());
        for &(k, role) in row {
            if keep.contains(role) {
                kept.push((k, role));
                remap[k] = Some(0);
            }
        }
        rows.push(kept);
    }
    // preserve original column order
    for (k, slot) in remap.iter_mut().enumerate() {
        if slot.is_some() {
            *slot = Some(entities.len());
            entities.push(grid.entities[k].clone());
        }
    }
    for row in &mut rows {
        for cell in row.iter_mut() {
            cell.0 = remap[cell.0].expect("kept entity has a column");
        }
    }
    EntityGrid {
        doc_id: grid.doc_id.clone(),
        entities,
        rows,
    }
}

/// A bijection on `0..n`, used to reorder sentences.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; order.len()];
        for &p in &order {
            if p >= order.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::contract(format!(
                    "order {order:?} is not a permutation of 0..{}",
                    order.len()
                )));
            }
        }
        Ok(Permutation(order))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn reversed(n: usize) -> Self {
        Permutation((0..n).rev().collect())
    }

    /// Identity with each listed pair of positions exchanged. Pairs must be disjoint.
    pub fn from_swaps(n: usize, swaps: &[(usize, usize)]) -> Result<Self> {
        let mut order: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for &(a, b) in swaps {
            if a >= n || b >= n || a == b {
                return Err(Error::contract(format!(
                    "invalid swap ({a}, {b}) for {n} sentences"
                )));
            }
            if std::mem::replace(&mut touched[a], true) || std::mem::replace(&mut touched[b], true)
            {
                return Err(Error::contract("swap pairs must be disjoint"));
            }
            order.swap(a, b);
        }
        Ok(Permutation(order))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Permutation(inv)
    }
}

/// Reorders sentences: output row `r` is input row `order[r]`.
pub fn apply_order(grid: &EntityGrid, order: &Permutation) -> Result<EntityGrid> {
    if order.len() != grid.sentence_count() {
        return Err(Error::contract(format!(
            "order has {} positions but the grid has {} sentences",
            order.len(),
            grid.sentence_count()
        )));
    }
    Ok(EntityGrid {
        doc_id: grid.doc_id.clone(),
        entities: grid.entities.clone(),
        rows: order.0.iter().map(|&src| grid.rows[src].clone()).collect(),
    })
}

/// A grid viewed under a sentence reordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutedGrid {
    base: EntityGrid,
    order: Permutation,
}

impl PermutedGrid {
    pub fn new(base: EntityGrid, order: Permutation) -> Result<Self> {
        if order.len() != base.sentence_count() {
            return Err(Error::contract("order length differs from sentence count"));
        }
        Ok(PermutedGrid { base, order })
    }

    pub fn base(&self) -> &EntityGrid {
        &self.base
    }

    pub fn order(&self) -> &Permutation {
        &self.order
    }

    pub fn materialize(&self) -> EntityGrid {
        apply_order(&self.base, &self.order).expect("length checked at construction")
    }
}

const DOC_SENTINEL: &str = "#doc";

/// True when `text` starts with the Grid-TSV sentinel line.
pub fn looks_like_grid_tsv(text: &str) -> bool {
    let first = text.lines().next().unwrap_or("");
    first == DOC_SENTINEL
        || first
            .strip_prefix(DOC_SENTINEL)
            .is_some_and(|rest| rest.starts_with([' ', '\t']))
}

fn split_lines(text: &str) -> Vec<&str> {
    let mut lines: Vec<&str> = text
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .collect();
    while lines.len() > 1 && lines.last().is_some_and(|l| l.is_empty()) {
        lines.pop();
    }
    lines
}

/// Parses a Grid-TSV document: a `#doc <id>` line, a tab-separated entity header, then
/// one row per sentence (`<1-based index>` followed by one of `s`, `o`, `x`, `-` per
/// entity).
pub fn parse_grid_tsv(text: &str) -> Result<EntityGrid> {
    let lines = split_lines(text);
    let header = lines[0];
    if !looks_like_grid_tsv(header) {
        return Err(Error::parse(1, 1, "expected '#doc <doc_id>' header"));
    }
    let doc_id = header[DOC_SENTINEL.len()..].trim();
    if doc_id.is_empty() {
        return Err(Error::parse(1, 0, "missing doc id"));
    }
    let Some(&entity_line) = lines.get(1) else {
        return Err(Error::parse(2, 0, "missing entity header"));
    };
    let mut entities: Vec<String> = Vec::new();
    if !entity_line.is_empty() {
        for (col, raw) in entity_line.split('\t').enumerate() {
            let name = canonicalize_entity(raw);
            if name.is_empty() {
                return Err(Error::parse(2, col + 1, "empty entity name"));
            }
            if entities.contains(&name) {
                return Err(Error::parse(
                    2,
                    col + 1,
                    format!("duplicate entity name {name:?}"),
                ));
            }
            entities.push(name);
        }
    }
    if lines.len() < 3 {
        return Err(Error::parse(3, 0, "grid has no sentence rows"));
    }

    let mut rows = Vec::with_capacity(lines.len() - 2);
    for (offset, line) in lines[2..].iter().enumerate() {
        let line_no = offset + 3;
        let mut fields = line.split('\t');
        let index_field = fields.next().unwrap_or("");
        match index_field.trim().parse::<usize>() {
            Ok(idx) if idx == offset + 1 => {}
            Ok(idx) => {
                return Err(Error::parse(
                    line_no,
                    1,
                    format!("expected sentence index {} but found {idx}", offset + 1),
                ))
            }
            Err(_) => {
                return Err(Error::parse(
                    line_no,
                    1,
                    format!("invalid sentence index {index_field:?}"),
                ))
            }
        }
        let cells: Vec<&str> = fields.collect();
        if cells.len() != entities.len() {
            return Err(Error::parse(line_no, 0, "row width mismatch"));
        }
        let mut row = Vec::new();
        for (k, cell) in cells.iter().enumerate() {
            let cell = cell.trim();
            if cell == "-" {
                continue;
            }
            let mut chars = cell.chars();
            match (chars.next().and_then(Role::from_symbol), chars.next()) {
                (Some(role), None) => row.push((k, role)),
                _ => {
                    return Err(Error::parse(
                        line_no,
                        k + 2,
                        format!("illegal cell symbol {cell:?}"),
                    ))
                }
            }
        }
        rows.push(row);
    }

    let mut used = vec![false; entities.len()];
    for &(k, _) in rows.iter().flatten() {
        used[k] = true;
    }
    if let Some(k) = used.iter().position(|u| !u) {
        return Err(Error::parse(
            2,
            k + 1,
            format!("entity {:?} has no non-empty cell", entities[k]),
        ));
    }
    EntityGrid::new(doc_id, entities, rows)
}

/// Serializes a grid as Grid-TSV. Inverse of [`parse_grid_tsv`].
pub fn serialize_grid_tsv(grid: &EntityGrid) -> String {
    let mut out = String::new();
    out.push_str(DOC_SENTINEL);
    out.push(' ');
    out.push_str(&grid.doc_id);
    out.push('\n');
    out.push_str(&grid.entities.join("\t"));
    out.push('\n');
    let mut cells = vec!['-'; grid.entity_count()];
    for (i, row) in grid.rows.iter().enumerate() {
        cells.iter_mut().for_each(|c| *c = '-');
        for &(k, role) in row {
            cells[k] = role.symbol();
        }
        out.push_str(&(i + 1).to_string());
        for c in &cells {
            out.push('\t');
            out.push(*c);
        }
        out.push('\n');
    }
    out
}

/// Parses bracket-annotated text: one sentence per line, entity mentions written as
/// `[surface]{s|o|x}`. Whitespace-only lines are skipped. When one entity is mentioned
/// several times in a sentence the most salient role wins.
pub fn parse_annotated_text(doc_id: &str, text: &str) -> Result<EntityGrid> {
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut entities = Vec::new();
    let mut rows = Vec::new();

    for (li, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let line_no = li + 1;
        let mut row: Vec<(usize, Role)> = Vec::new();
        for (surface, role) in parse_mentions(line, line_no)? {
            let name = canonicalize_entity(&surface);
            if name.is_empty() {
                return Err(Error::parse(line_no, 0, "empty entity mention"));
            }
            let k = *index.entry(name.clone()).or_insert_with(|| {
                entities.push(name);
                entities.len() - 1
            });
            match row.iter_mut().find(|(e, _)| *e == k) {
                Some(cell) if role.salience() > cell.1.salience() => cell.1 = role,
                Some(_) => {}
                None => row.push((k, role)),
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::parse(1, 0, "no sentences"));
    }
    EntityGrid::new(doc_id, entities, rows)
}

fn parse_mentions(line: &str, line_no: usize) -> Result<Vec<(String, Role)>> {
    let mut mentions = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        match chars[i] {
            '[' => {
                let open = i;
                let mut j = i + 1;
                while j < chars.len() && chars[j] != ']' {
                    if chars[j] == '[' {
                        return Err(Error::parse(line_no, j + 1, "unbalanced bracket"));
                    }
                    j += 1;
                }
                if j == chars.len() {
                    return Err(Error::parse(line_no, open + 1, "unbalanced bracket"));
                }
                let surface: String = chars[open + 1..j].iter().collect();
                if chars.get(j + 1) != Some(&'{') {
                    return Err(Error::parse(line_no, j + 2, "missing role annotation"));
                }
                let role = match chars.get(j + 2).copied() {
                    Some(c) => Role::from_symbol(c).ok_or_else(|| {
                        Error::parse(line_no, j + 3, format!("unknown role letter '{c}'"))
                    })?,
                    None => return Err(Error::parse(line_no, j + 3, "missing role letter")),
                };
                if chars.get(j + 3) != Some(&'}') {
                    return Err(Error::parse(line_no, j + 4, "unbalanced role brace"));
                }
                mentions.push((surface, role));
                i = j + 4;
            }
            ']' => return Err(Error::parse(line_no, i + 1, "unbalanced bracket")),
            _ => i += 1,
        }
    }
    Ok(mentions)
}
