//! Two-mode sentence–entity graphs built from entity grids.

use std::fmt::Write as _;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::grid::{EntityGrid, Role};

/// Bipartite graph with sentences as top vertices (in document order) and entities as
/// bottom vertices. Each edge carries the grammatical role of its grid cell.
///
/// Neighborhoods are stored as bit sets on both sides, so the pairwise intersections
/// used by the coherence metrics cost one pass over the opposite vertex class.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteGraph {
    top: Vec<BitSet>,
    bot: Vec<BitSet>,
    edges: Vec<(usize, usize, Role)>,
    entity_names: Vec<String>,
}

impl BipartiteGraph {
    pub fn from_grid(grid: &EntityGrid) -> Self {
        let n = grid.sentence_count();
        let m = grid.entity_count();
        let mut top = vec![BitSet::new(m); n];
        let mut bot = vec![BitSet::new(n); m];
        let mut edges = Vec::with_capacity(grid.cell_count());
        for (i, row) in grid.rows().iter().enumerate() {
            for &(k, role) in row {
                top[i].insert(k);
                bot[k].insert(i);
                edges.push((i, k, role));
            }
        }
        BipartiteGraph {
            top,
            bot,
            edges,
            entity_names: grid.entities().to_vec(),
        }
    }

    /// Builds a graph directly from per-sentence entity lists. Entities are named
    /// `e0`, `e1`, ... and every edge gets the subject role. Duplicate entries within a
    /// sentence collapse to one edge; entities with no sentence are allowed.
    pub fn from_neighborhoods(entity_count: usize, sentences: &[Vec<usize>]) -> Result<Self> {
        let n = sentences.len();
        let mut top = vec![BitSet::new(entity_count); n];
        let mut bot = vec![BitSet::new(n); entity_count];
        let mut edges = Vec::new();
        for (i, ents) in sentences.iter().enumerate() {
            for &k in ents {
                if k >= entity_count {
                    return Err(Error::contract(format!(
                        "entity {k} out of range {entity_count}"
                    )));
                }
                if !top[i].contains(k) {
                    top[i].insert(k);
                    bot[k].insert(i);
                    edges.push((i, k, Role::Subject));
                }
            }
        }
        edges.sort_unstable_by_key(|&(i, k, _)| (i, k));
        Ok(BipartiteGraph {
            top,
            bot,
            edges,
            entity_names: (0..entity_count).map(|k| format!("e{k}")).collect(),
        })
    }

    pub fn sentence_count(&self) -> usize {
        self.top.len()
    }

    pub fn entity_count(&self) -> usize {
        self.bot.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `(sentence, entity, role)` triples ordered by sentence then entity.
    pub fn edges(&self) -> &[(usize, usize, Role)] {
        &self.edges
    }

    pub fn entity_names(&self) -> &[String] {
        &self.entity_names
    }

    /// Entity set of sentence `i` as a bit set. Panics when `i` is out of range.
    pub fn top_set(&self, i: usize) -> &BitSet {
        &self.top[i]
    }

    /// Sentence set of entity `k` as a bit set. Panics when `k` is out of range.
    pub fn bot_set(&self, k: usize) -> &BitSet {
        &self.bot[k]
    }

    pub fn degree_top(&self, i: usize) -> usize {
        self.top[i].count()
    }

    pub fn neighbors_top(&self, i: usize) -> Result<Vec<usize>> {
        self.check_sentence(i)?;
        Ok(self.top[i].iter().collect())
    }

    pub fn neighbors_bot(&self, k: usize) -> Result<Vec<usize>> {
        if k >= self.bot.len() {
            return Err(Error::contract(format!(
                "entity index {k} out of range {}",
                self.bot.len()
            )));
        }
        Ok(self.bot[k].iter().collect())
    }

    pub(crate) fn check_sentence(&self, i: usize) -> Result<()> {
        if i >= self.top.len() {
            return Err(Error::contract(format!(
                "sentence index {i} out of range {}",
                self.top.len()
            )));
        }
        Ok(())
    }

    /// Forward one-mode projection onto sentences.
    pub fn project_sentences(&self) -> SentenceProjection {
        let n = self.top.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let shared = self.top[i].intersection_count(&self.top[j]);
                if shared > 0 {
                    edges.push(ProjectionEdge {
                        from: i,
                        to: j,
                        weight: shared,
                    });
                }
            }
        }
        SentenceProjection {
            sentence_count: n,
            edges,
        }
    }

    /// GraphML export with a `kind` attribute (`sentence` or `entity`) on every vertex
    /// and a `role` attribute on every edge.
    pub fn to_graphml(&self) -> String {
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
        out.push_str("  <key id=\"kind\" for=\"node\" attr.name=\"kind\" attr.type=\"string\"/>\n");
        out.push_str(
            "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n",
        );
        out.push_str("  <key id=\"role\" for=\"edge\" attr.name=\"role\" attr.type=\"string\"/>\n");
        out.push_str("  <graph id=\"G\" edgedefault=\"undirected\">\n");
        for i in 0..self.sentence_count() {
            let _ = writeln!(
                out,
                "    <node id=\"s{i}\"><data key=\"kind\">sentence</data><data key=\"label\">{}</data></node>",
                i + 1
            );
        }
        for (k, name) in self.entity_names.iter().enumerate() {
            let _ = writeln!(
                out,
                "    <node id=\"e{k}\"><data key=\"kind\">entity</data><data key=\"label\">{}</data></node>",
                xml_escape(name)
            );
        }
        for &(i, k, role) in &self.edges {
            let _ = writeln!(
                out,
                "    <edge source=\"s{i}\" target=\"e{k}\"><data key=\"role\">{role}</data></edge>"
            );
        }
        out.push_str("  </graph>\n</graphml>\n");
        out
    }
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProjectionEdge {
    pub from: usize,
    pub to: usize,
    /// Number of shared entities.
    pub weight: usize,
}

/// Sentences linked `i → j` (with `i < j`) whenever they share at least one entity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceProjection {
    sentence_count: usize,
    edges: Vec<ProjectionEdge>,
}

impl SentenceProjection {
    pub fn sentence_count(&self) -> usize {
        self.sentence_count
    }

    /// Edges ordered by `(from, to)`.
    pub fn edges(&self) -> &[ProjectionEdge] {
        &self.edges
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.sentence_count];
        for e in &self.edges {
            deg[e.from] += 1;
        }
        deg
    }

    /// Undirected neighbor lists derived from the forward edges.
    pub fn undirected_neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.sentence_count];
        for e in &self.edges {
            adj[e.from].push(e.to);
            adj[e.to].push(e.from);
        }
        adj.iter_mut().for_each(|a| a.sort_unstable());
        adj
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::grid::{filter_roles, parse_grid_tsv, RoleSet};
    use proptest::prelude::*;

    #[test]
    fn example_graph_shape() {
        let g = BipartiteGraph::from_grid(&fixtures::bipartite_example());
        assert_eq!(g.sentence_count(), 5);
        assert_eq!(g.entity_count(), 7);
        assert_eq!(g.edge_count(), 16);
        assert_eq!(g.neighbors_top(1).unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(g.neighbors_top(4).unwrap(), vec![5, 6]);
        assert_eq!(g.neighbors_bot(2).unwrap(), vec![1, 2, 3]);
        assert_eq!(g.neighbors_bot(0).unwrap(), vec![0]);
        assert!(g.neighbors_top(5).is_err());
        assert!(g.neighbors_bot(7).is_err());
    }

    #[test]
    fn lone_sentence() {
        let grid = parse_grid_tsv("#doc d\n\n1\n").unwrap();
        let g = BipartiteGraph::from_grid(&grid);
        assert_eq!(
            (g.sentence_count(), g.entity_count(), g.edge_count()),
            (1, 0, 0)
        );
        assert!(g.neighbors_top(0).unwrap().is_empty());
        assert!(g.project_sentences().edges().is_empty());
    }

    #[test]
    fn filtered_antitrust_grid_edges() {
        let grid = filter_roles(&fixtures::antitrust_grid(), RoleSet::salient());
        // s/o cells counted by hand: 4 + 3 + 5 + 2 + 2 + 2
        assert_eq!(BipartiteGraph::from_grid(&grid).edge_count(), 18);
    }

    #[test]
    fn example_projection() {
        let g = BipartiteGraph::from_grid(&fixtures::bipartite_example());
        let p = g.project_sentences();
        let got: Vec<_> = p.edges().iter().map(|e| (e.from, e.to, e.weight)).collect();
        assert_eq!(
            got,
            vec![(0, 1, 1), (1, 2, 3), (1, 3, 3), (2, 3, 3), (3, 4, 2)]
        );
        assert_eq!(p.out_degrees(), vec![1, 2, 1, 1, 0]);
        assert_eq!(p.undirected_neighbors()[3], vec![1, 2, 4]);
    }

    #[test]
    fn disjoint_sentences_have_no_projection_edges() {
        let g = BipartiteGraph::from_neighborhoods(4, &[vec![0], vec![1, 2], vec![3]]).unwrap();
        assert!(g.project_sentences().edges().is_empty());
    }

    #[test]
    fn graphml_lists_kinds() {
        let g = BipartiteGraph::from_grid(&fixtures::bipartite_example());
        let xml = g.to_graphml();
        assert_eq!(xml.matches("<data key=\"kind\">sentence</data>").count(), 5);
        assert_eq!(xml.matches("<data key=\"kind\">entity</data>").count(), 7);
        assert_eq!(xml.matches("<edge ").count(), 16);
    }

    fn neighborhoods() -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
        (1usize..8, 1usize..9).prop_flat_map(|(m, n)| {
            (
                Just(m),
                proptest::collection::vec(proptest::collection::vec(0..m, 0..=m), n),
            )
        })
    }

    proptest! {
        #[test]
        fn handshake((m, sets) in neighborhoods()) {
            let g = BipartiteGraph::from_neighborhoods(m, &sets).unwrap();
            let top: usize = (0..g.sentence_count()).map(|i| g.neighbors_top(i).unwrap().len()).sum();
            let bot: usize = (0..g.entity_count()).map(|k| g.neighbors_bot(k).unwrap().len()).sum();
            prop_assert_eq!(top, g.edge_count());
            prop_assert_eq!(bot, g.edge_count());
        }

        #[test]
        fn projection_matches_brute_force((m, sets) in neighborhoods()) {
            let g = BipartiteGraph::from_neighborhoods(m, &sets).unwrap();
            let p = g.project_sentences();
            let n = sets.len();
            let mut expected = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let shared = (0..m).filter(|k| sets[i].contains(k) && sets[j].contains(k)).count();
                    if shared > 0 {
                        expected.push((i, j, shared));
                    }
                }
            }
            let got: Vec<_> = p.edges().iter().map(|e| (e.from, e.to, e.weight)).collect();
            prop_assert_eq!(got, expected);
        }

        #[test]
        fn projection_ignores_entity_labels((m, sets) in neighborhoods(), shift in 0usize..8) {
            let g = BipartiteGraph::from_neighborhoods(m, &sets).unwrap();
            let relabeled: Vec<Vec<usize>> = sets
                .iter()
                .map(|s| s.iter().map(|&k| (k + shift) % m).collect())
                .collect();
            let h = BipartiteGraph::from_neighborhoods(m, &relabeled).unwrap();
            prop_assert_eq!(g.project_sentences(), h.project_sentences());
        }
    }
}
