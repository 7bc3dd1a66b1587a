//! Small worked example documents, handy for demos and tests.

use crate::grid::{parse_grid_tsv, EntityGrid};

/// Five sentences over seven entities:
/// S1 {e1,e2}, S2 {e2,e3,e4,e5}, S3 {e3,e4,e5}, S4 {e3,e4,e5,e6,e7}, S5 {e6,e7}.
pub const BIPARTITE_EXAMPLE_TSV: &str = "#doc bipartite-example
e1\te2\te3\te4\te5\te6\te7
1\ts\to\t-\t-\t-\t-\t-
2\t-\ts\ts\to\to\t-\t-
3\t-\t-\ts\to\to\t-\t-
4\t-\t-\ts\ts\to\to\to
5\t-\t-\t-\t-\t-\ts\to
";

/// Six-sentence news grid with fifteen entities and s/o/x roles.
pub const ANTITRUST_TSV: &str = "#doc antitrust
Department\tTrial\tMicrosoft\tEvidence\tCompetitors\tMarkets\tProducts\tBrands\tCase\tNetscape\tSoftware\tTactics\tGovernment\tSuit\tEarnings
1\ts\to\ts\tx\to\t-\t-\t-\t-\t-\t-\t-\t-\t-\t-
2\t-\t-\to\t-\t-\tx\ts\to\t-\t-\t-\t-\t-\t-\t-
3\t-\t-\ts\to\t-\t-\t-\t-\ts\to\to\t-\t-\t-\t-
4\t-\t-\ts\t-\t-\t-\t-\t-\t-\t-\t-\ts\t-\t-\t-
5\t-\t-\t-\t-\t-\t-\t-\t-\t-\t-\t-\t-\ts\to\t-
6\t-\tx\ts\t-\t-\t-\t-\t-\t-\t-\t-\t-\t-\t-\to
";

pub fn bipartite_example() -> EntityGrid {
    parse_grid_tsv(BIPARTITE_EXAMPLE_TSV).expect("fixture parses")
}

pub fn antitrust_grid() -> EntityGrid {
    parse_grid_tsv(ANTITRUST_TSV).expect("fixture parses")
}
