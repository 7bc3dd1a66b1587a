use thiserror::Error;

/// Errors produced by the coherence toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed textual input. `line` and `column` are 1-based; `column` is 0 when
    /// the problem concerns the whole line.
    #[error("{message} at line {line}{}", column_suffix(*.column))]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A caller broke an operation's precondition (index out of range, non-bijective
    /// order, pair without shared entity, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("empty corpus")]
    EmptyCorpus,

    #[error("{0}")]
    Insufficient(String),
}

fn column_suffix(column: usize) -> String {
    if column == 0 {
        String::new()
    } else {
        format!(", column {column}")
    }
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn contract(message: impl Into<String>) -> Self {
        Error::Contract(message.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_error_display() {
        let e = Error::parse(2, 0, "row width mismatch");
        assert_eq!(e.to_string(), "row width mismatch at line 2");
        let e = Error::parse(1, 7, "unbalanced bracket");
        assert_eq!(e.to_string(), "unbalanced bracket at line 1, column 7");
    }
}
