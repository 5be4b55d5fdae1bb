use std::fmt;

use thiserror::Error;

use crate::lexer::Pos;

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

/// Errors from parsing or evaluating an expression.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DslError {
    #[error("{pos}: syntax error: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("{pos}: unknown basis name `{name}`")]
    UnknownName { pos: Pos, name: String },
    #[error("{pos}: `{name}` takes {expected} argument(s), got {got}")]
    Arity { pos: Pos, name: String, expected: usize, got: usize },
    #[error("{pos}: {msg}")]
    Eval { pos: Pos, msg: String },
}

impl DslError {
    pub fn syntax(pos: Pos, msg: impl Into<String>) -> Self {
        DslError::Syntax { pos, msg: msg.into() }
    }

    pub fn eval(pos: Pos, msg: impl fmt::Display) -> Self {
        DslError::Eval { pos, msg: msg.to_string() }
    }

    pub fn pos(&self) -> Option<Pos> {
        match self {
            DslError::Syntax { pos, .. }
            | DslError::UnknownName { pos, .. }
            | DslError::Arity { pos, .. }
            | DslError::Eval { pos, .. } => Some(*pos),
        }
    }
}
