use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliError {
    #[error("line {line}, column {col}: syntax error: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("line {line}, column {col}: unknown name `{name}`")]
    UnknownName { line: usize, col: usize, name: String },
    #[error("line {line}: {message}")]
    Type { line: usize, message: String },
    #[error("line {line}: {source}")]
    Lib { line: usize, source: katoforge::Error },
}

impl CliError {
    pub fn syntax(line: usize, col: usize, message: impl Into<String>) -> Self {
        CliError::Syntax { line, col, message: message.into() }
    }

    pub fn line(&self) -> usize {
        match self {
            CliError::Syntax { line, .. }
            | CliError::UnknownName { line, .. }
            | CliError::Type { line, .. }
            | CliError::Lib { line, .. } => *line,
        }
    }
}
