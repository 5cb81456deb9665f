use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0:?}")]
    SelfLoop(String),
    #[error("vertex labels must be non-empty")]
    EmptyLabel,
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("edge references undeclared node {0:?}")]
    UnknownEndpoint(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliqueError {
    #[error("clique enumeration exceeded the cap of {cap} cliques")]
    ResourceLimit { cap: usize },
    #[error("clique order must be at least {min}, got {got}")]
    InvalidOrder { min: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("inconsistent community slices: {0}")]
    Inconsistent(String),
}

/// Umbrella error for pipelines that touch several stages.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Clique(#[from] CliqueError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
