use thiserror::Error;

/// Errors produced by array operations, decoders and verifiers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid deletion pattern: {0}")]
    InvalidPattern(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("index {index} out of range 1..={bound}")]
    InvalidIndex { index: usize, bound: usize },
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("received array is not the corruption of any codeword")]
    NotCodeword,
    #[error("ambiguous decoding: {0} distinct codewords are consistent with the received array")]
    Ambiguous(usize),
    #[error("code property violated: {0}")]
    CodeProperty(String),
    #[error("parameters cannot be instantiated: {0}")]
    NotInstantiable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("sampling budget exhausted: {0}")]
    Sampling(String),
}

pub type Result<T> = std::result::Result<T, Error>;
