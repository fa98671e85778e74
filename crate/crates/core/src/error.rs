use thiserror::Error;

/// Errors raised while building or validating algebraic objects.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch in {what}: {left} vs {right}")]
    SizeMismatch {
        what: String,
        left: usize,
        right: usize,
    },
    #[error("{what} = {index} is out of range (size {size})")]
    OutOfRange {
        what: String,
        index: usize,
        size: usize,
    },
    #[error("{0} must not be empty")]
    Empty(String),
    #[error("closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("operation is not associative: ({x}*{y})*{z} != {x}*({y}*{z})")]
    NotAssociative { x: usize, y: usize, z: usize },
    #[error("element {missing} is not generated by the given generators")]
    NotGenerated { missing: usize },
    #[error("not a semigroup action: state {state}, elements {g1}, {g2}")]
    NotAnAction { state: usize, g1: usize, g2: usize },
    #[error("letter map at state {state} is not a bijection")]
    NotBijective { state: usize },
    #[error("machine is not invertible: output letters at state {state} are not a permutation")]
    NotInvertible { state: usize },
    #[error("embedding verification failed: {0}")]
    EmbeddingVerification(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_index(what: impl FnOnce() -> String, index: usize, size: usize) -> Result<()> {
    if index < size {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what: what(),
            index,
            size,
        })
    }
}

pub(crate) fn check_size(what: &str, left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::SizeMismatch {
            what: what.to_string(),
            left,
            right,
        })
    }
}
