use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("arc ({0}, {1}) is not an edge of the host graph")]
    NotAnEdge(usize, usize),

    #[error("edge {{{0}, {1}}} is oriented in both directions")]
    BothDirections(usize, usize),

    #[error("ordering is not a permutation of 0..{n}: {reason}")]
    NotPermutation { n: usize, reason: String },

    #[error("input too large: {what} is {got}, limit is {limit}")]
    InputTooLarge {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Checks that `sigma` lists every vertex of `0..n` exactly once and
/// returns the position of each vertex.
pub fn positions(n: usize, sigma: &[usize]) -> Result<Vec<usize>> {
    if sigma.len() != n {
        return Err(Error::NotPermutation {
            n,
            reason: format!("expected {n} entries, found {}", sigma.len()),
        });
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in sigma.iter().enumerate() {
        if v >= n {
            return Err(Error::NotPermutation {
                n,
                reason: format!("entry {v} out of range"),
            });
        }
        if pos[v] != usize::MAX {
            return Err(Error::NotPermutation {
                n,
                reason: format!("vertex {v} appears twice"),
            });
        }
        pos[v] = i;
    }
    Ok(pos)
}
