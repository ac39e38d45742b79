use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("point outside the evaluation disk: |z| = {0}")]
    OutOfDomain(f64),

    #[error("quadrature did not converge to {tol:e} within {max_nodes} nodes (last change {last_change:e})")]
    QuadratureFailure {
        tol: f64,
        max_nodes: usize,
        last_change: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
