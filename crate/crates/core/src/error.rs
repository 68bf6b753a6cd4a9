use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible shapes: {0}")]
    Shape(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// An entry of `num · adj(den)` left a remainder on division by `det(den)`.
    #[error("not exactly divisible")]
    NotExactlyDivisible { row: usize, col: usize },

    #[error("singular symbol: determinant is zero")]
    SingularSymbol,

    #[error("singular matrix")]
    SingularMatrix,

    #[error("q undefined: degree {} does not exceed d = {d}", show_degree(.degree))]
    QUndefined { degree: Option<usize>, d: usize },

    /// The constraint system for a mask with prescribed spectral order has no solution.
    #[error("infeasible support: rank deficiency {deficiency} (coefficient rank {rank}, augmented rank {augmented_rank})")]
    Infeasible {
        deficiency: usize,
        rank: usize,
        augmented_rank: usize,
    },

    #[error("spectral order insufficient: required {required}, condition fails at order {failed_at}")]
    SpectralOrderInsufficient { required: usize, failed_at: usize },

    #[error("{source} at order {order}")]
    ChainStep {
        order: usize,
        #[source]
        source: Box<Error>,
    },

    /// `e_d + y` is not fixed by twice the coset sums of the current factor.
    #[error("generator column is not an eigenvector of 2 B_{order}")]
    NotEigenvector { order: usize },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
}

fn show_degree(degree: &Option<usize>) -> String {
    degree.map_or_else(|| "-inf".to_string(), |n| n.to_string())
}

impl Error {
    /// True for failures that mean a mathematical hypothesis does not hold
    /// (as opposed to malformed input).
    pub fn is_hypothesis_violation(&self) -> bool {
        match self {
            Error::NotExactlyDivisible { .. }
            | Error::SingularSymbol
            | Error::SingularMatrix
            | Error::QUndefined { .. }
            | Error::Infeasible { .. }
            | Error::SpectralOrderInsufficient { .. }
            | Error::NotEigenvector { .. }
            | Error::Quadrature(_) => true,
            Error::ChainStep { source, .. } => source.is_hypothesis_violation(),
            Error::Shape(_) | Error::InvalidArgument(_) | Error::Parse(_) => false,
        }
    }
}
