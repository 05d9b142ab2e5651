use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("minor size {k} out of range for a {rows}x{cols} matrix")]
    MinorSize { k: usize, rows: usize, cols: usize },
    #[error("parse error: {0}")]
    Parse(String),

    #[error("arity violation: {0}")]
    Arity(String),
    #[error("over strand is not antipodal at crossing {0}")]
    NonAntipodalOver(u64),
    #[error("orientation flow violation at crossing {0}: {1}")]
    Orientation(u64, String),
    #[error("cocycle violation: face {face} has boundary label sum {sum:?}")]
    Cocycle { face: usize, sum: Vec<i64> },
    #[error("the diagram universe is not connected")]
    Disconnected,
    #[error("genus mismatch: declared {declared}, computed {computed}")]
    GenusMismatch { declared: i64, computed: String },
    #[error("label length {got} does not match the expected {expected}")]
    LabelLength { got: usize, expected: usize },

    #[error("diagram is not checkerboard shadable")]
    NotShadable,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("walk steps between faces {0} and {1} which are not adjacent across edge {2}")]
    NonAdjacentStep(usize, usize, usize),
    #[error("specialization has no image for generator `{0}`")]
    MissingImage(String),
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("brute-force size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("move site is not applicable: {0}")]
    InapplicableSite(String),
    #[error("internal invariant failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures that indicate a bug or an unsatisfied internal
    /// invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
