use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Jordan spec: {}", .0.join("; "))]
    Validation(Vec<String>),
    #[error("unknown module label `{label}` for {kind}")]
    UnknownLabel { kind: String, label: String },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("rho(e)(rho(e)-1)(2rho(e)-1) is nonzero; not a Jordan module")]
    CubicIdentityFails,
    #[error("multiplication table is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("structure constants are not commutative")]
    NotCommutative,
    #[error("algebra has no unit element")]
    NotUnital,
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiFails(usize, usize, usize),
    #[error("bracket leaves its graded span: {0}")]
    BracketOutOfSpan(String),
    #[error("character decomposition failed: {0}")]
    NonDecomposable(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("algebra still has nonzero degree {0} at the degree cap")]
    NonTerminating(usize),
    #[error("vertex sets differ ({0} vs {1})")]
    VertexMismatch(usize, usize),
    #[error("bad input: {0}")]
    Input(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded(_) | Error::NonTerminating(_) => 4,
            Error::JacobiFails(..) | Error::NonDecomposable(_) | Error::BracketOutOfSpan(_) => 3,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Validation(_) => "Validation",
            Error::UnknownLabel { .. } => "UnknownLabel",
            Error::NotDominant(_) => "NotDominant",
            Error::CubicIdentityFails => "CubicIdentityFails",
            Error::NotAssociative(..) => "NotAssociative",
            Error::NotCommutative => "NotCommutative",
            Error::NotUnital => "NotUnital",
            Error::JacobiFails(..) => "JacobiFails",
            Error::BracketOutOfSpan(_) => "BracketOutOfSpan",
            Error::NonDecomposable(_) => "NonDecomposable",
            Error::CapExceeded(_) => "CapExceeded",
            Error::NonTerminating(_) => "NonTerminating",
            Error::VertexMismatch(..) => "VertexMismatch",
            Error::Input(_) => "Input",
        }
    }
}
