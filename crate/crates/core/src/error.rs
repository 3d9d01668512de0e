use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SqtError {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("{name} must be {requirement} (got {value})")]
    Domain { name: &'static str, value: f64, requirement: &'static str },

    #[error("bath moments violate |M|^2 <= N(N+1): N = {n}, M = {m}")]
    UnphysicalBath { n: f64, m: f64 },

    #[error("state is not physical: smallest symplectic eigenvalue {nu_minus} < 1/2")]
    UnphysicalState { nu_minus: f64 },

    #[error("degenerate state: {0}")]
    Degenerate(String),

    #[error("unknown sweep parameter `{0}` (expected one of t, r, R, T, gamma)")]
    UnknownParameter(String),

    #[error("sweep axes must name two distinct parameters, `{0}` given twice")]
    DuplicateAxis(String),

    #[error("invalid axis `{name}`: {reason}")]
    InvalidAxis { name: String, reason: String },

    #[error("grid node ({i}, {j}) at {axis1} = {value1}, {axis2} = {value2}: {source}")]
    Node {
        i: usize,
        j: usize,
        axis1: String,
        value1: f64,
        axis2: String,
        value2: f64,
        #[source]
        source: Box<SqtError>,
    },
}

impl SqtError {
    /// True for errors caused by caller-supplied parameters rather than by
    /// internal numerical failure.
    pub fn is_input_error(&self) -> bool {
        match self {
            SqtError::Domain { .. }
            | SqtError::UnphysicalBath { .. }
            | SqtError::UnknownParameter(_)
            | SqtError::DuplicateAxis(_)
            | SqtError::InvalidAxis { .. } => true,
            SqtError::Node { source, .. } => source.is_input_error(),
            SqtError::InvalidMatrix(_) | SqtError::UnphysicalState { .. } | SqtError::Degenerate(_) => false,
        }
    }
}

pub type Result<T, E = SqtError> = std::result::Result<T, E>;

pub(crate) fn require(ok: bool, name: &'static str, value: f64, requirement: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(SqtError::Domain { name, value, requirement })
    }
}
