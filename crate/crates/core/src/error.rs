use thiserror::Error;

/// Every failure the library can report.
///
/// The CLI maps each variant to a stable machine-readable kind via
/// [`Error::kind`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("face {0} is not in the complex")]
    FaceNotInComplex(String),
    #[error("complex is not pure")]
    NotPure,
    #[error("coloring is not proper: face {witness} repeats a color")]
    NotBalanced { witness: String },
    #[error("color {0} lies in the selected color set")]
    ColorInS(usize),
    #[error("poset is not graded: maximal chains {short} and {long} have different lengths")]
    NotGraded { short: String, long: String },
    #[error("no unique bottom element (minimal elements: {0})")]
    NoUniqueBottom(String),
    #[error("no unique top element (maximal elements: {0})")]
    NoUniqueTop(String),
    #[error("cover relation contains a cycle through {0}")]
    CycleDetected(String),
    #[error("elements {0} and {1} are not comparable")]
    NotComparable(String, String),
    #[error("{0} is not a chain of the open interval")]
    NotAChain(String),
    #[error("lower interval below {0} is not Boolean")]
    NotSimplicial(String),
    #[error("poset is not Eulerian")]
    NotEulerian,
    #[error("poset is not semi-Eulerian")]
    NotSemiEulerian,
    #[error("poset is only {0}-Sing, not 1-Sing")]
    NotOneSing(i64),
    #[error("relation does not apply: {0}")]
    ParityNotApplicable(String),
    #[error("closed form needs d > 2j, got d = {d}, j = {j}")]
    RangeViolation { d: i64, j: i64 },
    #[error("bad arguments: {0}")]
    BadArguments(String),
    #[error("lower interval below {0} is not Eulerian")]
    NotLowerEulerian(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("bad generator parameters: {0}")]
    BadParams(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("internal error: {0}")]
    InternalError(String),
}

impl Error {
    /// Stable identifier of the variant, used in machine-readable diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyInput => "EmptyInput",
            Error::FaceNotInComplex(_) => "FaceNotInComplex",
            Error::NotPure => "NotPure",
            Error::NotBalanced { .. } => "NotBalanced",
            Error::ColorInS(_) => "ColorInS",
            Error::NotGraded { .. } => "NotGraded",
            Error::NoUniqueBottom(_) => "NoUniqueBottom",
            Error::NoUniqueTop(_) => "NoUniqueTop",
            Error::CycleDetected(_) => "CycleDetected",
            Error::NotComparable(..) => "NotComparable",
            Error::NotAChain(_) => "NotAChain",
            Error::NotSimplicial(_) => "NotSimplicial",
            Error::NotEulerian => "NotEulerian",
            Error::NotSemiEulerian => "NotSemiEulerian",
            Error::NotOneSing(_) => "NotOneSing",
            Error::ParityNotApplicable(_) => "ParityNotApplicable",
            Error::RangeViolation { .. } => "RangeViolation",
            Error::BadArguments(_) => "BadArguments",
            Error::NotLowerEulerian(_) => "NotLowerEulerian",
            Error::UnknownGenerator(_) => "UnknownGenerator",
            Error::BadParams(_) => "BadParams",
            Error::Parse { .. } => "Parse",
            Error::InternalError(_) => "InternalError",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
