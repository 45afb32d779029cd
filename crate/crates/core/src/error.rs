use thiserror::Error;

/// Errors raised by the combinatorial and algebraic layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unstable surface: 2g - 2 + n = {0} must be positive")]
    UnstableSurface(i64),
    #[error("surface C_{{{genus},{punctures}}} has no ideal triangulation (needs a puncture)")]
    NotTriangulable { genus: u32, punctures: u32 },
    #[error("bad gluing table: {0}")]
    BadGluing(String),
    #[error("self-folded triangle at edge {0}")]
    SelfFolded(usize),
    #[error("expected {expected} {what}, found {found}")]
    WrongCount {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("edge {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("edge {0} cannot be flipped: {1}")]
    NotFlippable(usize, String),
    #[error("curve walk is invalid: {0}")]
    BadWalk(String),
    #[error("variable count mismatch: {0} vs {1}")]
    IndexMismatch(usize, usize),
    #[error("missing operand `{0}`")]
    MissingOperand(String),
    #[error("unsupported subsurface: {0}")]
    UnsupportedSubsurface(String),
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
    #[error("invalid pants decomposition: {0}")]
    BadPants(String),
    #[error("substitution failed: {0}")]
    Substitution(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular Gram matrix at level {0}")]
    SingularGram(usize),
    #[error("lattice site {site} hits a singular coefficient ({what})")]
    SingularSite { site: i64, what: String },
    #[error("window of {window} sites is too small for bandwidth {bandwidth}")]
    WindowTooSmall { window: usize, bandwidth: usize },
    #[error("degenerate parameter: {0}")]
    Degenerate(String),
    #[error("leading coefficient of the tau series vanishes")]
    VanishingTau,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
