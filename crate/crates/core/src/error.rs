use thiserror::Error;

/// Which verification route rejected a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyMode {
    Criterion,
    Bruteforce,
    Oracle,
}

impl std::fmt::Display for VerifyMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            VerifyMode::Criterion => "criterion",
            VerifyMode::Bruteforce => "bruteforce",
            VerifyMode::Oracle => "oracle",
        })
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a generalized Cartan matrix: {0}")]
    NotGcm(String),
    #[error("Cartan matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("root system is not of finite type; a height cutoff is required")]
    CutoffRequired,
    #[error("simple reflection index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("no dominant representative reached within {0} reflections")]
    IterationCapExceeded(usize),
    #[error("path is not integral")]
    NotIntegral,
    #[error("operation requires a finite-type root system")]
    NotFiniteType,
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("raising did not terminate within {0} steps")]
    NonTerminating(usize),
    #[error("result is truncated by generation limits")]
    Truncated,
    #[error("generation limits are required for non-finite types")]
    LimitsRequired,
    #[error("lambda = {0} is not dominant")]
    LambdaNotDominant(String),
    #[error("invalid PRV case: {0}")]
    CaseInvalid(String),
    #[error("k out of bounds for root #{index}: need 0 <= k <= min(<v mu, beta^v>, <w nu, beta^v>) = {bound}, got k = {k}")]
    KOutOfBounds { index: usize, k: i64, bound: i64 },
    #[error("roots #{0} and #{1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("zero string: k = {k} with <w nu, beta^v> = 0")]
    ZeroString { k: i64 },
    #[error("root is not simple")]
    BetaNotSimple,
    #[error("not a real root of this system")]
    NotARoot,
    #[error("witness verification failed in {0} mode")]
    VerificationFailed(VerifyMode),
    #[error("closed-form witness differs from iterated operator application")]
    WitnessMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
