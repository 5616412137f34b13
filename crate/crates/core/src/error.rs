use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {p}^{k} exceeds the 2^16 cap")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("division by zero in GF({0})")]
    DivisionByZero(u32),
    #[error("order {m} does not divide {modulus}")]
    OrderNotDividing { m: u64, modulus: u64 },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("degree {degree} exceeds the cap of {cap} points")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("degree must be at least {min}, got {got}")]
    DegreeTooSmall { min: usize, got: usize },
    #[error("top group of a wreath product must be transitive")]
    TopNotTransitive,
    #[error("unsupported matrix family: {0}")]
    UnsupportedFamily(String),
    #[error("diagonal entries do not multiply to 1")]
    DeterminantNotOne,
    #[error("matrix does not preserve the hermitian form")]
    FormViolated,
    #[error("{p} does not divide q - 1 = {q_minus_1}")]
    PNotDividingQMinus1 { p: u64, q_minus_1: u64 },
    #[error("group of order {order} exceeds the enumeration cap {cap}")]
    GroupTooLarge { order: String, cap: u64 },
    #[error("conjugacy class exceeds the cap of {cap} elements")]
    ClassTooLarge { cap: u64 },
    #[error("element is not a member of the group")]
    NotAMember,
    #[error("subset is not normal in the group")]
    NotNormal,
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("{p} does not divide the group order")]
    PNotDividingOrder { p: u64 },
    #[error("gave up after {0} retries")]
    RetriesExhausted(usize),
    #[error("Sylow subgroup order {order} exceeds the cap {cap}")]
    SylowOrderCapExceeded { order: String, cap: u64 },
    #[error("the prime 2 is outside the scope of the analyzer")]
    PIsTwo,
    #[error("digest collision detected: {0}")]
    DigestCollision(String),
    #[error("search budget of {0} nodes exhausted")]
    SearchBudgetExhausted(u64),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("congruence violated: {0}")]
    CongruenceViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by a configured resource limit rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::FieldTooLarge { .. }
                | Error::DegreeCapExceeded { .. }
                | Error::GroupTooLarge { .. }
                | Error::ClassTooLarge { .. }
                | Error::RetriesExhausted(_)
                | Error::SylowOrderCapExceeded { .. }
                | Error::SearchBudgetExhausted(_)
        )
    }
}
