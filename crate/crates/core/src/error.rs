use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("base field has characteristic {base}, requested {requested}")]
    CharacteristicMismatch { base: u32, requested: u32 },
    #[error("field of order {0} is too large for this implementation")]
    FieldTooLarge(u128),
    #[error("no primitive polynomial of degree {degree} found over GF({base_order})")]
    NoPrimitivePolynomial { base_order: u64, degree: usize },
    #[error("value {value} is not an element of GF({order})")]
    NotAnElement { value: u64, order: u64 },
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero element has no multiplicative order")]
    ZeroElement,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,

    #[error("subspaces live in different ambient spaces ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("invalid dimensions k={k}, n={n}")]
    BadDimensions { k: usize, n: usize },
    #[error("Grassmannian has {count} points, above the enumeration cap {cap}")]
    EnumerationTooLarge { count: u128, cap: u128 },
    #[error("code must be nonempty and of constant dimension")]
    InvalidCode,

    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("polynomial is not monic or has degree 0")]
    NotMonic,
    #[error("{t} does not divide the group order {order}")]
    NotADivisor { t: u64, order: u64 },
    #[error("group degree {group} does not match ambient dimension {ambient}")]
    DegreeMismatch { group: usize, ambient: usize },

    #[error("subspaces are not strictly nested at position {0}")]
    NotNested(usize),
    #[error("bad type vector: {0}")]
    BadType(String),
    #[error("flags or codes have different type vectors")]
    TypeMismatch,
    #[error("position {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("union of {expected} flags expected from disjoint orbits, got {actual}")]
    AdditivityViolated { expected: usize, actual: usize },

    #[error("gcd condition failed: {0}")]
    GcdConditionFailed(String),
    #[error("k={0} is too small; the full-type construction needs k > 1")]
    KTooSmall(usize),
    #[error("rank deficient: {0}")]
    RankDeficient(String),
    #[error("added row lies in the row space of U, so V does not extend U")]
    NotExtending,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("construction invariant violated: {0}")]
    InvariantViolated(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
