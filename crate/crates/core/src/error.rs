use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order p^e is too large for 64-bit arithmetic")]
    FieldTooLarge,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial must be non-constant")]
    ConstantPolynomial,
    #[error("modulus has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("modulus is reducible over F_{0}")]
    Reducible(u64),
    #[error("characteristic must be odd")]
    EvenCharacteristic,
    #[error("coefficient vector has {found} entries, expected {expected}")]
    BadCoefficients { expected: usize, found: usize },
    #[error("residue {value} out of range mod {p}")]
    ResidueOutOfRange { value: u64, p: u64 },
    #[error("zero has no multiplicative order")]
    ZeroElement,
    #[error("matrix is singular")]
    Singular,
    #[error("cannot parse polynomial `{0}`")]
    Parse(String),
    #[error("order {n} divides neither q-1 nor q+1")]
    NoSuchTorus { n: u64 },
    #[error("only {found} distinct traces of order {n}, {wanted} requested")]
    TooFewTraces { n: u64, wanted: usize, found: usize },
    #[error("closure exceeded the bound of {bound} elements ({partial} found)")]
    BoundExceeded { bound: usize, partial: usize },
    #[error("element is not in the group")]
    NotInGroup,
    #[error("group order {order} exceeds the exhaustive search limit {limit}")]
    TooLargeForSearch { order: usize, limit: usize },
    #[error("Riemann-Hurwitz count is not an even integer: {0}")]
    NonIntegralGenus(String),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("no recipe parameter found: {0}")]
    NoWitness(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
