use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("size bound exceeded: {what} (limit {limit})")]
    SizeExceeded { what: String, limit: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("expected a nonconstant polynomial")]
    ConstantInput,
    #[error("moduli are not pairwise coprime")]
    ModuliNotCoprime,
    #[error("no image given for generator {0}")]
    MissingGenerator(String),
    #[error("modulus {0} does not divide the ring modulus")]
    NotADivisor(String),
    #[error("matrix is not invertible over the residue ring")]
    NotInvertible,
    #[error("group order {num} is not divisible by {den}")]
    NonExactDivision { num: String, den: String },
    #[error("operands live over different coefficient domains")]
    DomainMismatch,
    #[error("coefficient domain is not a field")]
    NotAField,
    #[error("{0} is not irreducible")]
    NotIrreducible(String),
    #[error("prime {prime} divides the level {level}")]
    CharacteristicDividesLevel { prime: String, level: String },
    #[error("torsion not rational over any extension of degree <= {0}")]
    ExtensionCapExceeded(usize),
    #[error("no free A/NA-basis found after {0} draws")]
    BasisSearchFailed(usize),
    #[error("inconsistent linear system: {0}")]
    SolveFailed(String),
    #[error("no good primes in the requested range")]
    NoGoodPrimes,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
