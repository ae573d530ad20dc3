use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: must satisfy 2 <= n <= 2^63 - 1")]
    InvalidModulus(u64),

    #[error("Z_{0} has no zero divisors")]
    NoZeroDivisors(u64),

    #[error("{value} is not a nonzero zero divisor of Z_{n}")]
    NotZeroDivisor { value: u64, n: u64 },

    #[error("{vertices} vertices exceed the dense cap of {cap}; use the class-reduced spectrum")]
    DenseCapExceeded { vertices: usize, cap: usize },

    #[error("block spec covers {expected} vertices but the matrix has order {actual}")]
    BlockSpecMismatch { expected: usize, actual: usize },

    #[error("unknown export format `{0}` (expected `dot` or `csv`)")]
    UnknownFormat(String),

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("primes must be distinct (got p = q = {0})")]
    EqualPrimes(u64),

    #[error("formula bracket {bracket} is odd; the halved value is not an integer")]
    NonIntegral { bracket: i128 },

    #[error("graph is disconnected: {unreachable_pairs} unordered pairs are unreachable")]
    Disconnected { unreachable_pairs: u64 },

    #[error("distances between classes {first} and {second} are not uniform")]
    NonUniformClassDistance { first: u64, second: u64 },

    #[error("class distance table is missing the entry for classes {first} and {second}")]
    IncompleteTable { first: u64, second: u64 },

    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
