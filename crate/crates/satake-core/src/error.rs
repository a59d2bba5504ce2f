use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter list must contain at least one value")]
    EmptyParams,
    #[error("spectral value at index {0} is zero; parameters of an invertible class are nonzero")]
    ZeroValue(usize),
    #[error("spectral value at index {0} is not finite")]
    NonFiniteValue(usize),
    #[error("exterior power {j} out of range 0..={n}")]
    PowerOutOfRange { j: usize, n: usize },
    #[error("rank {n} outside supported range {min}..={max}")]
    RankOutOfRange { n: usize, min: usize, max: usize },
    #[error("rank mismatch: constant table has n = {table}, parameters have n = {params}")]
    RankMismatch { table: usize, params: usize },
    #[error("parameters must be sorted by weakly decreasing modulus")]
    NotSorted,
    #[error("no unitary pairing found within tolerance")]
    NoPairing,
    #[error("prime norm is required for this operation")]
    MissingPrimeNorm,
    #[error("start_j must be 1 or 2, got {0}")]
    BadStartJ(u32),
    #[error("partition length {len} exceeds the number of variables {vars}")]
    PartitionTooLong { len: usize, vars: usize },
    #[error("invalid partition: parts must be positive and weakly decreasing")]
    BadPartition,
    #[error("prime factor {p} of {n} exceeds P_max = {p_max} and the series has no tail value")]
    PrimeOutOfRange { p: u64, n: u64, p_max: u64 },
    #[error("series value at prime {p} is negative or not finite")]
    BadSeriesValue { p: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("euler factor diverges: max modulus squared {max_sq} >= Np^sigma = {threshold}")]
    DivergentFactor { max_sq: f64, threshold: f64 },
    #[error("geometric ratio {0} is >= 1")]
    DivergentGeometric(f64),
    #[error("premise S(X) <= B X^sigma fails at X = {witness_x}: S = {sum}, bound = {bound}")]
    PremiseViolated { witness_x: u64, sum: f64, bound: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid record: {0}")]
    BadRecord(String),
}

pub type Result<T> = std::result::Result<T, Error>;
