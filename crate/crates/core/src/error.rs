use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid cyclotomic modulus {0}: need m >= 3 and m != 2 (mod 4)")]
    InvalidModulus(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} divides the modulus {m} (ramified primes are excluded)")]
    RamifiedPrime { p: u64, m: u64 },
    #[error("index {value} out of range {lo}..={hi}")]
    OutOfRange { value: i64, lo: i64, hi: i64 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("residue {k} is not a unit modulo {m}")]
    NotAUnit { k: u64, m: u64 },
    #[error("not a CM type: {0}")]
    NotACmType(String),
    #[error("elements live in different fields: Q(zeta_{0}) and Q(zeta_{1})")]
    FieldMismatch(u64, u64),
    #[error("gram matrix is not skew-Hermitian at entry ({row}, {col})")]
    NotSkewHermitian { row: usize, col: usize },
    #[error("form is singular at embedding sigma_{0}")]
    SingularAtEmbedding(u64),
    #[error("could not certify a sign at embedding sigma_{0} within the precision cap")]
    PrecisionExhausted(u64),
    #[error("degenerate form: determinant is zero")]
    DegenerateForm,
    #[error("zero where a unit is required")]
    ZeroScalar,
    #[error("matrix is not a similitude of the form")]
    NotASimilitude,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(value: usize, lo: usize, hi: usize) -> Result<()> {
    if value < lo || value > hi {
        return Err(Error::OutOfRange {
            value: value as i64,
            lo: lo as i64,
            hi: hi as i64,
        });
    }
    Ok(())
}
