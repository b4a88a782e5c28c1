use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable index {index} outside window [{lo}, {hi}]")]
    IndexOutsideWindow { index: usize, lo: usize, hi: usize },

    #[error("variable index {0} not representable (indices must lie in 1..=63)")]
    BadIndex(usize),

    #[error("invalid window [{lo}, {hi}]")]
    BadWindow { lo: usize, hi: usize },

    #[error("variable x{0} repeated in a monomial; only multiaffine polynomials are supported")]
    NotMultiaffine(usize),

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("{count} strict variables exceed the search bound of {max}")]
    TooManyVariables { count: usize, max: usize },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("value {0} repeated in permutation")]
    DuplicateValue(usize),

    #[error("value {value} out of range for a permutation of length {len}")]
    ValueOutOfRange { value: usize, len: usize },

    #[error("value {0} missing from permutation")]
    MissingValue(usize),

    #[error("{what} = {value} outside supported range [{lo}, {hi}]")]
    OutOfCap {
        what: &'static str,
        value: usize,
        lo: usize,
        hi: usize,
    },

    #[error("set {set} not contained in [{lo}, {hi}]")]
    SetOutOfRange { set: String, lo: usize, hi: usize },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_cap(what: &'static str, value: usize, lo: usize, hi: usize) -> Result<()> {
    if value < lo || value > hi {
        return Err(Error::OutOfCap {
            what,
            value,
            lo,
            hi,
        });
    }
    Ok(())
}
