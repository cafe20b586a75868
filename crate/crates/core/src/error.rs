use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The modulus has a prime factor other than 2 and 3. `Z_q` for such a
    /// prime `q` is not 2-nil-clean: 3 is not a sum of two idempotents and a
    /// nilpotent there.
    #[error(
        "unsupported modulus {modulus}: prime factor {prime} >= 5, and 3 in Z_{prime} \
         is not a sum of two idempotents and a nilpotent (as in Z_5)"
    )]
    UnsupportedModulus { modulus: u64, prime: u64 },

    #[error("unsupported field GF({0}): only GF(2) and GF(3) are handled")]
    UnsupportedField(u64),

    #[error("precondition violated: {0}")]
    Domain(String),

    #[error("ring of size {size} exceeds the enumeration cap of {cap} elements")]
    ResourceCap { size: u128, cap: u128 },

    /// A construction produced output that failed its own verification.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
