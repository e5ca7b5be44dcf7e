use thiserror::Error;

/// Errors raised by the algebraic carriers and the verifier.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("Weyl group enumeration exceeded {bound} elements")]
    WeylTooLarge { bound: usize },

    #[error("exponential requires a series with zero constant term")]
    NonzeroConstantTerm,

    #[error("series with zero constant term has no inverse")]
    NonUnit,

    #[error("series is not divisible by {form}: nonzero remainder in degree {degree}")]
    NotDivisible { form: String, degree: u32 },

    #[error("insufficient precision: order {needed} requested, only {available} available")]
    InsufficientPrecision { needed: u32, available: u32 },

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
