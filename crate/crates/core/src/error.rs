use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point {z} is not inside the open unit disk")]
    OutsideDisk { z: Complex64 },

    #[error("series must have order at least 1")]
    EmptySeries,

    #[error("coefficient {index} is not finite")]
    NonFinite { index: usize },

    #[error("constant term must be {expected}, found {found}")]
    ConstantTerm { expected: f64, found: Complex64 },

    #[error("series is not normalized (needs c0 = 0, c1 = 1)")]
    NotNormalized,

    #[error("section index {n} is out of range for a series of order {order}")]
    SectionIndex { n: usize, order: usize },

    #[error("{quantity} vanishes at {z} (modulus {modulus:e})")]
    Singular {
        quantity: &'static str,
        z: Complex64,
        modulus: f64,
    },

    #[error("{name} = {value} is outside {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid parameters: {0}")]
    Invalid(String),

    #[error("series summation did not converge within {terms} terms")]
    SlowConvergence { terms: usize },
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, domain: &'static str) -> Self {
        Error::Domain { name, value, domain }
    }
}
