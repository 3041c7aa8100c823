//! Exact arithmetic: rationals and the cyclotomic field `Q(ζ_p)` with its
//! Galois action.

mod context;
mod element;
mod rational;

pub use context::GaloisContext;
pub use element::CycloElement;
pub use rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("cannot invert zero")]
    ZeroInverse,
    #[error("cannot combine elements of Q(ζ_{left}) and Q(ζ_{right})")]
    ContextMismatch { left: u32, right: u32 },
    #[error("expected {expected} coefficients, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("invalid rational {0:?}")]
    ParseRational(String),
}
