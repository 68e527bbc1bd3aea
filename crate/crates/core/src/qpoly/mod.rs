//! Exact rationals and sparse multivariate Laurent polynomials over ℚ.

mod context;
mod derivation;
mod monomial;
mod parse;
mod poly;
mod rational;

pub use context::{Ctx, VarTable};
pub use derivation::{Derivation, Iterates, Nilpotency};
pub use monomial::Monomial;
pub use parse::parse;
pub use poly::{ctx_of, format_monomial, Polynomial};
pub use rational::{format_rational, int, parse_rational, rat, serialize_rational, Rational};

pub(crate) use context::same_ctx;
pub(crate) use monomial::grevlex;
pub(crate) use rational::factorial;
