//! Gröbner bases and the ideal operations built on them.

mod chain;
mod groebner;
mod ideal;
mod poisson;

pub use chain::{chain_report, primality, ChainReport, IdealReport, Primality};
pub use groebner::{groebner_basis, leading_monomial, lift, normal_form, s_polynomial, MonomialOrder, DEFAULT_STEP_BUDGET};
pub use ideal::{Ideal, Membership};
pub use poisson::{h_core, is_graded, is_poisson_ideal, poisson_closure, poisson_witness, Closure};
