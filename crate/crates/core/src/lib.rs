//! Exact symbolic computation for Poisson polynomial algebras built as
//! iterated Poisson-Ore extensions (Poisson-CGL extensions).

pub mod error;
pub mod exec;
pub mod qpoly;

pub use error::{Error, Result};
pub use exec::Exec;
pub mod linalg;
pub mod ideals;
pub mod pbracket;
pub mod grading;
pub mod cgl;
pub mod cauchon;
pub mod strata;
pub mod io;
