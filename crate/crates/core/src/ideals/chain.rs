use serde::Serialize;

use super::poisson::{is_graded, is_poisson_ideal};
use super::Ideal;
use crate::cgl::PoissonPresentation;
use crate::error::{Error, Result};
use crate::qpoly::Polynomial;

/// Whether primality was checked or is taken from the theory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Primality {
    Verified,
    Asserted,
}

/// Primality is verified for ideals generated by variables and for
/// principal ideals whose generator is linear in some variable `x` as
/// `u x + v` with `u` and `v` visibly coprime (one of them a nonzero
/// constant, or `u` a monomial none of whose variables divides `v`).
/// Everything else is reported as asserted.
pub fn primality(ideal: &Ideal) -> Result<Primality> {
    if ideal.is_unit()? {
        return Err(Error::Precondition("the unit ideal is not prime".into()));
    }
    if ideal.variable_generators()?.is_some() {
        return Ok(Primality::Verified);
    }
    let basis = ideal.basis()?;
    if basis.len() == 1 && linear_irreducible(&basis[0]) {
        return Ok(Primality::Verified);
    }
    Ok(Primality::Asserted)
}

fn linear_irreducible(f: &Polynomial) -> bool {
    if f.total_degree() == Some(1) {
        return true;
    }
    f.variables().into_iter().any(|x| {
        if f.degree_in(x) != Some(1) {
            return false;
        }
        let (u, v) = (f.coeff_in(x, 1), f.coeff_in(x, 0));
        if u.is_constant() || v.is_constant() {
            return !v.is_zero();
        }
        u.is_monomial() && u.variables().into_iter().all(|y| v.terms().any(|(m, _)| m.exp(y) == 0))
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealReport {
    pub generators: Vec<String>,
    pub poisson: bool,
    pub h_stable: bool,
    pub dimension: usize,
    pub prime: Primality,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub length: usize,
    pub ideals: Vec<IdealReport>,
    /// Krull-dimension drop across each link.
    pub drops: Vec<usize>,
    /// All drops equal 1, i.e. the chain is saturated in the prime spectrum.
    pub saturated_in_spec: bool,
    pub all_poisson: bool,
    pub all_h_stable: bool,
}

/// Poisson and torus stability, quotient dimensions and dimension drops
/// along a strictly increasing chain of ideals.
pub fn chain_report(p: &PoissonPresentation, chain: &[Ideal]) -> Result<ChainReport> {
    if chain.is_empty() {
        return Err(Error::Input("empty chain".into()));
    }
    for w in chain.windows(2) {
        if !w[1].contains(&w[0])? || w[0].contains(&w[1])? {
            return Err(Error::Input("ideals do not form a strictly increasing chain".into()));
        }
    }
    let mut ideals = Vec::with_capacity(chain.len());
    for i in chain {
        ideals.push(IdealReport {
            generators: i.basis_strings()?,
            poisson: is_poisson_ideal(p.table(), i)?,
            h_stable: is_graded(p.grading(), i)?,
            dimension: i.dimension()?,
            prime: primality(i)?,
        });
    }
    let drops: Vec<usize> = ideals.windows(2).map(|w| w[0].dimension - w[1].dimension).collect();
    Ok(ChainReport {
        length: chain.len() - 1,
        saturated_in_spec: drops.iter().all(|&d| d == 1),
        all_poisson: ideals.iter().all(|r| r.poisson),
        all_h_stable: ideals.iter().all(|r| r.h_stable),
        drops,
        ideals,
    })
}
