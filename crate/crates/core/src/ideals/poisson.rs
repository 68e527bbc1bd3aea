use std::sync::Arc;

use super::Ideal;
use crate::error::Result;
use crate::grading::GradingData;
use crate::pbracket::BracketTable;
use crate::qpoly::{Ctx, Monomial, Polynomial};

#[derive(Clone, Debug)]
pub struct Closure {
    pub ideal: Ideal,
    /// Elements adjoined, in order; each was the normal form of a bracket
    /// that failed to reduce to zero at the time.
    pub adjoined: Vec<Polynomial>,
}

/// First generator bracket `{x_i, g}`, `g` in the reduced basis, with a
/// nonzero normal form; `None` exactly when the ideal is Poisson.
pub fn poisson_witness(table: &BracketTable, ideal: &Ideal) -> Result<Option<Polynomial>> {
    let ctx = table.ctx();
    for g in ideal.basis()? {
        for i in 0..ctx.len() {
            let b = table.bracket(&Polynomial::var(ctx, i), g)?;
            if b.is_zero() {
                continue;
            }
            let r = ideal.normal_form(&b)?;
            if !r.is_zero() {
                return Ok(Some(r));
            }
        }
    }
    Ok(None)
}

pub fn is_poisson_ideal(table: &BracketTable, ideal: &Ideal) -> Result<bool> {
    Ok(poisson_witness(table, ideal)?.is_none())
}

/// Smallest Poisson ideal containing `ideal`, built by adjoining one
/// non-reducing bracket at a time until every generator bracket reduces
/// to zero.
pub fn poisson_closure(table: &BracketTable, ideal: &Ideal) -> Result<Closure> {
    let mut cur = ideal.clone();
    let mut adjoined = Vec::new();
    while let Some(r) = poisson_witness(table, &cur)? {
        let r = r.primitive();
        cur = cur.with_generators(vec![r.clone()])?;
        adjoined.push(r);
    }
    Ok(Closure { ideal: cur.canonical()?, adjoined })
}

/// Largest graded ideal contained in `ideal`.
///
/// Each generator is rewritten under `x_i ↦ t^{deg x_i} x_i` in fresh
/// variables `t_1..t_r` (cleared of negative powers), the result is
/// saturated at `t_1⋯t_r`, and the `t` are eliminated.
pub fn h_core(grading: &GradingData, ideal: &Ideal) -> Result<Ideal> {
    let r = grading.rank();
    if r == 0 || ideal.is_zero_ideal() {
        return Ok(ideal.clone());
    }
    let ctx = ideal.ctx();
    let n = ctx.len();
    let tnames: Vec<String> = (1..=r).map(|i| format!("_t{i}")).collect();
    let big: Ctx = Arc::new(ctx.extended(&tnames));
    let mut gens = Vec::new();
    for g in ideal.generators() {
        let weights: Vec<Vec<i64>> = g.terms().map(|(m, _)| grading.monomial_weight(m)).collect();
        let low: Vec<i64> = (0..r).map(|k| weights.iter().map(|w| w[k]).min().unwrap_or(0)).collect();
        let terms = g.terms().zip(&weights).map(|((m, c), w)| {
            let mut e = m.exponents().to_vec();
            e.resize(n, 0);
            e.extend(w.iter().zip(&low).map(|(x, l)| (x - l) as i32));
            (Monomial::from_exponents(e), c.clone())
        });
        gens.push(Polynomial::from_terms(&big, terms));
    }
    let t_all = (n..n + r).fold(Polynomial::one(&big), |acc, i| &acc * &Polynomial::var(&big, i));
    let j = Ideal::new(&big, gens)?.with_budget(ideal.step_budget());
    j.saturate(&t_all)?.contract(ctx)?.canonical()
}

/// Every reduced-basis element is homogeneous.
pub fn is_graded(grading: &GradingData, ideal: &Ideal) -> Result<bool> {
    Ok(ideal.basis()?.iter().all(|g| grading.is_homogeneous(g)))
}
