use serde::Serialize;

use super::delta_powers;
use crate::cgl::{LevelData, PoissonPresentation};
use crate::error::{Error, Result};
use crate::ideals::{Ideal, MonomialOrder};
use crate::qpoly::{factorial, same_ctx, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeparationCase {
    /// `P` is not generated by its contraction.
    NotInduced,
    /// `P` is induced and `Q` is strictly larger over `A`.
    BaseGrows,
    /// `P` is induced and both contract to the same ideal of `A`.
    SameBase,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Separation {
    Found { u: Polynomial, case: SeparationCase },
    Inconclusive { reason: String },
}

impl Separation {
    pub fn found(&self) -> Option<&Polynomial> {
        match self {
            Separation::Found { u, .. } => Some(u),
            Separation::Inconclusive { .. } => None,
        }
    }
}

/// A homogeneous element of `Q \ P` that is Poisson-normal modulo `P`,
/// for Poisson H-primes `P ⊊ Q` of the full algebra.
pub fn separating_normal(pres: &PoissonPresentation, p: &Ideal, q: &Ideal) -> Result<Separation> {
    if !same_ctx(p.ctx(), pres.ctx()) || !same_ctx(q.ctx(), pres.ctx()) {
        return Err(Error::ContextMismatch);
    }
    if !q.contains(p)? || p.same_as(q)? {
        return Err(Error::Precondition("expected a strict inclusion P ⊊ Q".into()));
    }
    let l = pres.level(pres.len())?;
    let p0 = p.contract(&l.a_ctx)?;
    let q0 = q.contract(&l.a_ctx)?;
    let induced = p.same_as(&p0.embed(&l.r_ctx)?)?;
    let (case, pool) = if !induced {
        let j = x_coefficients(&l, p)?;
        (SeparationCase::NotInduced, j.intersect(&q0)?)
    } else if !q0.same_as(&p0)? {
        (SeparationCase::BaseGrows, q0.clone())
    } else {
        (SeparationCase::SameBase, x_coefficients(&l, q)?)
    };
    let mut cands = candidates(&l, &pool, &p0)?;
    if case == SeparationCase::SameBase && pool.is_unit()? {
        cands.insert(0, Polynomial::one(&l.a_ctx));
    }
    let pmod = (!p.is_zero_ideal()).then_some(p);
    for a in &cands {
        let u = match case {
            SeparationCase::NotInduced => a.embed(&l.r_ctx)?,
            SeparationCase::BaseGrows => theta_times_power(&l, a, &p0)?,
            SeparationCase::SameBase => {
                let u = theta_times_power(&l, a, &p0)?;
                if u.uses_var(l.k - 1) {
                    u
                } else {
                    l.x()
                }
            }
        };
        if u.is_zero() || !q.contains_poly(&u)? || p.contains_poly(&u)? {
            continue;
        }
        if l.grading.weight_of(&u).is_none() {
            continue;
        }
        if l.table_r.is_poisson_normal(&u, pmod)?.normal {
            return Ok(Separation::Found { u, case });
        }
    }
    Ok(Separation::Inconclusive { reason: format!("none of {} candidates separates", cands.len()) })
}

/// Ideal of `A` generated by the `X`-free elements and the `X`-leading
/// coefficients of the `X`-linear elements of a Gröbner basis with `X`
/// in the larger block.
fn x_coefficients(l: &LevelData, ideal: &Ideal) -> Result<Ideal> {
    let n = l.r_ctx.len();
    let xi = n - 1;
    let order = MonomialOrder::eliminating(n, &(0..xi).collect::<Vec<_>>());
    let mut gens = Vec::new();
    for g in ideal.basis_in(&order)? {
        match g.degree_in(xi) {
            Some(0) => gens.push(g.embed(&l.a_ctx)?),
            Some(1) => gens.push(g.coeff_in(xi, 1).embed(&l.a_ctx)?),
            _ => {}
        }
    }
    Ok(Ideal::new(&l.a_ctx, gens)?.with_budget(ideal.step_budget()))
}

/// Homogeneous elements of `pool` outside `p0` that are Poisson-normal
/// modulo `p0`: basis elements, generators, and pairwise products.
fn candidates(l: &LevelData, pool: &Ideal, p0: &Ideal) -> Result<Vec<Polynomial>> {
    let mut base: Vec<Polynomial> = pool.basis()?.to_vec();
    for g in pool.generators() {
        if !base.contains(g) {
            base.push(g.clone());
        }
    }
    let mut all = base.clone();
    for i in 0..base.len() {
        for j in i..base.len() {
            all.push(&base[i] * &base[j]);
        }
    }
    let modulo = (!p0.is_zero_ideal()).then_some(p0);
    let mut out: Vec<Polynomial> = Vec::new();
    for c in all {
        if c.is_constant() || out.contains(&c) || p0.contains_poly(&c)? {
            continue;
        }
        if l.grading.weight_of(&c.embed(&l.r_ctx)?).is_none() {
            continue;
        }
        if l.table_a.is_poisson_normal(&c, modulo)?.normal {
            out.push(c);
        }
    }
    out.sort_by_key(|c| c.total_degree().unwrap_or(0));
    Ok(out)
}

/// `θ(a) X^s` computed with every δ-iterate reduced modulo `p0`, where `s`
/// is the last iterate that survives.
fn theta_times_power(l: &LevelData, a: &Polynomial, p0: &Ideal) -> Result<Polynomial> {
    let powers = if p0.is_zero_ideal() {
        delta_powers(l, a)?
    } else {
        let mut out = vec![p0.normal_form(a)?];
        loop {
            let next = p0.normal_form(&l.delta.apply(out.last().unwrap())?)?;
            if next.is_zero() {
                break;
            }
            if out.len() > l.nilpotency_bound {
                return Err(Error::NotNilpotent { element: a.to_string(), bound: l.nilpotency_bound });
            }
            out.push(next);
        }
        out
    };
    let s = powers.len() - 1;
    let x = l.x();
    let c = -l.lambda.recip();
    let mut u = Polynomial::zero(&l.r_ctx);
    for (i, d) in powers.iter().enumerate() {
        let coeff = c.pow(i as i32) / factorial(i);
        u = &u + &(&d.embed(&l.r_ctx)? * &x.pow((s - i) as u32)).scale(&coeff);
    }
    Ok(u)
}
