//! The Poisson Cauchon map, Poisson-normal elements, d-elements and the
//! enumeration of Poisson H-primes up a Poisson-CGL tower.

mod delement;
mod enumerate;
mod separate;

pub use delement::{d_element_from_normal, d_element_search, d_element_search_with, second_lift, DChecks, DElement, DSearch};
pub use enumerate::{enumerate_hprimes, enumerate_hprimes_with, Branch, HPrimeNode, HPrimeTree};
pub use separate::{separating_normal, Separation, SeparationCase};

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::cgl::{LevelData, PoissonPresentation};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::pbracket::{BracketTable, NormalityReport};
use crate::qpoly::{factorial, Ctx, Monomial, Nilpotency, Polynomial, Rational};

/// `δ^0(a), δ^1(a), …, δ^s(a)` with `δ^{s+1}(a) = 0`.
fn delta_powers(l: &LevelData, a: &Polynomial) -> Result<Vec<Polynomial>> {
    let it = l.delta.iterate(a, l.nilpotency_bound)?;
    match it.nilpotency {
        Nilpotency::Index(_) => {
            let mut p = it.powers;
            p.pop();
            Ok(p)
        }
        Nilpotency::NotWithinBound => Err(Error::NotNilpotent { element: a.to_string(), bound: l.nilpotency_bound }),
    }
}

/// `θ(a) = Σ_l (1/l!) (−1/λ)^l δ^l(a) X^{−l}`, in the Laurent ring.
pub fn theta(l: &LevelData, a: &Polynomial) -> Result<Polynomial> {
    let x = l.x_hat();
    let c = -l.lambda.recip();
    let mut out = Polynomial::zero(&l.hat_ctx);
    for (i, d) in delta_powers(l, a)?.iter().enumerate() {
        let coeff = c.pow(i as i32) / factorial(i);
        out = &out + &(&d.embed(&l.hat_ctx)? * &x.try_powi(-(i as i64))?).scale(&coeff);
    }
    Ok(out)
}

/// Largest `l` with `δ^l(a) ≠ 0`.
pub fn s_max(l: &LevelData, a: &Polynomial) -> Result<usize> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(delta_powers(l, a)?.len() - 1)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ThetaReport {
    pub samples: usize,
    pub passed: bool,
    pub multiplicative_failures: usize,
    pub bracket_failures: usize,
    pub twist_failures: usize,
    /// The first failing pair, if any.
    pub first_failure: Option<[String; 2]>,
}

/// Random element of the ring: up to `terms` terms of total degree at most
/// `degree` with small integer coefficients.
pub fn random_element<R: Rng>(ctx: &Ctx, rng: &mut R, terms: usize, degree: i32) -> Polynomial {
    let n = ctx.len();
    let mut out = Vec::new();
    for _ in 0..rng.gen_range(1..=terms) {
        let mut e = vec![0; n];
        let mut left = rng.gen_range(0..=degree);
        while left > 0 && n > 0 {
            e[rng.gen_range(0..n)] += 1;
            left -= 1;
        }
        let c: i64 = rng.gen_range(-3..=3);
        out.push((Monomial::from_exponents(e), Rational::from_integer(c.into())));
    }
    Polynomial::from_terms(ctx, out)
}

pub fn check_theta(l: &LevelData, samples: usize, seed: u64) -> Result<ThetaReport> {
    check_theta_with(l, samples, seed, Exec::default())
}

/// Checks on random pairs from `A` that `θ` is multiplicative, preserves
/// brackets, and satisfies `{X, θ(a)} = θ(σ(a)) X`.
pub fn check_theta_with(l: &LevelData, samples: usize, seed: u64, exec: Exec) -> Result<ThetaReport> {
    let mut rng = StdRng::seed_from_u64(seed);
    let pairs: Vec<(Polynomial, Polynomial)> = (0..samples)
        .map(|_| (random_element(&l.a_ctx, &mut rng, 3, 2), random_element(&l.a_ctx, &mut rng, 3, 2)))
        .collect();
    let hat = l.table_hat();
    let x = l.x_hat();
    let outcomes = exec.map(&pairs, |(a, b)| -> Result<[bool; 3]> {
        let (ta, tb) = (theta(l, a)?, theta(l, b)?);
        let mult = theta(l, &(a * b))? == &ta * &tb;
        let br = theta(l, &l.table_a.bracket(a, b)?)? == hat.bracket(&ta, &tb)?;
        let tw = hat.bracket(&x, &ta)? == &theta(l, &l.sigma.apply(a)?)? * &x;
        Ok([mult, br, tw])
    });
    let mut r = ThetaReport { samples, ..Default::default() };
    for ((a, b), o) in pairs.iter().zip(outcomes) {
        let [m, br, tw] = o?;
        r.multiplicative_failures += usize::from(!m);
        r.bracket_failures += usize::from(!br);
        r.twist_failures += usize::from(!tw);
        if !(m && br && tw) && r.first_failure.is_none() {
            r.first_failure = Some([a.to_string(), b.to_string()]);
        }
    }
    r.passed = r.multiplicative_failures + r.bracket_failures + r.twist_failures == 0;
    Ok(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalElement {
    pub element: Polynomial,
    pub s: usize,
    /// σ-eigenvalue of the input.
    #[serde(serialize_with = "crate::qpoly::serialize_rational")]
    pub eta: Rational,
    pub normality: NormalityReport,
    /// `{x, X} = −η x X` holds.
    pub commutation: bool,
}

/// `x = θ(a) X^s` for a homogeneous Poisson-normal `a ∈ A`, with its
/// normality certificates in `R`.
pub fn normal_element(l: &LevelData, a: &Polynomial) -> Result<NormalElement> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let w = l
        .grading
        .weight_of(&a.embed(&l.r_ctx)?)
        .ok_or_else(|| Error::Precondition(format!("{a} is not homogeneous")))?;
    if !l.table_a.is_poisson_normal(a, None)?.normal {
        return Err(Error::Precondition(format!("{a} is not Poisson-normal in A")));
    }
    let eta = l.h.pair(&w);
    if l.sigma.apply(a)? != a.scale(&eta) {
        return Err(Error::Precondition(format!("σ({a}) is not {} times {a}", crate::qpoly::format_rational(&eta))));
    }
    let s = s_max(l, a)?;
    let x = lower(l, &(&theta(l, a)? * &l.x_hat().pow(s as u32)))?;
    let normality = l.table_r.is_poisson_normal(&x, None)?;
    let xx = l.x();
    let commutation = l.table_r.bracket(&x, &xx)? == (&x * &xx).scale(&-eta.clone());
    Ok(NormalElement { element: x, s, eta, normality, commutation })
}

/// Moves a Laurent element with no negative powers back into `R`.
fn lower(l: &LevelData, f: &Polynomial) -> Result<Polynomial> {
    if f.has_negative_exponents() {
        return Err(Error::NotPolynomial);
    }
    f.embed(&l.r_ctx)
}

#[derive(Clone, Debug, Serialize)]
pub struct Deletion {
    /// Presentation with every `δ_k = 0` and `{x_k, x_j} = σ_k(x_j) x_k`.
    #[serde(skip)]
    pub presentation: PoissonPresentation,
    /// θ checks for levels `N` down to 2.
    pub steps: Vec<(usize, ThetaReport)>,
}

/// Runs the Cauchon step at levels `N, N−1, …, 2`, each validated by
/// [`check_theta`], and returns the resulting Poisson affine space.
pub fn delete_all(p: &PoissonPresentation, samples: usize, seed: u64) -> Result<Deletion> {
    let mut table = BracketTable::abelian(p.ctx());
    let mut steps = Vec::new();
    for k in (1..=p.len()).rev() {
        let l = p.level(k)?;
        if k >= 2 {
            let r = check_theta(&l, samples, seed)?;
            if !r.passed {
                return Err(Error::Precondition(format!("θ identities fail at level {k}")));
            }
            steps.push((k, r));
        }
        for (j, mu) in l.sigma_eigenvalues.iter().enumerate() {
            if !mu.is_zero() {
                table.set(k - 1, j, (&p.var(k - 1) * &p.var(j)).scale(mu))?;
            }
        }
    }
    let presentation =
        PoissonPresentation::new(p.ctx(), table, p.grading().clone(), p.h().map(<[_]>::to_vec), p.bounds())?;
    Ok(Deletion { presentation, steps })
}
