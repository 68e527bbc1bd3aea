use std::fmt;

use serde::Serialize;

use crate::cgl::LevelData;
use crate::error::{Error, Result};
use crate::grading::Weight;
use crate::ideals::{is_graded, is_poisson_ideal, Ideal};
use crate::linalg::solve;
use crate::qpoly::{same_ctx, Monomial, Polynomial, Rational};

/// `d = b / c` with `b, c ∈ A`, `c` monic.
#[derive(Clone, Debug, PartialEq)]
pub struct DElement {
    pub numerator: Polynomial,
    pub denominator: Polynomial,
}

/// Cross-multiplied identities a d-element must satisfy, modulo the ideal
/// it was computed over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DChecks {
    /// `σ(d) = λ d`.
    pub sigma_identity: bool,
    /// `δ(d) = −λ d²`.
    pub delta_identity: bool,
    /// `{d, g} = σ(g) d + δ(g)` for every generator `g` of `A`.
    pub relation: bool,
    /// `d` has the weight of `x_k`.
    pub homogeneous: bool,
}

impl DChecks {
    pub fn passed(&self) -> bool {
        self.sigma_identity && self.delta_identity && self.relation && self.homogeneous
    }
}

#[derive(Clone, Debug)]
pub enum DSearch {
    Found { d: DElement, checks: DChecks },
    /// Inconclusive: no candidate within the bound.
    NotFound { denominators_tried: usize },
}

impl DSearch {
    pub fn found(&self) -> Option<&DElement> {
        match self {
            DSearch::Found { d, .. } => Some(d),
            DSearch::NotFound { .. } => None,
        }
    }
}

fn wrap(p: &Polynomial) -> String {
    if p.len() > 1 {
        format!("({p})")
    } else {
        p.to_string()
    }
}

impl fmt::Display for DElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", wrap(&self.numerator), wrap(&self.denominator))
        }
    }
}

impl Serialize for DElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl DElement {
    pub fn zero(l: &LevelData) -> Self {
        DElement { numerator: Polynomial::zero(&l.a_ctx), denominator: Polynomial::one(&l.a_ctx) }
    }

    /// Reduced form of `b / c`: common monomial factors and exact
    /// divisibility cancelled, denominator monic.
    pub fn new(b: Polynomial, c: Polynomial) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroElement);
        }
        let ctx = c.ctx().clone();
        if b.is_zero() {
            return Ok(DElement { numerator: b, denominator: Polynomial::one(&ctx) });
        }
        let g = b.terms().chain(c.terms()).map(|(m, _)| m.clone()).reduce(|x, y| x.gcd(&y)).unwrap();
        let g = Polynomial::term(&ctx, g, Rational::from_integer(1.into()));
        let (mut b, mut c) = (b.div_exact(&g)?.unwrap(), c.div_exact(&g)?.unwrap());
        if let Some(q) = b.div_exact(&c)? {
            b = q;
            c = Polynomial::one(&ctx);
        } else if let Some(q) = c.div_exact(&b)? {
            b = Polynomial::one(&ctx);
            c = q;
        }
        let s = c.leading_coefficient().recip();
        Ok(DElement { numerator: b.scale(&s), denominator: c.scale(&s) })
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Equal as fractions modulo `q`.
    pub fn same_value(&self, other: &DElement, q: Option<&Ideal>) -> Result<bool> {
        let diff = &(&self.numerator * &other.denominator) - &(&other.numerator * &self.denominator);
        match q {
            Some(q) => q.contains_poly(&diff),
            None => Ok(diff.is_zero()),
        }
    }

    pub fn validate(&self, l: &LevelData, q: Option<&Ideal>) -> Result<DChecks> {
        let zero = |f: &Polynomial| -> Result<bool> {
            match q {
                Some(q) => q.contains_poly(f),
                None => Ok(f.is_zero()),
            }
        };
        let (b, c) = (&self.numerator, &self.denominator);
        let bc = b * c;
        let lambda = &l.lambda;
        let sigma_identity =
            zero(&(&(&(&l.sigma.apply(b)? * c) - &(b * &l.sigma.apply(c)?)) - &bc.scale(lambda)))?;
        let delta_identity =
            zero(&(&(&(&l.delta.apply(b)? * c) - &(b * &l.delta.apply(c)?)) + &(b * b).scale(lambda)))?;
        let mut relation = true;
        for j in 0..l.a_ctx.len() {
            let g = Polynomial::var(&l.a_ctx, j);
            let (sg, dg) = (l.sigma.apply(&g)?, l.delta.apply(&g)?);
            let lhs = &(&l.table_a.bracket(b, &g)? * c) - &(b * &l.table_a.bracket(c, &g)?);
            let rhs = &(&sg * &bc) + &(&dg * &(c * c));
            if !zero(&(&lhs - &rhs))? {
                relation = false;
                break;
            }
        }
        let homogeneous = b.is_zero()
            || match (l.grading.weight_of(&b.embed(&l.r_ctx)?), l.grading.weight_of(&c.embed(&l.r_ctx)?)) {
                (Some(wb), Some(wc)) => {
                    let wx = l.grading.weight(l.k - 1);
                    wb.iter().zip(&wc).zip(wx).all(|((x, y), z)| x - y == *z)
                }
                _ => false,
            };
        Ok(DChecks { sigma_identity, delta_identity, relation, homogeneous })
    }
}

/// `d = δ(a) / (λ s a)` for a homogeneous Poisson-normal `a` with
/// `s = s_max(a) > 0`.
pub fn d_element_from_normal(l: &LevelData, a: &Polynomial, s: usize) -> Result<(DElement, DChecks)> {
    if s == 0 {
        return Err(Error::Precondition(format!("δ({a}) = 0, so {a} yields no d-element")));
    }
    let c = a.scale(&(&l.lambda * Rational::from_integer(s.into())));
    let d = DElement::new(l.delta.apply(a)?, c)?;
    let checks = d.validate(l, None)?;
    Ok((d, checks))
}

pub fn d_element_search(l: &LevelData, modulo: &Ideal, degree_bound: usize) -> Result<DSearch> {
    d_element_search_with(l, modulo, degree_bound, &[])
}

/// Bounded search for `d = b/c` over `A/Q`.
///
/// Denominators are products of at most `degree_bound` elements from the
/// pool (the generators of `A` plus `extra`, restricted to homogeneous
/// elements that are Poisson-normal and nonzero modulo `Q`). For each `c`,
/// `b` ranges over standard monomials of weight `deg c + deg x_k` and
/// degree at most `deg c + degree_bound`, and the defining relation
/// `{b, g} c − b {c, g} − σ(g) b c = δ(g) c²` is solved as a linear system.
pub fn d_element_search_with(
    l: &LevelData,
    modulo: &Ideal,
    degree_bound: usize,
    extra: &[Polynomial],
) -> Result<DSearch> {
    if !same_ctx(modulo.ctx(), &l.a_ctx) {
        return Err(Error::ContextMismatch);
    }
    let n = l.a_ctx.len();
    let q = (!modulo.is_zero_ideal()).then_some(modulo);
    let reduce = |f: &Polynomial| -> Result<Polynomial> {
        match q {
            Some(q) => q.normal_form(f),
            None => Ok(f.clone()),
        }
    };
    let gens: Vec<Polynomial> = (0..n).map(|j| Polynomial::var(&l.a_ctx, j)).collect();
    let deltas: Vec<Polynomial> = gens.iter().map(|g| l.delta.apply(g)).collect::<Result<_>>()?;
    if deltas.iter().map(&reduce).collect::<Result<Vec<_>>>()?.iter().all(Polynomial::is_zero) {
        let d = DElement::zero(l);
        let checks = d.validate(l, q)?;
        return Ok(DSearch::Found { d, checks });
    }

    let mut pool: Vec<Polynomial> = Vec::new();
    for p in gens.iter().chain(extra) {
        let p = p.embed(&l.a_ctx)?;
        if p.is_constant() || reduce(&p)?.is_zero() || pool.contains(&p) {
            continue;
        }
        if l.grading.weight_of(&p.embed(&l.r_ctx)?).is_none() {
            continue;
        }
        if l.table_a.is_poisson_normal(&p, q)?.normal {
            pool.push(p);
        }
    }

    let mut denominators = vec![Polynomial::one(&l.a_ctx)];
    let mut frontier = vec![(Polynomial::one(&l.a_ctx), 0usize)];
    for _ in 0..degree_bound {
        let mut next = Vec::new();
        for (c, start) in &frontier {
            for (i, p) in pool.iter().enumerate().skip(*start) {
                let cp = c * p;
                if !reduce(&cp)?.is_zero() {
                    denominators.push(cp.clone());
                    next.push((cp, i));
                }
            }
        }
        frontier = next;
    }
    denominators.sort_by_key(|c| c.total_degree().unwrap_or(0));

    let basis = modulo.basis()?.to_vec();
    let leads: Vec<Monomial> = basis.iter().filter_map(|g| g.leading().map(|(m, _)| m.clone())).collect();
    let wx = l.grading.weight(l.k - 1).to_vec();
    for c in &denominators {
        let wc = l.grading.weight_of(&c.embed(&l.r_ctx)?).expect("products of homogeneous elements");
        let wb: Weight = wc.iter().zip(&wx).map(|(a, b)| a + b).collect();
        let max_deg = c.total_degree().unwrap_or(0) as usize + degree_bound;
        let monos: Vec<Monomial> = monomials_up_to(n, max_deg)
            .into_iter()
            .filter(|m| !leads.iter().any(|lm| m.divisible_by(lm)))
            .filter(|m| l.grading.monomial_weight(m) == wb)
            .collect();
        if monos.is_empty() {
            continue;
        }
        if let Some(b) = solve_numerator(l, c, &monos, &reduce)? {
            let d = DElement::new(b, c.clone())?;
            let checks = d.validate(l, q)?;
            if checks.passed() {
                return Ok(DSearch::Found { d, checks });
            }
        }
    }
    Ok(DSearch::NotFound { denominators_tried: denominators.len() })
}

fn monomials_up_to(n: usize, deg: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0i32; n];
    fn rec(i: usize, left: usize, cur: &mut Vec<i32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            out.push(Monomial::from_exponents(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e as i32;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, deg, &mut cur, &mut out);
    out
}

/// Solves for `b = Σ β_m m` and returns it, or `None` if inconsistent or
/// only `b = 0` solves.
fn solve_numerator<F>(l: &LevelData, c: &Polynomial, monos: &[Monomial], reduce: &F) -> Result<Option<Polynomial>>
where
    F: Fn(&Polynomial) -> Result<Polynomial>,
{
    let ctx = &l.a_ctx;
    let one = Rational::from_integer(1.into());
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for j in 0..ctx.len() {
        let g = Polynomial::var(ctx, j);
        let sg = l.sigma.apply(&g)?;
        let cg = l.table_a.bracket(c, &g)?;
        let images: Vec<Polynomial> = monos
            .iter()
            .map(|m| {
                let mp = Polynomial::term(ctx, m.clone(), one.clone());
                let e = &(&(&l.table_a.bracket(&mp, &g)? * c) - &(&mp * &cg)) - &(&(&sg * &mp) * c);
                reduce(&e)
            })
            .collect::<Result<_>>()?;
        let target = reduce(&(&l.delta.apply(&g)? * &(c * c)))?;
        let mut support: Vec<Monomial> =
            images.iter().chain(std::iter::once(&target)).flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
        support.sort();
        support.dedup();
        for s in &support {
            rows.push(images.iter().map(|p| p.coefficient(s)).collect());
            rhs.push(target.coefficient(s));
        }
    }
    let Some(sol) = solve(&rows, &rhs, monos.len()) else {
        return Ok(None);
    };
    let b = Polynomial::from_terms(ctx, monos.iter().cloned().zip(sol.particular));
    Ok((!b.is_zero()).then_some(b))
}

/// `(⟨c X − b⟩ + P₀ R) : c^∞`, or `⟨X⟩ + P₀ R` when `d = 0`, checked to be
/// Poisson, graded, and to contract to `P₀`.
pub fn second_lift(l: &LevelData, p0: &Ideal, d: &DElement) -> Result<Ideal> {
    let r = &l.r_ctx;
    let base = p0.embed(r)?;
    let ideal = if d.is_zero() {
        base.with_generators(vec![l.x()])?
    } else {
        let (b, c) = (d.numerator.embed(r)?, d.denominator.embed(r)?);
        base.with_generators(vec![&(&c * &l.x()) - &b])?.saturate(&c)?
    }
    .canonical()?;
    if !is_poisson_ideal(&l.table_r, &ideal)? {
        return Err(Error::Precondition(format!("lift of {d} is not a Poisson ideal")));
    }
    if !is_graded(&l.grading, &ideal)? {
        return Err(Error::Precondition(format!("lift of {d} is not graded")));
    }
    if !ideal.contract(&l.a_ctx)?.same_as(p0)? {
        return Err(Error::Precondition(format!("lift of {d} does not contract to the base ideal")));
    }
    Ok(ideal)
}
