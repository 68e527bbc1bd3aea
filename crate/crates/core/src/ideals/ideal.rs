use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use super::groebner::{groebner_basis, normal_form, MonomialOrder, DEFAULT_STEP_BUDGET};
use crate::error::{Error, Result};
use crate::qpoly::{same_ctx, Ctx, Polynomial};

/// Ideal of a polynomial ring, with a lazily computed and then frozen
/// reduced Gröbner basis for the graded reverse lexicographic order.
pub struct Ideal {
    ctx: Ctx,
    generators: Vec<Polynomial>,
    step_budget: u64,
    basis: OnceLock<Vec<Polynomial>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let basis = OnceLock::new();
        if let Some(b) = self.basis.get() {
            let _ = basis.set(b.clone());
        }
        Ideal { ctx: self.ctx.clone(), generators: self.generators.clone(), step_budget: self.step_budget, basis }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Membership {
    pub is_member: bool,
    pub normal_form: Polynomial,
}

impl Ideal {
    pub fn new(ctx: &Ctx, generators: Vec<Polynomial>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if !same_ctx(g.ctx(), ctx) {
                return Err(Error::ContextMismatch);
            }
            if g.has_negative_exponents() {
                return Err(Error::NotPolynomial);
            }
            if !g.is_zero() {
                gens.push(g.with_ctx(ctx)?);
            }
        }
        Ok(Ideal { ctx: ctx.clone(), generators: gens, step_budget: DEFAULT_STEP_BUDGET, basis: OnceLock::new() })
    }

    pub fn zero(ctx: &Ctx) -> Self {
        Ideal { ctx: ctx.clone(), generators: Vec::new(), step_budget: DEFAULT_STEP_BUDGET, basis: OnceLock::new() }
    }

    pub fn unit(ctx: &Ctx) -> Self {
        Self::new(ctx, vec![Polynomial::one(ctx)]).expect("unit ideal")
    }

    /// Ideal generated by the listed variables.
    pub fn of_variables(ctx: &Ctx, vars: &[usize]) -> Self {
        Self::new(ctx, vars.iter().map(|&i| Polynomial::var(ctx, i)).collect()).expect("variables")
    }

    pub fn with_budget(mut self, steps: u64) -> Self {
        self.step_budget = steps;
        self.basis = OnceLock::new();
        self
    }

    pub fn step_budget(&self) -> u64 {
        self.step_budget
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Reduced Gröbner basis in graded reverse lexicographic order.
    pub fn basis(&self) -> Result<&[Polynomial]> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let b = groebner_basis(&self.ctx, &self.generators, &MonomialOrder::GrevLex, self.step_budget)?;
        Ok(self.basis.get_or_init(|| b))
    }

    pub fn basis_in(&self, order: &MonomialOrder) -> Result<Vec<Polynomial>> {
        if *order == MonomialOrder::GrevLex {
            return Ok(self.basis()?.to_vec());
        }
        groebner_basis(&self.ctx, &self.generators, order, self.step_budget)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ctx(f.ctx(), &self.ctx) {
            return Err(Error::ContextMismatch);
        }
        if f.has_negative_exponents() {
            return Err(Error::NotPolynomial);
        }
        normal_form(f, self.basis()?, &MonomialOrder::GrevLex).with_ctx(&self.ctx)
    }

    pub fn member(&self, f: &Polynomial) -> Result<Membership> {
        let nf = self.normal_form(f)?;
        Ok(Membership { is_member: nf.is_zero(), normal_form: nf })
    }

    pub fn contains_poly(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        for g in other.generators() {
            if !self.contains_poly(&g.embed(&self.ctx)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals, by comparing reduced bases.
    pub fn same_as(&self, other: &Ideal) -> Result<bool> {
        if !same_ctx(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(self.basis()? == other.basis()?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.basis()?.iter().any(Polynomial::is_constant))
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn with_generators(&self, extra: Vec<Polynomial>) -> Result<Ideal> {
        let mut g = self.generators.clone();
        g.extend(extra);
        Ok(Ideal::new(&self.ctx, g)?.with_budget(self.step_budget))
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        let extra = other.generators.iter().map(|g| g.embed(&self.ctx)).collect::<Result<Vec<_>>>()?;
        self.with_generators(extra)
    }

    /// Same ideal, generated by its reduced basis.
    pub fn canonical(&self) -> Result<Ideal> {
        let b = self.basis()?.to_vec();
        let out = Ideal::new(&self.ctx, b.clone())?.with_budget(self.step_budget);
        let _ = out.basis.set(b);
        Ok(out)
    }

    /// Extension to a ring whose variables include this ring's.
    pub fn embed(&self, target: &Ctx) -> Result<Ideal> {
        let g = self.generators.iter().map(|p| p.embed(target)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(target, g)?.with_budget(self.step_budget))
    }

    /// `I ∩ ℚ[keep]`, still expressed in this ring.
    pub fn eliminate(&self, keep: &[usize]) -> Result<Ideal> {
        let order = MonomialOrder::eliminating(self.ctx.len(), keep);
        let b = self.basis_in(&order)?;
        let kept: Vec<Polynomial> =
            b.into_iter().filter(|g| (0..self.ctx.len()).all(|i| keep.contains(&i) || !g.uses_var(i))).collect();
        Ok(Ideal::new(&self.ctx, kept)?.with_budget(self.step_budget))
    }

    /// Contraction to the subring on the variables of `sub`, returned in
    /// `sub`'s context.
    pub fn contract(&self, sub: &Ctx) -> Result<Ideal> {
        let keep: Vec<usize> = sub
            .names()
            .iter()
            .map(|n| self.ctx.index_of(n).ok_or_else(|| Error::UnknownVariable(n.clone())))
            .collect::<Result<_>>()?;
        let e = self.eliminate(&keep)?;
        let g = e.generators.iter().map(|p| p.embed(sub)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(sub, g)?.with_budget(self.step_budget))
    }

    /// `I : f^∞`, via `I + ⟨1 - t f⟩` with a fresh variable `t` eliminated.
    pub fn saturate(&self, f: &Polynomial) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::ZeroElement);
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let big: Ctx = Arc::new(self.ctx.extended(&["_t"]));
        let t = Polynomial::var(&big, self.ctx.len());
        let mut gens = self.generators.iter().map(|g| g.embed(&big)).collect::<Result<Vec<_>>>()?;
        gens.push(&Polynomial::one(&big) - &(&t * &f.embed(&big)?));
        let j = Ideal::new(&big, gens)?.with_budget(self.step_budget);
        j.contract(&self.ctx)
    }

    /// `I ∩ K` as `(t I + (1 - t) K) ∩ ℚ[x]`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ctx(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        let big: Ctx = Arc::new(self.ctx.extended(&["_t"]));
        let t = Polynomial::var(&big, self.ctx.len());
        let s = &Polynomial::one(&big) - &t;
        let mut gens = Vec::new();
        for g in &self.generators {
            gens.push(&t * &g.embed(&big)?);
        }
        for g in &other.generators {
            gens.push(&s * &g.embed(&big)?);
        }
        Ideal::new(&big, gens)?.with_budget(self.step_budget).contract(&self.ctx)
    }

    /// Krull dimension of the quotient ring: the largest set of variables
    /// containing the support of no leading monomial of the basis.
    pub fn dimension(&self) -> Result<usize> {
        if self.is_unit()? {
            return Err(Error::Precondition("dimension of the unit ideal is undefined".into()));
        }
        let n = self.ctx.len();
        let leads: Vec<Vec<usize>> = self
            .basis()?
            .iter()
            .map(|g| g.leading().map(|(m, _)| m.support().collect()).unwrap_or_default())
            .collect();
        let mut best = 0;
        for mask in 0u64..(1u64 << n) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let inside = |vars: &Vec<usize>| vars.iter().all(|&v| mask & (1 << v) != 0);
            if !leads.iter().any(inside) {
                best = size;
            }
        }
        Ok(best)
    }

    /// Variable indices when the reduced basis consists of variables.
    pub fn variable_generators(&self) -> Result<Option<Vec<usize>>> {
        let mut out = Vec::new();
        for g in self.basis()? {
            match g.leading() {
                Some((m, c)) if g.is_monomial() && m.degree() == 1 && *c == crate::qpoly::int(1) => {
                    out.push(m.support().next().unwrap());
                }
                _ => return Ok(None),
            }
        }
        out.sort_unstable();
        Ok(Some(out))
    }

    /// Reduced basis printed canonically.
    pub fn basis_strings(&self) -> Result<Vec<String>> {
        Ok(self.basis()?.iter().map(|g| g.to_string()).collect())
    }
}
