//! Poisson brackets determined by their values on pairs of generators.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::ideals::{lift, Ideal};
use crate::qpoly::{same_ctx, Ctx, Derivation, Polynomial};

/// Generator brackets `{x_i, x_j}` for `i > j`; the rest follow from
/// antisymmetry.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketTable {
    ctx: Ctx,
    entries: BTreeMap<(usize, usize), Polynomial>,
}

/// A nonvanishing identity check on a tuple of generators.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residual {
    pub generators: Vec<String>,
    pub residual: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub passed: bool,
    pub failures: Vec<Residual>,
}

impl CheckReport {
    fn from_failures(failures: Vec<Residual>) -> Self {
        CheckReport { passed: failures.is_empty(), failures }
    }
}

/// Outcome of a Poisson-normality test. `quotients[i]` is `s_i` with
/// `{c, x_i} ≡ s_i c`, or `None` for the generators where no such `s_i`
/// exists.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalityReport {
    pub normal: bool,
    pub quotients: Vec<Option<Polynomial>>,
}

impl BracketTable {
    /// The zero bracket.
    pub fn abelian(ctx: &Ctx) -> Self {
        BracketTable { ctx: ctx.clone(), entries: BTreeMap::new() }
    }

    /// Builds a table from `((i, j), {x_i, x_j})` with 0-based indices.
    /// Pairs with `i < j` are stored negated; `i == j` must map to zero.
    pub fn from_entries<I>(ctx: &Ctx, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), Polynomial)>,
    {
        let mut t = Self::abelian(ctx);
        for ((i, j), p) in entries {
            t.set(i, j, p)?;
        }
        Ok(t)
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) -> Result<()> {
        let n = self.ctx.len();
        if i >= n || j >= n {
            return Err(Error::Input(format!("bracket index ({}, {}) out of range", i + 1, j + 1)));
        }
        if !same_ctx(p.ctx(), &self.ctx) {
            return Err(Error::ContextMismatch);
        }
        if i == j {
            if p.is_zero() {
                return Ok(());
            }
            return Err(Error::Input(format!("{{{0}, {0}}} must be zero", self.ctx.name(i))));
        }
        let (key, val) = if i > j { ((i, j), p) } else { ((j, i), -p) };
        if val.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, val.with_ctx(&self.ctx)?);
        }
        Ok(())
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    /// `{x_i, x_j}` for any pair.
    pub fn get(&self, i: usize, j: usize) -> Polynomial {
        if i > j {
            self.entries.get(&(i, j)).cloned().unwrap_or_else(|| Polynomial::zero(&self.ctx))
        } else if i < j {
            self.entries.get(&(j, i)).map(|p| -p).unwrap_or_else(|| Polynomial::zero(&self.ctx))
        } else {
            Polynomial::zero(&self.ctx)
        }
    }

    /// Stored entries `(i, j) ↦ {x_i, x_j}`, `i > j`.
    pub fn entries(&self) -> &BTreeMap<(usize, usize), Polynomial> {
        &self.entries
    }

    pub fn is_abelian(&self) -> bool {
        self.entries.is_empty()
    }

    /// `{f, g} = Σ_{i>j} {x_i, x_j} (∂_i f ∂_j g − ∂_j f ∂_i g)`.
    pub fn bracket(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        if !same_ctx(f.ctx(), &self.ctx) || !same_ctx(g.ctx(), &self.ctx) {
            return Err(Error::ContextMismatch);
        }
        let n = self.ctx.len();
        let df: Vec<Option<Polynomial>> =
            (0..n).map(|i| f.uses_var(i).then(|| f.derivative(i).with_ctx(&self.ctx).unwrap())).collect();
        let dg: Vec<Option<Polynomial>> =
            (0..n).map(|i| g.uses_var(i).then(|| g.derivative(i).with_ctx(&self.ctx).unwrap())).collect();
        let mut out = Polynomial::zero(&self.ctx);
        for (&(i, j), e) in &self.entries {
            let mut inner = Polynomial::zero(&self.ctx);
            if let (Some(a), Some(b)) = (&df[i], &dg[j]) {
                inner = &inner + &(a * b);
            }
            if let (Some(a), Some(b)) = (&df[j], &dg[i]) {
                inner = &inner - &(a * b);
            }
            if !inner.is_zero() {
                out = &out + &(e * &inner);
            }
        }
        Ok(out)
    }

    /// The Hamiltonian derivation `{f, −}`.
    pub fn hamiltonian(&self, f: &Polynomial) -> Result<Derivation> {
        let images = (0..self.ctx.len())
            .map(|i| self.bracket(f, &Polynomial::var(&self.ctx, i)))
            .collect::<Result<Vec<_>>>()?;
        Derivation::from_images(&self.ctx, images)
    }

    /// Same brackets over another ring containing these variables.
    pub fn embed(&self, target: &Ctx) -> Result<BracketTable> {
        let mut out = Self::abelian(target);
        for (&(i, j), p) in &self.entries {
            let ti = target.index_of(self.ctx.name(i)).ok_or_else(|| Error::UnknownVariable(self.ctx.name(i).into()))?;
            let tj = target.index_of(self.ctx.name(j)).ok_or_else(|| Error::UnknownVariable(self.ctx.name(j).into()))?;
            out.set(ti, tj, p.embed(target)?)?;
        }
        Ok(out)
    }

    /// Brackets among the first `k` generators, over `ctx.prefix(k)`.
    /// Entries must not involve later variables.
    pub fn restrict(&self, sub: &Ctx) -> Result<BracketTable> {
        let mut out = Self::abelian(sub);
        for (&(i, j), p) in &self.entries {
            if i < sub.len() {
                out.set(i, j, p.embed(sub)?)?;
            }
        }
        Ok(out)
    }

    fn names(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.ctx.name(i).to_string()).collect()
    }

    pub fn check_jacobi(&self) -> CheckReport {
        self.check_jacobi_with(Exec::default())
    }

    /// Jacobi identity on all generator triples `i > j > k`.
    pub fn check_jacobi_with(&self, exec: Exec) -> CheckReport {
        let n = self.ctx.len();
        let mut triples = Vec::new();
        for i in 0..n {
            for j in 0..i {
                for k in 0..j {
                    triples.push([i, j, k]);
                }
            }
        }
        let results = exec.map(&triples, |&[i, j, k]| {
            let x = |t| Polynomial::var(&self.ctx, t);
            let r = &(&self.bracket(&x(i), &self.get(j, k)).unwrap() + &self.bracket(&x(j), &self.get(k, i)).unwrap())
                + &self.bracket(&x(k), &self.get(i, j)).unwrap();
            (!r.is_zero()).then(|| Residual { generators: self.names(&[i, j, k]), residual: r })
        });
        CheckReport::from_failures(results.into_iter().flatten().collect())
    }

    /// `S({a,b}) = {S(a), b} + {a, S(b)}` on generator pairs; residuals are
    /// left side minus right side.
    pub fn check_poisson_derivation(&self, s: &Derivation) -> Result<CheckReport> {
        self.check_pairs(|a, b| {
            let lhs = s.apply(&self.bracket(a, b)?)?;
            let rhs = &self.bracket(&s.apply(a)?, b)? + &self.bracket(a, &s.apply(b)?)?;
            Ok(&lhs - &rhs)
        })
    }

    /// `δ({a,b}) = {δ(a),b} + {a,δ(b)} + σ(a)δ(b) − δ(a)σ(b)` on generator
    /// pairs of this ring.
    pub fn check_delta_condition(&self, sigma: &Derivation, delta: &Derivation) -> Result<CheckReport> {
        self.check_pairs(|a, b| {
            let (sa, sb, da, db) = (sigma.apply(a)?, sigma.apply(b)?, delta.apply(a)?, delta.apply(b)?);
            let lhs = delta.apply(&self.bracket(a, b)?)?;
            let rhs = &(&(&self.bracket(&da, b)? + &self.bracket(a, &db)?) + &(&sa * &db)) - &(&da * &sb);
            Ok(&lhs - &rhs)
        })
    }

    fn check_pairs<F>(&self, f: F) -> Result<CheckReport>
    where
        F: Fn(&Polynomial, &Polynomial) -> Result<Polynomial>,
    {
        let mut failures = Vec::new();
        for i in 0..self.ctx.len() {
            for j in 0..i {
                let r = f(&Polynomial::var(&self.ctx, i), &Polynomial::var(&self.ctx, j))?;
                if !r.is_zero() {
                    failures.push(Residual { generators: self.names(&[i, j]), residual: r });
                }
            }
        }
        Ok(CheckReport::from_failures(failures))
    }

    /// Whether `{c, R} ⊆ Rc`, or `{c, R} ⊆ Rc + P` when `modulo = Some(P)`.
    pub fn is_poisson_normal(&self, c: &Polynomial, modulo: Option<&Ideal>) -> Result<NormalityReport> {
        if c.is_zero() {
            return Err(Error::ZeroElement);
        }
        if let Some(p) = modulo {
            if !same_ctx(p.ctx(), &self.ctx) {
                return Err(Error::ContextMismatch);
            }
            if p.contains_poly(c)? {
                return Err(Error::Precondition(format!("{c} lies in the ideal it is tested modulo")));
            }
        }
        let mut quotients = Vec::with_capacity(self.ctx.len());
        for i in 0..self.ctx.len() {
            let b = self.bracket(c, &Polynomial::var(&self.ctx, i))?;
            let q = match modulo {
                None => b.div_exact(c)?,
                Some(p) => {
                    let mut gens = vec![c.clone()];
                    gens.extend(p.generators().iter().cloned());
                    match lift(&self.ctx, &gens, &b, p.step_budget())? {
                        Some(cof) => Some(p.normal_form(&cof[0])?),
                        None => None,
                    }
                }
            };
            quotients.push(q);
        }
        Ok(NormalityReport { normal: quotients.iter().all(Option::is_some), quotients })
    }
}
