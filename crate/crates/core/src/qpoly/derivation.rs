use serde::Serialize;

use super::context::{same_ctx, Ctx};
use super::poly::Polynomial;
use crate::error::{Error, Result};

/// A derivation given by its images on the generators, extended to all
/// polynomials by the Leibniz rule: `D(f) = Σ D(x_i) ∂f/∂x_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    ctx: Ctx,
    images: Vec<Option<Polynomial>>,
}

/// Outcome of iterating a derivation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Nilpotency {
    /// Smallest `m` with `D^m(f) = 0`.
    Index(usize),
    NotWithinBound,
}

#[derive(Clone, Debug)]
pub struct Iterates {
    /// `D^0(f), D^1(f), ...`; ends with the first zero when nilpotent.
    pub powers: Vec<Polynomial>,
    pub nilpotency: Nilpotency,
}

impl Derivation {
    pub fn new(ctx: &Ctx, images: Vec<Option<Polynomial>>) -> Result<Self> {
        if images.len() != ctx.len() {
            return Err(Error::Input(format!(
                "derivation needs {} generator slots, got {}",
                ctx.len(),
                images.len()
            )));
        }
        for p in images.iter().flatten() {
            if !same_ctx(p.ctx(), ctx) {
                return Err(Error::ContextMismatch);
            }
        }
        Ok(Derivation { ctx: ctx.clone(), images })
    }

    /// Derivation with every generator image supplied.
    pub fn from_images(ctx: &Ctx, images: Vec<Polynomial>) -> Result<Self> {
        Self::new(ctx, images.into_iter().map(Some).collect())
    }

    pub fn zero(ctx: &Ctx) -> Self {
        Derivation { ctx: ctx.clone(), images: vec![Some(Polynomial::zero(ctx)); ctx.len()] }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn image(&self, i: usize) -> Option<&Polynomial> {
        self.images[i].as_ref()
    }

    pub fn images(&self) -> &[Option<Polynomial>] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|p| p.as_ref().is_none_or(Polynomial::is_zero))
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ctx(f.ctx(), &self.ctx) {
            return Err(Error::ContextMismatch);
        }
        let mut out = Polynomial::zero(&self.ctx);
        for i in f.variables() {
            let img = self.images[i]
                .as_ref()
                .ok_or_else(|| Error::MissingImage(self.ctx.name(i).to_string()))?;
            if img.is_zero() {
                continue;
            }
            out = &out + &(img * &f.derivative(i));
        }
        Ok(out)
    }

    /// `D^0(f) .. D^m(f)` where `m` is minimal with `D^m(f) = 0`, or the
    /// first `bound + 1` powers when no such `m ≤ bound` exists.
    pub fn iterate(&self, f: &Polynomial, bound: usize) -> Result<Iterates> {
        let mut powers = vec![f.clone()];
        let mut cur = f.clone();
        for m in 0..=bound {
            if cur.is_zero() {
                return Ok(Iterates { powers, nilpotency: Nilpotency::Index(m) });
            }
            if m == bound {
                break;
            }
            cur = self.apply(&cur)?;
            powers.push(cur.clone());
        }
        Ok(Iterates { powers, nilpotency: Nilpotency::NotWithinBound })
    }

    /// Composition-free pointwise sum `self + other`.
    pub fn add(&self, other: &Derivation) -> Result<Derivation> {
        if !same_ctx(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            })
            .collect();
        Ok(Derivation { ctx: self.ctx.clone(), images })
    }

    /// Re-expresses the derivation in a larger context; variables absent from
    /// this derivation's context get no image.
    pub fn embed(&self, target: &Ctx) -> Result<Derivation> {
        let mut images = vec![None; target.len()];
        for (i, img) in self.images.iter().enumerate() {
            let j = target
                .index_of(self.ctx.name(i))
                .ok_or_else(|| Error::UnknownVariable(self.ctx.name(i).to_string()))?;
            images[j] = match img {
                Some(p) => Some(p.embed(target)?),
                None => None,
            };
        }
        Ok(Derivation { ctx: target.clone(), images })
    }
}
