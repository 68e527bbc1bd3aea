use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::context::{same_ctx, Ctx, VarTable};
use super::monomial::Monomial;
use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// Sparse Laurent polynomial over ℚ in a fixed variable context.
///
/// No zero coefficients are stored, so two equal polynomials have identical
/// term maps.
#[derive(Clone)]
pub struct Polynomial {
    ctx: Ctx,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl Polynomial {
    pub fn zero(ctx: &Ctx) -> Self {
        Polynomial { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &Ctx, c: Rational) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ctx.len()), c);
        }
        p
    }

    pub fn var(ctx: &Ctx, i: usize) -> Self {
        Self::term(ctx, Monomial::var(ctx.len(), i, 1), Rational::one())
    }

    pub fn var_named(ctx: &Ctx, name: &str) -> Result<Self> {
        ctx.index_of(name)
            .map(|i| Self::var(ctx, i))
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Single term; panics on a negative exponent for a non-Laurent variable.
    pub fn term(ctx: &Ctx, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.len(), ctx.len(), "monomial arity does not match context");
        for i in m.support() {
            assert!(
                m.exp(i) > 0 || ctx.is_laurent(i),
                "negative exponent on non-Laurent variable {}",
                ctx.name(i)
            );
        }
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn try_term(ctx: &Ctx, m: Monomial, c: Rational) -> Result<Self> {
        for i in m.support() {
            if m.exp(i) < 0 && !ctx.is_laurent(i) {
                return Err(Error::NegativeExponent(ctx.name(i).to_string()));
            }
        }
        Ok(Self::term(ctx, m, c))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(ctx: &Ctx, it: I) -> Self {
        let mut p = Self::zero(ctx);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn from_map_unchecked(ctx: &Ctx, terms: BTreeMap<Monomial, Rational>) -> Self {
        Polynomial { ctx: ctx.clone(), terms }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.ctx.len()
    }

    /// Terms in descending graded reverse lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn term_map(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading term in graded reverse lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    /// Maximum total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree_in(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.exp(i)).min()
    }

    pub fn degree_in(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.exp(i)).max()
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(Monomial::has_negative)
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.exp(i) != 0)
    }

    /// Indices of variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.uses_var(i)).collect()
    }

    /// Coefficient of `x_i^e`, as a polynomial free of `x_i`.
    pub fn coeff_in(&self, i: usize, e: i32) -> Polynomial {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            if m.exp(i) == e {
                let mut v = m.exponents().to_vec();
                v[i] = 0;
                out.terms.insert(Monomial::from_exponents(v), c.clone());
            }
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = Self::zero(&self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, q: &Rational) -> Polynomial {
        if q.is_zero() {
            return Self::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Self::one(&self.ctx);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative powers are allowed only for a single term
    /// whose variables are all Laurent.
    pub fn try_powi(&self, k: i64) -> Result<Polynomial> {
        if k >= 0 {
            return Ok(self.pow(u32::try_from(k).map_err(|_| Error::Input("exponent too large".into()))?));
        }
        let (m, c) = match self.leading() {
            Some(t) if self.is_monomial() => t,
            _ => {
                return Err(Error::Input(
                    "negative power of a non-monomial is not a Laurent polynomial".into(),
                ))
            }
        };
        let kk = i32::try_from(-k).map_err(|_| Error::Input("exponent too large".into()))?;
        let inv_m = m.pow(-kk);
        for i in inv_m.support() {
            if inv_m.exp(i) < 0 && !self.ctx.is_laurent(i) {
                return Err(Error::NegativeExponent(self.ctx.name(i).to_string()));
            }
        }
        let mut coeff = Rational::one();
        for _ in 0..kk {
            coeff /= c;
        }
        Ok(Self::term(&self.ctx, inv_m, coeff))
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e != 0 {
                let mut v = m.exponents().to_vec();
                v[i] -= 1;
                out.add_term(Monomial::from_exponents(v), c * Rational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Ring homomorphism sending variable `i` to `images[i]`. Negative
    /// exponents require the image to be a single term.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars() {
            return Err(Error::Input(format!(
                "substitution needs {} images, got {}",
                self.nvars(),
                images.len()
            )));
        }
        let target = match images.first() {
            Some(p) => p.ctx.clone(),
            None => return Ok(self.clone()),
        };
        for p in images {
            if !same_ctx(&p.ctx, &target) {
                return Err(Error::ContextMismatch);
            }
        }
        let mut out = Self::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for i in m.support() {
                t = &t * &images[i].try_powi(m.exp(i) as i64)?;
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in `target`, matching variables by name.
    pub fn embed(&self, target: &Ctx) -> Result<Polynomial> {
        if same_ctx(&self.ctx, target) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self.ctx.names().iter().map(|n| target.index_of(n)).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut v = vec![0; target.len()];
            for i in m.support() {
                let j = map[i].ok_or_else(|| Error::UnknownVariable(self.ctx.name(i).to_string()))?;
                if m.exp(i) < 0 && !target.is_laurent(j) {
                    return Err(Error::NegativeExponent(target.name(j).to_string()));
                }
                v[j] = m.exp(i);
            }
            out.terms.insert(Monomial::from_exponents(v), c.clone());
        }
        Ok(out)
    }

    /// Least common multiple of coefficient denominators divided into the
    /// gcd of numerators; multiplying by its inverse gives a primitive
    /// integer polynomial.
    pub fn content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::one();
        }
        Rational::new(num, den)
    }

    /// Scalar multiple with leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Integer-coefficient primitive form with positive leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        let mut c = self.content();
        if self.leading_coefficient().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Division by a single polynomial with respect to the graded reverse
    /// lexicographic order: returns `(q, r)` with `self = q*g + r` and no
    /// term of `r` divisible by the leading monomial of `g`.
    pub fn div_rem(&self, g: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check(g)?;
        let (lm, lc) = g.leading().ok_or(Error::ZeroElement)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut q = Self::zero(&self.ctx);
        let mut r = Self::zero(&self.ctx);
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let divides = m.divisible_by(&lm);
            if divides {
                let qm = m.div(&lm);
                let qc = &c / &lc;
                let t = Polynomial::from_map_unchecked(&self.ctx, BTreeMap::from([(qm, qc)]));
                p = &p - &(&t * g);
                q = &q + &t;
            } else {
                p.terms.remove(&m);
                r.terms.insert(m, c);
            }
        }
        Ok((q, r))
    }

    /// Exact quotient if `g` divides `self`.
    pub fn div_exact(&self, g: &Polynomial) -> Result<Option<Polynomial>> {
        let (q, r) = self.div_rem(g)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    /// Shares the context handle of `ctx` when the tables are equal, so
    /// pointer-equality fast paths fire.
    pub fn with_ctx(mut self, ctx: &Ctx) -> Result<Polynomial> {
        if !same_ctx(&self.ctx, ctx) {
            return Err(Error::ContextMismatch);
        }
        self.ctx = ctx.clone();
        Ok(self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            let mono = format_monomial(&self.ctx, m);
            if mono.is_empty() {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", format_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// `x*y^2*X^-1`; empty string for the unit monomial.
pub fn format_monomial(ctx: &VarTable, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for i in m.support() {
        let e = m.exp(i);
        if e == 1 {
            parts.push(ctx.name(i).to_string());
        } else {
            parts.push(format!("{}^{e}", ctx.name(i)));
        }
    }
    parts.join("*")
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                self.$try(rhs).expect("polynomial arithmetic across different contexts")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Builds a fresh shared context.
pub fn ctx_of<S: AsRef<str>>(names: &[S]) -> Ctx {
    Arc::new(VarTable::new(names).expect("valid variable names"))
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
