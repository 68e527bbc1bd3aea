//! Torus actions encoded as ℤ^r-gradings of the generators.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{dot, primitive_integer, solve};
use crate::pbracket::BracketTable;
use crate::qpoly::{format_rational, Monomial, Polynomial, Rational};

pub type Weight = Vec<i64>;

/// Weight vector `deg x_i ∈ ℤ^r` for each generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingData {
    rank: usize,
    weights: Vec<Weight>,
}

/// An element of the Lie algebra of the torus, as `r` rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieVector(pub Vec<Rational>);

impl fmt::Display for LieVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, q) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(q))?;
        }
        write!(f, ")")
    }
}

impl Serialize for LieVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(format_rational))
    }
}

impl LieVector {
    pub fn pair(&self, w: &[i64]) -> Rational {
        self.0.iter().zip(w).fold(Rational::zero(), |acc, (h, &x)| acc + h * Rational::from_integer(x.into()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GradedCheck {
    pub passed: bool,
    /// Generator pairs whose bracket is not homogeneous of the summed weight.
    pub failures: Vec<[String; 2]>,
}

impl GradingData {
    /// From an `r × N` matrix whose columns are the generator weights.
    pub fn from_matrix(rows: &[Vec<i64>], n: usize) -> Result<Self> {
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::Input(format!("grading row {} has {} entries, expected {n}", i + 1, r.len())));
            }
        }
        let weights = (0..n).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
        Ok(GradingData { rank: rows.len(), weights })
    }

    pub fn from_columns(rank: usize, weights: Vec<Weight>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| w.len() != rank) {
            return Err(Error::Input(format!("weight {w:?} does not have length {rank}")));
        }
        Ok(GradingData { rank, weights })
    }

    /// The trivial torus on `n` generators.
    pub fn trivial(n: usize) -> Self {
        GradingData { rank: 0, weights: vec![Vec::new(); n] }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, i: usize) -> &[i64] {
        &self.weights[i]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn as_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.rank).map(|r| self.weights.iter().map(|w| w[r]).collect()).collect()
    }

    /// The first `k` columns.
    pub fn truncate(&self, k: usize) -> Self {
        GradingData { rank: self.rank, weights: self.weights[..k].to_vec() }
    }

    pub fn monomial_weight(&self, m: &Monomial) -> Weight {
        let mut w = vec![0; self.rank];
        for i in m.support() {
            let e = m.exp(i) as i64;
            for (acc, d) in w.iter_mut().zip(&self.weights[i]) {
                *acc += e * d;
            }
        }
        w
    }

    pub fn homogeneous_components(&self, f: &Polynomial) -> BTreeMap<Weight, Polynomial> {
        let mut parts: BTreeMap<Weight, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in f.terms() {
            parts.entry(self.monomial_weight(m)).or_default().push((m.clone(), c.clone()));
        }
        parts.into_iter().map(|(w, ts)| (w, Polynomial::from_terms(f.ctx(), ts))).collect()
    }

    /// Weight of a nonzero homogeneous element.
    pub fn weight_of(&self, f: &Polynomial) -> Option<Weight> {
        let mut w = None;
        for (m, _) in f.terms() {
            let mw = self.monomial_weight(m);
            match &w {
                None => w = Some(mw),
                Some(prev) if *prev != mw => return None,
                _ => {}
            }
        }
        w
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self, f: &Polynomial) -> bool {
        f.is_zero() || self.weight_of(f).is_some()
    }

    /// `h·f = Σ_w ⟨h, w⟩ f_w`.
    pub fn lie_act(&self, h: &LieVector, f: &Polynomial) -> Polynomial {
        let terms: Vec<(Monomial, Rational)> =
            f.terms().map(|(m, c)| (m.clone(), c * h.pair(&self.monomial_weight(m)))).collect();
        Polynomial::from_terms(f.ctx(), terms)
    }

    /// Each `{x_i, x_j}` homogeneous of weight `deg x_i + deg x_j`.
    pub fn check_graded_bracket(&self, table: &BracketTable) -> GradedCheck {
        let ctx = table.ctx();
        let mut failures = Vec::new();
        for (&(i, j), p) in table.entries() {
            let target: Weight = self.weights[i].iter().zip(&self.weights[j]).map(|(a, b)| a + b).collect();
            if p.terms().any(|(m, _)| self.monomial_weight(m) != target) {
                failures.push([ctx.name(i).to_string(), ctx.name(j).to_string()]);
            }
        }
        GradedCheck { passed: failures.is_empty(), failures }
    }

    /// Finds `h` with `⟨h, deg x_j⟩ = μ_j` for `j < k` and
    /// `⟨h, deg x_k⟩ ≠ 0` (levels are 1-based).
    ///
    /// The candidate is the solution with free coordinates zero; if that
    /// pairs to zero with `deg x_k`, the first kernel direction that does
    /// not is added. Unconstrained solutions are scaled to primitive
    /// integer vectors.
    pub fn solve_h(&self, level: usize, mu: &[Rational]) -> Result<Option<LieVector>> {
        if level == 0 || level > self.len() {
            return Err(Error::LevelOutOfRange { level, max: self.len() });
        }
        if mu.len() != level - 1 {
            return Err(Error::Input(format!("level {level} needs {} eigenvalues, got {}", level - 1, mu.len())));
        }
        let r = self.rank;
        let to_q = |w: &[i64]| w.iter().map(|&x| Rational::from_integer(x.into())).collect::<Vec<_>>();
        let a: Vec<Vec<Rational>> = self.weights[..level - 1].iter().map(|w| to_q(w)).collect();
        let Some(sol) = solve(&a, mu, r) else {
            return Ok(None);
        };
        let target = to_q(&self.weights[level - 1]);
        let mut h = sol.particular.clone();
        if dot(&h, &target).is_zero() {
            match sol.kernel.iter().find(|v| !dot(v, &target).is_zero()) {
                Some(v) => h = h.iter().zip(v).map(|(x, y)| x + y).collect(),
                None => return Ok(None),
            }
        }
        if mu.iter().all(Zero::is_zero) {
            h = primitive_integer(&h).into_iter().map(Rational::from_integer).collect();
        }
        debug_assert!(!dot(&h, &target).is_zero());
        Ok(Some(LieVector(h)))
    }

    /// Eigenvalue of `x_k` under `h` (0-based generator index).
    pub fn eigenvalue(&self, h: &LieVector, i: usize) -> Rational {
        h.pair(&self.weights[i])
    }
}

/// Convenience for tests and fixtures.
pub fn lie_vector(coords: &[i64]) -> LieVector {
    LieVector(coords.iter().map(|&c| Rational::from_integer(c.into())).collect())
}
