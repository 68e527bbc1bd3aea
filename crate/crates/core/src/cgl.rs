//! Iterated Poisson-Ore towers `𝕂[x₁]_p[x₂; σ₂, δ₂]_p ⋯ [x_N; σ_N, δ_N]_p`
//! and verification of the Poisson-CGL axioms.

use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::grading::{GradedCheck, GradingData, LieVector};
use crate::ideals::DEFAULT_STEP_BUDGET;
use crate::pbracket::{BracketTable, CheckReport};
use crate::qpoly::{format_rational, Ctx, Derivation, Nilpotency, Polynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub nilpotency: usize,
    pub degree: usize,
    pub groebner_steps: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { nilpotency: 25, degree: 4, groebner_steps: DEFAULT_STEP_BUDGET }
    }
}

#[derive(Clone, Debug)]
pub struct PoissonPresentation {
    ctx: Ctx,
    table: BracketTable,
    grading: GradingData,
    h: Option<Vec<LieVector>>,
    bounds: Bounds,
}

/// Data of the extension `R_k = R_{k-1}[x_k; σ_k, δ_k]_p`.
#[derive(Clone, Debug)]
pub struct LevelData {
    pub k: usize,
    /// `A = R_{k-1}`.
    pub a_ctx: Ctx,
    /// `R = R_k`.
    pub r_ctx: Ctx,
    /// `R_k` with `x_k` inverted.
    pub hat_ctx: Ctx,
    pub table_a: BracketTable,
    pub table_r: BracketTable,
    pub grading: GradingData,
    pub sigma: Derivation,
    pub sigma_eigenvalues: Vec<Rational>,
    pub delta: Derivation,
    pub h: LieVector,
    pub lambda: Rational,
    pub nilpotency_bound: usize,
    pub step_budget: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct NilpotencyWitness {
    pub generator: String,
    pub status: Nilpotency,
    /// Total degrees of the computed iterates.
    pub degrees: Vec<i64>,
    /// Degrees strictly increased over the last three steps.
    pub likely_not_nilpotent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub generator: String,
    pub passed: bool,
    pub eigenvector: bool,
    pub sigma_diagonal: bool,
    pub sigma_eigenvalues: Option<Vec<String>>,
    pub sigma_poisson_derivation: CheckReport,
    pub delta_condition: CheckReport,
    pub delta_nilpotent: bool,
    pub nilpotency: Vec<NilpotencyWitness>,
    pub h: Option<LieVector>,
    pub h_source: Option<&'static str>,
    pub h_valid: bool,
    pub lambda: Option<String>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CglReport {
    pub passed: bool,
    pub generators: Vec<String>,
    pub jacobi: CheckReport,
    pub graded: GradedCheck,
    pub levels: Vec<LevelReport>,
}

impl CglReport {
    pub fn failed_levels(&self) -> Vec<usize> {
        self.levels.iter().filter(|l| !l.passed).map(|l| l.level).collect()
    }
}

impl PoissonPresentation {
    pub fn new(
        ctx: &Ctx,
        table: BracketTable,
        grading: GradingData,
        h: Option<Vec<LieVector>>,
        bounds: Bounds,
    ) -> Result<Self> {
        let n = ctx.len();
        if (0..n).any(|i| ctx.is_laurent(i)) {
            return Err(Error::Input("presentation generators must be polynomial variables".into()));
        }
        if grading.len() != n {
            return Err(Error::Input(format!("grading has {} columns for {n} generators", grading.len())));
        }
        if let Some(hs) = &h {
            if hs.len() != n {
                return Err(Error::Input(format!("expected {n} h vectors, got {}", hs.len())));
            }
            if let Some(v) = hs.iter().find(|v| v.0.len() != grading.rank()) {
                return Err(Error::Input(format!("h vector {v} does not have length {}", grading.rank())));
            }
        }
        let table = table.embed(ctx)?;
        for (&(i, j), p) in table.entries() {
            let tri = |reason: String| Error::Triangularity {
                hi: ctx.name(i).to_string(),
                lo: ctx.name(j).to_string(),
                reason,
            };
            if p.has_negative_exponents() {
                return Err(tri("negative exponent".into()));
            }
            if let Some(v) = p.variables().into_iter().find(|&v| v > i) {
                return Err(tri(format!("involves later generator {}", ctx.name(v))));
            }
            if p.degree_in(i).unwrap_or(0) > 1 {
                return Err(tri(format!("degree {} in {}", p.degree_in(i).unwrap(), ctx.name(i))));
            }
        }
        Ok(PoissonPresentation { ctx: ctx.clone(), table, grading, h, bounds })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.ctx.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ctx.is_empty()
    }

    pub fn table(&self) -> &BracketTable {
        &self.table
    }

    pub fn grading(&self) -> &GradingData {
        &self.grading
    }

    pub fn h(&self) -> Option<&[LieVector]> {
        self.h.as_deref()
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn with_bounds(mut self, bounds: Bounds) -> Self {
        self.bounds = bounds;
        self
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.ctx, i)
    }

    /// Context of `R_k`.
    pub fn level_ctx(&self, k: usize) -> Ctx {
        if k == self.len() {
            return self.ctx.clone();
        }
        Arc::new(self.ctx.prefix(k))
    }

    fn check_level(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.len() {
            return Err(Error::LevelOutOfRange { level: k, max: self.len() });
        }
        Ok(())
    }

    /// Writes `{x_k, x_j} = s_j x_k + d_j` for `j < k`, returning
    /// `(σ_k(x_j), δ_k(x_j))` over `R_{k-1}`.
    pub fn split_bracket(&self, k: usize) -> Result<(Vec<Polynomial>, Vec<Polynomial>)> {
        self.check_level(k)?;
        let a = self.level_ctx(k - 1);
        let (mut sig, mut del) = (Vec::new(), Vec::new());
        for j in 0..k - 1 {
            let b = self.table.get(k - 1, j);
            sig.push(b.coeff_in(k - 1, 1).embed(&a)?);
            del.push(b.coeff_in(k - 1, 0).embed(&a)?);
        }
        Ok((sig, del))
    }

    /// The diagonal eigenvalues of `σ_k`, if `σ_k` is diagonal.
    fn sigma_eigenvalues(&self, k: usize, sig: &[Polynomial]) -> Option<Vec<Rational>> {
        let a = self.level_ctx(k - 1);
        sig.iter()
            .enumerate()
            .map(|(j, s)| {
                if s.is_zero() {
                    return Some(Rational::zero());
                }
                let q = s.div_exact(&Polynomial::var(&a, j)).ok()??;
                q.as_constant()
            })
            .collect()
    }

    /// `h_k`, validated if supplied and solved for otherwise.
    fn h_for(&self, k: usize, mu: &[Rational]) -> Result<(Option<LieVector>, &'static str)> {
        match &self.h {
            Some(hs) => {
                let h = &hs[k - 1];
                let ok = mu.iter().enumerate().all(|(j, m)| self.grading.eigenvalue(h, j) == *m)
                    && !self.grading.eigenvalue(h, k - 1).is_zero();
                Ok((ok.then(|| h.clone()), "supplied"))
            }
            None => Ok((self.grading.solve_h(k, mu)?, "solved")),
        }
    }

    /// Level data for `k ∈ 1..=N`; fails unless σ_k is diagonal and `h_k`
    /// exists with nonzero eigenvalue on `x_k`.
    pub fn level(&self, k: usize) -> Result<LevelData> {
        let (sig, del) = self.split_bracket(k)?;
        let a_ctx = self.level_ctx(k - 1);
        let r_ctx = self.level_ctx(k);
        let mu = self
            .sigma_eigenvalues(k, &sig)
            .ok_or_else(|| Error::Precondition(format!("σ_{k} is not diagonal on the earlier generators")))?;
        let h = match self.h_for(k, &mu)? {
            (Some(h), _) => h,
            (None, src) => {
                return Err(Error::Precondition(format!("no {src} h_{k} with nonzero eigenvalue on {}", self.ctx.name(k - 1))))
            }
        };
        let lambda = self.grading.eigenvalue(&h, k - 1);
        let hat_ctx: Ctx = Arc::new(r_ctx.with_laurent(k - 1));
        Ok(LevelData {
            k,
            table_a: self.table.restrict(&a_ctx)?,
            table_r: self.table.restrict(&r_ctx)?,
            grading: self.grading.truncate(k),
            sigma: Derivation::from_images(&a_ctx, sig)?,
            sigma_eigenvalues: mu,
            delta: Derivation::from_images(&a_ctx, del)?,
            h,
            lambda,
            nilpotency_bound: self.bounds.nilpotency,
            step_budget: self.bounds.groebner_steps,
            a_ctx,
            r_ctx,
            hat_ctx,
        })
    }

    /// Truncation to `R_k`.
    pub fn restrict(&self, k: usize) -> Result<PoissonPresentation> {
        if k > self.len() {
            return Err(Error::LevelOutOfRange { level: k, max: self.len() });
        }
        let ctx = self.level_ctx(k);
        Ok(PoissonPresentation {
            table: self.table.restrict(&ctx)?,
            grading: self.grading.truncate(k),
            h: self.h.as_ref().map(|hs| hs[..k].to_vec()),
            bounds: self.bounds,
            ctx,
        })
    }

    pub fn verify_cgl(&self) -> CglReport {
        self.verify_cgl_with(Exec::default())
    }

    pub fn verify_cgl_with(&self, exec: Exec) -> CglReport {
        let jacobi = self.table.check_jacobi_with(exec);
        let graded = self.grading.check_graded_bracket(&self.table);
        let levels = exec.map_range(self.len(), |i| self.level_report(i + 1));
        let passed = jacobi.passed && graded.passed && levels.iter().all(|l| l.passed);
        CglReport { passed, generators: self.ctx.names().to_vec(), jacobi, graded, levels }
    }

    fn level_report(&self, k: usize) -> LevelReport {
        let (sig, del) = self.split_bracket(k).expect("level in range");
        let a_ctx = self.level_ctx(k - 1);
        let table_a = self.table.restrict(&a_ctx).expect("triangular table restricts");
        let sigma = Derivation::from_images(&a_ctx, sig.clone()).expect("images in A");
        let delta = Derivation::from_images(&a_ctx, del).expect("images in A");
        let mut notes = Vec::new();

        let mu = self.sigma_eigenvalues(k, &sig);
        let sigma_poisson_derivation = table_a.check_poisson_derivation(&sigma).expect("σ defined on A");
        let delta_condition = table_a.check_delta_condition(&sigma, &delta).expect("σ, δ defined on A");

        let nilpotency: Vec<NilpotencyWitness> = (0..k - 1)
            .map(|j| {
                let it = delta.iterate(&Polynomial::var(&a_ctx, j), self.bounds.nilpotency).expect("δ defined on A");
                let degrees: Vec<i64> = it.powers.iter().filter_map(Polynomial::total_degree).collect();
                let likely_not_nilpotent = it.nilpotency == Nilpotency::NotWithinBound
                    && degrees.len() >= 4
                    && degrees[degrees.len() - 4..].windows(2).all(|w| w[1] > w[0]);
                NilpotencyWitness { generator: a_ctx.name(j).to_string(), status: it.nilpotency, degrees, likely_not_nilpotent }
            })
            .collect();
        let delta_nilpotent = nilpotency.iter().all(|w| w.status != Nilpotency::NotWithinBound);
        if !delta_nilpotent {
            notes.push(format!("δ_{k} not nilpotent within bound {}", self.bounds.nilpotency));
        }

        let (h, h_source) = match &mu {
            Some(mu) => match self.h_for(k, mu) {
                Ok((h, src)) => (h, Some(src)),
                Err(e) => {
                    notes.push(e.to_string());
                    (None, None)
                }
            },
            None => {
                notes.push(format!("σ_{k} is not diagonal"));
                (None, None)
            }
        };
        let h_valid = h.is_some();
        if !h_valid && mu.is_some() {
            notes.push(format!("no h_{k} with nonzero eigenvalue on {}", self.ctx.name(k - 1)));
        }
        let lambda = h.as_ref().map(|h| format_rational(&self.grading.eigenvalue(h, k - 1)));
        let passed = mu.is_some()
            && sigma_poisson_derivation.passed
            && delta_condition.passed
            && delta_nilpotent
            && h_valid;
        LevelReport {
            level: k,
            generator: self.ctx.name(k - 1).to_string(),
            passed,
            eigenvector: true,
            sigma_diagonal: mu.is_some(),
            sigma_eigenvalues: mu.map(|m| m.iter().map(format_rational).collect()),
            sigma_poisson_derivation,
            delta_condition,
            delta_nilpotent,
            nilpotency,
            h,
            h_source,
            h_valid,
            lambda,
            notes,
        }
    }
}

impl LevelData {
    /// `x_k` in `R_k`.
    pub fn x(&self) -> Polynomial {
        Polynomial::var(&self.r_ctx, self.k - 1)
    }

    /// `x_k` in the Laurent ring.
    pub fn x_hat(&self) -> Polynomial {
        Polynomial::var(&self.hat_ctx, self.k - 1)
    }

    pub fn table_hat(&self) -> BracketTable {
        self.table_r.embed(&self.hat_ctx).expect("same variables")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::lie_vector;
    use crate::qpoly::{ctx_of, int, parse};

    fn weyl() -> PoissonPresentation {
        let ctx = ctx_of(&["a", "X"]);
        let t = BracketTable::from_entries(&ctx, [((1, 0), parse("-a*X + 1", &ctx).unwrap())]).unwrap();
        let g = GradingData::from_matrix(&[vec![-1, 1]], 2).unwrap();
        PoissonPresentation::new(&ctx, t, g, None, Bounds::default()).unwrap()
    }

    #[test]
    fn weyl_levels() {
        let p = weyl();
        let (s, d) = p.split_bracket(2).unwrap();
        assert_eq!(s[0].to_string(), "-a");
        assert_eq!(d[0].to_string(), "1");
        let l = p.level(2).unwrap();
        assert_eq!(l.h, lie_vector(&[1]));
        assert_eq!(l.lambda, int(1));
        assert_eq!(l.sigma_eigenvalues, vec![int(-1)]);
        let r = p.verify_cgl();
        assert!(r.passed, "{r:#?}");
    }

    #[test]
    fn triangularity_is_enforced() {
        let ctx = ctx_of(&["a", "X"]);
        let g = GradingData::trivial(2);
        let bad = BracketTable::from_entries(&ctx, [((1, 0), parse("X^2", &ctx).unwrap())]).unwrap();
        assert!(matches!(
            PoissonPresentation::new(&ctx, bad, g.clone(), None, Bounds::default()),
            Err(Error::Triangularity { .. })
        ));
        let ctx3 = ctx_of(&["a", "b", "c"]);
        let bad = BracketTable::from_entries(&ctx3, [((1, 0), parse("c", &ctx3).unwrap())]).unwrap();
        assert!(PoissonPresentation::new(&ctx3, bad, GradingData::trivial(3), None, Bounds::default()).is_err());
    }

    #[test]
    fn restriction() {
        let p = weyl();
        let r1 = p.restrict(1).unwrap();
        assert_eq!(r1.len(), 1);
        assert!(r1.table().is_abelian());
        assert_eq!(r1.grading().weight(0), &[-1]);
        assert_eq!(p.restrict(0).unwrap().len(), 0);
        assert!(p.restrict(3).is_err());
        assert_eq!(p.restrict(2).unwrap().table(), p.table());
    }
}
