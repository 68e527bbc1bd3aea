//! Poisson centers of Poisson tori and the H-strata of a Poisson affine
//! space `{x_i, x_j} = λ_ij x_i x_j`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::cauchon::HPrimeNode;
use crate::cgl::PoissonPresentation;
use crate::error::{Error, Result};
use crate::linalg::{integer_kernel, primitive_integer};
use crate::pbracket::BracketTable;
use crate::qpoly::{format_rational, Ctx, Monomial, Polynomial, Rational, VarTable};

/// Skew-symmetric `λ` with `{x_i, x_j} = λ_ij x_i x_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogBracketMatrix {
    pub names: Vec<String>,
    pub entries: Vec<Vec<Rational>>,
}

impl Serialize for LogBracketMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<Vec<String>> = self.entries.iter().map(|r| r.iter().map(format_rational).collect()).collect();
        let mut st = s.serialize_struct("LogBracketMatrix", 2)?;
        st.serialize_field("names", &self.names)?;
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}

impl LogBracketMatrix {
    pub fn zero(names: &[String]) -> Self {
        let n = names.len();
        LogBracketMatrix { names: names.to_vec(), entries: vec![vec![Rational::zero(); n]; n] }
    }

    /// Sets `λ_ij = v` and `λ_ji = −v`.
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[j][i] = -v.clone();
        self.entries[i][j] = v;
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// The quadratic bracket table over `ctx`, which must have the same
    /// variable count.
    pub fn to_table(&self, ctx: &Ctx) -> Result<BracketTable> {
        if ctx.len() != self.len() {
            return Err(Error::ContextMismatch);
        }
        let mut entries = Vec::new();
        for i in 0..self.len() {
            for j in 0..i {
                if !self.entries[i][j].is_zero() {
                    let p = &Polynomial::var(ctx, i) * &Polynomial::var(ctx, j);
                    entries.push(((i, j), p.scale(&self.entries[i][j])));
                }
            }
        }
        BracketTable::from_entries(ctx, entries)
    }

    /// Principal submatrix on the given variables.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        LogBracketMatrix {
            names: keep.iter().map(|&i| self.names[i].clone()).collect(),
            entries: keep.iter().map(|&i| keep.iter().map(|&j| self.entries[i][j].clone()).collect()).collect(),
        }
    }
}

/// Reads off `λ` from a bracket table whose entries are all scalar
/// multiples of `x_i x_j`.
pub fn extract_log_matrix(table: &BracketTable) -> Result<LogBracketMatrix> {
    let ctx = table.ctx();
    let mut m = LogBracketMatrix::zero(ctx.names());
    for (&(i, j), p) in table.entries() {
        let mono = Monomial::from_exponents((0..ctx.len()).map(|v| i32::from(v == i) + i32::from(v == j)).collect());
        if p.len() != 1 || p.coefficient(&mono).is_zero() {
            return Err(Error::NotAffineSpace {
                hi: ctx.name(i).to_string(),
                lo: ctx.name(j).to_string(),
                value: p.to_string(),
            });
        }
        m.set(i, j, p.coefficient(&mono));
    }
    Ok(m)
}

#[derive(Clone, Debug, Serialize)]
pub struct TorusCenter {
    pub names: Vec<String>,
    /// Hermite-normal-form basis of `ker λ ∩ ℤ^N`.
    #[serde(serialize_with = "ser_lattice")]
    pub kernel: Vec<Vec<BigInt>>,
    /// `x^m` for each kernel vector `m`, over the Laurent ring.
    pub generators: Vec<String>,
}

fn ser_lattice<S: serde::Serializer>(k: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = k.iter().map(|r| r.iter().map(BigInt::to_string).collect()).collect();
    serde::Serialize::serialize(&rows, s)
}

impl TorusCenter {
    pub fn rank(&self) -> usize {
        self.kernel.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.kernel.is_empty()
    }

    /// Laurent ring on the torus variables.
    pub fn laurent_ctx(&self) -> Ctx {
        let flags = vec![true; self.names.len()];
        Arc::new(VarTable::with_flags(&self.names, &flags).expect("names come from a valid table"))
    }

    /// The center generators as Laurent monomials.
    pub fn monomials(&self) -> Result<Vec<Polynomial>> {
        let ctx = self.laurent_ctx();
        self.kernel
            .iter()
            .map(|v| {
                let e = v
                    .iter()
                    .map(|x| x.to_i32().ok_or_else(|| Error::Input(format!("exponent {x} out of range"))))
                    .collect::<Result<Vec<_>>>()?;
                Polynomial::try_term(&ctx, Monomial::from_exponents(e), Rational::from_integer(1.into()))
            })
            .collect()
    }
}

/// Poisson center of `𝕂[x_1^{±1}, …, x_N^{±1}]` with bracket `λ`: spanned
/// by the monomials `x^m` with `λ m = 0`.
pub fn poisson_center_torus(m: &LogBracketMatrix) -> TorusCenter {
    let n = m.len();
    let rows: Vec<Vec<BigInt>> = m
        .entries
        .iter()
        .filter(|r| r.iter().any(|q| !q.is_zero()))
        .map(|r| primitive_integer(r))
        .collect();
    let kernel = integer_kernel(&rows, n);
    let mut center = TorusCenter { names: m.names.clone(), kernel, generators: Vec::new() };
    center.generators = center.monomials().map(|ms| ms.iter().map(|p| p.to_string()).collect()).unwrap_or_default();
    center
}

/// Symbolic check that each center monomial brackets to zero with every
/// generator in the Laurent torus.
pub fn center_commutes(m: &LogBracketMatrix, center: &TorusCenter) -> Result<bool> {
    let ctx = center.laurent_ctx();
    let table = m.to_table(&ctx)?;
    for z in center.monomials()? {
        for i in 0..ctx.len() {
            if !table.bracket(&z, &Polynomial::var(&ctx, i))?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct StratumSummary {
    pub ideal: Vec<String>,
    pub surviving: Vec<String>,
    pub matrix: LogBracketMatrix,
    pub center: TorusCenter,
    /// Rank of the center lattice.
    pub dimension: usize,
    pub note: String,
}

/// The stratum of a variable-generated H-prime of a Poisson affine space:
/// the torus on the surviving variables and its Poisson center.
pub fn stratum_summary(p: &PoissonPresentation, node: &HPrimeNode) -> Result<StratumSummary> {
    let m = extract_log_matrix(p.table())?;
    let ideal = node.ideal.embed(p.ctx())?;
    let killed = ideal
        .variable_generators()?
        .ok_or_else(|| Error::Precondition(format!("ideal {:?} is not generated by variables", node.generators)))?;
    let keep: Vec<usize> = (0..p.len()).filter(|i| !killed.contains(i)).collect();
    let sub = m.restrict(&keep);
    let center = poisson_center_torus(&sub);
    let dimension = center.rank();
    let note = format!(
        "the stratum is homeomorphic to Spec of the center, a Laurent polynomial ring in {dimension} variable{}",
        if dimension == 1 { "" } else { "s" }
    );
    Ok(StratumSummary {
        ideal: node.generators.clone(),
        surviving: sub.names.clone(),
        matrix: sub,
        center,
        dimension,
        note,
    })
}
