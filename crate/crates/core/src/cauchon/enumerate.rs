use std::fmt::Write as _;

use serde::Serialize;

use super::delement::{d_element_search_with, second_lift, DElement, DSearch};
use super::normal_element;
use crate::cgl::PoissonPresentation;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::ideals::{is_graded, is_poisson_ideal, primality, Ideal, Primality};
use crate::qpoly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Root,
    /// `R_k Q` for a δ-stable `Q`.
    Induced,
    /// The lift through `X − d`.
    Second,
}

#[derive(Clone, Debug, Serialize)]
pub struct HPrimeNode {
    pub id: usize,
    pub level: usize,
    pub parent: Option<usize>,
    pub branch: Branch,
    pub generators: Vec<String>,
    pub d: Option<DElement>,
    pub poisson: bool,
    pub h_stable: bool,
    pub contracts_to_parent: bool,
    pub prime: Primality,
    /// Whether the ideal is stable under the next level's δ; `None` at
    /// the top level.
    pub delta_stable: Option<bool>,
    /// The d-search for this node's second lift was inconclusive.
    pub possibly_missing_branch: bool,
    #[serde(skip)]
    pub ideal: Ideal,
}

#[derive(Clone, Debug, Serialize)]
pub struct HPrimeTree {
    pub generators: Vec<String>,
    /// Number of Poisson H-primes of the full algebra found.
    pub count: usize,
    /// Ids of the top-level nodes.
    pub top: Vec<usize>,
    pub nodes: Vec<HPrimeNode>,
}

pub fn enumerate_hprimes(p: &PoissonPresentation, degree_bound: usize) -> Result<HPrimeTree> {
    enumerate_hprimes_with(p, degree_bound, Exec::default())
}

/// Level-by-level lifting from the zero ideal of the base field. Each
/// δ_k-stable node of `R_{k-1}` lifts to `R_k Q` and, when a d-element is
/// found over `A/Q`, to a second ideal; other nodes have no lifts.
/// δ-stability, the lifted children and whether a branch may be missing.
type Lifted = (bool, Vec<(Branch, Ideal, Option<DElement>)>, bool);

pub fn enumerate_hprimes_with(p: &PoissonPresentation, degree_bound: usize, exec: Exec) -> Result<HPrimeTree> {
    let report = p.verify_cgl_with(exec);
    if !report.passed {
        return Err(Error::Precondition(format!(
            "presentation fails the CGL axioms (levels {:?})",
            report.failed_levels()
        )));
    }
    let root_ctx = p.level_ctx(0);
    let root = Ideal::zero(&root_ctx).with_budget(p.bounds().groebner_steps);
    let mut nodes = vec![HPrimeNode {
        id: 0,
        level: 0,
        parent: None,
        branch: Branch::Root,
        generators: Vec::new(),
        d: None,
        poisson: true,
        h_stable: true,
        contracts_to_parent: true,
        prime: Primality::Verified,
        delta_stable: None,
        possibly_missing_branch: false,
        ideal: root,
    }];
    let mut current = vec![0usize];
    let mut normals: Vec<Polynomial> = Vec::new();
    for k in 1..=p.len() {
        let l = p.level(k)?;
        let pool: Vec<Polynomial> = normals.iter().map(|x| x.embed(&l.a_ctx)).collect::<Result<_>>()?;
        let parents: Vec<(usize, Ideal)> = current.iter().map(|&i| (i, nodes[i].ideal.clone())).collect();
        let lifted = exec.map(&parents, |(_, q)| -> Result<Lifted> {
            let stable = q.basis()?.iter().try_fold(true, |ok, g| Ok::<_, Error>(ok && q.contains_poly(&l.delta.apply(g)?)?))?;
            if !stable {
                return Ok((false, Vec::new(), false));
            }
            let mut out = vec![(Branch::Induced, q.embed(&l.r_ctx)?.canonical()?, None)];
            let mut missing = false;
            match d_element_search_with(&l, q, degree_bound, &pool)? {
                DSearch::Found { d, .. } => out.push((Branch::Second, second_lift(&l, q, &d)?, Some(d))),
                DSearch::NotFound { .. } => missing = true,
            }
            Ok((true, out, missing))
        });
        let mut next = Vec::new();
        for ((parent, q), res) in parents.iter().zip(lifted) {
            let (stable, children, missing) = res?;
            nodes[*parent].delta_stable = Some(stable);
            nodes[*parent].possibly_missing_branch = missing;
            for (branch, ideal, d) in children {
                let id = nodes.len();
                nodes.push(HPrimeNode {
                    id,
                    level: k,
                    parent: Some(*parent),
                    branch,
                    generators: ideal.basis_strings()?,
                    d,
                    poisson: is_poisson_ideal(&l.table_r, &ideal)?,
                    h_stable: is_graded(&l.grading, &ideal)?,
                    contracts_to_parent: ideal.contract(&l.a_ctx)?.same_as(q)?,
                    prime: primality(&ideal)?,
                    delta_stable: None,
                    possibly_missing_branch: false,
                    ideal,
                });
                next.push(id);
            }
        }
        current = next;
        for j in 0..k - 1 {
            if let Ok(ne) = normal_element(&l, &Polynomial::var(&l.a_ctx, j)) {
                if ne.s > 0 && ne.normality.normal {
                    normals.push(ne.element);
                }
            }
        }
    }
    Ok(HPrimeTree { generators: p.ctx().names().to_vec(), count: current.len(), top: current, nodes })
}

impl HPrimeTree {
    pub fn top_nodes(&self) -> impl Iterator<Item = &HPrimeNode> {
        self.top.iter().map(|&i| &self.nodes[i])
    }

    /// Hasse diagram of the top-level ideals under inclusion.
    pub fn to_dot(&self) -> Result<String> {
        let top: Vec<&HPrimeNode> = self.top_nodes().collect();
        let n = top.len();
        let mut below = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                below[i][j] = i != j && top[j].ideal.contains(&top[i].ideal)?;
            }
        }
        let mut out = String::from("digraph hprimes {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, node) in top.iter().enumerate() {
            let label = if node.generators.is_empty() {
                "0".to_string()
            } else {
                format!("⟨{}⟩", node.generators.join(", "))
            };
            let _ = writeln!(out, "  n{} [label=\"{}\"];", node.id, label);
            let _ = i;
        }
        for i in 0..n {
            for j in 0..n {
                if below[i][j] && !(0..n).any(|m| below[i][m] && below[m][j]) {
                    let _ = writeln!(out, "  n{} -> n{};", top[i].id, top[j].id);
                }
            }
        }
        out.push_str("}\n");
        Ok(out)
    }
}
