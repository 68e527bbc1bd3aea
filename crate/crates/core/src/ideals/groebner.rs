//! Buchberger's algorithm over ℚ.
//!
//! Polynomials are kept internally as primitive integer polynomials with
//! terms in ascending order (leading term last). Critical pairs are chosen by
//! the sugar strategy and pruned with the Gebauer–Möller criteria.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::qpoly::{grevlex, Ctx, Monomial, Polynomial, Rational};

/// Default cap on reduction steps for one basis computation.
pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic, first variable largest.
    GrevLex,
    /// Lexicographic, first variable largest.
    Lex,
    /// Block order: variables flagged `true` form the larger block; each
    /// block is compared by grevlex. Eliminates the flagged variables.
    Elimination(Vec<bool>),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[i32], b: &[i32]) -> Ordering {
        match self {
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Elimination(mask) => {
                let pick = |v: &[i32], keep: bool| -> Vec<i32> {
                    v.iter().zip(mask).map(|(&e, &m)| if m == keep { e } else { 0 }).collect()
                };
                grevlex(&pick(a, true), &pick(b, true)).then_with(|| grevlex(&pick(a, false), &pick(b, false)))
            }
        }
    }

    /// Elimination order for the variables not in `keep`.
    pub fn eliminating(nvars: usize, keep: &[usize]) -> Self {
        MonomialOrder::Elimination((0..nvars).map(|i| !keep.contains(&i)).collect())
    }
}

type Exp = Vec<i32>;

#[derive(Clone, Debug)]
struct IPoly {
    /// Ascending order; leading term last.
    terms: Vec<(Exp, BigInt)>,
    sugar: i64,
}

fn deg(e: &[i32]) -> i64 {
    e.iter().map(|&x| x as i64).sum()
}

fn divides(a: &[i32], b: &[i32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[i32], b: &[i32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[i32], b: &[i32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn sub_exp(a: &[i32], b: &[i32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl IPoly {
    fn from_poly(p: &Polynomial, order: &MonomialOrder) -> IPoly {
        let prim = p.primitive();
        let mut terms: Vec<(Exp, BigInt)> =
            prim.term_map().iter().map(|(m, c)| (m.exponents().to_vec(), c.numer().clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        let sugar = terms.iter().map(|t| deg(&t.0)).max().unwrap_or(0);
        IPoly { terms, sugar }
    }

    fn lm(&self) -> &Exp {
        &self.terms.last().unwrap().0
    }

    fn lc(&self) -> &BigInt {
        &self.terms.last().unwrap().1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_primitive(&mut self) {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if g.is_zero() {
            return;
        }
        if self.lc().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in self.terms.iter_mut() {
                *c = &*c / &g;
            }
        }
    }

    /// `a*self - b*shift*g`, merging in ascending order.
    fn combine(&self, a: &BigInt, b: &BigInt, shift: &[i32], g: &[(Exp, BigInt)], order: &MonomialOrder) -> Vec<(Exp, BigInt)> {
        let mut out = Vec::with_capacity(self.terms.len() + g.len());
        let gs: Vec<(Exp, BigInt)> =
            g.iter().map(|(e, c)| (e.iter().zip(shift).map(|(x, y)| x + y).collect(), c.clone())).collect();
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < gs.len() {
            let ord = if i == self.terms.len() {
                Ordering::Greater
            } else if j == gs.len() {
                Ordering::Less
            } else {
                order.cmp(&self.terms[i].0, &gs[j].0)
            };
            match ord {
                Ordering::Less => {
                    out.push((self.terms[i].0.clone(), a * &self.terms[i].1));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((gs[j].0.clone(), -(b * &gs[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a * &self.terms[i].1 - b * &gs[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    fn to_poly(&self, ctx: &Ctx) -> Polynomial {
        let lc = Rational::from_integer(self.lc().clone());
        Polynomial::from_terms(
            ctx,
            self.terms
                .iter()
                .map(|(e, c)| (Monomial::from_exponents(e.clone()), Rational::from_integer(c.clone()) / &lc)),
        )
    }
}

struct Budget {
    used: u64,
    limit: u64,
}

impl Budget {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::GroebnerBudget { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

/// Fraction-free reduction of `h` by `basis`. With `full`, tail terms are
/// reduced as well; otherwise stops at the first irreducible leading term.
fn reduce(mut h: IPoly, basis: &[&IPoly], order: &MonomialOrder, full: bool, budget: &mut Budget) -> Result<IPoly> {
    let mut done: Vec<(Exp, BigInt)> = Vec::new(); // descending
    let mut since_clean = 0;
    while let Some((lm, lc)) = h.terms.last().cloned() {
        match basis.iter().find(|g| divides(g.lm(), &lm)) {
            Some(g) => {
                budget.tick()?;
                let shift = sub_exp(&lm, g.lm());
                let gg = lc.gcd(g.lc());
                let a = g.lc() / &gg;
                let b = &lc / &gg;
                h.sugar = h.sugar.max(g.sugar + deg(&shift));
                h.terms.pop();
                let tail = &g.terms[..g.terms.len() - 1];
                h.terms = h.combine(&a, &b, &shift, tail, order);
                if !a.is_one() {
                    for (_, c) in done.iter_mut() {
                        *c *= &a;
                    }
                }
                since_clean += 1;
                if since_clean >= 8 {
                    since_clean = 0;
                    let mut g = BigInt::zero();
                    for (_, c) in h.terms.iter().chain(done.iter()) {
                        g = g.gcd(c);
                        if g.is_one() {
                            break;
                        }
                    }
                    if !g.is_zero() && !g.is_one() {
                        for (_, c) in h.terms.iter_mut().chain(done.iter_mut()) {
                            *c = &*c / &g;
                        }
                    }
                }
            }
            None => {
                if !full {
                    break;
                }
                done.push(h.terms.pop().unwrap());
            }
        }
    }
    // h holds the unreduced remainder (ascending) when !full; done is descending
    done.reverse();
    let mut terms = h.terms;
    terms.extend(done);
    let mut out = IPoly { terms, sugar: h.sugar };
    out.make_primitive();
    Ok(out)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Exp,
    sugar: i64,
}

/// Reduced Gröbner basis of the ideal generated by `gens`, monic, sorted by
/// ascending leading monomial in `order`.
pub fn groebner_basis(ctx: &Ctx, gens: &[Polynomial], order: &MonomialOrder, step_budget: u64) -> Result<Vec<Polynomial>> {
    let mut budget = Budget { used: 0, limit: step_budget };
    let mut basis: Vec<IPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<IPoly> =
        gens.iter().filter(|p| !p.is_zero()).map(|p| IPoly::from_poly(p, order)).collect();
    inputs.sort_by(|a, b| order.cmp(a.lm(), b.lm()));

    let mut queue: Vec<IPoly> = inputs;
    queue.reverse();
    loop {
        let h = if let Some(h) = queue.pop() {
            let refs: Vec<&IPoly> = basis.iter().zip(&active).filter(|(_, &a)| a).map(|(g, _)| g).collect();
            reduce(h, &refs, order, false, &mut budget)?
        } else if !pairs.is_empty() {
            let (best, _) = pairs
                .iter()
                .enumerate()
                .min_by(|(_, p), (_, q)| p.sugar.cmp(&q.sugar).then_with(|| order.cmp(&p.lcm, &q.lcm)))
                .unwrap();
            let p = pairs.swap_remove(best);
            let s = spoly(&basis[p.i], &basis[p.j], &p.lcm, order);
            let refs: Vec<&IPoly> = basis.iter().zip(&active).filter(|(_, &a)| a).map(|(g, _)| g).collect();
            reduce(s, &refs, order, false, &mut budget)?
        } else {
            break;
        };
        if h.is_zero() {
            continue;
        }
        if h.lm().iter().all(|&e| e == 0) {
            // unit ideal
            return Ok(vec![Polynomial::one(ctx)]);
        }
        update(&mut basis, &mut active, &mut pairs, h);
    }

    // minimalize then interreduce
    let mut kept: Vec<IPoly> = Vec::new();
    let mut cand: Vec<IPoly> = basis.into_iter().zip(active).filter(|(_, a)| *a).map(|(g, _)| g).collect();
    cand.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for g in cand {
        if !kept.iter().any(|k| divides(k.lm(), g.lm())) {
            kept.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(kept.len());
    for idx in 0..kept.len() {
        let others: Vec<&IPoly> = kept.iter().enumerate().filter(|(j, _)| *j != idx).map(|(_, g)| g).collect();
        let r_scaled = interreduce_one(&kept[idx], &others, order, &mut budget)?;
        reduced.push(r_scaled);
    }
    let mut out: Vec<Polynomial> = reduced.iter().map(|g| g.to_poly(ctx)).collect();
    out.sort_by(|a, b| cmp_leading(a, b, order));
    Ok(out)
}

/// Reduces every non-leading term of `orig` by `others`.
fn interreduce_one(orig: &IPoly, others: &[&IPoly], order: &MonomialOrder, budget: &mut Budget) -> Result<IPoly> {
    let mut h = orig.clone();
    let lead = h.terms.pop().unwrap();
    let mut acc: Vec<(Exp, BigInt)> = vec![lead];
    let mut since_clean = 0;
    while let Some((lm, lc)) = h.terms.last().cloned() {
        match others.iter().find(|g| divides(g.lm(), &lm)) {
            Some(g) => {
                budget.tick()?;
                let shift = sub_exp(&lm, g.lm());
                let gg = lc.gcd(g.lc());
                let a = g.lc() / &gg;
                let b = &lc / &gg;
                h.terms.pop();
                let tail = &g.terms[..g.terms.len() - 1];
                h.terms = h.combine(&a, &b, &shift, tail, order);
                if !a.is_one() {
                    for (_, c) in acc.iter_mut() {
                        *c *= &a;
                    }
                }
                since_clean += 1;
                if since_clean >= 8 {
                    since_clean = 0;
                    let mut g = BigInt::zero();
                    for (_, c) in h.terms.iter().chain(acc.iter()) {
                        g = g.gcd(c);
                    }
                    if !g.is_zero() && !g.is_one() {
                        for (_, c) in h.terms.iter_mut().chain(acc.iter_mut()) {
                            *c = &*c / &g;
                        }
                    }
                }
            }
            None => acc.push(h.terms.pop().unwrap()),
        }
    }
    acc.reverse();
    let mut out = IPoly { terms: acc, sugar: orig.sugar };
    out.make_primitive();
    Ok(out)
}

fn cmp_leading(a: &Polynomial, b: &Polynomial, order: &MonomialOrder) -> Ordering {
    let la = leading_exp(a, order);
    let lb = leading_exp(b, order);
    order.cmp(&la, &lb)
}

fn leading_exp(p: &Polynomial, order: &MonomialOrder) -> Exp {
    p.term_map()
        .keys()
        .map(|m| m.exponents().to_vec())
        .max_by(|x, y| order.cmp(x, y))
        .unwrap_or_default()
}

fn spoly(f: &IPoly, g: &IPoly, l: &[i32], order: &MonomialOrder) -> IPoly {
    let sf = sub_exp(l, f.lm());
    let sg = sub_exp(l, g.lm());
    let gg = f.lc().gcd(g.lc());
    let a = g.lc() / &gg;
    let b = f.lc() / &gg;
    let fs = IPoly {
        terms: f.terms.iter().map(|(e, c)| (e.iter().zip(&sf).map(|(x, y)| x + y).collect(), c.clone())).collect(),
        sugar: f.sugar + deg(&sf),
    };
    let mut out = IPoly { terms: fs.combine(&a, &b, &sg, &g.terms, order), sugar: fs.sugar.max(g.sugar + deg(&sg)) };
    out.make_primitive();
    out
}

/// Gebauer–Möller update after adding `h` to the basis.
fn update(basis: &mut Vec<IPoly>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: IPoly) {
    let hidx = basis.len();
    let hlm = h.lm().clone();
    let hsugar = h.sugar;

    let cands: Vec<(usize, Exp)> = (0..basis.len())
        .filter(|&i| active[i])
        .map(|i| (i, lcm(&hlm, basis[i].lm())))
        .collect();

    // chain criterion among the new pairs
    let mut keep: Vec<(usize, Exp)> = Vec::new();
    for (k, (i, l)) in cands.iter().enumerate() {
        let cop = coprime(&hlm, basis[*i].lm());
        let dominated = cands.iter().enumerate().any(|(k2, (_, l2))| {
            k2 != k && divides(l2, l) && (l2 != l || k2 < k)
        });
        if cop || !dominated {
            keep.push((*i, l.clone()));
        }
    }
    let keep: Vec<(usize, Exp)> = keep.into_iter().filter(|(i, _)| !coprime(&hlm, basis[*i].lm())).collect();

    // prune old pairs whose lcm is divisible by lm(h) strictly
    pairs.retain(|p| {
        !(divides(&hlm, &p.lcm)
            && lcm(basis[p.i].lm(), &hlm) != p.lcm
            && lcm(basis[p.j].lm(), &hlm) != p.lcm)
    });

    for (i, l) in keep {
        let g = &basis[i];
        let sugar = (hsugar + deg(&l) - deg(&hlm)).max(g.sugar + deg(&l) - deg(g.lm()));
        pairs.push(Pair { i, j: hidx, lcm: l, sugar });
    }

    for i in 0..basis.len() {
        if active[i] && divides(&hlm, basis[i].lm()) {
            active[i] = false;
        }
    }
    basis.push(h);
    active.push(true);
}

/// Full reduction of `f` modulo a reduced basis (monic, any order) over ℚ.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let ctx = f.ctx().clone();
    let leads: Vec<(Exp, &Polynomial)> = basis.iter().map(|g| (leading_exp(g, order), g)).collect();
    let mut work: Vec<(Exp, Rational)> =
        f.term_map().iter().map(|(m, c)| (m.exponents().to_vec(), c.clone())).collect();
    work.sort_by(|a, b| order.cmp(&a.0, &b.0));
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    let mut map: std::collections::BTreeMap<OrdExp, Rational> =
        work.into_iter().map(|(e, c)| (OrdExp(e, order.clone()), c)).collect();
    while let Some((k, c)) = map.pop_last() {
        let e = k.0;
        match leads.iter().find(|(l, _)| divides(l, &e)) {
            Some((l, g)) => {
                let shift = sub_exp(&e, l);
                let lc = g.coefficient(&Monomial::from_exponents(l.clone()));
                let q = &c / &lc;
                for (m, gc) in g.term_map() {
                    let ne: Exp = m.exponents().iter().zip(&shift).map(|(x, y)| x + y).collect();
                    if ne == e {
                        continue;
                    }
                    let key = OrdExp(ne, order.clone());
                    let v = map.remove(&key).unwrap_or_else(Rational::zero) - &q * gc;
                    if !v.is_zero() {
                        map.insert(key, v);
                    }
                }
            }
            None => rem.push((Monomial::from_exponents(e), c)),
        }
    }
    Polynomial::from_terms(&ctx, rem)
}

#[derive(Clone, Debug)]
struct OrdExp(Exp, MonomialOrder);

impl PartialEq for OrdExp {
    fn eq(&self, o: &Self) -> bool {
        self.0 == o.0
    }
}
impl Eq for OrdExp {}
impl PartialOrd for OrdExp {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for OrdExp {
    fn cmp(&self, o: &Self) -> Ordering {
        self.1.cmp(&self.0, &o.0)
    }
}

/// Leading monomial of `p` under `order`.
pub fn leading_monomial(p: &Polynomial, order: &MonomialOrder) -> Option<Monomial> {
    if p.is_zero() {
        None
    } else {
        Some(Monomial::from_exponents(leading_exp(p, order)))
    }
}

/// S-polynomial over ℚ of two polynomials under `order`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Polynomial {
    let lf = leading_exp(f, order);
    let lg = leading_exp(g, order);
    let l = lcm(&lf, &lg);
    let cf = f.coefficient(&Monomial::from_exponents(lf.clone()));
    let cg = g.coefficient(&Monomial::from_exponents(lg.clone()));
    let tf = Polynomial::term(f.ctx(), Monomial::from_exponents(sub_exp(&l, &lf)), cf.recip());
    let tg = Polynomial::term(g.ctx(), Monomial::from_exponents(sub_exp(&l, &lg)), cg.recip());
    &(&tf * f) - &(&tg * g)
}

/// Expresses `f` in terms of `gens` when it lies in their ideal: returns
/// cofactors `q_i` with `f = Σ q_i gens_i`. Plain Buchberger with cofactor
/// tracking, for small certificate computations.
pub fn lift(ctx: &Ctx, gens: &[Polynomial], f: &Polynomial, step_budget: u64) -> Result<Option<Vec<Polynomial>>> {
    let order = MonomialOrder::GrevLex;
    let n = gens.len();
    let mut budget = Budget { used: 0, limit: step_budget };
    let unit = |k: usize| -> Vec<Polynomial> {
        (0..n).map(|i| if i == k { Polynomial::one(ctx) } else { Polynomial::zero(ctx) }).collect()
    };
    let mut basis: Vec<(Polynomial, Vec<Polynomial>)> = Vec::new();
    let mut pending: Vec<(Polynomial, Vec<Polynomial>)> =
        gens.iter().enumerate().filter(|(_, g)| !g.is_zero()).map(|(k, g)| (g.clone(), unit(k))).collect();
    pending.reverse();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    loop {
        let next = if let Some(p) = pending.pop() {
            p
        } else if let Some((i, j)) = pairs.pop() {
            let (fi, ci) = &basis[i];
            let (fj, cj) = &basis[j];
            let li = leading_exp(fi, &order);
            let lj = leading_exp(fj, &order);
            if coprime(&li, &lj) {
                continue;
            }
            let l = lcm(&li, &lj);
            let ti = Polynomial::term(ctx, Monomial::from_exponents(sub_exp(&l, &li)), fi.leading_coefficient().recip());
            let tj = Polynomial::term(ctx, Monomial::from_exponents(sub_exp(&l, &lj)), fj.leading_coefficient().recip());
            let s = &(&ti * fi) - &(&tj * fj);
            let c: Vec<Polynomial> = ci.iter().zip(cj).map(|(a, b)| &(&ti * a) - &(&tj * b)).collect();
            (s, c)
        } else {
            break;
        };
        let (r, c) = tracked_reduce(next.0, next.1, &basis, &order, &mut budget)?;
        if r.is_zero() {
            continue;
        }
        let k = basis.len();
        for i in 0..k {
            pairs.push((i, k));
        }
        basis.push((r, c));
    }
    let (r, c) = tracked_reduce(f.clone(), vec![Polynomial::zero(ctx); n], &basis, &order, &mut budget)?;
    if !r.is_zero() {
        return Ok(None);
    }
    // f - Σ q_k basis_k = 0 and tracked_reduce returns f - Σ ... ; c holds -Σ
    Ok(Some(c.into_iter().map(|p| -p).collect()))
}

/// Reduces `f` (with cofactors `c` meaning `f = Σ c_i gens_i + f0`) fully by
/// `basis`, updating cofactors so the invariant is preserved.
fn tracked_reduce(
    mut f: Polynomial,
    mut c: Vec<Polynomial>,
    basis: &[(Polynomial, Vec<Polynomial>)],
    order: &MonomialOrder,
    budget: &mut Budget,
) -> Result<(Polynomial, Vec<Polynomial>)> {
    let ctx = f.ctx().clone();
    let mut rem = Polynomial::zero(&ctx);
    while !f.is_zero() {
        let le = leading_exp(&f, order);
        let lm = Monomial::from_exponents(le.clone());
        let lc = f.coefficient(&lm);
        match basis.iter().find(|(g, _)| divides(&leading_exp(g, order), &le)) {
            Some((g, gc)) => {
                budget.tick()?;
                let ge = leading_exp(g, order);
                let t = Polynomial::term(&ctx, Monomial::from_exponents(sub_exp(&le, &ge)), &lc / g.leading_coefficient_in(order));
                f = &f - &(&t * g);
                for (ci, gci) in c.iter_mut().zip(gc) {
                    *ci = &*ci - &(&t * gci);
                }
            }
            None => {
                let t = Polynomial::term(&ctx, lm, lc);
                f = &f - &t;
                rem = &rem + &t;
            }
        }
    }
    Ok((rem, c))
}

impl Polynomial {
    pub(crate) fn leading_coefficient_in(&self, order: &MonomialOrder) -> Rational {
        self.coefficient(&Monomial::from_exponents(leading_exp(self, order)))
    }
}
