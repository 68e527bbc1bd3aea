mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{bellsig_perturbed, bellsig_table, fixture, ideal, poly};
use poisson_cgl::cauchon::{check_theta, d_element_from_normal, d_element_search, enumerate_hprimes, normal_element, theta};
use poisson_cgl::ideals::{
    chain_report, h_core, is_poisson_ideal, normal_form, poisson_closure, s_polynomial, Ideal, MonomialOrder, Primality,
};
use poisson_cgl::qpoly::{ctx_of, int, Rational};
use poisson_cgl::strata::{center_commutes, poisson_center_torus, stratum_summary, LogBracketMatrix};

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn run(n: usize, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
    let took = start.elapsed();
    let res = match (res, limit) {
        (Ok(()), Some(l)) if took > l => Err(format!("took {took:.2?}, limit {l:?}")),
        (r, _) => r,
    };
    match &res {
        Ok(()) => println!("PASS {n:>2} {name} ({took:.2?})"),
        Err(e) => println!("FAIL {n:>2} {name}: {e}"),
    }
    res.is_ok()
}

fn jacobi() -> Outcome {
    ensure!(bellsig_table().check_jacobi().passed, "bellsig table fails Jacobi");
    let r = bellsig_perturbed().check_jacobi();
    ensure!(!r.passed, "perturbed table passes Jacobi");
    ensure!(r.failures.iter().all(|f| !f.residual.is_zero()), "zero residual reported");
    Ok(())
}

fn cgl_verdicts() -> Outcome {
    for name in ["weyl", "pplane"] {
        ensure!(fixture(name).verify_cgl().passed, "{name} fails");
    }
    let r = fixture("bellsig").verify_cgl();
    ensure!(!r.passed, "bellsig passes");
    let l4 = &r.levels[3];
    ensure!(!l4.delta_nilpotent && !l4.h_valid, "bellsig level 4 should fail nilpotency and h");
    Ok(())
}

fn theta_correct() -> Outcome {
    let l = fixture("weyl").level(2).unwrap();
    let t = theta(&l, &poly(&l.a_ctx, "a")).unwrap();
    ensure!(t == poly(&l.hat_ctx, "a - X^-1"), "θ(a) = {t}");
    for name in ["weyl", "pplane", "m2"] {
        let p = fixture(name);
        for k in 2..=p.len() {
            let r = check_theta(&p.level(k).unwrap(), 100, k as u64).unwrap();
            ensure!(r.passed && r.samples == 100, "{name} level {k}: {r:?}");
        }
    }
    Ok(())
}

fn normal() -> Outcome {
    let p = fixture("weyl");
    let l = p.level(2).unwrap();
    let ne = normal_element(&l, &poly(&l.a_ctx, "a")).unwrap();
    ensure!(ne.element.to_string() == "a*X - 1", "got {}", ne.element);
    ensure!(ne.eta == int(-1), "eta");
    ensure!(ne.normality.normal && ne.commutation, "certificates");
    // {u, g} = u·q for every generator g
    let u = &ne.element;
    for i in 0..p.len() {
        let g = poisson_cgl::qpoly::Polynomial::var(p.ctx(), i);
        let b = p.table().bracket(u, &g).unwrap();
        ensure!(b.div_exact(u).unwrap().is_some(), "{u} does not divide {{{u}, {g}}}");
    }
    let x = l.x();
    ensure!(p.table().bracket(u, &x).unwrap() == (u * &x).scale(&-ne.eta.clone()), "{{u, X}}");
    Ok(())
}

fn d_element() -> Outcome {
    let l = fixture("weyl").level(2).unwrap();
    let a = poly(&l.a_ctx, "a");
    let (d1, checks) = d_element_from_normal(&l, &a, 1).unwrap();
    ensure!(d1.to_string() == "1/a" && checks.passed(), "formula gives {d1}");
    let found = d_element_search(&l, &Ideal::zero(&l.a_ctx), 4).unwrap();
    let d2 = found.found().ok_or("search found nothing")?;
    ensure!(d2.same_value(&d1, None).unwrap(), "paths disagree: {d1} vs {d2}");
    // d = 1/a: σ(d) = λd  ⇔  -σ(a) = λa,   δ(d) = -λd²  ⇔  δ(a) = λ
    let sa = l.sigma.apply(&a).unwrap();
    ensure!(-sa == a.scale(&l.lambda), "σ identity");
    ensure!(l.delta.apply(&a).unwrap() == poly(&l.a_ctx, "1").scale(&l.lambda), "δ identity");
    Ok(())
}

/// 2×2 grids where each black cell has all cells to its left black or all cells above it black.
fn cauchon_diagrams_2x2() -> usize {
    (0u32..16)
        .filter(|mask| {
            let black = |i: usize, j: usize| mask & (1 << (2 * i + j)) != 0;
            (0..2).all(|i| {
                (0..2).all(|j| !black(i, j) || (0..j).all(|k| black(i, k)) || (0..i).all(|k| black(k, j)))
            })
        })
        .count()
}

fn hprime_counts() -> Outcome {
    ensure!(cauchon_diagrams_2x2() == 14, "oracle gives {}", cauchon_diagrams_2x2());
    for (name, want) in [("weyl", 2), ("pplane", 4), ("m2", 14)] {
        let p = fixture(name);
        let t = enumerate_hprimes(&p, p.bounds().degree).unwrap();
        ensure!(t.count == want, "{name}: {} H-primes", t.count);
        for n in t.top_nodes() {
            ensure!(is_poisson_ideal(p.table(), &n.ideal).unwrap(), "{name}: {:?} not Poisson", n.generators);
            ensure!(h_core(p.grading(), &n.ideal).unwrap().same_as(&n.ideal).unwrap(), "{name}: {:?} not graded", n.generators);
        }
    }
    Ok(())
}

fn closures() -> Outcome {
    let t = bellsig_table();
    let c = t.ctx().clone();
    let cl = poisson_closure(&t, &ideal(&c, &["x"])).unwrap();
    ensure!(cl.ideal.same_as(&ideal(&c, &["x", "y*z"])).unwrap(), "closure ⟨x⟩ = {:?}", cl.ideal.basis_strings());
    for gens in [&["x", "y"][..], &["z"]] {
        let i = ideal(&c, gens);
        ensure!(poisson_closure(&t, &i).unwrap().ideal.same_as(&i).unwrap(), "{gens:?} is not a fixpoint");
    }
    Ok(())
}

fn chains() -> Outcome {
    let p = fixture("bellsig");
    let c = p.ctx();
    let short = [ideal(c, &[]), ideal(c, &["x", "y"]), ideal(c, &["x", "y", "z"])];
    let long = [ideal(c, &[]), ideal(c, &["z"]), ideal(c, &["x", "z"]), ideal(c, &["x", "y", "z"])];
    let (s, l) = (chain_report(&p, &short).unwrap(), chain_report(&p, &long).unwrap());
    for r in [&s, &l] {
        ensure!(r.all_poisson, "non-Poisson link");
        ensure!(r.ideals.iter().all(|i| i.prime == Primality::Verified), "primality not verified");
    }
    ensure!(s.length == 2 && l.length == 3, "lengths {} and {}", s.length, l.length);
    ensure!(s.drops[0] == 2 && !s.saturated_in_spec, "short chain drops {:?}", s.drops);
    ensure!(l.saturated_in_spec, "long chain not saturated");
    Ok(())
}

fn centers() -> Outcome {
    let p = fixture("pplane");
    let t = enumerate_hprimes(&p, 4).unwrap();
    // pplane: {X,a} = aX, so the 2×2 matrix has determinant 1 and a zero kernel
    for (gens, vars, dim) in [(&[][..], 2usize, 0usize), (&["X", "a"][..], 0, 0), (&["a"][..], 1, 1)] {
        let node = t.top_nodes().find(|n| n.generators == gens).ok_or("missing node")?;
        let s = stratum_summary(&p, node).unwrap();
        ensure!(s.surviving.len() == vars && s.dimension == dim, "{gens:?}: {:?} dim {}", s.surviving, s.dimension);
        ensure!(center_commutes(&s.matrix, &s.center).unwrap(), "{gens:?} center does not commute");
    }
    let names: Vec<String> = ["x1", "x2", "x3"].iter().map(|s| s.to_string()).collect();
    let mut m = LogBracketMatrix::zero(&names);
    m.set(1, 0, int(1));
    m.set(2, 0, int(-1));
    let c = poisson_center_torus(&m);
    ensure!(c.kernel == vec![vec![0.into(), 1.into(), 1.into()]], "kernel {:?}", c.kernel);
    let v: Vec<Rational> = [0, 1, 1].map(int).to_vec();
    for row in &m.entries {
        ensure!(row.iter().zip(&v).fold(int(0), |acc, (a, b)| acc + a * b) == int(0), "M·v ≠ 0");
    }
    ensure!(c.generators == ["x2*x3"], "generators {:?}", c.generators);
    ensure!(center_commutes(&m, &c).unwrap(), "x2*x3 is not central");
    Ok(())
}

fn groebner_suite() -> Outcome {
    let order = MonomialOrder::GrevLex;
    for name in ["weyl", "pplane", "m2", "bellsig"] {
        let p = fixture(name);
        let mut ideals: Vec<Ideal> = Vec::new();
        if let Ok(t) = enumerate_hprimes(&p, 4) {
            ideals.extend(t.nodes.iter().filter(|n| n.level == p.len()).map(|n| n.ideal.clone()));
        } else {
            ideals.push(poisson_closure(p.table(), &ideal(p.ctx(), &["x"])).unwrap().ideal);
        }
        for i in &ideals {
            let b = i.basis().unwrap();
            for x in 0..b.len() {
                for y in x + 1..b.len() {
                    let s = s_polynomial(&b[x], &b[y], &order);
                    ensure!(normal_form(&s, b, &order).is_zero(), "{name}: S({}, {}) does not reduce", b[x], b[y]);
                }
            }
        }
    }
    let ac = ctx_of(&["a", "X"]);
    let i = ideal(&ac, &["a*X - 1"]);
    ensure!(i.saturate(&poly(&ac, "a")).unwrap().same_as(&i).unwrap(), "(⟨aX-1⟩ : a^∞)");
    let xy = ctx_of(&["x", "y"]);
    ensure!(ideal(&xy, &["x*y"]).saturate(&poly(&xy, "x")).unwrap().same_as(&ideal(&xy, &["y"])).unwrap(), "(⟨xy⟩ : x^∞)");
    ensure!(i.eliminate(&[0]).unwrap().is_zero_ideal(), "⟨aX-1⟩ ∩ K[a]");
    ensure!(ideal(&ac, &["a", "X"]).eliminate(&[0]).unwrap().basis_strings().unwrap() == ["a"], "⟨a,X⟩ ∩ K[a]");
    let xyz = ctx_of(&["x", "y", "z"]);
    ensure!(ideal(&xyz, &["x", "y*z"]).eliminate(&[1, 2]).unwrap().basis_strings().unwrap() == ["y*z"], "⟨x,yz⟩ ∩ K[y,z]");
    let m2 = fixture("m2");
    for mask in 0u32..16 {
        let vars: Vec<usize> = (0..4).filter(|v| mask & (1 << v) != 0).collect();
        let d = Ideal::of_variables(m2.ctx(), &vars).dimension().unwrap();
        ensure!(d == 4 - vars.len(), "dim ⟨{vars:?}⟩ = {d}");
    }
    Ok(())
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let results = [
        run(1, "jacobi identity on the example table and its perturbation", secs(1), jacobi),
        run(2, "cgl verification verdicts", secs(5), cgl_verdicts),
        run(3, "theta values and identities", secs(10), theta_correct),
        run(4, "normal element and certificates", None, normal),
        run(5, "d-element by formula and by search", None, d_element),
        run(6, "h-prime counts against the diagram oracle", secs(60), hprime_counts),
        run(7, "poisson closures", None, closures),
        run(8, "chains showing the prime spectrum is not catenary", None, chains),
        run(9, "poisson torus centers", None, centers),
        run(10, "groebner engine suite", None, groebner_suite),
    ];
    if !results.iter().all(|&ok| ok) {
        std::process::exit(1);
    }
}
