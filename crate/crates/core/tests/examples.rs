mod common;

use common::{bellsig_perturbed, bellsig_table, fixture, ideal, poly, table};
use poisson_cgl::cauchon::{
    check_theta, d_element_from_normal, d_element_search, enumerate_hprimes, normal_element, s_max, second_lift,
    separating_normal, theta, Branch,
};
use poisson_cgl::cgl::{Bounds, PoissonPresentation};
use poisson_cgl::grading::{lie_vector, GradingData};
use poisson_cgl::ideals::{chain_report, h_core, poisson_closure, Ideal, Primality};
use poisson_cgl::pbracket::BracketTable;
use poisson_cgl::qpoly::{ctx_of, int, parse, Derivation, Nilpotency, Polynomial, VarTable};
use poisson_cgl::Error;

mod qpoly {
    use super::*;

    #[test]
    fn parsing() {
        let ctx = ctx_of(&["x", "y", "z"]);
        assert_eq!(poly(&ctx, "2*y*z").to_string(), "2*y*z");
        assert!(poly(&ctx, "0").is_zero());
        assert_eq!(poly(&ctx, "0").term_map().len(), 0);
        assert_eq!(poly(&ctx, "(x+y)*(x-y)").to_string(), "x^2 - y^2");
        assert!(matches!(parse("x +* y", &ctx), Err(Error::Syntax { .. })));
        assert!(matches!(parse("q", &ctx), Err(Error::UnknownVariable(_))));
        assert!(matches!(parse("x^-1", &ctx), Err(Error::NegativeExponent(_))));
    }

    #[test]
    fn arithmetic() {
        let ctx = std::sync::Arc::new(VarTable::with_flags(&["a", "X"], &[false, true]).unwrap());
        let x = poly(&ctx, "X");
        assert!((&poly(&ctx, "X^-1") * &x).is_one());
        let ctx2 = ctx_of(&["x", "y"]);
        assert!((&poly(&ctx2, "x + y") + &poly(&ctx2, "-x - y")).is_zero());
        assert_eq!((&poly(&ctx, "a*X - 1") * &x).to_string(), "a*X^2 - X");
        assert_eq!(poly(&ctx2, "x").try_add(&poly(&ctx, "a")), Err(Error::ContextMismatch));
    }

    #[test]
    fn derivations() {
        let ctx = ctx_of(&["x", "y", "z"]);
        let d = Derivation::from_images(&ctx, vec![poly(&ctx, "2*y*z"), poly(&ctx, "x + y^2"), Polynomial::zero(&ctx)])
            .unwrap();
        assert_eq!(d.apply(&poly(&ctx, "x")).unwrap().to_string(), "2*y*z");
        assert!(d.apply(&poly(&ctx, "5")).unwrap().is_zero());
        assert_eq!(d.apply(&poly(&ctx, "y^2")).unwrap(), poly(&ctx, "2*x*y + 2*y^3"));
        let it = d.iterate(&poly(&ctx, "y"), 6).unwrap();
        assert_eq!(it.nilpotency, Nilpotency::NotWithinBound);
        let partial = Derivation::new(&ctx, vec![Some(poly(&ctx, "1")), None, None]).unwrap();
        assert!(matches!(partial.apply(&poly(&ctx, "y")), Err(Error::MissingImage(_))));

        let a = ctx_of(&["a"]);
        let da = Derivation::from_images(&a, vec![poly(&a, "1")]).unwrap();
        let it = da.iterate(&poly(&a, "a"), 10).unwrap();
        assert_eq!(it.nilpotency, Nilpotency::Index(2));
        assert_eq!(it.powers.len(), 3);
        let it = da.iterate(&Polynomial::zero(&a), 10).unwrap();
        assert_eq!(it.nilpotency, Nilpotency::Index(0));
        assert_eq!(it.powers, vec![Polynomial::zero(&a)]);
    }
}

mod pbracket {
    use super::*;

    #[test]
    fn brackets() {
        let t = bellsig_table();
        let ctx = t.ctx().clone();
        let w = poly(&ctx, "w");
        assert_eq!(t.bracket(&w, &poly(&ctx, "x")).unwrap().to_string(), "2*y*z");
        assert_eq!(t.bracket(&w, &poly(&ctx, "x*y")).unwrap(), poly(&ctx, "2*y^2*z + x^2 + x*y^2"));
        let f = poly(&ctx, "x*w + y^3 - 2");
        assert!(t.bracket(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn jacobi() {
        assert!(bellsig_table().check_jacobi().passed);
        assert!(BracketTable::abelian(&ctx_of(&["x", "y"])).check_jacobi().passed);
        let r = bellsig_perturbed().check_jacobi();
        assert!(!r.passed);
        assert!(r.failures.iter().all(|f| !f.residual.is_zero()));

        let ctx = ctx_of(&["x", "y", "z"]);
        assert!(table(&ctx, &[((2, 0), "x")]).check_jacobi().passed);
        let r = table(&ctx, &[((2, 0), "x"), ((1, 0), "z")]).check_jacobi();
        assert!(!r.passed);
        assert_eq!(r.failures[0].generators, vec!["z", "y", "x"]);
    }

    #[test]
    fn normality() {
        let t = bellsig_table();
        let ctx = t.ctx().clone();
        let r = t.is_poisson_normal(&poly(&ctx, "z"), None).unwrap();
        assert!(r.normal);
        assert!(r.quotients.iter().all(|q| q.as_ref().is_some_and(Polynomial::is_zero)));
        assert!(t.is_poisson_normal(&poly(&ctx, "1"), None).unwrap().normal);
        assert!(!t.is_poisson_normal(&poly(&ctx, "x"), None).unwrap().normal);
        assert_eq!(t.is_poisson_normal(&Polynomial::zero(&ctx), None).unwrap_err(), Error::ZeroElement);
    }

    #[test]
    fn derivation_conditions() {
        let t = bellsig_table();
        let ctx = t.ctx().clone();
        assert!(t.check_poisson_derivation(&Derivation::zero(&ctx)).unwrap().passed);
        let z = Polynomial::zero(&ctx);
        let s = Derivation::from_images(&ctx, vec![poly(&ctx, "x"), z.clone(), z.clone(), z.clone()]).unwrap();
        assert!(!t.check_poisson_derivation(&s).unwrap().passed);

        let a = ctx_of(&["a"]);
        let ab = BracketTable::abelian(&a);
        let neg = Derivation::from_images(&a, vec![poly(&a, "-a")]).unwrap();
        assert!(ab.check_poisson_derivation(&neg).unwrap().passed);
        let one = Derivation::from_images(&a, vec![poly(&a, "1")]).unwrap();
        assert!(ab.check_delta_condition(&neg, &one).unwrap().passed);

        let xyz = ctx_of(&["x", "y", "z"]);
        let d = Derivation::from_images(&xyz, vec![poly(&xyz, "2*y*z"), poly(&xyz, "x + y^2"), poly(&xyz, "0")])
            .unwrap();
        assert!(BracketTable::abelian(&xyz).check_delta_condition(&Derivation::zero(&xyz), &d).unwrap().passed);

        let abc = ctx_of(&["a", "b"]);
        let tb = table(&abc, &[((1, 0), "a")]);
        let delta = Derivation::from_images(&abc, vec![poly(&abc, "b"), poly(&abc, "0")]).unwrap();
        let r = tb.check_delta_condition(&Derivation::zero(&abc), &delta).unwrap();
        assert!(!r.passed);
        assert_eq!(r.failures[0].residual.to_string(), "b");
    }
}

mod grading {
    use super::*;

    #[test]
    fn components() {
        let g = fixture("weyl").grading().clone();
        let ctx = ctx_of(&["a", "X"]);
        let comps = g.homogeneous_components(&poly(&ctx, "a*X - 1"));
        assert_eq!(comps.keys().cloned().collect::<Vec<_>>(), vec![vec![0]]);
        let xyz = ctx_of(&["x", "y", "z"]);
        let f = poly(&xyz, "x + y*z");
        assert_eq!(GradingData::trivial(3).homogeneous_components(&f).len(), 1);
        let adhoc = GradingData::from_matrix(&[vec![2, 1, 1]], 3).unwrap();
        assert_eq!(adhoc.weight_of(&f), Some(vec![2]));
    }

    #[test]
    fn lie_action() {
        let g = fixture("weyl").grading().clone();
        let ctx = ctx_of(&["a", "X"]);
        let h = lie_vector(&[1]);
        assert_eq!(g.lie_act(&h, &poly(&ctx, "X")), poly(&ctx, "X"));
        assert!(g.lie_act(&lie_vector(&[7]), &poly(&ctx, "3")).is_zero());
        assert_eq!(g.lie_act(&h, &poly(&ctx, "a")), poly(&ctx, "-a"));
    }

    #[test]
    fn graded_brackets() {
        let w = fixture("weyl");
        assert!(w.grading().check_graded_bracket(w.table()).passed);
        assert!(GradingData::trivial(4).check_graded_bracket(&bellsig_table()).passed);
        let corrupted = GradingData::from_matrix(&[vec![1, 1]], 2).unwrap();
        let ctx = ctx_of(&["a", "X"]);
        let weyl_table = table(&ctx, &[((1, 0), "-a*X + 1")]);
        let r = corrupted.check_graded_bracket(&weyl_table);
        assert!(!r.passed);
        assert_eq!(r.failures, vec![["X".to_string(), "a".to_string()]]);
    }

    #[test]
    fn solving_h() {
        let g = fixture("weyl").grading().clone();
        assert_eq!(g.solve_h(2, &[int(-1)]).unwrap(), Some(lie_vector(&[1])));
        let h1 = g.solve_h(1, &[]).unwrap().unwrap();
        assert_ne!(g.eigenvalue(&h1, 0), int(0));
        assert_eq!(GradingData::trivial(2).solve_h(2, &[int(0)]).unwrap(), None);
        assert_eq!(GradingData::trivial(2).solve_h(1, &[]).unwrap(), None);
    }
}

mod cgl {
    use super::*;

    #[test]
    fn splitting() {
        let (s, d) = fixture("weyl").split_bracket(2).unwrap();
        assert_eq!((s[0].to_string(), d[0].to_string()), ("-a".into(), "1".into()));
        let (s, d) = fixture("pplane").split_bracket(2).unwrap();
        assert_eq!((s[0].to_string(), d[0].to_string()), ("a".into(), "0".into()));
        let (s, d) = fixture("bellsig").split_bracket(4).unwrap();
        assert_eq!((s[0].to_string(), d[0].to_string()), ("0".into(), "2*y*z".into()));
    }

    #[test]
    fn verification() {
        let r = fixture("weyl").verify_cgl();
        assert!(r.passed);
        assert_eq!(r.levels[1].lambda.as_deref(), Some("1"));
        let r = fixture("bellsig").verify_cgl();
        let l4 = &r.levels[3];
        assert!(!l4.passed && !l4.delta_nilpotent && !l4.h_valid);
        let r = fixture("pplane").verify_cgl();
        assert!(r.passed && r.levels[1].delta_nilpotent);
    }

    #[test]
    fn restriction() {
        let w = fixture("weyl");
        let full = w.restrict(2).unwrap();
        assert_eq!(full.table().entries(), w.table().entries());
        assert_eq!(w.restrict(0).unwrap().len(), 0);
        let one = w.restrict(1).unwrap();
        assert!(one.table().is_abelian());
        assert_eq!(one.grading().weight(0), &[-1]);
        assert!(matches!(w.restrict(3), Err(Error::LevelOutOfRange { .. })));
    }
}

mod cauchon {
    use super::*;

    #[test]
    fn theta_values() {
        let l = fixture("weyl").level(2).unwrap();
        let a = poly(&l.a_ctx, "a");
        assert_eq!(theta(&l, &a).unwrap().to_string(), "a - X^-1");
        assert_eq!(theta(&l, &poly(&l.a_ctx, "a^2")).unwrap().to_string(), "a^2 - 2*a*X^-1 + X^-2");
        let lp = fixture("pplane").level(2).unwrap();
        assert_eq!(theta(&lp, &poly(&lp.a_ctx, "a")).unwrap().to_string(), "a");
    }

    #[test]
    fn theta_checks() {
        let mut l = fixture("weyl").level(2).unwrap();
        assert!(check_theta(&l, 100, 3).unwrap().passed);
        let lp = fixture("pplane").level(2).unwrap();
        assert!(check_theta(&lp, 30, 3).unwrap().passed);
        l.lambda = int(2);
        let r = check_theta(&l, 30, 3).unwrap();
        assert!(!r.passed && r.twist_failures > 0);
    }

    #[test]
    fn s_values() {
        let l = fixture("weyl").level(2).unwrap();
        assert_eq!(s_max(&l, &poly(&l.a_ctx, "a")).unwrap(), 1);
        assert_eq!(s_max(&l, &poly(&l.a_ctx, "a^2")).unwrap(), 2);
        assert_eq!(s_max(&l, &Polynomial::zero(&l.a_ctx)).unwrap_err(), Error::ZeroElement);
        let lp = fixture("pplane").level(2).unwrap();
        assert_eq!(s_max(&lp, &poly(&lp.a_ctx, "a^3")).unwrap(), 0);
    }

    #[test]
    fn normal_elements() {
        let l = fixture("weyl").level(2).unwrap();
        let ne = normal_element(&l, &poly(&l.a_ctx, "a")).unwrap();
        assert_eq!(ne.element.to_string(), "a*X - 1");
        assert_eq!(ne.eta, int(-1));
        assert!(ne.commutation && ne.normality.normal);
        let ne2 = normal_element(&l, &poly(&l.a_ctx, "a^2")).unwrap();
        assert_eq!(ne2.element.to_string(), "a^2*X^2 - 2*a*X + 1");
        let lp = fixture("pplane").level(2).unwrap();
        assert_eq!(normal_element(&lp, &poly(&lp.a_ctx, "a")).unwrap().element.to_string(), "a");
        assert!(matches!(normal_element(&l, &poly(&l.a_ctx, "a + 1")), Err(Error::Precondition(_))));
    }

    #[test]
    fn d_elements() {
        let l = fixture("weyl").level(2).unwrap();
        let (d1, c1) = d_element_from_normal(&l, &poly(&l.a_ctx, "a"), 1).unwrap();
        let (d2, c2) = d_element_from_normal(&l, &poly(&l.a_ctx, "a^2"), 2).unwrap();
        assert_eq!(d1.to_string(), "1/a");
        assert_eq!(d2.to_string(), "1/a");
        assert!(c1.passed() && c2.passed());
        let lp = fixture("pplane").level(2).unwrap();
        assert!(matches!(d_element_from_normal(&lp, &poly(&lp.a_ctx, "a"), 0), Err(Error::Precondition(_))));

        let zero = Ideal::zero(&l.a_ctx);
        let found = d_element_search(&l, &zero, 4).unwrap();
        assert!(found.found().unwrap().same_value(&d1, None).unwrap());
        assert!(d_element_search(&lp, &Ideal::zero(&lp.a_ctx), 4).unwrap().found().unwrap().is_zero());
        assert!(d_element_search(&l, &ideal(&l.a_ctx, &["a"]), 4).unwrap().found().is_none());
    }

    #[test]
    fn lifts() {
        let l = fixture("weyl").level(2).unwrap();
        let zero = Ideal::zero(&l.a_ctx);
        let (d, _) = d_element_from_normal(&l, &poly(&l.a_ctx, "a"), 1).unwrap();
        assert_eq!(second_lift(&l, &zero, &d).unwrap().basis_strings().unwrap(), vec!["a*X - 1"]);
        let lp = fixture("pplane").level(2).unwrap();
        let d0 = d_element_search(&lp, &Ideal::zero(&lp.a_ctx), 4).unwrap().found().unwrap().clone();
        assert_eq!(second_lift(&lp, &Ideal::zero(&lp.a_ctx), &d0).unwrap().basis_strings().unwrap(), vec!["X"]);
        let at_a = ideal(&lp.a_ctx, &["a"]);
        assert_eq!(second_lift(&lp, &at_a, &d0).unwrap().basis_strings().unwrap(), vec!["X", "a"]);
    }

    #[test]
    fn enumeration() {
        let t = enumerate_hprimes(&fixture("pplane"), 4).unwrap();
        let mut tops: Vec<Vec<String>> = t.top_nodes().map(|n| n.generators.clone()).collect();
        tops.sort();
        assert_eq!(tops, vec![vec![], vec!["X".to_string()], vec!["X".into(), "a".into()], vec!["a".into()]]);
        let t = enumerate_hprimes(&fixture("weyl"), 4).unwrap();
        let tops: Vec<Vec<String>> = t.top_nodes().map(|n| n.generators.clone()).collect();
        assert_eq!(tops, vec![vec![], vec!["a*X - 1".to_string()]]);
        // ⟨a⟩ at level 1 is not δ-stable and has no lifts
        let a_node = t.nodes.iter().find(|n| n.level == 1 && n.generators == ["a"]).unwrap();
        assert_eq!(a_node.delta_stable, Some(false));
        assert!(t.nodes.iter().all(|n| n.parent != Some(a_node.id)));
        assert_eq!(t.top_nodes().filter(|n| n.branch == Branch::Second).count(), 1);

        let empty = PoissonPresentation::new(
            &ctx_of::<&str>(&[]),
            BracketTable::abelian(&ctx_of::<&str>(&[])),
            GradingData::trivial(0),
            None,
            Bounds::default(),
        )
        .unwrap();
        assert_eq!(enumerate_hprimes(&empty, 4).unwrap().count, 1);
        assert!(matches!(enumerate_hprimes(&fixture("bellsig"), 4), Err(Error::Precondition(_))));
    }

    #[test]
    fn separation() {
        let w = fixture("weyl");
        let u = separating_normal(&w, &ideal(w.ctx(), &[]), &ideal(w.ctx(), &["a*X - 1"])).unwrap();
        assert_eq!(u.found().unwrap().to_string(), "a*X - 1");
        let p = fixture("pplane");
        let c = p.ctx();
        let u = separating_normal(&p, &ideal(c, &[]), &ideal(c, &["X"])).unwrap();
        assert_eq!(u.found().unwrap().to_string(), "X");
        let u = separating_normal(&p, &ideal(c, &["a"]), &ideal(c, &["a", "X"])).unwrap();
        assert_eq!(u.found().unwrap().to_string(), "X");
        assert!(separating_normal(&p, &ideal(c, &["X"]), &ideal(c, &["X"])).is_err());
    }
}

mod ideals {
    use super::*;

    #[test]
    fn groebner_examples() {
        let ctx = ctx_of(&["x", "y", "z"]);
        assert_eq!(ideal(&ctx, &["x - y", "x + y"]).basis_strings().unwrap(), vec!["y", "x"]);
        assert_eq!(ideal(&ctx, &["1"]).basis_strings().unwrap(), vec!["1"]);
        assert_eq!(ideal(&ctx, &["x", "y*z"]).basis_strings().unwrap(), vec!["x", "y*z"]);
    }

    #[test]
    fn membership() {
        let ctx = ctx_of(&["x", "y", "z", "w"]);
        assert!(ideal(&ctx, &["x - y"]).member(&poly(&ctx, "x^2 - y^2")).unwrap().is_member);
        let m = ideal(&ctx, &["x", "y"]).member(&poly(&ctx, "1")).unwrap();
        assert!(!m.is_member);
        assert_eq!(m.normal_form.to_string(), "1");
        let c = poisson_closure(&bellsig_table(), &ideal(&ctx, &["x"])).unwrap();
        assert!(c.ideal.contains_poly(&poly(&ctx, "y*z")).unwrap());
    }

    #[test]
    fn saturation() {
        let ctx = ctx_of(&["a", "X"]);
        let i = ideal(&ctx, &["a*X - 1"]);
        assert!(i.saturate(&poly(&ctx, "a")).unwrap().same_as(&i).unwrap());
        let xy = ctx_of(&["x", "y"]);
        assert_eq!(ideal(&xy, &["x*y"]).saturate(&poly(&xy, "x")).unwrap().basis_strings().unwrap(), vec!["y"]);
        let j = ideal(&xy, &["x^2 + y", "x*y"]);
        assert!(j.saturate(&poly(&xy, "1")).unwrap().same_as(&j).unwrap());
    }

    #[test]
    fn elimination() {
        let ctx = ctx_of(&["a", "X"]);
        assert!(ideal(&ctx, &["a*X - 1"]).eliminate(&[0]).unwrap().is_zero_ideal());
        assert_eq!(ideal(&ctx, &["a", "X"]).eliminate(&[0]).unwrap().basis_strings().unwrap(), vec!["a"]);
        let xyz = ctx_of(&["x", "y", "z"]);
        assert_eq!(ideal(&xyz, &["x", "y*z"]).eliminate(&[1, 2]).unwrap().basis_strings().unwrap(), vec!["y*z"]);
    }

    #[test]
    fn dimensions() {
        let ctx = ctx_of(&["x", "y", "z", "w"]);
        assert_eq!(ideal(&ctx, &["x", "y"]).dimension().unwrap(), 2);
        assert_eq!(Ideal::zero(&ctx).dimension().unwrap(), 4);
        assert_eq!(ideal(&ctx_of(&["a", "X"]), &["a*X - 1"]).dimension().unwrap(), 1);
        assert!(Ideal::unit(&ctx).dimension().is_err());
    }

    #[test]
    fn closures() {
        let t = bellsig_table();
        let ctx = t.ctx().clone();
        let c = poisson_closure(&t, &ideal(&ctx, &["x"])).unwrap();
        assert_eq!(c.ideal.basis_strings().unwrap(), vec!["x", "y*z"]);
        for gens in [&["x", "y"][..], &["z"][..]] {
            let i = ideal(&ctx, gens);
            let c = poisson_closure(&t, &i).unwrap();
            assert!(c.adjoined.is_empty() && c.ideal.same_as(&i).unwrap());
        }
    }

    #[test]
    fn cores() {
        let w = fixture("weyl");
        let ctx = w.ctx();
        let i = ideal(ctx, &["a*X - 1"]);
        assert!(h_core(w.grading(), &i).unwrap().same_as(&i).unwrap());
        let j = ideal(ctx, &["a + X^2"]);
        let core = h_core(w.grading(), &j).unwrap();
        assert!(j.contains(&core).unwrap());
        assert!(core.basis().unwrap().iter().all(|g| w.grading().is_homogeneous(g)));
        assert!(h_core(&GradingData::trivial(2), &j).unwrap().same_as(&j).unwrap());
    }

    #[test]
    fn chains() {
        let p = fixture("bellsig");
        let c = p.ctx();
        let long = [ideal(c, &[]), ideal(c, &["z"]), ideal(c, &["x", "z"]), ideal(c, &["x", "y", "z"])];
        let r = chain_report(&p, &long).unwrap();
        assert_eq!(r.length, 3);
        assert_eq!(r.ideals.iter().map(|i| i.dimension).collect::<Vec<_>>(), vec![4, 3, 2, 1]);
        assert_eq!(r.drops, vec![1, 1, 1]);
        assert!(r.saturated_in_spec && r.all_poisson);
        assert!(r.ideals.iter().all(|i| i.prime == Primality::Verified));
        let short = [ideal(c, &[]), ideal(c, &["x", "y"]), ideal(c, &["x", "y", "z"])];
        let r = chain_report(&p, &short).unwrap();
        assert_eq!(r.length, 2);
        assert_eq!(r.drops, vec![2, 1]);
        assert!(!r.saturated_in_spec && r.all_poisson);
        assert_eq!(chain_report(&p, &short[1..2]).unwrap().length, 0);
        assert!(chain_report(&p, &[short[1].clone(), short[0].clone()]).is_err());
    }
}

mod strata {
    use super::*;
    use poisson_cgl::cauchon::delete_all;
    use poisson_cgl::strata::{extract_log_matrix, poisson_center_torus, stratum_summary};

    #[test]
    fn summaries() {
        let p = fixture("pplane");
        let t = enumerate_hprimes(&p, 4).unwrap();
        let by = |g: &[&str]| t.top_nodes().find(|n| n.generators == g).unwrap().clone();
        let s = stratum_summary(&p, &by(&[])).unwrap();
        assert_eq!(s.surviving, vec!["a", "X"]);
        assert_eq!(s.dimension, 0);
        let s = stratum_summary(&p, &by(&["X", "a"])).unwrap();
        assert!(s.surviving.is_empty());
        assert_eq!(s.dimension, 0);
        let s = stratum_summary(&p, &by(&["a"])).unwrap();
        assert_eq!(s.surviving, vec!["X"]);
        assert_eq!(s.matrix.entries, vec![vec![int(0)]]);
        assert_eq!(s.dimension, 1);
    }

    #[test]
    fn deleted_m2() {
        let p = fixture("m2");
        let del = delete_all(&p, 20, 5).unwrap();
        assert_eq!(del.steps.len(), 3);
        let m = extract_log_matrix(del.presentation.table()).unwrap();
        assert_eq!(m.entries[3][0], int(0));
        assert_eq!(m.entries[1][0], int(-1));
        assert_eq!(poisson_center_torus(&m).rank(), 2);
    }
}
