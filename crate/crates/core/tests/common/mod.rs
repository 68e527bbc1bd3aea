#![allow(dead_code)]

use std::path::PathBuf;

use poisson_cgl::cgl::PoissonPresentation;
use poisson_cgl::ideals::Ideal;
use poisson_cgl::io::load_presentation;
use poisson_cgl::pbracket::BracketTable;
use poisson_cgl::qpoly::{ctx_of, parse, Ctx, Polynomial};

pub fn fixture(name: &str) -> PoissonPresentation {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"));
    load_presentation(&path).unwrap()
}

pub fn poly(ctx: &Ctx, s: &str) -> Polynomial {
    parse(s, ctx).unwrap()
}

pub fn ideal(ctx: &Ctx, gens: &[&str]) -> Ideal {
    Ideal::new(ctx, gens.iter().map(|g| poly(ctx, g)).collect()).unwrap()
}

pub fn table(ctx: &Ctx, entries: &[((usize, usize), &str)]) -> BracketTable {
    BracketTable::from_entries(ctx, entries.iter().map(|&(k, s)| (k, poly(ctx, s)))).unwrap()
}

/// `{w,x} = 2yz`, `{w,y} = x + y²` on `x, y, z, w`.
pub fn bellsig_table() -> BracketTable {
    let ctx = ctx_of(&["x", "y", "z", "w"]);
    table(&ctx, &[((3, 0), "2*y*z"), ((3, 1), "x + y^2")])
}

/// The same table with `{y,x} = z` added.
pub fn bellsig_perturbed() -> BracketTable {
    let mut t = bellsig_table();
    let ctx = t.ctx().clone();
    t.set(1, 0, poly(&ctx, "z")).unwrap();
    t
}

pub fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}
