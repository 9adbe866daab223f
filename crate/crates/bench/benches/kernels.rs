//! Hot-path benchmarks: Buchberger, syzygies, Koszul homology, local depth.

use criterion::{criterion_group, criterion_main, Criterion};
use torlab::depth::{grade, local_depth, PrimeEntry};
use torlab::freemod::Vector;
use torlab::groebner::{buchberger_ideal, syzygies};
use torlab::module::PresentedModule;
use torlab::parser::parse_polynomial;
use torlab::{FreeModuleMap, Limits};
use torlab_bench::ring;

fn bench_buchberger(c: &mut Criterion) {
    let r = ring(&["x", "y", "z"], &[]);
    let lims = Limits::for_vars(3);
    let gens: Vec<_> = ["x^2 + y*z", "y^2 + x*z", "z^2 + x*y"]
        .iter()
        .map(|s| parse_polynomial(&r.poly, s).unwrap())
        .collect();
    c.bench_function("buchberger_3var_quadrics", |b| {
        b.iter(|| buchberger_ideal(&r, &gens, &lims).unwrap())
    });
}

fn bench_syzygies(c: &mut Criterion) {
    let r = ring(&["x", "y"], &["x*y"]);
    let lims = Limits::for_vars(2);
    let col = |s: &str| Vector::scalar(parse_polynomial(&r.poly, s).unwrap());
    let map = FreeModuleMap::new(1, vec![col("x"), col("y"), col("x + y")]);
    c.bench_function("syzygies_nodal_three_columns", |b| {
        b.iter(|| syzygies(&r, &map, &lims).unwrap())
    });
}

fn bench_koszul_grade(c: &mut Criterion) {
    let r = ring(
        &["x", "y", "z", "u", "v"],
        &["x*u", "x*v", "y*u", "y*v", "z*u", "z*v"],
    );
    let lims = Limits::for_vars(5);
    let gens: Vec<_> = ["x", "y", "u", "v"]
        .iter()
        .map(|s| parse_polynomial(&r.poly, s).unwrap())
        .collect();
    let free = PresentedModule::free(1);
    c.bench_function("koszul_grade_glued_four_gens", |b| {
        b.iter(|| grade(&r, &gens, &free, &lims).unwrap())
    });
}

fn bench_local_depth(c: &mut Criterion) {
    let r = ring(&["x", "y"], &["x*y"]);
    let lims = Limits::for_vars(2);
    let gens: Vec<_> = ["x", "y"]
        .iter()
        .map(|s| parse_polynomial(&r.poly, s).unwrap())
        .collect();
    let m = PrimeEntry::new(&r, "m".into(), gens, &lims).unwrap();
    let free = PresentedModule::free(1);
    c.bench_function("local_depth_nodal_maximal", |b| {
        b.iter(|| local_depth(&r, &free, &m, &lims).unwrap())
    });
}

criterion_group!(
    benches,
    bench_buchberger,
    bench_syzygies,
    bench_koszul_grade,
    bench_local_depth
);
criterion_main!(benches);
