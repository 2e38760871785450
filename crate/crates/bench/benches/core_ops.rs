//! Benchmarks for the hot paths: Witt structure-polynomial arithmetic,
//! Hahn series operations, value-group divisibility, and a full scenario
//! run end to end.

use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use valcomp::{
    run_scenario, witt_polys, FFElt, FieldElement, FiniteField, HahnSeries, OagElement,
    ScenarioParams, SquareTest, WittVec,
};

fn witt_mul(c: &mut Criterion) {
    let field = Arc::new(FiniteField::quadratic(5).unwrap());
    let polys = witt_polys(5, 3).unwrap();
    let x = WittVec::from_components(
        &polys,
        (0..3).map(|i| field.element_from_index(7 + i)).collect(),
    )
    .unwrap();
    let y = WittVec::from_components(
        &polys,
        (0..3).map(|i| field.element_from_index(11 + i)).collect(),
    )
    .unwrap();
    c.bench_function("witt mul W_3(F_25)", |b| b.iter(|| x.mul(&y)));
}

fn hahn_ops(c: &mut Criterion) {
    let field = Arc::new(FiniteField::prime(5).unwrap());
    let x = HahnSeries::t_basis(&field, 1)
        .add(&HahnSeries::t_basis(&field, 2))
        .add(&HahnSeries::constant(&field, 3));
    let y = HahnSeries::t_basis(&field, 2).add(&HahnSeries::constant(&field, 1));
    c.bench_function("hahn mul", |b| b.iter(|| x.mul(&y)));
    c.bench_function("hahn inv 16 terms", |b| b.iter(|| x.inv_terms(16).unwrap()));
    let sq = x.mul(&x);
    c.bench_function("hahn square test", |b| b.iter(|| sq.is_square().unwrap()));
}

fn oag_divisibility(c: &mut Criterion) {
    let g = OagElement::basis(5, 1).sub(&OagElement::basis(5, 2));
    c.bench_function("oag divisibility", |b| {
        b.iter(|| (g.divisible_by(2), g.divide_witness(5)))
    });
}

fn scenario_end_to_end(c: &mut Criterion) {
    let params = ScenarioParams::default();
    c.bench_function("scenario fully-tame-CAKE", |b| {
        b.iter(|| run_scenario("fully-tame-CAKE", &params).unwrap())
    });
    let _ = FFElt::from_u64(&Arc::new(FiniteField::prime(5).unwrap()), 1);
}

criterion_group!(benches, witt_mul, hahn_ops, oag_divisibility, scenario_end_to_end);
criterion_main!(benches);
