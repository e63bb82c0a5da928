use criterion::{black_box, criterion_group, criterion_main, Criterion};
use hecke_core::ambient::{Ambient, Instance, IsoType};
use hecke_core::counting::Counter;
use hecke_core::hecke::{HeckeAlgebra, HeckeModule};
use hecke_core::oracle::ExactMatrix;
use hecke_core::poset::IncidenceFunction;
use hecke_core::rational::int;

fn enumeration(c: &mut Criterion) {
    c.bench_function("lattice F_2^4", |b| b.iter(|| Ambient::new(black_box(Instance::field(2, 4))).unwrap()));
    c.bench_function("lattice (Z/4)^2", |b| b.iter(|| Ambient::new(black_box(Instance::chain_ring(2, 2, 2))).unwrap()));
}

fn mobius(c: &mut Criterion) {
    let amb = Ambient::new(Instance::field(3, 3)).unwrap();
    c.bench_function("mobius F_3^3", |b| b.iter(|| IncidenceFunction::mobius(black_box(amb.lattice()))));
}

fn counting(c: &mut Criterion) {
    let amb = Ambient::new(Instance::field(2, 4)).unwrap();
    let top = amb.instance().top_type();
    c.bench_function("verify_avoid F_2^4", |b| b.iter(|| Counter::new(&amb).verify_avoid(black_box(&top)).unwrap()));
}

fn hecke(c: &mut Criterion) {
    let amb = Ambient::new(Instance::sets(6)).unwrap();
    c.bench_function("idempotents sets 6/3", |b| {
        b.iter(|| HeckeAlgebra::new(&amb, &IsoType::Size(3)).unwrap().idempotents().unwrap())
    });
    let amb = Ambient::new(Instance::chain_ring(2, 2, 2)).unwrap();
    let alg = HeckeAlgebra::new(&amb, &IsoType::partition(vec![2])).unwrap();
    c.bench_function("modules (Z/4)^2 phi=(2)", |b| {
        b.iter(|| alg.types().iter().map(|nu| HeckeModule::new(&alg, nu).unwrap().dim()).sum::<usize>())
    });
}

fn linear_algebra(c: &mut Criterion) {
    let m = ExactMatrix::from_fn(24, 24, |i, j| int(((i * 7 + j * 13) % 11) as i64 - 5));
    c.bench_function("bareiss rank 24x24", |b| b.iter(|| black_box(&m).rank()));
    c.bench_function("rref 24x24", |b| b.iter(|| black_box(&m).rref()));
}

criterion_group!(benches, enumeration, mobius, counting, hecke, linear_algebra);
criterion_main!(benches);
