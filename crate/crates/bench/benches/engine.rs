use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use oqlkit_bench::{di, lattice, note13, rotation};
use oqlkit_core::dsl::{eval_formula, parse_formula, parse_model};
use oqlkit_core::{enumerate_di, quantale_of_induction, Caps, Direction, Induction};

fn di_enumeration(c: &mut Criterion) {
    let caps = Caps::default();
    let mut group = c.benchmark_group("enumerate_di");
    for name in ["photon", "mo3", "mo5", "o6", "boolean4", "chain8"] {
        let l = lattice(name);
        group.bench_with_input(BenchmarkId::from_parameter(name), &l, |b, l| {
            b.iter(|| enumerate_di(black_box(l), &caps).unwrap())
        });
    }
    group.finish();
}

fn heyting(c: &mut Criterion) {
    let caps = Caps::default();
    let d = di("mo3");
    c.bench_function("heyting_laws/mo3", |b| b.iter(|| d.heyting_laws(&caps).unwrap()));
}

fn dynamics(c: &mut Criterion) {
    let caps = Caps::default();
    let e = note13();
    c.bench_function("induction_laws/note13", |b| b.iter(|| e.laws(&caps).unwrap()));
    let r = rotation(di("mo3"));
    c.bench_function("induction_laws/mo3_rotation", |b| b.iter(|| r.laws(&caps).unwrap()));
    let f = Induction::freeze(di("photon")).unwrap();
    c.bench_function("quantale_of_induction/photon_freeze", |b| {
        b.iter(|| quantale_of_induction(&f, Direction::Fwd, &caps).unwrap())
    });
}

fn formulas(c: &mut Criterion) {
    let text = oqlkit_core::catalog::build("note13").unwrap().to_model_file().unparse();
    let model = parse_model(&text, Caps::default()).unwrap();
    let src = "(dn(p) \\/ dn(q)) -[e]-> ~dn(r) /\\ R({q, s}) (x)[e] top";
    c.bench_function("parse_model/note13", |b| {
        b.iter(|| parse_model(black_box(&text), Caps::default()).unwrap())
    });
    let f = parse_formula(src, &model).unwrap();
    c.bench_function("eval_formula/note13", |b| {
        b.iter(|| eval_formula(black_box(&f), &model).unwrap())
    });
}

criterion_group!(benches, di_enumeration, heyting, dynamics, formulas);
criterion_main!(benches);
