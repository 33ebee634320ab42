use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use unilift_bench::{cube3, pyramid, shell, simplex3, type1};
use unilift_core::lifting::lifting_region;
use unilift_core::rational::rat;
use unilift_core::{
    has_unique_lifting, vol_mod_lattice_exact, vol_mod_lattice_mc, GaugeModel, Limits, Polytope, RatVec,
};

fn hull(c: &mut Criterion) {
    let mut g = c.benchmark_group("hull");
    for count in [20, 60] {
        let pts = shell(3, count);
        g.bench_with_input(BenchmarkId::from_parameter(count), &pts, |b, pts| {
            b.iter(|| Polytope::from_vertices(3, pts).unwrap())
        });
    }
    g.finish();
}

fn trivial_lifting(c: &mut Criterion) {
    let i = simplex3();
    let g = GaugeModel::new(&i.body, &i.body.vertex_centroid()).unwrap();
    let r = RatVec::new(vec![rat(17, 5), rat(-9, 4), rat(7, 3)]);
    c.bench_function("trivial_lifting/simplex3", |b| b.iter(|| g.trivial_lifting(&r, 1_000_000).unwrap()));
}

fn volume_mod_lattice(c: &mut Criterion) {
    let limits = Limits::default();
    let mut g = c.benchmark_group("vol_mod_lattice_exact");
    g.sample_size(10);
    for i in [type1(), simplex3(), cube3(), pyramid()] {
        let f = i.body.vertex_centroid();
        let region = lifting_region(&i.body, &f, &i.lattice, &limits).unwrap();
        g.bench_function(i.name, |b| b.iter(|| vol_mod_lattice_exact(&region, &i.lattice, &limits).unwrap()));
    }
    g.finish();

    let i = simplex3();
    let region = lifting_region(&i.body, &i.body.vertex_centroid(), &i.lattice, &limits).unwrap();
    c.bench_function("vol_mod_lattice_mc/simplex3/100k", |b| {
        b.iter(|| vol_mod_lattice_mc(&region, &i.lattice, 100_000, 1, &limits).unwrap())
    });
}

fn unique(c: &mut Criterion) {
    let limits = Limits::default();
    let mut g = c.benchmark_group("has_unique_lifting");
    g.sample_size(10);
    for i in [type1(), cube3(), pyramid()] {
        g.bench_function(i.name, |b| b.iter(|| has_unique_lifting(&i.body, &i.lattice, None, true, &limits).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, hull, trivial_lifting, volume_mod_lattice, unique);
criterion_main!(benches);
