//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use unilift_core::lifting::lifting_region;
use unilift_core::rational::{int, rat, rat_to_f64};
use unilift_core::{
    affinity_probe, classify_coproduct_facets, coproduct, crosspolytope_family, cube_even, facet_decomposition_check,
    has_unique_lifting, is_maximal_lattice_free, one_point_fast_path, pyramid_construct, simplex_family,
    vol_mod_lattice_exact, vol_mod_lattice_mc, AffineLattice, GaugeModel, GmiPair, Limits, Polytope, Rat, RatVec,
};

type Check = Result<String, String>;
type Criterion = (&'static str, Box<dyn FnOnce(&mut ChaCha8Rng) -> Check>);

struct Instance {
    name: &'static str,
    body: Polytope,
    lattice: AffineLattice,
}

fn type1() -> Instance {
    Instance { name: "type1", body: simplex_family(&[int(2), int(2)]).unwrap(), lattice: AffineLattice::integer(2) }
}

fn simplex3() -> Instance {
    Instance {
        name: "simplex3",
        body: simplex_family(&[int(3), int(3), int(3)]).unwrap(),
        lattice: AffineLattice::integer(3),
    }
}

fn cross2() -> Instance {
    Instance {
        name: "cross2",
        body: crosspolytope_family(&[int(2), int(2)]).unwrap(),
        lattice: AffineLattice::integer(2),
    }
}

fn cube3() -> Instance {
    let (body, lattice) = cube_even(3).unwrap();
    Instance { name: "cube3", body, lattice }
}

/// Maximal lattice-free triangle with one lattice point in the relative
/// interior of each edge and fractional vertices.
fn skew_triangle() -> Instance {
    let v = |x: i64, y: i64| RatVec::new(vec![rat(x, 3), rat(y, 3)]);
    Instance {
        name: "skew",
        body: Polytope::from_vertices(2, &[v(2, 5), v(5, -1), v(-1, 2)]).unwrap(),
        lattice: AffineLattice::integer(2),
    }
}

fn core_instances() -> Vec<Instance> {
    vec![type1(), simplex3(), cross2(), cube3()]
}

fn limits() -> Limits {
    Limits::default()
}

fn small_rat(rng: &mut ChaCha8Rng, bound: i64, den: i64) -> Rat {
    let d = rng.random_range(1..=den);
    rat(rng.random_range(-bound * d..=bound * d), d)
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize, bound: i64, den: i64) -> RatVec {
    RatVec::new((0..n).map(|_| small_rat(rng, bound, den)).collect())
}

/// Strictly positive convex combination of the vertices.
fn interior_point(p: &Polytope, rng: &mut ChaCha8Rng, max_weight: i64) -> RatVec {
    let weights: Vec<i64> = p.vertices().iter().map(|_| rng.random_range(1..=max_weight)).collect();
    let total: i64 = weights.iter().sum();
    let mut x = RatVec::zeros(p.dim());
    for (v, w) in p.vertices().iter().zip(&weights) {
        x = &x + &v.scale(&rat(*w, total));
    }
    x
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < budget, format!("took {:.2}s, budget {}s", t.as_secs_f64(), budget.as_secs()))
}

fn c1_gmi() -> Check {
    let start = Instant::now();
    let body = Polytope::cube(1, 0, 1);
    let mut checked = 0;
    for f in [rat(1, 2), rat(1, 4), rat(7, 10)] {
        let pair = GmiPair::new(&f).map_err(err)?;
        let g = GaugeModel::new(&body, &RatVec::new(vec![f.clone()])).map_err(err)?;
        for k in 0..100 {
            let x = &rat(-2, 1) + &rat(4 * k, 99);
            let v = RatVec::new(vec![x.clone()]);
            ensure(pair.psi(&x) == g.eval(&v).map_err(err)?, format!("psi mismatch at f={f}, r={x}"))?;
            let (pi, _) = g.trivial_lifting(&v, limits().point_guard).map_err(err)?;
            ensure(pair.pi(&x) == pi, format!("pi mismatch at f={f}, p={x}"))?;
            checked += 1;
        }
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("{checked} grid points agree exactly"))
}

fn c2_type1() -> Check {
    let start = Instant::now();
    let i = type1();
    ensure(is_maximal_lattice_free(&i.body, &i.lattice, limits().point_guard).map_err(err)?, "not maximal")?;
    let u = has_unique_lifting(&i.body, &i.lattice, None, true, &limits()).map_err(err)?;
    ensure(u.unique && u.volume == int(1), format!("unique={} volume={}", u.unique, u.volume))?;
    let fast = one_point_fast_path(&i.body, &i.lattice, &u.f, &limits()).map_err(err)?;
    ensure(fast.applicable, "fast path not applicable")?;
    ensure(fast.volume.as_ref() == Some(&u.volume), format!("fast path volume {:?}", fast.volume))?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("volume {} at f=({}), fast path agrees", u.volume, u.f.to_strings().join(",")))
}

fn unique_volume_one(i: &Instance) -> Check {
    let u = has_unique_lifting(&i.body, &i.lattice, None, true, &limits()).map_err(err)?;
    ensure(u.maximal, "not maximal")?;
    ensure(u.unique && u.volume == int(1), format!("unique={} volume={}", u.unique, u.volume))?;
    Ok(format!("maximal, unique, volume {}", u.volume))
}

fn c3_simplex() -> Check {
    let start = Instant::now();
    let out = unique_volume_one(&simplex3())?;
    within(start, Duration::from_secs(60))?;
    Ok(out)
}

fn c4_cross() -> Check {
    unique_volume_one(&cross2())
}

fn c5_cube() -> Check {
    let i = cube3();
    ensure(i.lattice.det_lattice() == int(2), "lattice determinant is not 2")?;
    ensure(is_maximal_lattice_free(&i.body, &i.lattice, limits().point_guard).map_err(err)?, "not maximal")?;
    let f = i.body.vertex_centroid();
    let region = lifting_region(&i.body, &f, &i.lattice, &limits()).map_err(err)?;
    let full: Vec<_> = region.full_dim_pieces().collect();
    ensure(!full.is_empty(), "no full-dimensional spindles")?;
    for p in &full {
        ensure(p.polytope.volume() == rat(1, 3), format!("spindle volume {}", p.polytope.volume()))?;
    }
    let vol = vol_mod_lattice_exact(&region, &i.lattice, &limits()).map_err(err)?;
    ensure(vol == int(2), format!("region volume {vol}"))?;
    let u = has_unique_lifting(&i.body, &i.lattice, None, true, &limits()).map_err(err)?;
    ensure(u.unique, "not unique")?;
    Ok(format!("{} spindles of volume 1/3, region volume {vol} = det", full.len()))
}

fn c6_affinity(rng: &mut ChaCha8Rng) -> Check {
    let mut lines = Vec::new();
    for i in [type1(), cube3(), skew_triangle()] {
        for _ in 0..3 {
            let f1 = interior_point(&i.body, rng, 6);
            let f3 = interior_point(&i.body, rng, 6);
            let f2 = (&f1 + &f3).scale(&rat(1, 2));
            let v = affinity_probe(&i.body, &i.lattice, &[f1, f2, f3], &limits()).map_err(err)?;
            ensure(&v[1] * int(2) == &v[0] + &v[2], format!("{}: volumes {} {} {}", i.name, v[0], v[1], v[2]))?;
            lines.push(format!("{}:{}", i.name, v[1]));
        }
    }
    Ok(format!("midpoint volumes {}", lines.join(" ")))
}

fn c7_invariance(rng: &mut ChaCha8Rng) -> Check {
    let mut total = 0;
    for i in core_instances() {
        let base = has_unique_lifting(&i.body, &i.lattice, None, true, &limits()).map_err(err)?.unique;
        for _ in 0..5 {
            let f = interior_point(&i.body, rng, 5);
            let u = has_unique_lifting(&i.body, &i.lattice, Some(&f), true, &limits()).map_err(err)?;
            ensure(
                u.unique == base,
                format!("{}: f=({}) gives {} against {}", i.name, f.to_strings().join(","), u.unique, base),
            )?;
            total += 1;
        }
    }
    Ok(format!("{total} random anchors agree"))
}

fn c8_decomposition(rng: &mut ChaCha8Rng) -> Check {
    let mut pairs = 0;
    for i in core_instances() {
        let f = i.body.vertex_centroid();
        let d = facet_decomposition_check(&i.body, &i.lattice, &f, &limits()).map_err(err)?;
        ensure(d.holds(), format!("{}: facet volumes do not add up to {}", i.name, d.total))?;
        let region = lifting_region(&i.body, &f, &i.lattice, &limits()).map_err(err)?;
        let full: Vec<_> = region.full_dim_pieces().collect();
        let facets: std::collections::BTreeSet<usize> = full.iter().map(|p| p.facet).collect();
        ensure(facets.len() >= 2, format!("{}: spindles on fewer than two facets", i.name))?;
        let mut done = 0;
        while done < 10_000 {
            let a = full[rng.random_range(0..full.len())];
            let b = full[rng.random_range(0..full.len())];
            if a.facet == b.facet {
                continue;
            }
            let x = interior_point(&a.polytope, rng, 9);
            let y = interior_point(&b.polytope, rng, 9);
            let diff = &(&x - &y) + i.lattice.shift();
            ensure(
                !i.lattice.contains(&diff),
                format!("{}: ({}) and ({}) are congruent", i.name, x.to_strings().join(","), y.to_strings().join(",")),
            )?;
            done += 1;
        }
        pairs += done;
    }
    Ok(format!("decomposition holds on 4 instances, {pairs} pairs never congruent"))
}

fn c9_negative() -> Check {
    let i = skew_triangle();
    ensure(is_maximal_lattice_free(&i.body, &i.lattice, limits().point_guard).map_err(err)?, "not maximal")?;
    for facet in i.body.facets() {
        let n = i.lattice.relint_points(&facet, limits().point_guard).map_err(err)?.len();
        ensure(n == 1, format!("an edge has {n} relative-interior lattice points"))?;
    }
    // Unimodular affine maps keep vertices integral.
    ensure(i.body.vertices().iter().any(|v| !v.is_integral()), "vertices are integral")?;
    let u = has_unique_lifting(&i.body, &i.lattice, None, true, &limits()).map_err(err)?;
    ensure(!u.unique && u.volume < int(1), format!("unique={} volume={}", u.unique, u.volume))?;
    Ok(format!("maximal, one point per edge, volume {} < 1", u.volume))
}

fn c10_pyramid() -> Check {
    let start = Instant::now();
    let base = type1().body;
    let c = RatVec::new(vec![rat(1, 2), rat(1, 2)]);
    let p = pyramid_construct(&base, &c, &Rat::zero(), &rat(1, 3)).map_err(err)?;
    let l = AffineLattice::integer(3);
    ensure(is_maximal_lattice_free(&p, &l, limits().point_guard).map_err(err)?, "not maximal")?;
    let u = has_unique_lifting(&p, &l, None, true, &limits()).map_err(err)?;
    ensure(u.unique && u.volume == int(1), format!("unique={} volume={}", u.unique, u.volume))?;
    within(start, Duration::from_secs(120))?;
    Ok(format!("{} vertices, unique with volume {}", p.vertices().len(), u.volume))
}

/// Random full-dimensional lattice polytope containing the origin, which is
/// sometimes a vertex.
fn random_factor(rng: &mut ChaCha8Rng, n: usize) -> Polytope {
    loop {
        let count = rng.random_range(n + 1..=n + 3);
        let mut pts: Vec<RatVec> = (0..count)
            .map(|_| RatVec::from_ints(&(0..n).map(|_| rng.random_range(-3..=3)).collect::<Vec<_>>()))
            .collect();
        if rng.random_bool(0.5) {
            pts.push(RatVec::zeros(n));
        }
        let Ok(p) = Polytope::from_vertices(n, &pts) else { continue };
        if p.is_full_dim() && p.contains(&RatVec::zeros(n)) {
            return p;
        }
    }
}

fn c11_census(rng: &mut ChaCha8Rng) -> Check {
    let mut facets = 0;
    let mut origin_on_boundary = 0;
    for _ in 0..10 {
        let (n1, n2) = (rng.random_range(1..=2), rng.random_range(1..=2));
        let p1 = random_factor(rng, n1);
        let p2 = random_factor(rng, n2);
        if !p1.interior_contains(&RatVec::zeros(p1.dim())) || !p2.interior_contains(&RatVec::zeros(p2.dim())) {
            origin_on_boundary += 1;
        }
        let census = classify_coproduct_facets(&p1, &p2).map_err(err)?;
        ensure(census.matches(), format!("census mismatch: {census:?}"))?;
        let hull = coproduct(&p1, &p2).map_err(err)?;
        ensure(hull.facets().len() == census.facet_count, "facet count differs from the enumerated hull")?;
        facets += census.facet_count;
    }
    Ok(format!("10 pairs, {facets} facets classified, {origin_on_boundary} with the origin on a boundary"))
}

fn c12_monte_carlo() -> Check {
    let mut lines = Vec::new();
    let mut all = core_instances();
    all.push(skew_triangle());
    for i in all {
        let f = i.body.vertex_centroid();
        let region = lifting_region(&i.body, &f, &i.lattice, &limits()).map_err(err)?;
        let exact = vol_mod_lattice_exact(&region, &i.lattice, &limits()).map_err(err)?;
        let mc = vol_mod_lattice_mc(&region, &i.lattice, 100_000, 7, &limits()).map_err(err)?;
        let gap = (mc.estimate - rat_to_f64(&exact)).abs();
        ensure(
            gap <= 3.0 * mc.stderr,
            format!("{}: estimate {} exact {} stderr {}", i.name, mc.estimate, exact, mc.stderr),
        )?;
        lines.push(format!("{}:{:.4}±{:.4}", i.name, mc.estimate, mc.stderr));
    }
    Ok(lines.join(" "))
}

fn c13_gauge(rng: &mut ChaCha8Rng) -> Check {
    let guard = limits().point_guard;
    let mut all =
        vec![Instance { name: "interval", body: Polytope::cube(1, 0, 1), lattice: AffineLattice::integer(1) }];
    all.extend(core_instances());
    all.push(skew_triangle());
    for i in &all {
        let n = i.body.dim();
        let g = GaugeModel::new(&i.body, &i.body.vertex_centroid()).map_err(err)?;
        for _ in 0..1000 {
            let r = random_vec(rng, n, 2, 12);
            let s = random_vec(rng, n, 2, 12);
            let lambda = &small_rat(rng, 3, 7).abs() + &rat(1, 5);
            let w = RatVec::from_ints(&(0..n).map(|_| rng.random_range(-3..=3)).collect::<Vec<_>>());
            let gr = g.eval(&r).map_err(err)?;
            let name = i.name;
            ensure(g.eval(&r.scale(&lambda)).map_err(err)? == &lambda * &gr, format!("{name}: homogeneity"))?;
            ensure(
                g.eval(&(&r + &s)).map_err(err)? <= &gr + g.eval(&s).map_err(err)?,
                format!("{name}: subadditivity"),
            )?;
            let (t, witness) = g.trivial_lifting(&r, guard).map_err(err)?;
            let (tw, _) = g.trivial_lifting(&(&r + &w), guard).map_err(err)?;
            ensure(t == tw, format!("{name}: periodicity"))?;
            ensure(t <= gr, format!("{name}: domination"))?;
            ensure(g.eval(&(&r + &witness)).map_err(err)? == t, format!("{name}: witness"))?;
            ensure(t >= Rat::zero(), format!("{name}: sign"))?;
        }
    }
    Ok(format!("1000 samples on each of {} instances", all.len()))
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let criteria: Vec<Criterion> = vec![
        ("c1 gmi pair equals gauge and trivial lifting", Box::new(|_| c1_gmi())),
        ("c2 type 1 triangle", Box::new(|_| c2_type1())),
        ("c3 simplex conv{0,3e1,3e2,3e3}", Box::new(|_| c3_simplex())),
        ("c4 shifted cross-polytope", Box::new(|_| c4_cross())),
        ("c5 even-lattice cube", Box::new(|_| c5_cube())),
        ("c6 affinity in the anchor", Box::new(c6_affinity)),
        ("c7 anchor invariance", Box::new(c7_invariance)),
        ("c8 facet decomposition", Box::new(c8_decomposition)),
        ("c9 non-unique triangle", Box::new(|_| c9_negative())),
        ("c10 pyramid over type 1", Box::new(|_| c10_pyramid())),
        ("c11 coproduct facet census", Box::new(c11_census)),
        ("c12 monte carlo against exact", Box::new(|_| c12_monte_carlo())),
        ("c13 gauge and lifting properties", Box::new(c13_gauge)),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check(&mut rng);
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name} [{secs:.2}s] {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name} [{secs:.2}s] {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
