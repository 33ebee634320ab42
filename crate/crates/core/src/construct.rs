//! Constructions of unique-lifting bodies: coproducts, pyramids, simplex and
//! cross-polytope families, and the cube with the even-sum lattice.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::AffineLattice;
use crate::ratgeom::Polytope;
use crate::rational::{Rat, RatMat, RatVec};

fn embed_first(v: &RatVec, n2: usize) -> RatVec {
    v.concat(&RatVec::zeros(n2))
}

fn embed_second(n1: usize, v: &RatVec) -> RatVec {
    RatVec::zeros(n1).concat(v)
}

/// `conv(K1 x {o} ∪ {o} x K2)`.
pub fn coproduct(k1: &Polytope, k2: &Polytope) -> Result<Polytope> {
    let (n1, n2) = (k1.dim(), k2.dim());
    let mut pts: Vec<RatVec> = k1.vertices().iter().map(|v| embed_first(v, n2)).collect();
    pts.extend(k2.vertices().iter().map(|v| embed_second(n1, v)));
    Polytope::from_vertices(n1 + n2, &pts)
}

/// `μ(B_1 - c_1)/μ_1 ◇ ... ◇ μ(B_k - c_k)/μ_k + (c_1, ..., c_k)` with `μ = Σ μ_i`.
pub fn coproduct_scaled(bodies: &[Polytope], anchors: &[RatVec], weights: &[Rat]) -> Result<Polytope> {
    if bodies.is_empty() {
        return Err(Error::EmptyInput("no bodies".into()));
    }
    if anchors.len() != bodies.len() || weights.len() != bodies.len() {
        return Err(Error::InvalidParameter("bodies, anchors and weights differ in length".into()));
    }
    if weights.iter().any(|w| !w.is_positive()) {
        return Err(Error::InvalidParameter("weights must be positive".into()));
    }
    let mu: Rat = weights.iter().sum();
    let mut acc: Option<Polytope> = None;
    let mut shift = RatVec::new(Vec::new());
    for ((b, c), w) in bodies.iter().zip(anchors).zip(weights) {
        c.check_dim(b.dim())?;
        if !b.contains(c) {
            return Err(Error::AnchorOutside);
        }
        let s = &mu / w;
        let scaled = b.affine_image(&RatMat::scalar(b.dim(), &s), &-&c.scale(&s))?;
        acc = Some(match acc {
            None => scaled,
            Some(p) => coproduct(&p, &scaled)?,
        });
        shift = shift.concat(c);
    }
    acc.expect("nonempty").translate(&shift)
}

fn check_pyramid_params(b: &Polytope, c: &RatVec, gamma: &Rat, mu: &Rat) -> Result<()> {
    c.check_dim(b.dim())?;
    if !b.contains(c) {
        return Err(Error::AnchorOutside);
    }
    if gamma.is_negative() || *gamma >= Rat::one() {
        return Err(Error::InvalidParameter("gamma must lie in [0, 1)".into()));
    }
    if !mu.is_positive() || *mu >= Rat::one() {
        return Err(Error::InvalidParameter("mu must lie in (0, 1)".into()));
    }
    Ok(())
}

/// The pyramid (`γ = 0`) or double pyramid over `(B - μc)/(1 - μ)` at height `γ`.
pub fn pyramid_direct(b: &Polytope, c: &RatVec, gamma: &Rat, mu: &Rat) -> Result<Polytope> {
    check_pyramid_params(b, c, gamma, mu)?;
    let one = Rat::one();
    let s = (&one - mu).recip();
    let mut pts: Vec<RatVec> =
        b.vertices().iter().map(|v| (v - &c.scale(mu)).scale(&s).concat(&RatVec::new(vec![gamma.clone()]))).collect();
    let low = (mu - &one) * gamma / mu;
    let high = ((mu - &one) * gamma + &one) / mu;
    pts.push(c.concat(&RatVec::new(vec![low])));
    pts.push(c.concat(&RatVec::new(vec![high])));
    Polytope::from_vertices(b.dim() + 1, &pts)
}

/// The same body as `(B - c)/(1 - μ) ◇ ([0,1] - γ)/μ + (c, γ)`.
pub fn pyramid_coproduct(b: &Polytope, c: &RatVec, gamma: &Rat, mu: &Rat) -> Result<Polytope> {
    check_pyramid_params(b, c, gamma, mu)?;
    let one = Rat::one();
    let s = (&one - mu).recip();
    let base = b.affine_image(&RatMat::scalar(b.dim(), &s), &-&c.scale(&s))?;
    let seg = Polytope::from_box(&RatVec::new(vec![-gamma / mu]), &RatVec::new(vec![(&one - gamma) / mu]))?;
    coproduct(&base, &seg)?.translate(&c.concat(&RatVec::new(vec![gamma.clone()])))
}

/// Builds the body both ways and checks they agree.
pub fn pyramid_construct(b: &Polytope, c: &RatVec, gamma: &Rat, mu: &Rat) -> Result<Polytope> {
    let direct = pyramid_direct(b, c, gamma, mu)?;
    let via = pyramid_coproduct(b, c, gamma, mu)?;
    if direct != via {
        return Err(Error::ConstructionMismatch);
    }
    Ok(direct)
}

fn check_reciprocals(a: &[Rat]) -> Result<()> {
    if a.is_empty() || a.iter().any(|x| !x.is_positive()) {
        return Err(Error::InvalidParameter("coefficients must be positive".into()));
    }
    let s: Rat = a.iter().map(|x| x.recip()).sum();
    if !s.is_one() {
        return Err(Error::InvalidParameter(format!("reciprocals sum to {}", crate::rational::fmt_rat(&s))));
    }
    Ok(())
}

/// `conv{o, a_1 e_1, ..., a_n e_n}` with `Σ 1/a_i = 1`.
pub fn simplex_family(a: &[Rat]) -> Result<Polytope> {
    check_reciprocals(a)?;
    let n = a.len();
    let mut pts = vec![RatVec::zeros(n)];
    pts.extend((0..n).map(|i| RatVec::unit(n, i).scale(&a[i])));
    Polytope::from_vertices(n, &pts)
}

/// `conv{±(a_i/2) e_i} + (1/2, ..., 1/2)` with `Σ 1/a_i = 1`.
pub fn crosspolytope_family(a: &[Rat]) -> Result<Polytope> {
    check_reciprocals(a)?;
    let n = a.len();
    let half = Rat::new(1.into(), 2.into());
    let center = RatVec::new(vec![half.clone(); n]);
    let mut pts = Vec::with_capacity(2 * n);
    for (i, ai) in a.iter().enumerate() {
        let d = RatVec::unit(n, i).scale(&(ai * &half));
        pts.push(&center + &d);
        pts.push(&center - &d);
    }
    Polytope::from_vertices(n, &pts)
}

/// `[0,2]^n` with the lattice of integer points with even coordinate sum.
pub fn cube_even(n: usize) -> Result<(Polytope, AffineLattice)> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("dimension {n} must be odd and at least 3")));
    }
    let mut cols = vec![&RatVec::unit(n, 0) + &RatVec::unit(n, 1), &RatVec::unit(n, 0) - &RatVec::unit(n, 1)];
    for i in 1..n - 1 {
        cols.push(&RatVec::unit(n, i) - &RatVec::unit(n, i + 1));
    }
    let lattice = AffineLattice::new(RatMat::from_cols(&cols)?, RatVec::zeros(n))?;
    Ok((Polytope::cube(n, 0, 2), lattice))
}

/// Facet kinds of a coproduct `P1 ◇ P2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FacetCounts {
    /// `F1 ◇ F2` with both facets avoiding the origin.
    pub both: usize,
    /// `F1 ◇ P2` with `o ∈ F1`.
    pub first: usize,
    /// `P1 ◇ F2` with `o ∈ F2`.
    pub second: usize,
}

impl FacetCounts {
    pub fn total(&self) -> usize {
        self.both + self.first + self.second
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetCensus {
    pub predicted: FacetCounts,
    pub actual: FacetCounts,
    /// Facets of the coproduct that fit none of the three kinds.
    pub unclassified: usize,
    pub facet_count: usize,
    /// Every classified facet has the dimension its kind predicts.
    pub dims_ok: bool,
}

impl FacetCensus {
    pub fn matches(&self) -> bool {
        self.unclassified == 0
            && self.dims_ok
            && self.predicted == self.actual
            && self.actual.total() == self.facet_count
    }
}

/// Predicts the facet kinds of `P1 ◇ P2` from the factors and classifies the
/// facets of the actual hull.
pub fn classify_coproduct_facets(p1: &Polytope, p2: &Polytope) -> Result<FacetCensus> {
    let (n1, n2) = (p1.dim(), p2.dim());
    for p in [p1, p2] {
        if !p.is_full_dim() {
            return Err(Error::InvalidParameter("factors must be full-dimensional".into()));
        }
        if !p.contains(&RatVec::zeros(p.dim())) {
            return Err(Error::AnchorOutside);
        }
    }
    let with_origin = |p: &Polytope| {
        let o = RatVec::zeros(p.dim());
        let facets = p.facets();
        let w = facets.iter().filter(|f| f.contains(&o)).count();
        (w, facets.len() - w)
    };
    let (w1, wo1) = with_origin(p1);
    let (w2, wo2) = with_origin(p2);
    let predicted = FacetCounts { both: wo1 * wo2, first: w1, second: w2 };

    let p = coproduct(p1, p2)?;
    let facets = p.facets();
    let mut actual = FacetCounts::default();
    let mut unclassified = 0;
    let mut dims_ok = true;
    for f in &facets {
        let h = f.defining_halfspace().expect("facet");
        let s1: Vec<RatVec> =
            p1.vertices().iter().filter(|v| h.slack(&embed_first(v, n2)).is_zero()).cloned().collect();
        let s2: Vec<RatVec> =
            p2.vertices().iter().filter(|v| h.slack(&embed_second(n1, v)).is_zero()).cloned().collect();
        let part = |p: &Polytope, s: &[RatVec]| -> Result<(i64, bool)> {
            if s.is_empty() {
                return Ok((-1, false));
            }
            let g = Polytope::from_vertices(p.dim(), s)?;
            Ok((g.affine_dim() as i64, g.contains(&RatVec::zeros(p.dim()))))
        };
        let (d1, o1) = part(p1, &s1)?;
        let (d2, o2) = part(p2, &s2)?;
        let (n1i, n2i) = (n1 as i64, n2 as i64);
        if d1 == n1i - 1 && d2 == n2i - 1 && !o1 && !o2 {
            actual.both += 1;
            dims_ok &= f.dim() == d1 + d2 + 1;
        } else if d1 == n1i - 1 && o1 && d2 == n2i {
            actual.first += 1;
            dims_ok &= f.dim() == d1 + d2;
        } else if d2 == n2i - 1 && o2 && d1 == n1i {
            actual.second += 1;
            dims_ok &= f.dim() == d1 + d2;
        } else {
            unclassified += 1;
        }
    }
    Ok(FacetCensus { predicted, actual, unclassified, facet_count: facets.len(), dims_ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latfree::{is_lattice_free, is_maximal_lattice_free};
    use crate::rational::{int, rat};

    fn pts(v: &[&[i64]]) -> Vec<RatVec> {
        v.iter().map(|p| RatVec::from_ints(p)).collect()
    }

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn coproduct_examples() {
        let seg = Polytope::cube(1, -1, 1);
        let cross = coproduct(&seg, &seg).unwrap();
        assert_eq!(cross, Polytope::from_vertices(2, &pts(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]])).unwrap());

        let unit = Polytope::cube(1, 0, 1);
        let tri = coproduct(&unit, &unit).unwrap();
        assert_eq!(tri, Polytope::from_vertices(2, &pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap());

        let point = Polytope::from_vertices(1, &[RatVec::zeros(1)]).unwrap();
        let sq = Polytope::cube(2, -1, 1);
        let flat = coproduct(&sq, &point).unwrap();
        assert_eq!(flat.affine_dim(), 2);
        assert_eq!(flat.vertices().len(), 4);
    }

    #[test]
    fn coproduct_is_associative() {
        let a = Polytope::cube(1, -1, 2);
        let b = Polytope::from_vertices(2, &pts(&[&[-1, -1], &[2, 0], &[0, 1]])).unwrap();
        let c = Polytope::cube(1, 0, 3);
        let left = coproduct(&coproduct(&a, &b).unwrap(), &c).unwrap();
        let right = coproduct(&a, &coproduct(&b, &c).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn coproduct_scaled_examples() {
        let unit = Polytope::cube(1, 0, 1);
        let h = rat(1, 2);
        let t = coproduct_scaled(
            &[unit.clone(), unit.clone()],
            &[RatVec::zeros(1), RatVec::zeros(1)],
            &[h.clone(), h.clone()],
        )
        .unwrap();
        assert_eq!(t, simplex_family(&ints(&[2, 2])).unwrap());

        let c = RatVec::new(vec![h.clone()]);
        let q =
            coproduct_scaled(&[unit.clone(), unit.clone()], &[c.clone(), c.clone()], &[h.clone(), h.clone()]).unwrap();
        let expect = Polytope::from_vertices(2, &pts(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]))
            .unwrap()
            .translate(&RatVec::new(vec![h.clone(), h.clone()]))
            .unwrap();
        assert_eq!(q, expect);

        let third = rat(1, 3);
        let s = coproduct_scaled(
            &[unit.clone(), unit.clone(), unit.clone()],
            &[RatVec::zeros(1), RatVec::zeros(1), RatVec::zeros(1)],
            &[third.clone(), third.clone(), third],
        )
        .unwrap();
        assert_eq!(s, simplex_family(&ints(&[3, 3, 3])).unwrap());

        assert_eq!(
            coproduct_scaled(std::slice::from_ref(&unit), &[RatVec::from_ints(&[2])], &[h]).unwrap_err(),
            Error::AnchorOutside
        );
    }

    #[test]
    fn coproduct_scaled_preserves_freeness() {
        let z2 = AffineLattice::integer(2);
        let z1 = AffineLattice::integer(1);
        let t = simplex_family(&ints(&[2, 2])).unwrap();
        let unit = Polytope::cube(1, 0, 1);
        assert!(is_maximal_lattice_free(&t, &z2, 1000).unwrap());
        assert!(is_maximal_lattice_free(&unit, &z1, 1000).unwrap());
        let b = coproduct_scaled(
            &[t, unit],
            &[RatVec::new(vec![rat(1, 2), rat(1, 2)]), RatVec::new(vec![rat(1, 3)])],
            &[rat(2, 3), rat(1, 3)],
        )
        .unwrap();
        let z3 = AffineLattice::integer(3);
        assert!(is_lattice_free(&b, &z3, 10_000).unwrap());
        assert!(is_maximal_lattice_free(&b, &z3, 10_000).unwrap());
    }

    #[test]
    fn pyramid_examples() {
        let t = simplex_family(&ints(&[2, 2])).unwrap();
        let c = RatVec::new(vec![rat(1, 2), rat(1, 2)]);
        let p = pyramid_construct(&t, &c, &int(0), &rat(1, 3)).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert!(is_maximal_lattice_free(&p, &AffineLattice::integer(3), 10_000).unwrap());

        let d = pyramid_construct(&t, &c, &rat(1, 2), &rat(1, 3)).unwrap();
        assert_eq!(d.vertices().len(), 5);

        assert!(pyramid_construct(&t, &c, &int(1), &rat(1, 3)).is_err());
        assert!(pyramid_construct(&t, &c, &int(0), &int(1)).is_err());
        assert_eq!(
            pyramid_construct(&t, &RatVec::from_ints(&[3, 3]), &int(0), &rat(1, 2)).unwrap_err(),
            Error::AnchorOutside
        );
    }

    #[test]
    fn pyramid_forms_agree_on_parameter_draws() {
        let t = simplex_family(&ints(&[2, 2])).unwrap();
        let draws = [
            (rat(1, 2), rat(1, 2), rat(0, 1), rat(1, 3)),
            (rat(1, 3), rat(1, 4), rat(1, 5), rat(1, 2)),
            (rat(1, 1), rat(0, 1), rat(2, 3), rat(3, 4)),
            (rat(0, 1), rat(0, 1), rat(1, 7), rat(1, 9)),
            (rat(2, 5), rat(6, 5), rat(9, 10), rat(2, 7)),
        ];
        for (x, y, g, m) in draws {
            let c = RatVec::new(vec![x, y]);
            let a = pyramid_direct(&t, &c, &g, &m).unwrap();
            let b = pyramid_coproduct(&t, &c, &g, &m).unwrap();
            assert!(a.same_set(&b));
        }
    }

    #[test]
    fn simplex_family_examples() {
        assert_eq!(
            simplex_family(&ints(&[2, 2])).unwrap(),
            Polytope::from_vertices(2, &pts(&[&[0, 0], &[2, 0], &[0, 2]])).unwrap()
        );
        assert_eq!(simplex_family(&ints(&[3, 3, 3])).unwrap().vertices().len(), 4);
        assert!(simplex_family(&ints(&[2, 4, 4])).is_ok());
        assert!(simplex_family(&ints(&[2, 3])).is_err());
        assert!(simplex_family(&ints(&[-2, 1])).is_err());
    }

    #[test]
    fn crosspolytope_family_examples() {
        let q = crosspolytope_family(&ints(&[2, 2])).unwrap();
        assert_eq!(q.vertices().len(), 4);
        assert!(q.contains(&RatVec::new(vec![rat(3, 2), rat(1, 2)])));
        let c3 = crosspolytope_family(&ints(&[2, 4, 4])).unwrap();
        assert_eq!(c3.vertices().len(), 6);
        assert_eq!(crosspolytope_family(&ints(&[1])).unwrap(), Polytope::cube(1, 0, 1));
    }

    #[test]
    fn cube_even_examples() {
        let (b, l) = cube_even(3).unwrap();
        assert_eq!(b, Polytope::cube(3, 0, 2));
        assert_eq!(l.det_lattice(), int(2));
        for z in [[1, 1, 0], [2, 0, 0], [1, 0, -1], [3, 1, 2]] {
            assert!(l.contains(&RatVec::from_ints(&z)));
        }
        assert!(!l.contains(&RatVec::from_ints(&[1, 1, 1])));
        let (b5, l5) = cube_even(5).unwrap();
        assert_eq!(b5.dim(), 5);
        assert_eq!(l5.det_lattice(), int(2));
        assert!(cube_even(4).is_err());
        assert!(cube_even(1).is_err());
    }

    #[test]
    fn census_examples() {
        let seg = Polytope::cube(1, -1, 1);
        let c = classify_coproduct_facets(&seg, &seg).unwrap();
        assert_eq!(c.actual, FacetCounts { both: 4, first: 0, second: 0 });
        assert!(c.matches());

        let unit = Polytope::cube(1, 0, 1);
        let c = classify_coproduct_facets(&unit, &unit).unwrap();
        assert_eq!(c.actual, FacetCounts { both: 1, first: 1, second: 1 });
        assert!(c.matches());
        assert_eq!(c.facet_count, 3);

        assert_eq!(classify_coproduct_facets(&Polytope::cube(1, 1, 2), &unit).unwrap_err(), Error::AnchorOutside);
    }
}
