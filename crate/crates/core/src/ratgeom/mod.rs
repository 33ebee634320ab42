//! Exact polytope kernel.
//!
//! A [`Polytope`] always carries both descriptions: a sorted irredundant vertex
//! list and an irredundant halfspace list (with equality pairs when the
//! polytope is not full-dimensional), together with the vertex/halfspace
//! incidence. Conversions go through the double description method in
//! [`dd`].

pub(crate) mod dd;
mod hausdorff;
mod volume;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{affine_dim, denom_lcm, int, Rat, RatMat, RatVec};
use dd::{extreme_rays, int_row, Bits};

pub use hausdorff::{hausdorff_distance, hausdorff_sq};

/// Closed halfspace `normal . x <= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    normal: RatVec,
    offset: Rat,
}

impl HalfSpace {
    pub fn new(normal: RatVec, offset: Rat) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::ZeroNormal);
        }
        Ok(HalfSpace { normal, offset })
    }

    pub fn from_ints(normal: &[i64], offset: i64) -> Self {
        Self::new(RatVec::from_ints(normal), int(offset)).expect("zero normal")
    }

    pub fn normal(&self) -> &RatVec {
        &self.normal
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// `offset - normal . x`, nonnegative exactly on the halfspace.
    pub fn slack(&self, x: &RatVec) -> Rat {
        &self.offset - self.normal.dot(x)
    }

    pub fn contains(&self, x: &RatVec) -> bool {
        !self.slack(x).is_negative()
    }

    /// Rescaled so the normal is a primitive integer vector.
    pub fn normalized(&self) -> HalfSpace {
        let l = Rat::from_integer(denom_lcm(self.normal.iter()));
        let scaled = self.normal.scale(&l);
        let ints = scaled.primitive_integer();
        let g = scaled.iter().zip(&ints).find(|(_, i)| !i.is_zero()).map(|(s, i)| s / Rat::from_integer(i.clone()));
        let g = g.unwrap_or_else(Rat::one);
        HalfSpace { normal: RatVec::from_bigints(&ints), offset: &self.offset * &l / g }
    }

    pub fn flipped(&self) -> HalfSpace {
        HalfSpace { normal: -&self.normal, offset: -self.offset.clone() }
    }
}

impl fmt::Display for HalfSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} . x <= {}", self.normal, crate::rational::fmt_rat(&self.offset))
    }
}

/// Bounded rational polytope with both representations.
#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<RatVec>,
    halfspaces: Vec<HalfSpace>,
    incidence: Vec<Bits>,
    affine_dim: usize,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

fn check_dims<'a>(n: usize, it: impl IntoIterator<Item = &'a RatVec>) -> Result<()> {
    it.into_iter().try_for_each(|v| v.check_dim(n))
}

/// Canonical basis of the lineality space of `rows` (as rows of an rref matrix).
fn lineality(rows: &RatMat) -> Vec<RatVec> {
    let ns = rows.nullspace();
    if ns.is_empty() {
        return ns;
    }
    let mut m = RatMat::from_rows(&ns).expect("nullspace rows");
    let piv = m.rref();
    (0..piv.len()).map(|i| m.row(i)).collect()
}

fn augmented_int_rows(m: &RatMat, lin: &[RatVec]) -> Vec<Vec<num_bigint::BigInt>> {
    let mut rows: Vec<_> = m.row_vecs().iter().map(|r| int_row(r)).collect();
    for l in lin {
        rows.push(int_row(l));
        rows.push(int_row(&(-l)));
    }
    rows
}

impl Polytope {
    /// Convex hull of a finite point set, with an irredundant halfspace description.
    pub fn from_vertices(dim: usize, points: &[RatVec]) -> Result<Polytope> {
        if points.is_empty() {
            return Err(Error::EmptyInput("no points".into()));
        }
        check_dims(dim, points)?;
        let pts: Vec<RatVec> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();

        let homog: Vec<RatVec> = pts.iter().map(|p| RatVec::new(vec![Rat::one()]).concat(p)).collect();
        let m = RatMat::from_rows(&homog)?;
        let lin = lineality(&m);
        let rays = extreme_rays(&augmented_int_rows(&m, &lin)).expect("dual cone is pointed");

        // Keep only extreme points; hull of pts equals hull of the tight points.
        let mut hs: Vec<HalfSpace> = Vec::new();
        for l in &lin {
            let normal: RatVec = l[1..].iter().map(|x| -x).collect();
            let h = HalfSpace::new(normal, l[0].clone()).expect("equality normal").normalized();
            hs.push(h.flipped());
            hs.push(h);
        }
        for r in rays {
            let normal: RatVec = r[1..].iter().map(|x| -Rat::from_integer(x.clone())).collect();
            if normal.is_zero() {
                continue;
            }
            hs.push(HalfSpace::new(normal, Rat::from_integer(r[0].clone()))?.normalized());
        }
        Self::assemble(dim, pts, hs, true)
    }

    /// Bounded solution set of a halfspace system.
    pub fn from_halfspaces(dim: usize, halfspaces: &[HalfSpace]) -> Result<Polytope> {
        for h in halfspaces {
            h.normal.check_dim(dim)?;
        }
        if halfspaces.is_empty() {
            return Err(Error::UnboundedInput);
        }
        let mut homog: Vec<RatVec> =
            halfspaces.iter().map(|h| RatVec::new(vec![h.offset.clone()]).concat(&-&h.normal)).collect();
        homog.push(RatVec::unit(dim + 1, 0));
        let m = RatMat::from_rows(&homog)?;
        let lin = lineality(&m);
        let rays = extreme_rays(&augmented_int_rows(&m, &lin)).expect("restricted cone is pointed");

        let mut verts = Vec::new();
        let mut has_direction = !lin.is_empty();
        for r in rays {
            if r[0].is_positive() {
                let t = Rat::from_integer(r[0].clone());
                verts.push(r[1..].iter().map(|x| Rat::from_integer(x.clone()) / &t).collect::<RatVec>());
            } else {
                has_direction = true;
            }
        }
        if verts.is_empty() {
            return Err(Error::EmptyInput("infeasible halfspace system".into()));
        }
        if has_direction {
            return Err(Error::UnboundedInput);
        }
        verts.sort();
        verts.dedup();
        let adim = affine_dim(&verts.iter().collect::<Vec<_>>());
        if adim < dim as i64 {
            return Self::from_vertices(dim, &verts);
        }
        let hs = halfspaces.iter().map(HalfSpace::normalized).collect();
        Self::assemble(dim, verts, hs, false)
    }

    /// Sorts, computes incidence and drops halfspaces that do not define a facet
    /// (or an equality of the affine hull).
    fn assemble(dim: usize, mut vertices: Vec<RatVec>, hs: Vec<HalfSpace>, prune_vertices: bool) -> Result<Polytope> {
        vertices.sort();
        vertices.dedup();
        let tight_of = |h: &HalfSpace, vs: &[RatVec]| {
            let mut b = Bits::new(vs.len());
            for (i, v) in vs.iter().enumerate() {
                if h.slack(v).is_zero() {
                    b.set(i);
                }
            }
            b
        };

        if prune_vertices && vertices.len() > 1 {
            // A point is a vertex iff the tight constraints at it pin it down.
            let adim = affine_dim(&vertices.iter().collect::<Vec<_>>()).max(0) as usize;
            let tights: Vec<Bits> = hs.iter().map(|h| tight_of(h, &vertices)).collect();
            let keep: Vec<bool> = (0..vertices.len())
                .map(|i| {
                    let normals: Vec<RatVec> =
                        hs.iter().zip(&tights).filter(|(_, t)| t.get(i)).map(|(h, _)| h.normal.clone()).collect();
                    !normals.is_empty() && RatMat::from_rows(&normals).map(|m| m.rank()).unwrap_or(0) >= dim
                        || adim == 0
                })
                .collect();
            vertices = vertices.into_iter().zip(keep).filter(|(_, k)| *k).map(|(v, _)| v).collect();
        }

        let n = vertices.len();
        let adim = affine_dim(&vertices.iter().collect::<Vec<_>>()).max(0) as usize;
        let all = Bits::full(n);
        let mut by_set: BTreeMap<Bits, HalfSpace> = BTreeMap::new();
        let mut equalities: BTreeSet<HalfSpace> = BTreeSet::new();
        for h in hs {
            let t = tight_of(&h, &vertices);
            if t == all {
                if adim < dim {
                    equalities.insert(h);
                }
                continue;
            }
            if t.count() == 0 {
                continue;
            }
            let pts: Vec<&RatVec> = t.ones().map(|i| &vertices[i]).collect();
            if affine_dim(&pts) + 1 != adim as i64 {
                continue;
            }
            by_set
                .entry(t)
                .and_modify(|old| {
                    if h < *old {
                        *old = h.clone()
                    }
                })
                .or_insert(h);
        }
        let mut halfspaces: Vec<HalfSpace> = equalities.into_iter().collect();
        halfspaces.extend(by_set.into_values());
        halfspaces.sort();
        let incidence = halfspaces.iter().map(|h| tight_of(h, &vertices)).collect();
        Ok(Polytope { dim, vertices, halfspaces, incidence, affine_dim: adim })
    }

    /// Axis-parallel box `[lo_1, hi_1] x ... x [lo_n, hi_n]`.
    pub fn from_box(lo: &RatVec, hi: &RatVec) -> Result<Polytope> {
        let n = lo.dim();
        hi.check_dim(n)?;
        let mut hs = Vec::with_capacity(2 * n);
        for i in 0..n {
            hs.push(HalfSpace::new(RatVec::unit(n, i), hi[i].clone())?);
            hs.push(HalfSpace::new(-&RatVec::unit(n, i), -lo[i].clone())?);
        }
        Self::from_halfspaces(n, &hs)
    }

    /// `[lo, hi]^n`.
    pub fn cube(n: usize, lo: i64, hi: i64) -> Polytope {
        Self::from_box(&RatVec::from_ints(&vec![lo; n]), &RatVec::from_ints(&vec![hi; n])).expect("cube")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dim(&self) -> bool {
        self.affine_dim == self.dim
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    /// True if the halfspace at `i` is tight on every vertex.
    pub fn is_equality(&self, i: usize) -> bool {
        self.incidence[i].count() == self.vertices.len()
    }

    pub fn contains(&self, x: &RatVec) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
    }

    /// Strictly inside every non-equality halfspace (the relative interior).
    pub fn relint_contains(&self, x: &RatVec) -> bool {
        self.halfspaces.iter().enumerate().all(|(i, h)| {
            let s = h.slack(x);
            if self.is_equality(i) {
                s.is_zero()
            } else {
                s.is_positive()
            }
        })
    }

    /// Interior point test; false for lower-dimensional polytopes.
    pub fn interior_contains(&self, x: &RatVec) -> bool {
        self.is_full_dim() && self.relint_contains(x)
    }

    pub fn contains_polytope(&self, other: &Polytope) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
    }

    /// Mutual containment.
    pub fn same_set(&self, other: &Polytope) -> bool {
        self.dim == other.dim && self.contains_polytope(other) && other.contains_polytope(self)
    }

    /// Support function `max { u . v }` over the vertices.
    pub fn support(&self, u: &RatVec) -> Result<Rat> {
        u.check_dim(self.dim)?;
        Ok(self.vertices.iter().map(|v| u.dot(v)).max().expect("nonempty polytope"))
    }

    /// Average of the vertices; lies in the relative interior.
    pub fn vertex_centroid(&self) -> RatVec {
        let n = Rat::from_integer(self.vertices.len().into());
        let mut acc = RatVec::zeros(self.dim);
        for v in &self.vertices {
            acc = &acc + v;
        }
        acc.scale(&n.recip())
    }

    pub fn bbox(&self) -> (RatVec, RatVec) {
        let lo = (0..self.dim).map(|i| self.vertices.iter().map(|v| v[i].clone()).min().unwrap()).collect();
        let hi = (0..self.dim).map(|i| self.vertices.iter().map(|v| v[i].clone()).max().unwrap()).collect();
        (lo, hi)
    }

    /// Indices of the halfspaces that are tight on every vertex in `verts`.
    fn active_for(&self, verts: &Bits) -> Vec<usize> {
        (0..self.halfspaces.len()).filter(|&i| verts.is_subset_of(&self.incidence[i])).collect()
    }

    fn face_from_bits(&self, verts: Bits) -> Face<'_> {
        let pts: Vec<&RatVec> = verts.ones().map(|i| &self.vertices[i]).collect();
        Face { owner: self, dim: affine_dim(&pts), active: self.active_for(&verts), vertices: verts.ones().collect() }
    }

    pub fn whole(&self) -> Face<'_> {
        self.face_from_bits(Bits::full(self.vertices.len()))
    }

    /// Face of maximizers of `u . x`; `u = 0` gives the whole polytope.
    pub fn exposed_face(&self, u: &RatVec) -> Result<Face<'_>> {
        let h = self.support(u)?;
        let mut b = Bits::new(self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            if u.dot(v) == h {
                b.set(i);
            }
        }
        Ok(self.face_from_bits(b))
    }

    /// Vertex sets of the facets (relative to the affine hull), with the
    /// index of a defining halfspace.
    pub(crate) fn facet_sets(&self) -> Vec<(usize, Bits)> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (i, t) in self.incidence.iter().enumerate() {
            if self.is_equality(i) || !seen.insert(t.clone()) {
                continue;
            }
            let pts: Vec<&RatVec> = t.ones().map(|k| &self.vertices[k]).collect();
            if affine_dim(&pts) + 1 == self.affine_dim as i64 {
                out.push((i, t.clone()));
            }
        }
        out
    }

    pub fn facets(&self) -> Vec<Face<'_>> {
        self.facet_sets().into_iter().map(|(_, b)| self.face_from_bits(b)).collect()
    }

    /// All faces of dimension `i`, for `-1 <= i <= dim(P)`.
    pub fn faces(&self, i: i64) -> Result<Vec<Face<'_>>> {
        let d = self.affine_dim as i64;
        if i < -1 || i > d {
            return Err(Error::FaceDimOutOfRange(i));
        }
        if i == -1 {
            return Ok(vec![Face {
                owner: self,
                dim: -1,
                active: (0..self.halfspaces.len()).collect(),
                vertices: vec![],
            }]);
        }
        if i == d {
            return Ok(vec![self.whole()]);
        }
        let facets: Vec<Bits> = self.facet_sets().into_iter().map(|(_, b)| b).collect();
        let mut level: BTreeSet<Bits> = facets.iter().cloned().collect();
        let mut k = d - 1;
        while k > i {
            let mut next = BTreeSet::new();
            for g in &level {
                for t in &facets {
                    let s = g.and(t);
                    if &s == g || s.count() == 0 {
                        continue;
                    }
                    let pts: Vec<&RatVec> = s.ones().map(|v| &self.vertices[v]).collect();
                    if affine_dim(&pts) == k - 1 {
                        next.insert(s);
                    }
                }
            }
            level = next;
            k -= 1;
        }
        Ok(level.into_iter().map(|b| self.face_from_bits(b)).collect())
    }

    /// Image under `x -> A x + b` for square `A`.
    pub fn affine_image(&self, a: &RatMat, b: &RatVec) -> Result<Polytope> {
        if !a.is_square() || a.ncols() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: a.ncols() });
        }
        b.check_dim(self.dim)?;
        let verts: Vec<RatVec> = self.vertices.iter().map(|v| Ok(&a.mul_vec(v)? + b)).collect::<Result<_>>()?;
        let Ok(inv) = a.inverse() else {
            return Polytope::from_vertices(self.dim, &verts);
        };
        // a.x <= c  with x = A^-1 (y - b)  becomes  (A^-T a).y <= c + (A^-T a).b
        let inv_t = inv.transpose();
        let hs = self
            .halfspaces
            .iter()
            .map(|h| {
                let nn = inv_t.mul_vec(&h.normal)?;
                let off = &h.offset + nn.dot(b);
                Ok(HalfSpace::new(nn, off)?.normalized())
            })
            .collect::<Result<Vec<_>>>()?;
        Polytope::assemble(self.dim, verts, hs, false)
    }

    pub fn translate(&self, t: &RatVec) -> Result<Polytope> {
        self.affine_image(&RatMat::identity(self.dim), t)
    }

    /// `s * P` for `s != 0`.
    pub fn scale(&self, s: &Rat) -> Result<Polytope> {
        self.affine_image(&RatMat::scalar(self.dim, s), &RatVec::zeros(self.dim))
    }

    /// `P ∩ Q`, or `None` when empty.
    pub fn intersect(&self, other: &Polytope) -> Result<Option<Polytope>> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let hs: Vec<HalfSpace> = self.halfspaces.iter().chain(&other.halfspaces).cloned().collect();
        match Polytope::from_halfspaces(self.dim, &hs) {
            Ok(p) => Ok(Some(p)),
            Err(Error::EmptyInput(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// Minkowski sum via pairwise vertex sums.
    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let pts: Vec<RatVec> = self.vertices.iter().flat_map(|a| other.vertices.iter().map(move |b| a + b)).collect();
        Polytope::from_vertices(self.dim, &pts)
    }

    /// Exact Lebesgue volume; zero when not full-dimensional.
    pub fn volume(&self) -> Rat {
        volume::volume(self)
    }

    /// Fan triangulation as vertex-index simplices (full-dimensional polytopes only).
    pub fn triangulation(&self) -> Vec<Vec<usize>> {
        volume::triangulation(self)
    }
}

/// Face of a polytope: vertex index set plus the halfspaces active on it.
#[derive(Clone, Debug)]
pub struct Face<'a> {
    owner: &'a Polytope,
    dim: i64,
    active: Vec<usize>,
    vertices: Vec<usize>,
}

impl<'a> Face<'a> {
    pub fn owner(&self) -> &'a Polytope {
        self.owner
    }

    pub fn dim(&self) -> i64 {
        self.dim
    }

    pub fn active(&self) -> &[usize] {
        &self.active
    }

    pub fn vertex_indices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn points(&self) -> Vec<RatVec> {
        self.vertices.iter().map(|&i| self.owner.vertices[i].clone()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_facet(&self) -> bool {
        self.dim + 1 == self.owner.affine_dim as i64
    }

    pub fn contains(&self, x: &RatVec) -> bool {
        !self.is_empty()
            && self.owner.contains(x)
            && self.active.iter().all(|&i| self.owner.halfspaces[i].slack(x).is_zero())
    }

    /// Relative interior membership: tight exactly on the active halfspaces.
    pub fn relint_contains(&self, x: &RatVec) -> bool {
        if self.is_empty() {
            return false;
        }
        self.owner.halfspaces.iter().enumerate().all(|(i, h)| {
            let s = h.slack(x);
            if self.active.contains(&i) {
                s.is_zero()
            } else {
                s.is_positive()
            }
        })
    }

    /// The face as a standalone polytope.
    pub fn to_polytope(&self) -> Result<Polytope> {
        Polytope::from_vertices(self.owner.dim, &self.points())
    }

    /// A halfspace of the owner that is tight on this face and not an equality.
    pub fn defining_halfspace(&self) -> Option<&'a HalfSpace> {
        self.active.iter().find(|&&i| !self.owner.is_equality(i)).map(|&i| &self.owner.halfspaces[i])
    }
}

impl PartialEq for Face<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.owner, other.owner) && self.vertices == other.vertices
    }
}

pub(crate) fn factorial(n: usize) -> Rat {
    (1..=n).fold(Rat::one(), |acc, k| acc * BigRational::from_integer(k.into()))
}
