//! Lattice-free bodies and their cut-generating functions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::AffineLattice;
use crate::ratgeom::{dd, HalfSpace, Polytope};
use crate::rational::{Rat, RatMat, RatVec};

/// True when the interior of `b` contains no point of `lattice`.
pub fn is_lattice_free(b: &Polytope, lattice: &AffineLattice, guard: u64) -> Result<bool> {
    if !b.is_full_dim() {
        return Err(Error::InvalidParameter("body is not full-dimensional".into()));
    }
    Ok(lattice.points_in(b, guard)?.iter().all(|x| !b.interior_contains(x)))
}

/// Lattice-free with a lattice point in the relative interior of every facet.
pub fn is_maximal_lattice_free(b: &Polytope, lattice: &AffineLattice, guard: u64) -> Result<bool> {
    if !is_lattice_free(b, lattice, guard)? {
        return Ok(false);
    }
    for facet in b.facets() {
        if lattice.relint_points(&facet, guard)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Facet description `a_i . (x - f) <= 1` of a body around an interior anchor.
#[derive(Clone, Debug)]
pub struct GaugeModel {
    body: Polytope,
    anchor: RatVec,
    normals: Vec<RatVec>,
    radius_bound: Rat,
}

impl GaugeModel {
    pub fn new(body: &Polytope, f: &RatVec) -> Result<Self> {
        f.check_dim(body.dim())?;
        if !body.interior_contains(f) {
            return Err(Error::AnchorNotInterior);
        }
        let normals = body
            .halfspaces()
            .iter()
            .map(|h| {
                let s = h.slack(f);
                h.normal().scale(&s.recip())
            })
            .collect();
        let radius_bound = body.vertices().iter().map(|v| (v - f).l1_norm()).max().expect("nonempty");
        Ok(GaugeModel { body: body.clone(), anchor: f.clone(), normals, radius_bound })
    }

    pub fn body(&self) -> &Polytope {
        &self.body
    }

    pub fn anchor(&self) -> &RatVec {
        &self.anchor
    }

    pub fn normals(&self) -> &[RatVec] {
        &self.normals
    }

    pub fn radius_bound(&self) -> &Rat {
        &self.radius_bound
    }

    pub fn dim(&self) -> usize {
        self.anchor.dim()
    }

    /// The gauge `max_i a_i . r` of `B - f`.
    pub fn eval(&self, r: &RatVec) -> Result<Rat> {
        r.check_dim(self.dim())?;
        Ok(self.normals.iter().map(|a| a.dot(r)).max().expect("bounded body has facets"))
    }

    /// Trivial lifting `min_{w in Z^n} gauge(r + w)` with a minimizing `w`.
    ///
    /// Ties are broken towards the lexicographically smallest `w`.
    pub fn trivial_lifting(&self, r: &RatVec, guard: u64) -> Result<(Rat, RatVec)> {
        r.check_dim(self.dim())?;
        let n = self.dim();
        let fl = r.floor();
        let rf = r - &fl;
        let u = self.eval(&rf)?;
        if u.is_zero() {
            return Ok((u, -&fl));
        }
        // Every improving w' satisfies r' + w' in u (B - f).
        let shift = -&(&self.anchor.scale(&u) + &rf);
        let search = self.body.affine_image(&RatMat::scalar(n, &u), &shift)?;
        let mut best: Option<(Rat, RatVec)> = None;
        for w in AffineLattice::integer(n).points_in(&search, guard)? {
            let v = self.eval(&(&rf + &w))?;
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, w));
            }
        }
        // w' = 0 always lies in the search set, so `best` is set.
        let (v, w) = best.expect("zero shift is a candidate");
        Ok((v, &w - &fl))
    }
}

/// Closed forms of the one-dimensional pair for a fractional `f`.
#[derive(Clone, Debug)]
pub struct GmiPair {
    frac_f: Rat,
}

fn frac(x: &Rat) -> Rat {
    x - x.floor()
}

impl GmiPair {
    pub fn new(f: &Rat) -> Result<Self> {
        if f.is_integer() {
            return Err(Error::IntegralF(crate::rational::fmt_rat(f)));
        }
        Ok(GmiPair { frac_f: frac(f) })
    }

    pub fn psi(&self, r: &Rat) -> Rat {
        let one = Rat::one();
        (r / (&one - &self.frac_f)).max(-r / &self.frac_f)
    }

    pub fn pi(&self, p: &Rat) -> Rat {
        let one = Rat::one();
        let fp = frac(p);
        (&fp / (&one - &self.frac_f)).min((&one - &fp) / &self.frac_f)
    }
}

/// Columns of a mixed-integer instance `f + R s + P y in Z^n`.
#[derive(Clone, Debug)]
pub struct CutInstance {
    pub f: RatVec,
    pub cont_cols: Vec<RatVec>,
    pub int_cols: Vec<RatVec>,
}

impl CutInstance {
    pub fn new(f: RatVec, cont_cols: Vec<RatVec>, int_cols: Vec<RatVec>) -> Result<Self> {
        if f.is_integral() {
            return Err(Error::IntegralF(f.to_string()));
        }
        for c in cont_cols.iter().chain(&int_cols) {
            c.check_dim(f.dim())?;
        }
        Ok(CutInstance { f, cont_cols, int_cols })
    }
}

/// Coefficients of `sum psi_i s_i + sum pi_j y_j >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub psi: Vec<Rat>,
    pub pi: Vec<Rat>,
}

impl Cut {
    pub fn lhs(&self, s: &[Rat], y: &[Rat]) -> Rat {
        let a: Rat = self.psi.iter().zip(s).map(|(c, x)| c * x).sum();
        let b: Rat = self.pi.iter().zip(y).map(|(c, x)| c * x).sum();
        a + b
    }
}

pub fn emit_cut(g: &GaugeModel, inst: &CutInstance, guard: u64) -> Result<Cut> {
    if inst.f != *g.anchor() {
        return Err(Error::AnchorMismatch { expected: g.anchor().to_strings(), got: inst.f.to_strings() });
    }
    let psi = inst.cont_cols.iter().map(|r| g.eval(r)).collect::<Result<_>>()?;
    let pi = inst.int_cols.iter().map(|p| Ok(g.trivial_lifting(p, guard)?.0)).collect::<Result<_>>()?;
    Ok(Cut { psi, pi })
}

/// Splitting of a body with linear recession cone as `core x R^k`.
#[derive(Clone, Debug)]
pub struct Factored {
    /// Bounded factor in the first `n - k` transformed coordinates.
    pub core: Polytope,
    /// Integer basis of the lineality space.
    pub lineality: Vec<RatVec>,
    /// Unimodular `V`; original points are `x = V y`.
    pub transform: RatMat,
}

impl Factored {
    /// Coordinates `(y', y'')` of `x`, with `y'` in the core's space.
    pub fn split(&self, x: &RatVec) -> Result<(RatVec, RatVec)> {
        let y = self.transform.inverse()?.mul_vec(x)?;
        let r = self.core.dim();
        Ok((y[..r].iter().cloned().collect(), y[r..].iter().cloned().collect()))
    }
}

/// Unimodular `V` with `M V = [H | 0]`; returns `(V, rank)`.
fn column_hnf(m: &[Vec<BigInt>], n: usize) -> (Vec<Vec<BigInt>>, usize) {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut v: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let col_op = |mat: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        for row in mat.iter_mut() {
            let t = &row[src] * q;
            row[dst] -= t;
        }
    };
    let swap = |mat: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        for row in mat.iter_mut() {
            row.swap(i, j);
        }
    };
    let mut col = 0;
    for i in 0..a.len() {
        if col == n {
            break;
        }
        loop {
            let piv = (col..n).filter(|&j| !a[i][j].is_zero()).min_by(|&x, &y| a[i][x].abs().cmp(&a[i][y].abs()));
            let Some(p) = piv else { break };
            swap(&mut a, col, p);
            swap(&mut v, col, p);
            let mut done = true;
            for j in col + 1..n {
                if a[i][j].is_zero() {
                    continue;
                }
                let q = a[i][j].div_floor(&a[i][col]);
                col_op(&mut a, j, col, &q);
                col_op(&mut v, j, col, &q);
                if !a[i][j].is_zero() {
                    done = false;
                }
            }
            if done {
                col += 1;
                break;
            }
        }
    }
    (v, col)
}

/// Factors `{x : a_i . x <= b_i}` as a bounded core times its lineality space.
pub fn factor_recession(dim: usize, halfspaces: &[HalfSpace]) -> Result<Factored> {
    for h in halfspaces {
        h.normal().check_dim(dim)?;
    }
    let a = RatMat::from_rows(&halfspaces.iter().map(|h| h.normal().clone()).collect::<Vec<_>>())
        .map_err(|_| Error::EmptyInput("no halfspaces".into()))?;
    let lin = a.nullspace();

    // The recession cone restricted to the orthogonal complement must be {0}.
    let mut rows: Vec<Vec<BigInt>> = halfspaces.iter().map(|h| dd::int_row(&-h.normal())).collect();
    for l in &lin {
        rows.push(dd::int_row(l));
        rows.push(dd::int_row(&-l));
    }
    let rays = dd::extreme_rays(&rows).expect("restricted cone is pointed");
    if !rays.is_empty() {
        return Err(Error::RecessionNotLinear);
    }

    let m: Vec<Vec<BigInt>> = halfspaces.iter().map(|h| dd::int_row(h.normal())).collect();
    let (v, r) = column_hnf(&m, dim);
    let vm = RatMat::from_rows(&v.iter().map(|row| RatVec::from_bigints(row)).collect::<Vec<_>>())?;
    let core_hs = halfspaces
        .iter()
        .map(|h| {
            let t = vm.transpose().mul_vec(h.normal())?;
            HalfSpace::new(t[..r].iter().cloned().collect(), h.offset().clone())
        })
        .collect::<Result<Vec<_>>>()?;
    let core = Polytope::from_halfspaces(r, &core_hs)?;
    let lineality = (r..dim).map(|j| vm.col(j)).collect();
    Ok(Factored { core, lineality, transform: vm })
}
