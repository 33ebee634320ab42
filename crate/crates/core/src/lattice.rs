//! Full-rank affine lattices `shift + basis . Z^n`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::ratgeom::{Face, HalfSpace, Polytope};
use crate::rational::{Rat, RatMat, RatVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLattice {
    basis: RatMat,
    shift: RatVec,
    inv: RatMat,
}

impl AffineLattice {
    /// Lattice generated by the columns of `basis`, translated by `shift`.
    pub fn new(basis: RatMat, shift: RatVec) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::DimensionMismatch { expected: basis.nrows(), got: basis.ncols() });
        }
        shift.check_dim(basis.nrows())?;
        let inv = basis.inverse()?;
        Ok(AffineLattice { basis, shift, inv })
    }

    /// The standard lattice `Z^n`.
    pub fn integer(n: usize) -> Self {
        AffineLattice { basis: RatMat::identity(n), shift: RatVec::zeros(n), inv: RatMat::identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &RatMat {
        &self.basis
    }

    pub fn shift(&self) -> &RatVec {
        &self.shift
    }

    pub fn is_standard(&self) -> bool {
        self.shift.is_integral() && self.basis == RatMat::identity(self.dim())
    }

    /// Coordinates of `x` with respect to the lattice basis and shift.
    pub fn coords(&self, x: &RatVec) -> Result<RatVec> {
        self.inv.mul_vec(&(x - &self.shift))
    }

    pub fn contains(&self, x: &RatVec) -> bool {
        self.coords(x).map(|c| c.is_integral()).unwrap_or(false)
    }

    pub fn point(&self, z: &[BigInt]) -> Result<RatVec> {
        Ok(&self.shift + &self.basis.mul_vec(&RatVec::from_bigints(z))?)
    }

    pub fn det_lattice(&self) -> Rat {
        self.basis.det().expect("square basis").abs()
    }

    /// Affine map `x -> A x + b` sending the lattice onto `Z^n`.
    pub fn to_standard(&self) -> (RatMat, RatVec) {
        let b = -&self.inv.mul_vec(&self.shift).expect("dimension");
        (self.inv.clone(), b)
    }

    /// Lattice points of a bounded polytope, in sorted order.
    pub fn points_in(&self, p: &Polytope, guard: u64) -> Result<Vec<RatVec>> {
        self.check(p)?;
        self.scan(p.vertices(), p.halfspaces(), |x| p.contains(x), guard)
    }

    /// Lattice points in the relative interior of a nonempty face.
    pub fn relint_points(&self, face: &Face<'_>, guard: u64) -> Result<Vec<RatVec>> {
        if face.is_empty() {
            return Err(Error::EmptyInput("empty face".into()));
        }
        let owner = face.owner();
        self.check(owner)?;
        self.scan(&face.points(), owner.halfspaces(), |x| face.relint_contains(x), guard)
    }

    fn check(&self, p: &Polytope) -> Result<()> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: p.dim() });
        }
        Ok(())
    }

    /// Scans the integer box around the lattice coordinates of `verts`.
    fn scan(
        &self,
        verts: &[RatVec],
        hs: &[HalfSpace],
        keep: impl Fn(&RatVec) -> bool,
        guard: u64,
    ) -> Result<Vec<RatVec>> {
        let n = self.dim();
        let coords: Vec<RatVec> = verts.iter().map(|v| self.coords(v)).collect::<Result<_>>()?;
        let mut lo = Vec::with_capacity(n);
        let mut hi = Vec::with_capacity(n);
        let mut total: u64 = 1;
        for i in 0..n {
            let l = coords.iter().map(|c| c[i].ceil()).min().expect("nonempty");
            let h = coords.iter().map(|c| c[i].floor()).max().expect("nonempty");
            if h < l {
                return Ok(Vec::new());
            }
            let (Some(l), Some(h)) = (l.to_integer().to_i64(), h.to_integer().to_i64()) else {
                return Err(Error::EnumerationGuard(guard));
            };
            total = total.saturating_mul((h - l + 1) as u64);
            if total > guard {
                return Err(Error::EnumerationGuard(guard));
            }
            lo.push(l);
            hi.push(h);
        }

        // Pull the halfspaces back to lattice coordinates for a cheap prefilter.
        let bt = self.basis.transpose();
        let pulled: Vec<(RatVec, Rat)> = hs
            .iter()
            .map(|h| Ok((bt.mul_vec(h.normal())?, h.offset() - h.normal().dot(&self.shift))))
            .collect::<Result<_>>()?;

        let mut out = Vec::new();
        let mut y = lo.clone();
        loop {
            let yv = RatVec::from_ints(&y);
            if pulled.iter().all(|(a, b)| a.dot(&yv) <= *b) {
                let x = &self.shift + &self.basis.mul_vec(&yv)?;
                if keep(&x) {
                    out.push(x);
                }
            }
            let mut k = 0;
            loop {
                if k == n {
                    out.sort();
                    return Ok(out);
                }
                y[k] += 1;
                if y[k] <= hi[k] {
                    break;
                }
                y[k] = lo[k];
                k += 1;
            }
        }
    }
}
