//! Hausdorff distance between polytopes.
//!
//! The nearest point of a polytope to `x` lies in the relative interior of some
//! face `G`, where it equals the orthogonal projection of `x` onto `aff(G)`.
//! Projecting onto every face and keeping the projections that land in the
//! polytope gives the exact squared distance. Since the distance from a point
//! of `P` to `Q` is convex, its maximum over `P` is attained at a vertex.

use num_traits::Zero;

use super::Polytope;
use crate::error::{Error, Result};
use crate::rational::{Rat, RatMat, RatVec};

/// Orthogonal projection of `x` onto the affine hull of `pts`.
fn project_affine(x: &RatVec, pts: &[RatVec]) -> RatVec {
    let base = &pts[0];
    let dirs: Vec<RatVec> = pts[1..].iter().map(|p| p - base).collect();
    if dirs.is_empty() {
        return base.clone();
    }
    // Reduce to an independent spanning set.
    let mut m = RatMat::from_rows(&dirs).expect("rows");
    let piv = m.rref();
    let basis: Vec<RatVec> = (0..piv.len()).map(|i| m.row(i)).collect();
    if basis.is_empty() {
        return base.clone();
    }
    let k = basis.len();
    let mut gram = RatMat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram.set(i, j, basis[i].dot(&basis[j]));
        }
    }
    let rhs: RatVec = basis.iter().map(|b| b.dot(&(x - base))).collect();
    let coef = gram.solve(&rhs).expect("gram matrix of a basis is nonsingular");
    let mut y = base.clone();
    for (c, b) in coef.iter().zip(&basis) {
        y = &y + &b.scale(c);
    }
    y
}

/// Exact squared Euclidean distance from `x` to `q`.
pub fn dist_sq_to(x: &RatVec, q: &Polytope) -> Rat {
    if q.contains(x) {
        return Rat::zero();
    }
    let mut best: Option<Rat> = None;
    for k in 0..=q.affine_dim() as i64 {
        for g in q.faces(k).expect("face range") {
            let y = project_affine(x, &g.points());
            if !q.contains(&y) {
                continue;
            }
            let d = (x - &y).norm2_sq();
            if best.as_ref().is_none_or(|b| d < *b) {
                best = Some(d);
            }
        }
    }
    best.expect("vertex projections always lie in the polytope")
}

/// Exact squared Hausdorff distance.
pub fn hausdorff_sq(p: &Polytope, q: &Polytope) -> Result<Rat> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), got: q.dim() });
    }
    let a = p.vertices().iter().map(|v| dist_sq_to(v, q)).max().unwrap_or_else(Rat::zero);
    let b = q.vertices().iter().map(|v| dist_sq_to(v, p)).max().unwrap_or_else(Rat::zero);
    Ok(a.max(b))
}

/// Hausdorff distance. The computation is exact up to the final square root;
/// `tol` bounds the floating point error of that last step and is otherwise unused.
pub fn hausdorff_distance(p: &Polytope, q: &Polytope, tol: f64) -> Result<f64> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::InvalidParameter(format!("tolerance {tol}")));
    }
    Ok(crate::rational::rat_to_f64(&hausdorff_sq(p, q)?).sqrt())
}
