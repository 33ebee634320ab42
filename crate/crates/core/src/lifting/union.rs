//! Volume of a union of polytopes, and the reduction of a region to the unit cube.

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::RegionUnion;
use crate::error::{Error, Result};
use crate::lattice::AffineLattice;
use crate::limits::Limits;
use crate::ratgeom::Polytope;
use crate::rational::{Rat, RatVec};

/// A full-dimensional piece, moved to standard lattice coordinates, shifted by
/// `-shift` and clipped to `[0,1]^n`.
#[derive(Clone, Debug)]
pub struct Cell {
    pub polytope: Polytope,
    pub piece: usize,
    pub shift: RatVec,
}

/// Clipped translates of the region that together represent `R / Λ`.
pub fn fundamental_cells(region: &RegionUnion, lattice: &AffineLattice, limits: &Limits) -> Result<Vec<Cell>> {
    let n = region.dim();
    if lattice.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: lattice.dim() });
    }
    let (a, b) = lattice.to_standard();
    let unit = Polytope::cube(n, 0, 1);
    let mut cells = Vec::new();
    for (idx, piece) in region.pieces().iter().enumerate() {
        if !piece.polytope.is_full_dim() {
            continue;
        }
        let p = piece.polytope.affine_image(&a, &b)?;
        let (lo, hi) = p.bbox();
        let lo: Vec<i64> = lo.iter().map(|x| to_i64(&x.floor())).collect::<Result<_>>()?;
        let hi: Vec<i64> = hi.iter().map(|x| to_i64(&x.ceil()).map(|v| v - 1)).collect::<Result<_>>()?;
        let mut w = lo.clone();
        'shifts: loop {
            let wv = RatVec::from_ints(&w);
            let moved = p.translate(&-&wv)?;
            if let Some(c) = moved.intersect(&unit)? {
                if c.is_full_dim() {
                    cells.push(Cell { polytope: c, piece: idx, shift: wv });
                    if cells.len() > limits.piece_guard {
                        return Err(Error::PieceGuard { got: cells.len(), limit: limits.piece_guard });
                    }
                }
            }
            for k in 0..n {
                w[k] += 1;
                if w[k] <= hi[k] {
                    continue 'shifts;
                }
                w[k] = lo[k];
            }
            break;
        }
    }
    Ok(cells)
}

fn to_i64(x: &Rat) -> Result<i64> {
    use num_traits::ToPrimitive;
    x.to_integer().to_i64().ok_or_else(|| Error::InvalidParameter("coordinate too large".into()))
}

/// Polytope with its bounding box.
struct Entry {
    p: Polytope,
    lo: RatVec,
    hi: RatVec,
}

impl Entry {
    fn new(p: Polytope) -> Self {
        let (lo, hi) = p.bbox();
        Entry { p, lo, hi }
    }
}

/// True if some facet of one polytope has all vertices of the other on its far side.
fn separated(a: &Entry, b: &Entry) -> bool {
    let boxes_apart = (0..a.lo.dim()).any(|i| a.hi[i] <= b.lo[i] || b.hi[i] <= a.lo[i]);
    if boxes_apart {
        return true;
    }
    let splits = |x: &Polytope, y: &Polytope| {
        x.halfspaces().iter().any(|h| y.vertices().iter().all(|v| !h.slack(v).is_positive()))
    };
    splits(&a.p, &b.p) || splits(&b.p, &a.p)
}

/// Drops duplicates and members contained in another member.
fn reduce(mut items: Vec<Entry>) -> Vec<Entry> {
    items.sort_by(|x, y| y.p.volume().cmp(&x.p.volume()).then_with(|| x.p.vertices().cmp(y.p.vertices())));
    let mut kept: Vec<Entry> = Vec::with_capacity(items.len());
    for e in items {
        let inside = kept
            .iter()
            .any(|k| (0..e.lo.dim()).all(|i| k.lo[i] <= e.lo[i] && e.hi[i] <= k.hi[i]) && k.p.contains_polytope(&e.p));
        if !inside {
            kept.push(e);
        }
    }
    kept
}

fn union_rec(items: Vec<Entry>, parallel: bool) -> Rat {
    let items = reduce(items);
    let term = |k: usize| -> Rat {
        let a = &items[k];
        let overlaps: Vec<Entry> = items[..k]
            .iter()
            .filter(|b| !separated(a, b))
            .filter_map(|b| a.p.intersect(&b.p).expect("same dimension"))
            .filter(Polytope::is_full_dim)
            .map(Entry::new)
            .collect();
        let v = a.p.volume();
        if overlaps.is_empty() {
            v
        } else {
            v - union_rec(overlaps, false)
        }
    };
    if parallel {
        (0..items.len()).into_par_iter().map(term).reduce(Rat::zero, |x, y| x + y)
    } else {
        (0..items.len()).map(term).sum()
    }
}

/// Exact volume of a finite union of polytopes.
pub fn union_volume(polys: &[Polytope]) -> Rat {
    let items: Vec<Entry> = polys.iter().filter(|p| p.is_full_dim()).cloned().map(Entry::new).collect();
    union_rec(items, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn boxp(lo: &[Rat], hi: &[Rat]) -> Polytope {
        Polytope::from_box(&RatVec::new(lo.to_vec()), &RatVec::new(hi.to_vec())).unwrap()
    }

    #[test]
    fn union_of_overlapping_squares() {
        let a = boxp(&[int(0), int(0)], &[int(2), int(2)]);
        let b = boxp(&[int(1), int(1)], &[int(3), int(3)]);
        let c = boxp(&[rat(1, 2), rat(1, 2)], &[rat(3, 2), rat(5, 2)]);
        // Oracle: count covered cells of the half-integer grid by their centers.
        let mut cells = 0;
        for i in 0..12 {
            for j in 0..12 {
                let x = RatVec::new(vec![rat(2 * i + 1, 4), rat(2 * j + 1, 4)]);
                if [&a, &b, &c].iter().any(|p| p.contains(&x)) {
                    cells += 1;
                }
            }
        }
        assert_eq!(union_volume(&[a, b, c]), rat(cells, 4));
    }

    #[test]
    fn duplicates_and_nested_members() {
        let a = Polytope::cube(3, 0, 2);
        let inner = Polytope::cube(3, 0, 1);
        assert_eq!(union_volume(&[a.clone(), a.clone(), inner]), int(8));
        assert_eq!(union_volume(&[]), int(0));
    }

    #[test]
    fn touching_pieces_add() {
        let a = Polytope::cube(2, 0, 1);
        let b = a.translate(&RatVec::from_ints(&[1, 0])).unwrap();
        assert_eq!(union_volume(&[a, b]), int(2));
    }
}
