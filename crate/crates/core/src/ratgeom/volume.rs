//! Exact volume by recursive boundary triangulation.
//!
//! Each face is coned from its smallest-index vertex over the subfaces that
//! avoid that vertex. The triangulation of a face depends only on its vertex
//! set, so results are memoized.

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use super::dd::Bits;
use super::{factorial, Polytope};
use crate::rational::{affine_dim, Rat, RatMat, RatVec};

type Memo = HashMap<Bits, Vec<Vec<usize>>>;

fn triangulate_face(p: &Polytope, face: &Bits, k: usize, facets: &[Bits], memo: &mut Memo) -> Vec<Vec<usize>> {
    if let Some(t) = memo.get(face) {
        return t.clone();
    }
    let apex = face.ones().next().expect("nonempty face");
    let out = if k == 0 {
        vec![vec![apex]]
    } else {
        let mut subs: Vec<Bits> = Vec::new();
        for t in facets {
            if t.get(apex) {
                continue;
            }
            let s = face.and(t);
            if s.count() < k || subs.contains(&s) {
                continue;
            }
            let pts: Vec<&RatVec> = s.ones().map(|i| &p.vertices()[i]).collect();
            if affine_dim(&pts) == k as i64 - 1 {
                subs.push(s);
            }
        }
        let mut out = Vec::new();
        for s in subs {
            for mut simplex in triangulate_face(p, &s, k - 1, facets, memo) {
                simplex.insert(0, apex);
                out.push(simplex);
            }
        }
        out
    };
    memo.insert(face.clone(), out.clone());
    out
}

pub(super) fn triangulation(p: &Polytope) -> Vec<Vec<usize>> {
    if !p.is_full_dim() {
        return Vec::new();
    }
    let facets: Vec<Bits> = p.facet_sets().into_iter().map(|(_, b)| b).collect();
    let mut memo = Memo::new();
    triangulate_face(p, &Bits::full(p.vertices().len()), p.affine_dim(), &facets, &mut memo)
}

pub(crate) fn simplex_volume(pts: &[&RatVec]) -> Rat {
    let n = pts.len() - 1;
    let rows: Vec<RatVec> = pts[1..].iter().map(|v| *v - pts[0]).collect();
    let det = RatMat::from_rows(&rows).and_then(|m| m.det()).unwrap_or_else(|_| Rat::zero());
    det.abs() / factorial(n)
}

pub(super) fn volume(p: &Polytope) -> Rat {
    if p.dim() == 0 || !p.is_full_dim() {
        return Rat::zero();
    }
    triangulation(p).iter().map(|s| simplex_volume(&s.iter().map(|&i| &p.vertices()[i]).collect::<Vec<_>>())).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn cube_triangulation_has_n_factorial_simplices() {
        let c = Polytope::cube(3, 0, 1);
        assert_eq!(c.triangulation().len(), 6);
        for s in c.triangulation() {
            let pts: Vec<&RatVec> = s.iter().map(|&i| &c.vertices()[i]).collect();
            assert_eq!(simplex_volume(&pts), rat(1, 6));
        }
    }

    #[test]
    fn pentagon_area() {
        let pts: Vec<RatVec> = [[0, 0], [2, 0], [3, 2], [1, 3], [-1, 1]].iter().map(|p| RatVec::from_ints(p)).collect();
        let p = Polytope::from_vertices(2, &pts).unwrap();
        // Shoelace: |0 + 4 + 9-2... | computed independently below.
        let mut twice = int(0);
        for i in 0..pts.len() {
            let a = &pts[i];
            let b = &pts[(i + 1) % pts.len()];
            twice += &a[0] * &b[1] - &a[1] * &b[0];
        }
        assert_eq!(p.volume(), twice.abs() / int(2));
    }
}
