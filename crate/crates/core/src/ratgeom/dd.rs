//! Double description method over the integers.
//!
//! Computes the extreme rays of a pointed polyhedral cone `{y : A y >= 0}`.
//! Rays are kept as primitive integer vectors, so two rays are equal exactly
//! when they span the same half-line. Adjacency uses the combinatorial test.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::rational::{primitive, Rat, RatMat, RatVec};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub fn new(n: usize) -> Self {
        Bits { words: vec![0; n.div_ceil(64)] }
    }

    pub fn full(n: usize) -> Self {
        let mut b = Self::new(n);
        for i in 0..n {
            b.set(i);
        }
        b
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| w & (1 << (i % 64)) != 0)
    }

    pub fn and(&self, other: &Bits) -> Bits {
        Bits { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset_of(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| (0..64).filter(move |b| w & (1 << b) != 0).map(move |b| wi * 64 + b))
    }
}

struct Ray {
    v: Vec<BigInt>,
    zeros: Bits,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_ratvec(v: &[BigInt]) -> RatVec {
    RatVec::from_bigints(v)
}

/// Extreme rays of `{y : row . y >= 0 for all rows}`.
///
/// The rows must have full column rank, which makes the cone pointed.
/// Returns `None` if that precondition fails.
pub(crate) fn extreme_rays(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<BigInt>>> {
    let d = rows.first()?.len();
    let m = rows.len();

    // Greedy choice of d independent rows.
    let mut basis: Vec<usize> = Vec::with_capacity(d);
    let mut basis_vecs: Vec<RatVec> = Vec::with_capacity(d);
    for (i, r) in rows.iter().enumerate() {
        if basis.len() == d {
            break;
        }
        basis_vecs.push(to_ratvec(r));
        if RatMat::from_rows(&basis_vecs).ok()?.rank() == basis_vecs.len() {
            basis.push(i);
        } else {
            basis_vecs.pop();
        }
    }
    if basis.len() < d {
        return None;
    }
    let inv = RatMat::from_rows(&basis_vecs).ok()?.inverse().ok()?;

    let mut rays: Vec<Ray> = (0..d)
        .map(|j| {
            let col: RatVec = inv.col(j);
            let v = col.primitive_integer();
            let mut zeros = Bits::new(m);
            for (k, &bi) in basis.iter().enumerate() {
                if k != j {
                    zeros.set(bi);
                }
            }
            Ray { v, zeros }
        })
        .collect();

    let mut in_basis = vec![false; m];
    for &b in &basis {
        in_basis[b] = true;
    }

    for (h, row) in rows.iter().enumerate() {
        if in_basis[h] {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if vals[i].is_zero() {
                    r.zeros.set(h);
                }
            }
            continue;
        }

        let mut fresh: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.and(&rays[n].zeros);
                if common.count() + 2 < d {
                    continue;
                }
                let blocked = rays.iter().enumerate().any(|(k, r)| k != p && k != n && common.is_subset_of(&r.zeros));
                if blocked {
                    continue;
                }
                let sp = &vals[p];
                let sn = &vals[n];
                let v: Vec<BigInt> = rays[n].v.iter().zip(&rays[p].v).map(|(a, b)| sp * a - sn * b).collect();
                let mut zeros = common;
                zeros.set(h);
                fresh.push(Ray { v: primitive(v), zeros });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(pos.len() + fresh.len());
        for (i, mut r) in std::mem::take(&mut rays).into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            if vals[i].is_zero() {
                r.zeros.set(h);
            }
            next.push(r);
        }
        next.extend(fresh);
        rays = next;
    }

    Some(rays.into_iter().map(|r| r.v).collect())
}

/// Scales a rational row to a primitive integer row with the same direction.
pub(crate) fn int_row(r: &[Rat]) -> Vec<BigInt> {
    RatVec::new(r.to_vec()).primitive_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn orthant_rays() {
        let rows = vec![ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])];
        let mut rays = extreme_rays(&rows).unwrap();
        rays.sort();
        assert_eq!(rays, vec![ints(&[0, 0, 1]), ints(&[0, 1, 0]), ints(&[1, 0, 0])]);
    }

    #[test]
    fn square_cone() {
        // Homogenised unit square: t >= 0 is implied; rows (b, -a).
        let rows = vec![ints(&[0, 1, 0]), ints(&[0, 0, 1]), ints(&[1, -1, 0]), ints(&[1, 0, -1])];
        let rays = extreme_rays(&rows).unwrap();
        assert_eq!(rays.len(), 4);
        for r in &rays {
            assert!(r[0].is_positive());
        }
    }

    #[test]
    fn rank_deficient_is_rejected() {
        let rows = vec![ints(&[1, 0]), ints(&[-1, 0])];
        assert!(extreme_rays(&rows).is_none());
    }

    #[test]
    fn bits_ops() {
        let mut a = Bits::new(70);
        a.set(1);
        a.set(65);
        let mut b = Bits::new(70);
        b.set(65);
        assert!(b.is_subset_of(&a));
        assert!(!a.is_subset_of(&b));
        assert_eq!(a.and(&b).count(), 1);
        assert_eq!(a.ones().collect::<Vec<_>>(), vec![1, 65]);
        assert_eq!(Bits::full(3).count(), 3);
    }
}
