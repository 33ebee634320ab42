//! Exact rational scalars, vectors and dense matrices.
//!
//! Scalars are `BigRational`, which keeps every value in lowest terms with a
//! positive denominator. Vectors and matrices check dimensions on every
//! operation that combines two operands.

use std::fmt;
use std::ops::{Add, Deref, Index, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-0.25"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        if t.contains('/') {
            return Err(Error::Parse(format!("bad rational {t:?}")));
        }
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches(['-', '+']), fp);
        let num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })
            .map_err(|_| Error::Parse(format!("bad rational {t:?}")))?;
        let den = num_traits::pow(BigInt::from(10), fp.len());
        let r = Rat::new(num, den);
        return Ok(if neg { -r } else { r });
    }
    let r = Rat::from_str(t).map_err(|_| Error::Parse(format!("bad rational {t:?}")))?;
    Ok(r)
}

/// Formats as `"p/q"`, or `"p"` when integral.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Least common multiple of denominators.
pub fn denom_lcm<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RatVec(Vec<Rat>);

impl RatVec {
    pub fn new(v: Vec<Rat>) -> Self {
        RatVec(v)
    }

    pub fn zeros(n: usize) -> Self {
        RatVec(vec![Rat::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Rat::one();
        v
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RatVec(v.iter().map(|&x| int(x)).collect())
    }

    pub fn from_bigints(v: &[BigInt]) -> Self {
        RatVec(v.iter().map(|x| Rat::from_integer(x.clone())).collect())
    }

    pub fn parse_csv(s: &str) -> Result<Self> {
        s.split(',').map(parse_rat).collect::<Result<Vec<_>>>().map(RatVec)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<Rat> {
        self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [Rat] {
        &mut self.0
    }

    pub fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: self.dim() });
        }
        Ok(())
    }

    /// Inner product. Panics on dimension mismatch; callers validate inputs first.
    pub fn dot(&self, other: &RatVec) -> Rat {
        assert_eq!(self.dim(), other.dim(), "dot: dimension mismatch");
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, s: &Rat) -> RatVec {
        RatVec(self.0.iter().map(|x| x * s).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn floor(&self) -> RatVec {
        RatVec(self.0.iter().map(|x| x.floor()).collect())
    }

    /// Componentwise fractional part in `[0, 1)`.
    pub fn frac(&self) -> RatVec {
        RatVec(self.0.iter().map(|x| x - x.floor()).collect())
    }

    pub fn l1_norm(&self) -> Rat {
        self.0.iter().map(|x| x.abs()).sum()
    }

    pub fn norm2_sq(&self) -> Rat {
        self.dot(self)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rat_to_f64).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(fmt_rat).collect()
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &RatVec) -> RatVec {
        RatVec(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// Componentwise integer vector if integral.
    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.0.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
    }

    /// Smallest positive multiple with coprime integer entries.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let l = denom_lcm(&self.0);
        let ints: Vec<BigInt> = self.0.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
        primitive(ints)
    }
}

/// Divides an integer vector by the gcd of its entries.
pub fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

impl Deref for RatVec {
    type Target = [Rat];
    fn deref(&self) -> &[Rat] {
        &self.0
    }
}

impl From<Vec<Rat>> for RatVec {
    fn from(v: Vec<Rat>) -> Self {
        RatVec(v)
    }
}

impl FromIterator<Rat> for RatVec {
    fn from_iter<I: IntoIterator<Item = Rat>>(iter: I) -> Self {
        RatVec(iter.into_iter().collect())
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl Add for &RatVec {
    type Output = RatVec;
    fn add(self, rhs: &RatVec) -> RatVec {
        assert_eq!(self.dim(), rhs.dim(), "add: dimension mismatch");
        RatVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RatVec {
    type Output = RatVec;
    fn sub(self, rhs: &RatVec) -> RatVec {
        assert_eq!(self.dim(), rhs.dim(), "sub: dimension mismatch");
        RatVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RatVec {
    type Output = RatVec;
    fn neg(self) -> RatVec {
        RatVec(self.0.iter().map(|a| -a).collect())
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rat::one();
        }
        m
    }

    pub fn scalar(n: usize, s: &Rat) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = s.clone();
        }
        m
    }

    pub fn from_rows(rows: &[RatVec]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.dim());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            r.check_dim(cols)?;
            data.extend(r.iter().cloned());
        }
        Ok(RatMat { rows: rows.len(), cols, data })
    }

    pub fn from_cols(cols: &[RatVec]) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let rv: Vec<RatVec> = rows.iter().map(|r| RatVec::from_ints(r)).collect();
        Self::from_rows(&rv).expect("ragged integer rows")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> RatVec {
        RatVec(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn col(&self, j: usize) -> RatVec {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<RatVec> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = RatMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &RatVec) -> Result<RatVec> {
        v.check_dim(self.cols)?;
        Ok((0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v.iter()).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn mul(&self, other: &RatMat) -> Result<RatMat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = RatMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let s: Rat = (0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum();
                out.set(i, j, s);
            }
        }
        Ok(out)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).recip();
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.get(i, c).is_zero() {
                    let factor = self.get(i, c).clone();
                    for j in c..self.cols {
                        let v = self.get(i, j) - &factor * self.get(r, j);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space `{x : M x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<RatVec> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = RatVec::zeros(self.cols);
                x.0[fc] = Rat::one();
                for (pr, &pc) in pivots.iter().enumerate() {
                    x.0[pc] = -m.get(pr, fc).clone();
                }
                x
            })
            .collect()
    }

    pub fn det(&self) -> Result<Rat> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Rat::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c) / &piv;
                for j in c..n {
                    let v = m.get(i, j) - &factor * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<RatMat> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        let mut aug = RatMat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = RatMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Solves `M x = b` for square nonsingular `M`.
    pub fn solve(&self, b: &RatVec) -> Result<RatVec> {
        self.inverse()?.mul_vec(b)
    }
}

impl Index<(usize, usize)> for RatMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        self.get(i, j)
    }
}

/// Affine dimension of a point set (`-1` when empty).
pub fn affine_dim(points: &[&RatVec]) -> i64 {
    let Some(first) = points.first() else {
        return -1;
    };
    if points.len() == 1 {
        return 0;
    }
    let diffs: Vec<RatVec> = points[1..].iter().map(|p| *p - *first).collect();
    RatMat::from_rows(&diffs).map(|m| m.rank() as i64).unwrap_or(0)
}
