//! Monte Carlo estimate of the volume modulo a lattice.
//!
//! Samples are dyadic points `k / 2^32` of the unit cube in standard lattice
//! coordinates, so membership in the clipped cells is decided exactly.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::union::fundamental_cells;
use super::RegionUnion;
use crate::error::{Error, Result};
use crate::lattice::AffineLattice;
use crate::limits::Limits;
use crate::rational::rat_to_f64;

const BATCH: u64 = 4096;
const SCALE_BITS: u32 = 32;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub hits: u64,
    pub samples: u64,
}

/// Halfspace `a . k <= num * 2^32 / den` in scaled integer form.
enum Test {
    Small { a: Vec<i128>, num: i128, den: i128 },
    Big { a: Vec<BigInt>, num: BigInt, den: BigInt },
}

impl Test {
    fn holds(&self, k: &[u64]) -> bool {
        match self {
            Test::Small { a, num, den } => {
                let s: i128 = a.iter().zip(k).map(|(x, &y)| x * y as i128).sum();
                s * den <= num << SCALE_BITS
            }
            Test::Big { a, num, den } => {
                let s: BigInt = a.iter().zip(k).map(|(x, &y)| x * BigInt::from(y)).sum();
                s * den <= num << SCALE_BITS
            }
        }
    }
}

fn compile(normal: &[BigInt], num: &BigInt, den: &BigInt) -> Test {
    // Bounds keep every product below 2^126.
    let small = |x: &BigInt| x.bits() <= 40;
    if normal.len() <= 8 && normal.iter().all(small) && small(num) && small(den) {
        Test::Small {
            a: normal.iter().map(|x| x.to_i128().unwrap()).collect(),
            num: num.to_i128().unwrap(),
            den: den.to_i128().unwrap(),
        }
    } else {
        Test::Big { a: normal.to_vec(), num: num.clone(), den: den.clone() }
    }
}

pub fn vol_mod_lattice_mc(
    region: &RegionUnion,
    lattice: &AffineLattice,
    samples: u64,
    seed: u64,
    limits: &Limits,
) -> Result<McEstimate> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be positive".into()));
    }
    limits.check_dim(region.dim())?;
    let n = region.dim();
    let cells: Vec<Vec<Test>> = fundamental_cells(region, lattice, limits)?
        .into_iter()
        .map(|c| {
            c.polytope
                .halfspaces()
                .iter()
                .map(|h| {
                    let a = h.normal().to_bigints().expect("normalized halfspaces are integral");
                    compile(&a, h.offset().numer(), h.offset().denom())
                })
                .collect()
        })
        .collect();

    let batches = samples.div_ceil(BATCH);
    let hits: u64 = (0..batches)
        .into_par_iter()
        .map(|bi| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(bi);
            let count = BATCH.min(samples - bi * BATCH);
            let mut k = vec![0u64; n];
            let mut h = 0;
            for _ in 0..count {
                for x in k.iter_mut() {
                    *x = rng.random::<u32>() as u64;
                }
                if cells.iter().any(|c| c.iter().all(|t| t.holds(&k))) {
                    h += 1;
                }
            }
            h
        })
        .sum();

    let det = rat_to_f64(&lattice.det_lattice());
    let p = hits as f64 / samples as f64;
    Ok(McEstimate { estimate: p * det, stderr: det * (p * (1.0 - p) / samples as f64).sqrt(), hits, samples })
}
