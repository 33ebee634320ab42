//! Instances shared by the benchmarks.

use unilift_core::rational::{int, rat};
use unilift_core::{cube_even, pyramid_construct, simplex_family, AffineLattice, Polytope, Rat, RatVec};

pub struct Instance {
    pub name: &'static str,
    pub body: Polytope,
    pub lattice: AffineLattice,
}

pub fn type1() -> Instance {
    Instance { name: "type1", body: simplex_family(&[int(2), int(2)]).unwrap(), lattice: AffineLattice::integer(2) }
}

pub fn simplex3() -> Instance {
    Instance {
        name: "simplex3",
        body: simplex_family(&[int(3), int(3), int(3)]).unwrap(),
        lattice: AffineLattice::integer(3),
    }
}

pub fn cube3() -> Instance {
    let (body, lattice) = cube_even(3).unwrap();
    Instance { name: "cube3", body, lattice }
}

pub fn pyramid() -> Instance {
    let c = RatVec::new(vec![rat(1, 2), rat(1, 2)]);
    let body = pyramid_construct(&type1().body, &c, &Rat::from_integer(0.into()), &rat(1, 3)).unwrap();
    Instance { name: "pyramid", body, lattice: AffineLattice::integer(3) }
}

/// Points on a sphere-like shell, rounded to small rationals.
pub fn shell(n: usize, count: usize) -> Vec<RatVec> {
    (0..count)
        .map(|k| {
            RatVec::new(
                (0..n)
                    .map(|i| {
                        let t = (k * (2 * i + 3) + i * 7) % 23;
                        rat(t as i64 - 11, 3 + (k % 4) as i64)
                    })
                    .collect(),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_build() {
        for i in [type1(), simplex3(), cube3(), pyramid()] {
            assert!(i.body.is_full_dim(), "{}", i.name);
        }
        assert!(Polytope::from_vertices(3, &shell(3, 40)).unwrap().is_full_dim());
    }
}
