//! Lifting regions and the unique-lifting decision.

mod mc;
mod union;

use log::warn;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::latfree::is_maximal_lattice_free;
use crate::lattice::AffineLattice;
use crate::limits::Limits;
use crate::ratgeom::{Face, Polytope};
use crate::rational::{Rat, RatMat, RatVec};

pub use mc::{vol_mod_lattice_mc, McEstimate};
pub use union::{fundamental_cells, union_volume, Cell};

/// `conv(F + f) ∩ (z + f - conv(F + f))`.
pub fn spindle(face: &Face<'_>, z: &RatVec, f: &RatVec) -> Result<Polytope> {
    let b = face.owner();
    f.check_dim(b.dim())?;
    if !face.contains(z) {
        return Err(Error::PointNotOnFace);
    }
    let mut pts = face.points();
    pts.push(f.clone());
    let pyramid = Polytope::from_vertices(b.dim(), &pts)?;
    let mirror = pyramid.affine_image(&RatMat::scalar(b.dim(), &-Rat::from_integer(1.into())), &(z + f))?;
    Ok(pyramid.intersect(&mirror)?.expect("z and f lie in both sets"))
}

/// One spindle with the facet and lattice point that generated it.
#[derive(Clone, Debug)]
pub struct Piece {
    pub polytope: Polytope,
    /// Index into `B.facets()`.
    pub facet: usize,
    pub z: RatVec,
    /// Whether `z` lies in the relative interior of its facet.
    pub relint: bool,
}

/// Union of spindles anchored at `f`.
#[derive(Clone, Debug)]
pub struct RegionUnion {
    dim: usize,
    anchor: RatVec,
    pieces: Vec<Piece>,
}

impl RegionUnion {
    /// Untagged region; piece `i` gets facet index `i` and the anchor as its point.
    pub fn from_polytopes(dim: usize, anchor: RatVec, polys: Vec<Polytope>) -> Result<Self> {
        anchor.check_dim(dim)?;
        for p in &polys {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.dim() });
            }
        }
        let pieces = polys
            .into_iter()
            .enumerate()
            .map(|(facet, polytope)| Piece { polytope, facet, z: anchor.clone(), relint: false })
            .collect();
        Ok(RegionUnion { dim, anchor, pieces })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn anchor(&self) -> &RatVec {
        &self.anchor
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn full_dim_pieces(&self) -> impl Iterator<Item = &Piece> {
        self.pieces.iter().filter(|p| p.polytope.is_full_dim())
    }

    /// Sub-union of the pieces generated by one facet.
    pub fn restrict_to_facet(&self, facet: usize) -> RegionUnion {
        RegionUnion {
            dim: self.dim,
            anchor: self.anchor.clone(),
            pieces: self.pieces.iter().filter(|p| p.facet == facet).cloned().collect(),
        }
    }

    pub fn contains(&self, x: &RatVec) -> bool {
        self.pieces.iter().any(|p| p.polytope.contains(x))
    }
}

fn check_anchor(b: &Polytope, f: &RatVec) -> Result<()> {
    f.check_dim(b.dim())?;
    if !b.contains(f) {
        return Err(Error::AnchorOutside);
    }
    Ok(())
}

/// All spindles of one facet, over every lattice point of the facet.
pub fn facet_region(
    b: &Polytope,
    facet: usize,
    f: &RatVec,
    lattice: &AffineLattice,
    limits: &Limits,
) -> Result<RegionUnion> {
    check_anchor(b, f)?;
    let facets = b.facets();
    let face = facets.get(facet).ok_or_else(|| Error::InvalidParameter(format!("facet index {facet}")))?;
    let mut pieces = Vec::new();
    for z in lattice.points_in(&face.to_polytope()?, limits.point_guard)? {
        let polytope = spindle(face, &z, f)?;
        let relint = face.relint_contains(&z);
        pieces.push(Piece { polytope, facet, z, relint });
    }
    Ok(RegionUnion { dim: b.dim(), anchor: f.clone(), pieces })
}

/// `R(B, f)`: the union of all facet regions.
pub fn lifting_region(b: &Polytope, f: &RatVec, lattice: &AffineLattice, limits: &Limits) -> Result<RegionUnion> {
    limits.check_dim(b.dim())?;
    check_anchor(b, f)?;
    let mut pieces = Vec::new();
    for i in 0..b.facets().len() {
        pieces.extend(facet_region(b, i, f, lattice, limits)?.pieces);
    }
    Ok(RegionUnion { dim: b.dim(), anchor: f.clone(), pieces })
}

/// Exact `vol(R / Λ)`.
pub fn vol_mod_lattice_exact(region: &RegionUnion, lattice: &AffineLattice, limits: &Limits) -> Result<Rat> {
    limits.check_dim(region.dim())?;
    let cells = fundamental_cells(region, lattice, limits)?;
    let polys: Vec<Polytope> = cells.into_iter().map(|c| c.polytope).collect();
    Ok(union_volume(&polys) * lattice.det_lattice())
}

/// Outcome of the unique-lifting decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniqueLifting {
    pub unique: bool,
    pub volume: Rat,
    pub f: RatVec,
    pub maximal: bool,
}

/// Decides `R(B, f) + Λ = R^n` by comparing the exact volume with `det Λ`.
pub fn has_unique_lifting(
    b: &Polytope,
    lattice: &AffineLattice,
    f: Option<&RatVec>,
    strict: bool,
    limits: &Limits,
) -> Result<UniqueLifting> {
    limits.check_dim(b.dim())?;
    let maximal = is_maximal_lattice_free(b, lattice, limits.point_guard)?;
    if !maximal {
        if strict {
            return Err(Error::NotMaximal);
        }
        warn!("body is not maximal lattice-free; the volume test is not a certificate");
    }
    let f = f.cloned().unwrap_or_else(|| b.vertex_centroid());
    let region = lifting_region(b, &f, lattice, limits)?;
    let volume = vol_mod_lattice_exact(&region, lattice, limits)?;
    Ok(UniqueLifting { unique: volume == lattice.det_lattice(), volume, f, maximal })
}

/// Exact volumes modulo the lattice for a list of anchors.
pub fn affinity_probe(b: &Polytope, lattice: &AffineLattice, anchors: &[RatVec], limits: &Limits) -> Result<Vec<Rat>> {
    anchors.iter().map(|f| vol_mod_lattice_exact(&lifting_region(b, f, lattice, limits)?, lattice, limits)).collect()
}

/// Per-facet volumes against the volume of the whole region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetDecomposition {
    pub total: Rat,
    pub per_facet: Vec<Rat>,
}

impl FacetDecomposition {
    pub fn holds(&self) -> bool {
        self.per_facet.iter().sum::<Rat>() == self.total
    }
}

pub fn facet_decomposition_check(
    b: &Polytope,
    lattice: &AffineLattice,
    f: &RatVec,
    limits: &Limits,
) -> Result<FacetDecomposition> {
    let region = lifting_region(b, f, lattice, limits)?;
    let total = vol_mod_lattice_exact(&region, lattice, limits)?;
    let per_facet = (0..b.facets().len())
        .map(|i| vol_mod_lattice_exact(&region.restrict_to_facet(i), lattice, limits))
        .collect::<Result<_>>()?;
    Ok(FacetDecomposition { total, per_facet })
}

/// Plain region volume when each facet has exactly one relint lattice point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FastPath {
    pub applicable: bool,
    pub volume: Option<Rat>,
}

pub fn one_point_fast_path(b: &Polytope, lattice: &AffineLattice, f: &RatVec, limits: &Limits) -> Result<FastPath> {
    check_anchor(b, f)?;
    for facet in b.facets() {
        if lattice.relint_points(&facet, limits.point_guard)?.len() != 1 {
            return Ok(FastPath { applicable: false, volume: None });
        }
    }
    let region = lifting_region(b, f, lattice, limits)?;
    let polys: Vec<Polytope> = region.full_dim_pieces().map(|p| p.polytope.clone()).collect();
    let volume = if polys.is_empty() { Rat::zero() } else { union_volume(&polys) };
    Ok(FastPath { applicable: true, volume: Some(volume) })
}
