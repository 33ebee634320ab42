//! Exact geometry of lattice-free polytopes and the unique-lifting property.

pub mod construct;
pub mod error;
pub mod json;
pub mod latfree;
pub mod lattice;
pub mod lifting;
pub mod limits;
pub mod ratgeom;
pub mod rational;

pub use construct::{
    classify_coproduct_facets, coproduct, coproduct_scaled, crosspolytope_family, cube_even, pyramid_construct,
    simplex_family, FacetCensus, FacetCounts,
};
pub use error::{Error, Result};
pub use latfree::{
    emit_cut, factor_recession, is_lattice_free, is_maximal_lattice_free, Cut, CutInstance, Factored, GaugeModel,
    GmiPair,
};
pub use lattice::AffineLattice;
pub use lifting::{
    affinity_probe, facet_decomposition_check, facet_region, has_unique_lifting, lifting_region, one_point_fast_path,
    spindle, vol_mod_lattice_exact, vol_mod_lattice_mc, FacetDecomposition, FastPath, McEstimate, Piece, RegionUnion,
    UniqueLifting,
};
pub use limits::Limits;
pub use ratgeom::{hausdorff_distance, hausdorff_sq, Face, HalfSpace, Polytope};
pub use rational::{Rat, RatMat, RatVec};
