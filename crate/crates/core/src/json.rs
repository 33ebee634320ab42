//! JSON documents for polytopes and lattices. Rationals are `"p/q"` strings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::AffineLattice;
use crate::ratgeom::{HalfSpace, Polytope};
use crate::rational::{fmt_rat, parse_rat, Rat, RatMat, RatVec};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HalfSpaceDoc {
    pub a: Vec<String>,
    pub b: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolytopeDoc {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub halfspaces: Option<Vec<HalfSpaceDoc>>,
}

/// Lattice generated by the vectors in `basis`, translated by `shift`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LatticeDoc {
    pub basis: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<Vec<String>>,
}

/// A body together with an optional lattice, as emitted by `construct cube`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BundleDoc {
    pub body: PolytopeDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeDoc>,
}

fn parse_vec(v: &[String]) -> Result<RatVec> {
    v.iter().map(|s| parse_rat(s)).collect::<Result<Vec<Rat>>>().map(RatVec::new)
}

pub fn vec_doc(v: &RatVec) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

impl PolytopeDoc {
    pub fn from_polytope(p: &Polytope) -> Self {
        PolytopeDoc {
            dim: p.dim(),
            vertices: Some(p.vertices().iter().map(vec_doc).collect()),
            halfspaces: Some(
                p.halfspaces()
                    .iter()
                    .map(|h| HalfSpaceDoc { a: vec_doc(h.normal()), b: fmt_rat(h.offset()) })
                    .collect(),
            ),
        }
    }

    /// Builds the polytope; when both descriptions are given they must agree.
    pub fn to_polytope(&self) -> Result<Polytope> {
        let from_v = match &self.vertices {
            Some(vs) => {
                let pts = vs.iter().map(|v| parse_vec(v)).collect::<Result<Vec<_>>>()?;
                Some(Polytope::from_vertices(self.dim, &pts)?)
            }
            None => None,
        };
        let from_h = match &self.halfspaces {
            Some(hs) => {
                let hs = hs
                    .iter()
                    .map(|h| HalfSpace::new(parse_vec(&h.a)?, parse_rat(&h.b)?))
                    .collect::<Result<Vec<_>>>()?;
                Some(Polytope::from_halfspaces(self.dim, &hs)?)
            }
            None => None,
        };
        match (from_v, from_h) {
            (Some(v), Some(h)) => {
                if !v.same_set(&h) {
                    return Err(Error::Parse("vertices and halfspaces describe different sets".into()));
                }
                Ok(v)
            }
            (Some(p), None) | (None, Some(p)) => Ok(p),
            (None, None) => Err(Error::Parse("polytope needs vertices or halfspaces".into())),
        }
    }
}

impl LatticeDoc {
    pub fn from_lattice(l: &AffineLattice) -> Self {
        let cols: Vec<Vec<String>> = (0..l.dim()).map(|j| vec_doc(&l.basis().col(j))).collect();
        LatticeDoc { basis: cols, shift: Some(vec_doc(l.shift())) }
    }

    pub fn to_lattice(&self) -> Result<AffineLattice> {
        let cols = self.basis.iter().map(|c| parse_vec(c)).collect::<Result<Vec<_>>>()?;
        let n = cols.len();
        let basis = RatMat::from_cols(&cols)?;
        if basis.nrows() != n {
            return Err(Error::DimensionMismatch { expected: n, got: basis.nrows() });
        }
        let shift = match &self.shift {
            Some(s) => parse_vec(s)?,
            None => RatVec::zeros(n),
        };
        AffineLattice::new(basis, shift)
    }
}

/// Reads either a bare polytope document or a `{"body", "lattice"}` bundle.
pub fn parse_body(text: &str) -> Result<(Polytope, Option<AffineLattice>)> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if value.get("body").is_some() {
        let doc: BundleDoc = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        let lattice = doc.lattice.as_ref().map(LatticeDoc::to_lattice).transpose()?;
        return Ok((doc.body.to_polytope()?, lattice));
    }
    let doc: PolytopeDoc = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    Ok((doc.to_polytope()?, None))
}

pub fn parse_lattice(text: &str) -> Result<AffineLattice> {
    let doc: LatticeDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_lattice()
}
