use crate::error::{Error, Result};

/// Runtime guards for the exponential parts of the pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest ambient dimension accepted by the lifting machinery.
    pub dim_cap: usize,
    /// Largest integer box scanned by lattice point enumeration.
    pub point_guard: u64,
    /// Largest number of shifted pieces fed to inclusion-exclusion.
    pub piece_guard: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { dim_cap: 4, point_guard: 1_000_000, piece_guard: 400 }
    }
}

impl Limits {
    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if dim > self.dim_cap {
            return Err(Error::DimensionCapExceeded { dim, cap: self.dim_cap });
        }
        Ok(())
    }
}
