//! 9j coefficients: 6j-expansion oracles, seven triple-sum formulas,
//! sixfold Chu-Vandermonde expansions, the symmetry orbit, and stretched /
//! doubly stretched closed forms.

mod expand;
mod sixfold;
mod stretched;
mod symmetry;
mod triple;

pub use expand::{ninej_expand, ninej_expand_in, ExpansionVariant};
pub use sixfold::{ninej_sixfold, ninej_sixfold_in, SixfoldFormula};
pub use stretched::{
    ninej_doubly_stretched, ninej_doubly_stretched_in, ninej_stretched,
    ninej_stretched_cg_expansion, ninej_stretched_cg_expansion_in, ninej_stretched_in,
    StretchedFormula,
};
pub use symmetry::{ninej_symmetry_orbit, OrbitElement, PhaseData};
pub use triple::{ninej_triple, ninej_triple_in, TripleSumFormula};

use crate::error::{Error, Result};
use crate::spin::{triangle_ok_t, Spin};

/// Labels of a 9j symbol in the 3x3 array layout
/// {a b e; c d f; h k g}, stored as twice-values.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct NinejLabels {
    grid: [i64; 9],
}

impl NinejLabels {
    /// Grid in row-major order [a, b, e, c, d, f, h, k, g].
    pub fn from_twice(grid: [i64; 9]) -> Result<Self> {
        if grid.iter().any(|&t| t < 0) {
            return Err(Error::MalformedInput("negative twice-spin".into()));
        }
        Ok(NinejLabels { grid })
    }

    pub fn from_spins(grid: [Spin; 9]) -> Self {
        NinejLabels {
            grid: grid.map(|s| s.twice()),
        }
    }

    pub fn grid(&self) -> [i64; 9] {
        self.grid
    }

    pub fn a(&self) -> i64 {
        self.grid[0]
    }
    pub fn b(&self) -> i64 {
        self.grid[1]
    }
    pub fn e(&self) -> i64 {
        self.grid[2]
    }
    pub fn c(&self) -> i64 {
        self.grid[3]
    }
    pub fn d(&self) -> i64 {
        self.grid[4]
    }
    pub fn f(&self) -> i64 {
        self.grid[5]
    }
    pub fn h(&self) -> i64 {
        self.grid[6]
    }
    pub fn k(&self) -> i64 {
        self.grid[7]
    }
    pub fn g(&self) -> i64 {
        self.grid[8]
    }

    /// The six triangles (abe), (cdf), (hkg), (ach), (bdk), (efg).
    pub fn triangles(&self) -> [(i64, i64, i64); 6] {
        let [a, b, e, c, d, f, h, k, g] = self.grid;
        [
            (a, b, e),
            (c, d, f),
            (h, k, g),
            (a, c, h),
            (b, d, k),
            (e, f, g),
        ]
    }

    pub fn is_triangular(&self) -> bool {
        self.triangles()
            .iter()
            .all(|&(x, y, z)| triangle_ok_t(x, y, z))
    }
}

/// Enumerates all triangular 9j grids with every twice-spin <= max_twice.
pub fn ninej_grids(max_twice: i64) -> Vec<NinejLabels> {
    let mut out = Vec::new();
    let m = max_twice;
    for a in 0..=m {
        for b in 0..=m {
            for e in crate::spin::couple_range(a, b, m) {
                for c in 0..=m {
                    for d in 0..=m {
                        for f in crate::spin::couple_range(c, d, m) {
                            for h in crate::spin::couple_range(a, c, m) {
                                for k in crate::spin::couple_range(b, d, m) {
                                    for g in crate::spin::couple_range(e, f, m) {
                                        if triangle_ok_t(h, k, g) {
                                            out.push(NinejLabels {
                                                grid: [a, b, e, c, d, f, h, k, g],
                                            });
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Z_(xyz) = -x(x+1) - y(y+1) - z(z+1) in quarter units of the q exponent.
pub(crate) fn z_phase_quarters(tx: i64, ty: i64, tz: i64) -> i64 {
    -(tx * (tx + 2) + ty * (ty + 2) + tz * (tz + 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_enumeration_small() {
        // bound 0: only the all-zero grid
        let g = ninej_grids(0);
        assert_eq!(g.len(), 1);
        assert!(g[0].is_triangular());
        // bound 1 sanity: every grid triangular, and symmetric counts
        let g = ninej_grids(1);
        assert!(g.iter().all(|l| l.is_triangular()));
        assert!(g.len() > 1);
    }
}
