//! The 72 signed symmetry images of a 9j symbol: even permutations of rows
//! or columns and transposition leave the value fixed; odd permutations pick
//! up a braiding phase and a q inversion.

use super::{z_phase_quarters, NinejLabels};
use crate::qarith::QExponent;

/// Sign exponent (mod 2) and q-power accompanying a symmetry image.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhaseData {
    pub sign_exp: i64,
    pub q_exp: QExponent,
}

impl PhaseData {
    pub fn trivial() -> Self {
        PhaseData {
            sign_exp: 0,
            q_exp: QExponent::from_quarters(0),
        }
    }
}

/// One element of the symmetry orbit: the original value at q equals
/// (-1)^(phase.sign_exp) * q^(phase.q_exp) times the image's value,
/// evaluated at q^(-1) when `q_inverted` is set.
#[derive(Clone, Copy, Debug)]
pub struct OrbitElement {
    pub labels: NinejLabels,
    pub phase: PhaseData,
    pub q_inverted: bool,
}

const EVEN_PERMS: [[usize; 3]; 3] = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];
const ODD_PERMS: [[usize; 3]; 3] = [[0, 2, 1], [1, 0, 2], [2, 1, 0]];

/// All 72 images: 6 row permutations x 6 column permutations x optional
/// transposition. Images reached through an odd total permutation parity
/// carry the braiding phase A = (-1)^(sum of all nine spins) q^(Z) with Z
/// the summed -x(x+1) exponent over all nine entries, and require q -> 1/q.
pub fn ninej_symmetry_orbit(l: &NinejLabels) -> Vec<OrbitElement> {
    let g = l.grid();
    let cell = |r: usize, c: usize| g[3 * r + c];
    let sum_twice: i64 = g.iter().sum();
    // Z_deh + Z_bcg + Z_afk covers all nine entries
    let z_total = z_phase_quarters(g[4], g[2], g[6])
        + z_phase_quarters(g[1], g[3], g[8])
        + z_phase_quarters(g[0], g[5], g[7]);
    // For triangular labels the braiding sign exponent (the sum of all nine
    // spins) is an integer, so sum_twice is even.
    let odd_phase = PhaseData {
        sign_exp: sum_twice.div_euclid(2).rem_euclid(2),
        q_exp: QExponent::from_quarters(z_total),
    };
    let mut out = Vec::with_capacity(72);
    for (perms_r, odd_r) in [(EVEN_PERMS, false), (ODD_PERMS, true)] {
        for pr in perms_r {
            for (perms_c, odd_c) in [(EVEN_PERMS, false), (ODD_PERMS, true)] {
                for pc in perms_c {
                    for transpose in [false, true] {
                        let mut grid = [0i64; 9];
                        for r in 0..3 {
                            for c in 0..3 {
                                let v = cell(pr[r], pc[c]);
                                if transpose {
                                    grid[3 * c + r] = v;
                                } else {
                                    grid[3 * r + c] = v;
                                }
                            }
                        }
                        let odd = odd_r ^ odd_c;
                        out.push(OrbitElement {
                            labels: NinejLabels::from_twice(grid).unwrap(),
                            phase: if odd { odd_phase } else { PhaseData::trivial() },
                            q_inverted: odd,
                        });
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_shape() {
        let l = NinejLabels::from_twice([2, 2, 2, 2, 2, 2, 2, 2, 2]).unwrap();
        let orbit = ninej_symmetry_orbit(&l);
        assert_eq!(orbit.len(), 72);
        // the identity is in the orbit with trivial phase
        assert!(orbit.iter().any(|e| {
            e.labels == l && !e.q_inverted && e.phase == PhaseData::trivial()
        }));
        // exactly half the images are q-inverted
        assert_eq!(orbit.iter().filter(|e| e.q_inverted).count(), 36);
    }
}
