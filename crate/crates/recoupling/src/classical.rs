//! Classical (q = 1) oracles: Clebsch-Gordan coefficients in the
//! Condon-Shortley convention via the van der Waerden single sum, the Racah
//! single sum for 6j, and the brute-force contraction of CG coefficients
//! for 9j. These are independent computation routes used by the
//! verification suites; none of the q-formula code paths feed into them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::qarith::int_factorial;

/// An exact value coeff * sqrt(rad) with rational coeff and nonnegative
/// rational radicand.
#[derive(Clone, Debug)]
pub struct RadVal {
    pub coeff: BigRational,
    pub rad: BigRational,
}

impl RadVal {
    pub fn zero() -> Self {
        RadVal {
            coeff: BigRational::zero(),
            rad: BigRational::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn mul(&self, o: &RadVal) -> RadVal {
        if self.is_zero() || o.is_zero() {
            return RadVal::zero();
        }
        RadVal {
            coeff: &self.coeff * &o.coeff,
            rad: &self.rad * &o.rad,
        }
    }

    /// Sum; requires the radicand ratio to be a perfect rational square
    /// (which holds for the contractions performed here).
    pub fn add(&self, o: &RadVal) -> RadVal {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let ratio = &o.rad / &self.rad;
        let s = crate::qarith::laurent::rational_sqrt(&ratio)
            .expect("radicand ratio must be a perfect square in oracle sums");
        RadVal {
            coeff: &self.coeff + &(&o.coeff * &s),
            rad: self.rad.clone(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> RadVal {
        RadVal {
            coeff: &self.coeff * c,
            rad: self.rad.clone(),
        }
    }

    /// Equality as real numbers.
    pub fn equal(&self, o: &RadVal) -> bool {
        if self.is_zero() || o.is_zero() {
            return self.is_zero() && o.is_zero();
        }
        let sq_l = &self.coeff * &self.coeff * &self.rad;
        let sq_r = &o.coeff * &o.coeff * &o.rad;
        sq_l == sq_r && self.coeff.is_positive() == o.coeff.is_positive()
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let c = self.coeff.to_f64().unwrap_or(f64::NAN);
        let r = self.rad.to_f64().unwrap_or(f64::NAN);
        c * r.sqrt()
    }
}

fn fact(n: i64) -> BigRational {
    BigRational::from(int_factorial(n))
}

/// Half of a twice-value, asserting integrality.
fn ha(t: i64) -> i64 {
    assert!(t % 2 == 0, "expected an even twice-value, got {t}");
    t / 2
}

/// Classical Clebsch-Gordan coefficient <j1 m1 j2 m2 | j m> on twice-valued
/// arguments, Condon-Shortley convention, via the van der Waerden sum.
pub fn cg_q1(tj1: i64, tm1: i64, tj2: i64, tm2: i64, tj: i64, tm: i64) -> RadVal {
    if tm1 + tm2 != tm
        || tm1.abs() > tj1
        || tm2.abs() > tj2
        || tm.abs() > tj
        || (tj1 + tm1) % 2 != 0
        || (tj2 + tm2) % 2 != 0
        || (tj + tm) % 2 != 0
        || !crate::spin::triangle_ok_t(tj1, tj2, tj)
    {
        return RadVal::zero();
    }
    let rad = BigRational::from(BigInt::from(tj + 1))
        * fact(ha(tj1 + tj2 - tj))
        * fact(ha(tj1 - tj2 + tj))
        * fact(ha(-tj1 + tj2 + tj))
        / fact(ha(tj1 + tj2 + tj) + 1)
        * fact(ha(tj1 + tm1))
        * fact(ha(tj1 - tm1))
        * fact(ha(tj2 + tm2))
        * fact(ha(tj2 - tm2))
        * fact(ha(tj + tm))
        * fact(ha(tj - tm));
    let mut sum = BigRational::zero();
    let k_hi = ha(tj1 + tj2 - tj).min(ha(tj1 - tm1)).min(ha(tj2 + tm2));
    for k in 0..=k_hi.max(-1) {
        let a1 = ha(tj1 + tj2 - tj) - k;
        let a2 = ha(tj1 - tm1) - k;
        let a3 = ha(tj2 + tm2) - k;
        let a4 = ha(tj - tj2 + tm1) + k;
        let a5 = ha(tj - tj1 - tm2) + k;
        if a1 < 0 || a2 < 0 || a3 < 0 || a4 < 0 || a5 < 0 {
            continue;
        }
        let term = (fact(k) * fact(a1) * fact(a2) * fact(a3) * fact(a4) * fact(a5)).recip();
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    RadVal { coeff: sum, rad }
}

fn delta(ta: i64, tb: i64, tc: i64) -> BigRational {
    fact(ha(ta + tb - tc)) * fact(ha(ta - tb + tc)) * fact(ha(-ta + tb + tc))
        / fact(ha(ta + tb + tc) + 1)
}

/// Classical 6j coefficient {j1 j2 j3; j4 j5 j6} on twice-values, via the
/// Racah single sum.
pub fn sixj_q1(tj: [i64; 6]) -> RadVal {
    let [j1, j2, j3, j4, j5, j6] = tj;
    let triads = [
        (j1, j2, j3),
        (j1, j5, j6),
        (j4, j2, j6),
        (j4, j5, j3),
    ];
    for &(a, b, c) in &triads {
        if !crate::spin::triangle_ok_t(a, b, c) {
            return RadVal::zero();
        }
    }
    let rad: BigRational = triads
        .iter()
        .map(|&(a, b, c)| delta(a, b, c))
        .product();
    let t1 = ha(j1 + j2 + j3);
    let t2 = ha(j1 + j5 + j6);
    let t3 = ha(j4 + j2 + j6);
    let t4 = ha(j4 + j5 + j3);
    let b1 = ha(j1 + j2 + j4 + j5);
    let b2 = ha(j2 + j3 + j5 + j6);
    let b3 = ha(j3 + j1 + j6 + j4);
    let lo = t1.max(t2).max(t3).max(t4);
    let hi = b1.min(b2).min(b3);
    let mut sum = BigRational::zero();
    for z in lo..=hi {
        let term = fact(z + 1)
            / (fact(z - t1)
                * fact(z - t2)
                * fact(z - t3)
                * fact(z - t4)
                * fact(b1 - z)
                * fact(b2 - z)
                * fact(b3 - z));
        if z % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    RadVal { coeff: sum, rad }
}

/// Classical 9j coefficient by brute-force contraction of six CG
/// coefficients over the magnetic quantum numbers (the defining recoupling
/// overlap divided by the dimension square roots).
pub fn ninej_q1_from_cg(grid: [i64; 9]) -> RadVal {
    let [a, b, e, c, d, f, h, k, g] = grid;
    for &(x, y, z) in &[
        (a, b, e),
        (c, d, f),
        (h, k, g),
        (a, c, h),
        (b, d, k),
        (e, f, g),
    ] {
        if !crate::spin::triangle_ok_t(x, y, z) {
            return RadVal::zero();
        }
    }
    // overlap at the top magnetic component mu = g
    let mut total = RadVal::zero();
    let mut alpha = -a;
    while alpha <= a {
        let mut beta = -b;
        while beta <= b {
            let eps = alpha + beta;
            if eps.abs() <= e {
                let mut gamma = -c;
                while gamma <= c {
                    let delta_m = g - alpha - beta - gamma;
                    if delta_m.abs() <= d {
                        let phi = gamma + delta_m;
                        let eta = alpha + gamma;
                        let kappa = beta + delta_m;
                        if phi.abs() <= f && eta.abs() <= h && kappa.abs() <= k {
                            let term = cg_q1(a, alpha, b, beta, e, eps)
                                .mul(&cg_q1(c, gamma, d, delta_m, f, phi))
                                .mul(&cg_q1(e, eps, f, phi, g, g))
                                .mul(&cg_q1(a, alpha, c, gamma, h, eta))
                                .mul(&cg_q1(b, beta, d, delta_m, k, kappa))
                                .mul(&cg_q1(h, eta, k, kappa, g, g));
                            total = total.add(&term);
                        }
                    }
                    gamma += 2;
                }
            }
            beta += 2;
        }
        alpha += 2;
    }
    // divide by sqrt((2e+1)(2f+1)(2h+1)(2k+1))
    let dims = BigRational::from(BigInt::from((e + 1) * (f + 1) * (h + 1) * (k + 1)));
    RadVal {
        coeff: total.coeff,
        rad: total.rad / dims,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cg_known_values() {
        // <1/2 1/2 1/2 -1/2 | 1 0> = 1/sqrt(2)
        let v = cg_q1(1, 1, 1, -1, 2, 0);
        assert!(v.equal(&RadVal {
            coeff: rat(1, 2),
            rad: rat(2, 1)
        }));
        // <1/2 1/2 1/2 -1/2 | 0 0> = 1/sqrt(2); swapped = -1/sqrt(2)
        let v = cg_q1(1, -1, 1, 1, 0, 0);
        assert!(v.equal(&RadVal {
            coeff: rat(-1, 2),
            rad: rat(2, 1)
        }));
        // stretched top: <j1 j1 j2 j2 | j1+j2 j1+j2> = 1
        let v = cg_q1(3, 3, 4, 4, 7, 7);
        assert!(v.equal(&RadVal {
            coeff: rat(1, 1),
            rad: rat(1, 1)
        }));
    }

    #[test]
    fn cg_orthonormality_row() {
        // sum over m1 (with m2 = m - m1) of CG^2 = 1 for (1,1) -> 2 at m = 0
        let mut sum = BigRational::zero();
        for m1 in [-2i64, 0, 2] {
            let v = cg_q1(2, m1, 2, -m1, 4, 0);
            sum += &v.coeff * &v.coeff * &v.rad;
        }
        assert_eq!(sum, BigRational::one());
    }

    #[test]
    fn sixj_known_values() {
        // {1 1 1; 1 1 1} = 1/6
        let v = sixj_q1([2, 2, 2, 2, 2, 2]);
        assert!(v.equal(&RadVal {
            coeff: rat(1, 6),
            rad: rat(1, 1)
        }));
        // {1 2 3; 3 2 1} = sqrt(14)/35
        let v = sixj_q1([2, 4, 6, 6, 4, 2]);
        assert!(v.equal(&RadVal {
            coeff: rat(1, 35),
            rad: rat(14, 1)
        }));
        // {3 3 3; 3 3 3} = -1/14
        let v = sixj_q1([6, 6, 6, 6, 6, 6]);
        assert!(v.equal(&RadVal {
            coeff: rat(-1, 14),
            rad: rat(1, 1)
        }));
    }

    #[test]
    fn ninej_small_value() {
        // all spins 1/2 except centre... use {1/2 1/2 1; 1/2 1/2 1; 1 1 0}
        // and check against the 6j reduction known classically:
        // {a b e; c d f; h k 0} = delta_{e f} delta_{h k}
        //   (-1)^(b+c+e+h) / sqrt((2e+1)(2h+1)) {a b e; d c h}
        let v = ninej_q1_from_cg([1, 1, 2, 1, 1, 2, 2, 2, 0]);
        let sj = sixj_q1([1, 1, 2, 1, 1, 2]);
        // phase (-1)^(b+c+e+h) = (-1)^(1/2+1/2+1+1) = -1; sqrt((3)(3)) = 3
        let expect = RadVal {
            coeff: -sj.coeff / BigRational::from(BigInt::from(3)),
            rad: sj.rad,
        };
        assert!(v.equal(&expect));
    }
}
