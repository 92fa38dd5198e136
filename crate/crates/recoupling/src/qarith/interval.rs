//! Exact rational interval arithmetic, used for guaranteed-digit numeric
//! evaluation and for sign determination of algebraic values.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug)]
pub struct RInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RInterval {
    pub fn point(x: BigRational) -> Self {
        RInterval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from(BigInt::from(2))
    }

    pub fn add(&self, o: &Self) -> Self {
        RInterval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn neg(&self) -> Self {
        RInterval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if *c < lo {
                lo = c.clone();
            }
            if *c > hi {
                hi = c.clone();
            }
        }
        RInterval { lo, hi }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_negative() {
            RInterval {
                lo: &self.hi * c,
                hi: &self.lo * c,
            }
        } else {
            RInterval {
                lo: &self.lo * c,
                hi: &self.hi * c,
            }
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Reciprocal; requires the interval to exclude zero.
    pub fn recip(&self) -> Self {
        assert!(!self.contains_zero(), "division by an interval containing zero");
        RInterval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        }
    }

    /// Integer power for a positive interval.
    pub fn pow_positive_base(&self, e: i64) -> Self {
        assert!(self.lo.is_positive());
        if e == 0 {
            return RInterval::point(BigRational::one());
        }
        let p = |x: &BigRational| -> BigRational {
            let k = i32::try_from(e.unsigned_abs()).expect("exponent too large");
            x.pow(k)
        };
        if e > 0 {
            RInterval {
                lo: p(&self.lo),
                hi: p(&self.hi),
            }
        } else {
            RInterval {
                lo: p(&self.hi).recip(),
                hi: p(&self.lo).recip(),
            }
        }
    }

    /// Definite sign of the interval, if determined.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }
}

/// Encloses sqrt(x) for x >= 0 within 2^-bits.
pub fn sqrt_interval(x: &BigRational, bits: u32) -> RInterval {
    assert!(!x.is_negative());
    if x.is_zero() {
        return RInterval::point(BigRational::zero());
    }
    // sqrt(p/q) = sqrt(p*q)/q; scale to fix precision
    let scale = BigInt::one() << bits;
    let p = x.numer();
    let q = x.denom();
    let scaled = p * q * (&scale * &scale);
    let root = scaled.sqrt(); // floor
    let den = q * &scale;
    let lo = BigRational::new(root.clone(), den.clone());
    let hi = BigRational::new(root + BigInt::one(), den);
    RInterval { lo, hi }
}

/// Encloses x^(1/4) for x > 0 within roughly 2^-bits.
pub fn fourth_root_interval(x: &BigRational, bits: u32) -> RInterval {
    let s = sqrt_interval(x, bits + 8);
    // sqrt of an interval with positive endpoints
    let lo = sqrt_interval(&s.lo, bits + 4).lo;
    let hi = sqrt_interval(&s.hi, bits + 4).hi;
    RInterval { lo, hi }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sqrt_encloses() {
        let x = rat(2, 1);
        let iv = sqrt_interval(&x, 40);
        assert!(iv.lo.clone() * iv.lo.clone() <= x);
        assert!(iv.hi.clone() * iv.hi.clone() >= x);
        assert!(iv.width() < rat(1, 1 << 30));
    }

    #[test]
    fn fourth_root_encloses() {
        let x = rat(81, 16);
        let iv = fourth_root_interval(&x, 40);
        // exact root 3/2
        let r = rat(3, 2);
        assert!(iv.lo <= r && r <= iv.hi);
        assert!(iv.width() < rat(1, 1 << 20));
    }
}
