//! Ratios of Laurent polynomials in q^(1/4).

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Signed;

use super::laurent::QLaurent;
use super::zpoly::cross_eq;
use crate::error::{Error, Result};

/// A rational function of q^(1/4) held as numerator/denominator. The stored
/// pair is kept cheaply normalized (denominator nonzero, lowest exponent
/// zero, monic); `canonical` additionally divides out the polynomial gcd.
/// Equality is decided by cross multiplication.
#[derive(Clone, Debug)]
pub struct QRat {
    num: QLaurent,
    den: QLaurent,
}

impl QRat {
    pub fn zero() -> Self {
        QRat {
            num: QLaurent::zero(),
            den: QLaurent::one(),
        }
    }

    pub fn one() -> Self {
        QRat {
            num: QLaurent::one(),
            den: QLaurent::one(),
        }
    }

    /// Builds num/den with cheap normalization: the denominator's Laurent
    /// unit and leading coefficient move into the numerator.
    pub fn new(num: QLaurent, den: QLaurent) -> Self {
        assert!(!den.is_zero(), "QRat denominator must be nonzero");
        if num.is_zero() {
            return QRat::zero();
        }
        let lo = den.min_quarters().unwrap();
        let lead = den
            .terms()
            .last()
            .map(|(_, c)| c.clone())
            .unwrap();
        let den = den
            .shift(super::laurent::QExponent::from_quarters(-lo))
            .scale(&lead.recip());
        let num = num
            .shift(super::laurent::QExponent::from_quarters(-lo))
            .scale(&lead.recip());
        QRat { num, den }
    }

    pub fn from_poly(p: QLaurent) -> Self {
        QRat {
            num: p,
            den: QLaurent::one(),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_poly(QLaurent::from_rational(r))
    }

    pub fn num(&self) -> &QLaurent {
        &self.num
    }

    pub fn den(&self) -> &QLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &QRat) -> QRat {
        QRat::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn sub(&self, o: &QRat) -> QRat {
        QRat::new(
            self.num.mul(&o.den).sub(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> QRat {
        QRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &QRat) -> QRat {
        QRat::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &QRat) -> QRat {
        assert!(!o.is_zero(), "division by zero QRat");
        QRat::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn recip(&self) -> QRat {
        assert!(!self.is_zero(), "reciprocal of zero QRat");
        QRat::new(self.den.clone(), self.num.clone())
    }

    pub fn mul_poly(&self, p: &QLaurent) -> QRat {
        QRat::new(self.num.mul(p), self.den.clone())
    }

    pub fn scale(&self, c: &BigRational) -> QRat {
        QRat {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// The substitution q -> q^(-1).
    pub fn invert_q(&self) -> QRat {
        QRat::new(self.num.invert_q(), self.den.invert_q())
    }

    /// Fully reduced form: gcd divided out, denominator monic with lowest
    /// exponent zero. Equality of canonical forms is structural.
    pub fn canonical(&self) -> QRat {
        if self.num.is_zero() {
            return QRat::zero();
        }
        let g = QLaurent::poly_gcd(&self.num, &self.den);
        if g.is_one() {
            return QRat::new(self.num.clone(), self.den.clone());
        }
        let num = self.num.exact_div(&g).expect("gcd divides numerator");
        let den = self.den.exact_div(&g).expect("gcd divides denominator");
        QRat::new(num, den)
    }

    /// Exact value at rational t0 = q^(1/4) > 0; the denominator must not
    /// vanish there.
    pub fn eval_t(&self, t0: &BigRational) -> Option<BigRational> {
        let d = self.den.eval_t(t0);
        if d == BigRational::from(num_bigint::BigInt::from(0)) {
            return None;
        }
        Some(self.num.eval_t(t0) / d)
    }

    /// Sign of the value as a function of q for q slightly away from 1:
    /// evaluated at t = 1 first, then at increasing rational points until
    /// the sign is witnessed. Returns 0 only for the zero function.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        // t = 1, then 3/2, 2, 5/2, ... ; a nonzero rational function has
        // finitely many roots, so this terminates.
        let mut k = 2i64;
        loop {
            let t0 = BigRational::new(num_bigint::BigInt::from(k), num_bigint::BigInt::from(2));
            if let Some(v) = self.eval_t(&t0) {
                if v.is_positive() {
                    return 1;
                }
                if v.is_negative() {
                    return -1;
                }
            }
            k += 1;
            assert!(k < 1000, "sign search failed to terminate");
        }
    }
}

impl PartialEq for QRat {
    fn eq(&self, other: &Self) -> bool {
        cross_eq(&self.num, &self.den, &other.num, &other.den)
    }
}

impl Eq for QRat {}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        if c.den.is_one() {
            write!(f, "{}", c.num)
        } else {
            write!(f, "({})/({})", c.num, c.den)
        }
    }
}

impl FromStr for QRat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        // "(num)/(den)" or a bare polynomial
        if let Some(rest) = s.strip_prefix('(') {
            if let Some(idx) = find_matching(rest) {
                let num_str = &rest[..idx];
                let tail = rest[idx + 1..].trim();
                if let Some(den_part) = tail.strip_prefix('/') {
                    let den_part = den_part.trim();
                    let den_inner = den_part
                        .strip_prefix('(')
                        .and_then(|d| d.strip_suffix(')'))
                        .ok_or_else(|| Error::Parse(format!("bad QRat {s:?}")))?;
                    return Ok(QRat::new(num_str.parse()?, den_inner.parse()?));
                }
            }
        }
        Ok(QRat::from_poly(s.parse()?))
    }
}

fn find_matching(s: &str) -> Option<usize> {
    let mut depth = 1usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_by_cross_multiplication() {
        let a: QRat = "q + q^(-1)".parse().unwrap();
        let b = QRat::new(
            "q^(2) + 1".parse().unwrap(),
            "q".parse().unwrap(),
        );
        assert_eq!(a, b);
        assert_ne!(a, QRat::one());
    }

    #[test]
    fn canonical_reduces() {
        let p: QLaurent = "q^(2) + 2 + q^(-2)".parse().unwrap();
        let r: QLaurent = "q + q^(-1)".parse().unwrap();
        let frac = QRat::new(p.mul(&r), r.clone());
        let c = frac.canonical();
        assert!(c.den().is_one());
        assert_eq!(c, QRat::from_poly(p));
    }

    #[test]
    fn display_round_trip() {
        let b = QRat::new(
            "q^(2) + 1".parse().unwrap(),
            "q^(2) + q".parse().unwrap(),
        );
        let s = b.to_string();
        let back: QRat = s.parse().unwrap();
        assert_eq!(b, back);
    }

    #[test]
    fn sign_detection() {
        let a: QRat = "q + q^(-1)".parse().unwrap();
        assert_eq!(a.sign(), 1);
        assert_eq!(a.neg().sign(), -1);
        assert_eq!(QRat::zero().sign(), 0);
        // vanishes at q=1 but positive just above: q - q^-1... at t=3/2 sign +
        let d: QRat = "q - q^(-1)".parse().unwrap();
        assert_eq!(d.sign(), 1);
    }
}
