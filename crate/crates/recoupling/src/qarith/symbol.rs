//! Symbol values: an exact coefficient times the square root of a
//! q-factorial monomial. Every symbol formula in the crate returns one.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::factmono::FactMonomial;
use super::interval::{fourth_root_interval, sqrt_interval, RInterval};
use super::laurent::QLaurent;
use super::qnum::q_factorial;
use super::qrat::QRat;

/// V = coeff * sqrt(radicand). Values are immutable; V = 0 iff coeff is the
/// zero QRat, in which case the radicand is reset to the canonical empty one.
#[derive(Clone, Debug)]
pub struct SymbolValue {
    coeff: QRat,
    radicand: FactMonomial,
}

impl SymbolValue {
    pub fn zero() -> Self {
        SymbolValue {
            coeff: QRat::zero(),
            radicand: FactMonomial::one(),
        }
    }

    pub fn one() -> Self {
        SymbolValue {
            coeff: QRat::one(),
            radicand: FactMonomial::one(),
        }
    }

    /// Builds coeff * (-1)^phase_exp * sqrt(radicand); the sign is folded
    /// into the coefficient at construction.
    pub fn new(coeff: QRat, radicand: FactMonomial, phase_exp: i64) -> Self {
        if coeff.is_zero() {
            return SymbolValue::zero();
        }
        let coeff = if phase_exp.rem_euclid(2) == 1 {
            coeff.neg()
        } else {
            coeff
        };
        SymbolValue { coeff, radicand }
    }

    pub fn from_qrat(coeff: QRat) -> Self {
        Self::new(coeff, FactMonomial::one(), 0)
    }

    pub fn coeff(&self) -> &QRat {
        &self.coeff
    }

    pub fn radicand(&self) -> &FactMonomial {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Product; perfect even powers in the radicand migrate into the
    /// coefficient.
    pub fn mul(&self, other: &SymbolValue) -> SymbolValue {
        if self.is_zero() || other.is_zero() {
            return SymbolValue::zero();
        }
        let mut coeff = self.coeff.mul(&other.coeff);
        let rad = self.radicand.mul(&other.radicand);
        let (even, rest) = rad.split_square();
        for (n, e) in even.powers() {
            let f = q_factorial(n).expect("radicand arguments are nonnegative");
            let fq = QRat::from_poly(f);
            let p = if e >= 0 { fq } else { fq.recip() };
            for _ in 0..e.unsigned_abs() {
                coeff = coeff.mul(&p);
            }
        }
        SymbolValue {
            coeff,
            radicand: rest,
        }
    }

    pub fn neg(&self) -> SymbolValue {
        SymbolValue {
            coeff: self.coeff.neg(),
            radicand: self.radicand.clone(),
        }
    }

    pub fn recip(&self) -> SymbolValue {
        assert!(!self.is_zero(), "reciprocal of zero symbol value");
        // 1/(c sqrt(r)) = (1/(c r)) sqrt(r)
        let r = expand_radicand(&self.radicand);
        SymbolValue {
            coeff: self.coeff.mul(&r).recip(),
            radicand: self.radicand.clone(),
        }
    }

    pub fn div(&self, other: &SymbolValue) -> SymbolValue {
        self.mul(&other.recip())
    }

    pub fn scale(&self, c: &BigRational) -> SymbolValue {
        if c.is_zero() {
            return SymbolValue::zero();
        }
        SymbolValue {
            coeff: self.coeff.scale(c),
            radicand: self.radicand.clone(),
        }
    }

    pub fn mul_qrat(&self, c: &QRat) -> SymbolValue {
        if c.is_zero() {
            return SymbolValue::zero();
        }
        SymbolValue {
            coeff: self.coeff.mul(c),
            radicand: self.radicand.clone(),
        }
    }

    /// The substitution q -> q^(-1); radicands are built from q-factorials
    /// and are invariant, so only the coefficient changes.
    pub fn invert_q(&self) -> SymbolValue {
        SymbolValue {
            coeff: self.coeff.invert_q(),
            radicand: self.radicand.clone(),
        }
    }

    /// Sum; representable exactly only when the two radicands differ by a
    /// perfect square, which holds for every sum formed by the formulas in
    /// this crate. Returns None otherwise.
    pub fn add(&self, other: &SymbolValue) -> Option<SymbolValue> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        // factor out the common radicand part
        let mut common = FactMonomial::one();
        {
            let a = &self.radicand;
            let b = &other.radicand;
            for (n, ea) in a.powers() {
                let eb = b.powers().find(|&(m, _)| m == n).map(|(_, e)| e).unwrap_or(0);
                let m = ea.min(eb);
                common.push(n, m);
            }
        }
        let left = self.radicand.mul(&common.inv());
        let right = other.radicand.mul(&common.inv());
        // each leftover must be a perfect square as a polynomial
        let ls = sqrt_of_monomial(&left)?;
        let rs = sqrt_of_monomial(&right)?;
        let coeff = self.coeff.mul(&ls).add(&other.coeff.mul(&rs));
        Some(SymbolValue::new(coeff, common, 0))
    }

    /// Equality as functions of q: squares agree (after expanding radicands)
    /// and the signs agree.
    pub fn equal(&self, other: &SymbolValue) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        if other.is_zero() {
            return false;
        }
        // strip the common radicand, then compare coeff^2 * leftover
        let mut diff = FactMonomial::one();
        for (n, e) in self.radicand.powers() {
            diff.push(n, e);
        }
        for (n, e) in other.radicand.powers() {
            diff.push(n, -e);
        }
        let mut pos = FactMonomial::one();
        let mut neg = FactMonomial::one();
        for (n, e) in diff.powers() {
            if e > 0 {
                pos.push(n, e);
            } else {
                neg.push(n, -e);
            }
        }
        let lhs = self
            .coeff
            .mul(&self.coeff)
            .mul(&expand_radicand(&pos));
        let rhs = other
            .coeff
            .mul(&other.coeff)
            .mul(&expand_radicand(&neg));
        if lhs != rhs {
            return false;
        }
        self.coeff.sign() == other.coeff.sign()
    }

    /// Interval enclosure of the value at rational q > 0 with width at most
    /// 2^-bits (after refinement).
    pub fn eval_interval(&self, q0: &BigRational, bits: u32) -> RInterval {
        assert!(q0.is_positive(), "q must be positive");
        if self.is_zero() {
            return RInterval::point(BigRational::from(num_bigint::BigInt::from(0)));
        }
        let rad = self.radicand.eval_q(q0);
        let mut prec = bits + 16;
        loop {
            let t = fourth_root_interval(q0, prec);
            let num = eval_poly_interval(self.coeff.num(), &t);
            let den = eval_poly_interval(self.coeff.den(), &t);
            if !den.contains_zero() {
                let sq = sqrt_interval(&rad, prec);
                let v = num.mul(&den.recip()).mul(&sq);
                let limit = BigRational::new(
                    num_bigint::BigInt::from(1),
                    num_bigint::BigInt::from(1) << bits.min(4_000_000),
                );
                if v.width() < limit {
                    return v;
                }
            }
            prec *= 2;
            assert!(prec <= 1 << 20, "interval refinement failed to converge");
        }
    }

    /// Numeric value at rational q > 0 with |error| <= 10^(-digits).
    pub fn eval(&self, q0: &BigRational, digits: u32) -> f64 {
        let s = self.eval_decimal(q0, digits);
        s.parse().unwrap_or(f64::NAN)
    }

    /// Decimal string with the requested number of fractional digits,
    /// correct to within one unit in the last place.
    pub fn eval_decimal(&self, q0: &BigRational, digits: u32) -> String {
        // 10^-digits needs about 3.33 bits per digit
        let bits = (digits as f64 * 3.33).ceil() as u32 + 8;
        let iv = self.eval_interval(q0, bits);
        let mid = iv.mid();
        format_decimal(&mid, digits)
    }
}

/// Renders a rational with a fixed number of fractional digits (rounded).
pub fn format_decimal(x: &BigRational, digits: u32) -> String {
    use num_bigint::BigInt;
    use num_traits::Zero;
    let neg = x.is_negative();
    let ax = x.abs();
    let scale = BigInt::from(10).pow(digits);
    let scaled = &ax * BigRational::from(scale.clone());
    // round half up
    let rounded = (scaled
        + BigRational::new(BigInt::from(1), BigInt::from(2)))
    .floor()
    .to_integer();
    let whole = &rounded / &scale;
    let frac = &rounded % &scale;
    let mut s = if digits == 0 {
        format!("{whole}")
    } else {
        format!("{whole}.{frac:0>width$}", width = digits as usize)
    };
    if neg && !(rounded.is_zero()) {
        s.insert(0, '-');
    }
    s
}

/// Expands a factorial monomial to an exact rational function of q.
pub fn expand_radicand(m: &FactMonomial) -> QRat {
    let mut num = QLaurent::one();
    let mut den = QLaurent::one();
    for (n, e) in m.powers() {
        let f = q_factorial(n).expect("radicand arguments are nonnegative");
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                num = num.mul(&f);
            } else {
                den = den.mul(&f);
            }
        }
    }
    QRat::new(num, den)
}

/// sqrt of a factorial monomial as a QRat, when the expansion is a perfect
/// square (numerator and denominator separately).
fn sqrt_of_monomial(m: &FactMonomial) -> Option<QRat> {
    let expanded = expand_radicand(m);
    let num = expanded.num().sqrt()?;
    let den = expanded.den().sqrt()?;
    Some(QRat::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::laurent::QExponent;
    use num_bigint::BigInt;
    use num_traits::One;

    fn half() -> BigRational {
        BigRational::new(BigInt::from(1), BigInt::from(2))
    }

    #[test]
    fn mul_identity_and_zero() {
        let a = SymbolValue::new(
            QRat::from_poly("q + 1".parse().unwrap()),
            FactMonomial::single(3, 1),
            0,
        );
        let same = a.mul(&SymbolValue::one());
        assert!(a.equal(&same));
        assert!(a.mul(&SymbolValue::zero()).is_zero());
    }

    #[test]
    fn square_extraction() {
        // sqrt([2]!) * sqrt([2]!) = [2]! with empty radicand
        let s = SymbolValue::new(QRat::one(), FactMonomial::single(2, 1), 0);
        let p = s.mul(&s);
        assert!(p.radicand().is_one());
        let expect = QRat::from_poly(q_factorial(2).unwrap());
        assert_eq!(p.coeff(), &expect);
    }

    #[test]
    fn equality_with_square_migration() {
        let a = SymbolValue::from_qrat(QRat::from_poly(q_factorial(2).unwrap()));
        let b = SymbolValue::new(QRat::one(), FactMonomial::single(2, 2), 0);
        assert!(a.equal(&b));
        assert!(!a.equal(&b.neg()));
        assert!(a.equal(&a));
    }

    #[test]
    fn phase_fold() {
        let v = SymbolValue::new(QRat::one(), FactMonomial::one(), 3);
        assert_eq!(v.coeff().sign(), -1);
    }

    #[test]
    fn eval_sqrt_two_over_two() {
        // (1/2) sqrt([2]!) at q=1 = sqrt(2)/2
        let v = SymbolValue::new(
            QRat::from_rational(half()),
            FactMonomial::single(2, 1),
            0,
        );
        let x = v.eval(&BigRational::one(), 8);
        assert!((x - 0.70710678).abs() < 1e-7);
        let s = v.eval_decimal(&BigRational::one(), 8);
        assert_eq!(s, "0.70710678");
    }

    #[test]
    fn eval_with_quarter_phase() {
        // q^(1/4) at q = 81/16 is 3/2 exactly
        let v = SymbolValue::from_qrat(QRat::from_poly(QLaurent::monomial(
            QExponent::from_quarters(1),
            BigRational::one(),
        )));
        let q0 = BigRational::new(BigInt::from(81), BigInt::from(16));
        let x = v.eval(&q0, 10);
        assert!((x - 1.5).abs() < 1e-9);
    }

    #[test]
    fn add_with_matching_radicals() {
        // 2 sqrt([2]!) + 3 sqrt([2]!) = 5 sqrt([2]!)
        let a = SymbolValue::new(
            QRat::from_rational(BigRational::from(BigInt::from(2))),
            FactMonomial::single(2, 1),
            0,
        );
        let b = a.scale(&BigRational::new(BigInt::from(3), BigInt::from(2)));
        let sum = a.add(&b).unwrap();
        let expect = a.scale(&BigRational::new(BigInt::from(5), BigInt::from(2)));
        assert!(sum.equal(&expect));
    }

    #[test]
    fn recip_roundtrip() {
        let a = SymbolValue::new(
            QRat::from_poly("q + 2".parse().unwrap()),
            FactMonomial::single(2, 1),
            0,
        );
        let p = a.mul(&a.recip());
        assert!(p.equal(&SymbolValue::one()));
    }
}

fn eval_poly_interval(p: &QLaurent, t: &RInterval) -> RInterval {
    let mut acc = RInterval::point(BigRational::from(num_bigint::BigInt::from(0)));
    for (e, c) in p.terms() {
        let pw = t.pow_positive_base(e.quarters());
        acc = acc.add(&pw.scale(c));
    }
    acc
}
