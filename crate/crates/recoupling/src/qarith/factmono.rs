//! Monomials in q-factorials: the radicand structure of symbol values.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use super::laurent::rational_pow;

/// prod_n ([n]!)^{e_n} with integer exponents e_n, kept as an exponent map.
/// Entries with n <= 1 are absorbed (they equal 1). As a function of q > 0
/// the represented value is strictly positive, so its square root is
/// well-defined.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FactMonomial {
    powers: BTreeMap<i64, i64>,
}

impl FactMonomial {
    pub fn one() -> Self {
        FactMonomial::default()
    }

    pub fn is_one(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn single(n: i64, e: i64) -> Self {
        let mut out = FactMonomial::default();
        out.push(n, e);
        out
    }

    /// Multiplies in ([n]!)^e.
    pub fn push(&mut self, n: i64, e: i64) {
        assert!(n >= 0, "q-factorial argument must be nonnegative");
        if n <= 1 || e == 0 {
            return;
        }
        let slot = self.powers.entry(n).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.powers.remove(&n);
        }
    }

    pub fn mul(&self, other: &FactMonomial) -> FactMonomial {
        let mut out = self.clone();
        for (&n, &e) in &other.powers {
            out.push(n, e);
        }
        out
    }

    pub fn inv(&self) -> FactMonomial {
        FactMonomial {
            powers: self.powers.iter().map(|(&n, &e)| (n, -e)).collect(),
        }
    }

    pub fn powers(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.powers.iter().map(|(&n, &e)| (n, e))
    }

    /// Splits into (even part halved, leftover with exponents in {0,1}):
    /// self = (even)^2 * leftover.
    pub fn split_square(&self) -> (FactMonomial, FactMonomial) {
        let mut even = FactMonomial::default();
        let mut rest = FactMonomial::default();
        for (&n, &e) in &self.powers {
            let half = e.div_euclid(2);
            let rem = e.rem_euclid(2);
            even.push(n, half);
            rest.push(n, rem);
        }
        (even, rest)
    }

    /// Exact positive rational value at a rational q > 0 (integer exponents
    /// only: factorials contain no fractional q powers).
    pub fn eval_q(&self, q: &BigRational) -> BigRational {
        let mut out = BigRational::one();
        for (&n, &e) in &self.powers {
            let mut f = BigRational::one();
            for k in 2..=n {
                // [k] at q
                let mut v = BigRational::from(num_bigint::BigInt::from(0));
                for j in 0..k {
                    v += rational_pow(q, k - 1 - 2 * j);
                }
                f *= v;
            }
            let mut p = BigRational::one();
            for _ in 0..e.unsigned_abs() {
                p *= &f;
            }
            if e < 0 {
                p = p.recip();
            }
            out *= p;
        }
        out
    }
}

impl fmt::Display for FactMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.powers.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&n, &e) in &self.powers {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "[{n}]!")?;
            } else {
                write!(f, "[{n}]!^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn absorbs_trivial_entries() {
        let mut m = FactMonomial::one();
        m.push(0, 3);
        m.push(1, -2);
        assert!(m.is_one());
        m.push(2, 1);
        assert_eq!(m.to_string(), "[2]!");
    }

    #[test]
    fn split_square_negative_exponents() {
        // [3]!^-3 = ([3]!^-2)^... = ([3]!^-2)^2 would overshoot; euclid gives
        // [3]!^-3 = ([3]!^-2) * [3]!^1 under the square
        let m = FactMonomial::single(3, -3);
        let (even, rest) = m.split_square();
        assert_eq!(even, FactMonomial::single(3, -2));
        assert_eq!(rest, FactMonomial::single(3, 1));
        assert_eq!(even.mul(&even).mul(&rest), m);
    }

    #[test]
    fn eval_positive() {
        let m = FactMonomial::single(2, 1).mul(&FactMonomial::single(3, -1));
        // [2]!/[3]! at q=1 -> 2/6
        let v = m.eval_q(&BigRational::one());
        assert_eq!(v, BigRational::new(BigInt::from(1), BigInt::from(3)));
        use num_traits::Signed;
        let q32 = BigRational::new(BigInt::from(3), BigInt::from(2));
        assert!(m.eval_q(&q32).is_positive());
    }
}
