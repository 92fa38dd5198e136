//! q-numbers, q-factorials, q-Pochhammer symbols, and q-binomial coefficients.
//!
//! [x] = (q^x - q^(-x))/(q - q^(-1)), [x]! = [x][x-1]...[1], all expanded as
//! exact Laurent polynomials. These are invariant under q <-> q^(-1) and turn
//! into the usual integers and factorials at q = 1.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::laurent::{QExponent, QLaurent};
use super::zpoly::ZPoly;
use crate::error::{Error, Result};

/// [x] as a Laurent polynomial: sum of q^(x-1-2k) for k = 0..x-1 when x > 0,
/// antisymmetric for x < 0, zero at x = 0.
pub fn q_number(x: i64) -> QLaurent {
    let mut out = QLaurent::zero();
    let n = x.abs();
    for k in 0..n {
        out.insert_add(4 * (n - 1 - 2 * k), BigRational::one());
    }
    if x < 0 {
        out.neg()
    } else {
        out
    }
}

// The factorial memo is the only shared mutable state in the module; it is
// safe for concurrent lookup and grows on demand.
static FACT_MEMO: RwLock<Vec<QLaurent>> = RwLock::new(Vec::new());
static FACT_MEMO_Z: RwLock<Vec<ZPoly>> = RwLock::new(Vec::new());

/// [n]! with [0]! = [1]! = 1. Errors on negative arguments: callers are
/// expected to range-clip, so a negative argument is a programming error.
pub fn q_factorial(n: i64) -> Result<QLaurent> {
    if n < 0 {
        return Err(Error::NegativeFactorial(n));
    }
    let n = n as usize;
    {
        let memo = FACT_MEMO.read().unwrap();
        if let Some(p) = memo.get(n) {
            return Ok(p.clone());
        }
    }
    let mut memo = FACT_MEMO.write().unwrap();
    if memo.is_empty() {
        memo.push(QLaurent::one());
    }
    while memo.len() <= n {
        let k = memo.len() as i64;
        let next = memo.last().unwrap().mul(&q_number(k));
        memo.push(next);
    }
    Ok(memo[n].clone())
}

/// Internal integer-coefficient [n]! used by the summation engines.
/// Falls back to an error only when n is negative.
pub(crate) fn q_factorial_z(n: i64) -> Result<ZPoly> {
    if n < 0 {
        return Err(Error::NegativeFactorial(n));
    }
    let n = n as usize;
    {
        let memo = FACT_MEMO_Z.read().unwrap();
        if let Some(p) = memo.get(n) {
            return Ok(p.clone());
        }
    }
    let mut memo = FACT_MEMO_Z.write().unwrap();
    if memo.is_empty() {
        memo.push(ZPoly::constant(1));
    }
    while memo.len() <= n {
        let k = memo.len() as i64;
        let next = memo
            .last()
            .unwrap()
            .mul(&q_number_z(k))
            .expect("q-factorial coefficients exceeded i128");
        memo.push(next);
    }
    Ok(memo[n].clone())
}

/// Internal integer-coefficient [x].
pub(crate) fn q_number_z(x: i64) -> ZPoly {
    let n = x.abs();
    if n == 0 {
        return ZPoly::zero();
    }
    let sign = if x < 0 { -1i128 } else { 1i128 };
    ZPoly {
        lo: -4 * (n - 1),
        step: 8,
        c: vec![sign; n as usize],
    }
}

/// (alpha|q)_n = prod_{k=0..n-1} [alpha + k]; the empty product is 1.
pub fn q_pochhammer(alpha: i64, n: u64) -> QLaurent {
    let mut out = QLaurent::one();
    for k in 0..n as i64 {
        out = out.mul(&q_number(alpha + k));
        if out.is_zero() {
            break;
        }
    }
    out
}

/// q-binomial coefficient [n]! q^{n(n-r)} / ([r]! [n-r]!) for 0 <= r <= n,
/// zero otherwise. The division is exact and asserted.
pub fn q_binomial(n: u64, r: i64) -> Result<QLaurent> {
    let n = n as i64;
    if r < 0 || r > n {
        return Ok(QLaurent::zero());
    }
    let num = q_factorial(n)?.shift(QExponent::from_int(n * (n - r)));
    let den = q_factorial(r)?.mul(&q_factorial(n - r)?);
    num.exact_div(&den)
}

/// n! as an exact big integer (the q = 1 limit of [n]!).
pub fn int_factorial(n: i64) -> BigInt {
    let mut out = BigInt::one();
    for k in 2..=n {
        out *= k;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn q_number_cases() {
        assert!(q_number(0).is_zero());
        let two: QLaurent = "q + q^(-1)".parse().unwrap();
        assert_eq!(q_number(2), two);
        let m3: QLaurent = "-q^(2) - 1 - q^(-2)".parse().unwrap();
        assert_eq!(q_number(-3), m3);
    }

    #[test]
    fn q_factorial_cases() {
        assert!(q_factorial(0).unwrap().is_one());
        assert!(q_factorial(1).unwrap().is_one());
        let f3: QLaurent = "q^(3) + 2*q + 2*q^(-1) + q^(-3)".parse().unwrap();
        assert_eq!(q_factorial(3).unwrap(), f3);
        assert!(q_factorial(-1).is_err());
        // q = 1 limit is n!
        for n in 0..=30i64 {
            let v = q_factorial(n).unwrap().eval_t(&BigRational::one());
            assert_eq!(v, BigRational::from(int_factorial(n)));
        }
    }

    #[test]
    fn q_factorial_q_inversion_invariant() {
        for n in 0..8 {
            let f = q_factorial(n).unwrap();
            assert_eq!(f.invert_q(), f);
        }
    }

    #[test]
    fn pochhammer_cases() {
        assert!(q_pochhammer(5, 0).is_one());
        assert_eq!(q_pochhammer(1, 3), q_factorial(3).unwrap());
        assert!(q_pochhammer(-2, 5).is_zero());
    }

    #[test]
    fn binomial_cases() {
        // (2,1) -> (q + q^-1) q^2
        let expect: QLaurent = "q^(3) + q".parse().unwrap();
        assert_eq!(q_binomial(2, 1).unwrap(), expect);
        // (n,0) -> q^(n^2)
        for n in 0..6u64 {
            let b = q_binomial(n, 0).unwrap();
            let expect = QLaurent::monomial(
                QExponent::from_int((n * n) as i64),
                BigRational::one(),
            );
            assert_eq!(b, expect);
        }
        assert!(q_binomial(3, 5).unwrap().is_zero());
        assert!(q_binomial(3, -1).unwrap().is_zero());
    }

    #[test]
    fn zpoly_matches_public() {
        for n in 0..10 {
            assert_eq!(q_factorial_z(n).unwrap().to_qlaurent(), q_factorial(n).unwrap());
            assert_eq!(q_number_z(n).to_qlaurent(), q_number(n));
            assert_eq!(q_number_z(-n).to_qlaurent(), q_number(-n));
        }
    }
}
