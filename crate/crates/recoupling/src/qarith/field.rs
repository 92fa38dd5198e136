//! Exact coefficient fields for scalar evaluation at a fixed rational q > 0.
//!
//! Phases live on the q^(1/4) lattice, so evaluating at rational q lands in
//! Q(q^(1/4)), a number field of degree 1, 2, or 4 over Q depending on which
//! roots of q are rational.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::{fourth_root_interval, RInterval};
use super::laurent::{rational_pow, rational_sqrt};

/// Arithmetic context for values in Q(q^(1/4)) at a fixed rational q > 0.
pub trait FieldCtx: Sync + Send {
    type El: Clone + Send + Sync + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn from_rat(&self, r: &BigRational) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self, a: &Self::El) -> Self::El;
    /// t^quarters where t = q^(1/4).
    fn t_power(&self, quarters: i64) -> Self::El;
    /// Sign under the real embedding t = q^(1/4) > 0.
    fn sign(&self, a: &Self::El) -> i8;
    /// The element as a rational number, when it is one.
    fn as_rational(&self, a: &Self::El) -> Option<BigRational>;
    /// Exact square root when the element is a rational perfect square.
    fn sqrt_rational(&self, a: &Self::El) -> Option<Self::El> {
        let r = self.as_rational(a)?;
        rational_sqrt(&r).map(|s| self.from_rat(&s))
    }
    fn render(&self, a: &Self::El) -> String;
}

/// Degree-1 case: q^(1/4) itself is rational (this includes q = 1).
#[derive(Clone, Debug)]
pub struct RationalCtx {
    pub t: BigRational,
}

impl RationalCtx {
    pub fn new(t: BigRational) -> Self {
        assert!(t.is_positive());
        RationalCtx { t }
    }

    pub fn q_one() -> Self {
        RationalCtx::new(BigRational::one())
    }
}

impl FieldCtx for RationalCtx {
    type El = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_rat(&self, r: &BigRational) -> BigRational {
        r.clone()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn t_power(&self, quarters: i64) -> BigRational {
        rational_pow(&self.t, quarters)
    }
    fn sign(&self, a: &BigRational) -> i8 {
        if a.is_zero() {
            0
        } else if a.is_positive() {
            1
        } else {
            -1
        }
    }
    fn as_rational(&self, a: &BigRational) -> Option<BigRational> {
        Some(a.clone())
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

/// Degree-2 or degree-4 extension Q[t]/(m(t)) with m = t^2 - sqrt(q) or
/// m = t^4 - q, holding exact coordinates in the power basis of t.
#[derive(Clone, Debug)]
pub struct ExtCtx {
    /// Field degree: 2 or 4.
    pub deg: usize,
    /// t^deg reduces to this rational (sqrt(q) for deg 2, q for deg 4).
    pub top: BigRational,
    /// q itself.
    pub q: BigRational,
}

pub type ExtEl = Vec<BigRational>; // length = deg, coordinates in 1, t, ...

impl ExtCtx {
    /// Builds the minimal context for q^(1/4) over Q for a positive q that is
    /// not a rational fourth power; use RationalCtx otherwise.
    pub fn for_q(q: BigRational) -> Self {
        assert!(q.is_positive());
        if let Some(r) = rational_sqrt(&q) {
            // q = r^2, t^2 = r, with r not a perfect square (else degree 1)
            ExtCtx {
                deg: 2,
                top: r,
                q,
            }
        } else {
            ExtCtx {
                deg: 4,
                top: q.clone(),
                q,
            }
        }
    }

    fn el(&self, coords: Vec<BigRational>) -> ExtEl {
        debug_assert_eq!(coords.len(), self.deg);
        coords
    }

    /// Enclose the real value of the element within 2^-bits.
    fn enclose(&self, a: &ExtEl, bits: u32) -> RInterval {
        let t = match self.deg {
            2 => {
                // t = sqrt(top)
                super::interval::sqrt_interval(&self.top, bits + 8)
            }
            _ => fourth_root_interval(&self.q, bits + 8),
        };
        let mut acc = RInterval::point(BigRational::zero());
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = t.pow_positive_base(i as i64);
            acc = acc.add(&p.scale(c));
        }
        acc
    }
}

impl FieldCtx for ExtCtx {
    type El = ExtEl;

    fn zero(&self) -> ExtEl {
        vec![BigRational::zero(); self.deg]
    }
    fn one(&self) -> ExtEl {
        let mut v = self.zero();
        v[0] = BigRational::one();
        v
    }
    fn from_rat(&self, r: &BigRational) -> ExtEl {
        let mut v = self.zero();
        v[0] = r.clone();
        v
    }
    fn is_zero(&self, a: &ExtEl) -> bool {
        a.iter().all(|c| c.is_zero())
    }
    fn add(&self, a: &ExtEl, b: &ExtEl) -> ExtEl {
        self.el(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }
    fn sub(&self, a: &ExtEl, b: &ExtEl) -> ExtEl {
        self.el(a.iter().zip(b).map(|(x, y)| x - y).collect())
    }
    fn mul(&self, a: &ExtEl, b: &ExtEl) -> ExtEl {
        let d = self.deg;
        let mut wide = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                wide[i + j] += x * y;
            }
        }
        // reduce t^d -> top
        for i in (d..wide.len()).rev() {
            if !wide[i].is_zero() {
                let add = &wide[i] * &self.top;
                wide[i - d] += add;
                wide[i] = BigRational::zero();
            }
        }
        wide.truncate(d);
        wide
    }
    fn neg(&self, a: &ExtEl) -> ExtEl {
        self.el(a.iter().map(|x| -x).collect())
    }
    fn inv(&self, a: &ExtEl) -> ExtEl {
        assert!(!self.is_zero(a), "inverse of zero");
        // solve M x = e0 where M is the multiplication-by-a matrix
        let d = self.deg;
        let mut m = vec![vec![BigRational::zero(); d]; d];
        for j in 0..d {
            // column j = a * t^j
            let mut basis = self.zero();
            basis[j] = BigRational::one();
            let col = self.mul(a, &basis);
            for i in 0..d {
                m[i][j] = col[i].clone();
            }
        }
        let mut rhs = self.zero();
        rhs[0] = BigRational::one();
        // gaussian elimination
        for col in 0..d {
            let piv = (col..d)
                .find(|&r| !m[r][col].is_zero())
                .expect("multiplication matrix is singular in a field");
            m.swap(col, piv);
            rhs.swap(col, piv);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x = &*x / &p;
            }
            rhs[col] = &rhs[col] / &p;
            for r in 0..d {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for cidx in 0..d {
                        let sub = &m[col][cidx] * &f;
                        m[r][cidx] -= sub;
                    }
                    let sub = &rhs[col] * &f;
                    rhs[r] -= sub;
                }
            }
        }
        rhs
    }
    fn t_power(&self, quarters: i64) -> ExtEl {
        // The generator is t = q^(1/4) in both degrees: t^2 = sqrt(q) when
        // that is rational, else t^4 = q. One basis power is one quarter.
        let d = self.deg as i64;
        let m = quarters.div_euclid(d);
        let s = quarters.rem_euclid(d);
        let mut v = self.zero();
        v[s as usize] = rational_pow(&self.top, m);
        v
    }
    fn sign(&self, a: &ExtEl) -> i8 {
        if self.is_zero(a) {
            return 0;
        }
        let mut bits = 32;
        loop {
            let iv = self.enclose(a, bits);
            if let Some(s) = iv.sign() {
                if s != 0 {
                    return s;
                }
            }
            if !iv.contains_zero() {
                return if iv.lo.is_positive() { 1 } else { -1 };
            }
            bits *= 2;
            assert!(bits <= 1 << 16, "sign refinement failed to converge");
        }
    }
    fn as_rational(&self, a: &ExtEl) -> Option<BigRational> {
        if a[1..].iter().all(|c| c.is_zero()) {
            Some(a[0].clone())
        } else {
            None
        }
    }
    fn render(&self, a: &ExtEl) -> String {
        let mut parts = Vec::new();
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i == 0 {
                parts.push(c.to_string());
            } else {
                let e = super::laurent::QExponent::from_quarters(i as i64);
                parts.push(format!("{c}*q^({e})"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// A positive rational q as an exact fourth-power decomposition, when one
/// exists: returns r with r^4 = q.
pub fn rational_fourth_root(q: &BigRational) -> Option<BigRational> {
    let s = rational_sqrt(q)?;
    rational_sqrt(&s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn quartic_field_ops() {
        // q = 2: degree 4
        let f = ExtCtx::for_q(rat(2, 1));
        assert_eq!(f.deg, 4);
        let t = f.t_power(1);
        let t4 = f.mul(&f.mul(&t, &t), &f.mul(&t, &t));
        assert_eq!(f.as_rational(&t4).unwrap(), rat(2, 1));
        let inv = f.inv(&t);
        assert_eq!(f.as_rational(&f.mul(&t, &inv)).unwrap(), rat(1, 1));
        assert_eq!(f.sign(&t), 1);
        assert_eq!(f.sign(&f.neg(&t)), -1);
        // t^-3 via t_power
        let p = f.t_power(-3);
        let q = f.mul(&p, &f.t_power(3));
        assert_eq!(f.as_rational(&q).unwrap(), rat(1, 1));
    }

    #[test]
    fn quadratic_field_when_square() {
        // q = 9/4: sqrt(q) = 3/2, q^(1/4) irrational: degree 2
        let f = ExtCtx::for_q(rat(9, 4));
        assert_eq!(f.deg, 2);
        let t2 = f.t_power(2); // q^(1/2) = 3/2
        assert_eq!(f.as_rational(&t2).unwrap(), rat(3, 2));
        let t = f.t_power(1);
        let sq = f.mul(&t, &t);
        assert_eq!(f.as_rational(&sq).unwrap(), rat(3, 2));
        // t^-1 * t = 1
        let prod = f.mul(&f.t_power(-1), &t);
        assert_eq!(f.as_rational(&prod).unwrap(), rat(1, 1));
        assert_eq!(f.sign(&t), 1);
    }

    #[test]
    fn fourth_power_detection() {
        assert_eq!(rational_fourth_root(&rat(81, 16)).unwrap(), rat(3, 2));
        assert!(rational_fourth_root(&rat(2, 1)).is_none());
    }
}
