//! Dense integer Laurent polynomials used on the hot summation paths.
//!
//! Exponents live on a uniform lattice lo + i*step (in quarter units of the
//! q exponent). Products of q-factorials at the grid sizes exercised by the
//! verification suites fit in i128; any overflow escalates to BigInt.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::{QExponent, QLaurent};

/// Dense Laurent polynomial with i128 coefficients; all ops are checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPoly {
    pub lo: i64,
    pub step: i64,
    pub c: Vec<i128>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly {
            lo: 0,
            step: 8,
            c: Vec::new(),
        }
    }

    pub fn constant(v: i128) -> Self {
        if v == 0 {
            return Self::zero();
        }
        ZPoly {
            lo: 0,
            step: 8,
            c: vec![v],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn shift(&mut self, quarters: i64) {
        self.lo += quarters;
    }

    /// Checked product; None on i128 overflow.
    pub fn mul(&self, other: &ZPoly) -> Option<ZPoly> {
        if self.is_zero() || other.is_zero() {
            return Some(ZPoly::zero());
        }
        let (a, b) = align(self, other);
        let mut c = vec![0i128; a.c.len() + b.c.len() - 1];
        for (i, &x) in a.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.c.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let p = x.checked_mul(y)?;
                c[i + j] = c[i + j].checked_add(p)?;
            }
        }
        Some(ZPoly {
            lo: a.lo + b.lo,
            step: a.step,
            c,
        })
    }

    pub fn to_big(&self) -> BigPoly {
        BigPoly {
            lo: self.lo,
            step: self.step,
            c: self.c.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn to_qlaurent(&self) -> QLaurent {
        let mut out = QLaurent::zero();
        for (i, &x) in self.c.iter().enumerate() {
            if x != 0 {
                out.insert_add(self.lo + (i as i64) * self.step, BigRational::from(BigInt::from(x)));
            }
        }
        out
    }
}

fn rebase_step(p: &ZPoly, step: i64) -> ZPoly {
    if p.is_zero() || p.step == step {
        return p.clone();
    }
    let k = (p.step / step) as usize;
    let mut c = vec![0i128; (p.c.len() - 1) * k + 1];
    for (i, &x) in p.c.iter().enumerate() {
        c[i * k] = x;
    }
    ZPoly { lo: p.lo, step, c }
}

fn align(a: &ZPoly, b: &ZPoly) -> (ZPoly, ZPoly) {
    let mut step = a.step.gcd(&b.step);
    // offsets must lie on a common lattice for index arithmetic in add;
    // for mul only the steps matter, but a shared stride keeps it simple.
    let diff = (a.lo - b.lo).abs();
    if diff != 0 {
        step = step.gcd(&diff);
    }
    (rebase_step(a, step), rebase_step(b, step))
}

/// Dense Laurent polynomial with BigInt coefficients (the accumulator side).
#[derive(Clone, Debug, Default)]
pub struct BigPoly {
    pub lo: i64,
    pub step: i64,
    pub c: Vec<BigInt>,
}

impl BigPoly {
    pub fn zero() -> Self {
        BigPoly {
            lo: 0,
            step: 8,
            c: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &BigPoly) -> BigPoly {
        if self.is_zero() || other.is_zero() {
            return BigPoly::zero();
        }
        let (a, b) = align_big(self, other);
        let mut c = vec![BigInt::zero(); a.c.len() + b.c.len() - 1];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                c[i + j] += x * y;
            }
        }
        BigPoly {
            lo: a.lo + b.lo,
            step: a.step,
            c,
        }
    }

    /// self += sign * other, rebasing lattices as needed.
    pub fn add_assign_signed(&mut self, other: &BigPoly, negate: bool) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.clone();
            if negate {
                for x in &mut self.c {
                    *x = -&*x;
                }
            }
            return;
        }
        let mut step = self.step.gcd(&other.step);
        let diff = (self.lo - other.lo).abs();
        if diff != 0 {
            step = step.gcd(&diff);
        }
        let a = rebase_big(self, step);
        let b = rebase_big(other, step);
        let lo = a.lo.min(b.lo);
        let hi = (a.lo + (a.c.len() as i64 - 1) * step).max(b.lo + (b.c.len() as i64 - 1) * step);
        let mut c = vec![BigInt::zero(); ((hi - lo) / step) as usize + 1];
        for (i, x) in a.c.iter().enumerate() {
            c[((a.lo - lo) / step) as usize + i] = x.clone();
        }
        for (i, y) in b.c.iter().enumerate() {
            let idx = ((b.lo - lo) / step) as usize + i;
            if negate {
                c[idx] -= y;
            } else {
                c[idx] += y;
            }
        }
        *self = BigPoly { lo, step, c };
    }

    pub fn to_qlaurent(&self) -> QLaurent {
        let mut out = QLaurent::zero();
        for (i, x) in self.c.iter().enumerate() {
            if !x.is_zero() {
                out.insert_add(
                    self.lo + (i as i64) * self.step,
                    BigRational::from(x.clone()),
                );
            }
        }
        out
    }

    pub fn from_qlaurent_int(p: &QLaurent) -> Option<BigPoly> {
        let mut out = BigPoly::zero();
        for (e, c) in p.terms() {
            if !c.denom().is_one() {
                return None;
            }
            let mut t = BigPoly {
                lo: e.quarters(),
                step: 8,
                c: vec![c.numer().clone()],
            };
            std::mem::swap(&mut t, &mut out);
            out.add_assign_signed(&t, false);
        }
        Some(out)
    }
}

fn rebase_big(p: &BigPoly, step: i64) -> BigPoly {
    if p.step == step || p.is_zero() {
        let mut q = p.clone();
        q.step = if p.c.len() <= 1 { step } else { q.step };
        return q;
    }
    let k = (p.step / step) as usize;
    let mut c = vec![BigInt::zero(); (p.c.len() - 1) * k + 1];
    for (i, x) in p.c.iter().enumerate() {
        c[i * k] = x.clone();
    }
    BigPoly { lo: p.lo, step, c }
}

fn align_big(a: &BigPoly, b: &BigPoly) -> (BigPoly, BigPoly) {
    let mut step = a.step.gcd(&b.step);
    let diff = (a.lo - b.lo).abs();
    if diff != 0 {
        step = step.gcd(&diff);
    }
    (rebase_big(a, step), rebase_big(b, step))
}

/// Content-split a QLaurent into (rational scale, integer BigPoly), for fast
/// cross-multiplied comparisons.
pub fn content_split(p: &QLaurent) -> (BigRational, BigPoly) {
    let (content, ints) = p.int_content_split();
    let mut out = BigPoly::zero();
    for (q, c) in ints {
        let t = BigPoly {
            lo: q,
            step: 8,
            c: vec![c],
        };
        out.add_assign_signed(&t, false);
    }
    (content, out)
}

/// a/b == c/d as rational functions, via cross multiplication on integer
/// polynomials. b and d must be nonzero.
pub fn cross_eq(an: &QLaurent, ad: &QLaurent, bn: &QLaurent, bd: &QLaurent) -> bool {
    if an.is_zero() {
        return bn.is_zero();
    }
    if bn.is_zero() {
        return false;
    }
    let (c_an, p_an) = content_split(an);
    let (c_ad, p_ad) = content_split(ad);
    let (c_bn, p_bn) = content_split(bn);
    let (c_bd, p_bd) = content_split(bd);
    // compare (c_an/c_ad) * (p_an/p_ad) with (c_bn/c_bd) * (p_bn/p_bd)
    let left = p_an.mul(&p_bd);
    let right = p_bn.mul(&p_ad);
    let scale_l = c_an * c_bd;
    let scale_r = c_bn * c_ad;
    // left*scale_l == right*scale_r  <=>  left*(sl/sr) == right
    let ratio = scale_l / scale_r;
    // multiply left by ratio exactly: needs right*den == left*num comparisons
    let (rn, rd) = (ratio.numer().clone(), ratio.denom().clone());
    let mut l = left;
    for x in &mut l.c {
        *x = &*x * &rn;
    }
    let mut r = right;
    for x in &mut r.c {
        *x = &*x * &rd;
    }
    let mut diff = l;
    diff.add_assign_signed(&r, true);
    diff.is_zero()
}

/// Extract the sign of a rational number.
pub fn rat_sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_matches_qlaurent() {
        let a = ZPoly {
            lo: -8,
            step: 8,
            c: vec![1, 0, 1],
        }; // q^-2 + q^2... (quarters -8..8 step 8 => exponents -2,0,2 but middle 0)
        let b = ZPoly {
            lo: 0,
            step: 4,
            c: vec![1, 1],
        };
        let p = a.mul(&b).unwrap();
        assert_eq!(p.to_qlaurent(), a.to_qlaurent().mul(&b.to_qlaurent()));
    }

    #[test]
    fn accumulate_mixed_lattice() {
        let mut acc = BigPoly::zero();
        let a = ZPoly {
            lo: 2,
            step: 8,
            c: vec![1, 2],
        };
        let b = ZPoly {
            lo: 0,
            step: 8,
            c: vec![3],
        };
        acc.add_assign_signed(&a.to_big(), false);
        acc.add_assign_signed(&b.to_big(), true);
        let q = acc.to_qlaurent();
        assert_eq!(
            q,
            a.to_qlaurent().sub(&b.to_qlaurent())
        );
    }

    #[test]
    fn cross_eq_basic() {
        let one = QLaurent::one();
        let a: QLaurent = "q + q^(-1)".parse().unwrap();
        let b: QLaurent = "q^(2) + 1".parse().unwrap();
        let c: QLaurent = "q".parse().unwrap();
        // (q+1/q)/1 == (q^2+1)/q
        assert!(cross_eq(&a, &one, &b, &c));
        assert!(!cross_eq(&a, &one, &b, &one));
    }
}
