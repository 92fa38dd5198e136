//! Laurent polynomials in q^(1/4) with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exponent on the lattice (1/4)Z, stored as four times its value.
///
/// Phase exponents produced by the formulas are products of half-integers,
/// so quarter-integers are closed under everything in scope.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct QExponent {
    quarters: i64,
}

impl QExponent {
    pub fn from_quarters(quarters: i64) -> Self {
        QExponent { quarters }
    }

    /// Exponent for an integer power of q.
    pub fn from_int(n: i64) -> Self {
        QExponent { quarters: 4 * n }
    }

    /// Exponent (x/2)*(y/2) built from two twice-values; products of
    /// half-integers land exactly on the quarter lattice.
    pub fn from_twice_product(tx: i64, ty: i64) -> Self {
        QExponent { quarters: tx * ty }
    }

    pub fn quarters(self) -> i64 {
        self.quarters
    }

    pub fn checked_add(self, other: Self) -> Self {
        QExponent {
            quarters: self.quarters + other.quarters,
        }
    }

    pub fn neg(self) -> Self {
        QExponent {
            quarters: -self.quarters,
        }
    }

    pub fn as_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.quarters), BigInt::from(4))
    }
}

impl fmt::Display for QExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.quarters.gcd(&4);
        let num = self.quarters / g;
        let den = 4 / g;
        if den == 1 {
            write!(f, "{num}")
        } else {
            write!(f, "{num}/{den}")
        }
    }
}

/// A Laurent polynomial in q^(1/4): a finite map from quarter-exponents to
/// nonzero exact rational coefficients. All arithmetic is exact.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QLaurent {
    terms: BTreeMap<i64, BigRational>,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(QExponent::from_quarters(0), BigRational::one())
    }

    pub fn monomial(e: QExponent, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e.quarters(), c);
        }
        QLaurent { terms }
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::monomial(QExponent::from_quarters(0), c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from(BigInt::from(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: QExponent) -> BigRational {
        self.terms
            .get(&e.quarters())
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (QExponent, &BigRational)> {
        self.terms
            .iter()
            .map(|(&q, c)| (QExponent::from_quarters(q), c))
    }

    pub fn min_quarters(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_quarters(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn insert_add(&mut self, q: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(q) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (&q, c) in &other.terms {
            out.insert_add(q, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (&q, c) in &other.terms {
            out.insert_add(q, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> QLaurent {
        QLaurent {
            terms: self.terms.iter().map(|(&q, c)| (q, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &QLaurent) -> QLaurent {
        if self.is_zero() || other.is_zero() {
            return QLaurent::zero();
        }
        let mut out = QLaurent::zero();
        for (&qa, ca) in &self.terms {
            for (&qb, cb) in &other.terms {
                out.insert_add(qa + qb, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> QLaurent {
        if c.is_zero() {
            return QLaurent::zero();
        }
        QLaurent {
            terms: self.terms.iter().map(|(&q, v)| (q, v * c)).collect(),
        }
    }

    /// Multiplies by q^e (a shift of all exponents).
    pub fn shift(&self, e: QExponent) -> QLaurent {
        QLaurent {
            terms: self
                .terms
                .iter()
                .map(|(&q, c)| (q + e.quarters(), c.clone()))
                .collect(),
        }
    }

    /// The substitution q -> q^(-1).
    pub fn invert_q(&self) -> QLaurent {
        QLaurent {
            terms: self.terms.iter().map(|(&q, c)| (-q, c.clone())).collect(),
        }
    }

    /// Exact value at a positive rational point t0 = q^(1/4).
    pub fn eval_t(&self, t0: &BigRational) -> BigRational {
        assert!(t0.is_positive(), "evaluation point must be positive");
        let mut acc = BigRational::zero();
        for (&q, c) in &self.terms {
            acc += c * rational_pow(t0, q);
        }
        acc
    }

    /// Dense coefficient view over a stride-normalized exponent range:
    /// (lowest quarter exponent, stride, coefficients).
    fn dense(&self) -> (i64, i64, Vec<BigRational>) {
        if self.is_zero() {
            return (0, 1, Vec::new());
        }
        let lo = self.min_quarters().unwrap();
        let mut step: i64 = 0;
        for &q in self.terms.keys() {
            step = step.gcd(&(q - lo));
        }
        if step == 0 {
            step = 1;
        }
        let hi = self.max_quarters().unwrap();
        let n = ((hi - lo) / step) as usize + 1;
        let mut v = vec![BigRational::zero(); n];
        for (&q, c) in &self.terms {
            v[((q - lo) / step) as usize] = c.clone();
        }
        (lo, step, v)
    }

    fn from_dense(lo: i64, step: i64, v: Vec<BigRational>) -> QLaurent {
        let mut out = QLaurent::zero();
        for (i, c) in v.into_iter().enumerate() {
            if !c.is_zero() {
                out.insert_add(lo + step * (i as i64), c);
            }
        }
        out
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn exact_div(&self, d: &QLaurent) -> Result<QLaurent> {
        if d.is_zero() {
            return Err(Error::InexactDivision);
        }
        if self.is_zero() {
            return Ok(QLaurent::zero());
        }
        // align strides
        let (alo, astep, av) = self.dense();
        let (dlo, dstep, dv) = d.dense();
        let step = astep.gcd(&dstep);
        let expand = |lo: i64, s: i64, v: Vec<BigRational>| -> (i64, Vec<BigRational>) {
            if v.is_empty() {
                return (lo, v);
            }
            let k = (s / step) as usize;
            if k == 1 {
                return (lo, v);
            }
            let mut out = vec![BigRational::zero(); (v.len() - 1) * k + 1];
            for (i, c) in v.into_iter().enumerate() {
                out[i * k] = c;
            }
            (lo, out)
        };
        let (alo, mut num) = expand(alo, astep, av);
        let (dlo, den) = expand(dlo, dstep, dv);
        if num.len() < den.len() {
            return Err(Error::InexactDivision);
        }
        let dn = den.len();
        let dl = den.last().unwrap().clone();
        let qn = num.len() - dn + 1;
        let mut quot = vec![BigRational::zero(); qn];
        for i in (0..qn).rev() {
            let c = &num[i + dn - 1] / &dl;
            if !c.is_zero() {
                for (j, dc) in den.iter().enumerate() {
                    let t = dc * &c;
                    num[i + j] -= t;
                }
            }
            quot[i] = c;
        }
        if num.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(QLaurent::from_dense(alo - dlo, step, quot))
    }

    /// Square root in Q[t, 1/t] if this polynomial is a perfect square.
    pub fn sqrt(&self) -> Option<QLaurent> {
        if self.is_zero() {
            return Some(QLaurent::zero());
        }
        let (lo, step, v) = self.dense();
        if lo % 2 != 0 || v.len() % 2 == 0 {
            return None;
        }
        let m = v.len() / 2;
        let lead = rational_sqrt(v.last().unwrap())?;
        let mut s = vec![BigRational::zero(); m + 1];
        s[m] = lead;
        let two_lead = &s[m] + &s[m];
        for i in (0..m).rev() {
            // coefficient of t^(m+i) in s^2 is 2*s[m]*s[i] + cross terms
            let mut acc = v[m + i].clone();
            for a in (i + 1)..m {
                let b = m + i - a;
                if b > i && b < m {
                    acc -= &s[a] * &s[b];
                }
            }
            s[i] = acc / &two_lead;
        }
        let cand = QLaurent::from_dense(lo / 2, step, s);
        if cand.mul(&cand) == *self {
            Some(cand)
        } else {
            None
        }
    }

    /// Content (gcd of coefficients as a positive rational scale) and the
    /// integer-coefficient polynomial view used by gcd/fast comparisons.
    pub fn int_content_split(&self) -> (BigRational, Vec<(i64, BigInt)>) {
        if self.is_zero() {
            return (BigRational::one(), Vec::new());
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut ints: Vec<(i64, BigInt)> = self
            .terms
            .iter()
            .map(|(&q, c)| (q, c.numer() * (&den_lcm / c.denom())))
            .collect();
        let mut g = BigInt::zero();
        for (_, c) in &ints {
            g = g.gcd(c);
        }
        if g.is_zero() {
            g = BigInt::one();
        }
        for (_, c) in &mut ints {
            *c = &*c / &g;
        }
        (BigRational::new(g, den_lcm), ints)
    }

    /// The gcd of the exponent gaps above the lowest term.
    fn natural_stride(&self) -> i64 {
        let Some(lo) = self.min_quarters() else {
            return 1;
        };
        let mut step: i64 = 0;
        for &q in self.terms.keys() {
            step = step.gcd(&(q - lo));
        }
        if step == 0 {
            1
        } else {
            step
        }
    }

    /// Monic gcd with lowest exponent zero (Laurent units divided out).
    pub fn poly_gcd(a: &QLaurent, b: &QLaurent) -> QLaurent {
        if a.is_zero() {
            return b.normalized_monic();
        }
        if b.is_zero() {
            return a.normalized_monic();
        }
        let step = a.natural_stride().gcd(&b.natural_stride());
        let mut p = a.primitive_int_poly(step);
        let mut q = b.primitive_int_poly(step);
        if p.len() < q.len() {
            std::mem::swap(&mut p, &mut q);
        }
        loop {
            if q.iter().all(|c| c.is_zero()) {
                break;
            }
            let r = pseudo_rem(&p, &q);
            p = q;
            q = primitive(r);
        }
        let out = QLaurent {
            terms: p
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 * step, BigRational::from(c)))
                .collect(),
        };
        out.normalized_monic()
    }

    /// Integer primitive coefficient vector with the lowest exponent at
    /// index 0, densified over the given stride.
    fn primitive_int_poly(&self, step: i64) -> Vec<BigInt> {
        let (_, ints) = self.int_content_split();
        if ints.is_empty() {
            return Vec::new();
        }
        let lo = ints.iter().map(|(q, _)| *q).min().unwrap();
        let hi = ints.iter().map(|(q, _)| *q).max().unwrap();
        let mut v = vec![BigInt::zero(); ((hi - lo) / step) as usize + 1];
        for (q, c) in ints {
            v[((q - lo) / step) as usize] = c;
        }
        v
    }

    /// Divides out the Laurent unit and scales the leading coefficient to 1.
    pub fn normalized_monic(&self) -> QLaurent {
        if self.is_zero() {
            return QLaurent::zero();
        }
        let lo = self.min_quarters().unwrap();
        let lead = self.terms.values().next_back().unwrap().clone();
        QLaurent {
            terms: self
                .terms
                .iter()
                .map(|(&q, c)| (q - lo, c / &lead))
                .collect(),
        }
    }
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
    }
    if g.is_zero() || g.is_one() {
        return v;
    }
    for c in &mut v {
        *c = &*c / &g;
    }
    v
}

fn pseudo_rem(p: &[BigInt], d: &[BigInt]) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = p.to_vec();
    let dn = d.len();
    let dl = d.last().unwrap().clone();
    while r.len() >= dn && !r.iter().all(|c| c.is_zero()) {
        while r.last().map(|c| c.is_zero()).unwrap_or(false) {
            r.pop();
        }
        if r.len() < dn {
            break;
        }
        let shift = r.len() - dn;
        let lead = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c = &*c * &dl;
        }
        for (j, dc) in d.iter().enumerate() {
            let sub = dc * &lead;
            r[shift + j] = &r[shift + j] - sub;
        }
        while r.last().map(|c| c.is_zero()).unwrap_or(false) {
            r.pop();
        }
    }
    r
}

/// t0^q for a quarter exponent q (exact, t0 > 0).
pub fn rational_pow(t0: &BigRational, q: i64) -> BigRational {
    if q == 0 {
        return BigRational::one();
    }
    let e = i32::try_from(q.unsigned_abs()).expect("exponent too large");
    let p = t0.pow(e);
    if q > 0 {
        p
    } else {
        p.recip()
    }
}

/// Exact rational square root, if one exists.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }

    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&q, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let e = QExponent::from_quarters(q);
            if q == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                if q == 4 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^({e})")?;
                }
            } else if q == 4 {
                write!(f, "{mag}*q")?;
            } else {
                write!(f, "{mag}*q^({e})")?;
            }
        }
        Ok(())
    }
}

impl FromStr for QLaurent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = QLaurent::zero();
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        // split into sign-prefixed chunks at top level
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut depth = 0usize;
        let mut seen_any = false;
        for ch in s.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    cur.push(ch);
                }
                ')' => {
                    depth = depth
                        .checked_sub(1)
                        .ok_or_else(|| Error::Parse(format!("unbalanced parens in {s:?}")))?;
                    cur.push(ch);
                }
                '+' | '-' if depth == 0 && seen_any && !cur.trim().is_empty() => {
                    chunks.push((neg, cur.trim().to_string()));
                    cur = String::new();
                    neg = ch == '-';
                }
                '-' if depth == 0 && cur.trim().is_empty() => {
                    neg = !neg;
                }
                '+' if depth == 0 && cur.trim().is_empty() => {}
                _ => {
                    if !ch.is_whitespace() {
                        seen_any = true;
                    }
                    cur.push(ch);
                }
            }
        }
        if !cur.trim().is_empty() {
            chunks.push((neg, cur.trim().to_string()));
        }
        if chunks.is_empty() {
            return Err(Error::Parse(format!("no terms in {s:?}")));
        }
        for (neg, term) in chunks {
            let (coef, quarters) = parse_term(&term)?;
            let c = if neg { -coef } else { coef };
            out.insert_add(quarters, c);
        }
        Ok(out)
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        let d: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer {s:?}")))?;
        Ok(BigRational::from(n))
    }
}

fn parse_term(term: &str) -> Result<(BigRational, i64)> {
    let term = term.trim();
    if let Some((c, q)) = term.split_once('*') {
        let coef = parse_rational(c)?;
        Ok((coef, parse_qpow(q)?))
    } else if term.starts_with('q') {
        Ok((BigRational::one(), parse_qpow(term)?))
    } else {
        Ok((parse_rational(term)?, 0))
    }
}

fn parse_qpow(s: &str) -> Result<i64> {
    let s = s.trim();
    if s == "q" {
        return Ok(4);
    }
    let body = s
        .strip_prefix("q^(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("bad power {s:?}")))?;
    let r = parse_rational(body)?;
    // exponent must be on the quarter lattice
    let scaled = r * BigRational::from(BigInt::from(4));
    if !scaled.denom().is_one() {
        return Err(Error::Parse(format!("exponent off the (1/4)Z lattice: {s:?}")));
    }
    use num_traits::ToPrimitive;
    scaled
        .numer()
        .to_i64()
        .ok_or_else(|| Error::Parse("exponent overflow".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(quarters: i64, num: i64, den: i64) -> QLaurent {
        QLaurent::monomial(
            QExponent::from_quarters(quarters),
            BigRational::new(BigInt::from(num), BigInt::from(den)),
        )
    }

    #[test]
    fn display_spec_shape() {
        let p = q(6, 1, 1).add(&q(0, 2, 1)).add(&q(-2, -1, 1));
        assert_eq!(p.to_string(), "q^(3/2) + 2 - q^(-1/2)");
        let z = QLaurent::zero();
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn parse_round_trip() {
        for s in [
            "q^(3/2) + 2 - q^(-1/2)",
            "0",
            "-5/3",
            "q",
            "3*q^(2) - 1/2*q^(-7/4)",
            "q^(1) + 1",
        ] {
            let p: QLaurent = s.parse().unwrap();
            let new = p.to_string();
            let p2: QLaurent = new.parse().unwrap();
            assert_eq!(p, p2, "{s} -> {new}");
        }
    }

    #[test]
    fn mul_and_exact_div() {
        let a = q(4, 1, 1).add(&q(-4, 1, 1)); // q + q^-1
        let b = q(8, 1, 1).add(&q(0, 1, 1)).add(&q(-8, 1, 1)); // q^2+1+q^-2
        let p = a.mul(&b);
        assert_eq!(p.exact_div(&a).unwrap(), b);
        assert_eq!(p.exact_div(&b).unwrap(), a);
        assert!(p.add(&QLaurent::one()).exact_div(&a).is_err());
    }

    #[test]
    fn gcd_basic() {
        let a = q(4, 1, 1).add(&q(-4, 1, 1));
        let b = q(8, 1, 1).add(&q(0, 1, 1)).add(&q(-8, 1, 1));
        let p = a.mul(&b);
        let g = QLaurent::poly_gcd(&p, &a);
        // gcd is monic with lowest exponent zero: q+1/q -> t^2... normalized
        assert_eq!(g, a.normalized_monic());
    }

    #[test]
    fn sqrt_works() {
        let a = q(4, 1, 1).add(&q(-4, 1, 1)).add(&q(0, 3, 1));
        let sq = a.mul(&a);
        assert_eq!(sq.sqrt().unwrap(), a.neg().neg());
        assert!(sq.add(&QLaurent::one()).sqrt().is_none());
    }

    #[test]
    fn eval_exact() {
        let p = q(4, 1, 1).add(&q(-4, 1, 1)); // q + 1/q at q = t^4
        let t = BigRational::new(BigInt::from(3), BigInt::from(2));
        // q = (3/2)^4 = 81/16, value = 81/16 + 16/81
        let v = p.eval_t(&t);
        assert_eq!(
            v,
            BigRational::new(BigInt::from(81 * 81 + 16 * 16), BigInt::from(81 * 16))
        );
    }
}
