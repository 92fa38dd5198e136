//! Half-integer angular momenta stored as twice-values, and triangle predicates.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An angular momentum j stored as the integer 2j.
///
/// All label arithmetic in this crate happens on twice-values so triangle
/// combinations like a+b-c stay in integer arithmetic.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Spin {
    twice: i64,
}

impl Spin {
    pub fn from_twice(twice: i64) -> Result<Self> {
        if twice < 0 {
            return Err(Error::MalformedInput(format!(
                "negative twice-spin {twice}"
            )));
        }
        Ok(Spin { twice })
    }

    /// 2j as an integer.
    pub fn twice(self) -> i64 {
        self.twice
    }

    pub fn is_integral(self) -> bool {
        self.twice % 2 == 0
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Parses "2", "3/2" or "1/2"-style spin strings (denominator 1 or 2).
impl FromStr for Spin {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let twice = parse_twice(s)?;
        Spin::from_twice(twice)
    }
}

/// Parses a (possibly negative) half-integer string into its twice-value.
pub fn parse_twice(s: &str) -> Result<i64> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: i64 = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad fraction {s:?}")))?;
        let d: i64 = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad fraction {s:?}")))?;
        match d {
            1 => Ok(2 * n),
            2 => Ok(n),
            _ => Err(Error::Parse(format!(
                "spin denominator must be 1 or 2 in {s:?}"
            ))),
        }
    } else {
        let n: i64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad spin {s:?}")))?;
        Ok(2 * n)
    }
}

/// A validated triangle of three spins.
#[derive(Clone, Copy, Debug)]
pub struct Triangle {
    pub a: Spin,
    pub b: Spin,
    pub c: Spin,
}

impl Triangle {
    pub fn new(a: Spin, b: Spin, c: Spin) -> Result<Self> {
        if triangle_ok(a, b, c) {
            Ok(Triangle { a, b, c })
        } else {
            Err(Error::TriangleViolation(a.twice(), b.twice(), c.twice()))
        }
    }
}

/// |a-b| <= c <= a+b with a+b+c integral.
pub fn triangle_ok(a: Spin, b: Spin, c: Spin) -> bool {
    triangle_ok_t(a.twice(), b.twice(), c.twice())
}

/// Triangle predicate on raw twice-values.
pub fn triangle_ok_t(ta: i64, tb: i64, tc: i64) -> bool {
    ta >= 0
        && tb >= 0
        && tc >= 0
        && (ta - tb).abs() <= tc
        && tc <= ta + tb
        && (ta + tb + tc) % 2 == 0
}

/// All twice-value triples up to the bound that satisfy the triangle rule.
pub fn triangles_up_to(max_twice: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for a in 0..=max_twice {
        for b in 0..=max_twice {
            let mut c = (a - b).abs();
            while c <= (a + b).min(max_twice) {
                out.push((a, b, c));
                c += 2;
            }
        }
    }
    out
}

/// Twice-values c with |a-b| <= c <= min(a+b, max_twice), stepping by 2.
pub fn couple_range(ta: i64, tb: i64, max_twice: i64) -> impl Iterator<Item = i64> {
    let lo = (ta - tb).abs();
    let hi = (ta + tb).min(max_twice);
    (lo..=hi).step_by(2).filter(move |_| lo <= hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: i64) -> Spin {
        Spin::from_twice(t).unwrap()
    }

    #[test]
    fn triangle_basic() {
        // (1/2, 1/2, 1) couples
        assert!(triangle_ok(s(1), s(1), s(2)));
        // (1/2, 1/2, 1/2) fails on parity
        assert!(!triangle_ok(s(1), s(1), s(1)));
        // (1, 3, 1) fails the inequality
        assert!(!triangle_ok(s(2), s(6), s(2)));
    }

    #[test]
    fn spin_parse_display() {
        assert_eq!("3/2".parse::<Spin>().unwrap().twice(), 3);
        assert_eq!("2".parse::<Spin>().unwrap().twice(), 4);
        assert_eq!(s(3).to_string(), "3/2");
        assert_eq!(s(4).to_string(), "2");
        assert!("‑1".parse::<Spin>().is_err());
        assert!(Spin::from_twice(-1).is_err());
        assert_eq!(parse_twice("-3/2").unwrap(), -3);
    }

    #[test]
    fn triangle_enumeration_counts() {
        // brute-force cross check
        let list = triangles_up_to(4);
        let mut n = 0;
        for a in 0..=4i64 {
            for b in 0..=4i64 {
                for c in 0..=4i64 {
                    if triangle_ok_t(a, b, c) {
                        n += 1;
                    }
                }
            }
        }
        assert_eq!(list.len(), n);
    }
}
