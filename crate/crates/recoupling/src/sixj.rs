//! Racah (6j) coefficients of u_q(2): the asymmetric triangle coefficient
//! and four single-sum expressions that differ in how the summation-variable
//! factorials are distributed between numerator and denominator.

use crate::error::{Error, Result};
use crate::qarith::engine::{to_symbol_value, Engine, SymEngine, Term, Val};
use crate::qarith::{FactMonomial, QRat, SymbolValue};
use crate::spin::{triangle_ok_t, Spin};

/// Half of an (asserted even) twice-value.
pub fn ha(t: i64) -> i64 {
    assert!(t % 2 == 0, "twice-value {t} is not even; parity violated");
    t / 2
}

/// (-1)^(t/2) as a parity flag, asserting t is even.
pub fn neg_parity(t: i64) -> bool {
    ha(t).rem_euclid(2) == 1
}

/// Multiplies the asymmetric triangle coefficient
/// nabla[xyz] = sqrt([x+y-z]! [x-y+z]! [x+y+z+1]! / [y+z-x]!)
/// (to the power e) into a radicand. Note nabla is not symmetric in its
/// arguments.
pub fn nabla_into(rad: &mut FactMonomial, tx: i64, ty: i64, tz: i64, e: i64) {
    rad.push(ha(tx + ty - tz), e);
    rad.push(ha(tx - ty + tz), e);
    rad.push(ha(tx + ty + tz) + 1, e);
    rad.push(ha(ty + tz - tx), -e);
}

/// The asymmetric triangle coefficient as a symbol value. Errors when the
/// triangle condition fails.
pub fn nabla(a: Spin, b: Spin, c: Spin) -> Result<SymbolValue> {
    let (ta, tb, tc) = (a.twice(), b.twice(), c.twice());
    if !triangle_ok_t(ta, tb, tc) {
        return Err(Error::TriangleViolation(ta, tb, tc));
    }
    let mut rad = FactMonomial::one();
    nabla_into(&mut rad, ta, tb, tc, 1);
    Ok(SymbolValue::new(QRat::one(), rad, 0))
}

/// The four single-sum expressions for the 6j coefficient.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SixjVariant {
    /// Primary form with three z-dependent numerator factorials.
    B,
    /// The same after a summation-parameter shift.
    Bb,
    /// The "primed" form (three z-dependent numerator factorials, shifted
    /// triangle distribution).
    C,
    /// The primed form after a summation-parameter shift.
    Cb,
}

impl SixjVariant {
    pub const ALL: [SixjVariant; 4] = [
        SixjVariant::B,
        SixjVariant::Bb,
        SixjVariant::C,
        SixjVariant::Cb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SixjVariant::B => "b",
            SixjVariant::Bb => "bb",
            SixjVariant::C => "c",
            SixjVariant::Cb => "cb",
        }
    }
}

impl std::str::FromStr for SixjVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "b" => Ok(SixjVariant::B),
            "bb" => Ok(SixjVariant::Bb),
            "c" => Ok(SixjVariant::C),
            "cb" => Ok(SixjVariant::Cb),
            _ => Err(Error::MalformedInput(format!("unknown 6j variant {s:?}"))),
        }
    }
}

/// The four triangles of {a b e; d c f}: (abe), (dce), (acf), (dbf).
pub fn sixj_triangles_ok(t: [i64; 6]) -> bool {
    let [a, b, e, d, c, f] = t;
    triangle_ok_t(a, b, e) && triangle_ok_t(d, c, e) && triangle_ok_t(a, c, f) && triangle_ok_t(d, b, f)
}

/// 6j coefficient on twice-valued labels in printed order
/// [a, b, e, d, c, f] for the array {a b e; d c f}. Non-triangular input
/// yields exact zero. Returns the value and the number of accumulated
/// summand terms.
pub fn sixj_in<E: Engine>(
    eng: &E,
    t: [i64; 6],
    variant: SixjVariant,
    invert_sum: bool,
) -> (Val<E>, u64) {
    if !sixj_triangles_ok(t) {
        return (Val::zero(eng), 0);
    }
    let [a, b, e, d, c, f] = t;
    let mut rad = FactMonomial::one();
    match variant {
        SixjVariant::B | SixjVariant::Bb => {
            nabla_into(&mut rad, a, c, f, 1);
            nabla_into(&mut rad, d, b, f, 1);
            nabla_into(&mut rad, a, b, e, -1);
            nabla_into(&mut rad, d, c, e, -1);
        }
        SixjVariant::C | SixjVariant::Cb => {
            nabla_into(&mut rad, e, a, b, 1);
            nabla_into(&mut rad, f, b, d, 1);
            nabla_into(&mut rad, e, c, d, -1);
            nabla_into(&mut rad, f, a, c, -1);
        }
    }
    let mut acc = eng.acc_new();
    match variant {
        SixjVariant::B => {
            let u = ha(a + c - f);
            let hi = if invert_sum { u } else { u.max(ha(b + d - f)) }.max(0);
            for zz in 0..=hi {
                let z = if invert_sum { u - zz } else { zz };
                eng.acc_add(
                    &mut acc,
                    Term::simple(
                        neg_parity(a + b + c + d + 2 * z),
                        0,
                        &[ha(c + f - a) + z, ha(b + f - d) + z, ha(a + d + e - f) - z],
                        &[
                            z,
                            ha(a + c - f) - z,
                            ha(b + d - f) - z,
                            ha(e + f - a - d) + z,
                            f + z + 1,
                        ],
                    ),
                );
            }
        }
        SixjVariant::Bb => {
            let u = ha(c - d + e);
            let hi = if invert_sum { u } else { u.max(ha(b + e - a)) }.max(0);
            for zz in 0..=hi {
                let z = if invert_sum { u - zz } else { zz };
                eng.acc_add(
                    &mut acc,
                    Term::simple(
                        neg_parity(b + c + e + f + 2 * z),
                        0,
                        &[ha(c + d - e) + z, ha(a + b - e) + z, e - z],
                        &[
                            z,
                            ha(c - d + e) - z,
                            ha(b + e - a) - z,
                            ha(a + d - e - f) + z,
                            ha(a + d - e + f) + z + 1,
                        ],
                    ),
                );
            }
        }
        SixjVariant::C => {
            let u = ha(b + e - a);
            let hi = if invert_sum { u } else { u.max(ha(b + f - d)).max(b) }.max(0);
            for zz in 0..=hi {
                let z = if invert_sum { u - zz } else { zz };
                eng.acc_add(
                    &mut acc,
                    Term::simple(
                        neg_parity(b + c + e + f + 2 * z),
                        0,
                        &[b - z, ha(b + e + f - c) - z, ha(b + c + e + f) - z + 1],
                        &[
                            z,
                            ha(b + e - a) - z,
                            ha(b + f - d) - z,
                            ha(a + b + e) - z + 1,
                            ha(b + d + f) - z + 1,
                        ],
                    ),
                );
            }
        }
        SixjVariant::Cb => {
            let u = ha(b + e - a);
            for zz in 0..=u.max(0) {
                let z = if invert_sum { u - zz } else { zz };
                // sign carries an extra (-1)^(b+c+e+f) relative to the bare
                // (-1)^(b+e-a+z): required for consistency with the C form
                // under the substitution z -> b+e-a-z, and confirmed by the
                // classical oracle (e.g. at {0 0 0; 1/2 1/2 1/2}).
                eng.acc_add(
                    &mut acc,
                    Term::simple(
                        neg_parity(2 * b + 2 * e + c + f - a + 2 * z),
                        0,
                        &[ha(a + b - e) + z, ha(a - c + f) + z, ha(a + c + f) + z + 1],
                        &[
                            z,
                            ha(b + e - a) - z,
                            ha(a - e + f - d) + z,
                            a + z + 1,
                            ha(a + d - e + f) + z + 1,
                        ],
                    ),
                );
            }
        }
    }
    let (coeff, count) = eng.acc_finish(acc);
    (Val::new(eng, coeff, rad, 0), count)
}

/// Symbolic 6j coefficient on `Spin` labels in printed order
/// {a b e; d c f}.
pub fn sixj(labels: [Spin; 6], variant: SixjVariant, invert_sum: bool) -> SymbolValue {
    let eng = SymEngine::new();
    let t = labels.map(|s| s.twice());
    let (v, _) = sixj_in(&eng, t, variant, invert_sum);
    to_symbol_value(&v)
}

/// Canonical representative of the 24-element classical symmetry orbit
/// (column permutations and flips of two columns), used as a cache key.
pub fn sixj_canonical_key(t: [i64; 6]) -> [i64; 6] {
    let [a, b, e, d, c, f] = t;
    // columns in standard position notation {j1 j2 j3; j4 j5 j6}:
    // (j1,j4) = (a,d), (j2,j5) = (b,c), (j3,j6) = (e,f)
    let cols = [(a, d), (b, c), (e, f)];
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let flips = [[false; 3], [true, true, false], [true, false, true], [false, true, true]];
    let mut best: Option<[i64; 6]> = None;
    for p in perms {
        for fl in flips {
            let mut cand_cols = [(0i64, 0i64); 3];
            for i in 0..3 {
                let (x, y) = cols[p[i]];
                cand_cols[i] = if fl[i] { (y, x) } else { (x, y) };
            }
            let cand = [
                cand_cols[0].0,
                cand_cols[1].0,
                cand_cols[2].0,
                cand_cols[0].1,
                cand_cols[1].1,
                cand_cols[2].1,
            ];
            if best.map(|b| cand < b).unwrap_or(true) {
                best = Some(cand);
            }
        }
    }
    best.unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{sixj_q1, RadVal};
    use crate::qarith::engine::q_one_engine;
    use crate::qarith::field::RationalCtx;
    use crate::qarith::ScalarEngine;
    use num_rational::BigRational;
    use num_traits::One;

    fn all_sixj_labels(max_twice: i64) -> Vec<[i64; 6]> {
        let mut out = Vec::new();
        for a in 0..=max_twice {
            for b in 0..=max_twice {
                for e in 0..=max_twice {
                    for d in 0..=max_twice {
                        for c in 0..=max_twice {
                            for f in 0..=max_twice {
                                let t = [a, b, e, d, c, f];
                                if sixj_triangles_ok(t) {
                                    out.push(t);
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub(crate) fn val_q1_to_radval(
        eng: &ScalarEngine<RationalCtx>,
        v: &crate::qarith::Val<ScalarEngine<RationalCtx>>,
    ) -> RadVal {
        RadVal {
            coeff: v.coeff.clone(),
            rad: v.radicand.eval_q(&BigRational::one()),
        }
    }

    #[test]
    fn nabla_examples() {
        use crate::qarith::FactMonomial;
        // (1/2, 0, 1/2): sqrt([1]! [1]! [2]! / [0]!) = sqrt([2]!)
        let v = nabla(
            Spin::from_twice(1).unwrap(),
            Spin::from_twice(0).unwrap(),
            Spin::from_twice(1).unwrap(),
        )
        .unwrap();
        let expect = SymbolValue::new(QRat::one(), FactMonomial::single(2, 1), 0);
        assert!(v.equal(&expect));
        // asymmetry witness: nabla(1,1,2) != nabla(2,1,1)
        let s = |t| Spin::from_twice(t).unwrap();
        let x = nabla(s(2), s(2), s(4)).unwrap();
        let y = nabla(s(4), s(2), s(2)).unwrap();
        assert!(!x.equal(&y));
        // at q=1, nabla(1,1,1)... (1,1,1) is not triangular (parity); use
        // (1,1,2): sqrt(0! 0! 5! / 2!)... in spin units (1/2,1/2,1):
        // sqrt([0]![1]![3]!/[1]!) -> at q=1 sqrt(6)
        let v = nabla(s(1), s(1), s(2)).unwrap();
        let approx = v.eval(&BigRational::one(), 10);
        assert!((approx - 6f64.sqrt()).abs() < 1e-9);
        // triangle violation errors
        assert!(nabla(s(1), s(1), s(1)).is_err());
    }

    #[test]
    fn sixj_unit_cube_value() {
        // {1 1 1; 1 1 1} at q=1 is 1/6
        let eng = q_one_engine();
        let (v, _) = sixj_in(&eng, [2, 2, 2, 2, 2, 2], SixjVariant::B, false);
        let rv = val_q1_to_radval(&eng, &v);
        assert!(rv.equal(&RadVal {
            coeff: BigRational::new(1.into(), 6.into()),
            rad: BigRational::new(1.into(), 1.into()),
        }));
    }

    #[test]
    fn sixj_matches_classical_oracle_q1() {
        let eng = q_one_engine();
        for t in all_sixj_labels(4) {
            // map printed order {a b e; d c f} to standard {j1 j2 j3; j4 j5 j6}
            let [a, b, e, d, c, f] = t;
            let expect = sixj_q1([a, b, e, d, c, f]);
            for variant in SixjVariant::ALL {
                let (v, _) = sixj_in(&eng, t, variant, false);
                let got = val_q1_to_radval(&eng, &v);
                assert!(
                    got.equal(&expect),
                    "variant {variant:?} disagrees with Racah oracle at {t:?}"
                );
            }
        }
    }

    #[test]
    fn sixj_variants_agree_symbolically() {
        let eng = SymEngine::new();
        for t in all_sixj_labels(3) {
            let (base, _) = sixj_in(&eng, t, SixjVariant::B, false);
            for variant in SixjVariant::ALL {
                for inv in [false, true] {
                    let (v, _) = sixj_in(&eng, t, variant, inv);
                    assert!(
                        v.equal(&eng, &base),
                        "variant {variant:?} inv={inv} disagrees at {t:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn sixj_q_inversion_invariant() {
        let eng = SymEngine::new();
        let inv = eng.inverted();
        for t in all_sixj_labels(3) {
            let (v, _) = sixj_in(&eng, t, SixjVariant::B, false);
            let (w, _) = sixj_in(&inv, t, SixjVariant::B, false);
            assert!(v.equal(&eng, &w), "q-inversion changed 6j at {t:?}");
        }
    }

    #[test]
    fn sixj_classical_symmetries_symbolic() {
        let eng = SymEngine::new();
        for t in all_sixj_labels(3) {
            let [a, b, e, d, c, f] = t;
            let (v, _) = sixj_in(&eng, t, SixjVariant::B, false);
            // column swap (standard cols (a,d),(b,c),(e,f)): {b a e; c d f}
            let (w, _) = sixj_in(&eng, [b, a, e, c, d, f], SixjVariant::B, false);
            assert!(v.equal(&eng, &w), "column swap failed at {t:?}");
            // flip two columns: {a c f...}: standard flip of cols 2,3:
            // (b,c)->(c,b), (e,f)->(f,e): labels {a c f; d b e}
            let (x, _) = sixj_in(&eng, [a, c, f, d, b, e], SixjVariant::B, false);
            assert!(v.equal(&eng, &x), "double flip failed at {t:?}");
        }
    }

    #[test]
    fn sixj_zero_on_spoiled_triangles() {
        let eng = SymEngine::new();
        let (v, n) = sixj_in(&eng, [2, 2, 2, 2, 2, 99], SixjVariant::B, false);
        assert!(v.is_zero(&eng));
        assert_eq!(n, 0);
    }

    #[test]
    fn canonical_key_is_orbit_invariant() {
        let t = [2, 4, 6, 6, 4, 2];
        let k = sixj_canonical_key(t);
        let [a, b, e, d, c, f] = t;
        assert_eq!(k, sixj_canonical_key([b, a, e, c, d, f]));
        assert_eq!(k, sixj_canonical_key([a, c, f, d, b, e]));
        assert_eq!(k, sixj_canonical_key([e, b, a, f, c, d]));
    }
}
