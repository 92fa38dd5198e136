//! Expansion of the 9j coefficient over products of three 6j coefficients,
//! weighted with [2j+1]: the ground-truth oracle for all other 9j formulas.

use super::{z_phase_quarters, NinejLabels};
use crate::qarith::engine::{to_symbol_value, Engine, SymEngine, Val};
use crate::qarith::SymbolValue;
use crate::sixj::{sixj_in, SixjVariant};

/// The seven rearranged expansion variants. They differ in where the
/// summation label sits inside the three 6j factors and in which 6j
/// expression evaluates each factor; all yield equal values.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExpansionVariant {
    Vr6a,
    Vr6b,
    Vr6c,
    Vr6d,
    Vr6e,
    Vrx6a,
    Vrx6b,
}

impl ExpansionVariant {
    pub const ALL: [ExpansionVariant; 7] = [
        ExpansionVariant::Vr6a,
        ExpansionVariant::Vr6b,
        ExpansionVariant::Vr6c,
        ExpansionVariant::Vr6d,
        ExpansionVariant::Vr6e,
        ExpansionVariant::Vrx6a,
        ExpansionVariant::Vrx6b,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExpansionVariant::Vr6a => "vr6a",
            ExpansionVariant::Vr6b => "vr6b",
            ExpansionVariant::Vr6c => "vr6c",
            ExpansionVariant::Vr6d => "vr6d",
            ExpansionVariant::Vr6e => "vr6e",
            ExpansionVariant::Vrx6a => "vrx6a",
            ExpansionVariant::Vrx6b => "vrx6b",
        }
    }
}

impl std::str::FromStr for ExpansionVariant {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> crate::error::Result<Self> {
        ExpansionVariant::ALL
            .into_iter()
            .find(|v| v.name() == s.to_ascii_lowercase())
            .ok_or_else(|| {
                crate::error::Error::MalformedInput(format!("unknown expansion variant {s:?}"))
            })
    }
}

type Factor = ([i64; 6], SixjVariant, bool);

/// The three 6j factors for a variant at summation label tj, with the 6j
/// expression and summation-order assignment used for each.
fn factors(l: &NinejLabels, tj: i64, variant: ExpansionVariant) -> [Factor; 3] {
    let [a, b, e, c, d, f, h, k, g] = l.grid();
    let j = tj;
    use SixjVariant::*;
    match variant {
        ExpansionVariant::Vr6a => [
            ([a, c, h, k, g, j], Bb, false),
            ([k, j, c, f, d, b], B, true),
            ([a, g, j, f, b, e], B, false),
        ],
        ExpansionVariant::Vr6b => [
            ([k, g, h, a, c, j], B, false),
            ([j, b, f, d, c, k], C, false),
            ([f, b, j, a, g, e], B, false),
        ],
        ExpansionVariant::Vr6c => [
            ([h, c, a, j, g, k], C, false),
            ([k, j, c, f, d, b], B, true),
            ([j, g, a, e, b, f], C, false),
        ],
        ExpansionVariant::Vr6d => [
            ([a, j, g, k, h, c], B, true),
            ([j, b, f, d, c, k], C, false),
            ([f, j, b, a, e, g], B, true),
        ],
        ExpansionVariant::Vr6e => [
            ([a, c, h, k, g, j], B, false),
            ([k, j, c, f, d, b], B, true),
            ([b, e, a, g, j, f], C, false),
        ],
        ExpansionVariant::Vrx6a => [
            ([g, j, a, c, h, k], Cb, false),
            ([j, b, f, d, c, k], C, false),
            ([a, g, j, f, b, e], B, false),
        ],
        ExpansionVariant::Vrx6b => [
            ([g, j, a, c, h, k], Cb, false),
            ([j, b, f, d, c, k], C, false),
            ([b, e, a, g, j, f], C, false),
        ],
    }
}

/// 9j coefficient as the weighted sum over j of three 6j coefficients.
/// Returns the value and the flattened summand-tuple count (the product of
/// the three 6j term counts, summed over j), which is the cost measure the
/// triple-sum formulas are compared against.
pub fn ninej_expand_in<E: Engine>(
    eng: &E,
    l: &NinejLabels,
    variant: ExpansionVariant,
) -> (Val<E>, u64) {
    if !l.is_triangular() {
        return (Val::zero(eng), 0);
    }
    let [a, b, e, _c, d, f, h, k, g] = l.grid();
    let z_deh = z_phase_quarters(d, e, h);
    let mut lo = (a - g).abs().max((f - b).abs()).max((k - l.c()).abs());
    let hi = (a + g).min(b + f).min(l.c() + k);
    if (lo + a + g) % 2 != 0 {
        lo += 1;
    }
    let mut total = Val::zero(eng);
    let mut flat = 0u64;
    let mut tj = lo;
    while tj <= hi {
        let mut prod = Val::one(eng);
        let mut counts = [0u64; 3];
        let mut vanished = false;
        for (i, (t, sv, inv)) in factors(l, tj, variant).into_iter().enumerate() {
            let (v, n) = sixj_in(eng, t, sv, inv);
            counts[i] = n;
            if v.is_zero(eng) {
                vanished = true;
                break;
            }
            prod = prod.mul(eng, &v);
        }
        if !vanished {
            flat += counts[0] * counts[1] * counts[2];
            // weight: (-1)^(2j) q^(Z_deh - j(j+1)) [2j+1]
            let mut w = eng.qnum(tj + 1);
            w = eng.mul(&w, &eng.q_power(z_deh - tj * (tj + 2)));
            if tj.rem_euclid(2) == 1 {
                w = eng.neg(&w);
            }
            prod.coeff = eng.mul(&prod.coeff, &w);
            total = total
                .add(eng, &prod)
                .expect("expansion terms share a common radical");
        }
        tj += 2;
    }
    (total, flat)
}

/// Symbolic 9j expansion.
pub fn ninej_expand(l: &NinejLabels, variant: ExpansionVariant) -> SymbolValue {
    let eng = SymEngine::new();
    to_symbol_value(&ninej_expand_in(&eng, l, variant).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{ninej_q1_from_cg, sixj_q1, RadVal};
    use crate::ninej::ninej_grids;
    use crate::qarith::engine::q_one_engine;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::One;

    fn labels(g: [i64; 9]) -> NinejLabels {
        NinejLabels::from_twice(g).unwrap()
    }

    #[test]
    fn all_variants_agree_all_spins_one() {
        let eng = SymEngine::new();
        let l = labels([2; 9]);
        let (base, _) = ninej_expand_in(&eng, &l, ExpansionVariant::Vr6a);
        assert!(!base.is_zero(&eng));
        for v in ExpansionVariant::ALL {
            let (w, _) = ninej_expand_in(&eng, &l, v);
            assert!(w.equal(&eng, &base), "variant {v:?} disagrees");
        }
    }

    #[test]
    fn matches_cg_contraction_at_q1() {
        let eng = q_one_engine();
        for l in ninej_grids(3) {
            let expect = ninej_q1_from_cg(l.grid());
            let (v, _) = ninej_expand_in(&eng, &l, ExpansionVariant::Vr6a);
            let got = RadVal {
                coeff: v.coeff.clone(),
                rad: v.radicand.eval_q(&BigRational::one()),
            };
            assert!(
                got.equal(&expect),
                "expansion disagrees with CG contraction at {:?}",
                l.grid()
            );
        }
    }

    #[test]
    fn non_triangular_is_zero() {
        let eng = SymEngine::new();
        let l = labels([2, 2, 2, 2, 2, 2, 2, 2, 99]);
        let (v, n) = ninej_expand_in(&eng, &l, ExpansionVariant::Vr6a);
        assert!(v.is_zero(&eng));
        assert_eq!(n, 0);
    }

    #[test]
    fn g_zero_reduces_to_single_sixj() {
        // g = 0 forces h = k and e = f; the j-window collapses to j = a and
        // the value is the single surviving weighted product of 6j factors.
        let eng = q_one_engine();
        for l in ninej_grids(3) {
            if l.g() != 0 {
                continue;
            }
            assert_eq!(l.h(), l.k());
            assert_eq!(l.e(), l.f());
            let (v, _) = ninej_expand_in(&eng, &l, ExpansionVariant::Vr6a);
            // classical reduction: (-1)^(b+c+e+h)/sqrt((2e+1)(2h+1)) {a b e; d c h}
            let [a, b, e, c, d, _f, h, _k, _g] = l.grid();
            let sj = sixj_q1([a, b, e, d, c, h]);
            let dims = BigRational::from(BigInt::from((e + 1) * (h + 1)));
            let sign = if ((b + c + e + h) / 2) % 2 == 0 {
                BigRational::one()
            } else {
                -BigRational::one()
            };
            let expect = RadVal {
                coeff: sj.coeff * sign,
                rad: sj.rad / dims,
            };
            let got = RadVal {
                coeff: v.coeff.clone(),
                rad: v.radicand.eval_q(&BigRational::one()),
            };
            assert!(
                got.equal(&expect),
                "g=0 reduction failed at {:?}",
                l.grid()
            );
        }
    }
}
