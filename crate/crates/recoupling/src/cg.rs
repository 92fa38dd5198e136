//! Clebsch-Gordan coefficients of u_q(2): a standard single-sum expression
//! used as the independent oracle, and the recoupling-derived very
//! well-poised sum over the intermediate momentum. Both are pinned to the
//! Condon-Shortley convention at q = 1.

use crate::identities::p5::p5sra_rhs;
use crate::qarith::engine::{to_symbol_value, Engine, SymEngine, Term, Val};
use crate::qarith::{FactMonomial, SymbolValue};
use crate::sixj::{ha, nabla_into};
use crate::spin::triangle_ok_t;

/// Magnetic-labelled CG arguments on twice-values: (j1, m1, j2, m2, j, m).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CgArgs {
    pub tj1: i64,
    pub tm1: i64,
    pub tj2: i64,
    pub tm2: i64,
    pub tj: i64,
    pub tm: i64,
}

impl CgArgs {
    pub fn new(tj1: i64, tm1: i64, tj2: i64, tm2: i64, tj: i64, tm: i64) -> Self {
        CgArgs {
            tj1,
            tm1,
            tj2,
            tm2,
            tj,
            tm,
        }
    }

    /// Magnetic labels in range, parities consistent, total m additive and
    /// the (j1 j2 j) triangle satisfied.
    pub fn in_domain(&self) -> bool {
        self.tm1.abs() <= self.tj1
            && self.tm2.abs() <= self.tj2
            && self.tm.abs() <= self.tj
            && (self.tj1 + self.tm1) % 2 == 0
            && (self.tj2 + self.tm2) % 2 == 0
            && (self.tj + self.tm) % 2 == 0
            && self.tm1 + self.tm2 == self.tm
            && triangle_ok_t(self.tj1, self.tj2, self.tj)
    }
}

/// The common prefactor of the recoupling-derived expression:
/// nabla[j2 j1 j] sqrt([2j+1][j2+m2]![j2-m2]![j1-m1]![j-m]! /
/// ([j1+m1]![j+m]!)) q^(E0), with E0 the printed exponent.
fn cg_prefactor<E: Engine>(eng: &E, a: &CgArgs) -> Val<E> {
    let mut rad = FactMonomial::one();
    nabla_into(&mut rad, a.tj2, a.tj1, a.tj, 1);
    rad.push(a.tj + 1, 1);
    rad.push(a.tj, -1); // [2j+1] = [2j+1]!/[2j]!
    rad.push(ha(a.tj2 + a.tm2), 1);
    rad.push(ha(a.tj2 - a.tm2), 1);
    rad.push(ha(a.tj1 - a.tm1), 1);
    rad.push(ha(a.tj - a.tm), 1);
    rad.push(ha(a.tj1 + a.tm1), -1);
    rad.push(ha(a.tj + a.tm), -1);
    // E0 = (j2(j2+1) - j1(j1+1) - j(j+1))/2 - m1 j2 - (j2+m2)(j2+m2+2)/4
    let half_combo = a.tj2 * (a.tj2 + 2) - a.tj1 * (a.tj1 + 2) - a.tj * (a.tj + 2);
    assert!(half_combo % 2 == 0, "CG phase off the quarter lattice");
    let p = a.tj2 + a.tm2;
    assert!((p * (p + 4)) % 4 == 0);
    let e0 = half_combo / 2 - a.tm1 * a.tj2 - p * (p + 4) / 4;
    Val::new(eng, eng.q_power(e0), rad, 0)
}

/// The p-parameters of the underlying very well-poised series, as
/// twice-values.
fn p_params(a: &CgArgs) -> [i64; 5] {
    let r = ha(a.tj2 - a.tm2); // twice of (j2-m2)/2
    let p = ha(a.tj2 + a.tm2); // twice of (j2+m2)/2
    [
        r - a.tj - 2,
        -(a.tm1 + p) - 2,
        p - a.tj1 - 2,
        r + a.tj,
        p + a.tj1,
    ]
}

/// u_q(2) Clebsch-Gordan coefficient through the standard single-sum
/// route (the rearranged side of the very well-poised series). This is
/// the oracle the recoupled expression is checked against.
pub fn cg_q_in<E: Engine>(eng: &E, a: &CgArgs) -> Val<E> {
    if !a.in_domain() {
        return Val::zero(eng);
    }
    let pre = cg_prefactor(eng, a);
    let (sum, _) = p5sra_rhs(eng, p_params(a));
    // the single-sum side carries sign (-1)^(j1 - m1) relative to the
    // printed x-sum
    let sign = ha(a.tj1 - a.tm1).rem_euclid(2);
    let mut v = pre;
    v.coeff = eng.mul(&v.coeff, &sum);
    Val::new(eng, v.coeff, v.radicand, sign)
}

/// Symbolic oracle CG coefficient.
pub fn cg_q(a: &CgArgs) -> SymbolValue {
    let eng = SymEngine::new();
    to_symbol_value(&cg_q_in(&eng, a))
}

/// The recoupling-derived expression: a very well-poised single sum over
/// the intermediate momentum x, with squared triangle coefficients in the
/// denominator.
pub fn cg_recoupled_in<E: Engine>(eng: &E, a: &CgArgs) -> Val<E> {
    if !a.in_domain() {
        return Val::zero(eng);
    }
    let pre = cg_prefactor(eng, a);
    let tp = ha(a.tj2 + a.tm2); // twice of (j2+m2)/2
    let tr = ha(a.tj2 - a.tm2); // twice of (j2-m2)/2
    let tmp = a.tm1 + tp; // twice of m' = m1 + (j2+m2)/2
    let mut acc = eng.acc_new();
    let mut tx = (tp - a.tj1).abs().max((tr - a.tj).abs()).max(tmp.abs());
    if (tx + tp + a.tj1) % 2 != 0 {
        tx += 1;
    }
    let hi = (tp + a.tj1).min(tr + a.tj);
    while tx <= hi {
        // sign (-1)^(j1 + (j2+m2)/2 - x)
        let neg = ha(a.tj1 + tp - tx).rem_euclid(2) == 1;
        eng.acc_add(
            &mut acc,
            Term {
                neg,
                phase_quarters: tx * (tx + 2),
                num_fact: &[
                    // 1/nabla^2 numerators: [y+z-x]! parts
                    ha(a.tj1 + tx - tp),
                    ha(a.tj + tx - tr),
                    ha(tx + tmp),
                ],
                den_fact: &[
                    // nabla^2[(j2+m2)/2, j1, x]
                    ha(tp + a.tj1 - tx),
                    ha(tp - a.tj1 + tx),
                    ha(tp + a.tj1 + tx) + 1,
                    // nabla^2[(j2-m2)/2, j, x]
                    ha(tr + a.tj - tx),
                    ha(tr - a.tj + tx),
                    ha(tr + a.tj + tx) + 1,
                    ha(tx - tmp),
                ],
                num_qnum: &[tx + 1],
                den_qnum: &[],
            },
        );
        tx += 2;
    }
    let (sum, _) = eng.acc_finish(acc);
    let mut v = pre;
    v.coeff = eng.mul(&v.coeff, &sum);
    Val::new(eng, v.coeff, v.radicand, 0)
}

/// Symbolic recoupling-derived CG coefficient.
pub fn cg_recoupled(a: &CgArgs) -> SymbolValue {
    let eng = SymEngine::new();
    to_symbol_value(&cg_recoupled_in(&eng, a))
}

/// The Regge-invariant core of the recoupling-derived expression: the
/// very well-poised sum with its prefactor divided out and its sign
/// anchored, which is symmetric under permutations of {p1, p2, p3} and
/// under swapping p4 with p5. This is the object shared by all twelve
/// Regge-related label sets (the raw coefficients themselves differ by
/// the prefactor, which carries the dimension factors).
pub fn cg_regge_core_in<E: Engine>(eng: &E, a: &CgArgs) -> Val<E> {
    let v = cg_recoupled_in(eng, a);
    if v.is_zero(eng) {
        return v;
    }
    let pre = cg_prefactor(eng, a);
    let tp = p_params(a);
    // the x-sum equals (-1)^(j1-m1) times the series in its p-symmetric
    // normalization, whose sign references the second parameter; anchor
    // that reference to the smallest of {p1, p2, p3}
    let c2 = tp[0].min(tp[1]).min(tp[2]);
    let sign = (ha(a.tj1 - a.tm1) + ha(tp[1] - c2)).rem_euclid(2);
    Val::new(eng, v.div(eng, &pre).coeff, FactMonomial::one(), sign)
}

/// The 12 Regge-type images of a CG label set: permutations within
/// {p1, p2, p3} and within {p4, p5} of the underlying series parameters
/// leave the value invariant. Images that leave the valid label domain are
/// dropped.
pub fn cg_regge_orbit(a: &CgArgs) -> Vec<CgArgs> {
    let tp = p_params(a);
    let mut out = Vec::new();
    let perms3 = [
        [0usize, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for p3 in perms3 {
        for swap45 in [false, true] {
            let q = [
                tp[p3[0]],
                tp[p3[1]],
                tp[p3[2]],
                if swap45 { tp[4] } else { tp[3] },
                if swap45 { tp[3] } else { tp[4] },
            ];
            // reconstruct labels from the permuted parameters
            let tr = ha(q[0] + q[3] + 2); // twice of (j2-m2)/2
            let tj = ha(q[3] - q[0] - 2);
            let tp2 = ha(q[2] + q[4] + 2); // twice of (j2+m2)/2
            let tj1 = ha(q[4] - q[2] - 2);
            let tmp = -q[1] - 2; // twice of m'
            let tj2 = tr + tp2;
            let tm2 = tp2 - tr;
            let tm1 = tmp - tp2;
            let cand = CgArgs::new(tj1, tm1, tj2, tm2, tj, tm1 + tm2);
            if tj1 >= 0 && tj2 >= 0 && tj >= 0 && cand.in_domain() {
                out.push(cand);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{cg_q1, RadVal};
    use crate::qarith::engine::q_one_engine;
    use num_rational::BigRational;
    use num_traits::One;

    fn domain_labels(max_twice: i64) -> Vec<CgArgs> {
        let mut out = Vec::new();
        for tj1 in 0..=max_twice {
            for tj2 in 0..=max_twice {
                for tj in crate::spin::couple_range(tj1, tj2, max_twice) {
                    let mut tm1 = -tj1;
                    while tm1 <= tj1 {
                        let mut tm2 = -tj2;
                        while tm2 <= tj2 {
                            let a = CgArgs::new(tj1, tm1, tj2, tm2, tj, tm1 + tm2);
                            if a.in_domain() {
                                out.push(a);
                            }
                            tm2 += 2;
                        }
                        tm1 += 2;
                    }
                }
            }
        }
        out
    }

    #[test]
    fn stretched_top_is_one() {
        let eng = SymEngine::new();
        for (tj1, tj2) in [(1i64, 1i64), (2, 2), (3, 1), (2, 4)] {
            let a = CgArgs::new(tj1, tj1, tj2, tj2, tj1 + tj2, tj1 + tj2);
            let v = cg_q_in(&eng, &a);
            assert!(v.equal(&eng, &Val::one(&eng)), "stretched top != 1 at {a:?}");
            let w = cg_recoupled_in(&eng, &a);
            assert!(w.equal(&eng, &Val::one(&eng)));
        }
    }

    #[test]
    fn matches_classical_at_q1() {
        let eng = q_one_engine();
        for a in domain_labels(4) {
            let v = cg_q_in(&eng, &a);
            let expect = cg_q1(a.tj1, a.tm1, a.tj2, a.tm2, a.tj, a.tm);
            let got = RadVal {
                coeff: v.coeff.clone(),
                rad: v.radicand.eval_q(&BigRational::one()),
            };
            assert!(
                got.equal(&expect),
                "CG oracle disagrees with classical CG at {a:?}"
            );
        }
    }

    #[test]
    fn half_half_up_value() {
        // (1/2, 1/2) -> 1 at m1 = 1/2, m2 = -1/2: value 1/sqrt(2) at q=1
        let a = CgArgs::new(1, 1, 1, -1, 2, 0);
        let v = cg_q(&a);
        let x = v.eval(&BigRational::one(), 10);
        assert!((x - 0.5f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn recoupled_equals_oracle_symbolic() {
        let eng = SymEngine::new();
        for a in domain_labels(3) {
            let v = cg_recoupled_in(&eng, &a);
            let w = cg_q_in(&eng, &a);
            assert!(v.equal(&eng, &w), "recoupled != oracle at {a:?}");
        }
    }

    #[test]
    fn regge_orbit_invariance() {
        let eng = SymEngine::new();
        let a = CgArgs::new(2, 2, 2, -2, 2, 0);
        let orbit = cg_regge_orbit(&a);
        assert!(orbit.contains(&a));
        let base = cg_regge_core_in(&eng, &a);
        assert!(!base.is_zero(&eng));
        for img in orbit {
            let v = cg_regge_core_in(&eng, &img);
            assert!(v.equal(&eng, &base), "Regge image {img:?} breaks invariance");
        }
    }

    #[test]
    fn zero_outside_domain() {
        let eng = SymEngine::new();
        let a = CgArgs::new(1, 1, 1, 1, 2, 0); // m != m1+m2
        assert!(cg_q_in(&eng, &a).is_zero(&eng));
        let b = CgArgs::new(1, 3, 1, -1, 2, 2); // |m1| > j1
        assert!(cg_q_in(&eng, &b).is_zero(&eng));
    }
}
