//! Rearrangement of the twisted very well-poised 5-parameter factorial
//! series into a single-sum form. Both sides are exposed separately: the
//! identity suite subtracts them, and the Clebsch-Gordan module evaluates
//! the right side as its independent single-sum route.

use crate::qarith::engine::{Engine, Term};
use crate::sixj::ha;

/// Checks that all p parameters live on a common half-integer lattice so
/// every factorial argument is an integer.
pub fn p5_lattice_ok(tp: [i64; 5]) -> bool {
    let r = tp[0].rem_euclid(2);
    tp.iter().all(|&t| t.rem_euclid(2) == r)
}

/// Left side of the first rearrangement: the alternating [2j+1]-weighted
/// sum. Parameters are twice-values of the five half-integer parameters.
pub fn p5sra_lhs<E: Engine>(eng: &E, tp: [i64; 5]) -> (E::C, u64) {
    let [p1, p2, p3, p4, p5] = tp;
    let mut acc = eng.acc_new();
    // j runs on the lattice of p4 with every denominator argument
    // nonnegative; conservative window, accumulator clips
    let lo = (-p1 - 2).max(-p2 - 2).max(-p3 - 2).max(-p4 - 2).max(-p5 - 2);
    let lo = lo.max(p1 + 2).max(p2 + 2).max(p3 + 2); // numerator zero-skip
    let mut tj = lo.max(0);
    // align parity with p4 so p4 - j is an integer
    if (tj - p4).rem_euclid(2) != 0 {
        tj += 1;
    }
    while tj <= p4.min(p5) {
        eng.acc_add(
            &mut acc,
            Term {
                neg: (ha(p2 + tj) + 1).rem_euclid(2) == 1,
                phase_quarters: tj * (tj + 2),
                num_fact: &[
                    ha(tj - p1) - 1,
                    ha(tj - p2) - 1,
                    ha(tj - p3) - 1,
                ],
                den_fact: &[
                    ha(p1 + tj) + 1,
                    ha(p2 + tj) + 1,
                    ha(p3 + tj) + 1,
                    ha(p4 - tj),
                    ha(p4 + tj) + 1,
                    ha(p5 - tj),
                    ha(p5 + tj) + 1,
                ],
                num_qnum: &[tj + 1],
                den_qnum: &[],
            },
        );
        tj += 2;
    }
    eng.acc_finish(acc)
}

/// Right side of the first rearrangement: prefactor times a single u-sum.
pub fn p5sra_rhs<E: Engine>(eng: &E, tp: [i64; 5]) -> (E::C, u64) {
    let [p1, p2, p3, p4, p5] = tp;
    let pre_args_den = [
        ha(p1 + p4) + 1,
        ha(p2 + p5) + 1,
        ha(p3 + p4) + 1,
    ];
    let a_top = ha(-p1 - p3) - 2;
    if a_top < 0 || pre_args_den.iter().any(|&x| x < 0) {
        return (eng.zero(), 0);
    }
    let mut acc = eng.acc_new();
    for u in 0..=a_top.max(ha(p2 + p4) + 1).max(ha(p4 + p5) + 1) {
        eng.acc_add(
            &mut acc,
            Term::simple(
                u.rem_euclid(2) == 1,
                2 * u * (p2 + p5 + 2),
                &[ha(p4 - p3) - 1 - u, ha(p4 - p1) - 1 - u],
                &[
                    u,
                    a_top - u,
                    ha(p2 + p4) + 1 - u,
                    ha(p4 + p5) + 1 - u,
                ],
            ),
        );
    }
    let (sum, n) = eng.acc_finish(acc);
    // prefactor q^(-(p4+1)(p5+1) - p2(p4+p5+1)) [-p1-p3-2]! / (dens)
    let mut acc2 = eng.acc_new();
    eng.acc_add(
        &mut acc2,
        Term::simple(
            false,
            -(p4 + 2) * (p5 + 2) - p2 * (p4 + p5 + 2),
            &[a_top],
            &pre_args_den,
        ),
    );
    let (pre, _) = eng.acc_finish(acc2);
    (eng.mul(&pre, &sum), n)
}

/// Left side of the second rearrangement (non-alternating variant).
pub fn p5srb_lhs<E: Engine>(eng: &E, tp: [i64; 5]) -> (E::C, u64) {
    let [p1, p2, p3, p4, p5] = tp;
    let mut acc = eng.acc_new();
    let lo = (-p1 - 2).max(-p2 - 2).max(-p3 - 2).max(-p4 - 2).max(-p5 - 2);
    let lo = lo.max(p1 + 2).max(p2 + 2).max(p3 + 2).max(p5 + 2);
    let mut tj = lo.max(0);
    if (tj - p4).rem_euclid(2) != 0 {
        tj += 1;
    }
    while tj <= p4 {
        eng.acc_add(
            &mut acc,
            Term {
                neg: false,
                phase_quarters: tj * (tj + 2),
                num_fact: &[
                    ha(tj - p1) - 1,
                    ha(tj - p2) - 1,
                    ha(tj - p3) - 1,
                    ha(tj - p5) - 1,
                ],
                den_fact: &[
                    ha(p1 + tj) + 1,
                    ha(p2 + tj) + 1,
                    ha(p3 + tj) + 1,
                    ha(p4 - tj),
                    ha(p4 + tj) + 1,
                    ha(p5 + tj) + 1,
                ],
                num_qnum: &[tj + 1],
                den_qnum: &[],
            },
        );
        tj += 2;
    }
    eng.acc_finish(acc)
}

/// Right side of the second rearrangement.
pub fn p5srb_rhs<E: Engine>(eng: &E, tp: [i64; 5]) -> (E::C, u64) {
    let [p1, p2, p3, p4, p5] = tp;
    let a_top = ha(-p1 - p3) - 2;
    let b_top = ha(-p2 - p5) - 2;
    let pre_den = [ha(p1 + p4) + 1, ha(p3 + p4) + 1];
    if a_top < 0 || b_top < 0 || pre_den.iter().any(|&x| x < 0) {
        return (eng.zero(), 0);
    }
    let mut acc = eng.acc_new();
    for u in 0..=a_top.max(ha(p4 + p5) + 1).max(ha(p2 + p4) + 1) {
        eng.acc_add(
            &mut acc,
            Term::simple(
                u.rem_euclid(2) == 1,
                2 * u * (p2 + p5 + 2),
                &[ha(p4 - p3) - 1 - u, ha(p4 - p1) - 1 - u],
                &[
                    u,
                    ha(p4 + p5) + 1 - u,
                    ha(p2 + p4) + 1 - u,
                    a_top - u,
                ],
            ),
        );
    }
    let (sum, n) = eng.acc_finish(acc);
    let mut acc2 = eng.acc_new();
    eng.acc_add(
        &mut acc2,
        Term::simple(
            false,
            -(p4 + 2) * (p5 + 2) - p2 * (p4 + p5 + 2),
            &[a_top, b_top],
            &pre_den,
        ),
    );
    let (pre, _) = eng.acc_finish(acc2);
    (eng.mul(&pre, &sum), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::engine::SymEngine;

    #[test]
    fn p5sra_small_instances() {
        let eng = SymEngine::new();
        // twice-valued parameter tuples on a common lattice
        // validity needs p1, p2, p3 <= -1 so no numerator factorial goes
        // negative inside the denominator window
        for tp in [
            [-2i64, -2, -2, 2, 2],
            [-4, -2, -2, 2, 4],
            [-3, -3, -3, 3, 3],
            [-4, -2, -4, 4, 2],
            [-5, -3, -3, 3, 5],
        ] {
            assert!(p5_lattice_ok(tp));
            let (l, _) = p5sra_lhs(&eng, tp);
            let (r, _) = p5sra_rhs(&eng, tp);
            assert!(eng.eq(&l, &r), "first rearrangement fails at {tp:?}");
        }
    }

    #[test]
    fn p5srb_small_instances() {
        let eng = SymEngine::new();
        for tp in [
            [-2i64, -2, -2, 2, -2],
            [-4, -2, -2, 2, -2],
            [-3, -3, -3, 3, -3],
            [-4, -2, -4, 4, -2],
        ] {
            let (l, _) = p5srb_lhs(&eng, tp);
            let (r, _) = p5srb_rhs(&eng, tp);
            assert!(eng.eq(&l, &r), "second rearrangement fails at {tp:?}");
        }
    }
}
