//! 12j coefficients of the first kind (non-planar coupling graph, with
//! braiding): the weighted expansion over four 6j coefficients, two
//! fivefold-sum expressions, the 16-element symmetry orbit, and the
//! stretched reductions reaching down to 9j, 6j, and closed forms.

use crate::error::{Error, Result};
use crate::ninej::{ninej_triple_in, NinejLabels, TripleSumFormula};
use crate::qarith::engine::{to_symbol_value, Engine, SymEngine, Term, Val};
use crate::qarith::{FactMonomial, SymbolValue};
use crate::sixj::{ha, nabla_into, sixj_in, SixjVariant};
use crate::spin::triangle_ok_t;

/// Labels (j1..j4, l1..l4, k1..k4) of the braided-strip layout, stored as
/// twice-values.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Twelvej1Labels {
    pub j: [i64; 4],
    pub l: [i64; 4],
    pub k: [i64; 4],
}

impl Twelvej1Labels {
    pub fn from_twice(j: [i64; 4], l: [i64; 4], k: [i64; 4]) -> Result<Self> {
        if j.iter().chain(&l).chain(&k).any(|&t| t < 0) {
            return Err(Error::MalformedInput("negative twice-spin".into()));
        }
        Ok(Twelvej1Labels { j, l, k })
    }

    pub fn slots(&self) -> [i64; 12] {
        [
            self.j[0], self.j[1], self.j[2], self.j[3], self.l[0], self.l[1], self.l[2],
            self.l[3], self.k[0], self.k[1], self.k[2], self.k[3],
        ]
    }

    pub fn from_slots(s: [i64; 12]) -> Self {
        Twelvej1Labels {
            j: [s[0], s[1], s[2], s[3]],
            l: [s[4], s[5], s[6], s[7]],
            k: [s[8], s[9], s[10], s[11]],
        }
    }

    /// The eight nearest-neighbor triangles.
    pub fn triangles(&self) -> [(i64, i64, i64); 8] {
        let [j1, j2, j3, j4] = self.j;
        let [l1, l2, l3, l4] = self.l;
        let [k1, k2, k3, k4] = self.k;
        [
            (l1, j1, j2),
            (l1, k1, k2),
            (l2, j2, j3),
            (l2, k2, k3),
            (l3, j3, j4),
            (l3, k3, k4),
            (l4, j1, k4),
            (l4, k1, j4),
        ]
    }

    pub fn is_triangular(&self) -> bool {
        self.triangles()
            .iter()
            .all(|&(x, y, z)| triangle_ok_t(x, y, z))
    }
}

/// Enumerates all triangular label sets with twice-spins <= max_twice.
pub fn twelvej1_labels(max_twice: i64) -> Vec<Twelvej1Labels> {
    let m = max_twice;
    let cr = crate::spin::couple_range;
    let mut out = Vec::new();
    for j1 in 0..=m {
        for j2 in 0..=m {
            for l1 in cr(j1, j2, m) {
                for k1 in 0..=m {
                    for k2 in cr(l1, k1, m) {
                        for j3 in 0..=m {
                            for l2 in cr(j2, j3, m) {
                                for k3 in cr(l2, k2, m) {
                                    for j4 in 0..=m {
                                        for l3 in cr(j3, j4, m) {
                                            for k4 in cr(l3, k3, m) {
                                                for l4 in cr(j1, k4, m) {
                                                    if triangle_ok_t(l4, k1, j4) {
                                                        out.push(Twelvej1Labels {
                                                            j: [j1, j2, j3, j4],
                                                            l: [l1, l2, l3, l4],
                                                            k: [k1, k2, k3, k4],
                                                        });
                                                    }
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Z_(wxyz) for four labels, in quarter units.
fn fourz(tw: i64, tx: i64, ty: i64, tz: i64) -> i64 {
    -(tw * (tw + 2) + tx * (tx + 2) + ty * (ty + 2) + tz * (tz + 2))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum V1ExpandVariant {
    Dvpja,
    Dvpjb,
}

impl V1ExpandVariant {
    pub const ALL: [V1ExpandVariant; 2] = [V1ExpandVariant::Dvpja, V1ExpandVariant::Dvpjb];
    pub fn name(self) -> &'static str {
        match self {
            V1ExpandVariant::Dvpja => "dvpja",
            V1ExpandVariant::Dvpjb => "dvpjb",
        }
    }
}

type Factor = ([i64; 6], SixjVariant, bool);

fn factors1(t: &Twelvej1Labels, x: i64, variant: V1ExpandVariant) -> [Factor; 4] {
    let [j1, j2, j3, j4] = t.j;
    let [l1, l2, l3, l4] = t.l;
    let [k1, k2, k3, k4] = t.k;
    use SixjVariant::*;
    match variant {
        V1ExpandVariant::Dvpja => [
            ([j1, j2, l1, k2, k1, x], Bb, false),
            ([j3, k3, x, k2, j2, l2], B, false),
            ([j3, j4, l3, k4, k3, x], Bb, false),
            ([k1, j1, x, k4, j4, l4], B, false),
        ],
        V1ExpandVariant::Dvpjb => [
            ([j1, j2, l1, k2, k1, x], Bb, false),
            ([k2, x, j2, j3, l2, k3], B, true),
            ([j3, k3, x, k4, j4, l3], B, false),
            ([k1, x, j1, k4, l4, j4], B, true),
        ],
    }
}

/// 12j (first kind) as the [2x+1]-weighted braided expansion over four 6j
/// coefficients. Returns the value and the flattened summand count.
pub fn twelvej1_expand_in<E: Engine>(
    eng: &E,
    t: &Twelvej1Labels,
    variant: V1ExpandVariant,
) -> (Val<E>, u64) {
    if !t.is_triangular() {
        return (Val::zero(eng), 0);
    }
    let [j1, j2, j3, j4] = t.j;
    let [k1, k2, k3, k4] = t.k;
    let r4: i64 = t.slots().iter().sum();
    let zq = fourz(j1, j2, j3, j4) + fourz(k1, k2, k3, k4);
    // x couples the pairs (j_i, k_i)
    let mut lo = (j1 - k1)
        .abs()
        .max((j2 - k2).abs())
        .max((j3 - k3).abs())
        .max((j4 - k4).abs());
    let hi = (j1 + k1).min(j2 + k2).min(j3 + k3).min(j4 + k4);
    if (lo + j1 + k1) % 2 != 0 {
        lo += 1;
    }
    for s in [j2 + k2, j3 + k3, j4 + k4] {
        if (lo + s) % 2 != 0 {
            return (Val::zero(eng), 0);
        }
    }
    let mut total = Val::zero(eng);
    let mut flat = 0u64;
    let mut tx = lo;
    while tx <= hi {
        let mut prod = Val::one(eng);
        let mut counts = [0u64; 4];
        let mut vanished = false;
        for (i, (lab, sv, inv)) in factors1(t, tx, variant).into_iter().enumerate() {
            let (v, n) = sixj_in(eng, lab, sv, inv);
            counts[i] = n;
            if v.is_zero(eng) {
                vanished = true;
                break;
            }
            prod = prod.mul(eng, &v);
        }
        if !vanished {
            flat += counts.iter().product::<u64>();
            // weight [2x+1] (-1)^(R4 - x) q^(x(x+1) + Z_j + Z_k)
            let mut w = eng.qnum(tx + 1);
            w = eng.mul(&w, &eng.q_power(tx * (tx + 2) + zq));
            if ha(r4 - tx).rem_euclid(2) == 1 {
                w = eng.neg(&w);
            }
            prod.coeff = eng.mul(&prod.coeff, &w);
            total = total
                .add(eng, &prod)
                .expect("expansion terms share a common radical");
        }
        tx += 2;
    }
    (total, flat)
}

pub fn twelvej1_expand(t: &Twelvej1Labels, variant: V1ExpandVariant) -> SymbolValue {
    let eng = SymEngine::new();
    to_symbol_value(&twelvej1_expand_in(&eng, t, variant).0)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FiveSumFormula {
    Dpsa,
    Dpsb,
}

impl FiveSumFormula {
    pub const ALL: [FiveSumFormula; 2] = [FiveSumFormula::Dpsa, FiveSumFormula::Dpsb];
    pub fn name(self) -> &'static str {
        match self {
            FiveSumFormula::Dpsa => "dpsa",
            FiveSumFormula::Dpsb => "dpsb",
        }
    }
}

impl std::str::FromStr for FiveSumFormula {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FiveSumFormula::ALL
            .into_iter()
            .find(|v| v.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::MalformedInput(format!("unknown fivefold formula {s:?}")))
    }
}

/// Evaluates the chosen fivefold sum; zero on non-triangular labels.
pub fn twelvej1_fivesum_in<E: Engine>(
    eng: &E,
    t: &Twelvej1Labels,
    formula: FiveSumFormula,
) -> (Val<E>, u64) {
    if !t.is_triangular() {
        return (Val::zero(eng), 0);
    }
    let [j1, j2, j3, j4] = t.j;
    let [l1, l2, l3, l4] = t.l;
    let [k1, k2, k3, k4] = t.k;
    let zq = fourz(j1, j2, j3, j4) + fourz(k1, k2, k3, k4);
    let mut rad = FactMonomial::one();
    let (sign_twice, phase_q): (i64, i64) = match formula {
        FiveSumFormula::Dpsa => {
            for ([x, y, z], s) in [
                ([j3, j2, l2], 1),
                ([k2, k3, l2], 1),
                ([k1, j4, l4], 1),
                ([k4, j1, l4], 1),
                ([j1, j2, l1], -1),
                ([k2, k1, l1], -1),
                ([j3, j4, l3], -1),
                ([k4, k3, l3], -1),
            ] {
                nabla_into(&mut rad, x, y, z, s);
            }
            (
                k1 + k2 - k3 - j2 + j3 + j4 - l4,
                -(j1 + k2 - l1 + 2) * (k4 - l3 + l2 - k2)
                    - (l2 - k2 - j3 - 2) * (j3 + k4 - l3)
                    + zq,
            )
        }
        FiveSumFormula::Dpsb => {
            for ([x, y, z], s) in [
                ([j3, j4, l3], 1),
                ([k4, k3, l3], 1),
                ([k2, k3, l2], 1),
                ([k1, j4, l4], 1),
                ([j1, j2, l1], -1),
                ([k2, k1, l1], -1),
                ([j3, j2, l2], -1),
                ([k4, j1, l4], -1),
            ] {
                nabla_into(&mut rad, x, y, z, s);
            }
            (
                j1 + j3 + j4 + k2 - k3 - k4 + l2 - l3 + l4,
                (j1 + k2 - l1 + 2) * (l2 + k2 - l3 + k4 + 2)
                    - (l2 + k2 - j3 + 2) * (j3 + k4 - l3 + 2)
                    + zq,
            )
        }
    };
    let mut acc = eng.acc_new();
    match formula {
        FiveSumFormula::Dpsa => {
            for z1 in 0..=ha(k1 - k2 + l1).min(ha(l1 - j1 + j2)).min(l1) {
                for z2 in 0..=ha(j2 + j3 - l2).min(ha(k2 + k3 - l2)) {
                    for z3 in 0..=ha(k3 + l3 - k4).min(ha(l3 - j3 + j4)).min(l3) {
                        for z4 in 0..=ha(k1 + j4 - l4) {
                            let u_hi = (ha(j1 + k4 - l4) - z1 - z4)
                                .max(ha(j1 - j3 - l1 + l2) + z2)
                                .max(ha(2 * j1 - k1 + k2 - l1));
                            for u in -z1..=u_hi {
                                let ph = -2 * z2 * (j1 + j3 + k2 + k4 - l1 - l3 + 2 * z3 + 2)
                                    + 2 * z3 * (l1 - l2 - j1 + j3)
                                    + 2 * u * (k4 - k2 - l3 + l2 + 2 * z2 + 2 * z3);
                                eng.acc_add(
                                    &mut acc,
                                    Term::simple(
                                        (z3 + z4 + u).rem_euclid(2) == 1,
                                        ph,
                                        &[
                                            ha(j1 + j2 - l1) + z1,
                                            l1 - z1,
                                            ha(l2 + j2 - j3) + z2,
                                            ha(l2 + k3 - k2) + z2,
                                            ha(k3 + k4 - l3) + z3,
                                            ha(j3 + j4 - l3) + z3,
                                            l3 - z3,
                                            ha(j4 + l4 - k1) + z4,
                                            ha(j1 + l4 - k4) + z4,
                                            ha(j1 + k1 + k2 + k4 - l1 - l4) - z4 - u,
                                            ha(2 * j1 - k1 + k2 - l1) - u,
                                        ],
                                        &[
                                            z1,
                                            z2,
                                            z3,
                                            z4,
                                            ha(k1 - k2 + l1) - z1,
                                            ha(l1 - j1 + j2) - z1,
                                            ha(j2 + j3 - l2) - z2,
                                            ha(k2 + k3 - l2) - z2,
                                            l2 + z2 + 1,
                                            l4 + z4 + 1,
                                            ha(k3 + l3 - k4) - z3,
                                            ha(l3 - j3 + j4) - z3,
                                            ha(k1 + j4 - l4) - z4,
                                            ha(l2 - l3 - k2 + k4) + z2 + z3,
                                            ha(j1 - k1 + k2 - k4 - l1 + l4) + z1 + z4,
                                            u + z1,
                                            ha(j1 + k4 - l4) - z1 - z4 - u,
                                            ha(j1 - j3 - l1 + l2) + z2 - u,
                                            ha(j1 + j3 + k2 + k4 - l1 - l3) + z3 - u + 1,
                                        ],
                                    ),
                                );
                            }
                        }
                    }
                }
            }
        }
        FiveSumFormula::Dpsb => {
            for z1 in 0..=ha(k1 - k2 + l1).min(ha(l1 - j1 + j2)).min(l1) {
                for z2 in 0..=ha(l2 + k2 - k3).min(ha(j2 - j3 + l2)).min(l2) {
                    for z3 in 0..=ha(k3 + k4 - l3).min(ha(j3 + j4 - l3)) {
                        for z4 in 0..=ha(k1 + l4 - j4).min(l4) {
                            let u_hi = (ha(j1 - k4 + l4) - z1 - z4)
                                .max(ha(j1 + j3 - l1 - l2) + z2)
                                .max(ha(2 * j1 - k1 + k2 - l1));
                            for u in -z1..=u_hi {
                                let ph = -2 * z2 * (j1 - j3 + k2 - k4 - l1 + l3 + 2 * z3)
                                    - 2 * z3 * (j1 + j3 - l1 - l2)
                                    - 2 * u * (k2 + k4 + l2 - l3 - 2 * z2 - 2 * z3 + 2);
                                eng.acc_add(
                                    &mut acc,
                                    Term::simple(
                                        (z2 + z3 + z4 + u).rem_euclid(2) == 1,
                                        ph,
                                        &[
                                            ha(j1 + j2 - l1) + z1,
                                            l1 - z1,
                                            ha(j2 + j3 - l2) + z2,
                                            l2 - z2,
                                            ha(k3 - k4 + l3) + z3,
                                            ha(j4 - j3 + l3) + z3,
                                            l4 - z4,
                                            ha(j1 + k4 - l4) + z4,
                                            ha(k2 + k4 + l2 - l3) - z2 - z3,
                                            ha(2 * j1 - k1 + k2 - l1) - u,
                                            ha(j1 + k1 + k2 - k4 - l1 + l4) - z4 - u,
                                        ],
                                        &[
                                            z1,
                                            z2,
                                            z3,
                                            z4,
                                            ha(k1 - k2 + l1) - z1,
                                            ha(l1 - j1 + j2) - z1,
                                            ha(l2 + k2 - k3) - z2,
                                            ha(j2 - j3 + l2) - z2,
                                            ha(l2 + k2 + k3) - z2 + 1,
                                            ha(k3 + k4 - l3) - z3,
                                            ha(j3 + j4 - l3) - z3,
                                            l3 + z3 + 1,
                                            ha(k1 + l4 - j4) - z4,
                                            ha(j1 - k1 + k2 + k4 - l1 - l4) + z1 + z4,
                                            ha(k1 + l4 + j4) - z4 + 1,
                                            u + z1,
                                            ha(j1 - k4 + l4) - z1 - z4 - u,
                                            ha(j1 + j3 - l1 - l2) + z2 - u,
                                            ha(j1 - j3 + k2 - k4 - l1 + l3) + z3 - u,
                                        ],
                                    ),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    let (sum, count) = eng.acc_finish(acc);
    let coeff = eng.mul(&sum, &eng.q_power(phase_q));
    (
        Val::new(eng, coeff, rad, ha(sign_twice).rem_euclid(2)),
        count,
    )
}

pub fn twelvej1_fivesum(t: &Twelvej1Labels, formula: FiveSumFormula) -> SymbolValue {
    let eng = SymEngine::new();
    to_symbol_value(&twelvej1_fivesum_in(&eng, t, formula).0)
}

/// The 16 symmetry images (phase-free): generated by the cyclic strip
/// shift and the reversal.
pub fn twelvej1_symmetry_orbit(t: &Twelvej1Labels) -> Vec<Twelvej1Labels> {
    fn compose(a: &[usize; 12], b: &[usize; 12]) -> [usize; 12] {
        let mut out = [0usize; 12];
        for i in 0..12 {
            out[i] = a[b[i]];
        }
        out
    }
    let id: [usize; 12] = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11];
    // cyclic shift: (j1..j4; l1..l4; k1..k4) ->
    //   (j2, j3, j4, k1; l2, l3, l4, l1; k2, k3, k4, j1)
    let shift: [usize; 12] = [1, 2, 3, 8, 5, 6, 7, 4, 9, 10, 11, 0];
    // reversal: -> (k1, j4, j3, j2; l4, l3, l2, l1; j1, k4, k3, k2)
    let rev: [usize; 12] = [8, 3, 2, 1, 7, 6, 5, 4, 0, 11, 10, 9];
    let gens = [shift, rev];
    let mut group = vec![id];
    loop {
        let mut added = false;
        let snapshot = group.clone();
        for g in &snapshot {
            for gen in &gens {
                let c = compose(gen, g);
                if !group.contains(&c) {
                    group.push(c);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    let slots = t.slots();
    group
        .into_iter()
        .map(|p| {
            let mut s = [0i64; 12];
            for i in 0..12 {
                s[i] = slots[p[i]];
            }
            Twelvej1Labels::from_slots(s)
        })
        .collect()
}

/// Stretched reductions of the first kind.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Stretched1Formula {
    Dpsta,
    Dpstb,
    Dvstb1,
    Dvstb2,
    Dvsta,
    Dvpors,
}

impl Stretched1Formula {
    pub const ALL: [Stretched1Formula; 6] = [
        Stretched1Formula::Dpsta,
        Stretched1Formula::Dpstb,
        Stretched1Formula::Dvstb1,
        Stretched1Formula::Dvstb2,
        Stretched1Formula::Dvsta,
        Stretched1Formula::Dvpors,
    ];
    pub fn name(self) -> &'static str {
        match self {
            Stretched1Formula::Dpsta => "dpsta",
            Stretched1Formula::Dpstb => "dpstb",
            Stretched1Formula::Dvstb1 => "dvstb1",
            Stretched1Formula::Dvstb2 => "dvstb2",
            Stretched1Formula::Dvsta => "dvsta",
            Stretched1Formula::Dvpors => "dvpors",
        }
    }

    pub fn applies(self, t: &Twelvej1Labels) -> bool {
        let [j1, j2, j3, _j4] = t.j;
        let [l1, _l2, l3, l4] = t.l;
        let [k1, k2, k3, k4] = t.k;
        match self {
            Stretched1Formula::Dpsta => l4 == k4 + j1,
            Stretched1Formula::Dpstb => k4 == l4 + j1,
            Stretched1Formula::Dvstb1 => k4 == l4 + j1 && j1 == l1 + j2,
            Stretched1Formula::Dvstb2 => k4 == l4 + j1 && l3 == k3 + k4,
            Stretched1Formula::Dvsta => l1 == j1 + j2 && k2 == k1 + l1,
            Stretched1Formula::Dvpors => j3 == j1 + k1 + k3,
        }
    }
}

impl std::str::FromStr for Stretched1Formula {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Stretched1Formula::ALL
            .into_iter()
            .find(|v| v.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::MalformedInput(format!("unknown stretched formula {s:?}")))
    }
}

/// Evaluates the chosen stretched reduction.
pub fn twelvej1_stretched_in<E: Engine>(
    eng: &E,
    t: &Twelvej1Labels,
    formula: Stretched1Formula,
) -> Result<(Val<E>, u64)> {
    if !formula.applies(t) {
        return Err(Error::StretchViolation(format!(
            "{} conditions not met",
            formula.name()
        )));
    }
    if !t.is_triangular() {
        return Err(Error::StretchViolation("labels must be triangular".into()));
    }
    let [j1, j2, j3, j4] = t.j;
    let [l1, l2, l3, l4] = t.l;
    let [k1, k2, k3, k4] = t.k;
    let zq = fourz(j1, j2, j3, j4) + fourz(k1, k2, k3, k4);
    match formula {
        Stretched1Formula::Dpsta => {
            let mut rad = FactMonomial::one();
            for ([x, y, z], s) in [
                ([j3, j2, l2], 1),
                ([k2, k3, l2], 1),
                ([l4, j4, k1], 1),
                ([j1, j2, l1], -1),
                ([k2, k1, l1], -1),
                ([j3, j4, l3], -1),
                ([k4, k3, l3], -1),
            ] {
                nabla_into(&mut rad, x, y, z, s);
            }
            rad.push(k4, 1);
            rad.push(j1, 1);
            rad.push(l4 + 1, -1);
            let phase = -(j1 + k2 - l1 + 2) * (k4 - k2 + l2 - l3)
                - (l2 - k2 - j3 - 2) * (j3 + k4 - l3)
                + zq;
            let mut acc = eng.acc_new();
            for z1 in 0..=ha(k1 - k2 + l1).min(ha(l1 - j1 + j2)).min(l1) {
                for z2 in 0..=ha(j2 + j3 - l2).min(ha(k2 + k3 - l2)) {
                    for z3 in 0..=ha(k3 + l3 - k4).min(ha(l3 - j3 + j4)).min(l3) {
                        let ph = 2 * z3 * (l1 - l2 - j1 + j3)
                            - 2 * z2 * (j3 + k2 - l1 - l3 + l4 + 2 * z3 + 2)
                            - 2 * z1 * (l2 - l3 - k2 + k4 + 2 * z2 + 2 * z3);
                        eng.acc_add(
                            &mut acc,
                            Term::simple(
                                (z1 + z3) % 2 == 1,
                                ph,
                                &[
                                    ha(j1 + j2 - l1) + z1,
                                    ha(k1 + k2 - l1) + z1,
                                    l1 - z1,
                                    ha(l2 + j2 - j3) + z2,
                                    ha(l2 + k3 - k2) + z2,
                                    ha(k3 + k4 - l3) + z3,
                                    ha(j3 + j4 - l3) + z3,
                                    l3 - z3,
                                ],
                                &[
                                    z1,
                                    z2,
                                    z3,
                                    ha(k1 - k2 + l1) - z1,
                                    ha(l1 - j1 + j2) - z1,
                                    ha(j2 + j3 - l2) - z2,
                                    ha(k2 + k3 - l2) - z2,
                                    l2 + z2 + 1,
                                    ha(k3 + l3 - k4) - z3,
                                    ha(l3 - j3 + j4) - z3,
                                    ha(j1 - j3 - l1 + l2) + z1 + z2,
                                    ha(l2 - l3 - k2 + k4) + z2 + z3,
                                    ha(j3 + k2 - l1 - l3 + l4) + z1 + z3 + 1,
                                ],
                            ),
                        );
                    }
                }
            }
            let (sum, n) = eng.acc_finish(acc);
            let coeff = eng.mul(&sum, &eng.q_power(phase));
            Ok((
                Val::new(
                    eng,
                    coeff,
                    rad,
                    ha(k1 + k2 - k3 - j2 + j3 + j4 - l4).rem_euclid(2),
                ),
                n,
            ))
        }
        Stretched1Formula::Dpstb => {
            let mut rad = FactMonomial::one();
            for ([x, y, z], s) in [
                ([j3, j4, l3], 1),
                ([k4, k3, l3], 1),
                ([k2, k3, l2], 1),
                ([j1, j2, l1], -1),
                ([k2, k1, l1], -1),
                ([j3, j2, l2], -1),
                ([l4, k1, j4], -1),
            ] {
                nabla_into(&mut rad, x, y, z, s);
            }
            rad.push(j1, 1);
            rad.push(l4, 1);
            rad.push(k4 + 1, -1);
            let phase = (j1 + k2 - l1 + 2) * (k2 + k4 + l2 - l3 + 2)
                - (l2 + k2 - j3 + 2) * (j3 - l3 + k4 + 2)
                + zq;
            let mut acc = eng.acc_new();
            for z1 in 0..=ha(k1 - k2 + l1).min(ha(l1 - j1 + j2)).min(l1) {
                for z2 in 0..=ha(l2 + k2 - k3).min(ha(j2 - j3 + l2)).min(l2) {
                    for z3 in 0..=ha(k3 + k4 - l3).min(ha(j3 + j4 - l3)) {
                        let ph = 2 * z1 * (k2 + k4 + l2 - l3 - 2 * z2 - 2 * z3 + 2)
                            - 2 * z2 * (k2 - j3 - l1 + l3 - l4 + 2 * z3)
                            - 2 * z3 * (j1 + j3 - l1 - l2);
                        eng.acc_add(
                            &mut acc,
                            Term::simple(
                                (z1 + z2 + z3) % 2 == 1,
                                ph,
                                &[
                                    ha(j1 + j2 - l1) + z1,
                                    ha(k1 + k2 - l1) + z1,
                                    l1 - z1,
                                    ha(j2 + j3 - l2) + z2,
                                    l2 - z2,
                                    ha(k3 - k4 + l3) + z3,
                                    ha(j4 - j3 + l3) + z3,
                                    ha(k2 + k4 + l2 - l3) - z2 - z3,
                                ],
                                &[
                                    z1,
                                    z2,
                                    z3,
                                    ha(k1 - k2 + l1) - z1,
                                    ha(l1 - j1 + j2) - z1,
                                    ha(l2 + k2 - k3) - z2,
                                    ha(j2 - j3 + l2) - z2,
                                    ha(l2 + k2 + k3) - z2 + 1,
                                    ha(k3 + k4 - l3) - z3,
                                    ha(j3 + j4 - l3) - z3,
                                    l3 + z3 + 1,
                                    ha(j1 + j3 - l1 - l2) + z1 + z2,
                                    ha(k2 - j3 - l1 + l3 - l4) + z1 + z3,
                                ],
                            ),
                        );
                    }
                }
            }
            let (sum, n) = eng.acc_finish(acc);
            let coeff = eng.mul(&sum, &eng.q_power(phase));
            Ok((
                Val::new(
                    eng,
                    coeff,
                    rad,
                    ha(j3 + j4 - l3 + l2 + k2 - k3).rem_euclid(2),
                ),
                n,
            ))
        }
        Stretched1Formula::Dvstb1 => {
            // proportional to a 9j at inverted q
            let inv = eng.inverted();
            let nine = NinejLabels::from_twice([
                k4,
                k3,
                l3,
                j2,
                l2,
                j3,
                l1 + l4,
                k2,
                j4,
            ])
            .map_err(|_| Error::StretchViolation("invalid reduced labels".into()))?;
            let (nv, n) = ninej_triple_in(&inv, &nine, TripleSumFormula::Trsa);
            let mut rad = FactMonomial::one();
            nabla_into(&mut rad, l1 + l4, j4, k2, 1);
            nabla_into(&mut rad, l1, k1, k2, -1);
            nabla_into(&mut rad, l4, k1, j4, -1);
            rad.push(l1, 1);
            rad.push(l4, 1);
            rad.push(l1 + l4, -1);
            rad.push(j1 + 1, -1);
            rad.push(j1, 1); // 1/[2j1+1]
            let phase = zq - (-(l2 * (l2 + 2) + l3 * (l3 + 2) + (l1 + l4) * (l1 + l4 + 2)));
            let pre = Val::new(
                eng,
                eng.q_power(phase),
                rad,
                ha(j3 + j4 - l3 + l2 + k2 - k3).rem_euclid(2),
            );
            let nval = Val {
                coeff: nv.coeff,
                radicand: nv.radicand,
            };
            Ok((pre.mul(eng, &nval), n))
        }
        Stretched1Formula::Dvstb2 => {
            let inv = eng.inverted();
            let nine = NinejLabels::from_twice([
                j1,
                k3,
                j1 + k3,
                j2,
                l2,
                j3,
                l1,
                k2,
                k1,
            ])
            .map_err(|_| Error::StretchViolation("invalid reduced labels".into()))?;
            let (nv, n) = ninej_triple_in(&inv, &nine, TripleSumFormula::Trsa);
            let mut rad = FactMonomial::one();
            nabla_into(&mut rad, l3, j3, j4, 1);
            nabla_into(&mut rad, l4, k1, j4, -1);
            nabla_into(&mut rad, j1 + k3, j3, k1, -1);
            rad.push(l4, 1);
            rad.push(j1 + k3 + 1, 1);
            rad.push(l3 + 1, -1);
            rad.push(k4 + 1, -1);
            rad.push(k4, 1); // 1/[2k4+1]
            let phase = zq - (-(l2 * (l2 + 2) + (j1 + k3) * (j1 + k3 + 2) + l1 * (l1 + 2)));
            let pre = Val::new(
                eng,
                eng.q_power(phase),
                rad,
                ha(j3 + j4 - l4 - l2 - k2 - j2 + l1).rem_euclid(2),
            );
            let nval = Val {
                coeff: nv.coeff,
                radicand: nv.radicand,
            };
            Ok((pre.mul(eng, &nval), n))
        }
        Stretched1Formula::Dvsta => {
            let (sj, n) = sixj_in(
                eng,
                [j3, j4, l3, k4, k3, k1 + j1],
                SixjVariant::B,
                false,
            );
            let mut rad = FactMonomial::one();
            nabla_into(&mut rad, k2, k3, l2, 1);
            nabla_into(&mut rad, k1 + j1, j4, k4, 1);
            for (x, y, z) in [(j1, k4, l4), (j2, l2, j3), (k1, j4, l4), (k1 + j1, j3, k3)] {
                nabla_into(&mut rad, x, y, z, -1);
            }
            rad.push(j2, 1);
            rad.push(j1, 1);
            rad.push(k1, 1);
            rad.push(k2 + 1, -1);
            rad.push(l1 + 1, -1);
            rad.push(l1, 1); // 1/[2l1+1]
            let phase = 2 * j1 * k1
                + fourz3(j2, j3, j4)
                + fourz3(k2, k3, k4);
            let pre = Val::new(
                eng,
                eng.q_power(phase),
                rad,
                ha(k1 + j3 - l3 - l4 + 2 * k3).rem_euclid(2),
            );
            Ok((pre.mul(eng, &sj), n))
        }
        Stretched1Formula::Dvpors => {
            let mut rad = FactMonomial::one();
            nabla_into(&mut rad, j3, j4, l3, 1);
            nabla_into(&mut rad, j3, j2, l2, 1);
            for (x, y, z) in [
                (j1, j2, l1),
                (k1, k2, l1),
                (j1, k4, l4),
                (k1, j4, l4),
                (k3, k2, l2),
                (k3, k4, l3),
            ] {
                nabla_into(&mut rad, x, y, z, -1);
            }
            let phase = 2 * j1 * k1 + fourz3(j2, j3, j4) + fourz3(k2, k3, k4);
            let mut acc = eng.acc_new();
            eng.acc_add(
                &mut acc,
                Term::simple(false, phase, &[j1, k1, k3], &[j3 + 1]),
            );
            let (cf, n) = eng.acc_finish(acc);
            Ok((
                Val::new(
                    eng,
                    cf,
                    rad,
                    ha(j2 + j4 - l1 - k1 - j1 - l4).rem_euclid(2),
                ),
                n,
            ))
        }
    }
}

/// Z over three labels, quarter units.
fn fourz3(tx: i64, ty: i64, tz: i64) -> i64 {
    -(tx * (tx + 2) + ty * (ty + 2) + tz * (tz + 2))
}

pub fn twelvej1_stretched(t: &Twelvej1Labels, formula: Stretched1Formula) -> Result<SymbolValue> {
    let eng = SymEngine::new();
    Ok(to_symbol_value(&twelvej1_stretched_in(&eng, t, formula)?.0))
}
