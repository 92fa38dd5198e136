//! Evaluation engines. Formula code is written once, generic over an
//! engine: symbolic in q, exact scalar at a fixed rational q, or a pure
//! term counter for the benchmark statistics.
//!
//! Every summation in the crate flows through the same accumulator
//! interface: a term is a signed q-power times a ratio of q-factorials and
//! q-numbers. Terms whose denominator factorial arguments go negative fall
//! outside the summation window; terms with a negative numerator factorial
//! argument or a vanishing numerator q-number contribute zero and are
//! skipped. This reproduces the summation ranges of the printed formulas
//! without deriving any window by hand.

use std::sync::RwLock;

use num_rational::BigRational;
use num_traits::One;

use super::factmono::FactMonomial;
use super::field::FieldCtx;
use super::laurent::QExponent;
use super::qnum::{q_factorial, q_factorial_z, q_number_z};
use super::qrat::QRat;
use super::symbol::SymbolValue;
use super::zpoly::{BigPoly, ZPoly};

/// One summand: sign * q^(phase/4) * prod [nf]! * prod [nq] /
/// (prod [df]! * prod [dq]).
#[derive(Debug)]
pub struct Term<'a> {
    pub neg: bool,
    pub phase_quarters: i64,
    pub num_fact: &'a [i64],
    pub den_fact: &'a [i64],
    pub num_qnum: &'a [i64],
    pub den_qnum: &'a [i64],
}

impl<'a> Term<'a> {
    pub fn simple(neg: bool, phase_quarters: i64, num_fact: &'a [i64], den_fact: &'a [i64]) -> Self {
        Term {
            neg,
            phase_quarters,
            num_fact,
            den_fact,
            num_qnum: &[],
            den_qnum: &[],
        }
    }
}

/// What became of a submitted term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermFate {
    /// A denominator factorial argument was negative: outside the window.
    Outside,
    /// Structurally zero (negative numerator factorial or [0] factor).
    Zero,
    /// Accepted and accumulated.
    Counted,
    /// A denominator q-number was [0]; the sum is ill-formed.
    BadDenominator,
}

/// Normalized view of an accepted term (all factorial arguments
/// nonnegative).
struct NormTerm {
    extra_neg: bool,
    num: Vec<i64>,
    den: Vec<i64>,
}

fn classify(t: &Term<'_>) -> (TermFate, Option<NormTerm>) {
    if t.den_qnum.iter().any(|&x| x == 0) {
        return (TermFate::BadDenominator, None);
    }
    if t.den_fact.iter().any(|&x| x < 0) {
        return (TermFate::Outside, None);
    }
    if t.num_fact.iter().any(|&x| x < 0) || t.num_qnum.iter().any(|&x| x == 0) {
        return (TermFate::Zero, None);
    }
    (
        TermFate::Counted,
        Some(NormTerm {
            extra_neg: false,
            num: t.num_fact.to_vec(),
            den: t.den_fact.to_vec(),
        }),
    )
}

pub trait Engine: Sync + Sized {
    /// Coefficient domain: a rational function of q under this engine.
    type C: Clone + Send + Sync;
    type Acc;

    fn zero(&self) -> Self::C;
    fn one(&self) -> Self::C;
    fn is_zero(&self, a: &Self::C) -> bool;
    fn add(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn mul(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn neg(&self, a: &Self::C) -> Self::C;
    fn div(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn from_rational(&self, r: &BigRational) -> Self::C;
    /// q^(quarters/4) under this engine (inversion-aware).
    fn q_power(&self, quarters: i64) -> Self::C;
    fn qnum(&self, x: i64) -> Self::C;
    fn qfact(&self, n: i64) -> Self::C;
    fn eq(&self, a: &Self::C, b: &Self::C) -> bool;
    fn sign(&self, a: &Self::C) -> i8;
    /// Exact square root of a coefficient, when representable.
    fn sqrt(&self, a: &Self::C) -> Option<Self::C>;
    /// The engine evaluating at q^(-1) instead of q.
    fn inverted(&self) -> Self;

    fn acc_new(&self) -> Self::Acc;
    fn acc_add(&self, acc: &mut Self::Acc, t: Term<'_>) -> TermFate;
    fn acc_finish(&self, acc: Self::Acc) -> (Self::C, u64);

    fn render(&self, a: &Self::C) -> String;
}

/// A symbol value under an engine: coeff * sqrt(radicand).
pub struct Val<E: Engine> {
    pub coeff: E::C,
    pub radicand: FactMonomial,
}

impl<E: Engine> Clone for Val<E> {
    fn clone(&self) -> Self {
        Val {
            coeff: self.coeff.clone(),
            radicand: self.radicand.clone(),
        }
    }
}

impl<E: Engine> Val<E> {
    pub fn zero(eng: &E) -> Self {
        Val {
            coeff: eng.zero(),
            radicand: FactMonomial::one(),
        }
    }

    pub fn one(eng: &E) -> Self {
        Val {
            coeff: eng.one(),
            radicand: FactMonomial::one(),
        }
    }

    pub fn new(eng: &E, coeff: E::C, radicand: FactMonomial, phase_exp: i64) -> Self {
        if eng.is_zero(&coeff) {
            return Val::zero(eng);
        }
        let coeff = if phase_exp.rem_euclid(2) == 1 {
            eng.neg(&coeff)
        } else {
            coeff
        };
        Val { coeff, radicand }
    }

    pub fn is_zero(&self, eng: &E) -> bool {
        eng.is_zero(&self.coeff)
    }

    pub fn mul(&self, eng: &E, other: &Val<E>) -> Val<E> {
        if self.is_zero(eng) || other.is_zero(eng) {
            return Val::zero(eng);
        }
        let mut coeff = eng.mul(&self.coeff, &other.coeff);
        let rad = self.radicand.mul(&other.radicand);
        let (even, rest) = rad.split_square();
        for (n, e) in even.powers() {
            let f = eng.qfact(n);
            for _ in 0..e.unsigned_abs() {
                coeff = if e > 0 {
                    eng.mul(&coeff, &f)
                } else {
                    eng.div(&coeff, &f)
                };
            }
        }
        Val {
            coeff,
            radicand: rest,
        }
    }

    pub fn recip(&self, eng: &E) -> Val<E> {
        assert!(!self.is_zero(eng), "reciprocal of zero");
        let r = expand_radicand_in(eng, &self.radicand);
        Val {
            coeff: eng.div(&eng.one(), &eng.mul(&self.coeff, &r)),
            radicand: self.radicand.clone(),
        }
    }

    pub fn div(&self, eng: &E, other: &Val<E>) -> Val<E> {
        self.mul(eng, &other.recip(eng))
    }

    pub fn neg(&self, eng: &E) -> Val<E> {
        Val {
            coeff: eng.neg(&self.coeff),
            radicand: self.radicand.clone(),
        }
    }

    pub fn add(&self, eng: &E, other: &Val<E>) -> Option<Val<E>> {
        if self.is_zero(eng) {
            return Some(other.clone());
        }
        if other.is_zero(eng) {
            return Some(self.clone());
        }
        let mut common = FactMonomial::one();
        for (n, ea) in self.radicand.powers() {
            let eb = other
                .radicand
                .powers()
                .find(|&(m, _)| m == n)
                .map(|(_, e)| e)
                .unwrap_or(0);
            common.push(n, ea.min(eb));
        }
        let left = self.radicand.mul(&common.inv());
        let right = other.radicand.mul(&common.inv());
        let ls = eng.sqrt(&expand_radicand_in(eng, &left))?;
        let rs = eng.sqrt(&expand_radicand_in(eng, &right))?;
        let coeff = eng.add(&eng.mul(&self.coeff, &ls), &eng.mul(&other.coeff, &rs));
        Some(Val::new(eng, coeff, common, 0))
    }

    /// Equality as functions of q: squares agree and signs agree.
    pub fn equal(&self, eng: &E, other: &Val<E>) -> bool {
        if self.is_zero(eng) {
            return other.is_zero(eng);
        }
        if other.is_zero(eng) {
            return false;
        }
        let mut pos = FactMonomial::one();
        let mut neg = FactMonomial::one();
        {
            let mut diff = self.radicand.clone();
            diff = diff.mul(&other.radicand.inv());
            for (n, e) in diff.powers() {
                if e > 0 {
                    pos.push(n, e);
                } else {
                    neg.push(n, -e);
                }
            }
        }
        let lhs = eng.mul(
            &eng.mul(&self.coeff, &self.coeff),
            &expand_radicand_in(eng, &pos),
        );
        let rhs = eng.mul(
            &eng.mul(&other.coeff, &other.coeff),
            &expand_radicand_in(eng, &neg),
        );
        if !eng.eq(&lhs, &rhs) {
            return false;
        }
        eng.sign(&self.coeff) == eng.sign(&other.coeff)
    }
}

/// Expands a factorial monomial into the engine's coefficient domain.
pub fn expand_radicand_in<E: Engine>(eng: &E, m: &FactMonomial) -> E::C {
    let mut out = eng.one();
    for (n, e) in m.powers() {
        let f = eng.qfact(n);
        for _ in 0..e.unsigned_abs() {
            out = if e > 0 {
                eng.mul(&out, &f)
            } else {
                eng.div(&out, &f)
            };
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Symbolic engine
// ---------------------------------------------------------------------------

/// Symbolic evaluation: coefficients are exact rational functions of
/// q^(1/4).
#[derive(Clone, Default)]
pub struct SymEngine {
    invert: bool,
}

impl SymEngine {
    pub fn new() -> Self {
        SymEngine { invert: false }
    }
}

pub struct SymAcc {
    num: BigPoly,
    den: std::collections::BTreeMap<i64, i64>,
    count: u64,
}

impl Engine for SymEngine {
    type C = QRat;
    type Acc = SymAcc;

    fn zero(&self) -> QRat {
        QRat::zero()
    }
    fn one(&self) -> QRat {
        QRat::one()
    }
    fn is_zero(&self, a: &QRat) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &QRat, b: &QRat) -> QRat {
        a.add(b)
    }
    fn mul(&self, a: &QRat, b: &QRat) -> QRat {
        a.mul(b)
    }
    fn neg(&self, a: &QRat) -> QRat {
        a.neg()
    }
    fn div(&self, a: &QRat, b: &QRat) -> QRat {
        a.div(b)
    }
    fn from_rational(&self, r: &BigRational) -> QRat {
        QRat::from_rational(r.clone())
    }
    fn q_power(&self, quarters: i64) -> QRat {
        let q = if self.invert { -quarters } else { quarters };
        QRat::from_poly(super::laurent::QLaurent::monomial(
            QExponent::from_quarters(q),
            BigRational::one(),
        ))
    }
    fn qnum(&self, x: i64) -> QRat {
        QRat::from_poly(super::qnum::q_number(x))
    }
    fn qfact(&self, n: i64) -> QRat {
        QRat::from_poly(q_factorial(n).expect("nonnegative factorial argument"))
    }
    fn eq(&self, a: &QRat, b: &QRat) -> bool {
        a == b
    }
    fn sign(&self, a: &QRat) -> i8 {
        a.sign()
    }
    fn sqrt(&self, a: &QRat) -> Option<QRat> {
        let num = a.num().sqrt()?;
        let den = a.den().sqrt()?;
        Some(QRat::new(num, den))
    }
    fn inverted(&self) -> Self {
        SymEngine {
            invert: !self.invert,
        }
    }

    fn acc_new(&self) -> SymAcc {
        SymAcc {
            num: BigPoly::zero(),
            den: Default::default(),
            count: 0,
        }
    }

    fn acc_add(&self, acc: &mut SymAcc, t: Term<'_>) -> TermFate {
        let (fate, norm) = classify(&t);
        let Some(norm) = norm else {
            return fate;
        };
        // denominator exponent vector over the q-number basis
        let mut d: std::collections::BTreeMap<i64, i64> = Default::default();
        for &b in &norm.den {
            for k in 2..=b {
                *d.entry(k).or_insert(0) += 1;
            }
        }
        let mut extra_neg = norm.extra_neg;
        for &x in t.den_qnum {
            if x.abs() >= 2 {
                *d.entry(x.abs()).or_insert(0) += 1;
            }
            if x < 0 {
                extra_neg = !extra_neg;
            }
            // |x| == 1 contributes [1] = 1
        }
        // grow the common denominator, rescaling what has accumulated
        for (&k, &e) in &d {
            let have = acc.den.get(&k).copied().unwrap_or(0);
            if e > have {
                if !acc.num.is_zero() {
                    let factor = q_number_z(k).to_big();
                    for _ in 0..(e - have) {
                        acc.num = acc.num.mul(&factor);
                    }
                }
                acc.den.insert(k, e);
            }
        }
        // numerator product: factorials, q-numbers, slack against D
        let mut prod = ZPoly::constant(1);
        let mut big: Option<BigPoly> = None;
        let push = |f: ZPoly, big: &mut Option<BigPoly>, prod: &mut ZPoly| {
            if let Some(b) = big {
                *b = b.mul(&f.to_big());
            } else {
                match prod.mul(&f) {
                    Some(p) => *prod = p,
                    None => {
                        *big = Some(prod.to_big().mul(&f.to_big()));
                    }
                }
            }
        };
        for &n in &norm.num {
            push(
                q_factorial_z(n).expect("classified term has nonnegative numerators"),
                &mut big,
                &mut prod,
            );
        }
        let mut neg = t.neg ^ extra_neg;
        for &x in t.num_qnum {
            if x < 0 {
                neg = !neg;
            }
            push(q_number_z(x.abs()), &mut big, &mut prod);
        }
        for (&k, &e) in &acc.den {
            let have = d.get(&k).copied().unwrap_or(0);
            for _ in 0..(e - have) {
                push(q_number_z(k), &mut big, &mut prod);
            }
        }
        let phase = if self.invert {
            -t.phase_quarters
        } else {
            t.phase_quarters
        };
        let mut term = match big {
            Some(b) => b,
            None => prod.to_big(),
        };
        term.lo += phase;
        acc.num.add_assign_signed(&term, neg);
        acc.count += 1;
        TermFate::Counted
    }

    fn acc_finish(&self, acc: SymAcc) -> (QRat, u64) {
        if acc.num.is_zero() {
            return (QRat::zero(), acc.count);
        }
        let mut den = ZPoly::constant(1);
        let mut big: Option<BigPoly> = None;
        for (&k, &e) in &acc.den {
            for _ in 0..e {
                let f = q_number_z(k);
                if let Some(b) = &mut big {
                    *b = b.mul(&f.to_big());
                } else {
                    match den.mul(&f) {
                        Some(p) => den = p,
                        None => big = Some(den.to_big().mul(&f.to_big())),
                    }
                }
            }
        }
        let den_q = match big {
            Some(b) => b.to_qlaurent(),
            None => den.to_qlaurent(),
        };
        (QRat::new(acc.num.to_qlaurent(), den_q), acc.count)
    }

    fn render(&self, a: &QRat) -> String {
        a.to_string()
    }
}

/// Converts a symbolic value into the public SymbolValue type.
pub fn to_symbol_value(v: &Val<SymEngine>) -> SymbolValue {
    SymbolValue::new(v.coeff.clone(), v.radicand.clone(), 0)
}

pub fn from_symbol_value(v: &SymbolValue) -> Val<SymEngine> {
    Val {
        coeff: v.coeff().clone(),
        radicand: v.radicand().clone(),
    }
}

// ---------------------------------------------------------------------------
// Scalar engine at fixed rational q
// ---------------------------------------------------------------------------

/// Exact scalar evaluation at a fixed rational q > 0, in Q(q^(1/4)).
pub struct ScalarEngine<F: FieldCtx> {
    pub ctx: F,
    invert: bool,
    fact: RwLock<Vec<F::El>>,
}

impl<F: FieldCtx + Clone> ScalarEngine<F> {
    pub fn new(ctx: F) -> Self {
        ScalarEngine {
            ctx,
            invert: false,
            fact: RwLock::new(Vec::new()),
        }
    }
}

impl<F: FieldCtx + Clone> Engine for ScalarEngine<F> {
    type C = F::El;
    type Acc = (F::El, u64);

    fn zero(&self) -> F::El {
        self.ctx.zero()
    }
    fn one(&self) -> F::El {
        self.ctx.one()
    }
    fn is_zero(&self, a: &F::El) -> bool {
        self.ctx.is_zero(a)
    }
    fn add(&self, a: &F::El, b: &F::El) -> F::El {
        self.ctx.add(a, b)
    }
    fn mul(&self, a: &F::El, b: &F::El) -> F::El {
        self.ctx.mul(a, b)
    }
    fn neg(&self, a: &F::El) -> F::El {
        self.ctx.neg(a)
    }
    fn div(&self, a: &F::El, b: &F::El) -> F::El {
        self.ctx.mul(a, &self.ctx.inv(b))
    }
    fn from_rational(&self, r: &BigRational) -> F::El {
        self.ctx.from_rat(r)
    }
    fn q_power(&self, quarters: i64) -> F::El {
        let q = if self.invert { -quarters } else { quarters };
        self.ctx.t_power(q)
    }
    fn qnum(&self, x: i64) -> F::El {
        // [x] is q <-> 1/q invariant: evaluate directly
        let n = x.abs();
        let mut acc = self.ctx.zero();
        for k in 0..n {
            acc = self.ctx.add(&acc, &self.ctx.t_power(4 * (n - 1 - 2 * k)));
        }
        if x < 0 {
            self.ctx.neg(&acc)
        } else {
            acc
        }
    }
    fn qfact(&self, n: i64) -> F::El {
        assert!(n >= 0);
        let n = n as usize;
        {
            let memo = self.fact.read().unwrap();
            if let Some(v) = memo.get(n) {
                return v.clone();
            }
        }
        let mut memo = self.fact.write().unwrap();
        if memo.is_empty() {
            memo.push(self.ctx.one());
        }
        while memo.len() <= n {
            let k = memo.len() as i64;
            let next = self.ctx.mul(memo.last().unwrap(), &self.qnum(k));
            memo.push(next);
        }
        memo[n].clone()
    }
    fn eq(&self, a: &F::El, b: &F::El) -> bool {
        a == b
    }
    fn sign(&self, a: &F::El) -> i8 {
        self.ctx.sign(a)
    }
    fn sqrt(&self, a: &F::El) -> Option<F::El> {
        self.ctx.sqrt_rational(a)
    }
    fn inverted(&self) -> Self {
        ScalarEngine {
            ctx: self.ctx.clone(),
            invert: !self.invert,
            fact: RwLock::new(self.fact.read().unwrap().clone()),
        }
    }

    fn acc_new(&self) -> (F::El, u64) {
        (self.ctx.zero(), 0)
    }

    fn acc_add(&self, acc: &mut (F::El, u64), t: Term<'_>) -> TermFate {
        let (fate, norm) = classify(&t);
        let Some(norm) = norm else {
            return fate;
        };
        let mut v = self.q_power(t.phase_quarters);
        for &n in &norm.num {
            v = self.ctx.mul(&v, &self.qfact(n));
        }
        for &x in t.num_qnum {
            v = self.ctx.mul(&v, &self.qnum(x));
        }
        let mut d = self.ctx.one();
        for &n in &norm.den {
            d = self.ctx.mul(&d, &self.qfact(n));
        }
        for &x in t.den_qnum {
            d = self.ctx.mul(&d, &self.qnum(x));
        }
        v = self.ctx.mul(&v, &self.ctx.inv(&d));
        if t.neg ^ norm.extra_neg {
            v = self.ctx.neg(&v);
        }
        acc.0 = self.ctx.add(&acc.0, &v);
        acc.1 += 1;
        TermFate::Counted
    }

    fn acc_finish(&self, acc: (F::El, u64)) -> (F::El, u64) {
        acc
    }

    fn render(&self, a: &F::El) -> String {
        self.ctx.render(a)
    }
}

// ---------------------------------------------------------------------------
// Counting engine
// ---------------------------------------------------------------------------

/// Counts accepted summand tuples without doing any arithmetic. The
/// "coefficient" is a unit; values built under this engine are meaningless.
#[derive(Clone, Default)]
pub struct CountEngine;

impl Engine for CountEngine {
    type C = ();
    type Acc = u64;

    fn zero(&self) {}
    fn one(&self) {}
    fn is_zero(&self, _: &()) -> bool {
        false
    }
    fn add(&self, _: &(), _: &()) {}
    fn mul(&self, _: &(), _: &()) {}
    fn neg(&self, _: &()) {}
    fn div(&self, _: &(), _: &()) {}
    fn from_rational(&self, _: &BigRational) {}
    fn q_power(&self, _: i64) {}
    fn qnum(&self, _: i64) {}
    fn qfact(&self, _: i64) {}
    fn eq(&self, _: &(), _: &()) -> bool {
        true
    }
    fn sign(&self, _: &()) -> i8 {
        1
    }
    fn sqrt(&self, _: &()) -> Option<()> {
        Some(())
    }
    fn inverted(&self) -> Self {
        CountEngine
    }
    fn acc_new(&self) -> u64 {
        0
    }
    fn acc_add(&self, acc: &mut u64, t: Term<'_>) -> TermFate {
        let (fate, _) = classify(&t);
        if fate == TermFate::Counted {
            *acc += 1;
        }
        fate
    }
    fn acc_finish(&self, acc: u64) -> ((), u64) {
        ((), acc)
    }
    fn render(&self, _: &()) -> String {
        "<count>".into()
    }
}

/// Engine at q = 1 (exact rational arithmetic).
pub fn q_one_engine() -> ScalarEngine<super::field::RationalCtx> {
    ScalarEngine::new(super::field::RationalCtx::q_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn accumulator_matches_direct_sum() {
        // sum_{z=0..2} (-1)^z q^z [3-z]! / ([z]! [2-z]!)
        let eng = SymEngine::new();
        let mut acc = eng.acc_new();
        for z in 0..=2i64 {
            let fate = eng.acc_add(
                &mut acc,
                Term::simple(z % 2 == 1, 4 * z, &[3 - z], &[z, 2 - z]),
            );
            assert_eq!(fate, TermFate::Counted);
        }
        let (got, n) = eng.acc_finish(acc);
        assert_eq!(n, 3);
        // direct computation
        let mut expect = QRat::zero();
        for z in 0..=2i64 {
            let num = q_factorial(3 - z).unwrap();
            let den = q_factorial(z).unwrap().mul(&q_factorial(2 - z).unwrap());
            let mut t = QRat::new(num, den);
            t = t.mul(&QRat::from_poly(super::super::laurent::QLaurent::monomial(
                QExponent::from_int(z),
                BigRational::one(),
            )));
            if z % 2 == 1 {
                t = t.neg();
            }
            expect = expect.add(&t);
        }
        assert_eq!(got, expect);
    }

    #[test]
    fn scalar_engine_agrees_with_symbolic_at_point() {
        let sym = SymEngine::new();
        let q1 = q_one_engine();
        let mut a1 = sym.acc_new();
        let mut a2 = q1.acc_new();
        for z in 0..=3i64 {
            let nf = [4 - z];
            let df = [z];
            fn mk<'a>(neg: bool, phase: i64, nf: &'a [i64], df: &'a [i64]) -> Term<'a> {
                Term {
                    neg,
                    phase_quarters: phase,
                    num_fact: nf,
                    den_fact: df,
                    num_qnum: &[2],
                    den_qnum: &[3],
                }
            }
            sym.acc_add(&mut a1, mk(z % 2 == 1, 2 * z, &nf, &df));
            q1.acc_add(&mut a2, mk(z % 2 == 1, 2 * z, &nf, &df));
        }
        let (s, n1) = sym.acc_finish(a1);
        let (v, n2) = q1.acc_finish(a2);
        assert_eq!(n1, n2);
        let at_one = s.eval_t(&BigRational::one()).unwrap();
        assert_eq!(at_one, v);
    }

    #[test]
    fn window_and_zero_classification() {
        let eng = CountEngine;
        let mut acc = eng.acc_new();
        assert_eq!(
            eng.acc_add(&mut acc, Term::simple(false, 0, &[1], &[-1])),
            TermFate::Outside
        );
        assert_eq!(
            eng.acc_add(&mut acc, Term::simple(false, 0, &[-1], &[1])),
            TermFate::Zero
        );
        let bad = Term {
            neg: false,
            phase_quarters: 0,
            num_fact: &[],
            den_fact: &[],
            num_qnum: &[],
            den_qnum: &[0],
        };
        assert_eq!(eng.acc_add(&mut acc, bad), TermFate::BadDenominator);
        assert_eq!(
            eng.acc_add(&mut acc, Term::simple(false, 0, &[2], &[1])),
            TermFate::Counted
        );
        assert_eq!(eng.acc_finish(acc).1, 1);
    }

    #[test]
    fn inverted_symbolic_engine_substitutes() {
        let eng = SymEngine::new();
        let inv = eng.inverted();
        let p = eng.q_power(5);
        let pi = inv.q_power(5);
        let q0 = BigRational::new(BigInt::from(81), BigInt::from(16));
        let t0 = BigRational::new(BigInt::from(3), BigInt::from(2));
        let _ = q0;
        assert_eq!(
            p.eval_t(&t0).unwrap(),
            pi.eval_t(&t0.recip()).unwrap()
        );
    }

    #[test]
    fn negative_qnum_signs_fold() {
        // [-2] in the numerator equals -[2]
        let eng = SymEngine::new();
        let mut acc = eng.acc_new();
        let t = Term {
            neg: false,
            phase_quarters: 0,
            num_fact: &[],
            den_fact: &[],
            num_qnum: &[-2],
            den_qnum: &[],
        };
        eng.acc_add(&mut acc, t);
        let (v, _) = eng.acc_finish(acc);
        assert_eq!(v, eng.qnum(-2));
        // and in the denominator: 1/[-3] = -1/[3]
        let mut acc = eng.acc_new();
        let t = Term {
            neg: false,
            phase_quarters: 0,
            num_fact: &[],
            den_fact: &[],
            num_qnum: &[],
            den_qnum: &[-3],
        };
        eng.acc_add(&mut acc, t);
        let (v, _) = eng.acc_finish(acc);
        assert_eq!(v, QRat::one().div(&eng.qnum(-3)));
    }
}
