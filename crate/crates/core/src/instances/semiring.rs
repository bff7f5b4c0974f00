//! Semirings and their law suite.
//!
//! A [`Semiring`] packages a carrier with the two monoid structures and is
//! the scalar parameter of the vector instances: booleans give the powerset,
//! naturals the multiset, and anything else a matrix calculus over itself.
//! Finite carriers are checked exhaustively by [`semiring_check`]; infinite
//! ones (integers, naturals) are sampled with a seeded generator by
//! [`semiring_check_sampled`], so reports stay deterministic.

use std::fmt::Debug;

use num_bigint::BigUint;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::Budget;
use crate::report::{Check, Report};
use crate::{Error, Result};

/// A semiring `(R, 0, +, 1, ×)`: `(0, +)` a commutative monoid, `(1, ×)` a
/// monoid, `×` distributing over `+`, and `0` annihilating.
///
/// `elements` returns the whole carrier when it is finite; infinite carriers
/// return `None` and must implement `sample` directly. `exact` is true for
/// genuine semirings; saturating stand-ins (see [`NatCap`]) return false and
/// the law suites refuse to certify them.
pub trait Semiring {
    type Elem: Clone + PartialEq + Debug;

    /// Short lowercase name used in check identifiers.
    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Every element of a finite carrier, in a fixed order; `None` when the
    /// carrier is infinite.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    /// Draws one element; the default picks uniformly from a finite carrier.
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem {
        let all = self
            .elements()
            .expect("infinite semirings must implement sample");
        all[rng.gen_range(0..all.len())].clone()
    }

    /// False for operations that only approximate the semiring they stand
    /// in for; such carriers are excluded from the law suites.
    fn exact(&self) -> bool {
        true
    }
}

/// `(𝔹, ⊥, ∨, ⊤, ∧)` — the scalar semiring of the powerset instance.
#[derive(Debug, Clone, Copy, Default)]
pub struct Booleans;

impl Semiring for Booleans {
    type Elem = bool;

    fn name(&self) -> String {
        "bool".into()
    }

    fn zero(&self) -> bool {
        false
    }

    fn one(&self) -> bool {
        true
    }

    fn add(&self, a: &bool, b: &bool) -> bool {
        *a || *b
    }

    fn mul(&self, a: &bool, b: &bool) -> bool {
        *a && *b
    }

    fn elements(&self) -> Option<Vec<bool>> {
        Some(vec![false, true])
    }
}

/// The integers with wrapping 64-bit arithmetic.
///
/// Wrapping makes every operation total, and the laws survive it: fixed-width
/// wrap-around is arithmetic in `ℤ/2⁶⁴`, a commutative ring. Samples are
/// drawn small so witnesses stay readable.
#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

impl Semiring for Integers {
    type Elem = i64;

    fn name(&self) -> String {
        "int".into()
    }

    fn zero(&self) -> i64 {
        0
    }

    fn one(&self) -> i64 {
        1
    }

    fn add(&self, a: &i64, b: &i64) -> i64 {
        a.wrapping_add(*b)
    }

    fn mul(&self, a: &i64, b: &i64) -> i64 {
        a.wrapping_mul(*b)
    }

    fn elements(&self) -> Option<Vec<i64>> {
        None
    }

    fn sample(&self, rng: &mut dyn RngCore) -> i64 {
        rng.gen_range(-9999..=9999)
    }
}

/// The ring of integers modulo `m`, for `m ≥ 1`.
#[derive(Debug, Clone, Copy)]
pub struct ZMod {
    modulus: u64,
}

impl ZMod {
    pub fn new(modulus: u64) -> Result<ZMod> {
        if modulus == 0 {
            return Err(Error::Precondition("modulus must be at least 1".into()));
        }
        Ok(ZMod { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl Semiring for ZMod {
    type Elem = u64;

    fn name(&self) -> String {
        format!("mod{}", self.modulus)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.modulus
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.modulus
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.modulus
    }

    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.modulus).collect())
    }
}

/// An element of the bounded tropical carrier `{0, …, 7, ∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trop {
    Fin(u8),
    Inf,
}

/// Min-plus arithmetic on `{0, …, 7, ∞}`: addition is minimum with `∞` on
/// top, multiplication is `+` spilling over into `∞` past 7. The spill-over
/// is a congruence (everything above the bound is already identified with
/// `∞`), so the laws hold on the nose.
#[derive(Debug, Clone, Copy, Default)]
pub struct Tropical;

impl Tropical {
    pub const MAX: u8 = 7;
}

impl Semiring for Tropical {
    type Elem = Trop;

    fn name(&self) -> String {
        "tropical".into()
    }

    fn zero(&self) -> Trop {
        Trop::Inf
    }

    fn one(&self) -> Trop {
        Trop::Fin(0)
    }

    fn add(&self, a: &Trop, b: &Trop) -> Trop {
        match (a, b) {
            (Trop::Inf, x) | (x, Trop::Inf) => *x,
            (Trop::Fin(u), Trop::Fin(v)) => Trop::Fin(*u.min(v)),
        }
    }

    fn mul(&self, a: &Trop, b: &Trop) -> Trop {
        match (a, b) {
            (Trop::Inf, _) | (_, Trop::Inf) => Trop::Inf,
            (Trop::Fin(u), Trop::Fin(v)) if u + v <= Self::MAX => Trop::Fin(u + v),
            _ => Trop::Inf,
        }
    }

    fn elements(&self) -> Option<Vec<Trop>> {
        let mut all: Vec<Trop> = (0..=Self::MAX).map(Trop::Fin).collect();
        all.push(Trop::Inf);
        Some(all)
    }
}

/// `(ℕ, 0, +, 1, ×)` with exact arbitrary-precision values — the scalar
/// semiring of the multiset instance in its shallow form.
#[derive(Debug, Clone, Default)]
pub struct Naturals;

impl Semiring for Naturals {
    type Elem = BigUint;

    fn name(&self) -> String {
        "nat".into()
    }

    fn zero(&self) -> BigUint {
        BigUint::ZERO
    }

    fn one(&self) -> BigUint {
        BigUint::from(1u8)
    }

    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a + b
    }

    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a * b
    }

    fn elements(&self) -> Option<Vec<BigUint>> {
        None
    }

    fn sample(&self, rng: &mut dyn RngCore) -> BigUint {
        BigUint::from(rng.next_u64())
    }
}

/// Naturals truncated at `cap`, with both operations saturating there.
///
/// This is the deep stand-in for multisets: a finite table whose top value
/// reads "`cap` or more". Saturation identifies every count past the cap, so
/// values computed here misreport true multiplicities; the type is flagged
/// inexact and the law suites skip it rather than certify it as `ℕ`.
#[derive(Debug, Clone, Copy)]
pub struct NatCap {
    cap: u64,
}

impl NatCap {
    pub fn new(cap: u64) -> NatCap {
        NatCap { cap }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }
}

impl Semiring for NatCap {
    type Elem = u64;

    fn name(&self) -> String {
        format!("natcap{}", self.cap)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1.min(self.cap)
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        a.saturating_add(*b).min(self.cap)
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a.saturating_mul(*b).min(self.cap)
    }

    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..=self.cap).collect())
    }

    fn exact(&self) -> bool {
        false
    }
}

/// One pass over the laws on explicit element triples.
fn laws_over<R: Semiring>(
    r: &R,
    name: &str,
    triples: &[(R::Elem, R::Elem, R::Elem)],
    report: &mut Report,
) {
    let zero = r.zero();
    let one = r.one();
    let n = triples.len() as u64;

    let mut witness = None;
    for (a, b, c) in triples {
        let left = r.add(&r.add(a, b), c);
        let right = r.add(a, &r.add(b, c));
        if left != right {
            witness = Some(format!("a={a:?}, b={b:?}, c={c:?}: (a+b)+c = {left:?} but a+(b+c) = {right:?}"));
            break;
        }
    }
    report.equation(&format!("semiring/{name}/add-assoc"), n, witness);

    let mut witness = None;
    for (a, b, _) in triples {
        let left = r.add(a, b);
        let right = r.add(b, a);
        if left != right {
            witness = Some(format!("a={a:?}, b={b:?}: a+b = {left:?} but b+a = {right:?}"));
            break;
        }
    }
    report.equation(&format!("semiring/{name}/add-comm"), n, witness);

    let mut witness = None;
    for (a, _, _) in triples {
        let left = r.add(&zero, a);
        if left != *a {
            witness = Some(format!("a={a:?}: 0+a = {left:?}"));
            break;
        }
    }
    report.equation(&format!("semiring/{name}/add-unit"), n, witness);

    let mut witness = None;
    for (a, b, c) in triples {
        let left = r.mul(&r.mul(a, b), c);
        let right = r.mul(a, &r.mul(b, c));
        if left != right {
            witness = Some(format!("a={a:?}, b={b:?}, c={c:?}: (a×b)×c = {left:?} but a×(b×c) = {right:?}"));
            break;
        }
    }
    report.equation(&format!("semiring/{name}/mul-assoc"), n, witness);

    let mut witness = None;
    for (a, _, _) in triples {
        let left = r.mul(&one, a);
        let right = r.mul(a, &one);
        if left != *a || right != *a {
            witness = Some(format!("a={a:?}: 1×a = {left:?}, a×1 = {right:?}"));
            break;
        }
    }
    report.equation(&format!("semiring/{name}/mul-unit"), n, witness);

    let mut witness = None;
    for (a, b, c) in triples {
        let left = r.mul(a, &r.add(b, c));
        let right = r.add(&r.mul(a, b), &r.mul(a, c));
        if left != right {
            witness = Some(format!("a={a:?}, b={b:?}, c={c:?}: a×(b+c) = {left:?} but a×b + a×c = {right:?}"));
            break;
        }
    }
    report.equation(&format!("semiring/{name}/dist-left"), n, witness);

    let mut witness = None;
    for (a, b, c) in triples {
        let left = r.mul(&r.add(a, b), c);
        let right = r.add(&r.mul(a, c), &r.mul(b, c));
        if left != right {
            witness = Some(format!("a={a:?}, b={b:?}, c={c:?}: (a+b)×c = {left:?} but a×c + b×c = {right:?}"));
            break;
        }
    }
    report.equation(&format!("semiring/{name}/dist-right"), n, witness);

    let mut witness = None;
    for (a, _, _) in triples {
        let left = r.mul(&zero, a);
        let right = r.mul(a, &zero);
        if left != zero || right != zero {
            witness = Some(format!("a={a:?}: 0×a = {left:?}, a×0 = {right:?}"));
            break;
        }
    }
    report.equation(&format!("semiring/{name}/zero-annihilates"), n, witness);
}

/// Exhaustive law suite over all element triples of a finite carrier.
///
/// Inexact carriers come back as a single skip; infinite ones are a
/// precondition error pointing at the sampled suite.
pub fn semiring_check<R: Semiring>(r: &R, budget: Budget) -> Result<Report> {
    let name = r.name();
    let mut report = Report::new();
    if !r.exact() {
        report.push(Check::skipped(
            format!("semiring/{name}/laws"),
            "saturating stand-in: excluded from the law suites",
        ));
        return Ok(report);
    }
    let all = r.elements().ok_or_else(|| {
        Error::Precondition(format!(
            "semiring {name} has an infinite carrier: use semiring_check_sampled"
        ))
    })?;
    let n = all.len() as u128;
    budget.admit("semiring law triples", n * n * n)?;

    report.push(Check {
        id: format!("semiring/{name}/mode"),
        status: crate::report::Status::Pass,
        detail: Some("exhaustive".into()),
        cases: 0,
    });
    let mut triples = Vec::with_capacity((n * n * n) as usize);
    for a in &all {
        for b in &all {
            for c in &all {
                triples.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    laws_over(r, &name, &triples, &mut report);
    Ok(report)
}

/// Seeded sampled law suite: `samples` triples per law, drawn once and
/// shared, so the report is a pure function of `(seed, samples)`.
pub fn semiring_check_sampled<R: Semiring>(r: &R, samples: u32, seed: u64) -> Report {
    let name = r.name();
    let mut report = Report::new();
    if !r.exact() {
        report.push(Check::skipped(
            format!("semiring/{name}/laws"),
            "saturating stand-in: excluded from the law suites",
        ));
        return report;
    }
    report.push(Check {
        id: format!("semiring/{name}/mode"),
        status: crate::report::Status::Pass,
        detail: Some(format!("sampled: seed {seed}, {samples} triples per law")),
        cases: 0,
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<_> = (0..samples)
        .map(|_| {
            (
                r.sample(&mut rng),
                r.sample(&mut rng),
                r.sample(&mut rng),
            )
        })
        .collect();
    laws_over(r, &name, &triples, &mut report);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_semirings_pass_exhaustively() {
        for report in [
            semiring_check(&Booleans, Budget::default()).unwrap(),
            semiring_check(&ZMod::new(4).unwrap(), Budget::default()).unwrap(),
            semiring_check(&Tropical, Budget::default()).unwrap(),
        ] {
            assert!(report.all_pass(), "{:?}", report.failures().next());
            assert!(report.total_cases() > 0);
        }
    }

    #[test]
    fn triple_counts_are_cubes_of_the_carrier() {
        let report = semiring_check(&Tropical, Budget::default()).unwrap();
        let assoc = report
            .checks
            .iter()
            .find(|c| c.id == "semiring/tropical/add-assoc")
            .unwrap();
        assert_eq!(assoc.cases, 9 * 9 * 9);
    }

    #[test]
    fn infinite_semirings_pass_the_sampled_suite() {
        let ints = semiring_check_sampled(&Integers, 1000, 0);
        assert!(ints.all_pass(), "{:?}", ints.failures().next());
        let nats = semiring_check_sampled(&Naturals, 1000, 0);
        assert!(nats.all_pass(), "{:?}", nats.failures().next());
        assert_eq!(nats.total_cases(), 8 * 1000);
    }

    #[test]
    fn sampling_is_deterministic_in_the_seed() {
        let a = semiring_check_sampled(&Integers, 64, 42);
        let b = semiring_check_sampled(&Integers, 64, 42);
        assert_eq!(a, b);
    }

    #[test]
    fn the_saturating_carrier_is_skipped_not_certified() {
        let report = semiring_check(&NatCap::new(3), Budget::default()).unwrap();
        assert_eq!(report.checks.len(), 1);
        assert_eq!(report.checks[0].status, crate::report::Status::Skipped);
        assert!(report.checks[0]
            .detail
            .as_deref()
            .unwrap()
            .contains("excluded"));
    }

    /// Truncated subtraction as "addition": commutative, unital, but not
    /// associative — the suite must name the law and the triple.
    struct Gap;

    impl Semiring for Gap {
        type Elem = u64;

        fn name(&self) -> String {
            "gap".into()
        }

        fn zero(&self) -> u64 {
            0
        }

        fn one(&self) -> u64 {
            1
        }

        fn add(&self, a: &u64, b: &u64) -> u64 {
            a.max(b) - a.min(b)
        }

        fn mul(&self, a: &u64, b: &u64) -> u64 {
            (a * b).min(2)
        }

        fn elements(&self) -> Option<Vec<u64>> {
            Some(vec![0, 1, 2])
        }
    }

    #[test]
    fn a_broken_operation_fails_with_a_triple_witness() {
        let report = semiring_check(&Gap, Budget::default()).unwrap();
        let failure = report.failures().next().expect("a law must fail");
        assert_eq!(failure.id, "semiring/gap/add-assoc");
        assert!(failure.detail.as_deref().unwrap().contains("a="));
    }

    #[test]
    fn tropical_arithmetic_matches_min_plus_by_hand() {
        let r = Tropical;
        assert_eq!(r.add(&Trop::Fin(3), &Trop::Fin(5)), Trop::Fin(3));
        assert_eq!(r.add(&Trop::Inf, &Trop::Fin(5)), Trop::Fin(5));
        assert_eq!(r.mul(&Trop::Fin(3), &Trop::Fin(5)), Trop::Inf);
        assert_eq!(r.mul(&Trop::Fin(3), &Trop::Fin(4)), Trop::Fin(7));
        assert_eq!(r.mul(&Trop::Inf, &Trop::Fin(0)), Trop::Inf);
    }
}
