//! Projections to the real line and quasi-greedy / quasi-lazy expansions.
//!
//! A binary sequence `i_1 i_2 ...` represents the number
//! `Σ_k i_k / (q_{i_1} ... q_{i_k})` where the base applied at step `k`
//! depends on the digit `i_k`. Eventually periodic sequences project in
//! closed form (finite sum plus a geometric series for the period).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sequences::EventuallyPeriodicSequence;

pub const DEFAULT_DEPTH_CAP: usize = 256;
pub const DEFAULT_ORBIT_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum ExpansionError {
    #[error("base {0} is not a real number greater than 1")]
    InvalidBase(f64),
    #[error("x = {x} outside the expansion domain [{lo}, {hi}]")]
    Domain { x: f64, lo: f64, hi: f64 },
}

/// A pair of real bases `q0, q1 > 1`; digit `d` is expanded in base `q_d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasePair {
    q0: f64,
    q1: f64,
}

impl BasePair {
    pub fn new(q0: f64, q1: f64) -> Result<Self, ExpansionError> {
        for q in [q0, q1] {
            if !(q.is_finite() && q > 1.0) {
                return Err(ExpansionError::InvalidBase(q));
            }
        }
        Ok(BasePair { q0, q1 })
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }

    pub fn q1(&self) -> f64 {
        self.q1
    }

    pub fn base(&self, digit: u8) -> f64 {
        if digit == 0 {
            self.q0
        } else {
            self.q1
        }
    }

    /// The pair `(q0^t, q1^t)`; stays valid for `t > 0`.
    pub fn pow(&self, t: f64) -> BasePair {
        BasePair {
            q0: self.q0.powf(t),
            q1: self.q1.powf(t),
        }
    }

    /// Right endpoint `1/(q1-1)` of the attractor `[0, 1/(q1-1)]`.
    pub fn upper(&self) -> f64 {
        1.0 / (self.q1 - 1.0)
    }

    /// Whether `q0 + q1 >= q0*q1`, the regime where every point of the
    /// attractor has an expansion and quasi-greedy/quasi-lazy are defined.
    pub fn in_expansion_regime(&self) -> bool {
        self.q0 + self.q1 >= self.q0 * self.q1 - 1e-12
    }

    /// Swapped pair `(q1, q0)`, used by the digit-complement conjugacy.
    pub fn swapped(&self) -> BasePair {
        BasePair {
            q0: self.q1,
            q1: self.q0,
        }
    }
}

/// `Σ_k i_k / (q_{i_1} ... q_{i_k})`, evaluated in closed form.
pub fn project(x: &EventuallyPeriodicSequence, q: &BasePair) -> f64 {
    let mut sum = 0.0;
    let mut scale = 1.0;
    for i in 0..x.preperiod().len() {
        let d = x.preperiod().digit(i);
        scale /= q.base(d);
        sum += f64::from(d) * scale;
    }
    let mut period_sum = 0.0;
    let mut period_scale = 1.0;
    for i in 0..x.period().len() {
        let d = x.period().digit(i);
        period_scale /= q.base(d);
        period_sum += f64::from(d) * period_scale;
    }
    // One period repeated with geometric ratio period_scale < 1.
    sum + scale * period_sum / (1.0 - period_scale)
}

/// `project` with both bases raised to the power `t > 0`.
pub fn project_power(x: &EventuallyPeriodicSequence, q: &BasePair, t: f64) -> f64 {
    project(x, &q.pow(t))
}

/// The expanding map `T_i(x) = q_i x - i`.
pub fn apply_t(digit: u8, x: f64, q: &BasePair) -> f64 {
    q.base(digit) * x - f64::from(digit)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExpansionResult {
    pub sequence: EventuallyPeriodicSequence,
    /// True when the orbit returned to an earlier point within tolerance, so
    /// the period is trusted; false when the expansion was truncated at the
    /// depth cap and a period was forced from the longest repeating suffix.
    pub exact: bool,
    pub depth_used: usize,
    /// False when `q0 + q1 < q0*q1`; the recursion still runs but its output
    /// is not a quasi-greedy/quasi-lazy expansion in that regime.
    pub in_regime: bool,
}

/// Quasi-greedy expansion of `x` in `(0, 1/(q1-1)]`: the lexicographically
/// largest expansion of `x` not ending in `0^∞`.
///
/// Digit rule: `i_n = 1` iff the orbit value exceeds `1/q1` (ties take 0).
pub fn quasi_greedy(
    x: f64,
    q: &BasePair,
    depth_cap: usize,
    tol: f64,
) -> Result<ExpansionResult, ExpansionError> {
    let upper = q.upper();
    let slack = 1e-9 * upper.max(1.0);
    if !(x > 0.0 && x <= upper + slack) {
        return Err(ExpansionError::Domain {
            x,
            lo: 0.0,
            hi: upper,
        });
    }
    let threshold = 1.0 / q.q1();
    // Ties take digit 0; the margin keeps exact ties (e.g. the first
    // quasi-lazy digit through the reflection) from flipping on rounding.
    let tie = 1e-12;
    let mut y = x.min(upper);
    let mut orbit: Vec<f64> = Vec::with_capacity(depth_cap);
    let mut digits: Vec<u8> = Vec::with_capacity(depth_cap);
    for n in 0..depth_cap {
        if let Some(m) = orbit.iter().position(|&prev| (prev - y).abs() <= tol) {
            let (pre, per) = (&digits[..m], &digits[m..n]);
            return Ok(ExpansionResult {
                sequence: seq_from_parts(pre, per),
                exact: true,
                depth_used: n,
                in_regime: q.in_expansion_regime(),
            });
        }
        orbit.push(y);
        let d = u8::from(y > threshold + tie);
        digits.push(d);
        y = apply_t(d, y, q);
    }
    let (pre, per) = force_period(&digits);
    Ok(ExpansionResult {
        sequence: seq_from_parts(pre, per),
        exact: false,
        depth_used: depth_cap,
        in_regime: q.in_expansion_regime(),
    })
}

/// Quasi-lazy expansion of `x` in `[0, 1/(q1-1))`: the lexicographically
/// smallest expansion of `x` not ending in `1^∞`.
///
/// Computed through the digit-complement conjugacy: flipping every digit and
/// swapping the bases maps expansions to expansions via the affine change of
/// variable `x ↦ (1 - (q1-1) x) / (q0-1)`, and reverses the lexicographic
/// order, so the quasi-lazy expansion is the complement of the quasi-greedy
/// expansion of the reflected point in the swapped pair.
pub fn quasi_lazy(
    x: f64,
    q: &BasePair,
    depth_cap: usize,
    tol: f64,
) -> Result<ExpansionResult, ExpansionError> {
    let upper = q.upper();
    let slack = 1e-9 * upper.max(1.0);
    if !(x >= -slack && x < upper) {
        return Err(ExpansionError::Domain {
            x,
            lo: 0.0,
            hi: upper,
        });
    }
    let reflected = (1.0 - (q.q1() - 1.0) * x.max(0.0)) / (q.q0() - 1.0);
    let greedy = quasi_greedy(reflected, &q.swapped(), depth_cap, tol)?;
    Ok(ExpansionResult {
        sequence: greedy.sequence.complement(),
        ..greedy
    })
}

fn seq_from_parts(pre: &[u8], per: &[u8]) -> EventuallyPeriodicSequence {
    use crate::sequences::Word;
    EventuallyPeriodicSequence::new(Word::from_digits(pre), Word::from_digits(per))
        .expect("nonempty period")
}

/// Splits a truncated digit string as `pre (per)` using the longest suffix
/// that immediately repeats; falls back to a one-digit period.
fn force_period(digits: &[u8]) -> (&[u8], &[u8]) {
    let n = digits.len();
    for k in (1..=n / 2).rev() {
        if digits[n - k..] == digits[n - 2 * k..n - k] {
            return (&digits[..n - k], &digits[n - k..]);
        }
    }
    (&digits[..n - 1], &digits[n - 1..])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(s: &str) -> EventuallyPeriodicSequence {
        s.parse().unwrap()
    }

    /// The real root of q^3 = 2q^2 + q - 1 (~2.247), solved by bisection.
    pub(crate) fn example_q0() -> f64 {
        let f = |q: f64| q * q * q - 2.0 * q * q - q + 1.0;
        let (mut lo, mut hi) = (2.0, 3.0);
        assert!(f(lo) < 0.0 && f(hi) > 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn example_pair() -> BasePair {
        let q0 = example_q0();
        BasePair::new(q0, 1.0 + 1.0 / q0).unwrap()
    }

    #[test]
    fn base_pair_validation() {
        assert!(BasePair::new(1.0, 2.0).is_err());
        assert!(BasePair::new(2.0, 0.5).is_err());
        assert!(BasePair::new(f64::NAN, 2.0).is_err());
        assert!(BasePair::new(1.1, 1.1).is_ok());
    }

    #[test]
    fn project_examples() {
        let q = BasePair::new(1.9, 2.1).unwrap();
        assert_eq!(project(&EventuallyPeriodicSequence::zeros(), &q), 0.0);
        let ones = EventuallyPeriodicSequence::ones();
        assert!((project(&ones, &q) - 1.0 / (q.q1() - 1.0)).abs() < 1e-14);
        assert!((project(&seq("1(0)"), &q) - 1.0 / q.q1()).abs() < 1e-14);
        // At the worked base pair, (10)^∞ projects to exactly 1.
        let qex = example_pair();
        assert!((project(&seq("(10)"), &qex) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn project_power_examples() {
        let q = BasePair::new(2.2, 1.5).unwrap();
        let x = seq("011(100)");
        assert!((project_power(&x, &q, 1.0) - project(&x, &q)).abs() < 1e-15);
        let t = 0.7;
        assert!(
            (project_power(&EventuallyPeriodicSequence::ones(), &q, t)
                - 1.0 / (q.q1().powf(t) - 1.0))
                .abs()
                < 1e-14
        );
        // 10^∞ has a single nonzero term.
        assert!((project_power(&seq("1(0)"), &q, t) - q.q1().powf(-t)).abs() < 1e-14);
    }

    #[test]
    fn apply_t_examples() {
        let q = BasePair::new(2.0, 1.5).unwrap();
        assert_eq!(apply_t(0, 0.0, &q), 0.0);
        let fixed = 1.0 / (q.q1() - 1.0);
        assert!((apply_t(1, fixed, &q) - fixed).abs() < 1e-14);
        assert!(apply_t(1, 1.0 / q.q1(), &q).abs() < 1e-14);
    }

    #[test]
    fn quasi_greedy_worked_example() {
        let q = example_pair();
        let r = quasi_greedy(1.0 / q.q1(), &q, 256, 1e-12).unwrap();
        assert!(r.exact);
        assert!(r.in_regime);
        assert_eq!(r.sequence, seq("011(100)"));
    }

    #[test]
    fn quasi_greedy_maximal_point() {
        let q = BasePair::new(2.0, 1.7).unwrap();
        let r = quasi_greedy(q.upper(), &q, 64, 1e-12).unwrap();
        assert_eq!(r.sequence, EventuallyPeriodicSequence::ones());
        assert!(r.exact);
    }

    #[test]
    fn quasi_greedy_domain() {
        let q = BasePair::new(2.0, 2.0).unwrap();
        assert!(quasi_greedy(0.0, &q, 64, 1e-12).is_err());
        assert!(quasi_greedy(1.5, &q, 64, 1e-12).is_err());
    }

    #[test]
    fn quasi_lazy_worked_example() {
        let q = example_pair();
        let x = 1.0 / (q.q0() * (q.q1() - 1.0));
        assert!((x - 1.0).abs() < 1e-12);
        let r = quasi_lazy(x, &q, 256, 1e-12).unwrap();
        assert!(r.exact);
        assert_eq!(r.sequence, seq("(10)"));
    }

    #[test]
    fn quasi_lazy_minimal_point() {
        let q = BasePair::new(2.0, 1.7).unwrap();
        let r = quasi_lazy(0.0, &q, 64, 1e-12).unwrap();
        assert_eq!(r.sequence, EventuallyPeriodicSequence::zeros());
    }

    /// Brute-force oracle: the lexicographically largest depth-`n` digit
    /// prefix whose whole orbit stays in the attractor with a strictly
    /// positive remainder (so the tail cannot be 0^∞).
    fn oracle_quasi_greedy_prefix(x: f64, q: &BasePair, n: usize) -> Vec<u8> {
        fn rec(y: f64, q: &BasePair, left: usize, acc: &mut Vec<u8>) -> bool {
            if left == 0 {
                return true;
            }
            for d in [1u8, 0u8] {
                let next = apply_t(d, y, q);
                if next > 1e-9 && next <= 1.0 / (q.q1() - 1.0) + 1e-9 {
                    acc.push(d);
                    if rec(next, q, left - 1, acc) {
                        return true;
                    }
                    acc.pop();
                }
            }
            false
        }
        let mut acc = Vec::new();
        assert!(rec(x, q, n, &mut acc));
        acc
    }

    #[test]
    fn quasi_greedy_golden_ratio_matches_oracle() {
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        let q = BasePair::new(phi, phi).unwrap();
        let r = quasi_greedy(1.0 / q.q1(), &q, 128, 1e-12).unwrap();
        assert_eq!(r.sequence, seq("(01)"));
        let oracle = oracle_quasi_greedy_prefix(1.0 / q.q1(), &q, 20);
        let got: Vec<u8> = (0..20).map(|i| r.sequence.digit(i)).collect();
        assert_eq!(got, oracle);
    }

    #[test]
    fn quasi_greedy_matches_oracle_random_points() {
        let q = BasePair::new(1.8, 1.6).unwrap();
        assert!(q.in_expansion_regime());
        for i in 1..12 {
            let x = q.upper() * f64::from(i) / 12.5;
            let r = quasi_greedy(x, &q, 512, 1e-12).unwrap();
            let oracle = oracle_quasi_greedy_prefix(x, &q, 18);
            let got: Vec<u8> = (0..18).map(|k| r.sequence.digit(k)).collect();
            assert_eq!(got, oracle, "x = {x}");
        }
    }

    #[test]
    fn a_starts_01_and_b_starts_10() {
        for (q0, q1) in [(2.2, 1.5), (1.7, 1.9), (2.0, 2.0), (1.3, 1.3)] {
            let q = BasePair::new(q0, q1).unwrap();
            if !q.in_expansion_regime() {
                continue;
            }
            let a = quasi_greedy(1.0 / q.q1(), &q, 256, 1e-12).unwrap().sequence;
            assert_eq!((a.digit(0), a.digit(1)), (0, 1), "a at ({q0},{q1})");
            let b = quasi_lazy(1.0 / (q.q0() * (q.q1() - 1.0)), &q, 256, 1e-12)
                .unwrap()
                .sequence;
            assert_eq!((b.digit(0), b.digit(1)), (1, 0), "b at ({q0},{q1})");
        }
    }

    proptest! {
        #[test]
        fn greedy_round_trips_through_project(frac in 0.05f64..1.0, q0 in 1.2f64..2.4, s in 0.0f64..1.0) {
            // Sample inside the expansion regime: q1 between 1 and q0/(q0-1).
            let q1_max: f64 = q0 / (q0 - 1.0);
            let q1 = 1.0 + (q1_max.min(4.0) - 1.0) * (0.2 + 0.75 * s);
            let q = BasePair::new(q0, q1).unwrap();
            prop_assume!(q.in_expansion_regime());
            let x = frac * q.upper();
            let r = quasi_greedy(x, &q, 4096, 1e-12).unwrap();
            if r.exact {
                let back = project(&r.sequence, &q);
                prop_assert!((back - x).abs() <= 1e-11 * q.upper().max(1.0));
            }
        }

        #[test]
        fn greedy_monotone_in_x(a in 0.05f64..1.0, b in 0.05f64..1.0) {
            let q = BasePair::new(1.9, 1.6).unwrap();
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let x = lo * q.upper();
            let y = hi * q.upper();
            let rx = quasi_greedy(x, &q, 512, 1e-12).unwrap().sequence;
            let ry = quasi_greedy(y, &q, 512, 1e-12).unwrap().sequence;
            // Compare truncated prefixes; forced periods may disagree beyond.
            let px: Vec<u8> = (0..200).map(|i| rx.digit(i)).collect();
            let py: Vec<u8> = (0..200).map(|i| ry.digit(i)).collect();
            prop_assert!(px <= py);
        }

        #[test]
        fn project_increasing_in_inverse_bases(pre in proptest::collection::vec(0u8..2, 0..6)) {
            use crate::sequences::Word;
            // Finite-difference check on a sequence containing both digits.
            let x = EventuallyPeriodicSequence::new(
                Word::from_digits(&pre),
                Word::from_digits(&[1, 0]),
            ).unwrap();
            let q = BasePair::new(2.0, 1.8).unwrap();
            let h = 1e-6;
            let base = project(&x, &q);
            let dq0 = project(&x, &BasePair::new(2.0 + h, 1.8).unwrap());
            let dq1 = project(&x, &BasePair::new(2.0, 1.8 + h).unwrap());
            prop_assert!(dq0 < base);
            prop_assert!(dq1 < base);
        }
    }
}
