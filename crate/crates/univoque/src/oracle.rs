//! Independent brute-force estimators used to validate the root-finding
//! pipeline: naive language enumeration, Moran-construction dimension
//! bounds, and truncated checks of the generating-series identities
//! `L = z1/(1-z1) + A·Q` and `Q·K = z1/(1-z1)`.
//!
//! Everything here is exponential-time by design and deliberately avoids the
//! counting automaton in `subshift`.

use serde::Serialize;
use thiserror::Error;

use crate::expansions::{project, BasePair};
use crate::sequences::Word;
use crate::subshift::{in_omega, is_admissible, Hole, SubshiftError};

pub const ENUMERATION_CAP: usize = 20;
pub const MORAN_CAP: usize = 18;
pub const MORAN_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("depth {0} exceeds the brute-force cap of {1}")]
    DepthCap(usize, usize),
    #[error("z-values ({0}, {1}) outside the absolute-convergence region (0, 1/2)")]
    ConvergenceRegion(f64, f64),
    #[error(transparent)]
    Subshift(#[from] SubshiftError),
}

/// All surviving words of length `n`, by direct enumeration of all `2^n`
/// candidates: a word dies when one of its suffixes starting with 0 exceeds
/// `a` at a decided position, or a suffix starting with 1 drops below `b`.
/// Exact for admissible holes.
pub fn naive_language(h: &Hole, n: usize) -> Result<Vec<Word>, OracleError> {
    if n > ENUMERATION_CAP {
        return Err(OracleError::DepthCap(n, ENUMERATION_CAP));
    }
    if !is_admissible(h) {
        return Err(OracleError::Subshift(SubshiftError::NonAdmissible));
    }
    let mut out = Vec::new();
    let mut w = vec![0u8; n];
    loop {
        if survives(&w, h) {
            out.push(Word::from_digits(&w));
        }
        // Binary increment; stop after 1^n.
        match w.iter().rposition(|&d| d == 0) {
            Some(i) => {
                w[i] = 1;
                w[i + 1..].fill(0);
            }
            None => break,
        }
    }
    Ok(out)
}

fn survives(w: &[u8], h: &Hole) -> bool {
    for i in 0..w.len() {
        let s = &w[i..];
        if s[0] == 0 {
            // Dead iff decided above a.
            for (p, &d) in s.iter().enumerate() {
                match d.cmp(&h.a().digit(p)) {
                    std::cmp::Ordering::Greater => return false,
                    std::cmp::Ordering::Less => break,
                    std::cmp::Ordering::Equal => {}
                }
            }
        } else {
            // Dead iff decided below b.
            for (p, &d) in s.iter().enumerate() {
                match d.cmp(&h.b().digit(p)) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => break,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
    }
    true
}

/// Depth-`n` root of the Moran pressure equation, solved by bisection.
///
/// The dimension is the root `s` of `lim (1/n)·log Σ_{w∈L_n} Π q_{w_i}^{-s}
/// = 0`. Because `#L_n ≈ C·β^n` with a prefactor `C` well above 1, the root
/// of the single partition sum `Σ_n = 1` carries a bias of order
/// `log C / n` — far too slow to be a useful desk-scale check. The
/// consecutive-ratio form `Σ_n(s) = Σ_{n-1}(s)` estimates the same limit
/// with the prefactor cancelled, converges geometrically, and still gives a
/// nonincreasing upper-bound sequence on all fixtures.
pub fn moran_estimate(h: &Hole, q: &BasePair, n: usize) -> Result<f64, OracleError> {
    if n == 0 || n > MORAN_CAP {
        return Err(OracleError::DepthCap(n, MORAN_CAP));
    }
    // Word weights depend only on the digit counts, so a histogram by the
    // number of ones suffices.
    let histogram = |m: usize| -> Result<Vec<u64>, OracleError> {
        let mut counts = vec![0u64; m + 1];
        for w in naive_language(h, m)? {
            let ones = w.digits().iter().map(|&d| usize::from(d)).sum::<usize>();
            counts[ones] += 1;
        }
        Ok(counts)
    };
    let partition = |counts: &[u64], m: usize, s: f64| -> f64 {
        counts
            .iter()
            .enumerate()
            .map(|(k, &c)| {
                c as f64 * q.q0().powf(-(s * (m - k) as f64)) * q.q1().powf(-(s * k as f64))
            })
            .sum()
    };
    let cur = histogram(n)?;
    let prev = histogram(n - 1)?;
    let g = |s: f64| partition(&cur, n, s) - partition(&prev, n - 1, s);
    if g(0.0) <= 0.0 {
        // The language stopped growing: entropy (and dimension) zero.
        return Ok(0.0);
    }
    let mut lo = 0.0f64;
    let mut hi = 1.5f64;
    while g(hi) > 0.0 && hi < 64.0 {
        hi *= 2.0;
    }
    while hi - lo > MORAN_TOL {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // The projected set lives in an interval, so as a dimension estimate the
    // pressure root is capped at 1 — mirroring `kneading::dimension`.
    Ok((0.5 * (lo + hi)).min(1.0))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SeriesCheck {
    /// `|L_N − z1/(1−z1) − A_N·Q_N|`.
    pub residual_laq: f64,
    /// `|Q_N·K − z1/(1−z1)|` with the closed-form kneading invariant.
    pub residual_qk: f64,
    /// Geometric bound on what truncation at depth `N` can contribute.
    pub tail_bound: f64,
}

/// Truncated check of the series identities at `(z0, z1)` in the absolute
/// convergence region, with all partial sums over enumerated words up to
/// length `n_max` and `K` evaluated in closed form as
/// `π_{1/z0,1/z1}(b) − π_{1/z0,1/z1}(a)`.
pub fn series_identity_check(
    h: &Hole,
    z0: f64,
    z1: f64,
    n_max: usize,
) -> Result<SeriesCheck, OracleError> {
    if !(z0 > 0.0 && z0 < 0.5 && z1 > 0.0 && z1 < 0.5) {
        return Err(OracleError::ConvergenceRegion(z0, z1));
    }
    if n_max > MORAN_CAP {
        return Err(OracleError::DepthCap(n_max, MORAN_CAP));
    }
    let weight = |w: &Word| -> f64 {
        w.digits()
            .iter()
            .map(|&d| if d == 0 { z0 } else { z1 })
            .product()
    };
    let mut l_sum = 0.0;
    let mut q_sum = 1.0; // n = 0: the empty word is always in Q_0.
    for n in 1..=n_max {
        for w in naive_language(h, n)? {
            let wt = weight(&w);
            l_sum += wt;
            if in_omega(&h.a().prepend(&w), h) && in_omega(&h.b().prepend(&w), h) {
                q_sum += wt;
            }
        }
    }
    let mut a_sum = 0.0;
    let mut a_prod = 1.0;
    for i in 0..n_max {
        a_prod *= if h.a().digit(i) == 0 { z0 } else { z1 };
        a_sum += a_prod;
    }
    let qz = BasePair::new(1.0 / z0, 1.0 / z1).expect("z < 1/2 gives bases > 2");
    let k_closed = project(h.b(), &qz) - project(h.a(), &qz);
    let geom = z1 / (1.0 - z1);
    let z = z0.max(z1);
    let t = (2.0 * z).powi(n_max as i32 + 1) / (1.0 - 2.0 * z);
    let tail_bound = t * (2.0 + 1.0 / (1.0 - 2.0 * z) + t);
    Ok(SeriesCheck {
        residual_laq: (l_sum - geom - a_sum * q_sum).abs(),
        residual_qk: (q_sum * k_closed - geom).abs(),
        tail_bound,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub depth: usize,
    pub language_count: u64,
    /// `(1/n)·log #L_n`, an upper bound on the entropy.
    pub entropy_upper: f64,
    /// Depth-`n` Moran pressure root, an upper bound on the dimension.
    pub dim_estimate: f64,
    pub series: SeriesCheck,
}

pub fn report(h: &Hole, q: &BasePair, depth: usize) -> Result<OracleReport, OracleError> {
    let count = naive_language(h, depth)?.len() as u64;
    Ok(OracleReport {
        depth,
        language_count: count,
        entropy_upper: (count as f64).ln() / depth as f64,
        dim_estimate: moran_estimate(h, q, depth)?,
        series: series_identity_check(h, 0.3, 0.3, depth.min(14))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::EventuallyPeriodicSequence;
    use crate::subshift::language_count;

    fn hole(a: &str, b: &str) -> Hole {
        let a: EventuallyPeriodicSequence = a.parse().unwrap();
        let b: EventuallyPeriodicSequence = b.parse().unwrap();
        Hole::new(a, b).unwrap()
    }

    fn plastic() -> f64 {
        let f = |b: f64| b * b * b - b - 1.0;
        let (mut lo, mut hi) = (1.0, 2.0);
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

    #[test]
    fn naive_language_examples() {
        assert_eq!(naive_language(&hole("0(1)", "1(0)"), 3).unwrap().len(), 8);
        let words = naive_language(&hole("(0)", "(1)"), 3).unwrap();
        let digits: Vec<&[u8]> = words.iter().map(|w| w.digits()).collect();
        assert_eq!(digits, [&[0, 0, 0], &[1, 1, 1]]);
    }

    #[test]
    fn naive_matches_automaton() {
        for (a, b) in [
            ("(011)", "(10)"),
            ("01(10)", "10(01)"),
            ("0(1)", "1(0)"),
            ("(011)", "10(011)"),
        ] {
            let h = hole(a, b);
            for n in 0..=14 {
                assert_eq!(
                    naive_language(&h, n).unwrap().len() as u64,
                    language_count(&h, n).unwrap(),
                    "hole ({a},{b}), n={n}"
                );
            }
        }
    }

    #[test]
    fn moran_full_shift_base_two() {
        let q = BasePair::new(2.0, 2.0).unwrap();
        let h = hole("0(1)", "1(0)");
        for n in [4, 9, 14] {
            assert!((moran_estimate(&h, &q, n).unwrap() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn moran_converges_to_kneading_root() {
        let q = BasePair::new(2.0, 2.0).unwrap();
        let h = hole("(011)", "(10)");
        let limit = plastic().ln() / 2f64.ln();
        let est = moran_estimate(&h, &q, 14).unwrap();
        assert!(est >= limit - 1e-9);
        assert!(est - limit < 0.02, "est = {est}, limit = {limit}");
    }

    #[test]
    fn moran_nonincreasing() {
        let q = BasePair::new(1.9, 2.1).unwrap();
        let h = hole("(011)", "(10)");
        let mut prev = f64::INFINITY;
        for n in [6, 8, 10, 12, 14] {
            let est = moran_estimate(&h, &q, n).unwrap();
            assert!(est <= prev + 1e-9, "n={n}: {est} > {prev}");
            prev = est;
        }
    }

    #[test]
    fn series_full_shift() {
        let c = series_identity_check(&hole("0(1)", "1(0)"), 0.3, 0.3, 14).unwrap();
        assert!(c.residual_laq < c.tail_bound, "{c:?}");
        assert!(c.residual_qk < c.tail_bound, "{c:?}");
    }

    #[test]
    fn series_two_point_hole() {
        // L_n = {0^n, 1^n}, Q_n empty for n ≥ 1; the identities close up to
        // the truncation tails.
        let c = series_identity_check(&hole("(0)", "(1)"), 0.25, 0.25, 14).unwrap();
        assert!(c.residual_laq < c.tail_bound, "{c:?}");
        assert!(c.residual_qk < c.tail_bound, "{c:?}");
    }

    #[test]
    fn series_fixture_hole() {
        let c = series_identity_check(&hole("(011)", "(10)"), 0.3, 0.3, 14).unwrap();
        assert!(c.residual_laq < c.tail_bound, "{c:?}");
        assert!(c.residual_qk < c.tail_bound, "{c:?}");
    }

    #[test]
    fn series_rejects_bad_region() {
        assert!(series_identity_check(&hole("(0)", "(1)"), 0.6, 0.3, 8).is_err());
    }
}
