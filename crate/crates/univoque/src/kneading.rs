//! Kneading-invariant evaluation and the largest-root solvers behind
//! topological entropy and Hausdorff dimension.
//!
//! For an admissible hole `(a, b)` define
//! `K̃(t) = (π_{q0^t,q1^t}(b) − π_{q0^t,q1^t}(a)) · (q1^t − 1)`.
//! `K̃` is strictly increasing above its largest zero `s`, the dimension of
//! the projected survivor set is `min{1, s}`, and the entropy of the
//! subshift is `log β` where `β = 2^t` at the largest zero for the constant
//! pair `(β, β)` with `β ∈ (1, 2]`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expansions::{
    project_power, quasi_greedy, quasi_lazy, BasePair, ExpansionError, DEFAULT_DEPTH_CAP,
    DEFAULT_ORBIT_TOL,
};
use crate::sequences::{EventuallyPeriodicSequence, Word};
use crate::subshift::{extremal_pair, Hole, SubshiftError};

pub const GRID_POINTS: usize = 512;
pub const DEFAULT_T_MIN: f64 = 1e-4;
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
/// |K̃| below this without a sign change counts as a near-tangential dip.
const DIP_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum KneadingError {
    #[error("bracket violated: K̃({t_max}) = {value} ≤ 0 at the top of the search interval")]
    Bracket { t_max: f64, value: f64 },
    #[error("entropy is positive but no kneading root was found in [{t_min}, {t_max}]")]
    NoRoot { t_min: f64, t_max: f64 },
    #[error(transparent)]
    Subshift(#[from] SubshiftError),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
    #[error(transparent)]
    Sequence(#[from] crate::sequences::SequenceError),
}

/// `K̃_{a,b}(t)`, evaluated in closed form.
pub fn ktilde(h: &Hole, q: &BasePair, t: f64) -> f64 {
    (project_power(h.b(), q, t) - project_power(h.a(), q, t)) * (q.q1().powf(t) - 1.0)
}

#[derive(Debug, Clone)]
struct RootOutcome {
    root: Option<f64>,
    bracket: (f64, f64),
    iterations: u32,
    residual: f64,
    warning: Option<String>,
}

/// Largest zero of `f` in `[t_min, t_max]`: descending geometric grid scan
/// for the first sign change, then bisection. Requires `f(t_max) > 0` up to
/// tolerance.
///
/// Tangential (double) roots, where `f` touches zero without changing sign,
/// do occur — e.g. for holes whose dimension coincides with that of a larger
/// hole. Without a grid sign change, every interior grid minimum is refined
/// by golden-section search; a refined minimum at essentially zero is
/// polished via a bisection on the numerical derivative and returned with a
/// warning.
fn search_root<F: Fn(f64) -> f64>(
    f: F,
    t_min: f64,
    t_max: f64,
    tol: f64,
) -> Result<RootOutcome, KneadingError> {
    let mut evals = 1u32;
    let f_top = f(t_max);
    if f_top < -DIP_TOL {
        return Err(KneadingError::Bracket {
            t_max,
            value: f_top,
        });
    }
    if f_top <= DIP_TOL {
        return Ok(RootOutcome {
            root: Some(t_max),
            bracket: (t_max, t_max),
            iterations: evals,
            residual: f_top,
            warning: None,
        });
    }
    let ratio = (t_min / t_max).powf(1.0 / (GRID_POINTS as f64 - 1.0));
    let ts: Vec<f64> = (0..GRID_POINTS)
        .map(|i| t_max * ratio.powi(i as i32))
        .collect();
    let fs: Vec<f64> = ts.iter().map(|&t| f(t)).collect();
    evals += GRID_POINTS as u32;
    for i in 1..GRID_POINTS {
        if fs[i] <= 0.0 {
            let mut out = bisect(&f, ts[i], ts[i - 1], tol, evals, None);
            let root = out.root.expect("bisect always returns a root");
            // A dip that barely crosses zero behaves like a double root:
            // the flat slope amplifies rounding noise in `f` into a root
            // error far above `tol`. Detect it by probing both sides of the
            // crossing and relocate the root at the fitted parabola vertex.
            let probe = 1e-5;
            if f(root - probe) > 0.0 && f(root + probe) > 0.0 {
                let polished = vertex_polish(&f, root, &mut out.iterations);
                out.root = Some(polished);
                out.bracket = (polished - probe, polished + probe);
                out.residual = f(polished);
                out.iterations += 3;
                out.warning = Some(format!(
                    "near-tangential root at t ≈ {polished:.9}: the zero crossing is \
                     narrower than {probe:.0e}"
                ));
            }
            return Ok(out);
        }
    }
    // No sign change: look for tangential roots at interior grid minima,
    // largest t first.
    for i in 1..GRID_POINTS - 1 {
        if fs[i] <= fs[i - 1] && fs[i] <= fs[i + 1] {
            if let Some(out) = refine_minimum(&f, ts[i + 1], ts[i - 1], tol, &mut evals) {
                return Ok(out);
            }
        }
    }
    Ok(RootOutcome {
        root: None,
        bracket: (t_min, t_max),
        iterations: evals,
        residual: f_top,
        warning: None,
    })
}

/// Refined minimum value of `f` below this counts as a tangential zero;
/// a true double root refines to rounding noise (~1e-15), while benign dips
/// stay orders of magnitude above.
const TANGENT_TOL: f64 = 1e-11;

fn refine_minimum<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    tol: f64,
    evals: &mut u32,
) -> Option<RootOutcome> {
    // Golden-section minimization.
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    *evals += 2;
    while b - a > 1e-11 * b.max(1.0) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        *evals += 1;
    }
    let tm = 0.5 * (a + b);
    let fm = f(tm);
    *evals += 1;
    if fm < -TANGENT_TOL {
        // The grid stepped over a genuine sign-change window; the largest
        // root is on the right flank.
        return Some(bisect(f, tm, hi, tol, *evals, None));
    }
    if fm > TANGENT_TOL {
        return None;
    }
    // |f(tm)| is at rounding-noise level: treat the minimum as a tangential
    // zero. (Near a double root the terms of K̃ cancel to below one ulp over
    // a whole window, so the sign of `fm` there is meaningless.)
    // Tangential root: polish with quadratic-fit vertex steps, whose
    // well-separated samples are insensitive to the rounding noise that
    // limits direct minimization near a flat minimum.
    let root = vertex_polish(f, tm, evals);
    Some(RootOutcome {
        root: Some(root),
        bracket: (root - 1e-6, root + 1e-6),
        iterations: *evals,
        residual: f(root),
        warning: Some(format!(
            "tangential root at t ≈ {root:.9}: K̃ touches zero without a sign change"
        )),
    })
}

/// One quadratic-fit step: fits a parabola through `t`, `t ± delta` and
/// returns its minimizer, clamped to the sample window.
fn vertex_step<F: Fn(f64) -> f64>(f: &F, t: f64, delta: f64, evals: &mut u32) -> f64 {
    let (fm, f0, fp) = (f(t - delta), f(t), f(t + delta));
    *evals += 3;
    let curvature = fp - 2.0 * f0 + fm;
    if curvature <= 0.0 {
        return t;
    }
    let shift = -delta * (fp - fm) / (2.0 * curvature);
    t + shift.clamp(-delta, delta)
}

/// Locates the minimum of a locally convex `f` near `t0` to high accuracy
/// by two vertex steps with shrinking sample spacing.
fn vertex_polish<F: Fn(f64) -> f64>(f: &F, t0: f64, evals: &mut u32) -> f64 {
    let t1 = vertex_step(f, t0, 1e-5, evals);
    vertex_step(f, t1, 1e-6, evals)
}

fn bisect<F: Fn(f64) -> f64>(
    f: &F,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    mut evals: u32,
    warning: Option<String>,
) -> RootOutcome {
    // Invariant: f(lo) ≤ 0 < f(hi).
    while hi - lo > tol && evals < 10_000 {
        let mid = 0.5 * (lo + hi);
        evals += 1;
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    RootOutcome {
        root: Some(root),
        bracket: (lo, hi),
        iterations: evals,
        residual: f(root),
        warning,
    }
}

/// Largest `t` in `[t_min, t_max]` with `K̃_{a,b}(t) = 0`, or `None` when
/// `K̃` stays positive on the whole interval.
pub fn largest_root(
    h: &Hole,
    q: &BasePair,
    t_min: f64,
    t_max: f64,
) -> Result<Option<f64>, KneadingError> {
    Ok(search_root(|t| ktilde(h, q, t), t_min, t_max, DEFAULT_ROOT_TOL)?.root)
}

/// Upper end of the dimension search domain, chosen so the leading term of
/// `K̃` dominates and the bracket precondition holds.
pub fn default_t_max(q: &BasePair) -> f64 {
    4.0 * (std::f64::consts::LN_2 / q.q0().min(q.q1()).ln()).max(1.0)
}

fn entropy_root(h: &Hole) -> Result<RootOutcome, KneadingError> {
    let reduced = extremal_pair(h)?.hole();
    let two = BasePair::new(2.0, 2.0).expect("valid");
    search_root(
        |t| ktilde(&reduced, &two, t),
        DEFAULT_T_MIN,
        1.0,
        DEFAULT_ROOT_TOL,
    )
}

/// Topological entropy of `Ω_{a,b}` in natural log: `log β` for the largest
/// `β ∈ (1, 2]` with `π_{β,β}(a) = π_{β,β}(b)`, or 0 when none exists.
/// Non-admissible holes are reduced through their extremal pair first.
pub fn entropy(h: &Hole) -> Result<f64, KneadingError> {
    Ok(match entropy_root(h)?.root {
        Some(t) => t * std::f64::consts::LN_2,
        None => 0.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    EntropyZero,
    KneadingRoot,
    FullIntervalBoundary,
    PressureRoot,
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaseTag::EntropyZero => "entropy_zero",
            CaseTag::KneadingRoot => "kneading_root",
            CaseTag::FullIntervalBoundary => "full_interval_boundary",
            CaseTag::PressureRoot => "pressure_root",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Diagnostics {
    pub residual: f64,
    pub iterations: u32,
    /// False when an input expansion was truncated without a detected orbit
    /// recurrence, so the hole itself is approximate.
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DimensionResult {
    pub value: f64,
    pub case_tag: CaseTag,
    pub root_bracket: (f64, f64),
    pub diagnostics: Diagnostics,
}

/// Hausdorff dimension of the projected survivor set of `Ω_{a,b}` under
/// `π_{q0,q1}`: 0 when the entropy vanishes, otherwise `min{1, s}` for the
/// largest root `s` of `π_{q0^s,q1^s}(a) = π_{q0^s,q1^s}(b)`.
pub fn dimension(h: &Hole, q: &BasePair) -> Result<DimensionResult, KneadingError> {
    let reduced = extremal_pair(h)?.hole();
    let ent = entropy_root(&reduced)?;
    if ent.root.is_none() {
        return Ok(DimensionResult {
            value: 0.0,
            case_tag: CaseTag::EntropyZero,
            root_bracket: ent.bracket,
            diagnostics: Diagnostics {
                residual: ent.residual,
                iterations: ent.iterations,
                exact: true,
                warning: ent.warning,
            },
        });
    }
    let t_max = default_t_max(q);
    let out = search_root(
        |t| ktilde(&reduced, q, t),
        DEFAULT_T_MIN,
        t_max,
        DEFAULT_ROOT_TOL,
    )?;
    let s = out.root.ok_or(KneadingError::NoRoot {
        t_min: DEFAULT_T_MIN,
        t_max,
    })?;
    Ok(DimensionResult {
        value: s.min(1.0),
        case_tag: CaseTag::KneadingRoot,
        root_bracket: out.bracket,
        diagnostics: Diagnostics {
            residual: out.residual,
            iterations: out.iterations,
            exact: true,
            warning: out.warning,
        },
    })
}

/// The quasi-greedy/quasi-lazy data attached to a base pair: `a`, `b`, the
/// extremal pair `(ℓ, r)`, and status flags.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExpansionSummary {
    pub a: EventuallyPeriodicSequence,
    pub b: EventuallyPeriodicSequence,
    pub ell: EventuallyPeriodicSequence,
    pub r: EventuallyPeriodicSequence,
    /// Whether `(a, b)` is itself admissible.
    pub admissible: bool,
    /// Whether both orbit recurrences were detected exactly.
    pub exact: bool,
    /// False when `q0 + q1 < q0·q1`, where the expansions are not defined
    /// and the reported sequences are formal recursion output only.
    pub in_regime: bool,
}

pub fn expansion_summary(
    q: &BasePair,
    depth_cap: usize,
    tol: f64,
) -> Result<ExpansionSummary, KneadingError> {
    let a = quasi_greedy(1.0 / q.q1(), q, depth_cap, tol)?;
    let b = quasi_lazy(1.0 / (q.q0() * (q.q1() - 1.0)), q, depth_cap, tol)?;
    let hole = Hole::new(a.sequence.clone(), b.sequence.clone())?;
    let pair = extremal_pair(&hole)?;
    Ok(ExpansionSummary {
        a: a.sequence,
        b: b.sequence,
        ell: pair.ell,
        r: pair.r,
        admissible: pair.admissible,
        exact: a.exact && b.exact,
        in_regime: a.in_regime,
    })
}

/// Dimension of the univoque set `𝒰_{q0,q1}`, dispatching on the regime:
/// at or above `q1 = q0/(q0−1)` the set is the full shift and the dimension
/// solves `q0^{−s} + q1^{−s} = 1` (exactly 1 on the boundary); below it, the
/// hole comes from the quasi-greedy/quasi-lazy expansions.
pub fn univoque_dimension(q: &BasePair) -> Result<DimensionResult, KneadingError> {
    let (q0, q1) = (q.q0(), q.q1());
    let boundary_gap = q1 * (q0 - 1.0) - q0;
    if boundary_gap.abs() <= 1e-9 * q0 {
        return Ok(DimensionResult {
            value: 1.0,
            case_tag: CaseTag::FullIntervalBoundary,
            root_bracket: (1.0, 1.0),
            diagnostics: Diagnostics {
                residual: 0.0,
                iterations: 0,
                exact: true,
                warning: None,
            },
        });
    }
    if boundary_gap > 0.0 {
        return Ok(pressure_dimension(q));
    }
    let summary = expansion_summary(q, DEFAULT_DEPTH_CAP, DEFAULT_ORBIT_TOL)?;
    let h = Hole::new(summary.ell, summary.r)?;
    let mut res = dimension(&h, q)?;
    res.diagnostics.exact &= summary.exact;
    Ok(res)
}

/// Root of the pressure equation `q0^{−s} + q1^{−s} = 1`; the left side is
/// strictly decreasing in `s` from 2 at `s = 0`, and in the `q1 > q0/(q0−1)`
/// regime it is below 1 at `s = 1`, so the root lies in `(0, 1)`.
fn pressure_dimension(q: &BasePair) -> DimensionResult {
    let g = |s: f64| q.q0().powf(-s) + q.q1().powf(-s) - 1.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut iterations = 0u32;
    while hi - lo > DEFAULT_ROOT_TOL && iterations < 10_000 {
        let mid = 0.5 * (lo + hi);
        iterations += 1;
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let s = 0.5 * (lo + hi);
    DimensionResult {
        value: s,
        case_tag: CaseTag::PressureRoot,
        root_bracket: (lo, hi),
        diagnostics: Diagnostics {
            residual: g(s),
            iterations,
            exact: true,
            warning: None,
        },
    }
}

#[derive(Debug, Error)]
pub enum SubstitutionError {
    #[error("φ(0) must start with 0 and φ(1) with 1 (both nonempty)")]
    BadImages,
}

/// A substitution `0 ↦ image0, 1 ↦ image1` with `φ(i)` starting with `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    image0: Word,
    image1: Word,
}

impl Substitution {
    pub fn new(image0: Word, image1: Word) -> Result<Self, SubstitutionError> {
        if image0.is_empty() || image0.digit(0) != 0 || image1.is_empty() || image1.digit(0) != 1 {
            return Err(SubstitutionError::BadImages);
        }
        Ok(Substitution { image0, image1 })
    }

    pub fn image(&self, d: u8) -> &Word {
        if d == 0 {
            &self.image0
        } else {
            &self.image1
        }
    }

    pub fn apply_word(&self, w: &Word) -> Word {
        let mut out = Vec::new();
        for i in 0..w.len() {
            out.extend_from_slice(self.image(w.digit(i)).digits());
        }
        Word::from_digits(&out)
    }
}

/// Digitwise image of an eventually periodic sequence; the period maps to
/// the image of the period.
pub fn apply_substitution(
    phi: &Substitution,
    x: &EventuallyPeriodicSequence,
) -> EventuallyPeriodicSequence {
    EventuallyPeriodicSequence::new(phi.apply_word(x.preperiod()), phi.apply_word(x.period()))
        .expect("images nonempty")
}

/// Convenience: dimension for a hole given by endpoints (reduced first).
pub fn dim_pair(
    a: &EventuallyPeriodicSequence,
    b: &EventuallyPeriodicSequence,
    q: &BasePair,
) -> Result<f64, KneadingError> {
    let h = Hole::new(a.clone(), b.clone())?;
    Ok(dimension(&h, q)?.value)
}

#[derive(Debug, Clone, Serialize)]
pub struct EqualDimReport {
    /// `d(u^∞, v^∞)`.
    pub dim_periodic: f64,
    /// `d(u·v^∞, v·u^∞)`.
    pub dim_mixed: f64,
    pub difference: f64,
    /// Entropy of `Ω_{u^∞, v^∞}`.
    pub entropy: f64,
    /// The equality hypothesis: positive entropy of the periodic pair.
    pub hypothesis_holds: bool,
}

/// Compares `d(u^∞, v^∞)` with `d(uv^∞, vu^∞)`; the two agree whenever the
/// periodic pair's subshift has positive entropy.
pub fn check_equaldim(u: &Word, v: &Word, q: &BasePair) -> Result<EqualDimReport, KneadingError> {
    let uu = EventuallyPeriodicSequence::periodic(u)?;
    let vv = EventuallyPeriodicSequence::periodic(v)?;
    let dim_periodic = dim_pair(&uu, &vv, q)?;
    let dim_mixed = dim_pair(&vv.prepend(u), &uu.prepend(v), q)?;
    let ent = entropy(&Hole::new(uu, vv)?)?;
    Ok(EqualDimReport {
        dim_periodic,
        dim_mixed,
        difference: (dim_periodic - dim_mixed).abs(),
        entropy: ent,
        hypothesis_holds: ent > 1e-9,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> EventuallyPeriodicSequence {
        s.parse().unwrap()
    }

    fn hole(a: &str, b: &str) -> Hole {
        Hole::new(seq(a), seq(b)).unwrap()
    }

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Real root of β³ = β + 1 (the plastic number), by bisection.
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

    /// Real root of q³ = 2q² + q − 1, by bisection.
    fn example_q0() -> f64 {
        let f = |q: f64| q * q * q - 2.0 * q * q - q + 1.0;
        let (mut lo, mut hi) = (2.0, 3.0);
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
    fn ktilde_full_shift_is_pressure_function() {
        let h = hole("0(1)", "1(0)");
        for (q0, q1, t) in [(2.0, 2.0, 1.0), (1.8, 2.2, 0.7), (3.0, 1.4, 1.3)] {
            let q = BasePair::new(q0, q1).unwrap();
            let expect = 1.0 - q0.powf(-t) - q1.powf(-t);
            assert!((ktilde(&h, &q, t) - expect).abs() < 1e-12, "({q0},{q1},{t})");
        }
    }

    #[test]
    fn ktilde_zero_at_plastic_number() {
        let beta = plastic();
        let q = BasePair::new(beta, beta).unwrap();
        assert!(ktilde(&hole("(011)", "(10)"), &q, 1.0).abs() < 1e-12);
    }

    #[test]
    fn ktilde_positive_for_large_t() {
        let q = BasePair::new(2.2, 1.5).unwrap();
        assert!(ktilde(&hole("(011)", "(10)"), &q, 25.0) > 0.0);
    }

    #[test]
    fn largest_root_base_two_full_shift() {
        let q = BasePair::new(2.0, 2.0).unwrap();
        let t = largest_root(&hole("0(1)", "1(0)"), &q, 1e-4, 4.0)
            .unwrap()
            .unwrap();
        assert!((t - 1.0).abs() < 1e-9);
    }

    #[test]
    fn entropy_plastic_fixture() {
        let ent = entropy(&hole("(011)", "(10)")).unwrap();
        let beta = ent.exp();
        assert!((beta - plastic()).abs() < 1e-9, "beta = {beta}");
        assert!((beta - 1.3247179572).abs() < 1e-9);
    }

    #[test]
    fn entropy_edge_fixtures() {
        assert_eq!(entropy(&hole("(01)", "(10)")).unwrap(), 0.0);
        let half_log2 = 0.5 * std::f64::consts::LN_2;
        assert!((entropy(&hole("01(10)", "10(01)")).unwrap() - half_log2).abs() < 1e-9);
        assert!((entropy(&hole("0(1)", "1(0)")).unwrap() - std::f64::consts::LN_2).abs() < 1e-9);
    }

    #[test]
    fn entropy_matches_reduced_hole() {
        let raw = hole("011(100)", "(10)");
        let reduced = extremal_pair(&raw).unwrap().hole();
        assert_eq!(entropy(&raw).unwrap(), entropy(&reduced).unwrap());
    }

    #[test]
    fn dimension_worked_example() {
        let q = example_pair();
        let d = dimension(&hole("(011)", "(10)"), &q).unwrap();
        assert_eq!(d.case_tag, CaseTag::KneadingRoot);
        assert!((d.value - 0.512255).abs() < 1e-5, "value = {}", d.value);
        assert!(d.diagnostics.residual.abs() < 1e-10);
    }

    #[test]
    fn dimension_trivial_cases() {
        let q = BasePair::new(2.0, 2.0).unwrap();
        let d = dimension(&hole("(0)", "(1)"), &q).unwrap();
        assert_eq!(d.value, 0.0);
        assert_eq!(d.case_tag, CaseTag::EntropyZero);
        let d = dimension(&hole("0(1)", "1(0)"), &q).unwrap();
        assert!((d.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dimension_matches_entropy_for_equal_bases() {
        for (a, b) in [("(011)", "(10)"), ("01(10)", "10(01)"), ("0(1)", "1(0)")] {
            let h = hole(a, b);
            let ent = entropy(&h).unwrap();
            for qv in [1.2, 2.0, 3.0] {
                let q = BasePair::new(qv, qv).unwrap();
                let d = dimension(&h, &q).unwrap().value;
                let expect = (ent / qv.ln()).min(1.0);
                assert!((d - expect).abs() < 1e-8, "hole ({a},{b}), q={qv}");
            }
        }
    }

    #[test]
    fn dimension_scaling_law() {
        let q = example_pair();
        let h = hole("(011)", "(10)");
        let s = dimension(&h, &q).unwrap().value;
        for c in [0.5, 2.0] {
            let qc = BasePair::new(q.q0().powf(c), q.q1().powf(c)).unwrap();
            let sc = dimension(&h, &qc).unwrap().value;
            assert!((sc - (s / c).min(1.0)).abs() < 1e-8, "c = {c}");
        }
    }

    #[test]
    fn ktilde_positive_above_root() {
        let q = example_pair();
        let h = hole("(011)", "(10)");
        let d = dimension(&h, &q).unwrap();
        let t_max = default_t_max(&q);
        for i in 1..=100 {
            let t = d.value + (t_max - d.value) * f64::from(i) / 100.0;
            assert!(ktilde(&h, &q, t) > 0.0, "t = {t}");
        }
    }

    #[test]
    fn expansion_summary_worked_example() {
        let q = example_pair();
        let s = expansion_summary(&q, 256, 1e-12).unwrap();
        assert_eq!(s.a, seq("011(100)"));
        assert_eq!(s.b, seq("(10)"));
        assert_eq!(s.ell, seq("(011)"));
        assert_eq!(s.r, seq("(10)"));
        assert!(!s.admissible);
        assert!(s.exact && s.in_regime);
    }

    #[test]
    fn univoque_dimension_worked_example() {
        let q = example_pair();
        let d = univoque_dimension(&q).unwrap();
        assert!((d.value - 0.512255).abs() < 1e-5, "value = {}", d.value);
        assert_eq!(d.case_tag, CaseTag::KneadingRoot);
    }

    #[test]
    fn univoque_dimension_dispatch() {
        // Boundary q1 = q0/(q0−1).
        let d = univoque_dimension(&BasePair::new(2.0, 2.0).unwrap()).unwrap();
        assert_eq!(d.value, 1.0);
        assert_eq!(d.case_tag, CaseTag::FullIntervalBoundary);
        // Pressure regime.
        let d = univoque_dimension(&BasePair::new(3.0, 3.0).unwrap()).unwrap();
        assert_eq!(d.case_tag, CaseTag::PressureRoot);
        assert!((d.value - 2f64.ln() / 3f64.ln()).abs() < 1e-9);
        // Below the generalized golden ratio: trivial univoque set.
        let d = univoque_dimension(&BasePair::new(1.5, 1.5).unwrap()).unwrap();
        assert_eq!(d.value, 0.0);
        assert_eq!(d.case_tag, CaseTag::EntropyZero);
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        let d = univoque_dimension(&BasePair::new(phi - 0.02, phi - 0.02).unwrap()).unwrap();
        assert_eq!(d.value, 0.0);
    }

    #[test]
    fn substitution_examples() {
        let phi = Substitution::new(word("011"), word("10")).unwrap();
        assert_eq!(apply_substitution(&phi, &seq("(01)")), seq("(01110)"));
        assert_eq!(apply_substitution(&phi, &seq("(10)")), seq("(10011)"));
        let id = Substitution::new(word("0"), word("1")).unwrap();
        assert_eq!(apply_substitution(&id, &seq("011(100)")), seq("011(100)"));
        assert!(Substitution::new(word("10"), word("1")).is_err());
    }

    #[test]
    fn fibonacci_substitution_fixed_point() {
        let psi = Substitution::new(word("010"), word("10")).unwrap();
        // Iterating on 0 converges to the fixed point prefix 0100101001001…
        let mut w = word("0");
        for _ in 0..8 {
            w = psi.apply_word(&w);
        }
        let fixed = psi.apply_word(&w);
        assert_eq!(&fixed.digits()[..w.len()], w.digits());
    }

    #[test]
    fn equaldim_theorem_case() {
        for (q0, q1) in [(2.0, 2.0), (2.3, 1.7), (1.9, 2.4)] {
            let q = BasePair::new(q0, q1).unwrap();
            let rep = check_equaldim(&word("011"), &word("10"), &q).unwrap();
            assert!(rep.hypothesis_holds);
            assert!(rep.difference < 1e-9, "({q0},{q1}): diff = {}", rep.difference);
        }
    }

    #[test]
    fn equaldim_counterexamples() {
        let q = BasePair::new(2.0, 2.0).unwrap();
        let rep = check_equaldim(&word("0"), &word("1"), &q).unwrap();
        assert!(!rep.hypothesis_holds);
        assert_eq!(rep.dim_periodic, 0.0);
        assert!(rep.dim_mixed > 0.5);
        let rep = check_equaldim(&word("01"), &word("10"), &q).unwrap();
        assert!(!rep.hypothesis_holds);
        assert_eq!(rep.dim_periodic, 0.0);
        assert!((rep.dim_mixed - 0.5).abs() < 1e-8);
    }

    #[test]
    fn onesided_identities() {
        // d(u^∞, b) = d(u·b, b) and d(a, v^∞) = d(a, v·a) when the entropy
        // hypothesis holds.
        let q = example_pair();
        let (u, v) = (word("011"), word("10"));
        let b = seq("(10)");
        let lhs = dim_pair(&EventuallyPeriodicSequence::periodic(&u).unwrap(), &b, &q).unwrap();
        let rhs = dim_pair(&b.prepend(&u), &b, &q).unwrap();
        assert!((lhs - rhs).abs() < 1e-9);
        let a = seq("(011)");
        let lhs = dim_pair(&a, &EventuallyPeriodicSequence::periodic(&v).unwrap(), &q).unwrap();
        let rhs = dim_pair(&a, &a.prepend(&v), &q).unwrap();
        assert!((lhs - rhs).abs() < 1e-9);
    }
}
