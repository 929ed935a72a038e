//! The subshift with a hole `Ω_{a,b}`: membership, extremal pairs,
//! admissibility, language counting, and cylinder extremes.
//!
//! `Ω_{a,b}` is the set of binary sequences none of whose suffixes lies
//! strictly between `a` and `b` in lexicographic order. Counting length-`n`
//! prefixes uses an automaton whose state tracks, via KMP failure links, the
//! longest suffix of the word read so far that equals a prefix of `a` and of
//! `b`: a suffix starting with 0 kills the word once it exceeds `a` at a
//! decided position, and a suffix starting with 1 once it drops below `b`.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::expansions::{project, BasePair};
use crate::sequences::{EventuallyPeriodicSequence, SequenceError, Word};

/// Safety cap on the extremal-pair reduction loop.
pub const REDUCTION_CAP: usize = 10_000;

#[derive(Debug, Error)]
pub enum SubshiftError {
    #[error("hole endpoint a must start with 0 and b with 1")]
    BadEndpoints,
    #[error("hole requires a ≺ b")]
    NotOrdered,
    #[error("operation requires an admissible hole (pair in W); reduce via extremal_pair first")]
    NonAdmissible,
    #[error("extremal-pair reduction did not stabilize within {0} steps")]
    ReductionCap(usize),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

/// An ordered pair `(a, b)` with `a ≺ b`, `a` starting 0 and `b` starting 1,
/// defining the subshift `Ω_{a,b}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hole {
    a: EventuallyPeriodicSequence,
    b: EventuallyPeriodicSequence,
}

impl Hole {
    pub fn new(
        a: EventuallyPeriodicSequence,
        b: EventuallyPeriodicSequence,
    ) -> Result<Self, SubshiftError> {
        if a.digit(0) != 0 || b.digit(0) != 1 {
            return Err(SubshiftError::BadEndpoints);
        }
        if a.compare(&b) != std::cmp::Ordering::Less {
            return Err(SubshiftError::NotOrdered);
        }
        Ok(Hole { a, b })
    }

    pub fn a(&self) -> &EventuallyPeriodicSequence {
        &self.a
    }

    pub fn b(&self) -> &EventuallyPeriodicSequence {
        &self.b
    }
}

/// True iff `x` lies strictly between the hole endpoints.
fn strictly_inside(x: &EventuallyPeriodicSequence, h: &Hole) -> bool {
    use std::cmp::Ordering::*;
    x.compare(&h.a) == Greater && x.compare(&h.b) == Less
}

/// Membership in `Ω_{a,b}`: no suffix of `x` lies strictly inside the hole.
/// Decidable because `x` has only `suffix_count()` distinct suffixes.
pub fn in_omega(x: &EventuallyPeriodicSequence, h: &Hole) -> bool {
    (0..x.suffix_count()).all(|n| !strictly_inside(&x.shift(n), h))
}

/// True iff `(a, b)` is admissible (the pair belongs to `W`), i.e. both
/// endpoints are themselves members of `Ω_{a,b}`.
pub fn is_admissible(h: &Hole) -> bool {
    in_omega(&h.a, h) && in_omega(&h.b, h)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalPair {
    pub ell: EventuallyPeriodicSequence,
    pub r: EventuallyPeriodicSequence,
    /// Whether the input pair was already admissible.
    pub admissible: bool,
}

impl ExtremalPair {
    pub fn hole(&self) -> Hole {
        Hole::new(self.ell.clone(), self.r.clone()).expect("extremal pair is a valid hole")
    }
}

/// The extremal pair `(ℓ, r)`: largest element of `Ω_{a,b}` at most `a` and
/// smallest at least `b`. Computed by repeatedly replacing an endpoint whose
/// suffix falls strictly inside the hole with the periodization of the prefix
/// before that suffix; each replacement defines the same subshift, and the
/// loop terminates because the candidate periods shrink.
pub fn extremal_pair(h: &Hole) -> Result<ExtremalPair, SubshiftError> {
    let admissible = is_admissible(h);
    let mut cur = h.clone();
    for _ in 0..REDUCTION_CAP {
        let bad_a = (1..cur.a.suffix_count()).find(|&n| strictly_inside(&cur.a.shift(n), &cur));
        if let Some(n) = bad_a {
            let a = EventuallyPeriodicSequence::periodic(&cur.a.prefix(n))?;
            cur = Hole::new(a, cur.b)?;
            continue;
        }
        let bad_b = (1..cur.b.suffix_count()).find(|&n| strictly_inside(&cur.b.shift(n), &cur));
        if let Some(n) = bad_b {
            let b = EventuallyPeriodicSequence::periodic(&cur.b.prefix(n))?;
            cur = Hole::new(cur.a, b)?;
            continue;
        }
        debug_assert!(is_admissible(&cur));
        return Ok(ExtremalPair {
            ell: cur.a,
            r: cur.b,
            admissible,
        });
    }
    Err(SubshiftError::ReductionCap(REDUCTION_CAP))
}

/// Word-counting automaton for an admissible hole.
///
/// State `(j, k)` records the longest suffix of the word read so far equal to
/// a length-`j` prefix of `a` and a length-`k` prefix of `b`. Appending a
/// digit is fatal iff some active match — any entry of either failure chain —
/// is deviated from on the wrong side: above `a` or below `b`.
pub struct HoleAutomaton {
    a_digits: Vec<u8>,
    b_digits: Vec<u8>,
    a_fail: Vec<usize>,
    b_fail: Vec<usize>,
}

pub type AutomatonState = (usize, usize);

impl HoleAutomaton {
    /// Builds the automaton for words of length at most `max_len`.
    pub fn new(h: &Hole, max_len: usize) -> Self {
        let a_digits: Vec<u8> = (0..=max_len).map(|i| h.a.digit(i)).collect();
        let b_digits: Vec<u8> = (0..=max_len).map(|i| h.b.digit(i)).collect();
        let a_fail = failure_function(&a_digits);
        let b_fail = failure_function(&b_digits);
        HoleAutomaton {
            a_digits,
            b_digits,
            a_fail,
            b_fail,
        }
    }

    pub const START: AutomatonState = (0, 0);

    /// Appends `d`; `None` means every continuation of the word is excluded.
    pub fn step(&self, state: AutomatonState, d: u8) -> Option<AutomatonState> {
        let (j, k) = state;
        // A suffix equal to a_1..a_{j'} followed by d > a_{j'+1} exceeds a at
        // a decided position; it starts with 0, so it is already below b.
        let mut t = j;
        while t > 0 {
            if d > self.a_digits[t] {
                return None;
            }
            t = self.a_fail[t];
        }
        let mut t = k;
        while t > 0 {
            if d < self.b_digits[t] {
                return None;
            }
            t = self.b_fail[t];
        }
        Some((
            advance(&self.a_digits, &self.a_fail, j, d),
            advance(&self.b_digits, &self.b_fail, k, d),
        ))
    }
}

/// KMP failure function: `fail[j]` is the length of the longest proper border
/// of `pat[..j]`.
fn failure_function(pat: &[u8]) -> Vec<usize> {
    let mut fail = vec![0usize; pat.len() + 1];
    let mut k = 0;
    for j in 1..pat.len() {
        while k > 0 && pat[j] != pat[k] {
            k = fail[k];
        }
        if pat[j] == pat[k] {
            k += 1;
        }
        fail[j + 1] = k;
    }
    fail
}

fn advance(pat: &[u8], fail: &[usize], mut j: usize, d: u8) -> usize {
    while j > 0 && (j >= pat.len() || pat[j] != d) {
        j = fail[j];
    }
    if j < pat.len() && pat[j] == d {
        j + 1
    } else {
        j
    }
}

/// Exact size of `L_{a,b,n}`, the set of length-`n` prefixes of `Ω_{a,b}`.
pub fn language_count(h: &Hole, n: usize) -> Result<u64, SubshiftError> {
    if !is_admissible(h) {
        return Err(SubshiftError::NonAdmissible);
    }
    let auto = HoleAutomaton::new(h, n);
    let mut states: HashMap<AutomatonState, u64> = HashMap::from([(HoleAutomaton::START, 1)]);
    for _ in 0..n {
        let mut next: HashMap<AutomatonState, u64> = HashMap::new();
        for (&s, &c) in &states {
            for d in [0u8, 1u8] {
                if let Some(s2) = auto.step(s, d) {
                    *next.entry(s2).or_insert(0) += c;
                }
            }
        }
        states = next;
    }
    Ok(states.values().sum())
}

/// All words of `L_{a,b,n}`, in lexicographic order.
pub fn enumerate_language(h: &Hole, n: usize) -> Result<Vec<Word>, SubshiftError> {
    if !is_admissible(h) {
        return Err(SubshiftError::NonAdmissible);
    }
    let auto = HoleAutomaton::new(h, n);
    let mut out = Vec::new();
    let mut digits = Vec::with_capacity(n);
    dfs(&auto, HoleAutomaton::START, n, &mut digits, &mut out);
    Ok(out)
}

fn dfs(
    auto: &HoleAutomaton,
    state: AutomatonState,
    left: usize,
    digits: &mut Vec<u8>,
    out: &mut Vec<Word>,
) {
    if left == 0 {
        out.push(Word::from_digits(digits));
        return;
    }
    for d in [0u8, 1u8] {
        if let Some(s2) = auto.step(state, d) {
            digits.push(d);
            dfs(auto, s2, left - 1, digits, out);
            digits.pop();
        }
    }
}

/// Size of `Q_{a,b,n}`: words `w ∈ L_n` such that both eventually periodic
/// extensions `w·a` and `w·b` stay in `Ω_{a,b}`.
pub fn q_count(h: &Hole, n: usize) -> Result<u64, SubshiftError> {
    Ok(q_words(h, n)?.len() as u64)
}

fn q_words(h: &Hole, n: usize) -> Result<Vec<Word>, SubshiftError> {
    Ok(enumerate_language(h, n)?
        .into_iter()
        .filter(|w| in_omega(&h.a.prepend(w), h) && in_omega(&h.b.prepend(w), h))
        .collect())
}

/// Verifies the unique-decomposition property at length `n`: every `w ∈ L_n`
/// other than `1^n` splits uniquely as `u · a_1..a_{n-k}` with `u ∈ Q_k`, and
/// symmetrically with `b` for `w ≠ 0^n`.
pub fn check_decomposition(h: &Hole, n: usize) -> Result<bool, SubshiftError> {
    let lang = enumerate_language(h, n)?;
    let q_sets: Vec<HashSet<Vec<u8>>> = (0..n)
        .map(|k| {
            Ok(q_words(h, k)?
                .into_iter()
                .map(|w| w.digits().to_vec())
                .collect())
        })
        .collect::<Result<_, SubshiftError>>()?;
    let a_pre: Vec<u8> = (0..n).map(|i| h.a.digit(i)).collect();
    let b_pre: Vec<u8> = (0..n).map(|i| h.b.digit(i)).collect();
    for w in &lang {
        let w = w.digits();
        for (pre, skip) in [(&a_pre, 1u8), (&b_pre, 0u8)] {
            if w.iter().all(|&d| d == skip) {
                continue;
            }
            let matches = (0..n)
                .filter(|&k| w[k..] == pre[..n - k] && q_sets[k].contains(&w[..k]))
                .count();
            if matches != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderExtreme {
    /// `max π` over members of `Ω_{a,b}` starting with 0.
    pub max_zero: f64,
    /// `min π` over members of `Ω_{a,b}` starting with 1.
    pub min_one: f64,
    /// Whether `π(Ω_{a,b})` fills the whole attractor `[0, 1/(q1-1)]`.
    pub full: bool,
}

/// Projections of the cylinder extremes.
///
/// For an admissible hole the lexicographic extremes are the endpoints
/// themselves: an element starting 0 that exceeded `a` would be its own bad
/// suffix (it is below `b` from its first digit), so `a` is the largest in
/// the `[0]`-cylinder and, symmetrically, `b` the smallest in `[1]`. With
/// `π` monotone on the expansion regime the projections follow directly.
pub fn cylinder_extreme(h: &Hole, q: &BasePair) -> Result<CylinderExtreme, SubshiftError> {
    if !is_admissible(h) {
        return Err(SubshiftError::NonAdmissible);
    }
    let max_zero = project(&h.a, q);
    let min_one = project(&h.b, q);
    Ok(CylinderExtreme {
        max_zero,
        min_one,
        full: max_zero >= min_one,
    })
}
