//! Finite binary words and eventually periodic binary sequences.
//!
//! A sequence is stored in canonical form as `preperiod (period)^∞` where the
//! period is primitive and the preperiod is as short as possible. Canonical
//! forms are unique, so structural equality is sequence equality.
//!
//! The literal grammar is `[01]* "(" [01]+ ")"`, e.g. `011(100)` for
//! `011 100 100 100 ...`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Comparisons walking more digits than this are assumed pathological.
pub const DEFAULT_COMPARE_LIMIT: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SequenceError {
    #[error("period must be nonempty")]
    EmptyPeriod,
    #[error("invalid digit {0:?}, expected '0' or '1'")]
    InvalidDigit(char),
    #[error("malformed sequence literal {0:?}, expected [01]*\"(\"[01]+\")\"")]
    Malformed(String),
    #[error("lexicographic comparison exceeded the limit of {0} digits")]
    CompareLimit(usize),
}

/// A finite word over {0,1}.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_digits(digits: &[u8]) -> Self {
        assert!(digits.iter().all(|&d| d <= 1), "digits must be 0 or 1");
        Word(digits.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn digit(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }

    pub fn complement(&self) -> Word {
        Word(self.0.iter().map(|d| 1 - d).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut digits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => digits.push(0),
                '1' => digits.push(1),
                other => return Err(SequenceError::InvalidDigit(other)),
            }
        }
        Ok(Word(digits))
    }
}

impl TryFrom<String> for Word {
    type Error = SequenceError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

/// An eventually periodic binary sequence `preperiod (period)^∞`, kept in
/// canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct EventuallyPeriodicSequence {
    preperiod: Word,
    period: Word,
}

impl EventuallyPeriodicSequence {
    pub fn new(preperiod: Word, period: Word) -> Result<Self, SequenceError> {
        if period.is_empty() {
            return Err(SequenceError::EmptyPeriod);
        }
        let (pre, per) = canonicalize(preperiod.0, period.0);
        Ok(EventuallyPeriodicSequence {
            preperiod: Word(pre),
            period: Word(per),
        })
    }

    /// The purely periodic sequence `w^∞`.
    pub fn periodic(word: &Word) -> Result<Self, SequenceError> {
        Self::new(Word::empty(), word.clone())
    }

    pub fn zeros() -> Self {
        Self::periodic(&Word(vec![0])).unwrap()
    }

    pub fn ones() -> Self {
        Self::periodic(&Word(vec![1])).unwrap()
    }

    pub fn preperiod(&self) -> &Word {
        &self.preperiod
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    pub fn digit(&self, n: usize) -> u8 {
        if n < self.preperiod.len() {
            self.preperiod.digit(n)
        } else {
            self.period.digit((n - self.preperiod.len()) % self.period.len())
        }
    }

    /// First `n` digits as a word.
    pub fn prefix(&self, n: usize) -> Word {
        Word((0..n).map(|i| self.digit(i)).collect())
    }

    /// Number of shifts after which the suffixes start repeating; every
    /// distinct suffix is `self.shift(n)` for some `n < suffix_count()`.
    pub fn suffix_count(&self) -> usize {
        self.preperiod.len() + self.period.len()
    }

    pub fn is_periodic(&self) -> bool {
        self.preperiod.is_empty()
    }

    /// Drops the first `n` digits.
    pub fn shift(&self, n: usize) -> Self {
        if n <= self.preperiod.len() {
            Self::new(Word(self.preperiod.0[n..].to_vec()), self.period.clone())
                .expect("period stays nonempty")
        } else {
            let k = self.period.len();
            let r = (n - self.preperiod.len()) % k;
            let mut per = self.period.0.clone();
            per.rotate_left(r);
            Self::new(Word::empty(), Word(per)).expect("period stays nonempty")
        }
    }

    /// Prepends the finite word `w`.
    pub fn prepend(&self, w: &Word) -> Self {
        Self::new(w.concat(&self.preperiod), self.period.clone()).expect("period stays nonempty")
    }

    /// Flips every digit.
    pub fn complement(&self) -> Self {
        Self::new(self.preperiod.complement(), self.period.complement())
            .expect("period stays nonempty")
    }

    /// Lexicographic comparison, walking at most `limit` digits.
    ///
    /// Canonical forms are unique, so equality is detected structurally;
    /// unequal sequences must differ within
    /// `|pre_x| + |pre_y| + lcm(|per_x|, |per_y|)` digits.
    pub fn compare_within(
        &self,
        other: &Self,
        limit: usize,
    ) -> Result<Ordering, SequenceError> {
        if self == other {
            return Ok(Ordering::Equal);
        }
        let bound = self
            .preperiod
            .len()
            .saturating_add(other.preperiod.len())
            .saturating_add(lcm(self.period.len(), other.period.len()));
        for n in 0..bound.min(limit) {
            let (x, y) = (self.digit(n), other.digit(n));
            if x != y {
                return Ok(x.cmp(&y));
            }
        }
        if bound <= limit {
            // Unreachable for distinct canonical forms; kept as a safeguard.
            Ok(Ordering::Equal)
        } else {
            Err(SequenceError::CompareLimit(limit))
        }
    }

    pub fn compare(&self, other: &Self) -> Ordering {
        self.compare_within(other, DEFAULT_COMPARE_LIMIT)
            .expect("comparison limit exceeded")
    }
}

impl PartialOrd for EventuallyPeriodicSequence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EventuallyPeriodicSequence {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Display for EventuallyPeriodicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.preperiod, self.period)
    }
}

impl fmt::Debug for EventuallyPeriodicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Seq({self})")
    }
}

impl FromStr for EventuallyPeriodicSequence {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || SequenceError::Malformed(s.to_string());
        let body = s.strip_suffix(')').ok_or_else(malformed)?;
        let (pre, per) = body.split_once('(').ok_or_else(malformed)?;
        if per.is_empty() || per.contains('(') || per.contains(')') {
            return Err(malformed());
        }
        Self::new(pre.parse()?, per.parse()?)
    }
}

impl TryFrom<String> for EventuallyPeriodicSequence {
    type Error = SequenceError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<EventuallyPeriodicSequence> for String {
    fn from(x: EventuallyPeriodicSequence) -> String {
        x.to_string()
    }
}

fn canonicalize(mut pre: Vec<u8>, mut per: Vec<u8>) -> (Vec<u8>, Vec<u8>) {
    // Reduce the period to its primitive root.
    let k = per.len();
    for d in 1..=k / 2 {
        if k % d == 0 && per.chunks(d).all(|c| c == &per[..d]) {
            per.truncate(d);
            break;
        }
    }
    // Absorb the tail of the preperiod into the period while the boundary
    // digit agrees with the period-aligned digit before it.
    while let Some(&last) = pre.last() {
        if last == *per.last().unwrap() {
            pre.pop();
            per.rotate_right(1);
        } else {
            break;
        }
    }
    (pre, per)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
