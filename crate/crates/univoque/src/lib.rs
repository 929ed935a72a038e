//! Unique-expansion subshifts for a pair of real bases `q0, q1 > 1`:
//! quasi-greedy/quasi-lazy expansions, the subshift with a hole `Ω_{a,b}`,
//! its topological entropy, and the Hausdorff dimension of the univoque set,
//! all via largest-root characterizations of the kneading invariant, with
//! brute-force oracles for validation.

pub mod cli;
pub mod expansions;
pub mod kneading;
pub mod oracle;
pub mod sequences;
pub mod subshift;
