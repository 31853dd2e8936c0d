//! An instrumented quicksort laboratory.
//!
//! Two partitioning algorithms — classic Hoare-style quicksort and
//! Yaroslavskiy's dual-pivot quicksort — run on top of an instrumented array
//! that counts key comparisons, swaps and *scanned elements* (one unit per
//! (index variable, index value) pair used to access the array, a proxy for
//! memory traffic). Pivots can be sampled as the median of 2t+1 elements,
//! the tertiles of 3t+2 elements, or the ninther.
//!
//! The [`analysis`] module predicts the same costs independently: it solves
//! the expected-cost recurrences of both algorithms (exact rationals at small
//! n, floats at large n), evaluates the asymptotic leading constants, and
//! provides an exhaustive small-n oracle so that measured and predicted costs
//! can be cross-validated exactly.
//!
//! The [`harness`] module runs seeded, reproducible experiments and emits
//! CSV or SVG reports; the `sortlab` binary exposes everything as a CLI.

pub mod analysis;
pub mod chart;
pub mod cost;
pub mod harness;
pub mod rng;
pub mod sorters;
