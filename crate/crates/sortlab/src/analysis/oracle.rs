//! Exhaustive small-n oracle and empirical toll measurement.
//!
//! The oracle runs the instrumented implementation on all n! permutations of
//! distinct keys and averages the counters exactly. It is independent of the
//! recurrence machinery, which makes "oracle expectation == recurrence with
//! measured tolls" a real two-sided check of the model's recursion structure.

use super::recurrence::{EmpiricalTolls, TollValues};
use super::CostKind;
use crate::cost::{CostCounters, InstrumentedArray};
use crate::rng::{gen_permutation, sub_seed};
use crate::sorters::{
    classic_partition, dual_partition, quicksort, select_pivots, Algorithm, SamplingScheme,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

/// Factorial blowup guard for exhaustive enumeration.
pub const EXHAUSTIVE_LIMIT: usize = 9;

/// The sampling scheme the recurrence with parameter t models.
pub fn scheme_for(algorithm: Algorithm, t: usize) -> SamplingScheme {
    match algorithm {
        Algorithm::Classic => SamplingScheme::ClassicMedian { t },
        Algorithm::DualPivot => SamplingScheme::DualTertiles { t },
    }
}

/// Stitching horizon n0 = sample size + 2: recurrence values below it come
/// from the oracle, so implementation and model agree below the sampling
/// horizon.
pub fn base_horizon(algorithm: Algorithm, t: usize) -> usize {
    scheme_for(algorithm, t).sample_size() + 2
}

/// Visit every permutation of the keys 1..=n (Heap's algorithm).
pub fn for_each_permutation(n: usize, f: &mut dyn FnMut(&[i64])) {
    let mut a: Vec<i64> = (1..=n as i64).collect();
    f(&a);
    if n < 2 {
        return;
    }
    let mut c = vec![0usize; n];
    let mut i = 0usize;
    while i < n {
        if c[i] < i {
            if i.is_multiple_of(2) {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Exact expected counters.
#[derive(Clone, Debug, PartialEq)]
pub struct MeanCounters {
    pub comparisons: BigRational,
    pub swaps: BigRational,
    pub scanned_elements: BigRational,
}

impl MeanCounters {
    pub fn pick(&self, kind: CostKind) -> BigRational {
        match kind {
            CostKind::Comparisons => self.comparisons.clone(),
            CostKind::ScannedElements => self.scanned_elements.clone(),
        }
    }
}

fn mean_over_permutations(n: usize, mut run: impl FnMut(&mut InstrumentedArray)) -> MeanCounters {
    assert!(
        n <= EXHAUSTIVE_LIMIT,
        "exhaustive enumeration capped at n = {EXHAUSTIVE_LIMIT}, got {n}"
    );
    let mut cmp: u128 = 0;
    let mut swp: u128 = 0;
    let mut scn: u128 = 0;
    for_each_permutation(n, &mut |perm| {
        let mut arr = InstrumentedArray::from_keys(perm.to_vec());
        run(&mut arr);
        let c = arr.counters();
        cmp += c.comparisons as u128;
        swp += c.swaps as u128;
        scn += c.scanned_elements as u128;
    });
    let denom = factorial(n);
    let rat = |x: u128| BigRational::new(BigInt::from(x), denom.clone());
    MeanCounters {
        comparisons: rat(cmp),
        swaps: rat(swp),
        scanned_elements: rat(scn),
    }
}

/// Exact expected counters of a whole instrumented sort at size n,
/// averaged over all n! permutations of distinct keys.
pub fn exhaustive_mean_counters(
    algorithm: Algorithm,
    scheme: SamplingScheme,
    n: usize,
) -> MeanCounters {
    mean_over_permutations(n, |arr| {
        quicksort(arr, algorithm, scheme);
        debug_assert!(crate::cost::is_sorted(arr.keys()));
    })
}

/// Exact expected value of one counter over all n! permutations.
pub fn exhaustive_expectation(
    algorithm: Algorithm,
    cost_kind: CostKind,
    scheme: SamplingScheme,
    n: usize,
) -> BigRational {
    exhaustive_mean_counters(algorithm, scheme, n).pick(cost_kind)
}

fn run_step(arr: &mut InstrumentedArray, algorithm: Algorithm, scheme: SamplingScheme) {
    let n = arr.len();
    select_pivots(arr, 0, n - 1, scheme);
    match algorithm {
        Algorithm::Classic => {
            classic_partition(arr, 0, n - 1);
        }
        Algorithm::DualPivot => {
            dual_partition(arr, 0, n - 1);
        }
    }
}

/// Exact expected counters of a single partitioning step (pivot sampling
/// included) at size n.
pub fn exhaustive_step_counters(
    algorithm: Algorithm,
    scheme: SamplingScheme,
    n: usize,
) -> MeanCounters {
    assert!(n >= 2, "a partitioning step needs at least two elements");
    mean_over_permutations(n, |arr| run_step(arr, algorithm, scheme))
}

/// Exact expected cost of one partitioning step (the recurrence toll).
pub fn empirical_toll_exhaustive(
    algorithm: Algorithm,
    cost_kind: CostKind,
    scheme: SamplingScheme,
    n: usize,
) -> BigRational {
    exhaustive_step_counters(algorithm, scheme, n).pick(cost_kind)
}

/// Monte Carlo estimate of the expected cost of one partitioning step at
/// size n, over `trials` seeded random permutations.
pub fn empirical_toll_montecarlo(
    algorithm: Algorithm,
    cost_kind: CostKind,
    scheme: SamplingScheme,
    n: usize,
    trials: usize,
    seed: u64,
) -> f64 {
    assert!(trials >= 1 && n >= 2);
    let total: u128 = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let keys = gen_permutation(n, sub_seed(seed, n as u64, trial as u64));
            let mut arr = InstrumentedArray::from_keys(keys);
            run_step(&mut arr, algorithm, scheme);
            cost_of(&arr.counters(), cost_kind) as u128
        })
        .sum();
    total as f64 / trials as f64
}

fn cost_of(counters: &CostCounters, kind: CostKind) -> u64 {
    kind.pick(counters)
}

fn oracle_bases(
    algorithm: Algorithm,
    cost_kind: CostKind,
    t: usize,
    n_max: usize,
) -> Vec<BigRational> {
    let n0 = base_horizon(algorithm, t);
    assert!(
        n0 - 1 <= EXHAUSTIVE_LIMIT,
        "oracle base cases need exhaustive runs up to n = {} (limit {EXHAUSTIVE_LIMIT})",
        n0 - 1
    );
    let scheme = scheme_for(algorithm, t);
    let mut bases = vec![BigRational::zero(); n0.min(n_max + 1)];
    for (n, base) in bases.iter_mut().enumerate().skip(2) {
        *base = exhaustive_expectation(algorithm, cost_kind, scheme, n);
    }
    bases
}

/// Empirical tolls measured exhaustively (exact rationals) for every size in
/// 2..=n_max, with oracle base cases. Requires n_max within the exhaustive
/// limit.
pub fn exhaustive_tolls(
    algorithm: Algorithm,
    cost_kind: CostKind,
    t: usize,
    n_max: usize,
) -> EmpiricalTolls {
    assert!(n_max >= 2 && n_max <= EXHAUSTIVE_LIMIT);
    let scheme = scheme_for(algorithm, t);
    let mut tolls = vec![BigRational::zero(); n_max + 1];
    for (n, toll) in tolls.iter_mut().enumerate().skip(2) {
        *toll = empirical_toll_exhaustive(algorithm, cost_kind, scheme, n);
    }
    EmpiricalTolls {
        tolls: TollValues::Exact(tolls),
        bases: oracle_bases(algorithm, cost_kind, t, n_max),
    }
}

/// Empirical tolls for every size in 2..=n_max: exhaustive (exact) up to the
/// enumeration limit, Monte Carlo with `mc_trials` seeded trials beyond.
/// Base cases are exhaustive oracle values either way.
pub fn hybrid_tolls(
    algorithm: Algorithm,
    cost_kind: CostKind,
    t: usize,
    n_max: usize,
    mc_trials: usize,
    seed: u64,
) -> EmpiricalTolls {
    assert!(n_max >= 2, "a toll table needs n_max >= 2");
    let scheme = scheme_for(algorithm, t);
    let exhaustive_up_to = EXHAUSTIVE_LIMIT.min(n_max);
    let mut tolls = vec![0.0f64; n_max + 1];
    for (n, toll) in tolls
        .iter_mut()
        .enumerate()
        .skip(2)
        .take(exhaustive_up_to - 1)
    {
        *toll = empirical_toll_exhaustive(algorithm, cost_kind, scheme, n)
            .to_f64()
            .unwrap();
    }
    let rest: Vec<(usize, f64)> = ((exhaustive_up_to + 1)..=n_max)
        .into_par_iter()
        .map(|n| {
            (
                n,
                empirical_toll_montecarlo(algorithm, cost_kind, scheme, n, mc_trials, seed),
            )
        })
        .collect();
    for (n, v) in rest {
        tolls[n] = v;
    }
    EmpiricalTolls {
        tolls: TollValues::Approx(tolls),
        bases: oracle_bases(algorithm, cost_kind, t, n_max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn permutation_enumeration_is_complete() {
        let mut seen = HashSet::new();
        for_each_permutation(4, &mut |p| {
            assert!(seen.insert(p.to_vec()));
        });
        assert_eq!(seen.len(), 24);
        let mut count = 0;
        for_each_permutation(0, &mut |p| {
            assert!(p.is_empty());
            count += 1;
        });
        assert_eq!(count, 1);
    }

    #[test]
    fn trivial_sizes_cost_nothing() {
        for algorithm in [Algorithm::Classic, Algorithm::DualPivot] {
            let scheme = scheme_for(algorithm, 1);
            for n in [0usize, 1] {
                let v = exhaustive_expectation(algorithm, CostKind::Comparisons, scheme, n);
                assert_eq!(v, BigRational::zero());
            }
        }
    }

    /// Golden values frozen from the first oracle runs (exhaustive
    /// enumeration; cross-checked by hand traces of the two partition
    /// procedures).
    #[test]
    fn golden_oracle_values() {
        let classic0 = scheme_for(Algorithm::Classic, 0);
        assert_eq!(
            exhaustive_expectation(Algorithm::Classic, CostKind::Comparisons, classic0, 2),
            rat(5, 2)
        );
        let m = exhaustive_mean_counters(Algorithm::Classic, classic0, 3);
        assert_eq!(m.comparisons, rat(16, 3));
        assert_eq!(m.scanned_elements, rat(7, 1));
        assert_eq!(m.swaps, rat(7, 6));

        let dual0 = scheme_for(Algorithm::DualPivot, 0);
        let m = exhaustive_mean_counters(Algorithm::DualPivot, dual0, 2);
        assert_eq!(m.comparisons, rat(2, 1));
        assert_eq!(m.scanned_elements, rat(6, 1));
        assert_eq!(m.swaps, rat(1, 2));
        let m = exhaustive_mean_counters(Algorithm::DualPivot, dual0, 5);
        assert_eq!(m.comparisons, rat(10, 1));
        assert_eq!(m.scanned_elements, rat(89, 6));
        assert_eq!(m.swaps, rat(169, 60));

        let m =
            exhaustive_mean_counters(Algorithm::DualPivot, scheme_for(Algorithm::DualPivot, 1), 7);
        assert_eq!(m.comparisons, rat(9161, 420));
        assert_eq!(m.scanned_elements, rat(8051, 210));
        let m = exhaustive_mean_counters(Algorithm::Classic, scheme_for(Algorithm::Classic, 1), 7);
        assert_eq!(m.comparisons, rat(2528, 105));
        assert_eq!(m.scanned_elements, rat(4093, 105));

        // ninther on n < 9 degrades to the unsampled classic scheme
        let m = exhaustive_mean_counters(Algorithm::Classic, SamplingScheme::Ninther, 5);
        assert_eq!(m.comparisons, rat(62, 5));
        assert_eq!(m.scanned_elements, rat(77, 5));
        assert_eq!(m.swaps, rat(41, 15));
        let unsampled = exhaustive_mean_counters(Algorithm::Classic, classic0, 5);
        assert_eq!(m, unsampled);
    }

    #[test]
    fn golden_toll_values() {
        // classic unsampled comparison toll at n=3 sits between 2 and 4
        let toll = empirical_toll_exhaustive(
            Algorithm::Classic,
            CostKind::Comparisons,
            scheme_for(Algorithm::Classic, 0),
            3,
        );
        assert_eq!(toll, rat(11, 3));
        // dual unsampled scan toll at n=7 (sampling phase included)
        let toll = empirical_toll_exhaustive(
            Algorithm::DualPivot,
            CostKind::ScannedElements,
            scheme_for(Algorithm::DualPivot, 0),
            7,
        );
        assert_eq!(toll, rat(81, 7));
        // ninther toll at its smallest fully sampled size
        let m = exhaustive_step_counters(Algorithm::Classic, SamplingScheme::Ninther, 9);
        assert_eq!(m.comparisons, rat(62, 3));
        assert_eq!(m.scanned_elements, rat(103, 3));
    }

    /// Scanned elements of one dual partition (no sampling work at t=0
    /// beyond ordering the ends) average n + E[leftmost segment] + O(1):
    /// exhaustively at n=7 the raw partition alone costs 67/7, and with the
    /// two sampling reads 81/7 = 67/7 + 2.
    #[test]
    fn dual_partition_scan_expectation_at_7() {
        let mut total: u128 = 0;
        let mut count: u64 = 0;
        for_each_permutation(7, &mut |perm| {
            let mut arr = InstrumentedArray::from_keys(perm.to_vec());
            dual_partition(&mut arr, 0, 6);
            total += arr.counters().scanned_elements as u128;
            count += 1;
        });
        let mean = BigRational::new(BigInt::from(total), BigInt::from(count));
        assert_eq!(mean, rat(67, 7));
    }

    #[test]
    #[should_panic(expected = "capped")]
    fn exhaustive_guard_rejects_large_n() {
        exhaustive_expectation(
            Algorithm::Classic,
            CostKind::Comparisons,
            scheme_for(Algorithm::Classic, 0),
            10,
        );
    }

    /// Monte Carlo toll of the unsampled dual partition approaches 4/3 n.
    #[test]
    fn montecarlo_dual_scan_toll_near_four_thirds() {
        let n = 100_000;
        let v = empirical_toll_montecarlo(
            Algorithm::DualPivot,
            CostKind::ScannedElements,
            scheme_for(Algorithm::DualPivot, 0),
            n,
            1000,
            20240601,
        );
        let ratio = v / n as f64;
        assert!((1.30..=1.37).contains(&ratio), "ratio {ratio}");
    }

    /// Classic partitioning scans the subarray once: toll/n near 1.
    #[test]
    fn montecarlo_classic_scan_toll_near_one() {
        let n = 10_000;
        let v = empirical_toll_montecarlo(
            Algorithm::Classic,
            CostKind::ScannedElements,
            scheme_for(Algorithm::Classic, 0),
            n,
            200,
            7,
        );
        let ratio = v / n as f64;
        assert!((0.98..=1.1).contains(&ratio), "ratio {ratio}");
    }

    /// Small instance of the oracle-equivalence check (the full n <= 8 run
    /// over all configurations lives in the acceptance suite).
    #[test]
    fn oracle_matches_empirical_recurrence_small() {
        use super::super::{exact_recurrence, TollMode};
        for (algorithm, t) in [(Algorithm::Classic, 0), (Algorithm::DualPivot, 0)] {
            for cost in [CostKind::Comparisons, CostKind::ScannedElements] {
                let tolls = exhaustive_tolls(algorithm, cost, t, 6);
                let table = exact_recurrence(algorithm, cost, t, &TollMode::Empirical(tolls), 6);
                let scheme = scheme_for(algorithm, t);
                for n in 2..=6usize {
                    let oracle = exhaustive_expectation(algorithm, cost, scheme, n);
                    assert_eq!(
                        table.value_exact(n).unwrap(),
                        &oracle,
                        "{} {} t={t} n={n}",
                        algorithm.label(),
                        cost.label()
                    );
                }
            }
        }
    }
}
