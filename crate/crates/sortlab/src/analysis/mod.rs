//! Expected-cost analysis: harmonic numbers, segment-size distributions,
//! asymptotic leading constants, cost recurrences, and an exhaustive small-n
//! oracle.
//!
//! Arithmetic policy: exact rationals (`BigRational`) for everything the
//! oracle touches and for recurrence tables up to n = 64; double precision
//! with incremental binomial-weight evaluation beyond.

mod oracle;
mod recurrence;

pub use oracle::{
    base_horizon, empirical_toll_exhaustive, empirical_toll_montecarlo, exhaustive_expectation,
    exhaustive_mean_counters, exhaustive_step_counters, exhaustive_tolls, for_each_permutation,
    hybrid_tolls, scheme_for, MeanCounters, EXHAUSTIVE_LIMIT,
};
pub use recurrence::{
    exact_recurrence, EmpiricalTolls, RecurrenceTable, TableValues, TollMode, TollValues,
};

use crate::cost::CostCounters;
use crate::sorters::{Algorithm, SamplingScheme};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Which counter a recurrence or prediction is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CostKind {
    Comparisons,
    ScannedElements,
}

impl CostKind {
    pub fn pick(&self, counters: &CostCounters) -> u64 {
        match self {
            CostKind::Comparisons => counters.comparisons,
            CostKind::ScannedElements => counters.scanned_elements,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            CostKind::Comparisons => "cmps",
            CostKind::ScannedElements => "scans",
        }
    }
}

/// H_n as a float, by direct summation.
pub fn harmonic(n: u64) -> f64 {
    (1..=n).map(|i| 1.0 / i as f64).sum()
}

/// H_n as an exact rational (H_0 = 0).
pub fn harmonic_rational(n: u64) -> BigRational {
    let mut h = BigRational::zero();
    for i in 1..=n {
        h += BigRational::new(BigInt::one(), BigInt::from(i));
    }
    h
}

/// Binomial coefficient as an exact big integer; 0 when k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Leading coefficient of the comparison count of classic quicksort with
/// ninther pivots (and of its scanned elements, whose toll has the same
/// leading term). There is no segment-size recurrence for the ninther here,
/// only this named constant plus empirical measurement.
pub const CLASSIC_NINTHER_CONSTANT: f64 = 1.5697;

/// Leading coefficient of `n ln n` in the expected cost.
///
/// Classic with median-of-(2t+1): `1 / (H_{2(t+1)} - H_{t+1})` for both cost
/// kinds (tolls n-1 and n share the leading term). Dual with
/// tertiles-of-(3t+2): `(5/3 - 1/(9t+12)) / (H_{3(t+1)} - H_{t+1})` for
/// comparisons and `(4/3) / (H_{3(t+1)} - H_{t+1})` for scanned elements.
/// The ninther is the stored constant 1.5697, classic only.
///
/// Panics for combinations with no defined constant (ninther with the
/// dual-pivot algorithm, or a scheme incompatible with the algorithm).
pub fn asymptotic_constant(
    algorithm: Algorithm,
    cost_kind: CostKind,
    scheme: SamplingScheme,
) -> f64 {
    match (algorithm, scheme) {
        (Algorithm::Classic, SamplingScheme::ClassicMedian { t }) => {
            let t = t as u64;
            1.0 / (harmonic(2 * (t + 1)) - harmonic(t + 1))
        }
        (Algorithm::Classic, SamplingScheme::Ninther) => CLASSIC_NINTHER_CONSTANT,
        (Algorithm::DualPivot, SamplingScheme::DualTertiles { t }) => {
            let numerator = match cost_kind {
                CostKind::Comparisons => 5.0 / 3.0 - 1.0 / (9 * t + 12) as f64,
                CostKind::ScannedElements => 4.0 / 3.0,
            };
            let t = t as u64;
            numerator / (harmonic(3 * (t + 1)) - harmonic(t + 1))
        }
        (algorithm, scheme) => panic!(
            "no asymptotic constant for ({}, {})",
            algorithm.label(),
            scheme.label()
        ),
    }
}

/// Probability law of one segment's size after a sampled partition.
#[derive(Clone, Debug)]
pub struct SegmentSizeDistribution {
    pub algorithm: Algorithm,
    pub n: usize,
    pub t: usize,
    /// `masses[j]` is the probability that the segment has size j.
    pub masses: Vec<BigRational>,
}

impl SegmentSizeDistribution {
    pub fn total(&self) -> BigRational {
        self.masses.iter().sum()
    }
}

/// Exact segment-size distribution.
///
/// Classic: p(j) = C(j,t) C(n-1-j,t) / C(n,2t+1) on 0..=n-1 (left segment;
/// symmetric in j <-> n-1-j). Dual: the marginal of the three-segment joint
/// law, p(j) = C(j,t) C(n-1-j,2t+1) / C(n,3t+2) on 0..=n-2 (all three
/// marginals coincide by symmetry of the joint form).
///
/// Panics when n is below the sample size.
pub fn segment_distribution(algorithm: Algorithm, n: usize, t: usize) -> SegmentSizeDistribution {
    let masses = match algorithm {
        Algorithm::Classic => {
            let s = 2 * t + 1;
            assert!(
                n >= s,
                "segment distribution needs n >= sample size ({s}), got {n}"
            );
            let denom = binomial(n as u64, s as u64);
            (0..n)
                .map(|j| {
                    let num = binomial(j as u64, t as u64) * binomial((n - 1 - j) as u64, t as u64);
                    BigRational::new(num, denom.clone())
                })
                .collect()
        }
        Algorithm::DualPivot => {
            let s = 3 * t + 2;
            assert!(
                n >= s,
                "segment distribution needs n >= sample size ({s}), got {n}"
            );
            assert!(n >= 2);
            let denom = binomial(n as u64, s as u64);
            (0..=n - 2)
                .map(|j| {
                    let num = binomial(j as u64, t as u64)
                        * binomial((n - 1 - j) as u64, (2 * t + 1) as u64);
                    BigRational::new(num, denom.clone())
                })
                .collect()
        }
    };
    SegmentSizeDistribution {
        algorithm,
        n,
        t,
        masses,
    }
}

/// Estimate of the `n ln n` coefficient from a recurrence table:
/// `(c_{2n} - 2 c_n) / (2 n ln 2)`, which cancels the linear term of
/// `c_n = a n ln n + b n + o(n)`.
///
/// Panics when the table does not cover 2n.
pub fn leading_constant_estimate(table: &RecurrenceTable, n: usize) -> f64 {
    assert!(n >= 1, "estimate needs n >= 1");
    assert!(
        table.horizon() >= 2 * n,
        "table horizon {} does not cover 2n = {}",
        table.horizon(),
        2 * n
    );
    (table.value(2 * n) - 2.0 * table.value(n)) / (2.0 * n as f64 * std::f64::consts::LN_2)
}
