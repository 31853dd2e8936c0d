//! Bottom-up solutions of the expected-cost recurrences.
//!
//! Classic: c_n = toll(n) + 2 * sum_j p(j) c_j with the median-of-(2t+1)
//! segment law (the two segments contribute symmetrically). Dual:
//! c_n = toll(n) + 3 * sum_j p(j) c_j with the tertiles-of-(3t+2) marginal
//! (the three segments are exchangeable). Base cases c_0 = c_1 = 0.
//!
//! Toll modes:
//!
//! * [`TollMode::AnalyticLeading`] — the leading-term tolls (classic: n-1
//!   comparisons / n scans; dual: (5/3 - 1/(9t+12)) n comparisons / (4/3) n
//!   scans). This is the pure model: its values carry an O(n) absolute error
//!   against any real implementation (the tolls' O(1) parts are unspecified),
//!   so only leading constants are asserted against these tables. Below the
//!   sampling horizon the segment law falls back to the largest feasible
//!   sample, mirroring the sorters' fallback rule.
//! * [`TollMode::Empirical`] — measured per-size tolls, with exhaustively
//!   measured oracle values stitched in as base cases for
//!   2 <= n < sample size + 2. With exhaustive tolls the resulting table
//!   reproduces the exhaustive whole-sort expectation exactly, in rational
//!   arithmetic.

use super::{segment_distribution, CostKind};
use crate::sorters::Algorithm;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Measured tolls, exact (exhaustive enumeration) or approximate (Monte
/// Carlo). Index is the subarray size n; entries below 2 are unused.
#[derive(Clone, Debug)]
pub enum TollValues {
    Exact(Vec<BigRational>),
    Approx(Vec<f64>),
}

/// Empirical toll table plus the oracle base cases it is stitched to.
#[derive(Clone, Debug)]
pub struct EmpiricalTolls {
    pub tolls: TollValues,
    /// Exhaustive whole-sort expectations for n = 0 .. sample size + 1;
    /// `bases.len()` is the stitching horizon n0.
    pub bases: Vec<BigRational>,
}

#[derive(Clone, Debug)]
pub enum TollMode {
    AnalyticLeading,
    Empirical(EmpiricalTolls),
}

#[derive(Clone, Debug)]
pub enum TableValues {
    Exact(Vec<BigRational>),
    Approx(Vec<f64>),
}

/// Expected-cost table c_0..c_N for one (algorithm, cost kind, t, toll mode)
/// configuration.
#[derive(Clone, Debug)]
pub struct RecurrenceTable {
    pub algorithm: Algorithm,
    pub cost_kind: CostKind,
    pub t: usize,
    pub values: TableValues,
}

impl RecurrenceTable {
    pub fn horizon(&self) -> usize {
        match &self.values {
            TableValues::Exact(v) => v.len() - 1,
            TableValues::Approx(v) => v.len() - 1,
        }
    }

    pub fn value(&self, n: usize) -> f64 {
        match &self.values {
            TableValues::Exact(v) => v[n].to_f64().expect("rational out of f64 range"),
            TableValues::Approx(v) => v[n],
        }
    }

    /// Exact value, available only for tables built in rational mode.
    pub fn value_exact(&self, n: usize) -> Option<&BigRational> {
        match &self.values {
            TableValues::Exact(v) => v.get(n),
            TableValues::Approx(_) => None,
        }
    }

    /// `n,value` CSV rows for the whole table.
    pub fn csv_rows(&self, delim: char) -> String {
        let mut out = format!("n{delim}value\n");
        for n in 0..=self.horizon() {
            out.push_str(&format!("{n}{delim}{:.6}\n", self.value(n)));
        }
        out
    }
}

/// Effective sampling parameter at size n: the largest t' <= t whose sample
/// fits, mirroring the sorters' small-subarray fallback.
fn effective_t(algorithm: Algorithm, n: usize, t: usize) -> usize {
    match algorithm {
        Algorithm::Classic => t.min((n - 1) / 2),
        Algorithm::DualPivot => t.min(n.saturating_sub(2) / 3),
    }
}

fn analytic_toll_rational(
    algorithm: Algorithm,
    cost_kind: CostKind,
    t: usize,
    n: usize,
) -> BigRational {
    let n_big = BigInt::from(n);
    match (algorithm, cost_kind) {
        (Algorithm::Classic, CostKind::Comparisons) => {
            BigRational::from_integer(n_big - BigInt::from(1))
        }
        (Algorithm::Classic, CostKind::ScannedElements) => BigRational::from_integer(n_big),
        (Algorithm::DualPivot, CostKind::Comparisons) => {
            let coeff = BigRational::new(BigInt::from(5), BigInt::from(3))
                - BigRational::new(BigInt::from(1), BigInt::from(9 * t as i64 + 12));
            coeff * BigRational::from_integer(n_big)
        }
        (Algorithm::DualPivot, CostKind::ScannedElements) => {
            BigRational::new(BigInt::from(4), BigInt::from(3)) * BigRational::from_integer(n_big)
        }
    }
}

fn analytic_toll_float(algorithm: Algorithm, cost_kind: CostKind, t: usize, n: usize) -> f64 {
    match (algorithm, cost_kind) {
        (Algorithm::Classic, CostKind::Comparisons) => n as f64 - 1.0,
        (Algorithm::Classic, CostKind::ScannedElements) => n as f64,
        (Algorithm::DualPivot, CostKind::Comparisons) => {
            (5.0 / 3.0 - 1.0 / (9 * t + 12) as f64) * n as f64
        }
        (Algorithm::DualPivot, CostKind::ScannedElements) => 4.0 / 3.0 * n as f64,
    }
}

/// Solve the recurrence up to `n_max`. Rational arithmetic is used when
/// `n_max <= 64` (and the tolls, if empirical, are exact); double precision
/// otherwise.
pub fn exact_recurrence(
    algorithm: Algorithm,
    cost_kind: CostKind,
    t: usize,
    toll_mode: &TollMode,
    n_max: usize,
) -> RecurrenceTable {
    let values = match toll_mode {
        TollMode::AnalyticLeading => {
            if n_max <= 64 {
                TableValues::Exact(solve_rational(
                    algorithm,
                    t,
                    n_max,
                    |n| analytic_toll_rational(algorithm, cost_kind, t, n),
                    None,
                ))
            } else {
                TableValues::Approx(solve_float(
                    algorithm,
                    t,
                    n_max,
                    |n| analytic_toll_float(algorithm, cost_kind, t, n),
                    None,
                ))
            }
        }
        TollMode::Empirical(emp) => {
            assert!(
                emp.bases.len() >= 2,
                "empirical mode needs base cases for n = 0 and 1"
            );
            match &emp.tolls {
                TollValues::Exact(tolls) => {
                    assert!(
                        tolls.len() > n_max,
                        "toll table covers up to {}, need {n_max}",
                        tolls.len().saturating_sub(1)
                    );
                    if n_max <= 64 {
                        TableValues::Exact(solve_rational(
                            algorithm,
                            t,
                            n_max,
                            |n| tolls[n].clone(),
                            Some(&emp.bases),
                        ))
                    } else {
                        let tolls_f: Vec<f64> = tolls.iter().map(|x| x.to_f64().unwrap()).collect();
                        TableValues::Approx(solve_float(
                            algorithm,
                            t,
                            n_max,
                            |n| tolls_f[n],
                            Some(&emp.bases),
                        ))
                    }
                }
                TollValues::Approx(tolls) => {
                    assert!(
                        tolls.len() > n_max,
                        "toll table covers up to {}, need {n_max}",
                        tolls.len().saturating_sub(1)
                    );
                    TableValues::Approx(solve_float(
                        algorithm,
                        t,
                        n_max,
                        |n| tolls[n],
                        Some(&emp.bases),
                    ))
                }
            }
        }
    };
    RecurrenceTable {
        algorithm,
        cost_kind,
        t,
        values,
    }
}

fn solve_rational(
    algorithm: Algorithm,
    t: usize,
    n_max: usize,
    toll: impl Fn(usize) -> BigRational,
    bases: Option<&[BigRational]>,
) -> Vec<BigRational> {
    let mut c = vec![BigRational::zero(); n_max + 1];
    let mut start = 2usize;
    if let Some(bases) = bases {
        let end = bases.len().min(n_max + 1);
        c[2..end].clone_from_slice(&bases[2..end]);
        start = bases.len();
    }
    for n in start..=n_max {
        let teff = if bases.is_some() {
            t // stitched bases cover everything below the sampling horizon
        } else {
            effective_t(algorithm, n, t)
        };
        let dist = segment_distribution(algorithm, n, teff);
        let mut acc = BigRational::zero();
        for (j, mass) in dist.masses.iter().enumerate() {
            if !mass.is_zero() && !c[j].is_zero() {
                acc += mass * &c[j];
            }
        }
        let factor = match algorithm {
            Algorithm::Classic => 2,
            Algorithm::DualPivot => 3,
        };
        c[n] = toll(n) + BigRational::from_integer(BigInt::from(factor)) * acc;
    }
    c
}

fn solve_float(
    algorithm: Algorithm,
    t: usize,
    n_max: usize,
    toll: impl Fn(usize) -> f64,
    bases: Option<&[BigRational]>,
) -> Vec<f64> {
    let mut c = vec![0.0f64; n_max + 1];
    let mut start = 2usize;
    if let Some(bases) = bases {
        for n in 2..bases.len().min(n_max + 1) {
            c[n] = bases[n].to_f64().unwrap();
        }
        start = bases.len();
    }
    // ln(k!) table for the initial weight of each row
    let mut lf = vec![0.0f64; n_max + 2];
    for k in 1..lf.len() {
        lf[k] = lf[k - 1] + (k as f64).ln();
    }
    let ln_choose = |a: usize, b: usize| lf[a] - lf[b] - lf[a - b];
    for n in start..=n_max {
        let teff = if bases.is_some() {
            t
        } else {
            effective_t(algorithm, n, t)
        };
        let (factor, r, s) = match algorithm {
            Algorithm::Classic => (2.0, teff, 2 * teff + 1),
            Algorithm::DualPivot => (3.0, 2 * teff + 1, 3 * teff + 2),
        };
        // support of the segment marginal: j in [teff, n-1-r]
        let jlo = teff;
        let jhi = n - 1 - r;
        // w(j) = C(j,teff) C(n-1-j,r) / C(n,s), advanced incrementally via
        // w(j+1)/w(j) = (j+1)/(j+1-teff) * (n-1-j-r)/(n-1-j)
        let mut w = (ln_choose(jlo, teff) + ln_choose(n - 1 - jlo, r) - ln_choose(n, s)).exp();
        let mut acc = 0.0f64;
        let mut j = jlo;
        loop {
            acc += w * c[j];
            if j == jhi {
                break;
            }
            w *= (j + 1) as f64 / (j + 1 - teff) as f64;
            w *= (n - 1 - j - r) as f64 / (n - 1 - j) as f64;
            j += 1;
        }
        c[n] = toll(n) + factor * acc;
    }
    c
}
