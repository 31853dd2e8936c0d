//! Seeded experiment runner: measured counter statistics, prediction
//! comparison, CSV emission and wall-clock benchmarking.

use crate::analysis::RecurrenceTable;
use crate::cost::{is_sorted, same_multiset, InstrumentedArray};
use crate::rng::{gen_duplicate_heavy, gen_permutation, sub_seed};
use crate::sorters::{plain, quicksort_with_cutoff, Algorithm, SamplingScheme};
use rayon::prelude::*;
use std::io::Write;
use std::time::Instant;

/// Input model: distinct keys 1..=n (the random-permutation model) by
/// default; the duplicates mode draws keys with repetition and exists for
/// robustness testing only.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KeyModel {
    DistinctPermutation,
    DuplicateHeavy { universe: u64 },
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub scheme: SamplingScheme,
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub cutoff: Option<usize>,
    pub keys: KeyModel,
}

impl ExperimentConfig {
    pub fn new(algorithm: Algorithm, scheme: SamplingScheme) -> Self {
        ExperimentConfig {
            algorithm,
            scheme,
            sizes: vec![],
            trials: 1,
            seed: 0,
            cutoff: None,
            keys: KeyModel::DistinctPermutation,
        }
    }

    fn validate(&self) {
        assert!(self.trials >= 1, "trials must be >= 1");
        assert!(
            self.scheme.compatible_with(self.algorithm),
            "scheme {} is undefined for algorithm {}",
            self.scheme.label(),
            self.algorithm.label()
        );
    }

    fn input_for(&self, n: usize, trial: usize) -> Vec<i64> {
        let seed = sub_seed(self.seed, n as u64, trial as u64);
        match self.keys {
            KeyModel::DistinctPermutation => gen_permutation(n, seed),
            KeyModel::DuplicateHeavy { universe } => gen_duplicate_heavy(n, universe, seed),
        }
    }
}

/// mean/min/max of one counter across the trials of one size.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CounterStats {
    pub mean: f64,
    pub min: u64,
    pub max: u64,
}

impl CounterStats {
    fn from_samples(sum: u128, min: u64, max: u64, trials: usize) -> Self {
        CounterStats {
            mean: sum as f64 / trials as f64,
            min,
            max,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct WallStats {
    pub mean_ns: f64,
    pub min_ns: u64,
    pub max_ns: u64,
}

#[derive(Clone, Debug)]
pub struct SizeSummary {
    pub n: usize,
    pub comparisons: CounterStats,
    pub swaps: CounterStats,
    pub scanned_elements: CounterStats,
    pub wall: Option<WallStats>,
}

impl SizeSummary {
    pub fn stats(&self, cost: ReportCost) -> CounterStats {
        match cost {
            ReportCost::Comparisons => self.comparisons,
            ReportCost::Swaps => self.swaps,
            ReportCost::ScannedElements => self.scanned_elements,
        }
    }

    /// mean / (n ln n); zero below n = 2 where the normalizer vanishes.
    pub fn normalized(&self, cost: ReportCost) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        self.stats(cost).mean / (self.n as f64 * (self.n as f64).ln())
    }
}

#[derive(Clone, Debug)]
pub struct TrialSummary {
    pub config: ExperimentConfig,
    pub rows: Vec<SizeSummary>,
}

/// Measured counter selected for reporting (the harness also reports swaps,
/// which the analysis module does not model).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportCost {
    Comparisons,
    Swaps,
    ScannedElements,
}

impl ReportCost {
    pub fn label(&self) -> &'static str {
        match self {
            ReportCost::Comparisons => "cmps",
            ReportCost::Swaps => "swaps",
            ReportCost::ScannedElements => "scans",
        }
    }
}

impl std::str::FromStr for ReportCost {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cmps" => Ok(ReportCost::Comparisons),
            "swaps" => Ok(ReportCost::Swaps),
            "scans" => Ok(ReportCost::ScannedElements),
            _ => Err(format!("unknown cost {s:?}: expected cmps, scans or swaps")),
        }
    }
}

#[derive(Clone, Copy, Default)]
struct Accum {
    cmp: (u128, u64, u64),
    swp: (u128, u64, u64),
    scn: (u128, u64, u64),
}

impl Accum {
    fn unit() -> Self {
        let empty = (0u128, u64::MAX, 0u64);
        Accum {
            cmp: empty,
            swp: empty,
            scn: empty,
        }
    }
    fn add(mut self, c: (u64, u64, u64)) -> Self {
        let push = |acc: &mut (u128, u64, u64), v: u64| {
            acc.0 += v as u128;
            acc.1 = acc.1.min(v);
            acc.2 = acc.2.max(v);
        };
        push(&mut self.cmp, c.0);
        push(&mut self.swp, c.1);
        push(&mut self.scn, c.2);
        self
    }
    fn merge(mut self, other: Accum) -> Self {
        let join = |a: &mut (u128, u64, u64), b: (u128, u64, u64)| {
            a.0 += b.0;
            a.1 = a.1.min(b.1);
            a.2 = a.2.max(b.2);
        };
        join(&mut self.cmp, other.cmp);
        join(&mut self.swp, other.swp);
        join(&mut self.scn, other.scn);
        self
    }
}

/// Run the experiment: for every size, `trials` instrumented sorts on
/// independently seeded inputs, each output checked for sortedness and
/// multiset preservation. Trials run in parallel; aggregation is
/// order-independent, so the summary is identical to a serial run.
///
/// Panics with a diagnostic if any trial produces an unsorted output.
pub fn run_experiment(config: &ExperimentConfig) -> TrialSummary {
    config.validate();
    let rows = config
        .sizes
        .iter()
        .map(|&n| {
            let acc = (0..config.trials)
                .into_par_iter()
                .map(|trial| {
                    let input = config.input_for(n, trial);
                    let mut arr = InstrumentedArray::from_keys(input.clone());
                    quicksort_with_cutoff(&mut arr, config.algorithm, config.scheme, config.cutoff);
                    if !is_sorted(arr.keys()) || !same_multiset(arr.keys(), &input) {
                        panic!(
                            "unsorted output: algo={} scheme={} n={n} trial={trial} seed={}",
                            config.algorithm.label(),
                            config.scheme.label(),
                            config.seed
                        );
                    }
                    let c = arr.counters();
                    (c.comparisons, c.swaps, c.scanned_elements)
                })
                .fold(Accum::unit, |acc, c| acc.add(c))
                .reduce(Accum::unit, |a, b| a.merge(b));
            SizeSummary {
                n,
                comparisons: CounterStats::from_samples(
                    acc.cmp.0,
                    acc.cmp.1,
                    acc.cmp.2,
                    config.trials,
                ),
                swaps: CounterStats::from_samples(acc.swp.0, acc.swp.1, acc.swp.2, config.trials),
                scanned_elements: CounterStats::from_samples(
                    acc.scn.0,
                    acc.scn.1,
                    acc.scn.2,
                    config.trials,
                ),
                wall: None,
            }
        })
        .collect();
    TrialSummary {
        config: config.clone(),
        rows,
    }
}

/// Wall-clock benchmark over the uninstrumented sorters (counter overhead
/// would skew timings). Two warmup runs per size are excluded. Counter
/// columns in the result are unused (zero); timings are informational and
/// machine-dependent, never acceptance-gating.
pub fn bench_wallclock(config: &ExperimentConfig) -> TrialSummary {
    config.validate();
    let zero = CounterStats {
        mean: 0.0,
        min: 0,
        max: 0,
    };
    let rows = config
        .sizes
        .iter()
        .map(|&n| {
            for warmup in 0..2 {
                let mut input = config.input_for(n, warmup);
                plain::quicksort(&mut input, config.algorithm, config.scheme, config.cutoff);
            }
            let mut sum: u128 = 0;
            let mut min = u64::MAX;
            let mut max = 0u64;
            for trial in 0..config.trials {
                let mut input = config.input_for(n, trial);
                let start = Instant::now();
                plain::quicksort(&mut input, config.algorithm, config.scheme, config.cutoff);
                let ns = start.elapsed().as_nanos() as u64;
                assert!(input.windows(2).all(|w| w[0] <= w[1]));
                sum += ns as u128;
                min = min.min(ns);
                max = max.max(ns);
            }
            SizeSummary {
                n,
                comparisons: zero,
                swaps: zero,
                scanned_elements: zero,
                wall: Some(WallStats {
                    mean_ns: sum as f64 / config.trials as f64,
                    min_ns: min,
                    max_ns: max,
                }),
            }
        })
        .collect();
    TrialSummary {
        config: config.clone(),
        rows,
    }
}

/// Counts CSV: `algo,scheme,cost,n,trials,seed,mean,min,max,normalized`,
/// one row per requested cost per size. Wall-time never appears here, so
/// identical configs emit byte-identical files.
pub fn counts_csv(summary: &TrialSummary, costs: &[ReportCost], delim: char) -> String {
    let header = [
        "algo",
        "scheme",
        "cost",
        "n",
        "trials",
        "seed",
        "mean",
        "min",
        "max",
        "normalized",
    ];
    let mut out = header.join(&delim.to_string());
    out.push('\n');
    for &cost in costs {
        for row in &summary.rows {
            let stats = row.stats(cost);
            let fields = [
                summary.config.algorithm.label().to_string(),
                summary.config.scheme.label(),
                cost.label().to_string(),
                row.n.to_string(),
                summary.config.trials.to_string(),
                summary.config.seed.to_string(),
                format!("{:.4}", stats.mean),
                stats.min.to_string(),
                stats.max.to_string(),
                format!("{:.6}", row.normalized(cost)),
            ];
            out.push_str(&fields.join(&delim.to_string()));
            out.push('\n');
        }
    }
    out
}

/// Bench CSV: `algo,scheme,n,trials,seed,mean_ns,min_ns,max_ns`.
pub fn bench_csv(summary: &TrialSummary, delim: char) -> String {
    let header = [
        "algo", "scheme", "n", "trials", "seed", "mean_ns", "min_ns", "max_ns",
    ];
    let mut out = header.join(&delim.to_string());
    out.push('\n');
    for row in &summary.rows {
        let wall = row.wall.expect("bench summary without wall stats");
        let fields = [
            summary.config.algorithm.label().to_string(),
            summary.config.scheme.label(),
            row.n.to_string(),
            summary.config.trials.to_string(),
            summary.config.seed.to_string(),
            format!("{:.1}", wall.mean_ns),
            wall.min_ns.to_string(),
            wall.max_ns.to_string(),
        ];
        out.push_str(&fields.join(&delim.to_string()));
        out.push('\n');
    }
    out
}

/// Write `content` to `path`, surfacing failures with path context.
pub fn write_report(path: &str, content: &str) -> std::io::Result<()> {
    let mut file = std::fs::File::create(path)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{path}: {e}")))?;
    file.write_all(content.as_bytes())
        .map_err(|e| std::io::Error::new(e.kind(), format!("{path}: {e}")))
}

/// One size's empirical mean joined with the recurrence prediction.
#[derive(Clone, Debug)]
pub struct DeviationRow {
    pub n: usize,
    pub empirical_mean: f64,
    pub predicted: f64,
    pub abs_dev: f64,
    pub rel_dev: f64,
    pub flagged: bool,
}

#[derive(Clone, Debug)]
pub struct PredictionReport {
    pub tolerance: f64,
    pub rows: Vec<DeviationRow>,
}

impl PredictionReport {
    pub fn any_flagged(&self) -> bool {
        self.rows.iter().any(|r| r.flagged)
    }

    pub fn render(&self) -> String {
        let mut out = String::from("n,empirical,predicted,abs_dev,rel_dev,flag\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{:.4},{:.4},{:.4},{:.6},{}\n",
                r.n,
                r.empirical_mean,
                r.predicted,
                r.abs_dev,
                r.rel_dev,
                if r.flagged { "DEVIATION" } else { "ok" }
            ));
        }
        out
    }
}

/// Join empirical means with recurrence predictions per size, flagging
/// relative deviations beyond `tolerance`. The table's cost kind selects the
/// counter. Panics when a size is not covered by the table.
pub fn compare_to_prediction(
    summary: &TrialSummary,
    table: &RecurrenceTable,
    tolerance: f64,
) -> PredictionReport {
    let cost = match table.cost_kind {
        crate::analysis::CostKind::Comparisons => ReportCost::Comparisons,
        crate::analysis::CostKind::ScannedElements => ReportCost::ScannedElements,
    };
    let rows = summary
        .rows
        .iter()
        .map(|row| {
            assert!(
                row.n <= table.horizon(),
                "size {} not covered by recurrence table (horizon {})",
                row.n,
                table.horizon()
            );
            let empirical = row.stats(cost).mean;
            let predicted = table.value(row.n);
            let abs_dev = empirical - predicted;
            let rel_dev = if predicted != 0.0 {
                abs_dev / predicted
            } else {
                abs_dev
            };
            DeviationRow {
                n: row.n,
                empirical_mean: empirical,
                predicted,
                abs_dev,
                rel_dev,
                flagged: rel_dev.abs() > tolerance,
            }
        })
        .collect();
    PredictionReport { tolerance, rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{
        exact_recurrence, exhaustive_mean_counters, exhaustive_tolls, scheme_for, CostKind,
        TollMode,
    };
    use num_traits::ToPrimitive;

    fn small_config() -> ExperimentConfig {
        let mut config =
            ExperimentConfig::new(Algorithm::DualPivot, SamplingScheme::DualTertiles { t: 1 });
        config.sizes = vec![1, 10, 100];
        config.trials = 20;
        config.seed = 99;
        config
    }

    #[test]
    fn experiment_statistics_are_consistent() {
        let summary = run_experiment(&small_config());
        assert_eq!(summary.rows.len(), 3);
        for row in &summary.rows {
            for cost in [
                ReportCost::Comparisons,
                ReportCost::Swaps,
                ReportCost::ScannedElements,
            ] {
                let s = row.stats(cost);
                assert!(s.min as f64 <= s.mean && s.mean <= s.max as f64);
            }
            if row.n >= 2 {
                let norm = row.normalized(ReportCost::ScannedElements);
                assert!(norm.is_finite() && norm > 0.0);
            } else {
                assert_eq!(row.normalized(ReportCost::Comparisons), 0.0);
            }
        }
    }

    #[test]
    fn identical_configs_emit_identical_csv() {
        let config = small_config();
        let a = counts_csv(
            &run_experiment(&config),
            &[ReportCost::Comparisons, ReportCost::ScannedElements],
            ',',
        );
        let b = counts_csv(
            &run_experiment(&config),
            &[ReportCost::Comparisons, ReportCost::ScannedElements],
            ',',
        );
        assert_eq!(a, b);
        assert!(a.starts_with("algo,scheme,cost,n,trials,seed,mean,min,max,normalized\n"));
    }

    #[test]
    fn csv_shapes() {
        let mut config = small_config();
        config.sizes = vec![8];
        config.trials = 2;
        let summary = run_experiment(&config);
        let csv = counts_csv(&summary, &[ReportCost::ScannedElements], ',');
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[1].starts_with("dual,tertiles:1,scans,8,2,99,"));
        // header-only when no rows
        config.sizes = vec![];
        let empty = counts_csv(
            &run_experiment(&config),
            &[ReportCost::ScannedElements],
            ',',
        );
        assert_eq!(empty.lines().count(), 1);
        // tsv delimiter
        let tsv = counts_csv(&summary, &[ReportCost::ScannedElements], '\t');
        assert!(tsv.contains("dual\ttertiles:1"));
    }

    #[test]
    fn duplicate_heavy_experiments_run() {
        let mut config = ExperimentConfig::new(Algorithm::Classic, SamplingScheme::Ninther);
        config.sizes = vec![500];
        config.trials = 10;
        config.seed = 3;
        config.keys = KeyModel::DuplicateHeavy { universe: 4 };
        let summary = run_experiment(&config);
        assert!(summary.rows[0].comparisons.mean > 0.0);
    }

    /// Exhaustive empirical means equal the empirical-toll recurrence
    /// exactly, so the deviation report is all zeros.
    #[test]
    fn prediction_matches_oracle_exactly_at_small_n() {
        let (algorithm, t) = (Algorithm::Classic, 0usize);
        let tolls = exhaustive_tolls(algorithm, CostKind::Comparisons, t, 8);
        let table = exact_recurrence(
            algorithm,
            CostKind::Comparisons,
            t,
            &TollMode::Empirical(tolls),
            8,
        );
        // synthesize a summary whose means are the exhaustive expectations
        let mut config = ExperimentConfig::new(algorithm, scheme_for(algorithm, t));
        config.sizes = (2..=8).collect();
        let rows: Vec<SizeSummary> = (2..=8)
            .map(|n| {
                let mean = exhaustive_mean_counters(algorithm, scheme_for(algorithm, t), n);
                let cmps = mean.comparisons.to_f64().unwrap();
                let stats = CounterStats {
                    mean: cmps,
                    min: 0,
                    max: u64::MAX,
                };
                SizeSummary {
                    n,
                    comparisons: stats,
                    swaps: stats,
                    scanned_elements: stats,
                    wall: None,
                }
            })
            .collect();
        let summary = TrialSummary { config, rows };
        let report = compare_to_prediction(&summary, &table, 1e-12);
        assert!(!report.any_flagged(), "{}", report.render());
    }

    /// Monte Carlo means stay within CLT distance of the empirical-toll
    /// recurrence prediction.
    #[test]
    fn prediction_matches_montecarlo_within_one_percent() {
        let (algorithm, t) = (Algorithm::Classic, 1usize);
        let n = 10_000usize;
        let tolls = crate::analysis::hybrid_tolls(algorithm, CostKind::Comparisons, t, n, 16, 2024);
        let table = exact_recurrence(
            algorithm,
            CostKind::Comparisons,
            t,
            &TollMode::Empirical(tolls),
            n,
        );
        let mut config = ExperimentConfig::new(algorithm, scheme_for(algorithm, t));
        config.sizes = vec![n];
        config.trials = 1000;
        config.seed = 11;
        let summary = run_experiment(&config);
        let report = compare_to_prediction(&summary, &table, 0.01);
        assert!(!report.any_flagged(), "{}", report.render());
    }

    /// Negative control: predictions from the wrong algorithm get flagged.
    #[test]
    fn prediction_mismatch_is_flagged() {
        let tolls = exhaustive_tolls(Algorithm::DualPivot, CostKind::Comparisons, 0, 8);
        let wrong_table = exact_recurrence(
            Algorithm::DualPivot,
            CostKind::Comparisons,
            0,
            &TollMode::Empirical(tolls),
            8,
        );
        let mut config =
            ExperimentConfig::new(Algorithm::Classic, SamplingScheme::ClassicMedian { t: 0 });
        config.sizes = vec![8];
        config.trials = 400;
        config.seed = 5;
        let summary = run_experiment(&config);
        let report = compare_to_prediction(&summary, &wrong_table, 0.05);
        assert!(report.any_flagged());
    }

    #[test]
    #[should_panic(expected = "not covered")]
    fn prediction_rejects_uncovered_sizes() {
        let table = exact_recurrence(
            Algorithm::Classic,
            CostKind::Comparisons,
            0,
            &TollMode::AnalyticLeading,
            16,
        );
        let mut config = small_config();
        config.algorithm = Algorithm::Classic;
        config.scheme = SamplingScheme::ClassicMedian { t: 0 };
        config.sizes = vec![32];
        config.trials = 1;
        let summary = run_experiment(&config);
        compare_to_prediction(&summary, &table, 0.1);
    }

    #[test]
    fn bench_reports_wall_stats_and_sorted_outputs() {
        let mut config = ExperimentConfig::new(Algorithm::Classic, SamplingScheme::Ninther);
        config.sizes = vec![1000, 5000];
        config.trials = 3;
        config.seed = 17;
        config.cutoff = Some(16);
        let summary = bench_wallclock(&config);
        for row in &summary.rows {
            let wall = row.wall.expect("wall stats");
            assert!(wall.min_ns <= wall.max_ns);
            assert!(wall.mean_ns > 0.0);
        }
        let csv = bench_csv(&summary, ',');
        assert!(csv.starts_with("algo,scheme,n,trials,seed,mean_ns,min_ns,max_ns\n"));
        assert_eq!(csv.lines().count(), 3);
    }

    /// Sorted input with sampling and cutoff finishes promptly (no quadratic
    /// blowup at laboratory scale).
    #[test]
    fn bench_sorted_input_smoke() {
        for (algorithm, scheme) in [
            (Algorithm::Classic, SamplingScheme::Ninther),
            (Algorithm::DualPivot, SamplingScheme::DualTertiles { t: 1 }),
        ] {
            let mut keys: Vec<i64> = (1..=200_000).collect();
            let start = Instant::now();
            plain::quicksort(&mut keys, algorithm, scheme, Some(16));
            assert!(keys.windows(2).all(|w| w[0] <= w[1]));
            assert!(start.elapsed().as_secs() < 10);
        }
    }
}
