use clap::{Parser, Subcommand, ValueEnum};
use sortlab::analysis::{
    asymptotic_constant, empirical_toll_exhaustive, empirical_toll_montecarlo, exact_recurrence,
    exhaustive_mean_counters, exhaustive_tolls, hybrid_tolls, CostKind, TollMode, EXHAUSTIVE_LIMIT,
};
use sortlab::chart::{emit_svg_chart, Series};
use sortlab::cost::InstrumentedArray;
use sortlab::harness::{
    bench_csv, bench_wallclock, counts_csv, run_experiment, write_report, ExperimentConfig,
    KeyModel, ReportCost,
};
use sortlab::rng::gen_permutation;
use sortlab::sorters::{quicksort_with_cutoff, Algorithm, SamplingScheme};

#[derive(Parser)]
#[command(
    name = "sortlab",
    about = "Instrumented quicksort laboratory: measure comparisons, swaps and scanned elements, and predict them from the cost recurrences"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Classic,
    Dual,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Algorithm {
        match a {
            AlgoArg::Classic => Algorithm::Classic,
            AlgoArg::Dual => Algorithm::DualPivot,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Tsv,
}

impl FormatArg {
    fn delim(self) -> char {
        match self {
            FormatArg::Csv => ',',
            FormatArg::Tsv => '\t',
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Sort one input and print its cost counters.
    Sort {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        /// median:t | tertiles:t | ninther
        #[arg(long)]
        scheme: String,
        /// Explicit comma-separated keys (overrides --n/--seed).
        #[arg(long)]
        keys: Option<String>,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Insertion-sort cutoff (absent = off, matching the cost model).
        #[arg(long)]
        cutoff: Option<usize>,
    },
    /// Run a seeded experiment and emit counter statistics as CSV.
    Counts {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long)]
        scheme: String,
        /// cmps | scans | swaps | all
        #[arg(long, default_value = "all")]
        cost: String,
        /// Comma-separated sizes, e.g. 1024,4096,16384.
        #[arg(long)]
        sizes: String,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        cutoff: Option<usize>,
        /// Output path (stdout when absent).
        #[arg(long)]
        out: Option<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Solve the expected-cost recurrence and emit an n,value table.
    Recurrence {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        /// median:t or tertiles:t (the ninther has no recurrence).
        #[arg(long)]
        scheme: String,
        /// cmps | scans
        #[arg(long)]
        cost: String,
        /// Table horizon N (values c_0..c_N).
        #[arg(long)]
        n: usize,
        /// analytic: leading-term tolls; empirical: measured tolls
        /// (exhaustive below n=10, Monte Carlo above).
        #[arg(long, default_value = "analytic")]
        toll: String,
        /// Monte Carlo trials per size for --toll empirical.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Print the asymptotic leading constant of n ln n.
    Asymptotic {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long)]
        scheme: String,
        /// cmps | scans
        #[arg(long)]
        cost: String,
    },
    /// Exact expected cost over all n! permutations (n <= 9).
    Oracle {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long)]
        scheme: String,
        /// cmps | scans
        #[arg(long)]
        cost: String,
        #[arg(long)]
        n: usize,
    },
    /// Expected cost of a single partitioning step at size n.
    Toll {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long)]
        scheme: String,
        /// cmps | scans
        #[arg(long)]
        cost: String,
        #[arg(long)]
        n: usize,
        /// exhaustive (n <= 9) | mc
        #[arg(long, default_value = "mc")]
        mode: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Wall-clock benchmark of the uninstrumented sorters (informational).
    Bench {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        sizes: String,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        cutoff: Option<usize>,
        #[arg(long)]
        out: Option<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Measure normalized costs over a size sweep and render an SVG chart
    /// with the asymptotic constant as a horizontal line.
    Chart {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long)]
        scheme: String,
        /// cmps | scans | swaps
        #[arg(long)]
        cost: String,
        #[arg(long)]
        sizes: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        cutoff: Option<usize>,
        #[arg(long)]
        out: String,
    },
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}

fn parse_scheme(algorithm: Algorithm, s: &str) -> Result<SamplingScheme, String> {
    let scheme: SamplingScheme = s.parse()?;
    if !scheme.compatible_with(algorithm) {
        return Err(format!(
            "scheme {} is undefined for algorithm {} (classic takes median:t or ninther, dual takes tertiles:t)",
            scheme.label(),
            algorithm.label()
        ));
    }
    Ok(scheme)
}

fn parse_sizes(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad size {x:?}"))
        })
        .collect()
}

fn parse_analysis_cost(s: &str) -> Result<CostKind, String> {
    match s {
        "cmps" => Ok(CostKind::Comparisons),
        "scans" => Ok(CostKind::ScannedElements),
        "swaps" => Err("swaps are measured but not modeled; use cmps or scans here".into()),
        _ => Err(format!("unknown cost {s:?}: expected cmps or scans")),
    }
}

fn parse_report_costs(s: &str) -> Result<Vec<ReportCost>, String> {
    if s == "all" {
        return Ok(vec![
            ReportCost::Comparisons,
            ReportCost::ScannedElements,
            ReportCost::Swaps,
        ]);
    }
    s.split(',').map(|x| x.trim().parse()).collect()
}

fn scheme_t(scheme: SamplingScheme) -> Result<usize, String> {
    match scheme {
        SamplingScheme::ClassicMedian { t } | SamplingScheme::DualTertiles { t } => Ok(t),
        SamplingScheme::Ninther => {
            Err("the ninther has no recurrence; only `asymptotic`, `oracle`, `toll` and measurements support it".into())
        }
    }
}

fn emit(out: Option<&str>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => write_report(path, content).map_err(|e| e.to_string()),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.cmd {
        Cmd::Sort {
            algo,
            scheme,
            keys,
            n,
            seed,
            cutoff,
        } => {
            let algorithm = algo.into();
            let scheme = parse_scheme(algorithm, &scheme)?;
            let input: Vec<i64> = match keys {
                Some(list) => list
                    .split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<i64>()
                            .map_err(|_| format!("bad key {x:?}"))
                    })
                    .collect::<Result<_, _>>()?,
                None => gen_permutation(n, seed),
            };
            let mut arr = InstrumentedArray::from_keys(input);
            quicksort_with_cutoff(&mut arr, algorithm, scheme, cutoff);
            let sorted = sortlab::cost::is_sorted(arr.keys());
            let c = arr.counters();
            println!(
                "algo={} scheme={} n={} sorted={sorted}",
                algorithm.label(),
                scheme.label(),
                arr.len()
            );
            if arr.len() <= 50 {
                let shown: Vec<String> = arr.keys().iter().map(|k| k.0.to_string()).collect();
                println!("output: {}", shown.join(" "));
            }
            println!("comparisons: {}", c.comparisons);
            println!("swaps: {}", c.swaps);
            println!("scanned_elements: {}", c.scanned_elements);
            println!("partition_calls: {}", c.partition_calls);
            Ok(())
        }
        Cmd::Counts {
            algo,
            scheme,
            cost,
            sizes,
            trials,
            seed,
            cutoff,
            out,
            format,
        } => {
            let algorithm = algo.into();
            let scheme = parse_scheme(algorithm, &scheme)?;
            let costs = parse_report_costs(&cost)?;
            let mut config = ExperimentConfig::new(algorithm, scheme);
            config.sizes = parse_sizes(&sizes)?;
            config.trials = trials;
            config.seed = seed;
            config.cutoff = cutoff;
            config.keys = KeyModel::DistinctPermutation;
            let summary = run_experiment(&config);
            emit(
                out.as_deref(),
                &counts_csv(&summary, &costs, format.delim()),
            )
        }
        Cmd::Recurrence {
            algo,
            scheme,
            cost,
            n,
            toll,
            trials,
            seed,
            out,
            format,
        } => {
            let algorithm = algo.into();
            let scheme = parse_scheme(algorithm, &scheme)?;
            let cost = parse_analysis_cost(&cost)?;
            let t = scheme_t(scheme)?;
            let toll_mode = match toll.as_str() {
                "analytic" => TollMode::AnalyticLeading,
                "empirical" => {
                    if scheme.sample_size() + 1 > EXHAUSTIVE_LIMIT {
                        return Err(format!(
                            "empirical tolls need exhaustive base cases up to n = {}, beyond the n <= {EXHAUSTIVE_LIMIT} enumeration limit",
                            scheme.sample_size() + 1
                        ));
                    }
                    if n <= EXHAUSTIVE_LIMIT {
                        TollMode::Empirical(exhaustive_tolls(algorithm, cost, t, n))
                    } else {
                        TollMode::Empirical(hybrid_tolls(algorithm, cost, t, n, trials, seed))
                    }
                }
                other => {
                    return Err(format!(
                        "unknown toll mode {other:?}: expected analytic or empirical"
                    ))
                }
            };
            let table = exact_recurrence(algorithm, cost, t, &toll_mode, n);
            emit(out.as_deref(), &table.csv_rows(format.delim()))
        }
        Cmd::Asymptotic { algo, scheme, cost } => {
            let algorithm = algo.into();
            let scheme = parse_scheme(algorithm, &scheme)?;
            let cost = parse_analysis_cost(&cost)?;
            let constant = asymptotic_constant(algorithm, cost, scheme);
            println!("{constant:.6}");
            Ok(())
        }
        Cmd::Oracle {
            algo,
            scheme,
            cost,
            n,
        } => {
            let algorithm = algo.into();
            let scheme = parse_scheme(algorithm, &scheme)?;
            let cost = parse_analysis_cost(&cost)?;
            if n > EXHAUSTIVE_LIMIT {
                return Err(format!(
                    "exhaustive oracle is capped at n <= {EXHAUSTIVE_LIMIT}"
                ));
            }
            let means = exhaustive_mean_counters(algorithm, scheme, n);
            let v = means.pick(cost);
            let f = num_traits::ToPrimitive::to_f64(&v).unwrap();
            println!("{} = {v} ~ {f:.6}", cost.label());
            Ok(())
        }
        Cmd::Toll {
            algo,
            scheme,
            cost,
            n,
            mode,
            trials,
            seed,
        } => {
            let algorithm = algo.into();
            let scheme = parse_scheme(algorithm, &scheme)?;
            let cost = parse_analysis_cost(&cost)?;
            if n < 2 {
                return Err("a partitioning step needs n >= 2".into());
            }
            let value = match mode.as_str() {
                "exhaustive" => {
                    if n > EXHAUSTIVE_LIMIT {
                        return Err(format!(
                            "exhaustive tolls are capped at n <= {EXHAUSTIVE_LIMIT}"
                        ));
                    }
                    let v = empirical_toll_exhaustive(algorithm, cost, scheme, n);
                    println!("{} toll = {v}", cost.label());
                    num_traits::ToPrimitive::to_f64(&v).unwrap()
                }
                "mc" => empirical_toll_montecarlo(algorithm, cost, scheme, n, trials, seed),
                other => {
                    return Err(format!(
                        "unknown toll mode {other:?}: expected exhaustive or mc"
                    ))
                }
            };
            println!(
                "{} toll ~ {value:.4} ({:.4} per element)",
                cost.label(),
                value / n as f64
            );
            Ok(())
        }
        Cmd::Bench {
            algo,
            scheme,
            sizes,
            trials,
            seed,
            cutoff,
            out,
            format,
        } => {
            let algorithm = algo.into();
            let scheme = parse_scheme(algorithm, &scheme)?;
            let mut config = ExperimentConfig::new(algorithm, scheme);
            config.sizes = parse_sizes(&sizes)?;
            config.trials = trials;
            config.seed = seed;
            config.cutoff = cutoff;
            let summary = bench_wallclock(&config);
            emit(out.as_deref(), &bench_csv(&summary, format.delim()))
        }
        Cmd::Chart {
            algo,
            scheme,
            cost,
            sizes,
            trials,
            seed,
            cutoff,
            out,
        } => {
            let algorithm = algo.into();
            let scheme = parse_scheme(algorithm, &scheme)?;
            let report_cost: ReportCost = cost.parse()?;
            let mut config = ExperimentConfig::new(algorithm, scheme);
            config.sizes = parse_sizes(&sizes)?;
            config.trials = trials;
            config.seed = seed;
            config.cutoff = cutoff;
            let summary = run_experiment(&config);
            let points: Vec<(f64, f64)> = summary
                .rows
                .iter()
                .filter(|r| r.n >= 2)
                .map(|r| (r.n as f64, r.normalized(report_cost)))
                .collect();
            let asymptote = match report_cost {
                ReportCost::Comparisons => Some(asymptotic_constant(
                    algorithm,
                    CostKind::Comparisons,
                    scheme,
                )),
                ReportCost::ScannedElements => Some(asymptotic_constant(
                    algorithm,
                    CostKind::ScannedElements,
                    scheme,
                )),
                ReportCost::Swaps => None,
            };
            let series = [Series {
                label: format!(
                    "{} {} {}",
                    algorithm.label(),
                    scheme.label(),
                    report_cost.label()
                ),
                points,
                asymptote,
            }];
            let y_label = format!("{} / (n ln n)", report_cost.label());
            emit_svg_chart(&series, &y_label, &out).map_err(|e| e.to_string())?;
            println!("wrote {out}");
            Ok(())
        }
    }
}
