//! The `sqdiff` command line. Reports go to standard output, logs to standard
//! error. Exit status is 0 when every hard check passes, 1 on a hard failure
//! or runtime error, 2 on a usage error.

use crate::construction::{lcm_up_to, run_construction};
use crate::fourier::{count_via_integral, default_samples, set_spectrum, spectrum, SpectrumSample};
use crate::report::{emit_report, Format, VerificationReport};
use crate::rng::{random_set, seeded};
use crate::sets::{
    count_square_differences_autocorr, count_square_differences_direct, IndicatorSet,
};
use crate::solver::{
    cache_path, find_square_cliques, greedy_guarantee, greedy_square, solve_exact_d,
    trivial_bounds, Budget, CacheRecord, CliqueCertificate, SolverCache, Status,
    KNOWN_CERTIFICATES,
};
use crate::{suites, varnavides, Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Parser, Serialize)]
#[command(
    name = "sqdiff",
    version,
    about = "Square-difference-free sets and the exponential sums that count square differences"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for every randomized sweep.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Journal of solved values (overrides SQDIFF_CACHE).
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "name")]
pub enum Command {
    /// Exact D(N) by branch and bound, recorded in the journal.
    Solve {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 200_000_000)]
        node_limit: u64,
        /// Wall-clock limit in seconds (makes the result timing-dependent).
        #[arg(long)]
        time_limit: Option<f64>,
        /// Neither read nor write the journal.
        #[arg(long)]
        no_cache: bool,
    },
    /// Greedy square-difference-free set.
    Greedy {
        #[arg(long)]
        n: u64,
    },
    /// Known lower and upper bounds on D(N).
    Bounds {
        #[arg(long)]
        n: u64,
    },
    /// Shift systems of squares with square differences.
    Cliques {
        #[arg(long, default_value_t = 1000)]
        limit: u64,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// How many certificates to print.
        #[arg(long, default_value_t = 10)]
        top: usize,
        /// Evaluate each bound at this N.
        #[arg(long)]
        n: Option<u64>,
    },
    /// Square differences in a set, counted on both sides.
    Count {
        #[command(flatten)]
        input: SetInput,
        #[arg(long, value_enum, default_value_t = CountMethod::All)]
        method: CountMethod,
    },
    /// Samples of the Weyl sum (or of a set transform with --set).
    Spectrum {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1024)]
        grid: u64,
        #[arg(long)]
        set: Option<PathBuf>,
    },
    /// Verification suites.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Build B = A' ∪ (A' + q²) and check its properties.
    Construct {
        #[arg(long)]
        n: u64,
        /// Default: the largest admissible value.
        #[arg(long)]
        c1: Option<f64>,
        #[arg(long)]
        set: Option<PathBuf>,
        #[arg(long, default_value_t = 1 << 16)]
        grid: usize,
    },
    /// Inspect or merge journals.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
    /// lcm{1..m} in decimal.
    Lcm {
        #[arg(long)]
        m: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    All,
    Direct,
    Autocorr,
    Integral,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SetInput {
    /// Capacity N for --random.
    #[arg(long)]
    pub n: Option<u64>,
    /// Set file (compact `N:hex` or JSON).
    #[arg(long, conflicts_with = "random")]
    pub set: Option<PathBuf>,
    /// Random set with this density over {1..N}.
    #[arg(long)]
    pub random: Option<f64>,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "suite")]
pub enum Suite {
    /// |S(a,q)| for every coprime pair up to qmax
    Gauss {
        #[arg(long, default_value_t = 500)]
        qmax: u64,
    },
    /// The oscillatory integral against min(1, 2/√λ)
    Oscillatory {
        #[arg(long, default_value_t = 0.1)]
        lo: f64,
        #[arg(long, default_value_t = 1e8)]
        hi: f64,
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
    /// Weyl's inequality on a grid of α
    Weyl {
        #[arg(long, value_delimiter = ',', default_values_t = [10_000u64, 1_000_000])]
        n: Vec<u64>,
        #[arg(long, default_value_t = 10_000)]
        grid: u64,
    },
    /// Minor-arc bound 5ε√N on sampled points
    Arcs {
        #[arg(long, value_delimiter = ',', default_values_t = [10_000u64, 100_000, 1_000_000])]
        n: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_values_t = [0.05f64, 0.1, 0.2, 0.3, 0.5])]
        epsilon: Vec<f64>,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    /// Major-arc bound and main-term error at classical arcs
    Major {
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
        #[arg(long, default_value_t = 1000)]
        points: usize,
        #[arg(long, default_value_t = 50.0)]
        ceiling: f64,
    },
    /// Square-difference counts agree across methods
    Identity {
        #[arg(long, default_value_t = 1000)]
        sets: usize,
        #[arg(long, default_value_t = 4096)]
        nmax: u64,
    },
    /// Plancherel residual on random sets
    Plancherel {
        #[arg(long, default_value_t = 100)]
        sets: usize,
        #[arg(long, default_value_t = 2048)]
        nmax: u64,
    },
    /// Progression counting lemma, on one set or random instances
    Varnavides {
        #[command(flatten)]
        input: SetInput,
        #[arg(long)]
        m: Option<u64>,
        /// Random instances when no single instance is given.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// The doubled-set construction as a report
    Construction {
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
        #[arg(long)]
        c1: Option<f64>,
        #[arg(long, default_value_t = 1 << 16)]
        grid: usize,
    },
    /// lcm{1..m} two ways and its exponential bounds
    Lcm {
        #[arg(long, default_value_t = 200)]
        m: u64,
    },
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "action")]
pub enum CacheAction {
    /// Print the tightest record per N.
    Show,
    /// Fold other journals into this one.
    Merge { inputs: Vec<PathBuf> },
}

/// Outcome of a command: text for standard output and whether every hard
/// check held.
pub struct Outcome {
    pub output: String,
    pub passed: bool,
    pub failures: Vec<String>,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self {
            output,
            passed: true,
            failures: Vec::new(),
        }
    }

    fn report(report: &VerificationReport, format: Format) -> Self {
        let failures = report
            .hard_failures()
            .map(|r| serde_json::to_string(r).expect("row serializes"))
            .collect();
        Self {
            output: emit_report(report, format),
            passed: report.passed(),
            failures,
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string(value)?)
}

fn read_set(path: &Path) -> Result<IndicatorSet> {
    IndicatorSet::parse(std::fs::read_to_string(path)?.trim())
}

fn load_input(input: &SetInput, seed: u64) -> Result<IndicatorSet> {
    match (&input.set, input.random, input.n) {
        (Some(path), _, _) => read_set(path),
        (None, Some(density), Some(n)) => {
            if !(0.0..=1.0).contains(&density) {
                return Err(Error::Usage(format!(
                    "--random must lie in [0, 1], got {density}"
                )));
            }
            Ok(random_set(&mut seeded(seed), n, density))
        }
        (None, None, Some(n)) => Ok(greedy_square(n)?),
        _ => Err(Error::Usage(
            "give --set FILE, or --n N with optional --random DENSITY".into(),
        )),
    }
}

fn with_config(mut report: VerificationReport, config: &RunConfig) -> Result<VerificationReport> {
    report.provenance.seed = config.seed;
    report.provenance.config = serde_json::to_value(config)?;
    Ok(report)
}

fn spectrum_text(samples: &[SpectrumSample], format: Format) -> Result<String> {
    match format {
        Format::Json => json_line(&samples),
        Format::Csv => {
            let mut out = String::from("alpha,re,im,abs\n");
            for s in samples {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    s.alpha,
                    s.value.re,
                    s.value.im,
                    s.value.norm()
                );
            }
            Ok(out)
        }
    }
}

fn solve(
    config: &RunConfig,
    n: u64,
    node_limit: u64,
    time_limit: Option<f64>,
    no_cache: bool,
) -> Result<String> {
    let path = cache_path(config.cache.as_deref());
    if !no_cache {
        let cache = SolverCache::load(&path)?;
        if let Some(record) = cache.exact(n) {
            log::info!("D({n}) found in {}", path.display());
            return json_line(&json!({
                "n": n,
                "value": record.value,
                "status": record.status,
                "witness": record.witness_set(),
                "cached": true,
            }));
        }
    }
    let budget = Budget {
        node_limit: Some(node_limit),
        time_limit: time_limit.map(Duration::from_secs_f64),
    };
    let start = Instant::now();
    let result = solve_exact_d(n, budget)?;
    let ms = start.elapsed().as_millis() as u64;
    if !no_cache {
        SolverCache::append(&path, &CacheRecord::from_result(&result, ms))?;
    }
    json_line(&result)
}

fn bounds(config: &RunConfig, n: u64) -> Result<String> {
    let (lower, upper) = trivial_bounds(n);
    let certificates = KNOWN_CERTIFICATES
        .iter()
        .map(|s| {
            let c = CliqueCertificate::new(s.to_vec())?;
            let b = c.bound(n);
            Ok(json!({ "shifts": c.shifts(), "bound": format!("{}/{}", b.numer(), b.denom()), "value": *b.numer() as f64 / *b.denom() as f64 }))
        })
        .collect::<Result<Vec<_>>>()?;
    let greedy = greedy_square(n)?;
    let cache = SolverCache::load(&cache_path(config.cache.as_deref()))?;
    let known = [Status::Exact, Status::LowerBound, Status::UpperBound]
        .iter()
        .filter_map(|&s| {
            cache
                .get(n, s)
                .map(|r| json!({ "status": s, "value": r.value }))
        })
        .collect::<Vec<_>>();
    json_line(&json!({
        "n": n,
        "trivialLower": lower,
        "trivialUpper": format!("{}/{}", upper.numer(), upper.denom()),
        "certificates": certificates,
        "greedy": greedy.len(),
        "greedyGuarantee": greedy_guarantee(n),
        "journal": known,
    }))
}

fn count(input: &SetInput, method: CountMethod, seed: u64) -> Result<String> {
    let set = load_input(input, seed)?;
    let mut out = serde_json::Map::new();
    out.insert("n".into(), json!(set.capacity()));
    out.insert("size".into(), json!(set.len()));
    if matches!(method, CountMethod::All | CountMethod::Direct) {
        out.insert(
            "direct".into(),
            json!(count_square_differences_direct(&set).0),
        );
    }
    if matches!(method, CountMethod::All | CountMethod::Autocorr) {
        out.insert(
            "autocorr".into(),
            json!(count_square_differences_autocorr(&set)?.0),
        );
    }
    if matches!(method, CountMethod::All | CountMethod::Integral) {
        out.insert(
            "integral".into(),
            json!(count_via_integral(&set, default_samples(set.capacity()))?),
        );
    }
    json_line(&Value::Object(out))
}

fn construction_input(
    config: &RunConfig,
    n: u64,
    set: Option<&Path>,
) -> Result<(IndicatorSet, &'static str)> {
    if let Some(path) = set {
        return Ok((read_set(path)?, "file"));
    }
    let cache = SolverCache::load(&cache_path(config.cache.as_deref()))?;
    match cache.best_witness(n) {
        Some(w) => Ok((w, "cache")),
        None => Ok((greedy_square(n)?, "greedy")),
    }
}

fn verify(config: &RunConfig, suite: &Suite) -> Result<Outcome> {
    let seed = config.seed;
    let report = match suite {
        Suite::Gauss { qmax } => suites::gauss_suite(*qmax)?,
        Suite::Oscillatory { lo, hi, points } => suites::oscillatory_suite(*lo, *hi, *points)?,
        Suite::Weyl { n, grid } => suites::weyl_suite(n, *grid)?,
        Suite::Arcs {
            n,
            epsilon,
            samples,
        } => suites::arcs_suite(n, epsilon, *samples, seed)?,
        Suite::Major { n, points, ceiling } => suites::major_suite(*n, *points, *ceiling, seed)?,
        Suite::Identity { sets, nmax } => suites::identity_suite(*sets, *nmax, seed)?,
        Suite::Plancherel { sets, nmax } => suites::plancherel_suite(*sets, *nmax, seed)?,
        Suite::Varnavides { input, m, trials } => {
            match (input.n.is_some() || input.set.is_some(), m) {
                (true, Some(m)) => {
                    let b = load_input(input, seed)?;
                    let dm = suites::oracle_d(*m)?;
                    let mut report = VerificationReport::new("varnavides", seed, Value::Null);
                    report.push("lemma", true, varnavides::lemma_v_check(&b, *m, dm)?);
                    let tally = varnavides::count_good(&b, *m, dm)?;
                    report.details = json!({ "tally": tally, "dM": dm, "audit": varnavides::chain_audit(&b, *m, dm)? });
                    report
                }
                (true, None) => return Err(Error::Usage("a single instance needs --m".into())),
                (false, _) => suites::varnavides_suite(*trials, 100, 2000, 10, seed)?,
            }
        }
        Suite::Construction { n, c1, grid } => {
            let (a, source) = construction_input(config, *n, None)?;
            suites::construction_suite(&a, source, *c1, *grid, seed)?
        }
        Suite::Lcm { m } => suites::lcm_suite(*m)?,
    };
    Ok(Outcome::report(
        &with_config(report, config)?,
        config.format,
    ))
}

/// Runs one parsed command.
pub fn run(config: &RunConfig) -> Result<Outcome> {
    if let Some(t) = config.threads {
        if t == 0 {
            return Err(Error::Usage("--threads must be at least 1".into()));
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            log::warn!("thread pool already configured: {e}");
        }
    }
    let out = match &config.command {
        Command::Solve {
            n,
            node_limit,
            time_limit,
            no_cache,
        } => solve(config, *n, *node_limit, *time_limit, *no_cache)?,
        Command::Greedy { n } => {
            let set = greedy_square(*n)?;
            json_line(
                &json!({ "n": n, "size": set.len(), "guarantee": greedy_guarantee(*n), "set": set.to_compact() }),
            )?
        }
        Command::Bounds { n } => bounds(config, *n)?,
        Command::Cliques { limit, k, top, n } => {
            let certs = find_square_cliques(*limit, *k)?;
            let rows: Vec<Value> = certs
                .iter()
                .take(*top)
                .map(|c| {
                    let roots: Vec<u64> = c
                        .shifts()
                        .iter()
                        .map(|&s| crate::numeric::isqrt(s))
                        .collect();
                    let mut row =
                        json!({ "shifts": c.shifts(), "roots": roots, "sum": c.shift_sum() });
                    if let Some(n) = n {
                        let b = c.bound(*n);
                        row["bound"] = json!(*b.numer() as f64 / *b.denom() as f64);
                    }
                    row
                })
                .collect();
            json_line(
                &json!({ "k": k, "limit": limit, "found": certs.len(), "certificates": rows }),
            )?
        }
        Command::Count { input, method } => count(input, *method, config.seed)?,
        Command::Spectrum { n, grid, set } => {
            let samples = match set {
                Some(path) => set_spectrum(&read_set(path)?, *grid),
                None => spectrum(*n, *grid),
            };
            spectrum_text(&samples, config.format)?
        }
        Command::Verify { suite } => return verify(config, suite),
        Command::Construct { n, c1, set, grid } => {
            let (a, source) = construction_input(config, *n, set.as_deref())?;
            if a.capacity() != *n {
                return Err(Error::Usage(format!(
                    "set capacity {} differs from --n {n}",
                    a.capacity()
                )));
            }
            let report = run_construction(&a, source, *c1, *grid, config.seed)?;
            let failures: Vec<String> = report
                .hard_checks()
                .into_iter()
                .filter(|(_, ok)| !ok)
                .map(|(name, _)| name.to_string())
                .collect();
            return Ok(Outcome {
                output: json_line(&report)?,
                passed: failures.is_empty(),
                failures,
            });
        }
        Command::Cache { action } => {
            let path = cache_path(config.cache.as_deref());
            let mut cache = SolverCache::load(&path)?;
            match action {
                CacheAction::Show => {}
                CacheAction::Merge { inputs } => {
                    for input in inputs {
                        for record in SolverCache::load(input)?.records() {
                            cache.merge(record.clone());
                        }
                    }
                    cache.write(&path)?;
                }
            }
            cache
                .records()
                .map(json_line)
                .collect::<Result<Vec<_>>>()?
                .join("\n")
        }
        Command::Lcm { m } => lcm_up_to(*m)?.to_str_radix(10),
    };
    Ok(Outcome::ok(out))
}

/// Maps an error to its exit status.
pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Usage(_)
        | Error::InvalidParameter(_)
        | Error::Precondition(_)
        | Error::Parse(_)
        | Error::CapacityExceeded { .. }
        | Error::ShiftTooLarge { .. }
        | Error::ZeroCapacity
        | Error::OutOfRange { .. } => 2,
        _ => 1,
    }
}

/// Parses arguments, runs, prints, and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&config) {
        Ok(outcome) => {
            println!("{}", outcome.output);
            for f in &outcome.failures {
                eprintln!("hard check failed: {f}");
            }
            if outcome.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<Outcome> {
        let mut full = vec!["sqdiff"];
        full.extend_from_slice(args);
        run(&RunConfig::try_parse_from(full).expect("parses"))
    }

    #[test]
    fn solve_without_cache() {
        let out = run_args(&["solve", "--n", "20", "--no-cache"]).unwrap();
        let v: Value = serde_json::from_str(&out.output).unwrap();
        assert_eq!(v["status"], "exact");
        assert_eq!(v["value"], crate::solver::brute_force_d(20).unwrap().value);
    }

    #[test]
    fn lcm_prints_decimal() {
        assert_eq!(run_args(&["lcm", "--m", "10"]).unwrap().output, "2520");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(main_with_args(["sqdiff", "frobnicate"]), 2);
        assert_eq!(main_with_args(["sqdiff", "lcm", "--m", "0"]), 2);
        assert_eq!(exit_code(&Error::NotDisjoint(3)), 1);
    }

    #[test]
    fn gauss_suite_passes() {
        let out = run_args(&["verify", "gauss", "--qmax", "60"]).unwrap();
        assert!(out.passed);
        let v: Value = serde_json::from_str(&out.output).unwrap();
        assert_eq!(v["summary"]["hard_failed"], 0);
        assert_eq!(v["provenance"]["seed"], 1);
    }

    #[test]
    fn spectrum_csv() {
        let out = run_args(&["spectrum", "--n", "16", "--grid", "4", "--format", "csv"]).unwrap();
        let lines: Vec<&str> = out.output.lines().collect();
        assert_eq!(lines[0], "alpha,re,im,abs");
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("0,4,"));
    }

    #[test]
    fn count_all_methods_agree() {
        let out = run_args(&["count", "--n", "300", "--random", "0.4", "--seed", "9"]).unwrap();
        let v: Value = serde_json::from_str(&out.output).unwrap();
        assert_eq!(v["direct"], v["autocorr"]);
        assert!((v["integral"].as_f64().unwrap() - v["direct"].as_f64().unwrap()).abs() < 1e-6);
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("j.jsonl");
        let p = path.to_str().unwrap();
        run_args(&["solve", "--n", "25", "--cache", p]).unwrap();
        let again = run_args(&["solve", "--n", "25", "--cache", p]).unwrap();
        assert!(again.output.contains("\"cached\":true"));
        let shown = run_args(&["cache", "show", "--cache", p]).unwrap();
        assert_eq!(shown.output.lines().count(), 1);
    }
}
