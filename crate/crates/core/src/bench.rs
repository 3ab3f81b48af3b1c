//! Benchmark harness: method-by-problem grids, run records, Dolan-More
//! performance profiles, and the CSV formats that carry them.
//!
//! Profile construction follows the usual convention: the cost of solver
//! `s` on problem `p` is scaled by the best cost any solver achieved on
//! `p`, failures are pinned at the cap ratio `r_max`, and
//! `P_s(t)` is the fraction of problems solver `s` handled within a factor
//! `t` of the best.
//!
//! Timing comes from the monotonic wall clock; time-based profiles are
//! machine-dependent and should not gate anything reproducible — prefer
//! the count metrics for comparisons across machines.

use std::io::Write;
use std::panic::AssertUnwindSafe;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::direction::MethodSpec;
use crate::error::{Error, Result};
use crate::linesearch::WolfeParams;
use crate::problems::ProblemEntry;
use crate::solver::{minimize, SolveStatus, SolverConfig};

/// Outcome of one grid cell. `Error` marks a crashed or invalid run; only
/// `Converged` counts as a success in profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    Converged,
    IterationCap,
    LineSearchFailure,
    Error,
}

impl RunStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RunStatus::Converged => "converged",
            RunStatus::IterationCap => "iteration-cap",
            RunStatus::LineSearchFailure => "line-search-failure",
            RunStatus::Error => "error",
        }
    }

    pub fn is_success(&self) -> bool {
        matches!(self, RunStatus::Converged)
    }
}

impl From<SolveStatus> for RunStatus {
    fn from(status: SolveStatus) -> Self {
        match status {
            SolveStatus::Converged => RunStatus::Converged,
            SolveStatus::IterationCap => RunStatus::IterationCap,
            SolveStatus::LineSearchFailure => RunStatus::LineSearchFailure,
        }
    }
}

impl std::str::FromStr for RunStatus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "converged" => Ok(RunStatus::Converged),
            "iteration-cap" => Ok(RunStatus::IterationCap),
            "line-search-failure" => Ok(RunStatus::LineSearchFailure),
            "error" => Ok(RunStatus::Error),
            other => Err(Error::InvalidConfig(format!("unknown status `{other}`"))),
        }
    }
}

impl std::fmt::Display for RunStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One (problem, method) measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub problem: String,
    pub method: String,
    pub status: RunStatus,
    pub iters: u64,
    pub fevals: u64,
    pub gevals: u64,
    pub wall_time: f64,
    pub f_final: f64,
    pub gnorm_final: f64,
}

/// Grid-wide solver settings.
#[derive(Debug, Clone, Copy)]
pub struct GridConfig {
    pub gtol: f64,
    pub max_iter: usize,
    pub wolfe: WolfeParams,
    /// Worker threads; 1 keeps timing fields comparable.
    pub jobs: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            gtol: 1e-6,
            max_iter: 50_000,
            wolfe: WolfeParams::default(),
            jobs: 1,
        }
    }
}

fn run_cell(entry: &ProblemEntry, method: &MethodSpec, config: &GridConfig) -> RunRecord {
    let solver_config = SolverConfig {
        wolfe: config.wolfe,
        gtol: config.gtol,
        max_iter: config.max_iter,
        ..SolverConfig::new(*method)
    };
    let outcome = std::panic::catch_unwind(AssertUnwindSafe(|| {
        minimize(entry.objective.as_ref(), &entry.x0, &solver_config)
    }));
    match outcome {
        Ok(Ok(report)) => RunRecord {
            problem: entry.name.to_string(),
            method: method.kind.name().to_string(),
            status: report.status.into(),
            iters: report.iters as u64,
            fevals: report.fevals,
            gevals: report.gevals,
            wall_time: report.wall_time,
            f_final: report.f_final,
            gnorm_final: report.gnorm_final,
        },
        Ok(Err(_)) | Err(_) => RunRecord {
            problem: entry.name.to_string(),
            method: method.kind.name().to_string(),
            status: RunStatus::Error,
            iters: 0,
            fevals: 0,
            gevals: 0,
            wall_time: 0.0,
            f_final: f64::NAN,
            gnorm_final: f64::NAN,
        },
    }
}

/// Runs every (problem, method) cell and returns records in input order
/// (problems outer, methods inner). A crashing objective marks its record
/// as an error and the grid continues. Non-timing fields are deterministic
/// for fixed inputs regardless of `jobs`.
pub fn run_grid(
    problems: &[ProblemEntry],
    methods: &[MethodSpec],
    config: &GridConfig,
) -> Result<Vec<RunRecord>> {
    if problems.is_empty() || methods.is_empty() {
        return Err(Error::EmptyInput(
            "run_grid needs at least one problem and one method".to_string(),
        ));
    }
    let cells: Vec<(usize, &ProblemEntry, &MethodSpec)> = problems
        .iter()
        .flat_map(|p| methods.iter().map(move |m| (p, m)))
        .enumerate()
        .map(|(i, (p, m))| (i, p, m))
        .collect();

    let jobs = config.jobs.max(1).min(cells.len());
    let mut indexed: Vec<(usize, RunRecord)> = if jobs == 1 {
        cells
            .iter()
            .map(|(i, p, m)| (*i, run_cell(p, m, config)))
            .collect()
    } else {
        let next = AtomicUsize::new(0);
        let results = Mutex::new(Vec::with_capacity(cells.len()));
        std::thread::scope(|scope| {
            for _ in 0..jobs {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= cells.len() {
                        break;
                    }
                    let (idx, p, m) = cells[i];
                    let record = run_cell(p, m, config);
                    results.lock().unwrap().push((idx, record));
                });
            }
        });
        results.into_inner().unwrap()
    };
    indexed.sort_by_key(|(i, _)| *i);
    Ok(indexed.into_iter().map(|(_, r)| r).collect())
}

/// Cost dimension for a profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileMetric {
    Iters,
    Fevals,
    Gevals,
    Time,
}

impl ProfileMetric {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProfileMetric::Iters => "iters",
            ProfileMetric::Fevals => "fevals",
            ProfileMetric::Gevals => "gevals",
            ProfileMetric::Time => "time",
        }
    }

    /// Cost of a successful record. Counts are floored at one and timing at
    /// a nanosecond so ratios stay well defined.
    fn cost(&self, record: &RunRecord) -> f64 {
        match self {
            ProfileMetric::Iters => (record.iters as f64).max(1.0),
            ProfileMetric::Fevals => (record.fevals as f64).max(1.0),
            ProfileMetric::Gevals => (record.gevals as f64).max(1.0),
            ProfileMetric::Time => record.wall_time.max(1e-9),
        }
    }
}

impl std::str::FromStr for ProfileMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "iters" => Ok(ProfileMetric::Iters),
            "fevals" => Ok(ProfileMetric::Fevals),
            "gevals" => Ok(ProfileMetric::Gevals),
            "time" => Ok(ProfileMetric::Time),
            other => Err(Error::InvalidConfig(format!("unknown metric `{other}`"))),
        }
    }
}

/// Per-(problem, solver) ratio matrix plus the derived step functions.
#[derive(Debug, Clone)]
pub struct ProfileTable {
    /// Solver names in first-appearance order.
    pub solvers: Vec<String>,
    /// Problems with at least one success, first-appearance order.
    pub problems: Vec<String>,
    /// Problems dropped because every solver failed.
    pub dropped: Vec<String>,
    /// `ratios[p][s]`, equal to `r_max` where the run failed or is missing.
    pub ratios: Vec<Vec<f64>>,
    /// `success[p][s]`.
    pub success: Vec<Vec<bool>>,
    /// Failure cap: twice the largest finite ratio, floored at 4.
    pub r_max: f64,
}

impl ProfileTable {
    /// `P_s(t)`: fraction of problems where solver `s` succeeded within a
    /// factor `t` of the best solver.
    pub fn p(&self, solver: usize, t: f64) -> f64 {
        if self.problems.is_empty() {
            return 0.0;
        }
        let hits = self
            .ratios
            .iter()
            .zip(self.success.iter())
            .filter(|(row, ok)| ok[solver] && row[solver] <= t)
            .count();
        hits as f64 / self.problems.len() as f64
    }

    /// Distinct evaluation points: every successful ratio plus `1` and
    /// `r_max`, ascending.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut points = vec![1.0, self.r_max];
        for (row, ok) in self.ratios.iter().zip(self.success.iter()) {
            for (s, r) in row.iter().enumerate() {
                if ok[s] && r.is_finite() {
                    points.push(*r);
                }
            }
        }
        points.sort_by(|a, b| a.partial_cmp(b).unwrap());
        points.dedup();
        points
    }
}

/// Builds the performance profile for one metric.
///
/// Requires each (problem, method) pair at most once. Problems on which no
/// solver succeeded are dropped and reported via
/// [`ProfileTable::dropped`].
pub fn profile(records: &[RunRecord], metric: ProfileMetric) -> Result<ProfileTable> {
    if records.is_empty() {
        return Err(Error::EmptyInput("no records to profile".to_string()));
    }

    let mut solvers: Vec<String> = Vec::new();
    let mut problems: Vec<String> = Vec::new();
    for r in records {
        if !solvers.contains(&r.method) {
            solvers.push(r.method.clone());
        }
        if !problems.contains(&r.problem) {
            problems.push(r.problem.clone());
        }
    }

    // cost[p][s]: Some(cost) on success, None on failure or missing.
    let mut cost: Vec<Vec<Option<f64>>> = vec![vec![None; solvers.len()]; problems.len()];
    let mut seen: Vec<Vec<bool>> = vec![vec![false; solvers.len()]; problems.len()];
    for r in records {
        let p = problems.iter().position(|x| *x == r.problem).unwrap();
        let s = solvers.iter().position(|x| *x == r.method).unwrap();
        if seen[p][s] {
            return Err(Error::DuplicateRecord {
                problem: r.problem.clone(),
                method: r.method.clone(),
            });
        }
        seen[p][s] = true;
        if r.status.is_success() {
            cost[p][s] = Some(metric.cost(r));
        }
    }

    let mut kept_names = Vec::new();
    let mut dropped = Vec::new();
    let mut ratio_rows: Vec<Vec<Option<f64>>> = Vec::new();
    for (p, name) in problems.iter().enumerate() {
        let best = cost[p]
            .iter()
            .flatten()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if !best.is_finite() {
            dropped.push(name.clone());
            continue;
        }
        kept_names.push(name.clone());
        ratio_rows.push(cost[p].iter().map(|c| c.map(|v| v / best)).collect());
    }

    let max_ratio = ratio_rows
        .iter()
        .flatten()
        .flatten()
        .cloned()
        .fold(1.0f64, f64::max);
    let r_max = (2.0 * max_ratio).max(4.0);

    let success: Vec<Vec<bool>> = ratio_rows
        .iter()
        .map(|row| row.iter().map(|r| r.is_some()).collect())
        .collect();
    let ratios: Vec<Vec<f64>> = ratio_rows
        .iter()
        .map(|row| row.iter().map(|r| r.unwrap_or(r_max)).collect())
        .collect();

    Ok(ProfileTable {
        solvers,
        problems: kept_names,
        dropped,
        ratios,
        success,
        r_max,
    })
}

pub const RECORDS_CSV_HEADER: &str =
    "problem,method,status,iters,fevals,gevals,wall_time,f_final,gnorm_final";

/// Serializes run records: UTF-8, comma-separated, LF line endings, floats
/// in shortest round-trip form.
pub fn records_to_csv(records: &[RunRecord]) -> String {
    let mut out = String::from(RECORDS_CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{:?},{:?},{:?}\n",
            r.problem,
            r.method,
            r.status,
            r.iters,
            r.fevals,
            r.gevals,
            r.wall_time,
            r.f_final,
            r.gnorm_final
        ));
    }
    out
}

/// Parses the format written by [`records_to_csv`]. Errors carry 1-based
/// line numbers.
pub fn records_from_csv(text: &str) -> Result<Vec<RunRecord>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim_end() == RECORDS_CSV_HEADER => {}
        Some((_, other)) => {
            return Err(Error::CsvFormat {
                line: 1,
                message: format!("expected header `{RECORDS_CSV_HEADER}`, got `{other}`"),
            })
        }
        None => {
            return Err(Error::CsvFormat {
                line: 1,
                message: "empty file".to_string(),
            })
        }
    }

    let mut records = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 9 {
            return Err(Error::CsvFormat {
                line: lineno,
                message: format!("expected 9 fields, got {}", fields.len()),
            });
        }
        let parse_u64 = |s: &str, what: &str| -> Result<u64> {
            s.parse().map_err(|_| Error::CsvFormat {
                line: lineno,
                message: format!("invalid {what} `{s}`"),
            })
        };
        let parse_f64 = |s: &str, what: &str| -> Result<f64> {
            s.parse().map_err(|_| Error::CsvFormat {
                line: lineno,
                message: format!("invalid {what} `{s}`"),
            })
        };
        records.push(RunRecord {
            problem: fields[0].to_string(),
            method: fields[1].to_string(),
            status: fields[2].parse().map_err(|_| Error::CsvFormat {
                line: lineno,
                message: format!("invalid status `{}`", fields[2]),
            })?,
            iters: parse_u64(fields[3], "iters")?,
            fevals: parse_u64(fields[4], "fevals")?,
            gevals: parse_u64(fields[5], "gevals")?,
            wall_time: parse_f64(fields[6], "wall_time")?,
            f_final: parse_f64(fields[7], "f_final")?,
            gnorm_final: parse_f64(fields[8], "gnorm_final")?,
        });
    }
    Ok(records)
}

/// Serializes a profile as `t,<solver1>,<solver2>,...` with one row per
/// breakpoint.
pub fn profile_to_csv(table: &ProfileTable) -> String {
    let mut out = String::from("t");
    for s in &table.solvers {
        out.push(',');
        out.push_str(s);
    }
    out.push('\n');
    for t in table.breakpoints() {
        out.push_str(&format!("{t:?}"));
        for s in 0..table.solvers.len() {
            out.push_str(&format!(",{:?}", table.p(s, t)));
        }
        out.push('\n');
    }
    out
}

/// Writes `contents` to `path` atomically: a temp file in the same
/// directory is renamed into place only after a successful write.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let mut tmp = path.file_name().map(|n| n.to_os_string()).ok_or_else(|| {
        Error::InvalidConfig(format!("not a file path: {}", path.display()))
    })?;
    tmp.push(".tmp");
    let tmp_path = dir.join(tmp);
    {
        let mut file = std::fs::File::create(&tmp_path)?;
        file.write_all(contents)?;
        file.sync_all()?;
    }
    std::fs::rename(&tmp_path, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::direction::MethodKind;
    use crate::problems;
    use proptest::prelude::*;

    fn record(problem: &str, method: &str, iters: u64, ok: bool) -> RunRecord {
        RunRecord {
            problem: problem.to_string(),
            method: method.to_string(),
            status: if ok {
                RunStatus::Converged
            } else {
                RunStatus::IterationCap
            },
            iters,
            fevals: iters * 2 + 1,
            gevals: iters + 1,
            wall_time: iters as f64 * 0.001,
            f_final: 1e-12,
            gnorm_final: 1e-7,
        }
    }

    #[test]
    fn hand_profile_matches_exactly() {
        let records = vec![
            record("p1", "s1", 2, true),
            record("p1", "s2", 1, true),
            record("p2", "s1", 3, true),
            record("p2", "s2", 6, true),
        ];
        let table = profile(&records, ProfileMetric::Iters).unwrap();
        assert_eq!(table.ratios, vec![vec![2.0, 1.0], vec![1.0, 2.0]]);
        assert_eq!(table.r_max, 4.0);
        assert_eq!(table.p(0, 1.0), 0.5);
        assert_eq!(table.p(0, 2.0), 1.0);
        assert_eq!(table.p(1, 1.0), 0.5);
        assert_eq!(table.p(1, 2.0), 1.0);
        assert_eq!(table.breakpoints(), vec![1.0, 2.0, 4.0]);
    }

    #[test]
    fn ties_all_get_ratio_one() {
        let records = vec![
            record("p1", "s1", 5, true),
            record("p1", "s2", 5, true),
            record("p2", "s1", 7, true),
            record("p2", "s2", 7, true),
        ];
        let table = profile(&records, ProfileMetric::Iters).unwrap();
        assert_eq!(table.ratios, vec![vec![1.0, 1.0], vec![1.0, 1.0]]);
        // P_s(1) values may sum to more than one when ties are common.
        assert_eq!(table.p(0, 1.0) + table.p(1, 1.0), 2.0);
    }

    #[test]
    fn failed_solver_has_zero_profile_below_r_max() {
        let records = vec![
            record("p1", "good", 2, true),
            record("p1", "bad", 9, false),
            record("p2", "good", 4, true),
            record("p2", "bad", 9, false),
        ];
        let table = profile(&records, ProfileMetric::Iters).unwrap();
        let bad = table.solvers.iter().position(|s| s == "bad").unwrap();
        assert_eq!(table.p(bad, 1.0), 0.0);
        assert_eq!(table.p(bad, table.r_max - 1e-9), 0.0);
        assert_eq!(table.p(bad, table.r_max), 0.0);
    }

    #[test]
    fn single_solver_profile_is_one_everywhere() {
        let records = vec![record("p1", "s", 3, true), record("p2", "s", 8, true)];
        let table = profile(&records, ProfileMetric::Iters).unwrap();
        assert_eq!(table.p(0, 1.0), 1.0);
        assert_eq!(table.p(0, table.r_max), 1.0);
    }

    #[test]
    fn all_failed_problem_is_dropped_and_reported() {
        let records = vec![
            record("p1", "s1", 2, true),
            record("p1", "s2", 3, true),
            record("p2", "s1", 9, false),
            record("p2", "s2", 9, false),
        ];
        let table = profile(&records, ProfileMetric::Iters).unwrap();
        assert_eq!(table.problems, vec!["p1".to_string()]);
        assert_eq!(table.dropped, vec!["p2".to_string()]);
    }

    #[test]
    fn empty_and_duplicate_inputs_error() {
        assert!(matches!(
            profile(&[], ProfileMetric::Iters),
            Err(Error::EmptyInput(_))
        ));
        let records = vec![record("p", "s", 1, true), record("p", "s", 2, true)];
        assert!(matches!(
            profile(&records, ProfileMetric::Iters),
            Err(Error::DuplicateRecord { .. })
        ));
    }

    #[test]
    fn records_csv_round_trips() {
        let records = vec![
            record("tridia", "azhs", 41, true),
            record("rosenbr", "hs+", 77, false),
        ];
        let csv = records_to_csv(&records);
        assert!(csv.starts_with(RECORDS_CSV_HEADER));
        assert!(csv.ends_with('\n'));
        let parsed = records_from_csv(&csv).unwrap();
        assert_eq!(parsed, records);
    }

    #[test]
    fn csv_float_format_is_round_trip_decimal() {
        let mut r = record("p", "s", 1, true);
        r.wall_time = 1.0;
        r.f_final = 0.1;
        r.gnorm_final = 3.0000000000000004e-7;
        let csv = records_to_csv(&[r]);
        let line = csv.lines().nth(1).unwrap();
        assert!(line.contains(",1.0,"), "ratio 1.0 must keep its decimal point: {line}");
        assert!(line.contains("0.1"));
        let parsed = records_from_csv(&csv).unwrap();
        assert_eq!(parsed[0].gnorm_final, 3.0000000000000004e-7);
    }

    #[test]
    fn empty_record_list_gives_header_only_csv() {
        let csv = records_to_csv(&[]);
        assert_eq!(csv, format!("{RECORDS_CSV_HEADER}\n"));
        assert_eq!(records_from_csv(&csv).unwrap(), Vec::<RunRecord>::new());
    }

    #[test]
    fn malformed_csv_reports_line_numbers() {
        let err = records_from_csv("nonsense\n").unwrap_err();
        assert!(matches!(err, Error::CsvFormat { line: 1, .. }));

        let good = records_to_csv(&[record("p", "s", 1, true)]);
        let bad = format!("{good}p2,s,converged,not-a-number,1,1,0.0,0.0,0.0\n");
        let err = records_from_csv(&bad).unwrap_err();
        assert!(matches!(err, Error::CsvFormat { line: 3, .. }));
    }

    #[test]
    fn grid_runs_every_cell_and_is_deterministic() {
        let entries: Vec<_> = ["rosenbr", "beale"]
            .iter()
            .map(|n| problems::by_name(n).unwrap())
            .collect();
        let methods = [
            MethodSpec::new(MethodKind::Azhs),
            MethodSpec::new(MethodKind::HsPlus),
        ];
        let config = GridConfig {
            max_iter: 5000,
            ..GridConfig::default()
        };
        let a = run_grid(&entries, &methods, &config).unwrap();
        assert_eq!(a.len(), 4);
        assert_eq!(a[0].problem, "rosenbr");
        assert_eq!(a[0].method, "azhs");

        let b = run_grid(&entries, &methods, &config).unwrap();
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.problem, y.problem);
            assert_eq!(x.method, y.method);
            assert_eq!(x.status, y.status);
            assert_eq!(x.iters, y.iters);
            assert_eq!(x.fevals, y.fevals);
            assert_eq!(x.gevals, y.gevals);
            assert_eq!(x.f_final.to_bits(), y.f_final.to_bits());
            assert_eq!(x.gnorm_final.to_bits(), y.gnorm_final.to_bits());
        }

        // Parallel execution returns the same cells in the same order.
        let parallel = run_grid(&entries, &methods, &GridConfig { jobs: 4, ..config }).unwrap();
        for (x, y) in a.iter().zip(parallel.iter()) {
            assert_eq!(x.status, y.status);
            assert_eq!(x.iters, y.iters);
        }
    }

    #[test]
    fn crashing_objective_marks_record_failed() {
        use crate::objective::FnObjective;
        use crate::vector::Vector;
        use std::sync::Arc;

        let entries = vec![
            ProblemEntry {
                name: "panics",
                objective: Arc::new(FnObjective::new("panics", 1, |_| panic!("boom"), |_| {
                    vec![0.0]
                })),
                x0: Vector::new(vec![1.0]).unwrap(),
                f_star: None,
                x_star: None,
            },
            problems::by_name("beale").unwrap(),
        ];
        let methods = [MethodSpec::new(MethodKind::Azhs)];
        let records = run_grid(&entries, &methods, &GridConfig::default()).unwrap();
        assert_eq!(records[0].status, RunStatus::Error);
        assert_eq!(records[1].status, RunStatus::Converged);
    }

    #[test]
    fn singleton_grid_produces_one_record() {
        let entries = vec![problems::by_name("beale").unwrap()];
        let methods = [MethodSpec::new(MethodKind::Azhs)];
        let records = run_grid(&entries, &methods, &GridConfig::default()).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].status, RunStatus::Converged);
    }

    proptest! {
        // Random cost matrices: P_s is within [0, 1], nondecreasing, and
        // constant between consecutive breakpoints.
        #[test]
        fn profile_step_function_properties(
            costs in prop::collection::vec(
                prop::collection::vec(prop::option::weighted(0.85, 1u64..500), 2..5),
                2..6,
            )
        ) {
            let n_solvers = costs[0].len();
            let mut records = Vec::new();
            for (p, row) in costs.iter().enumerate() {
                for (s, cell) in row.iter().enumerate().take(n_solvers) {
                    let name_p = format!("p{p}");
                    let name_s = format!("s{s}");
                    match cell {
                        Some(c) => records.push(record(&name_p, &name_s, *c, true)),
                        None => records.push(record(&name_p, &name_s, 1, false)),
                    }
                }
            }
            let table = match profile(&records, ProfileMetric::Iters) {
                Ok(t) => t,
                // All-failure grids legitimately drop every problem.
                Err(_) => return Ok(()),
            };
            let points = table.breakpoints();
            for s in 0..table.solvers.len() {
                let mut last = 0.0;
                for (i, t) in points.iter().enumerate() {
                    let v = table.p(s, *t);
                    prop_assert!((0.0..=1.0).contains(&v));
                    prop_assert!(v >= last);
                    last = v;
                    if i + 1 < points.len() {
                        let mid = 0.5 * (t + points[i + 1]);
                        prop_assert_eq!(table.p(s, mid), v);
                    }
                }
            }
        }
    }
}
