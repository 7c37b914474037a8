//! Command-line front end.
//!
//! [`run`] turns a parsed [`Cli`] into an [`Outcome`] holding the exit status
//! and the rendered document, so the binary only parses arguments and writes
//! bytes. Every check is delegated to the library.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::counting::{count_in_set, ell_pm, ell_two_residue, fda, hda, PartSet};
use crate::error::{invalid, Error, Result};
use crate::experiments::{
    check_prop17, constants, scan_fofd, scan_kangkim, AsymptoticConstants, ScanReport,
};
use crate::genfunc::{beck_excess, fo_fd_j2};
use crate::oracle::{
    count_where, enumerate_in_set, enumerate_size, filter_perimeter, ConstraintSpec,
};
use crate::verify::{run_suite, Suite, SuiteReport};
use crate::{Count, Partition};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "PERIMETER_THREADS";

/// Cell character for ASCII Ferrers diagrams.
pub const FERRERS_CELL: char = '*';

/// Largest perimeter accepted for oracle-backed counts of the `k >= 3` families.
const ORACLE_COUNT_CAP: usize = 26;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "perimeter",
    version,
    about = "Count, enumerate and check partitions by perimeter"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,
    /// Write the document to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Count partitions of a family for one perimeter or a range.
    Count(CountArgs),
    /// List the partitions of perimeter n satisfying a constraint.
    Enumerate(EnumerateArgs),
    /// Run a named identity suite, or `all`.
    Verify(VerifyArgs),
    /// Scan a signed count difference over a range of n.
    Scan(ScanArgs),
    /// Print alpha_d, A_d and the tipping point.
    Constants(ConstantsArgs),
}

/// Integer parameters shared by the subcommands. Which ones are required
/// depends on the family.
#[derive(Args, Debug, Clone, Default)]
pub struct Params {
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub j: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Allowed parts, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub set: Option<Vec<usize>>,
}

impl Params {
    fn need(&self, field: &'static str) -> Result<usize> {
        let v = match field {
            "d" => self.d,
            "a" => self.a,
            "b" => self.b,
            "j" => self.j,
            "k" => self.k,
            _ => None,
        };
        v.ok_or_else(|| invalid(field, "required for this family"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// All partitions of perimeter n.
    R,
    /// All partitions of size n.
    P,
    /// Exactly j part sizes divisible by k.
    Fo,
    /// Exactly j part sizes repeated at least k times.
    Fd,
    /// Parts congruent to a modulo d+1.
    F,
    /// Parts >= a pairwise differing by at least d.
    H,
    /// Parts congruent to +-a modulo d+3.
    Ell,
    /// Parts congruent to a or b modulo d.
    Ell2,
    /// Excess of total parts of f over h.
    Beck,
    /// Parts drawn from --set.
    Set,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::R => "r",
            Family::P => "p",
            Family::Fo => "fo",
            Family::Fd => "fd",
            Family::F => "f",
            Family::H => "h",
            Family::Ell => "ell",
            Family::Ell2 => "ell2",
            Family::Beck => "beck",
            Family::Set => "set",
        }
    }

    fn fields(self) -> &'static [&'static str] {
        match self {
            Family::R | Family::P | Family::Set => &[],
            Family::Fo | Family::Fd => &["j", "k"],
            Family::F | Family::H | Family::Ell | Family::Beck => &["d", "a"],
            Family::Ell2 => &["d", "a", "b"],
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct CountArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[command(flatten)]
    pub params: Params,
    /// Single perimeter (or size, for `p`).
    #[arg(long, conflicts_with_all = ["n_min", "n_max"])]
    pub n: Option<usize>,
    #[arg(long, requires = "n_max")]
    pub n_min: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstraintKind {
    All,
    Set,
    Odd,
    Distinct,
    Fo,
    Fd,
    Pm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Render {
    Parts,
    Ferrers,
    Profile,
}

#[derive(Args, Debug, Clone)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = ConstraintKind::All)]
    pub constraint: ConstraintKind,
    #[command(flatten)]
    pub params: Params,
    #[arg(long, value_enum, default_value_t = Render::Parts)]
    pub render: Render,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Suite name (straub, theorem-k2, alder-type, beck, st-inequality,
    /// reduction, refinement) or `all`.
    pub suite: String,
    /// Largest n; each suite has its own default.
    #[arg(long)]
    pub max_n: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScanFamily {
    Fofd,
    Kangkim,
    Prop17,
}

#[derive(Args, Debug, Clone)]
pub struct ScanArgs {
    #[arg(value_enum)]
    pub family: ScanFamily,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub j: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub m1: Option<usize>,
    #[arg(long)]
    pub m2: Option<usize>,
    #[arg(long)]
    pub a1: Option<usize>,
    #[arg(long)]
    pub b1: Option<usize>,
    #[arg(long)]
    pub a2: Option<usize>,
    #[arg(long)]
    pub b2: Option<usize>,
    #[arg(long)]
    pub n_max: usize,
}

#[derive(Args, Debug, Clone)]
pub struct ConstantsArgs {
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    /// Print every d from --d up to this value.
    #[arg(long)]
    pub d_max: Option<u32>,
}

/// Exit status and rendered document of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            status: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Executes a parsed command.
pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Count(args) => count(args, cli.format).map(Outcome::ok),
        Command::Enumerate(args) => enumerate(args, cli.format).map(Outcome::ok),
        Command::Verify(args) => verify(args, cli.format),
        Command::Scan(args) => scan(args, cli.format),
        Command::Constants(args) => constants_cmd(args, cli.format).map(Outcome::ok),
    };
    result.unwrap_or_else(|e| error_outcome(&e, cli.format))
}

fn error_outcome(e: &Error, format: Format) -> Outcome {
    let (status, kind) = match e {
        Error::CheckFailed(_) => (EXIT_CHECK_FAILED, "check-failed"),
        _ => (EXIT_VALIDATION, "validation"),
    };
    let field = match e {
        Error::InvalidParameter { field, .. } => Some(*field),
        _ => None,
    };
    let body = match format {
        Format::Json => {
            let doc = json!({ "status": kind, "field": field, "failures": [e.to_string()] });
            format!("{doc}\n")
        }
        _ => format!("error[{kind}]: {e}\n"),
    };
    let (stdout, stderr) = if status == EXIT_CHECK_FAILED {
        (body, String::new())
    } else {
        (String::new(), body)
    };
    Outcome {
        status,
        stdout,
        stderr,
    }
}

/// `k=v;k=v` with keys in sorted order.
pub fn canonical_params(params: &BTreeMap<String, i64>) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn count_params(args: &CountArgs) -> Result<BTreeMap<String, i64>> {
    let mut out = BTreeMap::new();
    for &field in args.family.fields() {
        out.insert(field.to_string(), args.params.need(field)? as i64);
    }
    Ok(out)
}

fn count_one(family: Family, p: &Params, n: usize) -> Result<Count> {
    match family {
        Family::R => {
            crate::error::ensure(n >= 1, "n", "must be >= 1")?;
            Ok(Count::from(1u8) << (n - 1))
        }
        Family::P => Ok(Count::from(enumerate_size(n).count())),
        Family::Fo | Family::Fd => {
            let (j, k) = (p.need("j")?, p.need("k")?);
            if k == 2 {
                let (fo, fd) = fo_fd_j2(j, n)?;
                return Ok(if family == Family::Fo { fo } else { fd });
            }
            crate::error::ensure(
                n <= ORACLE_COUNT_CAP,
                "n",
                format!("must be <= {ORACLE_COUNT_CAP} when k >= 3"),
            )?;
            let spec = if family == Family::Fo {
                ConstraintSpec::ExactlyJSizesDivisible { j, k }
            } else {
                ConstraintSpec::ExactlyJSizesRepeated { j, k }
            };
            count_where(n, &spec)
        }
        Family::F => fda(p.need("d")?, p.need("a")?, n),
        Family::H => hda(p.need("d")?, p.need("a")?, n),
        Family::Ell => ell_pm(p.need("d")?, p.need("a")?, n),
        Family::Ell2 => ell_two_residue(p.need("d")?, p.need("a")?, p.need("b")?, n),
        Family::Beck => {
            crate::error::ensure(n >= 1, "n", "must be >= 1")?;
            beck_excess(p.need("d")?, p.need("a")?, n)
        }
        Family::Set => {
            let values = p
                .set
                .clone()
                .ok_or_else(|| invalid("set", "required for this family"))?;
            Ok(count_in_set(&PartSet::explicit(values)?, n))
        }
    }
}

fn count(args: &CountArgs, format: Format) -> Result<String> {
    let params = count_params(args)?;
    let range: Vec<usize> = match (args.n, args.n_min, args.n_max) {
        (Some(n), _, _) => vec![n],
        (None, lo, Some(hi)) => (lo.unwrap_or(1)..=hi).collect(),
        _ => return Err(invalid("n", "give --n or --n-max")),
    };
    let values = range
        .par_iter()
        .map(|&n| count_one(args.family, &args.params, n))
        .collect::<Result<Vec<_>>>()?;
    let family = args.family.name();
    let mut out = String::new();
    match format {
        Format::Plain if range.len() == 1 => writeln!(out, "{}", values[0]).unwrap(),
        Format::Plain => {
            for (n, v) in range.iter().zip(&values) {
                writeln!(out, "{n} {v}").unwrap();
            }
        }
        Format::Csv => write_csv(
            &mut out,
            family,
            &params,
            range.iter().copied().zip(values.iter()),
        ),
        Format::Json => {
            let rows: Vec<Value> = range
                .iter()
                .zip(&values)
                .map(|(n, v)| json!({ "n": n, "value": v.to_string() }))
                .collect();
            let doc = json!({ "family": family, "params": params, "values": rows });
            writeln!(out, "{doc}").unwrap();
        }
    }
    Ok(out)
}

fn write_csv<'a, V: std::fmt::Display + 'a>(
    out: &mut String,
    family: &str,
    params: &BTreeMap<String, i64>,
    rows: impl Iterator<Item = (usize, V)>,
) {
    let params = canonical_params(params);
    out.push_str("family,params,n,value\n");
    for (n, v) in rows {
        writeln!(out, "{family},{params},{n},{v}").unwrap();
    }
}

fn enumerate(args: &EnumerateArgs, format: Format) -> Result<String> {
    let p = &args.params;
    let n = args.n;
    let parts: Vec<Partition> = match args.constraint {
        ConstraintKind::Set => {
            let values = p
                .set
                .clone()
                .ok_or_else(|| invalid("set", "required for this constraint"))?;
            enumerate_in_set(&PartSet::explicit(values)?, n)?
        }
        kind => {
            let spec = match kind {
                ConstraintKind::All => ConstraintSpec::AllParts,
                ConstraintKind::Odd => ConstraintSpec::PartsInSet(PartSet::odd()),
                ConstraintKind::Distinct => ConstraintSpec::DDistinctMin {
                    d: p.d.unwrap_or(1),
                    a: p.a.unwrap_or(1),
                },
                ConstraintKind::Fo => ConstraintSpec::ExactlyJSizesDivisible {
                    j: p.need("j")?,
                    k: p.need("k")?,
                },
                ConstraintKind::Fd => ConstraintSpec::ExactlyJSizesRepeated {
                    j: p.need("j")?,
                    k: p.need("k")?,
                },
                ConstraintKind::Pm => ConstraintSpec::PartsCongruentPM {
                    a: p.need("a")?,
                    modulus: p.need("d")?,
                },
                ConstraintKind::Set => unreachable!("handled above"),
            };
            filter_perimeter(n, &spec)?
        }
    };
    let mut out = String::new();
    match format {
        Format::Plain => {
            for q in &parts {
                match args.render {
                    Render::Parts => writeln!(out, "{q}").unwrap(),
                    Render::Profile => writeln!(out, "{}", q.profile()).unwrap(),
                    Render::Ferrers => {
                        writeln!(out, "{q}").unwrap();
                        out.push_str(&q.ferrers(FERRERS_CELL));
                        out.push('\n');
                    }
                }
            }
        }
        Format::Csv => {
            out.push_str("n,partition,profile\n");
            for q in &parts {
                writeln!(out, "{n},{q},{}", q.profile()).unwrap();
            }
        }
        Format::Json => {
            let rows: Vec<Value> = parts
                .iter()
                .map(|q| {
                    json!({
                        "partition": q.to_string(),
                        "parts": q.parts(),
                        "profile": q.profile().to_string(),
                    })
                })
                .collect();
            writeln!(
                out,
                "{}",
                json!({ "n": n, "count": parts.len(), "partitions": rows })
            )
            .unwrap();
        }
    }
    Ok(out)
}

fn verify(args: &VerifyArgs, format: Format) -> Result<Outcome> {
    let suites: Vec<Suite> = if args.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![args.suite.parse()?]
    };
    let reports = suites
        .iter()
        .map(|&s| run_suite(s, args.max_n.unwrap_or_else(|| s.default_max_n())))
        .collect::<Result<Vec<SuiteReport>>>()?;
    let passed = reports.iter().all(SuiteReport::passed);
    let mut out = String::new();
    match format {
        Format::Plain => {
            for r in &reports {
                let tag = if r.passed() { "PASS" } else { "FAIL" };
                writeln!(out, "{tag} {}: {}", r.suite, r.summary).unwrap();
                for f in &r.failures {
                    writeln!(out, "  {f}").unwrap();
                }
            }
        }
        Format::Csv => {
            out.push_str("suite,max_n,checks,failures,passed\n");
            for r in &reports {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.suite,
                    r.max_n,
                    r.checks,
                    r.failures.len(),
                    r.passed()
                )
                .unwrap();
            }
        }
        Format::Json => {
            let doc = json!({ "passed": passed, "reports": reports });
            writeln!(out, "{doc}").unwrap();
        }
    }
    Ok(Outcome {
        status: if passed { EXIT_OK } else { EXIT_CHECK_FAILED },
        stdout: out,
        stderr: String::new(),
    })
}

fn need(v: Option<usize>, field: &'static str) -> Result<usize> {
    v.ok_or_else(|| invalid(field, "required for this scan"))
}

fn scan(args: &ScanArgs, format: Format) -> Result<Outcome> {
    let report = match args.family {
        ScanFamily::Fofd => scan_fofd(need(args.j, "j")?, need(args.k, "k")?, args.n_max)?,
        ScanFamily::Kangkim => scan_kangkim(
            need(args.d, "d")?,
            need(args.a, "a")?,
            need(args.m, "m")?,
            need(args.m1, "m1")?,
            need(args.m2, "m2")?,
            args.n_max,
        )?,
        ScanFamily::Prop17 => check_prop17(
            need(args.d, "d")?,
            need(args.a1, "a1")?,
            need(args.b1, "b1")?,
            need(args.a2, "a2")?,
            need(args.b2, "b2")?,
            args.n_max,
        )?,
    };
    Ok(Outcome::ok(render_scan(&report, format)))
}

/// Renders a scan report in the requested format.
pub fn render_scan(report: &ScanReport, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Plain => {
            writeln!(
                out,
                "{} {} n={}..{} verdict={} violations={:?} settled_from={} trend={} (heuristic)",
                report.family,
                canonical_params(&report.params),
                report.n_range[0],
                report.n_range[1],
                serde_json::to_value(report.verdict)
                    .unwrap()
                    .as_str()
                    .unwrap_or_default(),
                report.violations,
                report.settled_from,
                report.trend.label,
            )
            .unwrap();
            for (i, x) in report.diffs.iter().enumerate() {
                writeln!(out, "{} {x}", report.n_range[0] + i).unwrap();
            }
        }
        Format::Csv => write_csv(
            &mut out,
            &report.family,
            &report.params,
            report
                .diffs
                .iter()
                .enumerate()
                .map(|(i, x)| (report.n_range[0] + i, x)),
        ),
        Format::Json => {
            writeln!(
                out,
                "{}",
                serde_json::to_string(report).expect("serializable")
            )
            .unwrap();
        }
    }
    out
}

fn constants_cmd(args: &ConstantsArgs, format: Format) -> Result<String> {
    let hi = args.d_max.unwrap_or(args.d);
    if args.d == 0 || hi < args.d {
        return Err(invalid("d", "must satisfy 1 <= d <= d_max"));
    }
    let rows: Vec<AsymptoticConstants> = (args.d..=hi).map(constants).collect();
    let mut out = String::new();
    match format {
        Format::Plain => {
            for c in &rows {
                let flag = if c.near_integer {
                    " (near integer)"
                } else {
                    ""
                };
                writeln!(
                    out,
                    "d={} alpha_d={:.15} A_d={:.15} ratio={:.15} tipping={}{flag}",
                    c.d, c.alpha_d, c.a_d, c.ratio, c.tipping
                )
                .unwrap();
            }
        }
        Format::Csv => {
            out.push_str("d,alpha_d,a_d,ratio,tipping,near_integer\n");
            for c in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    c.d, c.alpha_d, c.a_d, c.ratio, c.tipping, c.near_integer
                )
                .unwrap();
            }
        }
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&rows).expect("serializable")
        )
        .unwrap(),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        let cli =
            Cli::try_parse_from(std::iter::once("perimeter").chain(args.iter().copied())).unwrap();
        run(&cli)
    }

    #[test]
    fn count_examples() {
        assert_eq!(
            run_args(&["count", "--family", "r", "--n", "4"]).stdout,
            "8\n"
        );
        assert_eq!(
            run_args(&["count", "--family", "p", "--n", "4"]).stdout,
            "5\n"
        );
        let ell = run_args(&[
            "count", "--family", "ell2", "--d", "2", "--a", "1", "--b", "2", "--n", "10",
        ]);
        assert_eq!(ell.stdout, "512\n");
    }

    #[test]
    fn csv_range() {
        let out = run_args(&[
            "--format", "csv", "count", "--family", "f", "--d", "1", "--a", "1", "--n-max", "3",
        ]);
        assert_eq!(
            out.stdout,
            "family,params,n,value\nf,a=1;d=1,1,1\nf,a=1;d=1,2,1\nf,a=1;d=1,3,2\n"
        );
    }

    #[test]
    fn json_counts_are_strings() {
        let out = run_args(&["--format", "json", "count", "--family", "r", "--n", "70"]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["values"][0]["value"], "590295810358705651712");
    }

    #[test]
    fn missing_parameter_is_validation_error() {
        let out = run_args(&["count", "--family", "h", "--d", "2", "--n", "5"]);
        assert_eq!(out.status, EXIT_VALIDATION);
        assert!(
            out.stderr.contains("`a`") || out.stderr.contains(" a"),
            "{}",
            out.stderr
        );
    }

    #[test]
    fn unknown_family_is_usage_error() {
        let err =
            Cli::try_parse_from(["perimeter", "count", "--family", "zz", "--n", "3"]).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
    }

    #[test]
    fn ferrers_render() {
        let out = run_args(&["enumerate", "--n", "2", "--render", "ferrers"]);
        assert_eq!(out.stdout, "2\n* *\n\n1+1\n*\n*\n\n");
    }

    #[test]
    fn prop17_failure_exit() {
        let out = run_args(&[
            "scan", "prop17", "--d", "4", "--a1", "1", "--b1", "3", "--a2", "1", "--b2", "3",
            "--n-max", "10",
        ]);
        assert_eq!(out.status, EXIT_VALIDATION);
    }
}
