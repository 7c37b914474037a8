//! Asymptotic constants and scanners over signed count differences.
//!
//! Scanners never decide an open question. They emit a [`ScanReport`] holding
//! the exact differences, the indices that contradict the expected sign, and a
//! heuristic trend label.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::counting::{ell_two_residue, hda};
use crate::error::{ensure, Error, Result};
use crate::oracle::{count_where, ConstraintSpec};

/// Largest perimeter the oracle-backed scan accepts.
pub const FOFD_MAX_N: usize = 26;
/// Largest perimeter the closed-form scans accept.
pub const CLOSED_FORM_MAX_N: usize = 200;
/// Distance from an integer within which the tipping ratio is flagged.
pub const TIPPING_GUARD: f64 = 1e-9;

const SERIES_CUTOFF: f64 = 1e-15;

/// Unique root in `(0, 1)` of `x^d + x - 1`, by bisection.
pub fn alpha_root(d: u32) -> f64 {
    assert!(d >= 1, "d must be >= 1");
    let f = |x: f64| x.powi(d as i32) + x - 1.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v == 0.0 {
            return mid;
        }
        if v > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // Pick the bracket end with the smaller residual.
    if f(lo).abs() <= f(hi).abs() {
        lo
    } else {
        hi
    }
}

/// `(d/2) log^2(alpha_d) + sum_{r=1}^{terms} r^{-2} alpha_d^{r d}`.
pub fn a_d_partial(d: u32, terms: usize) -> f64 {
    let alpha = alpha_root(d);
    let ratio = alpha.powi(d as i32);
    let head = 0.5 * f64::from(d) * alpha.ln().powi(2);
    let mut power = 1.0;
    let mut sum = 0.0;
    for r in 1..=terms {
        power *= ratio;
        sum += power / (r * r) as f64;
    }
    head + sum
}

/// Number of series terms used by [`a_d_constant`]: the sum stops before the
/// first term below `1e-15`.
pub fn a_d_terms(d: u32) -> usize {
    let ratio = alpha_root(d).powi(d as i32);
    let mut power = 1.0;
    let mut r = 0usize;
    loop {
        power *= ratio;
        let term = power / ((r + 1) * (r + 1)) as f64;
        if term < SERIES_CUTOFF {
            return r;
        }
        r += 1;
    }
}

/// `A_d = (d/2) log^2(alpha_d) + sum_{r>=1} r^{-2} alpha_d^{r d}`.
pub fn a_d_constant(d: u32) -> f64 {
    a_d_partial(d, a_d_terms(d))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticConstants {
    pub d: u32,
    pub alpha_d: f64,
    pub a_d: f64,
    /// `pi^2 / (3 A_d)` before flooring.
    pub ratio: f64,
    pub tipping: i64,
    /// The ratio lies within [`TIPPING_GUARD`] of an integer; `tipping` is that
    /// integer rather than a floor that float error could push one lower.
    pub near_integer: bool,
}

pub fn constants(d: u32) -> AsymptoticConstants {
    let alpha_d = alpha_root(d);
    let a_d = a_d_constant(d);
    let ratio = PI * PI / (3.0 * a_d);
    let nearest = ratio.round();
    let near_integer = (ratio - nearest).abs() < TIPPING_GUARD;
    let tipping = if near_integer { nearest } else { ratio.floor() } as i64;
    AsymptoticConstants {
        d,
        alpha_d,
        a_d,
        ratio,
        tipping,
        near_integer,
    }
}

/// Sign pattern of a difference sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    AllZero,
    AllNonnegative,
    AllNonpositive,
    Mixed,
}

impl Verdict {
    pub fn of(diffs: &[BigInt]) -> Verdict {
        let any_pos = diffs.iter().any(Signed::is_positive);
        let any_neg = diffs.iter().any(Signed::is_negative);
        match (any_pos, any_neg) {
            (false, false) => Verdict::AllZero,
            (true, false) => Verdict::AllNonnegative,
            (false, true) => Verdict::AllNonpositive,
            (true, true) => Verdict::Mixed,
        }
    }
}

/// Sign a scan is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    Nonnegative,
    Nonpositive,
    Zero,
    /// No sign is expected; nothing counts as a violation.
    Unknown,
}

impl Expectation {
    fn violated_by(self, x: &BigInt) -> bool {
        match self {
            Expectation::Nonnegative => x.is_negative(),
            Expectation::Nonpositive => x.is_positive(),
            Expectation::Zero => !x.is_zero(),
            Expectation::Unknown => false,
        }
    }
}

/// Heuristic tail behaviour. Labels come from comparing the sum over the last
/// quarter of the scan with the sum over the quarter before it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trend {
    pub heuristic: bool,
    /// `increasing`, `decreasing`, `flat`, or `insufficient-data`.
    pub label: String,
    /// Smallest `n` from which the differences are nondecreasing to the end.
    pub nondecreasing_from: usize,
    /// Smallest `n` from which the differences are nonincreasing to the end.
    pub nonincreasing_from: usize,
}

impl Trend {
    fn of(lo: usize, diffs: &[BigInt]) -> Trend {
        let quarter = diffs.len() / 4;
        let label = if quarter < 2 {
            "insufficient-data"
        } else {
            let len = diffs.len();
            let last: BigInt = diffs[len - quarter..].iter().sum();
            let prev: BigInt = diffs[len - 2 * quarter..len - quarter].iter().sum();
            match last.cmp(&prev) {
                std::cmp::Ordering::Greater => "increasing",
                std::cmp::Ordering::Less => "decreasing",
                std::cmp::Ordering::Equal => "flat",
            }
        };
        let tail_start = |ok: fn(&BigInt, &BigInt) -> bool| {
            let mut i = diffs.len().saturating_sub(1);
            while i > 0 && ok(&diffs[i - 1], &diffs[i]) {
                i -= 1;
            }
            lo + i
        };
        Trend {
            heuristic: true,
            label: label.to_string(),
            nondecreasing_from: tail_start(|a, b| a <= b),
            nonincreasing_from: tail_start(|a, b| a >= b),
        }
    }
}

mod decimal_strings {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(D::Error::custom))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub family: String,
    pub params: BTreeMap<String, i64>,
    pub n_range: [usize; 2],
    /// Difference at each `n` in `n_range`, as decimal strings in JSON.
    #[serde(with = "decimal_strings")]
    pub diffs: Vec<BigInt>,
    /// Values of `n` whose difference contradicts `expected`.
    pub violations: Vec<usize>,
    pub verdict: Verdict,
    pub expected: Expectation,
    /// First `n` after which no violation occurs in the scanned range.
    pub settled_from: usize,
    pub trend: Trend,
}

impl ScanReport {
    pub fn new(
        family: &str,
        params: &[(&str, usize)],
        lo: usize,
        diffs: Vec<BigInt>,
        expected: Expectation,
    ) -> Self {
        let violations: Vec<usize> = diffs
            .iter()
            .enumerate()
            .filter(|(_, x)| expected.violated_by(x))
            .map(|(i, _)| lo + i)
            .collect();
        let settled_from = violations.last().map_or(lo, |&n| n + 1);
        ScanReport {
            family: family.to_string(),
            params: params
                .iter()
                .map(|&(k, v)| (k.to_string(), v as i64))
                .collect(),
            n_range: [lo, lo + diffs.len().saturating_sub(1)],
            verdict: Verdict::of(&diffs),
            trend: Trend::of(lo, &diffs),
            diffs,
            violations,
            expected,
            settled_from,
        }
    }

    pub fn diff_at(&self, n: usize) -> Option<&BigInt> {
        n.checked_sub(self.n_range[0])
            .and_then(|i| self.diffs.get(i))
    }

    /// Checks the report against the invariants that tie its summary fields to
    /// its data.
    pub fn is_consistent(&self) -> bool {
        let rebuilt = ScanReport::new(
            &self.family,
            &[],
            self.n_range[0],
            self.diffs.clone(),
            self.expected,
        );
        self.n_range == rebuilt.n_range
            && self.verdict == rebuilt.verdict
            && self.violations == rebuilt.violations
            && self.settled_from == rebuilt.settled_from
            && self.trend == rebuilt.trend
    }
}

/// `FD_{j,k}(n) - FO_{j,k}(n)` for `1 <= n <= n_max`, by enumeration.
pub fn scan_fofd(j: usize, k: usize, n_max: usize) -> Result<ScanReport> {
    ensure(k >= 2, "k", "must be >= 2")?;
    ensure(
        (1..=FOFD_MAX_N).contains(&n_max),
        "n_max",
        format!("must satisfy 1 <= n_max <= {FOFD_MAX_N}"),
    )?;
    let fd = ConstraintSpec::ExactlyJSizesRepeated { j, k };
    let fo = ConstraintSpec::ExactlyJSizesDivisible { j, k };
    let diffs = (1..=n_max)
        .map(|n| Ok(BigInt::from(count_where(n, &fd)?) - BigInt::from(count_where(n, &fo)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport::new(
        "fofd",
        &[("j", j), ("k", k)],
        1,
        diffs,
        Expectation::Nonnegative,
    ))
}

/// Sign the comparison of `h_d^{(a)}` with `l_m^{(m1,m2)}` is expected to take:
/// from the size of `m` against `2d + 2`, and on the boundary `m = 2d + 2` from
/// termwise comparison of `(m1, m2)` with `(a, a + d + 1)`.
pub fn kangkim_expectation(d: usize, a: usize, m: usize, m1: usize, m2: usize) -> Expectation {
    let boundary = 2 * d + 2;
    if m > boundary {
        Expectation::Nonnegative
    } else if m < boundary {
        Expectation::Nonpositive
    } else if (m1, m2) == (a, a + d + 1) {
        Expectation::Zero
    } else if m1 >= a && m2 >= a + d + 1 {
        Expectation::Nonnegative
    } else if m1 <= a && m2 <= a + d + 1 {
        Expectation::Nonpositive
    } else {
        Expectation::Unknown
    }
}

/// `h_d^{(a)}(n) - l_m^{(m1,m2)}(n)` for `1 <= n <= n_max`, from closed forms.
pub fn scan_kangkim(
    d: usize,
    a: usize,
    m: usize,
    m1: usize,
    m2: usize,
    n_max: usize,
) -> Result<ScanReport> {
    ensure(d >= 1, "d", "must be >= 1")?;
    ensure((1..=d + 1).contains(&a), "a", "must satisfy 1 <= a <= d+1")?;
    ensure(m1 >= 1, "m1", "must satisfy 0 < m1")?;
    ensure(m1 < m2, "m2", "must satisfy m1 < m2")?;
    ensure(m2 <= m, "m", "must satisfy m2 <= m")?;
    ensure(
        (1..=CLOSED_FORM_MAX_N).contains(&n_max),
        "n_max",
        format!("must satisfy 1 <= n_max <= {CLOSED_FORM_MAX_N}"),
    )?;
    let diffs = (1..=n_max)
        .map(|n| Ok(BigInt::from(hda(d, a, n)?) - BigInt::from(ell_two_residue(m, m1, m2, n)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport::new(
        "kangkim",
        &[("d", d), ("a", a), ("m", m), ("m1", m1), ("m2", m2)],
        1,
        diffs,
        kangkim_expectation(d, a, m, m1, m2),
    ))
}

/// Validates a pair of residue tuples for [`check_prop17`].
pub fn prop17_params(d: usize, a1: usize, b1: usize, a2: usize, b2: usize) -> Result<()> {
    ensure(a1 >= 1, "a1", "must satisfy 0 < a1")?;
    ensure(a1 <= a2, "a2", "must satisfy a1 <= a2")?;
    ensure(b1 <= b2, "b2", "must satisfy b1 <= b2")?;
    ensure(a1 < b1, "b1", "must satisfy a1 < b1")?;
    ensure(a2 < b2, "b2", "must satisfy a2 < b2")?;
    ensure(b2 <= d, "d", "must satisfy b2 <= d")?;
    ensure((a1, b1) != (a2, b2), "a2", "tuples must differ")
}

/// Checks `l_d^{(a1,b1)}(n) >= l_d^{(a2,b2)}(n)` for `1 <= n <= n_max`, and that
/// the difference settles into a nondecreasing tail.
///
/// The tail must cover the second half of the scan once `n_max >= 4d`; shorter
/// scans are too early for the tail and only the sign is enforced. Any failure
/// is returned as [`Error::CheckFailed`].
pub fn check_prop17(
    d: usize,
    a1: usize,
    b1: usize,
    a2: usize,
    b2: usize,
    n_max: usize,
) -> Result<ScanReport> {
    prop17_params(d, a1, b1, a2, b2)?;
    ensure(
        (1..=CLOSED_FORM_MAX_N).contains(&n_max),
        "n_max",
        format!("must satisfy 1 <= n_max <= {CLOSED_FORM_MAX_N}"),
    )?;
    let diffs = (1..=n_max)
        .map(|n| {
            Ok(BigInt::from(ell_two_residue(d, a1, b1, n)?)
                - BigInt::from(ell_two_residue(d, a2, b2, n)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let report = ScanReport::new(
        "prop17",
        &[("d", d), ("a1", a1), ("b1", b1), ("a2", a2), ("b2", b2)],
        1,
        diffs,
        Expectation::Nonnegative,
    );
    if !report.violations.is_empty() {
        return Err(Error::CheckFailed(format!(
            "prop17 d={d} ({a1},{b1}) vs ({a2},{b2}): negative difference at n = {:?}",
            report.violations
        )));
    }
    let midpoint = 1 + (n_max - 1) / 2;
    if n_max >= 4 * d && report.trend.nondecreasing_from > midpoint {
        return Err(Error::CheckFailed(format!(
            "prop17 d={d} ({a1},{b1}) vs ({a2},{b2}): difference not nondecreasing from n = {midpoint}"
        )));
    }
    Ok(report)
}

/// Every ordered pair of legal residue tuples `((a1,b1), (a2,b2))` for modulus
/// `d` with `a1 <= a2`, `b1 <= b2` and the tuples distinct.
pub fn prop17_tuples(d: usize) -> Vec<((usize, usize), (usize, usize))> {
    let tuples: Vec<(usize, usize)> = (1..d)
        .flat_map(|a| (a + 1..=d).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for &(a1, b1) in &tuples {
        for &(a2, b2) in &tuples {
            if a1 <= a2 && b1 <= b2 && (a1, b1) != (a2, b2) {
                out.push(((a1, b1), (a2, b2)));
            }
        }
    }
    out
}
