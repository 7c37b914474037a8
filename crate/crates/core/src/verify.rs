//! Named identity suites.
//!
//! Each suite compares independent computations of the same quantity and
//! collects every disagreement instead of stopping at the first. Enumeration
//! steps are capped so that a large `max_n` only extends the closed-form parts.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::{
    binomial, count_in_set, ell_pm, ell_two_residue, fda, fda_set, hda, hda_refined_by_parts,
    PartSet,
};
use crate::error::{ensure, invalid, Error, Result};
use crate::genfunc::{beck_excess_paths, build_gf, coeff_stream, count_stream, GfFamily};
use crate::maps::{phi, st_inject, DominatingPair, IncreasingSeq};
use crate::oracle::{
    count_where, enumerate_in_set, histogram, sizes_divisible, sizes_repeated, tally,
    total_parts_where, ConstraintSpec,
};
use crate::partition::Profile;
use crate::Count;

/// Largest perimeter for exhaustive oracle counts inside suites.
pub const ORACLE_CAP: usize = 16;
/// Largest perimeter for which every partition is pushed through a map.
pub const MAP_CAP: usize = 20;
/// Largest `max_n` any suite accepts.
pub const MAX_N_LIMIT: usize = 200;
/// Seed for the randomized dominating pairs.
pub const ST_SEED: u64 = 0x5eed_0001;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Straub,
    TheoremK2,
    AlderType,
    Beck,
    StInequality,
    Reduction,
    Refinement,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Straub,
        Suite::TheoremK2,
        Suite::AlderType,
        Suite::Beck,
        Suite::StInequality,
        Suite::Reduction,
        Suite::Refinement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Straub => "straub",
            Suite::TheoremK2 => "theorem-k2",
            Suite::AlderType => "alder-type",
            Suite::Beck => "beck",
            Suite::StInequality => "st-inequality",
            Suite::Reduction => "reduction",
            Suite::Refinement => "refinement",
        }
    }

    pub fn default_max_n(self) -> usize {
        match self {
            Suite::Straub | Suite::TheoremK2 | Suite::Beck | Suite::Refinement => 20,
            Suite::AlderType => 14,
            Suite::StInequality => 18,
            Suite::Reduction => 100,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| invalid("suite", format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub max_n: usize,
    pub checks: u64,
    pub failures: Vec<String>,
    pub summary: String,
}

impl SuiteReport {
    fn new(suite: Suite, max_n: usize) -> Self {
        SuiteReport {
            suite: suite.name().to_string(),
            max_n,
            checks: 0,
            failures: Vec::new(),
            summary: String::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn equal<T: PartialEq + fmt::Display>(&mut self, label: impl fmt::Display, left: T, right: T) {
        self.check(left == right, || format!("{label}: {left} != {right}"));
    }

    fn finish(mut self, claim: String) -> Self {
        self.summary = if self.failures.is_empty() {
            claim
        } else {
            format!("{} of {} checks failed", self.failures.len(), self.checks)
        };
        self
    }
}

/// Runs `suite` for perimeters up to `max_n`.
pub fn run_suite(suite: Suite, max_n: usize) -> Result<SuiteReport> {
    ensure(
        (1..=MAX_N_LIMIT).contains(&max_n),
        "max_n",
        format!("must satisfy 1 <= max_n <= {MAX_N_LIMIT}"),
    )?;
    match suite {
        Suite::Straub => straub(max_n),
        Suite::TheoremK2 => theorem_k2(max_n),
        Suite::AlderType => alder_type(max_n),
        Suite::Beck => beck(max_n),
        Suite::StInequality => st_inequality(max_n, 200, ST_SEED),
        Suite::Reduction => reduction(max_n),
        Suite::Refinement => refinement(max_n),
    }
}

/// Odd parts against distinct parts.
pub fn straub(max_n: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Straub, max_n);
    let odd = ConstraintSpec::PartsInSet(PartSet::odd());
    let distinct = ConstraintSpec::DDistinctMin { d: 1, a: 1 };
    for n in 1..=max_n {
        let closed = count_in_set(&PartSet::odd(), n);
        r.equal(
            format_args!("n={n} closed form vs h"),
            &closed,
            &hda(1, 1, n)?,
        );
        if n <= MAP_CAP {
            r.equal(
                format_args!("n={n} odd parts (oracle)"),
                &count_where(n, &odd)?,
                &closed,
            );
            r.equal(
                format_args!("n={n} distinct parts (oracle)"),
                &count_where(n, &distinct)?,
                &closed,
            );
        }
    }
    Ok(r.finish(format!("odd parts = distinct parts for n ≤ {max_n}")))
}

/// Per-`j` tallies of even sizes and repeated sizes over perimeter `n`.
fn oracle_fo_fd(n: usize) -> Result<(Vec<u64>, Vec<u64>)> {
    Ok((
        histogram(n, |f| sizes_divisible(f, 2))?,
        histogram(n, |f| sizes_repeated(f, 2))?,
    ))
}

/// Pushes every partition of perimeter `n` through `phi`. Returns, per `j`, the
/// number of images of partitions with `j` repeated sizes, or a description of
/// the first defect found (lost perimeter, wrong statistic, collision).
pub fn phi_image_counts(n: usize) -> Result<std::result::Result<Vec<u64>, String>> {
    ensure(
        (1..=MAP_CAP).contains(&n),
        "n",
        format!("must satisfy 1 <= n <= {MAP_CAP}"),
    )?;
    let total = 1u64 << (n - 1);
    let images: Vec<(u64, usize, bool)> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let p = Profile::from_index(n, idx).to_partition();
            let j = sizes_repeated(&p.multiplicity_form(), 2);
            let img = phi(&p);
            let ok = img.perimeter() == n && sizes_divisible(&img.multiplicity_form(), 2) == j;
            (img.profile().index(), j, ok)
        })
        .collect();
    if let Some(&(_, j, _)) = images.iter().find(|t| !t.2) {
        return Ok(Err(format!(
            "n={n}: phi broke perimeter or statistic (j={j})"
        )));
    }
    let distinct: HashSet<u64> = images.iter().map(|t| t.0).collect();
    if distinct.len() as u64 != total {
        return Ok(Err(format!("n={n}: phi is not injective")));
    }
    let mut counts = vec![0u64; n + 1];
    for &(_, j, _) in &images {
        counts[j] += 1;
    }
    Ok(Ok(counts))
}

/// `k = 2`: even sizes against repeated sizes, by generating functions, by the
/// oracle and through `phi`; with the two corollary cross-checks.
pub fn theorem_k2(max_n: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::TheoremK2, max_n);
    let closed = coeff_stream(&build_gf(GfFamily::FdFoMarked)?, max_n)?;
    let fo = coeff_stream(&build_gf(GfFamily::EvenSizesMarked)?, max_n)?;
    let fd = coeff_stream(&build_gf(GfFamily::RepeatedSizesMarked)?, max_n)?;
    for n in 1..=max_n {
        let oracle = if n <= ORACLE_CAP {
            Some(oracle_fo_fd(n)?)
        } else {
            None
        };
        let images = if n <= MAP_CAP {
            Some(phi_image_counts(n)?)
        } else {
            None
        };
        if let Some(Err(msg)) = &images {
            r.check(false, || msg.clone());
        }
        for j in 0..=n {
            let c = closed[n].coeff(j);
            r.equal(format_args!("n={n} j={j} FO gf"), &fo[n].coeff(j), &c);
            r.equal(format_args!("n={n} j={j} FD gf"), &fd[n].coeff(j), &c);
            if let Some((o_fo, o_fd)) = &oracle {
                r.equal(
                    format_args!("n={n} j={j} FO oracle"),
                    &BigInt::from(o_fo[j]),
                    &c,
                );
                r.equal(
                    format_args!("n={n} j={j} FD oracle"),
                    &BigInt::from(o_fd[j]),
                    &c,
                );
            }
            if let Some(Ok(counts)) = &images {
                r.equal(
                    format_args!("n={n} j={j} phi images"),
                    &BigInt::from(counts[j]),
                    &c,
                );
            }
        }
    }
    let corollary_n = max_n.min(ORACLE_CAP);
    r.failures.extend(check_lxy(corollary_n)?);
    r.failures.extend(check_aab(corollary_n)?);
    r.checks += 2 * corollary_n as u64;
    Ok(r.finish(format!("FO=FD for all j, n ≤ {max_n}")))
}

/// `#{lambda - distinct sizes = j}` against `#{j even parts, with multiplicity}`
/// for every `j` and `n <= n_max`. Returns the mismatches.
pub fn check_lxy(n_max: usize) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    for n in 1..=n_max {
        let surplus = histogram(n, |f| f.number_of_parts() - f.entries().len())?;
        let even = histogram(n, |f| {
            f.entries()
                .iter()
                .filter(|&&(v, _)| v % 2 == 0)
                .map(|&(_, m)| m)
                .sum()
        })?;
        if surplus != even {
            failures.push(format!("lxy n={n}: {surplus:?} != {even:?}"));
        }
    }
    Ok(failures)
}

/// Parts surplus of "no even size" over "no repeated size" against the number of
/// partitions with exactly one even size and all parts `>= 2`.
pub fn check_aab(n_max: usize) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    for n in 1..=n_max {
        let fo0 = total_parts_where(n, &ConstraintSpec::ExactlyJSizesDivisible { j: 0, k: 2 })?;
        let fd0 = total_parts_where(n, &ConstraintSpec::ExactlyJSizesRepeated { j: 0, k: 2 })?;
        let rhs = tally(n, |f| {
            let one_even = sizes_divisible(f, 2) == 1;
            let big = f.entries().first().map_or(false, |&(v, _)| v >= 2);
            u64::from(one_even && big)
        })?;
        let lhs = BigInt::from(fo0) - BigInt::from(fd0);
        if lhs != BigInt::from(rhs) {
            failures.push(format!("aab n={n}: {lhs} != {rhs}"));
        }
    }
    Ok(failures)
}

/// `h_d^{(a)} = f_d^{(a)}` by the oracle, and both against the closed form.
pub fn alder_type(max_n: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::AlderType, max_n);
    for d in 1..=4 {
        for a in 1..=d + 1 {
            let f_spec = ConstraintSpec::PartsInSet(fda_set(d, a)?);
            let h_spec = ConstraintSpec::DDistinctMin { d, a };
            for n in 1..=max_n {
                let closed = fda(d, a, n)?;
                r.equal(
                    format_args!("d={d} a={a} n={n} h closed"),
                    &hda(d, a, n)?,
                    &closed,
                );
                if n <= ORACLE_CAP {
                    let f = count_where(n, &f_spec)?;
                    let h = count_where(n, &h_spec)?;
                    r.equal(format_args!("d={d} a={a} n={n} f oracle"), &f, &closed);
                    r.equal(format_args!("d={d} a={a} n={n} h oracle"), &h, &closed);
                }
            }
        }
    }
    Ok(r.finish(format!("h_d^(a) = f_d^(a) for d ≤ 4, a ≤ d+1, n ≤ {max_n}")))
}

/// Every route to the excess agrees, and the excess is nonnegative.
pub fn beck(max_n: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Beck, max_n);
    let n_cap = max_n.min(MAP_CAP);
    for d in 1..=4 {
        for a in 1..=d + 1 {
            for n in 1..=n_cap {
                let paths = beck_excess_paths(d, a, n)?;
                r.check(paths.agree(), || format!("d={d} a={a} n={n}: {paths:?}"));
                r.check(paths.closed_form >= BigInt::from(0), || {
                    format!("d={d} a={a} n={n}: negative excess {}", paths.closed_form)
                });
            }
        }
    }
    let spot = beck_excess_paths(1, 1, 4)?;
    r.equal("spot d=1 a=1 n=4", &spot.part_sums, &BigInt::from(3));
    Ok(r.finish(format!(
        "excess paths agree for d ≤ 4, a ≤ d+1, n ≤ {n_cap}"
    )))
}

/// Random dominating pair `(S, T)` with small entries. Half of the pairs carry
/// progression tails.
pub fn random_dominating_pair(rng: &mut impl Rng) -> DominatingPair {
    let len = rng.gen_range(1..=6);
    let mut source = Vec::with_capacity(len);
    let mut next = rng.gen_range(1..=5);
    for _ in 0..len {
        source.push(next);
        next += rng.gen_range(1..=4);
    }
    let mut target = Vec::with_capacity(len);
    let mut floor = 0;
    for &a in &source {
        let b = rng.gen_range(floor + 1..=a);
        target.push(b);
        floor = b;
    }
    let (s_tail, t_tail) = if rng.gen_bool(0.5) {
        let s = rng.gen_range(1..=4);
        (Some(s), Some(rng.gen_range(1..=s)))
    } else {
        // A finite target may run past the source.
        for _ in 0..rng.gen_range(0..=2) {
            let last = *target.last().expect("nonempty");
            target.push(last + rng.gen_range(1..=3));
        }
        (None, None)
    };
    let source = IncreasingSeq::with_tail(source, s_tail).expect("strictly increasing");
    let target = IncreasingSeq::with_tail(target, t_tail).expect("strictly increasing");
    DominatingPair::new(source, target).expect("dominated by construction")
}

fn part_set_upto(seq: &IncreasingSeq, n: usize) -> Result<PartSet> {
    PartSet::explicit(seq.upto(n))
}

/// Checks one pair for every perimeter up to `max_n`: the counts are ordered,
/// and `st_inject` is injective, keeps perimeter and lands in `T`.
pub fn check_dominating_pair(pair: &DominatingPair, max_n: usize) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    for n in 1..=max_n {
        let s = part_set_upto(pair.source(), n)?;
        let t = part_set_upto(pair.target(), n)?;
        let (rs, rt) = (count_in_set(&s, n), count_in_set(&t, n));
        if rs > rt {
            failures.push(format!("{pair:?} n={n}: r_S = {rs} > r_T = {rt}"));
        }
        let domain = enumerate_in_set(&s, n)?;
        let mut seen = HashSet::with_capacity(domain.len());
        for p in &domain {
            let img = st_inject(pair, p)?;
            if img.perimeter() != n || !img.parts().iter().all(|&x| t.contains(x)) {
                failures.push(format!(
                    "{pair:?} n={n}: {p} -> {img} leaves the target class"
                ));
            }
            if !seen.insert(img) {
                failures.push(format!("{pair:?} n={n}: collision at {p}"));
            }
        }
        if Count::from(domain.len()) != rs {
            failures.push(format!(
                "{pair:?} n={n}: domain size {} != {rs}",
                domain.len()
            ));
        }
    }
    Ok(failures)
}

/// `r_S(n) <= r_T(n)` and injectivity of `st_inject` on `pairs` random pairs.
pub fn st_inequality(max_n: usize, pairs: usize, seed: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::StInequality, max_n);
    let mut rng = StdRng::seed_from_u64(seed);
    let all: Vec<DominatingPair> = (0..pairs)
        .map(|_| random_dominating_pair(&mut rng))
        .collect();
    let n_cap = max_n.min(MAP_CAP);
    let results = all
        .par_iter()
        .map(|pair| check_dominating_pair(pair, n_cap))
        .collect::<Result<Vec<_>>>()?;
    for failures in results {
        r.checks += n_cap as u64;
        r.failures.extend(failures);
    }
    Ok(r.finish(format!(
        "r_S ≤ r_T and injection sound for {pairs} pairs, n ≤ {n_cap}"
    )))
}

/// The reduction to two residues, two-residue counts against the oracle and
/// their generating functions, and the inequalities on the one-superscript
/// family.
pub fn reduction(max_n: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Reduction, max_n);
    for d in 1..=4 {
        for a in 1..=d + 1 {
            for n in 1..=max_n {
                r.equal(
                    format_args!("reduction d={d} a={a} n={n}"),
                    &hda(d, a, n)?,
                    &ell_two_residue(2 * (d + 1), a, a + d + 1, n)?,
                );
            }
        }
    }
    for d in 2..=6 {
        for a in 1..d {
            for b in a + 1..=d {
                let closed = count_stream(&build_gf(GfFamily::TwoResidue { d, a, b })?, max_n)?;
                let blocks =
                    count_stream(&build_gf(GfFamily::TwoResidueBlocks { d, a, b })?, max_n)?;
                let spec = ConstraintSpec::PartsInSet(PartSet::two_progressions(a, b, d)?);
                for n in 1..=max_n {
                    let count = BigInt::from(ell_two_residue(d, a, b, n)?);
                    r.equal(
                        format_args!("ell gf d={d} ({a},{b}) n={n}"),
                        &closed[n],
                        &count,
                    );
                    r.equal(
                        format_args!("ell blocks d={d} ({a},{b}) n={n}"),
                        &blocks[n],
                        &count,
                    );
                    if n <= ORACLE_CAP.min(14) {
                        let oracle = BigInt::from(count_where(n, &spec)?);
                        r.equal(
                            format_args!("ell oracle d={d} ({a},{b}) n={n}"),
                            &oracle,
                            &count,
                        );
                    }
                }
            }
        }
    }
    r.failures
        .extend(check_rev_alder_and_shifts(5, max_n.min(ORACLE_CAP))?);
    Ok(r.finish(format!(
        "reduction and two-residue counts agree for n ≤ {max_n}"
    )))
}

/// `l_d^{(a)} >= h_d^{(a)}` and the three shift inequalities, for `d <= d_max`,
/// `a < (d+3)/2` and `n <= n_max`.
pub fn check_rev_alder_and_shifts(d_max: usize, n_max: usize) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    for d in 1..=d_max {
        for a in (1..).take_while(|&a| 2 * a < d + 3) {
            for n in 1..=n_max {
                let ell = ell_pm(d, a, n)?;
                let h = hda(d, a, n)?;
                if ell < h {
                    failures.push(format!("revAlder d={d} a={a} n={n}: {ell} < {h}"));
                }
                if ell_pm(d + 1, a, n)? > ell {
                    failures.push(format!("shift l d={d} a={a} n={n}"));
                }
                if hda(d + 1, a, n)? > h {
                    failures.push(format!("shift h_d d={d} a={a} n={n}"));
                }
                if a < d + 1 && hda(d, a + 1, n)? > h {
                    failures.push(format!("shift h_a d={d} a={a} n={n}"));
                }
            }
        }
    }
    Ok(failures)
}

/// Counts by number of parts: the largest-part table against the oracle and
/// the part-marked generating functions, and the binomial closed form at
/// `d = a = 1`.
pub fn refinement(max_n: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Refinement, max_n);
    for d in 1..=4 {
        for a in 1..=d + 1 {
            let by_parts_h = coeff_stream(&build_gf(GfFamily::DistinctByParts { d, a })?, max_n)?;
            let by_parts_f = coeff_stream(&build_gf(GfFamily::CongruentByParts { d, a })?, max_n)?;
            for n in 1..=max_n {
                let table = hda_refined_by_parts(d, a, n)?;
                r.equal(
                    format_args!("d={d} a={a} n={n} table total"),
                    &table.total(),
                    &hda(d, a, n)?,
                );
                for lambda in 1..=n {
                    let t = BigInt::from(table.get(lambda));
                    r.equal(
                        format_args!("d={d} a={a} n={n} lambda={lambda} h gf"),
                        &by_parts_h[n].coeff(lambda),
                        &t,
                    );
                }
                let f_total: BigInt = by_parts_f[n].eval_one();
                r.equal(
                    format_args!("d={d} a={a} n={n} f gf"),
                    &f_total,
                    &BigInt::from(fda(d, a, n)?),
                );
                if n <= ORACLE_CAP.min(14) {
                    let spec = ConstraintSpec::DDistinctMin { d, a };
                    let oracle = histogram(n, |f| {
                        if spec.matches(f) {
                            f.number_of_parts()
                        } else {
                            0
                        }
                    })?;
                    for lambda in 1..=n {
                        r.equal(
                            format_args!("d={d} a={a} n={n} lambda={lambda} oracle"),
                            &Count::from(oracle[lambda]),
                            &table.get(lambda),
                        );
                    }
                }
            }
        }
    }
    for n in 1..=max_n {
        let table = hda_refined_by_parts(1, 1, n)?;
        for k in 1..=n {
            let expected = if 2 * k <= n + 1 {
                binomial(n - k, k - 1)
            } else {
                Count::from(0u8)
            };
            r.equal(
                format_args!("d=1 a=1 n={n} lambda={k} binomial"),
                &table.get(k),
                &expected,
            );
        }
    }
    Ok(r.finish(format!(
        "refinement by number of parts holds for n ≤ {max_n}"
    )))
}

/// Every legal pair of residue tuples for `d <= d_max`, checked to `n_max`.
/// Returns the number of pairs checked.
pub fn prop17_grid(d_max: usize, n_max: usize) -> Result<usize> {
    let mut checked = 0;
    for d in 2..=d_max {
        for ((a1, b1), (a2, b2)) in crate::experiments::prop17_tuples(d) {
            crate::experiments::check_prop17(d, a1, b1, a2, b2, n_max)?;
            checked += 1;
        }
    }
    Ok(checked)
}
