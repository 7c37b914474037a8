//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so each line reads cleanly in the
//! `cargo test` output. Set `PERIMETER_BLESS=1` to rewrite the scan baselines.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use perimeter::counting::{hda_refined_by_parts, PartSet};
use perimeter::experiments::{
    a_d_constant, alpha_root, constants, scan_fofd, scan_kangkim, Expectation, ScanReport,
};
use perimeter::genfunc::{beck_excess_paths, beck_pair_count, build_gf, count_stream, GfFamily};
use perimeter::maps::{phi, psi};
use perimeter::oracle::{
    count_where, enumerate_perimeter, enumerate_size, sizes_divisible, sizes_repeated,
    total_parts_where, ConstraintSpec,
};
use perimeter::verify::{
    alder_type, beck, prop17_grid, reduction, refinement, st_inequality, theorem_k2, SuiteReport,
    ST_SEED,
};
use perimeter::Count;

type Outcome = Result<String, String>;

fn suite(r: SuiteReport) -> Outcome {
    if r.passed() {
        Ok(format!("{} ({} checks)", r.summary, r.checks))
    } else {
        Err(format!(
            "{}: {}",
            r.summary,
            r.failures
                .iter()
                .take(5)
                .cloned()
                .collect::<Vec<_>>()
                .join("; ")
        ))
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(err: perimeter::Error) -> String {
    err.to_string()
}

fn baseline_counts() -> Outcome {
    let p4 = enumerate_size(4).count();
    ensure(p4 == 5, || format!("p(4) = {p4}"))?;
    let r4 = enumerate_perimeter(4).map_err(e)?.count();
    ensure(r4 == 8, || format!("r(4) = {r4}"))?;
    for n in 1..=16 {
        let c = count_where(n, &ConstraintSpec::AllParts).map_err(e)?;
        ensure(c == Count::from(1u64 << (n - 1)), || {
            format!("oracle r({n}) = {c}")
        })?;
    }
    let stream = count_stream(&build_gf(GfFamily::Perimeter).map_err(e)?, 40).map_err(e)?;
    for n in 1..=40 {
        ensure(stream[n] == BigInt::from(1u64 << (n - 1)), || {
            format!("gf r({n}) = {}", stream[n])
        })?;
    }
    Ok("p(4)=5, r(4)=8, r(n)=2^(n-1) by oracle n<=16 and closed form n<=40".into())
}

fn bijection_soundness() -> Outcome {
    let mut total = 0u64;
    for n in 1..=14 {
        for p in enumerate_perimeter(n).map_err(e)? {
            let f = phi(&p);
            ensure(psi(&f) == p, || format!("psi(phi({p})) != {p}"))?;
            ensure(phi(&psi(&p)) == p, || format!("phi(psi({p})) != {p}"))?;
            ensure(f.perimeter() == n, || {
                format!("phi({p}) has perimeter {}", f.perimeter())
            })?;
            let rep = sizes_repeated(&p.multiplicity_form(), 2);
            let even = sizes_divisible(&f.multiplicity_form(), 2);
            ensure(rep == even, || {
                format!("phi({p}) = {f}: {rep} repeated vs {even} even")
            })?;
            total += 1;
        }
    }
    Ok(format!("round trips on {total} partitions, n <= 14"))
}

fn alder_and_refinement() -> Outcome {
    suite(alder_type(14).map_err(e)?)?;
    let r = suite(refinement(20).map_err(e)?)?;
    // Spot value of the binomial form.
    let t = hda_refined_by_parts(1, 1, 20).map_err(e)?;
    ensure(t.get(5) == perimeter::counting::binomial(15, 4), || {
        "lambda=5 at n=20".into()
    })?;
    Ok(format!("h=f by oracle d<=4, n<=14; {r}"))
}

fn beck_identity() -> Outcome {
    let r = suite(beck(20).map_err(e)?)?;
    let f_spec = ConstraintSpec::PartsInSet(PartSet::progression(1, 2).map_err(e)?);
    let h_spec = ConstraintSpec::DDistinctMin { d: 1, a: 1 };
    let f4 = total_parts_where(4, &f_spec).map_err(e)?;
    let h4 = total_parts_where(4, &h_spec).map_err(e)?;
    ensure(f4 == Count::from(8u8) && h4 == Count::from(5u8), || {
        format!("raw sums {f4} - {h4}")
    })?;
    let spot = beck_excess_paths(1, 1, 4).map_err(e)?;
    ensure(spot.agree() && spot.closed_form == BigInt::from(3), || {
        format!("spot {spot:?}")
    })?;
    // The second index d-1 disagrees with the excess for every d >= 2.
    let mut witnesses = Vec::new();
    for d in 2..=4 {
        let witness = (1..=d + 1)
            .flat_map(|a| (1..=12).map(move |n| (a, n)))
            .find(|&(a, n)| {
                let excess = beck_excess_paths(d, a, n).expect("legal").part_sums;
                let printed = BigInt::from(beck_pair_count(d, a, 1, n).expect("legal"))
                    - BigInt::from(beck_pair_count(d, a, d - 1, n).expect("legal"));
                excess != printed
            });
        let (a, n) = witness.ok_or_else(|| format!("index d-1 not refuted for d={d}"))?;
        witnesses.push(format!("d={d}:a={a},n={n}"));
    }
    Ok(format!(
        "{r}; E=8-5=3; index d-1 fails at {}",
        witnesses.join(" ")
    ))
}

fn prop17_and_trichotomy() -> Outcome {
    let pairs = prop17_grid(6, 30).map_err(e)?;
    let mut rows = 0;
    for d in 1..=3usize {
        let m = 2 * d + 2;
        for a in 1..=d + 1 {
            for m1 in 1..m {
                for m2 in m1 + 1..=m {
                    let up = m1 >= a && m2 >= a + d + 1;
                    let down = m1 <= a && m2 <= a + d + 1;
                    if (m1, m2) == (a, a + d + 1) || !(up || down) {
                        continue;
                    }
                    let r = scan_kangkim(d, a, m, m1, m2, 60).map_err(e)?;
                    let last = r.diff_at(60).expect("in range");
                    let expected = if up {
                        Expectation::Nonnegative
                    } else {
                        Expectation::Nonpositive
                    };
                    ensure(r.expected == expected && r.violations.is_empty(), || {
                        format!("d={d} a={a} ({m1},{m2}) violations {:?}", r.violations)
                    })?;
                    let strict = if up {
                        last.is_positive()
                    } else {
                        last.is_negative()
                    };
                    ensure(strict, || {
                        format!("d={d} a={a} ({m1},{m2}) diff at 60 = {last}")
                    })?;
                    rows += 1;
                }
            }
        }
    }
    Ok(format!(
        "{pairs} tuple pairs d<=6 n<=30; {rows} trichotomy rows signed on n<=60"
    ))
}

fn constants_check() -> Outcome {
    let a1 = alpha_root(1);
    ensure((a1 - 0.5).abs() < 1e-12, || format!("alpha_1 = {a1}"))?;
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    ensure((alpha_root(2) - golden).abs() < 1e-10, || {
        format!("alpha_2 = {}", alpha_root(2))
    })?;
    let big_a1 = a_d_constant(1);
    let target = std::f64::consts::PI.powi(2) / 12.0;
    ensure((big_a1 - target).abs() < 1e-9, || format!("A_1 = {big_a1}"))?;
    let c = constants(1);
    ensure(c.tipping == 4, || format!("tipping(1) = {}", c.tipping))?;
    Ok(format!(
        "alpha_1=0.5, alpha_2={:.10}, A_1={big_a1:.10}, tipping(1)=4",
        alpha_root(2)
    ))
}

fn baseline_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("baselines")
}

fn kangkim_grid() -> Vec<(usize, usize, usize, usize, usize)> {
    let mut grid = Vec::new();
    for d in 1..=2 {
        for a in 1..=d {
            for m in [2 * d + 1, 2 * d + 2, 2 * d + 3] {
                for m1 in 1..=3.min(m - 1) {
                    for m2 in m1 + 1..=m {
                        grid.push((d, a, m, m1, m2));
                    }
                }
            }
        }
    }
    grid
}

fn schema_valid(r: &ScanReport) -> Result<(), String> {
    let v = serde_json::to_value(r).map_err(|x| x.to_string())?;
    for key in [
        "family",
        "params",
        "n_range",
        "diffs",
        "violations",
        "verdict",
    ] {
        ensure(v.get(key).is_some(), || format!("missing key {key}"))?;
    }
    ensure(
        v["diffs"]
            .as_array()
            .map_or(false, |a| a.iter().all(|x| x.is_string())),
        || "diffs must be strings".into(),
    )?;
    let back: ScanReport = serde_json::from_value(v).map_err(|x| x.to_string())?;
    ensure(&back == r && r.is_consistent(), || {
        "report does not round trip".into()
    })
}

fn compare_to_baseline(name: &str, reports: &[ScanReport]) -> Result<usize, String> {
    let path = baseline_dir().join(name);
    if std::env::var_os("PERIMETER_BLESS").is_some() {
        std::fs::create_dir_all(baseline_dir()).map_err(|x| x.to_string())?;
        let body = serde_json::to_string_pretty(reports).map_err(|x| x.to_string())?;
        std::fs::write(&path, body + "\n").map_err(|x| x.to_string())?;
    }
    let text = std::fs::read_to_string(&path).map_err(|x| format!("{}: {x}", path.display()))?;
    let recorded: Vec<ScanReport> = serde_json::from_str(&text).map_err(|x| x.to_string())?;
    ensure(recorded.len() == reports.len(), || {
        format!("{name}: grid size changed")
    })?;
    let mut compared = 0;
    for (old, new) in recorded.iter().zip(reports) {
        ensure(old.params == new.params, || {
            format!("{name}: grid order changed")
        })?;
        for (n, (x, y)) in (old.n_range[0]..).zip(old.diffs.iter().zip(&new.diffs)) {
            ensure(x.sign() == y.sign(), || {
                format!("{name} {:?} n={n}: sign regression {x} -> {y}", new.params)
            })?;
            ensure(x == y, || {
                format!("{name} {:?} n={n}: value drift {x} -> {y}", new.params)
            })?;
            compared += 1;
        }
        ensure(old.verdict == new.verdict, || {
            format!("{name} {:?}: verdict changed", new.params)
        })?;
    }
    Ok(compared)
}

fn scanners() -> Outcome {
    let fofd = (0..=2)
        .map(|j| scan_fofd(j, 3, 20))
        .collect::<perimeter::Result<Vec<_>>>()
        .map_err(e)?;
    let kk = kangkim_grid()
        .into_iter()
        .map(|(d, a, m, m1, m2)| scan_kangkim(d, a, m, m1, m2, 60))
        .collect::<perimeter::Result<Vec<_>>>()
        .map_err(e)?;
    for r in fofd.iter().chain(&kk) {
        schema_valid(r)?;
    }
    let c1 = compare_to_baseline("fofd.json", &fofd)?;
    let c2 = compare_to_baseline("kangkim.json", &kk)?;
    let zero = kk
        .iter()
        .filter(|r| r.diffs.iter().all(Zero::is_zero))
        .count();
    Ok(format!(
        "{} reports schema-valid; {} values match baselines; {zero} all-zero kangkim cells",
        fofd.len() + kk.len(),
        c1 + c2
    ))
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Duration, fn() -> Outcome)> = vec![
        ("baseline counts", Duration::from_secs(10), baseline_counts),
        ("k=2 triple check", Duration::from_secs(60), || {
            suite(theorem_k2(20).map_err(e)?)
        }),
        (
            "bijection soundness",
            Duration::from_secs(60),
            bijection_soundness,
        ),
        (
            "alder-type and refinement",
            Duration::from_secs(300),
            alder_and_refinement,
        ),
        ("beck identity", Duration::from_secs(300), beck_identity),
        ("S-T inequality", Duration::from_secs(300), || {
            suite(st_inequality(18, 200, ST_SEED).map_err(e)?)
        }),
        ("two-residue machinery", Duration::from_secs(300), || {
            suite(reduction(100).map_err(e)?)
        }),
        (
            "residue tuple comparison",
            Duration::from_secs(300),
            prop17_and_trichotomy,
        ),
        ("constants", Duration::from_secs(10), constants_check),
        ("conjecture scanners", Duration::from_secs(300), scanners),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let result = result.and_then(|msg| {
            if took <= budget {
                Ok(msg)
            } else {
                Err(format!("{msg}; took {took:.1?}, budget {budget:?}"))
            }
        });
        match result {
            Ok(msg) => println!("PASS criterion {}: {name} [{took:.2?}] {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {}: {name} [{took:.2?}] {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
