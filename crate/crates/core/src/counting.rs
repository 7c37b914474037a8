//! Closed-form counters for fixed-perimeter partitions with restricted parts.
//!
//! A partition of perimeter `n` with largest part `alpha` has exactly
//! `n - alpha + 1` parts, so once `alpha` is fixed the remaining `n - alpha`
//! parts form a multiset drawn from `X_alpha = {x in X : x <= alpha}`. Stars and
//! bars gives `C(|X_alpha| + n - alpha - 1, n - alpha)` such multisets, and
//! summing over `alpha in X` counts every partition with parts in `X`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{ensure, Result};
use crate::Count;

/// Exact `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Explicit(Vec<usize>),
    Progression { first: usize, step: usize },
    TwoProgressions { a: usize, b: usize, modulus: usize },
}

/// A set of allowed part values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartSet(Repr);

impl PartSet {
    /// Finite set; `values` must be strictly increasing and positive.
    pub fn explicit(values: Vec<usize>) -> Result<Self> {
        ensure(
            values.first().map_or(true, |&v| v >= 1),
            "values",
            "parts must be positive",
        )?;
        ensure(
            values.windows(2).all(|w| w[0] < w[1]),
            "values",
            "values must be strictly increasing",
        )?;
        Ok(PartSet(Repr::Explicit(values)))
    }

    /// `{first, first + step, first + 2 step, ...}`.
    pub fn progression(first: usize, step: usize) -> Result<Self> {
        ensure(first >= 1, "first", "must be >= 1")?;
        ensure(step >= 1, "step", "must be >= 1")?;
        Ok(PartSet(Repr::Progression { first, step }))
    }

    /// Positive integers congruent to `a` or `b` modulo `modulus`, where
    /// `0 < a < b <= modulus` (`b = modulus` stands for residue 0).
    pub fn two_progressions(a: usize, b: usize, modulus: usize) -> Result<Self> {
        ensure(a >= 1, "a", "must satisfy 0 < a")?;
        ensure(a < b, "b", "must satisfy a < b")?;
        ensure(b <= modulus, "d", "must satisfy b <= d")?;
        Ok(PartSet(Repr::TwoProgressions { a, b, modulus }))
    }

    pub fn all() -> Self {
        PartSet(Repr::Progression { first: 1, step: 1 })
    }

    pub fn odd() -> Self {
        PartSet(Repr::Progression { first: 1, step: 2 })
    }

    pub fn contains(&self, x: usize) -> bool {
        match &self.0 {
            Repr::Explicit(values) => values.binary_search(&x).is_ok(),
            Repr::Progression { first, step } => x >= *first && (x - first) % step == 0,
            Repr::TwoProgressions { a, b, modulus } => {
                (x >= *a && (x - a) % modulus == 0) || (x >= *b && (x - b) % modulus == 0)
            }
        }
    }

    /// `|X_alpha|`, the number of members not exceeding `alpha`.
    pub fn count_upto(&self, alpha: usize) -> usize {
        let prog = |first: usize, step: usize| {
            if alpha >= first {
                (alpha - first) / step + 1
            } else {
                0
            }
        };
        match &self.0 {
            Repr::Explicit(values) => values.partition_point(|&v| v <= alpha),
            Repr::Progression { first, step } => prog(*first, *step),
            Repr::TwoProgressions { a, b, modulus } => prog(*a, *modulus) + prog(*b, *modulus),
        }
    }

    /// Members not exceeding `n`, increasing.
    pub fn members_upto(&self, n: usize) -> Vec<usize> {
        match &self.0 {
            Repr::Explicit(values) => values.iter().copied().take_while(|&v| v <= n).collect(),
            _ => (1..=n).filter(|&x| self.contains(x)).collect(),
        }
    }
}

/// Partitions of perimeter `n` with parts in `set` and largest part `alpha`.
pub fn count_in_set_by_largest(set: &PartSet, alpha: usize, n: usize) -> Count {
    if alpha == 0 || alpha > n || !set.contains(alpha) {
        return Count::zero();
    }
    let remaining = n - alpha;
    binomial(set.count_upto(alpha) + remaining - 1, remaining)
}

/// Partitions of perimeter `n` with every part in `set`.
pub fn count_in_set(set: &PartSet, n: usize) -> Count {
    set.members_upto(n)
        .into_iter()
        .map(|alpha| count_in_set_by_largest(set, alpha, n))
        .sum()
}

/// Two-residue count `l_d^{(a,b)}(n)`: parts congruent to `a` or `b` mod `d`,
/// evaluated as the two binomial sums over largest parts `a + dk` and `b + dk`.
pub fn ell_two_residue(d: usize, a: usize, b: usize, n: usize) -> Result<Count> {
    PartSet::two_progressions(a, b, d)?;
    let mut total = Count::zero();
    if n >= a {
        for k in 0..=(n - a) / d {
            let r = n - a - d * k;
            total += binomial(2 * k + r, r);
        }
    }
    if n >= b {
        for k in 0..=(n - b) / d {
            let r = n - b - d * k;
            total += binomial(2 * k + 1 + r, r);
        }
    }
    Ok(total)
}

fn check_da(d: usize, a: usize) -> Result<()> {
    ensure(d >= 1, "d", "must be >= 1")?;
    ensure((1..=d + 1).contains(&a), "a", "must satisfy 1 <= a <= d+1")
}

/// Parts congruent to `a` modulo `d + 1`.
pub fn fda_set(d: usize, a: usize) -> Result<PartSet> {
    check_da(d, a)?;
    PartSet::progression(a, d + 1)
}

/// `f_d^{(a)}(n)`: partitions of perimeter `n` with parts `== a (mod d+1)`.
pub fn fda(d: usize, a: usize, n: usize) -> Result<Count> {
    Ok(count_in_set(&fda_set(d, a)?, n))
}

/// `h_d^{(a)}(n)`: partitions of perimeter `n` whose parts pairwise differ by
/// at least `d` and are all `>= a`. Equal to [`fda`]; the oracle checks the
/// equality against direct enumeration.
pub fn hda(d: usize, a: usize, n: usize) -> Result<Count> {
    fda(d, a, n)
}

/// Counts indexed by number of parts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartsTable {
    entries: BTreeMap<usize, Count>,
}

impl PartsTable {
    pub fn get(&self, parts: usize) -> Count {
        self.entries.get(&parts).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> &BTreeMap<usize, Count> {
        &self.entries
    }

    pub fn total(&self) -> Count {
        self.entries.values().sum()
    }

    pub(crate) fn insert(&mut self, parts: usize, count: Count) {
        self.entries.insert(parts, count);
    }
}

/// `h_d^{(a)}(n)` refined by number of parts `lambda`, computed as the number of
/// `f_d^{(a)}` partitions with largest part `a + (d+1)(lambda-1)`.
///
/// Only feasible `lambda` (largest part at most `n`) get entries.
pub fn hda_refined_by_parts(d: usize, a: usize, n: usize) -> Result<PartsTable> {
    let set = fda_set(d, a)?;
    let mut table = PartsTable::default();
    let mut lambda = 1;
    loop {
        let largest = a + (d + 1) * (lambda - 1);
        if largest > n {
            break;
        }
        table.insert(lambda, count_in_set_by_largest(&set, largest, n));
        lambda += 1;
    }
    Ok(table)
}

/// Part set for `l_d^{(a)}`: parts `== +-a (mod d+3)`. When the two residues
/// coincide (`2a = d+3`) this is a single progression.
pub fn ell_pm_set(d: usize, a: usize) -> Result<PartSet> {
    ensure(d >= 1, "d", "must be >= 1")?;
    ensure(a >= 1, "a", "must be >= 1")?;
    let modulus = d + 3;
    ensure(a < modulus, "a", "must satisfy a < d+3")?;
    let (r1, r2) = (a, modulus - a);
    if r1 == r2 {
        PartSet::progression(r1, modulus)
    } else {
        PartSet::two_progressions(r1.min(r2), r1.max(r2), modulus)
    }
}

/// `l_d^{(a)}(n)`: parts `== +-a (mod d+3)`.
pub fn ell_pm(d: usize, a: usize, n: usize) -> Result<Count> {
    ell_pm_set(d, a)?;
    let modulus = d + 3;
    let (r1, r2) = (a, modulus - a);
    if r1 == r2 {
        Ok(count_in_set(&PartSet::progression(r1, modulus)?, n))
    } else {
        ell_two_residue(modulus, r1.min(r2), r1.max(r2), n)
    }
}
