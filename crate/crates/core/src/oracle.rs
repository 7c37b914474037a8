//! Exhaustive enumeration of partitions by perimeter (and, for classical
//! sanity checks, by size).
//!
//! Perimeter-`n` partitions are enumerated by running an `(n-1)`-bit counter
//! over the free middle symbols of the profile. The index space splits into
//! disjoint ranges, which is how the tallies below parallelise.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::counting::PartSet;
use crate::error::{ensure, Result};
use crate::partition::{AnyPartition, MultiplicityForm, Partition, Profile};
use crate::Count;

/// Largest perimeter the `u64` profile index can address.
pub const MAX_PERIMETER: usize = 64;

/// Below this perimeter tallies run on the calling thread.
const PARALLEL_FROM: usize = 14;

/// Predicate over a partition.
pub type Predicate = Arc<dyn Fn(&Partition) -> bool + Send + Sync>;

/// Restriction on the partitions being counted.
///
/// The "exactly `j`" variants count distinct part *sizes*: a size divisible by
/// `k` counts once however often it occurs, and a size counts as repeated when
/// its multiplicity is at least `k`.
#[derive(Clone)]
pub enum ConstraintSpec {
    AllParts,
    PartsInSet(PartSet),
    /// Parts pairwise differ by at least `d` and are all `>= a`.
    DDistinctMin {
        d: usize,
        a: usize,
    },
    ExactlyJSizesDivisible {
        j: usize,
        k: usize,
    },
    ExactlyJSizesRepeated {
        j: usize,
        k: usize,
    },
    /// Parts congruent to `a` or `-a` modulo `modulus`.
    PartsCongruentPM {
        a: usize,
        modulus: usize,
    },
    Custom(Predicate),
}

impl fmt::Debug for ConstraintSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::AllParts => f.write_str("AllParts"),
            Self::PartsInSet(s) => f.debug_tuple("PartsInSet").field(s).finish(),
            Self::DDistinctMin { d, a } => f
                .debug_struct("DDistinctMin")
                .field("d", d)
                .field("a", a)
                .finish(),
            Self::ExactlyJSizesDivisible { j, k } => f
                .debug_struct("ExactlyJSizesDivisible")
                .field("j", j)
                .field("k", k)
                .finish(),
            Self::ExactlyJSizesRepeated { j, k } => f
                .debug_struct("ExactlyJSizesRepeated")
                .field("j", j)
                .field("k", k)
                .finish(),
            Self::PartsCongruentPM { a, modulus } => f
                .debug_struct("PartsCongruentPM")
                .field("a", a)
                .field("modulus", modulus)
                .finish(),
            Self::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl ConstraintSpec {
    pub fn custom(pred: impl Fn(&Partition) -> bool + Send + Sync + 'static) -> Self {
        Self::Custom(Arc::new(pred))
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::DDistinctMin { d, a } => {
                ensure(d >= 1, "d", "must be >= 1")?;
                ensure(a >= 1, "a", "must be >= 1")
            }
            Self::ExactlyJSizesDivisible { k, .. } | Self::ExactlyJSizesRepeated { k, .. } => {
                ensure(k >= 2, "k", "must be >= 2")
            }
            Self::PartsCongruentPM { a, modulus } => {
                ensure(a > 0 && a < modulus, "a", "must satisfy 0 < a < modulus")
            }
            _ => Ok(()),
        }
    }

    pub fn matches(&self, form: &MultiplicityForm) -> bool {
        let entries = form.entries();
        match self {
            Self::AllParts => true,
            Self::PartsInSet(set) => entries.iter().all(|&(v, _)| set.contains(v)),
            Self::DDistinctMin { d, a } => {
                entries.iter().all(|&(_, m)| m == 1)
                    && entries.first().map_or(true, |&(v, _)| v >= *a)
                    && entries.windows(2).all(|w| w[1].0 - w[0].0 >= *d)
            }
            Self::ExactlyJSizesDivisible { j, k } => sizes_divisible(form, *k) == *j,
            Self::ExactlyJSizesRepeated { j, k } => sizes_repeated(form, *k) == *j,
            Self::PartsCongruentPM { a, modulus } => entries.iter().all(|&(v, _)| {
                let r = v % modulus;
                r == *a || r == modulus - a
            }),
            Self::Custom(pred) => form.to_partition().map_or(false, |p| pred(&p)),
        }
    }
}

/// Number of distinct part sizes divisible by `k`.
pub fn sizes_divisible(form: &MultiplicityForm, k: usize) -> usize {
    form.entries().iter().filter(|&&(v, _)| v % k == 0).count()
}

/// Number of distinct part sizes occurring at least `k` times.
pub fn sizes_repeated(form: &MultiplicityForm, k: usize) -> usize {
    form.entries().iter().filter(|&&(_, m)| m >= k).count()
}

fn check_perimeter(n: usize) -> Result<()> {
    ensure(
        (1..=MAX_PERIMETER).contains(&n),
        "n",
        format!("perimeter must satisfy 1 <= n <= {MAX_PERIMETER}"),
    )
}

/// Iterator over the partitions of perimeter `n` in profile-index order.
#[derive(Clone, Debug)]
pub struct PerimeterPartitions {
    n: usize,
    next: u64,
    end: u64,
}

impl Iterator for PerimeterPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.next >= self.end {
            return None;
        }
        let p = Profile::from_index(self.n, self.next).to_partition();
        self.next += 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = usize::try_from(self.end - self.next).ok();
        (left.unwrap_or(usize::MAX), left)
    }
}

/// All `2^(n-1)` partitions of perimeter `n`, ordered lexicographically by the
/// middle profile symbols with `E < N`.
pub fn enumerate_perimeter(n: usize) -> Result<PerimeterPartitions> {
    check_perimeter(n)?;
    Ok(PerimeterPartitions {
        n,
        next: 0,
        end: 1u64 << (n - 1),
    })
}

/// Sums `weight` over every partition of perimeter `n`.
pub fn tally<F>(n: usize, weight: F) -> Result<u64>
where
    F: Fn(&MultiplicityForm) -> u64 + Sync,
{
    check_perimeter(n)?;
    let total = 1u64 << (n - 1);
    let sum_range = |lo: u64, hi: u64| {
        let mut form = MultiplicityForm::default();
        (lo..hi)
            .map(|idx| {
                form.refill_from_index(n, idx);
                weight(&form)
            })
            .sum::<u64>()
    };
    if n < PARALLEL_FROM {
        return Ok(sum_range(0, total));
    }
    let chunk_bits = (n - 1).min(10);
    let chunks = 1u64 << chunk_bits;
    let width = total >> chunk_bits;
    Ok((0..chunks)
        .into_par_iter()
        .map(|c| sum_range(c * width, (c + 1) * width))
        .sum())
}

/// Histogram of `key` over every partition of perimeter `n`; entry `i` counts
/// partitions with key `i`. Keys are bounded by `n`.
pub fn histogram<F>(n: usize, key: F) -> Result<Vec<u64>>
where
    F: Fn(&MultiplicityForm) -> usize + Sync,
{
    check_perimeter(n)?;
    let total = 1u64 << (n - 1);
    let bins = n + 1;
    let fill = |lo: u64, hi: u64| {
        let mut form = MultiplicityForm::default();
        let mut h = vec![0u64; bins];
        for idx in lo..hi {
            form.refill_from_index(n, idx);
            h[key(&form).min(n)] += 1;
        }
        h
    };
    let merge = |mut x: Vec<u64>, y: Vec<u64>| {
        x.iter_mut().zip(y).for_each(|(a, b)| *a += b);
        x
    };
    if n < PARALLEL_FROM {
        return Ok(fill(0, total));
    }
    let chunk_bits = (n - 1).min(10);
    let width = total >> chunk_bits;
    Ok((0..1u64 << chunk_bits)
        .into_par_iter()
        .map(|c| fill(c * width, (c + 1) * width))
        .reduce(|| vec![0u64; bins], merge))
}

/// Number of perimeter-`n` partitions satisfying `c`.
pub fn count_where(n: usize, c: &ConstraintSpec) -> Result<Count> {
    c.validate()?;
    tally(n, |form| u64::from(c.matches(form))).map(Count::from)
}

/// Sum of the number of parts over perimeter-`n` partitions satisfying `c`.
pub fn total_parts_where(n: usize, c: &ConstraintSpec) -> Result<Count> {
    c.validate()?;
    tally(n, |form| {
        if c.matches(form) {
            form.number_of_parts() as u64
        } else {
            0
        }
    })
    .map(Count::from)
}

/// Partitions of perimeter `n` satisfying `c`, in enumeration order.
pub fn filter_perimeter(n: usize, c: &ConstraintSpec) -> Result<Vec<Partition>> {
    c.validate()?;
    Ok(enumerate_perimeter(n)?
        .filter(|p| c.matches(&p.multiplicity_form()))
        .collect())
}

/// Partitions of perimeter `n` with every part in `set`, generated directly
/// rather than filtered from all `2^(n-1)` profiles. Ordered by largest part,
/// then reverse lexicographically.
pub fn enumerate_in_set(set: &PartSet, n: usize) -> Result<Vec<Partition>> {
    ensure(n >= 1, "n", "must be >= 1")?;
    fn fill(members: &[usize], slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if slots == 0 {
            out.push(Partition::from_parts_unchecked(prefix.clone()));
            return;
        }
        for (i, &v) in members.iter().enumerate().rev() {
            prefix.push(v);
            fill(&members[..=i], slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let members = set.members_upto(n);
    let mut out = Vec::new();
    for (i, &alpha) in members.iter().enumerate() {
        let mut prefix = vec![alpha];
        fill(&members[..=i], n - alpha, &mut prefix, &mut out);
    }
    Ok(out)
}

/// All partitions of the integer `size`, in reverse lexicographic order.
/// Intended for small sizes (a few dozen).
pub fn enumerate_size(size: usize) -> impl Iterator<Item = AnyPartition> {
    fn extend(rest: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<AnyPartition>) {
        if rest == 0 {
            out.push(AnyPartition::Nonempty(Partition::from_parts_unchecked(
                prefix.clone(),
            )));
            return;
        }
        for part in (1..=rest.min(cap)).rev() {
            prefix.push(part);
            extend(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if size == 0 {
        out.push(AnyPartition::Empty);
    } else {
        extend(size, size, &mut Vec::new(), &mut out);
    }
    out.into_iter()
}
