//! Partitions, their profile words, and multiplicity form.
//!
//! A partition of perimeter `n` is identified with its profile: the word over
//! `{E, N}` traced along the boundary of the Ferrers diagram from the lower-left
//! corner to the upper-right corner. Every profile starts with `E`, ends with `N`
//! and has length `n + 1`, so the free middle `n - 1` symbols index the
//! partitions of perimeter `n` bijectively.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A nonempty partition: positive parts in nonincreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

/// Largest part, number of parts and perimeter of a partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stats {
    pub alpha: usize,
    pub lambda: usize,
    pub perimeter: usize,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyPartition);
        }
        let ordered = parts.windows(2).all(|w| w[0] >= w[1]);
        if !ordered || parts[parts.len() - 1] == 0 {
            return Err(Error::InvalidParts(parts));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from parts in any order.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(!parts.is_empty() && parts.windows(2).all(|w| w[0] >= w[1]));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Largest part (the arm length).
    pub fn largest(&self) -> usize {
        self.parts[0]
    }

    /// Number of parts (the leg length).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// Always false; present for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn perimeter(&self) -> usize {
        self.largest() + self.len() - 1
    }

    /// Sum of the parts.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn stats(&self) -> Stats {
        Stats {
            alpha: self.largest(),
            lambda: self.len(),
            perimeter: self.perimeter(),
        }
    }

    pub fn profile(&self) -> Profile {
        let mut steps = Vec::with_capacity(self.perimeter() + 1);
        let mut width = 0;
        for &part in self.parts.iter().rev() {
            steps.extend(std::iter::repeat(Step::E).take(part - width));
            width = part;
            steps.push(Step::N);
        }
        Profile { steps }
    }

    pub fn multiplicity_form(&self) -> MultiplicityForm {
        let mut entries: Vec<(usize, usize)> = Vec::new();
        for &part in self.parts.iter().rev() {
            match entries.last_mut() {
                Some((value, mult)) if *value == part => *mult += 1,
                _ => entries.push((part, 1)),
            }
        }
        MultiplicityForm { entries }
    }

    /// Number of distinct part sizes.
    pub fn distinct_sizes(&self) -> usize {
        1 + self.parts.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Ferrers diagram, one row per part from the top, cells separated by a space.
    pub fn ferrers(&self, cell: char) -> String {
        let mut out = String::new();
        for &part in &self.parts {
            let row: Vec<String> = std::iter::repeat(cell.to_string()).take(part).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for part in &self.parts {
            if !first {
                f.write_str("+")?;
            }
            write!(f, "{part}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"5+3+3"`; parts may be given in any order.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split('+')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidParts(Vec::new()))?;
        if parts.contains(&0) {
            return Err(Error::InvalidParts(parts));
        }
        Self::from_unsorted(parts)
    }
}

/// A partition indexed by size, where the empty partition is legal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AnyPartition {
    Empty,
    Nonempty(Partition),
}

impl AnyPartition {
    pub fn size(&self) -> usize {
        match self {
            AnyPartition::Empty => 0,
            AnyPartition::Nonempty(p) => p.size(),
        }
    }

    pub fn profile(&self) -> Result<Profile> {
        match self {
            AnyPartition::Empty => Err(Error::EmptyPartition),
            AnyPartition::Nonempty(p) => Ok(p.profile()),
        }
    }

    pub fn stats(&self) -> Result<Stats> {
        match self {
            AnyPartition::Empty => Err(Error::EmptyPartition),
            AnyPartition::Nonempty(p) => Ok(p.stats()),
        }
    }
}

impl fmt::Display for AnyPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyPartition::Empty => f.write_str("()"),
            AnyPartition::Nonempty(p) => p.fmt(f),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    /// East step.
    E,
    /// North step.
    N,
}

impl Step {
    pub fn as_char(self) -> char {
        match self {
            Step::E => 'E',
            Step::N => 'N',
        }
    }
}

/// Boundary word of a Ferrers diagram. Starts with `E`, ends with `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Profile {
    steps: Vec<Step>,
}

impl Profile {
    pub fn from_steps(steps: Vec<Step>) -> Result<Self> {
        let word = || steps.iter().map(|s| s.as_char()).collect::<String>();
        if steps.first() != Some(&Step::E) {
            return Err(Error::InvalidProfile {
                word: word(),
                reason: "must start with E",
            });
        }
        if steps.last() != Some(&Step::N) {
            return Err(Error::InvalidProfile {
                word: word(),
                reason: "must end with N",
            });
        }
        Ok(Profile { steps })
    }

    /// Profile of perimeter `n` whose free middle symbols spell `index` in
    /// binary, most significant bit first, with `E = 0` and `N = 1`.
    ///
    /// Requires `1 <= n <= 64` and `index < 2^(n-1)`.
    pub fn from_index(n: usize, index: u64) -> Self {
        debug_assert!((1..=64).contains(&n));
        let free = n - 1;
        let mut steps = Vec::with_capacity(n + 1);
        steps.push(Step::E);
        for j in (0..free).rev() {
            steps.push(if index >> j & 1 == 1 {
                Step::N
            } else {
                Step::E
            });
        }
        steps.push(Step::N);
        Profile { steps }
    }

    /// Inverse of [`Profile::from_index`].
    pub fn index(&self) -> u64 {
        let free = &self.steps[1..self.steps.len() - 1];
        free.iter()
            .fold(0u64, |acc, s| (acc << 1) | u64::from(*s == Step::N))
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// Always false: a profile has at least two symbols.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn perimeter(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn east_count(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::E).count()
    }

    pub fn north_count(&self) -> usize {
        self.steps.len() - self.east_count()
    }

    pub fn to_partition(&self) -> Partition {
        let mut width = 0;
        let mut parts = Vec::with_capacity(self.north_count());
        for step in &self.steps {
            match step {
                Step::E => width += 1,
                Step::N => parts.push(width),
            }
        }
        parts.reverse();
        Partition::from_parts_unchecked(parts)
    }

    /// Block form `E N_{m_1} E N_{m_2} ... E N_{m_alpha} N`: entry `i` is the
    /// number of `N`s following the `(i+1)`-th `E`, not counting the final `N`.
    ///
    /// For `i < alpha - 1` this is the multiplicity of part `i + 1`; the last
    /// entry is the multiplicity of the largest part minus one.
    pub fn north_runs(&self) -> Vec<usize> {
        let mut runs: Vec<usize> = Vec::new();
        for step in &self.steps {
            match step {
                Step::E => runs.push(0),
                Step::N => *runs.last_mut().expect("profile starts with E") += 1,
            }
        }
        *runs.last_mut().expect("profile starts with E") -= 1;
        runs
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word: String = self.steps.iter().map(|s| s.as_char()).collect();
        f.write_str(&word)
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .chars()
            .map(|c| match c {
                'E' => Ok(Step::E),
                'N' => Ok(Step::N),
                _ => Err(Error::InvalidProfile {
                    word: s.to_string(),
                    reason: "symbols must be E or N",
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Profile::from_steps(steps)
    }
}

/// Parts grouped as `(value, multiplicity)` with values strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiplicityForm {
    entries: Vec<(usize, usize)>,
}

impl MultiplicityForm {
    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    pub fn number_of_parts(&self) -> usize {
        self.entries.iter().map(|&(_, m)| m).sum()
    }

    pub fn largest(&self) -> usize {
        self.entries.last().map_or(0, |&(v, _)| v)
    }

    pub fn to_partition(&self) -> Result<Partition> {
        let mut parts = Vec::with_capacity(self.number_of_parts());
        for &(value, mult) in self.entries.iter().rev() {
            parts.extend(std::iter::repeat(value).take(mult));
        }
        Partition::new(parts)
    }

    /// Overwrites `self` with the multiplicity form of the perimeter-`n`
    /// partition whose profile has middle index `index` (see
    /// [`Profile::from_index`]), without materialising the profile.
    pub(crate) fn refill_from_index(&mut self, n: usize, index: u64) {
        self.entries.clear();
        let mut width = 1;
        // Middle symbols, then the closing N.
        for j in (0..n).rev() {
            let north = j == 0 || (index >> (j - 1)) & 1 == 1;
            if north {
                match self.entries.last_mut() {
                    Some((value, mult)) if *value == width => *mult += 1,
                    _ => self.entries.push((width, 1)),
                }
            } else {
                width += 1;
            }
        }
    }
}

/// Profile word of `p`.
pub fn profile_of(p: &Partition) -> Profile {
    p.profile()
}

/// Partition traced by the profile word `w`.
pub fn partition_of_profile(w: &Profile) -> Partition {
    w.to_partition()
}

pub fn stats(p: &Partition) -> Stats {
    p.stats()
}

pub fn to_multiplicity_form(p: &Partition) -> MultiplicityForm {
    p.multiplicity_form()
}
