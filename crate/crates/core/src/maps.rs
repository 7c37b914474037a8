//! Perimeter-preserving maps on partitions.
//!
//! [`phi`] and [`psi`] are mutually inverse profile rewrites that trade
//! repeated part sizes for even part sizes. [`st_inject`] sends partitions with
//! parts in `S` to partitions with parts in `T` whenever `T` is dominated
//! termwise by `S`.

use crate::error::{ensure, invalid, Error, Result};
use crate::partition::{Partition, Profile, Step};

fn push_run(out: &mut Vec<Step>, step: Step, len: usize) {
    out.extend(std::iter::repeat(step).take(len));
}

/// Reads the profile as `E (N_{m_1} E) ... (N_{m_{a-1}} E) (N_{m_a} N)` and
/// rewrites each segment:
/// `N_m E -> N` if `m = 0`, else `E N_{m-1} E`; the closing `N_m N -> N` if
/// `m = 0`, else `E N_m`.
///
/// A part size repeated in `p` becomes an even part size in the image.
pub fn phi(p: &Partition) -> Partition {
    let runs = p.profile().north_runs();
    let (last, inner) = runs.split_last().expect("nonempty profile");
    let mut out = Vec::with_capacity(p.perimeter() + 1);
    out.push(Step::E);
    for &m in inner {
        if m == 0 {
            out.push(Step::N);
        } else {
            out.push(Step::E);
            push_run(&mut out, Step::N, m - 1);
            out.push(Step::E);
        }
    }
    if *last == 0 {
        out.push(Step::N);
    } else {
        out.push(Step::E);
        push_run(&mut out, Step::N, *last);
    }
    Profile::from_steps(out)
        .expect("rewrite keeps the leading E and trailing N")
        .to_partition()
}

/// Reads the profile as blocks `E N_{m_1} ... E N_{m_a}` followed by the
/// closing `N`, and rewrites block `i` to `E_{m_i+1}` when `i` is odd and to
/// `N_{m_i+1}` when `i` is even.
///
/// An even part size in `p` becomes a repeated part size in the image.
pub fn psi(p: &Partition) -> Partition {
    let runs = p.profile().north_runs();
    let mut out = Vec::with_capacity(p.perimeter() + 1);
    for (i, &m) in runs.iter().enumerate() {
        let step = if i % 2 == 0 { Step::E } else { Step::N };
        push_run(&mut out, step, m + 1);
    }
    out.push(Step::N);
    Profile::from_steps(out)
        .expect("block 1 is odd and the closing N is kept")
        .to_partition()
}

/// A strictly increasing sequence of positive integers: a finite prefix,
/// optionally continued as an arithmetic progression with the given step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncreasingSeq {
    prefix: Vec<usize>,
    tail_step: Option<usize>,
}

impl IncreasingSeq {
    pub fn finite(prefix: Vec<usize>) -> Result<Self> {
        Self::with_tail(prefix, None)
    }

    pub fn with_tail(prefix: Vec<usize>, tail_step: Option<usize>) -> Result<Self> {
        ensure(!prefix.is_empty(), "sequence", "prefix must be nonempty")?;
        ensure(prefix[0] >= 1, "sequence", "entries must be positive")?;
        ensure(
            prefix.windows(2).all(|w| w[0] < w[1]),
            "sequence",
            "entries must be strictly increasing",
        )?;
        ensure(tail_step != Some(0), "tail_step", "must be >= 1")?;
        Ok(IncreasingSeq { prefix, tail_step })
    }

    /// The `i`-th entry, or `None` past the end of a finite sequence.
    pub fn get(&self, i: usize) -> Option<usize> {
        match (self.prefix.get(i), self.tail_step) {
            (Some(&v), _) => Some(v),
            (None, Some(step)) => {
                let last = *self.prefix.last().expect("nonempty");
                Some(last + step * (i + 1 - self.prefix.len()))
            }
            (None, None) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.tail_step.is_none()
    }

    /// Position of `value` in the sequence.
    pub fn index_of(&self, value: usize) -> Option<usize> {
        if let Ok(i) = self.prefix.binary_search(&value) {
            return Some(i);
        }
        let last = *self.prefix.last().expect("nonempty");
        let step = self.tail_step?;
        if value > last && (value - last) % step == 0 {
            Some(self.prefix.len() - 1 + (value - last) / step)
        } else {
            None
        }
    }

    /// Entries not exceeding `n`.
    pub fn upto(&self, n: usize) -> Vec<usize> {
        (0..)
            .map_while(|i| self.get(i).filter(|&v| v <= n))
            .collect()
    }
}

/// Sequences `S = (a_i)` and `T = (b_i)` with `a_i >= b_i` at every index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominatingPair {
    source: IncreasingSeq,
    target: IncreasingSeq,
}

impl DominatingPair {
    /// `target` must have an entry at every index where `source` does, each no
    /// larger than the corresponding `source` entry.
    pub fn new(source: IncreasingSeq, target: IncreasingSeq) -> Result<Self> {
        if !source.is_finite() && target.is_finite() {
            return Err(invalid("target", "must be infinite when the source is"));
        }
        if let (Some(s), Some(t)) = (source.tail_step, target.tail_step) {
            ensure(
                s >= t,
                "tail_step",
                "source tail step must be >= target tail step",
            )?;
        }
        // Past both prefixes the gap a_i - b_i changes monotonically, so one
        // extra index settles domination for infinite sequences.
        let horizon = source.prefix.len().max(target.prefix.len()) + 1;
        for i in 0..horizon {
            match (source.get(i), target.get(i)) {
                (Some(a), Some(b)) => ensure(a >= b, "target", format!("a_{i} < b_{i}"))?,
                (Some(_), None) => return Err(invalid("target", format!("missing b_{i}"))),
                (None, _) => break,
            }
        }
        Ok(DominatingPair { source, target })
    }

    pub fn source(&self) -> &IncreasingSeq {
        &self.source
    }

    pub fn target(&self) -> &IncreasingSeq {
        &self.target
    }
}

/// Writes `p = a_0^{m_0} a_1^{m_1} ... a_k^{m_k + 1}` and returns
/// `b_0^{m_0 + a_k - b_k} b_1^{m_1} ... b_k^{m_k + 1}`.
///
/// Perimeter is preserved and the map is injective on each perimeter class.
pub fn st_inject(pair: &DominatingPair, p: &Partition) -> Result<Partition> {
    let form = p.multiplicity_form();
    let largest = p.largest();
    let k = pair
        .source
        .index_of(largest)
        .ok_or(Error::PartOutsideSet(largest))?;
    let mut mult = vec![0usize; k + 1];
    for &(value, m) in form.entries() {
        let i = pair
            .source
            .index_of(value)
            .ok_or(Error::PartOutsideSet(value))?;
        mult[i] = m;
    }
    let b = |i: usize| pair.target.get(i).expect("validated: target covers source");
    mult[0] += largest - b(k);
    let mut parts = Vec::with_capacity(mult.iter().sum());
    for (i, &m) in mult.iter().enumerate().rev() {
        parts.extend(std::iter::repeat(b(i)).take(m));
    }
    Partition::new(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{enumerate_perimeter, sizes_divisible, sizes_repeated};
    use std::collections::HashSet;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&part("2+2+1")), part("4"));
        let img = phi(&part("3+1"));
        assert!(img.parts().iter().all(|x| x % 2 == 1), "{img}");
        assert_eq!(phi(&part("1")), part("1"));
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&part("4")), part("2+2+1"));
        assert_eq!(psi(&part("1")), part("1"));
    }

    #[test]
    fn mutually_inverse_small() {
        for n in 1..=10 {
            for p in enumerate_perimeter(n).unwrap() {
                let f = phi(&p);
                assert_eq!(f.perimeter(), n);
                assert_eq!(psi(&f), p);
                assert_eq!(phi(&psi(&p)), p);
                let rep = sizes_repeated(&p.multiplicity_form(), 2);
                assert_eq!(sizes_divisible(&f.multiplicity_form(), 2), rep);
            }
        }
    }

    fn pair(s: Vec<usize>, t: Vec<usize>) -> DominatingPair {
        DominatingPair::new(
            IncreasingSeq::finite(s).unwrap(),
            IncreasingSeq::finite(t).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn inject_example() {
        let pr = pair(vec![2, 3, 5], vec![1, 3, 4]);
        let img = st_inject(&pr, &part("5+2+2")).unwrap();
        assert_eq!(img, part("4+1+1+1"));
        assert_eq!(img.perimeter(), 7);
    }

    #[test]
    fn inject_identity_when_equal() {
        let pr = pair(vec![1, 3, 4, 7], vec![1, 3, 4, 7]);
        for p in ["7+4+1", "3+3+3", "1", "4+4+3+1+1"] {
            assert_eq!(st_inject(&pr, &part(p)).unwrap(), part(p));
        }
    }

    #[test]
    fn inject_is_injective() {
        let pr = pair(vec![2, 4, 6], vec![1, 2, 3]);
        let domain: Vec<_> = enumerate_perimeter(8)
            .unwrap()
            .filter(|p| p.parts().iter().all(|x| [2, 4, 6].contains(x)))
            .collect();
        let images: HashSet<_> = domain.iter().map(|p| st_inject(&pr, p).unwrap()).collect();
        assert_eq!(images.len(), domain.len());
        assert!(images.iter().all(|p| p.perimeter() == 8));
    }

    #[test]
    fn inject_rejects_foreign_parts() {
        let pr = pair(vec![2, 4, 6], vec![1, 2, 3]);
        assert_eq!(st_inject(&pr, &part("6+3")), Err(Error::PartOutsideSet(3)));
    }

    #[test]
    fn pair_validation() {
        let s = IncreasingSeq::finite(vec![2, 3]).unwrap();
        let t = IncreasingSeq::finite(vec![3, 4]).unwrap();
        assert!(DominatingPair::new(s.clone(), t).is_err());
        let short = IncreasingSeq::finite(vec![1]).unwrap();
        assert!(DominatingPair::new(s.clone(), short).is_err());
        let inf = IncreasingSeq::with_tail(vec![1], Some(1)).unwrap();
        assert!(DominatingPair::new(s, inf.clone()).is_ok());
        let evens = IncreasingSeq::with_tail(vec![2], Some(2)).unwrap();
        assert!(DominatingPair::new(evens.clone(), inf.clone()).is_ok());
        assert!(DominatingPair::new(inf, evens).is_err());
        assert!(IncreasingSeq::finite(vec![3, 3]).is_err());
    }

    #[test]
    fn tail_sequences() {
        let s = IncreasingSeq::with_tail(vec![2, 5], Some(3)).unwrap();
        assert_eq!(s.upto(15), vec![2, 5, 8, 11, 14]);
        assert_eq!(s.index_of(11), Some(3));
        assert_eq!(s.index_of(12), None);
        let pr =
            DominatingPair::new(s, IncreasingSeq::with_tail(vec![1], Some(1)).unwrap()).unwrap();
        // 11 = a_3 -> b_3 = 4, with 11 - 4 extra ones.
        let img = st_inject(&pr, &part("11+2")).unwrap();
        assert_eq!(img.perimeter(), 12);
        assert_eq!(img, Partition::new([vec![4], vec![1; 8]].concat()).unwrap());
    }
}
