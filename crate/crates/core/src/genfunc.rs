//! Rational generating functions in `q` with coefficients that are integer
//! polynomials in a marking variable `z`.
//!
//! A [`RationalGF`] with denominator constant term `1` expands as a power series
//! whose coefficients obey the linear recurrence
//! `c_n = num_n - sum_{i>=1} den_i * c_{n-i}`; [`coeff_stream`] runs it with
//! exact integers.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::counting::fda;
use crate::counting::PartSet;
use crate::error::{ensure, invalid, Error, Result};
use crate::oracle::{total_parts_where, ConstraintSpec};
use crate::Count;

/// Polynomial in the marking variable `z`, dense by degree, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c * z^deg`.
    pub fn monomial(c: impl Into<BigInt>, deg: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c.into();
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `z^j`.
    pub fn coeff(&self, j: usize) -> BigInt {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    /// Value at `z = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Formal derivative in `z`.
    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }
}

impl Add<&ZPoly> for &ZPoly {
    type Output = ZPoly;

    fn add(self, rhs: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&ZPoly> for ZPoly {
    fn add_assign(&mut self, rhs: &ZPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        *self = ZPoly::from_coeffs(std::mem::take(&mut self.coeffs));
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;

    fn neg(self) -> ZPoly {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub<&ZPoly> for &ZPoly {
    type Output = ZPoly;

    fn sub(self, rhs: &ZPoly) -> ZPoly {
        self + &(-rhs)
    }
}

impl Mul<&ZPoly> for &ZPoly {
    type Output = ZPoly;

    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        ZPoly::from_coeffs(coeffs)
    }
}

/// Polynomial in `q` with [`ZPoly`] coefficients, indexed by `q`-degree.
pub type QPoly = Vec<ZPoly>;

fn trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(ZPoly::is_zero) {
        p.pop();
    }
    p
}

fn q_add(a: &[ZPoly], b: &[ZPoly]) -> QPoly {
    let mut out = vec![ZPoly::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(out)
}

fn q_neg(a: &[ZPoly]) -> QPoly {
    a.iter().map(|c| -c).collect()
}

fn q_mul(a: &[ZPoly], b: &[ZPoly]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ZPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    trim(out)
}

/// Builds a `q`-polynomial from `(q_degree, z_degree, coefficient)` terms.
pub fn q_terms(terms: &[(usize, usize, i64)]) -> QPoly {
    let len = terms.iter().map(|t| t.0 + 1).max().unwrap_or(0);
    let mut out = vec![ZPoly::zero(); len];
    for &(qd, zd, c) in terms {
        out[qd] += &ZPoly::monomial(c, zd);
    }
    trim(out)
}

/// `numerator / denominator` with `denominator(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalGF {
    numerator: QPoly,
    denominator: QPoly,
}

impl RationalGF {
    pub fn new(numerator: QPoly, denominator: QPoly) -> Result<Self> {
        let denominator = trim(denominator);
        if denominator.first() != Some(&ZPoly::one()) {
            return Err(Error::NonUnitDenominator);
        }
        Ok(RationalGF {
            numerator: trim(numerator),
            denominator,
        })
    }

    /// A polynomial, i.e. denominator `1`.
    pub fn polynomial(numerator: QPoly) -> Self {
        RationalGF {
            numerator: trim(numerator),
            denominator: vec![ZPoly::one()],
        }
    }

    pub fn numerator(&self) -> &[ZPoly] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[ZPoly] {
        &self.denominator
    }

    pub fn add(&self, other: &Self) -> Self {
        RationalGF {
            numerator: q_add(
                &q_mul(&self.numerator, &other.denominator),
                &q_mul(&other.numerator, &self.denominator),
            ),
            denominator: q_mul(&self.denominator, &other.denominator),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> Self {
        RationalGF {
            numerator: q_neg(&self.numerator),
            denominator: self.denominator.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalGF {
            numerator: q_mul(&self.numerator, &other.numerator),
            denominator: q_mul(&self.denominator, &other.denominator),
        }
    }

    /// `self / other`; the numerator of `other` must have constant term `+-1`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let lead = other.numerator.first().cloned().unwrap_or_default();
        let sign = if lead == ZPoly::one() {
            1
        } else if lead == ZPoly::constant(-1) {
            -1
        } else {
            return Err(Error::NonUnitDenominator);
        };
        let mut numerator = q_mul(&self.numerator, &other.denominator);
        let mut denominator = q_mul(&self.denominator, &other.numerator);
        if sign < 0 {
            numerator = q_neg(&numerator);
            denominator = q_neg(&denominator);
        }
        Ok(RationalGF {
            numerator,
            denominator,
        })
    }

    /// `1 - self`.
    pub fn one_minus(&self) -> Self {
        RationalGF::polynomial(vec![ZPoly::one()]).sub(self)
    }

    /// Substitutes `z = 1`.
    pub fn at_marking_one(&self) -> Self {
        let eval = |p: &[ZPoly]| trim(p.iter().map(|c| ZPoly::constant(c.eval_one())).collect());
        RationalGF {
            numerator: eval(&self.numerator),
            denominator: eval(&self.denominator),
        }
    }

    /// `d/dz` of the function, evaluated at `z = 1`, by the quotient rule:
    /// `(N_z D - N D_z) / D^2` with every factor specialised at `z = 1`.
    pub fn marking_derivative_at_one(&self) -> Self {
        let at_one = |p: &[ZPoly]| -> QPoly {
            trim(p.iter().map(|c| ZPoly::constant(c.eval_one())).collect())
        };
        let derive = |p: &[ZPoly]| -> QPoly {
            trim(
                p.iter()
                    .map(|c| ZPoly::constant(c.derivative().eval_one()))
                    .collect(),
            )
        };
        let (n1, d1) = (at_one(&self.numerator), at_one(&self.denominator));
        let (nz, dz) = (derive(&self.numerator), derive(&self.denominator));
        RationalGF {
            numerator: q_add(&q_mul(&nz, &d1), &q_neg(&q_mul(&n1, &dz))),
            denominator: q_mul(&d1, &d1),
        }
    }

    pub fn to_document(&self) -> Result<GfDocument> {
        let conv = |p: &[ZPoly]| -> Result<Vec<Vec<i64>>> {
            p.iter()
                .map(|c| {
                    c.coeffs()
                        .iter()
                        .map(|x| {
                            x.to_i64()
                                .ok_or_else(|| invalid("coefficient", "exceeds 64-bit range"))
                        })
                        .collect()
                })
                .collect()
        };
        Ok(GfDocument {
            numerator: conv(&self.numerator)?,
            denominator: conv(&self.denominator)?,
        })
    }

    pub fn from_document(doc: &GfDocument) -> Result<Self> {
        let conv = |p: &[Vec<i64>]| -> QPoly { p.iter().map(|c| ZPoly::from_i64s(c)).collect() };
        RationalGF::new(conv(&doc.numerator), conv(&doc.denominator))
    }
}

/// JSON form of a [`RationalGF`]: outer index is the `q`-degree, inner the
/// `z`-degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GfDocument {
    pub numerator: Vec<Vec<i64>>,
    pub denominator: Vec<Vec<i64>>,
}

/// Power-series coefficients of `g` for `q^0 ..= q^n_max`.
pub fn coeff_stream(g: &RationalGF, n_max: usize) -> Result<Vec<ZPoly>> {
    if g.denominator.first() != Some(&ZPoly::one()) {
        return Err(Error::NonUnitDenominator);
    }
    let mut out: Vec<ZPoly> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut c = g.numerator.get(n).cloned().unwrap_or_default();
        for (i, den) in g.denominator.iter().enumerate().skip(1).take(n) {
            if !den.is_zero() {
                c = &c - &(den * &out[n - i]);
            }
        }
        out.push(c);
    }
    Ok(out)
}

/// Unmarked coefficient stream, with each coefficient evaluated at `z = 1`.
pub fn count_stream(g: &RationalGF, n_max: usize) -> Result<Vec<BigInt>> {
    Ok(coeff_stream(&g.at_marking_one(), n_max)?
        .into_iter()
        .map(|c| c.coeff(0))
        .collect())
}

pub(crate) fn to_count(x: BigInt) -> Result<Count> {
    match x.sign() {
        Sign::Minus => Err(Error::CheckFailed(format!("negative count {x}"))),
        _ => Ok(x.abs().to_biguint().expect("nonnegative")),
    }
}

/// Generating functions the toolkit knows how to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GfFamily {
    /// All partitions by perimeter: `q / (1 - 2q)`.
    Perimeter,
    /// Closed form shared by both `k = 2` families, `z` marking repeated sizes
    /// (or, equivalently, even sizes).
    FdFoMarked,
    /// `B / (1 - C)` assembled from profile blocks, `z` marking repeated sizes.
    RepeatedSizesMarked,
    /// `A (1 + zA) / (1 - AB)` assembled from profile blocks, `z` marking even sizes.
    EvenSizesMarked,
    /// Parts `== a (mod d+1)`: `q^a / (1 - q - q^(d+1))`.
    Congruent { d: usize, a: usize },
    /// As `Congruent`, with `z` marking the number of parts.
    CongruentByParts { d: usize, a: usize },
    /// `d`-distinct parts `>= a`, with `z` marking the number of parts.
    DistinctByParts { d: usize, a: usize },
    /// Excess of total parts of `Congruent` over `DistinctByParts`.
    BeckExcess { d: usize, a: usize },
    /// Parts `== a, b (mod d)`, closed form.
    TwoResidue { d: usize, a: usize, b: usize },
    /// Parts `== a, b (mod d)`, assembled from profile blocks.
    TwoResidueBlocks { d: usize, a: usize, b: usize },
}

fn check_da(d: usize, a: usize) -> Result<()> {
    ensure(d >= 1, "d", "must be >= 1")?;
    ensure((1..=d + 1).contains(&a), "a", "must satisfy 1 <= a <= d+1")
}

fn check_dab(d: usize, a: usize, b: usize) -> Result<()> {
    ensure(a >= 1, "a", "must satisfy 0 < a")?;
    ensure(a < b, "b", "must satisfy a < b")?;
    ensure(b <= d, "d", "must satisfy b <= d")
}

fn mono(q: usize) -> QPoly {
    q_terms(&[(q, 0, 1)])
}

/// `q^k / (1 - q)`.
fn geometric_tail(k: usize) -> RationalGF {
    RationalGF {
        numerator: mono(k),
        denominator: q_terms(&[(0, 0, 1), (1, 0, -1)]),
    }
}

pub fn build_gf(family: GfFamily) -> Result<RationalGF> {
    use GfFamily::*;
    match family {
        Perimeter => RationalGF::new(mono(1), q_terms(&[(0, 0, 1), (1, 0, -2)])),
        FdFoMarked => RationalGF::new(
            // q (1 - (1-z) q)
            q_terms(&[(1, 0, 1), (2, 0, -1), (2, 1, 1)]),
            // 1 - 2q + (1-z) q^3
            q_terms(&[(0, 0, 1), (1, 0, -2), (3, 0, 1), (3, 1, -1)]),
        ),
        RepeatedSizesMarked => {
            let (_, b, c) = profile_blocks();
            b.div(&c.one_minus())
        }
        EvenSizesMarked => {
            let (a, b, _) = profile_blocks();
            let z = RationalGF::polynomial(q_terms(&[(0, 1, 1)]));
            let one = RationalGF::polynomial(mono(0));
            a.mul(&one.add(&z.mul(&a))).div(&a.mul(&b).one_minus())
        }
        Congruent { d, a } => {
            check_da(d, a)?;
            RationalGF::new(mono(a), q_terms(&[(0, 0, 1), (1, 0, -1), (d + 1, 0, -1)]))
        }
        CongruentByParts { d, a } => {
            check_da(d, a)?;
            RationalGF::new(
                q_terms(&[(a, 1, 1)]),
                q_terms(&[(0, 0, 1), (1, 1, -1), (d + 1, 0, -1)]),
            )
        }
        DistinctByParts { d, a } => {
            check_da(d, a)?;
            RationalGF::new(
                q_terms(&[(a, 1, 1)]),
                q_terms(&[(0, 0, 1), (1, 0, -1), (d + 1, 1, -1)]),
            )
        }
        BeckExcess { d, a } => {
            check_da(d, a)?;
            let base = q_terms(&[(0, 0, 1), (1, 0, -1), (d + 1, 0, -1)]);
            RationalGF::new(
                q_terms(&[(a + 1, 0, 1), (a + 1 + d, 0, -1)]),
                q_mul(&base, &base),
            )
        }
        TwoResidue { d, a, b } => {
            check_dab(d, a, b)?;
            RationalGF::new(
                q_terms(&[(a, 0, 1), (a + 1, 0, -1), (b, 0, 1)]),
                q_terms(&[(0, 0, 1), (1, 0, -2), (2, 0, 1), (d, 0, -1)]),
            )
        }
        TwoResidueBlocks { d, a, b } => {
            check_dab(d, a, b)?;
            // First block E_a N_m0 with the final N, then pairs of blocks
            // E_{b-a} N_i E_{a-b+d} N_j, then an optional unpaired E_{b-a} N_i.
            let first = geometric_tail(a);
            let f = geometric_tail(b - a);
            let g = geometric_tail(a + d - b);
            let one = RationalGF::polynomial(mono(0));
            first.mul(&one.add(&f)).div(&f.mul(&g).one_minus())
        }
    }
}

/// Profile blocks at `x = y = 1`: `A` generates one `E N_m`; `B` the same with
/// `z` marking `m >= 1`; `C` with `z` marking `m >= 2`.
fn profile_blocks() -> (RationalGF, RationalGF, RationalGF) {
    let den = q_terms(&[(0, 0, 1), (1, 0, -1)]);
    let a = RationalGF {
        numerator: mono(1),
        denominator: den.clone(),
    };
    // q (1 - (1-z) q)
    let b = RationalGF {
        numerator: q_terms(&[(1, 0, 1), (2, 0, -1), (2, 1, 1)]),
        denominator: den.clone(),
    };
    // q (1 - (1-z) q^2)
    let c = RationalGF {
        numerator: q_terms(&[(1, 0, 1), (3, 0, -1), (3, 1, 1)]),
        denominator: den,
    };
    (a, b, c)
}

fn marked_coeff(family: GfFamily, j: usize, n: usize) -> Result<Count> {
    let stream = coeff_stream(&build_gf(family)?, n)?;
    to_count(stream[n].coeff(j))
}

/// `(FO_{j,2}(n), FD_{j,2}(n))`: perimeter-`n` partitions with exactly `j` even
/// part sizes, and with exactly `j` repeated part sizes. Each is read from its
/// own block-assembled generating function.
pub fn fo_fd_j2(j: usize, n: usize) -> Result<(Count, Count)> {
    ensure(n >= 1, "n", "must be >= 1")?;
    Ok((
        marked_coeff(GfFamily::EvenSizesMarked, j, n)?,
        marked_coeff(GfFamily::RepeatedSizesMarked, j, n)?,
    ))
}

/// Ordered pairs `(p1, p2)` with `p1` counted by `f_d^{(a)}(n-m)` and `p2` by
/// `f_d^{(b)}(m)` for some `1 <= m <= n-1`.
///
/// `d` is the index of the `f` family (modulus `d+1`).
pub fn beck_pair_count(d: usize, a: usize, b: usize, n: usize) -> Result<Count> {
    check_da(d, a)?;
    ensure((1..=d + 1).contains(&b), "b", "must satisfy 1 <= b <= d+1")?;
    let mut total = Count::zero();
    for m in 1..n {
        total += fda(d, a, n - m)? * fda(d, b, m)?;
    }
    Ok(total)
}

/// Excess of total parts over `f_d^{(a)}(n)` partitions against `h_d^{(a)}(n)`
/// partitions, read from the closed-form excess generating function.
pub fn beck_excess(d: usize, a: usize, n: usize) -> Result<Count> {
    let stream = coeff_stream(&build_gf(GfFamily::BeckExcess { d, a })?, n)?;
    to_count(stream[n].coeff(0))
}

/// The excess `E(f_d^{(a)}(n), h_d^{(a)}(n))` computed along independent routes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeckPaths {
    /// Coefficient of the closed-form excess generating function.
    pub closed_form: BigInt,
    /// Difference of `z`-derivatives at `z = 1` of the part-marked functions.
    pub derivative: BigInt,
    /// Raw sums of the number of parts, by enumeration.
    pub part_sums: BigInt,
    /// `fp^{(a,1)}(n) - fp^{(a,d+1)}(n)`.
    pub pair_counts: BigInt,
}

impl BeckPaths {
    pub fn agree(&self) -> bool {
        self.closed_form == self.derivative
            && self.derivative == self.part_sums
            && self.part_sums == self.pair_counts
    }
}

/// Difference of `z`-derivatives at `z = 1` of the part-marked generating
/// functions for `f_d^{(a)}` and `h_d^{(a)}`.
pub fn beck_derivative_gf(d: usize, a: usize) -> Result<RationalGF> {
    let f = build_gf(GfFamily::CongruentByParts { d, a })?;
    let h = build_gf(GfFamily::DistinctByParts { d, a })?;
    Ok(f.marking_derivative_at_one()
        .sub(&h.marking_derivative_at_one()))
}

/// Evaluates every route to the excess. The enumeration route visits all
/// `2^(n-1)` partitions of perimeter `n`.
pub fn beck_excess_paths(d: usize, a: usize, n: usize) -> Result<BeckPaths> {
    check_da(d, a)?;
    ensure(n >= 1, "n", "must be >= 1")?;
    let closed = coeff_stream(&build_gf(GfFamily::BeckExcess { d, a })?, n)?;
    let deriv = coeff_stream(&beck_derivative_gf(d, a)?, n)?;
    let f_set = ConstraintSpec::PartsInSet(PartSet::progression(a, d + 1)?);
    let h_set = ConstraintSpec::DDistinctMin { d, a };
    let part_sums =
        BigInt::from(total_parts_where(n, &f_set)?) - BigInt::from(total_parts_where(n, &h_set)?);
    let pair_counts =
        BigInt::from(beck_pair_count(d, a, 1, n)?) - BigInt::from(beck_pair_count(d, a, d + 1, n)?);
    Ok(BeckPaths {
        closed_form: closed[n].coeff(0),
        derivative: deriv[n].coeff(0),
        part_sums,
        pair_counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn constants(stream: &[ZPoly]) -> Vec<BigInt> {
        stream.iter().map(|c| c.coeff(0)).collect()
    }

    #[test]
    fn zpoly_arithmetic() {
        let p = ZPoly::from_i64s(&[1, -1]);
        let q = ZPoly::from_i64s(&[1, 1]);
        assert_eq!(&p * &q, ZPoly::from_i64s(&[1, 0, -1]));
        assert_eq!(&p + &q, ZPoly::constant(2));
        assert_eq!(&p - &p, ZPoly::zero());
        assert_eq!(
            ZPoly::from_i64s(&[3, 2, 5]).derivative(),
            ZPoly::from_i64s(&[2, 10])
        );
        assert_eq!(ZPoly::from_i64s(&[3, 2, 5]).eval_one(), BigInt::from(10));
        assert_eq!(ZPoly::from_i64s(&[0, 0]).degree(), None);
    }

    #[test]
    fn stream_powers_of_two() {
        let g = build_gf(GfFamily::Perimeter).unwrap();
        let s = coeff_stream(&g, 5).unwrap();
        assert_eq!(constants(&s), ints(&[0, 1, 2, 4, 8, 16]));
    }

    #[test]
    fn stream_fibonacci() {
        let g = RationalGF::new(
            q_terms(&[(0, 0, 1)]),
            q_terms(&[(0, 0, 1), (1, 0, -1), (2, 0, -1)]),
        )
        .unwrap();
        let s = coeff_stream(&g, 5).unwrap();
        assert_eq!(constants(&s), ints(&[1, 1, 2, 3, 5, 8]));
    }

    #[test]
    fn stream_zero_numerator() {
        let g = RationalGF::new(Vec::new(), q_terms(&[(0, 0, 1), (1, 0, -3)])).unwrap();
        assert!(coeff_stream(&g, 6).unwrap().iter().all(ZPoly::is_zero));
    }

    #[test]
    fn rejects_non_unit_denominator() {
        let bad = RationalGF::new(mono(1), q_terms(&[(0, 0, 2), (1, 0, -1)]));
        assert_eq!(bad, Err(Error::NonUnitDenominator));
        let zero_den = RationalGF::new(mono(1), q_terms(&[(1, 0, 1)]));
        assert_eq!(zero_den, Err(Error::NonUnitDenominator));
    }

    #[test]
    fn marked_closed_form_at_one_is_perimeter() {
        let g = build_gf(GfFamily::FdFoMarked).unwrap();
        let at_one = count_stream(&g, 12).unwrap();
        let all = count_stream(&build_gf(GfFamily::Perimeter).unwrap(), 12).unwrap();
        assert_eq!(at_one, all);
    }

    #[test]
    fn two_residue_degenerates_to_perimeter() {
        let g = build_gf(GfFamily::TwoResidue { d: 2, a: 1, b: 2 }).unwrap();
        assert_eq!(g.numerator(), &q_terms(&[(1, 0, 1)])[..]);
        assert_eq!(g.denominator(), &q_terms(&[(0, 0, 1), (1, 0, -2)])[..]);
    }

    #[test]
    fn beck_closed_form_d1_a1() {
        let g = build_gf(GfFamily::BeckExcess { d: 1, a: 1 }).unwrap();
        assert_eq!(g.numerator(), &q_terms(&[(2, 0, 1), (3, 0, -1)])[..]);
        let base = q_terms(&[(0, 0, 1), (1, 0, -1), (2, 0, -1)]);
        assert_eq!(g.denominator(), &q_mul(&base, &base)[..]);
    }

    #[test]
    fn marked_stream_at_four() {
        let s = coeff_stream(&build_gf(GfFamily::FdFoMarked).unwrap(), 4).unwrap();
        assert_eq!(s[4], ZPoly::from_i64s(&[3, 5]));
        assert_eq!(
            fo_fd_j2(0, 4).unwrap(),
            (Count::from(3u32), Count::from(3u32))
        );
        assert_eq!(
            fo_fd_j2(1, 4).unwrap(),
            (Count::from(5u32), Count::from(5u32))
        );
        assert_eq!(fo_fd_j2(2, 4).unwrap(), (Count::zero(), Count::zero()));
    }

    #[test]
    fn block_constructions_match_closed_form() {
        let closed = coeff_stream(&build_gf(GfFamily::FdFoMarked).unwrap(), 25).unwrap();
        let rep = coeff_stream(&build_gf(GfFamily::RepeatedSizesMarked).unwrap(), 25).unwrap();
        let even = coeff_stream(&build_gf(GfFamily::EvenSizesMarked).unwrap(), 25).unwrap();
        assert_eq!(closed, rep);
        assert_eq!(closed, even);
    }

    #[test]
    fn pair_count_examples() {
        assert_eq!(beck_pair_count(1, 1, 1, 4).unwrap(), Count::from(5u32));
        assert_eq!(beck_pair_count(1, 1, 2, 4).unwrap(), Count::from(2u32));
        assert_eq!(beck_pair_count(1, 1, 1, 1).unwrap(), Count::zero());
        assert!(beck_pair_count(1, 1, 3, 4).is_err());
    }

    #[test]
    fn excess_examples() {
        assert_eq!(beck_excess(1, 1, 2).unwrap(), Count::from(1u32));
        assert_eq!(beck_excess(1, 1, 4).unwrap(), Count::from(3u32));
        for (d, a) in [(1, 1), (2, 3), (3, 2)] {
            for n in 1..=a {
                assert_eq!(beck_excess(d, a, n).unwrap(), Count::zero());
            }
        }
    }

    #[test]
    fn excess_paths_small() {
        let p = beck_excess_paths(1, 1, 4).unwrap();
        assert!(p.agree(), "{p:?}");
        assert_eq!(p.part_sums, BigInt::from(3));
    }

    #[test]
    fn document_round_trip() {
        let g = build_gf(GfFamily::FdFoMarked).unwrap();
        let doc = g.to_document().unwrap();
        assert_eq!(doc.numerator, vec![vec![], vec![1], vec![-1, 1]]);
        assert_eq!(RationalGF::from_document(&doc).unwrap(), g);
    }

    #[test]
    fn rejects_bad_family_params() {
        assert!(build_gf(GfFamily::Congruent { d: 1, a: 3 }).is_err());
        assert!(build_gf(GfFamily::TwoResidue { d: 3, a: 2, b: 2 }).is_err());
        assert!(build_gf(GfFamily::TwoResidue { d: 3, a: 1, b: 4 }).is_err());
    }
}
