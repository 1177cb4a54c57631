//! Finite-field brute-force oracle for common zeros of coefficient ideals:
//! enumerate `P^n(F_p)`, test membership, and gather heuristic isolatedness
//! evidence from point counts across several primes.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::poly::{is_prime, FpPoly, Homogeneity, Poly, PolyError, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZerosError {
    CompositeModulus(u64),
    NonHomogeneous { index: usize },
    NvarsMismatch { expected: usize, got: usize },
    /// Evidence gathering needs at least three primes.
    TooFewPrimes { got: usize },
    /// The prime divides a coefficient denominator or a leading coefficient.
    BadReductionPrime { prime: u64 },
    ZeroVector,
    Poly(PolyError),
}

impl fmt::Display for ZerosError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZerosError::CompositeModulus(p) => write!(f, "{p} is not prime"),
            ZerosError::NonHomogeneous { index } => {
                write!(f, "generator {index} is not homogeneous")
            }
            ZerosError::NvarsMismatch { expected, got } => {
                write!(f, "expected {expected} variables, got {got}")
            }
            ZerosError::TooFewPrimes { got } => {
                write!(f, "need at least 3 primes, got {got}")
            }
            ZerosError::BadReductionPrime { prime } => {
                write!(f, "bad reduction at {prime}")
            }
            ZerosError::ZeroVector => write!(f, "all-zero coordinates"),
            ZerosError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ZerosError {}

impl From<PolyError> for ZerosError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::NonPrimeModulus(p) => ZerosError::CompositeModulus(p),
            PolyError::BadReduction { prime } => ZerosError::BadReductionPrime { prime },
            other => ZerosError::Poly(other),
        }
    }
}

/// A normalized point of `P^n(F_p)`: the first nonzero coordinate is 1, so
/// each projective point has a unique representative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<u64>,
}

impl ProjPoint {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A normalized rational projective point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoint {
    coords: Vec<Rat>,
}

impl RationalPoint {
    /// Normalizes so the first nonzero coordinate is 1.
    pub fn new(coords: Vec<Rat>) -> Result<Self, ZerosError> {
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .ok_or(ZerosError::ZeroVector)?;
        Ok(RationalPoint {
            coords: coords.into_iter().map(|c| c / &lead).collect(),
        })
    }

    pub fn from_integers(coords: &[i64]) -> Result<Self, ZerosError> {
        Self::new(coords.iter().map(|&c| crate::rat_int(c)).collect())
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }
}

/// Iterator over the block of points whose first nonzero coordinate sits at
/// `lead`; within a block the free coordinates run lexicographically.
pub struct BlockIter {
    n: usize,
    p: u64,
    lead: usize,
    state: Option<Vec<u64>>,
}

impl Iterator for BlockIter {
    type Item = ProjPoint;

    fn next(&mut self) -> Option<ProjPoint> {
        let state = self.state.as_mut()?;
        let mut coords = vec![0u64; self.n + 1];
        coords[self.lead] = 1;
        coords[self.lead + 1..].copy_from_slice(state);
        // odometer increment on the free coordinates
        let mut done = true;
        for digit in state.iter_mut().rev() {
            *digit += 1;
            if *digit < self.p {
                done = false;
                break;
            }
            *digit = 0;
        }
        if done {
            self.state = None;
        }
        Some(ProjPoint { coords })
    }
}

/// Points of `P^n(F_p)` with first nonzero coordinate at `lead`.
pub fn enumerate_block(n: usize, p: u64, lead: usize) -> Result<BlockIter, ZerosError> {
    if !is_prime(p) {
        return Err(ZerosError::CompositeModulus(p));
    }
    assert!(lead <= n, "lead coordinate out of range");
    Ok(BlockIter {
        n,
        p,
        lead,
        state: Some(vec![0u64; n - lead]),
    })
}

/// All of `P^n(F_p)` in block order: exactly `(p^{n+1} - 1) / (p - 1)`
/// normalized points, lexicographic within each leading-coordinate block.
pub fn enumerate_points(
    n: usize,
    p: u64,
) -> Result<impl Iterator<Item = ProjPoint>, ZerosError> {
    if !is_prime(p) {
        return Err(ZerosError::CompositeModulus(p));
    }
    let blocks: Vec<BlockIter> = (0..=n)
        .map(|lead| enumerate_block(n, p, lead).expect("prime checked"))
        .collect();
    Ok(blocks.into_iter().flatten())
}

fn reduce_ideal(polys: &[Poly], n: usize, p: u64) -> Result<Vec<FpPoly>, ZerosError> {
    let mut reduced = Vec::with_capacity(polys.len());
    for (index, poly) in polys.iter().enumerate() {
        if poly.nvars() != n + 1 {
            return Err(ZerosError::NvarsMismatch {
                expected: n + 1,
                got: poly.nvars(),
            });
        }
        if poly.homogeneous_degree() == Homogeneity::Inhomogeneous {
            return Err(ZerosError::NonHomogeneous { index });
        }
        reduced.push(poly.reduce_mod_p(p)?);
    }
    Ok(reduced)
}

/// Zeros of a reduced ideal within one block.
pub fn common_zeros_in_block(
    reduced: &[FpPoly],
    n: usize,
    p: u64,
    lead: usize,
) -> Vec<ProjPoint> {
    enumerate_block(n, p, lead)
        .expect("prime checked by reduction")
        .filter(|pt| reduced.iter().all(|f| f.evaluate(pt.coords()) == 0))
        .collect()
}

/// Common zeros of homogeneous polynomials on `P^n(F_p)`, in the
/// deterministic block order.
pub fn common_zeros_mod_p(
    polys: &[Poly],
    n: usize,
    p: u64,
) -> Result<Vec<ProjPoint>, ZerosError> {
    if !is_prime(p) {
        return Err(ZerosError::CompositeModulus(p));
    }
    let reduced = reduce_ideal(polys, n, p)?;
    let mut out = Vec::new();
    for lead in 0..=n {
        out.extend(common_zeros_in_block(&reduced, n, p, lead));
    }
    Ok(out)
}

/// Heuristic verdict from point counts across primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum EvidenceVerdict {
    /// Counts are bounded and stable: consistent with a zero-dimensional set.
    EvidenceIsolated,
    /// Counts grow roughly linearly in `p`.
    EvidencePositiveDimensional,
    /// Empty or all-zero ideal: every point vanishes.
    Degenerate,
}

/// Point-count evidence for isolatedness of a zero set. Heuristic by design:
/// the counts are exposed so callers can extend the prime list.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct IsolatednessReport {
    pub n: usize,
    /// Sorted ascending.
    pub primes: Vec<u64>,
    /// Zero counts per prime, same order.
    pub counts: Vec<usize>,
    pub verdict: EvidenceVerdict,
    /// Always true; the verdict is evidence, not a proof.
    pub heuristic: bool,
    pub note: String,
}

/// Compares zero counts across at least three primes of good reduction.
///
/// Primes dividing any coefficient denominator or any leading coefficient
/// are rejected with `BadReductionPrime`.
pub fn isolatedness_evidence(
    polys: &[Poly],
    n: usize,
    primes: &[u64],
) -> Result<IsolatednessReport, ZerosError> {
    if primes.len() < 3 {
        return Err(ZerosError::TooFewPrimes { got: primes.len() });
    }
    let mut primes: Vec<u64> = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    if primes.len() < 3 {
        return Err(ZerosError::TooFewPrimes { got: primes.len() });
    }
    for &p in &primes {
        if !is_prime(p) {
            return Err(ZerosError::CompositeModulus(p));
        }
        for poly in polys {
            if poly.is_zero() {
                continue;
            }
            // leading-coefficient check: the reduction must keep the
            // top monomial, otherwise the zero set is distorted
            let (_, lead) = poly.leading_term().expect("nonzero");
            let lead_mod = lead.numer().magnitude() % p;
            if lead_mod.is_zero() {
                return Err(ZerosError::BadReductionPrime { prime: p });
            }
        }
    }
    let degenerate = polys.is_empty() || polys.iter().all(Poly::is_zero);
    let mut counts = Vec::with_capacity(primes.len());
    for &p in &primes {
        counts.push(common_zeros_mod_p(polys, n, p)?.len());
    }
    let verdict = if degenerate {
        EvidenceVerdict::Degenerate
    } else {
        let increasing = counts.windows(2).all(|w| w[0] <= w[1]);
        let first = counts[0];
        let last = *counts.last().expect("nonempty");
        let spread = (primes[primes.len() - 1] - primes[0]) as usize;
        if increasing && last >= first + spread.div_ceil(2) {
            EvidenceVerdict::EvidencePositiveDimensional
        } else {
            EvidenceVerdict::EvidenceIsolated
        }
    };
    Ok(IsolatednessReport {
        n,
        primes,
        counts,
        verdict,
        heuristic: true,
        note: String::from(
            "point-count evidence across primes; not a proof of dimension",
        ),
    })
}

/// Exact membership of a rational point in the zero set of an ideal.
pub fn is_singular_point(ideal: &[Poly], point: &RationalPoint) -> Result<bool, ZerosError> {
    for poly in ideal {
        if poly.nvars() != point.coords().len() {
            return Err(ZerosError::NvarsMismatch {
                expected: poly.nvars(),
                got: point.coords().len(),
            });
        }
        if !poly.evaluate(point.coords())?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reduction of a rational point modulo a prime of good reduction.
pub fn reduce_point_mod_p(point: &RationalPoint, p: u64) -> Result<ProjPoint, ZerosError> {
    if !is_prime(p) {
        return Err(ZerosError::CompositeModulus(p));
    }
    let nvars = point.coords().len();
    let as_polys: Vec<Poly> = point
        .coords()
        .iter()
        .map(|c| Poly::constant(nvars, c.clone()))
        .collect();
    let mut coords = Vec::with_capacity(nvars);
    for poly in &as_polys {
        let reduced = poly.reduce_mod_p(p)?;
        coords.push(reduced.evaluate(&vec![0; nvars]));
    }
    // renormalize so the first nonzero residue is 1
    let lead = coords
        .iter()
        .copied()
        .find(|&c| c != 0)
        .ok_or(ZerosError::BadReductionPrime { prime: p })?;
    let inv = crate::poly::inv_mod(lead, p);
    Ok(ProjPoint {
        coords: coords
            .into_iter()
            .map(|c| crate::poly::mul_mod(c, inv, p))
            .collect(),
    })
}
