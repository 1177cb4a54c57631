//! Sparse multivariate polynomials over the rationals.
//!
//! Coefficients are arbitrary-precision rationals, so every identity used by
//! the rest of the crate (Euler, Leibniz, ring axioms) is checked exactly.
//! Terms are kept in a `BTreeMap` keyed by a graded-lexicographic monomial
//! order, which makes iteration and printing canonical.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact rational coefficient.
pub type Rat = num_rational::BigRational;

/// Exponent vector of a single term, ordered by (total degree, lex).
///
/// The ascending `Ord` makes `BTreeMap` iteration run from the constant term
/// up to the highest-degree term, matching the canonical text format.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn constant(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Result of a homogeneity test.
///
/// The zero polynomial is homogeneous of every degree, so it gets its own
/// variant instead of an arbitrary number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Homogeneous(u32),
    Inhomogeneous,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    NvarsMismatch { left: usize, right: usize },
    IndexOutOfRange { index: usize, nvars: usize },
    PointLengthMismatch { expected: usize, got: usize },
    NonPrimeModulus(u64),
    /// A coefficient denominator is divisible by the reduction prime.
    BadReduction { prime: u64 },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::NvarsMismatch { left, right } => {
                write!(f, "variable-count mismatch: {left} vs {right}")
            }
            PolyError::IndexOutOfRange { index, nvars } => {
                write!(f, "variable index {index} out of range for {nvars} variables")
            }
            PolyError::PointLengthMismatch { expected, got } => {
                write!(f, "evaluation point has length {got}, expected {expected}")
            }
            PolyError::NonPrimeModulus(q) => write!(f, "modulus {q} is not prime"),
            PolyError::BadReduction { prime } => {
                write!(f, "coefficient denominator divisible by {prime}")
            }
        }
    }
}

impl core::error::Error for PolyError {}

/// Sparse multivariate polynomial with exact rational coefficients in
/// variables `z0..z{nvars-1}`.
///
/// Invariants: no stored coefficient is zero and every exponent vector has
/// length `nvars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, value: Rat) -> Self {
        let mut p = Poly::zero(nvars);
        if !value.is_zero() {
            p.terms.insert(Monomial::constant(nvars), value);
        }
        p
    }

    /// The coordinate `z{index}`.
    pub fn variable(nvars: usize, index: usize) -> Result<Self, PolyError> {
        if index >= nvars {
            return Err(PolyError::IndexOutOfRange { index, nvars });
        }
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Ok(Self::term(nvars, exps, Rat::one()))
    }

    /// Single term `coeff * z^exponents`. Zero coefficients are dropped.
    pub fn term(nvars: usize, exponents: Vec<u32>, coeff: Rat) -> Self {
        assert_eq!(exponents.len(), nvars, "exponent vector length != nvars");
        let mut p = Poly::zero(nvars);
        if !coeff.is_zero() {
            p.terms.insert(Monomial::new(exponents), coeff);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (graded-lex ascending) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Option<&Rat> {
        self.terms.get(&Monomial(exponents.to_vec()))
    }

    /// Greatest term in the canonical order, if any.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    fn check_nvars(&self, other: &Poly) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::NvarsMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    fn insert_term(terms: &mut BTreeMap<Monomial, Rat>, mono: Monomial, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match terms.entry(mono) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_nvars(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert_term(&mut terms, m.clone(), c.clone());
        }
        Ok(Poly {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.checked_add(&other.negate())
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_nvars(other)?;
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                Self::insert_term(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        Ok(Poly {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn negate(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, factor: &Rat) -> Poly {
        if factor.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..exp {
            acc = acc.checked_mul(self).expect("same ring");
        }
        acc
    }

    /// Formal partial derivative with respect to `z{index}`.
    pub fn partial_derivative(&self, index: usize) -> Result<Poly, PolyError> {
        if index >= self.nvars {
            return Err(PolyError::IndexOutOfRange {
                index,
                nvars: self.nvars,
            });
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[index] = e - 1;
            Self::insert_term(&mut terms, Monomial(exps), c * rat_u32(e));
        }
        Ok(Poly {
            nvars: self.nvars,
            terms,
        })
    }

    /// Maximal total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Degree-`d` homogeneous part.
    pub fn homogeneous_part(&self, degree: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_degree(&self) -> Homogeneity {
        let mut iter = self.terms.keys();
        let first = match iter.next() {
            None => return Homogeneity::Zero,
            Some(m) => m.total_degree(),
        };
        if iter.all(|m| m.total_degree() == first) {
            Homogeneity::Homogeneous(first)
        } else {
            Homogeneity::Inhomogeneous
        }
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, point: &[Rat]) -> Result<Rat, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::PointLengthMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for (x, &e) in point.iter().zip(m.0.iter()) {
                for _ in 0..e {
                    val *= x;
                }
            }
            acc += val;
        }
        Ok(acc)
    }

    /// Image in `F_q[z]`, coefficients in `[0, q)`.
    pub fn reduce_mod_p(&self, prime: u64) -> Result<FpPoly, PolyError> {
        if !is_prime(prime) {
            return Err(PolyError::NonPrimeModulus(prime));
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let num = bigint_mod(c.numer(), prime);
            let den = bigint_mod(c.denom(), prime);
            if den == 0 {
                return Err(PolyError::BadReduction { prime });
            }
            let val = mul_mod(num, inv_mod(den, prime), prime);
            if val != 0 {
                terms.insert(m.clone(), val);
            }
        }
        Ok(FpPoly {
            modulus: prime,
            nvars: self.nvars,
            terms,
        })
    }
}

impl core::ops::Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("variable-count mismatch")
    }
}

impl core::ops::Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("variable-count mismatch")
    }
}

impl core::ops::Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("variable-count mismatch")
    }
}

impl core::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.negate()
    }
}

fn rat_u32(v: u32) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

fn write_rat(f: &mut fmt::Formatter<'_>, r: &Rat) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Poly {
    /// Canonical text form: terms in graded-lex ascending order, e.g.
    /// `1/2 - z1*z2 + z3^2`. Round-trips through the companion parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = m.total_degree() == 0;
            if !abs.is_one() || is_const {
                write_rat(f, &abs)?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut first_var = true;
            for (idx, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                write!(f, "z{idx}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Polynomial over the prime field `F_q`, coefficients in `[0, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    modulus: u64,
    nvars: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl FpPoly {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &u64)> {
        self.terms.iter()
    }

    /// Evaluate at a point with coordinates in `[0, q)`.
    pub fn evaluate(&self, point: &[u64]) -> u64 {
        debug_assert_eq!(point.len(), self.nvars);
        let q = self.modulus;
        let mut acc = 0u64;
        for (m, &c) in &self.terms {
            let mut val = c;
            for (&x, &e) in point.iter().zip(m.0.iter()) {
                if e > 0 {
                    val = mul_mod(val, pow_mod(x, e, q), q);
                }
            }
            acc = (acc + val) % q;
        }
        acc
    }
}

pub(crate) fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    if q % 2 == 0 {
        return q == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= q {
        if q % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u32, q: u64) -> u64 {
    let mut acc = 1 % q;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub(crate) fn inv_mod(a: u64, q: u64) -> u64 {
    // Fermat: a^(q-2) mod q. Exponent fits u32 only for small q, so square
    // and multiply on u64 directly.
    let mut exp = q - 2;
    let mut base = a % q;
    let mut acc = 1 % q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}

fn bigint_mod(v: &BigInt, q: u64) -> u64 {
    let m = v.mod_floor(&BigInt::from(q));
    let (_, digits) = m.to_u64_digits();
    match digits.as_slice() {
        [] => 0,
        [d] => *d,
        _ => unreachable!("residue below u64 modulus"),
    }
}
