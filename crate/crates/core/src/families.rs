//! Generators for the two explicit example families: the antisymmetric-matrix
//! distribution on `P^3` and the Hamiltonian flag data on `P^{2n}`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::exterior::{Form, MultiVector};
use crate::poly::Poly;
use crate::projective::{descend_form, DistributionError, FormDistribution};
use crate::rat_int;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyError {
    /// The antisymmetric family needs `k >= 1`.
    DegreeTooSmall { k: u32 },
    /// Hamiltonian data lives on `P^{2n}` with `2n >= 4` even.
    BadAmbient { n2: usize },
    NvarsMismatch { expected: usize, got: usize },
    /// `f` must not involve the homogenizing variable `z0`.
    UsesHomogenizingVariable,
    NonzeroConstantTerm,
    WrongDegree { expected: u32, got: Option<u32> },
    Distribution(DistributionError),
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::DegreeTooSmall { k } => write!(f, "need k >= 1, got {k}"),
            FamilyError::BadAmbient { n2 } => {
                write!(f, "need an even ambient dimension 2n >= 4, got {n2}")
            }
            FamilyError::NvarsMismatch { expected, got } => {
                write!(f, "expected {expected} variables, got {got}")
            }
            FamilyError::UsesHomogenizingVariable => {
                write!(f, "polynomial must not involve z0")
            }
            FamilyError::NonzeroConstantTerm => write!(f, "polynomial has a constant term"),
            FamilyError::WrongDegree { expected, got } => {
                write!(f, "expected degree {expected}, got {got:?}")
            }
            FamilyError::Distribution(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for FamilyError {}

impl From<DistributionError> for FamilyError {
    fn from(e: DistributionError) -> Self {
        FamilyError::Distribution(e)
    }
}

fn var(nvars: usize, i: usize) -> Poly {
    Poly::variable(nvars, i).expect("index in range")
}

/// The degree-`k` distribution on `P^3` cut out by `omega = sum A_i dz_i`
/// with `(A_i) = M (z_i)` for the antisymmetric matrix with entries
/// `z3^k, z2^k, z0^k`, together with the degree-`(k+1)` tangent field:
///
/// `omega = z3^{k+1} dz0 + (z2^{k+1} + z0^k z3) dz1 - z1 z2^k dz2
///          + (-z0 z3^k - z0^k z1) dz3`
pub fn antisym_example(k: u32) -> Result<(Form, MultiVector), FamilyError> {
    if k < 1 {
        return Err(FamilyError::DegreeTooSmall { k });
    }
    let n = 4;
    let a0 = var(n, 3).pow(k + 1);
    let a1 = &var(n, 2).pow(k + 1) + &(&var(n, 0).pow(k) * &var(n, 3));
    let a2 = (&var(n, 1) * &var(n, 2).pow(k)).negate();
    let a3 = (&(&var(n, 0) * &var(n, 3).pow(k)) + &(&var(n, 0).pow(k) * &var(n, 1))).negate();
    let omega = Form::from_components(
        n,
        1,
        [
            (vec![0], a0),
            (vec![1], a1),
            (vec![2], a2),
            (vec![3], a3),
        ],
    )
    .expect("valid components");
    let x = MultiVector::from_components(
        n,
        1,
        [
            (vec![0], &var(n, 1) * &var(n, 2).pow(k)),
            (vec![1], &(&var(n, 0) * &var(n, 3).pow(k)) + &(&var(n, 0).pow(k) * &var(n, 1))),
            (vec![2], var(n, 3).pow(k + 1)),
            (vec![3], &var(n, 2).pow(k + 1) + &(&var(n, 0).pow(k) * &var(n, 3))),
        ],
    )
    .expect("valid components");
    Ok((omega, x))
}

/// Homogenization `F(z0, z) = f_k(z) + z0 f_{k-1}(z) + ... + z0^{k-1} f_1(z)`
/// of a degree-`k` polynomial with zero constant term; satisfies
/// `F(1, z) = f(z)` and `F` homogeneous of degree `k`.
pub fn homogenize(f: &Poly, k: u32) -> Result<Poly, FamilyError> {
    let nvars = f.nvars();
    if f.terms().any(|(m, _)| m.exponents()[0] != 0) {
        return Err(FamilyError::UsesHomogenizingVariable);
    }
    if f.terms().any(|(m, _)| m.total_degree() == 0) {
        return Err(FamilyError::NonzeroConstantTerm);
    }
    if f.total_degree() != Some(k) {
        return Err(FamilyError::WrongDegree {
            expected: k,
            got: f.total_degree(),
        });
    }
    let z0 = var(nvars, 0);
    let mut out = Poly::zero(nvars);
    for j in 1..=k {
        let part = f.homogeneous_part(j);
        if part.is_zero() {
            continue;
        }
        out = &out + &(&z0.pow(k - j) * &part);
    }
    Ok(out)
}

/// The codimension-one foliation of degree `k - 1` on `P^{n2}` defined by
/// `omega = z0 dF - k F dz0`, where `F` is the homogenization of `f`.
/// The Euler relation holds by the Euler identity `i_theta dF = k F`.
pub fn kupka_form(f: &Poly, k: u32, n2: usize) -> Result<FormDistribution, FamilyError> {
    if n2 < 2 {
        return Err(FamilyError::BadAmbient { n2 });
    }
    if f.nvars() != n2 + 1 {
        return Err(FamilyError::NvarsMismatch {
            expected: n2 + 1,
            got: f.nvars(),
        });
    }
    let nvars = n2 + 1;
    let big_f = homogenize(f, k)?;
    let df = Form::from_components(nvars, 0, [(vec![], big_f.clone())])
        .expect("valid components")
        .exterior_derivative();
    let omega = df
        .scale_poly(&var(nvars, 0))
        .checked_sub(
            &Form::basis(nvars, &[0])
                .expect("valid")
                .scale_poly(&big_f.scale(&rat_int(k as i64))),
        )
        .expect("same shape");
    Ok(descend_form(omega, n2)?)
}

/// One signed entry of a Hamiltonian pairing pattern: the component
/// multiplies `sign * d_{source} f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedPartial {
    /// 1-based variable index of the partial derivative used.
    pub source: usize,
    /// `+1` or `-1`.
    pub sign: i8,
}

/// A candidate solution of `sum_j X_j d_j f = 0` built from a signed pairing
/// of partial derivatives.
#[derive(Debug, Clone)]
pub struct HamiltonianCandidate {
    /// Which of the `2n - 1` fields this is.
    pub index: u32,
    pub pattern: Vec<SignedPartial>,
    pub field: MultiVector,
    /// `sum_j X_j d_j f`; the field is tangent to every level of `f` exactly
    /// when this vanishes.
    pub residue: Poly,
    pub valid: bool,
    /// True when this pattern was obtained by flipping signs of a printed
    /// pattern that failed validation.
    pub corrected: bool,
}

/// The pairing pattern of the `i`-th displayed field on `C^{2n}`.
///
/// Odd `i` reverses the first `i + 1` coordinates; `i = 2` swaps the blocks
/// `(1,2)` and `(3,4)`; even `i` generally swaps the blocks `(1..i)` and
/// `(i+1..2i)` when they fit (mirrored into the tail when they do not).
/// Remaining coordinates are paired `(2j-1, 2j)`. Signs alternate
/// `-,+,-,+,...` throughout.
fn printed_pattern(i: u32, n2: usize) -> Vec<SignedPartial> {
    let i = i as usize;
    let sign_of = |j: usize| -> i8 {
        if j % 2 == 1 {
            -1
        } else {
            1
        }
    };
    let pair_swap = |j: usize| -> usize {
        if j % 2 == 1 {
            j + 1
        } else {
            j - 1
        }
    };
    let mut pattern = Vec::with_capacity(n2);
    for j in 1..=n2 {
        let source = if i % 2 == 1 {
            // reversal of the first i+1 coordinates
            if j <= i + 1 {
                i + 2 - j
            } else {
                pair_swap(j)
            }
        } else if 2 * i <= n2 {
            if j <= i {
                j + i
            } else if j <= 2 * i {
                j - i
            } else {
                pair_swap(j)
            }
        } else {
            // mirrored block swap in the last 2*(n2 - i) coordinates
            let width = n2 - i;
            let lo = n2 - 2 * width;
            if j > lo + width {
                j - width
            } else if j > lo {
                j + width
            } else {
                pair_swap(j)
            }
        };
        pattern.push(SignedPartial {
            source,
            sign: sign_of(j),
        });
    }
    pattern
}

fn pattern_data(f: &Poly, pattern: &[SignedPartial]) -> (MultiVector, Poly, bool) {
    let nvars = f.nvars();
    let mut residue = Poly::zero(nvars);
    let mut components = Vec::with_capacity(pattern.len());
    for (j, entry) in pattern.iter().enumerate() {
        let var_index = j + 1;
        let mut comp = f
            .partial_derivative(entry.source)
            .expect("source in range");
        if entry.sign < 0 {
            comp = comp.negate();
        }
        residue = &residue
            + &(&comp * &f.partial_derivative(var_index).expect("index in range"));
        components.push((vec![var_index], comp));
    }
    let field =
        MultiVector::from_components(nvars, 1, components).expect("valid components");
    let valid = residue.is_zero();
    (field, residue, valid)
}

/// Lexicographic subsets of `0..len` of the given size.
fn subsets(len: usize, size: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    fn rec(
        prefix: &mut Vec<usize>,
        start: usize,
        len: usize,
        size: usize,
        visit: &mut impl FnMut(&[usize]) -> bool,
        stop: &mut bool,
    ) {
        if *stop {
            return;
        }
        if prefix.len() == size {
            if !visit(prefix) {
                *stop = true;
            }
            return;
        }
        let remaining = size - prefix.len();
        for i in start..=(len.saturating_sub(remaining)) {
            prefix.push(i);
            rec(prefix, i + 1, len, size, visit, stop);
            prefix.pop();
            if *stop {
                return;
            }
        }
    }
    let mut stop = false;
    rec(&mut Vec::new(), 0, len, size, &mut visit, &mut stop);
}

const FLIP_SEARCH_BUDGET: usize = 200_000;

/// Smallest sign-flip repair of an invalid pattern: among the valid patterns
/// at minimal Hamming distance, the lexicographically least sign vector
/// (`-1 < +1`). `None` when no repair exists within the search budget.
fn minimal_flip_repair(f: &Poly, pattern: &[SignedPartial]) -> Option<Vec<SignedPartial>> {
    let nvars = f.nvars();
    // residue contribution of each entry with its printed sign
    let terms: Vec<Poly> = pattern
        .iter()
        .enumerate()
        .map(|(j, entry)| {
            let mut t = &f.partial_derivative(entry.source).expect("in range")
                * &f.partial_derivative(j + 1).expect("in range");
            if entry.sign < 0 {
                t = t.negate();
            }
            t
        })
        .collect();
    let base = terms.iter().fold(Poly::zero(nvars), |acc, t| &acc + t);
    let mut examined = 0usize;
    for size in 1..=pattern.len() {
        let mut best: Option<Vec<i8>> = None;
        subsets(pattern.len(), size, |subset| {
            examined += 1;
            if examined > FLIP_SEARCH_BUDGET {
                return false;
            }
            // residue(S) = base - 2 * sum_{j in S} terms[j]
            let mut residue = base.clone();
            for &j in subset {
                residue = &residue - &terms[j].scale(&rat_int(2));
            }
            if residue.is_zero() {
                let mut signs: Vec<i8> = pattern.iter().map(|e| e.sign).collect();
                for &j in subset {
                    signs[j] = -signs[j];
                }
                if best.as_ref().map_or(true, |b| signs < *b) {
                    best = Some(signs);
                }
            }
            true
        });
        if let Some(signs) = best {
            return Some(
                pattern
                    .iter()
                    .zip(signs)
                    .map(|(e, sign)| SignedPartial {
                        source: e.source,
                        sign,
                    })
                    .collect(),
            );
        }
        if examined > FLIP_SEARCH_BUDGET {
            return None;
        }
    }
    None
}

/// Builds the `2n - 1` displayed pairing patterns for `f` on `C^{2n}`,
/// validates each against `sum_j X_j d_j f = 0`, and appends a minimal
/// sign-flip repair for every printed pattern that fails.
pub fn hamiltonian_fields(f: &Poly, n2: usize) -> Result<Vec<HamiltonianCandidate>, FamilyError> {
    if n2 < 4 || n2 % 2 != 0 {
        return Err(FamilyError::BadAmbient { n2 });
    }
    if f.nvars() != n2 + 1 {
        return Err(FamilyError::NvarsMismatch {
            expected: n2 + 1,
            got: f.nvars(),
        });
    }
    if f.terms().any(|(m, _)| m.exponents()[0] != 0) {
        return Err(FamilyError::UsesHomogenizingVariable);
    }
    let mut out = Vec::new();
    for i in 1..=(n2 as u32 - 1) {
        let pattern = printed_pattern(i, n2);
        let (field, residue, valid) = pattern_data(f, &pattern);
        let need_repair = !valid;
        out.push(HamiltonianCandidate {
            index: i,
            pattern: pattern.clone(),
            field,
            residue,
            valid,
            corrected: false,
        });
        if need_repair {
            if let Some(repaired) = minimal_flip_repair(f, &pattern) {
                let (field, residue, valid) = pattern_data(f, &repaired);
                debug_assert!(valid);
                out.push(HamiltonianCandidate {
                    index: i,
                    pattern: repaired,
                    field,
                    residue,
                    valid,
                    corrected: true,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{contract, radial_field};
    use crate::poly::Homogeneity;
    use crate::projective::{descend_form, fields_distribution};
    use crate::rat;

    fn sum_of_squares(n2: usize) -> Poly {
        (1..=n2).fold(Poly::zero(n2 + 1), |acc, i| {
            &acc + &var(n2 + 1, i).pow(2)
        })
    }

    #[test]
    fn antisym_reproduces_displayed_expansion() {
        let (omega, x) = antisym_example(1).unwrap();
        let n = 4;
        assert_eq!(omega.component(&[0]).unwrap(), &var(n, 3).pow(2));
        assert_eq!(
            omega.component(&[1]).unwrap(),
            &(&var(n, 2).pow(2) + &(&var(n, 0) * &var(n, 3)))
        );
        assert_eq!(
            omega.component(&[2]).unwrap(),
            &(&var(n, 1) * &var(n, 2)).negate()
        );
        assert_eq!(
            omega.component(&[3]).unwrap(),
            &(&(&var(n, 0) * &var(n, 3)) + &(&var(n, 0) * &var(n, 1))).negate()
        );
        assert_eq!(x.component(&[2]).unwrap(), &var(n, 3).pow(2));
        assert!(antisym_example(0).is_err());
    }

    #[test]
    fn antisym_invariants_up_to_k5() {
        for k in 1..=5 {
            let (omega, x) = antisym_example(k).unwrap();
            // i_theta omega = 0 because the matrix is antisymmetric
            assert!(contract(&radial_field(4), &omega).unwrap().is_zero());
            // the displayed field is tangent
            assert!(contract(&x, &omega).unwrap().is_zero());
            let dist = descend_form(omega, 3).unwrap();
            assert_eq!(dist.degree(), k);
            assert_eq!(dist.twist(), k as i64 + 2);
            let fields = fields_distribution(alloc::vec![x], 3).unwrap();
            assert_eq!(fields.degrees(), &[k + 1]);
        }
    }

    #[test]
    fn homogenize_examples() {
        // already homogeneous: unchanged
        let n2 = 4;
        let f = &var(n2 + 1, 1).pow(2) + &var(n2 + 1, 2).pow(2);
        assert_eq!(homogenize(&f, 2).unwrap(), f);
        // f = z1^2 + z2 -> F = z1^2 + z0 z2
        let g = &var(n2 + 1, 1).pow(2) + &var(n2 + 1, 2);
        let big = homogenize(&g, 2).unwrap();
        assert_eq!(
            big,
            &var(n2 + 1, 1).pow(2) + &(&var(n2 + 1, 0) * &var(n2 + 1, 2))
        );
        assert_eq!(big.homogeneous_degree(), Homogeneity::Homogeneous(2));
        // dehomogenization round trip: F(1, z) = f(z)
        let point = [
            rat(1, 1),
            rat(2, 3),
            rat(-1, 2),
            rat(5, 1),
            rat(-3, 7),
        ];
        assert_eq!(
            big.evaluate(&point).unwrap(),
            g.evaluate(&point).unwrap()
        );
    }

    #[test]
    fn homogenize_rejects_bad_input() {
        let n2 = 4;
        let with_const = &var(n2 + 1, 1).pow(2) + &Poly::one(n2 + 1);
        assert!(matches!(
            homogenize(&with_const, 2),
            Err(FamilyError::NonzeroConstantTerm)
        ));
        let with_z0 = &var(n2 + 1, 1).pow(2) + &var(n2 + 1, 0);
        assert!(matches!(
            homogenize(&with_z0, 2),
            Err(FamilyError::UsesHomogenizingVariable)
        ));
        let f = var(n2 + 1, 1).pow(2);
        assert!(matches!(
            homogenize(&f, 3),
            Err(FamilyError::WrongDegree { expected: 3, .. })
        ));
    }

    #[test]
    fn kupka_form_degree_and_euler() {
        let f = sum_of_squares(4);
        let dist = kupka_form(&f, 2, 4).unwrap();
        assert_eq!(dist.degree(), 1);
        assert_eq!(dist.codim(), 1);
        assert!(contract(&radial_field(5), dist.omega()).unwrap().is_zero());
        // mixed-degree f still satisfies the Euler relation after homogenizing
        let g = &(&var(5, 1).pow(2) + &(&var(5, 2) * &var(5, 3))) + &var(5, 4);
        let dist = kupka_form(&g, 2, 4).unwrap();
        assert_eq!(dist.degree(), 1);
    }

    #[test]
    fn printed_patterns_match_display() {
        // H1 = (-d2, d1, -d4, d3), H2 = (-d3, d4, -d1, d2), H3 = (-d4, d3, -d2, d1)
        let p1 = printed_pattern(1, 4);
        assert_eq!(
            p1.iter().map(|e| (e.source, e.sign)).collect::<Vec<_>>(),
            alloc::vec![(2, -1), (1, 1), (4, -1), (3, 1)]
        );
        let p2 = printed_pattern(2, 4);
        assert_eq!(
            p2.iter().map(|e| (e.source, e.sign)).collect::<Vec<_>>(),
            alloc::vec![(3, -1), (4, 1), (1, -1), (2, 1)]
        );
        let p3 = printed_pattern(3, 4);
        assert_eq!(
            p3.iter().map(|e| (e.source, e.sign)).collect::<Vec<_>>(),
            alloc::vec![(4, -1), (3, 1), (2, -1), (1, 1)]
        );
        // on C^6 the last field reverses everything
        let p5 = printed_pattern(5, 6);
        assert_eq!(
            p5.iter().map(|e| (e.source, e.sign)).collect::<Vec<_>>(),
            alloc::vec![(6, -1), (5, 1), (4, -1), (3, 1), (2, -1), (1, 1)]
        );
        // H1 on C^6 keeps pairing the tail
        let p1 = printed_pattern(1, 6);
        assert_eq!(
            p1.iter().map(|e| (e.source, e.sign)).collect::<Vec<_>>(),
            alloc::vec![(2, -1), (1, 1), (4, -1), (3, 1), (6, -1), (5, 1)]
        );
    }

    #[test]
    fn hamiltonian_validation_and_repair() {
        let f = sum_of_squares(4);
        let candidates = hamiltonian_fields(&f, 4).unwrap();
        // H1 and H3 validate as printed; H2 fails and gets a repair
        let printed: Vec<&HamiltonianCandidate> =
            candidates.iter().filter(|c| !c.corrected).collect();
        assert_eq!(printed.len(), 3);
        assert!(printed[0].valid);
        assert!(!printed[1].valid);
        assert!(printed[2].valid);
        // the printed H2 residue is -2 d1f d3f + 2 d2f d4f = -8 z1 z3 + 8 z2 z4
        let d = |i: usize| f.partial_derivative(i).unwrap();
        let expected = &(&d(2) * &d(4)).scale(&rat_int(2))
            - &(&d(1) * &d(3)).scale(&rat_int(2));
        assert_eq!(printed[1].residue, expected);
        let corrected: Vec<&HamiltonianCandidate> =
            candidates.iter().filter(|c| c.corrected).collect();
        assert_eq!(corrected.len(), 1);
        assert_eq!(corrected[0].index, 2);
        assert!(corrected[0].valid);
        assert_eq!(
            corrected[0]
                .pattern
                .iter()
                .map(|e| (e.source, e.sign))
                .collect::<Vec<_>>(),
            alloc::vec![(3, -1), (4, -1), (1, 1), (2, 1)]
        );
    }

    #[test]
    fn odd_patterns_valid_for_arbitrary_f() {
        // telescoping holds whatever f is
        let n2 = 4;
        let f = &(&var(5, 1).pow(3) + &(&var(5, 2) * &var(5, 4).pow(2)))
            + &(&var(5, 3) * &var(5, 1));
        let candidates = hamiltonian_fields(&f, n2).unwrap();
        for c in candidates.iter().filter(|c| c.index % 2 == 1 && !c.corrected) {
            assert!(c.valid, "odd pattern {} must validate", c.index);
        }
    }
}
