//! Validation of projective distributions and the associated degree and
//! line-bundle arithmetic.
//!
//! A polynomial form on `C^{n+1}` descends to `P^n` exactly when all its
//! coefficients are homogeneous of one degree and it is annihilated by the
//! radial field (`i_theta omega = 0`). The degree of the distribution is that
//! common coefficient degree minus one.

use alloc::vec::Vec;
use core::fmt;

use crate::exterior::{contract, radial_field, Form, MultiVector};
use crate::poly::{Homogeneity, Poly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistributionError {
    ZeroForm,
    /// Coefficients are not homogeneous of a single common degree.
    NotHomogeneous,
    /// `i_theta omega != 0`; the offending residue is attached.
    EulerRelationFails { residue: Form },
    /// Form degree outside `1..=n-1`.
    FormDegreeOutOfRange { p: usize, n: usize },
    NvarsMismatch { expected: usize, got: usize },
    /// A generator is a polynomial multiple of the radial field.
    RadialMultiple { index: usize },
    TooManyFields { k: usize, n: usize },
    NoGenerators,
    /// `(k+1)^{n+1} - (-1)^{n+1}` is not divisible by `k+2`.
    NonDivisibleCount { n: u32, k: u32 },
}

impl fmt::Display for DistributionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistributionError::ZeroForm => write!(f, "the zero form defines no distribution"),
            DistributionError::NotHomogeneous => {
                write!(f, "coefficients are not homogeneous of a common degree")
            }
            DistributionError::EulerRelationFails { .. } => {
                write!(f, "Euler relation fails: i_theta omega != 0")
            }
            DistributionError::FormDegreeOutOfRange { p, n } => {
                write!(f, "form degree {p} outside 1..={} on P^{n}", n.saturating_sub(1))
            }
            DistributionError::NvarsMismatch { expected, got } => {
                write!(f, "expected {expected} variables, got {got}")
            }
            DistributionError::RadialMultiple { index } => {
                write!(f, "generator {index} is a polynomial multiple of the radial field")
            }
            DistributionError::TooManyFields { k, n } => {
                write!(f, "{k} generators on P^{n}: need k < n")
            }
            DistributionError::NoGenerators => write!(f, "no generators supplied"),
            DistributionError::NonDivisibleCount { n, k } => {
                write!(f, "(k+1)^(n+1) - (-1)^(n+1) not divisible by k+2 for n={n}, k={k}")
            }
        }
    }
}

impl core::error::Error for DistributionError {}

/// A validated distribution on `P^n` presented by its defining form.
///
/// Invariants: all components homogeneous of degree `degree + 1`,
/// `i_theta omega = 0`, and `twist = degree + codim + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormDistribution {
    n: usize,
    codim: usize,
    degree: u32,
    twist: i64,
    omega: Form,
}

impl FormDistribution {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Codimension = degree of the defining form.
    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Exponent of the twisting line bundle `O(degree + codim + 1)`.
    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn omega(&self) -> &Form {
        &self.omega
    }

    /// Generators of the coefficient ideal cutting out the singular locus.
    pub fn singular_ideal(&self) -> Vec<Poly> {
        self.omega.components().map(|(_, p)| p.clone()).collect()
    }
}

/// Validates that `omega` descends to a distribution on `P^n`.
pub fn descend_form(omega: Form, n: usize) -> Result<FormDistribution, DistributionError> {
    if omega.nvars() != n + 1 {
        return Err(DistributionError::NvarsMismatch {
            expected: n + 1,
            got: omega.nvars(),
        });
    }
    let p = omega.degree();
    if p < 1 || p > n.saturating_sub(1) {
        return Err(DistributionError::FormDegreeOutOfRange { p, n });
    }
    if omega.is_zero() {
        return Err(DistributionError::ZeroForm);
    }
    let coeff_degree = match omega.coefficient_degree() {
        Homogeneity::Homogeneous(e) => e,
        Homogeneity::Zero => return Err(DistributionError::ZeroForm),
        Homogeneity::Inhomogeneous => return Err(DistributionError::NotHomogeneous),
    };
    let residue = contract(&radial_field(n + 1), &omega).expect("same nvars");
    if !residue.is_zero() {
        return Err(DistributionError::EulerRelationFails { residue });
    }
    // A nonzero constant-coefficient form always has i_theta omega != 0,
    // so coeff_degree >= 1 here.
    if coeff_degree == 0 {
        return Err(DistributionError::ZeroForm);
    }
    let degree = coeff_degree - 1;
    Ok(FormDistribution {
        n,
        codim: p,
        degree,
        twist: degree as i64 + p as i64 + 1,
        omega,
    })
}

/// A distribution on `P^n` presented by homogeneous tangent vector fields,
/// the split-tangent-sheaf case. The degree is the sum of the generator
/// degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldsDistribution {
    n: usize,
    generators: Vec<MultiVector>,
    degrees: Vec<u32>,
    total_degree: u32,
}

impl FieldsDistribution {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[MultiVector] {
        &self.generators
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn total_degree(&self) -> u32 {
        self.total_degree
    }

    /// Components of `X_1 ^ ... ^ X_k ^ theta`; their common zeros are the
    /// points where the projective tangent directions drop rank.
    pub fn singular_ideal(&self) -> Vec<Poly> {
        fields_singular_ideal(&self.generators).expect("validated generators")
    }
}

/// Validates a list of homogeneous fields as a split-tangent distribution.
pub fn fields_distribution(
    fields: Vec<MultiVector>,
    n: usize,
) -> Result<FieldsDistribution, DistributionError> {
    if fields.is_empty() {
        return Err(DistributionError::NoGenerators);
    }
    if fields.len() >= n {
        return Err(DistributionError::TooManyFields {
            k: fields.len(),
            n,
        });
    }
    let theta = radial_field(n + 1);
    let mut degrees = Vec::with_capacity(fields.len());
    for (index, x) in fields.iter().enumerate() {
        if x.nvars() != n + 1 {
            return Err(DistributionError::NvarsMismatch {
                expected: n + 1,
                got: x.nvars(),
            });
        }
        let degree = match x.coefficient_degree() {
            Homogeneity::Homogeneous(e) => e,
            Homogeneity::Zero => return Err(DistributionError::RadialMultiple { index }),
            Homogeneity::Inhomogeneous => return Err(DistributionError::NotHomogeneous),
        };
        // X ^ theta = 0 exactly when X = p(z) * theta
        if x.wedge(&theta).expect("same nvars").is_zero() {
            return Err(DistributionError::RadialMultiple { index });
        }
        degrees.push(degree);
    }
    let total_degree = degrees.iter().sum();
    Ok(FieldsDistribution {
        n,
        generators: fields,
        degrees,
        total_degree,
    })
}

/// Raw singular ideal `X_1 ^ ... ^ X_k ^ theta` of an unvalidated family;
/// degenerate families (e.g. the radial field itself) yield all-zero
/// generators.
pub fn fields_singular_ideal(fields: &[MultiVector]) -> Result<Vec<Poly>, DistributionError> {
    let first = fields.first().ok_or(DistributionError::NoGenerators)?;
    let nvars = first.nvars();
    let mut acc = radial_field(nvars);
    for x in fields.iter().rev() {
        if x.nvars() != nvars {
            return Err(DistributionError::NvarsMismatch {
                expected: nvars,
                got: x.nvars(),
            });
        }
        acc = x.wedge(&acc).expect("same nvars");
    }
    Ok(acc.components().map(|(_, p)| p.clone()).collect())
}

/// `det(tangent sheaf) = O(k - d)` for a dimension-`k`, degree-`d`
/// distribution with small singular set.
pub fn det_tangent_twist(k: i64, d: i64) -> i64 {
    k - d
}

/// Twist of the canonical sheaf of a Baum-Kupka component:
/// `Omega^k_K = O_K(deg G - dim F - 1)`.
pub fn kupka_canonical_twist(deg_g: i64, dim_f: i64) -> i64 {
    deg_g - dim_f - 1
}

/// Number of singular points of a generic degree-`k` codimension-one
/// distribution on `P^n`: `((k+1)^{n+1} - (-1)^{n+1}) / (k+2)`.
pub fn generic_codim1_singular_count(n: u32, k: u32) -> Result<u128, DistributionError> {
    let base = (k as i128) + 1;
    let mut power = 1i128;
    for _ in 0..(n + 1) {
        power = power
            .checked_mul(base)
            .ok_or(DistributionError::NonDivisibleCount { n, k })?;
    }
    let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
    let numerator = power - sign;
    let denominator = (k as i128) + 2;
    if numerator % denominator != 0 {
        return Err(DistributionError::NonDivisibleCount { n, k });
    }
    Ok((numerator / denominator) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{contract, radial_field, Form, MultiVector};
    use crate::poly::Poly;

    fn var(n: usize, i: usize) -> Poly {
        Poly::variable(n, i).unwrap()
    }

    #[test]
    fn degree_zero_form_on_p2() {
        // z1 dz0 - z0 dz1 descends with degree 0 and twist 2
        let omega = Form::from_components(
            3,
            1,
            [(alloc::vec![0], var(3, 1)), (alloc::vec![1], var(3, 0).negate())],
        )
        .unwrap();
        let dist = descend_form(omega, 2).unwrap();
        assert_eq!(dist.degree(), 0);
        assert_eq!(dist.codim(), 1);
        assert_eq!(dist.twist(), 2);
        assert!(contract(&radial_field(3), dist.omega()).unwrap().is_zero());
    }

    #[test]
    fn euler_failure_carries_residue() {
        let omega = Form::basis(3, &[0]).unwrap();
        match descend_form(omega, 2) {
            Err(DistributionError::EulerRelationFails { residue }) => {
                assert_eq!(residue.component(&[]).unwrap(), &var(3, 0));
            }
            other => panic!("expected Euler failure, got {other:?}"),
        }
    }

    #[test]
    fn zero_and_inhomogeneous_rejected() {
        assert!(matches!(
            descend_form(Form::zero(3, 1), 2),
            Err(DistributionError::ZeroForm)
        ));
        let mixed = Form::from_components(
            3,
            1,
            [(alloc::vec![0], var(3, 1)), (alloc::vec![1], var(3, 0).pow(2).negate())],
        )
        .unwrap();
        assert!(matches!(
            descend_form(mixed, 2),
            Err(DistributionError::NotHomogeneous)
        ));
        assert!(matches!(
            descend_form(Form::basis(3, &[0, 1]).unwrap(), 2),
            Err(DistributionError::FormDegreeOutOfRange { p: 2, n: 2 })
        ));
    }

    #[test]
    fn constant_field_has_degree_zero() {
        let d0 = MultiVector::basis(3, &[0]).unwrap();
        let dist = fields_distribution(alloc::vec![d0], 2).unwrap();
        assert_eq!(dist.degrees(), &[0]);
        assert_eq!(dist.total_degree(), 0);
        assert_eq!(dist.dim(), 1);
    }

    #[test]
    fn radial_multiples_rejected() {
        let theta = radial_field(3);
        assert!(matches!(
            fields_distribution(alloc::vec![theta.clone()], 2),
            Err(DistributionError::RadialMultiple { index: 0 })
        ));
        let scaled = theta.scale_poly(&var(3, 1));
        assert!(matches!(
            fields_distribution(alloc::vec![scaled], 2),
            Err(DistributionError::RadialMultiple { index: 0 })
        ));
        // degenerate raw ideal: all generators vanish
        let ideal = fields_singular_ideal(&[radial_field(3)]).unwrap();
        assert!(ideal.iter().all(Poly::is_zero));
    }

    #[test]
    fn too_many_fields_rejected() {
        let fields = alloc::vec![
            MultiVector::basis(3, &[0]).unwrap(),
            MultiVector::basis(3, &[1]).unwrap(),
        ];
        assert!(matches!(
            fields_distribution(fields, 2),
            Err(DistributionError::TooManyFields { k: 2, n: 2 })
        ));
    }

    #[test]
    fn singular_ideal_of_constant_field() {
        // X = d0 on P^2: components of X ^ theta are {(0,1): z1, (0,2): z2}
        let d0 = MultiVector::basis(3, &[0]).unwrap();
        let dist = fields_distribution(alloc::vec![d0], 2).unwrap();
        let ideal = dist.singular_ideal();
        assert_eq!(ideal.len(), 2);
        assert!(ideal.contains(&var(3, 1)));
        assert!(ideal.contains(&var(3, 2)));
    }

    #[test]
    fn twist_arithmetic() {
        assert_eq!(det_tangent_twist(1, 2), -1);
        assert_eq!(kupka_canonical_twist(1, 1), -1);
        assert_eq!(generic_codim1_singular_count(3, 1).unwrap(), 5);
        assert_eq!(generic_codim1_singular_count(2, 2).unwrap(), 7);
    }

    #[test]
    fn generic_count_divisibility_sweep() {
        for k in 1..=6 {
            for n in 2..=6 {
                generic_codim1_singular_count(n, k).unwrap();
            }
        }
    }
}
