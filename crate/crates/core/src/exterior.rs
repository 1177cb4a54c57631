//! Exterior calculus of polynomial differential forms and polynomial
//! multivector fields on `C^{n+1}`.
//!
//! Basis monomials are strictly increasing index tuples; the sign convention
//! is fixed once and for all as "sort the concatenated tuple and count
//! transpositions". Zero results keep their degree explicitly (an empty
//! component map), they are never a special null value.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::poly::{Homogeneity, Poly, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExteriorError {
    NvarsMismatch { left: usize, right: usize },
    IndexOutOfRange { index: usize, nvars: usize },
    /// Operation defined only for vector fields (q = 1).
    NotAVectorField { degree: usize },
}

impl fmt::Display for ExteriorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExteriorError::NvarsMismatch { left, right } => {
                write!(f, "variable-count mismatch: {left} vs {right}")
            }
            ExteriorError::IndexOutOfRange { index, nvars } => {
                write!(f, "index {index} out of range for {nvars} variables")
            }
            ExteriorError::NotAVectorField { degree } => {
                write!(f, "expected a vector field (degree 1), got degree {degree}")
            }
        }
    }
}

impl core::error::Error for ExteriorError {}

/// Sorts `indices` in place, returning the permutation sign, or `None` when
/// an index repeats.
fn sort_sign(indices: &mut [u8]) -> Option<i8> {
    let mut sign = 1i8;
    for i in 1..indices.len() {
        let mut j = i;
        while j > 0 && indices[j - 1] >= indices[j] {
            if indices[j - 1] == indices[j] {
                return None;
            }
            indices.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    Some(sign)
}

/// Merge of two strictly increasing tuples with the wedge sign; `None` when
/// they intersect.
fn merge_sign(a: &[u8], b: &[u8]) -> Option<(i8, Vec<u8>)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut sign = 1i8;
    let mut ai = 0;
    let mut bi = 0;
    while ai < a.len() && bi < b.len() {
        if a[ai] == b[bi] {
            return None;
        }
        if a[ai] < b[bi] {
            out.push(a[ai]);
            ai += 1;
        } else {
            // b[bi] jumps over the remaining entries of a
            if (a.len() - ai) % 2 == 1 {
                sign = -sign;
            }
            out.push(b[bi]);
            bi += 1;
        }
    }
    out.extend_from_slice(&a[ai..]);
    out.extend_from_slice(&b[bi..]);
    Some((sign, out))
}

type Components = BTreeMap<Vec<u8>, Poly>;

fn insert_component(components: &mut Components, key: Vec<u8>, value: Poly) {
    if value.is_zero() {
        return;
    }
    match components.entry(key) {
        alloc::collections::btree_map::Entry::Vacant(e) => {
            e.insert(value);
        }
        alloc::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get() + &value;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

fn wedge_components(a: &Components, b: &Components) -> Components {
    let mut out = Components::new();
    for (ia, pa) in a {
        for (ib, pb) in b {
            if let Some((sign, key)) = merge_sign(ia, ib) {
                let mut prod = pa * pb;
                if sign < 0 {
                    prod = prod.negate();
                }
                insert_component(&mut out, key, prod);
            }
        }
    }
    out
}

fn add_components(a: &Components, b: &Components, negate_b: bool) -> Components {
    let mut out = a.clone();
    for (k, v) in b {
        let v = if negate_b { v.negate() } else { v.clone() };
        insert_component(&mut out, k.clone(), v);
    }
    out
}

fn scale_components(a: &Components, factor: &Poly) -> Components {
    let mut out = Components::new();
    for (k, v) in a {
        insert_component(&mut out, k.clone(), v * factor);
    }
    out
}

/// Contraction by the coordinate field `d/dz{index}`.
fn contract_unit(a: &Components, index: u8) -> Components {
    let mut out = Components::new();
    for (key, p) in a {
        if let Some(pos) = key.iter().position(|&i| i == index) {
            let mut reduced = key.clone();
            reduced.remove(pos);
            let signed = if pos % 2 == 0 { p.clone() } else { p.negate() };
            insert_component(&mut out, reduced, signed);
        }
    }
    out
}

/// Common homogeneous coefficient degree of a component map.
fn common_degree(components: &Components) -> Homogeneity {
    let mut degree: Option<u32> = None;
    for p in components.values() {
        match p.homogeneous_degree() {
            Homogeneity::Homogeneous(e) => match degree {
                None => degree = Some(e),
                Some(d) if d == e => {}
                Some(_) => return Homogeneity::Inhomogeneous,
            },
            Homogeneity::Zero => {}
            Homogeneity::Inhomogeneous => return Homogeneity::Inhomogeneous,
        }
    }
    match degree {
        None => Homogeneity::Zero,
        Some(d) => Homogeneity::Homogeneous(d),
    }
}

macro_rules! alternating_impl {
    ($name:ident) => {
        impl $name {
            pub fn zero(nvars: usize, degree: usize) -> Self {
                $name {
                    nvars,
                    degree,
                    components: Components::new(),
                }
            }

            /// Builds from `(indices, coefficient)` pairs; indices need not be
            /// sorted, the wedge sign is applied. Pairs with repeated indices
            /// contribute nothing.
            pub fn from_components<I>(
                nvars: usize,
                degree: usize,
                parts: I,
            ) -> Result<Self, ExteriorError>
            where
                I: IntoIterator<Item = (Vec<usize>, Poly)>,
            {
                let mut components = Components::new();
                for (indices, coeff) in parts {
                    if indices.len() != degree {
                        return Err(ExteriorError::IndexOutOfRange {
                            index: indices.len(),
                            nvars: degree,
                        });
                    }
                    if coeff.nvars() != nvars {
                        return Err(ExteriorError::NvarsMismatch {
                            left: coeff.nvars(),
                            right: nvars,
                        });
                    }
                    let mut key = Vec::with_capacity(indices.len());
                    for &i in &indices {
                        if i >= nvars {
                            return Err(ExteriorError::IndexOutOfRange { index: i, nvars });
                        }
                        key.push(i as u8);
                    }
                    match sort_sign(&mut key) {
                        None => {}
                        Some(1) => insert_component(&mut components, key, coeff),
                        Some(_) => insert_component(&mut components, key, coeff.negate()),
                    }
                }
                Ok($name {
                    nvars,
                    degree,
                    components,
                })
            }

            /// Single unit basis element.
            pub fn basis(nvars: usize, indices: &[usize]) -> Result<Self, ExteriorError> {
                Self::from_components(
                    nvars,
                    indices.len(),
                    [(indices.to_vec(), Poly::one(nvars))],
                )
            }

            pub fn nvars(&self) -> usize {
                self.nvars
            }

            pub fn degree(&self) -> usize {
                self.degree
            }

            pub fn is_zero(&self) -> bool {
                self.components.is_empty()
            }

            pub fn num_components(&self) -> usize {
                self.components.len()
            }

            /// Components in lexicographic tuple order.
            pub fn components(&self) -> impl Iterator<Item = (&[u8], &Poly)> {
                self.components.iter().map(|(k, v)| (k.as_slice(), v))
            }

            pub fn component(&self, indices: &[usize]) -> Option<&Poly> {
                let key: Vec<u8> = indices.iter().map(|&i| i as u8).collect();
                self.components.get(&key)
            }

            fn check_compatible(&self, other: &Self) -> Result<(), ExteriorError> {
                if self.nvars != other.nvars {
                    return Err(ExteriorError::NvarsMismatch {
                        left: self.nvars,
                        right: other.nvars,
                    });
                }
                Ok(())
            }

            /// Sum; both sides must have equal degree and nvars.
            pub fn checked_add(&self, other: &Self) -> Result<Self, ExteriorError> {
                self.check_compatible(other)?;
                debug_assert_eq!(self.degree, other.degree);
                Ok($name {
                    nvars: self.nvars,
                    degree: self.degree,
                    components: add_components(&self.components, &other.components, false),
                })
            }

            pub fn checked_sub(&self, other: &Self) -> Result<Self, ExteriorError> {
                self.check_compatible(other)?;
                debug_assert_eq!(self.degree, other.degree);
                Ok($name {
                    nvars: self.nvars,
                    degree: self.degree,
                    components: add_components(&self.components, &other.components, true),
                })
            }

            pub fn negate(&self) -> Self {
                $name {
                    nvars: self.nvars,
                    degree: self.degree,
                    components: self
                        .components
                        .iter()
                        .map(|(k, v)| (k.clone(), v.negate()))
                        .collect(),
                }
            }

            /// Multiplies every component by a polynomial.
            pub fn scale_poly(&self, factor: &Poly) -> Self {
                $name {
                    nvars: self.nvars,
                    degree: self.degree,
                    components: scale_components(&self.components, factor),
                }
            }

            pub fn scale(&self, factor: &Rat) -> Self {
                self.scale_poly(&Poly::constant(self.nvars, factor.clone()))
            }

            /// Exterior product. Degrees add; if they exceed `nvars` the
            /// result is the zero element of that degree.
            pub fn wedge(&self, other: &Self) -> Result<Self, ExteriorError> {
                self.check_compatible(other)?;
                Ok($name {
                    nvars: self.nvars,
                    degree: self.degree + other.degree,
                    components: wedge_components(&self.components, &other.components),
                })
            }

            /// Common homogeneous degree of all coefficients.
            pub fn coefficient_degree(&self) -> Homogeneity {
                common_degree(&self.components)
            }
        }
    };
}

/// Polynomial differential p-form on `C^{nvars}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    nvars: usize,
    degree: usize,
    components: Components,
}

/// Polynomial q-vector field on `C^{nvars}`; `q = 1` is a vector field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiVector {
    nvars: usize,
    degree: usize,
    components: Components,
}

alternating_impl!(Form);
alternating_impl!(MultiVector);

impl Form {
    /// Standard exterior derivative; linear, `d(d(a)) = 0`.
    pub fn exterior_derivative(&self) -> Form {
        let mut components = Components::new();
        for (key, p) in &self.components {
            for i in 0..self.nvars as u8 {
                if key.contains(&i) {
                    continue;
                }
                let dp = p.partial_derivative(i as usize).expect("index in range");
                if dp.is_zero() {
                    continue;
                }
                let pos = key.iter().take_while(|&&j| j < i).count();
                let mut extended = key.clone();
                extended.insert(pos, i);
                let signed = if pos % 2 == 0 { dp } else { dp.negate() };
                insert_component(&mut components, extended, signed);
            }
        }
        Form {
            nvars: self.nvars,
            degree: self.degree + 1,
            components,
        }
    }
}

impl MultiVector {
    /// Lie bracket of two vector fields:
    /// `[X,Y]_i = sum_j (X_j d_j Y_i - Y_j d_j X_i)`.
    pub fn lie_bracket(&self, other: &MultiVector) -> Result<MultiVector, ExteriorError> {
        self.check_compatible(other)?;
        if self.degree != 1 {
            return Err(ExteriorError::NotAVectorField {
                degree: self.degree,
            });
        }
        if other.degree != 1 {
            return Err(ExteriorError::NotAVectorField {
                degree: other.degree,
            });
        }
        let mut components = Components::new();
        for i in 0..self.nvars {
            let mut acc = Poly::zero(self.nvars);
            for j in 0..self.nvars {
                let xj = self.components.get(&vec![j as u8]);
                let yj = other.components.get(&vec![j as u8]);
                if let (Some(xj), Some(yi)) = (xj, other.components.get(&vec![i as u8])) {
                    acc = &acc + &(xj * &yi.partial_derivative(j).expect("in range"));
                }
                if let (Some(yj), Some(xi)) = (yj, self.components.get(&vec![i as u8])) {
                    acc = &acc - &(yj * &xi.partial_derivative(j).expect("in range"));
                }
            }
            insert_component(&mut components, vec![i as u8], acc);
        }
        Ok(MultiVector {
            nvars: self.nvars,
            degree: 1,
            components,
        })
    }
}

/// Interior product of a form by a multivector.
///
/// For `q = 1` this is the antiderivation
/// `i_X(dz_{i1}^...^dz_{ip}) = sum_j (-1)^(j-1) X_{ij} dz_{i1}^...(omit j)...^dz_{ip}`.
/// For `q > 1` each basis q-vector `d_{j1}^...^d_{jq}` acts as the iterated
/// contraction `i_{d_{j1}} o ... o i_{d_{jq}}` (leftmost applied last),
/// extended bilinearly. When `q` exceeds the form degree the result is zero.
pub fn contract(v: &MultiVector, a: &Form) -> Result<Form, ExteriorError> {
    if v.nvars != a.nvars {
        return Err(ExteriorError::NvarsMismatch {
            left: v.nvars,
            right: a.nvars,
        });
    }
    let out_degree = a.degree.saturating_sub(v.degree);
    let mut components = Components::new();
    for (key, coeff) in &v.components {
        // iterated contraction, rightmost index applied first
        let mut acc = a.components.clone();
        for &idx in key.iter().rev() {
            acc = contract_unit(&acc, idx);
            if acc.is_empty() {
                break;
            }
        }
        for (k, p) in acc {
            insert_component(&mut components, k, &p * coeff);
        }
    }
    Ok(Form {
        nvars: a.nvars,
        degree: out_degree,
        components,
    })
}

/// The radial (Euler) vector field `z0 d/dz0 + ... + z{n} d/dz{n}`.
pub fn radial_field(nvars: usize) -> MultiVector {
    MultiVector::from_components(
        nvars,
        1,
        (0..nvars).map(|i| {
            (
                vec![i],
                Poly::variable(nvars, i).expect("index in range"),
            )
        }),
    )
    .expect("valid components")
}

/// The volume form `dz0 ^ ... ^ dz{n}`.
pub fn volume_form(nvars: usize) -> Form {
    let indices: Vec<usize> = (0..nvars).collect();
    Form::basis(nvars, &indices).expect("valid indices")
}

fn write_components(
    f: &mut fmt::Formatter<'_>,
    components: &Components,
    basis_word: impl Fn(&mut fmt::Formatter<'_>, &[u8]) -> fmt::Result,
) -> fmt::Result {
    if components.is_empty() {
        return write!(f, "0");
    }
    for (i, (key, p)) in components.iter().enumerate() {
        if i > 0 {
            write!(f, " + ")?;
        }
        if key.is_empty() {
            write!(f, "{p}")?;
        } else {
            let one = p.num_terms() == 1
                && p.coefficient(&vec![0; p.nvars()])
                    .map(Rat::is_one)
                    .unwrap_or(false);
            if one {
                basis_word(f, key)?;
            } else {
                write!(f, "({p}) ")?;
                basis_word(f, key)?;
            }
        }
    }
    Ok(())
}

impl fmt::Display for Form {
    /// Text format `(P) dz0^dz2 + (Q) dz1^dz3`; `^` separates the wedge
    /// factors of a basis monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_components(f, &self.components, |f, key| {
            for (i, idx) in key.iter().enumerate() {
                if i > 0 {
                    write!(f, "^")?;
                }
                write!(f, "dz{idx}")?;
            }
            Ok(())
        })
    }
}

impl fmt::Display for MultiVector {
    /// Text format `(P) d/dz0 + (Q) d/dz1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_components(f, &self.components, |f, key| {
            for (i, idx) in key.iter().enumerate() {
                if i > 0 {
                    write!(f, "^")?;
                }
                write!(f, "d/dz{idx}")?;
            }
            Ok(())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Homogeneity;
    use crate::rat_int;
    use alloc::string::ToString;

    fn var(n: usize, i: usize) -> Poly {
        Poly::variable(n, i).unwrap()
    }

    #[test]
    fn wedge_anticommutes_on_basis() {
        let dz0 = Form::basis(2, &[0]).unwrap();
        let dz1 = Form::basis(2, &[1]).unwrap();
        let ab = dz0.wedge(&dz1).unwrap();
        assert_eq!(ab.component(&[0, 1]).unwrap(), &Poly::one(2));
        let ba = dz1.wedge(&dz0).unwrap();
        assert_eq!(ba.component(&[0, 1]).unwrap(), &Poly::one(2).negate());
        assert!(dz0.wedge(&dz0).unwrap().is_zero());
    }

    #[test]
    fn wedge_with_coefficients() {
        // (z1 dz0) ^ (z0 dz1^dz2) = z0*z1 dz0^dz1^dz2
        let n = 3;
        let a = Form::from_components(n, 1, [(vec![0], var(n, 1))]).unwrap();
        let b = Form::from_components(n, 2, [(vec![1, 2], var(n, 0))]).unwrap();
        let w = a.wedge(&b).unwrap();
        assert_eq!(w.num_components(), 1);
        assert_eq!(w.component(&[0, 1, 2]).unwrap(), &(&var(n, 0) * &var(n, 1)));
    }

    #[test]
    fn unsorted_basis_gets_signed() {
        let f = Form::basis(3, &[1, 0]).unwrap();
        assert_eq!(f.component(&[0, 1]).unwrap(), &Poly::one(3).negate());
        let g = Form::basis(3, &[1, 1]).unwrap();
        assert!(g.is_zero());
    }

    #[test]
    fn contract_radial_on_plane() {
        // i_theta(dz0^dz1) = z0 dz1 - z1 dz0 on C^2
        let theta = radial_field(2);
        let f = Form::basis(2, &[0, 1]).unwrap();
        let c = contract(&theta, &f).unwrap();
        assert_eq!(c.component(&[1]).unwrap(), &var(2, 0));
        assert_eq!(c.component(&[0]).unwrap(), &var(2, 1).negate());
    }

    #[test]
    fn contract_radial_volume_signs() {
        // component omitting index i carries (-1)^i z_i
        for n in 2..=5 {
            let c = contract(&radial_field(n), &volume_form(n)).unwrap();
            assert_eq!(c.num_components(), n);
            for i in 0..n {
                let key: Vec<usize> = (0..n).filter(|&j| j != i).collect();
                let expected = if i % 2 == 0 {
                    var(n, i)
                } else {
                    var(n, i).negate()
                };
                assert_eq!(c.component(&key).unwrap(), &expected);
            }
        }
    }

    #[test]
    fn exterior_derivative_basics() {
        // d(z1 dz0) = -dz0^dz1
        let a = Form::from_components(2, 1, [(vec![0], var(2, 1))]).unwrap();
        let da = a.exterior_derivative();
        assert_eq!(da.component(&[0, 1]).unwrap(), &Poly::one(2).negate());
        // d o d = 0 on a messier form
        let b = Form::from_components(
            4,
            1,
            [
                (vec![0], &var(4, 1).pow(3) + &var(4, 2)),
                (vec![3], &var(4, 0) * &var(4, 2)),
            ],
        )
        .unwrap();
        assert!(b.exterior_derivative().exterior_derivative().is_zero());
    }

    #[test]
    fn d_of_df_vanishes() {
        let n = 5;
        let f = (1..n).fold(Poly::zero(n), |acc, i| &acc + &var(n, i).pow(2));
        let zero_form = Form::from_components(n, 0, [(vec![], f)]).unwrap();
        let df = zero_form.exterior_derivative();
        assert!(!df.is_zero());
        assert!(df.exterior_derivative().is_zero());
    }

    #[test]
    fn lie_bracket_basics() {
        // [d0, z0 d1] = d1
        let n = 2;
        let x = MultiVector::from_components(n, 1, [(vec![0], Poly::one(n))]).unwrap();
        let y = MultiVector::from_components(n, 1, [(vec![1], var(n, 0))]).unwrap();
        let b = x.lie_bracket(&y).unwrap();
        assert_eq!(b, MultiVector::from_components(n, 1, [(vec![1], Poly::one(n))]).unwrap());
        // antisymmetry
        let c = y.lie_bracket(&x).unwrap();
        assert_eq!(c, b.negate());
    }

    #[test]
    fn radial_bracket_rescales_homogeneous_fields() {
        // [theta, X] = (e - 1) X for X with homogeneous degree-e components
        let n = 3;
        let x = MultiVector::from_components(
            n,
            1,
            [
                (vec![0], &var(n, 1) * &var(n, 2)),
                (vec![2], var(n, 0).pow(2)),
            ],
        )
        .unwrap();
        let b = radial_field(n).lie_bracket(&x).unwrap();
        assert_eq!(b, x.scale(&rat_int(1)));
        // degree-0 fields: [theta, d0] = -d0
        let c = MultiVector::basis(n, &[0]).unwrap();
        assert_eq!(
            radial_field(n).lie_bracket(&c).unwrap(),
            c.scale(&rat_int(-1))
        );
    }

    #[test]
    fn contraction_by_higher_multivector() {
        // i_{d0^d1}(dz0^dz1) = i_{d0} i_{d1} (dz0^dz1) = i_{d0}(-dz0) = -1
        let v = MultiVector::basis(2, &[0, 1]).unwrap();
        let f = Form::basis(2, &[0, 1]).unwrap();
        let c = contract(&v, &f).unwrap();
        assert_eq!(c.degree(), 0);
        assert_eq!(c.component(&[]).unwrap(), &Poly::one(2).negate());
        // q > p gives the zero form
        let g = Form::basis(2, &[0]).unwrap();
        assert!(contract(&v, &g).unwrap().is_zero());
    }

    #[test]
    fn euler_identity_for_forms() {
        // i_theta(dP) = deg(P) * P for homogeneous P
        let n = 4;
        let p = &(&var(n, 0) * &var(n, 3).pow(2)) - &(&var(n, 1) * &var(n, 2).pow(2));
        let dp = Form::from_components(n, 0, [(vec![], p.clone())])
            .unwrap()
            .exterior_derivative();
        let c = contract(&radial_field(n), &dp).unwrap();
        assert_eq!(c.component(&[]).unwrap(), &p.scale(&rat_int(3)));
    }

    #[test]
    fn coefficient_degree_detection() {
        let n = 3;
        let f = Form::from_components(n, 1, [(vec![0], var(n, 1)), (vec![1], var(n, 2))]).unwrap();
        assert_eq!(f.coefficient_degree(), Homogeneity::Homogeneous(1));
        let g = Form::from_components(n, 1, [(vec![0], var(n, 1)), (vec![1], Poly::one(n))])
            .unwrap();
        assert_eq!(g.coefficient_degree(), Homogeneity::Inhomogeneous);
        assert_eq!(
            Form::zero(n, 2).coefficient_degree(),
            Homogeneity::Zero
        );
    }

    #[test]
    fn display_forms_and_fields() {
        let n = 3;
        let f = Form::from_components(
            n,
            1,
            [(vec![0], var(n, 1)), (vec![2], Poly::one(n))],
        )
        .unwrap();
        assert_eq!(f.to_string(), "(z1) dz0 + dz2");
        let v = MultiVector::from_components(n, 1, [(vec![1], var(n, 0).negate())]).unwrap();
        assert_eq!(v.to_string(), "(-z0) d/dz1");
        assert_eq!(Form::zero(n, 2).to_string(), "0");
        let w = Form::basis(n, &[0, 2]).unwrap();
        assert_eq!(w.to_string(), "dz0^dz2");
    }

    #[test]
    fn nvars_mismatch_rejected() {
        let a = Form::basis(2, &[0]).unwrap();
        let b = Form::basis(3, &[0]).unwrap();
        assert!(a.wedge(&b).is_err());
    }
}
