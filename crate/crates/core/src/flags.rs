//! Flag verification: tangency, the contraction-chain identity, division of
//! forms by exact linear algebra, and the degree-inequality audit.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::exterior::{contract, radial_field, volume_form, Form, MultiVector};
use crate::poly::{Homogeneity, Monomial, Poly, Rat};
use crate::projective::{FieldsDistribution, FormDistribution};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlagError {
    NvarsMismatch { expected: usize, got: usize },
    AmbientMismatch { lower: usize, upper: usize },
    /// The flag pair needs `dim lower < dim upper`.
    DimensionMismatch { dim_lower: usize, dim_upper: usize },
    UpperNotCodimOne { codim: usize },
    TooManyFields { k: usize, n: usize },
    NotHomogeneous,
    /// Dividing would need a negative coefficient degree, i.e. the degree
    /// inequality `deg G <= deg F` fails for this pair.
    NegativeTargetDegree { theta: u32, omega: u32 },
    FormDegreeMismatch { theta: usize, omega: usize },
    ZeroDivisor,
    /// Tangency certificate is nonzero for a generator.
    TangencyFails { index: usize },
    /// Chain dimensions are not strictly increasing.
    NonChain { position: usize },
    PointLengthMismatch { expected: usize, got: usize },
}

impl fmt::Display for FlagError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlagError::NvarsMismatch { expected, got } => {
                write!(f, "expected {expected} variables, got {got}")
            }
            FlagError::AmbientMismatch { lower, upper } => {
                write!(f, "members live on different spaces: P^{lower} vs P^{upper}")
            }
            FlagError::DimensionMismatch {
                dim_lower,
                dim_upper,
            } => write!(
                f,
                "flag needs dim lower < dim upper, got {dim_lower} vs {dim_upper}"
            ),
            FlagError::UpperNotCodimOne { codim } => {
                write!(f, "upper member must have codimension 1, got {codim}")
            }
            FlagError::TooManyFields { k, n } => {
                write!(f, "{k} contraction fields on P^{n}: need k < n")
            }
            FlagError::NotHomogeneous => write!(f, "forms must have homogeneous coefficients"),
            FlagError::NegativeTargetDegree { theta, omega } => write!(
                f,
                "quotient coefficient degree would be negative ({theta} < {omega})"
            ),
            FlagError::FormDegreeMismatch { theta, omega } => {
                write!(f, "cannot divide a {theta}-form by a {omega}-form")
            }
            FlagError::ZeroDivisor => write!(f, "cannot divide by the zero form"),
            FlagError::TangencyFails { index } => {
                write!(f, "generator {index} is not tangent to the upper member")
            }
            FlagError::NonChain { position } => {
                write!(f, "dimensions not strictly increasing at position {position}")
            }
            FlagError::PointLengthMismatch { expected, got } => {
                write!(f, "point has length {got}, expected {expected}")
            }
        }
    }
}

impl core::error::Error for FlagError {}

/// Verdict on one degree inequality, computed from the stored degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum IneqVerdict {
    /// Bound holds with equality.
    Sharp,
    /// Bound holds strictly.
    Holds,
    Violated,
    /// The flag's dimensions are outside the statement's shape.
    NotApplicable,
}

/// Structured outcome of the tangency / integrability / degree checks for a
/// flag pair `(F, G)` with `G` of codimension one.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct FlagReport {
    pub n: usize,
    pub dim_lower: usize,
    pub dim_upper: usize,
    pub degree_lower: u32,
    pub degree_upper: u32,
    /// `i_{X_j} omega = 0` for every generator of the lower member.
    pub tangency: bool,
    /// `(i_{X_1}...i_{X_k} i_theta dV) ^ omega = 0`.
    pub contraction_chain_zero: bool,
    /// `omega ^ d omega = 0` (codimension-one integrability).
    pub integrability_upper: bool,
    /// `[X_i, X_j] ^ X_1 ^ ... ^ X_k ^ theta = 0` for all pairs, i.e.
    /// bracket closure modulo the radial direction.
    pub integrability_lower: bool,
    /// Keyed by `theorem1`, `theorem2`, `theorem3`.
    pub inequality_verdicts: BTreeMap<String, IneqVerdict>,
}

/// A validated flag pair: every lower generator is tangent to the upper
/// member, with the (zero) contraction certificates kept as witnesses.
#[derive(Debug, Clone)]
pub struct FlagSpec {
    n: usize,
    lower: FieldsDistribution,
    upper: FormDistribution,
    certificates: Vec<Poly>,
}

impl FlagSpec {
    pub fn new(lower: FieldsDistribution, upper: FormDistribution) -> Result<Self, FlagError> {
        check_pair(&lower, &upper)?;
        let certificates = tangency_certificates(&lower, &upper);
        if let Some(index) = certificates.iter().position(|p| !p.is_zero()) {
            return Err(FlagError::TangencyFails { index });
        }
        Ok(FlagSpec {
            n: lower.n(),
            lower,
            upper,
            certificates,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lower(&self) -> &FieldsDistribution {
        &self.lower
    }

    pub fn upper(&self) -> &FormDistribution {
        &self.upper
    }

    /// Per-generator residues `i_{X_j} omega`; all zero by construction.
    pub fn certificates(&self) -> &[Poly] {
        &self.certificates
    }

    pub fn report(&self) -> FlagReport {
        verify_flag(&self.lower, &self.upper).expect("validated pair")
    }
}

fn check_pair(lower: &FieldsDistribution, upper: &FormDistribution) -> Result<(), FlagError> {
    if lower.n() != upper.n() {
        return Err(FlagError::AmbientMismatch {
            lower: lower.n(),
            upper: upper.n(),
        });
    }
    if upper.codim() != 1 {
        return Err(FlagError::UpperNotCodimOne {
            codim: upper.codim(),
        });
    }
    Ok(())
}

fn tangency_certificates(lower: &FieldsDistribution, upper: &FormDistribution) -> Vec<Poly> {
    lower
        .generators()
        .iter()
        .map(|x| {
            let c = contract(x, upper.omega()).expect("same nvars");
            debug_assert_eq!(c.degree(), 0);
            c.component(&[]).cloned().unwrap_or_else(|| Poly::zero(upper.n() + 1))
        })
        .collect()
}

/// The form `Theta = i_{X_1} ... i_{X_k} i_theta dV` (leftmost contraction
/// applied last). Its coefficients are homogeneous of degree
/// `1 + sum deg X_i`.
pub fn contraction_chain(fields: &[MultiVector], n: usize) -> Result<Form, FlagError> {
    if fields.len() >= n && !fields.is_empty() {
        return Err(FlagError::TooManyFields {
            k: fields.len(),
            n,
        });
    }
    let nvars = n + 1;
    for x in fields {
        if x.nvars() != nvars {
            return Err(FlagError::NvarsMismatch {
                expected: nvars,
                got: x.nvars(),
            });
        }
    }
    let mut acc = contract(&radial_field(nvars), &volume_form(nvars)).expect("same nvars");
    for x in fields.iter().rev() {
        acc = contract(x, &acc).expect("same nvars");
    }
    Ok(acc)
}

/// Runs the full battery of flag checks and fills the degree verdicts.
pub fn verify_flag(
    lower: &FieldsDistribution,
    upper: &FormDistribution,
) -> Result<FlagReport, FlagError> {
    check_pair(lower, upper)?;
    let n = lower.n();
    let omega = upper.omega();

    let certificates = tangency_certificates(lower, upper);
    let tangency = certificates.iter().all(Poly::is_zero);

    let theta = contraction_chain(lower.generators(), n)?;
    let contraction_chain_zero = theta.wedge(omega).expect("same nvars").is_zero();

    let integrability_upper = omega
        .wedge(&omega.exterior_derivative())
        .expect("same nvars")
        .is_zero();

    let generators = lower.generators();
    let mut integrability_lower = true;
    'outer: for i in 0..generators.len() {
        for j in (i + 1)..generators.len() {
            let bracket = generators[i]
                .lie_bracket(&generators[j])
                .expect("vector fields");
            let mut closure = bracket;
            for x in generators {
                closure = closure.wedge(x).expect("same nvars");
            }
            closure = closure.wedge(&radial_field(n + 1)).expect("same nvars");
            if !closure.is_zero() {
                integrability_lower = false;
                break 'outer;
            }
        }
    }

    let degree_lower = lower.total_degree();
    let degree_upper = upper.degree();
    let dim_lower = lower.dim();
    let dim_upper = n - 1;

    let mut inequality_verdicts = BTreeMap::new();
    inequality_verdicts.insert(
        String::from("theorem1"),
        if dim_lower == 1 {
            bound_verdict(degree_upper as i64, degree_lower as i64 - 1)
        } else {
            IneqVerdict::NotApplicable
        },
    );
    inequality_verdicts.insert(
        String::from("theorem2"),
        bound_verdict(degree_upper as i64, degree_lower as i64),
    );
    inequality_verdicts.insert(
        String::from("theorem3"),
        if dim_lower + 1 == dim_upper {
            bound_verdict(degree_upper as i64, degree_lower as i64)
        } else {
            IneqVerdict::NotApplicable
        },
    );

    Ok(FlagReport {
        n,
        dim_lower,
        dim_upper,
        degree_lower,
        degree_upper,
        tangency,
        contraction_chain_zero,
        integrability_upper,
        integrability_lower,
        inequality_verdicts,
    })
}

fn bound_verdict(value: i64, bound: i64) -> IneqVerdict {
    match value.cmp(&bound) {
        core::cmp::Ordering::Less => IneqVerdict::Holds,
        core::cmp::Ordering::Equal => IneqVerdict::Sharp,
        core::cmp::Ordering::Greater => IneqVerdict::Violated,
    }
}

/// All strictly increasing `len`-tuples over `0..nvars`, lexicographically.
fn index_tuples(nvars: usize, len: usize) -> Vec<Vec<u8>> {
    fn rec(out: &mut Vec<Vec<u8>>, prefix: &mut Vec<u8>, start: usize, nvars: usize, len: usize) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        let remaining = len - prefix.len();
        for i in start..=(nvars.saturating_sub(remaining)) {
            prefix.push(i as u8);
            rec(out, prefix, i + 1, nvars, len);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if len <= nvars {
        rec(&mut out, &mut Vec::new(), 0, nvars, len);
    }
    out
}

/// All exponent vectors of total degree `degree`, in canonical order.
fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(out: &mut Vec<Vec<u32>>, prefix: &mut Vec<u32>, left: u32, nvars: usize) {
        if prefix.len() == nvars - 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(out, prefix, left - e, nvars);
            prefix.pop();
        }
    }
    let mut raw = Vec::new();
    rec(&mut raw, &mut Vec::new(), degree, nvars);
    let mut monos: Vec<Monomial> = raw.into_iter().map(Monomial::new).collect();
    monos.sort();
    monos
}

/// Solves `omega ^ eta = theta` for a homogeneous `eta` over the monomial
/// basis, returning one solution (free coordinates pinned to zero, pivot
/// columns chosen in canonical order) or `None` when the system is
/// inconsistent.
pub fn divide_by_form(theta: &Form, omega: &Form) -> Result<Option<Form>, FlagError> {
    if theta.nvars() != omega.nvars() {
        return Err(FlagError::NvarsMismatch {
            expected: omega.nvars(),
            got: theta.nvars(),
        });
    }
    if omega.is_zero() {
        return Err(FlagError::ZeroDivisor);
    }
    if theta.degree() < omega.degree() {
        return Err(FlagError::FormDegreeMismatch {
            theta: theta.degree(),
            omega: omega.degree(),
        });
    }
    let nvars = theta.nvars();
    let eta_rank = theta.degree() - omega.degree();
    if theta.is_zero() {
        return Ok(Some(Form::zero(nvars, eta_rank)));
    }
    let deg_theta = match theta.coefficient_degree() {
        Homogeneity::Homogeneous(e) => e,
        _ => return Err(FlagError::NotHomogeneous),
    };
    let deg_omega = match omega.coefficient_degree() {
        Homogeneity::Homogeneous(e) => e,
        _ => return Err(FlagError::NotHomogeneous),
    };
    if deg_theta < deg_omega {
        return Err(FlagError::NegativeTargetDegree {
            theta: deg_theta,
            omega: deg_omega,
        });
    }
    let deg_eta = deg_theta - deg_omega;

    // Candidate eta basis: (index tuple, monomial) pairs in canonical order.
    let tuples = index_tuples(nvars, eta_rank);
    let monos = monomials_of_degree(nvars, deg_eta);
    let mut columns: Vec<Form> = Vec::with_capacity(tuples.len() * monos.len());
    let mut units: Vec<(Vec<u8>, Monomial)> = Vec::with_capacity(columns.capacity());
    for tuple in &tuples {
        for mono in &monos {
            let unit = Form::from_components(
                nvars,
                eta_rank,
                [(
                    tuple.iter().map(|&i| i as usize).collect::<Vec<_>>(),
                    Poly::term(nvars, mono.exponents().to_vec(), Rat::one()),
                )],
            )
            .expect("valid unit");
            columns.push(omega.wedge(&unit).expect("same nvars"));
            units.push((tuple.clone(), mono.clone()));
        }
    }

    // Row index: every (component tuple, monomial) present in columns or theta.
    fn row_id(map: &mut BTreeMap<(Vec<u8>, Monomial), usize>, key: (Vec<u8>, Monomial)) -> usize {
        let next = map.len();
        *map.entry(key).or_insert(next)
    }
    let mut row_index: BTreeMap<(Vec<u8>, Monomial), usize> = BTreeMap::new();
    let mut entries: Vec<Vec<(usize, Rat)>> = Vec::with_capacity(columns.len());
    for col in &columns {
        let mut colentries = Vec::new();
        for (key, p) in col.components() {
            for (m, c) in p.terms() {
                colentries.push((row_id(&mut row_index, (key.to_vec(), m.clone())), c.clone()));
            }
        }
        entries.push(colentries);
    }
    let mut rhs_entries: Vec<(usize, Rat)> = Vec::new();
    for (key, p) in theta.components() {
        for (m, c) in p.terms() {
            rhs_entries.push((row_id(&mut row_index, (key.to_vec(), m.clone())), c.clone()));
        }
    }
    let nrows = row_index.len();

    // Dense augmented matrix, rows x (cols + 1).
    let ncols = columns.len();
    let mut matrix: Vec<Vec<Rat>> = (0..nrows).map(|_| {
        let mut row = Vec::with_capacity(ncols + 1);
        row.resize(ncols + 1, Rat::zero());
        row
    }).collect();
    for (c, colentries) in entries.iter().enumerate() {
        for (r, v) in colentries {
            matrix[*r][c] = v.clone();
        }
    }
    for (r, v) in &rhs_entries {
        matrix[*r][ncols] = v.clone();
    }

    let solution = match solve_column_pivot(&mut matrix, ncols) {
        Some(s) => s,
        None => return Ok(None),
    };

    let mut eta = Form::zero(nvars, eta_rank);
    for ((tuple, mono), value) in units.iter().zip(solution.iter()) {
        if value.is_zero() {
            continue;
        }
        let part = Form::from_components(
            nvars,
            eta_rank,
            [(
                tuple.iter().map(|&i| i as usize).collect::<Vec<_>>(),
                Poly::term(nvars, mono.exponents().to_vec(), value.clone()),
            )],
        )
        .expect("valid unit");
        eta = eta.checked_add(&part).expect("same shape");
    }
    let check = omega.wedge(&eta).expect("same nvars");
    assert_eq!(&check, theta, "solver returned a non-solution");
    Ok(Some(eta))
}

/// Reduced elimination with pivots chosen in column order. Returns the
/// solution with all free coordinates zero, or `None` if inconsistent.
fn solve_column_pivot(matrix: &mut [Vec<Rat>], ncols: usize) -> Option<Vec<Rat>> {
    let nrows = matrix.len();
    let mut pivot_row_of_col: Vec<Option<usize>> = alloc::vec![None; ncols];
    let mut used = alloc::vec![false; nrows];
    for col in 0..ncols {
        let pivot = (0..nrows).find(|&r| !used[r] && !matrix[r][col].is_zero());
        let pivot = match pivot {
            Some(r) => r,
            None => continue,
        };
        used[pivot] = true;
        pivot_row_of_col[col] = Some(pivot);
        let scale = matrix[pivot][col].clone();
        for v in matrix[pivot].iter_mut() {
            if !v.is_zero() {
                *v /= &scale;
            }
        }
        for r in 0..nrows {
            if r == pivot || matrix[r][col].is_zero() {
                continue;
            }
            let factor = matrix[r][col].clone();
            for c in col..=ncols {
                let delta = &matrix[pivot][c] * &factor;
                if !delta.is_zero() {
                    matrix[r][c] -= delta;
                }
            }
        }
    }
    for r in 0..nrows {
        if !used[r] && !matrix[r][ncols].is_zero() {
            return None;
        }
    }
    let mut solution = alloc::vec![Rat::zero(); ncols];
    for (col, pivot) in pivot_row_of_col.iter().enumerate() {
        if let Some(r) = pivot {
            solution[col] = matrix[*r][ncols].clone();
        }
    }
    Some(solution)
}

/// One member of a flag chain for the monotonicity audit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct ChainLink {
    pub dim: u32,
    pub degree: u32,
}

/// Outcome of the monotone degree-chain audit.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct CorollaryVerdict {
    pub degrees: Vec<u32>,
    pub holds: bool,
    /// Positions `i` with `degree[i] > degree[i+1]`.
    pub violations: Vec<usize>,
}

/// Checks `deg F_1 <= deg F_2 <= ... <= deg F_k` along a chain of strictly
/// increasing dimensions.
pub fn audit_inequalities(chain: &[ChainLink]) -> Result<CorollaryVerdict, FlagError> {
    for (i, pair) in chain.windows(2).enumerate() {
        if pair[0].dim >= pair[1].dim {
            return Err(FlagError::NonChain { position: i });
        }
    }
    let degrees: Vec<u32> = chain.iter().map(|l| l.degree).collect();
    let violations: Vec<usize> = degrees
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(i, _)| i)
        .collect();
    Ok(CorollaryVerdict {
        degrees,
        holds: violations.is_empty(),
        violations,
    })
}

/// Extracts the two-member chain `(F, G)` of a flag report.
pub fn chain_of_report(report: &FlagReport) -> Vec<ChainLink> {
    alloc::vec![
        ChainLink {
            dim: report.dim_lower as u32,
            degree: report.degree_lower,
        },
        ChainLink {
            dim: report.dim_upper as u32,
            degree: report.degree_upper,
        },
    ]
}

/// Pointwise Baum-Kupka evidence: is `d omega` nonzero at the given point?
pub fn exterior_derivative_nonzero_at(omega: &Form, point: &[Rat]) -> Result<bool, FlagError> {
    if point.len() != omega.nvars() {
        return Err(FlagError::PointLengthMismatch {
            expected: omega.nvars(),
            got: point.len(),
        });
    }
    let d = omega.exterior_derivative();
    for (_, p) in d.components() {
        if !p.evaluate(point).expect("length checked").is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{Form, MultiVector};
    use crate::poly::Poly;
    use crate::projective::{descend_form, fields_distribution};
    use crate::{rat, rat_int};
    use alloc::vec;

    fn var(n: usize, i: usize) -> Poly {
        Poly::variable(n, i).unwrap()
    }

    #[test]
    fn contraction_chain_base_cases() {
        // no fields, n = 1: i_theta dV = z0 dz1 - z1 dz0
        let t = contraction_chain(&[], 1).unwrap();
        assert_eq!(t.component(&[1]).unwrap(), &var(2, 0));
        assert_eq!(t.component(&[0]).unwrap(), &var(2, 1).negate());
        // fields {d0}, n = 2: z2 dz1 - z1 dz2
        let d0 = MultiVector::basis(3, &[0]).unwrap();
        let t = contraction_chain(&[d0], 2).unwrap();
        assert_eq!(t.component(&[1]).unwrap(), &var(3, 2));
        assert_eq!(t.component(&[2]).unwrap(), &var(3, 1).negate());
        assert_eq!(t.num_components(), 2);
    }

    #[test]
    fn chain_degree_bookkeeping() {
        // coefficient degree of Theta = 1 + sum deg X_i
        let n = 3;
        let x = MultiVector::from_components(
            n + 1,
            1,
            [(vec![0], &var(n + 1, 1) * &var(n + 1, 2)), (vec![2], var(n + 1, 3).pow(2))],
        )
        .unwrap();
        let t = contraction_chain(&[x], n).unwrap();
        assert_eq!(t.coefficient_degree(), Homogeneity::Homogeneous(3));
    }

    #[test]
    fn divide_simple_cases() {
        // theta = dz0^dz1, omega = dz0 -> eta = dz1 (a coset representative)
        let n = 3;
        let theta = Form::basis(n, &[0, 1]).unwrap();
        let omega = Form::basis(n, &[0]).unwrap();
        let eta = divide_by_form(&theta, &omega).unwrap().unwrap();
        assert_eq!(omega.wedge(&eta).unwrap(), theta);
        // theta = dz1^dz2 is not divisible by dz0
        let theta2 = Form::basis(n, &[1, 2]).unwrap();
        assert_eq!(divide_by_form(&theta2, &omega).unwrap(), None);
    }

    #[test]
    fn divide_rejects_shape_errors() {
        let n = 3;
        let one_form = Form::from_components(n, 1, [(vec![0], var(n, 1))]).unwrap();
        let two_form = Form::basis(n, &[0, 1]).unwrap();
        assert!(matches!(
            divide_by_form(&one_form, &two_form),
            Err(FlagError::FormDegreeMismatch { theta: 1, omega: 2 })
        ));
        assert!(matches!(
            divide_by_form(&two_form, &Form::zero(n, 1)),
            Err(FlagError::ZeroDivisor)
        ));
        // negative target degree: constant theta vs linear omega
        let theta = Form::basis(n, &[0, 1]).unwrap();
        let omega = Form::from_components(n, 1, [(vec![0], var(n, 1))]).unwrap();
        assert!(matches!(
            divide_by_form(&theta, &omega),
            Err(FlagError::NegativeTargetDegree { theta: 0, omega: 1 })
        ));
    }

    #[test]
    fn divide_round_trip_with_scaled_solution() {
        // omega ^ eta = theta with rational coefficients
        let n = 4;
        let omega = Form::from_components(
            n,
            1,
            [(vec![0], var(n, 1)), (vec![2], var(n, 3).scale(&rat(2, 3)))],
        )
        .unwrap();
        let eta = Form::from_components(
            n,
            1,
            [(vec![1], var(n, 2)), (vec![3], var(n, 0).scale(&rat(-5, 7)))],
        )
        .unwrap();
        let theta = omega.wedge(&eta).unwrap();
        let found = divide_by_form(&theta, &omega).unwrap().unwrap();
        assert_eq!(omega.wedge(&found).unwrap(), theta);
    }

    #[test]
    fn tangency_failure_reported_not_errored() {
        // lower = {d0}, upper omega = z1 dz0 - z0 dz1 on P^2: i_{d0} omega = z1 != 0
        let lower =
            fields_distribution(vec![MultiVector::basis(3, &[0]).unwrap()], 2).unwrap();
        let omega = Form::from_components(
            3,
            1,
            [(vec![0], var(3, 1)), (vec![1], var(3, 0).negate())],
        )
        .unwrap();
        let upper = descend_form(omega, 2).unwrap();
        let report = verify_flag(&lower, &upper).unwrap();
        assert!(!report.tangency);
        assert!(matches!(
            FlagSpec::new(lower, upper),
            Err(FlagError::TangencyFails { index: 0 })
        ));
    }

    #[test]
    fn chain_audit() {
        let ok = audit_inequalities(&[
            ChainLink { dim: 1, degree: 1 },
            ChainLink { dim: 2, degree: 1 },
            ChainLink { dim: 3, degree: 1 },
        ])
        .unwrap();
        assert!(ok.holds);
        let strict = audit_inequalities(&[
            ChainLink { dim: 1, degree: 2 },
            ChainLink { dim: 2, degree: 3 },
        ])
        .unwrap();
        assert!(strict.holds);
        let bad = audit_inequalities(&[
            ChainLink { dim: 1, degree: 3 },
            ChainLink { dim: 2, degree: 2 },
        ])
        .unwrap();
        assert!(!bad.holds);
        assert_eq!(bad.violations, vec![0]);
        assert!(matches!(
            audit_inequalities(&[
                ChainLink { dim: 2, degree: 1 },
                ChainLink { dim: 2, degree: 2 },
            ]),
            Err(FlagError::NonChain { position: 0 })
        ));
    }

    #[test]
    fn pointwise_kupka_evidence() {
        // f = z1 z2 + z3 z4 in 5 vars; omega = z0 dF - 2 F dz0.
        // At (0 : 1 : 0 : 0 : 0), on {f = 0} away from its singular locus,
        // d omega is nonzero; at the origin-like point (1:0:0:0:0) it vanishes.
        let n = 5;
        let f = &(&var(n, 1) * &var(n, 2)) + &(&var(n, 3) * &var(n, 4));
        let df = Form::from_components(n, 0, [(vec![], f.clone())])
            .unwrap()
            .exterior_derivative();
        let omega = df
            .scale_poly(&var(n, 0))
            .checked_sub(&Form::basis(n, &[0]).unwrap().scale_poly(&f.scale(&rat_int(2))))
            .unwrap();
        let on_quadric = [rat_int(0), rat_int(1), rat_int(0), rat_int(0), rat_int(0)];
        assert!(exterior_derivative_nonzero_at(&omega, &on_quadric).unwrap());
        let apex = [rat_int(1), rat_int(0), rat_int(0), rat_int(0), rat_int(0)];
        assert!(!exterior_derivative_nonzero_at(&omega, &apex).unwrap());
    }
}
