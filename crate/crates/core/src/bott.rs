//! Closed-form cohomology dimensions of twisted form and polyvector sheaves
//! on `P^n`, the Koszul twist schedule, and the mechanical vanishing case
//! analysis behind the degree bound for flags with a one-dimensional member.

use alloc::vec::Vec;
use core::fmt;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BottError {
    RankOutOfRange { rank: u32, n: u32 },
    CohomOutOfRange { cohom: u32, n: u32 },
    ZeroAmbient,
    /// `vanishing_report` needs `n >= 3`.
    AmbientTooSmall { n: u32 },
    NegativeDegree { value: i64 },
    /// Theorem 1 assumes the codimension-one member has degree at least 2.
    DegreeBelowTheoremScope { m: i64 },
}

impl fmt::Display for BottError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BottError::RankOutOfRange { rank, n } => {
                write!(f, "rank {rank} outside 0..={n}")
            }
            BottError::CohomOutOfRange { cohom, n } => {
                write!(f, "cohomology index {cohom} outside 0..={n}")
            }
            BottError::ZeroAmbient => write!(f, "ambient dimension must be positive"),
            BottError::AmbientTooSmall { n } => {
                write!(f, "need n >= 3, got n = {n}")
            }
            BottError::NegativeDegree { value } => {
                write!(f, "degree parameters must be nonnegative, got {value}")
            }
            BottError::DegreeBelowTheoremScope { m } => {
                write!(f, "outside the scope of the theorem: deg(G) = {m} < 2")
            }
        }
    }
}

impl core::error::Error for BottError {}

/// Which sheaf family a query addresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SheafKind {
    /// Twisted holomorphic forms `Omega^p(k)`.
    Forms,
    /// Twisted polyvector fields `Wedge^r T(t)`.
    Polyvectors,
}

/// A single dimension query `h^cohom(P^n, <kind>^rank (twist))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BottQuery {
    pub n: u32,
    pub kind: SheafKind,
    pub rank: u32,
    pub twist: i64,
    pub cohom: u32,
}

/// Binomial with the convention `C(a,b) = 0` for `b < 0` or `a < b`.
///
/// After the case filters of the Bott tables the upper argument is never
/// negative at the point of computation; `debug_assert` guards that.
fn binom(a: i64, b: i64) -> u128 {
    if b < 0 || a < b {
        return 0;
    }
    debug_assert!(a >= 0, "negative upper binomial argument slipped through");
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * ((a - i) as u128) / ((i + 1) as u128);
    }
    acc
}

/// `h^q(P^n, Omega^p(k))` by the four-case table.
fn forms_dim(n: u32, p: u32, k: i64, q: u32) -> u128 {
    let n_i = n as i64;
    let p_i = p as i64;
    let case_global = q == 0 && k > p_i;
    let case_middle = k == 0 && p == q;
    let case_top = q == n && k < p_i - n_i;
    let fired = [case_global, case_middle, case_top];
    assert!(
        fired.iter().filter(|&&c| c).count() <= 1,
        "Bott form cases are mutually exclusive"
    );
    if case_global {
        assert!(k + n_i - p_i >= 0 && k - 1 >= 0);
        binom(k + n_i - p_i, k) * binom(k - 1, p_i)
    } else if case_middle {
        1
    } else if case_top {
        assert!(-k + p_i >= 0 && -k - 1 >= 0);
        binom(-k + p_i, -k) * binom(-k - 1, n_i - p_i)
    } else {
        0
    }
}

/// `h^s(P^n, Wedge^r T(t))` by the dual table.
///
/// The table is the image of the forms table under the perfect pairing
/// isomorphism `Wedge^r T(t) = Omega^{n-r}(t+n+1)`; the `s = n` entry is
/// Serre-dual to `h^0(Omega^r(-t-n-1))`.
fn polyvectors_dim(n: u32, r: u32, t: i64, s: u32) -> u128 {
    let n_i = n as i64;
    let r_i = r as i64;
    let case_global = s == 0 && t + r_i >= 0;
    let case_middle = t == -n_i - 1 && n - r == s;
    let case_top = s == n && t + n_i + r_i + 2 <= 0;
    let fired = [case_global, case_middle, case_top];
    assert!(
        fired.iter().filter(|&&c| c).count() <= 1,
        "Bott polyvector cases are mutually exclusive"
    );
    if case_global {
        // t + r >= 0 and r <= n force both upper arguments nonnegative
        assert!(t + n_i + 1 + r_i >= 0 && t + n_i >= 0);
        binom(t + n_i + 1 + r_i, t + n_i + 1) * binom(t + n_i, n_i - r_i)
    } else if case_middle {
        1
    } else if case_top {
        assert!(-t - 1 - r_i >= 0 && -t - n_i - 2 >= 0);
        binom(-t - 1 - r_i, -t - n_i - 1) * binom(-t - n_i - 2, r_i)
    } else {
        0
    }
}

/// Evaluates one cohomology dimension query.
pub fn bott_dim(query: &BottQuery) -> Result<u128, BottError> {
    let BottQuery {
        n,
        kind,
        rank,
        twist,
        cohom,
    } = *query;
    if n == 0 {
        return Err(BottError::ZeroAmbient);
    }
    if rank > n {
        return Err(BottError::RankOutOfRange { rank, n });
    }
    if cohom > n {
        return Err(BottError::CohomOutOfRange { cohom, n });
    }
    Ok(match kind {
        SheafKind::Forms => forms_dim(n, rank, twist, cohom),
        SheafKind::Polyvectors => polyvectors_dim(n, rank, twist, cohom),
    })
}

/// Twist schedule `t_r = -r(m+2) + d + m + 1` for `r = 1..=n` of the Koszul
/// complex of a degree-`m` one-form with isolated zeros, tensored by
/// `O(d+m+1)`. In particular `t_1 = d - 1` and `t_2 = d - m - 3`.
pub fn koszul_twists(n: u32, d: i64, m: i64) -> Vec<i64> {
    (1..=n as i64).map(|r| -r * (m + 2) + d + m + 1).collect()
}

/// One row of the vanishing table: the boundary dimensions
/// `h^{r-2}` and `h^{r-1}` of `Wedge^r T(t_r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct KoszulRow {
    pub r: u32,
    pub twist: i64,
    /// `h^{r-2}(P^n, Wedge^r T(t_r))`.
    pub h_below: u128,
    /// `h^{r-1}(P^n, Wedge^r T(t_r))`.
    pub h_above: u128,
    /// Whether this row enters the vanishing chain requirement.
    pub required_below: bool,
    pub required_above: bool,
}

/// Arithmetic condition obstructing the vanishing chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum Exceptional {
    /// `n` even and `d = (n/2) m`.
    #[cfg_attr(feature = "serde", serde(rename = "i"))]
    ConditionI,
    /// `n` odd, `n > 3`, and `d = ((n-1)/2) m - 1`.
    #[cfg_attr(feature = "serde", serde(rename = "ii"))]
    ConditionII,
}

/// Outcome of the mechanical `H^1(K_2) = 0` case analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct VanishingReport {
    pub n: u32,
    pub d: i64,
    pub m: i64,
    /// `t_1..t_n`.
    pub twists: Vec<i64>,
    /// Rows for `r = 2..=n`; row 2's `h_below` is the section dimension
    /// `h^0(Wedge^2 T(d-m-3))` that carries the degree bound.
    pub rows: Vec<KoszulRow>,
    /// True when every required boundary dimension vanishes, i.e. the chain
    /// of isomorphisms down to `H^1(K_2) = 0` goes through.
    pub chain_holds: bool,
    pub exceptional: Option<Exceptional>,
}

/// Reproduces the vanishing case analysis for `H^1(P^n, K_2)`.
///
/// Required vanishings: both boundary dimensions for `3 <= r <= n-1` and
/// `h^{n-2}(Wedge^n T(t_n))`. For `n = 3` the list degenerates to the single
/// requirement `h^1(Wedge^3 T(t_3)) = 0`, which always holds, so there is no
/// exceptional condition in that case.
pub fn vanishing_report(n: u32, d: i64, m: i64) -> Result<VanishingReport, BottError> {
    if n < 3 {
        return Err(BottError::AmbientTooSmall { n });
    }
    if d < 0 {
        return Err(BottError::NegativeDegree { value: d });
    }
    if m < 0 {
        return Err(BottError::NegativeDegree { value: m });
    }
    let twists = koszul_twists(n, d, m);
    let mut rows = Vec::with_capacity(n as usize - 1);
    let mut chain_holds = true;
    for r in 2..=n {
        let twist = twists[(r - 1) as usize];
        let h_below = polyvectors_dim(n, r, twist, r - 2);
        let h_above = polyvectors_dim(n, r, twist, r - 1);
        let required_below = (3..=n - 1).contains(&r) || r == n;
        let required_above = (3..=n - 1).contains(&r);
        if required_below && h_below != 0 {
            chain_holds = false;
        }
        if required_above && h_above != 0 {
            chain_holds = false;
        }
        rows.push(KoszulRow {
            r,
            twist,
            h_below,
            h_above,
            required_below,
            required_above,
        });
    }
    let exceptional = if n % 2 == 0 && d == (n as i64 / 2) * m {
        Some(Exceptional::ConditionI)
    } else if n % 2 == 1 && n > 3 && d == ((n as i64 - 1) / 2) * m - 1 {
        Some(Exceptional::ConditionII)
    } else {
        None
    };
    Ok(VanishingReport {
        n,
        d,
        m,
        twists,
        rows,
        chain_holds,
        exceptional,
    })
}

/// Arithmetic audit of the hypotheses and conclusion of the degree bound
/// `deg(G) <= deg(F) - 1` for a flag with `dim F = 1`, `deg F = d`,
/// `deg G = m`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Theorem1Audit {
    pub n: u32,
    pub d: i64,
    pub m: i64,
    /// `n` even implies `d != (n/2) m`.
    pub hypothesis_i_met: bool,
    /// `n` odd implies `d != ((n-1)/2) m - 1`.
    pub hypothesis_ii_met: bool,
    /// The predicted bound `m <= d - 1`.
    pub bound_holds: bool,
    /// For `m >= 2` the exceptional values never collide with the sharp case:
    /// `(n/2) m != m + 1` and `((n-1)/2) m != m + 1`.
    pub remark_consistent: bool,
}

pub fn theorem1_audit(n: u32, d: i64, m: i64) -> Result<Theorem1Audit, BottError> {
    if n < 3 {
        return Err(BottError::AmbientTooSmall { n });
    }
    if m < 2 {
        return Err(BottError::DegreeBelowTheoremScope { m });
    }
    if d < 0 {
        return Err(BottError::NegativeDegree { value: d });
    }
    let n_i = n as i64;
    let hypothesis_i_met = !(n % 2 == 0 && 2 * d == n_i * m);
    let hypothesis_ii_met = !(n % 2 == 1 && 2 * d == (n_i - 1) * m - 2);
    let remark_consistent = if n % 2 == 0 {
        n_i * m != 2 * (m + 1)
    } else {
        (n_i - 1) * m != 2 * (m + 1)
    };
    Ok(Theorem1Audit {
        n,
        d,
        m,
        hypothesis_i_met,
        hypothesis_ii_met,
        bound_holds: m <= d - 1,
        remark_consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn forms(n: u32, p: u32, k: i64, q: u32) -> u128 {
        bott_dim(&BottQuery {
            n,
            kind: SheafKind::Forms,
            rank: p,
            twist: k,
            cohom: q,
        })
        .unwrap()
    }

    fn polys(n: u32, r: u32, t: i64, s: u32) -> u128 {
        bott_dim(&BottQuery {
            n,
            kind: SheafKind::Polyvectors,
            rank: r,
            twist: t,
            cohom: s,
        })
        .unwrap()
    }

    #[test]
    fn diagonal_units() {
        for n in 1..=6 {
            for p in 0..=n {
                assert_eq!(forms(n, p, 0, p), 1);
            }
        }
    }

    #[test]
    fn sections_count_monomials() {
        // h^0(P^3, O(2)) = C(5,3) = 10 = number of degree-2 monomials in 4 vars
        assert_eq!(forms(3, 0, 2, 0), 10);
        for n in 1..=5u32 {
            for k in 0..=8i64 {
                assert_eq!(forms(n, 0, k, 0), binom(n as i64 + k, n as i64));
            }
        }
    }

    #[test]
    fn bivector_sections_iff_twist_at_least_minus_two() {
        for n in 3..=5 {
            for t in -8..=3 {
                let positive = polys(n, 2, t, 0) > 0;
                assert_eq!(positive, t + 2 >= 0, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn twist_schedule_anchors() {
        for (d, m) in [(0i64, 0i64), (3, 1), (7, 4), (2, 5)] {
            let t = koszul_twists(5, d, m);
            assert_eq!(t[0], d - 1);
            assert_eq!(t[1], d - m - 3);
        }
        assert_eq!(koszul_twists(4, 3, 1), alloc::vec![2, -1, -4, -7]);
    }

    #[test]
    fn report_on_p3_always_holds() {
        for d in 0..=12 {
            for m in 0..=6 {
                let rep = vanishing_report(3, d, m).unwrap();
                assert!(rep.chain_holds, "d={d} m={m}");
                assert_eq!(rep.exceptional, None);
            }
        }
    }

    #[test]
    fn exceptional_conditions_fire() {
        let rep = vanishing_report(4, 4, 2).unwrap();
        assert_eq!(rep.exceptional, Some(Exceptional::ConditionI));
        assert!(!rep.chain_holds);
        let rep = vanishing_report(5, 3, 2).unwrap();
        assert_eq!(rep.exceptional, Some(Exceptional::ConditionII));
        assert!(!rep.chain_holds);
    }

    #[test]
    fn report_row_invariants() {
        let rep = vanishing_report(6, 5, 3).unwrap();
        assert_eq!(rep.twists.len(), 6);
        assert_eq!(rep.rows.len(), 5);
        for row in &rep.rows {
            assert_eq!(
                row.twist,
                -(row.r as i64) * (rep.m + 2) + rep.d + rep.m + 1
            );
        }
    }

    #[test]
    fn audit_examples() {
        let a = theorem1_audit(3, 3, 2).unwrap();
        assert!(a.hypothesis_i_met && a.hypothesis_ii_met);
        assert!(a.bound_holds);
        let b = theorem1_audit(4, 4, 2).unwrap();
        assert!(!b.hypothesis_i_met);
        let c = theorem1_audit(4, 5, 2).unwrap();
        assert!(c.remark_consistent);
        assert!(matches!(
            theorem1_audit(4, 3, 1),
            Err(BottError::DegreeBelowTheoremScope { m: 1 })
        ));
    }

    #[test]
    fn query_validation() {
        assert!(matches!(
            bott_dim(&BottQuery {
                n: 3,
                kind: SheafKind::Forms,
                rank: 4,
                twist: 0,
                cohom: 0
            }),
            Err(BottError::RankOutOfRange { .. })
        ));
        assert!(matches!(
            bott_dim(&BottQuery {
                n: 0,
                kind: SheafKind::Forms,
                rank: 0,
                twist: 0,
                cohom: 0
            }),
            Err(BottError::ZeroAmbient)
        ));
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(5, 0), 1);
        assert_eq!(binom(3, 7), 0);
        assert_eq!(binom(3, -1), 0);
        assert_eq!(binom(-2, -3), 0);
    }
}
