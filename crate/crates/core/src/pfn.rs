//! Pythagorean fuzzy numbers.
//!
//! A [`Pfn`] is a pair `(m, n)` of membership and non-membership degrees in
//! `[0, 1]` with `m² + n² ≤ 1`. Everything else in the crate is built from
//! this value type: arithmetic (`add_p`, `mul_p`, scalar multiple, power),
//! lattice join/meet, the score-type functions, and four comparison orders.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Slack on `m² + n² ≤ 1` when validating.
pub const VALIDITY_EPS: f64 = 1e-9;

/// Tolerance for key equality in the lexicographic orders and for algebraic
/// law checks.
pub const COMPARE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PfnError {
    #[error("degrees out of range: ({m}, {n}) must lie in [0,1]")]
    OutOfRange { m: f64, n: f64 },
    #[error("not Pythagorean: ({m}, {n}) has m²+n² = {sum} > 1")]
    NotPythagorean { m: f64, n: f64, sum: f64 },
    #[error("scalar must be positive, got {0}")]
    NonPositiveScalar(f64),
    #[error("cannot parse `{0}` as a PFN (expected `m,n` or `(m,n)`)")]
    Parse(String),
}

/// A Pythagorean fuzzy number `(m, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPfn", into = "RawPfn")]
pub struct Pfn {
    m: f64,
    n: f64,
}

#[derive(Serialize, Deserialize)]
struct RawPfn {
    m: f64,
    n: f64,
}

impl TryFrom<RawPfn> for Pfn {
    type Error = PfnError;

    fn try_from(raw: RawPfn) -> Result<Self, Self::Error> {
        Pfn::new(raw.m, raw.n)
    }
}

impl From<Pfn> for RawPfn {
    fn from(p: Pfn) -> Self {
        RawPfn { m: p.m, n: p.n }
    }
}

/// Which relation [`Pfn::compare`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderKind {
    /// `(u,v) ≤ (i,j)` iff `u ≤ i` and `v ≥ j`. Partial.
    LatticeOrder,
    /// Score first, accuracy breaks ties.
    ScoreAccuracy,
    /// Membership first, expectation score breaks ties.
    MembershipThenES,
    /// Expectation score first, membership breaks ties.
    ESThenMembership,
}

/// Outcome of comparing two PFNs under an [`OrderKind`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PfnOrdering {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl PfnOrdering {
    /// `Less` or `Equal`.
    pub fn is_le(self) -> bool {
        matches!(self, PfnOrdering::Less | PfnOrdering::Equal)
    }

    pub fn is_ge(self) -> bool {
        matches!(self, PfnOrdering::Greater | PfnOrdering::Equal)
    }

    pub fn reverse(self) -> Self {
        match self {
            PfnOrdering::Less => PfnOrdering::Greater,
            PfnOrdering::Greater => PfnOrdering::Less,
            other => other,
        }
    }

    /// `None` for `Incomparable`.
    pub fn to_ordering(self) -> Option<Ordering> {
        match self {
            PfnOrdering::Less => Some(Ordering::Less),
            PfnOrdering::Equal => Some(Ordering::Equal),
            PfnOrdering::Greater => Some(Ordering::Greater),
            PfnOrdering::Incomparable => None,
        }
    }
}

impl From<Ordering> for PfnOrdering {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => PfnOrdering::Less,
            Ordering::Equal => PfnOrdering::Equal,
            Ordering::Greater => PfnOrdering::Greater,
        }
    }
}

/// `√(a² + b² − a²b²)`, the probabilistic sum on squared degrees.
fn pythagorean_sum(a: f64, b: f64) -> f64 {
    // 1 − v² as (1 − v)(1 + v) keeps its low bits when v is close to 1
    let rest = (1.0 - a) * (1.0 + a) * (1.0 - b) * (1.0 + b);
    let sum = if rest < 0.5 { 1.0 - rest } else { a * a + b * b * (1.0 - a * a) };
    sum.sqrt().min(1.0)
}

/// `√(1 − (1 − v²)^α)`, evaluated without cancellation at either end of `[0, 1]`.
fn pythagorean_scale(v: f64, alpha: f64) -> f64 {
    if v >= 1.0 {
        return 1.0;
    }
    (-(alpha * ln_one_minus_sq(v)).exp_m1()).clamp(0.0, 1.0).sqrt()
}

/// `ln(1 − v²)`, accurate for `v` near 0 and near 1.
pub(crate) fn ln_one_minus_sq(v: f64) -> f64 {
    if v < 0.5 {
        (-v * v).ln_1p()
    } else {
        (-v).ln_1p() + v.ln_1p()
    }
}

/// Compares two keys with tolerance [`COMPARE_EPS`].
fn cmp_key(a: f64, b: f64) -> Ordering {
    if (a - b).abs() <= COMPARE_EPS {
        Ordering::Equal
    } else if a < b {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

impl Pfn {
    /// The additive identity and bottom of the lattice, `(0, 1)`.
    pub const ZERO: Pfn = Pfn { m: 0.0, n: 1.0 };
    /// The top of the lattice, `(1, 0)`.
    pub const ONE: Pfn = Pfn { m: 1.0, n: 0.0 };

    pub fn new(m: f64, n: f64) -> Result<Self, PfnError> {
        if !(0.0..=1.0).contains(&m) || !(0.0..=1.0).contains(&n) {
            return Err(PfnError::OutOfRange { m, n });
        }
        let sum = m * m + n * n;
        if sum > 1.0 + VALIDITY_EPS {
            return Err(PfnError::NotPythagorean { m, n, sum });
        }
        Ok(Pfn { m, n })
    }

    /// Results of closed operations; components are already in `[0,1]`.
    pub(crate) fn raw(m: f64, n: f64) -> Self {
        debug_assert!(m.is_finite() && n.is_finite());
        Pfn { m, n }
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    /// Whether the stored pair satisfies the PFN invariants.
    pub fn is_valid(&self) -> bool {
        Pfn::new(self.m, self.n).is_ok()
    }

    /// Degree of indeterminacy `√(1 − m² − n²)`.
    pub fn indeterminacy(&self) -> f64 {
        (1.0 - self.m * self.m - self.n * self.n).max(0.0).sqrt()
    }

    pub fn complement(&self) -> Pfn {
        Pfn::raw(self.n, self.m)
    }

    pub fn join(&self, other: &Pfn) -> Pfn {
        Pfn::raw(self.m.max(other.m), self.n.min(other.n))
    }

    pub fn meet(&self, other: &Pfn) -> Pfn {
        Pfn::raw(self.m.min(other.m), self.n.max(other.n))
    }

    /// `a +_P b = (√(m_a² + m_b² − m_a²m_b²), n_a·n_b)`.
    pub fn add_p(&self, other: &Pfn) -> Pfn {
        Pfn::raw(pythagorean_sum(self.m, other.m), self.n * other.n)
    }

    /// `a ×_P b = (m_a·m_b, √(n_a² + n_b² − n_a²n_b²))`.
    pub fn mul_p(&self, other: &Pfn) -> Pfn {
        Pfn::raw(self.m * other.m, pythagorean_sum(self.n, other.n))
    }

    /// `α·x = (√(1 − (1 − m²)^α), n^α)`.
    pub fn scalar_mul(&self, alpha: f64) -> Result<Pfn, PfnError> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(PfnError::NonPositiveScalar(alpha));
        }
        Ok(Pfn::raw(pythagorean_scale(self.m, alpha), self.n.powf(alpha)))
    }

    /// `x^α = (m^α, √(1 − (1 − n²)^α))`.
    pub fn power(&self, alpha: f64) -> Result<Pfn, PfnError> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(PfnError::NonPositiveScalar(alpha));
        }
        Ok(Pfn::raw(self.m.powf(alpha), pythagorean_scale(self.n, alpha)))
    }

    /// Score `m² − n²`, in `[−1, 1]`.
    pub fn score(&self) -> f64 {
        self.m * self.m - self.n * self.n
    }

    /// Accuracy `m² + n²`, in `[0, 1]`.
    pub fn accuracy(&self) -> f64 {
        self.m * self.m + self.n * self.n
    }

    /// Expectation score `(m² − n² + 1) / 2`, in `[0, 1]`.
    pub fn expectation_score(&self) -> f64 {
        (self.score() + 1.0) / 2.0
    }

    pub fn compare(&self, other: &Pfn, order: OrderKind) -> PfnOrdering {
        let lex = |a: (f64, f64), b: (f64, f64)| -> PfnOrdering {
            cmp_key(a.0, b.0).then_with(|| cmp_key(a.1, b.1)).into()
        };
        match order {
            OrderKind::LatticeOrder => {
                let dm = cmp_key(self.m, other.m);
                // larger n is lower in the lattice
                let dn = cmp_key(other.n, self.n);
                match (dm, dn) {
                    (Ordering::Equal, d) | (d, Ordering::Equal) => d.into(),
                    (a, b) if a == b => a.into(),
                    _ => PfnOrdering::Incomparable,
                }
            }
            OrderKind::ScoreAccuracy => lex(
                (self.score(), self.accuracy()),
                (other.score(), other.accuracy()),
            ),
            OrderKind::MembershipThenES => lex(
                (self.m, self.expectation_score()),
                (other.m, other.expectation_score()),
            ),
            OrderKind::ESThenMembership => lex(
                (self.expectation_score(), self.m),
                (other.expectation_score(), other.m),
            ),
        }
    }

    /// `self ≤ other` in the lattice order (within tolerance).
    pub fn lattice_le(&self, other: &Pfn) -> bool {
        self.compare(other, OrderKind::LatticeOrder).is_le()
    }

    /// Componentwise equality within [`COMPARE_EPS`].
    pub fn approx_eq(&self, other: &Pfn) -> bool {
        self.approx_eq_within(other, COMPARE_EPS)
    }

    pub fn approx_eq_within(&self, other: &Pfn, tol: f64) -> bool {
        (self.m - other.m).abs() <= tol && (self.n - other.n).abs() <= tol
    }
}

impl fmt::Display for Pfn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "({:.*}, {:.*})", p, self.m, p, self.n),
            None => write!(f, "({}, {})", self.m, self.n),
        }
    }
}

/// Parses the textual form `m,n`, optionally wrapped in parentheses.
impl FromStr for Pfn {
    type Err = PfnError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (m, n) = parse_pair(s)?;
        Pfn::new(m, n)
    }
}

/// Reads the two numbers of `m,n` / `(m,n)` without range checks.
pub fn parse_pair(s: &str) -> Result<(f64, f64), PfnError> {
    let err = || PfnError::Parse(s.to_string());
    let t = s.trim();
    let t = match t.strip_prefix('(') {
        Some(inner) => inner.strip_suffix(')').ok_or_else(err)?,
        None => t,
    };
    let (m, n) = t.split_once(',').ok_or_else(err)?;
    let m: f64 = m.trim().parse().map_err(|_| err())?;
    let n: f64 = n.trim().parse().map_err(|_| err())?;
    Ok((m, n))
}
