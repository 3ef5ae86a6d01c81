//! Discrete convex penalty functions on `[0, k]`.
//!
//! A penalty `phi` satisfies `phi(0) = 0`, is non-decreasing on the
//! nonnegative integers and is discrete convex:
//! `phi(x - 1) + phi(x + 1) >= 2 phi(x)`. Only the range `[0, k]` is ever
//! queried, so table penalties store exactly `k + 1` values.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConvexKind {
    /// `x^2`
    Square,
    /// `x (x - 1) / 2`
    Binom,
    /// `max(0, x - 1)`
    Cov,
    /// Explicit values on `[0, k]`.
    Table(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvexSpec {
    kind: ConvexKind,
    k_bound: usize,
}

/// Breakpoints `B_k(phi)` together with the slopes at interior breakpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BreakpointProfile {
    /// `0 = b_0 < b_1 < ... < b_z = k`.
    pub points: Vec<usize>,
    /// Left slope `phi(b_i) - phi(b_i - 1)` for each interior point `b_1..b_{z-1}`.
    pub left_slopes: Vec<i64>,
    /// Right slope `phi(b_i + 1) - phi(b_i)` for each interior point.
    pub right_slopes: Vec<i64>,
    /// Slope of `phi` on `[b_0, b_1]`.
    pub first_slope: i64,
    /// Slope of `phi` on `[b_{z-1}, b_z]`.
    pub last_slope: i64,
}

impl BreakpointProfile {
    /// Number of segments `z`.
    pub fn segments(&self) -> usize {
        self.points.len() - 1
    }

    /// Rebuild `phi(x)` from the first slope and slope increments.
    pub fn reconstruct(&self, x: usize) -> i64 {
        let mut value = self.first_slope * x as i64;
        for (i, &b) in self.points[1..self.points.len() - 1].iter().enumerate() {
            if x > b {
                value += (self.right_slopes[i] - self.left_slopes[i]) * (x - b) as i64;
            }
        }
        value
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableViolation {
    Empty,
    NonzeroOrigin { value: i64 },
    NotMonotone { index: usize },
    NotConvex { index: usize },
}

impl fmt::Display for TableViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableViolation::Empty => write!(f, "table is empty"),
            TableViolation::NonzeroOrigin { value } => write!(f, "phi(0) = {value}, expected 0"),
            TableViolation::NotMonotone { index } => {
                write!(f, "decreasing at index {index}")
            }
            TableViolation::NotConvex { index } => write!(f, "not convex at index {index}"),
        }
    }
}

/// Check a table of values `phi(0..=k)` and wrap it as a [`ConvexSpec`].
///
/// Every violated condition is reported, in the order origin, monotonicity,
/// convexity.
pub fn validate_table(values: &[i64]) -> Result<ConvexSpec> {
    let mut violations = Vec::new();
    if values.is_empty() {
        return Err(Error::ConvexTable(vec![TableViolation::Empty]));
    }
    if values[0] != 0 {
        violations.push(TableViolation::NonzeroOrigin { value: values[0] });
    }
    for i in 1..values.len() {
        if values[i] < values[i - 1] {
            violations.push(TableViolation::NotMonotone { index: i });
        }
    }
    for x in 1..values.len().saturating_sub(1) {
        let lhs = values[x - 1] as i128 + values[x + 1] as i128;
        if lhs < 2 * values[x] as i128 {
            violations.push(TableViolation::NotConvex { index: x });
        }
    }
    if !violations.is_empty() {
        return Err(Error::ConvexTable(violations));
    }
    Ok(ConvexSpec {
        kind: ConvexKind::Table(values.to_vec()),
        k_bound: values.len() - 1,
    })
}

impl ConvexSpec {
    pub fn square(k: usize) -> Self {
        Self::closed_form(ConvexKind::Square, k)
    }

    pub fn binom(k: usize) -> Self {
        Self::closed_form(ConvexKind::Binom, k)
    }

    pub fn cov(k: usize) -> Self {
        Self::closed_form(ConvexKind::Cov, k)
    }

    fn closed_form(kind: ConvexKind, k_bound: usize) -> Self {
        Self { kind, k_bound }
    }

    pub fn kind(&self) -> &ConvexKind {
        &self.kind
    }

    pub fn k_bound(&self) -> usize {
        self.k_bound
    }

    /// Same function, queried on `[0, k]` instead. Tables cannot grow.
    pub fn with_bound(&self, k: usize) -> Result<Self> {
        if let ConvexKind::Table(values) = &self.kind {
            if k >= values.len() {
                return Err(Error::ConvexOutOfRange {
                    x: k as i64,
                    bound: self.k_bound,
                });
            }
        }
        Ok(Self {
            kind: self.kind.clone(),
            k_bound: k,
        })
    }

    pub fn eval(&self, x: i64) -> Result<i64> {
        if x < 0 || x as u64 > self.k_bound as u64 {
            return Err(Error::ConvexOutOfRange {
                x,
                bound: self.k_bound,
            });
        }
        Ok(self.eval_unchecked(x as usize))
    }

    /// Caller guarantees `x <= k_bound`.
    pub(crate) fn eval_unchecked(&self, x: usize) -> i64 {
        let xi = x as i64;
        match &self.kind {
            ConvexKind::Square => xi * xi,
            ConvexKind::Binom => xi * (xi - 1) / 2,
            ConvexKind::Cov => (xi - 1).max(0),
            ConvexKind::Table(values) => values[x],
        }
    }

    /// `B_k(phi) = (B(phi) ∩ [0, k]) ∪ {0, k}` with slope annotations.
    pub fn breakpoints_k(&self, k: usize) -> Result<BreakpointProfile> {
        if k == 0 {
            return Err(Error::InvalidK(0));
        }
        if k > self.k_bound {
            return Err(Error::ConvexOutOfRange {
                x: k as i64,
                bound: self.k_bound,
            });
        }
        let phi = |x: usize| self.eval_unchecked(x);
        let mut points = vec![0];
        let mut left_slopes = Vec::new();
        let mut right_slopes = Vec::new();
        for x in 1..k {
            let left = phi(x) - phi(x - 1);
            let right = phi(x + 1) - phi(x);
            if left != right {
                points.push(x);
                left_slopes.push(left);
                right_slopes.push(right);
            }
        }
        points.push(k);
        Ok(BreakpointProfile {
            points,
            left_slopes,
            right_slopes,
            first_slope: phi(1) - phi(0),
            last_slope: phi(k) - phi(k - 1),
        })
    }

    /// Short label used in reports: `square`, `binom`, `cov` or `table`.
    pub fn label(&self) -> &'static str {
        match self.kind {
            ConvexKind::Square => "square",
            ConvexKind::Binom => "binom",
            ConvexKind::Cov => "cov",
            ConvexKind::Table(_) => "table",
        }
    }
}
