//! Deformation parameter with the classical-limit guard band.

use std::fmt;

/// Width of the band around `q = 1` inside which all maps switch to their
/// classical (`q = 1`) branch instead of evaluating `1/(1-q)` expressions.
pub const CLASSICAL_EPS: f64 = 1e-12;

/// Validated deformation parameter.
///
/// Holds `q` together with the cached `1 - q`, and answers whether `q` is
/// inside the classical guard band. The companion base `2 - q` links the
/// outer-linear repetition rule to classical base-Q brackets
/// `(Q^n - 1)/(Q - 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QParam {
    q: f64,
    one_minus_q: f64,
}

impl QParam {
    /// Rejects NaN and infinite parameters.
    pub fn new(q: f64) -> Result<Self, InvalidParam> {
        if q.is_finite() {
            Ok(QParam {
                q,
                one_minus_q: 1.0 - q,
            })
        } else {
            Err(InvalidParam { value: q })
        }
    }

    pub fn q(self) -> f64 {
        self.q
    }

    /// Cached `1 - q`.
    pub fn omq(self) -> f64 {
        self.one_minus_q
    }

    /// True inside the guard band `|q - 1| <= 1e-12`.
    pub fn is_classical(self) -> bool {
        (self.q - 1.0).abs() <= CLASSICAL_EPS
    }

    /// Companion base `Q = 2 - q` of the classical Q-bracket analogy.
    pub fn companion_base(self) -> f64 {
        2.0 - self.q
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvalidParam {
    pub value: f64,
}

impl fmt::Display for InvalidParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "deformation parameter must be finite, got {}", self.value)
    }
}

impl std::error::Error for InvalidParam {}
