//! Extended-real value model used by every operation in this crate.
//!
//! A computation result is either a finite `f64`, a signed infinity, or
//! `Undefined` carrying a machine-readable reason. Cutoffs and divergences
//! are ordinary values (`0`, `inf`, `-inf`); `Undefined` is reserved for
//! genuine domain violations and nonexistent elements.

use std::fmt;

/// Machine-readable reason attached to an undefined result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    /// Argument outside the domain of the map (e.g. log of a negative number).
    DomainViolation,
    /// The requested element does not exist for this class / parameter range.
    NoSuchElement,
    /// Division by zero.
    DivisionByZero,
    /// Evaluation at a pole of the expression.
    Pole,
    /// Indeterminate combination (`inf - inf`, `0 * inf`, `inf / inf`, NaN).
    Indeterminate,
    /// Value lies outside the image of the map being inverted.
    OutsideImage,
    /// Numerical routine failed to reach the requested accuracy.
    DidNotConverge,
}

impl Reason {
    /// Short stable code used in CLI output and reports.
    pub fn code(self) -> &'static str {
        match self {
            Reason::DomainViolation => "domain-violation",
            Reason::NoSuchElement => "no-such-element",
            Reason::DivisionByZero => "division-by-zero",
            Reason::Pole => "pole",
            Reason::Indeterminate => "indeterminate",
            Reason::OutsideImage => "outside-image",
            Reason::DidNotConverge => "did-not-converge",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// A finite number, a signed infinity, or an undefined value.
///
/// Invariant: `Finite` never holds a NaN or infinite payload; constructors
/// normalize those into the matching tagged variant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    PosInf,
    NegInf,
    Undefined(Reason),
}

pub use ExtReal::{NegInf, PosInf};

impl ExtReal {
    /// Normalizing constructor: infinities and NaN map to tagged variants.
    pub fn from_f64(v: f64) -> Self {
        if v.is_nan() {
            ExtReal::Undefined(Reason::Indeterminate)
        } else if v == f64::INFINITY {
            PosInf
        } else if v == f64::NEG_INFINITY {
            NegInf
        } else {
            ExtReal::Finite(v)
        }
    }

    pub fn undefined(reason: Reason) -> Self {
        ExtReal::Undefined(reason)
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn is_undefined(self) -> bool {
        matches!(self, ExtReal::Undefined(_))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, PosInf | NegInf)
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Finite payload, or the IEEE value for the tags (`inf`, `-inf`, NaN).
    pub fn to_f64(self) -> f64 {
        match self {
            ExtReal::Finite(v) => v,
            PosInf => f64::INFINITY,
            NegInf => f64::NEG_INFINITY,
            ExtReal::Undefined(_) => f64::NAN,
        }
    }

    /// Sign in {-1.0, 0.0, 1.0}; undefined propagates.
    pub fn signum0(self) -> ExtReal {
        match self {
            ExtReal::Finite(v) => ExtReal::Finite(signum0(v)),
            PosInf => ExtReal::Finite(1.0),
            NegInf => ExtReal::Finite(-1.0),
            u @ ExtReal::Undefined(_) => u,
        }
    }

    pub fn abs(self) -> ExtReal {
        match self {
            ExtReal::Finite(v) => ExtReal::Finite(v.abs()),
            PosInf | NegInf => PosInf,
            u @ ExtReal::Undefined(_) => u,
        }
    }

    /// Natural logarithm with the extended conventions
    /// `ln 0 = -inf`, `ln inf = inf`, `ln x` undefined for `x < 0`.
    pub fn ln(self) -> ExtReal {
        match self {
            ExtReal::Finite(v) if v > 0.0 => ExtReal::from_f64(v.ln()),
            ExtReal::Finite(v) if v == 0.0 => NegInf,
            ExtReal::Finite(_) => ExtReal::Undefined(Reason::DomainViolation),
            PosInf => PosInf,
            NegInf => ExtReal::Undefined(Reason::DomainViolation),
            u @ ExtReal::Undefined(_) => u,
        }
    }

    /// Exponential with `exp(-inf) = 0`, `exp(inf) = inf`.
    pub fn exp(self) -> ExtReal {
        match self {
            ExtReal::Finite(v) => ExtReal::from_f64(v.exp()),
            PosInf => PosInf,
            NegInf => ExtReal::Finite(0.0),
            u @ ExtReal::Undefined(_) => u,
        }
    }

    pub fn recip(self) -> ExtReal {
        match self {
            ExtReal::Finite(v) if v != 0.0 => ExtReal::from_f64(v.recip()),
            ExtReal::Finite(_) => ExtReal::Undefined(Reason::DivisionByZero),
            PosInf | NegInf => ExtReal::Finite(0.0),
            u @ ExtReal::Undefined(_) => u,
        }
    }

    /// Real power for a nonnegative base: `0^y` is `0` for `y > 0`, `1` for
    /// `y = 0`, `inf` for `y < 0`; undefined for negative bases.
    pub fn powf(self, y: f64) -> ExtReal {
        if y.is_nan() {
            return ExtReal::Undefined(Reason::Indeterminate);
        }
        match self {
            ExtReal::Finite(b) if b > 0.0 => ExtReal::from_f64(b.powf(y)),
            ExtReal::Finite(b) if b == 0.0 => {
                if y > 0.0 {
                    ExtReal::Finite(0.0)
                } else if y == 0.0 {
                    ExtReal::Finite(1.0)
                } else {
                    PosInf
                }
            }
            ExtReal::Finite(_) => ExtReal::Undefined(Reason::DomainViolation),
            PosInf => {
                if y > 0.0 {
                    PosInf
                } else if y == 0.0 {
                    ExtReal::Finite(1.0)
                } else {
                    ExtReal::Finite(0.0)
                }
            }
            NegInf => ExtReal::Undefined(Reason::DomainViolation),
            u @ ExtReal::Undefined(_) => u,
        }
    }
}

/// Sign with `signum0(0) = 0` (both IEEE zeros).
pub fn signum0(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

impl std::ops::Neg for ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        match self {
            ExtReal::Finite(v) => ExtReal::Finite(-v),
            PosInf => NegInf,
            NegInf => PosInf,
            u @ ExtReal::Undefined(_) => u,
        }
    }
}

impl std::ops::Add for ExtReal {
    type Output = ExtReal;
    fn add(self, rhs: ExtReal) -> ExtReal {
        use ExtReal::*;
        match (self, rhs) {
            (u @ Undefined(_), _) | (_, u @ Undefined(_)) => u,
            (Finite(a), Finite(b)) => ExtReal::from_f64(a + b),
            (PosInf, NegInf) | (NegInf, PosInf) => Undefined(Reason::Indeterminate),
            (PosInf, _) | (_, PosInf) => PosInf,
            (NegInf, _) | (_, NegInf) => NegInf,
        }
    }
}

impl std::ops::Sub for ExtReal {
    type Output = ExtReal;
    fn sub(self, rhs: ExtReal) -> ExtReal {
        self + (-rhs)
    }
}

impl std::ops::Mul for ExtReal {
    type Output = ExtReal;
    fn mul(self, rhs: ExtReal) -> ExtReal {
        use ExtReal::*;
        match (self, rhs) {
            (u @ Undefined(_), _) | (_, u @ Undefined(_)) => u,
            (Finite(a), Finite(b)) => ExtReal::from_f64(a * b),
            (Finite(0.0), _) | (_, Finite(0.0)) => Undefined(Reason::Indeterminate),
            (a, b) => {
                // Both nonzero, at least one infinite: the sign rule applies.
                let neg = (a.to_f64() < 0.0) ^ (b.to_f64() < 0.0);
                if neg {
                    NegInf
                } else {
                    PosInf
                }
            }
        }
    }
}

impl std::ops::Div for ExtReal {
    type Output = ExtReal;
    fn div(self, rhs: ExtReal) -> ExtReal {
        use ExtReal::*;
        match (self, rhs) {
            (u @ Undefined(_), _) | (_, u @ Undefined(_)) => u,
            (_, Finite(0.0)) => Undefined(Reason::DivisionByZero),
            (Finite(a), Finite(b)) => ExtReal::from_f64(a / b),
            (Finite(_), PosInf | NegInf) => Finite(0.0),
            (PosInf | NegInf, PosInf | NegInf) => Undefined(Reason::Indeterminate),
            (a, Finite(b)) => {
                let neg = (a == NegInf) ^ (b < 0.0);
                if neg {
                    NegInf
                } else {
                    PosInf
                }
            }
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(v) => write!(f, "{v}"),
            PosInf => f.write_str("inf"),
            NegInf => f.write_str("-inf"),
            ExtReal::Undefined(r) => write!(f, "undefined({})", r.code()),
        }
    }
}

impl serde::Serialize for ExtReal {
    /// Finite values serialize as JSON numbers, tags as the literal tokens
    /// `"inf"`, `"-inf"`, `"undefined"`.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtReal::Finite(v) => s.serialize_f64(*v),
            PosInf => s.serialize_str("inf"),
            NegInf => s.serialize_str("-inf"),
            ExtReal::Undefined(_) => s.serialize_str("undefined"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_f64_normalizes_tags() {
        assert_eq!(ExtReal::from_f64(2.0), ExtReal::Finite(2.0));
        assert_eq!(ExtReal::from_f64(f64::INFINITY), PosInf);
        assert_eq!(ExtReal::from_f64(f64::NEG_INFINITY), NegInf);
        assert!(ExtReal::from_f64(f64::NAN).is_undefined());
    }

    #[test]
    fn indeterminate_forms_are_undefined() {
        assert!((PosInf + NegInf).is_undefined());
        assert!((ExtReal::Finite(0.0) * PosInf).is_undefined());
        assert!((PosInf / NegInf).is_undefined());
        assert!((ExtReal::Finite(1.0) / ExtReal::Finite(0.0)).is_undefined());
    }

    #[test]
    fn infinity_sign_rules() {
        assert_eq!(ExtReal::Finite(-2.0) * PosInf, NegInf);
        assert_eq!(NegInf * NegInf, PosInf);
        assert_eq!(PosInf / ExtReal::Finite(-3.0), NegInf);
        assert_eq!(ExtReal::Finite(5.0) / NegInf, ExtReal::Finite(0.0));
        assert_eq!(PosInf + ExtReal::Finite(1.0), PosInf);
    }

    #[test]
    fn undefined_propagates_with_reason() {
        let u = ExtReal::Undefined(Reason::Pole);
        assert_eq!(u + ExtReal::Finite(1.0), u);
        assert_eq!(ExtReal::Finite(2.0) * u, u);
        assert_eq!(u.ln(), u);
        assert_eq!((-u), u);
    }

    #[test]
    fn extended_log_exp_conventions() {
        assert_eq!(ExtReal::Finite(0.0).ln(), NegInf);
        assert!(ExtReal::Finite(-1.0).ln().is_undefined());
        assert_eq!(PosInf.ln(), PosInf);
        assert_eq!(NegInf.exp(), ExtReal::Finite(0.0));
        assert_eq!(PosInf.exp(), PosInf);
        // Overflow saturates to the tag rather than keeping an IEEE inf inside Finite.
        assert_eq!(ExtReal::Finite(1e300).exp(), PosInf);
    }

    #[test]
    fn powf_conventions() {
        assert_eq!(ExtReal::Finite(0.0).powf(2.0), ExtReal::Finite(0.0));
        assert_eq!(ExtReal::Finite(0.0).powf(0.0), ExtReal::Finite(1.0));
        assert_eq!(ExtReal::Finite(0.0).powf(-1.0), PosInf);
        assert!(ExtReal::Finite(-2.0).powf(0.5).is_undefined());
        assert_eq!(PosInf.powf(-2.0), ExtReal::Finite(0.0));
    }

    #[test]
    fn signum0_is_zero_at_zero() {
        assert_eq!(signum0(0.0), 0.0);
        assert_eq!(signum0(-0.0), 0.0);
        assert_eq!(signum0(-3.5), -1.0);
        assert_eq!(ExtReal::Finite(0.0).signum0(), ExtReal::Finite(0.0));
        assert_eq!(NegInf.signum0(), ExtReal::Finite(-1.0));
    }
}
