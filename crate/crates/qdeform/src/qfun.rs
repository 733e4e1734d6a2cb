//! The deformed logarithm/exponential pair that generates everything else.
//!
//! `ln_q x = (x^(1-q) - 1)/(1-q)` for `x > 0`, and its inverse
//! `exp_q x = [1 + (1-q) x]_+^(1/(1-q))`, where `[.]_+` clips the bracket at
//! zero. Both collapse to `ln`/`exp` inside the classical guard band.
//!
//! Value conventions at the edges follow the extended-real model:
//!
//! * `ln_q 0` is `-1/(1-q)` for `q < 1` and `-inf` for `q >= 1`;
//!   `ln_q inf` is `inf` for `q <= 1` and `1/(q-1)` for `q > 1`.
//! * For `q < 1`, `exp_q x = 0` once `x <= -1/(1-q)` (the cutoff).
//!   For `q > 1`, `exp_q x = inf` once `x >= 1/(q-1)` (the divergence).
//!
//! Internally the pair is computed as `expm1((1-q) ln x)/(1-q)` and
//! `exp(ln1p((1-q) x)/(1-q))`, which keeps the round trip tight for `q`
//! arbitrarily close to the guard band.

use crate::extreal::{ExtReal, Reason};
use crate::qparam::QParam;

/// Deformed logarithm of a finite argument.
pub fn ln_q(q: QParam, x: f64) -> ExtReal {
    if x.is_nan() {
        return ExtReal::Undefined(Reason::Indeterminate);
    }
    if x < 0.0 {
        return ExtReal::Undefined(Reason::DomainViolation);
    }
    if x == 0.0 {
        return if q.q() < 1.0 && !q.is_classical() {
            ExtReal::Finite(-1.0 / q.omq())
        } else {
            ExtReal::NegInf
        };
    }
    if x.is_infinite() {
        return ln_q_ext(q, ExtReal::PosInf);
    }
    if q.is_classical() {
        return ExtReal::from_f64(x.ln());
    }
    ExtReal::from_f64((q.omq() * x.ln()).exp_m1() / q.omq())
}

/// Deformed logarithm on extended-real arguments.
pub fn ln_q_ext(q: QParam, x: ExtReal) -> ExtReal {
    match x {
        ExtReal::Finite(v) => ln_q(q, v),
        ExtReal::PosInf => {
            if q.q() > 1.0 && !q.is_classical() {
                ExtReal::Finite(1.0 / (q.q() - 1.0))
            } else {
                ExtReal::PosInf
            }
        }
        ExtReal::NegInf => ExtReal::Undefined(Reason::DomainViolation),
        u @ ExtReal::Undefined(_) => u,
    }
}

/// Deformed exponential of a finite argument.
pub fn exp_q(q: QParam, x: f64) -> ExtReal {
    if x.is_nan() {
        return ExtReal::Undefined(Reason::Indeterminate);
    }
    if x.is_infinite() {
        return exp_q_ext(q, ExtReal::from_f64(x));
    }
    if q.is_classical() {
        return ExtReal::from_f64(x.exp());
    }
    let bracket = 1.0 + q.omq() * x;
    if bracket > 0.0 {
        ExtReal::from_f64(((q.omq() * x).ln_1p() / q.omq()).exp())
    } else if q.q() < 1.0 {
        // At and beyond the cutoff the clipped bracket gives exactly zero.
        ExtReal::Finite(0.0)
    } else {
        // q > 1: the bracket vanishes with a negative exponent, so this is
        // the divergence side.
        ExtReal::PosInf
    }
}

/// Deformed exponential on extended-real arguments.
///
/// `exp_q(-inf) = 0` and `exp_q(inf) = inf` for every `q`, matching the
/// closures of the edge values of `ln_q`.
pub fn exp_q_ext(q: QParam, x: ExtReal) -> ExtReal {
    match x {
        ExtReal::Finite(v) => exp_q(q, v),
        ExtReal::PosInf => ExtReal::PosInf,
        ExtReal::NegInf => ExtReal::Finite(0.0),
        u @ ExtReal::Undefined(_) => u,
    }
}

/// Argument at which the `q < 1` cutoff (or `q > 1` divergence) of `exp_q`
/// sits: `-1/(1-q)` for `q < 1`, `1/(q-1)` for `q > 1`, none classically.
pub fn exp_q_edge(q: QParam) -> Option<f64> {
    if q.is_classical() {
        None
    } else {
        Some(-1.0 / q.omq())
    }
}

/// Residual of the generalized product law
/// `ln_q(xy) = ln_q x + ln_q y + (1-q) ln_q x ln_q y`.
///
/// Zero (to rounding) wherever all terms are finite; used as a self-check
/// and by the verification suites.
pub fn lnq_product_residual(q: QParam, x: f64, y: f64) -> ExtReal {
    let lhs = ln_q(q, x * y);
    let lx = ln_q(q, x);
    let ly = ln_q(q, y);
    let omq = ExtReal::Finite(q.omq());
    let rhs = lx + ly + omq * lx * ly;
    (lhs - rhs).abs()
}
