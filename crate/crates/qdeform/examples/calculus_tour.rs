//! Deformed calculus: the per-class auxiliary factor, the linear and
//! nonlinear derivative families, eigenfunctions, the fundamental theorem
//! for the linear pairing — and the counterexample showing the nonlinear
//! pairing has no fundamental theorem.
//!
//! Run with `cargo run --example calculus_tour`.

use qdeform::qcalc::{
    d_linear, d_nonlinear, eigenfunction_residual, h_deform, int_linear, int_nonlinear,
    qlog_integral, Differentiable,
};
use qdeform::qfun::{exp_q, ln_q};
use qdeform::qnumbers::ALL_CLASSES;
use qdeform::{ExtReal, QParam};

fn qp(q: f64) -> QParam {
    QParam::new(q).unwrap()
}

fn main() {
    let q = qp(2.0);
    let x = 1.2;

    println!("auxiliary factor h(x) at x = {x}, q = 2 (all classes collapse to 1 at q = 1):");
    for cls in ALL_CLASSES {
        println!("  {:>4}: {}", cls.name(), h_deform(cls, q, x));
    }

    let cube = |t: f64| ExtReal::from_f64(t * t * t);
    let dcube = |t: f64| ExtReal::from_f64(3.0 * t * t);
    let f = Differentiable::with_derivative(&cube, &dcube);
    println!("\nderivatives of t^3 at t = {x} (ordinary value: {}):", 3.0 * x * x);
    for cls in ALL_CLASSES {
        println!(
            "  {:>4}: linear {}, nonlinear {}",
            cls.name(),
            d_linear(cls, q, f, x),
            d_nonlinear(cls, q, f, x)
        );
    }

    println!("\nthe deformed exponential is the unit eigenfunction of each class's");
    println!("nonlinear derivative (residual of D~ e_q - e_q at a few points):");
    for cls in ALL_CLASSES {
        for t in [0.2, 0.6] {
            let r = eigenfunction_residual(cls, q, t);
            println!("  {:>4} at t={t}: {r}", cls.name());
        }
    }

    println!("\nfundamental theorem, linear pairing: integrating D F recovers F(b) - F(a)");
    let pf = |t: f64| ExtReal::from_f64((0.3 * t).sin() + t);
    let pdf = |t: f64| ExtReal::from_f64(0.3 * (0.3 * t).cos() + 1.0);
    let big_f = Differentiable::with_derivative(&pf, &pdf);
    let (a, b) = (0.3_f64, 1.5_f64);
    let want = ((0.3 * b).sin() + b) - ((0.3 * a).sin() + a);
    for cls in ALL_CLASSES {
        let integrand = |t: f64| d_linear(cls, qp(0.5), big_f, t);
        let got = int_linear(cls, qp(0.5), &integrand, a, b).expect("integrable");
        println!(
            "  {:>4}: integral {:.12}, F(b)-F(a) {want:.12}, gap {:.2e}",
            cls.name(),
            got.value,
            (got.value - want).abs()
        );
    }

    println!("\nno fundamental theorem for the nonlinear pairing — counterexample:");
    let q5 = qp(0.5);
    let eq = |t: f64| exp_q(q5, t);
    let g = Differentiable::new(&eq);
    let integrand = |t: f64| d_nonlinear(qdeform::DeformClass::Ole, q5, g, t);
    let got = int_nonlinear(qdeform::DeformClass::Ole, q5, &integrand, 0.0, 1.0)
        .expect("integrable");
    let want = exp_q(q5, 1.0).to_f64() - exp_q(q5, 0.0).to_f64();
    println!(
        "  ole, q=0.5, f = e_q on [0, 1]: integral {:.6}, f(1)-f(0) {want:.6}, gap {:.3}",
        got.value,
        (got.value - want).abs()
    );

    println!("\nthe deformed logarithm as an area: ln_q x = integral of t^(-q) from 1 to x");
    for (q, x) in [(2.0, 3.0), (0.5, 0.2)] {
        let area = qlog_integral(qp(q), x).expect("integrable").value;
        let direct = ln_q(qp(q), x).to_f64();
        println!("  q={q}, x={x}: quadrature {area:.12}, closed form {direct:.12}");
    }
}
