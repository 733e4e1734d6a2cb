//! Generalized arithmetic per class: the four binary operations, the
//! algebraic laws they keep (commutativity, associativity, distributivity),
//! the structure elements (neutrals, opposites, inverses — including the
//! classes where a neutral is an interval or does not exist), and the two
//! derived products: generalized power and repetition.
//!
//! Run with `cargo run --example arithmetic_laws`.

use qdeform::qarith::{absorbing, dot_mul, inv_mul, neg, neutral_add, neutral_mul, op_closed, tpow};
use qdeform::qnumbers::ALL_CLASSES;
use qdeform::verify::relative_residual;
use qdeform::{BinOpKind, Element, ExtReal, QParam};

fn qp(q: f64) -> QParam {
    QParam::new(q).unwrap()
}

fn fin(v: ExtReal) -> f64 {
    v.finite().expect("finite in this demo range")
}

/// Fixed-precision cell: decimals for finite values, tags verbatim.
fn cell(v: ExtReal) -> String {
    match v.finite() {
        Some(x) => format!("{x:.5}"),
        None => v.to_string(),
    }
}

fn show_element(e: Element) -> String {
    match e {
        Element::Point(v) => format!("{v:.6}"),
        Element::Interval { max_abs } => format!("every |n| <= {max_abs:.6}"),
        Element::Conditional {
            value,
            operand_abs_below,
        } => format!("{value} (only against |x| < {operand_abs_below})"),
        Element::Nonexistent(reason) => format!("none ({reason})"),
    }
}

fn main() {
    let q = qp(0.5);
    let (x, y, z) = (2.0, 3.0, 1.5);

    println!("binary operations at q = 0.5 on ({x}, {y}):");
    print!("{:>6}", "");
    for kind in [BinOpKind::Add, BinOpKind::Sub, BinOpKind::Mul, BinOpKind::Div] {
        print!("{:>12}", format!("{kind:?}"));
    }
    println!();
    for cls in ALL_CLASSES {
        print!("{:>6}", cls.name());
        for kind in [BinOpKind::Add, BinOpKind::Sub, BinOpKind::Mul, BinOpKind::Div] {
            print!("{:>12}", cell(op_closed(cls, kind, q, x, y)));
        }
        println!();
    }
    println!("(finite operands can clip: ile subtraction lands past the bracket edge here)");

    println!("\nlaws carried over from ordinary (+, *) by conjugation, checked at ({x}, {y}, {z}):");
    for cls in ALL_CLASSES {
        let add = |a: f64, b: f64| fin(op_closed(cls, BinOpKind::Add, q, a, b));
        let mul = |a: f64, b: f64| fin(op_closed(cls, BinOpKind::Mul, q, a, b));
        let comm = relative_residual(add(x, y), add(y, x));
        let assoc = relative_residual(add(add(x, y), z), add(x, add(y, z)));
        let dist = relative_residual(mul(x, add(y, z)), add(mul(x, y), mul(x, z)));
        println!(
            "  {:>4}: commutativity {comm:.2e}, associativity {assoc:.2e}, distributivity {dist:.2e}",
            cls.name()
        );
    }

    println!("\nstructure elements at q = 0.5 (note the interval and the missing one):");
    for cls in ALL_CLASSES {
        println!(
            "  {:>4}: add-neutral {}, mul-neutral {}, absorber {}",
            cls.name(),
            show_element(neutral_add(cls, q)),
            show_element(neutral_mul(cls, q)),
            show_element(absorbing(cls, q)),
        );
    }

    println!("\nopposites and inverses return to the neutral set:");
    for cls in ALL_CLASSES {
        let opp = neg(cls, q, y);
        let inv = inv_mul(cls, q, y);
        let back_add = match opp {
            ExtReal::Finite(o) => format!("{}", op_closed(cls, BinOpKind::Add, q, y, o)),
            other => format!("(opposite {other})"),
        };
        let back_mul = match inv {
            ExtReal::Finite(i) => format!("{}", op_closed(cls, BinOpKind::Mul, q, y, i)),
            other => format!("(inverse {other})"),
        };
        println!(
            "  {:>4}: y add neg(y) = {back_add}, y mul inv(y) = {back_mul}",
            cls.name()
        );
    }

    println!("\ngeneralized power agrees with repeated class multiplication:");
    for cls in ALL_CLASSES {
        let threefold = fin(op_closed(
            cls,
            BinOpKind::Mul,
            q,
            fin(op_closed(cls, BinOpKind::Mul, q, x, x)),
            x,
        ));
        let power = fin(tpow(cls, q, x, 3.0));
        println!(
            "  {:>4}: x mul x mul x = {threefold:.10}, tpow(x, 3) = {power:.10} (residual {:.2e})",
            cls.name(),
            relative_residual(threefold, power)
        );
    }

    println!("\nrepetition (dot) product agrees with repeated class addition:");
    for cls in ALL_CLASSES {
        let threefold = fin(op_closed(
            cls,
            BinOpKind::Add,
            q,
            fin(op_closed(cls, BinOpKind::Add, q, y, y)),
            y,
        ));
        let dotted = fin(dot_mul(cls, q, 3.0, y));
        println!(
            "  {:>4}: y add y add y = {threefold:.10}, dot_mul(3, y) = {dotted:.10} (residual {:.2e})",
            cls.name(),
            relative_residual(threefold, dotted)
        );
    }
}
