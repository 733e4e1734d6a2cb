//! The four deformed-number classes: the maps themselves, their mutual
//! inverses, fixed points, and the asymptotes / cutoffs that distinguish
//! them away from q = 1.
//!
//! Run with `cargo run --example number_classes`.

use qdeform::qnumbers::{deform, fixed_points, undeform, ALL_CLASSES};
use qdeform::{DeformClass, ExtReal, QParam};

fn qp(q: f64) -> QParam {
    QParam::new(q).unwrap()
}

/// Fixed-precision cell: decimals for finite values, short tags otherwise.
fn cell(v: ExtReal) -> String {
    match v {
        ExtReal::Finite(x) => format!("{x:.5}"),
        ExtReal::Undefined(_) => "undefined".to_string(),
        other => other.to_string(),
    }
}

fn main() {
    let xs = [0.0, 0.25, 0.5, 1.0, 2.0];

    for q in [0.5, 3.0] {
        println!("deformed numbers at q = {q} (rows: class, columns: x)");
        print!("{:>6}", "");
        for x in xs {
            print!("{x:>16}");
        }
        println!();
        for cls in ALL_CLASSES {
            print!("{:>6}", cls.name());
            for x in xs {
                print!("{:>16}", cell(deform(cls, qp(q), x)));
            }
            println!();
        }
        println!();
    }
    println!("note the ile pole at q=3: the bracket 1 + (1-q)x crosses zero at x = 0.5,");
    println!("and iel has no value at x = 0 for q < 1 (undefined, not a limit).\n");

    let q = qp(2.0);
    println!("each class composed with its complement is the identity (q = 2, x inside");
    println!("every bracket — the ile pole at q = 2 sits at x = 1):");
    for cls in ALL_CLASSES {
        let x = 0.7;
        let roundtrip = match deform(cls, q, x) {
            ExtReal::Finite(v) => deform(cls.complement(), q, v),
            other => other,
        };
        println!(
            "  {}({}) then {} gives {}",
            cls.name(),
            x,
            cls.complement().name(),
            roundtrip
        );
    }

    println!("\nundeform inverts each map directly:");
    for cls in ALL_CLASSES {
        let x = 0.7;
        if let ExtReal::Finite(v) = deform(cls, q, x) {
            println!("  undeform({}, {v:.6}) = {}", cls.name(), undeform(cls, q, v));
        }
    }

    println!("\nfixed points (where the deformed number equals its argument):");
    for q in [0.5, 2.0] {
        for cls in [DeformClass::Ile, DeformClass::Ole, DeformClass::Iel, DeformClass::Oel] {
            let pts = fixed_points(cls, qp(q));
            let shown: Vec<String> = pts.iter().map(|p| format!("{p:.6}")).collect();
            println!("  q={q:>4} {:>4}: [{}]", cls.name(), shown.join(", "));
        }
    }
}
