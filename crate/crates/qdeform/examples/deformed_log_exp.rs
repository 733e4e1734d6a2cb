//! Tour of the deformed logarithm/exponential pair: values across the
//! q panel, mutual inversion, the cutoff and divergence edges, and how the
//! product rule of the ordinary logarithm deforms.
//!
//! Run with `cargo run --example deformed_log_exp`.

use qdeform::qfun::{exp_q, exp_q_edge, ln_q, lnq_product_residual};
use qdeform::QParam;

fn qp(q: f64) -> QParam {
    QParam::new(q).unwrap()
}

fn main() {
    let qs = [-1.0, 0.5, 1.0, 2.0, 3.0];
    let xs = [0.1, 0.5, 1.0, 2.0, 10.0];

    println!("ln_q x (rows: q, columns: x)");
    print!("{:>8}", "q \\ x");
    for x in xs {
        print!("{x:>12}");
    }
    println!();
    for q in qs {
        print!("{q:>8}");
        for x in xs {
            print!("{:>12.5}", ln_q(qp(q), x).to_f64());
        }
        println!();
    }

    println!("\nexp_q is the inverse on the image of ln_q:");
    for q in [0.5, 2.0] {
        let x = 7.0;
        let back = exp_q(qp(q), ln_q(qp(q), x).to_f64());
        println!("  q={q}: exp_q(ln_q({x})) = {back}");
    }

    println!("\nedges of exp_q (argument where the map clips or diverges):");
    for q in qs {
        match exp_q_edge(qp(q)) {
            Some(edge) if q < 1.0 => {
                let below = exp_q(qp(q), edge - 0.5);
                println!("  q={q:>4}: clips to 0 at x <= {edge} (e.g. exp_q({:.1}) = {below})", edge - 0.5);
            }
            Some(edge) => {
                let at = exp_q(qp(q), edge);
                println!("  q={q:>4}: diverges at x >= {edge} (exp_q({edge}) = {at})");
            }
            None => println!("  q={q:>4}: entire, no edge"),
        }
    }

    println!("\nln_q saturates for q > 1: ln_q(inf) at q=2 is {}", ln_q(qp(2.0), f64::INFINITY));

    println!("\nln_q(x*y) - ln_q(x) - ln_q(y) (zero only classically):");
    for q in [1.0, 2.0] {
        let r = lnq_product_residual(qp(q), 2.0, 5.0);
        println!("  q={q}: residual at (2, 5) = {r}");
    }
}
