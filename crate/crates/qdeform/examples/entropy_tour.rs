//! Entropy functionals generated by the four classes: closed forms versus
//! the derivative-based generator route, the power-mean entropy's exact
//! linear scaling under correlated composition, and an admissibility scan
//! (sign, concavity, expansibility) over the two-state simplex.
//!
//! Run with `cargo run --example entropy_tour`.

use qdeform::qentropy::{
    admissibility_report, extensivity_pair, s_delta_closed, s_delta_via_generator, s_tsallis,
    s_via_jackson, Distribution,
};
use qdeform::qnumbers::ALL_CLASSES;
use qdeform::{ExtReal, QParam};

fn qp(q: f64) -> QParam {
    QParam::new(q).unwrap()
}

fn main() {
    let q = qp(2.0);
    let dist = Distribution::two_state(0.3).unwrap();

    println!("entropy of the two-state distribution (0.3, 0.7) at q = 2:");
    for cls in ALL_CLASSES {
        let closed = s_delta_closed(cls, q, &dist);
        let generated = s_delta_via_generator(cls, q, &dist);
        println!(
            "  {:>4}: closed {closed}, via generator {generated}",
            cls.name()
        );
    }
    println!(
        "  the oel functional is the power-mean entropy: {} = {}",
        s_delta_closed(qdeform::DeformClass::Oel, q, &dist),
        s_tsallis(&dist, q)
    );

    println!("\nthe q-difference-quotient route gives the same power-mean entropy:");
    for q in [0.5, 2.0] {
        let a = s_tsallis(&dist, qp(q));
        let b = s_via_jackson(&dist, qp(q));
        println!("  q={q}: closed {a:.12}, difference quotient {b}");
    }

    println!("\nlinear scaling under correlated composition: composing n subsystems");
    println!("with the oel power keeps ln_q(composed states) = n * ln_q(w1).");
    println!("  q = 0.5, w1 = 2 (the composed state count exists for every n):");
    for n in [1.0, 2.0, 4.0, 8.0] {
        let (composed, unit) = extensivity_pair(qp(0.5), 2.0, n);
        println!("    n={n}: {} vs {}", short(composed), short(unit));
    }
    println!("  q = 2, w1 = 1.2 (the composed state count exists only for n < 6,");
    println!("  after which the left side saturates):");
    for n in [2.0, 5.0, 7.0] {
        let (composed, unit) = extensivity_pair(qp(2.0), 1.2, n);
        println!("    n={n}: {} vs {}", short(composed), short(unit));
    }

    println!("\nadmissibility scan on p in [0, 1] (1001 points):");
    println!(
        "  {:>4} {:>4} {:>8} {:>12} {:>12} {:>9} {:>12} {:>11}",
        "cls", "q", "defined", "certainty", "min", "negative", "concavity", "expansible"
    );
    for q in [0.5, 2.0] {
        for cls in ALL_CLASSES {
            let r = admissibility_report(cls, qp(q), 1001);
            let exp = match r.expansible {
                Some(true) => "yes",
                Some(false) => "no",
                None => "undefined",
            };
            println!(
                "  {:>4} {:>4} {:>8} {:>12} {:>12} {:>9} {:>12} {:>11}",
                cls.name(),
                q,
                format!("{}/{}", r.defined_points, r.grid_points),
                short(r.certainty),
                short(r.min_value),
                if r.has_negative { "yes" } else { "no" },
                r.concavity.name(),
                exp
            );
        }
    }
    println!("\n  only the oel functional stays clean at every q; each other class breaks");
    println!("  somewhere (sign, definedness, concavity, or expansibility) on one side of q = 1.");
}

fn short(v: ExtReal) -> String {
    match v {
        ExtReal::Finite(x) => format!("{x:.5}"),
        ExtReal::Undefined(_) => "undefined".to_string(),
        other => other.to_string(),
    }
}
