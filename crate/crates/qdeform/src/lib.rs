//! Deformed logarithms and exponentials, the four number algebras they
//! induce, the matching deformed calculus, and generalized entropy
//! functionals, together with a verification harness that cross-checks the
//! compositional definitions against the closed forms.
//!
//! The library is organized around one deformation parameter `q`:
//!
//! * [`qfun`]: the `ln_q`/`exp_q` pair with explicit cutoff semantics.
//! * [`qnumbers`]: the four deformed-number maps (`ile`, `ole`, `iel`,
//!   `oel`) and their mutual-inverse structure.
//! * [`qarith`]: generalized add/sub/mul/div per class, neutral and
//!   absorbing elements, opposites, inverses, powers, and repetition
//!   (dot) products.
//! * [`qcalc`]: the eight deformed derivatives, deformed integrals, and an
//!   adaptive quadrature routine.
//! * [`qentropy`]: entropy functionals generated by each class, their
//!   admissibility screening, and extensivity demonstrations.
//! * [`verify`]: deterministic differential tests and law suites that
//!   emit machine-readable reports.
//! * [`dataset`] and [`cli`]: grid sweeps and the command-line front end.
//!
//! Every operation returns an [`ExtReal`](extreal::ExtReal): cutoffs and
//! divergences are ordinary values (`0`, `inf`), while nonexistent elements
//! and domain violations are `undefined` with a reason code.
//!
//! Runnable tours live in `examples/`; try
//! `cargo run --example arithmetic_laws`.

pub mod cli;
pub mod dataset;
pub mod extreal;
pub mod qarith;
pub mod qcalc;
pub mod qentropy;
pub mod qfun;
pub mod qnumbers;
pub mod qparam;
pub mod quad;
pub mod verify;

pub use extreal::{ExtReal, Reason};
pub use qarith::{BinOpKind, Element};
pub use qnumbers::DeformClass;
pub use qparam::QParam;
