//! Emits the plot-ready datasets as CSV and JSON files: the four
//! deformed-number maps on a grid, the clip region of the oel product with
//! its analytic border, and the entropy sweeps (two-state simplex, uniform
//! state count, admissibility summary).
//!
//! Run with `cargo run --example emit_datasets [output-dir]`
//! (default `target/datasets`).

use std::fs::File;
use std::path::PathBuf;

use qdeform::dataset::{
    cutoff_map_dataset, entropy_admissibility_dataset, entropy_two_state_dataset,
    entropy_vs_w_dataset, numbers_dataset, Dataset, GridAxis,
};
use qdeform::qnumbers::ALL_CLASSES;
use qdeform::{BinOpKind, QParam};

fn qp(q: f64) -> QParam {
    QParam::new(q).unwrap()
}

fn emit(dir: &PathBuf, name: &str, ds: &Dataset) {
    let csv_path = dir.join(format!("{name}.csv"));
    let json_path = dir.join(format!("{name}.json"));
    ds.write_csv(&mut File::create(&csv_path).expect("create csv"))
        .expect("write csv");
    ds.write_json(&mut File::create(&json_path).expect("create json"))
        .expect("write json");
    println!(
        "  {name}: {} rows -> {} and .json",
        ds.rows.len(),
        csv_path.display()
    );
}

fn main() {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("target/datasets"));
    std::fs::create_dir_all(&dir).expect("create output directory");
    println!("writing datasets to {}", dir.display());

    let panel: Vec<QParam> = [-1.0, 0.5, 1.0, 2.0, 3.0].map(qp).to_vec();

    let x = GridAxis::new(-3.0, 3.0, 601).unwrap();
    emit(&dir, "numbers", &numbers_dataset(&ALL_CLASSES, &panel, &x));

    let side = GridAxis::new(-2.0, 2.0, 201).unwrap();
    for (name, q) in [("cutoff_mul_inside", -1.0), ("cutoff_mul_outside", 3.0)] {
        emit(
            &dir,
            name,
            &cutoff_map_dataset(BinOpKind::Mul, qp(q), &side, &side),
        );
    }

    let p = GridAxis::new(0.0, 1.0, 201).unwrap();
    emit(
        &dir,
        "entropy_two_state",
        &entropy_two_state_dataset(&ALL_CLASSES, &panel, &p),
    );

    let w = GridAxis::new(1.0, 1000.0, 46).unwrap();
    emit(
        &dir,
        "entropy_vs_state_count",
        &entropy_vs_w_dataset(&ALL_CLASSES, &panel, &w).unwrap(),
    );

    emit(
        &dir,
        "entropy_admissibility",
        &entropy_admissibility_dataset(&ALL_CLASSES, &panel, 1001),
    );
}
