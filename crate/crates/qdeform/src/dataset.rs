//! Tabular data emitters: sweeps of the number maps over a grid, the
//! cutoff geometry of the exp-family product/sum, and entropy scans.
//!
//! All commands share one table model ([`Dataset`]): a header plus rows of
//! typed cells. The CSV writer prints finite numbers with 17 significant
//! digits (enough to round-trip an `f64` exactly) and non-finite values as
//! the literal tokens `inf`, `-inf`, `undefined` so downstream tooling can
//! distinguish a cutoff from missing data. The JSON writer emits
//! `{"columns": [...], "rows": [[...]]}` with the same tokens, preserving
//! column order. Row order is fixed (class, then q, then grid order), so
//! equal inputs produce byte-identical files.

use std::fmt;
use std::io::{self, Write};

use crate::extreal::{ExtReal, Reason};
use crate::qarith::BinOpKind;
use crate::qentropy::{admissibility_report, s_delta_closed, Distribution};
use crate::qfun::exp_q;
use crate::qnumbers::{deform, DeformClass};
use crate::qparam::QParam;

/// Significant digits used for finite numbers in CSV output. 17 digits
/// round-trip every `f64` exactly, so a written value always matches the
/// library result bit for bit.
pub const CSV_SIG_DIGITS: usize = 17;

/// Formats a finite value with [`CSV_SIG_DIGITS`] significant digits.
pub fn csv_number(v: f64) -> String {
    format!("{:.*e}", CSV_SIG_DIGITS - 1, v)
}

// --- grid axes ---------------------------------------------------------------

/// One closed sweep axis: `steps` evenly spaced points from `min` to `max`
/// inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis {
    min: f64,
    max: f64,
    steps: usize,
}

/// Why a grid request was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridError {
    /// Fewer than two points requested.
    TooFewSteps,
    /// `min >= max`, or a bound is not finite.
    BadRange,
    /// Log spacing requested over a range touching zero or below.
    NotPositive,
}

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridError::TooFewSteps => f.write_str("grid needs at least 2 steps"),
            GridError::BadRange => f.write_str("grid needs finite min < max"),
            GridError::NotPositive => f.write_str("log-spaced grid needs min > 0"),
        }
    }
}

impl std::error::Error for GridError {}

impl GridAxis {
    pub fn new(min: f64, max: f64, steps: usize) -> Result<Self, GridError> {
        if steps < 2 {
            return Err(GridError::TooFewSteps);
        }
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(GridError::BadRange);
        }
        Ok(GridAxis { min, max, steps })
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Evenly spaced points, endpoints exact.
    pub fn points(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i == self.steps - 1 {
                    self.max
                } else {
                    self.min + (self.max - self.min) * (i as f64 / last)
                }
            })
            .collect()
    }

    /// Points evenly spaced in `ln`, endpoints exact; requires `min > 0`.
    pub fn log_points(&self) -> Result<Vec<f64>, GridError> {
        if self.min <= 0.0 {
            return Err(GridError::NotPositive);
        }
        let (a, b) = (self.min.ln(), self.max.ln());
        let last = (self.steps - 1) as f64;
        Ok((0..self.steps)
            .map(|i| {
                if i == self.steps - 1 {
                    self.max
                } else {
                    (a + (b - a) * (i as f64 / last)).exp()
                }
            })
            .collect())
    }
}

// --- the table model ---------------------------------------------------------

/// One typed table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    Value(ExtReal),
}

impl Cell {
    pub fn num(v: f64) -> Cell {
        Cell::Value(ExtReal::Finite(v))
    }

    /// CSV token for this cell. Non-finite values use the literal tokens
    /// `inf`, `-inf`, `undefined` and never an empty field.
    pub fn csv_token(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Value(ExtReal::Finite(v)) => csv_number(*v),
            Cell::Value(ExtReal::PosInf) => "inf".to_string(),
            Cell::Value(ExtReal::NegInf) => "-inf".to_string(),
            Cell::Value(ExtReal::Undefined(_)) => "undefined".to_string(),
        }
    }

    /// JSON value for this cell; non-finite values map to the same string
    /// tokens as the CSV form.
    pub fn json_value(&self) -> serde_json::Value {
        match self {
            Cell::Text(s) => serde_json::Value::from(s.as_str()),
            Cell::Int(i) => serde_json::Value::from(*i),
            Cell::Value(v) => serde_json::to_value(v).expect("extended real serializes"),
        }
    }
}

/// A fixed-order table with a header; the shared output of every emitter.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Dataset {
    fn new(columns: Vec<&'static str>) -> Self {
        Dataset {
            columns,
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Writes CSV with a header row; fields never need quoting.
    pub fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.csv_token()))?;
        }
        w.flush()
    }

    /// Writes `{"columns": [...], "rows": [[...]]}` followed by a newline.
    pub fn write_json(&self, out: &mut dyn Write) -> io::Result<()> {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| serde_json::Value::from(row.iter().map(Cell::json_value).collect::<Vec<_>>()))
            .collect();
        let doc = serde_json::json!({
            "columns": self.columns,
            "rows": rows,
        });
        serde_json::to_writer(&mut *out, &doc)?;
        out.write_all(b"\n")
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("in-memory write");
        String::from_utf8(buf).expect("csv output is UTF-8")
    }

    pub fn to_json_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_json(&mut buf).expect("in-memory write");
        String::from_utf8(buf).expect("json output is UTF-8")
    }
}

// --- number-map sweeps -------------------------------------------------------

/// Sweeps the class number maps over an x grid: columns
/// `class, q, x, value`. Divergent points carry the `inf`/`-inf` tokens
/// (the vertical asymptote of the log-family maps at `x = 1/(q-1)`),
/// nonexistent points carry `undefined`.
pub fn numbers_dataset(classes: &[DeformClass], qs: &[QParam], x: &GridAxis) -> Dataset {
    let mut ds = Dataset::new(vec!["class", "q", "x", "value"]);
    let points = x.points();
    for &cls in classes {
        for &q in qs {
            for &xv in &points {
                ds.push(vec![
                    Cell::Text(cls.name().to_string()),
                    Cell::num(q.q()),
                    Cell::num(xv),
                    Cell::Value(deform(cls, q, xv)),
                ]);
            }
        }
    }
    ds
}

// --- cutoff maps -------------------------------------------------------------

/// True when the exp-family (oel) operation clips at `(x, y)`: the result
/// bracket is at or past the `[.]_+` edge, so the value side collapses to
/// `0` (q < 1) or diverges (q > 1).
pub fn oel_cutoff_flag(op: BinOpKind, q: QParam, x: f64, y: f64) -> bool {
    if q.is_classical() {
        return false;
    }
    let omq = q.omq();
    match op {
        BinOpKind::Add | BinOpKind::Sub => {
            let (nx, ny) = (iel_number_of(q, x), iel_number_of(q, y));
            let m = if op == BinOpKind::Sub { nx - ny } else { nx + ny }.abs();
            1.0 + omq * m.ln() <= 0.0
        }
        BinOpKind::Mul => x.abs().powf(omq) + y.abs().powf(omq) - 1.0 <= 0.0,
        BinOpKind::Div => x.abs().powf(omq) - y.abs().powf(omq) + 1.0 <= 0.0,
    }
}

/// Signed magnitude of the exp-of-deformed-log number backing `v`, with
/// the printed-form zero convention.
fn iel_number_of(q: QParam, v: f64) -> f64 {
    match deform(DeformClass::Iel, q, v) {
        ExtReal::Finite(n) => n,
        ExtReal::PosInf => f64::INFINITY,
        ExtReal::NegInf => f64::NEG_INFINITY,
        // q < 1 at v = 0: the map has no value; 0 keeps the sum honest.
        ExtReal::Undefined(_) => 0.0,
    }
}

/// Maps the clip region of an exp-family operation over an `(x, y)` grid:
/// columns `kind, x, y, in_cutoff` with `kind = grid` for sweep cells and
/// `kind = border` for points sampled on the analytic clip boundary
/// (`|y| = (1 - |x|^(1-q))^(1/(1-q))` for the product).
pub fn cutoff_map_dataset(op: BinOpKind, q: QParam, x: &GridAxis, y: &GridAxis) -> Dataset {
    let mut ds = Dataset::new(vec!["kind", "x", "y", "in_cutoff"]);
    let ys = y.points();
    for &xv in &x.points() {
        for &yv in &ys {
            ds.push(vec![
                Cell::Text("grid".to_string()),
                Cell::num(xv),
                Cell::num(yv),
                Cell::Int(oel_cutoff_flag(op, q, xv, yv) as i64),
            ]);
        }
    }
    for (xb, yb) in cutoff_border_samples(op, q, x) {
        ds.push(vec![
            Cell::Text("border".to_string()),
            Cell::num(xb),
            Cell::num(yb),
            Cell::Int(oel_cutoff_flag(op, q, xb, yb) as i64),
        ]);
    }
    ds
}

/// Points on the analytic clip boundary, swept along the x axis; both
/// symmetric y branches are emitted where the boundary exists.
fn cutoff_border_samples(op: BinOpKind, q: QParam, x: &GridAxis) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    if q.is_classical() {
        return out;
    }
    let omq = q.omq();
    for &xv in &x.points() {
        match op {
            // |x|^(1-q) + |y|^(1-q) = 1
            BinOpKind::Mul => {
                let rem = 1.0 - xv.abs().powf(omq);
                if rem < 0.0 {
                    continue;
                }
                let yb = rem.powf(1.0 / omq);
                if yb.is_finite() {
                    out.push((xv, yb));
                    if yb != 0.0 {
                        out.push((xv, -yb));
                    }
                }
            }
            // |n_x + n_y| = e^(-1/(1-q)) in number space, mapped back.
            BinOpKind::Add => {
                let nx = iel_number_of(q, xv);
                let edge = (-1.0 / omq).exp();
                for target in [edge, -edge] {
                    let ny = target - nx;
                    if let ExtReal::Finite(yb) = undeform_iel(q, ny) {
                        out.push((xv, yb));
                    }
                }
            }
            _ => {}
        }
    }
    out
}

/// Inverse of the exp-of-deformed-log number map: the value whose number
/// is `n`, where one exists.
fn undeform_iel(q: QParam, n: f64) -> ExtReal {
    if n == 0.0 {
        return if q.q() > 1.0 {
            ExtReal::Finite(0.0)
        } else {
            ExtReal::Undefined(Reason::OutsideImage)
        };
    }
    let sign = if n < 0.0 { -1.0 } else { 1.0 };
    ExtReal::Finite(sign) * exp_q(q, n.abs().ln())
}

// --- entropy sweeps ----------------------------------------------------------

/// Two-state entropy sweep: columns `class, q, p, entropy` with
/// `S(p, 1 - p)` for every grid p. Out-of-simplex p yields `undefined`.
pub fn entropy_two_state_dataset(
    classes: &[DeformClass],
    qs: &[QParam],
    p: &GridAxis,
) -> Dataset {
    let mut ds = Dataset::new(vec!["class", "q", "p", "entropy"]);
    let points = p.points();
    for &cls in classes {
        for &q in qs {
            for &pv in &points {
                let s = match Distribution::two_state(pv) {
                    Ok(dist) => s_delta_closed(cls, q, &dist),
                    Err(_) => ExtReal::Undefined(Reason::DomainViolation),
                };
                ds.push(vec![
                    Cell::Text(cls.name().to_string()),
                    Cell::num(q.q()),
                    Cell::num(pv),
                    Cell::Value(s),
                ]);
            }
        }
    }
    ds
}

/// Equiprobable entropy against the number of states: columns
/// `class, q, w, entropy` with `w` log-spaced integers (duplicates after
/// rounding collapse).
pub fn entropy_vs_w_dataset(
    classes: &[DeformClass],
    qs: &[QParam],
    w: &GridAxis,
) -> Result<Dataset, GridError> {
    if w.min() < 1.0 {
        return Err(GridError::NotPositive);
    }
    let mut counts: Vec<usize> = w
        .log_points()?
        .into_iter()
        .map(|v| v.round().max(1.0) as usize)
        .collect();
    counts.dedup();

    let mut ds = Dataset::new(vec!["class", "q", "w", "entropy"]);
    for &cls in classes {
        for &q in qs {
            for &wc in &counts {
                ds.push(vec![
                    Cell::Text(cls.name().to_string()),
                    Cell::num(q.q()),
                    Cell::Int(wc as i64),
                    Cell::Value(s_delta_closed(cls, q, &Distribution::uniform(wc))),
                ]);
            }
        }
    }
    Ok(ds)
}

/// Serialized two-state admissibility scans: one row per (class, q) with
/// the sign/concavity/expansibility summary.
pub fn entropy_admissibility_dataset(
    classes: &[DeformClass],
    qs: &[QParam],
    resolution: usize,
) -> Dataset {
    let mut ds = Dataset::new(vec![
        "class",
        "q",
        "grid_points",
        "defined_points",
        "certainty",
        "min_value",
        "has_negative",
        "concavity",
        "expansible",
    ]);
    for &cls in classes {
        for &q in qs {
            let r = admissibility_report(cls, q, resolution);
            let expansible = match r.expansible {
                Some(true) => "true",
                Some(false) => "false",
                None => "undefined",
            };
            ds.push(vec![
                Cell::Text(cls.name().to_string()),
                Cell::num(r.q),
                Cell::Int(r.grid_points as i64),
                Cell::Int(r.defined_points as i64),
                Cell::Value(r.certainty),
                Cell::Value(r.min_value),
                Cell::Text(if r.has_negative { "true" } else { "false" }.to_string()),
                Cell::Text(r.concavity.name().to_string()),
                Cell::Text(expansible.to_string()),
            ]);
        }
    }
    ds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qnumbers::ALL_CLASSES;

    fn qp(q: f64) -> QParam {
        QParam::new(q).unwrap()
    }

    #[test]
    fn grid_axis_validates_and_hits_endpoints() {
        assert_eq!(GridAxis::new(0.0, 1.0, 1).unwrap_err(), GridError::TooFewSteps);
        assert_eq!(GridAxis::new(2.0, 1.0, 5).unwrap_err(), GridError::BadRange);
        assert_eq!(
            GridAxis::new(f64::NAN, 1.0, 5).unwrap_err(),
            GridError::BadRange
        );

        let axis = GridAxis::new(0.0, 1.0, 5).unwrap();
        assert_eq!(axis.points(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);

        let log = GridAxis::new(1.0, 100.0, 3).unwrap().log_points().unwrap();
        assert_eq!(log[0], 1.0);
        assert!((log[1] - 10.0).abs() < 1e-12);
        assert_eq!(log[2], 100.0);
        assert_eq!(
            GridAxis::new(0.0, 1.0, 3).unwrap().log_points().unwrap_err(),
            GridError::NotPositive
        );
    }

    #[test]
    fn number_rows_tag_the_divergent_branch() {
        let ds = numbers_dataset(
            &[DeformClass::Ile],
            &[qp(3.0)],
            &GridAxis::new(0.0, 1.0, 5).unwrap(),
        );
        assert_eq!(ds.rows.len(), 5);
        // Past x = 1/(q-1) = 0.5 the log-of-clipped-exponential diverges.
        let tokens: Vec<String> = ds.rows.iter().map(|r| r[3].csv_token()).collect();
        assert!(tokens[1].starts_with('-') || tokens[1].contains('e')); // finite at 0.25
        assert_eq!(tokens[3], "inf");
        assert_eq!(tokens[4], "inf");
    }

    #[test]
    fn cutoff_flags_trace_the_unit_circle_at_q_minus_one() {
        let q = qp(-1.0);
        assert!(oel_cutoff_flag(BinOpKind::Mul, q, 0.3, 0.4));
        assert!(!oel_cutoff_flag(BinOpKind::Mul, q, 1.2, 0.3));
        assert!(!oel_cutoff_flag(BinOpKind::Mul, qp(1.0), 0.3, 0.4));
        // q > 1: the clip region sits away from the origin instead.
        assert!(!oel_cutoff_flag(BinOpKind::Mul, qp(3.0), 0.5, 0.5));
        assert!(oel_cutoff_flag(BinOpKind::Mul, qp(3.0), 2.0, 2.0));
    }

    #[test]
    fn mul_border_rows_sit_on_the_analytic_curve() {
        let ds = cutoff_map_dataset(
            BinOpKind::Mul,
            qp(-1.0),
            &GridAxis::new(-1.0, 1.0, 21).unwrap(),
            &GridAxis::new(-1.0, 1.0, 21).unwrap(),
        );
        let mut borders = 0;
        for row in &ds.rows {
            if row[0] != Cell::Text("border".to_string()) {
                continue;
            }
            borders += 1;
            let (Cell::Value(ExtReal::Finite(x)), Cell::Value(ExtReal::Finite(y))) =
                (&row[1], &row[2])
            else {
                panic!("border coordinates are finite");
            };
            // 1 - q = 2: the border is the unit circle.
            assert!((x * x + y * y - 1.0).abs() < 1e-12);
        }
        assert!(borders > 20);
    }

    #[test]
    fn csv_and_json_are_deterministic_and_tokenized() {
        let ds = numbers_dataset(
            &ALL_CLASSES,
            &[qp(-1.0), qp(0.5)],
            &GridAxis::new(-1.0, 1.0, 9).unwrap(),
        );
        let csv_a = ds.to_csv_string();
        let csv_b = ds.to_csv_string();
        assert_eq!(csv_a, csv_b);
        assert!(csv_a.starts_with("class,q,x,value\n"));
        // exp-of-deformed-log has no value at 0 for q < 1.
        assert!(csv_a.contains("undefined"));

        let json = ds.to_json_string();
        assert_eq!(json, ds.to_json_string());
        assert!(json.starts_with("{\"columns\":[\"class\",\"q\",\"x\",\"value\"]"));
        assert!(json.contains("\"undefined\""));

        assert_eq!(Cell::num(0.5).csv_token(), "5.0000000000000000e-1");
        assert_eq!(Cell::num(16.0).csv_token(), "1.6000000000000000e1");
    }

    #[test]
    fn vs_w_grid_is_log_spaced_nondecreasing_integers() {
        let ds = entropy_vs_w_dataset(
            &[DeformClass::Oel],
            &[qp(1.0)],
            &GridAxis::new(1.0, 1000.0, 16).unwrap(),
        )
        .unwrap();
        let ws: Vec<i64> = ds
            .rows
            .iter()
            .map(|r| match r[2] {
                Cell::Int(w) => w,
                _ => panic!("w column is integer"),
            })
            .collect();
        assert_eq!(*ws.first().unwrap(), 1);
        assert_eq!(*ws.last().unwrap(), 1000);
        assert!(ws.windows(2).all(|p| p[0] < p[1]));

        assert_eq!(
            entropy_vs_w_dataset(
                &[DeformClass::Oel],
                &[qp(1.0)],
                &GridAxis::new(0.5, 10.0, 4).unwrap()
            )
            .unwrap_err(),
            GridError::NotPositive
        );
    }

    #[test]
    fn two_state_midpoint_matches_the_power_mean_value() {
        let ds = entropy_two_state_dataset(
            &[DeformClass::Oel],
            &[qp(2.0)],
            &GridAxis::new(0.0, 1.0, 3).unwrap(),
        );
        let Cell::Value(ExtReal::Finite(s)) = ds.rows[1][3] else {
            panic!("midpoint entropy is finite");
        };
        assert!((s - 0.5).abs() < 1e-15);
        // Certainty endpoints vanish for the exp-family functional.
        assert_eq!(ds.rows[0][3], Cell::num(0.0));
        assert_eq!(ds.rows[2][3], Cell::num(0.0));
    }

    #[test]
    fn admissibility_rows_summarize_each_class() {
        let ds = entropy_admissibility_dataset(&ALL_CLASSES, &[qp(2.0)], 101);
        assert_eq!(ds.rows.len(), 4);
        let concavities: Vec<String> = ds.rows.iter().map(|r| r[7].csv_token()).collect();
        assert!(concavities
            .iter()
            .all(|c| ["concave", "convex", "indefinite", "undetermined"].contains(&c.as_str())));
        // The power-mean class at q = 2 is the canonical admissible one.
        let oel = &ds.rows[3];
        assert_eq!(oel[0].csv_token(), "oel");
        assert_eq!(oel[6].csv_token(), "false");
        assert_eq!(oel[8].csv_token(), "true");
    }
}
