//! Plain-text data files. Every file opens with `#` header records; grids
//! are written row-major with the first `axis` record as the slow index.
//! Numbers use 17 significant digits so they round-trip exactly.

use std::fmt::Write as _;

use crate::indicators::IndicatorSeries;
use crate::tomography::{Tomogram, Tomogram2D, WignerGrid};

pub(crate) fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn axis(out: &mut String, name: &str, values: &[f64]) {
    let (min, max) = match values {
        [] => (0.0, 0.0),
        [first, .., last] => (*first, *last),
        [only] => (*only, *only),
    };
    let _ = writeln!(out, "# axis {name} {} {} {}", num(min), num(max), values.len());
}

fn header(out: &mut String, kind: &str, time_label: &str, time: f64) {
    let _ = writeln!(out, "# cvtomo {kind}");
    let _ = writeln!(out, "# time {time_label} {}", num(time));
}

fn rows<'a>(out: &mut String, rows: impl Iterator<Item = Vec<f64>> + 'a) {
    for row in rows {
        let line: Vec<String> = row.into_iter().map(num).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
}

pub(crate) fn tomogram_file(tom: &Tomogram, time_label: &str, time: f64) -> String {
    let mut out = String::new();
    header(&mut out, "tomogram", time_label, time);
    axis(&mut out, "theta", &tom.thetas);
    axis(&mut out, "X", &tom.grid.points());
    rows(&mut out, (0..tom.thetas.len()).map(|j| tom.row(j)));
    out
}

pub(crate) fn tomogram2d_file(t2: &Tomogram2D, time_label: &str, time: f64) -> String {
    let mut out = String::new();
    header(&mut out, "tomogram2d", time_label, time);
    let _ = writeln!(out, "# angles theta_a {} theta_b {}", num(t2.theta_a), num(t2.theta_b));
    axis(&mut out, "X_A", &t2.grid_a.points());
    axis(&mut out, "X_B", &t2.grid_b.points());
    rows(
        &mut out,
        (0..t2.values.nrows()).map(|a| t2.values.row(a).iter().copied().collect()),
    );
    out
}

pub(crate) fn wigner_file(w: &WignerGrid, time_label: &str, time: f64) -> String {
    let mut out = String::new();
    header(&mut out, "wigner", time_label, time);
    axis(&mut out, "beta2", &w.beta2);
    axis(&mut out, "beta1", &w.beta1);
    rows(
        &mut out,
        (0..w.values.nrows()).map(|j| w.values.row(j).iter().copied().collect()),
    );
    out
}

pub(crate) fn series_file(series: &IndicatorSeries, time_label: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# cvtomo series {}", series.kind.name());
    axis(&mut out, time_label, &series.times);
    let _ = writeln!(out, "# columns {time_label} {}", series.kind.name());
    for (t, v) in series.times.iter().zip(&series.values) {
        let _ = writeln!(out, "{} {}", num(*t), num(*v));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indicators::IndicatorKind;

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, -1.0 / 3.0, std::f64::consts::PI * 1e-300, 6.02214076e23, 0.0] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(1.5), "1.5000000000000000e0");
    }

    #[test]
    fn series_layout() {
        let s = IndicatorSeries::new(IndicatorKind::Sle, vec![0.0, 1.0], vec![0.25, 0.5]).unwrap();
        let text = series_file(&s, "g*t");
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# cvtomo series sle");
        assert_eq!(lines[1], "# axis g*t 0.0000000000000000e0 1.0000000000000000e0 2");
        assert_eq!(lines[2], "# columns g*t sle");
        assert_eq!(lines[3], "0.0000000000000000e0 2.5000000000000000e-1");
        assert_eq!(lines.len(), 5);
    }
}
