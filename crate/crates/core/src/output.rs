//! CSV tables with a `# key=value` header block, and minimal SVG plots.
//!
//! Floats are written with Rust's shortest round-trip formatting, so
//! parsing an emitted table recovers every value bit-for-bit.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::angular::BasisIndex;
use crate::error::{invalid, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// Ordered metadata, written as `# key=value` lines.
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            meta: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.meta.push((key.to_string(), value.to_string()));
        self
    }

    pub fn push_row(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(invalid(format!(
                "row has {} values but the table has {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}={v}");
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format_float(*v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn parse_csv(text: &str) -> Result<Table> {
        let mut meta = Vec::new();
        let mut lines = text.lines();
        let mut header = None;
        for line in lines.by_ref() {
            if let Some(rest) = line.strip_prefix("# ") {
                let (k, v) = rest
                    .split_once('=')
                    .ok_or_else(|| invalid(format!("malformed header line: {line}")))?;
                meta.push((k.to_string(), v.to_string()));
            } else {
                header = Some(line);
                break;
            }
        }
        let header = header.ok_or_else(|| invalid("table has no column header"))?;
        let columns: Vec<String> = header.split(',').map(str::to_string).collect();
        let mut rows = Vec::new();
        for (n, line) in lines.enumerate() {
            let row = line
                .split(',')
                .map(|cell| {
                    cell.trim()
                        .parse::<f64>()
                        .map_err(|e| invalid(format!("row {}: bad value {cell:?}: {e}", n + 1)))
                })
                .collect::<Result<Vec<f64>>>()?;
            if row.len() != columns.len() {
                return Err(invalid(format!("row {} has {} cells", n + 1, row.len())));
            }
            rows.push(row);
        }
        Ok(Table { meta, columns, rows })
    }
}

/// Shortest string that parses back to the same f64; −0 is written as 0.
pub fn format_float(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    format!("{v}")
}

/// Matrix-element value rounded to 7 decimals with trailing zeros
/// trimmed. Nonzero values that would round to zero keep their exponent.
pub fn format_element_value(v: f64) -> String {
    let fixed = format!("{v:.7}");
    let trimmed = fixed.trim_end_matches('0').trim_end_matches('.');
    match trimmed {
        "0" | "-0" if v == 0.0 => "0".into(),
        "0" | "-0" => format!("{v:e}"),
        t => t.to_string(),
    }
}

/// One `name,l',m',l,m,re,im` line per element.
pub fn format_elements(name: &str, elements: &[(BasisIndex, BasisIndex, Complex64)]) -> String {
    let mut out = String::from("name,l',m',l,m,re,im\n");
    for (bra, ket, z) in elements {
        let _ = writeln!(
            out,
            "{name},{},{},{},{},{},{}",
            bra.l,
            bra.m,
            ket.l,
            ket.m,
            format_element_value(z.re),
            format_element_value(z.im)
        );
    }
    out
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text)?;
    Ok(())
}

/// One curve of an [`svg_plot`].
#[derive(Debug, Clone, Copy)]
pub struct Series<'a> {
    pub label: &'a str,
    pub x: &'a [f64],
    pub y: &'a [f64],
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;
const COLORS: [&str; 4] = ["#1f4e9c", "#c0392b", "#2e7d32", "#6a1b9a"];

/// Polylines over shared axes with a legend. Points outside `x_range`
/// are dropped.
pub fn svg_plot(title: &str, series: &[Series], x_range: (f64, f64)) -> String {
    let (x0, x1) = x_range;
    let visible = |s: &Series| -> Vec<(f64, f64)> {
        s.x.iter()
            .zip(s.y)
            .filter(|(x, _)| **x >= x0 && **x <= x1)
            .map(|(x, y)| (*x, *y))
            .collect()
    };
    let all: Vec<Vec<(f64, f64)>> = series.iter().map(visible).collect();
    let (mut y0, mut y1) = (0.0f64, 0.0f64);
    for (_, y) in all.iter().flatten() {
        y0 = y0.min(*y);
        y1 = y1.max(*y);
    }
    if y1 == y0 {
        y1 = y0 + 1.0;
    }
    let pad = 0.05 * (y1 - y0);
    let (y0, y1) = (y0 - if y0 < 0.0 { pad } else { 0.0 }, y1 + pad);
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(out, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">{}</text>",
        WIDTH / 2.0,
        escape(title)
    );
    // axes: x along y = 0 when it is in range, y along x = 0 likewise
    let axis_y = sy(if y0 <= 0.0 && y1 >= 0.0 { 0.0 } else { y0 });
    let axis_x = sx(if x0 <= 0.0 && x1 >= 0.0 { 0.0 } else { x0 });
    let _ = writeln!(
        out,
        "<line x1=\"{MARGIN}\" y1=\"{axis_y:.2}\" x2=\"{}\" y2=\"{axis_y:.2}\" stroke=\"black\"/>",
        WIDTH - MARGIN
    );
    let _ = writeln!(
        out,
        "<line x1=\"{axis_x:.2}\" y1=\"{MARGIN}\" x2=\"{axis_x:.2}\" y2=\"{}\" stroke=\"black\"/>",
        HEIGHT - MARGIN
    );
    for (x, anchor) in [(x0, "start"), (x1, "end")] {
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{}\" text-anchor=\"{anchor}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>",
            sx(x),
            HEIGHT - MARGIN + 16.0,
            format_float(x)
        );
    }
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{:.2}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">{:.4}</text>",
        MARGIN - 4.0,
        sy(y1) + 4.0,
        y1
    );

    for (k, (s, pts)) in series.iter().zip(&all).enumerate() {
        let color = COLORS[k % COLORS.len()];
        let dash = if k == 1 { " stroke-dasharray=\"6 4\"" } else { "" };
        let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{:.2},{:.2}", sx(*x), sy(*y))).collect();
        let _ = writeln!(
            out,
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"{dash} points=\"{}\"/>",
            coords.join(" ")
        );
        let ly = MARGIN + 18.0 * k as f64;
        let lx = WIDTH - MARGIN - 90.0;
        let _ = writeln!(
            out,
            "<line x1=\"{lx}\" y1=\"{ly}\" x2=\"{}\" y2=\"{ly}\" stroke=\"{color}\" stroke-width=\"1.5\"{dash}/>",
            lx + 24.0
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>",
            lx + 30.0,
            ly + 4.0,
            escape(s.label)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_formatting() {
        assert_eq!(format_element_value(0.577_350_269_189_625_8), "0.5773503");
        assert_eq!(format_element_value(-1.0), "-1");
        assert_eq!(format_element_value(0.0), "0");
        assert_eq!(format_element_value(-0.0), "0");
        assert_eq!(format_element_value(3e-9), "3e-9");
        assert_eq!(format_element_value(0.5), "0.5");
    }

    #[test]
    fn csv_round_trip() {
        let mut t = Table::new(&["a", "b"]).with_meta("k", "v=1");
        t.push_row(vec![0.1, -0.0]).unwrap();
        t.push_row(vec![1e-300, std::f64::consts::PI]).unwrap();
        let text = t.to_csv();
        assert!(text.starts_with("# k=v=1\na,b\n0.1,0\n"));
        let back = Table::parse_csv(&text).unwrap();
        assert_eq!(back.meta_value("k"), Some("v=1"));
        assert_eq!(back.rows[1], t.rows[1]);
        assert!(t.push_row(vec![1.0]).is_err());
    }

    #[test]
    fn svg_has_polylines_and_labels() {
        let x = [-1.0, 0.0, 1.0];
        let svg = svg_plot(
            "t",
            &[
                Series { label: "p_z", x: &x, y: &[0.1, 0.8, 0.1] },
                Series { label: "Pi_z", x: &x, y: &[0.2, 0.7, 0.2] },
            ],
            (-1.0, 1.0),
        );
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains(">p_z<") && svg.contains(">Pi_z<"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }
}
