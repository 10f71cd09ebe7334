//! Sampled one-dimensional curves: probability densities and signed
//! distributions on a fixed abscissa grid.

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    /// Non-negative, unit mass.
    Density,
    /// No sign constraint.
    Signed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistributionCurve {
    pub label: String,
    pub abscissa: Vec<f64>,
    pub values: Vec<f64>,
    pub kind: CurveKind,
    /// Trapezoid integral over the grid, recorded at construction.
    pub integral: f64,
}

impl DistributionCurve {
    pub fn new(label: impl Into<String>, abscissa: Vec<f64>, values: Vec<f64>, kind: CurveKind) -> Result<Self> {
        if abscissa.len() != values.len() {
            return Err(invalid(format!(
                "abscissa has {} points but values has {}",
                abscissa.len(),
                values.len()
            )));
        }
        if abscissa.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(invalid("abscissa must be strictly increasing"));
        }
        if kind == CurveKind::Density {
            if let Some(bad) = values.iter().find(|v| !(**v >= 0.0)) {
                return Err(invalid(format!("density value {bad} is negative or NaN")));
            }
        }
        let integral = trapezoid(&abscissa, &values);
        Ok(DistributionCurve {
            label: label.into(),
            abscissa,
            values,
            kind,
            integral,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// |integral − 1|; meaningful for densities.
    pub fn normalization_defect(&self) -> f64 {
        (self.integral - 1.0).abs()
    }

    /// Value at an abscissa that is exactly on the grid.
    pub fn value_at(&self, x: f64) -> Option<f64> {
        self.abscissa.iter().position(|&a| a == x).map(|i| self.values[i])
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Number of strict sign changes among grid values with abscissa in
    /// (lo, hi]. Exact zeros are skipped.
    pub fn sign_changes(&self, lo: f64, hi: f64) -> usize {
        let mut last = 0.0f64;
        let mut count = 0;
        for (&x, &v) in self.abscissa.iter().zip(&self.values) {
            if x <= lo || x > hi || v == 0.0 {
                continue;
            }
            if last != 0.0 && last.signum() != v.signum() {
                count += 1;
            }
            last = v;
        }
        count
    }
}

/// Trapezoid rule on an arbitrary increasing grid.
pub fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2)
        .zip(y.windows(2))
        .map(|(xw, yw)| 0.5 * (xw[1] - xw[0]) * (yw[0] + yw[1]))
        .sum()
}
