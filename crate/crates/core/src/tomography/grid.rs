use crate::{Error, Result};

/// Largest grid spacing used for figure-quality output.
pub const MAX_FIGURE_SPACING: f64 = 0.05;

/// Vacuum standard deviations kept beyond the outermost coherent ridge.
pub const DEFAULT_MARGIN: f64 = 6.0;

/// Symmetric uniform grid of quadrature values `[-x_max, x_max]` with an odd
/// number of points, so `X = 0` is always a node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureGrid {
    x_max: f64,
    n_points: usize,
}

impl QuadratureGrid {
    pub fn new(x_max: f64, n_points: usize) -> Result<Self> {
        let mut problems = Vec::new();
        if !(x_max > 0.0 && x_max.is_finite()) {
            problems.push(format!("x_max must be positive and finite, got {x_max}"));
        }
        if n_points < 3 || n_points % 2 == 0 {
            problems.push(format!("n_points must be odd and >= 3, got {n_points}"));
        }
        if problems.is_empty() {
            Ok(Self { x_max, n_points })
        } else {
            Err(Error::InvalidArgument(problems.join("; ")))
        }
    }

    /// Grid for states whose coherent amplitude is at most `amplitude`:
    /// `x_max = √2·amplitude + 6`, spacing at most 0.05.
    pub fn for_amplitude(amplitude: f64) -> Self {
        let x_max = std::f64::consts::SQRT_2 * amplitude.abs() + DEFAULT_MARGIN;
        Self::with_spacing(x_max, MAX_FIGURE_SPACING)
    }

    /// Smallest odd point count on `[-x_max, x_max]` with spacing `<= spacing`.
    pub fn with_spacing(x_max: f64, spacing: f64) -> Self {
        let half = (x_max / spacing).ceil() as usize;
        Self {
            x_max,
            n_points: 2 * half.max(1) + 1,
        }
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn x_min(&self) -> f64 {
        -self.x_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.x_max / (self.n_points - 1) as f64
    }

    pub fn points(&self) -> Vec<f64> {
        let h = self.spacing();
        let half = (self.n_points / 2) as isize;
        (0..self.n_points as isize).map(|i| (i - half) as f64 * h).collect()
    }

    /// Halves the spacing while keeping the bounds.
    pub fn refined(&self) -> Self {
        Self {
            x_max: self.x_max,
            n_points: 2 * self.n_points - 1,
        }
    }
}

/// Composite trapezoid rule on a uniform grid of spacing `h`.
pub fn trapezoid(values: &[f64], h: f64) -> f64 {
    match values {
        [] | [_] => 0.0,
        [first, inner @ .., last] => h * (0.5 * (first + last) + inner.iter().sum::<f64>()),
    }
}
