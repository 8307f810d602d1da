use nalgebra::DMatrix;

use crate::{Error, Result};

/// Highest level supported by the normalized recursion.
pub const MAX_LEVEL: usize = 2000;

/// `ψ_n(x) = H_n(x) e^{−x²/2} / (π^{1/4} 2^{n/2} √(n!))`, evaluated with the
/// normalized three-term recursion
/// `ψ_{k+1} = √(2/(k+1)) x ψ_k − √(k/(k+1)) ψ_{k−1}`.
pub fn oscillator_eigenfunction(n: usize, xs: &[f64]) -> Result<Vec<f64>> {
    let table = HermiteTable::new(n + 1, xs)?;
    Ok(table.values().row(n).iter().copied().collect())
}

/// Oscillator eigenfunctions `ψ_0 … ψ_{levels−1}` tabulated on fixed points.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteTable {
    /// `values[(n, i)] = ψ_n(x_i)`.
    values: DMatrix<f64>,
}

impl HermiteTable {
    pub fn new(levels: usize, xs: &[f64]) -> Result<Self> {
        if levels == 0 || levels > MAX_LEVEL {
            return Err(Error::InvalidArgument(format!(
                "oscillator level count {levels} outside 1..={MAX_LEVEL}"
            )));
        }
        let mut values = DMatrix::zeros(levels, xs.len());
        let norm0 = std::f64::consts::PI.powf(-0.25);
        for (i, &x) in xs.iter().enumerate() {
            let mut prev = 0.0;
            let mut cur = norm0 * (-0.5 * x * x).exp();
            values[(0, i)] = cur;
            for k in 0..levels - 1 {
                let kf = k as f64;
                let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
                prev = cur;
                cur = next;
                values[(k + 1, i)] = cur;
            }
        }
        Ok(Self { values })
    }

    pub fn levels(&self) -> usize {
        self.values.nrows()
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tomography::{trapezoid, QuadratureGrid};

    #[test]
    fn ground_state_is_gaussian() {
        let xs = [-2.0, -0.5, 0.0, 1.0, 3.0];
        let psi = oscillator_eigenfunction(0, &xs).unwrap();
        for (x, p) in xs.iter().zip(psi) {
            let expected = std::f64::consts::PI.powf(-0.25) * (-x * x / 2.0).exp();
            assert!((p - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn matches_explicit_hermite_polynomials() {
        // H_3(x) = 8x³ − 12x, normalization 1/(π^{1/4} √(2³·3!))
        let xs = [-1.3, 0.2, 2.1];
        let psi = oscillator_eigenfunction(3, &xs).unwrap();
        for (x, p) in xs.iter().zip(psi) {
            let h3 = 8.0 * x * x * x - 12.0 * x;
            let expected = h3 * (-x * x / 2.0).exp() / (std::f64::consts::PI.powf(0.25) * 48f64.sqrt());
            assert!((p - expected).abs() < 1e-13);
        }
    }

    #[test]
    fn normalized_on_default_grids() {
        for n in [0usize, 10, 120] {
            let grid = QuadratureGrid::for_amplitude((n as f64).sqrt());
            let psi = oscillator_eigenfunction(n, &grid.points()).unwrap();
            let sq: Vec<f64> = psi.iter().map(|p| p * p).collect();
            assert!((trapezoid(&sq, grid.spacing()) - 1.0).abs() < 1e-8, "n = {n}");
        }
    }

    #[test]
    fn orthogonal_levels() {
        let grid = QuadratureGrid::for_amplitude(10.0);
        let table = HermiteTable::new(60, &grid.points()).unwrap();
        for (m, n) in [(0, 1), (2, 7), (10, 11), (13, 59), (40, 42)] {
            let prod: Vec<f64> = (0..grid.n_points())
                .map(|i| table.values()[(m, i)] * table.values()[(n, i)])
                .collect();
            assert!(trapezoid(&prod, grid.spacing()).abs() < 1e-8, "({m}, {n})");
        }
    }

    #[test]
    fn high_levels_stay_finite() {
        let xs: Vec<f64> = (-300..=300).map(|i| i as f64 * 0.2).collect();
        let table = HermiteTable::new(MAX_LEVEL, &xs).unwrap();
        assert!(table.values().iter().all(|v| v.is_finite()));
        assert!(HermiteTable::new(MAX_LEVEL + 1, &xs).is_err());
    }
}
