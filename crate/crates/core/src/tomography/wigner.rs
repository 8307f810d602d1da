use nalgebra::DMatrix;
use std::f64::consts::PI;

use crate::fock::DensityMatrix;
use crate::{Error, Result, C64};

/// Wigner function on the β-plane, `β = β₁ + iβ₂ = (x + ip)/√2`,
/// normalized so that `∬ W dβ₁ dβ₂ = 1`.
///
/// `values[(j, i)] = W(β₁ = beta1[i], β₂ = beta2[j])`: rows run along β₂.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    pub beta1: Vec<f64>,
    pub beta2: Vec<f64>,
    pub values: DMatrix<f64>,
}

impl WignerGrid {
    /// Trapezoid integral over the plane (axes must be uniform).
    pub fn integral(&self) -> f64 {
        let h1 = uniform_step(&self.beta1);
        let h2 = uniform_step(&self.beta2);
        let rows: Vec<f64> = (0..self.beta2.len())
            .map(|j| {
                let row: Vec<f64> = self.values.row(j).iter().copied().collect();
                crate::tomography::trapezoid(&row, h1)
            })
            .collect();
        crate::tomography::trapezoid(&rows, h2)
    }

    /// `∫ W dβ₂` as a function of β₁.
    pub fn marginal_beta1(&self) -> Vec<f64> {
        let h2 = uniform_step(&self.beta2);
        (0..self.beta1.len())
            .map(|i| {
                let col: Vec<f64> = self.values.column(i).iter().copied().collect();
                crate::tomography::trapezoid(&col, h2)
            })
            .collect()
    }
}

fn uniform_step(axis: &[f64]) -> f64 {
    if axis.len() < 2 {
        1.0
    } else {
        (axis[axis.len() - 1] - axis[0]) / (axis.len() - 1) as f64
    }
}

/// Fock-basis Wigner function by the Laguerre-kernel recursion: the
/// functions `W_mn(β)` of the operators `|m⟩⟨n|` obey
/// `W_0n = 2β W_{0,n−1}/√n`,
/// `W_mm = (2β̄ W_{m−1,m} − √m W_{m−1,m−1})/√m` and
/// `W_mn = (2β W_{m,n−1} − √m W_{m−1,n})/√n`, starting from
/// `W_00 = (2/π) e^{−2|β|²}`.
pub fn wigner(rho: &DensityMatrix, beta1: &[f64], beta2: &[f64]) -> Result<WignerGrid> {
    let d = match rho.dims() {
        [d] => *d,
        dims => {
            return Err(Error::Dimension(format!(
                "Wigner function needs a single-mode state, got dims {dims:?}"
            )))
        }
    };
    let r = rho.elements();
    let sqrt: Vec<f64> = (0..=d).map(|k| (k as f64).sqrt()).collect();
    let mut values = DMatrix::zeros(beta2.len(), beta1.len());
    let mut row = vec![C64::new(0.0, 0.0); d];
    for (j, &b2) in beta2.iter().enumerate() {
        for (i, &b1) in beta1.iter().enumerate() {
            let beta = C64::new(b1, b2);
            // row[n] holds W_{m,n} for the current m (upper triangle n >= m)
            row[0] = C64::new(2.0 / PI * (-2.0 * beta.norm_sqr()).exp(), 0.0);
            let mut w = r[(0, 0)].re * row[0].re;
            for n in 1..d {
                row[n] = 2.0 * beta * row[n - 1] / sqrt[n];
                w += 2.0 * (r[(0, n)] * row[n]).re;
            }
            for m in 1..d {
                // W_{m−1,m} is overwritten below, keep it for the diagonal step
                let mut upper = row[m];
                row[m] = (2.0 * beta.conj() * upper - sqrt[m] * row[m - 1]) / sqrt[m];
                w += r[(m, m)].re * row[m].re;
                for n in m + 1..d {
                    let next = (2.0 * beta * row[n - 1] - sqrt[m] * upper) / sqrt[n];
                    upper = row[n];
                    row[n] = next;
                    w += 2.0 * (r[(m, n)] * row[n]).re;
                }
            }
            values[(j, i)] = w;
        }
    }
    Ok(WignerGrid {
        beta1: beta1.to_vec(),
        beta2: beta2.to_vec(),
        values,
    })
}
