use nalgebra::{DMatrix, DVector};
use std::f64::consts::PI;

use super::{trapezoid, HermiteTable, QuadratureGrid};
use crate::fock::{DensityMatrix, Ensemble, StateVector};
use crate::{Error, Result, C64};

/// `count` angles `jπ/count`, `j = 0..count`, covering `[0, π)`.
pub fn equispaced_angles(count: usize) -> Vec<f64> {
    (0..count).map(|j| j as f64 * PI / count as f64).collect()
}

/// Single-mode optical tomogram `w(X, θ)`: one row per θ, one column per X.
#[derive(Debug, Clone, PartialEq)]
pub struct Tomogram {
    pub thetas: Vec<f64>,
    pub grid: QuadratureGrid,
    pub values: DMatrix<f64>,
}

impl Tomogram {
    pub fn row(&self, theta_index: usize) -> Vec<f64> {
        self.values.row(theta_index).iter().copied().collect()
    }

    /// `∫ w(X, θ) dX` for every θ.
    pub fn row_integrals(&self) -> Vec<f64> {
        (0..self.thetas.len())
            .map(|j| trapezoid(&self.row(j), self.grid.spacing()))
            .collect()
    }

    pub fn min_value(&self) -> f64 {
        self.values.min()
    }

    /// Grid L1 distance `Σ |w₁ − w₂| ΔX Δθ` between tomograms on the same axes.
    pub fn l1_distance(&self, other: &Tomogram) -> Result<f64> {
        if self.thetas != other.thetas || self.grid != other.grid {
            return Err(Error::Dimension("tomograms on different axes".into()));
        }
        let dtheta = if self.thetas.len() > 1 { PI / self.thetas.len() as f64 } else { 1.0 };
        Ok((&self.values - &other.values).abs().sum() * self.grid.spacing() * dtheta)
    }
}

fn check_single_mode(dims: &[usize]) -> Result<usize> {
    match dims {
        [d] => Ok(*d),
        _ => Err(Error::Dimension(format!(
            "single-mode tomogram needs a one-subsystem state, got dims {dims:?}"
        ))),
    }
}

/// `e^{−ikθ}` for `k = 0..n`.
fn phases(n: usize, theta: f64) -> Vec<C64> {
    (0..n).map(|k| C64::from_polar(1.0, -(k as f64) * theta)).collect()
}

/// `w(X, θ) = Σ_{mn} ρ_mn e^{−i(m−n)θ} ψ_m(X) ψ_n(X)`.
pub fn tomogram_single(rho: &DensityMatrix, thetas: &[f64], grid: &QuadratureGrid) -> Result<Tomogram> {
    let d = check_single_mode(rho.dims())?;
    let table = HermiteTable::new(d, &grid.points())?;
    let psi = table.values();
    let mut values = DMatrix::zeros(thetas.len(), grid.n_points());
    for (j, &theta) in thetas.iter().enumerate() {
        let ph = phases(d, theta);
        // only the real part of the rotated (Hermitian) matrix survives against real ψ_m ψ_n
        let rotated = DMatrix::from_fn(d, d, |m, n| (ph[m] * rho.elements()[(m, n)] * ph[n].conj()).re);
        let weighted = &rotated * psi;
        for i in 0..grid.n_points() {
            values[(j, i)] = psi.column(i).dot(&weighted.column(i));
        }
    }
    Ok(Tomogram {
        thetas: thetas.to_vec(),
        grid: *grid,
        values,
    })
}

/// Pure-state tomogram `|Σ_n c_n e^{−inθ} ψ_n(X)|²`.
pub fn tomogram_pure(psi: &StateVector, thetas: &[f64], grid: &QuadratureGrid) -> Result<Tomogram> {
    let d = check_single_mode(psi.dims())?;
    let table = HermiteTable::new(d, &grid.points())?;
    let basis = table.values().transpose();
    let mut values = DMatrix::zeros(thetas.len(), grid.n_points());
    for (j, &theta) in thetas.iter().enumerate() {
        let ph = phases(d, theta);
        let rotated: Vec<C64> = psi.amplitudes().iter().zip(&ph).map(|(c, p)| c * p).collect();
        let re = &basis * DVector::from_iterator(d, rotated.iter().map(|c| c.re));
        let im = &basis * DVector::from_iterator(d, rotated.iter().map(|c| c.im));
        for i in 0..grid.n_points() {
            values[(j, i)] = re[i] * re[i] + im[i] * im[i];
        }
    }
    Ok(Tomogram {
        thetas: thetas.to_vec(),
        grid: *grid,
        values,
    })
}

/// Two-mode tomogram at fixed angles: `values[(a, b)] = w(X_A = x_a, X_B = x_b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tomogram2D {
    pub theta_a: f64,
    pub theta_b: f64,
    pub grid_a: QuadratureGrid,
    pub grid_b: QuadratureGrid,
    pub values: DMatrix<f64>,
}

impl Tomogram2D {
    pub fn integral(&self) -> f64 {
        let rows: Vec<f64> = (0..self.values.nrows())
            .map(|a| {
                let row: Vec<f64> = self.values.row(a).iter().copied().collect();
                trapezoid(&row, self.grid_b.spacing())
            })
            .collect();
        trapezoid(&rows, self.grid_a.spacing())
    }

    pub fn min_value(&self) -> f64 {
        self.values.min()
    }
}

/// Which mode a marginal keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeptMode {
    A,
    B,
}

/// Marginal of a two-mode tomogram: integrates out the other mode's
/// quadrature with the trapezoid rule.
pub fn reduce_tomogram(t2: &Tomogram2D, keep: KeptMode) -> Vec<f64> {
    match keep {
        KeptMode::A => (0..t2.values.nrows())
            .map(|a| {
                let row: Vec<f64> = t2.values.row(a).iter().copied().collect();
                trapezoid(&row, t2.grid_b.spacing())
            })
            .collect(),
        KeptMode::B => (0..t2.values.ncols())
            .map(|b| {
                let col: Vec<f64> = t2.values.column(b).iter().copied().collect();
                trapezoid(&col, t2.grid_a.spacing())
            })
            .collect(),
    }
}

/// Evaluates two-mode tomograms of one state at many angle pairs.
///
/// The state is held as an ensemble `ρ = Σ_k |v_k⟩⟨v_k|` (pivoted Cholesky
/// for dense input), so each angle pair costs two real matrix products per
/// member: `A_k = Ψ_Aᵀ (D_A V_k D_B) Ψ_B`, `w = Σ_k |A_k|²`.
#[derive(Debug, Clone)]
pub struct TwoModeTomographer {
    grid_a: QuadratureGrid,
    grid_b: QuadratureGrid,
    /// `ψ_m(x_a)` laid out as (points × levels).
    basis_a: DMatrix<f64>,
    /// `ψ_n(x_b)` laid out as (levels × points).
    basis_b: DMatrix<f64>,
    members: Vec<DMatrix<C64>>,
}

impl TwoModeTomographer {
    pub fn new(state: &Ensemble, grid_a: QuadratureGrid, grid_b: QuadratureGrid) -> Result<Self> {
        let (da, db) = match state.dims() {
            [da, db] => (*da, *db),
            dims => {
                return Err(Error::Dimension(format!(
                    "two-mode tomogram needs a two-subsystem state, got dims {dims:?}"
                )))
            }
        };
        let basis_a = HermiteTable::new(da, &grid_a.points())?.values().transpose();
        let basis_b = HermiteTable::new(db, &grid_b.points())?.values().clone();
        let members = state
            .members()
            .iter()
            .map(|v| DMatrix::from_fn(da, db, |m, n| v[m * db + n]))
            .collect();
        Ok(Self {
            grid_a,
            grid_b,
            basis_a,
            basis_b,
            members,
        })
    }

    pub fn from_density(rho: &DensityMatrix, grid_a: QuadratureGrid, grid_b: QuadratureGrid) -> Result<Self> {
        Self::new(&rho.to_ensemble(), grid_a, grid_b)
    }

    pub fn evaluate(&self, theta_a: f64, theta_b: f64) -> Tomogram2D {
        let (da, db) = (self.basis_a.ncols(), self.basis_b.nrows());
        let pa = phases(da, theta_a);
        let pb = phases(db, theta_b);
        let mut values = DMatrix::zeros(self.grid_a.n_points(), self.grid_b.n_points());
        for member in &self.members {
            let rotated = DMatrix::from_fn(da, db, |m, n| pa[m] * member[(m, n)] * pb[n]);
            for part in [rotated.map(|c| c.re), rotated.map(|c| c.im)] {
                let amp = &self.basis_a * part * &self.basis_b;
                values.zip_apply(&amp, |w, a| *w += a * a);
            }
        }
        Tomogram2D {
            theta_a,
            theta_b,
            grid_a: self.grid_a,
            grid_b: self.grid_b,
            values,
        }
    }
}

/// `w(X_A, θ_A; X_B, θ_B)` for a two-mode density matrix.
pub fn tomogram_two_mode(
    rho: &DensityMatrix,
    theta_a: f64,
    theta_b: f64,
    grid_a: &QuadratureGrid,
    grid_b: &QuadratureGrid,
) -> Result<Tomogram2D> {
    Ok(TwoModeTomographer::from_density(rho, *grid_a, *grid_b)?.evaluate(theta_a, theta_b))
}
