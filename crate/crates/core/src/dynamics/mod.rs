//! Exact time evolution for the three model Hamiltonians.
//!
//! Every engine is time independent and block diagonal, so states are
//! propagated by diagonalizing each block once and applying the phases
//! `e^{−iEt}` in the eigenbasis. No ODE stepping is involved.

mod ap;
mod kerr;
mod lambda;

pub use ap::{ap_block_hamiltonian, ap_diagonalize, ap_evolve, ApModel, ApParams, BlockEigen};
pub use kerr::{kerr_evolve, revival_times, KerrModel, KerrParams};
pub use lambda::{lambda_evolve, LambdaModel, LambdaParams, ATOM_E1, ATOM_E2, ATOM_E3};

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::fock::{DensityMatrix, Ensemble, StateVector};
use crate::{Error, Result, C64};

/// How the reported time axis relates to physical time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeConvention {
    /// `λt` for the Kerr medium.
    KerrStrength,
    /// `gt` for the field coupled to an oscillator atom.
    Coupling,
    /// `τ = κt` for the Λ-atom model.
    Kappa,
}

impl TimeConvention {
    pub fn label(&self) -> &'static str {
        match self {
            TimeConvention::KerrStrength => "lambda*t",
            TimeConvention::Coupling => "g*t",
            TimeConvention::Kappa => "kappa*t",
        }
    }
}

/// States reported at a list of scaled times.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionResult {
    pub times: Vec<f64>,
    pub states: Vec<StateVector>,
    pub convention: TimeConvention,
    /// Number of leading subsystems that are field modes; any remaining
    /// subsystem is atomic.
    pub field_modes: usize,
}

impl EvolutionResult {
    pub fn dims(&self) -> &[usize] {
        self.states.first().map(|s| s.dims()).unwrap_or(&[])
    }

    fn check_field_subset(&self, keep: &[usize]) -> Result<()> {
        if keep.is_empty() || keep.iter().any(|&k| k >= self.field_modes) {
            return Err(Error::InvalidArgument(format!(
                "keep set {keep:?} must name field modes 0..{}",
                self.field_modes
            )));
        }
        Ok(())
    }

    fn keeps_everything(&self, keep: &[usize]) -> bool {
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == self.dims().len()
    }
}

/// Reduced density matrices of the chosen field modes at every reported time.
pub fn reduced_field_state(result: &EvolutionResult, keep: &[usize]) -> Result<Vec<DensityMatrix>> {
    result.check_field_subset(keep)?;
    if result.keeps_everything(keep) {
        return Ok(result.states.iter().map(StateVector::to_density).collect());
    }
    result
        .states
        .par_iter()
        .map(|s| s.reduce(keep).map(|e| e.to_density()))
        .collect()
}

/// Same as [`reduced_field_state`] but keeps the low-rank member form, which
/// is what large two-field states should be handed to the tomography layer in.
pub fn reduced_field_ensemble(result: &EvolutionResult, keep: &[usize]) -> Result<Vec<Ensemble>> {
    result.check_field_subset(keep)?;
    if result.keeps_everything(keep) {
        return Ok(result.states.iter().map(|s| s.to_density().to_ensemble()).collect());
    }
    result.states.par_iter().map(|s| s.reduce(keep)).collect()
}

/// Eigendecomposition of one real symmetric block.
pub(crate) struct RealBlock {
    pub energies: DVector<f64>,
    pub vectors: DMatrix<f64>,
}

impl RealBlock {
    pub fn new(h: DMatrix<f64>) -> Self {
        let eig = h.symmetric_eigen();
        Self {
            energies: eig.eigenvalues,
            vectors: eig.eigenvectors,
        }
    }

    /// Projects `c` on the eigenbasis once; [`RealBlock::propagate`] reuses it.
    pub fn project(&self, c: &[C64]) -> Vec<C64> {
        let n = self.energies.len();
        (0..n)
            .map(|j| (0..n).map(|i| c[i] * self.vectors[(i, j)]).sum())
            .collect()
    }

    /// `V e^{−iEt} (Vᵀ c)` from projected coefficients.
    pub fn propagate(&self, projected: &[C64], t: f64, out: &mut [C64]) {
        let n = self.energies.len();
        let rotated: Vec<C64> = projected
            .iter()
            .zip(self.energies.iter())
            .map(|(c, e)| c * C64::from_polar(1.0, -e * t))
            .collect();
        for (i, slot) in out.iter_mut().enumerate().take(n) {
            *slot = (0..n).map(|j| rotated[j] * self.vectors[(i, j)]).sum();
        }
    }
}
