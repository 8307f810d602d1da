use std::f64::consts::PI;

use crate::dynamics::{EvolutionResult, TimeConvention};
use crate::fock::{coherent_state, coherent_truncation, StateVector};
use crate::{Error, Result, C64};

/// Single mode in a Kerr medium, `Ĥ = λ â†²â²`, starting from `|α⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KerrParams {
    pub lambda: f64,
    pub alpha: C64,
}

impl KerrParams {
    pub fn new(lambda: f64, alpha: C64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidArgument(format!("Kerr strength must be positive, got {lambda}")));
        }
        Ok(Self { lambda, alpha })
    }

    /// `T_rev = π/λ`.
    pub fn revival_time(&self) -> f64 {
        PI / self.lambda
    }
}

/// `j·T_rev/p` for `j = 1..=count`.
pub fn revival_times(lambda: f64, p: usize, count: usize) -> Result<Vec<f64>> {
    if p == 0 {
        return Err(Error::InvalidArgument("number of subpackets must be >= 1".into()));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidArgument(format!("Kerr strength must be positive, got {lambda}")));
    }
    Ok((1..=count).map(|j| j as f64 * PI / (lambda * p as f64)).collect())
}

/// `Σ_k c_k e^{−iλk(k−1)t} |k⟩` with `c_k` the coherent amplitudes.
pub fn kerr_evolve(params: &KerrParams, n_max: usize, t: f64) -> Result<StateVector> {
    KerrModel::new(*params, Some(n_max))?.state_at(t)
}

#[derive(Debug, Clone)]
pub struct KerrModel {
    params: KerrParams,
    initial: StateVector,
}

impl KerrModel {
    /// `n_max = None` picks the coherent-state truncation rule.
    pub fn new(params: KerrParams, n_max: Option<usize>) -> Result<Self> {
        let n_max = n_max.unwrap_or_else(|| coherent_truncation(params.alpha));
        let initial = coherent_state(params.alpha, n_max)?;
        Ok(Self { params, initial })
    }

    pub fn params(&self) -> &KerrParams {
        &self.params
    }

    pub fn n_max(&self) -> usize {
        self.initial.len()
    }

    pub fn initial(&self) -> &StateVector {
        &self.initial
    }

    /// State at physical time `t`.
    pub fn state_at(&self, t: f64) -> Result<StateVector> {
        let lt = self.params.lambda * t;
        let amps = self
            .initial
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(k, c)| c * C64::from_polar(1.0, -kerr_phase(k, lt)))
            .collect();
        StateVector::new(vec![self.n_max()], amps)
    }

    /// Evolves to the scaled times `λt`.
    pub fn evolve(&self, scaled_times: &[f64]) -> Result<EvolutionResult> {
        let states = scaled_times
            .iter()
            .map(|tau| self.state_at(tau / self.params.lambda))
            .collect::<Result<Vec<_>>>()?;
        Ok(EvolutionResult {
            times: scaled_times.to_vec(),
            states,
            convention: TimeConvention::KerrStrength,
            field_modes: 1,
        })
    }

    /// `⟨Ĥ⟩ = λ Σ_k |c_k|² k(k−1)`.
    pub fn energy(&self, state: &StateVector) -> f64 {
        state
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(k, c)| self.params.lambda * c.norm_sqr() * (k * k.saturating_sub(1)) as f64)
            .sum()
    }
}

/// `k(k−1)·λt` modulo 2π. `k(k−1)` is even, so `λt` may first be reduced
/// modulo π, which keeps long times precise.
fn kerr_phase(k: usize, lambda_t: f64) -> f64 {
    let m = (k * k.saturating_sub(1)) as f64;
    (m * lambda_t.rem_euclid(PI)).rem_euclid(2.0 * PI)
}
