use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::dynamics::{EvolutionResult, RealBlock, TimeConvention};
use crate::fock::{coherent_state, coherent_truncation, fock_state, tensor, FockOperator, StateVector};
use crate::{Error, Result, C64};

/// Atomic level indices on the last subsystem.
pub const ATOM_E1: usize = 0;
pub const ATOM_E2: usize = 1;
pub const ATOM_E3: usize = 2;

/// Two field modes driving a Λ-type three-level atom.
///
/// Evolution runs in the interaction frame
/// `Ĥ_I = Δ₁σ₃₃ + (Δ₁−Δ₂)σ₂₂ + χ Σ_i â_i†²â_i² + κ Σ_i (â_i σ_{3i} + h.c.)`,
/// where field `i` drives `|e_i⟩ ↔ |e₃⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaParams {
    pub omega_atomic: [f64; 3],
    pub omega_fields: [f64; 2],
    pub chi: f64,
    pub kappa: f64,
}

impl LambdaParams {
    /// Level and field frequencies chosen so both detunings vanish.
    pub fn resonant(chi: f64, kappa: f64) -> Self {
        Self {
            omega_atomic: [0.0, 0.0, 1.0],
            omega_fields: [1.0, 1.0],
            chi,
            kappa,
        }
    }

    /// `Δ_i = ω₃ − ω_i − Ω_i`.
    pub fn detunings(&self) -> [f64; 2] {
        let w = self.omega_atomic;
        [w[2] - w[0] - self.omega_fields[0], w[2] - w[1] - self.omega_fields[1]]
    }

    pub fn validate(&self) -> Result<()> {
        let finite = self.omega_atomic.iter().chain(&self.omega_fields).all(|v| v.is_finite());
        if !finite || !self.chi.is_finite() || !self.kappa.is_finite() {
            return Err(Error::InvalidArgument("Λ-model parameters must be finite".into()));
        }
        if self.kappa < 0.0 {
            return Err(Error::InvalidArgument(format!("coupling κ must be >= 0, got {}", self.kappa)));
        }
        Ok(())
    }

    fn level_offset(&self, level: usize) -> f64 {
        let [d1, d2] = self.detunings();
        match level {
            ATOM_E1 => 0.0,
            ATOM_E2 => d1 - d2,
            _ => d1,
        }
    }

    fn diagonal(&self, level: usize, m: usize, n: usize) -> f64 {
        let kerr = |k: usize| (k * k.saturating_sub(1)) as f64;
        self.level_offset(level) + self.chi * (kerr(m) + kerr(n))
    }

    /// Dense `Ĥ_I` on dims `[n_max, n_max, 3]`; meant for small checks.
    pub fn dense_hamiltonian(&self, n_max: usize) -> Result<DMatrix<C64>> {
        self.validate()?;
        let dims = [n_max, n_max, 3];
        let re = |x: f64| C64::new(x, 0.0);
        let a = FockOperator::annihilation(n_max);
        let a2 = a.compose(&a)?;
        let kerr = a2.adjoint().compose(&a2)?;
        let [d1, d2] = self.detunings();
        let mut h = FockOperator::transition(ATOM_E3, ATOM_E3, 3)?.embed(&dims, 2)? * re(d1)
            + FockOperator::transition(ATOM_E2, ATOM_E2, 3)?.embed(&dims, 2)? * re(d1 - d2)
            + (kerr.embed(&dims, 0)? + kerr.embed(&dims, 1)?) * re(self.chi);
        for (mode, lower) in [(0, ATOM_E1), (1, ATOM_E2)] {
            let raise = FockOperator::transition(ATOM_E3, lower, 3)?.embed(&dims, 2)?;
            let term = a.embed(&dims, mode)? * raise;
            h += (term.adjoint() + term) * re(self.kappa);
        }
        Ok(h)
    }
}

/// Flat index of `|level; m; n⟩` for field truncation `n_max`.
fn flat(n_max: usize, level: usize, m: usize, n: usize) -> usize {
    (m * n_max + n) * 3 + level
}

/// Basis states `(level, m, n)` coupled by `Ĥ_I`. The full family is
/// `|e₁; p+1; q⟩, |e₃; p; q⟩, |e₂; p; q+1⟩`; members above the truncation
/// are dropped, leaving the singletons `|e₁; 0; q⟩` and `|e₂; p; 0⟩` as
/// 1×1 blocks.
fn blocks(n_max: usize) -> Vec<Vec<(usize, usize, usize)>> {
    let mut out = Vec::with_capacity(n_max * n_max + 2 * n_max);
    for q in 0..n_max {
        out.push(vec![(ATOM_E1, 0, q)]);
    }
    for p in 0..n_max {
        out.push(vec![(ATOM_E2, p, 0)]);
    }
    for p in 0..n_max {
        for q in 0..n_max {
            let mut members = Vec::with_capacity(3);
            if p + 1 < n_max {
                members.push((ATOM_E1, p + 1, q));
            }
            members.push((ATOM_E3, p, q));
            if q + 1 < n_max {
                members.push((ATOM_E2, p, q + 1));
            }
            out.push(members);
        }
    }
    out
}

fn block_hamiltonian(params: &LambdaParams, members: &[(usize, usize, usize)]) -> DMatrix<f64> {
    let k = members.len();
    DMatrix::from_fn(k, k, |r, c| {
        let (lr, mr, nr) = members[r];
        if r == c {
            return params.diagonal(lr, mr, nr);
        }
        let (lc, mc, nc) = members[c];
        let pair = if lr == ATOM_E3 { (lc, mc, nc) } else if lc == ATOM_E3 { (lr, mr, nr) } else { return 0.0 };
        match pair {
            (ATOM_E1, m, _) => params.kappa * (m as f64).sqrt(),
            (ATOM_E2, _, n) => params.kappa * (n as f64).sqrt(),
            _ => 0.0,
        }
    })
}

struct PreparedBlock {
    members: Vec<(usize, usize, usize)>,
    block: RealBlock,
    projected: Vec<C64>,
}

/// Block-diagonal engine on dims `[n_max, n_max, 3]` (field 1, field 2, atom).
#[derive(Debug, Clone)]
pub struct LambdaModel {
    params: LambdaParams,
    initial: StateVector,
}

impl LambdaModel {
    /// Both fields coherent, atom in `|e₁⟩`. `n_max = None` applies the
    /// coherent-state truncation rule to the larger amplitude.
    pub fn coherent(params: LambdaParams, alpha1: C64, alpha2: C64, n_max: Option<usize>) -> Result<Self> {
        let n_max = n_max.unwrap_or_else(|| coherent_truncation(alpha1).max(coherent_truncation(alpha2)));
        let initial = tensor(&[
            coherent_state(alpha1, n_max)?,
            coherent_state(alpha2, n_max)?,
            fock_state(ATOM_E1, 3)?,
        ])?;
        Self::from_state(params, initial)
    }

    /// Any initial state on dims `[n, n, 3]`.
    pub fn from_state(params: LambdaParams, initial: StateVector) -> Result<Self> {
        params.validate()?;
        let dims = initial.dims();
        if dims.len() != 3 || dims[0] != dims[1] || dims[2] != 3 {
            return Err(Error::Dimension(format!("expected dims [n, n, 3], got {dims:?}")));
        }
        Ok(Self { params, initial })
    }

    pub fn params(&self) -> &LambdaParams {
        &self.params
    }

    pub fn n_max(&self) -> usize {
        self.initial.dims()[0]
    }

    pub fn initial(&self) -> &StateVector {
        &self.initial
    }

    fn prepare(&self) -> Vec<PreparedBlock> {
        let n = self.n_max();
        let amps = self.initial.amplitudes();
        blocks(n)
            .into_par_iter()
            .filter_map(|members| {
                let coeffs: Vec<C64> = members.iter().map(|&(l, m, q)| amps[flat(n, l, m, q)]).collect();
                if coeffs.iter().all(|c| *c == C64::new(0.0, 0.0)) {
                    return None;
                }
                let block = RealBlock::new(block_hamiltonian(&self.params, &members));
                let projected = block.project(&coeffs);
                Some(PreparedBlock { members, block, projected })
            })
            .collect()
    }

    fn assemble(&self, blocks: &[PreparedBlock], t: f64) -> StateVector {
        let n = self.n_max();
        let mut amps = DVector::from_element(3 * n * n, C64::new(0.0, 0.0));
        let mut buf = [C64::new(0.0, 0.0); 3];
        for prepared in blocks {
            let k = prepared.members.len();
            prepared.block.propagate(&prepared.projected, t, &mut buf[..k]);
            for (&(l, m, q), c) in prepared.members.iter().zip(&buf[..k]) {
                amps[flat(n, l, m, q)] = *c;
            }
        }
        StateVector::from_parts(self.initial.dims().to_vec(), amps)
    }

    /// Exact evolution to physical times `t`; valid for any `κ ≥ 0`.
    pub fn evolve_physical(&self, times: &[f64]) -> Vec<StateVector> {
        let blocks = self.prepare();
        times.par_iter().map(|&t| self.assemble(&blocks, t)).collect()
    }

    /// Exact evolution reported at the scaled times `τ = κt`.
    pub fn evolve(&self, scaled_times: &[f64]) -> Result<EvolutionResult> {
        if self.params.kappa <= 0.0 {
            return Err(Error::InvalidArgument(
                "scaled time κt needs κ > 0; use evolve_physical for the decoupled case".into(),
            ));
        }
        let physical: Vec<f64> = scaled_times.iter().map(|tau| tau / self.params.kappa).collect();
        Ok(EvolutionResult {
            times: scaled_times.to_vec(),
            states: self.evolve_physical(&physical),
            convention: TimeConvention::Kappa,
            field_modes: 2,
        })
    }

    /// `⟨Ĥ_I⟩` assembled block by block.
    pub fn energy(&self, state: &StateVector) -> Result<f64> {
        let n = self.n_max();
        if state.dims() != self.initial.dims() {
            return Err(Error::Dimension(format!("state dims {:?} differ from model", state.dims())));
        }
        let amps = state.amplitudes();
        let total = blocks(n)
            .iter()
            .map(|members| {
                let h = block_hamiltonian(&self.params, members);
                let c: Vec<C64> = members.iter().map(|&(l, m, q)| amps[flat(n, l, m, q)]).collect();
                let mut e = 0.0;
                for i in 0..c.len() {
                    for j in 0..c.len() {
                        e += (c[i].conj() * c[j]).re * h[(i, j)];
                    }
                }
                e
            })
            .sum();
        Ok(total)
    }
}

/// Evolves `|α₁⟩ ⊗ |α₂⟩ ⊗ |e₁⟩` and reports states at the scaled times `τ = κt`.
pub fn lambda_evolve(
    params: &LambdaParams,
    alpha1: C64,
    alpha2: C64,
    n_max: usize,
    scaled_times: &[f64],
) -> Result<EvolutionResult> {
    LambdaModel::coherent(*params, alpha1, alpha2, Some(n_max))?.evolve(scaled_times)
}
