use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::dynamics::{EvolutionResult, RealBlock, TimeConvention};
use crate::fock::{FockOperator, StateVector};
use crate::{Error, Result, C64};

/// Field mode coupled to an anharmonic oscillator atom:
/// `Ĥ = ω â†â + ω₀ b̂†b̂ + γ b̂†²b̂² + g(â†b̂ + âb̂†)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApParams {
    pub omega_field: f64,
    pub omega_atom: f64,
    pub gamma_nl: f64,
    pub g_coupling: f64,
    /// Field truncation.
    pub n_max: usize,
    /// Atomic (oscillator) truncation.
    pub atom_levels: usize,
}

impl ApParams {
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if !(self.g_coupling > 0.0 && self.g_coupling.is_finite()) {
            problems.push(format!("coupling g must be positive, got {}", self.g_coupling));
        }
        for (name, v) in [("omega", self.omega_field), ("omega0", self.omega_atom), ("gamma", self.gamma_nl)] {
            if !v.is_finite() {
                problems.push(format!("{name} must be finite"));
            }
        }
        if self.n_max == 0 || self.atom_levels == 0 {
            problems.push("truncations must be >= 1".into());
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(problems.join("; ")))
        }
    }

    /// Largest total excitation `N` whose block fits in both truncations.
    pub fn max_block(&self) -> usize {
        self.n_max.min(self.atom_levels) - 1
    }

    /// Dense `Ĥ` on the full truncated product space (field first).
    pub fn dense_hamiltonian(&self) -> Result<DMatrix<C64>> {
        self.validate()?;
        let dims = [self.n_max, self.atom_levels];
        let a = FockOperator::annihilation(self.n_max);
        let b = FockOperator::annihilation(self.atom_levels);
        let re = |x: f64| C64::new(x, 0.0);
        let b2 = b.compose(&b)?;
        let field_number = FockOperator::number(self.n_max).embed(&dims, 0)?;
        let atom_number = FockOperator::number(self.atom_levels).embed(&dims, 1)?;
        let atom_kerr = b2.adjoint().compose(&b2)?.embed(&dims, 1)?;
        let exchange = a.adjoint().embed(&dims, 0)? * b.embed(&dims, 1)?;
        let exchange_h = exchange.adjoint();
        Ok(field_number * re(self.omega_field)
            + atom_number * re(self.omega_atom)
            + atom_kerr * re(self.gamma_nl)
            + (exchange + exchange_h) * re(self.g_coupling))
    }
}

/// Spectrum of the block with `N` total quanta in the basis `|N−m; m⟩`,
/// `m = 0..=N`; eigenvectors are the columns of `vectors`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockEigen {
    pub total: usize,
    pub energies: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

/// Real symmetric `(N+1)×(N+1)` block of `Ĥ` in the basis `|N−m; m⟩`.
pub fn ap_block_hamiltonian(params: &ApParams, total: usize) -> DMatrix<f64> {
    let n = total;
    DMatrix::from_fn(n + 1, n + 1, |r, c| {
        if r == c {
            let m = r as f64;
            params.omega_field * (n - r) as f64 + params.omega_atom * m + params.gamma_nl * m * (m - 1.0)
        } else if r + 1 == c || c + 1 == r {
            let m = r.min(c);
            params.g_coupling * (((n - m) * (m + 1)) as f64).sqrt()
        } else {
            0.0
        }
    })
}

pub fn ap_diagonalize(params: &ApParams, total: usize) -> BlockEigen {
    let block = RealBlock::new(ap_block_hamiltonian(params, total));
    BlockEigen {
        total,
        energies: block.energies.iter().copied().collect(),
        vectors: block.vectors,
    }
}

/// Block-diagonal engine. States live on dims `[n_max, atom_levels]`.
#[derive(Debug, Clone)]
pub struct ApModel {
    params: ApParams,
}

struct PreparedBlock {
    total: usize,
    block: RealBlock,
    projected: Vec<C64>,
}

impl ApModel {
    pub fn new(params: ApParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { params })
    }

    pub fn params(&self) -> &ApParams {
        &self.params
    }

    pub fn dims(&self) -> [usize; 2] {
        [self.params.n_max, self.params.atom_levels]
    }

    fn flat(&self, field: usize, atom: usize) -> usize {
        field * self.params.atom_levels + atom
    }

    fn check_support(&self, initial: &StateVector) -> Result<()> {
        if initial.dims() != self.dims() {
            return Err(Error::Dimension(format!(
                "initial state dims {:?} differ from model dims {:?}",
                initial.dims(),
                self.dims()
            )));
        }
        let cap = self.params.max_block();
        for field in 0..self.params.n_max {
            for atom in 0..self.params.atom_levels {
                if field + atom > cap && initial.amplitudes()[self.flat(field, atom)] != C64::new(0.0, 0.0) {
                    return Err(Error::Truncation {
                        message: format!(
                            "initial state has support on |{field}; {atom}⟩, above the largest complete block N = {cap}"
                        ),
                        required: field + atom + 1,
                    });
                }
            }
        }
        Ok(())
    }

    fn prepare(&self, initial: &StateVector) -> Result<Vec<PreparedBlock>> {
        self.check_support(initial)?;
        let cap = self.params.max_block();
        let blocks = (0..=cap)
            .into_par_iter()
            .filter_map(|total| {
                let coeffs: Vec<C64> = (0..=total)
                    .map(|m| initial.amplitudes()[self.flat(total - m, m)])
                    .collect();
                if coeffs.iter().all(|c| *c == C64::new(0.0, 0.0)) {
                    return None;
                }
                let block = RealBlock::new(ap_block_hamiltonian(&self.params, total));
                let projected = block.project(&coeffs);
                Some(PreparedBlock { total, block, projected })
            })
            .collect();
        Ok(blocks)
    }

    fn assemble(&self, blocks: &[PreparedBlock], t: f64) -> StateVector {
        let mut amps = DVector::from_element(self.params.n_max * self.params.atom_levels, C64::new(0.0, 0.0));
        let mut buf = Vec::new();
        for prepared in blocks {
            let n = prepared.total;
            buf.resize(n + 1, C64::new(0.0, 0.0));
            prepared.block.propagate(&prepared.projected, t, &mut buf);
            for (m, c) in buf.iter().enumerate() {
                amps[self.flat(n - m, m)] = *c;
            }
        }
        StateVector::from_parts(self.dims().to_vec(), amps)
    }

    /// Exact evolution to the physical times `t`.
    pub fn evolve_physical(&self, initial: &StateVector, times: &[f64]) -> Result<Vec<StateVector>> {
        let blocks = self.prepare(initial)?;
        Ok(times.par_iter().map(|&t| self.assemble(&blocks, t)).collect())
    }

    /// Exact evolution reported at the scaled times `gt`.
    pub fn evolve(&self, initial: &StateVector, scaled_times: &[f64]) -> Result<EvolutionResult> {
        let physical: Vec<f64> = scaled_times.iter().map(|gt| gt / self.params.g_coupling).collect();
        Ok(EvolutionResult {
            times: scaled_times.to_vec(),
            states: self.evolve_physical(initial, &physical)?,
            convention: TimeConvention::Coupling,
            field_modes: 1,
        })
    }

    /// `⟨Ĥ⟩` assembled block by block.
    pub fn energy(&self, state: &StateVector) -> Result<f64> {
        self.check_support(state)?;
        let mut total_energy = 0.0;
        for n in 0..=self.params.max_block() {
            let c: Vec<C64> = (0..=n).map(|m| state.amplitudes()[self.flat(n - m, m)]).collect();
            let h = ap_block_hamiltonian(&self.params, n);
            for i in 0..=n {
                for j in 0..=n {
                    total_energy += (c[i].conj() * c[j]).re * h[(i, j)];
                }
            }
        }
        Ok(total_energy)
    }

    /// `⟨N̂⟩ = ⟨â†â + b̂†b̂⟩`.
    pub fn total_quanta(&self, state: &StateVector) -> f64 {
        let mut n = 0.0;
        for field in 0..self.params.n_max {
            for atom in 0..self.params.atom_levels {
                n += state.amplitudes()[self.flat(field, atom)].norm_sqr() * (field + atom) as f64;
            }
        }
        n
    }
}

/// Evolves `initial` and reports states at the scaled times `gt`.
pub fn ap_evolve(params: &ApParams, initial: &StateVector, scaled_times: &[f64]) -> Result<EvolutionResult> {
    ApModel::new(*params)?.evolve(initial, scaled_times)
}
