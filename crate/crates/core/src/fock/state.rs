use nalgebra::DVector;

use super::{strides, total_dim, Bipartition, DensityMatrix, Ensemble, NORM_TOLERANCE, TAIL_THRESHOLD};
use crate::{Error, Result, C64};

/// Pure state over a (possibly composite) truncated Fock basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    dims: Vec<usize>,
    amplitudes: DVector<C64>,
}

pub(crate) fn check_dims(dims: &[usize]) -> Result<()> {
    if dims.is_empty() || dims.iter().any(|&d| d == 0) {
        return Err(Error::Dimension(format!(
            "subsystem dimensions {dims:?} must be nonempty and each >= 1"
        )));
    }
    Ok(())
}

impl StateVector {
    /// Wraps amplitudes that are already normalized.
    pub fn new(dims: Vec<usize>, amplitudes: Vec<C64>) -> Result<Self> {
        let state = Self::unchecked(dims, amplitudes)?;
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Invariant(format!("state norm {norm} differs from 1")));
        }
        Ok(state)
    }

    /// Rescales the amplitudes to unit norm.
    pub fn normalized(dims: Vec<usize>, amplitudes: Vec<C64>) -> Result<Self> {
        let mut state = Self::unchecked(dims, amplitudes)?;
        let norm = state.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::Invariant(format!("cannot normalize a state of norm {norm}")));
        }
        state.amplitudes.unscale_mut(norm);
        Ok(state)
    }

    fn unchecked(dims: Vec<usize>, amplitudes: Vec<C64>) -> Result<Self> {
        check_dims(&dims)?;
        if total_dim(&dims) != amplitudes.len() {
            return Err(Error::Dimension(format!(
                "dims {dims:?} need {} amplitudes, got {}",
                total_dim(&dims),
                amplitudes.len()
            )));
        }
        Ok(Self {
            dims,
            amplitudes: DVector::from_vec(amplitudes),
        })
    }

    pub(crate) fn from_parts(dims: Vec<usize>, amplitudes: DVector<C64>) -> Self {
        debug_assert_eq!(total_dim(&dims), amplitudes.len());
        Self { dims, amplitudes }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Amplitude at a multi-index (one entry per subsystem).
    pub fn amplitude(&self, index: &[usize]) -> Result<C64> {
        if index.len() != self.dims.len() || index.iter().zip(&self.dims).any(|(i, d)| i >= d) {
            return Err(Error::Dimension(format!(
                "multi-index {index:?} outside dims {:?}",
                self.dims
            )));
        }
        let flat: usize = index.iter().zip(strides(&self.dims)).map(|(i, s)| i * s).sum();
        Ok(self.amplitudes[flat])
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.dims != other.dims {
            return Err(Error::Dimension(format!(
                "inner product of states with dims {:?} and {:?}",
                self.dims, other.dims
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn to_density(&self) -> DensityMatrix {
        let v = &self.amplitudes;
        DensityMatrix::from_parts(self.dims.clone(), v * v.adjoint())
    }

    /// The state as a one-member ensemble.
    pub fn to_ensemble(&self) -> Ensemble {
        Ensemble::from_members(self.dims.clone(), vec![self.amplitudes.clone()])
    }

    /// Reduced state over `keep` as an ensemble: one unnormalized member per
    /// basis state of the traced subsystems (members with zero weight are dropped).
    pub fn reduce(&self, keep: &[usize]) -> Result<Ensemble> {
        let bp = Bipartition::new(&self.dims, keep)?;
        let members = (0..bp.n_traced())
            .map(|t| DVector::from_iterator(bp.n_kept(), (0..bp.n_kept()).map(|a| self.amplitudes[bp.index(a, t)])))
            .filter(|v| v.iter().any(|c| c.norm_sqr() > 0.0))
            .collect();
        Ok(Ensemble::from_members(bp.kept_dims.clone(), members))
    }
}

/// `|n⟩` in a space truncated to `n_max` levels.
pub fn fock_state(n: usize, n_max: usize) -> Result<StateVector> {
    if n >= n_max {
        return Err(Error::Truncation {
            message: format!("Fock level {n} does not fit in {n_max} levels"),
            required: n + 1,
        });
    }
    let mut amplitudes = vec![C64::new(0.0, 0.0); n_max];
    amplitudes[n] = C64::new(1.0, 0.0);
    StateVector::new(vec![n_max], amplitudes)
}

fn ln_poisson_pmf(mean: f64, k: usize, ln_factorial: f64) -> f64 {
    if mean == 0.0 {
        return if k == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    -mean + k as f64 * mean.ln() - ln_factorial
}

/// `Σ_{k ≥ n} e^{-mean} meanᵏ / k!`, summed from the far tail downwards.
pub fn poisson_tail(mean: f64, n: usize) -> f64 {
    if mean <= 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let top = tail_horizon(mean).max(n + 1);
    let ln_fact = ln_factorials(top + 1);
    (n..=top)
        .rev()
        .map(|k| ln_poisson_pmf(mean, k, ln_fact[k]).exp())
        .sum()
}

fn tail_horizon(mean: f64) -> usize {
    (mean + 40.0 * mean.sqrt() + 60.0).ceil() as usize
}

fn ln_factorials(count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    let mut acc = 0.0;
    out.push(0.0);
    for k in 1..count {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

/// Smallest truncation whose discarded Poisson tail for `|α|²` is below
/// [`TAIL_THRESHOLD`].
pub fn coherent_truncation(alpha: C64) -> usize {
    let mean = alpha.norm_sqr();
    if mean == 0.0 {
        return 1;
    }
    let top = tail_horizon(mean);
    let ln_fact = ln_factorials(top + 1);
    let mut tail = 0.0;
    let mut n_max = top + 1;
    for k in (0..=top).rev() {
        tail += ln_poisson_pmf(mean, k, ln_fact[k]).exp();
        if tail >= TAIL_THRESHOLD {
            break;
        }
        n_max = k;
    }
    n_max.max(1)
}

/// Coherent state `|α⟩` truncated to `n_max` levels and renormalized.
pub fn coherent_state(alpha: C64, n_max: usize) -> Result<StateVector> {
    if n_max == 0 {
        return Err(Error::Dimension("truncation must be >= 1".into()));
    }
    let mean = alpha.norm_sqr();
    let tail = poisson_tail(mean, n_max);
    if tail >= TAIL_THRESHOLD {
        return Err(Error::Truncation {
            message: format!(
                "coherent state |α|² = {mean} loses tail mass {tail:.3e} at n_max = {n_max}"
            ),
            required: coherent_truncation(alpha),
        });
    }
    let ln_fact = ln_factorials(n_max);
    let phase = alpha.arg();
    let amplitudes = (0..n_max)
        .map(|k| {
            let magnitude = (0.5 * ln_poisson_pmf(mean, k, ln_fact[k])).exp();
            C64::from_polar(magnitude, phase * k as f64)
        })
        .collect();
    StateVector::normalized(vec![n_max], amplitudes)
}

/// Kronecker product of the parts, dims concatenated in argument order.
pub fn tensor(parts: &[StateVector]) -> Result<StateVector> {
    let (first, rest) = parts
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("tensor product of an empty list".into()))?;
    let mut dims = first.dims.clone();
    let mut amplitudes = first.amplitudes.clone();
    for part in rest {
        dims.extend_from_slice(&part.dims);
        amplitudes = amplitudes.kronecker(&part.amplitudes);
    }
    Ok(StateVector { dims, amplitudes })
}
