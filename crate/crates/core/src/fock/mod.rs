//! Truncated Fock-space representation.
//!
//! Composite systems are stored as flat arrays indexed row-major by the
//! multi-index over subsystem dimensions: the first subsystem varies
//! slowest. Field modes always come before the atomic subsystem.

mod density;
mod operator;
mod state;

pub use density::{partial_trace, DensityMatrix, Ensemble};
pub use operator::{expectation, FockOperator, LocalProduct, Observable};
pub use state::{coherent_state, coherent_truncation, fock_state, poisson_tail, tensor, StateVector};

/// Maximum Poisson tail mass a truncated coherent state may discard.
pub const TAIL_THRESHOLD: f64 = 1e-10;

/// Tolerance on the L2 norm of a constructed state.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Row-major strides for the given subsystem dimensions.
pub(crate) fn strides(dims: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    strides
}

pub(crate) fn total_dim(dims: &[usize]) -> usize {
    dims.iter().product()
}

/// Splits every full index into (kept index, traced index) for a bipartition
/// of the subsystems. Kept subsystems retain their relative order.
pub(crate) struct Bipartition {
    pub kept_dims: Vec<usize>,
    pub traced_dims: Vec<usize>,
    /// `full[a * traced + t]` is the full index of kept index `a` and traced index `t`.
    pub full: Vec<usize>,
}

impl Bipartition {
    pub fn new(dims: &[usize], keep: &[usize]) -> crate::Result<Self> {
        use crate::Error;
        if keep.is_empty() || keep.len() >= dims.len() {
            return Err(Error::InvalidArgument(format!(
                "keep set {keep:?} must be a nonempty proper subset of {} subsystems",
                dims.len()
            )));
        }
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != keep.len() || sorted.iter().any(|&k| k >= dims.len()) {
            return Err(Error::InvalidArgument(format!(
                "keep set {keep:?} has repeated or out-of-range subsystems"
            )));
        }
        let traced: Vec<usize> = (0..dims.len()).filter(|k| !sorted.contains(k)).collect();
        let kept_dims: Vec<usize> = sorted.iter().map(|&k| dims[k]).collect();
        let traced_dims: Vec<usize> = traced.iter().map(|&k| dims[k]).collect();
        let full_strides = strides(dims);
        let n_kept = total_dim(&kept_dims);
        let n_traced = total_dim(&traced_dims);

        let offsets = |subsystems: &[usize], sub_dims: &[usize], count: usize| -> Vec<usize> {
            let sub_strides = strides(sub_dims);
            (0..count)
                .map(|idx| {
                    subsystems
                        .iter()
                        .zip(sub_dims.iter().zip(&sub_strides))
                        .map(|(&k, (&d, &s))| ((idx / s) % d) * full_strides[k])
                        .sum()
                })
                .collect()
        };
        let kept_offsets = offsets(&sorted, &kept_dims, n_kept);
        let traced_offsets = offsets(&traced, &traced_dims, n_traced);

        let mut full = Vec::with_capacity(n_kept * n_traced);
        for a in &kept_offsets {
            for t in &traced_offsets {
                full.push(a + t);
            }
        }
        Ok(Self {
            kept_dims,
            traced_dims,
            full,
        })
    }

    pub fn n_kept(&self) -> usize {
        total_dim(&self.kept_dims)
    }

    pub fn n_traced(&self) -> usize {
        total_dim(&self.traced_dims)
    }

    #[inline]
    pub fn index(&self, kept: usize, traced: usize) -> usize {
        self.full[kept * self.n_traced() + traced]
    }
}
