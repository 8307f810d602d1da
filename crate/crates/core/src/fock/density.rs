use nalgebra::{DMatrix, DVector};

use super::state::check_dims;
use super::{total_dim, Bipartition};
use crate::{Error, Result, C64};

const HERMITIAN_TOLERANCE: f64 = 1e-12;
const TRACE_TOLERANCE: f64 = 1e-10;

/// Density matrix over a truncated composite basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    elements: DMatrix<C64>,
}

impl DensityMatrix {
    /// Validates Hermiticity (elementwise, 1e-12) and unit trace (1e-10).
    pub fn new(dims: Vec<usize>, elements: DMatrix<C64>) -> Result<Self> {
        check_dims(&dims)?;
        let d = total_dim(&dims);
        if elements.nrows() != d || elements.ncols() != d {
            return Err(Error::Dimension(format!(
                "dims {dims:?} need a {d}x{d} matrix, got {}x{}",
                elements.nrows(),
                elements.ncols()
            )));
        }
        for i in 0..d {
            for j in 0..=i {
                if (elements[(i, j)] - elements[(j, i)].conj()).norm() > HERMITIAN_TOLERANCE {
                    return Err(Error::Invariant(format!("density matrix not Hermitian at ({i}, {j})")));
                }
            }
        }
        let rho = Self { dims, elements };
        let trace = rho.trace();
        if (trace - 1.0).abs() > TRACE_TOLERANCE {
            return Err(Error::Invariant(format!("density matrix trace {trace} differs from 1")));
        }
        Ok(rho)
    }

    pub(crate) fn from_parts(dims: Vec<usize>, elements: DMatrix<C64>) -> Self {
        debug_assert_eq!(total_dim(&dims), elements.nrows());
        Self { dims, elements }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn elements(&self) -> &DMatrix<C64> {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.elements.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.elements.diagonal().iter().map(|c| c.re).sum()
    }

    /// `Tr ρ²`, using Hermiticity: `Σ |ρ_ij|²`.
    pub fn purity(&self) -> f64 {
        self.elements.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut values: Vec<f64> = self.elements.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
        values.sort_by(f64::total_cmp);
        values
    }

    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        partial_trace(self, keep)
    }

    /// Low-rank factorization `ρ = Σ_k v_k v_k†` by diagonally pivoted Cholesky.
    /// Columns whose pivot falls below `1e-15 · Tr ρ` are discarded.
    pub fn to_ensemble(&self) -> Ensemble {
        let d = self.dim();
        let cutoff = 1e-15 * self.trace().max(f64::MIN_POSITIVE);
        let mut residual_diag: Vec<f64> = self.elements.diagonal().iter().map(|c| c.re).collect();
        let mut columns: Vec<DVector<C64>> = Vec::new();
        loop {
            let (pivot, &largest) = residual_diag
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .expect("nonempty diagonal");
            if largest <= cutoff || columns.len() == d {
                break;
            }
            let scale = largest.sqrt();
            let mut col = self.elements.column(pivot).clone_owned();
            for prev in &columns {
                let coeff = prev[pivot].conj();
                col.axpy(-coeff, prev, C64::new(1.0, 0.0));
            }
            col.unscale_mut(scale);
            // exact zero at the pivot row keeps later updates consistent
            col[pivot] = C64::new(scale, 0.0);
            for (r, c) in residual_diag.iter_mut().zip(col.iter()) {
                *r -= c.norm_sqr();
            }
            residual_diag[pivot] = 0.0;
            columns.push(col);
        }
        Ensemble::from_members(self.dims.clone(), columns)
    }
}

/// Reduced density matrix over the subsystems in `keep` (kept in their
/// original order). `keep` must be a nonempty proper subset.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let bp = Bipartition::new(&rho.dims, keep)?;
    let (n_kept, n_traced) = (bp.n_kept(), bp.n_traced());
    let reduced = DMatrix::from_fn(n_kept, n_kept, |a, b| {
        (0..n_traced)
            .map(|t| rho.elements[(bp.index(a, t), bp.index(b, t))])
            .sum::<C64>()
    });
    Ok(DensityMatrix::from_parts(bp.kept_dims, reduced))
}

/// Mixed state stored as unnormalized pure members: `ρ = Σ_k |v_k⟩⟨v_k|`.
///
/// This is the working form for large reduced states whose rank is small
/// (for instance two field modes after tracing out a three-level atom).
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    dims: Vec<usize>,
    members: Vec<DVector<C64>>,
}

impl Ensemble {
    pub(crate) fn from_members(dims: Vec<usize>, members: Vec<DVector<C64>>) -> Self {
        debug_assert!(members.iter().all(|m| m.len() == total_dim(&dims)));
        Self { dims, members }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn members(&self) -> &[DVector<C64>] {
        &self.members
    }

    pub fn trace(&self) -> f64 {
        self.members.iter().map(|v| v.norm_squared()).sum()
    }

    /// `Tr ρ² = Σ_{jk} |⟨v_j|v_k⟩|²`.
    pub fn purity(&self) -> f64 {
        let mut total = 0.0;
        for (j, a) in self.members.iter().enumerate() {
            total += a.norm_squared().powi(2);
            for b in &self.members[j + 1..] {
                total += 2.0 * a.dotc(b).norm_sqr();
            }
        }
        total
    }

    pub fn to_density(&self) -> DensityMatrix {
        let d = total_dim(&self.dims);
        let mut rho = DMatrix::<C64>::zeros(d, d);
        for v in &self.members {
            rho += v * v.adjoint();
        }
        DensityMatrix::from_parts(self.dims.clone(), rho)
    }

    /// Partial trace of the ensemble, returned densely over the kept subsystems.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let bp = Bipartition::new(&self.dims, keep)?;
        let (n_kept, n_traced) = (bp.n_kept(), bp.n_traced());
        let mut reduced = DMatrix::<C64>::zeros(n_kept, n_kept);
        for v in &self.members {
            // reshape the member into an n_kept x n_traced block, then B B†
            let block = DMatrix::from_fn(n_kept, n_traced, |a, t| v[bp.index(a, t)]);
            reduced += &block * block.adjoint();
        }
        Ok(DensityMatrix::from_parts(bp.kept_dims, reduced))
    }
}

impl From<&DensityMatrix> for Ensemble {
    fn from(rho: &DensityMatrix) -> Self {
        rho.to_ensemble()
    }
}
