use nalgebra::DMatrix;
use std::f64::consts::FRAC_1_SQRT_2;

use super::{strides, DensityMatrix, Ensemble, StateVector};
use crate::{Error, Result, C64};

/// Operator on a single truncated subsystem.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    matrix: DMatrix<C64>,
}

impl FockOperator {
    pub fn from_matrix(matrix: DMatrix<C64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            return Err(Error::Dimension(format!(
                "operator matrix must be square and nonempty, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: DMatrix::identity(dim, dim),
        }
    }

    /// `â` with `⟨n−1|â|n⟩ = √n`.
    pub fn annihilation(dim: usize) -> Self {
        let matrix = DMatrix::from_fn(dim, dim, |r, c| {
            if c == r + 1 {
                C64::new((c as f64).sqrt(), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        Self { matrix }
    }

    pub fn creation(dim: usize) -> Self {
        Self::annihilation(dim).adjoint()
    }

    pub fn number(dim: usize) -> Self {
        Self {
            matrix: DMatrix::from_diagonal(&nalgebra::DVector::from_fn(dim, |n, _| C64::new(n as f64, 0.0))),
        }
    }

    /// Rotated quadrature `(â† e^{iθ} + â e^{−iθ})/√2`; θ = 0 is `q`, θ = π/2 is `p`.
    pub fn quadrature(dim: usize, theta: f64) -> Self {
        let a = Self::annihilation(dim).matrix;
        let phase = C64::from_polar(1.0, theta);
        let matrix = (a.adjoint() * phase + a * phase.conj()) * C64::new(FRAC_1_SQRT_2, 0.0);
        Self { matrix }
    }

    pub fn position(dim: usize) -> Self {
        Self::quadrature(dim, 0.0)
    }

    pub fn momentum(dim: usize) -> Self {
        Self::quadrature(dim, std::f64::consts::FRAC_PI_2)
    }

    /// `|j⟩⟨k|` on a `dim`-level system.
    pub fn transition(j: usize, k: usize, dim: usize) -> Result<Self> {
        if j >= dim || k >= dim {
            return Err(Error::Dimension(format!("transition |{j}⟩⟨{k}| outside {dim} levels")));
        }
        let mut matrix = DMatrix::zeros(dim, dim);
        matrix[(j, k)] = C64::new(1.0, 0.0);
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
        }
    }

    /// Operator product `self · other`.
    pub fn compose(&self, other: &FockOperator) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(format!(
                "composing operators of dimension {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(Self {
            matrix: &self.matrix * &other.matrix,
        })
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            matrix: &self.matrix * factor,
        }
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &FockOperator) -> Result<Self> {
        let ab = self.compose(other)?;
        let ba = other.compose(self)?;
        Ok(Self {
            matrix: ab.matrix - ba.matrix,
        })
    }

    /// Embeds the operator on `subsystem` of a composite space as a dense matrix.
    pub fn embed(&self, dims: &[usize], subsystem: usize) -> Result<DMatrix<C64>> {
        LocalProduct::on(subsystem, self.clone()).dense(dims)
    }
}

/// Product of single-subsystem operators acting on a composite space
/// (identity on every subsystem not listed). Factors on the same subsystem
/// multiply in list order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LocalProduct {
    factors: Vec<(usize, FockOperator)>,
}

impl LocalProduct {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn on(subsystem: usize, op: FockOperator) -> Self {
        Self::new().then(subsystem, op)
    }

    /// Appends a factor (applied after the existing ones on the same subsystem).
    pub fn then(mut self, subsystem: usize, op: FockOperator) -> Self {
        self.factors.push((subsystem, op));
        self
    }

    pub fn factors(&self) -> &[(usize, FockOperator)] {
        &self.factors
    }

    /// Collapses factors per subsystem into one matrix each.
    fn collapsed(&self, dims: &[usize]) -> Result<Vec<(usize, DMatrix<C64>)>> {
        let mut out: Vec<(usize, DMatrix<C64>)> = Vec::new();
        for (subsystem, op) in &self.factors {
            let d = *dims.get(*subsystem).ok_or_else(|| {
                Error::Dimension(format!("operator on subsystem {subsystem} of a {}-part system", dims.len()))
            })?;
            if op.dim() != d {
                return Err(Error::Dimension(format!(
                    "operator of dimension {} on subsystem {subsystem} of dimension {d}",
                    op.dim()
                )));
            }
            match out.iter_mut().find(|(s, _)| s == subsystem) {
                Some((_, m)) => *m = &*m * op.matrix(),
                None => out.push((*subsystem, op.matrix().clone())),
            }
        }
        Ok(out)
    }

    /// Dense matrix of the product on the full space.
    pub fn dense(&self, dims: &[usize]) -> Result<DMatrix<C64>> {
        let collapsed = self.collapsed(dims)?;
        let mut full = DMatrix::from_element(1, 1, C64::new(1.0, 0.0));
        for (k, &d) in dims.iter().enumerate() {
            let local = collapsed
                .iter()
                .find(|(s, _)| *s == k)
                .map(|(_, m)| m.clone())
                .unwrap_or_else(|| DMatrix::identity(d, d));
            full = full.kronecker(&local);
        }
        Ok(full)
    }

    /// Visits every nonzero matrix element `O[row, col]` of the product.
    fn for_each_element(&self, dims: &[usize], mut visit: impl FnMut(usize, usize, C64)) -> Result<()> {
        let collapsed = self.collapsed(dims)?;
        let stride = strides(dims);
        // nonzero entries of every column of every factor
        let sparse: Vec<(usize, Vec<Vec<(usize, C64)>>)> = collapsed
            .iter()
            .map(|(s, m)| {
                let cols = (0..m.ncols())
                    .map(|c| {
                        (0..m.nrows())
                            .filter(|&r| m[(r, c)] != C64::new(0.0, 0.0))
                            .map(|r| (r, m[(r, c)]))
                            .collect()
                    })
                    .collect();
                (*s, cols)
            })
            .collect();
        let total: usize = dims.iter().product();
        let mut stack: Vec<(usize, C64)> = Vec::new();
        for col in 0..total {
            stack.clear();
            stack.push((col, C64::new(1.0, 0.0)));
            for (s, cols) in &sparse {
                let level = (col / stride[*s]) % dims[*s];
                let mut next = Vec::with_capacity(stack.len() * cols[level].len());
                for &(row, value) in &stack {
                    let base = row - level * stride[*s];
                    for &(r, entry) in &cols[level] {
                        next.push((base + r * stride[*s], value * entry));
                    }
                }
                stack = next;
            }
            for &(row, value) in &stack {
                visit(row, col, value);
            }
        }
        Ok(())
    }
}

impl From<FockOperator> for LocalProduct {
    fn from(op: FockOperator) -> Self {
        LocalProduct::on(0, op)
    }
}

/// States that can report expectation values of local operator products.
pub trait Observable {
    fn subsystem_dims(&self) -> &[usize];

    /// `Tr(ρ Ô)` for this state.
    fn expect(&self, op: &LocalProduct) -> Result<C64>;
}

impl Observable for StateVector {
    fn subsystem_dims(&self) -> &[usize] {
        self.dims()
    }

    fn expect(&self, op: &LocalProduct) -> Result<C64> {
        let v = self.amplitudes();
        let mut acc = C64::new(0.0, 0.0);
        op.for_each_element(self.dims(), |row, col, value| acc += v[row].conj() * value * v[col])?;
        Ok(acc)
    }
}

impl Observable for DensityMatrix {
    fn subsystem_dims(&self) -> &[usize] {
        self.dims()
    }

    fn expect(&self, op: &LocalProduct) -> Result<C64> {
        let rho = self.elements();
        let mut acc = C64::new(0.0, 0.0);
        op.for_each_element(self.dims(), |row, col, value| acc += rho[(col, row)] * value)?;
        Ok(acc)
    }
}

impl Observable for Ensemble {
    fn subsystem_dims(&self) -> &[usize] {
        self.dims()
    }

    fn expect(&self, op: &LocalProduct) -> Result<C64> {
        let mut acc = C64::new(0.0, 0.0);
        let members = self.members();
        op.for_each_element(self.dims(), |row, col, value| {
            for v in members {
                acc += v[row].conj() * value * v[col];
            }
        })?;
        Ok(acc)
    }
}

/// `Tr(ρ Ô)`.
pub fn expectation<S: Observable + ?Sized>(op: &LocalProduct, state: &S) -> Result<C64> {
    state.expect(op)
}
