//! Scalar diagnostics of evolved states: inverse participation ratios of
//! tomograms, the quorum-averaged tomographic entanglement indicator
//! `ξ_IPR`, subsystem linear entropy, fidelity and the complete
//! synchronization indicator `S_c`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::fock::{DensityMatrix, Ensemble, FockOperator, LocalProduct, Observable, StateVector};
use crate::tomography::{tomogram_single, trapezoid, QuadratureGrid, Tomogram2D, TwoModeTomographer};
use crate::{Error, Result, C64};

/// Tolerance on `∫ w = 1` before an IPR is computed.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-4;

/// Angle pairs `(θ_A, θ_B)` averaged over by `ξ_IPR`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleQuorum {
    pairs: Vec<(f64, f64)>,
}

impl AngleQuorum {
    pub fn new(pairs: Vec<(f64, f64)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidArgument("angle quorum is empty".into()));
        }
        if let Some(bad) = pairs.iter().find(|(a, b)| !(0.0..PI).contains(a) || !(0.0..PI).contains(b)) {
            return Err(Error::InvalidArgument(format!("quorum angle pair {bad:?} outside [0, π)")));
        }
        Ok(Self { pairs })
    }

    /// All pairs from `count` equispaced angles per mode.
    pub fn equispaced(count: usize) -> Result<Self> {
        let angles = crate::tomography::equispaced_angles(count);
        Self::new(angles.iter().flat_map(|&a| angles.iter().map(move |&b| (a, b))).collect())
    }

    pub fn pairs(&self) -> &[(f64, f64)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

impl Default for AngleQuorum {
    /// The 5×5 grid over `{0, π/5, 2π/5, 3π/5, 4π/5}`.
    fn default() -> Self {
        Self::equispaced(5).expect("5×5 quorum is valid")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndicatorKind {
    Sle,
    XiIpr,
    Sync,
    Fidelity,
}

impl IndicatorKind {
    pub const ALL: [IndicatorKind; 4] = [Self::Sle, Self::XiIpr, Self::Sync, Self::Fidelity];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Sle => "sle",
            Self::XiIpr => "xi_ipr",
            Self::Sync => "s_c",
            Self::Fidelity => "fidelity",
        }
    }
}

impl fmt::Display for IndicatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IndicatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown indicator `{s}`")))
    }
}

/// One indicator sampled on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorSeries {
    pub kind: IndicatorKind,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl IndicatorSeries {
    pub fn new(kind: IndicatorKind, times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::Dimension(format!(
                "{} times but {} values for {kind}",
                times.len(),
                values.len()
            )));
        }
        Ok(Self { kind, times, values })
    }

    /// Indices of local minima, see [`local_minima`].
    pub fn local_minima(&self) -> Vec<usize> {
        local_minima(&self.values)
    }

    /// Value at the grid time closest to `t`.
    pub fn value_near(&self, t: f64) -> Option<(f64, f64)> {
        self.times
            .iter()
            .zip(&self.values)
            .min_by(|a, b| (a.0 - t).abs().total_cmp(&(b.0 - t).abs()))
            .map(|(t, v)| (*t, *v))
    }

    pub fn median(&self) -> f64 {
        let mut sorted = self.values.clone();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len();
        match n {
            0 => f64::NAN,
            _ if n % 2 == 1 => sorted[n / 2],
            _ => 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]),
        }
    }
}

/// Interior points strictly below both neighbours. A flat run counts once,
/// at its first index, when the values on both sides of the run are larger.
pub fn local_minima(values: &[f64]) -> Vec<usize> {
    let mut out = Vec::new();
    let n = values.len();
    let mut i = 1;
    while i + 1 < n {
        if values[i] < values[i - 1] {
            let mut j = i;
            while j + 1 < n && values[j + 1] == values[i] {
                j += 1;
            }
            if j + 1 < n && values[j + 1] > values[i] {
                out.push(i);
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    out
}

fn check_normalized(integral: f64) -> Result<()> {
    if (integral - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::InvalidArgument(format!(
            "tomogram integrates to {integral}, not 1 within {NORMALIZATION_TOLERANCE}"
        )));
    }
    Ok(())
}

/// `η(θ) = ∫ w(X, θ)² dX` for one tomogram slice.
pub fn ipr_single(slice: &[f64], spacing: f64) -> Result<f64> {
    check_normalized(trapezoid(slice, spacing))?;
    let squares: Vec<f64> = slice.iter().map(|w| w * w).collect();
    Ok(trapezoid(&squares, spacing))
}

/// `η_AB = ∬ w² dX_A dX_B`.
pub fn ipr_two_mode(t2: &Tomogram2D) -> Result<f64> {
    check_normalized(t2.integral())?;
    let squared = Tomogram2D {
        values: t2.values.map(|w| w * w),
        ..t2.clone()
    };
    Ok(squared.integral())
}

/// IPRs of each reduced state at a list of angles.
fn reduced_iprs(rho: &DensityMatrix, thetas: &[f64], grid: &QuadratureGrid) -> Result<Vec<f64>> {
    let tom = tomogram_single(rho, thetas, grid)?;
    (0..thetas.len()).map(|j| ipr_single(&tom.row(j), grid.spacing())).collect()
}

/// `ε_IPR = 1 − η_A − η_B + η_AB` at one angle pair.
pub fn eps_ipr(
    rho: &DensityMatrix,
    theta_a: f64,
    theta_b: f64,
    grid_a: &QuadratureGrid,
    grid_b: &QuadratureGrid,
) -> Result<f64> {
    let quorum = AngleQuorum::new(vec![(theta_a, theta_b)])?;
    xi_ipr(rho, &quorum, grid_a, grid_b)
}

/// Mean of `ε_IPR` over the quorum for a two-mode state.
pub fn xi_ipr(rho: &DensityMatrix, quorum: &AngleQuorum, grid_a: &QuadratureGrid, grid_b: &QuadratureGrid) -> Result<f64> {
    xi_ipr_ensemble(&rho.to_ensemble(), quorum, grid_a, grid_b)
}

/// [`xi_ipr`] for a state already in member form.
pub fn xi_ipr_ensemble(
    state: &Ensemble,
    quorum: &AngleQuorum,
    grid_a: &QuadratureGrid,
    grid_b: &QuadratureGrid,
) -> Result<f64> {
    Ok(eps_ipr_values(state, quorum, grid_a, grid_b)?.iter().sum::<f64>() / quorum.len() as f64)
}

/// `ε_IPR` at every quorum pair, in quorum order.
pub fn eps_ipr_values(
    state: &Ensemble,
    quorum: &AngleQuorum,
    grid_a: &QuadratureGrid,
    grid_b: &QuadratureGrid,
) -> Result<Vec<f64>> {
    if quorum.is_empty() {
        return Err(Error::InvalidArgument("angle quorum is empty".into()));
    }
    let rho_a = state.partial_trace(&[0])?;
    let rho_b = state.partial_trace(&[1])?;
    let thetas_a: Vec<f64> = quorum.pairs().iter().map(|p| p.0).collect();
    let thetas_b: Vec<f64> = quorum.pairs().iter().map(|p| p.1).collect();
    let eta_a = reduced_iprs(&rho_a, &thetas_a, grid_a)?;
    let eta_b = reduced_iprs(&rho_b, &thetas_b, grid_b)?;
    let tomographer = TwoModeTomographer::new(state, *grid_a, *grid_b)?;
    let eta_ab: Vec<f64> = quorum
        .pairs()
        .par_iter()
        .map(|&(a, b)| ipr_two_mode(&tomographer.evaluate(a, b)))
        .collect::<Result<_>>()?;
    Ok((0..quorum.len()).map(|k| 1.0 - eta_a[k] - eta_b[k] + eta_ab[k]).collect())
}

/// `1 − Tr ρ_keep²`.
pub fn sle(rho: &DensityMatrix, keep: &[usize]) -> Result<f64> {
    Ok(1.0 - rho.partial_trace(keep)?.purity())
}

/// [`sle`] for a pure global state, without forming the full density matrix.
pub fn sle_pure(psi: &StateVector, keep: &[usize]) -> Result<f64> {
    let dims = psi.dims();
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !keep.contains(k)).collect();
    crate::fock::Bipartition::new(dims, keep)?;
    let kept_dim: usize = keep.iter().map(|&k| dims[k]).product();
    let traced_dim: usize = traced.iter().map(|&k| dims[k]).product();
    // both reduced states of a pure state have the same purity; pick the
    // side whose member Gram matrix is cheaper
    let side = if traced_dim <= kept_dim { keep } else { &traced[..] };
    Ok(1.0 - psi.reduce(side)?.purity())
}

/// `|⟨ψ₀|ψ_t⟩|²`.
pub fn fidelity(psi0: &StateVector, psit: &StateVector) -> Result<f64> {
    Ok(psi0.inner(psit)?.norm_sqr().min(1.0))
}

/// `q̂²` (`sign = 1`) or `p̂²` (`sign = −1`) from the normal-ordered form
/// `(±(â² + â†²) + 2â†â + 1)/2`, whose matrix elements are exact in the
/// truncated basis (a product of truncated `q̂` matrices is wrong on the top
/// level).
fn quadrature_square(dim: usize, sign: f64) -> Result<FockOperator> {
    let a = FockOperator::annihilation(dim);
    let a2 = a.compose(&a)?;
    let m = (a2.matrix() + a2.adjoint().matrix()) * C64::new(sign, 0.0)
        + FockOperator::number(dim).matrix() * C64::new(2.0, 0.0)
        + FockOperator::identity(dim).matrix();
    FockOperator::from_matrix(m * C64::new(0.5, 0.0))
}

/// `S_c = [⟨(Δq̂_−)²⟩ + ⟨(Δp̂_−)²⟩]^{−1}` for field modes 0 and 1, with
/// `q̂_− = (q̂₁ − q̂₂)/√2` and `p̂_−` likewise.
pub fn sync_indicator<S: Observable + ?Sized>(state: &S) -> Result<f64> {
    let dims = state.subsystem_dims();
    if dims.len() < 2 {
        return Err(Error::Dimension(format!("synchronization needs two field modes, got dims {dims:?}")));
    }
    let re = |op: LocalProduct| -> Result<f64> { Ok(state.expect(&op)?.re) };
    let (q1, q2) = (FockOperator::position(dims[0]), FockOperator::position(dims[1]));
    let (p1, p2) = (FockOperator::momentum(dims[0]), FockOperator::momentum(dims[1]));
    let mut total = 0.0;
    for (sign, x1, x2) in [(1.0, q1, q2), (-1.0, p1, p2)] {
        let mean = (re(LocalProduct::on(0, x1.clone()))? - re(LocalProduct::on(1, x2.clone()))?) / 2f64.sqrt();
        let second = (re(LocalProduct::on(0, quadrature_square(dims[0], sign)?))?
            + re(LocalProduct::on(1, quadrature_square(dims[1], sign)?))?
            - 2.0 * re(LocalProduct::on(0, x1).then(1, x2))?)
            / 2.0;
        total += second - mean * mean;
    }
    if total <= 0.0 || !total.is_finite() {
        return Err(Error::Invariant(format!("difference-quadrature variance sum is {total}")));
    }
    Ok(1.0 / total)
}
