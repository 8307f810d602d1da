use crate::dynamics::{LambdaModel, LambdaParams};
use crate::indicators::sync_indicator;
use crate::{Error, Result, C64};

/// Outcome of the one-dimensional search over the Λ-model field intensity.
#[derive(Debug, Clone, PartialEq)]
pub struct Calibration {
    /// `|α|²` of both fields (α real and positive).
    pub alpha_sq: f64,
    /// `S_c` at the target time for that intensity.
    pub sync: f64,
    pub n_max: usize,
    /// `(|α|², S_c)` at every evaluation, in search order.
    pub trace: Vec<(f64, f64)>,
}

/// `S_c(τ)` for both fields starting in `|√alpha_sq⟩` and the atom in `|e₁⟩`.
pub fn lambda_sync_at(params: &LambdaParams, alpha_sq: f64, tau: f64) -> Result<(f64, usize)> {
    if !(alpha_sq >= 0.0 && alpha_sq.is_finite()) {
        return Err(Error::InvalidArgument(format!("|α|² must be finite and >= 0, got {alpha_sq}")));
    }
    let alpha = C64::new(alpha_sq.sqrt(), 0.0);
    let model = LambdaModel::coherent(*params, alpha, alpha, None)?;
    let state = model.evolve(&[tau])?.states.remove(0);
    Ok((sync_indicator(&state)?, model.n_max()))
}

/// Bisects `|α|² ∈ [low, high]` for `S_c(τ) = target`. The bracket must
/// straddle the target; the search stops once `S_c` is within `tolerance`
/// of it or the bracket is narrower than `1e-6`.
pub fn calibrate_lambda_alpha(
    params: &LambdaParams,
    tau: f64,
    target: f64,
    (low, high): (f64, f64),
    tolerance: f64,
) -> Result<Calibration> {
    let mut trace = Vec::new();
    let mut eval = |a: f64| -> Result<(f64, usize)> {
        let (s, n) = lambda_sync_at(params, a, tau)?;
        trace.push((a, s));
        Ok((s, n))
    };
    let (mut lo, mut hi) = (low, high);
    let (s_lo, _) = eval(lo)?;
    let (s_hi, _) = eval(hi)?;
    if (s_lo - target).signum() == (s_hi - target).signum() {
        return Err(Error::InvalidArgument(format!(
            "S_c({tau}) does not cross {target} on |α|² ∈ [{low}, {high}]: endpoint values {s_lo}, {s_hi}"
        )));
    }
    let lo_above = s_lo > target;
    loop {
        let mid = 0.5 * (lo + hi);
        let (s, n_max) = eval(mid)?;
        if (s - target).abs() <= tolerance || hi - lo < 1e-6 {
            return Ok(Calibration {
                alpha_sq: mid,
                sync: s,
                n_max,
                trace,
            });
        }
        if (s > target) == lo_above {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}
