//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the report is always
//! printed. Exits non-zero when any binding criterion fails; the
//! Λ-model synchronization criterion (9) is reported but not binding.

use std::collections::BTreeMap;
use std::f64::consts::{PI, SQRT_2};
use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use cvtomo::dynamics::{ApModel, ApParams, KerrModel, KerrParams, LambdaModel, LambdaParams};
use cvtomo::experiments::{
    calibrate_lambda_alpha, parse_config, preset, run, RunData, RunOptions, PRESETS,
};
use cvtomo::fock::{coherent_state, fock_state, partial_trace, tensor, StateVector};
use cvtomo::indicators::{eps_ipr, fidelity, ipr_single, local_minima, IndicatorKind, IndicatorSeries};
use cvtomo::tomography::{
    reduce_tomogram, tomogram_pure, tomogram_single, tomogram_two_mode, wigner, KeptMode, QuadratureGrid,
};
use cvtomo::C64;
use nalgebra::DVector;

const REVIVAL_FIDELITY_TOL: f64 = 1e-10;
const REVIVAL_RUNTIME_S: f64 = 1.0;
const CAT_FIDELITY_TOL: f64 = 1e-8;
const KERR_EPSILON: f64 = 0.005;
const NORMALIZATION_TOL: f64 = 1e-6;
const MARGINAL_TOL: f64 = 1e-8;
const IPR_TOL: f64 = 1e-6;
const SLE_DIP_FRACTION: f64 = 0.2;
const TOMOGRAM_CONTRAST: f64 = 3.0;
const AP_RUNTIME_S: f64 = 120.0;
const ORACLE_AMPLITUDE_TOL: f64 = 1e-8;
const SYNC_TARGET: f64 = 0.03;
const SYNC_WINDOW: f64 = 0.01;
const WIGNER_MARGINAL_TOL: f64 = 1e-4;
/// Ridges are maxima above this fraction of the slice maximum.
const RIDGE_FLOOR: f64 = 0.05;
/// Pointwise match of the T_rev/2 slice to two Gaussians. The default
/// truncation drops 1e-10 of probability, i.e. ~1e-5 in amplitude.
const RIDGE_SHAPE_TOL: f64 = 1e-5;

struct Outcome {
    id: u8,
    title: &'static str,
    pass: bool,
    binding: bool,
    detail: String,
}

type Check = Result<(bool, String), String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Presets run twice into separate directories.
struct PresetRuns {
    data: BTreeMap<&'static str, RunData>,
    seconds: BTreeMap<&'static str, f64>,
    mismatches: Vec<String>,
    files: usize,
}

fn run_presets(root: &Path) -> Result<PresetRuns, String> {
    let mut runs = PresetRuns {
        data: BTreeMap::new(),
        seconds: BTreeMap::new(),
        mismatches: Vec::new(),
        files: 0,
    };
    for p in PRESETS {
        let config = p.config().map_err(err)?;
        let mut bundles = Vec::new();
        for pass in ["first", "second"] {
            let options = RunOptions {
                out_dir: root.join(pass),
                timestamp: 1_700_000_000,
            };
            let start = Instant::now();
            bundles.push(run(&config, &options).map_err(|e| format!("{}: {e}", p.name))?);
            runs.seconds.insert(p.name, start.elapsed().as_secs_f64());
        }
        let (a, b) = (&bundles[0], &bundles[1]);
        let mut names_a: Vec<_> = a.files.iter().chain([&a.manifest]).map(|f| f.file_name().unwrap().to_owned()).collect();
        let mut names_b: Vec<_> = b.files.iter().chain([&b.manifest]).map(|f| f.file_name().unwrap().to_owned()).collect();
        names_a.sort();
        names_b.sort();
        if names_a != names_b {
            runs.mismatches.push(format!("{}: file lists differ", p.name));
        }
        for name in &names_a {
            runs.files += 1;
            let left = fs::read(a.dir.join(name)).map_err(err)?;
            let right = fs::read(b.dir.join(name)).map_err(err)?;
            if left != right {
                runs.mismatches.push(format!("{}/{}", p.name, name.to_string_lossy()));
            }
        }
        runs.data.insert(p.name, bundles.swap_remove(0).data);
    }
    Ok(runs)
}

/// Coherent-state amplitudes `e^{−|α|²/2} αⁿ/√n!`, built by recurrence.
fn coherent_oracle(alpha: C64, dim: usize) -> DVector<C64> {
    let mut c = DVector::from_element(dim, C64::new(0.0, 0.0));
    c[0] = C64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for n in 1..dim {
        c[n] = c[n - 1] * alpha / (n as f64).sqrt();
    }
    c
}

/// Strict interior maxima above `RIDGE_FLOOR` times the largest value.
fn count_ridges(slice: &[f64]) -> usize {
    let top = slice.iter().copied().fold(f64::MIN, f64::max);
    slice
        .windows(3)
        .filter(|w| w[1] > w[0] && w[1] > w[2] && w[1] > RIDGE_FLOOR * top)
        .count()
}

fn max_abs_diff(a: &DVector<C64>, b: &DVector<C64>) -> f64 {
    (a - b).iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Deterministic pseudo-random normalized amplitudes on `support`.
fn scrambled_state(dims: Vec<usize>, support: impl Fn(usize) -> bool, seed: u64) -> StateVector {
    let len: usize = dims.iter().product();
    let mut s = seed;
    let mut next = || {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let amps = (0..len)
        .map(|i| {
            let (re, im) = (next(), next());
            if support(i) {
                C64::new(re, im)
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect();
    StateVector::normalized(dims, amps).unwrap()
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let model = KerrModel::new(KerrParams::new(1.0, C64::new(0.0, 7.0)).map_err(err)?, None).map_err(err)?;
    let revived = model.state_at(PI).map_err(err)?;
    let f = fidelity(model.initial(), &revived).map_err(err)?;
    let elapsed = start.elapsed().as_secs_f64();
    let pass = (f - 1.0).abs() <= REVIVAL_FIDELITY_TOL && elapsed < REVIVAL_RUNTIME_S;
    Ok((pass, format!("|<psi(0)|psi(pi)>|^2 = {f:.15}, n_max = {}, {:.3} ms", model.n_max(), elapsed * 1e3)))
}

fn criterion_2(runs: &PresetRuns) -> Check {
    let alpha = C64::new(0.0, 7.0);
    let model = KerrModel::new(KerrParams::new(1.0, alpha).map_err(err)?, None).map_err(err)?;
    let dim = model.n_max();
    let half = model.state_at(PI / 2.0).map_err(err)?;

    // Phase pattern e^{−iπ n(n−1)/2} has period 4; its discrete Fourier
    // coefficients weight the coherent states |α e^{−iπk/2}⟩.
    let pattern: Vec<C64> = (0..4).map(|n| C64::from_polar(1.0, -PI * (n * (n as i64 - 1)) as f64 / 2.0)).collect();
    let mut cat = DVector::from_element(dim, C64::new(0.0, 0.0));
    for k in 0..4 {
        let weight: C64 = (0..4)
            .map(|n| pattern[n] * C64::from_polar(1.0, PI * (n * k) as f64 / 2.0))
            .sum::<C64>()
            / 4.0;
        if weight.norm() > 1e-14 {
            cat += coherent_oracle(alpha * C64::from_polar(1.0, -PI * k as f64 / 2.0), dim) * weight;
        }
    }
    let overlap = half.amplitudes().dotc(&cat);
    let cat_fidelity = overlap.norm_sqr() / cat.norm_squared();

    let data = &runs.data["fig1"];
    let tomograms = &data.tomograms;
    if tomograms.len() != 3 || tomograms[0].thetas[0] != 0.0 {
        return Err("fig1 must yield three tomograms starting at theta = 0".into());
    }
    let ridges: Vec<usize> = tomograms.iter().map(|t| count_ridges(&t.row(0))).collect();

    // At T_rev/2 the θ = 0 slice is two Gaussians of weight ½ at ±√2·7.
    let xs = tomograms[1].grid.points();
    let centre = SQRT_2 * 7.0;
    let gaussian_err = xs
        .iter()
        .zip(tomograms[1].row(0))
        .map(|(x, w)| {
            let two = ((-(x - centre).powi(2)).exp() + (-(x + centre).powi(2)).exp()) / (2.0 * PI.sqrt());
            (w - two).abs()
        })
        .fold(0.0, f64::max);
    let peak = |k: usize| tomograms[k].values.max();
    let broadening = [peak(0) / peak(1), peak(2) / peak(1)];

    let pass = cat_fidelity >= 1.0 - CAT_FIDELITY_TOL && ridges[1] == 2 && gaussian_err < RIDGE_SHAPE_TOL && ridges[0] == 1 && ridges[2] == 1;
    Ok((
        pass,
        format!(
            "cat fidelity deficit {:.1e}; theta=0 ridges at T/2-eps, T/2, T/2+eps = {ridges:?} \
             (single ridge expected at +-eps); max |w - two-Gaussian| at T/2 = {gaussian_err:.1e}; \
             peak height relative to T/2 = {:.3}, {:.3} (eps = {KERR_EPSILON})",
            (1.0 - cat_fidelity).max(0.0),
            broadening[0],
            broadening[1]
        ),
    ))
}

fn criterion_3(runs: &PresetRuns) -> Check {
    let mut worst = 0.0f64;
    let mut count = 0;
    let mut where_worst = String::new();
    for (name, data) in &runs.data {
        for (k, tom) in data.tomograms.iter().enumerate() {
            count += 1;
            for (j, integral) in tom.row_integrals().into_iter().enumerate() {
                let dev = (integral - 1.0).abs();
                if dev > worst {
                    worst = dev;
                    where_worst = format!("{name} #{k} theta #{j}");
                }
            }
        }
    }
    Ok((
        count > 0 && worst <= NORMALIZATION_TOL,
        format!("{count} tomograms; worst |integral - 1| = {worst:.2e} ({where_worst})"),
    ))
}

fn criterion_4() -> Check {
    let params = ApParams {
        omega_field: 1.0,
        omega_atom: 1.0,
        gamma_nl: 0.01,
        g_coupling: 1.0,
        n_max: 11,
        atom_levels: 11,
    };
    let model = ApModel::new(params).map_err(err)?;
    let initial = tensor(&[fock_state(10, 11).map_err(err)?, fock_state(0, 11).map_err(err)?]).map_err(err)?;
    let psi = model.evolve(&initial, &[3.0]).map_err(err)?.states.remove(0);
    let rho = psi.to_density();
    let rho_field = partial_trace(&rho, &[0]).map_err(err)?;
    let purity = rho_field.purity();
    let grid = QuadratureGrid::for_amplitude(10.5f64.sqrt());
    let theta_a = 0.7;
    let single = tomogram_single(&rho_field, &[theta_a], &grid).map_err(err)?.row(0);
    let mut worst = 0.0f64;
    for theta_b in [0.3, 1.9] {
        let t2 = tomogram_two_mode(&rho, theta_a, theta_b, &grid, &grid).map_err(err)?;
        let marginal = reduce_tomogram(&t2, KeptMode::A);
        worst = marginal.iter().zip(&single).map(|(a, b)| (a - b).abs()).fold(worst, f64::max);
    }
    Ok((
        worst <= MARGINAL_TOL && purity < 0.9,
        format!("|10;0> at gt = 3 (field purity {purity:.3}); theta_B in {{0.3, 1.9}}: max deviation {worst:.2e}"),
    ))
}

fn criterion_5() -> Check {
    let eta = 1.0 / (2.0 * PI).sqrt();
    let mut worst: f64 = 0.0;
    for alpha in [C64::new(0.0, 0.0), C64::new(1.5, 0.5), C64::new(-2.0, 3.0)] {
        let psi = coherent_state(alpha, 60).map_err(err)?;
        let grid = QuadratureGrid::for_amplitude(alpha.norm());
        let thetas = [0.0, 0.4, 1.3, 2.9];
        let tom = tomogram_pure(&psi, &thetas, &grid).map_err(err)?;
        for j in 0..thetas.len() {
            worst = worst.max((ipr_single(&tom.row(j), grid.spacing()).map_err(err)? - eta).abs());
        }
    }
    let (a, b) = (C64::new(1.0, -0.5), C64::new(-0.8, 1.2));
    let rho = tensor(&[coherent_state(a, 30).map_err(err)?, coherent_state(b, 30).map_err(err)?])
        .map_err(err)?
        .to_density();
    let grid = QuadratureGrid::for_amplitude(1.5);
    let expected = (1.0 - eta).powi(2);
    let mut eps_worst: f64 = 0.0;
    for (ta, tb) in [(0.0, 0.0), (0.5, 2.0), (2.5, 1.1)] {
        eps_worst = eps_worst.max((eps_ipr(&rho, ta, tb, &grid, &grid).map_err(err)? - expected).abs());
    }
    Ok((
        worst <= IPR_TOL && eps_worst <= IPR_TOL,
        format!("max |eta - 1/sqrt(2pi)| = {worst:.1e}; max |eps_IPR - (1 - 1/sqrt(2pi))^2| = {eps_worst:.1e}"),
    ))
}

fn dip_near(series: &IndicatorSeries, low: f64, high: f64) -> Option<(f64, f64)> {
    series
        .local_minima()
        .into_iter()
        .map(|i| (series.times[i], series.values[i]))
        .filter(|(t, _)| *t >= low && *t <= high)
        .min_by(|a, b| a.1.total_cmp(&b.1))
}

fn criterion_6(runs: &PresetRuns) -> Check {
    let sle = runs.data["fig2a"].series(IndicatorKind::Sle).ok_or("fig2a has no SLE series")?;
    let median = sle.median();
    let dip = dip_near(sle, 620.0, 632.0);
    let toms = &runs.data["fig3top"].tomograms;
    let d_626_625 = toms[1].l1_distance(&toms[0]).map_err(err)?;
    let d_625_627 = toms[0].l1_distance(&toms[2]).map_err(err)?;
    let d_626_627 = toms[1].l1_distance(&toms[2]).map_err(err)?;
    let ratio = d_626_625 / d_625_627;
    let seconds = runs.seconds["fig2a"] + runs.seconds["fig3top"];
    let dip_ok = dip.is_some_and(|(_, v)| v < SLE_DIP_FRACTION * median);
    let dip_text = match dip {
        Some((t, v)) => format!("SLE minimum {v:.4} at gt = {t} (median {median:.4}, ratio {:.3})", v / median),
        None => "no SLE local minimum in [620, 632]".into(),
    };
    Ok((
        dip_ok && toms.len() == 3 && ratio >= TOMOGRAM_CONTRAST && seconds < AP_RUNTIME_S,
        format!(
            "{dip_text}; L1 d(626,625) = {d_626_625:.4}, d(625,627) = {d_625_627:.4}, d(626,627) = {d_626_627:.4}, \
             ratio {ratio:.2}; {seconds:.2} s"
        ),
    ))
}

fn criterion_7(runs: &PresetRuns) -> Check {
    let sle = runs.data["fig2b"].series(IndicatorKind::Sle).ok_or("fig2b has no SLE series")?;
    let dip = dip_near(sle, 1268.0, 1270.0);
    Ok(match dip {
        Some((t, v)) => (true, format!("SLE local minimum {v:.4} at gt = {t}")),
        None => (false, "no SLE local minimum within one step of gt = 1269".into()),
    })
}

fn criterion_8() -> Check {
    let im = C64::new(0.0, -1.0);
    let ap = ApParams {
        omega_field: 1.0,
        omega_atom: 1.3,
        gamma_nl: 0.07,
        g_coupling: 0.9,
        n_max: 11,
        atom_levels: 11,
    };
    let ap_state = scrambled_state(vec![11, 11], |i| i / 11 + i % 11 <= 10, 7);
    let ap_h = ap.dense_hamiltonian().map_err(err)?;
    let times = [0.4, 3.7, 21.0];
    let ap_states = ApModel::new(ap)
        .map_err(err)?
        .evolve_physical(&ap_state, &times)
        .map_err(err)?;
    let mut ap_worst: f64 = 0.0;
    for (t, s) in times.iter().zip(&ap_states) {
        let exact = (&ap_h * (im * *t)).exp() * ap_state.amplitudes();
        ap_worst = ap_worst.max(max_abs_diff(s.amplitudes(), &exact));
    }

    let lp = LambdaParams {
        omega_atomic: [0.1, 0.3, 1.2],
        omega_fields: [0.9, 1.1],
        chi: 0.7,
        kappa: 1.3,
    };
    let n = 8;
    let lambda_state = scrambled_state(vec![n, n, 3], |_| true, 11);
    let lambda_h = lp.dense_hamiltonian(n).map_err(err)?;
    let model = LambdaModel::from_state(lp, lambda_state.clone()).map_err(err)?;
    let mut lambda_worst: f64 = 0.0;
    for (t, s) in times.iter().zip(model.evolve_physical(&times)) {
        let exact = (&lambda_h * (im * *t)).exp() * lambda_state.amplitudes();
        lambda_worst = lambda_worst.max(max_abs_diff(s.amplitudes(), &exact));
    }
    let dims = (ap_h.nrows(), lambda_h.nrows());
    Ok((
        ap_worst <= ORACLE_AMPLITUDE_TOL && lambda_worst <= ORACLE_AMPLITUDE_TOL && dims.0 <= 200 && dims.1 <= 200,
        format!(
            "AP (dim {}) max |delta c| = {ap_worst:.1e}; Lambda (dim {}) max |delta c| = {lambda_worst:.1e}",
            dims.0, dims.1
        ),
    ))
}

/// Λ-model ξ_IPR series for both fields in `|√alpha_sq⟩`.
fn lambda_xi_series(base: &str, alpha_sq: f64) -> Result<IndicatorSeries, String> {
    let doc = preset(base)
        .map_err(err)?
        .document()
        .replace("coherent 1 0", &format!("coherent {} 0", alpha_sq.sqrt()));
    let config = parse_config(&doc).map_err(err)?;
    let data = cvtomo::experiments::compute(&config).map_err(err)?;
    data.series(IndicatorKind::XiIpr).cloned().ok_or_else(|| "no xi_ipr series".into())
}

fn has_minimum_at(series: &IndicatorSeries, t: f64) -> bool {
    series.local_minima().iter().any(|&i| (series.times[i] - t).abs() < 1e-9)
}

fn nearest_minimum(series: &IndicatorSeries, t: f64) -> String {
    series
        .local_minima()
        .into_iter()
        .min_by(|&a, &b| (series.times[a] - t).abs().total_cmp(&(series.times[b] - t).abs()))
        .map(|i| format!("{} ({:.4})", series.times[i], series.values[i]))
        .unwrap_or_else(|| "none".into())
}

fn criterion_9(runs: &PresetRuns) -> Check {
    let sc = runs.data["fig4"].series(IndicatorKind::Sync).ok_or("fig4 has no s_c series")?;
    let start = sc.values[0];
    let first_min = local_minima(&sc.values).first().copied();
    let default_ok = (start - 1.0).abs() < 1e-8
        && first_min.is_some_and(|i| i <= 4 && sc.values[i] <= 0.5 * start);
    let mut lines = vec![format!(
        "default |alpha|^2 = 1: S_c(0) = {start:.10}, first local minimum {}",
        first_min.map_or("none".into(), |i| format!("{:.4} at tau = {}", sc.values[i], sc.times[i]))
    )];

    let params = LambdaParams::resonant(5.0, 1.0);
    let cal = calibrate_lambda_alpha(&params, 5.0, SYNC_TARGET, (1.0, 40.0), 0.002).map_err(err)?;
    let cal_ok = (cal.sync - SYNC_TARGET).abs() <= SYNC_WINDOW;
    lines.push(format!(
        "calibration (bisection on |alpha|^2 in [1, 40], {} evaluations): |alpha|^2 = {:.4}, S_c(5) = {:.4}, n_max = {}",
        cal.trace.len(),
        cal.alpha_sq,
        cal.sync,
        cal.n_max
    ));
    let early = lambda_xi_series("fig6a", cal.alpha_sq)?;
    let late = lambda_xi_series("fig6b", cal.alpha_sq)?;
    let mut table_ok = true;
    lines.push("feature                 expected   nearest xi_IPR local minimum (value)   found".into());
    for (series, t) in [(&early, 60.0), (&early, 120.0), (&late, 2250.0)] {
        let found = has_minimum_at(series, t);
        table_ok &= found;
        lines.push(format!(
            "xi_IPR minimum          tau = {t:<6} {:<38} {}",
            nearest_minimum(series, t),
            if found { "yes" } else { "no" }
        ));
    }
    lines.push(format!(
        "xi_IPR at tau = 0..150: {}",
        early.values.iter().map(|v| format!("{v:.3}")).collect::<Vec<_>>().join(" ")
    ));
    lines.push(format!(
        "xi_IPR at tau = 2000..2400: {}",
        late.values.iter().map(|v| format!("{v:.3}")).collect::<Vec<_>>().join(" ")
    ));
    Ok((default_ok && cal_ok && table_ok, lines.join("\n      ")))
}

fn criterion_10(runs: &PresetRuns) -> Check {
    let fig5 = preset("fig5").map_err(err)?.config().map_err(err)?;
    let model = LambdaModel::coherent(LambdaParams::resonant(5.0, 1.0), C64::new(1.0, 0.0), C64::new(1.0, 0.0), None)
        .map_err(err)?;
    let psi = model.evolve(&[5.0]).map_err(err)?.states.remove(0);
    let rho = psi.reduce(&[0]).map_err(err)?.to_density();
    let grid = QuadratureGrid::new(fig5.grid.x_max, fig5.grid.points).map_err(err)?;
    let xs = grid.points();
    let beta1: Vec<f64> = xs.iter().map(|x| x / SQRT_2).collect();
    let w = wigner(&rho, &beta1, &beta1).map_err(err)?;
    let tomogram = tomogram_single(&rho, &[0.0], &grid).map_err(err)?.row(0);
    let marginal_err = w
        .marginal_beta1()
        .iter()
        .zip(&tomogram)
        .map(|(m, t)| (m / SQRT_2 - t).abs())
        .fold(0.0, f64::max);
    let fock1 = wigner(&fock_state(1, 2).map_err(err)?.to_density(), &[0.0], &[0.0]).map_err(err)?;
    let origin = fock1.values[(0, 0)];
    let emitted = runs.data["fig5"].wigners.len();
    Ok((
        marginal_err <= WIGNER_MARGINAL_TOL && origin < 0.0 && emitted == 4,
        format!(
            "Lambda field F1 at tau = 5: max |W marginal/sqrt2 - w(X,0)| = {marginal_err:.1e}; \
             W_|1>(0) = {origin:.6}; fig5 Wigner grids = {emitted}"
        ),
    ))
}

fn criterion_11(runs: &PresetRuns) -> Check {
    Ok((
        runs.mismatches.is_empty(),
        if runs.mismatches.is_empty() {
            format!("{} presets, {} files byte-identical across two runs", runs.data.len(), runs.files)
        } else {
            format!("differing files: {}", runs.mismatches.join(", "))
        },
    ))
}

fn main() -> ExitCode {
    let scratch = tempfile::tempdir().expect("temporary directory");
    let start = Instant::now();
    let runs = match run_presets(scratch.path()) {
        Ok(r) => r,
        Err(e) => {
            println!("FAIL  preset runs: {e}");
            return ExitCode::FAILURE;
        }
    };
    println!("acceptance: ran {} presets twice in {:.1} s", runs.data.len(), start.elapsed().as_secs_f64());

    let checks: Vec<(u8, &'static str, bool, Box<dyn Fn() -> Check + '_>)> = vec![
        (1, "Kerr revival fidelity", true, Box::new(criterion_1)),
        (2, "Kerr fractional revival", true, Box::new(|| criterion_2(&runs))),
        (3, "Tomogram normalization", true, Box::new(|| criterion_3(&runs))),
        (4, "Two-mode marginal consistency", true, Box::new(criterion_4)),
        (5, "IPR analytics", true, Box::new(criterion_5)),
        (6, "AP-model Fock dip", true, Box::new(|| criterion_6(&runs))),
        (7, "AP-model coherent dip", true, Box::new(|| criterion_7(&runs))),
        (8, "Block vs dense evolution", true, Box::new(criterion_8)),
        (9, "Lambda-model synchronization", false, Box::new(|| criterion_9(&runs))),
        (10, "Wigner cross-check", true, Box::new(|| criterion_10(&runs))),
        (11, "Determinism", true, Box::new(|| criterion_11(&runs))),
    ];
    let mut outcomes = Vec::new();
    for (id, title, binding, check) in checks {
        let start = Instant::now();
        let (pass, detail) = match check() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        let outcome = Outcome {
            id,
            title,
            pass,
            binding,
            detail: format!("{detail} [{:.1} s]", start.elapsed().as_secs_f64()),
        };
        println!(
            "{} {:>2}. {}{}: {}",
            if outcome.pass { "PASS" } else { "FAIL" },
            outcome.id,
            outcome.title,
            if outcome.binding { "" } else { " (non-binding)" },
            outcome.detail
        );
        outcomes.push(outcome);
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| o.binding && !o.pass).map(|o| o.id).collect();
    let passed = outcomes.iter().filter(|o| o.pass).count();
    println!("acceptance: {passed}/{} criteria pass; binding failures: {failed:?}", outcomes.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
