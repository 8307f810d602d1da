//! Configuration-driven experiment pipeline: parse a key = value document,
//! evolve the chosen model, compute the requested products and write them
//! as plain-text data files next to a manifest.

mod calibration;
mod config;
mod output;
mod presets;

pub use calibration::{calibrate_lambda_alpha, lambda_sync_at, Calibration};
pub use config::{parse_config, ExperimentConfig, GridConfig, ModeInit, ModelConfig, Product, TimeSpec};
pub use presets::{list_presets, preset, Preset, PRESETS};

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::dynamics::{ApModel, ApParams, KerrModel, KerrParams, LambdaModel, LambdaParams};
use crate::fock::{coherent_state, fock_state, tensor, DensityMatrix, Ensemble, StateVector};
use crate::indicators::{
    fidelity, sle_pure, sync_indicator, xi_ipr_ensemble, AngleQuorum, IndicatorKind, IndicatorSeries,
};
use crate::tomography::{
    equispaced_angles, tomogram_single, wigner, QuadratureGrid, Tomogram, Tomogram2D, TwoModeTomographer,
    WignerGrid,
};
use crate::{Error, Result};

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_ENV: &str = "CVTOMO_OUT_DIR";

/// Output directory used when neither the caller, the config nor the
/// environment names one.
pub const FALLBACK_OUTPUT_DIR: &str = "cvtomo-out";

/// Time steps evolved together before their products are computed, which
/// bounds the number of full states held at once.
const CHUNK: usize = 32;

/// Everything computed by one run, kept in memory.
#[derive(Debug, Clone, PartialEq)]
pub struct RunData {
    pub config: ExperimentConfig,
    pub times: Vec<f64>,
    pub tomograms: Vec<Tomogram>,
    pub tomograms_2d: Vec<Tomogram2D>,
    pub wigners: Vec<WignerGrid>,
    pub series: Vec<IndicatorSeries>,
}

impl RunData {
    pub fn series(&self, kind: IndicatorKind) -> Option<&IndicatorSeries> {
        self.series.iter().find(|s| s.kind == kind)
    }
}

/// Files written by [`run`].
#[derive(Debug, Clone, PartialEq)]
pub struct OutputBundle {
    pub dir: PathBuf,
    pub manifest: PathBuf,
    pub files: Vec<PathBuf>,
    pub data: RunData,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    /// Parent directory; files go to `<out_dir>/<config name>/`.
    pub out_dir: PathBuf,
    /// Seconds since the Unix epoch, recorded in the manifest.
    pub timestamp: u64,
}

enum Engine {
    Kerr(KerrModel),
    Ap(ApModel, StateVector),
    Lambda(LambdaModel),
}

impl Engine {
    fn new(config: &ExperimentConfig) -> Result<Self> {
        let mode = |init: &ModeInit, dim: usize| match init {
            ModeInit::Fock(n) => fock_state(*n, dim),
            ModeInit::Coherent(a) => coherent_state(*a, dim),
        };
        match &config.model {
            ModelConfig::Kerr { lambda, n_max } => {
                let alpha = match config.initial[0] {
                    ModeInit::Coherent(a) => a,
                    ModeInit::Fock(_) => return Err(Error::InvalidArgument("Kerr model needs a coherent field".into())),
                };
                Ok(Engine::Kerr(KerrModel::new(KerrParams::new(*lambda, alpha)?, Some(*n_max))?))
            }
            ModelConfig::Ap {
                omega,
                omega0,
                gamma,
                g,
                n_max,
                atom_levels,
            } => {
                let params = ApParams {
                    omega_field: *omega,
                    omega_atom: *omega0,
                    gamma_nl: *gamma,
                    g_coupling: *g,
                    n_max: *n_max,
                    atom_levels: *atom_levels,
                };
                let initial = tensor(&[mode(&config.initial[0], *n_max)?, mode(&config.initial[1], *atom_levels)?])?;
                Ok(Engine::Ap(ApModel::new(params)?, initial))
            }
            ModelConfig::Lambda {
                omega_atomic,
                omega_fields,
                chi,
                kappa,
                n_max,
            } => {
                let params = LambdaParams {
                    omega_atomic: *omega_atomic,
                    omega_fields: *omega_fields,
                    chi: *chi,
                    kappa: *kappa,
                };
                let alpha = |init: &ModeInit| match init {
                    ModeInit::Coherent(a) => Ok(*a),
                    ModeInit::Fock(_) => Err(Error::InvalidArgument("Λ model needs coherent fields".into())),
                };
                let model = LambdaModel::coherent(params, alpha(&config.initial[0])?, alpha(&config.initial[1])?, Some(*n_max))?;
                Ok(Engine::Lambda(model))
            }
        }
    }

    fn initial(&self) -> &StateVector {
        match self {
            Engine::Kerr(m) => m.initial(),
            Engine::Ap(_, s) => s,
            Engine::Lambda(m) => m.initial(),
        }
    }

    fn states(&self, scaled: &[f64]) -> Result<Vec<StateVector>> {
        let result = match self {
            Engine::Kerr(m) => m.evolve(scaled)?,
            Engine::Ap(m, s) => m.evolve(s, scaled)?,
            Engine::Lambda(m) => m.evolve(scaled)?,
        };
        Ok(result.states)
    }

    /// Subsystems that are field modes.
    fn fields(&self) -> Vec<usize> {
        match self {
            Engine::Lambda(_) => vec![0, 1],
            _ => vec![0],
        }
    }

    /// Reduced state of one field mode (0-based).
    fn field_state(&self, s: &StateVector, field: usize) -> Result<DensityMatrix> {
        match self {
            Engine::Kerr(_) => Ok(s.to_density()),
            _ => Ok(s.reduce(&[field])?.to_density()),
        }
    }

    /// The bipartite state used for two-mode products: field ⊗ atom for the
    /// oscillator-atom model, field ⊗ field for the Λ model.
    fn two_mode(&self, s: &StateVector) -> Result<Ensemble> {
        match self {
            Engine::Kerr(_) => Err(Error::InvalidArgument("the Kerr model has a single mode".into())),
            Engine::Ap(..) => Ok(s.to_ensemble()),
            Engine::Lambda(_) => s.reduce(&[0, 1]),
        }
    }
}

#[derive(Default)]
struct Step {
    tomogram: Option<Tomogram>,
    tomogram_2d: Option<Tomogram2D>,
    wigner: Option<WignerGrid>,
    scalars: Vec<(IndicatorKind, f64)>,
}

struct Plan {
    thetas: Vec<f64>,
    grid: QuadratureGrid,
    betas: Vec<f64>,
    quorum: AngleQuorum,
}

fn step(config: &ExperimentConfig, engine: &Engine, plan: &Plan, s: &StateVector) -> Result<Step> {
    let mut out = Step::default();
    let wants = |p: Product| config.products.contains(&p);
    if wants(Product::Tomogram) || wants(Product::Wigner) {
        let rho = engine.field_state(s, config.field - 1)?;
        if wants(Product::Tomogram) {
            out.tomogram = Some(tomogram_single(&rho, &plan.thetas, &plan.grid).map_err(|e| e.in_stage("tomography"))?);
        }
        if wants(Product::Wigner) {
            out.wigner = Some(wigner(&rho, &plan.betas, &plan.betas).map_err(|e| e.in_stage("tomography"))?);
        }
    }
    if wants(Product::Tomogram2d) || wants(Product::XiIpr) {
        let pair = engine.two_mode(s)?;
        if wants(Product::Tomogram2d) {
            let (a, b) = config.tomogram2d_angles;
            let tomographer =
                TwoModeTomographer::new(&pair, plan.grid, plan.grid).map_err(|e| e.in_stage("tomography"))?;
            out.tomogram_2d = Some(tomographer.evaluate(a, b));
        }
        if wants(Product::XiIpr) {
            let xi = xi_ipr_ensemble(&pair, &plan.quorum, &plan.grid, &plan.grid).map_err(|e| e.in_stage("indicators"))?;
            out.scalars.push((IndicatorKind::XiIpr, xi));
        }
    }
    if wants(Product::Sle) {
        let v = sle_pure(s, &engine.fields()).map_err(|e| e.in_stage("indicators"))?;
        out.scalars.push((IndicatorKind::Sle, v));
    }
    if wants(Product::Sync) {
        let v = sync_indicator(s).map_err(|e| e.in_stage("indicators"))?;
        out.scalars.push((IndicatorKind::Sync, v));
    }
    if wants(Product::Fidelity) {
        let v = fidelity(engine.initial(), s).map_err(|e| e.in_stage("indicators"))?;
        out.scalars.push((IndicatorKind::Fidelity, v));
    }
    Ok(out)
}

/// Runs the experiment without touching the filesystem.
pub fn compute(config: &ExperimentConfig) -> Result<RunData> {
    let engine = Engine::new(config).map_err(|e| e.in_stage("dynamics"))?;
    let grid = QuadratureGrid::new(config.grid.x_max, config.grid.points).map_err(|e| e.in_stage("tomography"))?;
    let half = (config.grid.wigner_points - 1) / 2;
    let h = config.grid.wigner_max / half as f64;
    let plan = Plan {
        thetas: equispaced_angles(config.grid.thetas),
        grid,
        betas: (0..config.grid.wigner_points).map(|i| (i as f64 - half as f64) * h).collect(),
        quorum: AngleQuorum::equispaced(config.quorum_angles)?,
    };
    let times = config.times();
    let mut steps = Vec::with_capacity(times.len());
    for chunk in times.chunks(CHUNK) {
        let states = engine.states(chunk).map_err(|e| e.in_stage("dynamics"))?;
        let computed: Vec<Step> = states
            .par_iter()
            .map(|s| step(config, &engine, &plan, s))
            .collect::<Result<_>>()?;
        steps.extend(computed);
    }

    let mut data = RunData {
        config: config.clone(),
        times: times.clone(),
        tomograms: Vec::new(),
        tomograms_2d: Vec::new(),
        wigners: Vec::new(),
        series: Vec::new(),
    };
    for kind in IndicatorKind::ALL {
        let values: Vec<f64> = steps
            .iter()
            .filter_map(|s| s.scalars.iter().find(|(k, _)| *k == kind).map(|(_, v)| *v))
            .collect();
        if values.len() == times.len() && !values.is_empty() {
            data.series.push(IndicatorSeries::new(kind, times.clone(), values)?);
        }
    }
    for s in steps {
        data.tomograms.extend(s.tomogram);
        data.tomograms_2d.extend(s.tomogram_2d);
        data.wigners.extend(s.wigner);
    }
    Ok(data)
}

/// The key = value manifest: a comment header with the code version and
/// timestamp, then the resolved configuration.
pub fn manifest(config: &ExperimentConfig, timestamp: u64) -> String {
    format!(
        "# cvtomo manifest\n# version = {}\n# timestamp = {timestamp}\n# time convention = {}\n{}",
        env!("CARGO_PKG_VERSION"),
        config.model.convention().label(),
        config.to_document()
    )
}

/// Runs the experiment and writes the manifest and one file per product.
pub fn run(config: &ExperimentConfig, options: &RunOptions) -> Result<OutputBundle> {
    let data = compute(config)?;
    let dir = options.out_dir.join(&config.name);
    fs::create_dir_all(&dir).map_err(|e| Error::from(e).in_stage("output"))?;
    let label = config.model.convention().label();
    let mut files = Vec::new();
    let mut write = |name: String, text: String| -> Result<()> {
        let path = dir.join(name);
        fs::write(&path, text).map_err(|e| Error::from(e).in_stage("output"))?;
        files.push(path);
        Ok(())
    };
    for (k, (t, tom)) in data.times.iter().zip(&data.tomograms).enumerate() {
        write(format!("tomogram_{k:04}.dat"), output::tomogram_file(tom, label, *t))?;
    }
    for (k, (t, t2)) in data.times.iter().zip(&data.tomograms_2d).enumerate() {
        write(format!("tomogram2d_{k:04}.dat"), output::tomogram2d_file(t2, label, *t))?;
    }
    for (k, (t, w)) in data.times.iter().zip(&data.wigners).enumerate() {
        write(format!("wigner_{k:04}.dat"), output::wigner_file(w, label, *t))?;
    }
    for s in &data.series {
        write(format!("{}.dat", s.kind.name()), output::series_file(s, label))?;
    }
    let manifest_path = dir.join("manifest.txt");
    fs::write(&manifest_path, manifest(config, options.timestamp)).map_err(|e| Error::from(e).in_stage("output"))?;
    Ok(OutputBundle {
        dir,
        manifest: manifest_path,
        files,
        data,
    })
}

/// Reads and validates a configuration file.
pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

/// Output directory: explicit choice, then the config, then the environment,
/// then [`FALLBACK_OUTPUT_DIR`].
pub fn resolve_output_dir(explicit: Option<&Path>, config: &ExperimentConfig) -> PathBuf {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| config.output_dir.clone())
        .or_else(|| std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(FALLBACK_OUTPUT_DIR))
}
