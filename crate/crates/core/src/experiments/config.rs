use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::str::FromStr;

use crate::dynamics::TimeConvention;
use crate::fock::coherent_truncation;
use crate::tomography::MAX_FIGURE_SPACING;
use crate::{Error, Result, C64};

/// Physical model and its constants, with truncations already resolved.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelConfig {
    Kerr {
        lambda: f64,
        n_max: usize,
    },
    Ap {
        omega: f64,
        omega0: f64,
        gamma: f64,
        g: f64,
        n_max: usize,
        atom_levels: usize,
    },
    Lambda {
        omega_atomic: [f64; 3],
        omega_fields: [f64; 2],
        chi: f64,
        kappa: f64,
        n_max: usize,
    },
}

impl ModelConfig {
    pub fn name(&self) -> &'static str {
        match self {
            ModelConfig::Kerr { .. } => "kerr",
            ModelConfig::Ap { .. } => "ap",
            ModelConfig::Lambda { .. } => "lambda",
        }
    }

    pub fn convention(&self) -> TimeConvention {
        match self {
            ModelConfig::Kerr { .. } => TimeConvention::KerrStrength,
            ModelConfig::Ap { .. } => TimeConvention::Coupling,
            ModelConfig::Lambda { .. } => TimeConvention::Kappa,
        }
    }

    /// Names of the initial-state keys, in subsystem order.
    pub fn subsystems(&self) -> &'static [&'static str] {
        match self {
            ModelConfig::Kerr { .. } => &["field"],
            ModelConfig::Ap { .. } => &["field", "atom"],
            ModelConfig::Lambda { .. } => &["field1", "field2"],
        }
    }

    pub fn field_modes(&self) -> usize {
        match self {
            ModelConfig::Lambda { .. } => 2,
            _ => 1,
        }
    }
}

/// Initial state of one subsystem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModeInit {
    Fock(usize),
    Coherent(C64),
}

impl ModeInit {
    /// Amplitude scale used to size quadrature grids.
    pub fn amplitude(&self) -> f64 {
        match self {
            ModeInit::Fock(n) => (*n as f64).sqrt(),
            ModeInit::Coherent(a) => a.norm(),
        }
    }
}

impl fmt::Display for ModeInit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModeInit::Fock(n) => write!(f, "fock {n}"),
            ModeInit::Coherent(a) => write!(f, "coherent {} {}", a.re, a.im),
        }
    }
}

impl FromStr for ModeInit {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let number = |w: &str| w.parse::<f64>().map_err(|_| format!("`{w}` is not a number"));
        match words.as_slice() {
            ["fock", n] => n
                .parse()
                .map(ModeInit::Fock)
                .map_err(|_| format!("`{n}` is not a photon number")),
            ["coherent", re] => Ok(ModeInit::Coherent(C64::new(number(re)?, 0.0))),
            ["coherent", re, im] => Ok(ModeInit::Coherent(C64::new(number(re)?, number(im)?))),
            _ => Err(format!("expected `fock <n>` or `coherent <re> [<im>]`, got `{s}`")),
        }
    }
}

/// Reported times, in the model's scaled units.
#[derive(Debug, Clone, PartialEq)]
pub enum TimeSpec {
    List(Vec<f64>),
    Range { start: f64, stop: f64, step: f64 },
    /// `multiple·T_rev/subpackets + offset` for every offset (Kerr only).
    Revival {
        subpackets: usize,
        multiple: usize,
        offsets: Vec<f64>,
    },
}

impl TimeSpec {
    pub fn times(&self) -> Vec<f64> {
        match self {
            TimeSpec::List(ts) => ts.clone(),
            TimeSpec::Range { start, stop, step } => {
                let count = range_count(*start, *stop, *step).unwrap_or(0);
                (0..count).map(|k| start + k as f64 * step).collect()
            }
            TimeSpec::Revival {
                subpackets,
                multiple,
                offsets,
            } => {
                let base = *multiple as f64 * std::f64::consts::PI / *subpackets as f64;
                offsets.iter().map(|o| base + o).collect()
            }
        }
    }
}

/// Number of points in `start, start+step, …, stop` when the span is an
/// integer number of steps.
fn range_count(start: f64, stop: f64, step: f64) -> Option<usize> {
    if !(step > 0.0) || stop < start || !start.is_finite() || !stop.is_finite() {
        return None;
    }
    let steps = (stop - start) / step;
    let rounded = steps.round();
    ((steps - rounded).abs() < 1e-9 * rounded.max(1.0)).then_some(rounded as usize + 1)
}

/// Data products a run can emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Product {
    Tomogram,
    Tomogram2d,
    Wigner,
    Sle,
    XiIpr,
    Sync,
    Fidelity,
}

impl Product {
    pub const ALL: [Product; 7] = [
        Product::Tomogram,
        Product::Tomogram2d,
        Product::Wigner,
        Product::Sle,
        Product::XiIpr,
        Product::Sync,
        Product::Fidelity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Product::Tomogram => "tomogram",
            Product::Tomogram2d => "tomogram2d",
            Product::Wigner => "wigner",
            Product::Sle => "sle",
            Product::XiIpr => "xi_ipr",
            Product::Sync => "s_c",
            Product::Fidelity => "fidelity",
        }
    }

    fn allowed_for(&self, model: &str) -> bool {
        match (self, model) {
            (Product::Tomogram | Product::Wigner | Product::Fidelity, _) => true,
            (_, "kerr") => false,
            (Product::Sync, "ap") => false,
            _ => true,
        }
    }
}

impl FromStr for Product {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Product::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown product `{s}`"))
    }
}

/// Quadrature grid for tomograms and the β grid for Wigner functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridConfig {
    pub x_max: f64,
    pub points: usize,
    pub thetas: usize,
    pub wigner_max: f64,
    pub wigner_points: usize,
}

/// A validated experiment with every default made explicit.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub name: String,
    pub model: ModelConfig,
    pub initial: Vec<ModeInit>,
    pub time: TimeSpec,
    pub grid: GridConfig,
    pub quorum_angles: usize,
    pub products: Vec<Product>,
    /// Field (1-based) shown in single-mode tomograms and Wigner grids.
    pub field: usize,
    pub tomogram2d_angles: (f64, f64),
    pub output_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn times(&self) -> Vec<f64> {
        self.time.times()
    }

    /// Largest initial amplitude over the field modes.
    pub fn amplitude_scale(&self) -> f64 {
        self.initial.iter().map(ModeInit::amplitude).fold(0.0, f64::max)
    }

    /// Key = value document that parses back to `self`.
    pub fn to_document(&self) -> String {
        let mut out = String::new();
        let mut put = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        put("name", self.name.clone());
        put("model", self.model.name().into());
        match &self.model {
            ModelConfig::Kerr { lambda, n_max } => {
                put("kerr.lambda", lambda.to_string());
                put("kerr.n_max", n_max.to_string());
            }
            ModelConfig::Ap {
                omega,
                omega0,
                gamma,
                g,
                n_max,
                atom_levels,
            } => {
                put("ap.omega", omega.to_string());
                put("ap.omega0", omega0.to_string());
                put("ap.gamma", gamma.to_string());
                put("ap.g", g.to_string());
                put("ap.n_max", n_max.to_string());
                put("ap.atom_levels", atom_levels.to_string());
            }
            ModelConfig::Lambda {
                omega_atomic,
                omega_fields,
                chi,
                kappa,
                n_max,
            } => {
                put("lambda.omega_atomic", join(omega_atomic));
                put("lambda.omega_fields", join(omega_fields));
                put("lambda.chi", chi.to_string());
                put("lambda.kappa", kappa.to_string());
                put("lambda.n_max", n_max.to_string());
            }
        }
        for (name, init) in self.model.subsystems().iter().zip(&self.initial) {
            put(&format!("initial.{name}"), init.to_string());
        }
        match &self.time {
            TimeSpec::List(ts) => put("time.list", join(ts)),
            TimeSpec::Range { start, stop, step } => {
                put("time.start", start.to_string());
                put("time.stop", stop.to_string());
                put("time.step", step.to_string());
            }
            TimeSpec::Revival {
                subpackets,
                multiple,
                offsets,
            } => {
                put("time.subpackets", subpackets.to_string());
                put("time.multiple", multiple.to_string());
                put("time.offsets", join(offsets));
            }
        }
        put("grid.x_max", self.grid.x_max.to_string());
        put("grid.points", self.grid.points.to_string());
        put("grid.thetas", self.grid.thetas.to_string());
        put("wigner.max", self.grid.wigner_max.to_string());
        put("wigner.points", self.grid.wigner_points.to_string());
        put("quorum.angles", self.quorum_angles.to_string());
        put("products", self.products.iter().map(Product::name).collect::<Vec<_>>().join(", "));
        put("output.field", self.field.to_string());
        put("tomogram2d.theta_a", self.tomogram2d_angles.0.to_string());
        put("tomogram2d.theta_b", self.tomogram2d_angles.1.to_string());
        if let Some(dir) = &self.output_dir {
            put("output.dir", dir.display().to_string());
        }
        out
    }
}

fn join<T: ToString>(values: &[T]) -> String {
    values.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

const COMMON_KEYS: &[&str] = &[
    "name",
    "model",
    "time.list",
    "time.start",
    "time.stop",
    "time.step",
    "grid.x_max",
    "grid.points",
    "grid.spacing",
    "grid.thetas",
    "wigner.max",
    "wigner.points",
    "wigner.spacing",
    "quorum.angles",
    "products",
    "output.field",
    "output.dir",
    "tomogram2d.theta_a",
    "tomogram2d.theta_b",
];
const KERR_KEYS: &[&str] = &[
    "kerr.lambda",
    "kerr.n_max",
    "initial.field",
    "time.subpackets",
    "time.multiple",
    "time.offsets",
];
const AP_KEYS: &[&str] = &[
    "ap.omega",
    "ap.omega0",
    "ap.gamma",
    "ap.g",
    "ap.n_max",
    "ap.atom_levels",
    "initial.field",
    "initial.atom",
];
const LAMBDA_KEYS: &[&str] = &[
    "lambda.omega_atomic",
    "lambda.omega_fields",
    "lambda.chi",
    "lambda.kappa",
    "lambda.n_max",
    "initial.field1",
    "initial.field2",
];

/// Raw entries with typed accessors that record every problem they meet.
struct Fields {
    entries: BTreeMap<String, (String, usize)>,
    used: BTreeSet<String>,
    errors: Vec<String>,
}

impl Fields {
    fn parse(text: &str) -> Self {
        let mut fields = Fields {
            entries: BTreeMap::new(),
            used: BTreeSet::new(),
            errors: Vec::new(),
        };
        for (index, raw) in text.lines().enumerate() {
            let line_no = index + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                fields.errors.push(format!("line {line_no}: expected `key = value`, got `{line}`"));
                continue;
            };
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() || key.contains(char::is_whitespace) {
                fields.errors.push(format!("line {line_no}: malformed key `{key}`"));
                continue;
            }
            if let Some((_, first)) = fields.entries.get(key) {
                fields.errors.push(format!("line {line_no}: key `{key}` already set on line {first}"));
                continue;
            }
            fields.entries.insert(key.to_string(), (value.to_string(), line_no));
        }
        fields
    }

    fn has(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    fn raw(&mut self, key: &str) -> Option<(String, usize)> {
        self.used.insert(key.to_string());
        self.entries.get(key).cloned()
    }

    fn get<T: FromStr>(&mut self, key: &str, what: &str) -> Option<T> {
        let (value, line) = self.raw(key)?;
        match value.parse() {
            Ok(v) => Some(v),
            Err(_) => {
                self.errors.push(format!("line {line}: `{key}` must be {what}, got `{value}`"));
                None
            }
        }
    }

    fn required<T: FromStr>(&mut self, key: &str, what: &str) -> Option<T> {
        if !self.has(key) {
            self.errors.push(format!("missing required key `{key}`"));
            return None;
        }
        self.get(key, what)
    }

    fn real(&mut self, key: &str) -> Option<f64> {
        let v: f64 = self.get(key, "a number")?;
        if !v.is_finite() {
            self.errors.push(format!("`{key}` must be finite, got {v}"));
            return None;
        }
        Some(v)
    }

    fn required_real(&mut self, key: &str) -> Option<f64> {
        if !self.has(key) {
            self.errors.push(format!("missing required key `{key}`"));
            return None;
        }
        self.real(key)
    }

    fn list<T: FromStr>(&mut self, key: &str, what: &str) -> Option<Vec<T>> {
        let (value, line) = self.raw(key)?;
        let mut out = Vec::new();
        for item in value.split(',').map(str::trim) {
            match item.parse() {
                Ok(v) => out.push(v),
                Err(_) => {
                    self.errors.push(format!("line {line}: `{key}` entries must be {what}, got `{item}`"));
                    return None;
                }
            }
        }
        Some(out)
    }

    fn real_list(&mut self, key: &str) -> Option<Vec<f64>> {
        let values: Vec<f64> = self.list(key, "numbers")?;
        if values.iter().any(|v| !v.is_finite()) {
            self.errors.push(format!("`{key}` entries must be finite"));
            return None;
        }
        Some(values)
    }

    fn check(&mut self, ok: bool, message: impl FnOnce() -> String) {
        if !ok {
            self.errors.push(message());
        }
    }
}

/// Parses and validates a configuration document, reporting every problem.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let mut f = Fields::parse(text);
    let model_name: Option<String> = f.required("model", "a model name");
    let model_keys: &[&str] = match model_name.as_deref() {
        Some("kerr") => KERR_KEYS,
        Some("ap") => AP_KEYS,
        Some("lambda") => LAMBDA_KEYS,
        Some(other) => {
            f.errors.push(format!("`model` must be one of kerr, ap, lambda; got `{other}`"));
            &[]
        }
        None => &[],
    };

    let name: String = f.get("name", "a name").unwrap_or_else(|| "experiment".into());
    f.check(
        !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || "-_.".contains(c)),
        || format!("`name` may only use letters, digits, `-`, `_` and `.`, got `{name}`"),
    );

    let mut initial = Vec::new();
    let subsystem_names: &[&str] = match model_name.as_deref() {
        Some("kerr") => &["field"],
        Some("ap") => &["field", "atom"],
        Some("lambda") => &["field1", "field2"],
        _ => &[],
    };
    for sub in subsystem_names {
        let key = format!("initial.{sub}");
        let default = (model_name.as_deref() == Some("ap") && *sub == "atom").then_some(ModeInit::Fock(0));
        match (f.has(&key), default) {
            (false, Some(d)) => initial.push(d),
            (false, None) => f.errors.push(format!("missing required key `{key}`")),
            (true, _) => {
                let (value, line) = f.raw(&key).expect("present");
                match value.parse::<ModeInit>() {
                    Ok(m) => {
                        if let ModeInit::Coherent(a) = m {
                            f.check(a.re.is_finite() && a.im.is_finite(), || format!("`{key}` amplitude must be finite"));
                        }
                        initial.push(m);
                    }
                    Err(e) => f.errors.push(format!("line {line}: `{key}`: {e}")),
                }
            }
        }
    }
    let initial_ok = initial.len() == subsystem_names.len();

    let model = match model_name.as_deref() {
        Some("kerr") => {
            let lambda = f.required_real("kerr.lambda");
            if let Some(l) = lambda {
                f.check(l > 0.0, || format!("`kerr.lambda` must be positive, got {l}"));
            }
            if initial_ok {
                f.check(matches!(initial[0], ModeInit::Coherent(_)), || {
                    "`initial.field` must be coherent for the kerr model".into()
                });
            }
            let default_n = match initial.first() {
                Some(ModeInit::Coherent(a)) => coherent_truncation(*a),
                Some(ModeInit::Fock(n)) => n + 1,
                None => 1,
            };
            let n_max = f.get("kerr.n_max", "a positive integer").unwrap_or(default_n);
            lambda.map(|lambda| ModelConfig::Kerr { lambda, n_max })
        }
        Some("ap") => {
            let omega = f.required_real("ap.omega");
            let omega0 = f.required_real("ap.omega0");
            let gamma = f.required_real("ap.gamma");
            let g = f.required_real("ap.g");
            if let Some(g) = g {
                f.check(g > 0.0, || format!("`ap.g` must be positive, got {g}"));
            }
            let quanta = |m: &ModeInit| match m {
                ModeInit::Fock(n) => n + 1,
                ModeInit::Coherent(a) => coherent_truncation(*a),
            };
            // block N of the initial state needs N + 1 levels on both sides
            let default_n = if initial_ok { quanta(&initial[0]) + quanta(&initial[1]) - 1 } else { 1 };
            let n_max = f.get("ap.n_max", "a positive integer").unwrap_or(default_n);
            let atom_levels = f.get("ap.atom_levels", "a positive integer").unwrap_or(n_max);
            match (omega, omega0, gamma, g) {
                (Some(omega), Some(omega0), Some(gamma), Some(g)) => Some(ModelConfig::Ap {
                    omega,
                    omega0,
                    gamma,
                    g,
                    n_max,
                    atom_levels,
                }),
                _ => None,
            }
        }
        Some("lambda") => {
            let omega_atomic = f.real_list("lambda.omega_atomic").unwrap_or_else(|| vec![0.0, 0.0, 1.0]);
            let omega_fields = f.real_list("lambda.omega_fields").unwrap_or_else(|| vec![1.0, 1.0]);
            f.check(omega_atomic.len() == 3, || "`lambda.omega_atomic` needs three values".into());
            f.check(omega_fields.len() == 2, || "`lambda.omega_fields` needs two values".into());
            let chi = f.required_real("lambda.chi");
            let kappa = f.required_real("lambda.kappa");
            if let Some(k) = kappa {
                f.check(k > 0.0, || format!("`lambda.kappa` must be positive for scaled time κt, got {k}"));
            }
            if initial_ok {
                f.check(initial.iter().all(|m| matches!(m, ModeInit::Coherent(_))), || {
                    "both `initial.field1` and `initial.field2` must be coherent for the lambda model".into()
                });
            }
            let default_n = initial
                .iter()
                .map(|m| match m {
                    ModeInit::Coherent(a) => coherent_truncation(*a),
                    ModeInit::Fock(n) => n + 1,
                })
                .max()
                .unwrap_or(1);
            let n_max = f.get("lambda.n_max", "a positive integer").unwrap_or(default_n);
            match (chi, kappa, omega_atomic.len(), omega_fields.len()) {
                (Some(chi), Some(kappa), 3, 2) => Some(ModelConfig::Lambda {
                    omega_atomic: [omega_atomic[0], omega_atomic[1], omega_atomic[2]],
                    omega_fields: [omega_fields[0], omega_fields[1]],
                    chi,
                    kappa,
                    n_max,
                }),
                _ => None,
            }
        }
        _ => None,
    };
    if let Some(m) = &model {
        let truncations: Vec<(&str, usize)> = match m {
            ModelConfig::Kerr { n_max, .. } => vec![("kerr.n_max", *n_max)],
            ModelConfig::Ap { n_max, atom_levels, .. } => vec![("ap.n_max", *n_max), ("ap.atom_levels", *atom_levels)],
            ModelConfig::Lambda { n_max, .. } => vec![("lambda.n_max", *n_max)],
        };
        for (key, n) in truncations {
            f.check(n >= 1, || format!("`{key}` must be >= 1"));
        }
    }

    let time = parse_time(&mut f, model_name.as_deref() == Some("kerr"));

    let amplitude = initial.iter().map(ModeInit::amplitude).fold(0.0, f64::max);
    let grid = parse_grid(&mut f, amplitude);

    let quorum_angles = f.get("quorum.angles", "a positive integer").unwrap_or(5);
    f.check(quorum_angles >= 1, || "`quorum.angles` must be >= 1".into());

    let products: Vec<Product> = if f.has("products") {
        f.list("products", "product names").unwrap_or_default()
    } else {
        f.errors.push("missing required key `products`".into());
        Vec::new()
    };
    if f.has("products") {
        f.check(!products.is_empty(), || "`products` is empty".into());
    }
    let mut seen = BTreeSet::new();
    for p in &products {
        f.check(seen.insert(*p), || format!("product `{}` listed twice", p.name()));
        if let Some(m) = model_name.as_deref() {
            f.check(p.allowed_for(m), || format!("product `{}` is not available for model {m}", p.name()));
        }
    }

    let field = f.get("output.field", "a field number").unwrap_or(1);
    if let Some(m) = &model {
        f.check((1..=m.field_modes()).contains(&field), || {
            format!("`output.field` must be in 1..={}, got {field}", m.field_modes())
        });
    }
    let theta_a = f.real("tomogram2d.theta_a").unwrap_or(0.0);
    let theta_b = f.real("tomogram2d.theta_b").unwrap_or(0.0);
    let output_dir = f.raw("output.dir").map(|(v, _)| PathBuf::from(v));

    let allowed: BTreeSet<&str> = COMMON_KEYS.iter().chain(model_keys).copied().collect();
    let all_known: BTreeSet<&str> = [COMMON_KEYS, KERR_KEYS, AP_KEYS, LAMBDA_KEYS].concat().into_iter().collect();
    for (key, (_, line)) in &f.entries {
        if allowed.contains(key.as_str()) {
            continue;
        }
        if all_known.contains(key.as_str()) && model_name.is_some() {
            f.errors.push(format!(
                "line {line}: key `{key}` does not apply to model {}",
                model_name.as_deref().unwrap_or("")
            ));
        } else {
            f.errors.push(format!("line {line}: unknown key `{key}`"));
        }
    }

    match (f.errors.is_empty(), model, time) {
        (true, Some(model), Some(time)) => Ok(ExperimentConfig {
            name,
            model,
            initial,
            time,
            grid,
            quorum_angles,
            products,
            field,
            tomogram2d_angles: (theta_a, theta_b),
            output_dir,
        }),
        _ => {
            if f.errors.is_empty() {
                f.errors.push("configuration is incomplete".into());
            }
            Err(Error::Config(f.errors))
        }
    }
}

fn parse_time(f: &mut Fields, kerr: bool) -> Option<TimeSpec> {
    let has_list = f.has("time.list");
    let has_range = ["time.start", "time.stop", "time.step"].iter().any(|k| f.has(k));
    let has_revival = ["time.subpackets", "time.multiple", "time.offsets"].iter().any(|k| f.has(k));
    let forms = [has_list, has_range, has_revival].iter().filter(|b| **b).count();
    if forms == 0 {
        f.errors.push("no time specification: give `time.list`, `time.start/stop/step` or `time.subpackets`".into());
        return None;
    }
    if forms > 1 {
        f.errors.push("give exactly one of `time.list`, `time.start/stop/step`, `time.subpackets`".into());
    }
    let spec = if has_list {
        let ts = f.real_list("time.list")?;
        f.check(!ts.is_empty(), || "`time.list` is empty".into());
        TimeSpec::List(ts)
    } else if has_range {
        let start = f.required_real("time.start");
        let stop = f.required_real("time.stop");
        let step = f.required_real("time.step");
        let (start, stop, step) = (start?, stop?, step?);
        if range_count(start, stop, step).is_none() {
            f.errors.push(format!(
                "time range {start}..{stop} must be non-empty with a positive step that divides it, got step {step}"
            ));
        }
        TimeSpec::Range { start, stop, step }
    } else {
        if !kerr && has_revival {
            // reported through the key check as not applicable
            return None;
        }
        let subpackets: usize = f.required("time.subpackets", "a positive integer")?;
        f.check(subpackets >= 1, || "`time.subpackets` must be >= 1".into());
        let multiple = f.get("time.multiple", "a positive integer").unwrap_or(1);
        f.check(multiple >= 1, || "`time.multiple` must be >= 1".into());
        let offsets = if f.has("time.offsets") { f.real_list("time.offsets")? } else { vec![0.0] };
        TimeSpec::Revival {
            subpackets,
            multiple,
            offsets,
        }
    };
    Some(spec)
}

fn parse_grid(f: &mut Fields, amplitude: f64) -> GridConfig {
    let default_x = std::f64::consts::SQRT_2 * amplitude + crate::tomography::DEFAULT_MARGIN;
    let x_max = f.real("grid.x_max").unwrap_or(default_x);
    f.check(x_max > 0.0, || format!("`grid.x_max` must be positive, got {x_max}"));
    let points = odd_points(f, "grid", x_max);
    let thetas = f.get("grid.thetas", "a positive integer").unwrap_or(64);
    f.check(thetas >= 1, || "`grid.thetas` must be >= 1".into());

    let default_w = amplitude + 4.0;
    let wigner_max = f.real("wigner.max").unwrap_or(default_w);
    f.check(wigner_max > 0.0, || format!("`wigner.max` must be positive, got {wigner_max}"));
    let wigner_points = odd_points(f, "wigner", wigner_max);
    GridConfig {
        x_max,
        points,
        thetas,
        wigner_max,
        wigner_points,
    }
}

/// Reads `<prefix>.points` or `<prefix>.spacing` into an odd point count on
/// `[-max, max]` with spacing at most the figure limit.
fn odd_points(f: &mut Fields, prefix: &str, max: f64) -> usize {
    let points_key = format!("{prefix}.points");
    let spacing_key = format!("{prefix}.spacing");
    if f.has(&points_key) && f.has(&spacing_key) {
        f.errors.push(format!("give only one of `{points_key}` and `{spacing_key}`"));
    }
    let from_spacing = |h: f64| 2 * ((max / h).ceil().max(1.0) as usize) + 1;
    let points = if f.has(&points_key) {
        f.get(&points_key, "an odd integer >= 3").unwrap_or(3)
    } else {
        let h = f.real(&spacing_key).unwrap_or(MAX_FIGURE_SPACING);
        if !(h > 0.0) {
            f.errors.push(format!("`{spacing_key}` must be positive, got {h}"));
            return 3;
        }
        if max > 0.0 { from_spacing(h) } else { 3 }
    };
    f.check(points >= 3 && points % 2 == 1, || format!("`{points_key}` must be odd and >= 3, got {points}"));
    if points >= 3 && max > 0.0 {
        let spacing = 2.0 * max / (points - 1) as f64;
        f.check(spacing <= MAX_FIGURE_SPACING * (1.0 + 1e-12), || {
            format!("{prefix} spacing {spacing} exceeds the figure limit {MAX_FIGURE_SPACING}")
        });
    }
    points
}
