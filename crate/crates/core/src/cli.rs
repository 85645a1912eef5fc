//! Command-line front end.
//!
//! Every subcommand reads matrices in the JSON wire format of [`Matrix`]
//! (a path of `-` means stdin) and prints one report. JSON is the machine
//! contract; `--format text` renders the same report as aligned lines.
//!
//! Exit codes: 0 on success, 1 for unreadable or malformed input, 2 when the
//! input is well-formed but mathematically rejected. In the last case the
//! diagnostic residual is part of the error report.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::applications::{
    capacity, hormander_constraints, partition_interacting, partition_noninteracting, PhaseSpaceRegion,
    QuadraticHamiltonian, ThermoParams,
};
use crate::degenerate::{degenerate_williamson, hormander_psd_normal_form};
use crate::error::Error;
use crate::linalg::symmetric_eigen;
use crate::matrix::Matrix;
use crate::simultaneous::{
    family_diagonalize, geometric_mean, poisson_commutator, power_commutator_residual, simultaneous_williamson,
    simultaneous_williamson_psd, SimDiagResult,
};
use crate::symplectic::{congruence_residual, paired_diagonal, permute_pairs, symplectic_residual};
use crate::tolerance::Tolerances;
use crate::williamson::{flow_matrix, hamiltonian_flow, symplectic_spectrum, williamson_decompose};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Order {
    Asc,
    Desc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartitionMode {
    Noninteracting,
    Interacting,
}

/// Parsed command line.
#[derive(Debug, Clone, Parser)]
#[command(name = "sympal", version, about = "Symplectic eigenvalues and Williamson normal forms")]
pub struct RunConfig {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Multiplier applied to all default tolerances.
    #[arg(long, global = true, env = "SYMPAL_TOL")]
    pub tol: Option<f64>,

    #[arg(long, global = true)]
    pub rank_tol: Option<f64>,

    #[arg(long, global = true)]
    pub sym_tol: Option<f64>,

    /// Ordering of modes in the report.
    #[arg(long, global = true, value_enum, default_value_t = Order::Asc)]
    pub order: Order,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Symplectic eigenvalues of a PD matrix.
    Spectrum { input: PathBuf },
    /// Williamson decomposition of a PD matrix.
    Williamson { input: PathBuf },
    /// Williamson form of a PSD matrix with symplectic kernel.
    Degenerate { input: PathBuf },
    /// Normal form of an arbitrary PSD matrix.
    Hormander { input: PathBuf },
    /// One symplectic basis for two Poisson-commuting forms.
    Simdiag {
        a: PathBuf,
        b: PathBuf,
        /// Accept PSD inputs whose joint radical is symplectic.
        #[arg(long)]
        psd: bool,
    },
    /// One symplectic basis for a family of Poisson-commuting PD forms.
    Family {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Weighted geometric mean A♯ₜB.
    Mean {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        t: f64,
    },
    /// Poisson commutator of Aˢ and Bˢ for a commuting pair.
    PowerCheck {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        s: f64,
    },
    /// Solution of ż = JMz at a given time.
    Flow {
        input: PathBuf,
        /// Initial state, comma separated.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        z0: Vec<f64>,
        #[arg(long, allow_negative_numbers = true)]
        time: f64,
    },
    /// Partition function from a manifest.
    Partition { manifest: PathBuf },
    /// Symplectic capacity of a region.
    Capacity { input: PathBuf },
    /// Constraints between a degenerate Hamiltonian and a PD extension.
    Constraints { m: PathBuf, mt: PathBuf },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PartitionManifest {
    hamiltonians: Vec<Matrix>,
    beta: f64,
    hbar: f64,
    mode: PartitionMode,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CapacityInput {
    region: PhaseSpaceRegion,
}

enum Failure {
    Input(String),
    Rejected(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Rejected(e)
        }
    }
}

type Outcome = std::result::Result<Value, Failure>;

struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Inputs<'_> {
    fn text(&mut self, path: &Path) -> std::result::Result<String, Failure> {
        if path == Path::new("-") {
            if self.stdin_used {
                return Err(Failure::Input("stdin can only be read once".into()));
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
            Ok(s)
        } else {
            std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
        }
    }

    fn json<T: for<'de> Deserialize<'de>>(&mut self, path: &Path) -> std::result::Result<T, Failure> {
        let text = self.text(path)?;
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }

    fn matrix(&mut self, path: &Path) -> std::result::Result<Matrix, Failure> {
        self.json(path)
    }
}

fn tolerances(config: &RunConfig) -> std::result::Result<Tolerances, Error> {
    let mut tol = Tolerances::scaled(config.tol.unwrap_or(1.0))?;
    if let Some(r) = config.rank_tol {
        tol.rank_tol = r;
    }
    if let Some(s) = config.sym_tol {
        tol.sym_tol = s;
    }
    tol.validate()?;
    Ok(tol)
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config, stdin, out, err),
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                1
            } else {
                let _ = write!(out, "{e}");
                0
            }
        }
    }
}

/// Executes one command and returns the process exit code.
pub fn run(config: &RunConfig, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let outcome = match tolerances(config) {
        Ok(tol) => {
            let mut inputs = Inputs {
                stdin,
                stdin_used: false,
            };
            execute(config, &tol, &mut inputs)
        }
        Err(e) => Err(Failure::Input(e.to_string())),
    };
    match outcome {
        Ok(report) => {
            emit(config.format, &report, out);
            0
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            if config.format == Format::Json {
                emit(config.format, &json!({"error": {"kind": "input", "message": msg}}), out);
            }
            1
        }
        Err(Failure::Rejected(e)) => {
            let _ = writeln!(err, "error: {e}");
            let mut body = Map::new();
            body.insert("kind".into(), json!("precondition"));
            body.insert("message".into(), json!(e.to_string()));
            if let Some(r) = e.residual() {
                let _ = writeln!(err, "residual: {}", number(r));
                body.insert("residual".into(), number(r));
            }
            if config.format == Format::Json {
                emit(config.format, &json!({ "error": body }), out);
            }
            2
        }
    }
}

fn emit(format: Format, report: &Value, out: &mut dyn Write) {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report is valid JSON"),
        Format::Text => render_text(report),
    };
    let _ = writeln!(out, "{}", text.trim_end());
}

fn number(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

fn matrix_value(m: &Matrix) -> Value {
    serde_json::to_value(m).expect("matrix serializes")
}

/// Mode permutation for `--order`.
fn mode_order(n: usize, order: Order) -> Vec<usize> {
    match order {
        Order::Asc => (0..n).collect(),
        Order::Desc => (0..n).rev().collect(),
    }
}

fn reorder<T: Clone>(v: &[T], perm: &[usize]) -> Vec<T> {
    perm.iter().map(|&i| v[i].clone()).collect()
}

fn execute(config: &RunConfig, tol: &Tolerances, inputs: &mut Inputs) -> Outcome {
    match &config.command {
        Command::Spectrum { input } => {
            let m = inputs.matrix(input)?;
            let spectrum = symplectic_spectrum(&m, tol)?;
            let w = williamson_decompose(&m, tol)?;
            let perm = mode_order(spectrum.len(), config.order);
            Ok(json!({
                "spectrum": reorder(&spectrum, &perm),
                "residual_symplectic": w.residual_symplectic(),
                "residual_diag": w.residual_diag(&m),
            }))
        }
        Command::Williamson { input } => {
            let m = inputs.matrix(input)?;
            let w = williamson_decompose(&m, tol)?;
            let perm = mode_order(w.spectrum.len(), config.order);
            let s = permute_pairs(&w.s, &perm);
            let spectrum = reorder(&w.spectrum, &perm);
            Ok(json!({
                "spectrum": spectrum,
                "S": matrix_value(&s),
                "residual_symplectic": symplectic_residual(&s)?,
                "residual_diag": congruence_residual(&s, &m, &paired_diagonal(&spectrum)),
            }))
        }
        Command::Degenerate { input } => {
            let m = inputs.matrix(input)?;
            let d = degenerate_williamson(&m, tol)?;
            let perm = mode_order(d.spectrum.len(), config.order);
            let s = permute_pairs(&d.s, &perm);
            let spectrum = reorder(&d.spectrum, &perm);
            Ok(json!({
                "k": d.k,
                "spectrum": spectrum,
                "S": matrix_value(&s),
                "residual_symplectic": symplectic_residual(&s)?,
                "residual_diag": congruence_residual(&s, &m, &paired_diagonal(&spectrum)),
            }))
        }
        Command::Hormander { input } => {
            let m = inputs.matrix(input)?;
            let mut h = hormander_psd_normal_form(&m, tol)?;
            if config.order == Order::Desc {
                // only the elliptic block is ordered by value
                let n = h.s.cols() / 2;
                let perm: Vec<usize> = (0..h.k).rev().chain(h.k..n).collect();
                h.s = permute_pairs(&h.s, &perm);
                h.mu.reverse();
            }
            Ok(json!({
                "k": h.k,
                "l": h.l,
                "mu": h.mu,
                "S": matrix_value(&h.s),
                "residual_symplectic": h.residual_symplectic(),
                "residual_diag": h.residual_diag(&m),
            }))
        }
        Command::Simdiag { a, b, psd } => {
            let forms = [inputs.matrix(a)?, inputs.matrix(b)?];
            let r = if *psd {
                simultaneous_williamson_psd(&forms[0], &forms[1], tol)?
            } else {
                simultaneous_williamson(&forms[0], &forms[1], tol)?
            };
            family_report(r, &forms, config.order)
        }
        Command::Family { inputs: paths } => {
            let forms = paths.iter().map(|p| inputs.matrix(p)).collect::<std::result::Result<Vec<_>, _>>()?;
            let r = family_diagonalize(&forms, tol)?;
            family_report(r, &forms, config.order)
        }
        Command::Mean { a, b, t } => {
            let (a, b) = (inputs.matrix(a)?, inputs.matrix(b)?);
            let g = geometric_mean(&a, &b, *t, tol)?;
            let eig = symmetric_eigen(&g, tol)?;
            Ok(json!({
                "t": t,
                "mean": matrix_value(&g),
                "min_eigenvalue": eig.min_value(),
                "residual_symmetry": g.asymmetry(),
            }))
        }
        Command::PowerCheck { a, b, s } => {
            let (a, b) = (inputs.matrix(a)?, inputs.matrix(b)?);
            let residual = power_commutator_residual(&a, &b, *s, tol)?;
            Ok(json!({
                "s": s,
                "residual": residual,
                "commutator": a.commutator(&b).norm_inf(),
                "poisson_commutator": poisson_commutator(&a, &b)?,
            }))
        }
        Command::Flow { input, z0, time } => {
            let m = inputs.matrix(input)?;
            let z = hamiltonian_flow(&m, z0, *time, tol)?;
            let e0 = m.quadratic_form(z0);
            let e1 = m.quadratic_form(&z);
            let phi = flow_matrix(&m, *time, tol)?;
            Ok(json!({
                "time": time,
                "z": z,
                "energy": e0,
                "residual_energy": (e1 - e0).abs(),
                "residual_symplectic": symplectic_residual(&phi)?,
            }))
        }
        Command::Partition { manifest } => {
            let man: PartitionManifest = inputs.json(manifest)?;
            let params = ThermoParams::new(man.beta, man.hbar)?;
            let hs = man
                .hamiltonians
                .into_iter()
                .map(|m| QuadraticHamiltonian::single(m, tol))
                .collect::<crate::error::Result<Vec<_>>>()?;
            let z = match man.mode {
                PartitionMode::Noninteracting => partition_noninteracting(&hs, &params, tol)?,
                PartitionMode::Interacting => partition_interacting(&hs, &params, tol)?,
            };
            let mut worst = 0.0_f64;
            if man.mode == PartitionMode::Interacting {
                for (i, a) in hs.iter().enumerate() {
                    for b in &hs[i + 1..] {
                        worst = worst.max(poisson_commutator(a.matrix(), b.matrix())?);
                    }
                }
            }
            Ok(json!({
                "mode": match man.mode {
                    PartitionMode::Noninteracting => "noninteracting",
                    PartitionMode::Interacting => "interacting",
                },
                "beta": man.beta,
                "hbar": man.hbar,
                "z": z,
                "residual_commutator": worst,
            }))
        }
        Command::Capacity { input } => {
            let req: CapacityInput = inputs.json(input)?;
            let c = capacity(&req.region, tol)?;
            let mut report = Map::new();
            report.insert("capacity".into(), number(c));
            if let PhaseSpaceRegion::Ellipsoid { m } = &req.region {
                let w = williamson_decompose(m, tol)?;
                report.insert("spectrum".into(), json!(w.spectrum));
                report.insert("residual_symplectic".into(), number(w.residual_symplectic()));
                report.insert("residual_diag".into(), number(w.residual_diag(m)));
            }
            Ok(Value::Object(report))
        }
        Command::Constraints { m, mt } => {
            let (m, mt) = (inputs.matrix(m)?, inputs.matrix(mt)?);
            let r = hormander_constraints(&m, &mt, tol)?;
            let sm = (&r.s.transpose() * &(&m * &r.s)).diagonal();
            let n = r.s.cols() / 2;
            let lam: Vec<f64> = (0..n).map(|j| 0.5 * (sm[j] + sm[n + j])).collect();
            Ok(json!({
                "k": r.k,
                "chi_indices": r.chi_indices,
                "c": r.c,
                "S": matrix_value(&r.s),
                "residual_symplectic": symplectic_residual(&r.s)?,
                "residual_diag": congruence_residual(&r.s, &m, &paired_diagonal(&lam)),
            }))
        }
    }
}

fn family_report(r: SimDiagResult, forms: &[Matrix], order: Order) -> Outcome {
    let n = r.s.cols() / 2;
    let perm = mode_order(n, order);
    let r = SimDiagResult {
        s: permute_pairs(&r.s, &perm),
        spectra: r.spectra.iter().map(|sp| reorder(sp, &perm)).collect(),
    };
    let diag: Vec<f64> = forms.iter().enumerate().map(|(i, m)| r.residual_diag(i, m)).collect();
    let mut commutators = Vec::new();
    for (i, a) in forms.iter().enumerate() {
        for (j, b) in forms.iter().enumerate().skip(i + 1) {
            commutators.push(json!({"i": i, "j": j, "residual": poisson_commutator(a, b)?}));
        }
    }
    Ok(json!({
        "spectra": r.spectra,
        "S": matrix_value(&r.s),
        "residual_symplectic": r.residual_symplectic(),
        "residual_diag": diag,
        "commutators": commutators,
    }))
}

/// Plain-text rendering of a report: one `key: value` line per field,
/// matrices as indented rows.
fn render_text(report: &Value) -> String {
    let mut out = String::new();
    render_fields(report, "", &mut out);
    out
}

fn render_fields(v: &Value, indent: &str, out: &mut String) {
    let Value::Object(map) = v else {
        out.push_str(&format!("{indent}{}\n", scalar(v)));
        return;
    };
    for (key, value) in map {
        if let Some(rows) = matrix_rows(value) {
            out.push_str(&format!("{indent}{key}:\n"));
            for row in rows {
                out.push_str(&format!("{indent}  {row}\n"));
            }
        } else if value.is_object() {
            out.push_str(&format!("{indent}{key}:\n"));
            render_fields(value, &format!("{indent}  "), out);
        } else if let Value::Array(items) = value {
            if items.iter().all(|x| !x.is_object() && !x.is_array()) {
                let line: Vec<String> = items.iter().map(scalar).collect();
                out.push_str(&format!("{indent}{key}: {}\n", line.join(" ")));
            } else {
                out.push_str(&format!("{indent}{key}:\n"));
                for item in items {
                    match item {
                        Value::Array(inner) => {
                            let line: Vec<String> = inner.iter().map(scalar).collect();
                            out.push_str(&format!("{indent}  {}\n", line.join(" ")));
                        }
                        Value::Object(obj) => {
                            let line: Vec<String> = obj.iter().map(|(k, x)| format!("{k}={}", scalar(x))).collect();
                            out.push_str(&format!("{indent}  {}\n", line.join(" ")));
                        }
                        other => out.push_str(&format!("{indent}  {}\n", scalar(other))),
                    }
                }
            }
        } else {
            out.push_str(&format!("{indent}{key}: {}\n", scalar(value)));
        }
    }
}

fn matrix_rows(v: &Value) -> Option<Vec<String>> {
    let obj = v.as_object()?;
    if obj.len() != 3 || !obj.contains_key("rows") || !obj.contains_key("cols") {
        return None;
    }
    let data = obj.get("data")?.as_array()?;
    Some(
        data.iter()
            .map(|row| {
                row.as_array()
                    .map(|r| r.iter().map(scalar).collect::<Vec<_>>().join(" "))
                    .unwrap_or_default()
            })
            .collect(),
    )
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
