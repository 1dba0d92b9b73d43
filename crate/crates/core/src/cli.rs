//! `torus-susy` command-line front end.
//!
//! Exit codes: 0 on success, 1 on a domain error or failed verification,
//! 2 on bad arguments. Tables go to stdout unless `--output` is given;
//! relative output paths are resolved against `TORUS_SUSY_OUT_DIR` when set.

use crate::algebra::{algebra_spectrum, casimir_potential, AlgebraParams};
use crate::errata;
use crate::error::Error;
use crate::geometry::TorusGeometry;
use crate::oracle::{friedrichs_gate, solve_potential, EigenReport, Grid1D, FRIEDRICHS_MARGIN};
use crate::susy::{
    component2_eigenfunction, eigenfunction_minus, eigenfunction_plus_at, integrability_probe, l2_normalize,
    partner_potentials, solve_appell_conditions, solve_equal_radii_conditions, spinor_psi1, spinor_psi2,
    AppellReading, Branch, JacobiOrder, PtParams, SuperpotentialSpec,
};
use crate::verify::{self, Suite};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const OUT_DIR_ENV: &str = "TORUS_SUSY_OUT_DIR";
pub const MAX_LEVELS: usize = 8;
const REL_TOL: f64 = 5e-3;
const ABS_TOL: f64 = 1e-2;

#[derive(Parser, Debug)]
#[command(name = "torus-susy", version, about = "Pöschl–Teller families from the Dirac equation on a torus")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Tabulate V_minus and V_plus (and V_casimir for iso21) on the grid.
    Potential(RunArgs),
    /// Compare closed-form levels with the finite-difference oracle.
    Spectrum(RunArgs),
    /// Tabulate normalized eigenfunctions and spinor components.
    Wavefunction(RunArgs),
    /// Same as `spectrum --case iso21`.
    Algebra(RunArgs),
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, value_enum)]
        format: Option<ReportFormat>,
    },
    /// Print the errata ledger with live evidence.
    Errata {
        #[arg(long, value_enum)]
        format: Option<ReportFormat>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Pt,
    Rational,
    Beta,
    Appell,
    Component2,
    Iso21,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SuiteArg {
    All,
    Special,
    Geometry,
    Susy,
    Algebra,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum BranchArg {
    Plus,
    Minus,
}

#[derive(Args, Debug, Default)]
struct RunArgs {
    #[arg(long, value_enum)]
    case: Option<Case>,
    #[arg(long = "A", allow_negative_numbers = true)]
    big_a: Option<f64>,
    #[arg(long = "B", allow_negative_numbers = true)]
    big_b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    #[arg(long = "C1", allow_negative_numbers = true)]
    c1: Option<f64>,
    #[arg(long = "a", allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long = "c", allow_negative_numbers = true)]
    c: Option<f64>,
    #[arg(long = "k", allow_negative_numbers = true)]
    k: Option<f64>,
    #[arg(long = "B1", allow_negative_numbers = true)]
    b1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    mu: Option<f64>,
    #[arg(long = "K1", allow_negative_numbers = true)]
    k1: Option<f64>,
    #[arg(long, value_enum)]
    branch: Option<BranchArg>,
    #[arg(long = "x-lo", allow_negative_numbers = true)]
    x_lo: Option<f64>,
    #[arg(long = "x-hi", allow_negative_numbers = true)]
    x_hi: Option<f64>,
    #[arg(long = "n-points")]
    n_points: Option<usize>,
    #[arg(long)]
    levels: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    output: Option<PathBuf>,
    /// key=value file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Level index for `wavefunction`.
    #[arg(long)]
    n: Option<usize>,
    /// Include the partner eigenfunction column in `wavefunction`.
    #[arg(long)]
    plus: bool,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(Error),
    Failed(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Domain(e) => write!(f, "error: {e}"),
            CliError::Failed(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Fully resolved inputs of `potential`, `spectrum` and `wavefunction`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub case: Case,
    pub params: BTreeMap<String, f64>,
    pub branch: Option<Branch>,
    pub grid: Grid1D,
    pub levels: usize,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub n: usize,
    pub plus: bool,
}

const CONFIG_KEYS: &[&str] = &[
    "case", "A", "B", "lambda", "C1", "a", "c", "k", "B1", "mu", "K1", "branch", "x-lo", "x-hi", "n-points", "levels",
    "format", "output", "n", "plus",
];

fn read_config(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("config line {}: expected key=value", i + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if !CONFIG_KEYS.contains(&k) {
            return Err(usage(format!("config line {}: unknown key `{k}`", i + 1)));
        }
        map.insert(k.to_string(), v.to_string());
    }
    Ok(map)
}

fn from_config<T: std::str::FromStr>(cfg: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, CliError> {
    cfg.get(key)
        .map(|v| v.parse::<T>().map_err(|_| usage(format!("config key `{key}`: cannot parse `{v}`"))))
        .transpose()
}

fn enum_from_config<T: ValueEnum>(cfg: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, CliError> {
    cfg.get(key)
        .map(|v| T::from_str(v, false).map_err(|_| usage(format!("config key `{key}`: invalid value `{v}`"))))
        .transpose()
}

fn resolve(args: RunArgs, forced_case: Option<Case>) -> Result<RunConfig, CliError> {
    let cfg = match &args.config {
        Some(p) => read_config(p)?,
        None => BTreeMap::new(),
    };
    let case = forced_case
        .or(args.case)
        .or(enum_from_config(&cfg, "case")?)
        .ok_or_else(|| usage("--case is required"))?;
    let mut params = BTreeMap::new();
    let numeric = [
        ("A", args.big_a),
        ("B", args.big_b),
        ("lambda", args.lambda),
        ("C1", args.c1),
        ("a", args.a),
        ("c", args.c),
        ("k", args.k),
        ("B1", args.b1),
        ("mu", args.mu),
        ("K1", args.k1),
    ];
    for (key, flag) in numeric {
        if let Some(v) = flag.or(from_config::<f64>(&cfg, key)?) {
            if !v.is_finite() {
                return Err(usage(format!("--{key} must be finite")));
            }
            params.insert(key.to_string(), v);
        }
    }
    let branch = args.branch.or(enum_from_config(&cfg, "branch")?).map(|b| match b {
        BranchArg::Plus => Branch::Plus,
        BranchArg::Minus => Branch::Minus,
    });
    let eps0 = 0.002;
    let x_lo = args.x_lo.or(from_config(&cfg, "x-lo")?).unwrap_or(eps0);
    let x_hi = args.x_hi.or(from_config(&cfg, "x-hi")?).unwrap_or(std::f64::consts::PI - eps0);
    let n_points = args.n_points.or(from_config(&cfg, "n-points")?).unwrap_or(4000);
    let grid = Grid1D::new(x_lo, x_hi, n_points).map_err(|e| usage(e.to_string()))?;
    let levels = args.levels.or(from_config(&cfg, "levels")?).unwrap_or(5);
    if levels == 0 || levels > MAX_LEVELS {
        return Err(usage(format!("levels out of supported range (1..={MAX_LEVELS}), got {levels}")));
    }
    let format = args.format.or(enum_from_config(&cfg, "format")?).unwrap_or(Format::Csv);
    let output = args.output.or(from_config(&cfg, "output")?);
    let n = args.n.or(from_config(&cfg, "n")?).unwrap_or(0);
    let plus = args.plus || from_config::<bool>(&cfg, "plus")?.unwrap_or(false);
    Ok(RunConfig {
        case,
        params,
        branch,
        grid,
        levels,
        format,
        output,
        n,
        plus,
    })
}

impl RunConfig {
    fn get(&self, key: &str) -> Result<f64, CliError> {
        self.params
            .get(key)
            .copied()
            .ok_or_else(|| usage(format!("case {} requires --{key}", case_name(self.case))))
    }

    fn get_or(&self, key: &str, default: f64) -> f64 {
        self.params.get(key).copied().unwrap_or(default)
    }

    fn forbid(&self, keys: &[&str], why: &str) -> Result<(), CliError> {
        match keys.iter().find(|k| self.params.contains_key(**k)) {
            Some(k) => Err(usage(format!("--{k} conflicts with {why}"))),
            None => Ok(()),
        }
    }

    fn geometry(&self) -> Result<TorusGeometry, CliError> {
        let a = self.get_or("a", 1.0);
        TorusGeometry::new(a, self.get_or("c", a)).map_err(|e| usage(e.to_string()))
    }
}

fn case_name(case: Case) -> &'static str {
    match case {
        Case::Pt => "pt",
        Case::Rational => "rational",
        Case::Beta => "beta",
        Case::Appell => "appell",
        Case::Component2 => "component2",
        Case::Iso21 => "iso21",
    }
}

/// A case resolved into something that can be evaluated.
enum Model {
    Family(SuperpotentialSpec),
    Component2 { lambda: f64, geom: TorusGeometry },
    Algebra(AlgebraParams),
}

fn build_model(cfg: &RunConfig) -> Result<Model, CliError> {
    Ok(match cfg.case {
        Case::Pt => Model::Family(SuperpotentialSpec::PureTrigPt(PtParams::new(cfg.get("A")?, cfg.get("B")?))),
        Case::Rational => match cfg.branch {
            Some(branch) => {
                cfg.forbid(&["A", "lambda", "c"], "--branch, which derives A, lambda and c")?;
                let s = solve_equal_radii_conditions(cfg.get_or("a", 1.0), cfg.get("B")?, branch)?;
                Model::Family(SuperpotentialSpec::RationalSin {
                    pt: s.pt,
                    lambda: s.lambda,
                    geom: s.geom,
                })
            }
            None => Model::Family(SuperpotentialSpec::RationalSin {
                pt: PtParams::new(cfg.get("A")?, cfg.get("B")?),
                lambda: cfg.get("lambda")?,
                geom: cfg.geometry()?,
            }),
        },
        Case::Beta => Model::Family(SuperpotentialSpec::beta_tail(
            PtParams::new(cfg.get("A")?, cfg.get("B")?),
            cfg.get("C1")?,
            cfg.geometry()?,
        )?),
        Case::Appell => match cfg.branch {
            Some(branch) => {
                cfg.forbid(&["A", "B", "c"], "--branch, which derives A, B and c")?;
                let s = solve_appell_conditions(cfg.get_or("a", 1.0), cfg.get("lambda")?, branch, AppellReading::Corrected)?;
                Model::Family(SuperpotentialSpec::appell_tail(s.pt, s.lambda, cfg.get("C1")?, s.geom)?)
            }
            None => Model::Family(SuperpotentialSpec::appell_tail(
                PtParams::new(cfg.get("A")?, cfg.get("B")?),
                cfg.get("lambda")?,
                cfg.get("C1")?,
                cfg.geometry()?,
            )?),
        },
        Case::Component2 => {
            let a = cfg.get_or("a", 1.0);
            Model::Component2 {
                lambda: cfg.get("lambda")?,
                geom: TorusGeometry::new(a, cfg.get_or("c", a)).map_err(|e| usage(e.to_string()))?,
            }
        }
        Case::Iso21 => {
            let geom = cfg.geometry()?;
            let (mu, k1) = (cfg.get("mu")?, cfg.get_or("K1", 0.0));
            Model::Algebra(AlgebraParams {
                b1: cfg.get_or("B1", 0.0),
                mu,
                k1,
                k2: -k1 - 2.0 * geom.c,
                mu1: mu + 1.0,
                geom,
            })
        }
    })
}

fn component2_pt(lambda: f64, a: f64) -> PtParams {
    let big_a = lambda / (2.0 * a);
    PtParams::new(big_a, big_a - 0.5)
}

impl Model {
    /// Weights `(A, B)` whose regime decides normalizability.
    fn pt(&self) -> PtParams {
        match self {
            Model::Family(s) => s.pt(),
            Model::Component2 { lambda, geom } => component2_pt(*lambda, geom.a),
            Model::Algebra(p) => PtParams::new(-p.mu - 0.5, -p.b1),
        }
    }

    fn columns(&self) -> &'static [&'static str] {
        match self {
            Model::Algebra(_) => &["x", "V_minus", "V_plus", "V_casimir"],
            _ => &["x", "V_minus", "V_plus"],
        }
    }

    fn potentials(&self, x: f64) -> Result<Vec<f64>, Error> {
        Ok(match self {
            Model::Family(s) => {
                let (m, p) = partner_potentials(s, x)?;
                vec![x, m, p]
            }
            Model::Component2 { lambda, geom } => {
                let pt = component2_pt(*lambda, geom.a);
                vec![x, pt.minus_coefficients().eval(x), pt.plus_coefficients().eval(x)]
            }
            Model::Algebra(p) => {
                let (m, pl) = partner_potentials(&p.susy_image(), x)?;
                vec![x, m, pl, casimir_potential(p, x)?]
            }
        })
    }

    /// Oracle input: the potential whose spectrum is `expected_levels`.
    fn oracle_potential(&self, x: f64) -> Result<f64, Error> {
        match self {
            Model::Family(s) => Ok(partner_potentials(s, x)?.0),
            Model::Component2 { lambda, geom } => Ok(component2_pt(*lambda, geom.a).minus_coefficients().eval(x)),
            Model::Algebra(p) => Ok(casimir_potential(p, x)? + 0.25 - (p.mu + 0.5).powi(2)),
        }
    }

    fn expected_levels(&self, m: usize) -> Vec<f64> {
        match self {
            Model::Algebra(p) => (0..m).map(|n| algebra_spectrum(p, n).0).collect(),
            _ => {
                let a = self.pt().a;
                (0..m).map(|n| (n as f64 - a).powi(2) - a * a).collect()
            }
        }
    }
}

fn warn_regime(model: &Model, err: &mut dyn Write) -> std::io::Result<()> {
    let pt = model.pt();
    if !pt.normalizable() {
        writeln!(
            err,
            "warning: non-normalizable regime: A = {}, B = {} violate A < -|B|; levels are formal",
            pt.a, pt.b
        )?;
    }
    Ok(())
}

fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

fn render_table(columns: &[&str], rows: &[Vec<f64>], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = columns.join(",");
            out.push('\n');
            for r in rows {
                out.push_str(&r.iter().map(|v| fmt_num(*v)).collect::<Vec<_>>().join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let records: Vec<serde_json::Map<String, serde_json::Value>> = rows
                .iter()
                .map(|r| columns.iter().zip(r).map(|(c, v)| (c.to_string(), serde_json::json!(v))).collect())
                .collect();
            let mut s = serde_json::to_string_pretty(&records).expect("rows serialize");
            s.push('\n');
            s
        }
    }
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match output {
        None => out.write_all(text.as_bytes())?,
        Some(p) => {
            let path = match std::env::var_os(OUT_DIR_ENV) {
                Some(dir) if p.is_relative() => Path::new(&dir).join(p),
                _ => p.to_path_buf(),
            };
            std::fs::write(&path, text)?;
        }
    }
    Ok(())
}

pub fn cmd_potential(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let model = build_model(cfg)?;
    warn_regime(&model, err)?;
    let rows = cfg
        .grid
        .nodes()
        .into_iter()
        .map(|x| model.potentials(x))
        .collect::<Result<Vec<_>, _>>()?;
    emit(&render_table(model.columns(), &rows, cfg.format), cfg.output.as_deref(), out)
}

/// Builds the spectrum report; `Ok` even when the comparison fails.
pub fn spectrum_report(cfg: &RunConfig, err: &mut dyn Write) -> Result<EigenReport, CliError> {
    let model = build_model(cfg)?;
    warn_regime(&model, err)?;
    let v = cfg.grid.try_sample(|x| model.oracle_potential(x))?;
    friedrichs_gate(&v, &cfg.grid, FRIEDRICHS_MARGIN)?;
    let numeric = solve_potential(&v, &cfg.grid, cfg.levels)?;
    let expected = model.expected_levels(cfg.levels);
    let mut params = cfg.params.clone();
    params.insert("x_lo".into(), cfg.grid.x_lo);
    params.insert("x_hi".into(), cfg.grid.x_hi);
    params.insert("n_points".into(), cfg.grid.n_points as f64);
    Ok(EigenReport::compare(
        case_name(cfg.case),
        params,
        &expected,
        &numeric,
        REL_TOL,
        ABS_TOL,
    ))
}

pub fn cmd_spectrum(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let report = spectrum_report(cfg, err)?;
    let text = match cfg.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let rows: Vec<Vec<f64>> = report
                .levels
                .iter()
                .map(|l| vec![l.n as f64, l.eps_analytic, l.eps_numeric, l.abs_err, l.rel_err])
                .collect();
            render_table(&["n", "eps_analytic", "eps_numeric", "abs_err", "rel_err"], &rows, Format::Csv)
        }
    };
    emit(&text, cfg.output.as_deref(), out)?;
    if report.pass {
        Ok(())
    } else {
        Err(CliError::Failed(format!(
            "spectrum comparison failed: max_rel_err = {:e}",
            report.max_rel_err
        )))
    }
}

fn normalize_samples<F: Fn(f64) -> f64>(
    f: F,
    grid: &Grid1D,
    label: &str,
    tolerate: bool,
    warnings: &mut Vec<String>,
) -> Result<Vec<f64>, Error> {
    match l2_normalize(&f, 0.0, std::f64::consts::PI) {
        Ok(norm) => Ok(grid.sample(|x| f(x) / norm)),
        Err(e) if tolerate => {
            warnings.push(format!("{label} left unnormalized: {e}"));
            Ok(grid.sample(f))
        }
        Err(e) => Err(e),
    }
}

#[derive(Serialize)]
struct WaveTable<'a> {
    case: &'a str,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalizable: Option<bool>,
    warnings: &'a [String],
    rows: Vec<serde_json::Map<String, serde_json::Value>>,
}

pub fn cmd_wavefunction(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let model = build_model(cfg)?;
    warn_regime(&model, err)?;
    let n = cfg.n;
    let mut warnings = Vec::new();
    let mut columns = vec!["x", "F_minus"];
    let mut data: Vec<Vec<f64>> = Vec::new();
    let mut normalizable = None;
    match &model {
        Model::Family(spec) => {
            let pt = spec.pt();
            data.push(normalize_samples(|x| eigenfunction_minus(&pt, n, x), &cfg.grid, "F_minus", false, &mut warnings)?);
            let geom = spec.geometry().unwrap_or(TorusGeometry::new(1.0, 1.0)?);
            if geom.equal_radii() {
                columns.push("psi1");
                data.push(normalize_samples(
                    |x| spinor_psi1(&pt, &geom, n, x).unwrap_or(f64::NAN),
                    &cfg.grid,
                    "psi1",
                    false,
                    &mut warnings,
                )?);
            } else {
                warnings.push("psi1 omitted: the spinor formula needs a = c".into());
            }
            if cfg.plus {
                let (lambda, a) = match spec {
                    SuperpotentialSpec::PureTrigPt(_) => (0.0, 1.0),
                    SuperpotentialSpec::RationalSin { lambda, geom, .. } if geom.equal_radii() => (*lambda, geom.a),
                    _ => {
                        return Err(Error::Domain(format!(
                            "no closed-form partner eigenfunction for case {}",
                            case_name(cfg.case)
                        ))
                        .into())
                    }
                };
                eigenfunction_plus_at(&pt, lambda, a, n, 1.0)?;
                columns.push("F_plus");
                data.push(normalize_samples(
                    |x| eigenfunction_plus_at(&pt, lambda, a, n, x).unwrap_or(f64::NAN),
                    &cfg.grid,
                    "F_plus",
                    false,
                    &mut warnings,
                )?);
            }
        }
        Model::Component2 { lambda, geom } => {
            let (lambda, geom) = (*lambda, *geom);
            spinor_psi2(lambda, &geom, n, 1.0, JacobiOrder::Printed)?;
            data.push(normalize_samples(
                |x| component2_eigenfunction(lambda, geom.a, n, x, JacobiOrder::Swapped),
                &cfg.grid,
                "F_minus",
                true,
                &mut warnings,
            )?);
            columns.push("psi2");
            let psi2 = |x: f64| spinor_psi2(lambda, &geom, n, x, JacobiOrder::Printed).unwrap_or(f64::NAN);
            data.push(normalize_samples(psi2, &cfg.grid, "psi2", true, &mut warnings)?);
            let probe = integrability_probe(psi2);
            normalizable = Some(probe.normalizable);
            warnings.push("degenerate Jacobi parameter alpha = -1 in psi2".into());
        }
        Model::Algebra(p) => {
            let pt = PtParams::new(-p.mu - 0.5, -p.b1);
            data.push(normalize_samples(|x| eigenfunction_minus(&pt, n, x), &cfg.grid, "F_minus", false, &mut warnings)?);
        }
    }
    if let Some(flag) = normalizable {
        writeln!(err, "normalizable: {flag}")?;
    }
    for w in &warnings {
        writeln!(err, "warning: {w}")?;
    }
    let nodes = cfg.grid.nodes();
    let rows: Vec<Vec<f64>> = (0..nodes.len())
        .map(|i| std::iter::once(nodes[i]).chain(data.iter().map(|col| col[i])).collect())
        .collect();
    let text = match cfg.format {
        Format::Csv => render_table(&columns, &rows, Format::Csv),
        Format::Json => {
            let table = WaveTable {
                case: case_name(cfg.case),
                n,
                normalizable,
                warnings: &warnings,
                rows: rows
                    .iter()
                    .map(|r| columns.iter().zip(r).map(|(c, v)| (c.to_string(), serde_json::json!(v))).collect())
                    .collect(),
            };
            let mut s = serde_json::to_string_pretty(&table).expect("table serializes");
            s.push('\n');
            s
        }
    };
    emit(&text, cfg.output.as_deref(), out)
}

pub fn cmd_verify(suite: Suite, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let report = verify::run(suite);
    if json {
        writeln!(out, "{}", report.to_json())?;
    } else {
        out.write_all(report.to_text().as_bytes())?;
    }
    if report.pass {
        Ok(())
    } else {
        let mut names = String::new();
        for c in report.failures() {
            let _ = write!(names, " {}", c.name);
        }
        Err(CliError::Failed(format!("verification failed:{names}")))
    }
}

pub fn cmd_errata(json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let ledger = errata::collect();
    if json {
        writeln!(out, "{}", errata::render_json(&ledger))?;
    } else {
        out.write_all(errata::render_text(&ledger).as_bytes())?;
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.cmd {
        Cmd::Potential(a) => resolve(a, None).and_then(|c| cmd_potential(&c, out, err)),
        Cmd::Spectrum(a) => resolve(a, None).and_then(|c| cmd_spectrum(&c, out, err)),
        Cmd::Wavefunction(a) => resolve(a, None).and_then(|c| cmd_wavefunction(&c, out, err)),
        Cmd::Algebra(a) => {
            if a.case.is_some_and(|c| c != Case::Iso21) {
                Err(usage("algebra always uses --case iso21"))
            } else {
                resolve(a, Some(Case::Iso21)).and_then(|c| cmd_spectrum(&c, out, err))
            }
        }
        Cmd::Verify { suite, format } => {
            let suite = match suite {
                SuiteArg::All => Suite::All,
                SuiteArg::Special => Suite::Special,
                SuiteArg::Geometry => Suite::Geometry,
                SuiteArg::Susy => Suite::Susy,
                SuiteArg::Algebra => Suite::Algebra,
            };
            cmd_verify(suite, format == Some(ReportFormat::Json), out)
        }
        Cmd::Errata { format } => cmd_errata(format == Some(ReportFormat::Json), out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["torus-susy"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn pt_potential_midpoint() {
        let (code, out, _) = run_capture(&["potential", "--case", "pt", "--A", "-2", "--B", "0.5", "--n-points", "101"]);
        assert_eq!(code, 0);
        let mid = out.lines().nth(51).unwrap();
        let v: Vec<f64> = mid.split(',').map(|s| s.parse().unwrap()).collect();
        assert!((v[0] - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert!((v[1] + 1.75).abs() < 1e-9, "{mid}");
    }

    #[test]
    fn levels_range() {
        let (code, _, err) = run_capture(&["spectrum", "--case", "pt", "--A", "-2", "--B", "0.5", "--levels", "50"]);
        assert_eq!(code, 2);
        assert!(err.contains("levels out of supported range"));
    }

    #[test]
    fn missing_parameter_is_usage_error() {
        let (code, _, err) = run_capture(&["potential", "--case", "rational", "--A", "-2"]);
        assert_eq!(code, 2, "{err}");
    }

    #[test]
    fn table_rendering() {
        let s = render_table(&["x", "y"], &[vec![0.5, -1.0]], Format::Csv);
        assert_eq!(s, "x,y\n5.0000000000000000e-1,-1.0000000000000000e0\n");
        let j = render_table(&["x"], &[vec![0.25]], Format::Json);
        assert!(j.contains("\"x\": 0.25"));
    }
}
