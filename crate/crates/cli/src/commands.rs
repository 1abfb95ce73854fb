use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use rayon::prelude::*;

use tra_core::eig::{eigendecompose, lowest_eigenvalues};
use tra_core::oracle::{fd_spectrum, Boundary, FDProblem};
use tra_core::scatter::{
    coulomb_phase, coulomb_phase_from_recursion, coulomb_phase_shift, morse_bound_energies, morse_phase_shift,
};
use tra_core::wavefun::{reconstruct_bound, uniform_grid, ExpansionCoefficients};
use tra_core::wavop::{morse_matrix, scarf_matrix, well_matrix};
use tra_core::{CoulombParams, MorseParams, ScarfParams, SystemParams, WellParams};

use crate::error::CliError;
use crate::settings::{Range, Resolver};
use crate::table::{Cell, Table};

const TABLE2_GAMMAS: [f64; 5] = [0.0, 2.0, 5.0, 10.0, 20.0];
const TABLE3_SIZES: [usize; 5] = [10, 11, 12, 13, 100];
const TABLE_LEVELS: usize = 10;
const SCARF_KEYS: [&str; 3] = ["v0", "v-plus", "v-minus"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Units {
    /// Energies as `2E/λ²`.
    Dimensionless,
    /// Energies as `E` (ħ = m = 1).
    Physical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum System {
    Well,
    Scarf,
    Morse,
}

macro_rules! value_enum_text {
    ($($t:ty),*) => {$(
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let v = self.to_possible_value().expect("no skipped variants");
                f.write_str(v.get_name())
            }
        }

        impl FromStr for $t {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                <$t as ValueEnum>::from_str(s, true)
            }
        }
    )*};
}

value_enum_text!(Units, Format, System);

/// Inclusive index window `n0:n1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window(pub usize, pub usize);

impl FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s.split_once(':').ok_or_else(|| format!("expected n0:n1, got `{s}`"))?;
        let a = a.trim().parse().map_err(|e| format!("`{a}`: {e}"))?;
        let b = b.trim().parse().map_err(|e| format!("`{b}`: {e}"))?;
        Ok(Window(a, b))
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.0, self.1)
    }
}

/// A finished table and the basis size that produced it.
pub struct Report {
    pub table: Table,
    pub basis_size: usize,
    /// Set when the table was produced but a check on it failed.
    pub failure: Option<CliError>,
}

impl Report {
    fn new(table: Table, basis_size: usize) -> Self {
        Report {
            table,
            basis_size,
            failure: None,
        }
    }
}

fn rescale(values: &[f64], units: Units, unit: f64) -> Vec<f64> {
    match units {
        Units::Dimensionless => values.to_vec(),
        Units::Physical => values.iter().map(|e| e * unit).collect(),
    }
}

fn require(cond: bool, msg: impl Into<String>) -> Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Parameter(msg.into()))
    }
}

fn reject_unused(system: System, flags: &[(&str, bool)]) -> Result<(), CliError> {
    match flags.iter().find(|(_, given)| *given) {
        Some((name, _)) => Err(CliError::Parameter(format!(
            "--{name} does not apply to system `{system}`"
        ))),
        None => Ok(()),
    }
}

fn levels_of(t: &tra_core::SymTridiag<f64>, count: usize) -> Result<Vec<f64>, CliError> {
    require(
        count <= t.dim(),
        format!("{count} levels requested from a basis of size {}", t.dim()),
    )?;
    Ok(lowest_eigenvalues(t, count))
}

/// Parameters of the sinusoidal-bottom well.
#[derive(Debug, Clone, Default, Args)]
pub struct WellArgs {
    /// Bottom amplitude V0 in units of λ²/2.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
}

/// Parameters of the trigonometric Scarf well, in units of λ²/2.
#[derive(Debug, Clone, Default, Args)]
pub struct ScarfArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub v0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub v_plus: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub v_minus: Option<f64>,
}

/// Parameters of the Morse oscillator (physical units).
#[derive(Debug, Clone, Default, Args)]
pub struct MorseArgs {
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub v1: Option<f64>,
}

impl WellArgs {
    fn resolve(&self, r: &mut Resolver, length: f64) -> Result<WellParams<f64>, CliError> {
        let gamma = r.value("gamma", self.gamma, 0.0)?;
        Ok(WellParams::from_gamma(gamma, length)?)
    }

    fn given(&self) -> bool {
        self.gamma.is_some()
    }
}

impl ScarfArgs {
    fn resolve(&self, r: &mut Resolver, length: f64) -> Result<ScarfParams<f64>, CliError> {
        let v0 = r.value("v0", self.v0, 7.0)?;
        let vp = r.value("v-plus", self.v_plus, 5.0)?;
        let vm = r.value("v-minus", self.v_minus, 3.0)?;
        Ok(ScarfParams::from_reduced(v0, vp, vm, length)?)
    }

    fn given(&self) -> bool {
        self.v0.is_some() || self.v_plus.is_some() || self.v_minus.is_some()
    }
}

impl MorseArgs {
    fn resolve(&self, r: &mut Resolver) -> Result<MorseParams<f64>, CliError> {
        let lambda = r.value("lambda", self.lambda, 1.0)?;
        let v1 = r.value("v1", self.v1, -2.0)?;
        Ok(MorseParams::new(lambda, v1)?)
    }

    fn given(&self) -> bool {
        self.lambda.is_some() || self.v1.is_some()
    }
}

#[derive(Debug, Clone, Args)]
pub struct Table2Args {
    /// Comma-separated γ values.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub gammas: Option<Vec<f64>>,
    /// Basis size N (at least 10).
    #[arg(long)]
    pub n: Option<usize>,
    /// Well width L.
    #[arg(long)]
    pub length: Option<f64>,
}

pub fn table2(a: &Table2Args, r: &mut Resolver, units: Units) -> Result<Report, CliError> {
    let gammas = r.list("gammas", a.gammas.clone(), TABLE2_GAMMAS.to_vec())?;
    let n = r.value("n", a.n, 50)?;
    let length = r.value("length", a.length, PI)?;
    require(
        n >= TABLE_LEVELS,
        format!("basis size N = {n} must be at least {TABLE_LEVELS}"),
    )?;
    let columns = gammas
        .iter()
        .map(|&g| {
            let w = WellParams::from_gamma(g, length)?;
            let eps = levels_of(&well_matrix(&w, n)?, TABLE_LEVELS)?;
            Ok(rescale(&eps, units, w.energy_unit()))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut table = Table::new(std::iter::once("n".to_string()).chain(gammas.iter().map(|g| format!("gamma={g}"))));
    for level in 0..TABLE_LEVELS {
        let mut row = vec![Cell::from(level)];
        row.extend(columns.iter().map(|c| Cell::from(c[level])));
        table.push(row);
    }
    Ok(Report::new(table, n))
}

#[derive(Debug, Clone, Args)]
pub struct Table3Args {
    #[command(flatten)]
    pub scarf: ScarfArgs,
    /// Comma-separated basis sizes (each at least 10).
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,
    #[arg(long)]
    pub length: Option<f64>,
}

pub fn table3(a: &Table3Args, r: &mut Resolver, units: Units) -> Result<Report, CliError> {
    let length = r.value("length", a.length, PI)?;
    let p = a.scarf.resolve(r, length)?;
    let sizes = r.list("sizes", a.sizes.clone(), TABLE3_SIZES.to_vec())?;
    let columns = sizes
        .iter()
        .map(|&n| {
            let eps = levels_of(&scarf_matrix(&p, n)?, TABLE_LEVELS)?;
            Ok(rescale(&eps, units, p.energy_unit()))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut table = Table::new(std::iter::once("n".to_string()).chain(sizes.iter().map(|s| format!("N={s}"))));
    for level in 0..TABLE_LEVELS {
        let mut row = vec![Cell::from(level)];
        row.extend(columns.iter().map(|c| Cell::from(c[level])));
        table.push(row);
    }
    let basis_size = sizes.iter().copied().max().unwrap_or(0);
    Ok(Report::new(table, basis_size))
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    /// Basis size N.
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of levels to report.
    #[arg(long)]
    pub levels: Option<usize>,
    #[arg(long)]
    pub length: Option<f64>,
}

fn spectrum_table(eps: &[f64]) -> Table {
    let mut table = Table::new(["k", "energy"]);
    for (k, &e) in eps.iter().enumerate() {
        table.push(vec![k.into(), e.into()]);
    }
    table
}

#[derive(Debug, Clone, Args)]
pub struct WellCmd {
    #[command(flatten)]
    pub well: WellArgs,
    #[command(flatten)]
    pub spectrum: SpectrumArgs,
}

pub fn well(a: &WellCmd, r: &mut Resolver, units: Units) -> Result<Report, CliError> {
    let length = r.value("length", a.spectrum.length, PI)?;
    let w = a.well.resolve(r, length)?;
    let n = r.value("n", a.spectrum.n, 50)?;
    let levels = r.value("levels", a.spectrum.levels, TABLE_LEVELS)?;
    let eps = levels_of(&well_matrix(&w, n)?, levels)?;
    Ok(Report::new(spectrum_table(&rescale(&eps, units, w.energy_unit())), n))
}

#[derive(Debug, Clone, Args)]
pub struct ScarfCmd {
    #[command(flatten)]
    pub scarf: ScarfArgs,
    #[command(flatten)]
    pub spectrum: SpectrumArgs,
}

pub fn scarf(a: &ScarfCmd, r: &mut Resolver, units: Units) -> Result<Report, CliError> {
    let length = r.value("length", a.spectrum.length, PI)?;
    let p = a.scarf.resolve(r, length)?;
    let n = r.value("n", a.spectrum.n, 100)?;
    let levels = r.value("levels", a.spectrum.levels, TABLE_LEVELS)?;
    let eps = levels_of(&scarf_matrix(&p, n)?, levels)?;
    Ok(Report::new(spectrum_table(&rescale(&eps, units, p.energy_unit())), n))
}

#[derive(Debug, Clone, Args)]
pub struct CoulombCmd {
    /// Charge Z ≥ 0 of the repulsive potential Z/r.
    #[arg(long)]
    pub charge: Option<f64>,
    /// Angular momentum ℓ.
    #[arg(long)]
    pub ell: Option<u32>,
    /// Basis scale λ.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Comma-separated scattering energies E > 0.
    #[arg(long, value_delimiter = ',')]
    pub energies: Option<Vec<f64>>,
    /// Also fit the phase (modulo π/2) from the recursion asymptotics.
    #[arg(long)]
    pub recursion: bool,
    /// Fitting window n0:n1 for --recursion.
    #[arg(long)]
    pub window: Option<Window>,
    /// Largest accepted relative fit residual for --recursion.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

pub fn coulomb(a: &CoulombCmd, r: &mut Resolver, units: Units) -> Result<Report, CliError> {
    let charge = r.value("charge", a.charge, 1.0)?;
    let ell = r.value("ell", a.ell, 0)?;
    let lambda = r.value("lambda", a.lambda, 1.0)?;
    let energies = r.list("energies", a.energies.clone(), vec![0.5])?;
    let recursion = r.switch("recursion", a.recursion)?;
    let window = if recursion {
        Some((
            r.value("window", a.window, Window(60, 200))?,
            r.value("tolerance", a.tolerance, 1e-3)?,
        ))
    } else {
        None
    };
    require(
        charge >= 0.0 && charge.is_finite(),
        format!("charge Z = {charge} must be non-negative"),
    )?;
    require(
        lambda > 0.0 && lambda.is_finite(),
        format!("basis scale λ = {lambda} must be positive"),
    )?;
    let unit = lambda * lambda / 2.0;

    let mut columns = vec!["energy", "delta"];
    if window.is_some() {
        columns.extend(["delta_recursion", "residual"]);
    }
    let mut table = Table::new(columns);
    for &e in &energies {
        require(
            e > 0.0 && e.is_finite(),
            format!("scattering energy E = {e} must be positive"),
        )?;
        let shown = if units == Units::Physical { e } else { e / unit };
        let mut row = vec![Cell::from(shown)];
        let delta = if charge == 0.0 {
            coulomb_phase(ell, 0.0)?
        } else {
            coulomb_phase_shift(&CoulombParams::new(charge, ell, lambda, e)?)?.delta
        };
        row.push(delta.into());
        if let Some((Window(n0, n1), tol)) = window {
            let p = CoulombParams::new(charge, ell, lambda, e)?;
            let (fit, shift) = coulomb_phase_from_recursion(&p, (n0, n1), tol)?;
            // only known modulo π/2: report the branch nearest the closed form
            let quarter = std::f64::consts::FRAC_PI_2;
            let fitted = shift.delta + quarter * ((delta - shift.delta) / quarter).round();
            row.extend([Cell::from(fitted), Cell::from(fit.residual)]);
        }
        table.push(row);
    }
    let basis_size = window.map_or(0, |(w, _)| w.1 + 1);
    Ok(Report::new(table, basis_size))
}

#[derive(Debug, Clone, Args)]
pub struct MorseCmd {
    #[command(flatten)]
    pub morse: MorseArgs,
    /// Basis index ν > -1 used with --basis-size.
    #[arg(long)]
    pub nu: Option<f64>,
    /// Comma-separated scattering energies E > 0.
    #[arg(long, value_delimiter = ',')]
    pub energies: Option<Vec<f64>>,
    /// Also report negative eigenvalues of the truncated matrix of this size.
    #[arg(long)]
    pub basis_size: Option<usize>,
}

pub fn morse(a: &MorseCmd, r: &mut Resolver, units: Units) -> Result<Report, CliError> {
    let m = a.morse.resolve(r)?;
    let m = m.with_nu(r.value("nu", a.nu, 1.0)?)?;
    let energies = r.list("energies", a.energies.clone(), Vec::new())?;
    let basis_size = r.optional("basis-size", a.basis_size)?;
    let show = |e: f64| {
        if units == Units::Physical {
            e
        } else {
            e / m.energy_unit()
        }
    };

    let mut table = Table::new(["kind", "k", "energy", "delta"]);
    let bound = morse_bound_energies(&m).eigenvalues;
    table.push(vec!["bound_count".into(), bound.len().into(), Cell::Empty, Cell::Empty]);
    if bound.is_empty() {
        table.push(vec!["no_bound_states".into(), 0usize.into(), Cell::Empty, Cell::Empty]);
    }
    for (k, &e) in bound.iter().enumerate() {
        table.push(vec!["bound".into(), k.into(), show(e).into(), Cell::Empty]);
    }
    if let Some(n) = basis_size {
        let spectrum = eigendecompose(&morse_matrix(&m, n)?, false)?;
        let below: Vec<f64> = spectrum.eigenvalues.into_iter().take_while(|&e| e < 0.0).collect();
        for (k, eps) in below.into_iter().enumerate() {
            table.push(vec![
                "matrix".into(),
                k.into(),
                show(eps * m.energy_unit()).into(),
                Cell::Empty,
            ]);
        }
    }
    for &e in &energies {
        let delta = morse_phase_shift(&m, e)?.delta;
        table.push(vec!["scattering".into(), Cell::Empty, show(e).into(), delta.into()]);
    }
    Ok(Report::new(table, basis_size.unwrap_or(0)))
}

#[derive(Debug, Clone, Args)]
pub struct WavefunctionCmd {
    /// System whose bound states are sampled.
    #[arg(long, value_enum)]
    pub system: Option<System>,
    #[command(flatten)]
    pub well: WellArgs,
    #[command(flatten)]
    pub scarf: ScarfArgs,
    /// Comma-separated level indices.
    #[arg(long, value_delimiter = ',')]
    pub levels: Option<Vec<usize>>,
    /// Grid points across the well, walls included.
    #[arg(long)]
    pub points: Option<usize>,
    /// Basis size N.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub length: Option<f64>,
}

pub fn wavefunction(a: &WavefunctionCmd, r: &mut Resolver, units: Units) -> Result<Report, CliError> {
    let system = r.value("system", a.system, System::Well)?;
    let length = r.value("length", a.length, 1.0)?;
    let params = match system {
        System::Well => {
            reject_unused(
                system,
                &[
                    ("v0", a.scarf.v0.is_some()),
                    ("v-plus", a.scarf.v_plus.is_some()),
                    ("v-minus", a.scarf.v_minus.is_some()),
                ],
            )?;
            SystemParams::Well(a.well.resolve(r, length)?)
        }
        System::Scarf => {
            reject_unused(system, &[("gamma", a.well.given())])?;
            SystemParams::Scarf(a.scarf.resolve(r, length)?)
        }
        System::Morse => {
            return Err(CliError::Parameter(
                "wavefunction supports the well and scarf systems".into(),
            ))
        }
    };
    let levels = r.list("levels", a.levels.clone(), vec![0, 1, 2, 3])?;
    let points = r.value("points", a.points, 401)?;
    let n = r.value("n", a.n, 50)?;
    let matrix = match &params {
        SystemParams::Well(w) => well_matrix(w, n)?,
        SystemParams::Scarf(p) => scarf_matrix(p, n)?,
        _ => unreachable!(),
    };
    if let Some(&k) = levels.iter().find(|&&k| k >= n) {
        return Err(CliError::Parameter(format!(
            "level {k} outside a spectrum of {n} levels"
        )));
    }
    let spectrum = eigendecompose(&matrix, true)?;
    let vectors = spectrum.eigenvectors.expect("vectors requested");
    let grid = uniform_grid(-length / 2.0, length / 2.0, points)?;
    let states = levels
        .iter()
        .map(|&k| {
            let coeffs = ExpansionCoefficients::eigenvector(vectors[k].clone())?;
            Ok(reconstruct_bound(&params, &coeffs, &grid)?)
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    // dimensionless: x in units of L and ψ normalized over that coordinate
    let (x_scale, psi_scale) = match units {
        Units::Dimensionless => (1.0 / length, length.sqrt()),
        Units::Physical => (1.0, 1.0),
    };
    let mut table = Table::new(std::iter::once("x".to_string()).chain(levels.iter().map(|k| format!("psi_{k}"))));
    for (i, &x) in grid.iter().enumerate() {
        let mut row = vec![Cell::from(x * x_scale)];
        row.extend(states.iter().map(|s| Cell::from(s.values()[i] * psi_scale)));
        table.push(row);
    }
    Ok(Report::new(table, n))
}

#[derive(Debug, Clone, Args)]
pub struct SweepCmd {
    /// System to sweep.
    #[arg(long, value_enum)]
    pub system: Option<System>,
    /// Parameter varied: gamma (well) or v0, v-plus, v-minus (scarf).
    #[arg(long)]
    pub parameter: Option<String>,
    /// Comma-separated parameter values.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "range")]
    pub values: Option<Vec<f64>>,
    /// Evenly spaced values start:stop:count, endpoints included.
    #[arg(long, allow_hyphen_values = true)]
    pub range: Option<Range>,
    #[command(flatten)]
    pub well: WellArgs,
    #[command(flatten)]
    pub scarf: ScarfArgs,
    #[command(flatten)]
    pub spectrum: SpectrumArgs,
}

pub fn sweep(a: &SweepCmd, r: &mut Resolver, units: Units) -> Result<Report, CliError> {
    let system = r.value("system", a.system, System::Well)?;
    let length = r.value("length", a.spectrum.length, PI)?;
    let n = r.value("n", a.spectrum.n, 50)?;
    let levels = r.value("levels", a.spectrum.levels, TABLE_LEVELS)?;
    let default_parameter = if system == System::Scarf { "v0" } else { "gamma" };
    let parameter = r.value("parameter", a.parameter.clone(), default_parameter.to_string())?;
    let base = match system {
        System::Well => {
            reject_unused(
                system,
                &[
                    ("v0", a.scarf.v0.is_some()),
                    ("v-plus", a.scarf.v_plus.is_some()),
                    ("v-minus", a.scarf.v_minus.is_some()),
                ],
            )?;
            require(
                parameter == "gamma",
                format!("well sweeps vary `gamma`, not `{parameter}`"),
            )?;
            Vec::new()
        }
        System::Scarf => {
            reject_unused(system, &[("gamma", a.well.given())])?;
            require(
                SCARF_KEYS.contains(&parameter.as_str()),
                format!("scarf sweeps vary v0, v-plus or v-minus, not `{parameter}`"),
            )?;
            let p = a.scarf.resolve(r, length)?;
            vec![p.u0(), p.v_plus() / p.energy_unit(), p.v_minus() / p.energy_unit()]
        }
        System::Morse => return Err(CliError::Parameter("sweep supports the well and scarf systems".into())),
    };
    let default_values = if system == System::Well {
        TABLE2_GAMMAS.to_vec()
    } else {
        Vec::new()
    };
    let range = r.optional("range", a.range)?;
    let listed = r.optional_list("values", a.values.clone())?;
    let values = match (range, listed) {
        (Some(_), Some(_)) => return Err(CliError::Parameter("values and range are mutually exclusive".into())),
        (Some(rg), None) => rg.values(),
        (None, Some(v)) => v,
        (None, None) => default_values,
    };

    let points: Vec<Result<Vec<f64>, CliError>> = values
        .par_iter()
        .map(|&v| {
            let (matrix, unit) = match system {
                System::Well => {
                    let w = WellParams::from_gamma(v, length)?;
                    (well_matrix(&w, n)?, w.energy_unit())
                }
                _ => {
                    let mut u = [base[0], base[1], base[2]];
                    let slot = SCARF_KEYS.iter().position(|s| *s == parameter).unwrap_or(0);
                    u[slot] = v;
                    let p = ScarfParams::from_reduced(u[0], u[1], u[2], length)?;
                    (scarf_matrix(&p, n)?, p.energy_unit())
                }
            };
            Ok(rescale(&levels_of(&matrix, levels)?, units, unit))
        })
        .collect();

    let mut table = Table::new([parameter.as_str(), "level", "energy"]);
    for (&v, eps) in values.iter().zip(points) {
        for (k, e) in eps?.into_iter().enumerate() {
            table.push(vec![v.into(), k.into(), e.into()]);
        }
    }
    Ok(Report::new(table, n))
}

#[derive(Debug, Clone, Args)]
pub struct OracleCmd {
    /// System checked against the finite-difference solver.
    #[arg(long, value_enum)]
    pub system: Option<System>,
    #[command(flatten)]
    pub well: WellArgs,
    #[command(flatten)]
    pub scarf: ScarfArgs,
    #[command(flatten)]
    pub morse: MorseArgs,
    /// Number of lowest levels compared.
    #[arg(long)]
    pub levels: Option<usize>,
    /// Finite-difference grid points (odd, at least 51).
    #[arg(long)]
    pub points: Option<usize>,
    /// Basis size N of the tridiagonal matrix.
    #[arg(long)]
    pub n: Option<usize>,
    /// Largest accepted |Δε| in units of λ²/2; exceeding it exits with status 3.
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long)]
    pub length: Option<f64>,
}

pub fn oracle_check(a: &OracleCmd, r: &mut Resolver, units: Units) -> Result<Report, CliError> {
    let system = r.value("system", a.system, System::Well)?;
    let levels = r.value("levels", a.levels, 6)?;
    let tolerance = r.value("tolerance", a.tolerance, 1e-5)?;
    let (tra, prob, unit, basis_size) = match system {
        System::Well => {
            reject_unused(
                system,
                &[
                    ("scarf parameters", a.scarf.given()),
                    ("morse parameters", a.morse.given()),
                ],
            )?;
            let length = r.value("length", a.length, PI)?;
            let w = a.well.resolve(r, length)?;
            let n = r.value("n", a.n, 50)?;
            let points = r.value("points", a.points, 4001)?;
            let tra = levels_of(&well_matrix(&w, n)?, levels)?;
            let prob = FDProblem::sample(
                |x| w.potential(x),
                -length / 2.0,
                length / 2.0,
                points,
                Boundary::DirichletBoth,
            )?;
            (tra, prob, w.energy_unit(), n)
        }
        System::Scarf => {
            reject_unused(
                system,
                &[("gamma", a.well.given()), ("morse parameters", a.morse.given())],
            )?;
            let length = r.value("length", a.length, PI)?;
            let p = a.scarf.resolve(r, length)?;
            let n = r.value("n", a.n, 100)?;
            let points = r.value("points", a.points, 8001)?;
            let tra = levels_of(&scarf_matrix(&p, n)?, levels)?;
            // stay a few steps off the singular walls
            let h = length / (points as f64 + 9.0);
            let edge = length / 2.0 - 5.0 * h;
            let prob = FDProblem::sample(|x| p.potential(x), -edge, edge, points, Boundary::DirichletBoth)?;
            (tra, prob, p.energy_unit(), n)
        }
        System::Morse => {
            reject_unused(
                system,
                &[("gamma", a.well.given()), ("scarf parameters", a.scarf.given())],
            )?;
            if a.length.is_some() || a.n.is_some() {
                return Err(CliError::Parameter(
                    "--length and --n do not apply to system `morse`".into(),
                ));
            }
            let m = a.morse.resolve(r)?;
            let points = r.value("points", a.points, 4001)?;
            let bound = morse_bound_energies(&m).eigenvalues;
            let tra: Vec<f64> = bound.iter().take(levels).map(|e| e / m.energy_unit()).collect();
            let lambda = m.lambda();
            let prob = FDProblem::sample(
                |x| m.potential(x),
                -25.0 / lambda,
                6.0 / lambda,
                points,
                Boundary::DirichletLeftDecayRight,
            )?;
            (tra, prob, m.energy_unit(), 0)
        }
    };
    let fd = if tra.is_empty() {
        Vec::new()
    } else {
        fd_spectrum(&prob, tra.len())?.extrapolated
    };

    let mut table = Table::new(["k", "tra", "fd", "abs_diff"]);
    let mut worst: f64 = 0.0;
    for (k, (&t, &f)) in tra.iter().zip(&fd).enumerate() {
        let f = f / unit;
        worst = worst.max((t - f).abs());
        let [t, f] = match units {
            Units::Dimensionless => [t, f],
            Units::Physical => [t * unit, f * unit],
        };
        table.push(vec![k.into(), t.into(), f.into(), (t - f).abs().into()]);
    }
    let mut report = Report::new(table, basis_size);
    if worst > tolerance {
        report.failure = Some(CliError::Mismatch(format!(
            "max |Δε| = {worst:e} exceeds tolerance {tolerance:e}"
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows_parse() {
        assert_eq!("60:200".parse::<Window>().unwrap(), Window(60, 200));
        assert!("60".parse::<Window>().is_err());
        assert_eq!(Window(3, 9).to_string(), "3:9");
    }

    #[test]
    fn enums_round_trip_through_text() {
        for u in [Units::Dimensionless, Units::Physical] {
            assert_eq!(u.to_string().parse::<Units>().unwrap(), u);
        }
        assert_eq!("SCARF".parse::<System>().unwrap(), System::Scarf);
        assert!("json5".parse::<Format>().is_err());
    }
}
