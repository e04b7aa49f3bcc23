//! Versioned JSON configuration schemas. Unknown keys are rejected; every
//! report embeds the resolved configuration it ran with.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use solwave::solver::Nonlinearity;
use solwave::symbols::{HomogeneousTerm, PolyhomogeneousSymbol};
use solwave::GridSpec;

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

fn default_schema_version() -> u32 {
    SCHEMA_VERSION
}

pub fn check_schema(version: u32) -> Result<(), CliError> {
    if version != SCHEMA_VERSION {
        return Err(CliError::Config(format!(
            "unsupported schema_version {version}; this build reads version {SCHEMA_VERSION}"
        )));
    }
    Ok(())
}

/// A complex number written as a plain number or an `[re, im]` pair.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexLit {
    Real(f64),
    Pair([f64; 2]),
}

impl From<ComplexLit> for Complex64 {
    fn from(v: ComplexLit) -> Self {
        match v {
            ComplexLit::Real(re) => Complex64::new(re, 0.0),
            ComplexLit::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

impl Default for ComplexLit {
    fn default() -> Self {
        ComplexLit::Real(0.0)
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default = "one")]
    pub dimension: usize,
    pub half_length: f64,
    pub points_per_dim: usize,
}

fn one() -> usize {
    1
}

impl GridConfig {
    pub fn build(&self) -> Result<GridSpec, CliError> {
        GridSpec::new(self.dimension, self.half_length, self.points_per_dim)
            .map_err(|e| CliError::Config(e.to_string()))
    }
}

/// One homogeneous term: line profiles carry `c_plus`/`c_minus`, radial
/// profiles a single `radial_coeff`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermConfig {
    pub order: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_plus: Option<ComplexLit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_minus: Option<ComplexLit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radial_coeff: Option<ComplexLit>,
}

impl TermConfig {
    fn build(&self) -> Result<HomogeneousTerm, CliError> {
        match (self.c_plus, self.c_minus, self.radial_coeff) {
            (Some(p), Some(m), None) => HomogeneousTerm::line(self.order, p.into(), m.into())
                .map_err(|e| CliError::Config(e.to_string())),
            (None, None, Some(a)) => HomogeneousTerm::radial(self.order, a.into())
                .map_err(|e| CliError::Config(e.to_string())),
            _ => Err(CliError::Config(format!(
                "term of order {} must carry either c_plus and c_minus, or radial_coeff",
                self.order
            ))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolConfig {
    pub p0: ComplexLit,
    pub terms: Vec<TermConfig>,
}

impl SymbolConfig {
    pub fn build(&self, dimension: usize) -> Result<PolyhomogeneousSymbol, CliError> {
        let terms = self
            .terms
            .iter()
            .map(|t| t.build())
            .collect::<Result<Vec<_>, _>>()?;
        PolyhomogeneousSymbol::new(self.p0.into(), terms, dimension)
            .map_err(|e| CliError::Config(e.to_string()))
    }
}

/// Degree → coefficient map, degrees as JSON object keys.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NonlinearityConfig(pub BTreeMap<String, ComplexLit>);

impl NonlinearityConfig {
    pub fn build(&self) -> Result<Nonlinearity, CliError> {
        let mut m = BTreeMap::new();
        for (k, &v) in &self.0 {
            let degree: u32 = k
                .parse()
                .map_err(|_| CliError::Config(format!("nonlinearity degree `{k}` is not an integer")))?;
            m.insert(degree, v.into());
        }
        Nonlinearity::new(m).map_err(|e| CliError::Config(e.to_string()))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, tag = "type", rename_all = "kebab-case")]
pub enum InitialGuessConfig {
    Gaussian { amplitude: f64, width: f64 },
    Constant { value: f64 },
}

impl Default for InitialGuessConfig {
    fn default() -> Self {
        InitialGuessConfig::Gaussian {
            amplitude: 1.0,
            width: 5.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodConfig {
    Petviashvili,
    FixedPoint,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyExactConfig {
    #[serde(default = "default_schema_version")]
    pub schema_version: u32,
    #[serde(default = "default_cases")]
    pub cases: Vec<String>,
    #[serde(default = "default_reference_grid")]
    pub grid: GridConfig,
    #[serde(default = "default_residual_tolerance")]
    pub residual_tolerance: f64,
}

fn default_cases() -> Vec<String> {
    vec!["benjamin-ono".to_string(), "cubic".to_string()]
}

fn default_reference_grid() -> GridConfig {
    GridConfig {
        dimension: 1,
        half_length: 100.0,
        points_per_dim: 1 << 14,
    }
}

fn default_residual_tolerance() -> f64 {
    5e-3
}

impl Default for VerifyExactConfig {
    fn default() -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            cases: default_cases(),
            grid: default_reference_grid(),
            residual_tolerance: default_residual_tolerance(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveCommandConfig {
    #[serde(default = "default_schema_version")]
    pub schema_version: u32,
    pub grid: GridConfig,
    pub symbol: SymbolConfig,
    pub nonlinearity: NonlinearityConfig,
    #[serde(default = "default_method")]
    pub method: MethodConfig,
    #[serde(default)]
    pub initial_guess: InitialGuessConfig,
    #[serde(default = "default_max_iterations")]
    pub max_iterations: usize,
    #[serde(default = "default_solver_tolerance")]
    pub residual_tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub petviashvili_exponent: Option<f64>,
    #[serde(default = "default_damping")]
    pub damping: f64,
    /// Window for the tail-exponent fit of the solved profile; defaults to
    /// `(10, 0.4·L)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_window: Option<(f64, f64)>,
}

fn default_method() -> MethodConfig {
    MethodConfig::Petviashvili
}

fn default_max_iterations() -> usize {
    200
}

fn default_solver_tolerance() -> f64 {
    1e-10
}

fn default_damping() -> f64 {
    1.0
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecayReportConfig {
    #[serde(default = "default_schema_version")]
    pub schema_version: u32,
    #[serde(default = "default_case")]
    pub case: String,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default)]
    pub s: f64,
    #[serde(default = "default_max_order")]
    pub max_order: usize,
    #[serde(default = "default_lengths")]
    pub lengths: Vec<f64>,
    #[serde(default = "default_points_for_first")]
    pub points_for_first: usize,
    #[serde(default = "default_tail_window")]
    pub tail_window: (f64, f64),
    #[serde(default = "default_slope_tolerance")]
    pub slope_tolerance: f64,
}

fn default_case() -> String {
    "benjamin-ono".to_string()
}

fn default_epsilon() -> f64 {
    0.25
}

fn default_max_order() -> usize {
    2
}

fn default_lengths() -> Vec<f64> {
    vec![50.0, 100.0, 200.0, 400.0]
}

fn default_points_for_first() -> usize {
    1 << 13
}

fn default_tail_window() -> (f64, f64) {
    (10.0, 40.0)
}

fn default_slope_tolerance() -> f64 {
    0.1
}

impl Default for DecayReportConfig {
    fn default() -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            case: default_case(),
            epsilon: default_epsilon(),
            s: 0.0,
            max_order: default_max_order(),
            lengths: default_lengths(),
            points_for_first: default_points_for_first(),
            tail_window: default_tail_window(),
            slope_tolerance: default_slope_tolerance(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommutatorCheckConfig {
    #[serde(default = "default_schema_version")]
    pub schema_version: u32,
    #[serde(default = "default_commutator_grid")]
    pub grid: GridConfig,
    /// Carrier frequency of the modulated Gaussian test family; keeps the
    /// data spectrally clear of the symbols' singular frequency.
    #[serde(default = "default_carrier")]
    pub carrier: f64,
    #[serde(default = "default_identity_tolerance")]
    pub identity_tolerance: f64,
    #[serde(default = "default_polynomial_tolerance")]
    pub polynomial_tolerance: f64,
    /// Modest box for the polynomial specializations, where spatial and
    /// frequency weights amplify roundoff.
    #[serde(default = "default_polynomial_grid")]
    pub polynomial_grid: GridConfig,
    #[serde(default = "default_probe_grid")]
    pub probe_grid: GridConfig,
    #[serde(default = "default_ratio_bound")]
    pub ratio_bound: f64,
}

fn default_polynomial_grid() -> GridConfig {
    GridConfig {
        dimension: 1,
        half_length: 40.0,
        points_per_dim: 1 << 10,
    }
}

fn default_commutator_grid() -> GridConfig {
    GridConfig {
        dimension: 1,
        half_length: 100.0,
        points_per_dim: 1 << 13,
    }
}

fn default_carrier() -> f64 {
    8.0
}

fn default_identity_tolerance() -> f64 {
    1e-6
}

fn default_polynomial_tolerance() -> f64 {
    1e-10
}

fn default_probe_grid() -> GridConfig {
    GridConfig {
        dimension: 1,
        half_length: 512.0,
        points_per_dim: 1 << 12,
    }
}

fn default_ratio_bound() -> f64 {
    10.0
}

impl Default for CommutatorCheckConfig {
    fn default() -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            grid: default_commutator_grid(),
            carrier: default_carrier(),
            identity_tolerance: default_identity_tolerance(),
            polynomial_tolerance: default_polynomial_tolerance(),
            polynomial_grid: default_polynomial_grid(),
            probe_grid: default_probe_grid(),
            ratio_bound: default_ratio_bound(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BesselCheckConfig {
    #[serde(default = "default_schema_version")]
    pub schema_version: u32,
    #[serde(default = "default_x_min")]
    pub x_min: f64,
    #[serde(default = "default_x_max")]
    pub x_max: f64,
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Check orders up to this odd numerator (inclusive).
    #[serde(default = "default_max_numerator")]
    pub max_numerator: i64,
    #[serde(default = "default_bessel_tolerance")]
    pub tolerance: f64,
}

fn default_x_min() -> f64 {
    0.1
}

fn default_x_max() -> f64 {
    20.0
}

fn default_samples() -> usize {
    101
}

fn default_max_numerator() -> i64 {
    9
}

fn default_bessel_tolerance() -> f64 {
    1e-12
}

impl Default for BesselCheckConfig {
    fn default() -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            x_min: default_x_min(),
            x_max: default_x_max(),
            samples: default_samples(),
            max_numerator: default_max_numerator(),
            tolerance: default_bessel_tolerance(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipticityConfig {
    #[serde(default = "default_schema_version")]
    pub schema_version: u32,
    #[serde(default = "one")]
    pub dimension: usize,
    pub symbol: SymbolConfig,
    #[serde(default = "default_ellipticity_tolerance")]
    pub tolerance: f64,
}

fn default_ellipticity_tolerance() -> f64 {
    solwave::symbols::DEFAULT_ELLIPTICITY_TOLERANCE
}

/// Load a config file, or fall back to defaults when no path was given.
pub fn load_or_default<T: serde::de::DeserializeOwned + Default>(
    path: Option<&std::path::Path>,
) -> Result<T, CliError> {
    match path {
        None => Ok(T::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))
        }
    }
}

/// Load a config file that has no default (the solve command).
pub fn load_required<T: serde::de::DeserializeOwned>(
    path: Option<&std::path::Path>,
    command: &str,
) -> Result<T, CliError> {
    let p = path.ok_or_else(|| {
        CliError::Config(format!("the {command} command requires --config <path>"))
    })?;
    let text = std::fs::read_to_string(p)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", p.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))
}
