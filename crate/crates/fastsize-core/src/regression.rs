//! Regressions over the bundled historical aircraft and engine tables, used
//! to fill design parameters the user left blank.
//!
//! Both modes work in log10 space of inputs and output: aircraft scaling
//! relations are multiplicative. `power_law` is an exact ordinary
//! least-squares fit; `gaussian_process` uses a squared-exponential kernel
//! with per-input length scales and a prior mean equal to the training-output
//! mean. Hyperparameters are fixed by a data-driven heuristic rather than
//! optimized, which keeps every prediction deterministic.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::Cholesky;
use crate::model::AircraftSpec;

/// Ratio of heuristic noise variance to signal variance.
const NOISE_TO_SIGNAL: f64 = 1e-6;
/// Diagonal jitter ladder applied when the kernel system fails to factor.
const JITTER_LADDER: [f64; 3] = [1e-10, 1e-9, 1e-8];
/// Minimum usable rows for any fit.
const MIN_ROWS: usize = 3;

/// Column metadata: snake_case name carrying a unit suffix, plus the unit and
/// a short description split out for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnMeta {
    pub name: String,
    pub unit: String,
    pub description: String,
}

/// One table of historical records. A cell is `None` when the source data
/// had no value.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<ColumnMeta>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    pub fn column_index(&self, column: &str) -> Option<usize> {
        self.columns.iter().position(|meta| meta.name == column)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Derive a new table with an extra `numerator / denominator` column,
    /// missing wherever either operand is missing or the denominator is zero.
    pub fn with_ratio_column(
        &self,
        name: &str,
        numerator: &str,
        denominator: &str,
    ) -> Result<Table, RegressionError> {
        let num = self
            .column_index(numerator)
            .ok_or_else(|| RegressionError::UnknownColumn {
                table: self.name.clone(),
                column: numerator.to_string(),
            })?;
        let den = self
            .column_index(denominator)
            .ok_or_else(|| RegressionError::UnknownColumn {
                table: self.name.clone(),
                column: denominator.to_string(),
            })?;
        let mut derived = self.clone();
        derived.columns.push(ColumnMeta {
            name: name.to_string(),
            unit: String::new(),
            description: format!("{numerator} / {denominator}"),
        });
        for row in &mut derived.rows {
            let value = match (row[num], row[den]) {
                (Some(n), Some(d)) if d != 0.0 => Some(n / d),
                _ => None,
            };
            row.push(value);
        }
        Ok(derived)
    }
}

/// The two tables the engine regresses over.
#[derive(Debug, Clone, PartialEq)]
pub struct HistoricalDatabase {
    pub aircraft: Table,
    pub engines: Table,
}

/// Regression flavor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegressionMode {
    PowerLaw,
    GaussianProcess,
}

/// Squared-exponential kernel hyperparameters, all in log10 space.
#[derive(Debug, Clone, PartialEq)]
pub struct GpHyperParams {
    /// Per-input length scales, all > 0.
    pub length_scales: Vec<f64>,
    /// Signal variance σ_f² > 0.
    pub signal_variance: f64,
    /// Noise variance σ_n² ≥ 0.
    pub noise_variance: f64,
}

#[derive(Debug, Clone)]
struct GpModel {
    train_inputs_log: Vec<Vec<f64>>,
    params: GpHyperParams,
    prior_mean_log: f64,
    alpha: Vec<f64>,
    factor: Cholesky,
}

#[derive(Debug, Clone)]
enum ModelKind {
    PowerLaw { intercept: f64, exponents: Vec<f64> },
    GaussianProcess(GpModel),
}

/// A fitted regression from named input columns to one output column.
#[derive(Debug, Clone)]
pub struct RegressionModel {
    pub input_columns: Vec<String>,
    pub output_column: String,
    pub rows_used: usize,
    kind: ModelKind,
}

/// Prediction in original (linear) units. `std` is zero for power-law models
/// and a first-order (delta rule) transform of the posterior deviation for
/// Gaussian processes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub mean: f64,
    pub std: f64,
}

/// One field filled by [`fill_unknowns`].
#[derive(Debug, Clone, PartialEq)]
pub struct FillRecord {
    pub field: String,
    pub value: f64,
    pub std: f64,
    pub rows_used: usize,
    pub regression: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RegressionError {
    UnknownColumn { table: String, column: String },
    InsufficientData { usable: usize, required: usize },
    /// The normal equations or kernel system could not be factored.
    SingularSystem,
    NonPositiveInput { column: String, value: f64 },
    InvalidHyperParams { reason: String },
    NoRegressionAvailable { field: String },
    ImplausibleFill { field: String, value: f64 },
    DimensionMismatch { expected: usize, actual: usize },
}

impl fmt::Display for RegressionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegressionError::UnknownColumn { table, column } => {
                write!(f, "table '{table}' has no column '{column}'")
            }
            RegressionError::InsufficientData { usable, required } => write!(
                f,
                "insufficient data: {usable} usable rows, need at least {required}"
            ),
            RegressionError::SingularSystem => {
                write!(f, "singular system: inputs are collinear or degenerate")
            }
            RegressionError::NonPositiveInput { column, value } => {
                write!(f, "input '{column}' must be positive, got {value}")
            }
            RegressionError::InvalidHyperParams { reason } => {
                write!(f, "invalid hyperparameters: {reason}")
            }
            RegressionError::NoRegressionAvailable { field } => {
                write!(f, "no regression available for {field}")
            }
            RegressionError::ImplausibleFill { field, value } => {
                write!(f, "regressed {field} = {value} is outside its plausible range")
            }
            RegressionError::DimensionMismatch { expected, actual } => {
                write!(f, "expected {expected} input values, got {actual}")
            }
        }
    }
}

impl core::error::Error for RegressionError {}

/// Collect rows where every named column is present and strictly positive.
fn usable_rows(
    table: &Table,
    inputs: &[&str],
    output: &str,
) -> Result<(Vec<Vec<f64>>, Vec<f64>), RegressionError> {
    let mut input_indices = Vec::with_capacity(inputs.len());
    for input in inputs {
        input_indices.push(table.column_index(input).ok_or_else(|| {
            RegressionError::UnknownColumn {
                table: table.name.clone(),
                column: (*input).to_string(),
            }
        })?);
    }
    let output_index =
        table
            .column_index(output)
            .ok_or_else(|| RegressionError::UnknownColumn {
                table: table.name.clone(),
                column: output.to_string(),
            })?;

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    'rows: for row in &table.rows {
        let mut x = Vec::with_capacity(inputs.len());
        for &index in &input_indices {
            match row[index] {
                Some(value) if value > 0.0 => x.push(libm::log10(value)),
                _ => continue 'rows,
            }
        }
        match row[output_index] {
            Some(value) if value > 0.0 => {
                xs.push(x);
                ys.push(libm::log10(value));
            }
            _ => continue 'rows,
        }
    }
    Ok((xs, ys))
}

/// Data-driven hyperparameter heuristic: per-dimension length scale equal to
/// the standard deviation of the log inputs, signal variance equal to the
/// variance of the log outputs, noise pegged at `NOISE_TO_SIGNAL` of the
/// signal. Degenerate spreads fall back to 1.0 so single-point and
/// constant-input fits stay well-posed.
pub fn heuristic_hyperparams(inputs_log: &[Vec<f64>], outputs_log: &[f64]) -> GpHyperParams {
    let n = outputs_log.len() as f64;
    let dims = inputs_log.first().map_or(0, Vec::len);

    let mut length_scales = Vec::with_capacity(dims);
    for dim in 0..dims {
        let mean = inputs_log.iter().map(|x| x[dim]).sum::<f64>() / n;
        let variance = inputs_log
            .iter()
            .map(|x| (x[dim] - mean) * (x[dim] - mean))
            .sum::<f64>()
            / n;
        let std = libm::sqrt(variance);
        length_scales.push(if std > 1e-12 { std } else { 1.0 });
    }

    let mean = outputs_log.iter().sum::<f64>() / n;
    let variance = outputs_log.iter().map(|y| (y - mean) * (y - mean)).sum::<f64>() / n;
    let signal_variance = if variance > 1e-12 { variance } else { 1.0 };

    GpHyperParams {
        length_scales,
        signal_variance,
        noise_variance: NOISE_TO_SIGNAL * signal_variance,
    }
}

fn kernel(params: &GpHyperParams, a: &[f64], b: &[f64]) -> f64 {
    let mut exponent = 0.0;
    for ((&ai, &bi), &scale) in a.iter().zip(b).zip(&params.length_scales) {
        let delta = (ai - bi) / scale;
        exponent += delta * delta;
    }
    params.signal_variance * libm::exp(-0.5 * exponent)
}

fn validate_hyperparams(params: &GpHyperParams, dims: usize) -> Result<(), RegressionError> {
    if params.length_scales.len() != dims {
        return Err(RegressionError::InvalidHyperParams {
            reason: format!(
                "{} length scales for {dims} inputs",
                params.length_scales.len()
            ),
        });
    }
    if params.length_scales.iter().any(|&scale| !(scale > 0.0)) {
        return Err(RegressionError::InvalidHyperParams {
            reason: "length scales must be positive".to_string(),
        });
    }
    if !(params.signal_variance > 0.0) {
        return Err(RegressionError::InvalidHyperParams {
            reason: "signal variance must be positive".to_string(),
        });
    }
    if !(params.noise_variance >= 0.0) {
        return Err(RegressionError::InvalidHyperParams {
            reason: "noise variance must be non-negative".to_string(),
        });
    }
    Ok(())
}

fn fit_gp(
    inputs_log: Vec<Vec<f64>>,
    outputs_log: &[f64],
    params: GpHyperParams,
) -> Result<GpModel, RegressionError> {
    let n = outputs_log.len();
    validate_hyperparams(&params, inputs_log[0].len())?;

    let prior_mean_log = outputs_log.iter().sum::<f64>() / n as f64;

    let mut gram = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            gram[i * n + j] = kernel(&params, &inputs_log[i], &inputs_log[j]);
            if i == j {
                gram[i * n + j] += params.noise_variance;
            }
        }
    }

    let factor = Cholesky::factor(&gram, n).or_else(|| {
        JITTER_LADDER.iter().find_map(|&jitter| {
            let mut jittered = gram.clone();
            for diag in 0..n {
                jittered[diag * n + diag] += jitter;
            }
            Cholesky::factor(&jittered, n)
        })
    });
    let factor = factor.ok_or(RegressionError::SingularSystem)?;

    let centered: Vec<f64> = outputs_log.iter().map(|y| y - prior_mean_log).collect();
    let alpha = factor.solve(&centered);

    Ok(GpModel {
        train_inputs_log: inputs_log,
        params,
        prior_mean_log,
        alpha,
        factor,
    })
}

fn fit_power_law(
    inputs_log: &[Vec<f64>],
    outputs_log: &[f64],
) -> Result<ModelKind, RegressionError> {
    let dims = inputs_log[0].len();
    let cols = dims + 1;

    // Normal equations for [1, log10 x_1, ..., log10 x_d].
    let mut xtx = vec![0.0; cols * cols];
    let mut xty = vec![0.0; cols];
    for (x, &y) in inputs_log.iter().zip(outputs_log) {
        let mut row = Vec::with_capacity(cols);
        row.push(1.0);
        row.extend_from_slice(x);
        for i in 0..cols {
            for j in 0..cols {
                xtx[i * cols + j] += row[i] * row[j];
            }
            xty[i] += row[i] * y;
        }
    }

    let factor = Cholesky::factor(&xtx, cols).ok_or(RegressionError::SingularSystem)?;
    let (low, high) = factor.diagonal_range();
    if low < 1e-7 * high {
        return Err(RegressionError::SingularSystem);
    }
    let beta = factor.solve(&xty);
    Ok(ModelKind::PowerLaw {
        intercept: beta[0],
        exponents: beta[1..].to_vec(),
    })
}

/// Fit a regression from `inputs` to `output` over `table`, using the
/// heuristic hyperparameters for the Gaussian process.
pub fn fit(
    table: &Table,
    inputs: &[&str],
    output: &str,
    mode: RegressionMode,
) -> Result<RegressionModel, RegressionError> {
    let (xs, ys) = usable_rows(table, inputs, output)?;
    if xs.len() < MIN_ROWS {
        return Err(RegressionError::InsufficientData {
            usable: xs.len(),
            required: MIN_ROWS,
        });
    }
    let params = heuristic_hyperparams(&xs, &ys);
    fit_prepared(table.name.clone(), inputs, output, xs, ys, mode, params)
}

/// Fit a Gaussian process with caller-supplied hyperparameters. Accepts any
/// row count of at least one; intended for diagnostics and tests.
pub fn fit_gaussian_process_with(
    table: &Table,
    inputs: &[&str],
    output: &str,
    params: GpHyperParams,
) -> Result<RegressionModel, RegressionError> {
    let (xs, ys) = usable_rows(table, inputs, output)?;
    if xs.is_empty() {
        return Err(RegressionError::InsufficientData {
            usable: 0,
            required: 1,
        });
    }
    fit_prepared(
        table.name.clone(),
        inputs,
        output,
        xs,
        ys,
        RegressionMode::GaussianProcess,
        params,
    )
}

fn fit_prepared(
    _table: String,
    inputs: &[&str],
    output: &str,
    xs: Vec<Vec<f64>>,
    ys: Vec<f64>,
    mode: RegressionMode,
    params: GpHyperParams,
) -> Result<RegressionModel, RegressionError> {
    let rows_used = xs.len();
    let kind = match mode {
        RegressionMode::PowerLaw => fit_power_law(&xs, &ys)?,
        RegressionMode::GaussianProcess => ModelKind::GaussianProcess(fit_gp(xs, &ys, params)?),
    };
    Ok(RegressionModel {
        input_columns: inputs.iter().map(|name| name.to_string()).collect(),
        output_column: output.to_string(),
        rows_used,
        kind,
    })
}

impl RegressionModel {
    /// Predict at `x` (original linear units). All inputs must be positive.
    pub fn predict(&self, x: &[f64]) -> Result<Prediction, RegressionError> {
        if x.len() != self.input_columns.len() {
            return Err(RegressionError::DimensionMismatch {
                expected: self.input_columns.len(),
                actual: x.len(),
            });
        }
        let mut x_log = Vec::with_capacity(x.len());
        for (value, column) in x.iter().zip(&self.input_columns) {
            if !(*value > 0.0) || !value.is_finite() {
                return Err(RegressionError::NonPositiveInput {
                    column: column.clone(),
                    value: *value,
                });
            }
            x_log.push(libm::log10(*value));
        }

        match &self.kind {
            ModelKind::PowerLaw {
                intercept,
                exponents,
            } => {
                let mut mean_log = *intercept;
                for (&u, &b) in x_log.iter().zip(exponents) {
                    mean_log += b * u;
                }
                Ok(Prediction {
                    mean: libm::pow(10.0, mean_log),
                    std: 0.0,
                })
            }
            ModelKind::GaussianProcess(gp) => {
                let k_star: Vec<f64> = gp
                    .train_inputs_log
                    .iter()
                    .map(|train| kernel(&gp.params, train, &x_log))
                    .collect();
                let mut mean_log = gp.prior_mean_log;
                for (&k, &a) in k_star.iter().zip(&gp.alpha) {
                    mean_log += k * a;
                }
                let forward = gp.factor.forward(&k_star);
                let explained: f64 = forward.iter().map(|v| v * v).sum();
                let variance_log = (gp.params.signal_variance - explained).max(0.0);

                let mean = libm::pow(10.0, mean_log);
                // Delta rule: Var[10^Y] ≈ (ln 10 · 10^μ)² · Var[Y].
                let std = core::f64::consts::LN_10 * libm::sqrt(variance_log) * mean;
                Ok(Prediction { mean, std })
            }
        }
    }

    /// Power-law coefficients (intercept, exponents) when applicable.
    pub fn power_law_coefficients(&self) -> Option<(f64, &[f64])> {
        match &self.kind {
            ModelKind::PowerLaw {
                intercept,
                exponents,
            } => Some((*intercept, exponents)),
            ModelKind::GaussianProcess(_) => None,
        }
    }
}

/// Named default regression: empty-weight fraction against payload, the
/// payload standing in for the aircraft's MTOW class.
pub fn empty_weight_fraction_model(
    db: &HistoricalDatabase,
) -> Result<RegressionModel, RegressionError> {
    let derived =
        db.aircraft
            .with_ratio_column("empty_weight_fraction", "empty_mass_kg", "mtow_kg")?;
    fit(
        &derived,
        &["payload_kg"],
        "empty_weight_fraction",
        RegressionMode::GaussianProcess,
    )
}

/// Named default regression: engine specific power (W/kg) against rated
/// power, from the engine table.
pub fn engine_specific_power_model(
    db: &HistoricalDatabase,
) -> Result<RegressionModel, RegressionError> {
    let derived =
        db.engines
            .with_ratio_column("specific_power_w_per_kg", "rated_power_w", "dry_mass_kg")?;
    fit(
        &derived,
        &["rated_power_w"],
        "specific_power_w_per_kg",
        RegressionMode::GaussianProcess,
    )
}

/// Fill every to-be-regressed field of `spec` that has a default regression.
/// Fields without one are an error naming the field.
pub fn fill_unknowns(
    spec: &AircraftSpec,
    db: &HistoricalDatabase,
) -> Result<(AircraftSpec, Vec<FillRecord>), RegressionError> {
    let mut completed = spec.clone();
    let mut report = Vec::new();

    for field in spec.missing_fields() {
        match field {
            "empty_weight_fraction" => {
                let model = empty_weight_fraction_model(db)?;
                let prediction = model.predict(&[spec.payload_mass + spec.crew_mass])?;
                if !(prediction.mean > 0.0 && prediction.mean < 1.0) {
                    return Err(RegressionError::ImplausibleFill {
                        field: field.to_string(),
                        value: prediction.mean,
                    });
                }
                completed.empty_weight_fraction = Some(prediction.mean);
                report.push(FillRecord {
                    field: field.to_string(),
                    value: prediction.mean,
                    std: prediction.std,
                    rows_used: model.rows_used,
                    regression: "empty_weight_fraction ~ payload_kg (aircraft table)".to_string(),
                });
            }
            other => {
                return Err(RegressionError::NoRegressionAvailable {
                    field: other.to_string(),
                })
            }
        }
    }

    Ok((completed, report))
}
