//! Declarative batch experiments: configs, sweeps, and tabular records.
//!
//! A run is described by one JSON [`ExperimentConfig`]; every scenario
//! dispatches to the library operations and emits [`SweepRecord`] rows in a
//! canonical (scenario, N, epsilon, metric) order. Stochastic scenarios
//! require an explicit seed and reproduce their numeric fields bit-exactly
//! on rerun; the `wall_ms` column is measured timing and is the one field
//! outside the reproducibility contract.
//!
//! Output formats: CSV with the fixed column order
//! `scenario,n,epsilon,state,metric,exact,reference,ratio,seed,wall_ms`
//! (floats with 15 significant digits) and JSON lines with the same fields.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::disturbance::{
    accuracy_tradeoff_sweep, no_flip_probability, uncertainty_check, AccuracySetting,
};
use crate::ensemble::{
    commutator_norm_closed_form, commutator_residual, frequency_operator_residual, residual_norm,
    sample_many_stream, SymmetricState, DENSE_CAP,
};
use crate::error::Error;
use crate::pointer::{delta_chi_norm, GaussianPointer};
use crate::postselect::{delta_p_exact, interference_profile, PostSelection};
use crate::qudit::{moments_from_probs, probs_from_moments, QuditSpec};
use crate::spin::SpinState;

/// The experiment families exposed by the batch runner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    /// Eigenoperator and frequency-operator residuals over N.
    Residual,
    /// Commutator identity and 2/N norm scaling.
    Commutator,
    /// Entanglement deficit, exact vs first order, both width regimes.
    Entangle,
    /// Post-selected pointer corrections and interference orders.
    Postselect,
    /// No-flip probability against the exponential estimate.
    Disturb,
    /// Accuracy-disturbance trade-off table.
    Sweep,
    /// n-level moment inversion round trip.
    Qudit,
    /// Seeded Born sampling of microscopic frequencies.
    Born,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::Residual => "residual",
            Scenario::Commutator => "commutator",
            Scenario::Entangle => "entangle",
            Scenario::Postselect => "postselect",
            Scenario::Disturb => "disturb",
            Scenario::Sweep => "sweep",
            Scenario::Qudit => "qudit",
            Scenario::Born => "born",
        }
    }
}

/// Sample sizes: an explicit list or a geometric ladder
/// `(start, factor, count)`, the natural spelling for 1/sqrt(N) scaling runs.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CountSpec {
    List(Vec<u64>),
    Geometric { start: u64, factor: f64, count: usize },
}

impl CountSpec {
    fn values(&self) -> Result<Vec<usize>, String> {
        let vals: Vec<usize> = match self {
            CountSpec::List(v) => v.iter().map(|&x| x as usize).collect(),
            CountSpec::Geometric {
                start,
                factor,
                count,
            } => {
                if *count == 0 {
                    return Err("geometric count must be at least 1".into());
                }
                if !(*factor > 0.0) {
                    return Err(format!("geometric factor must be positive, got {factor}"));
                }
                (0..*count)
                    .map(|i| (*start as f64 * factor.powi(i as i32)).round() as usize)
                    .collect()
            }
        };
        if vals.is_empty() {
            return Err("at least one sample size is required".into());
        }
        if let Some(&bad) = vals.iter().find(|&&n| n == 0) {
            return Err(format!("sample sizes must be at least 1, got {bad}"));
        }
        Ok(vals)
    }
}

/// Accuracy values: explicit list or geometric ladder.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FloatSpec {
    List(Vec<f64>),
    Geometric { start: f64, factor: f64, count: usize },
}

impl FloatSpec {
    fn values(&self) -> Result<Vec<f64>, String> {
        let vals: Vec<f64> = match self {
            FloatSpec::List(v) => v.clone(),
            FloatSpec::Geometric {
                start,
                factor,
                count,
            } => {
                if *count == 0 {
                    return Err("geometric count must be at least 1".into());
                }
                (0..*count)
                    .map(|i| start * factor.powi(i as i32))
                    .collect()
            }
        };
        if vals.is_empty() {
            return Err("at least one value is required".into());
        }
        if let Some(&bad) = vals.iter().find(|&&e| !(e > 0.0) || !e.is_finite()) {
            return Err(format!("values must be positive and finite, got {bad}"));
        }
        Ok(vals)
    }
}

/// Initial single-spin state: either `c_plus_sq` or Bloch angles.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StateSpec {
    pub c_plus_sq: Option<f64>,
    pub theta: Option<f64>,
    pub phi: Option<f64>,
}

impl StateSpec {
    fn resolve(&self) -> Result<(SpinState, String), RunError> {
        if self.c_plus_sq.is_some() && (self.theta.is_some() || self.phi.is_some()) {
            return Err(RunError::config(
                "state",
                "give either c_plus_sq or Bloch angles, not both",
            ));
        }
        if let Some(p) = self.c_plus_sq {
            let psi = SpinState::from_prob_plus(p)
                .map_err(|e| RunError::config("state.c_plus_sq", e.to_string()))?;
            return Ok((psi, format!("c_plus_sq={p}")));
        }
        if let Some(theta) = self.theta {
            let phi = self.phi.unwrap_or(0.0);
            return Ok((
                SpinState::rotate_to_axis(theta, phi),
                format!("theta={theta};phi={phi}"),
            ));
        }
        Ok((SpinState::balanced(), "c_plus_sq=0.5".into()))
    }
}

/// Post-selection targets: explicit counts or the keywords `modal`
/// (sector nearest N |c+|^2) and `extreme` (n_plus = N).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SelectionSpec {
    Count(u64),
    Named(String),
}

impl SelectionSpec {
    fn resolve(&self, state: &SymmetricState) -> Result<PostSelection, RunError> {
        let n = state.n();
        let n_plus = match self {
            SelectionSpec::Count(k) => *k as usize,
            SelectionSpec::Named(name) => match name.as_str() {
                "modal" => {
                    let p_hat = (state.mx_expectation() + 1.0) / 2.0;
                    (n as f64 * p_hat).round().clamp(0.0, n as f64) as usize
                }
                "extreme" => n,
                other => {
                    return Err(RunError::config(
                        "n_plus",
                        format!("unknown selection keyword `{other}` (use modal or extreme)"),
                    ))
                }
            },
        };
        PostSelection::new(n_plus, n).map_err(|e| RunError::config("n_plus", e.to_string()))
    }
}

/// Output encodings for record streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl Default for OutputFormat {
    fn default() -> Self {
        OutputFormat::Csv
    }
}

/// One batch experiment. Missing fields take scenario defaults; CLI flags
/// override config fields one for one.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    #[serde(default)]
    pub state: StateSpec,
    #[serde(default)]
    pub n: Option<CountSpec>,
    #[serde(default)]
    pub epsilon: Option<FloatSpec>,
    #[serde(default)]
    pub n_plus: Option<Vec<SelectionSpec>>,
    #[serde(default)]
    pub trials: Option<u64>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub orders: Option<u32>,
    #[serde(default)]
    pub levels: Option<Vec<f64>>,
    #[serde(default)]
    pub probs: Option<Vec<f64>>,
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default)]
    pub out: Option<String>,
}

impl ExperimentConfig {
    pub fn new(scenario: Scenario) -> Self {
        Self {
            scenario,
            state: StateSpec::default(),
            n: None,
            epsilon: None,
            n_plus: None,
            trials: None,
            seed: None,
            orders: None,
            levels: None,
            probs: None,
            format: OutputFormat::default(),
            out: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, RunError> {
        serde_json::from_str(text).map_err(|e| RunError::config("config", e.to_string()))
    }
}

/// One output row of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub scenario: String,
    pub n: u64,
    pub epsilon: Option<f64>,
    pub state: String,
    pub metric: String,
    pub exact: Option<f64>,
    pub reference: Option<f64>,
    pub ratio: Option<f64>,
    pub seed: Option<u64>,
    /// Measured wall time; excluded from the byte-reproducibility contract.
    pub wall_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Failures of a batch run, mapped to CLI exit codes.
#[derive(Debug, Error)]
pub enum RunError {
    #[error("config error at `{field}`: {message}")]
    Config { field: String, message: String },
    /// Single-point runs surface an impossible post-selection directly;
    /// multi-point runs record it as a row-level error entry instead.
    #[error("{0}")]
    ImpossibleSelection(Error),
    #[error("{0}")]
    Internal(#[from] Error),
}

impl RunError {
    fn config(field: &str, message: impl Into<String>) -> Self {
        RunError::Config {
            field: field.into(),
            message: message.into(),
        }
    }
}

/// Execute one config. Deterministic given the seed; rows come back in the
/// canonical (scenario, N, epsilon, metric) order.
pub fn run(config: &ExperimentConfig) -> Result<Vec<SweepRecord>, RunError> {
    let (psi, state_descr) = config.state.resolve()?;
    let ns = match &config.n {
        Some(spec) => spec.values().map_err(|m| RunError::config("n", m))?,
        None => vec![100],
    };
    let epsilons = match &config.epsilon {
        Some(spec) => spec.values().map_err(|m| RunError::config("epsilon", m))?,
        None => vec![0.1],
    };
    let selections = config.n_plus.clone().unwrap_or_else(|| {
        vec![
            SelectionSpec::Named("modal".into()),
            SelectionSpec::Named("extreme".into()),
        ]
    });
    let trials = config.trials.unwrap_or(10_000) as usize;
    if trials == 0 {
        return Err(RunError::config("trials", "at least one trial is required"));
    }
    let orders = config.orders.unwrap_or(6);
    if orders == 0 {
        return Err(RunError::config(
            "orders",
            "at least one expansion order is required",
        ));
    }

    let mut rows = match config.scenario {
        Scenario::Residual => residual_rows(&psi, &state_descr, &ns)?,
        Scenario::Commutator => commutator_rows(&state_descr, &ns)?,
        Scenario::Entangle => entangle_rows(&psi, &state_descr, &ns, &epsilons)?,
        Scenario::Postselect => {
            let single_point = ns.len() * epsilons.len() * selections.len() == 1;
            postselect_rows(
                &psi,
                &state_descr,
                &ns,
                &epsilons,
                &selections,
                orders,
                single_point,
            )?
        }
        Scenario::Disturb => disturb_rows(&psi, &state_descr, &ns, &epsilons)?,
        Scenario::Sweep => sweep_rows(&psi, &state_descr, &ns, &epsilons)?,
        Scenario::Qudit => qudit_rows(config)?,
        Scenario::Born => {
            let seed = config.seed.ok_or_else(|| {
                RunError::config("seed", "stochastic scenarios require an explicit seed")
            })?;
            born_rows(&psi, &state_descr, &ns, trials, seed)?
        }
    };

    rows.sort_by(|a, b| {
        (a.scenario.as_str(), a.n)
            .cmp(&(b.scenario.as_str(), b.n))
            .then(
                a.epsilon
                    .unwrap_or(f64::NEG_INFINITY)
                    .total_cmp(&b.epsilon.unwrap_or(f64::NEG_INFINITY)),
            )
            .then(a.metric.cmp(&b.metric))
    });
    Ok(rows)
}

fn ratio_of(exact: f64, reference: f64) -> Option<f64> {
    (reference != 0.0 && reference.is_finite()).then(|| exact / reference)
}

struct RowBuilder {
    scenario: &'static str,
    state: String,
}

impl RowBuilder {
    fn new(scenario: Scenario, state: &str) -> Self {
        Self {
            scenario: scenario.name(),
            state: state.into(),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn row(
        &self,
        n: usize,
        epsilon: Option<f64>,
        metric: String,
        exact: Option<f64>,
        reference: Option<f64>,
        seed: Option<u64>,
        wall_ms: u64,
        error: Option<String>,
    ) -> SweepRecord {
        let ratio = match (exact, reference) {
            (Some(e), Some(r)) => ratio_of(e, r),
            _ => None,
        };
        SweepRecord {
            scenario: self.scenario.into(),
            n: n as u64,
            epsilon,
            state: self.state.clone(),
            metric,
            exact,
            reference,
            ratio,
            seed,
            wall_ms,
            error,
        }
    }
}

fn residual_rows(
    psi: &SpinState,
    descr: &str,
    ns: &[usize],
) -> Result<Vec<SweepRecord>, RunError> {
    let b = RowBuilder::new(Scenario::Residual, descr);
    let mut rows = Vec::new();
    for &n in ns {
        let start = Instant::now();
        let state = SymmetricState::from_product_state(psi, n)?;
        let mx = residual_norm(&state, psi.sigma_bar());
        let freq = frequency_operator_residual(&state);
        let ms = start.elapsed().as_millis() as u64;
        let nf = n as f64;
        rows.push(b.row(
            n,
            None,
            "mx_residual".into(),
            Some(mx),
            Some(psi.delta_sigma() / nf.sqrt()),
            None,
            ms,
            None,
        ));
        rows.push(b.row(
            n,
            None,
            "frequency_residual".into(),
            Some(freq),
            Some((psi.prob_plus() * psi.prob_minus() / nf).sqrt()),
            None,
            ms,
            None,
        ));
    }
    Ok(rows)
}

fn commutator_rows(descr: &str, ns: &[usize]) -> Result<Vec<SweepRecord>, RunError> {
    let b = RowBuilder::new(Scenario::Commutator, descr);
    let mut rows = Vec::new();
    for &n in ns {
        let start = Instant::now();
        let closed = commutator_norm_closed_form(n);
        if n <= DENSE_CAP {
            let check = commutator_residual(n)?;
            let ms = start.elapsed().as_millis() as u64;
            rows.push(b.row(
                n,
                None,
                "commutator_norm".into(),
                Some(check.commutator_norm),
                Some(closed),
                None,
                ms,
                None,
            ));
            rows.push(b.row(
                n,
                None,
                "identity_residual".into(),
                Some(check.identity_residual),
                Some(0.0),
                None,
                ms,
                None,
            ));
        } else {
            let ms = start.elapsed().as_millis() as u64;
            rows.push(b.row(
                n,
                None,
                "commutator_norm_closed".into(),
                Some(closed),
                Some(closed),
                None,
                ms,
                None,
            ));
        }
    }
    Ok(rows)
}

fn entangle_rows(
    psi: &SpinState,
    descr: &str,
    ns: &[usize],
    epsilons: &[f64],
) -> Result<Vec<SweepRecord>, RunError> {
    let b = RowBuilder::new(Scenario::Entangle, descr);
    let mut rows = Vec::new();
    for &n in ns {
        let state = SymmetricState::from_product_state(psi, n)?;
        for &eps in epsilons {
            let start = Instant::now();
            let scaled = GaussianPointer::unit(0.0, 1.0 / (eps * (n as f64).sqrt()))?;
            let fixed = GaussianPointer::unit(0.0, 1.0 / eps)?;
            let at_eps = delta_chi_norm(&state, &scaled)?;
            let at_width = delta_chi_norm(&state, &fixed)?;
            let ms = start.elapsed().as_millis() as u64;
            rows.push(b.row(
                n,
                Some(eps),
                "delta_chi_fixed_eps".into(),
                Some(at_eps.exact),
                Some(at_eps.perturbative),
                None,
                ms,
                None,
            ));
            rows.push(b.row(
                n,
                Some(eps),
                "delta_chi_fixed_width".into(),
                Some(at_width.exact),
                Some(at_width.perturbative),
                None,
                ms,
                None,
            ));
        }
    }
    Ok(rows)
}

#[allow(clippy::too_many_arguments)]
fn postselect_rows(
    psi: &SpinState,
    descr: &str,
    ns: &[usize],
    epsilons: &[f64],
    selections: &[SelectionSpec],
    orders: u32,
    single_point: bool,
) -> Result<Vec<SweepRecord>, RunError> {
    let b = RowBuilder::new(Scenario::Postselect, descr);
    let mut rows = Vec::new();
    for &n in ns {
        let state = SymmetricState::from_product_state(psi, n)?;
        for &eps in epsilons {
            let pointer = GaussianPointer::unit(0.0, 1.0 / (eps * (n as f64).sqrt()))?;
            for spec in selections {
                let sel = spec.resolve(&state)?;
                let tag = format!("[n_plus={}]", sel.n_plus());
                let start = Instant::now();
                match delta_p_exact(&state, &pointer, &sel) {
                    Ok(report) => {
                        let ms = start.elapsed().as_millis() as u64;
                        rows.push(b.row(
                            n,
                            Some(eps),
                            format!("delta_p_exact{tag}"),
                            Some(report.exact_norm),
                            Some(report.perturbative_norm),
                            None,
                            ms,
                            None,
                        ));
                        rows.push(b.row(
                            n,
                            Some(eps),
                            format!("selection_probability{tag}"),
                            Some(report.selection_probability),
                            None,
                            None,
                            ms,
                            None,
                        ));
                        let profile = interference_profile(&state, &pointer, &sel, orders)?;
                        for (j, term) in profile.iter().enumerate() {
                            rows.push(b.row(
                                n,
                                Some(eps),
                                format!("delta_p_order_{:02}{tag}", j + 1),
                                Some(*term),
                                None,
                                None,
                                ms,
                                None,
                            ));
                        }
                    }
                    Err(err @ Error::ImpossibleSelection { .. }) => {
                        if single_point {
                            return Err(RunError::ImpossibleSelection(err));
                        }
                        let ms = start.elapsed().as_millis() as u64;
                        rows.push(b.row(
                            n,
                            Some(eps),
                            format!("delta_p_exact{tag}"),
                            None,
                            None,
                            None,
                            ms,
                            Some(err.to_string()),
                        ));
                    }
                    Err(other) => return Err(other.into()),
                }
            }
        }
    }
    Ok(rows)
}

fn disturb_rows(
    psi: &SpinState,
    descr: &str,
    ns: &[usize],
    epsilons: &[f64],
) -> Result<Vec<SweepRecord>, RunError> {
    let b = RowBuilder::new(Scenario::Disturb, descr);
    let mut rows = Vec::new();
    for &n in ns {
        for &eps in epsilons {
            let start = Instant::now();
            let setting = AccuracySetting::new(eps, n)
                .map_err(|e| RunError::config("epsilon", e.to_string()))?;
            let p = no_flip_probability(psi, &setting);
            let ms = start.elapsed().as_millis() as u64;
            rows.push(b.row(
                n,
                Some(eps),
                "no_flip".into(),
                Some(p.exact),
                Some(p.paper_estimate),
                None,
                ms,
                None,
            ));
        }
        // Uncertainty relations are accuracy-independent: once per N, with
        // the bound in the reference column (exact >= reference - 1e-12).
        let start = Instant::now();
        let state = SymmetricState::from_product_state(psi, n)?;
        let report = uncertainty_check(&state)?;
        let ms = start.elapsed().as_millis() as u64;
        rows.push(b.row(
            n,
            None,
            "uncertainty_collective".into(),
            Some(report.collective.lhs),
            Some(report.collective.rhs),
            None,
            ms,
            None,
        ));
        rows.push(b.row(
            n,
            None,
            "uncertainty_single_spin".into(),
            Some(report.single_spin.lhs),
            Some(report.single_spin.rhs),
            None,
            ms,
            None,
        ));
    }
    Ok(rows)
}

fn sweep_rows(
    psi: &SpinState,
    descr: &str,
    ns: &[usize],
    epsilons: &[f64],
) -> Result<Vec<SweepRecord>, RunError> {
    let b = RowBuilder::new(Scenario::Sweep, descr);
    let start = Instant::now();
    let table = accuracy_tradeoff_sweep(psi, epsilons, ns)?;
    let ms = start.elapsed().as_millis() as u64;
    let mut rows = Vec::new();
    for r in table {
        rows.push(b.row(
            r.n,
            Some(r.epsilon),
            "pointer_width".into(),
            Some(r.delta_p),
            None,
            None,
            ms,
            None,
        ));
        rows.push(b.row(
            r.n,
            Some(r.epsilon),
            "gap_ratio".into(),
            Some(r.gap_ratio),
            Some(1.0),
            None,
            ms,
            None,
        ));
        rows.push(b.row(
            r.n,
            Some(r.epsilon),
            "resolves_gap".into(),
            Some(if r.resolves_gap { 1.0 } else { 0.0 }),
            None,
            None,
            ms,
            None,
        ));
        rows.push(b.row(
            r.n,
            Some(r.epsilon),
            "no_flip".into(),
            Some(r.no_flip_exact),
            Some(r.no_flip_estimate),
            None,
            ms,
            None,
        ));
    }
    Ok(rows)
}

fn qudit_rows(config: &ExperimentConfig) -> Result<Vec<SweepRecord>, RunError> {
    // Default: the three-level worked example.
    let levels = config
        .levels
        .clone()
        .unwrap_or_else(|| vec![-1.0, 0.0, 1.0]);
    let probs = config
        .probs
        .clone()
        .unwrap_or_else(|| vec![0.5, 0.3, 0.2]);
    let spec = QuditSpec::new(levels.clone(), probs.clone())
        .map_err(|e| RunError::config("levels/probs", e.to_string()))?;
    let descr = format!("levels={}", spec.num_levels());
    let b = RowBuilder::new(Scenario::Qudit, &descr);

    let start = Instant::now();
    let moments = moments_from_probs(&spec);
    let recovery = probs_from_moments(spec.levels(), &moments)?;
    let ms = start.elapsed().as_millis() as u64;

    let n = spec.num_levels();
    let mut rows = Vec::new();
    let mut max_err = 0.0_f64;
    for i in 0..n {
        max_err = max_err.max((recovery.probs[i] - probs[i]).abs());
        rows.push(b.row(
            n,
            None,
            format!("recovered_prob_{i}"),
            Some(recovery.probs[i]),
            Some(probs[i]),
            None,
            ms,
            None,
        ));
    }
    rows.push(b.row(
        n,
        None,
        "roundtrip_max_error".into(),
        Some(max_err),
        Some(recovery.condition_estimate * 1e-12),
        None,
        ms,
        None,
    ));
    rows.push(b.row(
        n,
        None,
        "condition_estimate".into(),
        Some(recovery.condition_estimate),
        None,
        None,
        ms,
        None,
    ));
    rows.push(b.row(
        n,
        None,
        "clamp_magnitude".into(),
        Some(recovery.clamp_magnitude),
        None,
        None,
        ms,
        None,
    ));
    Ok(rows)
}

fn born_rows(
    psi: &SpinState,
    descr: &str,
    ns: &[usize],
    trials: usize,
    seed: u64,
) -> Result<Vec<SweepRecord>, RunError> {
    let b = RowBuilder::new(Scenario::Born, descr);
    let mut rows = Vec::new();
    for &n in ns {
        let start = Instant::now();
        let state = SymmetricState::from_product_state(psi, n)?;
        // Stream = N keeps different sample sizes on independent substreams
        // of one seed.
        let draws = sample_many_stream(&state, seed, n as u64, trials);
        let sigma_bar = psi.sigma_bar();
        let mean = draws.iter().map(|d| d.f_n).sum::<f64>() / trials as f64;
        let rms = (draws
            .iter()
            .map(|d| (d.f_n - sigma_bar).powi(2))
            .sum::<f64>()
            / trials as f64)
            .sqrt();
        let ms = start.elapsed().as_millis() as u64;
        rows.push(b.row(
            n,
            None,
            "f_n_mean".into(),
            Some(mean),
            Some(sigma_bar),
            Some(seed),
            ms,
            None,
        ));
        rows.push(b.row(
            n,
            None,
            "f_n_rms_gap".into(),
            Some(rms),
            Some(psi.delta_sigma() / (n as f64).sqrt()),
            Some(seed),
            ms,
            None,
        ));
    }
    Ok(rows)
}

/// 15 significant digits, plot-ready and diff-able.
fn fmt15(x: f64) -> String {
    format!("{:.14e}", x)
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt15).unwrap_or_default()
}

/// Fixed-column CSV encoding of a record stream.
pub fn to_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from("scenario,n,epsilon,state,metric,exact,reference,ratio,seed,wall_ms\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.scenario,
            r.n,
            fmt_opt(r.epsilon),
            r.state,
            r.metric,
            fmt_opt(r.exact),
            fmt_opt(r.reference),
            fmt_opt(r.ratio),
            r.seed.map(|s| s.to_string()).unwrap_or_default(),
            r.wall_ms,
        ));
    }
    out
}

/// JSON-lines encoding, one record per line.
pub fn to_jsonl(records: &[SweepRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records contain no non-finite floats"));
        out.push('\n');
    }
    out
}

/// Encode with the configured format.
pub fn render(records: &[SweepRecord], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => to_csv(records),
        OutputFormat::Json => to_jsonl(records),
    }
}
