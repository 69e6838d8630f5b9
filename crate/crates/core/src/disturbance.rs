//! Accuracy-disturbance trade-off of the collective measurement.
//!
//! The accuracy parameter eps fixes the pointer resolution
//! `Delta P = 1/(eps sqrt(N))`. Each spin sees the rotation
//! `exp(i Q sigma_x / N)` about the measurement axis, with Q spread over the
//! pointer's conjugate width. The probability that a single spin survives
//! unflipped, averaged over the Gaussian Q distribution, is
//!
//! ```text
//! s = 1 - (delta_sigma^2 / 2) (1 - exp(-2 w^2 / N^2)),
//! ```
//!
//! and the probability that no spin flips is `s^N`.
//!
//! Convention note: the rotation-noise width is taken as the conjugate
//! resolution `w = 1/Delta P = eps sqrt(N)`. Under this calibration the
//! balanced-state survival converges to `exp(-eps^2)` with unit decay
//! constant; the minimum-uncertainty pointer width `Delta Q = 1/(2 Delta P)`
//! (which the pointer algebra itself uses) would give the same exponential
//! law with constant 1/4. Both the exact curve and the exponential estimate
//! are reported so the convention is visible in the output.

use crate::ensemble::{CollectiveOperator, SymmetricState};
use crate::error::{Error, Result};
use crate::pointer::GaussianPointer;
use crate::spin::SpinState;

/// Accuracy parameterization of one measurement run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracySetting {
    epsilon: f64,
    n: usize,
}

impl AccuracySetting {
    pub fn new(epsilon: f64, n: usize) -> Result<Self> {
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "epsilon must be positive and finite, got {epsilon}"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidArgument(
                "sample size must be at least 1".into(),
            ));
        }
        Ok(Self { epsilon, n })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Pointer resolution `Delta P = 1/(eps sqrt(N))`.
    pub fn delta_p(&self) -> f64 {
        1.0 / (self.epsilon * (self.n as f64).sqrt())
    }

    /// Minimum-uncertainty conjugate spread of the pointer,
    /// `Delta Q = 1/(2 Delta P) = eps sqrt(N) / 2`.
    pub fn delta_q(&self) -> f64 {
        self.epsilon * (self.n as f64).sqrt() / 2.0
    }

    /// Q-noise width used for the spin rotation, `1/Delta P = eps sqrt(N)`
    /// (see the module-level convention note).
    pub fn rotation_spread(&self) -> f64 {
        self.epsilon * (self.n as f64).sqrt()
    }

    /// The measuring device this setting describes.
    pub fn pointer(&self, center: f64) -> Result<GaussianPointer> {
        GaussianPointer::unit(center, self.delta_p())
    }

    /// Eigenvalue spacing of Mx, the separation a pointer must beat to
    /// resolve adjacent collective outcomes.
    pub fn eigenvalue_gap(&self) -> f64 {
        2.0 / self.n as f64
    }
}

/// Probability that no spin of the sample flips during the measurement.
#[derive(Debug, Clone, Copy)]
pub struct NoFlipProbability {
    /// `s^N` with the exact Gaussian-averaged per-spin survival s.
    pub exact: f64,
    /// `exp(-eps^2 delta_sigma^2)`, the exponential estimate normalized to
    /// `exp(-eps^2)` for the balanced state.
    pub paper_estimate: f64,
}

/// Exact and estimated no-flip probability for one state and setting.
pub fn no_flip_probability(psi: &SpinState, setting: &AccuracySetting) -> NoFlipProbability {
    let ds_sq = psi.delta_sigma().powi(2);
    let n = setting.n as f64;
    let w = setting.rotation_spread();
    // E[sin^2(Q/N)] = (1 - exp(-2 w^2 / N^2)) / 2 over Q ~ N(0, w^2).
    let flip = ds_sq * 0.5 * (-(-2.0 * w * w / (n * n)).exp_m1());
    let exact = (n * (-flip).ln_1p()).exp();
    NoFlipProbability {
        exact,
        paper_estimate: (-setting.epsilon * setting.epsilon * ds_sq).exp(),
    }
}

/// One side-by-side uncertainty relation: `lhs >= rhs` up to slack.
#[derive(Debug, Clone, Copy)]
pub struct RelationCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs >= rhs - 1e-12`.
    pub satisfied: bool,
}

impl RelationCheck {
    fn new(lhs: f64, rhs: f64) -> Self {
        Self {
            lhs,
            rhs,
            satisfied: lhs >= rhs - 1e-12,
        }
    }
}

/// The two uncertainty relations of the collective coupling.
#[derive(Debug, Clone, Copy)]
pub struct UncertaintyReport {
    /// `Delta Mx * Delta My >= |<Mz>| / N` (from `[Mx, My] = 2i Mz / N`).
    pub collective: RelationCheck,
    /// `Delta sigma_zi * Delta Mx >= |<sigma_yi>| / N`
    /// (from `[sigma_zi, Mx] = 2i sigma_yi / N`).
    pub single_spin: RelationCheck,
}

/// Evaluate both relations on a symmetric state. Transverse moments come
/// from the tridiagonal ladder action, so no dense matrix is ever formed;
/// per-spin moments coincide with the collective first moments by
/// permutation symmetry.
pub fn uncertainty_check(state: &SymmetricState) -> Result<UncertaintyReport> {
    let n = state.n();
    let nf = n as f64;
    let mx = CollectiveOperator::mx(n)?;
    let my = CollectiveOperator::my(n)?;
    let mz = CollectiveOperator::mz(n)?;

    let d_mx = mx.uncertainty(state)?;
    let d_my = my.uncertainty(state)?;
    let mz_mean = mz.expectation(state)?;
    let my_mean = my.expectation(state)?;

    let collective = RelationCheck::new(d_mx * d_my, mz_mean.abs() / nf);
    // <sigma_zi> = <Mz> and <sigma_zi^2> = 1, so Delta sigma_zi follows from
    // the collective mean.
    let d_sigma_z = (1.0 - mz_mean * mz_mean).max(0.0).sqrt();
    let single_spin = RelationCheck::new(d_sigma_z * d_mx, my_mean.abs() / nf);

    Ok(UncertaintyReport {
        collective,
        single_spin,
    })
}

/// One row of the accuracy-disturbance sweep.
#[derive(Debug, Clone, Copy)]
pub struct TradeoffRow {
    pub epsilon: f64,
    pub n: usize,
    /// Pointer resolution `Delta P`.
    pub delta_p: f64,
    /// `Delta P / (2/N)`: resolution relative to the Mx eigenvalue gap.
    pub gap_ratio: f64,
    /// Whether `Delta P` beats the eigenvalue gap. Flips exactly when the
    /// resolution crosses 2/N.
    pub resolves_gap: bool,
    /// Whether `Delta P < 1`: order-one differences of sigma_bar resolvable.
    pub resolves_order_one: bool,
    pub no_flip_exact: f64,
    pub no_flip_estimate: f64,
}

/// Sweep the (eps, N) grid and report resolution against disturbance.
pub fn accuracy_tradeoff_sweep(
    psi: &SpinState,
    epsilons: &[f64],
    ns: &[usize],
) -> Result<Vec<TradeoffRow>> {
    let mut rows = Vec::with_capacity(epsilons.len() * ns.len());
    for &n in ns {
        for &epsilon in epsilons {
            let setting = AccuracySetting::new(epsilon, n)?;
            let no_flip = no_flip_probability(psi, &setting);
            let delta_p = setting.delta_p();
            let gap = setting.eigenvalue_gap();
            rows.push(TradeoffRow {
                epsilon,
                n,
                delta_p,
                gap_ratio: delta_p / gap,
                resolves_gap: delta_p < gap,
                resolves_order_one: delta_p < 1.0,
                no_flip_exact: no_flip.exact,
                no_flip_estimate: no_flip.paper_estimate,
            });
        }
    }
    Ok(rows)
}
