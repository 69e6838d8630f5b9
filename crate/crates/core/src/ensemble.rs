//! N-spin product states and collective operators in the symmetric subspace.
//!
//! A permutation-symmetric N-spin state lives in the (N+1)-dimensional space
//! spanned by the sectors `|k>` with k spins up along the measurement axis,
//! so nothing here ever materializes the full 2^N space. The collective
//! average `Mx = sum_i sigma_xi / N` is diagonal with eigenvalue
//! `m_k = (2k - N)/N` on sector k; the transverse components follow from the
//! spin-N/2 ladder construction and satisfy `[Mx, My] = 2i Mz / N` exactly.
//!
//! Product-state amplitudes carry binomial weights. They are accumulated in
//! log space, anchored at the modal sector so every intermediate stays within
//! the representable range; this keeps the sector masses accurate to
//! ~1e-12 relative up to N = 2^20.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

use crate::error::{Error, Result};
use crate::spin::SpinState;

/// Norm tolerance for symmetric states (looser than the single-spin one:
/// sums over up to 2^20 sectors).
pub const SYMMETRIC_NORM_TOL: f64 = 1e-10;

/// Largest N for which dense (N+1)-dimensional matrix operations are allowed.
pub const DENSE_CAP: usize = 4096;

/// Permutation-symmetric N-spin state: N+1 amplitudes over the sectors
/// labeled by the number k of spins with eigenvalue +1.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricState {
    n: usize,
    amps: Vec<Complex64>,
}

impl SymmetricState {
    /// Build from explicit sector amplitudes (length n+1, unit norm).
    pub fn new(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "sample size must be at least 1".into(),
            ));
        }
        if amps.len() != n + 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} amplitudes, got {}",
                n + 1,
                amps.len()
            )));
        }
        let norm_sq = kahan_sum(amps.iter().map(|a| a.norm_sqr()));
        if (norm_sq - 1.0).abs() > SYMMETRIC_NORM_TOL {
            return Err(Error::NotNormalized {
                norm_sq,
                tol: SYMMETRIC_NORM_TOL,
            });
        }
        Ok(Self { n, amps })
    }

    /// The product state `|psi>^(x) N` projected on the symmetric sectors:
    /// `a_k = sqrt(C(N,k)) c_plus^k c_minus^(N-k)`.
    pub fn from_product_state(psi: &SpinState, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "sample size must be at least 1".into(),
            ));
        }
        let p2 = psi.prob_plus();
        let q2 = psi.prob_minus();
        let mut amps = vec![Complex64::new(0.0, 0.0); n + 1];

        // Eigenstate inputs collapse to a single sector.
        if q2 == 0.0 {
            amps[n] = Complex64::from_polar(1.0, n as f64 * psi.c_plus().arg());
            return Ok(Self { n, amps });
        }
        if p2 == 0.0 {
            amps[0] = Complex64::from_polar(1.0, n as f64 * psi.c_minus().arg());
            return Ok(Self { n, amps });
        }

        // Log-magnitude profile relative to the modal sector. The increment
        // ln|a_{k+1}| - ln|a_k| = (ln(N-k) - ln(k+1))/2 + ln|c+| - ln|c-|
        // is accumulated outward from the anchor so partial sums stay small.
        let dl = 0.5 * (p2.ln() - q2.ln());
        let anchor = ((n as f64 * p2 / (p2 + q2)).round() as usize).min(n);
        let mut log_mag = vec![0.0_f64; n + 1];
        let mut acc = KahanAcc::new();
        for k in anchor..n {
            acc.add(0.5 * (((n - k) as f64).ln() - ((k + 1) as f64).ln()) + dl);
            log_mag[k + 1] = acc.value();
        }
        acc = KahanAcc::new();
        for k in (1..=anchor).rev() {
            acc.add(-(0.5 * (((n - k + 1) as f64).ln() - (k as f64).ln()) + dl));
            log_mag[k - 1] = acc.value();
        }

        // Normalize in log space: subtract ln(sum of squared magnitudes)/2.
        let total = kahan_sum(log_mag.iter().map(|l| (2.0 * l).exp()));
        let log_norm = 0.5 * total.ln();

        let alpha = psi.c_plus().arg();
        let beta = psi.c_minus().arg();
        for (k, amp) in amps.iter_mut().enumerate() {
            let mag = (log_mag[k] - log_norm).exp();
            if mag > 0.0 {
                let phase = k as f64 * alpha + (n - k) as f64 * beta;
                *amp = Complex64::from_polar(mag, phase);
            }
        }
        Ok(Self { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    /// Eigenvalue of Mx on sector k.
    pub fn m_value(&self, k: usize) -> f64 {
        (2.0 * k as f64 - self.n as f64) / self.n as f64
    }

    /// Born weight of sector k.
    pub fn sector_prob(&self, k: usize) -> f64 {
        self.amps[k].norm_sqr()
    }

    pub fn norm_sq(&self) -> f64 {
        kahan_sum(self.amps.iter().map(|a| a.norm_sqr()))
    }

    /// `<Mx>`.
    pub fn mx_expectation(&self) -> f64 {
        kahan_sum(
            self.amps
                .iter()
                .enumerate()
                .map(|(k, a)| self.m_value(k) * a.norm_sqr()),
        )
    }

    /// `Var(Mx) = <Mx^2> - <Mx>^2`, evaluated as a central moment.
    pub fn mx_variance(&self) -> f64 {
        let mean = self.mx_expectation();
        kahan_sum(
            self.amps
                .iter()
                .enumerate()
                .map(|(k, a)| (self.m_value(k) - mean).powi(2) * a.norm_sqr()),
        )
    }

    /// Expectation of the frequency operator (eigenvalue k/N on sector k).
    pub fn frequency_expectation(&self) -> f64 {
        kahan_sum(
            self.amps
                .iter()
                .enumerate()
                .map(|(k, a)| k as f64 / self.n as f64 * a.norm_sqr()),
        )
    }
}

/// `|| (Mx - sigma_bar) |Psi> ||`, the eigenoperator residual. Exact in the
/// sector basis; for a product state it equals `delta_sigma / sqrt(N)`.
pub fn residual_norm(state: &SymmetricState, sigma_bar: f64) -> f64 {
    kahan_sum(
        state
            .amps()
            .iter()
            .enumerate()
            .map(|(k, a)| (state.m_value(k) - sigma_bar).powi(2) * a.norm_sqr()),
    )
    .sqrt()
}

/// `|| (f_N - <f_N>) |Psi> ||` for the frequency operator with eigenvalue
/// k/N on sector k. For a product state this is `sqrt(|c+|^2 |c-|^2 / N)`.
pub fn frequency_operator_residual(state: &SymmetricState) -> f64 {
    let mean = state.frequency_expectation();
    kahan_sum(
        state
            .amps()
            .iter()
            .enumerate()
            .map(|(k, a)| (k as f64 / state.n() as f64 - mean).powi(2) * a.norm_sqr()),
    )
    .sqrt()
}

/// Collective operator kinds acting on the symmetric subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CollectiveKind {
    /// Diagonal, eigenvalue (2k-N)/N.
    Mx,
    /// Tridiagonal, real symmetric entries from the ladder construction.
    My,
    /// Tridiagonal, imaginary entries from the ladder construction.
    Mz,
    /// Diagonal power, eigenvalue ((2k-N)/N)^p.
    MxPower(u32),
    /// Hartle/Graham frequency operator, eigenvalue k/N.
    Frequency,
}

/// A collective observable `M = 2 J / N` on the spin-N/2 representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CollectiveOperator {
    n: usize,
    kind: CollectiveKind,
}

impl CollectiveOperator {
    pub fn new(n: usize, kind: CollectiveKind) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "sample size must be at least 1".into(),
            ));
        }
        Ok(Self { n, kind })
    }

    pub fn mx(n: usize) -> Result<Self> {
        Self::new(n, CollectiveKind::Mx)
    }

    pub fn my(n: usize) -> Result<Self> {
        Self::new(n, CollectiveKind::My)
    }

    pub fn mz(n: usize) -> Result<Self> {
        Self::new(n, CollectiveKind::Mz)
    }

    pub fn mx_power(n: usize, p: u32) -> Result<Self> {
        Self::new(n, CollectiveKind::MxPower(p))
    }

    pub fn frequency(n: usize) -> Result<Self> {
        Self::new(n, CollectiveKind::Frequency)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> CollectiveKind {
        self.kind
    }

    /// Ladder coefficient `c_k = sqrt((k+1)(N-k))` linking sectors k and k+1.
    fn ladder(&self, k: usize) -> f64 {
        (((k + 1) as f64) * ((self.n - k) as f64)).sqrt()
    }

    /// Eigenvalue on sector k for the diagonal kinds.
    pub fn diagonal_eigenvalue(&self, k: usize) -> Option<f64> {
        let m = (2.0 * k as f64 - self.n as f64) / self.n as f64;
        match self.kind {
            CollectiveKind::Mx => Some(m),
            CollectiveKind::MxPower(p) => Some(m.powi(p as i32)),
            CollectiveKind::Frequency => Some(k as f64 / self.n as f64),
            _ => None,
        }
    }

    /// Matrix element (row, col); zero outside the tridiagonal band.
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        let nf = self.n as f64;
        match self.kind {
            CollectiveKind::Mx | CollectiveKind::MxPower(_) | CollectiveKind::Frequency => {
                if row == col {
                    Complex64::new(self.diagonal_eigenvalue(row).unwrap(), 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            CollectiveKind::My => {
                if col == row + 1 {
                    Complex64::new(self.ladder(row) / nf, 0.0)
                } else if row == col + 1 {
                    Complex64::new(self.ladder(col) / nf, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            CollectiveKind::Mz => {
                if col == row + 1 {
                    Complex64::new(0.0, self.ladder(row) / nf)
                } else if row == col + 1 {
                    Complex64::new(0.0, -self.ladder(col) / nf)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
        }
    }

    /// Apply to sector amplitudes. The result is generally not normalized.
    pub fn apply(&self, state: &SymmetricState) -> Result<Vec<Complex64>> {
        if state.n() != self.n {
            return Err(Error::InvalidArgument(format!(
                "operator on N = {} applied to state with N = {}",
                self.n,
                state.n()
            )));
        }
        let amps = state.amps();
        let dim = self.n + 1;
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        match self.kind {
            CollectiveKind::Mx | CollectiveKind::MxPower(_) | CollectiveKind::Frequency => {
                for (k, o) in out.iter_mut().enumerate() {
                    *o = self.diagonal_eigenvalue(k).unwrap() * amps[k];
                }
            }
            CollectiveKind::My | CollectiveKind::Mz => {
                for k in 0..dim {
                    let mut acc = Complex64::new(0.0, 0.0);
                    if k + 1 < dim {
                        acc += self.entry(k, k + 1) * amps[k + 1];
                    }
                    if k > 0 {
                        acc += self.entry(k, k - 1) * amps[k - 1];
                    }
                    out[k] = acc;
                }
            }
        }
        Ok(out)
    }

    /// `<Psi| M |Psi>`.
    pub fn expectation(&self, state: &SymmetricState) -> Result<f64> {
        let applied = self.apply(state)?;
        let val: Complex64 = state
            .amps()
            .iter()
            .zip(applied.iter())
            .map(|(a, b)| a.conj() * b)
            .sum();
        debug_assert!(val.im.abs() < 1e-12);
        Ok(val.re)
    }

    /// `Delta M = sqrt(<M^2> - <M>^2)`, via the norm of the applied vector.
    pub fn uncertainty(&self, state: &SymmetricState) -> Result<f64> {
        let applied = self.apply(state)?;
        let m2 = kahan_sum(applied.iter().map(|a| a.norm_sqr()));
        let mean = self.expectation(state)?;
        Ok((m2 - mean * mean).max(0.0).sqrt())
    }

    /// Full (N+1)^2 matrix; guarded by the dense cap.
    pub fn to_dense(&self) -> Result<Vec<Vec<Complex64>>> {
        if self.n > DENSE_CAP {
            return Err(Error::DenseCapExceeded {
                n: self.n,
                cap: DENSE_CAP,
            });
        }
        let dim = self.n + 1;
        Ok((0..dim)
            .map(|i| (0..dim).map(|j| self.entry(i, j)).collect())
            .collect())
    }
}

/// Spectral norms of the commutator `[Mx, My]` and of the identity residual
/// `[Mx, My] - 2i Mz / N`.
#[derive(Debug, Clone, Copy)]
pub struct CommutatorCheck {
    /// `|| [Mx, My] - 2i Mz / N ||`, expected at rounding level.
    pub identity_residual: f64,
    /// `|| [Mx, My] ||`, expected 2/N.
    pub commutator_norm: f64,
}

/// Evaluate the commutator identity numerically for one N.
///
/// The products are taken entry by entry (Mx is diagonal and My tridiagonal,
/// so every in-band entry of the product is a single term and the off-band
/// entries are exact zeros, identical to the dense product). Above
/// [`DENSE_CAP`] use [`commutator_norm_closed_form`] instead.
pub fn commutator_residual(n: usize) -> Result<CommutatorCheck> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "sample size must be at least 1".into(),
        ));
    }
    if n > DENSE_CAP {
        return Err(Error::DenseCapExceeded { n, cap: DENSE_CAP });
    }
    let mx = CollectiveOperator::mx(n)?;
    let my = CollectiveOperator::my(n)?;
    let mz = CollectiveOperator::mz(n)?;
    let nf = n as f64;

    // Superdiagonal of C = Mx My - My Mx and of R = C - 2i Mz / N. Both are
    // anti-Hermitian with zero diagonal, so their spectra are those of the
    // Hermitian tridiagonal matrices i C and i R, which in turn match the
    // real symmetric tridiagonal matrices with the same entry magnitudes.
    let mut comm_off = Vec::with_capacity(n);
    let mut resid_off = Vec::with_capacity(n);
    for k in 0..n {
        let m_k = mx.entry(k, k).re;
        let m_k1 = mx.entry(k + 1, k + 1).re;
        let b = my.entry(k, k + 1);
        let c_sup = m_k * b - b * m_k1;
        let r_sup = c_sup - Complex64::new(0.0, 2.0 / nf) * mz.entry(k, k + 1);
        comm_off.push(c_sup.norm());
        resid_off.push(r_sup.norm());
    }
    let zeros = vec![0.0; n + 1];
    Ok(CommutatorCheck {
        identity_residual: sym_tridiag_spectral_norm(&zeros, &resid_off),
        commutator_norm: sym_tridiag_spectral_norm(&zeros, &comm_off),
    })
}

/// `|| [Mx, My] || = 2/N` exactly; the closed form used above the dense cap.
pub fn commutator_norm_closed_form(n: usize) -> f64 {
    2.0 / n as f64
}

/// Outcome of reading every spin individually: the count of +1 results and
/// the empirical frequency average `F_N = (2 n_plus - N)/N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MicroscopicOutcome {
    pub n_plus: usize,
    pub f_n: f64,
}

/// Cumulative sector distribution for repeated Born draws.
#[derive(Debug, Clone)]
pub struct BornSampler {
    n: usize,
    cdf: Vec<f64>,
}

impl BornSampler {
    pub fn new(state: &SymmetricState) -> Self {
        let mut cdf = Vec::with_capacity(state.n() + 1);
        let mut acc = KahanAcc::new();
        for a in state.amps() {
            acc.add(a.norm_sqr());
            cdf.push(acc.value());
        }
        Self { n: state.n(), cdf }
    }

    /// Draw one sector with probability `|a_k|^2`.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> MicroscopicOutcome {
        let u: f64 = rng.random::<f64>() * self.cdf[self.n];
        let k = self.cdf.partition_point(|&c| c <= u).min(self.n);
        MicroscopicOutcome {
            n_plus: k,
            f_n: (2.0 * k as f64 - self.n as f64) / self.n as f64,
        }
    }
}

/// One Born draw of the microscopic outcome string, summarized by
/// `(n_plus, F_N)`. Deterministic given the generator state.
pub fn sample_microscopic<R: Rng + ?Sized>(
    state: &SymmetricState,
    rng: &mut R,
) -> MicroscopicOutcome {
    BornSampler::new(state).draw(rng)
}

/// Seeded batch of draws; the explicit seed makes runs reproducible.
pub fn sample_many(state: &SymmetricState, seed: u64, trials: usize) -> Vec<MicroscopicOutcome> {
    sample_many_stream(state, seed, 0, trials)
}

/// Seeded batch on an independent substream, so sweeps can reuse one seed
/// across rows without correlating the draws.
pub fn sample_many_stream(
    state: &SymmetricState,
    seed: u64,
    stream: u64,
    trials: usize,
) -> Vec<MicroscopicOutcome> {
    let sampler = BornSampler::new(state);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    (0..trials).map(|_| sampler.draw(&mut rng)).collect()
}

/// Largest eigenvalue in magnitude of a real symmetric tridiagonal matrix,
/// by Sturm-sequence bisection.
pub(crate) fn sym_tridiag_spectral_norm(diag: &[f64], off: &[f64]) -> f64 {
    let hi = sym_tridiag_eig_max(diag, off);
    let neg: Vec<f64> = diag.iter().map(|d| -d).collect();
    let lo = sym_tridiag_eig_max(&neg, off);
    hi.abs().max(lo.abs())
}

fn sym_tridiag_eig_max(diag: &[f64], off: &[f64]) -> f64 {
    let n = diag.len();
    assert_eq!(off.len() + 1, n);
    // Gershgorin interval.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut r = 0.0;
        if i > 0 {
            r += off[i - 1].abs();
        }
        if i < n - 1 {
            r += off[i].abs();
        }
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    if n == 1 {
        return diag[0];
    }
    // Smallest x with count(x) == n is the supremum of the spectrum.
    let mut a = lo;
    let mut b = hi + (hi - lo).max(1.0) * 1e-15;
    for _ in 0..120 {
        let mid = 0.5 * (a + b);
        if sturm_count_below(diag, off, mid) == n {
            b = mid;
        } else {
            a = mid;
        }
        if b - a <= f64::EPSILON * (a.abs().max(b.abs()).max(1e-300)) {
            break;
        }
    }
    0.5 * (a + b)
}

/// Number of eigenvalues strictly below x.
fn sturm_count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = diag[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        let denom = if q == 0.0 { 1e-300 } else { q };
        q = diag[i] - x - off[i - 1] * off[i - 1] / denom;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

#[derive(Default)]
pub(crate) struct KahanAcc {
    sum: f64,
    comp: f64,
}

impl KahanAcc {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum
    }
}

pub(crate) fn kahan_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut acc = KahanAcc::new();
    for v in values {
        acc.add(v);
    }
    acc.value()
}
