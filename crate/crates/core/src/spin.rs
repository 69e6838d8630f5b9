//! Exact 2x2 single-spin algebra in the measurement eigenbasis.
//!
//! The canonical basis everywhere in this crate is the eigenbasis of the
//! measured spin component, labeled x: `|+>` with eigenvalue +1 and `|->`
//! with eigenvalue -1. In this basis the measured component is diagonal and
//! every collective quantity downstream reduces to closed forms. Other axes
//! enter only through [`SpinState::rotate_to_axis`].
//!
//! The central identity is the splitting of the operator action into the
//! expectation and the orthogonal rest,
//!
//! ```text
//! sigma |psi> = sigma_bar |psi> + delta_sigma |psi_perp>,
//! ```
//!
//! which [`decompose`] returns as a [`Decomposition`].

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Construction tolerance on |c+|^2 + |c-|^2 = 1.
pub const NORM_TOL: f64 = 1e-12;

/// Below this uncertainty the orthogonal direction is no longer determined
/// by the identity and the canonical one is substituted.
const DEGENERATE_TOL: f64 = 1e-12;

/// Normalized single-spin state, amplitudes in the measurement eigenbasis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinState {
    c_plus: Complex64,
    c_minus: Complex64,
}

impl SpinState {
    /// Build a state from its amplitudes, enforcing normalization.
    pub fn new(c_plus: Complex64, c_minus: Complex64) -> Result<Self> {
        let norm_sq = c_plus.norm_sqr() + c_minus.norm_sqr();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized {
                norm_sq,
                tol: NORM_TOL,
            });
        }
        Ok(Self { c_plus, c_minus })
    }

    /// The +1 eigenstate of the measured component.
    pub fn plus_eigenstate() -> Self {
        Self {
            c_plus: Complex64::new(1.0, 0.0),
            c_minus: Complex64::new(0.0, 0.0),
        }
    }

    /// The -1 eigenstate of the measured component.
    pub fn minus_eigenstate() -> Self {
        Self {
            c_plus: Complex64::new(0.0, 0.0),
            c_minus: Complex64::new(1.0, 0.0),
        }
    }

    /// Equal-weight superposition (sigma_bar = 0, delta_sigma = 1).
    pub fn balanced() -> Self {
        let a = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self {
            c_plus: a,
            c_minus: a,
        }
    }

    /// Real-amplitude state with |c+|^2 = p.
    pub fn from_prob_plus(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!(
                "|c+|^2 must lie in [0, 1], got {p}"
            )));
        }
        Ok(Self {
            c_plus: Complex64::new(p.sqrt(), 0.0),
            c_minus: Complex64::new((1.0 - p).sqrt(), 0.0),
        })
    }

    /// State with Bloch angles (theta, phi) relative to the measurement axis,
    /// so that `<sigma_x> = cos(theta)`. Phase convention: c+ real non-negative.
    pub fn rotate_to_axis(theta: f64, phi: f64) -> Self {
        let mut c_plus = Complex64::new((theta / 2.0).cos(), 0.0);
        let mut c_minus = Complex64::from_polar((theta / 2.0).sin(), phi);
        if c_plus.re < 0.0 {
            c_plus = -c_plus;
            c_minus = -c_minus;
        }
        Self { c_plus, c_minus }
    }

    pub fn c_plus(&self) -> Complex64 {
        self.c_plus
    }

    pub fn c_minus(&self) -> Complex64 {
        self.c_minus
    }

    /// |c+|^2, the Born weight of the +1 outcome.
    pub fn prob_plus(&self) -> f64 {
        self.c_plus.norm_sqr()
    }

    /// |c-|^2, the Born weight of the -1 outcome.
    pub fn prob_minus(&self) -> f64 {
        self.c_minus.norm_sqr()
    }

    /// Expectation of the measured component, |c+|^2 - |c-|^2.
    pub fn sigma_bar(&self) -> f64 {
        self.prob_plus() - self.prob_minus()
    }

    /// Uncertainty of the measured component, sqrt(1 - sigma_bar^2).
    pub fn delta_sigma(&self) -> f64 {
        (1.0 - self.sigma_bar().powi(2)).max(0.0).sqrt()
    }

    /// Apply a global phase. No observable quantity in this crate changes.
    pub fn with_global_phase(&self, phase: f64) -> Self {
        let rot = Complex64::from_polar(1.0, phase);
        Self {
            c_plus: self.c_plus * rot,
            c_minus: self.c_minus * rot,
        }
    }
}

/// 2x2 Hermitian observable, Hermitian by construction: only the upper
/// triangle is stored and `entry(1,0)` is the conjugate of `entry(0,1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observable2 {
    a11: f64,
    a12: Complex64,
    a22: f64,
}

impl Observable2 {
    pub fn new(a11: f64, a12: Complex64, a22: f64) -> Self {
        Self { a11, a12, a22 }
    }

    /// The measured component: diagonal in the canonical basis.
    pub fn sigma_x() -> Self {
        Self::new(1.0, Complex64::new(0.0, 0.0), -1.0)
    }

    /// First transverse component. In the x eigenbasis it takes the
    /// off-diagonal real form, preserving the cyclic algebra
    /// `[sigma_x, sigma_y] = 2i sigma_z`.
    pub fn sigma_y() -> Self {
        Self::new(0.0, Complex64::new(1.0, 0.0), 0.0)
    }

    /// Second transverse component (off-diagonal imaginary form).
    pub fn sigma_z() -> Self {
        Self::new(0.0, Complex64::new(0.0, -1.0), 0.0)
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        match (i, j) {
            (0, 0) => Complex64::new(self.a11, 0.0),
            (0, 1) => self.a12,
            (1, 0) => self.a12.conj(),
            (1, 1) => Complex64::new(self.a22, 0.0),
            _ => panic!("Observable2 index out of range: ({i}, {j})"),
        }
    }

    /// Matrix-vector action on amplitude pairs.
    pub fn apply(&self, psi: &SpinState) -> (Complex64, Complex64) {
        (
            self.entry(0, 0) * psi.c_plus + self.entry(0, 1) * psi.c_minus,
            self.entry(1, 0) * psi.c_plus + self.entry(1, 1) * psi.c_minus,
        )
    }

    fn trace(&self) -> f64 {
        self.a11 + self.a22
    }

    fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12.norm_sqr()
    }

    /// A Pauli component has eigenvalues exactly +/-1: zero trace, det -1.
    pub fn is_pauli_component(&self) -> bool {
        self.trace().abs() <= 1e-12 && (self.det() + 1.0).abs() <= 1e-12
    }
}

/// Result of splitting `sigma |psi>` into parallel and orthogonal parts.
#[derive(Debug, Clone, Copy)]
pub struct Decomposition {
    /// Expectation value of the component.
    pub sigma_bar: f64,
    /// Uncertainty; the coefficient of the orthogonal part.
    pub delta_sigma: f64,
    /// Normalized state orthogonal to the input.
    pub psi_perp: SpinState,
    /// Set when delta_sigma vanishes and `psi_perp` is the canonical choice
    /// (first nonzero component real positive) rather than determined by the
    /// identity.
    pub degenerate: bool,
}

/// Expectation value `<psi|obs|psi>`. Real by Hermiticity; the imaginary
/// residue is checked and discarded.
pub fn expectation(obs: &Observable2, psi: &SpinState) -> f64 {
    let (r0, r1) = obs.apply(psi);
    let val = psi.c_plus.conj() * r0 + psi.c_minus.conj() * r1;
    debug_assert!(val.im.abs() < 1e-14, "imaginary residue {}", val.im);
    val.re
}

/// Split `obs|psi>` into `sigma_bar |psi> + delta_sigma |psi_perp>`.
///
/// `obs` must be a Pauli component (eigenvalues +/-1) so that
/// `sigma_bar^2 + delta_sigma^2 = 1`. In the degenerate case delta_sigma = 0
/// the identity holds for any orthogonal state; the canonical one is returned
/// and flagged so the relation stays an identity.
pub fn decompose(obs: &Observable2, psi: &SpinState) -> Result<Decomposition> {
    if !obs.is_pauli_component() {
        return Err(Error::NotPauliComponent {
            trace: obs.trace(),
            det: obs.det(),
        });
    }
    let sigma_bar = expectation(obs, psi);
    let (mut r0, mut r1) = obs.apply(psi);
    r0 -= sigma_bar * psi.c_plus;
    r1 -= sigma_bar * psi.c_minus;
    // Re-orthogonalize once; keeps <psi|psi_perp> at machine zero even when
    // delta_sigma is many orders below 1.
    let leak = psi.c_plus.conj() * r0 + psi.c_minus.conj() * r1;
    r0 -= leak * psi.c_plus;
    r1 -= leak * psi.c_minus;

    let delta_sigma = (r0.norm_sqr() + r1.norm_sqr()).sqrt();
    if delta_sigma <= DEGENERATE_TOL {
        return Ok(Decomposition {
            sigma_bar,
            delta_sigma: 0.0,
            psi_perp: canonical_orthogonal(psi),
            degenerate: true,
        });
    }
    let psi_perp = SpinState {
        c_plus: r0 / delta_sigma,
        c_minus: r1 / delta_sigma,
    };
    Ok(Decomposition {
        sigma_bar,
        delta_sigma,
        psi_perp,
        degenerate: false,
    })
}

/// Orthogonal complement `(-conj(c-), conj(c+))`, rephased so the first
/// nonzero component is real positive.
fn canonical_orthogonal(psi: &SpinState) -> SpinState {
    let mut p = -psi.c_minus.conj();
    let mut m = psi.c_plus.conj();
    let lead = if p.norm_sqr() > 1e-24 { p } else { m };
    let phase = lead / lead.norm();
    p /= phase;
    m /= phase;
    SpinState {
        c_plus: p,
        c_minus: m,
    }
}
