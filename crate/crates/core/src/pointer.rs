//! Gaussian pointer states and the exact measurement coupling.
//!
//! The measuring device is a minimum-uncertainty Gaussian wavepacket in the
//! pointer variable P,
//!
//! ```text
//! phi(P) = (2 pi w^2)^(-1/4) exp(-(P - center)^2 / (4 w^2)),   w = Delta P,
//! ```
//!
//! with conjugate spread `Delta Q = 1/(2 Delta P)` and `<Q^2> = 1/(4 Delta P^2)`.
//! The coupling `U = exp(i Q Mx)` is diagonal in the sector basis and only
//! translates pointer centers, so states stay analytic throughout: a coupled
//! state is a list of (sector amplitude, shifted Gaussian) pairs and every
//! norm reduces to the closed-form overlap kernel
//!
//! ```text
//! <G_a|G_b> = exp(-(a - b)^2 / (8 w^2)).
//! ```
//!
//! Overlaps are evaluated in log space and exposed through a linear and a
//! log channel, so far-separated Gaussians report an exact log-magnitude
//! instead of denormal noise. A grid quadrature exists only as a test oracle.

use num_complex::Complex64;

use crate::ensemble::{kahan_sum, SymmetricState};
use crate::error::{Error, Result};
use crate::spin::SpinState;

/// One Gaussian branch of the pointer: center, width (Delta P), and a
/// complex branch weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPointer {
    center: f64,
    width: f64,
    coefficient: Complex64,
}

impl GaussianPointer {
    pub fn new(center: f64, width: f64, coefficient: Complex64) -> Result<Self> {
        if !(width > 0.0) || !width.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "pointer width must be positive and finite, got {width}"
            )));
        }
        Ok(Self {
            center,
            width,
            coefficient,
        })
    }

    /// Unit-weight Gaussian; self-overlap is exactly 1.
    pub fn unit(center: f64, width: f64) -> Result<Self> {
        Self::new(center, width, Complex64::new(1.0, 0.0))
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn coefficient(&self) -> Complex64 {
        self.coefficient
    }

    /// Conjugate spread `Delta Q = 1/(2 Delta P)`.
    pub fn delta_q(&self) -> f64 {
        0.5 / self.width
    }

    /// `<Q^2> = 1/(4 Delta P^2)` for the minimum-uncertainty packet.
    pub fn q_second_moment(&self) -> f64 {
        0.25 / (self.width * self.width)
    }

    /// Translate the center; the only thing the coupling ever does.
    pub fn shifted(&self, shift: f64) -> Self {
        Self {
            center: self.center - shift,
            ..*self
        }
    }

    /// Position-space amplitude, used by the quadrature oracle.
    pub fn amplitude_at(&self, p: f64) -> Complex64 {
        let norm = (2.0 * std::f64::consts::PI * self.width * self.width).powf(-0.25);
        let arg = -(p - self.center).powi(2) / (4.0 * self.width * self.width);
        self.coefficient * norm * arg.exp()
    }
}

/// Log-magnitude of the unit-Gaussian overlap at center separation `da`.
pub fn ln_unit_overlap(da: f64, width: f64) -> f64 {
    -(da * da) / (8.0 * width * width)
}

/// `<|Q|^j>`-type even moments of the pointer's Q distribution:
/// `<Q^j> = (j-1)!! (Delta Q)^j` for even j, 0 for odd j.
pub fn gaussian_q_moment(delta_q: f64, j: u32) -> f64 {
    if j % 2 == 1 {
        return 0.0;
    }
    let mut dfact = 1.0; // (j-1)!! = 1 * 3 * 5 * ... * (j-1)
    let mut odd = 1u32;
    while odd < j {
        dfact *= odd as f64;
        odd += 2;
    }
    dfact * delta_q.powi(j as i32)
}

/// An overlap represented as `mantissa * exp(ln_scale)`, exact even when the
/// linear value underflows.
#[derive(Debug, Clone, Copy)]
pub struct LogOverlap {
    pub ln_scale: f64,
    pub mantissa: Complex64,
}

impl LogOverlap {
    /// Linear-channel value; may round to zero for far-separated Gaussians.
    pub fn value(&self) -> Complex64 {
        self.mantissa * self.ln_scale.exp()
    }

    /// `ln |overlap|`; -inf when the overlap is exactly zero.
    pub fn ln_magnitude(&self) -> f64 {
        self.ln_scale + self.mantissa.norm().ln()
    }
}

/// A superposition of equal-width Gaussian branches.
#[derive(Debug, Clone, PartialEq)]
pub struct PointerSuperposition {
    terms: Vec<GaussianPointer>,
}

impl PointerSuperposition {
    pub fn new(terms: Vec<GaussianPointer>) -> Result<Self> {
        let Some(first) = terms.first() else {
            return Err(Error::InvalidArgument(
                "pointer superposition needs at least one term".into(),
            ));
        };
        let w = first.width;
        for t in &terms {
            if t.width != w {
                return Err(Error::WidthMismatch { a: w, b: t.width });
            }
        }
        Ok(Self { terms })
    }

    pub fn from_single(g: GaussianPointer) -> Self {
        Self { terms: vec![g] }
    }

    pub fn terms(&self) -> &[GaussianPointer] {
        &self.terms
    }

    pub fn width(&self) -> f64 {
        self.terms[0].width
    }

    /// Analytic inner product `<self|other>`; all norms reduce to this.
    pub fn overlap(&self, other: &Self) -> Result<Complex64> {
        Ok(self.overlap_log(other)?.value())
    }

    /// Log-channel inner product (see [`LogOverlap`]).
    pub fn overlap_log(&self, other: &Self) -> Result<LogOverlap> {
        let w = self.width();
        if other.width() != w {
            return Err(Error::WidthMismatch {
                a: w,
                b: other.width(),
            });
        }
        // Peak log-magnitude over the term grid, then a stabilized sum.
        let mut peak = f64::NEG_INFINITY;
        for a in &self.terms {
            for b in &other.terms {
                let rho = a.coefficient.norm() * b.coefficient.norm();
                if rho == 0.0 {
                    continue;
                }
                peak = peak.max(rho.ln() + ln_unit_overlap(a.center - b.center, w));
            }
        }
        if peak == f64::NEG_INFINITY {
            return Ok(LogOverlap {
                ln_scale: f64::NEG_INFINITY,
                mantissa: Complex64::new(0.0, 0.0),
            });
        }
        let mut mantissa = Complex64::new(0.0, 0.0);
        for a in &self.terms {
            for b in &other.terms {
                let coeff = a.coefficient.conj() * b.coefficient;
                let rho = coeff.norm();
                if rho == 0.0 {
                    continue;
                }
                let ln_term = rho.ln() + ln_unit_overlap(a.center - b.center, w);
                mantissa += coeff / rho * (ln_term - peak).exp();
            }
        }
        Ok(LogOverlap {
            ln_scale: peak,
            mantissa,
        })
    }

    /// `|| self ||^2` by the analytic kernel.
    pub fn norm_sq(&self) -> f64 {
        self.overlap(self).expect("equal widths by construction").re
    }

    /// Position-space amplitude, for the quadrature oracle.
    pub fn amplitude_at(&self, p: f64) -> Complex64 {
        self.terms.iter().map(|t| t.amplitude_at(p)).sum()
    }
}

/// Entangled sample-pointer state after `U = exp(i Q Mx)`: sector k carries
/// a Gaussian translated by the eigenvalue `m_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoupledState {
    n: usize,
    initial_center: f64,
    width: f64,
    branches: Vec<(Complex64, GaussianPointer)>,
}

impl CoupledState {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn initial_center(&self) -> f64 {
        self.initial_center
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    /// Sector amplitude and pointer branch for sector k.
    pub fn branches(&self) -> &[(Complex64, GaussianPointer)] {
        &self.branches
    }

    /// Sample sectors are orthonormal and each branch pointer has unit
    /// self-overlap, so the total norm is the amplitude norm.
    pub fn norm_sq(&self) -> f64 {
        kahan_sum(self.branches.iter().map(|(a, _)| a.norm_sqr()))
    }

    /// Squared distance to the unentangled state with every branch pointer
    /// at the common center `P0 - shift`:
    /// `sum_k |a_k|^2 * 2 (1 - <G(center_k)|G(P0-shift)>)`.
    pub fn distance_sq_to_shifted(&self, shift: f64) -> f64 {
        let w = self.width;
        let ref_center = self.initial_center - shift;
        kahan_sum(self.branches.iter().map(|(a, g)| {
            a.norm_sqr() * 2.0 * (1.0 - ln_unit_overlap(g.center() - ref_center, w).exp())
        }))
    }

    /// `|| self - scale * other ||^2` for two states over the same sectors
    /// and pointer width; sectors are orthonormal so branches add in
    /// quadrature.
    pub fn scaled_distance_sq(&self, other: &CoupledState, scale: f64) -> Result<f64> {
        if other.n != self.n {
            return Err(Error::InvalidArgument(format!(
                "sector count mismatch: {} vs {}",
                self.n, other.n
            )));
        }
        if other.width != self.width {
            return Err(Error::WidthMismatch {
                a: self.width,
                b: other.width,
            });
        }
        let w = self.width;
        Ok(kahan_sum(self.branches.iter().zip(&other.branches).map(
            |((a, ga), (b, gb))| {
                let ov = ln_unit_overlap(ga.center() - gb.center(), w).exp();
                let cross = (a.conj() * (scale * b)).re;
                a.norm_sqr() + scale * scale * b.norm_sqr() - 2.0 * cross * ov
            },
        )))
    }
}

/// Exact action of `U = exp(i Q Mx)` on `|Psi>|P>`: branch k keeps amplitude
/// `a_k` and its pointer center moves to `P0 - m_k`, so a reading displaces
/// the pointer by `+m_k` from `P0`.
pub fn couple_exact(state: &SymmetricState, pointer: &GaussianPointer) -> Result<CoupledState> {
    let coeff_norm = pointer.coefficient.norm_sqr();
    if (coeff_norm - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized {
            norm_sq: coeff_norm,
            tol: 1e-12,
        });
    }
    let n = state.n();
    let branches = state
        .amps()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let m_k = (2.0 * k as f64 - n as f64) / n as f64;
            (
                *a * pointer.coefficient,
                GaussianPointer {
                    center: pointer.center - m_k,
                    width: pointer.width,
                    coefficient: Complex64::new(1.0, 0.0),
                },
            )
        })
        .collect();
    Ok(CoupledState {
        n,
        initial_center: pointer.center,
        width: pointer.width,
        branches,
    })
}

/// First-order form of the coupled state: a scalar-weighted unentangled
/// reference with every branch pointer at the common center `P0 - sigma_bar`.
#[derive(Debug, Clone)]
pub struct PerturbativeCoupling {
    /// `1 - Var(Mx) <Q^2> / 2`, the exact Gaussian expectation of the
    /// second-order scalar.
    pub prefactor: f64,
    /// The unentangled reference state.
    pub reference: CoupledState,
}

/// The coupling truncated at first order: all branches share the pointer
/// shifted by `sigma_bar`, scaled by the normalization prefactor. The
/// remainder against [`couple_exact`] is the entanglement deficit.
pub fn couple_perturbative(
    state: &SymmetricState,
    pointer: &GaussianPointer,
) -> Result<PerturbativeCoupling> {
    let coeff_norm = pointer.coefficient.norm_sqr();
    if (coeff_norm - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized {
            norm_sq: coeff_norm,
            tol: 1e-12,
        });
    }
    let n = state.n();
    let sigma_bar = state.mx_expectation();
    let shifted = GaussianPointer {
        center: pointer.center - sigma_bar,
        width: pointer.width,
        coefficient: Complex64::new(1.0, 0.0),
    };
    let branches = state
        .amps()
        .iter()
        .map(|a| (*a * pointer.coefficient, shifted))
        .collect();
    Ok(PerturbativeCoupling {
        prefactor: 1.0 - state.mx_variance() * pointer.q_second_moment() / 2.0,
        reference: CoupledState {
            n,
            initial_center: pointer.center,
            width: pointer.width,
            branches,
        },
    })
}

/// Sample-device entanglement produced by the coupling, as squared norms.
#[derive(Debug, Clone, Copy)]
pub struct EntanglementDeficit {
    /// `|| U|Psi>|P> - e^{i sigma_bar Q}|Psi>|P> ||^2` from analytic overlaps.
    pub exact: f64,
    /// First order, `Var(Mx) <Q^2>`; equals `delta_sigma^2 <Q^2> / N` for a
    /// product state.
    pub perturbative: f64,
}

/// Exact and first-order entanglement deficit of the coupling.
pub fn delta_chi_norm(
    state: &SymmetricState,
    pointer: &GaussianPointer,
) -> Result<EntanglementDeficit> {
    let sigma_bar = state.mx_expectation();
    let coupled = couple_exact(state, pointer)?;
    Ok(EntanglementDeficit {
        exact: coupled.distance_sq_to_shifted(sigma_bar),
        perturbative: state.mx_variance() * pointer.q_second_moment(),
    })
}

/// The value by which the collective measurement shifts the pointer:
/// `sigma_bar = |c+|^2 - |c-|^2`.
pub fn pointer_shift_value(psi: &SpinState) -> f64 {
    psi.sigma_bar()
}
