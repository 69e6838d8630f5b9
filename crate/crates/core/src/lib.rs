//! Exact desk-scale simulator for weak collective measurements on spin
//! ensembles.
//!
//! A sample of N identically prepared spins has a collective magnetization
//! `Mx = sum_i sigma_xi / N` that behaves classically as N grows: product
//! states become approximate eigenstates, collective commutators vanish as
//! 1/N, and a von Neumann pointer coupled through `exp(i Q Mx)` reads off
//! `sigma_bar` while barely entangling with the sample. This crate represents
//! all of it exactly in the (N+1)-dimensional symmetric subspace with
//! analytic Gaussian pointers, so every claim is testable at N up to 2^20
//! without ever touching the 2^N product space.
//!
//! What's here:
//!
//! - [`spin`]: single-spin algebra and the expectation/uncertainty splitting
//!   `sigma|psi> = sigma_bar|psi> + delta_sigma|psi_perp>`.
//! - [`ensemble`]: product states over symmetric sectors, collective
//!   operators, eigenoperator residuals, commutator scaling, Born sampling,
//!   and the frequency-operator comparison.
//! - [`pointer`]: minimum-uncertainty Gaussian pointers, the exact coupling,
//!   and the entanglement deficit of the measurement.
//! - [`postselect`]: conditional pointer states for definite outcome
//!   strings, the consistency gap `F_N - sigma_bar`, and the likely/unlikely
//!   interference asymmetry.
//! - [`disturbance`]: the no-flip probability `~ exp(-eps^2)` and the
//!   uncertainty relations of the collective coupling.
//! - [`qudit`]: n-level probability recovery from n-1 power moments.
//! - [`experiment`]: declarative, seeded batch runs behind the CLI.
//!
//! ```
//! use dicke_pointer::ensemble::{residual_norm, SymmetricState};
//! use dicke_pointer::spin::SpinState;
//!
//! // A balanced sample of 64 spins is close to an Mx eigenstate: the
//! // residual is delta_sigma / sqrt(N) = 1/8.
//! let psi = SpinState::balanced();
//! let sample = SymmetricState::from_product_state(&psi, 64).unwrap();
//! let r = residual_norm(&sample, psi.sigma_bar());
//! assert!((r - 0.125).abs() < 1e-12);
//! ```
//!
//! Runnable walkthroughs of each capability live in `examples/`; the
//! `dicke-pointer` binary exposes the same sweeps as batch subcommands.

pub mod disturbance;
pub mod ensemble;
pub mod error;
pub mod experiment;
pub mod pointer;
pub mod postselect;
pub mod qudit;
pub mod spin;

pub use error::{Error, Result};
