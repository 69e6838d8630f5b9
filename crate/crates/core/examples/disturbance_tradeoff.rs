//! Precise yet gentle: the accuracy-disturbance window.
//!
//! With Delta P = 1/(eps sqrt(N)) the probability that not a single spin
//! flips approaches exp(-eps^2 delta_sigma^2), so for eps << 1 the sample
//! survives intact even though the collective reading becomes arbitrarily
//! precise once N >> 1/eps^2. The table also flags whether the pointer can
//! resolve the 2/N eigenvalue gap (it never can in this regime).
//!
//! Run: cargo run --release -p dicke-pointer --example disturbance_tradeoff

use dicke_pointer::disturbance::{accuracy_tradeoff_sweep, uncertainty_check};
use dicke_pointer::ensemble::SymmetricState;
use dicke_pointer::spin::SpinState;

fn main() {
    let psi = SpinState::balanced();
    let rows = accuracy_tradeoff_sweep(
        &psi,
        &[0.01, 0.1, 1.0, 10.0],
        &[10, 100, 10_000],
    )
    .unwrap();
    println!(
        "{:>7} {:>7} {:>11} {:>11} {:>9} {:>13} {:>13}",
        "eps", "N", "Delta P", "gap ratio", "order-1?", "no-flip", "exp(-eps^2)"
    );
    for r in rows {
        println!(
            "{:>7} {:>7} {:>11.4e} {:>11.4e} {:>9} {:>13.6e} {:>13.6e}",
            r.epsilon,
            r.n,
            r.delta_p,
            r.gap_ratio,
            if r.resolves_order_one { "yes" } else { "no" },
            r.no_flip_exact,
            r.no_flip_estimate,
        );
    }

    println!();
    println!("uncertainty relations on a z-polarized sample (N = 8):");
    let z_pol = SpinState::rotate_to_axis(std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2);
    let state = SymmetricState::from_product_state(&z_pol, 8).unwrap();
    let report = uncertainty_check(&state).unwrap();
    println!(
        "  Delta Mx Delta My = {:.6e} >= |<Mz>|/N = {:.6e} (saturated)",
        report.collective.lhs, report.collective.rhs
    );
    println!(
        "  Delta sigma_z Delta Mx = {:.6e} >= |<sigma_y>|/N = {:.6e}",
        report.single_spin.lhs, report.single_spin.rhs
    );
}
