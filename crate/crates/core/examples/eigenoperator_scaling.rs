//! How a product state becomes an Mx eigenstate as the sample grows.
//!
//! The residual ||(Mx - sigma_bar)|Psi>|| equals delta_sigma/sqrt(N) for a
//! product state, so it vanishes at the 1/sqrt(N) rate; the Hartle/Graham
//! frequency operator shows the same decay toward |c+|^2.
//!
//! Run: cargo run --release -p dicke-pointer --example eigenoperator_scaling

use dicke_pointer::ensemble::{frequency_operator_residual, residual_norm, SymmetricState};
use dicke_pointer::spin::SpinState;

fn main() {
    let psi = SpinState::from_prob_plus(0.8).unwrap();
    println!("state: |c+|^2 = 0.8, sigma_bar = {}, delta_sigma = {}", psi.sigma_bar(), psi.delta_sigma());
    println!();
    println!("{:>9} {:>14} {:>14} {:>14} {:>14}", "N", "mx_residual", "ds/sqrt(N)", "freq_residual", "sqrt(pq/N)");

    let mut log_points = Vec::new();
    for e in (2..=20).step_by(2) {
        let n = 1usize << e;
        let state = SymmetricState::from_product_state(&psi, n).unwrap();
        let r = residual_norm(&state, psi.sigma_bar());
        let f = frequency_operator_residual(&state);
        let nf = n as f64;
        println!(
            "{:>9} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e}",
            n,
            r,
            psi.delta_sigma() / nf.sqrt(),
            f,
            (psi.prob_plus() * psi.prob_minus() / nf).sqrt()
        );
        log_points.push((nf.ln(), r.ln()));
    }

    // Least-squares slope of ln r vs ln N.
    let m = log_points.len() as f64;
    let mx = log_points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = log_points.iter().map(|p| p.1).sum::<f64>() / m;
    let cov: f64 = log_points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let var: f64 = log_points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    println!();
    println!("fitted scaling exponent: {:+.9}  (expected -0.5)", cov / var);
}
