//! The large-N limit of the coupled state: |Psi>|(P - sigma_bar)>.
//!
//! The distance between U|Psi>|P> and the unentangled pointer shifted by
//! sigma_bar shrinks by 1/sqrt(2) per doubling of N, so in the limit the
//! measurement reads the expectation value while leaving the product state
//! intact.
//!
//! Run: cargo run --release -p dicke-pointer --example measurement_limit

use dicke_pointer::ensemble::SymmetricState;
use dicke_pointer::pointer::{couple_exact, GaussianPointer};
use dicke_pointer::spin::SpinState;

fn main() {
    let psi = SpinState::from_prob_plus(0.8).unwrap();
    let pointer = GaussianPointer::unit(0.0, 1.0).unwrap();
    println!("|c+|^2 = 0.8, pointer width 1, reference shift sigma_bar = {}", psi.sigma_bar());
    println!();
    println!("{:>8} {:>14} {:>12}", "N", "distance", "step ratio");
    let mut prev: Option<f64> = None;
    for e in 8..=16 {
        let n = 1usize << e;
        let state = SymmetricState::from_product_state(&psi, n).unwrap();
        let coupled = couple_exact(&state, &pointer).unwrap();
        let d = coupled.distance_sq_to_shifted(psi.sigma_bar()).sqrt();
        match prev {
            Some(p) => println!("{:>8} {:>14.6e} {:>12.8}", n, d, d / p),
            None => println!("{:>8} {:>14.6e} {:>12}", n, d, "-"),
        }
        prev = Some(d);
    }
    println!();
    println!("expected step ratio: 1/sqrt(2) = {:.8}", std::f64::consts::FRAC_1_SQRT_2);
}
