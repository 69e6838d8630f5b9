//! The analytic Gaussian kernel every norm in the crate reduces to.
//!
//! Same-width Gaussians overlap as exp(-(a-b)^2 / (8 DP^2)); the log channel
//! keeps far-separated overlaps exact where the linear value underflows.
//!
//! Run: cargo run --release -p dicke-pointer --example pointer_overlaps

use dicke_pointer::pointer::{GaussianPointer, PointerSuperposition};
use num_complex::Complex64;

fn main() {
    println!("{:>12} {:>8} {:>14} {:>14}", "separation", "width", "overlap", "ln|overlap|");
    for (sep, width) in [(0.0, 1.0), (1.0, 1.0), (3.0, 1.0), (1.0, 0.25), (10.0, 0.1)] {
        let a = PointerSuperposition::from_single(GaussianPointer::unit(0.0, width).unwrap());
        let b = PointerSuperposition::from_single(GaussianPointer::unit(sep, width).unwrap());
        let linear = a.overlap(&b).unwrap().re;
        let log = a.overlap_log(&b).unwrap();
        println!(
            "{:>12} {:>8} {:>14.6e} {:>14.4}",
            sep,
            width,
            linear,
            log.ln_magnitude()
        );
    }

    println!();
    println!("interference inside a two-branch superposition:");
    let cat = PointerSuperposition::new(vec![
        GaussianPointer::new(-1.0, 0.5, Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0))
            .unwrap(),
        GaussianPointer::new(1.0, 0.5, Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0))
            .unwrap(),
    ])
    .unwrap();
    println!("  symmetric branches at +/-1, width 0.5: norm^2 = {:.6}", cat.norm_sq());
    let odd = PointerSuperposition::new(vec![
        GaussianPointer::new(-1.0, 0.5, Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0))
            .unwrap(),
        GaussianPointer::new(1.0, 0.5, Complex64::new(-std::f64::consts::FRAC_1_SQRT_2, 0.0))
            .unwrap(),
    ])
    .unwrap();
    println!("  antisymmetric branches:               norm^2 = {:.6}", odd.norm_sq());
    println!("  (cross term 2 * (1/2) * exp(-4/(8*0.25)) = +/-{:.6})", (-2.0_f64).exp());
}
