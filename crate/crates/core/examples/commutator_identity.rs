//! Collective components commute in the large-N limit.
//!
//! [Mx, My] = 2i Mz / N holds as an exact matrix identity, and the
//! commutator norm is exactly 2/N, so the averaged components behave like
//! classical variables once N is large.
//!
//! Run: cargo run --release -p dicke-pointer --example commutator_identity

use dicke_pointer::ensemble::{commutator_norm_closed_form, commutator_residual};

fn main() {
    println!(
        "{:>6} {:>16} {:>14} {:>14}",
        "N", "identity_resid", "||[Mx,My]||", "2/N"
    );
    for n in [1usize, 2, 4, 10, 64, 100, 1000, 4096] {
        let check = commutator_residual(n).unwrap();
        println!(
            "{:>6} {:>16.3e} {:>14.6e} {:>14.6e}",
            n,
            check.identity_residual,
            check.commutator_norm,
            commutator_norm_closed_form(n)
        );
    }
    println!();
    println!("above the dense cap the closed form 2/N carries the sweep:");
    for e in [14u32, 17, 20] {
        let n = 1usize << e;
        println!("  N = 2^{e}: ||[Mx,My]|| = {:.6e}", commutator_norm_closed_form(n));
    }
}
