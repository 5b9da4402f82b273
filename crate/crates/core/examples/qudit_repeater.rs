//! The d-level repeater built from the generalized C-not. Prints where the
//! optimal family starts and ends for a few dimensions and confirms it
//! stays on the boundary in between.
//!
//! cargo run --example qudit_repeater

use std::f64::consts::FRAC_PI_2;

use qrepeater::qudit::{self, bound_residual_d, QuditProbeConfig};
use qrepeater::sweep::inclusive_grid;

fn main() -> qrepeater::Result<()> {
    println!(
        "{:>3}  {:>17}  {:>17}  {:>10}",
        "d", "(F, G) at θ₂ = 0", "(F, G) at π/2", "max |res|"
    );
    for d in [2, 3, 4, 5, 8, 16] {
        let ends = [0.0, FRAC_PI_2].map(|t| {
            qudit::build_scheme_qudit(QuditProbeConfig::new(d, t).unwrap()).average_fidelities()
        });
        let worst = inclusive_grid(0.0, FRAC_PI_2, 46)
            .into_iter()
            .map(|t| {
                let avg = qudit::build_scheme_qudit(QuditProbeConfig::new(d, t).unwrap())
                    .average_fidelities();
                bound_residual_d(d, avg.transmission, avg.estimation).abs()
            })
            .fold(0.0, f64::max);
        println!(
            "{d:>3}  ({:.4}, {:.4})  ({:.4}, {:.4})  {worst:>10.2e}",
            ends[0].transmission, ends[0].estimation, ends[1].transmission, ends[1].estimation
        );
    }

    let cfg = QuditProbeConfig::new(3, 0.6)?;
    println!("\nd = 3, θ₂ = 0.6: γ = {:.6}", qudit::gamma(3, 0.6));
    for (k, a) in qudit::diagonal_operators(cfg).iter().enumerate() {
        let diag: Vec<String> = (0..3).map(|j| format!("{:.4}", a[(j, j)].re)).collect();
        println!("  A_{k} = diag({})", diag.join(", "));
    }
    Ok(())
}
