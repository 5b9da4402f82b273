//! Restricted signal ensembles. A discrete real alphabet beats the
//! whole-sphere trade-off; adding random phases (rings) falls back below it.
//!
//! cargo run --example alphabets

use std::f64::consts::FRAC_PI_2;

use qrepeater::alphabets::{
    beats_bound, bound_f, class_a_mean, class_b_mean, AlphabetMoment, DiscreteAlphabet,
    RingAlphabet,
};
use qrepeater::sweep::inclusive_grid;

fn main() -> qrepeater::Result<()> {
    let grid = inclusive_grid(0.0, FRAC_PI_2, 181);
    println!(
        "{:>5}  {:>10}  {:>10}  {:>14}  {:>14}",
        "N", "cos² (A)", "cos² (B)", "A above by", "B below by"
    );
    for n in [3, 4, 5, 7, 11, 100, 1000] {
        let mut above: f64 = 0.0;
        let mut below: f64 = 0.0;
        for &t in &grid {
            let a = class_a_mean(n, t)?;
            if let Some(f) = bound_f(a.estimation) {
                above = above.max(a.transmission - f);
            }
            let b = class_b_mean(n, t)?;
            below = below.max(bound_f(b.estimation).unwrap_or(1.0) - b.transmission);
        }
        println!(
            "{n:>5}  {:>10.6}  {:>10.6}  {above:>14.6}  {below:>14.6}",
            DiscreteAlphabet::new(n)?.moment().mean_cos2(),
            RingAlphabet::new(n)?.moment().mean_cos2(),
        );
    }

    println!("\nat θ₂ = 0 an ensemble beats the bound iff its mean cos²θ exceeds 1/3:");
    for m in [0.2, 1.0 / 3.0, 1.0 / 3.0 + 1e-9, 0.5] {
        println!("  {m:.10} → {}", beats_bound(AlphabetMoment::new(m)?, 0.0));
    }
    Ok(())
}
