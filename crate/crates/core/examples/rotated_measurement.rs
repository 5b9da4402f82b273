//! Rotating the probe before a rotated readout changes nothing: the
//! measurement operators and POVM are those of the unrotated scheme.
//!
//! cargo run --example rotated_measurement

use std::f64::consts::PI;

use qrepeater::qubit::{self, ProbeConfig};

fn main() -> qrepeater::Result<()> {
    let cfg = ProbeConfig::optimal(PI / 3.0)?;
    let base = qubit::build_scheme(cfg);
    let base_povm = qubit::povm_from_joint_evolution(cfg);
    println!(
        "{:>8}  {:>8}  {:>12}  {:>12}",
        "θ_m", "φ_m", "max |ΔA_k|", "max |ΔΠ_k|"
    );
    for (theta_m, phi_m) in [(0.3, 0.0), (1.0, 2.0), (PI / 2.0, PI), (2.9, 5.5)] {
        let rotated = qubit::rotated_scheme(cfg, theta_m, phi_m);
        let povm = qubit::rotated_povm_from_joint_evolution(cfg, theta_m, phi_m);
        let mut dk: f64 = 0.0;
        let mut dp: f64 = 0.0;
        for k in 0..2 {
            dk = dk.max(rotated.kraus()[k].max_abs_diff(&base.kraus()[k])?);
            dp = dp.max(povm[k].max_abs_diff(&base_povm[k])?);
        }
        println!("{theta_m:>8.3}  {phi_m:>8.3}  {dk:>12.2e}  {dp:>12.2e}");
    }
    Ok(())
}
