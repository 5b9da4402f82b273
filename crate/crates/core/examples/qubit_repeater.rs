//! The qubit repeater along its optimal family: how much transmission
//! fidelity each unit of estimation fidelity costs.
//!
//! cargo run --example qubit_repeater

use std::f64::consts::PI;

use qrepeater::qubit::{self, bound_residual, ProbeConfig};
use qrepeater::Ket;

fn main() -> qrepeater::Result<()> {
    println!("{:>8}  {:>8}  {:>8}  {:>10}", "θ₂/π", "F", "G", "residual");
    for i in 0..=8 {
        let theta2 = i as f64 * PI / 8.0;
        let scheme = qubit::build_scheme(ProbeConfig::optimal(theta2)?);
        let avg = scheme.average_fidelities();
        println!(
            "{:>8.3}  {:>8.5}  {:>8.5}  {:>10.2e}",
            theta2 / PI,
            avg.transmission,
            avg.estimation,
            bound_residual(avg.transmission, avg.estimation)
        );
    }

    // a non-zero probe phase falls strictly inside the allowed region
    let off = qubit::build_scheme(ProbeConfig::new(PI / 2.0, PI / 3.0)?).average_fidelities();
    println!(
        "\nφ₂ = π/3: F = {:.5}, G = {:.5}, residual {:.4}",
        off.transmission,
        off.estimation,
        bound_residual(off.transmission, off.estimation)
    );

    // what a single signal goes through
    let scheme = qubit::build_scheme(ProbeConfig::optimal(PI / 3.0)?);
    let psi = Ket::normalized(vec![
        qrepeater::Complex::new(0.8, 0.0),
        qrepeater::Complex::new(0.0, 0.6),
    ])?;
    for o in scheme.measure(&psi)? {
        println!("outcome {}: p = {:.4}", o.index, o.probability);
    }
    let p = scheme.state_fidelities(&psi)?;
    println!("F_ψ = {:.5}, G_ψ = {:.5}", p.transmission, p.estimation);
    Ok(())
}
