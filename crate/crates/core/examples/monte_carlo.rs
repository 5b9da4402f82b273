//! Monte-Carlo check of the closed-form averages: sample inputs, measure,
//! average, and compare. Results depend only on the seed, not on how many
//! threads run the shards.
//!
//! cargo run --release --example monte_carlo [samples] [seed]

use std::f64::consts::PI;

use qrepeater::alphabets::{class_b_mean, RingAlphabet};
use qrepeater::oracle::{
    mc_average_fidelities, BlochSphere, ClassBSampler, HaarQudit, SamplerConfig,
};
use qrepeater::qubit::{self, ProbeConfig};
use qrepeater::qudit::{self, QuditProbeConfig};
use qrepeater::FidelityPair;

fn main() -> qrepeater::Result<()> {
    let mut args = std::env::args().skip(1);
    let samples = args
        .next()
        .map_or(Ok(100_000), |s| s.parse())
        .expect("sample count");
    let seed = args.next().map_or(Ok(42), |s| s.parse()).expect("seed");
    let cfg = SamplerConfig::new(seed, samples)?;

    let qubit_scheme = qubit::build_scheme(ProbeConfig::optimal(PI / 3.0)?);
    let (f, g) = mc_average_fidelities(&qubit_scheme, &BlochSphere, cfg)?;
    row("qubit θ₂=π/3", qubit_scheme.average_fidelities(), f, g);

    for d in [3, 5] {
        let qcfg = QuditProbeConfig::new(d, PI / 6.0)?;
        let (f, g) =
            mc_average_fidelities(&qudit::build_scheme_qudit(qcfg), &HaarQudit { d }, cfg)?;
        row(
            &format!("qudit d={d} θ₂=π/6"),
            qudit::analytic_fidelities_qudit(qcfg),
            f,
            g,
        );
    }

    let (f, g) = mc_average_fidelities(&qubit_scheme, &ClassBSampler(RingAlphabet::new(5)?), cfg)?;
    row("class B N=5 θ₂=π/3", class_b_mean(5, PI / 3.0)?, f, g);
    Ok(())
}

fn row(
    label: &str,
    exact: FidelityPair,
    f: qrepeater::oracle::MCEstimate,
    g: qrepeater::oracle::MCEstimate,
) {
    println!(
        "{label:<20} F {:.5} ± {:.1e} (exact {:.5}, z {:+.2})   G {:.5} ± {:.1e} (exact {:.5}, z {:+.2})",
        f.mean,
        f.std_error,
        exact.transmission,
        f.z_score(exact.transmission),
        g.mean,
        g.std_error,
        exact.estimation,
        g.z_score(exact.estimation),
    );
}
