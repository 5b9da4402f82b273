//! The d-dimensional repeater: generalized C-not `|i⟩|s⟩ → |i⟩|i⊕s⟩` and a
//! probe `cos θ₂|0⟩ + γ sin θ₂ (1/√d) Σ_s |s⟩`.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Complex, ComplexMatrix, Ket};
use crate::scheme::{probe_kraus_operators, FidelityPair, MeasurementScheme};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuditProbeConfig {
    d: usize,
    theta2: f64,
}

impl QuditProbeConfig {
    /// `d ≥ 2`, `theta2 ∈ [0, π/2]`.
    pub fn new(d: usize, theta2: f64) -> Result<Self> {
        if d < 2 {
            return Err(Error::Domain(format!("dimension d = {d} < 2")));
        }
        if !theta2.is_finite() || !(0.0..=FRAC_PI_2).contains(&theta2) {
            return Err(Error::Domain(format!("theta2 = {theta2} not in [0, π/2]")));
        }
        Ok(Self { d, theta2 })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn theta2(&self) -> f64 {
        self.theta2
    }
}

/// Center `(F₀, G₀)` of the d-dimensional trade-off ellipse.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DBoundConstants {
    pub f0: f64,
    pub g0: f64,
}

impl DBoundConstants {
    pub fn new(d: usize) -> Self {
        let d = d as f64;
        Self {
            f0: 0.5 * (d + 2.0) / (d + 1.0),
            g0: 1.5 / (d + 1.0),
        }
    }
}

/// Probe normalization `γ = (√(1 + d tan²θ₂) − 1)/(√d tan θ₂)`.
///
/// Evaluated as `√d sin θ₂ / (√(cos²θ₂ + d sin²θ₂) + cos θ₂)`, which is the
/// same quantity without cancellation or a tangent; the endpoint limits 0 and
/// 1 are returned exactly.
pub fn gamma(d: usize, theta2: f64) -> f64 {
    if theta2 == 0.0 {
        return 0.0;
    }
    if theta2 == FRAC_PI_2 {
        return 1.0;
    }
    let sd = (d as f64).sqrt();
    let (s, c) = theta2.sin_cos();
    sd * s / ((c * c + d as f64 * s * s).sqrt() + c)
}

/// Amplitudes of the probe for an arbitrary weight `g` on the uniform
/// superposition; [`gamma`] is the value that normalizes it.
pub fn probe_amplitudes(d: usize, theta2: f64, g: f64) -> Vec<Complex> {
    let (s, c) = theta2.sin_cos();
    let spread = g * s / (d as f64).sqrt();
    let mut amps = vec![Complex::new(spread, 0.0); d];
    amps[0] += c;
    amps
}

pub fn build_probe_qudit(cfg: QuditProbeConfig) -> Ket {
    Ket::from_unit(probe_amplitudes(
        cfg.d,
        cfg.theta2,
        gamma(cfg.d, cfg.theta2),
    ))
    .expect("gamma normalizes the probe")
}

/// d²×d² permutation `|i⟩|s⟩ → |i⟩|(i+s) mod d⟩`, signal as the major index.
pub fn cnot_d(d: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for s in 0..d {
            m[(i * d + (i + s) % d, i * d + s)] = Complex::new(1.0, 0.0);
        }
    }
    m
}

/// `A_k = ⟨k|_p C_d |ω⟩_p`, probe read out in the computational basis,
/// inference `k → |k⟩`.
pub fn build_scheme_qudit(cfg: QuditProbeConfig) -> MeasurementScheme {
    let basis: Vec<Ket> = (0..cfg.d).map(|k| Ket::basis(cfg.d, k)).collect();
    let kraus = probe_kraus_operators(&cnot_d(cfg.d), cfg.d, &build_probe_qudit(cfg), &basis)
        .expect("shapes are fixed");
    MeasurementScheme::with_basis_inference(kraus).expect("normalized probe gives a complete set")
}

/// Diagonal operators `(A_k)_jj = δ_kj cos θ₂ + γ sin θ₂/√d` written down
/// directly.
pub fn diagonal_operators(cfg: QuditProbeConfig) -> Vec<ComplexMatrix> {
    operators_for_amplitudes(&probe_amplitudes(
        cfg.d,
        cfg.theta2,
        gamma(cfg.d, cfg.theta2),
    ))
}

/// `(A_k)_jj = ω_{(k−j) mod d}`: the operators `⟨k|C_d|ω⟩` for arbitrary
/// (possibly unnormalized) probe amplitudes `ω`.
pub fn operators_for_amplitudes(probe: &[Complex]) -> Vec<ComplexMatrix> {
    let d = probe.len();
    (0..d)
        .map(|k| {
            let diag: Vec<Complex> = (0..d).map(|j| probe[(k + d - j) % d]).collect();
            ComplexMatrix::diagonal(&diag)
        })
        .collect()
}

/// Closed-form fidelities for a probe with superposition weight `g`:
/// `F = [1 + (cos θ₂ + g√d sin θ₂)²]/(d+1)`,
/// `G = [1 + (cos θ₂ + (g/√d) sin θ₂)²]/(d+1)`.
pub fn fidelities_for_gamma(d: usize, theta2: f64, g: f64) -> FidelityPair {
    let df = d as f64;
    let sd = df.sqrt();
    let (s, c) = theta2.sin_cos();
    FidelityPair::new(
        (1.0 + (c + g * sd * s).powi(2)) / (df + 1.0),
        (1.0 + (c + g / sd * s).powi(2)) / (df + 1.0),
    )
}

pub fn analytic_fidelities_qudit(cfg: QuditProbeConfig) -> FidelityPair {
    fidelities_for_gamma(cfg.d, cfg.theta2, gamma(cfg.d, cfg.theta2))
}

/// `(F−F₀)² + d²(G−G₀)² + 2(d−2)(F−F₀)(G−G₀) − (d−1)/(d+1)²`.
pub fn bound_residual_d(d: usize, f: f64, g: f64) -> f64 {
    let DBoundConstants { f0, g0 } = DBoundConstants::new(d);
    let df = d as f64;
    let (x, y) = (f - f0, g - g0);
    x * x + df * df * y * y + 2.0 * (df - 2.0) * x * y - (df - 1.0) / (df + 1.0).powi(2)
}
