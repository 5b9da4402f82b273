//! The minimal qubit repeater.
//!
//! The signal qubit controls a C-not on a probe qubit prepared in
//! `R(θ₂, φ₂)|0⟩`; the probe is then measured along z and outcome `k` is
//! read as "the signal was `|k⟩`". With `φ₂ = 0` every `θ₂ ∈ [0, π]` lands
//! exactly on the boundary of the qubit trade-off region
//! `(F − 2/3)² + 4(G − 1/2)² ≤ 1/9`.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Complex, ComplexMatrix, Ket};
use crate::scheme::{probe_kraus_operators, probe_povm_element, FidelityPair, MeasurementScheme};

/// Probe preparation angles.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProbeConfig {
    theta2: f64,
    phi2: f64,
}

impl ProbeConfig {
    /// `theta2 ∈ [0, π]`, `phi2 ∈ [0, 2π)`.
    pub fn new(theta2: f64, phi2: f64) -> Result<Self> {
        if !theta2.is_finite() || !(0.0..=PI).contains(&theta2) {
            return Err(Error::Domain(format!("theta2 = {theta2} not in [0, π]")));
        }
        if !phi2.is_finite() || !(0.0..TAU).contains(&phi2) {
            return Err(Error::Domain(format!("phi2 = {phi2} not in [0, 2π)")));
        }
        Ok(Self { theta2, phi2 })
    }

    /// `phi2 = 0`, the family that saturates the bound.
    pub fn optimal(theta2: f64) -> Result<Self> {
        Self::new(theta2, 0.0)
    }

    pub fn theta2(&self) -> f64 {
        self.theta2
    }

    pub fn phi2(&self) -> f64 {
        self.phi2
    }
}

/// An `(F, G)` pair with its qubit bound residual.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundPoint {
    #[serde(rename = "F")]
    pub f: f64,
    #[serde(rename = "G")]
    pub g: f64,
    pub residual: f64,
}

impl BoundPoint {
    pub fn new(f: f64, g: f64) -> Self {
        Self {
            f,
            g,
            residual: bound_residual(f, g),
        }
    }
}

impl From<FidelityPair> for BoundPoint {
    fn from(p: FidelityPair) -> Self {
        Self::new(p.transmission, p.estimation)
    }
}

/// Qubit rotation with `R|0⟩ = cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩` and
/// `R|1⟩ = −e^{−iφ} sin(θ/2)|0⟩ + cos(θ/2)|1⟩` (unitary, det 1).
pub fn rotation(theta: f64, phi: f64) -> ComplexMatrix {
    let (s, c) = (theta / 2.0).sin_cos();
    let e = Complex::from_polar(1.0, phi);
    let mut r = ComplexMatrix::zeros(2, 2);
    r[(0, 0)] = Complex::new(c, 0.0);
    r[(1, 0)] = e * s;
    r[(0, 1)] = -e.conj() * s;
    r[(1, 1)] = Complex::new(c, 0.0);
    r
}

/// `cos(θ₁/2)|0⟩ + e^{iφ₁} sin(θ₁/2)|1⟩`.
pub fn make_signal(theta1: f64, phi1: f64) -> Ket {
    let (s, c) = (theta1 / 2.0).sin_cos();
    Ket::normalized(vec![Complex::new(c, 0.0), Complex::from_polar(s, phi1)]).expect("unit vector")
}

pub fn build_probe(cfg: ProbeConfig) -> Ket {
    make_signal(cfg.theta2, cfg.phi2)
}

/// C-not with the signal (major index) as control: `|i⟩|s⟩ → |i⟩|i⊕s⟩`.
pub fn cnot() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
        &[0.0, 0.0, 1.0, 0.0],
    ])
    .expect("4x4 literal")
}

fn z_basis() -> [Ket; 2] {
    [Ket::basis(2, 0), Ket::basis(2, 1)]
}

/// `A_k = ⟨k|_p C |ω⟩_p`, built from the gate, with inference `k → |k⟩`.
pub fn build_scheme(cfg: ProbeConfig) -> MeasurementScheme {
    let kraus =
        probe_kraus_operators(&cnot(), 2, &build_probe(cfg), &z_basis()).expect("shapes are fixed");
    MeasurementScheme::with_basis_inference(kraus).expect("C-not scheme is complete")
}

/// The same operators written out in the standard basis:
/// `A₀ = diag(cos(θ₂/2), e^{iφ₂} sin(θ₂/2))`, `A₁ = diag(e^{iφ₂} sin(θ₂/2), cos(θ₂/2))`.
pub fn standard_basis_operators(cfg: ProbeConfig) -> [ComplexMatrix; 2] {
    let (s, c) = (cfg.theta2 / 2.0).sin_cos();
    let c = Complex::new(c, 0.0);
    let es = Complex::from_polar(s, cfg.phi2);
    [
        ComplexMatrix::diagonal(&[c, es]),
        ComplexMatrix::diagonal(&[es, c]),
    ]
}

/// POVM elements obtained by tracing the probe out of the joint evolution.
pub fn povm_from_joint_evolution(cfg: ProbeConfig) -> Vec<ComplexMatrix> {
    let probe = build_probe(cfg);
    z_basis()
        .iter()
        .map(|k| probe_povm_element(&cnot(), 2, &probe, k).expect("shapes are fixed"))
        .collect()
}

/// `F = (2/3)(1 + sin(θ₂/2)cos(θ₂/2)cos φ₂)`, `G = (1/3)(1 + cos²(θ₂/2))`.
pub fn analytic_fidelities(cfg: ProbeConfig) -> FidelityPair {
    let (s, c) = (cfg.theta2 / 2.0).sin_cos();
    FidelityPair::new(
        2.0 / 3.0 * (1.0 + s * c * cfg.phi2.cos()),
        (1.0 + c * c) / 3.0,
    )
}

/// Upper boundary of the qubit trade-off region,
/// `F = (2/3)(1 + √(−9G² + 9G − 2))`, for `G ∈ [1/3, 2/3]` where the
/// radicand is non-negative. The `φ₂ = 0` scheme traces it for every
/// `θ₂ ∈ [0, π]`; `θ₂ ≤ π/2` covers `G ∈ [1/2, 2/3]`.
pub fn tradeoff_f_of_g(g: f64) -> Result<f64> {
    if !(1.0 / 3.0..=2.0 / 3.0).contains(&g) {
        return Err(Error::Domain(format!("G = {g} not in [1/3, 2/3]")));
    }
    // (3G − 1)(2 − 3G) = −9G² + 9G − 2, factored to keep the endpoints exact
    let radicand = snap_to_zero((3.0 * g - 1.0) * (2.0 - 3.0 * g), 0.25);
    Ok(2.0 / 3.0 * (1.0 + radicand.sqrt()))
}

/// Zeroes a radicand that is within rounding of zero relative to its largest
/// attainable value `scale`. Near a square-root endpoint a one-ulp error in
/// the argument would otherwise become a `√ε ≈ 1e−8` error in the result.
pub(crate) fn snap_to_zero(radicand: f64, scale: f64) -> f64 {
    if radicand < 1e-14 * scale {
        0.0
    } else {
        radicand
    }
}

/// `(F − 2/3)² + 4(G − 1/2)² − 1/9`: negative inside the allowed region,
/// zero on its boundary.
pub fn bound_residual(f: f64, g: f64) -> f64 {
    (f - 2.0 / 3.0).powi(2) + 4.0 * (g - 0.5).powi(2) - 1.0 / 9.0
}

/// Scheme with the gate `W = (𝕀 ⊗ R_m)·C`, the probe read out in the rotated
/// basis `|k⟩_m = R_m|k⟩`, and the z-basis inference rule retained.
///
/// The projection `⟨k|R_m†` undoes the rotation, so the operators coincide
/// with [`build_scheme`].
pub fn rotated_scheme(cfg: ProbeConfig, theta_m: f64, phi_m: f64) -> MeasurementScheme {
    let kraus = probe_kraus_operators(
        &rotated_gate(theta_m, phi_m),
        2,
        &build_probe(cfg),
        &rotated_basis(theta_m, phi_m),
    )
    .expect("shapes are fixed");
    MeasurementScheme::with_basis_inference(kraus).expect("rotation preserves completeness")
}

/// POVM of the rotated scheme from the joint evolution under `W`.
pub fn rotated_povm_from_joint_evolution(
    cfg: ProbeConfig,
    theta_m: f64,
    phi_m: f64,
) -> Vec<ComplexMatrix> {
    let gate = rotated_gate(theta_m, phi_m);
    let probe = build_probe(cfg);
    rotated_basis(theta_m, phi_m)
        .iter()
        .map(|k| probe_povm_element(&gate, 2, &probe, k).expect("shapes are fixed"))
        .collect()
}

fn rotated_gate(theta_m: f64, phi_m: f64) -> ComplexMatrix {
    ComplexMatrix::identity(2)
        .tensor_product(&rotation(theta_m, phi_m))
        .mul(&cnot())
        .expect("4x4")
}

fn rotated_basis(theta_m: f64, phi_m: f64) -> Vec<Ket> {
    let r = rotation(theta_m, phi_m);
    z_basis()
        .iter()
        .map(|k| Ket::normalized(r.apply(k.amplitudes()).expect("2x2")).expect("unitary image"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::TOLERANCE;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

    fn r(x: f64) -> Complex {
        Complex::new(x, 0.0)
    }

    fn assert_ket_eq(a: &Ket, b: &[Complex]) {
        for (x, y) in a.amplitudes().iter().zip(b) {
            assert!((x - y).norm() < 1e-15, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn probe_config_rejects_out_of_range() {
        assert!(ProbeConfig::new(-0.1, 0.0).is_err());
        assert!(ProbeConfig::new(3.2, 0.0).is_err());
        assert!(ProbeConfig::new(1.0, TAU).is_err());
        assert!(ProbeConfig::new(f64::NAN, 0.0).is_err());
        assert!(ProbeConfig::new(PI, 0.0).is_ok());
    }

    #[test]
    fn signal_examples() {
        let h = 0.5f64.sqrt();
        assert_ket_eq(&make_signal(0.0, 0.0), &[r(1.0), r(0.0)]);
        assert_ket_eq(&make_signal(PI, 0.0), &[r(0.0), r(1.0)]);
        assert_ket_eq(&make_signal(FRAC_PI_2, 0.0), &[r(h), r(h)]);
    }

    #[test]
    fn probe_examples() {
        let h = 0.5f64.sqrt();
        assert_ket_eq(
            &build_probe(ProbeConfig::optimal(0.0).unwrap()),
            &[r(1.0), r(0.0)],
        );
        assert_ket_eq(
            &build_probe(ProbeConfig::optimal(FRAC_PI_2).unwrap()),
            &[r(h), r(h)],
        );
        assert_ket_eq(
            &build_probe(ProbeConfig::new(FRAC_PI_2, FRAC_PI_2).unwrap()),
            &[r(h), Complex::new(0.0, h)],
        );
    }

    #[test]
    fn rotation_is_special_unitary() {
        let rot = rotation(1.234, 4.321);
        let prod = rot.adjoint().mul(&rot).unwrap();
        assert!(prod.max_abs_diff(&ComplexMatrix::identity(2)).unwrap() < 1e-15);
        let det = rot[(0, 0)] * rot[(1, 1)] - rot[(0, 1)] * rot[(1, 0)];
        assert!((det - r(1.0)).norm() < 1e-15);
    }

    #[test]
    fn scheme_examples() {
        let s = build_scheme(ProbeConfig::optimal(0.0).unwrap());
        assert_eq!(s.kraus()[0], ComplexMatrix::diagonal(&[r(1.0), r(0.0)]));
        assert_eq!(s.kraus()[1], ComplexMatrix::diagonal(&[r(0.0), r(1.0)]));

        let s = build_scheme(ProbeConfig::optimal(FRAC_PI_2).unwrap());
        let expected = ComplexMatrix::identity(2).scale(r(0.5f64.sqrt()));
        for a in s.kraus() {
            assert!(a.max_abs_diff(&expected).unwrap() < 1e-15);
        }
    }

    #[test]
    fn gate_construction_matches_standard_basis() {
        for (t, p) in [(0.0, 0.0), (0.7, 1.9), (PI, 5.0), (2.2, 0.3)] {
            let cfg = ProbeConfig::new(t, p).unwrap();
            let s = build_scheme(cfg);
            assert!(s.completeness_defect() <= TOLERANCE);
            for (a, b) in s.kraus().iter().zip(standard_basis_operators(cfg)) {
                assert!(a.max_abs_diff(&b).unwrap() < 1e-15);
            }
            for (a, b) in s.povm().iter().zip(povm_from_joint_evolution(cfg)) {
                assert!(a.max_abs_diff(&b).unwrap() < 1e-15);
            }
        }
    }

    #[test]
    fn analytic_examples() {
        let f = analytic_fidelities(ProbeConfig::optimal(0.0).unwrap());
        assert!(f.max_abs_diff(&FidelityPair::new(2.0 / 3.0, 2.0 / 3.0)) < 1e-15);
        let f = analytic_fidelities(ProbeConfig::optimal(FRAC_PI_2).unwrap());
        assert!(f.max_abs_diff(&FidelityPair::new(1.0, 0.5)) < 1e-15);
        let f = analytic_fidelities(ProbeConfig::optimal(FRAC_PI_3).unwrap());
        let expected = FidelityPair::new(2.0 / 3.0 + 3f64.sqrt() / 6.0, 7.0 / 12.0);
        assert!(f.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn tradeoff_examples() {
        assert!((tradeoff_f_of_g(0.5).unwrap() - 1.0).abs() < 1e-15);
        assert!((tradeoff_f_of_g(2.0 / 3.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        let f = tradeoff_f_of_g(7.0 / 12.0).unwrap();
        assert!((f - (2.0 / 3.0 + 3f64.sqrt() / 6.0)).abs() < 1e-15);
        assert!(tradeoff_f_of_g(0.33).is_err());
        assert!(tradeoff_f_of_g(0.7).is_err());
        assert!((tradeoff_f_of_g(1.0 / 3.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn bound_residual_examples() {
        assert!(bound_residual(1.0, 0.5).abs() < 1e-16);
        assert!(bound_residual(2.0 / 3.0, 2.0 / 3.0).abs() < 1e-16);
        assert!((bound_residual(2.0 / 3.0, 0.5) + 1.0 / 9.0).abs() < 1e-16);
    }

    #[test]
    fn off_axis_phase_is_suboptimal() {
        for i in 1..20 {
            for j in 1..20 {
                let cfg = ProbeConfig::new(PI * i as f64 / 20.0, PI * j as f64 / 20.0).unwrap();
                assert!(BoundPoint::from(analytic_fidelities(cfg)).residual < 0.0);
            }
        }
    }

    #[test]
    fn rotated_examples() {
        let cfg = ProbeConfig::new(1.1, 0.4).unwrap();
        let base = build_scheme(cfg);
        for (tm, pm) in [(0.0, 0.0), (FRAC_PI_2, 0.0), (2.5, 4.0)] {
            let rot = rotated_scheme(cfg, tm, pm);
            for (a, b) in rot.kraus().iter().zip(base.kraus()) {
                assert!(a.max_abs_diff(b).unwrap() < TOLERANCE);
            }
            for (a, b) in rotated_povm_from_joint_evolution(cfg, tm, pm)
                .iter()
                .zip(base.povm())
            {
                assert!(a.max_abs_diff(&b).unwrap() < TOLERANCE);
            }
            assert_eq!(rot.inference(), base.inference());
        }
    }

    #[test]
    fn rotated_readout_in_inverse_basis_breaks_equivalence() {
        // reading the probe in R_m†|k⟩ leaves R_m² in front of C
        let cfg = ProbeConfig::optimal(FRAC_PI_3).unwrap();
        let gate = rotated_gate(FRAC_PI_2, 0.0);
        let inv = rotation(FRAC_PI_2, 0.0).adjoint();
        let basis: Vec<Ket> = z_basis()
            .iter()
            .map(|k| Ket::normalized(inv.apply(k.amplitudes()).unwrap()).unwrap())
            .collect();
        let kraus = probe_kraus_operators(&gate, 2, &build_probe(cfg), &basis).unwrap();
        let base = build_scheme(cfg);
        assert!(kraus[0].max_abs_diff(&base.kraus()[0]).unwrap() > 0.1);
    }
}
