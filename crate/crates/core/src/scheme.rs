//! Quantum operations given as measurement operators plus an inference rule.
//!
//! A scheme with operators `A_k` maps a pure input `|ψ⟩` to outcome `k` with
//! probability `p_k = ⟨ψ|A_k†A_k|ψ⟩`, leaves `A_k|ψ⟩/√p_k` for the next
//! user and guesses the input to be `|φ_k⟩`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Complex, ComplexMatrix, Ket, TOLERANCE};

/// Below this probability an outcome carries no conditional state.
pub const NEGLIGIBLE_PROBABILITY: f64 = 1e-14;

/// Transmission (`F`) and estimation (`G`) fidelities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FidelityPair {
    pub transmission: f64,
    pub estimation: f64,
}

impl FidelityPair {
    pub fn new(transmission: f64, estimation: f64) -> Self {
        Self {
            transmission,
            estimation,
        }
    }

    /// Largest componentwise distance to `other`.
    pub fn max_abs_diff(&self, other: &FidelityPair) -> f64 {
        (self.transmission - other.transmission)
            .abs()
            .max((self.estimation - other.estimation).abs())
    }
}

#[derive(Clone, Debug)]
pub struct MeasurementOutcome {
    pub index: usize,
    pub probability: f64,
    /// `None` when `probability` < [`NEGLIGIBLE_PROBABILITY`].
    pub conditional: Option<Ket>,
}

#[derive(Clone, Debug)]
pub struct MeasurementScheme {
    dim: usize,
    kraus: Vec<ComplexMatrix>,
    inference: Vec<Ket>,
}

/// Max-norm of `Σ_k A_k†A_k − 𝕀`.
///
/// Returns infinity for an empty or non-square operator list.
pub fn completeness_defect(kraus: &[ComplexMatrix]) -> f64 {
    let Some(first) = kraus.first() else {
        return f64::INFINITY;
    };
    let d = first.rows();
    let mut sum = ComplexMatrix::zeros(d, d);
    for a in kraus {
        if !a.is_square() || a.rows() != d {
            return f64::INFINITY;
        }
        // shapes checked above
        sum = sum.add(&a.adjoint().mul(a).unwrap()).unwrap();
    }
    sum.max_abs_diff(&ComplexMatrix::identity(d)).unwrap()
}

impl MeasurementScheme {
    /// Validates completeness (within [`TOLERANCE`]) and that there is one
    /// unit-norm inference state of matching dimension per operator.
    pub fn new(kraus: Vec<ComplexMatrix>, inference: Vec<Ket>) -> Result<Self> {
        let dim = kraus
            .first()
            .ok_or_else(|| Error::InvalidScheme("no measurement operators".into()))?
            .rows();
        if kraus.len() != inference.len() {
            return Err(Error::InvalidScheme(format!(
                "{} operators but {} inference states",
                kraus.len(),
                inference.len()
            )));
        }
        for a in &kraus {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    found: if a.rows() != dim { a.rows() } else { a.cols() },
                });
            }
        }
        for phi in &inference {
            if phi.dim() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    found: phi.dim(),
                });
            }
            if (phi.norm_sqr() - 1.0).abs() > TOLERANCE {
                return Err(Error::InvalidScheme("inference state not unit norm".into()));
            }
        }
        let defect = completeness_defect(&kraus);
        if defect > TOLERANCE {
            return Err(Error::InvalidScheme(format!(
                "operators are not complete (defect {defect:e})"
            )));
        }
        Ok(Self {
            dim,
            kraus,
            inference,
        })
    }

    /// Inference rule `k → |k⟩`.
    pub fn with_basis_inference(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let d = kraus.first().map_or(0, ComplexMatrix::rows);
        if kraus.len() > d {
            return Err(Error::InvalidScheme(format!(
                "{} outcomes cannot be labelled by basis states of dimension {d}",
                kraus.len()
            )));
        }
        let inference = (0..kraus.len()).map(|k| Ket::basis(d, k)).collect();
        Self::new(kraus, inference)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn outcomes(&self) -> usize {
        self.kraus.len()
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn inference(&self) -> &[Ket] {
        &self.inference
    }

    pub fn completeness_defect(&self) -> f64 {
        completeness_defect(&self.kraus)
    }

    /// POVM elements `Π_k = A_k†A_k`.
    pub fn povm(&self) -> Vec<ComplexMatrix> {
        self.kraus
            .iter()
            .map(|a| a.adjoint().mul(a).expect("square operators"))
            .collect()
    }

    pub fn measure(&self, psi: &Ket) -> Result<Vec<MeasurementOutcome>> {
        self.check_dim(psi.dim())?;
        self.kraus
            .iter()
            .enumerate()
            .map(|(index, a)| {
                let out = a.apply(psi.amplitudes())?;
                let probability = crate::linalg::norm_sqr(&out);
                let conditional = if probability < NEGLIGIBLE_PROBABILITY {
                    None
                } else {
                    let s = probability.sqrt();
                    Some(Ket::normalized(out.into_iter().map(|z| z / s).collect())?)
                };
                Ok(MeasurementOutcome {
                    index,
                    probability,
                    conditional,
                })
            })
            .collect()
    }

    /// Fidelities for a single input: `F_ψ = Σ|⟨ψ|A_k|ψ⟩|²`,
    /// `G_ψ = Σ p_k |⟨ψ|φ_k⟩|²`.
    pub fn state_fidelities(&self, psi: &Ket) -> Result<FidelityPair> {
        self.check_dim(psi.dim())?;
        let v = psi.amplitudes();
        let mut f = 0.0;
        let mut g = 0.0;
        for (a, phi) in self.kraus.iter().zip(&self.inference) {
            let out = a.apply(v)?;
            f += crate::linalg::inner_product(v, &out)?.norm_sqr();
            let p = crate::linalg::norm_sqr(&out);
            g += p * psi.overlap(phi)?;
        }
        Ok(FidelityPair::new(f, g))
    }

    /// Averages over the whole state space (unitarily invariant measure):
    /// `F = (d + Σ|Tr A_k|²)/(d(d+1))`, `G = (d + Σ⟨φ_k|Π_k|φ_k⟩)/(d(d+1))`.
    pub fn average_fidelities(&self) -> FidelityPair {
        let d = self.dim as f64;
        let norm = d * (d + 1.0);
        let traces: f64 = self.kraus.iter().map(|a| a.trace().norm_sqr()).sum();
        let guesses: f64 = self
            .povm()
            .iter()
            .zip(&self.inference)
            .map(|(pi, phi)| pi.expectation(phi.amplitudes()).expect("dims checked").re)
            .sum();
        FidelityPair::new((d + traces) / norm, (d + guesses) / norm)
    }

    /// Unconditional output `Σ_k A_k ρ A_k†`.
    pub fn post_state(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if !rho.is_square() {
            return Err(Error::Dimension {
                expected: rho.rows(),
                found: rho.cols(),
            });
        }
        self.check_dim(rho.rows())?;
        let mut sigma = ComplexMatrix::zeros(self.dim, self.dim);
        for a in &self.kraus {
            sigma = sigma.add(&a.mul(rho)?.mul(&a.adjoint())?)?;
        }
        Ok(sigma)
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found,
            });
        }
        Ok(())
    }
}

/// Measurement operators of an indirect measurement: the signal interacts
/// with a probe prepared in `probe` through `gate` (signal is the major
/// tensor factor), then the probe is projected on `basis[k]`:
/// `A_k = (𝕀 ⊗ ⟨b_k|) · gate · (𝕀 ⊗ |ω⟩)`.
pub fn probe_kraus_operators(
    gate: &ComplexMatrix,
    signal_dim: usize,
    probe: &Ket,
    basis: &[Ket],
) -> Result<Vec<ComplexMatrix>> {
    let id = ComplexMatrix::identity(signal_dim);
    let attach = id.tensor_product(&probe.as_column());
    let coupled = gate.mul(&attach)?;
    basis
        .iter()
        .map(|b| {
            id.tensor_product(&ComplexMatrix::bra(b.amplitudes()))
                .mul(&coupled)
        })
        .collect()
}

/// POVM element from the joint evolution, tracing out the probe:
/// `Tr_p[gate (𝕀⊗|ω⟩⟨ω|) gate† (𝕀⊗|b⟩⟨b|)]`.
///
/// This equals `A A†` for the matching operator of [`probe_kraus_operators`],
/// hence `A†A` whenever `A` is normal.
pub fn probe_povm_element(
    gate: &ComplexMatrix,
    signal_dim: usize,
    probe: &Ket,
    outcome: &Ket,
) -> Result<ComplexMatrix> {
    let id = ComplexMatrix::identity(signal_dim);
    let prepared = id.tensor_product(&probe.projector());
    let evolved = gate.mul(&prepared)?.mul(&gate.adjoint())?;
    let joint = evolved.mul(&id.tensor_product(&outcome.projector()))?;
    joint.partial_trace_second(signal_dim, probe.dim())
}

/// Smallest value of `⟨v|M|v⟩` over the computational basis and the
/// uniform superpositions `(|i⟩ + e^{iα}|j⟩)/√2`, α ∈ {0, π/2, π, 3π/2}.
/// For a Hermitian `M` a negative result proves `M` is not positive
/// semidefinite.
pub fn min_probe_expectation(m: &ComplexMatrix) -> f64 {
    let d = m.rows();
    let mut worst = f64::INFINITY;
    let phases = [
        Complex::new(1.0, 0.0),
        Complex::new(0.0, 1.0),
        Complex::new(-1.0, 0.0),
        Complex::new(0.0, -1.0),
    ];
    for i in 0..d {
        let e = Ket::basis(d, i);
        worst = worst.min(m.expectation(e.amplitudes()).unwrap().re);
        for j in (i + 1)..d {
            for ph in phases {
                let mut v = vec![Complex::new(0.0, 0.0); d];
                v[i] = Complex::new(1.0, 0.0);
                v[j] = ph;
                let k = Ket::normalized(v).unwrap();
                worst = worst.min(m.expectation(k.amplitudes()).unwrap().re);
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;

    fn r(x: f64) -> Complex {
        Complex::new(x, 0.0)
    }

    /// Qubit repeater operators written directly in the standard basis.
    fn qubit_diag(theta2: f64) -> MeasurementScheme {
        let (c, s) = ((theta2 / 2.0).cos(), (theta2 / 2.0).sin());
        MeasurementScheme::with_basis_inference(vec![
            ComplexMatrix::diagonal(&[r(c), r(s)]),
            ComplexMatrix::diagonal(&[r(s), r(c)]),
        ])
        .unwrap()
    }

    fn plus() -> Ket {
        Ket::normalized(vec![r(1.0), r(1.0)]).unwrap()
    }

    #[test]
    fn povm_projective_and_blind() {
        let povm = qubit_diag(0.0).povm();
        assert_eq!(povm[0], ComplexMatrix::diagonal(&[r(1.0), r(0.0)]));
        assert_eq!(povm[1], ComplexMatrix::diagonal(&[r(0.0), r(1.0)]));

        let half = ComplexMatrix::identity(2).scale(r(0.5));
        for pi in qubit_diag(std::f64::consts::FRAC_PI_2).povm() {
            assert!(pi.max_abs_diff(&half).unwrap() < 1e-15);
        }
    }

    #[test]
    fn povm_sums_to_identity_and_is_positive() {
        let s = qubit_diag(1.1);
        let sum = s
            .povm()
            .iter()
            .fold(ComplexMatrix::zeros(2, 2), |acc, p| acc.add(p).unwrap());
        assert!(sum.max_abs_diff(&ComplexMatrix::identity(2)).unwrap() < TOLERANCE);
        for p in s.povm() {
            assert!(min_probe_expectation(&p) >= -TOLERANCE);
        }
    }

    #[test]
    fn completeness_defect_examples() {
        assert!(qubit_diag(0.4).completeness_defect() <= TOLERANCE);
        assert_eq!(completeness_defect(&[ComplexMatrix::identity(2)]), 0.0);
        let half = ComplexMatrix::identity(2).scale(r(0.5));
        assert!((completeness_defect(&[half]) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn incomplete_scheme_is_rejected() {
        let half = ComplexMatrix::identity(2).scale(r(0.5));
        assert!(matches!(
            MeasurementScheme::with_basis_inference(vec![half]),
            Err(Error::InvalidScheme(_))
        ));
    }

    #[test]
    fn mismatched_inference_is_rejected() {
        let err = MeasurementScheme::new(vec![ComplexMatrix::identity(2)], vec![]);
        assert!(err.is_err());
        let err = MeasurementScheme::new(vec![ComplexMatrix::identity(2)], vec![Ket::basis(3, 0)]);
        assert!(matches!(err, Err(Error::Dimension { .. })));
    }

    #[test]
    fn measure_basis_state() {
        let theta2 = 0.9_f64;
        let out = qubit_diag(theta2).measure(&Ket::basis(2, 0)).unwrap();
        assert!((out[0].probability - (theta2 / 2.0).cos().powi(2)).abs() < 1e-15);
        assert!((out[1].probability - (theta2 / 2.0).sin().powi(2)).abs() < 1e-15);
        for o in &out {
            let cond = o.conditional.as_ref().unwrap();
            assert!((cond.overlap(&Ket::basis(2, 0)).unwrap() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn measure_projective_limit() {
        let out = qubit_diag(0.0).measure(&plus()).unwrap();
        for (k, o) in out.iter().enumerate() {
            assert!((o.probability - 0.5).abs() < 1e-15);
            let cond = o.conditional.as_ref().unwrap();
            assert!((cond.overlap(&Ket::basis(2, k)).unwrap() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn measure_blind_leaves_state() {
        let psi = Ket::normalized(vec![r(0.3), Complex::new(0.2, -0.9)]).unwrap();
        let out = qubit_diag(std::f64::consts::FRAC_PI_2)
            .measure(&psi)
            .unwrap();
        for o in out {
            assert!((o.probability - 0.5).abs() < 1e-15);
            assert!((o.conditional.unwrap().overlap(&psi).unwrap() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn measure_flags_impossible_outcome() {
        let out = qubit_diag(0.0).measure(&Ket::basis(2, 0)).unwrap();
        assert_eq!(out[1].probability, 0.0);
        assert!(out[1].conditional.is_none());
    }

    #[test]
    fn state_fidelity_examples() {
        let theta2 = 1.3_f64;
        let f = qubit_diag(theta2)
            .state_fidelities(&Ket::basis(2, 0))
            .unwrap();
        assert!((f.transmission - 1.0).abs() < 1e-15);
        assert!((f.estimation - (theta2 / 2.0).cos().powi(2)).abs() < 1e-15);

        let f = qubit_diag(theta2).state_fidelities(&plus()).unwrap();
        assert!((f.transmission - (1.0 + theta2.sin()) / 2.0).abs() < 1e-15);
        assert!((f.estimation - 0.5).abs() < 1e-15);

        let id = MeasurementScheme::with_basis_inference(vec![ComplexMatrix::identity(2)]).unwrap();
        let f = id.state_fidelities(&Ket::basis(2, 1)).unwrap();
        assert_eq!(f, FidelityPair::new(1.0, 0.0));
    }

    #[test]
    fn state_fidelities_rejects_dimension() {
        assert!(qubit_diag(0.1).state_fidelities(&Ket::basis(3, 0)).is_err());
        assert!(qubit_diag(0.1).measure(&Ket::basis(3, 0)).is_err());
    }

    #[test]
    fn average_fidelity_examples() {
        let f = qubit_diag(0.0).average_fidelities();
        assert!(f.max_abs_diff(&FidelityPair::new(2.0 / 3.0, 2.0 / 3.0)) < 1e-15);
        let f = qubit_diag(std::f64::consts::FRAC_PI_2).average_fidelities();
        assert!(f.max_abs_diff(&FidelityPair::new(1.0, 0.5)) < 1e-15);
        let f = qubit_diag(std::f64::consts::FRAC_PI_3).average_fidelities();
        let expected = FidelityPair::new(2.0 / 3.0 + 3f64.sqrt() / 6.0, 7.0 / 12.0);
        assert!(f.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn post_state_examples() {
        let rho = ComplexMatrix::from_row_major(
            2,
            2,
            vec![
                r(0.6),
                Complex::new(0.1, 0.3),
                Complex::new(0.1, -0.3),
                r(0.4),
            ],
        )
        .unwrap();
        let out = qubit_diag(std::f64::consts::FRAC_PI_2)
            .post_state(&rho)
            .unwrap();
        assert!(out.max_abs_diff(&rho).unwrap() < 1e-15);

        let half = ComplexMatrix::identity(2).scale(r(0.5));
        let out = qubit_diag(0.0).post_state(&plus().projector()).unwrap();
        assert!(out.max_abs_diff(&half).unwrap() < 1e-15);

        let out = qubit_diag(0.77).post_state(&half).unwrap();
        assert!(out.max_abs_diff(&half).unwrap() < 1e-15);

        assert!(qubit_diag(0.1)
            .post_state(&ComplexMatrix::identity(3))
            .is_err());
    }
}
