//! Restricted qubit signal ensembles fed to the optimal (`φ₂ = 0`) qubit
//! repeater.
//!
//! * class A: `N` real states `cos(θ_j/2)|0⟩ + sin(θ_j/2)|1⟩`,
//!   `θ_j = jπ/(N−1)`, equally likely;
//! * class B: the rings through the same polar angles with a uniformly random
//!   phase, each ring weighted by its circumference `∝ sin θ_j`.
//!
//! Both fidelities of the repeater depend on a state only through `cos²θ`,
//! so every ensemble reduces to its mean of `cos²θ` ([`AlphabetMoment`]).
//! Ensemble averages are computed by direct summation over `j`; closed forms
//! are provided separately for cross-checking.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Complex;
use crate::qubit;
use crate::scheme::FidelityPair;

/// Violations of the trade-off inequality smaller than this are roundoff.
pub const VIOLATION_SLACK: f64 = 1e-14;

/// Polar angle of node `j` out of `n`, exact at both poles.
fn node_angle(n: usize, j: usize) -> f64 {
    j as f64 * PI / (n - 1) as f64
}

/// `sin θ_j`, computed from the nearer pole so the end weights are exactly 0.
fn node_weight(n: usize, j: usize) -> f64 {
    node_angle(n, j.min(n - 1 - j)).sin()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiscreteAlphabet {
    n: usize,
}

impl DiscreteAlphabet {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("class A needs N ≥ 2, got {n}")));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn thetas(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|j| node_angle(self.n, j))
    }

    pub fn moment(&self) -> AlphabetMoment {
        let sum: f64 = self.thetas().map(|t| t.cos().powi(2)).sum();
        AlphabetMoment::new((sum / self.n as f64).clamp(0.0, 1.0)).expect("clamped")
    }

    pub fn mean_fidelities(&self, theta2: f64) -> FidelityPair {
        let n = self.n as f64;
        let (f, g) = self
            .thetas()
            .map(|t| per_state_fidelities(t, theta2))
            .fold((0.0, 0.0), |(f, g), p| {
                (f + p.transmission, g + p.estimation)
            });
        FidelityPair::new(f / n, g / n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RingAlphabet {
    n: usize,
}

impl RingAlphabet {
    /// `N = 2` puts both rings on the poles, where they have zero weight.
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!(
                "class B needs N ≥ 3 (total ring weight vanishes for N = {n})"
            )));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(θ_j, sin θ_j)` for every ring.
    pub fn rings(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        (0..self.n).map(|j| (node_angle(self.n, j), node_weight(self.n, j)))
    }

    pub fn moment(&self) -> AlphabetMoment {
        let (num, den) = self.rings().fold((0.0, 0.0), |(a, b), (t, w)| {
            (a + w * t.cos().powi(2), b + w)
        });
        AlphabetMoment::new((num / den).clamp(0.0, 1.0)).expect("clamped")
    }

    pub fn mean_fidelities(&self, theta2: f64) -> FidelityPair {
        let (f, g, w) = self.rings().fold((0.0, 0.0, 0.0), |(f, g, w), (t, wt)| {
            let p = per_state_fidelities(t, theta2);
            (f + wt * p.transmission, g + wt * p.estimation, w + wt)
        });
        FidelityPair::new(f / w, g / w)
    }
}

/// Ensemble mean of `cos²θ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AlphabetMoment {
    mean_cos2: f64,
}

impl AlphabetMoment {
    /// The unitarily invariant ensemble on the whole Bloch sphere.
    pub const WHOLE_SPHERE: AlphabetMoment = AlphabetMoment {
        mean_cos2: 1.0 / 3.0,
    };

    pub fn new(mean_cos2: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&mean_cos2) {
            return Err(Error::Domain(format!(
                "mean cos²θ = {mean_cos2} not in [0, 1]"
            )));
        }
        Ok(Self { mean_cos2 })
    }

    pub fn mean_cos2(&self) -> f64 {
        self.mean_cos2
    }
}

/// Fidelities of the optimal qubit repeater for the input with polar angle
/// `theta_j` (any phase):
/// `F_j = ½[(1 + cos²θ_j) + sin θ₂ (1 − cos²θ_j)]`, `G_j = ½(1 + cos²θ_j cos θ₂)`.
pub fn per_state_fidelities(theta_j: f64, theta2: f64) -> FidelityPair {
    let m = theta_j.cos().powi(2);
    FidelityPair::new(
        0.5 * ((1.0 + m) + theta2.sin() * (1.0 - m)),
        0.5 * (1.0 + m * theta2.cos()),
    )
}

/// Class-A ensemble average by direct summation (`N ≥ 2`).
pub fn class_a_mean(n: usize, theta2: f64) -> Result<FidelityPair> {
    Ok(DiscreteAlphabet::new(n)?.mean_fidelities(theta2))
}

/// Closed form of the class-A average for `N ≥ 3`, where the mean of
/// `cos²θ_j` is `(N+1)/(2N)`:
/// `F = (1 + 3N + (N−1) sin θ₂)/(4N)`, `G = (2N + (N+1) cos θ₂)/(4N)`.
pub fn class_a_closed_form(n: usize, theta2: f64) -> Result<FidelityPair> {
    if n < 3 {
        return Err(Error::Domain(format!("closed form needs N ≥ 3, got {n}")));
    }
    let nf = n as f64;
    Ok(FidelityPair::new(
        (1.0 + 3.0 * nf + (nf - 1.0) * theta2.sin()) / (4.0 * nf),
        (2.0 * nf + (nf + 1.0) * theta2.cos()) / (4.0 * nf),
    ))
}

/// Class-A transmission fidelity as a function of its estimation fidelity,
/// `F = (1/4N)(1 + 3N + ((N−1)/(N+1))·√((N+1)² − 4N²(1−2G)²))`.
pub fn class_a_tradeoff(n: usize, g: f64) -> Result<f64> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "class A trade-off needs N ≥ 3, got {n}"
        )));
    }
    let nf = n as f64;
    let x = 2.0 * nf * (1.0 - 2.0 * g);
    // (N+1)² − x² factored to keep the endpoints exact
    let radicand = (nf + 1.0 - x) * (nf + 1.0 + x);
    let scale = (nf + 1.0) * (nf + 1.0);
    if radicand < -1e-12 * scale || !radicand.is_finite() {
        return Err(Error::Domain(format!(
            "G = {g} unreachable by class A with N = {n}"
        )));
    }
    let radicand = qubit::snap_to_zero(radicand, scale);
    Ok((1.0 + 3.0 * nf + (nf - 1.0) / (nf + 1.0) * radicand.sqrt()) / (4.0 * nf))
}

/// Class-B ensemble average by direct weighted summation (`N ≥ 3`).
pub fn class_b_mean(n: usize, theta2: f64) -> Result<FidelityPair> {
    Ok(RingAlphabet::new(n)?.mean_fidelities(theta2))
}

/// Class-B closed form with `c = cos(π/(N−1))`:
/// `F = (1 + sin θ₂ + c(3 + sin θ₂))/(2(1 + 2c))`,
/// `G = (1 + c(2 + cos θ₂))/(2(1 + 2c))`.
///
/// The ring-weighted mean of `cos²θ` is `c/(1 + 2c)` for every `N ≥ 3`, so
/// this holds regardless of the parity of `N`.
pub fn class_b_closed_form(n: usize, theta2: f64) -> Result<FidelityPair> {
    RingAlphabet::new(n)?;
    let c = (PI / (n - 1) as f64).cos();
    let (s2, c2) = theta2.sin_cos();
    let den = 2.0 * (1.0 + 2.0 * c);
    Ok(FidelityPair::new(
        (1.0 + s2 + c * (3.0 + s2)) / den,
        (1.0 + c * (2.0 + c2)) / den,
    ))
}

/// An alternative complex-exponential expression for even `N`,
/// `F = ¼[3 + s + 2i e^{iπ(3N−1)/(2(N−1))}(1 + s) − i e^{iπ(5N−1)/(2(N−1))}(3 + s)]`,
/// `G = ¼[2 + c + 2i e^{iπ(3N−1)/(2(N−1))} − i e^{iπ(5N−1)/(2(N−1))}(2 + c)]`
/// with `s = sin θ₂`, `c = cos θ₂`. Its real part equals the class-B average
/// at `N = 4` but not for larger even `N`; see [`class_b_closed_form`].
pub fn class_b_even_exponential_form(n: usize, theta2: f64) -> (Complex, Complex) {
    let nf = n as f64;
    let i = Complex::new(0.0, 1.0);
    let a = Complex::from_polar(1.0, PI * (3.0 * nf - 1.0) / (2.0 * (nf - 1.0)));
    let b = Complex::from_polar(1.0, PI * (5.0 * nf - 1.0) / (2.0 * (nf - 1.0)));
    let (s, c) = theta2.sin_cos();
    let f = (3.0 + s + 2.0 * i * a * (1.0 + s) - i * b * (3.0 + s)) / 4.0;
    let g = (2.0 + c + 2.0 * i * a - i * b * (2.0 + c)) / 4.0;
    (f, g)
}

/// Fidelities of the optimal qubit repeater for an ensemble with mean
/// `cos²θ = m`: `F = ½[1 + m + sin θ₂ (1 − m)]`, `G = ½(1 + m cos θ₂)`.
pub fn generic_fidelities(m: AlphabetMoment, theta2: f64) -> FidelityPair {
    let m = m.mean_cos2;
    FidelityPair::new(
        0.5 * (1.0 + m + theta2.sin() * (1.0 - m)),
        0.5 * (1.0 + m * theta2.cos()),
    )
}

/// `[m − 1/3 + (1−m) sin θ₂]² + 4 cos²θ₂ m² − 4/9`, i.e. four times the
/// qubit bound residual of [`generic_fidelities`].
///
/// Written as `u·(u(1−s)² + 4c²u + (4/3)s(1−s) + (8/3)c²)` with `u = m − 1/3`
/// so the whole-sphere moment gives exactly zero.
pub fn violation(m: AlphabetMoment, theta2: f64) -> f64 {
    let u = m.mean_cos2 - 1.0 / 3.0;
    let (s, c) = theta2.sin_cos();
    let one_minus_s = 1.0 - s;
    u * (u * one_minus_s * one_minus_s
        + 4.0 * c * c * u
        + 4.0 / 3.0 * s * one_minus_s
        + 8.0 / 3.0 * c * c)
}

/// Whether the ensemble violates the full-sphere trade-off inequality, i.e.
/// achieves an `(F, G)` pair outside the region allowed for uniformly
/// distributed qubits.
pub fn beats_bound(m: AlphabetMoment, theta2: f64) -> bool {
    violation(m, theta2) > VIOLATION_SLACK
}

/// Upper boundary of the qubit region at `g`, `None` where `g` is outside
/// `[1/3, 2/3]`.
pub fn bound_f(g: f64) -> Option<f64> {
    qubit::tradeoff_f_of_g(g).ok()
}
