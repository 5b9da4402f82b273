//! Self-check battery: every closed form against the constructed schemes,
//! every bound saturation claim, and the Monte-Carlo cross-checks.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI, TAU};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::alphabets::{self, AlphabetMoment, DiscreteAlphabet, RingAlphabet};
use crate::linalg::{norm_sqr, TOLERANCE};
use crate::oracle::{self, BlochSphere, ClassBSampler, HaarQudit, MCEstimate, SamplerConfig};
use crate::qubit::{self, ProbeConfig};
use crate::qudit::{self, QuditProbeConfig};
use crate::scheme::{completeness_defect, FidelityPair};
use crate::sweep::{inclusive_grid, DEFAULT_TRADEOFF_NS};

pub const MIN_SAMPLES: usize = 1000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub metric: f64,
    pub tolerance: f64,
}

impl Check {
    /// Passes when `metric ≤ tolerance`.
    fn at_most(name: &str, metric: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            passed: metric <= tolerance,
            metric,
            tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub samples: usize,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    fn new(samples: usize, seed: u64, checks: Vec<Check>) -> Self {
        Self {
            samples,
            seed,
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            writeln!(
                f,
                "{}  {:width$}  metric={:.3e}  tol={:.1e}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.metric,
                c.tolerance,
            )?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        write!(
            f,
            "{} checks, {} failed (samples={}, seed={})",
            self.checks.len(),
            failed,
            self.samples,
            self.seed
        )
    }
}

/// Knobs of the battery. `gamma` is the qudit probe normalization under
/// test; swapping it for a perturbed function is how the battery is itself
/// checked for sensitivity.
#[derive(Clone, Copy)]
pub struct Verifier {
    pub samples: usize,
    pub seed: u64,
    pub gamma: fn(usize, f64) -> f64,
}

impl Verifier {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self {
            samples,
            seed,
            gamma: qudit::gamma,
        }
    }

    pub fn run(&self) -> VerifyReport {
        let mut checks = Vec::new();
        checks.extend(self.qubit_checks());
        checks.extend(self.qudit_checks());
        checks.push(self.rotated_check());
        checks.extend(self.monte_carlo_checks());
        checks.extend(self.class_a_checks());
        checks.extend(self.class_b_checks());
        checks.extend(self.threshold_checks());
        VerifyReport::new(self.samples, self.seed, checks)
    }

    fn qubit_checks(&self) -> Vec<Check> {
        let grid = inclusive_grid(0.0, PI, 1801);
        let mut analytic_res = 0.0_f64;
        let mut scheme_res = 0.0_f64;
        let mut agreement = 0.0_f64;
        let mut curve = 0.0_f64;
        let mut completeness = 0.0_f64;
        for &t in &grid {
            let cfg = ProbeConfig::optimal(t).expect("grid inside [0, π]");
            let a = qubit::analytic_fidelities(cfg);
            let s = qubit::build_scheme(cfg);
            let b = s.average_fidelities();
            completeness = completeness.max(s.completeness_defect());
            analytic_res =
                analytic_res.max(qubit::bound_residual(a.transmission, a.estimation).abs());
            scheme_res = scheme_res.max(qubit::bound_residual(b.transmission, b.estimation).abs());
            agreement = agreement.max(a.max_abs_diff(&b));
            curve = curve.max(
                qubit::tradeoff_f_of_g(a.estimation)
                    .map_or(f64::INFINITY, |f| (f - a.transmission).abs()),
            );
        }
        let extremes = [
            (FRAC_PI_2, FidelityPair::new(1.0, 0.5)),
            (0.0, FidelityPair::new(2.0 / 3.0, 2.0 / 3.0)),
        ]
        .iter()
        .map(|&(t, want)| {
            let cfg = ProbeConfig::optimal(t).expect("in range");
            qubit::analytic_fidelities(cfg).max_abs_diff(&want).max(
                qubit::build_scheme(cfg)
                    .average_fidelities()
                    .max_abs_diff(&want),
            )
        })
        .fold(0.0, f64::max);
        vec![
            Check::at_most("qubit.saturation.analytic", analytic_res, 1e-12),
            Check::at_most("qubit.saturation.scheme", scheme_res, 1e-12),
            Check::at_most("qubit.scheme_vs_closed_form", agreement, 1e-12),
            Check::at_most("qubit.tradeoff_curve", curve, 1e-12),
            Check::at_most("qubit.completeness", completeness, TOLERANCE),
            Check::at_most("qubit.extreme_points", extremes, 1e-14),
        ]
    }

    fn qudit_checks(&self) -> Vec<Check> {
        let mut residual = 0.0_f64;
        let mut norm = 0.0_f64;
        let mut completeness = 0.0_f64;
        let mut agreement = 0.0_f64;
        let mut traces = 0.0_f64;
        for d in 2..=10 {
            for t in inclusive_grid(0.0, FRAC_PI_2, 91) {
                let g = (self.gamma)(d, t);
                let p = qudit::fidelities_for_gamma(d, t, g);
                residual =
                    residual.max(qudit::bound_residual_d(d, p.transmission, p.estimation).abs());
                let amps = qudit::probe_amplitudes(d, t, g);
                norm = norm.max((norm_sqr(&amps) - 1.0).abs());
                let ops = qudit::operators_for_amplitudes(&amps);
                completeness = completeness.max(completeness_defect(&ops));
                let expected_trace = t.cos() + g * (d as f64).sqrt() * t.sin();
                for a in &ops {
                    traces = traces.max((a.trace().re - expected_trace).abs());
                }

                let cfg = QuditProbeConfig::new(d, t).expect("grid inside [0, π/2]");
                let built = qudit::build_scheme_qudit(cfg).average_fidelities();
                agreement =
                    agreement.max(built.max_abs_diff(&qudit::analytic_fidelities_qudit(cfg)));
            }
        }
        vec![
            Check::at_most("qudit.saturation", residual, 1e-10),
            Check::at_most("qudit.probe_norm", norm, TOLERANCE),
            Check::at_most("qudit.completeness", completeness, TOLERANCE),
            Check::at_most("qudit.operator_traces", traces, TOLERANCE),
            Check::at_most("qudit.scheme_vs_closed_form", agreement, 1e-12),
        ]
    }

    fn rotated_check(&self) -> Check {
        let cfg = ProbeConfig::optimal(FRAC_PI_3).expect("in range");
        let base = qubit::build_scheme(cfg);
        let base_povm = base.povm();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut worst = 0.0_f64;
        for _ in 0..100 {
            let theta_m = (1.0 - 2.0 * rng.random::<f64>()).acos();
            let phi_m = TAU * rng.random::<f64>();
            let rot = qubit::rotated_scheme(cfg, theta_m, phi_m);
            for (a, b) in rot.kraus().iter().zip(base.kraus()) {
                worst = worst.max(a.max_abs_diff(b).expect("2x2"));
            }
            let povm = qubit::rotated_povm_from_joint_evolution(cfg, theta_m, phi_m);
            for (a, b) in povm.iter().zip(&base_povm) {
                worst = worst.max(a.max_abs_diff(b).expect("2x2"));
            }
        }
        Check::at_most("qubit.rotated_equivalence", worst, TOLERANCE)
    }

    fn monte_carlo_checks(&self) -> Vec<Check> {
        let mut runs: Vec<(String, (MCEstimate, MCEstimate), FidelityPair)> = Vec::new();
        let mut next_seed = self.seed;
        let mut cfg = || {
            next_seed = next_seed.wrapping_add(1);
            SamplerConfig::new(next_seed, self.samples).expect("samples ≥ 1")
        };
        for t in [0.0, FRAC_PI_3, FRAC_PI_2] {
            let pc = ProbeConfig::optimal(t).expect("in range");
            let est = oracle::mc_average_fidelities(&qubit::build_scheme(pc), &BlochSphere, cfg())
                .expect("dims match");
            runs.push((
                format!("qubit θ₂={t:.4}"),
                est,
                qubit::analytic_fidelities(pc),
            ));
        }
        for d in [2, 3, 5] {
            for t in [FRAC_PI_6, FRAC_PI_4] {
                let qc = QuditProbeConfig::new(d, t).expect("in range");
                let est = oracle::mc_average_fidelities(
                    &qudit::build_scheme_qudit(qc),
                    &HaarQudit { d },
                    cfg(),
                )
                .expect("dims match");
                runs.push((
                    format!("qudit d={d} θ₂={t:.4}"),
                    est,
                    qudit::analytic_fidelities_qudit(qc),
                ));
            }
        }
        for n in [3, 5] {
            let t = FRAC_PI_3;
            let ring = RingAlphabet::new(n).expect("n ≥ 3");
            let scheme = qubit::build_scheme(ProbeConfig::optimal(t).expect("in range"));
            let est = oracle::mc_average_fidelities(&scheme, &ClassBSampler(ring), cfg())
                .expect("dims match");
            runs.push((format!("classB N={n}"), est, ring.mean_fidelities(t)));
        }

        let mut worst_z = 0.0_f64;
        let mut worst_se = 0.0_f64;
        for (_, (f, g), exact) in &runs {
            worst_z = worst_z
                .max(f.z_score(exact.transmission))
                .max(g.z_score(exact.estimation));
            worst_se = worst_se.max(f.std_error).max(g.std_error);
        }
        vec![
            Check::at_most("mc.agreement_z", worst_z, 3.0),
            Check::at_most("mc.std_error", worst_se, std_error_budget(self.samples)),
        ]
    }

    fn class_a_checks(&self) -> Vec<Check> {
        let grid = inclusive_grid(0.0, FRAC_PI_2, 91);
        let mut dominance = f64::NEG_INFINITY;
        let mut relation = 0.0_f64;
        for &n in &DEFAULT_TRADEOFF_NS {
            let alphabet = DiscreteAlphabet::new(n).expect("n ≥ 3");
            for &t in &grid {
                let p = alphabet.mean_fidelities(t);
                dominance = dominance.max(class_a_shortfall(p));
                relation = relation.max(relation_error(n, p));
            }
        }
        let mut closed = 0.0_f64;
        let mut moment = 0.0_f64;
        for n in 3..=20 {
            let alphabet = DiscreteAlphabet::new(n).expect("n ≥ 3");
            let expect = (n as f64 + 1.0) / (2.0 * n as f64);
            moment = moment.max((alphabet.moment().mean_cos2() - expect).abs());
            for &t in &grid {
                let cf = alphabets::class_a_closed_form(n, t).expect("n ≥ 3");
                closed = closed.max(cf.max_abs_diff(&alphabet.mean_fidelities(t)));
                relation = relation.max(relation_error(n, cf));
            }
        }
        vec![
            Check::at_most("classA.dominance_shortfall", dominance.max(0.0), 1e-12),
            Check::at_most("classA.tradeoff_relation", relation, 1e-12),
            Check::at_most("classA.closed_form", closed, 1e-12),
            Check::at_most("classA.moment", moment, 1e-12),
        ]
    }

    fn class_b_checks(&self) -> Vec<Check> {
        let grid = inclusive_grid(0.0, FRAC_PI_2, 91);
        let mut excess = 0.0_f64;
        let mut gaps = Vec::new();
        for &n in &DEFAULT_TRADEOFF_NS {
            let ring = RingAlphabet::new(n).expect("n ≥ 3");
            let mut gap = 0.0_f64;
            for &t in &grid {
                let p = ring.mean_fidelities(t);
                match alphabets::bound_f(p.estimation) {
                    Some(bound) => {
                        excess = excess.max(p.transmission - bound);
                        gap = gap.max(bound - p.transmission);
                    }
                    None => excess = f64::INFINITY,
                }
            }
            gaps.push(gap);
        }
        let non_decreasing = gaps.windows(2).filter(|w| w[1] >= w[0]).count();

        let mut closed = 0.0_f64;
        for n in (3..=21).chain([1000, 1001]) {
            for &t in &grid {
                let direct = alphabets::class_b_mean(n, t).expect("n ≥ 3");
                let cf = alphabets::class_b_closed_form(n, t).expect("n ≥ 3");
                closed = closed.max(direct.max_abs_diff(&cf));
            }
        }
        let mut exponential = 0.0_f64;
        for &t in &grid {
            let direct = alphabets::class_b_mean(4, t).expect("n ≥ 3");
            let (f, g) = alphabets::class_b_even_exponential_form(4, t);
            exponential = exponential
                .max((f.re - direct.transmission).abs())
                .max((g.re - direct.estimation).abs());
        }
        vec![
            Check::at_most("classB.subordination_excess", excess.max(0.0), 1e-12),
            Check::at_most("classB.gap_not_decreasing", non_decreasing as f64, 0.0),
            Check::at_most("classB.closed_form", closed, 1e-12),
            Check::at_most("classB.exponential_form_n4", exponential, 1e-12),
        ]
    }

    fn threshold_checks(&self) -> Vec<Check> {
        let at = |m: f64| alphabets::beats_bound(AlphabetMoment::new(m).expect("in [0,1]"), 0.0);
        let flip_ok = !at(1.0 / 3.0) && at(1.0 / 3.0 + 1e-9);

        let mut disagreements = 0usize;
        for m in inclusive_grid(0.0, 1.0, 100) {
            let moment = AlphabetMoment::new(m).expect("in [0,1]");
            for t in inclusive_grid(0.0, PI, 100) {
                let p = alphabets::generic_fidelities(moment, t);
                let r = qubit::bound_residual(p.transmission, p.estimation);
                if alphabets::beats_bound(moment, t) != (r > alphabets::VIOLATION_SLACK / 4.0) {
                    disagreements += 1;
                }
            }
        }
        vec![
            Check::at_most(
                "threshold.flip_at_one_third",
                if flip_ok { 0.0 } else { 1.0 },
                0.0,
            ),
            Check::at_most("threshold.residual_sign", disagreements as f64, 0.0),
        ]
    }
}

/// How far a class-A point falls short of the full-sphere bound; negative
/// when it lies above it. Points with `G` beyond the bound's domain are
/// outside the allowed ellipse (shortfall −residual).
fn class_a_shortfall(p: FidelityPair) -> f64 {
    match alphabets::bound_f(p.estimation) {
        Some(bound) => bound - p.transmission,
        None => -qubit::bound_residual(p.transmission, p.estimation),
    }
}

/// 2e−3 at 10⁵ samples, scaled as 1/√n for smaller runs.
fn std_error_budget(samples: usize) -> f64 {
    2e-3 * (1e5 / samples as f64).max(1.0).sqrt()
}

fn relation_error(n: usize, p: FidelityPair) -> f64 {
    alphabets::class_a_tradeoff(n, p.estimation)
        .map_or(f64::INFINITY, |f| (f - p.transmission).abs())
}

/// Runs the default battery.
pub fn run_verify(samples: usize, seed: u64) -> VerifyReport {
    Verifier::new(samples, seed).run()
}
