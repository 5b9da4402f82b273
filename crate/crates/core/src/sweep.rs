//! Parameter sweeps and trade-off curves written as CSV or JSON.
//!
//! CSV files have a header row, LF line endings and every float printed with
//! 17 significant digits (`{:.16e}`), so re-parsing gives back the exact
//! doubles. Output is a pure function of the spec: repeated runs are
//! byte-identical.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::alphabets::{self, DiscreteAlphabet, RingAlphabet};
use crate::error::{Error, Result};
use crate::qubit::{self, ProbeConfig};
use crate::qudit::{self, QuditProbeConfig};

/// Directory used for output files when no explicit path is given.
pub const OUTPUT_DIR_ENV: &str = "QREPEATER_OUTPUT_DIR";

/// Curves plotted against the full-sphere bound by default.
pub const DEFAULT_TRADEOFF_NS: [usize; 5] = [4, 5, 7, 11, 1000];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AlphabetClass {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepKind {
    Qubit,
    Qudit { d: usize },
    Alphabet { class: AlphabetClass, n: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub kind: SweepKind,
    pub theta2_steps: usize,
    /// Probe phase; qubit sweeps only.
    pub phi2: f64,
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.theta2_steps < 2 {
            return Err(Error::Usage(format!(
                "need at least 2 grid points, got {}",
                self.theta2_steps
            )));
        }
        match self.kind {
            SweepKind::Qubit => {
                ProbeConfig::new(0.0, self.phi2).map_err(|e| Error::Usage(e.to_string()))?;
            }
            SweepKind::Qudit { d } if d < 2 => {
                return Err(Error::Usage(format!(
                    "qudit dimension must be ≥ 2, got {d}"
                )));
            }
            SweepKind::Alphabet {
                class: AlphabetClass::A,
                n,
            } if n < 2 => {
                return Err(Error::Usage(format!("class A needs N ≥ 2, got {n}")));
            }
            SweepKind::Alphabet {
                class: AlphabetClass::B,
                n,
            } if n < 3 => {
                return Err(Error::Usage(format!("class B needs N ≥ 3, got {n}")));
            }
            _ => {}
        }
        if self.phi2 != 0.0 && self.kind != SweepKind::Qubit {
            return Err(Error::Usage("phi2 applies to qubit sweeps only".into()));
        }
        Ok(())
    }

    fn default_file_name(&self) -> String {
        let stem = match self.kind {
            SweepKind::Qubit => "sweep_qubit".to_string(),
            SweepKind::Qudit { d } => format!("sweep_qudit_d{d}"),
            SweepKind::Alphabet { class, n } => format!("sweep_class{class:?}_n{n}"),
        };
        match self.format {
            OutputFormat::Csv => format!("{stem}.csv"),
            OutputFormat::Json => format!("{stem}.json"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub theta2: f64,
    #[serde(rename = "F")]
    pub f: f64,
    #[serde(rename = "G")]
    pub g: f64,
    pub bound_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSummary {
    pub path: PathBuf,
    pub rows: usize,
    pub max_abs_residual: f64,
}

/// `steps` points from `start` to `end`, both endpoints included exactly.
pub fn inclusive_grid(start: f64, end: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => vec![],
        1 => vec![start],
        _ => (0..steps)
            .map(|i| {
                if i == steps - 1 {
                    end
                } else {
                    start + (end - start) * i as f64 / (steps - 1) as f64
                }
            })
            .collect(),
    }
}

/// Rows of a sweep over θ₂: `[0, π]` for qubits, `[0, π/2]` otherwise.
pub fn sweep_rows(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    match spec.kind {
        SweepKind::Qubit => inclusive_grid(0.0, PI, spec.theta2_steps)
            .into_iter()
            .map(|t| {
                let p = qubit::build_scheme(ProbeConfig::new(t, spec.phi2)?).average_fidelities();
                Ok(row(
                    None,
                    t,
                    p.transmission,
                    p.estimation,
                    qubit::bound_residual,
                ))
            })
            .collect(),
        SweepKind::Qudit { d } => inclusive_grid(0.0, FRAC_PI_2, spec.theta2_steps)
            .into_iter()
            .map(|t| {
                let p =
                    qudit::build_scheme_qudit(QuditProbeConfig::new(d, t)?).average_fidelities();
                Ok(row(Some(d), t, p.transmission, p.estimation, |f, g| {
                    qudit::bound_residual_d(d, f, g)
                }))
            })
            .collect(),
        SweepKind::Alphabet { class, n } => inclusive_grid(0.0, FRAC_PI_2, spec.theta2_steps)
            .into_iter()
            .map(|t| {
                let p = match class {
                    AlphabetClass::A => alphabets::class_a_mean(n, t)?,
                    AlphabetClass::B => alphabets::class_b_mean(n, t)?,
                };
                Ok(row(
                    None,
                    t,
                    p.transmission,
                    p.estimation,
                    qubit::bound_residual,
                ))
            })
            .collect(),
    }
}

fn row(
    d: Option<usize>,
    theta2: f64,
    f: f64,
    g: f64,
    residual: impl Fn(f64, f64) -> f64,
) -> SweepRow {
    SweepRow {
        d,
        theta2,
        f,
        g,
        bound_residual: residual(f, g),
    }
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let with_d = rows.first().is_some_and(|r| r.d.is_some());
    let mut out = String::from(if with_d {
        "d,theta2,F,G,bound_residual\n"
    } else {
        "theta2,F,G,bound_residual\n"
    });
    for r in rows {
        if let Some(d) = r.d {
            let _ = write!(out, "{d},");
        }
        let _ = writeln!(
            out,
            "{},{},{},{}",
            num(r.theta2),
            num(r.f),
            num(r.g),
            num(r.bound_residual)
        );
    }
    out
}

#[derive(Serialize)]
struct SweepDocument<'a> {
    kind: SweepKind,
    phi2: f64,
    rows: &'a [SweepRow],
}

pub fn sweep_json(spec: &SweepSpec, rows: &[SweepRow]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&SweepDocument {
        kind: spec.kind,
        phi2: spec.phi2,
        rows,
    })?;
    s.push('\n');
    Ok(s)
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepSummary> {
    let rows = sweep_rows(spec)?;
    let body = match spec.format {
        OutputFormat::Csv => sweep_csv(&rows),
        OutputFormat::Json => sweep_json(spec, &rows)?,
    };
    let path = resolve_output(spec.output_path.as_deref(), &spec.default_file_name());
    write_file(&path, &body)?;
    Ok(SweepSummary {
        path,
        rows: rows.len(),
        max_abs_residual: rows
            .iter()
            .map(|r| r.bound_residual.abs())
            .fold(0.0, f64::max),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Curve {
    Bound,
    ClassA,
    ClassB,
}

impl Curve {
    fn label(self) -> &'static str {
        match self {
            Curve::Bound => "bound",
            Curve::ClassA => "classA",
            Curve::ClassB => "classB",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TradeoffRow {
    pub curve: Curve,
    #[serde(rename = "N")]
    pub n: Option<usize>,
    pub theta2: f64,
    #[serde(rename = "F")]
    pub f: f64,
    #[serde(rename = "G")]
    pub g: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TradeoffSpec {
    pub n_list: Vec<usize>,
    pub steps: usize,
    pub output_path: Option<PathBuf>,
}

/// The full-sphere bound tabulated on a uniform `G` grid over `[1/2, 2/3]`
/// (with the `θ₂` that realizes each point), followed by class A and class B
/// curves for each `N` on a uniform `θ₂` grid over `[0, π/2]`.
pub fn tradeoff_rows(spec: &TradeoffSpec) -> Result<Vec<TradeoffRow>> {
    if spec.steps < 2 {
        return Err(Error::Usage(format!(
            "need at least 2 grid points, got {}",
            spec.steps
        )));
    }
    if spec.n_list.is_empty() {
        return Err(Error::Usage("empty N list".into()));
    }
    if let Some(&n) = spec.n_list.iter().find(|&&n| n < 3) {
        return Err(Error::Usage(format!("every N must be ≥ 3, got {n}")));
    }
    let mut rows = Vec::new();
    for g in inclusive_grid(0.5, 2.0 / 3.0, spec.steps) {
        // G = (1 + cos²(θ₂/2))/3
        let theta2 = 2.0 * (3.0 * g - 1.0).clamp(0.0, 1.0).sqrt().acos();
        rows.push(TradeoffRow {
            curve: Curve::Bound,
            n: None,
            theta2,
            f: qubit::tradeoff_f_of_g(g)?,
            g,
        });
    }
    let grid = inclusive_grid(0.0, FRAC_PI_2, spec.steps);
    for &n in &spec.n_list {
        let a = DiscreteAlphabet::new(n)?;
        let b = RingAlphabet::new(n)?;
        for (curve, mean) in [
            (
                Curve::ClassA,
                &(|t| a.mean_fidelities(t)) as &dyn Fn(f64) -> _,
            ),
            (Curve::ClassB, &|t| b.mean_fidelities(t)),
        ] {
            for &t in &grid {
                let p = mean(t);
                rows.push(TradeoffRow {
                    curve,
                    n: Some(n),
                    theta2: t,
                    f: p.transmission,
                    g: p.estimation,
                });
            }
        }
    }
    Ok(rows)
}

pub fn tradeoff_csv(rows: &[TradeoffRow]) -> String {
    let mut out = String::from("curve,N,theta2,F,G\n");
    for r in rows {
        let n = r.n.map(|n| n.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{n},{},{},{}",
            r.curve.label(),
            num(r.theta2),
            num(r.f),
            num(r.g)
        );
    }
    out
}

pub fn run_tradeoff(spec: &TradeoffSpec) -> Result<(PathBuf, usize)> {
    let rows = tradeoff_rows(spec)?;
    let path = resolve_output(spec.output_path.as_deref(), "tradeoff.csv");
    write_file(&path, &tradeoff_csv(&rows))?;
    Ok((path, rows.len()))
}

/// Explicit path, else `$QREPEATER_OUTPUT_DIR/<default_name>`, else
/// `./<default_name>`.
pub fn resolve_output(explicit: Option<&Path>, default_name: &str) -> PathBuf {
    match explicit {
        Some(p) => p.to_path_buf(),
        None => std::env::var_os(OUTPUT_DIR_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from("."))
            .join(default_name),
    }
}

fn write_file(path: &Path, body: &str) -> Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(body.as_bytes())?;
    Ok(())
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}
