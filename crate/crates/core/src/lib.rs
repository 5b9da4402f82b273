//! Minimal optimal quantum repeaters for qubits and qudits.
//!
//! A repeater couples the incoming signal to a single probe system through a
//! controlled-shift gate, measures the probe, guesses the signal from the
//! outcome and forwards the disturbed signal. This crate builds those schemes
//! as explicit measurement-operator sets and evaluates
//!
//! * the transmission fidelity `F` (how much of the signal survives),
//! * the estimation fidelity `G` (how well the outcome identifies the signal),
//!
//! both in closed form and through an independent Monte-Carlo oracle, and
//! checks them against the information–disturbance trade-off bound.
//!
//! Module map:
//!
//! | module      | contents                                                   |
//! |-------------|------------------------------------------------------------|
//! | [`linalg`]  | dense complex matrices and kets                            |
//! | [`scheme`]  | measurement schemes, POVMs, per-state and averaged fidelity |
//! | [`qubit`]   | the qubit repeater, rotated measurement, d = 2 bound       |
//! | [`qudit`]   | generalized C-not repeater and the d-dimensional bound     |
//! | [`alphabets`] | restricted signal ensembles (discrete and ring classes)  |
//! | [`oracle`]  | seeded, sharded Monte-Carlo fidelity estimates             |
//! | [`sweep`]   | CSV/JSON sweep and trade-off curve emission                |
//! | [`verify`]  | the self-check battery behind `qrepeater verify`           |
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod alphabets;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod qubit;
pub mod qudit;
pub mod scheme;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{Complex, ComplexMatrix, Ket, TOLERANCE};
pub use scheme::{FidelityPair, MeasurementOutcome, MeasurementScheme};
