//! Simulation of continuous-variable quantum-optics models and the
//! tomographic diagnostics computed from them.
//!
//! The crate is organised bottom-up:
//!
//! * [`fock`]: truncated Fock-space states, density matrices, ladder
//!   operators, tensor products and partial traces.
//! * [`dynamics`]: exact time evolution for a Kerr medium, a field coupled
//!   to an anharmonic oscillator atom, and a Λ-atom driven by two fields.
//! * [`tomography`]: optical tomograms (one and two modes) and Wigner
//!   functions, computed from harmonic-oscillator eigenfunction expansions.
//! * [`indicators`]: inverse participation ratios, the tomographic
//!   entanglement indicator, subsystem linear entropy, fidelity and the
//!   complete-synchronization indicator.
//! * [`experiments`]: configuration parsing, figure presets and the run
//!   pipeline that writes data files.
//!
//! Subsystem ordering is fixed throughout: field modes first, the atomic
//! subsystem last.

pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod fock;
pub mod indicators;
pub mod tomography;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
