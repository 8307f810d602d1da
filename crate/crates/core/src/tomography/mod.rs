//! Optical tomograms and Wigner functions from Fock-basis states.
//!
//! Phase convention: `⟨X, θ|n⟩ = e^{−inθ} ψ_n(X)`, so that
//! `w(X, θ) = Σ_{mn} ρ_mn e^{−i(m−n)θ} ψ_m(X) ψ_n(X)`. With this choice a
//! coherent state `|α⟩` produces a ridge at `X̄(θ) = √2 Re(α e^{−iθ})`:
//! θ = 0 is the `x` quadrature and θ = π/2 the `p` quadrature.

mod grid;
mod hermite;
mod tomogram;
mod wigner;

pub use grid::{trapezoid, QuadratureGrid, DEFAULT_MARGIN, MAX_FIGURE_SPACING};
pub use hermite::{oscillator_eigenfunction, HermiteTable, MAX_LEVEL};
pub use tomogram::{
    equispaced_angles, reduce_tomogram, tomogram_pure, tomogram_single, tomogram_two_mode, KeptMode,
    Tomogram, Tomogram2D, TwoModeTomographer,
};
pub use wigner::{wigner, WignerGrid};
