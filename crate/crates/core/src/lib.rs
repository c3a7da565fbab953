//! Exact su(2) spectral algebra for the minimal-length deformation of the
//! harmonic oscillator family, with an independent finite-difference oracle.
//!
//! The crate works in momentum space with the deformed measure
//! `dp/(1+βp²)`. Wavefunctions are kept in the closed family
//! `P(p)·(1+βp²)^(−s/2)`, on which the first-order ladder maps act exactly at
//! the coefficient level; spectra, bound states, matrix elements, and
//! normalization constants all come out in closed form. A tridiagonal
//! Sturm–Liouville discretization provides a numerically independent
//! cross-check, and [`verify`] packages every identity as a residual suite.
//!
//! Data-parallel paths (eigenvalue bisection, batch sweeps, randomized
//! residual scans) are enabled by the default `parallel` feature; every such
//! entry point has a `_seq` twin with bit-identical results.

pub mod algebra;
pub mod eigenfunctions;
pub mod error;
pub mod models;
pub mod oracle;
mod par;
pub mod repr;
pub mod special;
pub mod verify;

pub use algebra::{
    apply_a, apply_abar, apply_h, apply_htilde, relative_residual, shape_invariance_residual,
    AlgebraicFunction, ModeState, SequenceState,
};
pub use eigenfunctions::{
    eigenfunction, gegenbauer, gegenbauer_match, ground_profile, inner_product, moment, norm,
    normalization_audit, NormalizationAudit,
};
pub use error::{Error, Result};
pub use models::{
    dirac_energy, dirac_g, dirac_spinor, dirac_upper_problem, harmonic_energy,
    harmonic_energy_algebraic, harmonic_g, minimal_length, uncertainty_bound, Branch, DiracGup,
    DiracUpperProblem, HarmonicGup, SpinorProfile,
};
pub use oracle::{
    batch_oracle_spectra, batch_oracle_spectra_seq, lowest_eigenvalues, lowest_eigenvalues_seq,
    oracle_spectrum, to_sturm, TridiagonalOperator,
};
pub use repr::{
    casimir_eigenvalue, closed_form_spectrum, descent_coefficient, descent_coefficient_n, energy,
    ladder_norm_down, ladder_norm_up, validate_label, SpectralResult, SpectralSource,
};
