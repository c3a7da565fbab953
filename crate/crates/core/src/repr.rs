//! Discrete labels, ladder matrix elements, and the closed-form spectrum.
//!
//! A tower is labelled by `j` (half-integer or integer, `2j ≥ 1`) and the
//! bottom weight `g`, with `g ∈ {j, j−1, …, 1−j}`. Within a tower the ladder
//! matrix elements and the energies are rational-quadratic in the labels, so
//! everything here is closed-form; Gamma ratios enter only through the
//! descent normalization and are evaluated in log space.

use crate::error::{Error, Result};
use crate::special::ln_gamma;

/// Integrality slack when validating labels given as floating point.
const LABEL_TOL: f64 = 1e-9;

fn near_integer(x: f64) -> bool {
    (x - x.round()).abs() <= LABEL_TOL
}

/// Whether `(j, g)` is an admissible tower label: `2j` a positive integer,
/// `j − g` an integer, and `1 − j ≤ g ≤ j` (all to a `1e-9` slack).
pub fn validate_label(j: f64, g: f64) -> bool {
    if !j.is_finite() || !g.is_finite() {
        return false;
    }
    let two_j = 2.0 * j;
    near_integer(two_j)
        && two_j.round() >= 1.0
        && near_integer(j - g)
        && g >= 1.0 - j - LABEL_TOL
        && g <= j + LABEL_TOL
}

/// Casimir eigenvalue `j² − 1/4` of the tower labelled `j`.
pub fn casimir_eigenvalue(j: f64) -> f64 {
    debug_assert!(j >= 0.5 - LABEL_TOL, "Casimir label below the bottom tower: j = {j}");
    j * j - 0.25
}

/// Norm of the raising step out of weight `g` in tower `j`:
/// `√(β(j² − g²))`. Zero exactly at the top weight `g = j`.
pub fn ladder_norm_up(j: f64, g: f64, beta: f64) -> Result<f64> {
    ladder_norm(j, g, beta)
}

/// Norm of the lowering step out of weight `g`: `√(β(j² − (g−1)²))`.
/// Zero exactly at the bottom weight `g = 1 − j`.
pub fn ladder_norm_down(j: f64, g: f64, beta: f64) -> Result<f64> {
    ladder_norm(j, g - 1.0, beta)
}

fn ladder_norm(j: f64, g: f64, beta: f64) -> Result<f64> {
    let radicand = beta * (j * j - g * g);
    if radicand < 0.0 {
        return Err(Error::InvalidLabel { j, g });
    }
    Ok(radicand.sqrt())
}

/// Energy of level `n` above the bottom of the `g` tower: `(n² + 2ng)·β`.
pub fn energy(n: u32, g: f64, beta: f64) -> f64 {
    let nf = f64::from(n);
    (nf * nf + 2.0 * nf * g) * beta
}

/// Product of the lowering norms from the top weight `j` down to weight `g`,
/// an explicit Gamma ratio:
/// `√( Γ(j+g) / (β^{j−g} Γ(2j) Γ(j−g+1)) )`.
///
/// Errors on labels outside the admissible set.
pub fn descent_coefficient(j: f64, g: f64, beta: f64) -> Result<f64> {
    if !validate_label(j, g) {
        return Err(Error::InvalidLabel { j, g });
    }
    let steps = (j - g).round();
    let ln =
        0.5 * (ln_gamma(j + g) - steps * beta.ln() - ln_gamma(2.0 * j) - ln_gamma(steps + 1.0));
    Ok(ln.exp())
}

/// The same descent product written in level form for a tower bottoming at
/// weight `g > 0`: `√( Γ(2g+n) / (βⁿ n! Γ(2g+2n)) )`. Defined for any real
/// `g > 0`, quantized or not; on admissible labels it equals
/// [`descent_coefficient`]`(g+n, g, β)`.
pub fn descent_coefficient_n(n: u32, g: f64, beta: f64) -> f64 {
    assert!(g > 0.0, "descent normalization requires g > 0, got {g}");
    let nf = f64::from(n);
    let ln = 0.5
        * (ln_gamma(2.0 * g + nf)
            - nf * beta.ln()
            - ln_gamma(nf + 1.0)
            - ln_gamma(2.0 * g + 2.0 * nf));
    ln.exp()
}

/// Where a spectrum came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralSource {
    /// The closed-form algebraic expression.
    ClosedForm,
    /// The finite-difference boundary-value solver.
    Oracle,
}

impl SpectralSource {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::ClosedForm => "closed-form",
            Self::Oracle => "oracle",
        }
    }
}

/// A finite run of energy levels `(n, Eₙ)` for one `(g, β)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    pub g: f64,
    pub beta: f64,
    pub source: SpectralSource,
    /// `(level index, energy)`, in increasing level order.
    pub lines: Vec<(u32, f64)>,
}

/// Closed-form spectrum for levels `0..=n_max`.
pub fn closed_form_spectrum(g: f64, beta: f64, n_max: u32) -> SpectralResult {
    assert!(beta > 0.0 && beta.is_finite(), "beta must be positive, got {beta}");
    let lines = (0..=n_max).map(|n| (n, energy(n, g, beta))).collect();
    SpectralResult { g, beta, source: SpectralSource::ClosedForm, lines }
}
