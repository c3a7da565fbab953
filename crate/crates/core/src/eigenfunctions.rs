//! Exact weighted inner products and normalized bound states.
//!
//! The inner product carries the deformed measure `dp/(1+βp²)`. On the
//! function family it reduces to finitely many even moments
//! `∫ p^{2k}(1+βp²)^{−a} dp`, each a Beta-function value, so norms and
//! overlaps are evaluated in closed form with no quadrature anywhere in the
//! product path. Bound states are built by descending from the top of a
//! tower with the raising-type map and renormalizing against the exact
//! inner product.

use crate::algebra::function::AlgebraicFunction;
use crate::algebra::operators::apply_abar;
use crate::error::{Error, Result};
use crate::repr::descent_coefficient_n;
use crate::special::ln_gamma;

/// Even moment `∫ p^{2k} (1+βp²)^{−a} dp` over the real line:
/// `β^{−k−1/2} · Γ(k+1/2) Γ(a−k−1/2) / Γ(a)`.
///
/// Errors when the integral diverges (`a ≤ k + 1/2`).
pub fn moment(k: u32, a: f64, beta: f64) -> Result<f64> {
    assert!(beta > 0.0 && beta.is_finite(), "beta must be positive, got {beta}");
    let kf = f64::from(k);
    if a - kf - 0.5 <= 0.0 {
        return Err(Error::DivergentIntegral { degree: 2 * k as usize, s_total: 2.0 * a });
    }
    let ln = -(kf + 0.5) * beta.ln() + ln_gamma(kf + 0.5) + ln_gamma(a - kf - 0.5) - ln_gamma(a);
    Ok(ln.exp())
}

/// Inner product `∫ f₁(p) f₂(p) dp / (1+βp²)` in closed form.
///
/// Odd powers integrate to zero identically and are skipped, not cancelled.
/// Errors on `beta` mismatch and on divergence, which requires
/// `s₁ + s₂ + 2 > deg(P₁P₂) + 1`.
pub fn inner_product(f1: &AlgebraicFunction, f2: &AlgebraicFunction) -> Result<f64> {
    f1.require_same_beta(f2)?;
    if f1.is_zero() || f2.is_zero() {
        return Ok(0.0);
    }
    let (d1, d2) = (f1.degree().unwrap(), f2.degree().unwrap());
    let s_total = f1.s() + f2.s() + 2.0;
    if s_total <= (d1 + d2 + 1) as f64 {
        return Err(Error::DivergentIntegral { degree: d1 + d2, s_total });
    }
    let a = 0.5 * (f1.s() + f2.s()) + 1.0;
    let beta = f1.beta();

    let mut conv = vec![0.0; d1 + d2 + 1];
    for (i, ci) in f1.coeffs().iter().enumerate() {
        for (j, cj) in f2.coeffs().iter().enumerate() {
            conv[i + j] += ci * cj;
        }
    }
    let mut acc = 0.0;
    for (two_k, c) in conv.iter().enumerate().step_by(2) {
        if *c != 0.0 {
            acc += c * moment((two_k / 2) as u32, a, beta)?;
        }
    }
    Ok(acc)
}

/// `√⟨f, f⟩`; same error conditions as [`inner_product`].
pub fn norm(f: &AlgebraicFunction) -> Result<f64> {
    Ok(inner_product(f, f)?.sqrt())
}

/// Normalized bottom state of the tower whose total decay exponent is
/// `g_total`: a positive constant times `(1+βp²)^(−g_total/2)`, with unit
/// norm under the deformed measure. Requires `g_total > 0`.
pub fn ground_profile(g_total: f64, beta: f64) -> AlgebraicFunction {
    assert!(g_total > 0.0, "ground profile requires a positive exponent, got {g_total}");
    let m0 = moment(0, g_total + 1.0, beta).expect("moment converges for positive exponent");
    AlgebraicFunction::new(beta, g_total, vec![1.0 / m0.sqrt()])
}

/// Descent construction before the final renormalization polish: the raising
/// chain applied to the top profile, scaled by the closed-form descent
/// normalization. Its norm deviates from 1 only by accumulated rounding.
pub(crate) fn descended_eigenfunction(n: u32, g: f64, beta: f64) -> AlgebraicFunction {
    let top = f64::from(n) + g;
    let mut f = ground_profile(top, beta);
    for i in (0..n).rev() {
        f = apply_abar(g + f64::from(i), &f);
    }
    f.scale(descent_coefficient_n(n, g, beta))
}

/// The `n`-th normalized bound state of the tower bottoming at weight
/// `g > 0`: polynomial degree `n`, parity `(−1)ⁿ` (enforced exactly by the
/// coefficient maps), positive leading coefficient, unit norm against the
/// exact inner product.
pub fn eigenfunction(n: u32, g: f64, beta: f64) -> AlgebraicFunction {
    assert!(g > 0.0, "bound states require g > 0, got {g}");
    let f = descended_eigenfunction(n, g, beta);
    let nrm = norm(&f).expect("descent result has a convergent norm");
    f.scale(1.0 / nrm)
}

/// Gegenbauer polynomial `C_n^{(α)}(x)` by the three-term recurrence.
pub fn gegenbauer(n: u32, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * alpha * x;
    for k in 2..=n {
        let kf = f64::from(k);
        let next = (2.0 * x * (kf + alpha - 1.0) * cur - (kf + 2.0 * alpha - 2.0) * prev) / kf;
        prev = cur;
        cur = next;
    }
    cur
}

/// Largest relative deviation of `ψ_n(p)` from a constant multiple of the
/// classical closed form `(1+βp²)^(−g/2) · C_n^{(g)}(ξ)` with
/// `ξ = √β·p·(1+βp²)^(−1/2)`, over the given sample points.
///
/// The constant is fixed by the first sample. Errors if any sample lands on
/// a zero of the reference form (for odd `n` that includes `p = 0`).
pub fn gegenbauer_match(n: u32, g: f64, beta: f64, samples: &[f64]) -> Result<f64> {
    assert!(!samples.is_empty(), "at least one sample point is required");
    let psi = eigenfunction(n, g, beta);
    let mut anchor = None;
    let mut defect = 0.0_f64;
    for &p in samples {
        let base = 1.0 + beta * p * p;
        let xi = beta.sqrt() * p / base.sqrt();
        let reference = base.powf(-0.5 * g) * gegenbauer(n, g, xi);
        if reference == 0.0 || !reference.is_finite() {
            return Err(Error::SampleAtZero(p));
        }
        let ratio = psi.eval(p) / reference;
        match anchor {
            None => anchor = Some(ratio),
            Some(first) => defect = defect.max((ratio / first - 1.0).abs()),
        }
    }
    Ok(defect)
}

/// Side-by-side report of the bottom-state normalization constant computed
/// from the exact inner product and the variant with halved Gamma arguments
/// that appears in some closed-form tabulations. The two disagree for every
/// `g_total`; `ratio` records by how much.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationAudit {
    pub g_total: f64,
    pub beta: f64,
    /// Constant fixed by `⟨ψ, ψ⟩ = 1` under the deformed measure.
    pub from_inner_product: f64,
    /// `√( √(β/π) · Γ((g+2)/2) / Γ((g+1)/2) )`, the halved-argument variant.
    pub halved_exponent_variant: f64,
    /// `from_inner_product / halved_exponent_variant`.
    pub ratio: f64,
}

/// Compute the [`NormalizationAudit`] for one `(g_total, β)`.
pub fn normalization_audit(g_total: f64, beta: f64) -> NormalizationAudit {
    let exact = ground_profile(g_total, beta).coeffs()[0];
    let ln_variant_sq = 0.5 * (beta.ln() - std::f64::consts::PI.ln())
        + ln_gamma(0.5 * (g_total + 2.0))
        - ln_gamma(0.5 * (g_total + 1.0));
    let variant = (0.5 * ln_variant_sq).exp();
    NormalizationAudit {
        g_total,
        beta,
        from_inner_product: exact,
        halved_exponent_variant: variant,
        ratio: exact / variant,
    }
}
