//! The closed function family `P(p) · (1+βp²)^(−s/2)`.
//!
//! Every wavefunction this crate touches lives in this family: a real
//! polynomial `P` (coefficients ascending in degree) times a power of the
//! deformation factor `1+βp²`. The family is closed under the first-order
//! ladder operators, so analytic operator identities become coefficient-level
//! identities that can be checked to rounding accuracy.

use crate::error::{Error, Result};

/// Coefficients with absolute value below this are treated as exact zeros
/// during canonicalization, keeping degrees finite under repeated maps.
const COEFF_FLOOR: f64 = 1e-300;

/// `P(p) · (1+βp²)^(−s/2)` with real polynomial `P` and real exponent `s`.
///
/// Canonical form: no trailing zero coefficients; the zero function is the
/// empty coefficient vector. `beta` is carried per value and must agree
/// whenever two functions are combined; disagreement is a bug in the caller
/// and panics.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraicFunction {
    beta: f64,
    s: f64,
    coeffs: Vec<f64>,
}

impl AlgebraicFunction {
    /// Build a function from ascending polynomial coefficients; canonicalizes.
    pub fn new(beta: f64, s: f64, coeffs: Vec<f64>) -> Self {
        assert!(beta.is_finite() && beta > 0.0, "beta must be positive and finite, got {beta}");
        assert!(s.is_finite(), "exponent s must be finite, got {s}");
        assert!(coeffs.iter().all(|c| c.is_finite()), "coefficients must be finite");
        let mut f = Self { beta, s, coeffs };
        f.canonicalize();
        f
    }

    /// The zero function (empty polynomial) at the given `beta` and `s`.
    pub fn zero(beta: f64, s: f64) -> Self {
        Self::new(beta, s, Vec::new())
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// Polynomial coefficients, ascending degree. Empty iff zero.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree of `P`, or `None` for the zero function.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest absolute coefficient; 0 for the zero function.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Pointwise value `P(p) · (1+βp²)^(−s/2)`.
    pub fn eval(&self, p: f64) -> f64 {
        let poly = self.coeffs.iter().rev().fold(0.0, |acc, c| acc * p + c);
        let base = 1.0 + self.beta * p * p;
        poly * base.powf(-0.5 * self.s)
    }

    /// Scalar multiple. Scaling by zero gives the zero function.
    pub fn scale(&self, c: f64) -> Self {
        Self::new(self.beta, self.s, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Coefficient-wise sum. Panics on `beta` or `s` mismatch: linear
    /// combinations only make sense inside one `(beta, s)` slice of the family.
    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1.0)
    }

    /// Coefficient-wise difference. Same mismatch rules as [`add`](Self::add).
    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1.0)
    }

    fn combine(&self, other: &Self, sign: f64) -> Self {
        if !self.is_zero() && !other.is_zero() {
            assert!(self.beta == other.beta, "{}", Error::BetaMismatch(self.beta, other.beta));
            assert!(self.s == other.s, "{}", Error::ExponentMismatch(self.s, other.s));
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0.0; n];
        for (k, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(k).copied().unwrap_or(0.0);
            let b = other.coeffs.get(k).copied().unwrap_or(0.0);
            *slot = a + sign * b;
        }
        // A zero operand carries no (beta, s) information of its own.
        let (beta, s) = if self.is_zero() { (other.beta, other.s) } else { (self.beta, self.s) };
        Self::new(beta, s, out)
    }

    /// Check that `other` may be paired with `self` in a bilinear operation.
    pub(crate) fn require_same_beta(&self, other: &Self) -> Result<()> {
        if self.is_zero() || other.is_zero() || self.beta == other.beta {
            Ok(())
        } else {
            Err(Error::BetaMismatch(self.beta, other.beta))
        }
    }

    fn canonicalize(&mut self) {
        for c in &mut self.coeffs {
            if c.abs() < COEFF_FLOOR {
                *c = 0.0;
            }
        }
        while self.coeffs.last() == Some(&0.0) {
            self.coeffs.pop();
        }
    }

    /// Drop leading coefficients that are rounding ghosts of an exact
    /// cancellation: anything below `rel_floor` times the largest coefficient.
    /// Used only where the algebra guarantees the true leading terms vanish.
    pub(crate) fn trim_leading_below(&self, rel_floor: f64) -> Self {
        let scale = self.max_abs_coeff();
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().is_some_and(|c| c.abs() <= rel_floor * scale) {
            coeffs.pop();
        }
        Self::new(self.beta, self.s, coeffs)
    }
}

/// Residual of `diff` relative to the magnitude of the inputs that produced
/// it: max |coefficient| of the difference over the reference scale. A zero
/// reference (zero input) yields 0.
pub fn relative_residual(diff: &AlgebraicFunction, reference_scale: f64) -> f64 {
    if reference_scale == 0.0 {
        0.0
    } else {
        diff.max_abs_coeff() / reference_scale
    }
}
