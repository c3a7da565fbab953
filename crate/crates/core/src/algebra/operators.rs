//! First-order ladder maps and the factorized Hamiltonians built from them.
//!
//! Both ladder operators send `P(p)·(1+βp²)^(−s/2)` to `Q(p)·(1+βp²)^(−s/2)`
//! with `deg Q ≤ deg P + 1`; the family is closed and every operator identity
//! reduces to finitely many coefficient identities. The two maps share one
//! coefficient kernel that differs only in a sign, so they are evaluated by a
//! single routine with a fixed multiplier order. That shared order is what
//! lets composite identities (shape invariance, commutators) cancel to a few
//! ulps instead of accumulating independent rounding.

use super::function::{relative_residual, AlgebraicFunction};

/// Lowering-type generator `A(g)` acting on the function family.
///
/// Coefficient action: `q_k = (k+1)·p_{k+1} + β·((k−1) + (g−s))·p_{k−1}`.
/// On the matching ground shape (`s = g`, constant `P`) the result cancels
/// exactly, with no rounding residue.
pub fn apply_a(g: f64, f: &AlgebraicFunction) -> AlgebraicFunction {
    ladder(g, f, 1.0)
}

/// Raising-type generator `Ā(g)`, the formal adjoint of [`apply_a`] under the
/// weighted inner product.
///
/// Coefficient action: `q_k = −(k+1)·p_{k+1} + β·((g+s) − (k−1))·p_{k−1}`.
pub fn apply_abar(g: f64, f: &AlgebraicFunction) -> AlgebraicFunction {
    ladder(g, f, -1.0)
}

/// Exact product split: `a·b = hi + lo` with `hi = fl(a·b)`.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let hi = a * b;
    let lo = a.mul_add(b, -hi);
    (hi, lo)
}

/// Exact sum split: `a + b = s + e` with `s = fl(a+b)`.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let ap = s - b;
    let bp = s - ap;
    (s, (a - ap) + (b - bp))
}

/// Shared coefficient kernel: `q_k = d·(k+1)·p_{k+1} + β·(d·(k−1) + (g − d·s))·p_{k−1}`
/// with `d = +1` for `A(g)` and `d = −1` for `Ā(g)`.
///
/// `d·(k±1)` is exact and `g − d·s` rounds once, shared by every output
/// coefficient. Each `q_k` is then assembled as a compensated two-term dot
/// product, so a single application is correct to about one ulp and the
/// two-map compositions behind the partner identities stay well inside a
/// `1e-12` relative residual even at large `|s|`, `|g|`, and β. Multipliers
/// that vanish in exact arithmetic (matching labels, parity gaps) produce
/// exact zero coefficients, with no compensation residue.
fn ladder(g: f64, f: &AlgebraicFunction, d: f64) -> AlgebraicFunction {
    ladder_split(g, f, d).0
}

/// The kernel with its rounding kept: returns the rounded image and the
/// per-coefficient remainders, `exact_k = hi_k + lo_k` up to O(ε²) terms.
/// The maps are linear, so a composition can run the second stage on `hi`
/// and `lo` separately and add, which keeps the seam between two
/// applications from being amplified by the second stage's multipliers.
fn ladder_split(g: f64, f: &AlgebraicFunction, d: f64) -> (AlgebraicFunction, Vec<f64>) {
    let p = f.coeffs();
    let n = p.len();
    if n == 0 {
        return (AlgebraicFunction::zero(f.beta(), f.s()), Vec::new());
    }
    let beta = f.beta();
    let gs = g - d * f.s();
    let mut q = vec![0.0; n + 1];
    let mut low = vec![0.0; n + 1];
    for (k, (slot, rem)) in q.iter_mut().zip(low.iter_mut()).enumerate() {
        let (up_hi, up_lo) =
            if k + 1 < n { two_prod(d * ((k + 1) as f64), p[k + 1]) } else { (0.0, 0.0) };
        let (down_hi, down_lo) = if k >= 1 {
            // β folded into the multiplier: exact for power-of-two β.
            let mult = beta * (d * ((k - 1) as f64) + gs);
            two_prod(mult, p[k - 1])
        } else {
            (0.0, 0.0)
        };
        let (sum, err) = two_sum(up_hi, down_hi);
        let (hi, lo) = two_sum(sum, err + (up_lo + down_lo));
        *slot = hi;
        *rem = lo;
    }
    (AlgebraicFunction::new(beta, f.s(), q), low)
}

/// Two-stage composition `outer(g₂) ∘ inner(g₁)` with the intermediate
/// carried in split form across the seam. `d = +1` selects the lowering-type
/// kernel, `d = −1` the raising-type one, as in [`apply_a`]/[`apply_abar`].
pub(crate) fn compose(
    g_outer: f64,
    d_outer: f64,
    g_inner: f64,
    d_inner: f64,
    f: &AlgebraicFunction,
) -> AlgebraicFunction {
    let (hi, lo) = ladder_split(g_inner, f, d_inner);
    let main = ladder(g_outer, &hi, d_outer);
    if lo.iter().all(|c| *c == 0.0) {
        return main;
    }
    let correction = ladder(g_outer, &AlgebraicFunction::new(f.beta(), f.s(), lo), d_outer);
    main.add(&correction)
}

/// Factorized Hamiltonian `H(g) = Ā(g)∘A(g)`. The composition is evaluated
/// with the intermediate carried in split form (no precomputed second-order
/// coefficient formula), so the result agrees with `apply_abar(g, apply_a(g, f))`
/// up to the seam rounding that the fused path avoids.
pub fn apply_h(g: f64, f: &AlgebraicFunction) -> AlgebraicFunction {
    compose(g, -1.0, g, 1.0, f)
}

/// Partner Hamiltonian `H̃(g) = A(g)∘Ā(g)`, fused the same way.
pub fn apply_htilde(g: f64, f: &AlgebraicFunction) -> AlgebraicFunction {
    compose(g, 1.0, g, -1.0, f)
}

/// Max-coefficient residual of the shape-invariance identity
/// `H̃(g) = H(g+1) + (2(g+1)−1)·β`, relative to the input's largest
/// coefficient. Zero input gives zero.
pub fn shape_invariance_residual(g: f64, f: &AlgebraicFunction) -> f64 {
    let lhs = apply_htilde(g, f);
    let shifted = apply_h(g + 1.0, f);
    let offset = (2.0 * (g + 1.0) - 1.0) * f.beta();
    let diff = lhs.sub(&shifted).sub(&f.scale(offset));
    relative_residual(&diff, f.max_abs_coeff())
}
