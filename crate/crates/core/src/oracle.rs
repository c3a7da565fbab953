//! Independent spectral oracle: finite-difference Sturm–Liouville solver.
//!
//! The momentum-space eigenproblem maps onto a Schrödinger problem on a
//! finite interval by the arclength substitution `u = arctan(√β·p)/√β`:
//! the operator becomes `−d²/du² + β·(g(g−1)·tan²(√β·u) − g)` on
//! `(−L/2, L/2)` with `L = π/√β` and Dirichlet walls. Discretizing with the
//! standard three-point Laplacian gives a symmetric tridiagonal matrix whose
//! lowest eigenvalues approach the closed-form spectrum at second order in
//! the grid spacing. Nothing here touches the operator algebra: the two
//! routes to the spectrum share no code beyond arithmetic.

use crate::error::{Error, Result};
use crate::par;
use crate::repr::{SpectralResult, SpectralSource};

/// Symmetric tridiagonal discretization of the transformed boundary-value
/// problem, together with the parameters that produced it.
#[derive(Debug, Clone)]
pub struct TridiagonalOperator {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
    h: f64,
    g: f64,
    beta: f64,
}

impl TridiagonalOperator {
    pub fn dimension(&self) -> usize {
        self.diag.len()
    }

    pub fn grid_spacing(&self) -> f64 {
        self.h
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiagonal(&self) -> &[f64] {
        &self.offdiag
    }

    /// Infinity-norm bound `max_i (|e_{i−1}| + |d_i| + |e_i|)`; the natural
    /// scale for eigenvalue backward error.
    pub fn norm_bound(&self) -> f64 {
        let n = self.diag.len();
        (0..n).fold(0.0_f64, |m, i| {
            let left = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.offdiag[i].abs() } else { 0.0 };
            m.max(left + self.diag[i].abs() + right)
        })
    }

    /// True when the potential wall grows too slowly for the Dirichlet
    /// boundary to be the mathematically forced condition (`g < 1`): the
    /// discretization then selects one self-adjoint extension and low-order
    /// boundary effects degrade the constant in the convergence rate.
    pub fn boundary_warning(&self) -> bool {
        self.g < 1.0
    }

    /// Exact eigenvalues of the discrete operator when the potential is
    /// constant (`g = 1`): the Dirichlet discrete Laplacian shifted by `−β`,
    /// `λ_k = (4/h²)·sin²(kπ/(2(N+1))) − β` for `k = 1..=N`.
    pub fn constant_potential_levels(&self, count: usize) -> Vec<f64> {
        let n1 = (self.dimension() + 1) as f64;
        (1..=count)
            .map(|k| {
                let t = (k as f64 * std::f64::consts::PI / (2.0 * n1)).sin();
                (4.0 / (self.h * self.h)) * t * t - self.beta
            })
            .collect()
    }
}

/// Build the tridiagonal discretization with `n` interior points.
///
/// Requires `g ≥ 1/2` (below that the closed-form tower bottoms out
/// differently and the Dirichlet wall is not a faithful reduction) and
/// `n ≥ 16`.
pub fn to_sturm(g: f64, beta: f64, n: usize) -> Result<TridiagonalOperator> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::InvalidParameter(format!("beta must be positive, got {beta}")));
    }
    if g.is_nan() || g < 0.5 {
        return Err(Error::InvalidParameter(format!("oracle requires g >= 1/2, got {g}")));
    }
    if n < 16 {
        return Err(Error::InvalidParameter(format!("grid too coarse: {n} interior points")));
    }
    let h = std::f64::consts::PI / (beta.sqrt() * (n + 1) as f64);
    let inv_h2 = 1.0 / (h * h);
    let n1 = (n + 1) as f64;
    let diag = (1..=n)
        .map(|i| {
            // √β·u_i = π·(2i − (N+1)) / (2(N+1)), kept in integer form so the
            // potential is symmetric to the last bit.
            let theta = std::f64::consts::PI * ((2 * i) as f64 - n1) / (2.0 * n1);
            let t = theta.tan();
            2.0 * inv_h2 + beta * (g * (g - 1.0) * t * t - g)
        })
        .collect();
    let offdiag = vec![-inv_h2; n - 1];
    Ok(TridiagonalOperator { diag, offdiag, h, g, beta })
}

/// Number of eigenvalues of `t` strictly below `lambda`, by the Sturm
/// sign-count of the shifted LDLᵀ pivots.
fn count_below(t: &TridiagonalOperator, lambda: f64, pivmin: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0_f64;
    for i in 0..t.diag.len() {
        let e2 = if i == 0 { 0.0 } else { t.offdiag[i - 1] * t.offdiag[i - 1] };
        q = (t.diag[i] - lambda) - e2 / q;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn pivot_floor(t: &TridiagonalOperator) -> f64 {
    let emax2 = t.offdiag.iter().fold(0.0_f64, |m, e| m.max(e * e));
    f64::MIN_POSITIVE * emax2.max(1.0)
}

/// Gershgorin enclosure of the whole spectrum, slightly widened.
fn spectral_bounds(t: &TridiagonalOperator) -> (f64, f64) {
    let n = t.diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { t.offdiag[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { t.offdiag[i].abs() } else { 0.0 };
        lo = lo.min(t.diag[i] - left - right);
        hi = hi.max(t.diag[i] + left + right);
    }
    let pad = 1e-12 * (hi - lo).abs() + 1.0;
    (lo - pad, hi + pad)
}

fn bisect_index(t: &TridiagonalOperator, index: usize, lo0: f64, hi0: f64, pivmin: f64) -> f64 {
    let mut lo = lo0;
    let mut hi = hi0;
    // Invariant: count(lo) ≤ index < count(hi).
    for _ in 0..160 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(t, mid, pivmin) <= index {
            lo = mid;
        } else {
            hi = mid;
        }
        let width = hi - lo;
        if width <= 2.0 * f64::EPSILON * (lo.abs() + hi.abs()) + pivmin {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// The `count` lowest eigenvalues of `t`, ascending, by Sturm bisection.
/// Multiple eigenvalues are returned with multiplicity. Work is distributed
/// across eigenvalue indices when the `parallel` feature is active.
pub fn lowest_eigenvalues(t: &TridiagonalOperator, count: usize) -> Result<Vec<f64>> {
    check_count(t, count)?;
    let pivmin = pivot_floor(t);
    let (lo, hi) = spectral_bounds(t);
    let idx: Vec<usize> = (0..count).collect();
    Ok(par::map_slice(&idx, |&i| bisect_index(t, i, lo, hi, pivmin)))
}

/// Sequential twin of [`lowest_eigenvalues`], always single-threaded; the
/// two agree bit for bit.
pub fn lowest_eigenvalues_seq(t: &TridiagonalOperator, count: usize) -> Result<Vec<f64>> {
    check_count(t, count)?;
    let pivmin = pivot_floor(t);
    let (lo, hi) = spectral_bounds(t);
    Ok((0..count).map(|i| bisect_index(t, i, lo, hi, pivmin)).collect())
}

fn check_count(t: &TridiagonalOperator, count: usize) -> Result<()> {
    if count == 0 || count > t.dimension() {
        return Err(Error::InvalidParameter(format!(
            "requested {count} eigenvalues from a dimension-{} operator",
            t.dimension()
        )));
    }
    Ok(())
}

/// End-to-end oracle: discretize `(g, β)` with `n` interior points and return
/// the `count` lowest levels as lines `(0, λ₀) … (count−1, λ_{count−1})`. The
/// `−gβ` offset sits inside the potential, so these compare directly against
/// the closed-form energies.
pub fn oracle_spectrum(g: f64, beta: f64, n: usize, count: usize) -> Result<SpectralResult> {
    let t = to_sturm(g, beta, n)?;
    let levels = lowest_eigenvalues(&t, count)?;
    Ok(SpectralResult {
        g,
        beta,
        source: SpectralSource::Oracle,
        lines: levels.into_iter().enumerate().map(|(i, e)| (i as u32, e)).collect(),
    })
}

/// Oracle spectra for a batch of `(g, β)` jobs at shared grid size and level
/// count; jobs run in parallel when the feature is active, and the output
/// order always matches the input order.
pub fn batch_oracle_spectra(
    jobs: &[(f64, f64)],
    n: usize,
    count: usize,
) -> Result<Vec<SpectralResult>> {
    par::map_slice(jobs, |&(g, beta)| oracle_spectrum(g, beta, n, count)).into_iter().collect()
}

/// Sequential twin of [`batch_oracle_spectra`].
pub fn batch_oracle_spectra_seq(
    jobs: &[(f64, f64)],
    n: usize,
    count: usize,
) -> Result<Vec<SpectralResult>> {
    jobs.iter().map(|&(g, beta)| oracle_spectrum(g, beta, n, count)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repr::energy;

    #[test]
    fn rejects_sub_half_g_and_coarse_grids() {
        assert!(to_sturm(0.4, 1.0, 64).is_err());
        assert!(to_sturm(1.0, 1.0, 8).is_err());
        assert!(to_sturm(1.0, -1.0, 64).is_err());
    }

    #[test]
    fn boundary_warning_flags_soft_walls() {
        assert!(to_sturm(0.5, 1.0, 64).unwrap().boundary_warning());
        assert!(!to_sturm(1.0, 1.0, 64).unwrap().boundary_warning());
    }

    #[test]
    fn potential_is_symmetric_to_the_last_bit() {
        let t = to_sturm(2.0, 0.5, 101).unwrap();
        let d = t.diagonal();
        for i in 0..d.len() / 2 {
            assert_eq!(d[i], d[d.len() - 1 - i], "i = {i}");
        }
    }

    #[test]
    fn two_by_two_toy_operator_has_known_eigenvalues() {
        // [[2, −1], [−1, 2]] has eigenvalues 1 and 3.
        let t = TridiagonalOperator {
            diag: vec![2.0, 2.0],
            offdiag: vec![-1.0],
            h: 1.0,
            g: 1.0,
            beta: 1.0,
        };
        let ev = lowest_eigenvalues(&t, 2).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-12);
        assert!((ev[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn constant_potential_case_matches_the_discrete_closed_form() {
        // g = 1 makes the potential exactly −β; the discrete levels are the
        // Dirichlet Laplacian values, so bisection error alone is visible.
        let t = to_sturm(1.0, 1.0, 128).unwrap();
        let expect = t.constant_potential_levels(5);
        let got = lowest_eigenvalues(&t, 5).unwrap();
        for (k, (e, x)) in expect.iter().zip(&got).enumerate() {
            assert!((e - x).abs() <= 1e-10, "k = {k}: {x} vs {e}");
        }
    }

    #[test]
    fn eigenvalues_are_sorted_and_match_sequential() {
        let t = to_sturm(2.0, 1.0, 400).unwrap();
        let par = lowest_eigenvalues(&t, 6).unwrap();
        let seq = lowest_eigenvalues_seq(&t, 6).unwrap();
        assert_eq!(par, seq);
        for w in par.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn oracle_converges_at_second_order() {
        // Error against the closed form should shrink by ~4x per grid doubling.
        let exact = energy(2, 2.0, 1.0);
        let err = |n: usize| {
            let t = to_sturm(2.0, 1.0, n).unwrap();
            let ev = lowest_eigenvalues(&t, 3).unwrap();
            (ev[2] - exact).abs()
        };
        let e1 = err(256);
        let e2 = err(512);
        let ratio = e1 / e2;
        assert!((3.0..5.5).contains(&ratio), "convergence ratio {ratio} (errors {e1}, {e2})");
    }

    #[test]
    fn oracle_spectrum_tracks_the_closed_form() {
        let s = oracle_spectrum(1.5, 2.0, 2048, 4).unwrap();
        for &(n, e) in &s.lines {
            let reference = energy(n, 1.5, 2.0);
            let tol = 5e-3 * reference.abs().max(1.0);
            assert!((e - reference).abs() <= tol, "n = {n}: {e} vs {reference}");
        }
    }

    #[test]
    fn batch_matches_singles_and_preserves_order() {
        let jobs = [(1.0, 1.0), (2.0, 0.5), (1.5, 2.0)];
        let batch = batch_oracle_spectra(&jobs, 256, 3).unwrap();
        let seq = batch_oracle_spectra_seq(&jobs, 256, 3).unwrap();
        assert_eq!(batch.len(), 3);
        for (b, s) in batch.iter().zip(&seq) {
            assert_eq!(b.lines, s.lines);
        }
        for (job, out) in jobs.iter().zip(&batch) {
            assert_eq!(job.0, out.g);
            assert_eq!(job.1, out.beta);
        }
    }

    #[test]
    fn requesting_too_many_levels_errors() {
        let t = to_sturm(1.0, 1.0, 32).unwrap();
        assert!(lowest_eigenvalues(&t, 0).is_err());
        assert!(lowest_eigenvalues(&t, 33).is_err());
    }
}
