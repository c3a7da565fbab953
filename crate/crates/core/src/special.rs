//! Small special-function kernel: log-gamma for positive arguments.
//!
//! Every Gamma-function ratio in the crate (descent coefficients, weighted
//! moments) is assembled from `ln_gamma` differences and exponentiated at the
//! end, so ratios of huge Gammas never overflow. The approximation below is a
//! 14-term rational-shift series of the classical Lanczos type; in the range
//! used here (arguments in `[0.5, 200]`) its relative error is below `1e-13`,
//! verified against exact integer and half-integer references in the tests.

const LANCZOS_SHIFT: f64 = 5.242_187_5; // 671/128
const SQRT_TWO_PI: f64 = 2.506_628_274_631_000_5;
// Published table values; digits beyond f64 kept for documentation.
#[allow(clippy::excessive_precision)]
const SERIES_BASE: f64 = 0.999_999_999_999_997_092;
#[allow(clippy::excessive_precision)]
const SERIES: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];

/// Natural log of the Gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires a positive argument, got {x}");
    let tmp = x + LANCZOS_SHIFT;
    let tmp = (x + 0.5) * tmp.ln() - tmp;
    let mut ser = SERIES_BASE;
    let mut y = x;
    for c in SERIES {
        y += 1.0;
        ser += c / y;
    }
    tmp + (SQRT_TWO_PI * ser / x).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Compensated sum of `ln(terms)`; reference accurate to ~1 ulp.
    fn ln_product(terms: impl Iterator<Item = f64>) -> f64 {
        let mut sum = 0.0;
        let mut comp = 0.0;
        for t in terms {
            let x = t.ln();
            let s = sum + x;
            comp += if sum.abs() >= x.abs() { (sum - s) + x } else { (x - s) + sum };
            sum = s;
        }
        sum + comp
    }

    #[test]
    fn matches_exact_integer_references() {
        // ln Γ(k) = Σ_{j<k} ln j.
        for k in 1..=200u32 {
            let reference = ln_product((1..k).map(f64::from));
            let got = ln_gamma(f64::from(k));
            let tol = 1e-13 * reference.abs().max(1.0);
            assert!((got - reference).abs() <= tol, "k = {k}: got {got}, reference {reference}");
        }
    }

    #[test]
    fn matches_exact_half_integer_references() {
        // ln Γ(k + 1/2) = ln √π + Σ_{j=1..k} ln(j − 1/2).
        let ln_sqrt_pi = 0.5 * std::f64::consts::PI.ln();
        for k in 0..=199u32 {
            let reference = ln_sqrt_pi + ln_product((1..=k).map(|j| f64::from(j) - 0.5));
            let got = ln_gamma(f64::from(k) + 0.5);
            let tol = 1e-13 * reference.abs().max(1.0);
            assert!((got - reference).abs() <= tol, "k = {k}: got {got}, reference {reference}");
        }
    }

    #[test]
    fn satisfies_the_recurrence_off_grid() {
        // ln Γ(x+1) − ln Γ(x) = ln x, checked away from integer arguments.
        let mut x = 0.6180339887_f64;
        while x < 150.0 {
            let lhs = ln_gamma(x + 1.0) - ln_gamma(x);
            let tol = 5e-13 * ln_gamma(x + 1.0).abs().max(1.0);
            assert!((lhs - x.ln()).abs() <= tol, "x = {x}: {lhs} vs {}", x.ln());
            x *= 1.37;
        }
    }

    #[test]
    #[should_panic(expected = "positive argument")]
    fn rejects_nonpositive_arguments() {
        let _ = ln_gamma(0.0);
    }
}
