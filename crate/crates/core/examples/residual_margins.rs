//! Prints worst-case residuals of the exact-identity checks over large
//! randomized sweeps, to show how much headroom the advertised tolerances
//! have on this machine. Usage: `cargo run --release --example
//! residual_margins [draws]`.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use potalg::{apply_a, apply_abar, inner_product, shape_invariance_residual, AlgebraicFunction};

fn main() {
    let draws: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(100_000);

    // Shape invariance across the full randomized grid, plus the adversarial
    // corner: large |s|, extreme g, beta = 4.
    let mut rng = StdRng::seed_from_u64(0xBEEF);
    let mut worst = 0.0_f64;
    let mut worst_corner = 0.0_f64;
    for i in 0..draws {
        let beta = [0.25, 1.0, 4.0][i % 3];
        let deg = rng.random_range(0..=6usize);
        let s = rng.random_range(-10.0..10.0);
        let coeffs: Vec<f64> = (0..=deg).map(|_| rng.random_range(-1.0..1.0)).collect();
        let f = AlgebraicFunction::new(beta, s, coeffs.clone());
        let g = rng.random_range(-3.0..3.0);
        worst = worst.max(shape_invariance_residual(g, &f));

        let corner_s = if i % 2 == 0 { 10.0 } else { -10.0 };
        let corner = AlgebraicFunction::new(4.0, corner_s, coeffs);
        let corner_g = if i % 4 < 2 { 3.0 } else { -3.0 };
        worst_corner = worst_corner.max(shape_invariance_residual(corner_g, &corner));
    }
    println!("shape invariance, randomized grid ({draws} draws): {worst:.3e}");
    println!("shape invariance, adversarial corner ({draws} draws): {worst_corner:.3e}");

    // Adjointness under the weighted product.
    let mut adj = 0.0_f64;
    for i in 0..draws / 10 {
        let beta = [0.25, 1.0, 4.0][i % 3];
        let s = rng.random_range(14.0..20.0);
        let mk = |rng: &mut StdRng| {
            let deg = rng.random_range(0..=4usize);
            AlgebraicFunction::new(
                beta,
                s,
                (0..=deg).map(|_| rng.random_range(-1.0..1.0)).collect(),
            )
        };
        let u = mk(&mut rng);
        let v = mk(&mut rng);
        let g = rng.random_range(-3.0..3.0);
        let lhs = inner_product(&apply_abar(g, &u), &v).unwrap();
        let rhs = inner_product(&u, &apply_a(g, &v)).unwrap();
        adj = adj.max((lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0));
    }
    println!("ladder adjointness ({} draws): {adj:.3e}", draws / 10);
}
