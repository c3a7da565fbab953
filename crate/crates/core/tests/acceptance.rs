//! Acceptance gate: one test per release criterion. Each check prints a
//! single PASS/FAIL line with the measured residual next to its contractual
//! tolerance, then asserts. Tolerances here are commitments, not knobs; a
//! failure means the build no longer meets its advertised accuracy.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use potalg::verify::max_shape_invariance_residual;
use potalg::{
    apply_a, apply_abar, apply_h, batch_oracle_spectra, dirac_energy, dirac_upper_problem,
    eigenfunction, energy, gegenbauer, gegenbauer_match, ground_profile, harmonic_energy,
    harmonic_energy_algebraic, inner_product, ladder_norm_down, ladder_norm_up, lowest_eigenvalues,
    norm, normalization_audit, to_sturm, AlgebraicFunction, Branch, DiracGup, HarmonicGup,
    ModeState, SequenceState,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Print the verdict line and enforce it.
fn report(name: &str, residual: f64, tolerance: f64) {
    let verdict = if residual <= tolerance { "PASS" } else { "FAIL" };
    println!("{verdict} {name}: residual {residual:.3e}, tolerance {tolerance:.1e}");
    assert!(
        residual <= tolerance,
        "{name}: residual {residual:.3e} exceeds tolerance {tolerance:.1e}"
    );
}

/// Random member of the family the randomized criteria draw from:
/// degree <= 6, decay exponent in [-10, 10), coefficients in [-1, 1).
fn family_draw(rng: &mut StdRng, beta: f64) -> AlgebraicFunction {
    let deg = rng.random_range(0..=6usize);
    let s = rng.random_range(-10.0..10.0);
    let coeffs = (0..=deg).map(|_| rng.random_range(-1.0..1.0)).collect();
    AlgebraicFunction::new(beta, s, coeffs)
}

/// Unit tower state at weight `g` of the spin-`j` tower, built by raw
/// lowering descent from the top and normalized by its computed norm. Valid
/// whenever the norm integral converges (`g > -1/2`), which reaches further
/// down the towers than the bound-state constructor's `g > 0`.
fn tower_state(j: f64, g: f64, beta: f64) -> AlgebraicFunction {
    let steps = (j - g).round() as u32;
    let mut f = ground_profile(j, beta);
    for i in 0..steps {
        // Step from weight j-i to j-i-1; the multiplier is the destination.
        f = apply_abar(j - f64::from(i + 1), &f);
    }
    let nrm = norm(&f).expect("norm converges for weights above -1/2");
    f.scale(1.0 / nrm)
}

#[test]
fn acceptance_1_shape_invariance() {
    let residual = max_shape_invariance_residual(100, 0xACC_0001);
    report(
        "shape invariance over 100 randomized inputs (deg <= 6, g in [-3,3], beta in {1/4,1,4})",
        residual,
        1e-12,
    );
}

#[test]
fn acceptance_2_commutators_products_and_matrix_elements() {
    let betas = [0.25, 1.0, 4.0];
    let mut rng = StdRng::seed_from_u64(0xACC_0002);

    // Commutators on weight states and product identities on counter states,
    // over the same randomized family as the shape-invariance sweep.
    let mut worst = 0.0_f64;
    for i in 0..100 {
        let beta = betas[i % betas.len()];

        let base = rng.random_range(-3.0..1.0);
        let mut st = ModeState::new();
        for off in 0..rng.random_range(1..=3) {
            st.insert(base + f64::from(off), family_draw(&mut rng, beta))
                .expect("integer offsets from one base");
        }
        let (ladder, raise) = st.commutator_residuals().expect("consistent state");
        worst = worst.max(ladder).max(raise);

        let mut sq = SequenceState::with_base(rng.random_range(-3.0..1.0));
        for n in 0..rng.random_range(1..=3) {
            sq.insert(n, family_draw(&mut rng, beta)).expect("fresh entries");
        }
        let (r1, r2, r3) = sq.product_identity_residuals().expect("consistent state");
        worst = worst.max(r1).max(r2).max(r3);
    }
    report("su(2) commutators and factorized products over 100 randomized states", worst, 1e-12);

    // Matrix elements of both ladder generators computed through the two
    // realizations (weight bookkeeping vs counter bookkeeping) on the same
    // tower states, against each other and against the closed-form elements.
    let mut route_diff = 0.0_f64;
    let mut vs_closed = 0.0_f64;
    for two_j in 1..=8u32 {
        let j = f64::from(two_j) / 2.0;
        for beta in [0.5, 1.0, 2.0] {
            let mut g = j;
            // Transitions g <-> g-1 need both states normalizable and the
            // element integral convergent, which bounds the weight by 1/2.
            while g > 0.5 + 1e-9 {
                let upper = tower_state(j, g, beta);
                let lower = tower_state(j, g - 1.0, beta);

                let mut down_mode = ModeState::new();
                down_mode.insert(g, upper.clone()).expect("single component");
                let elem_down_mode = inner_product(
                    &lower,
                    down_mode.j_minus().component(g - 1.0).expect("one step down"),
                )
                .expect("convergent");
                let mut down_seq = SequenceState::with_base(g - 2.0);
                down_seq.insert(2, upper.clone()).expect("single entry");
                let elem_down_seq =
                    inner_product(&lower, down_seq.j_minus().entry(1).expect("one step down"))
                        .expect("convergent");
                let target_down = ladder_norm_down(j, g, beta).expect("valid label");
                route_diff =
                    route_diff.max((elem_down_mode - elem_down_seq).abs() / target_down.max(1.0));
                vs_closed =
                    vs_closed.max((elem_down_mode - target_down).abs() / target_down.max(1.0));

                let mut up_mode = ModeState::new();
                up_mode.insert(g - 1.0, lower.clone()).expect("single component");
                let elem_up_mode =
                    inner_product(&upper, up_mode.j_plus().component(g).expect("one step up"))
                        .expect("convergent");
                let mut up_seq = SequenceState::with_base(g - 3.0);
                up_seq.insert(2, lower.clone()).expect("single entry");
                let elem_up_seq =
                    inner_product(&upper, up_seq.j_plus().entry(3).expect("one step up"))
                        .expect("convergent");
                let target_up = ladder_norm_up(j, g - 1.0, beta).expect("valid label");
                route_diff =
                    route_diff.max((elem_up_mode - elem_up_seq).abs() / target_up.max(1.0));
                vs_closed = vs_closed.max((elem_up_mode - target_up).abs() / target_up.max(1.0));

                g -= 1.0;
            }
        }
    }
    report("ladder matrix elements agree between the two realizations (j <= 4)", route_diff, 1e-12);
    report("ladder matrix elements match the closed form (j <= 4)", vs_closed, 1e-12);
}

#[test]
fn acceptance_3_ladder_norms() {
    let mut worst = 0.0_f64;
    for two_j in 1..=8u32 {
        let j = f64::from(two_j) / 2.0;
        for beta in [0.5, 1.0, 2.0] {
            let mut g = j;
            while g > -0.5 + 1e-9 {
                let psi = tower_state(j, g, beta);
                let got = norm(&apply_a(g, &psi)).expect("convergent image norm");
                let target = ladder_norm_up(j, g, beta).expect("valid label");
                worst = worst.max((got - target).abs() / target.max(1.0));
                g -= 1.0;
            }
        }
    }
    report(
        "raising-image norms hit sqrt(beta (j^2 - g^2)) on every normalizable label (j <= 4)",
        worst,
        1e-10,
    );
}

#[test]
fn acceptance_4_spectrum_vs_oracle() {
    let jobs: Vec<(f64, f64)> = [1.0, 1.5, 2.0, 3.0]
        .iter()
        .flat_map(|&g| [0.5, 1.0, 2.0].iter().map(move |&b| (g, b)))
        .collect();
    let spectra = batch_oracle_spectra(&jobs, 4096, 5).expect("valid jobs");
    let mut sweep = 0.0_f64;
    for sp in &spectra {
        for &(n, e) in &sp.lines {
            // Scaled by (n+1)^2 beta, the size of the n-th level; the plain
            // relative error is undefined at the exactly-zero ground level.
            let unit = f64::from(n + 1).powi(2) * sp.beta;
            sweep = sweep.max((e - energy(n, sp.g, sp.beta)).abs() / unit);
        }
    }
    report(
        "closed-form levels vs discretized oracle, scaled by (n+1)^2 beta (12 cases, n <= 4)",
        sweep,
        5e-3,
    );

    // Constant-potential case against the discrete box formula. The absolute
    // comparison runs at a dimension where 1e-10 sits above the eigensolver's
    // backward-error floor eps*||T||; at 4096 points that floor is ~1e-9, so
    // the production size is held to a norm-relative bound instead.
    let t = to_sturm(1.0, 1.0, 192).expect("valid grid");
    let abs_err = t
        .constant_potential_levels(5)
        .iter()
        .zip(&lowest_eigenvalues(&t, 5).expect("in range"))
        .fold(0.0_f64, |m, (b, x)| m.max((b - x).abs()));
    report(
        "unit-tower case matches the discrete box formula, absolute (192 points)",
        abs_err,
        1e-10,
    );

    let t_big = to_sturm(1.0, 1.0, 4096).expect("valid grid");
    let rel_err = t_big
        .constant_potential_levels(5)
        .iter()
        .zip(&lowest_eigenvalues(&t_big, 5).expect("in range"))
        .fold(0.0_f64, |m, (b, x)| m.max((b - x).abs()))
        / t_big.norm_bound();
    println!(
        "note: at 4096 points eps*||T|| is {:.1e}, below which absolute eigenvalues are not defined",
        f64::EPSILON * t_big.norm_bound()
    );
    report(
        "unit-tower case matches the discrete box formula, norm-relative (4096 points)",
        rel_err,
        1e-12,
    );
}

#[test]
fn acceptance_5_eigenfunctions() {
    let grid: [(f64, f64); 6] =
        [(0.7, 0.5), (0.7, 2.0), (1.0, 0.5), (1.0, 2.0), (2.0, 0.5), (2.0, 2.0)];

    let mut gram = 0.0_f64;
    let mut eig = 0.0_f64;
    for &(g, beta) in &grid {
        let states: Vec<_> = (0..=6).map(|n| eigenfunction(n, g, beta)).collect();
        for (m, fm) in states.iter().enumerate() {
            for (n, fn_) in states.iter().enumerate().skip(m) {
                let overlap = inner_product(fm, fn_).expect("convergent");
                let expected = if m == n { 1.0 } else { 0.0 };
                gram = gram.max((overlap - expected).abs());
            }
        }
        for (n, psi) in states.iter().enumerate() {
            let diff = apply_h(g, psi).sub(&psi.scale(energy(n as u32, g, beta)));
            eig = eig.max(diff.max_abs_coeff() / psi.max_abs_coeff());
        }
    }
    report("Gram matrix of levels 0..6 is the identity", gram, 1e-10);
    report("factorized operator reproduces (n^2 + 2ng) beta at coefficient level", eig, 1e-10);

    let mut defect = 0.0_f64;
    let mut rng = StdRng::seed_from_u64(0xACC_0005);
    for n in 0..=6u32 {
        for &(g, beta) in &[(1.0, 1.0), (1.5, 0.5), (2.0, 2.0)] {
            let mut samples = Vec::new();
            while samples.len() < 50 {
                let p: f64 = rng.random_range(-5.0..5.0);
                let base: f64 = 1.0 + beta * p * p;
                let xi = beta.sqrt() * p / base.sqrt();
                let reference = base.powf(-0.5 * g) * gegenbauer(n, g, xi);
                // keep sample points safely away from zeros of the reference
                if reference.abs() > 1e-3 {
                    samples.push(p);
                }
            }
            defect =
                defect.max(gegenbauer_match(n, g, beta, &samples).expect("samples avoid zeros"));
        }
    }
    report("proportionality to the classical ultraspherical form (n <= 6)", defect, 1e-9);
}

#[test]
fn acceptance_6_harmonic_model() {
    let mut rng = StdRng::seed_from_u64(0xACC_0006);
    let mut two_forms = 0.0_f64;
    for _ in 0..100 {
        let m = HarmonicGup::new(
            rng.random_range(0.5..2.0),
            rng.random_range(0.5..2.0),
            rng.random_range(0.5..2.0),
            rng.random_range(0.5..2.0),
        )
        .expect("positive draws");
        for n in 0..=10u32 {
            let a = harmonic_energy(n, &m);
            let b = harmonic_energy_algebraic(n, &m);
            two_forms = two_forms.max((a - b).abs() / a.abs().max(1.0));
        }
    }
    report(
        "two closed forms of the oscillator levels agree (100 draws, n <= 10)",
        two_forms,
        1e-12,
    );

    let weak = HarmonicGup::new(1.0, 1.0, 1.0, 1e-8).expect("positive");
    let mut weak_dev = 0.0_f64;
    for n in 0..=6u32 {
        let undeformed = weak.hbar * weak.omega * (f64::from(n) + 0.5);
        weak_dev = weak_dev.max((harmonic_energy(n, &weak) - undeformed).abs() / undeformed);
    }
    report("weak-deformation limit recovers hbar omega (n + 1/2) at beta = 1e-8", weak_dev, 1e-6);
}

#[test]
fn acceptance_7_dirac_model() {
    // Draws stay near unit scale: the coupling identity is checked in
    // absolute terms, so wildly scaled constants would just test overflow of
    // the comparison, not the identity.
    let mut rng = StdRng::seed_from_u64(0xACC_0007);
    let mut coupling = 0.0_f64;
    let mut inversion = 0.0_f64;
    for _ in 0..100 {
        let m = DiracGup::new(
            rng.random_range(0.9..1.1),
            rng.random_range(0.9..1.1),
            rng.random_range(0.9..1.1),
            rng.random_range(0.9..1.1),
            rng.random_range(0.9..1.1),
        )
        .expect("positive draws");
        let problem = dirac_upper_problem(&m).expect("in range");
        let g = problem.g;
        let mhw = m.mass * m.hbar * m.omega;
        let lhs = g * (g - 1.0) * m.beta * m.beta;
        let rhs = (1.0 - mhw * m.beta) / (mhw * mhw);
        coupling = coupling.max((lhs - rhs).abs());

        for n in 0..=10u32 {
            let e = dirac_energy(n, &m, Branch::Plus);
            let recovered = (e * e - problem.shift) / problem.scale + g * m.beta;
            let target = energy(n, g, m.beta) + g * m.beta;
            inversion = inversion.max((recovered - target).abs() / target.max(1.0));
        }
    }
    report(
        "potential coefficient identity g(g-1) beta^2 = (1 - m hbar omega beta)/(m hbar omega)^2",
        coupling,
        1e-14,
    );
    report(
        "energy inversion through the algebraic eigenvalue (100 draws, n <= 10)",
        inversion,
        1e-12,
    );

    // Unit constants with m hbar omega beta = 1/2 put the tower label at 2;
    // the independent discretization must reproduce the relativistic levels.
    let m = DiracGup::new(1.0, 1.0, 1.0, 1.0, 0.5).expect("positive");
    let problem = dirac_upper_problem(&m).expect("in range");
    let t = to_sturm(problem.g, m.beta, 4096).expect("valid grid");
    let levels = lowest_eigenvalues(&t, 4).expect("in range");
    let mut pipeline = 0.0_f64;
    for (n, lambda) in levels.iter().enumerate() {
        let via_oracle = problem.energy_from_eigenvalue(*lambda, Branch::Plus);
        let direct = dirac_energy(n as u32, &m, Branch::Plus);
        pipeline = pipeline.max((via_oracle - direct).abs() / direct.abs());
    }
    report(
        "oracle pipeline reproduces the positive-branch levels (label 2, n <= 3)",
        pipeline,
        5e-3,
    );
}

#[test]
fn acceptance_8_normalization() {
    let mut ground = 0.0_f64;
    for g_total in [0.5, 1.0, 1.7, 6.0] {
        for beta in [0.5, 1.0, 2.0] {
            let f = ground_profile(g_total, beta);
            let n2 = inner_product(&f, &f).expect("convergent");
            ground = ground.max((n2 - 1.0).abs());
        }
    }
    report(
        "bottom-state unit norms over exponents {1/2, 1, 1.7, 6} x beta {1/2, 1, 2}",
        ground,
        1e-12,
    );

    // The audit compares the inner-product constant against the
    // halved-exponent variant that circulates in closed-form tables. The two
    // genuinely differ; the table below documents by how much.
    println!("     g      beta    inner-product       halved-variant      ratio");
    let mut rows = 0usize;
    let mut all_distinct = true;
    for g_total in [0.5, 1.0, 1.7, 6.0] {
        for beta in [0.5, 1.0, 2.0] {
            let audit = normalization_audit(g_total, beta);
            println!(
                "  {:4.1}  {:6.1}  {:.12e}  {:.12e}  {:.6}",
                audit.g_total,
                audit.beta,
                audit.from_inner_product,
                audit.halved_exponent_variant,
                audit.ratio
            );
            all_distinct &= (audit.ratio - 1.0).abs() > 1e-3;
            rows += 1;
        }
    }
    assert_eq!(rows, 12);
    assert!(all_distinct, "the two normalization constants must genuinely differ");
    println!("PASS normalization audit generated: 12 rows, both constants reported side by side");
}
