//! Acceptance gate: one test per release criterion. The harness line for
//! each `criterion_*` test is the pass/fail record for that criterion.

mod common;

use common::*;
use num_complex::Complex64;
use qsep_core::{
    analyze, antidiagonal_necessary, basis_element, cauchy_schwarz_bipartite, density_from_spin,
    mu_sufficient, peres_subsets, peres_test, product_decomposition, sharpness_decision,
    sharpness_state, spin_from_adjusted, spin_from_density, spin_norm1, spin_norm_decomposition,
    spin_norm_sufficient, random_neighborhood_check, trace_inner, verify_decomposition, werner,
    werner_decomposition, werner_threshold, AnalyzeOptions, BasisKind, BitIndex,
    CoefficientTable, DiagonalFamilySpec, DensityMatrix, SharpnessSpec, Sign, WernerSpec,
};
use rand::Rng;

fn zeros(n: usize) -> BitIndex {
    BitIndex::zeros(n).unwrap()
}

#[test]
fn criterion_01_werner_threshold_reproduction() {
    for n in 2..=5usize {
        let threshold = werner_threshold(n).unwrap();

        // (a) the decomposition exists exactly at the threshold and verifies
        let at = WernerSpec::new(n, threshold, zeros(n), Sign::Plus).unwrap();
        let dec = werner_decomposition(&at).unwrap();
        let report = verify_decomposition(&dec, &werner(&at), 1e-10).unwrap();
        assert!(
            report.pass,
            "n={n}: threshold certificate failed: {:?}",
            report.violations
        );

        // (b) the anti-diagonal necessary condition breaks just above it
        let above = WernerSpec::new(n, threshold + 1e-6, zeros(n), Sign::Plus).unwrap();
        let rho = werner(&above);
        let anti = antidiagonal_necessary(&rho);
        assert!(!anti.passed(), "n={n}: anti-diagonal passed above threshold");

        // (c) so does the partial transpose on at least one cut
        if n <= 4 {
            let mut any_failed = false;
            for subset in peres_subsets(n, false) {
                if !peres_test(&rho, &subset).unwrap().passed() {
                    any_failed = true;
                }
            }
            assert!(any_failed, "n={n}: no transpose cut failed above threshold");
        }
        println!("criterion 1, n={n}: certificate at s={threshold:.6}, broken at +1e-6");
    }
}

#[test]
fn criterion_02_cat_spin_norm_closed_form() {
    for n in 2..=6usize {
        let s = werner_threshold(n).unwrap();
        let spec = WernerSpec::new(n, s, zeros(n), Sign::Plus).unwrap();
        let norm = spin_norm1(&werner(&spec));
        let expected = ((1u64 << n) - 1) as f64 / ((1u64 << (n - 1)) + 1) as f64;
        assert!(
            (norm - expected).abs() < 1e-12,
            "n={n}: norm {norm} vs {expected}"
        );
        if n == 2 {
            assert!((norm - 1.0).abs() < 1e-12);
        }
        if n == 3 {
            assert!((norm - 1.4).abs() < 1e-12);
        }
        println!("criterion 2, n={n}: spin 1-norm {norm:.12}");
    }
}

#[test]
fn criterion_03_banded_family_sharpness() {
    let subsets = peres_subsets(3, true);
    let mut checked = 0usize;
    for ci in 0..21usize {
        for di in 0..21usize {
            let c = -0.125 + ci as f64 / 80.0;
            let d = -0.125 + di as f64 / 80.0;
            let spec = SharpnessSpec::new(3, c, d).unwrap();
            let rho = sharpness_state(&spec);

            let norm = spin_norm1(&rho);
            let expected = 1.0 + 4.0 * (c - d).abs();
            assert!(
                (norm - expected).abs() < 1e-12,
                "c={c} d={d}: norm {norm} vs {expected}"
            );

            let decision = sharpness_decision(&spec);
            assert_eq!(decision.passed(), (c - d).abs() <= 1e-12, "c={c} d={d}");

            for subset in &subsets {
                assert!(
                    peres_test(&rho, subset).unwrap().passed(),
                    "c={c} d={d}: transpose failed on {subset:?}"
                );
            }

            if ci == di {
                let dec = spin_norm_decomposition(&rho).unwrap();
                let report = verify_decomposition(&dec, &rho, 1e-10).unwrap();
                assert!(report.pass, "c=d={c}: {:?}", report.violations);
            }
            checked += 1;
        }
    }
    println!("criterion 3: {checked} grid points, 21 with certificates");
}

#[test]
fn criterion_04_product_bracket_certificates() {
    let mut rng = rng(0x5eed_0004);
    for trial in 0..200usize {
        let n = 1 + trial % 4;
        let spec = random_product_spec(&mut rng, n);
        let dec = product_decomposition(&spec);
        assert_eq!(dec.terms.len(), 1 << (n - 1), "trial {trial}");

        let rho = dec.reassemble().unwrap();
        let report = verify_decomposition(&dec, &rho, 1e-12).unwrap();
        assert!(report.pass, "trial {trial}: {:?}", report.violations);

        for subset in peres_subsets(n, true) {
            assert!(peres_test(&rho, &subset).unwrap().passed(), "trial {trial}");
        }
        for cut in 1..n {
            assert!(
                cauchy_schwarz_bipartite(&rho, cut).unwrap().passed(),
                "trial {trial} cut {cut}"
            );
        }
        assert!(antidiagonal_necessary(&rho).passed(), "trial {trial}");
    }
    println!("criterion 4: 200 product certificates verified");
}

#[test]
fn criterion_05_norm_bound_certificates() {
    let mut rng = rng(0x5eed_0005);
    for trial in 0..100usize {
        let n = 1 + trial % 3;
        let target: f64 = rng.random::<f64>();
        let rho = random_spin_density(&mut rng, n, target);
        let dec = spin_norm_decomposition(&rho).unwrap();
        let report = verify_decomposition(&dec, &rho, 1e-10).unwrap();
        assert!(report.pass, "trial {trial}: {:?}", report.violations);

        let norm = spin_norm1(&rho);
        assert!(
            (dec.terms[0].weight - (1.0 - norm)).abs() < 1e-12,
            "trial {trial}: remainder {} vs 1 - {norm}",
            dec.terms[0].weight
        );
    }
    println!("criterion 5: 100 norm-bound certificates verified");
}

#[test]
fn criterion_06_transform_correctness() {
    let mut rng = rng(0x5eed_0006);

    // butterfly kernel vs dense multiply
    for trial in 0..100usize {
        let n = 1 + trial % 4;
        let dim = 1usize << n;
        let mut table = CoefficientTable::new(n, BasisKind::Adjusted);
        for j in 0..dim {
            for k in 0..dim {
                table.set(
                    j,
                    k,
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
                );
            }
        }
        let oracle = naive_hadamard_columns(&table);
        let fast = spin_from_adjusted(table).unwrap();
        for j in 0..dim {
            for k in 0..dim {
                assert!(
                    (fast.get(j, k) - oracle[j * dim + k]).norm() < 1e-13,
                    "trial {trial} at ({j},{k})"
                );
            }
        }
    }

    // density -> spin -> density round trip
    for trial in 0..20usize {
        let n = 1 + trial % 3;
        let rho = random_product_mixture(&mut rng, n, 1 + trial % 5);
        let back = density_from_spin(&spin_from_density(&rho)).unwrap();
        assert!(max_density_deviation(&rho, &back) < 1e-12, "trial {trial}");
    }

    // exhaustive orthogonality of the spin basis
    for n in 1..=3usize {
        let dim = 1usize << n;
        let scale = dim as f64;
        for j1 in 0..dim {
            for k1 in 0..dim {
                let a = basis_element(
                    BasisKind::Spin,
                    &BitIndex::new(n, j1).unwrap(),
                    &BitIndex::new(n, k1).unwrap(),
                )
                .unwrap();
                for j2 in 0..dim {
                    for k2 in 0..dim {
                        let b = basis_element(
                            BasisKind::Spin,
                            &BitIndex::new(n, j2).unwrap(),
                            &BitIndex::new(n, k2).unwrap(),
                        )
                        .unwrap();
                        let inner = trace_inner(&a.matrix, &b.matrix).unwrap();
                        let expected = if j1 == j2 && k1 == k2 { scale } else { 0.0 };
                        assert!(
                            (inner - Complex64::new(expected, 0.0)).norm() < 1e-13,
                            "n={n} ({j1},{k1}) vs ({j2},{k2})"
                        );
                    }
                }
            }
        }
    }
    println!("criterion 6: kernel vs oracle, round trips, orthogonality");
}

#[test]
fn criterion_07_phase_reality_invariant() {
    let mut rng = rng(0x5eed_0007);
    for trial in 0..100usize {
        let n = 1 + trial % 4;
        let target: f64 = rng.random();
        let rho = if trial % 2 == 0 {
            random_product_mixture(&mut rng, n, 1 + trial % 4)
        } else {
            random_spin_density(&mut rng, n, target)
        };
        let table = spin_from_density(&rho);
        let dim = 1usize << n;
        for j in 0..dim {
            for k in 0..dim {
                let jb = BitIndex::new(n, j).unwrap();
                let kb = BitIndex::new(n, k).unwrap();
                let s = table.get(j, k);
                // i^(j.k) s
                let imag = match jb.dot(&kb) % 4 {
                    0 => s.im,
                    1 => s.re,
                    2 => -s.im,
                    _ => -s.re,
                };
                assert!(imag.abs() < 1e-12, "trial {trial} slot ({j},{k}): {imag}");
            }
        }
    }
    println!("criterion 7: 100 states, all phased coefficients real");
}

#[test]
fn criterion_08_necessary_conditions_are_sound() {
    let mut rng = rng(0x5eed_0008);
    for trial in 0..1000usize {
        let n = 2 + trial % 3;
        let rho = random_product_mixture(&mut rng, n, 1 + trial % 6);
        for cut in 1..n {
            assert!(
                cauchy_schwarz_bipartite(&rho, cut).unwrap().passed(),
                "trial {trial} cut {cut}"
            );
        }
        assert!(antidiagonal_necessary(&rho).passed(), "trial {trial}");
        for subset in peres_subsets(n, true) {
            assert!(
                peres_test(&rho, &subset).unwrap().passed(),
                "trial {trial} subset {subset:?}"
            );
        }
    }
    println!("criterion 8: 1000 separable mixtures, zero false positives");
}

#[test]
fn criterion_09_neighborhood_implies_norm_bound() {
    let mut rng = rng(0x5eed_0009);
    let mut neighborhood_passes = 0usize;
    let mut neighborhood_fails = 0usize;
    for trial in 0..100usize {
        let n = 1 + trial % 4;
        let bound = 1.0 / ((1u64 << (2 * n)) as f64 - 1.0);
        let rho = if trial % 2 == 0 {
            // small norm spread over every slot: lands inside the bound
            let target: f64 = rng.random::<f64>() * 0.4;
            random_spin_density(&mut rng, n, target)
        } else {
            // one coefficient straddling the bound
            let value = rng.random::<f64>() * (3.0 * bound).min(1.0);
            let mut table = CoefficientTable::new(n, BasisKind::Spin);
            table.set(0, 0, Complex64::new(1.0, 0.0));
            table.set(1, 0, Complex64::new(value, 0.0));
            density_from_spin(&table).unwrap()
        };
        let neighborhood = random_neighborhood_check(&rho);
        if neighborhood.passed() {
            neighborhood_passes += 1;
            assert!(
                spin_norm_sufficient(&rho).passed(),
                "trial {trial}: neighborhood passed but the norm bound failed"
            );
        } else {
            neighborhood_fails += 1;
        }
    }
    assert!(neighborhood_passes > 10);
    assert!(neighborhood_fails > 10);

    // the n=2 boundary value 1/15 = 1/(2^4 - 1) exactly meets the bound
    let mut table = CoefficientTable::new(2, BasisKind::Spin);
    table.set(0, 0, Complex64::new(1.0, 0.0));
    table.set(1, 0, Complex64::new(1.0 / 15.0, 0.0));
    let rho = density_from_spin(&table).unwrap();
    let at_bound = random_neighborhood_check(&rho);
    assert!(at_bound.passed());
    assert!(at_bound.margin.abs() < 1e-12);
    println!(
        "criterion 9: {neighborhood_passes} passes all imply the norm bound, \
         {neighborhood_fails} informative fails, boundary 1/15 exercised"
    );
}

#[test]
fn criterion_10_white_noise_bound_matches_cat_threshold() {
    for n in 2..=6usize {
        let u = DiagonalFamilySpec::from_pairs(n, &[(0, 1.0)], &[]).unwrap();
        let threshold = werner_threshold(n).unwrap();
        let r = mu_sufficient(threshold, &u);
        assert!(
            r.margin.abs() < 1e-15,
            "n={n}: bound differs from threshold by {}",
            r.margin
        );
        println!("criterion 10, n={n}: mixing bound = {threshold:.12}");
    }
}

/// The analysis orchestrator ties the battery together with the verdict
/// semantics the criteria above rely on.
#[test]
fn orchestrator_end_to_end_verdicts() {
    // white noise: certified by the norm bound
    let dim = 4usize;
    let mut m = qsep_core::ComplexMatrix::identity(dim);
    m.scale(0.25);
    let mixed = DensityMatrix::new(m).unwrap();
    let report = analyze(&mixed, &AnalyzeOptions::default()).unwrap();
    assert_eq!(
        report.overall,
        qsep_core::Overall::FullySeparable { certified: true }
    );

    // a cat state: witnessed by the necessary battery
    let cat = qsep_core::ghz_projector(&zeros(3), Sign::Plus).unwrap();
    let report = analyze(&cat, &AnalyzeOptions::default()).unwrap();
    assert_eq!(report.overall, qsep_core::Overall::NotFullySeparable);

    // a below-threshold cat mixture at n=3: anonymous battery cannot decide
    let w = werner(&WernerSpec::new(3, 0.15, zeros(3), Sign::Plus).unwrap());
    let report = analyze(&w, &AnalyzeOptions::default()).unwrap();
    assert_eq!(report.overall, qsep_core::Overall::Inconclusive);
}
