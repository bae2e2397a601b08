use uzsl2_core::linalg::{eigenvalues, hermitian_eigen, multiset_distance};
use uzsl2_core::reps::{build_deformed_generators, build_sl2_generators, GeneratorTriple, RepSpec};
use uzsl2_core::spectra::{
    analytic_spectrum_family, analytic_spectrum_polynomial, biorthogonal_system, build_family_h, build_linear_h,
    build_polynomial_h, classify_point, conjugate_by_exp, finite_eta_form, h_minus_params, hermitize,
    limit_hamiltonian_family, linear_h_metric_d2, numeric_spectrum, rescale_to_unit, sl2_hermitize, upsilon,
    verify_adjoint_identities, Branch, FamilyParams, Phase, PolyHamiltonianSpec, SimilarityPlan,
};
use uzsl2_core::{ComplexMatrix, Tolerances, C64};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn irrep(z: f64, d: usize) -> GeneratorTriple {
    build_deformed_generators(&RepSpec::irrep(z, d)).unwrap()
}

fn reals(values: &[f64]) -> Vec<C64> {
    values.iter().map(|&x| c(x, 0.0)).collect()
}

fn numeric(h: &ComplexMatrix) -> Vec<C64> {
    numeric_spectrum(h, &Tolerances::default()).unwrap().values
}

#[test]
fn family_matrix_at_d2() {
    for (mp, mm, m0, z) in [(1.0, 1.0, 0.0, 1.0), (-0.4, 2.0, 0.3, 0.7), (0.5, -1.5, -1.0, 2.5)] {
        let h = build_family_h(&FamilyParams::new(mp, mm, m0), &irrep(z, 2)).unwrap();
        let expected = ComplexMatrix::from_rows(&[
            [c(-m0, 0.0), c(0.0, mm)],
            [c(0.0, z * z * mm / 4.0 - 2.0 * mp + z * m0), c(z * mm + m0, 0.0)],
        ])
        .unwrap();
        assert!(h.distance(&expected) < 1e-14, "{h:?}");
    }
}

#[test]
fn closed_form_examples() {
    let s = 2f64.sqrt();
    let r = analytic_spectrum_family(&FamilyParams::new(1.0, 1.0, 0.0), 2, 1.0).unwrap();
    assert!(multiset_distance(&r.eigenvalues, &reals(&[0.5 - s, 0.5 + s])) < 1e-14);
    assert_eq!(r.phase, Phase::ExactPT);

    let t = 3f64.sqrt();
    let p = FamilyParams::new(1.0, 1.0, 1.0);
    let expected = reals(&[0.0, 2.0 - 2.0 * t, 2.0 + 2.0 * t, 8.0 - 4.0 * t, 8.0 + 4.0 * t]);
    let r = analytic_spectrum_family(&p, 5, 1.0).unwrap();
    assert!(multiset_distance(&r.eigenvalues, &expected) < 1e-13);
    let h = build_family_h(&p, &irrep(1.0, 5)).unwrap();
    assert!(multiset_distance(&numeric(&h), &expected) < 1e-9);
}

#[test]
fn broken_phase_at_d2() {
    let p = FamilyParams::new(-1.0, 1.0, 1.0);
    let r = analytic_spectrum_family(&p, 2, 1.0).unwrap();
    assert_eq!(r.phase, Phase::BrokenPT);
    let expected = vec![c(0.5, -1.0), c(0.5, 1.0)];
    assert!(multiset_distance(&r.eigenvalues, &expected) < 1e-14);
    let h = build_family_h(&p, &irrep(1.0, 2)).unwrap();
    assert!(multiset_distance(&numeric(&h), &expected) < 1e-12);
    assert!(r.conjugate_pairing_defect() < 1e-14);
}

#[test]
fn linear_hamiltonian_rescaling() {
    let h = build_linear_h(4.0, &irrep(1.0, 2));
    assert!(multiset_distance(&eigenvalues(&h).unwrap(), &reals(&[0.0, 4.0])) < 1e-13);

    for d in 1..=6 {
        for (mu, z) in [(4.0, 1.0), (0.3, 0.8), (-2.0, 0.5), (-0.25, 2.0)] {
            let (lambda, sign) = rescale_to_unit(mu, z).unwrap();
            let lhs = eigenvalues(&build_linear_h(mu, &irrep(z, d))).unwrap();
            // For μ < 0 the map is √|μ| H₋₁, without an extra overall sign.
            let unit = build_linear_h(sign, &irrep(lambda, d)).scale_real(mu.abs().sqrt());
            let rhs = eigenvalues(&unit).unwrap();
            let scale = lhs.iter().map(|v| v.norm()).fold(1.0, f64::max);
            assert!(multiset_distance(&lhs, &rhs) < 1e-9 * scale, "d={d} mu={mu} z={z}");
        }
    }
    let (lambda, sign) = rescale_to_unit(-2.0, 0.5).unwrap();
    let negated = build_linear_h(sign, &irrep(lambda, 2)).scale_real(-(2f64.sqrt()));
    let direct = eigenvalues(&build_linear_h(-2.0, &irrep(0.5, 2))).unwrap();
    assert!(multiset_distance(&direct, &[c(-0.5, -(2f64.sqrt())), c(-0.5, 2f64.sqrt())]) < 1e-13);
    assert!(multiset_distance(&direct, &eigenvalues(&negated).unwrap()) > 0.5);
    assert!(rescale_to_unit(0.0, 1.0).is_err());
}

#[test]
fn limit_forms_share_the_spectrum() {
    for d in 2..=8 {
        for z in [0.0, 0.5, 1.5] {
            let p = FamilyParams::new(0.7, 1.1, 0.4);
            let t = irrep(z, d);
            let expected = analytic_spectrum_family(&p, d, z).unwrap().eigenvalues;
            let scale = expected.iter().map(|v| v.norm()).fold(1.0, f64::max);
            for branch in [Branch::Plus, Branch::Minus] {
                let lim = limit_hamiltonian_family(&p, &t, branch).unwrap();
                assert!(lim.is_lower_triangular());
                assert!(multiset_distance(&lim.diag(), &expected) < 1e-9 * scale, "d={d} z={z}");
            }
            let h = build_family_h(&p, &t).unwrap();
            assert!(multiset_distance(&numeric(&h), &expected) < 1e-9 * scale, "d={d} z={z}");
        }
    }
}

#[test]
fn finite_eta_form_is_a_similarity_image() {
    let p = FamilyParams::new(0.7, 1.1, 0.4);
    for d in 2..=8 {
        let t = irrep(0.8, d);
        let h = build_family_h(&p, &t).unwrap();
        for eta in [0.0, 0.5, 1.0, 3.0, 5.0, 15.0] {
            let plan = SimilarityPlan::new(&p, eta).unwrap();
            for branch in [Branch::Plus, Branch::Minus] {
                let closed = finite_eta_form(&p, &t, eta, branch).unwrap();
                let (u, ui) = upsilon(&t, eta, plan.kappa(branch)).unwrap();
                // The explicit product loses ε‖Υ‖‖Υ⁻¹‖‖H‖; rounding noise in the
                // directions that decay exactly is amplified by e^{2η(d−1)}.
                let condition = u.frobenius_norm() * ui.frobenius_norm();
                let budget = 1e-8_f64.max(1e3 * f64::EPSILON * condition * h.frobenius_norm());
                if budget > 1e-6 {
                    continue;
                }
                let explicit = &(&u * &h) * &ui;
                let err = explicit.distance(&closed);
                assert!(err < budget, "d={d} eta={eta} {branch:?}: {err} vs {budget}");
            }
        }
        let closed = finite_eta_form(&p, &t, 15.0, Branch::Plus).unwrap();
        let lim = limit_hamiltonian_family(&p, &t, Branch::Plus).unwrap();
        assert!(closed.distance(&lim) < 1e-10 * lim.frobenius_norm().max(1.0), "d={d}");
        let expected = analytic_spectrum_family(&p, d, 0.8).unwrap().eigenvalues;
        assert!(multiset_distance(&numeric(&closed), &expected) < 1e-9 * lim.frobenius_norm());
    }
}

#[test]
fn explicit_conjugation_exact_at_d2_for_large_eta() {
    // At d = 2 the amplification is e^{2η} alone, so η = 5 is still tight.
    let p = FamilyParams::new(0.7, 1.1, 0.4);
    let t = irrep(0.8, 2);
    let h = build_family_h(&p, &t).unwrap();
    let plan = SimilarityPlan::new(&p, 5.0).unwrap();
    let inner = conjugate_by_exp(&t.jplus.scale(plan.kappa_plus), &h).unwrap();
    let nested = conjugate_by_exp(&t.j0.scale_real(5.0), &inner).unwrap();
    assert!(nested.distance(&finite_eta_form(&p, &t, 5.0, Branch::Plus).unwrap()) < 1e-10);
}

#[test]
fn commutator_term_is_the_literal_commutator() {
    for z in [0.0, 0.3, 1.0, 2.5] {
        let t = irrep(z, 5);
        let term = build_family_h(&FamilyParams::new(1.0, 0.0, 0.0), &t).unwrap();
        let literal = t.j0.commutator(&t.jplus);
        assert!(term.distance(&literal) < 1e-13 * literal.frobenius_norm().max(1.0), "z={z}");
    }
}

#[test]
fn explicit_identity_g_matches_default() {
    let t = irrep(0.6, 4);
    let p = FamilyParams::new(0.3, -0.9, 1.2);
    let a = build_family_h(&p, &t).unwrap();
    let b = build_family_h(&p.clone().with_g(vec![0.0, 1.0]), &t).unwrap();
    assert!(a.distance(&b) < 1e-15);
    assert!(analytic_spectrum_family(&p.with_g(vec![0.0, 1.0]), 4, 0.6).is_err());
}

#[test]
fn trigonometric_polynomial_spectra() {
    for d in [3, 5, 6] {
        let max_n = PolyHamiltonianSpec::max_abs_n(d);
        let beta = 1.0 - d as f64;
        let ns: Vec<f64> = (0..d).map(|m| 2.0 * m as f64 + beta).collect();
        for z in [0.0, 0.5, 1.0] {
            let t = irrep(z, d);
            let sine = PolyHamiltonianSpec::sine(1.0, 0.3, max_n);
            let expected = reals(&ns.iter().map(|n| 0.5 * z * n * n + (0.3 * n).sin()).collect::<Vec<_>>());
            let analytic = analytic_spectrum_polynomial(&sine, d, z).unwrap().eigenvalues;
            assert!(multiset_distance(&analytic, &expected) < 1e-11);
            let h = build_polynomial_h(&sine, &t).unwrap();
            assert!(multiset_distance(&numeric(&h), &expected) < 1e-9, "sin d={d} z={z}");

            let cosine = PolyHamiltonianSpec::cosine(1.0, 0.3, max_n);
            let expected = reals(&ns.iter().map(|n| 0.5 * z * n * n + (0.3 * n).cos()).collect::<Vec<_>>());
            let analytic = analytic_spectrum_polynomial(&cosine, d, z).unwrap().eigenvalues;
            assert!(multiset_distance(&analytic, &expected) < 1e-11);
        }
    }
}

#[test]
fn vanishing_coefficients_give_degenerate_pairs() {
    for d in 2..=7 {
        let spec = PolyHamiltonianSpec::new(1.0, vec![0.0; 3]);
        let r = analytic_spectrum_polynomial(&spec, d, 1.0).unwrap();
        let pairs = r.ep_clusters.iter().filter(|cl| cl.order == 2).count();
        assert_eq!(pairs, d / 2, "d={d}");
        assert!(r.ep_clusters.iter().all(|cl| cl.order <= 2));
    }
}

#[test]
fn metrics_and_hermitization() {
    for (mu, z) in [(1.0, 1.0), (0.5, 2.0), (3.0, 0.2)] {
        let h = build_linear_h(mu, &irrep(z, 2));
        let s = linear_h_metric_d2(mu, z).unwrap();
        assert!(hermitian_eigen(&s).unwrap().values[0] > 0.0);
        let herm = hermitize(&h, &s).unwrap();
        assert!(herm.hermiticity_defect() < 1e-10 * herm.frobenius_norm());
        assert!(multiset_distance(&eigenvalues(&herm).unwrap(), &eigenvalues(&h).unwrap()) < 1e-12);
    }
    let s = linear_h_metric_d2(-1.0, 1.0).unwrap();
    assert!(hermitian_eigen(&s).unwrap().values[0] < 0.0);

    let h = build_family_h(&FamilyParams::new(0.7, 1.1, 0.4), &irrep(0.8, 5)).unwrap();
    let sys = biorthogonal_system(&h, &Tolerances::default()).unwrap();
    assert!(sys.positive_definite);
    assert!(sys.intertwining_defect < 1e-10);
    assert!(sys.pairing.iter().enumerate().all(|(k, &p)| p == k));
}

#[test]
fn undeformed_linear_hamiltonian_is_diagonalised() {
    for d in 1..=6 {
        let t = build_sl2_generators(&RepSpec::irrep(0.0, d)).unwrap();
        let l0 = t.j0.clone();
        let h4 = sl2_hermitize(4.0, 0.0, &t).unwrap().transformed;
        assert!(h4.distance(&l0.scale_real(2.0)) < 1e-10, "d={d}");
        for gamma0 in [-1.0, 0.5, 1.0] {
            let r = sl2_hermitize(4.0, gamma0, &t).unwrap();
            assert!(r.transformed.distance(&h4) < 1e-10, "d={d} gamma0={gamma0}");
        }
        let hm = sl2_hermitize(-1.0, 0.3, &t).unwrap().transformed;
        assert!(hm.distance(&l0.scale(c(0.0, 1.0))) < 1e-10, "d={d}");
    }
    assert!(sl2_hermitize(1.0, 0.0, &irrep(0.5, 3)).is_err());
}

#[test]
fn adjoint_identities_at_zero_angle() {
    for d in [2, 4, 6] {
        assert!(verify_adjoint_identities(&irrep(0.7, d), 0.0, 1e-10).unwrap().passed());
    }
}

#[test]
fn exceptional_point_on_the_minus_line() {
    let p = h_minus_params(1.0, 2f64.sqrt());
    let point = classify_point(&p, 5, 0.0, &Tolerances::default()).unwrap();
    assert_eq!(point.phase(), Phase::ExceptionalPoint);
    assert!(point.is_confirmed_ep());
    let off = classify_point(&h_minus_params(1.0, 1.0), 5, 0.0, &Tolerances::default()).unwrap();
    assert_eq!(off.phase(), Phase::BrokenPT);
    assert!(!off.is_confirmed_ep());
}
