use uzsl2_core::linalg::{kronecker, matrix_exponential};
use uzsl2_core::reps::{
    build_deformed_generators, build_sl2_generators, casimir_matrix, casimir_value, check_pt_symmetric,
    coproduct_images, pt_transform, verify_casimir, verify_commutation, verify_hopf_axioms, GeneratorTriple,
    PtOperator, RepSpec,
};
use uzsl2_core::{ComplexMatrix, C64};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn irrep(z: f64, d: usize) -> GeneratorTriple {
    build_deformed_generators(&RepSpec::irrep(z, d)).unwrap()
}

#[test]
fn undeformed_two_dimensional_generators() {
    let l = build_sl2_generators(&RepSpec::irrep(0.0, 2)).unwrap();
    assert_eq!(l.j0, ComplexMatrix::diagonal(&[c(-1.0, 0.0), c(1.0, 0.0)]));
    let mut plus = ComplexMatrix::zeros(2, 2);
    plus[(1, 0)] = c(0.0, -1.0);
    assert_eq!(l.jplus, plus);
    let mut minus = ComplexMatrix::zeros(2, 2);
    minus[(0, 1)] = c(0.0, 1.0);
    assert_eq!(l.jminus, minus);
}

#[test]
fn deformed_two_dimensional_generators() {
    for z in [0.0, 0.3, 1.0, 2.5] {
        let t = irrep(z, 2);
        let jp = ComplexMatrix::from_rows(&[[c(0.0, 0.0), c(0.0, 0.0)], [c(0.0, -1.0), c(0.0, 0.0)]]).unwrap();
        let jm = ComplexMatrix::from_rows(&[[c(0.0, 0.0), c(0.0, 1.0)], [c(0.0, z * z / 4.0), c(z, 0.0)]]).unwrap();
        let j0 = ComplexMatrix::from_rows(&[[c(-1.0, 0.0), c(0.0, 0.0)], [c(0.0, z), c(1.0, 0.0)]]).unwrap();
        assert!(t.jplus.distance(&jp) < 1e-15);
        assert!(t.jminus.distance(&jm) < 1e-15);
        assert!(t.j0.distance(&j0) < 1e-15);
    }
}

#[test]
fn zero_deformation_recovers_sl2() {
    for (d, beta) in [(3, -2.0), (5, -4.0), (4, -1.5), (6, 0.7)] {
        let spec = RepSpec::new(0.0, beta, d).unwrap();
        let a = build_deformed_generators(&spec).unwrap();
        let b = build_sl2_generators(&spec).unwrap();
        assert_eq!(a.j0, b.j0);
        assert_eq!(a.jplus, b.jplus);
        assert_eq!(a.jminus, b.jminus);
    }
}

#[test]
fn casimir_takes_the_weight_value() {
    assert!(casimir_matrix(&irrep(0.7, 2)).unwrap().distance(&ComplexMatrix::identity(2).scale_real(1.5)) < 1e-13);
    assert!(casimir_matrix(&irrep(1.3, 4)).unwrap().distance(&ComplexMatrix::identity(4).scale_real(7.5)) < 1e-12);
    for d in 2..=9 {
        let beta = 1.0 - d as f64;
        assert_eq!(casimir_value(beta), beta * (beta / 2.0 - 1.0));
        assert!(verify_casimir(&irrep(0.4, d), 1e-11).unwrap().passed());
    }
}

#[test]
fn commutation_relations_on_irreps() {
    for d in 2..=12 {
        for z in [0.0, 0.1, 1.0, 2.5] {
            let r = verify_commutation(&irrep(z, d), 1e-11).unwrap();
            assert!(r.passed, "d={d} z={z}: {:?}", r.residuals);
            assert!(r.irreducible);
        }
    }
}

#[test]
fn non_integer_weight_breaks_at_the_truncation_boundary() {
    let t = build_deformed_generators(&RepSpec::new(0.5, -1.5, 4).unwrap()).unwrap();
    let r = verify_commutation(&t, 1e-11).unwrap();
    assert!(!r.passed);
    assert!(!r.irreducible);
    let worst = r.residuals.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
    let entries = r.offending_entries(worst, 1e-9);
    assert!(!entries.is_empty());
    assert!(entries.iter().all(|&(i, j, _)| i == 3 || j == 3), "{entries:?}");
}

#[test]
fn undeformed_coproduct_is_primitive() {
    let t = irrep(0.0, 3);
    let id = ComplexMatrix::identity(3);
    let delta = coproduct_images(&t).unwrap();
    for (image, x) in [(&delta.j0, &t.j0), (&delta.jplus, &t.jplus), (&delta.jminus, &t.jminus)] {
        let primitive = &kronecker(&id, x) + &kronecker(x, &id);
        assert!(image.distance(&primitive) < 1e-15);
    }
}

#[test]
fn coproduct_is_a_homomorphism_at_d2() {
    let delta = coproduct_images(&irrep(1.0, 2)).unwrap();
    assert!(delta.jplus.commutator(&delta.jminus).distance(&delta.j0) < 1e-12);
}

#[test]
fn antipode_on_j0_at_d2() {
    let t = irrep(1.0, 2);
    let z = 1.0;
    let e_minus = matrix_exponential(&t.jplus.scale_real(-2.0 * z)).unwrap();
    let e_plus = matrix_exponential(&t.jplus.scale_real(2.0 * z)).unwrap();
    let residual = &t.j0 - &(&(&t.j0 * &e_minus) * &e_plus);
    assert!(residual.frobenius_norm() < 1e-13);
}

#[test]
fn hopf_axioms_hold_up_to_d6() {
    for d in 2..=6 {
        for z in [0.0, 0.1, 1.0, 2.5] {
            let report = verify_hopf_axioms(&irrep(z, d), 1e-10).unwrap();
            let failures: Vec<_> = report.failures().map(|c| c.name.clone()).collect();
            assert!(failures.is_empty(), "d={d} z={z}: {failures:?}");
        }
    }
}

#[test]
fn tensor_pt_invariance_of_minus_image() {
    let delta = coproduct_images(&irrep(2.5, 3)).unwrap();
    assert!(PtOperator::tensor(3, 3).defect(&delta.jminus) <= 1e-12);
}

#[test]
fn pt_action() {
    assert!(!check_pt_symmetric(&ComplexMatrix::identity(3).scale(c(0.0, 1.0)), 1e-12));
    assert!(check_pt_symmetric(&ComplexMatrix::identity(3), 0.0));
    let t = irrep(0.8, 5);
    for m in [&t.j0, &t.jplus, &t.jminus] {
        let twice = pt_transform(&pt_transform(m));
        assert!(twice.distance(m) < 1e-15);
    }
}

#[test]
fn generator_json_round_trip() {
    let t = irrep(0.6, 4);
    let back = GeneratorTriple::from_json(&t.to_json()).unwrap();
    assert_eq!(back.dim(), 4);
    assert_eq!(back.z(), 0.6);
    assert!(back.j0.distance(&t.j0) == 0.0);
    assert!(back.jminus.distance(&t.jminus) == 0.0);
}

#[test]
fn invalid_specs_rejected() {
    assert!(RepSpec::new(0.1, -1.0, 0).is_err());
    assert!(RepSpec::new(f64::NAN, -1.0, 2).is_err());
    assert!(RepSpec::new(0.1, f64::INFINITY, 2).is_err());
}
