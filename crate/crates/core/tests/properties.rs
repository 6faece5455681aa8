use nlcs::algebra::{AlgebraKind, DeformationSpec};
use nlcs::coherent::{bg_eigen_residual, coefficients, normalization, CsFamily, CsSpec};
use nlcs::geometry::{laplace_check, LaplaceProbe, DEFAULT_QUAD_NODES};
use nlcs::roots::deformation_roots;
use nlcs::statistics::{intensity_correlation, mandel_q, mean_photon, moments_oracle};
use nlcs::Complex64;
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = AlgebraKind> {
    prop_oneof![Just(AlgebraKind::Su2Like), Just(AlgebraKind::Su11Like)]
}

fn positive_coeffs() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.05f64..2.5, 1..=3)
}

fn family() -> impl Strategy<Value = CsFamily> {
    prop_oneof![
        Just(CsFamily::Su2Pcs),
        Just(CsFamily::Su11Bgcs),
        Just(CsFamily::Su11Pcs)
    ]
}

fn label_for(kind: AlgebraKind, raw: u32) -> f64 {
    match kind {
        AlgebraKind::Su2Like => (raw % 16 + 1) as f64 / 2.0,
        AlgebraKind::Su11Like => 0.5 + (raw % 60) as f64 / 8.0,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn commutator_and_casimir(kind in kind(), coeffs in positive_coeffs(), raw in 0u32..1000) {
        let def = DeformationSpec::new(kind, coeffs, label_for(kind, raw)).unwrap();
        let top = def.two_j().unwrap_or(30).min(30);
        for n in 0..=top {
            let scale = def.identity_scale(n);
            let lhs = def.ladder_sq(n).unwrap() - def.ladder_sq(n + 1).unwrap();
            prop_assert!((lhs - def.poly_p(def.diagonal(n))).abs() / scale < 1e-10);
            prop_assert!((def.casimir_on_state(n).unwrap() - def.casimir_eigenvalue()).abs() / scale < 1e-10);
            prop_assert!((def.ladder_sq(n).unwrap() - def.ladder_sq_factored(n)).abs() / scale < 1e-10);
        }
    }

    #[test]
    fn roots_reproduce_the_factor(kind in kind(), coeffs in positive_coeffs(), raw in 0u32..1000) {
        let def = DeformationSpec::new(kind, coeffs, label_for(kind, raw)).unwrap();
        let roots = deformation_roots(&def).unwrap();
        for n in 0..20 {
            let direct = def.deformation_factor(n as f64);
            prop_assert!((roots.eval(n as f64).re - direct).abs() / direct.abs().max(1.0) < 1e-9);
        }
    }

    #[test]
    fn state_invariants(family in family(), coeffs in positive_coeffs(), raw in 0u32..1000,
                        modulus in 0.0f64..2.0, phase in -3.2f64..3.2) {
        let def = DeformationSpec::new(family.kind(), coeffs, label_for(family.kind(), raw)).unwrap();
        let modulus = if family == CsFamily::Su11Pcs && def.is_linear() {
            modulus.min(1.9) / 2.0 * def.leading().sqrt()
        } else {
            modulus
        };
        let spec = CsSpec::new(family, def, Complex64::from_polar(modulus, phase)).unwrap();
        let v = coefficients(&spec, 1e-15).unwrap();
        prop_assert!((v.norm() - 1.0).abs() < 1e-12);
        prop_assert!(v.probabilities().iter().all(|p| *p >= 0.0));
        prop_assert!(normalization(&spec).unwrap() >= 1.0);
        let mean = mean_photon(&spec).unwrap();
        let oracle = moments_oracle(&v);
        prop_assert!((mean - oracle.mean).abs() < 1e-9 * mean.max(1.0));
        if modulus > 1e-3 {
            let i = intensity_correlation(&spec).unwrap();
            prop_assert!((mandel_q(&spec).unwrap() - mean * (i - 1.0)).abs() < 1e-9 * mean.max(1.0));
        }
        if family == CsFamily::Su11Bgcs {
            prop_assert!(bg_eigen_residual(&spec, 1e-14).unwrap() < 1e-9);
        }
    }

    #[test]
    fn laplace_gap(raw in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..=6),
                   k_idx in 0usize..3, higgs in any::<bool>(), z in 1.0f64..2.0) {
        let norm = raw.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-3);
        let c: Vec<Complex64> = raw.iter().map(|(a, b)| Complex64::new(a / norm, b / norm)).collect();
        let k = [0.5, 1.0, 3.0][k_idx];
        let def = if higgs {
            DeformationSpec::higgs(AlgebraKind::Su11Like, 2.0, k).unwrap()
        } else {
            DeformationSpec::linear(AlgebraKind::Su11Like, k).unwrap()
        };
        let report = laplace_check(&LaplaceProbe::new(c, def, z, DEFAULT_QUAD_NODES).unwrap()).unwrap();
        prop_assert!(report.gap < 1e-8, "{:?}", report);
    }
}
