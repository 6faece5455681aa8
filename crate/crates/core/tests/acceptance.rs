//! Acceptance report: one PASS/FAIL line per criterion. Exits non-zero when
//! any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;

use nlcs::algebra::{AlgebraKind, DeformationSpec};
use nlcs::coherent::{bg_eigen_residual, coefficients, direct_normalization, normalization, CsFamily, CsSpec};
use nlcs::figures::{generate, render, FigureId, FigureRequest, OutputFormat, Quantity};
use nlcs::geometry::{
    berry_phase_loop, connection_closed, connection_fd_oracle, laplace_check, laplace_rhs_sqrt_prefactor, LaplaceProbe,
    LoopSpec, DEFAULT_QUAD_NODES,
};
use nlcs::hypergeom::gamma;
use nlcs::roots::deformation_roots;
use nlcs::statistics::{intensity_correlation, mandel_q, mean_photon, metric_factor, moments_oracle, FamilyForms};
use nlcs::{Complex64, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LABELS: [f64; 4] = [0.5, 1.0, 3.0, 8.0];
const GOLDEN_SU2_MANDEL: &str = include_str!("golden/su2-mandel.csv");
const GOLDEN_NSU11_BGCS_MANDEL: &str = include_str!("golden/nsu11-bgcs-mandel.csv");

type Criterion = (&'static str, fn() -> Result<Outcome>);

struct Outcome {
    passed: bool,
    summary: String,
}

impl Outcome {
    fn within(worst: f64, tol: f64, extra: &str) -> Self {
        let passed = worst < tol;
        Self {
            passed,
            summary: format!("max_error={worst:.3e} tol={tol:.0e}{extra}"),
        }
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn state(family: CsFamily, coeffs: &[f64], label: f64, xbar: f64) -> Result<CsSpec> {
    CsSpec::from_xbar(
        family,
        DeformationSpec::new(family.kind(), coeffs.to_vec(), label)?,
        xbar,
    )
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn criterion_1() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for kind in [AlgebraKind::Su2Like, AlgebraKind::Su11Like] {
        for coeffs in [vec![2.0], vec![0.7, 2.0], vec![0.3, -0.2, 2.0]] {
            for label in LABELS {
                let def = DeformationSpec::new(kind, coeffs.clone(), label)?;
                let top = def.two_j().unwrap_or(50).min(50);
                let roots = deformation_roots(&def)?;
                for n in 0..=top {
                    let scale = def.identity_scale(n);
                    let lhs = def.ladder_sq(n)? - def.ladder_sq(n + 1)?;
                    worst = worst.max((lhs - def.poly_p(def.diagonal(n))).abs() / scale);
                    worst = worst.max((def.casimir_on_state(n)? - def.casimir_eigenvalue()).abs() / scale);
                    let direct = def.deformation_factor(n as f64);
                    worst = worst.max((roots.eval(n as f64) - real(direct)).norm() / direct.abs().max(1.0));
                }
            }
        }
    }
    Ok(Outcome::within(worst, 1e-10, ""))
}

fn criterion_2() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for label in LABELS {
        let su2 = deformation_roots(&DeformationSpec::higgs(AlgebraKind::Su2Like, 2.0, label)?)?;
        let su11 = deformation_roots(&DeformationSpec::higgs(AlgebraKind::Su11Like, 2.0, label)?)?;
        let a = 2.0 * label + 1.0;
        let b = -(2.0 * label - 1.0);
        for (roots, s) in [(&su2.roots, a), (&su11.roots, b)] {
            for expected in [Complex64::new(s / 2.0, s / 2.0), Complex64::new(s / 2.0, -s / 2.0)] {
                let d = roots
                    .iter()
                    .map(|r| (r - expected).norm())
                    .fold(f64::INFINITY, f64::min);
                worst = worst.max(d);
            }
        }
    }
    Ok(Outcome::within(worst, 1e-12, ""))
}

fn random_state(rng: &mut ChaCha8Rng, family: CsFamily) -> Result<CsSpec> {
    let p = rng.gen_range(1..=3);
    let mut coeffs: Vec<f64> = (0..p).map(|_| rng.gen_range(0.1..2.0)).collect();
    if p == 1 && rng.gen_bool(0.5) {
        coeffs[0] = 1.0;
    }
    let label = match family {
        CsFamily::Su2Pcs => rng.gen_range(1..=16) as f64 / 2.0,
        _ => rng.gen_range(0.5..8.0),
    };
    let def = DeformationSpec::new(family.kind(), coeffs, label)?;
    let amp_sq = if family == CsFamily::Su11Pcs && def.is_linear() {
        rng.gen_range(0.02..0.9) * def.leading()
    } else {
        rng.gen_range(0.0..6.0)
    };
    let phase = rng.gen_range(0.0..2.0 * PI);
    CsSpec::new(family, def, Complex64::from_polar(amp_sq.sqrt(), phase))
}

fn criterion_3() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for family in CsFamily::ALL {
        for _ in 0..50 {
            let s = random_state(&mut rng, family)?;
            let series = normalization(&s)?;
            worst = worst.max((series - direct_normalization(&s, 1e-16)?).abs() / series);
        }
    }
    Ok(Outcome::within(worst, 1e-9, " (150 specs)"))
}

fn criterion_4() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for family in CsFamily::ALL {
        for coeffs in [vec![1.0], vec![1.0, 2.0], vec![0.5, 0.1, 2.0]] {
            let linear_pcs = family == CsFamily::Su11Pcs && coeffs.len() == 1;
            let grid: &[f64] = if linear_pcs { &[0.2, 0.5, 0.8] } else { &[0.3, 1.5, 4.0] };
            for label in LABELS {
                for &x in grid {
                    let s = state(family, &coeffs, label, x)?;
                    let m = moments_oracle(&coefficients(&s, 1e-16)?);
                    let forms = FamilyForms::new(&s)?;
                    let (mean, i, q) = (mean_photon(&s)?, intensity_correlation(&s)?, mandel_q(&s)?);
                    worst = worst
                        .max(rel(mean, m.mean))
                        .max((i - m.intensity_correlation()).abs())
                        .max((q - m.mandel_q()).abs())
                        .max(rel(forms.mean(), mean))
                        .max((forms.intensity_correlation() - i).abs())
                        .max((forms.mandel_q() - q).abs())
                        .max((q - mean * (i - 1.0)).abs());
                }
            }
        }
    }
    for k in 0..=40 {
        let x = 0.25 * k as f64;
        for label in LABELS {
            let q = mandel_q(&state(CsFamily::Su2Pcs, &[1.0], label, x)?)?;
            worst = worst.max((q + x / (1.0 + x)).abs());
        }
    }
    Ok(Outcome::within(worst, 1e-10, ""))
}

fn criterion_5() -> Result<Outcome> {
    let mut violations = 0usize;
    let mut checked = 0usize;
    let grid: Vec<f64> = (1..=20).map(|i| 0.5 * i as f64).collect();
    for label in LABELS {
        for (family, coeffs) in [
            (CsFamily::Su2Pcs, vec![1.0]),
            (CsFamily::Su2Pcs, vec![1.0, 2.0]),
            (CsFamily::Su11Bgcs, vec![1.0, 2.0]),
            (CsFamily::Su11Pcs, vec![1.0, 2.0]),
        ] {
            for &x in &grid {
                checked += 1;
                if mandel_q(&state(family, &coeffs, label, x)?)? >= 0.0 {
                    violations += 1;
                }
            }
        }
        for i in 1..=9 {
            let s = state(CsFamily::Su11Pcs, &[1.0], label, 0.1 * i as f64)?;
            checked += 1;
            if mandel_q(&s)? <= 0.0 || intensity_correlation(&s)? <= 1.0 {
                violations += 1;
            }
        }
    }
    Ok(Outcome {
        passed: violations == 0,
        summary: format!("violations={violations}/{checked}"),
    })
}

fn criterion_6() -> Result<Outcome> {
    let mut passed = true;
    let mut parts = Vec::new();
    for (name, family, coeffs) in [
        ("su2", CsFamily::Su2Pcs, vec![1.0]),
        ("nsu2", CsFamily::Su2Pcs, vec![1.0, 2.0]),
        ("su11-bgcs", CsFamily::Su11Bgcs, vec![1.0]),
        ("nsu11-bgcs", CsFamily::Su11Bgcs, vec![1.0, 2.0]),
    ] {
        let mut worst: f64 = 0.0;
        for label in LABELS {
            worst = worst.max(metric_factor(&state(family, &coeffs, label, 1e3)?)?.abs());
        }
        passed &= worst < 1e-2;
        parts.push(format!("{name}:|omega(1e3)|={worst:.3e}"));
    }
    let mut closed: f64 = 0.0;
    for label in LABELS {
        for i in 0..=40 {
            let x = 0.25 * i as f64;
            let w = metric_factor(&state(CsFamily::Su2Pcs, &[1.0], label, x)?)?;
            closed = closed.max(rel(w, 2.0 * label / ((1.0 + x) * (1.0 + x))));
        }
        for i in 0..=18 {
            let z = 0.05 * i as f64;
            let w = metric_factor(&state(CsFamily::Su11Pcs, &[1.0], label, z)?)?;
            closed = closed.max(rel(w, 2.0 * label / ((1.0 - z) * (1.0 - z))));
        }
    }
    passed &= closed < 1e-10;
    parts.push(format!("closed-forms max_error={closed:.3e} tol=1e-10"));
    Ok(Outcome {
        passed,
        summary: format!("tol=1e-2 {}", parts.join(" ")),
    })
}

fn criterion_7() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for k in [0.5, 1.0, 3.0] {
        for def in [
            DeformationSpec::linear(AlgebraKind::Su11Like, k)?,
            DeformationSpec::higgs(AlgebraKind::Su11Like, 2.0, k)?,
        ] {
            for modulus in [0.0, 0.5, 1.0, 1.5, 2.0] {
                for phase in [0.0, 1.1, 2.9, -2.0] {
                    let s = CsSpec::new(CsFamily::Su11Bgcs, def.clone(), Complex64::from_polar(modulus, phase))?;
                    worst = worst.max(bg_eigen_residual(&s, 1e-12)?);
                }
            }
        }
    }
    Ok(Outcome::within(worst, 1e-9, ""))
}

fn criterion_8() -> Result<Outcome> {
    let mut loop_err: f64 = 0.0;
    for j in [0.5, 1.0, 3.0] {
        for r in [0.5, 1.0, 2.0] {
            let spec = CsSpec::new(
                CsFamily::Su2Pcs,
                DeformationSpec::linear(AlgebraKind::Su2Like, j)?,
                real(r),
            )?;
            let gamma = berry_phase_loop(&spec, &LoopSpec::new(r, 1.0, 64)?)?;
            loop_err = loop_err.max((gamma + 4.0 * PI * j * r * r / (1.0 + r * r)).abs());
        }
    }
    let mut fd_err: f64 = 0.0;
    for family in CsFamily::ALL {
        for coeffs in [vec![1.0], vec![1.0, 2.0]] {
            for label in [0.5, 1.0, 3.0] {
                for amp in [Complex64::from_polar(0.3, 0.4), Complex64::from_polar(0.8, -2.0)] {
                    let def = DeformationSpec::new(family.kind(), coeffs.clone(), label)?;
                    let spec = CsSpec::new(family, def, amp)?;
                    for v in [Complex64::new(0.0, 1.0), Complex64::new(0.6, -0.3)] {
                        let fd = connection_fd_oracle(&spec, v, None)?;
                        fd_err = fd_err.max((fd - connection_closed(&spec, v)?).norm());
                    }
                }
            }
        }
    }
    Ok(Outcome {
        passed: loop_err < 1e-8 && fd_err < 1e-6,
        summary: format!("loop max_error={loop_err:.3e} tol=1e-8 fd-oracle max_error={fd_err:.3e} tol=1e-6"),
    })
}

fn criterion_9() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for _ in 0..200 {
        let len = rng.gen_range(1..=6);
        let raw: Vec<Complex64> = (0..len)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm = raw.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let c: Vec<Complex64> = raw.iter().map(|x| x / norm).collect();
        let k = [0.5, 1.0, 3.0][rng.gen_range(0..3)];
        let def = if rng.gen_bool(0.5) {
            DeformationSpec::linear(AlgebraKind::Su11Like, k)?
        } else {
            DeformationSpec::higgs(AlgebraKind::Su11Like, 2.0, k)?
        };
        let z = [1.0, 2.0][rng.gen_range(0..2)];
        worst = worst.max(laplace_check(&LaplaceProbe::new(c, def, z, DEFAULT_QUAD_NODES)?)?.gap);
        count += 1;
    }
    let mut ground: f64 = 0.0;
    let mut sqrt_gap: f64 = f64::INFINITY;
    for k in [0.5, 1.0, 3.0] {
        for def in [
            DeformationSpec::linear(AlgebraKind::Su11Like, k)?,
            DeformationSpec::higgs(AlgebraKind::Su11Like, 2.0, k)?,
        ] {
            for z in [1.0, 2.0] {
                let probe = LaplaceProbe::new(vec![real(1.0)], def.clone(), z, DEFAULT_QUAD_NODES)?;
                let r = laplace_check(&probe)?;
                ground = ground.max((r.lhs - real(1.0)).norm()).max((r.rhs - real(1.0)).norm());
                if k == 3.0 {
                    let alt = laplace_rhs_sqrt_prefactor(&probe)?;
                    sqrt_gap = sqrt_gap.min((alt - r.lhs).norm() / (gamma(2.0 * k)?.sqrt() - 1.0));
                }
            }
        }
    }
    // the sqrt(Gamma(2k)) prefactor must leave a gap of sqrt(Gamma(2k)) - 1
    let sqrt_ok = (sqrt_gap - 1.0).abs() < 1e-9;
    Ok(Outcome {
        passed: worst < 1e-8 && ground < 1e-12 && sqrt_ok,
        summary: format!(
            "probe-gap max_error={worst:.3e} tol=1e-8 ({count} probes) ground-state max_error={ground:.3e} tol=1e-12 sqrt-prefactor-gap-ratio={sqrt_gap:.12}"
        ),
    })
}

fn well_formed_csv(text: &str, quantity: Quantity) -> bool {
    let mut lines = text.lines();
    let Some(header) = lines.next() else { return false };
    let columns = header.split(',').count();
    let expected_header = quantity == Quantity::PhotonDistribution && header == "label,n,p_n"
        || quantity != Quantity::PhotonDistribution && header.starts_with("xbar,label_");
    let mut rows = 0;
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != columns || fields.iter().any(|f| f.parse::<f64>().is_err()) {
            return false;
        }
        rows += 1;
    }
    expected_header && rows > 0 && text.ends_with('\n')
}

fn criterion_10() -> Result<Outcome> {
    let catalog = FigureId::catalog();
    let mut bad = Vec::new();
    for id in &catalog {
        let text = render(*id, &generate(&FigureRequest::with_defaults(*id))?, OutputFormat::Csv)?;
        if !well_formed_csv(&text, id.quantity) {
            bad.push(id.name());
        }
    }
    let mut golden_ok = true;
    for (name, golden) in [
        ("su2-mandel", GOLDEN_SU2_MANDEL),
        ("nsu11-bgcs-mandel", GOLDEN_NSU11_BGCS_MANDEL),
    ] {
        let id = FigureId::parse(name)?;
        let text = render(id, &generate(&FigureRequest::with_defaults(id))?, OutputFormat::Csv)?;
        golden_ok &= text == golden;
    }
    Ok(Outcome {
        passed: bad.is_empty() && golden_ok && catalog.len() >= 22,
        summary: format!(
            "catalog={} malformed={:?} golden={}",
            catalog.len(),
            bad,
            if golden_ok { "identical" } else { "differs" }
        ),
    })
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("algebraic consistency", criterion_1),
        ("higgs roots", criterion_2),
        ("normalisation duality", criterion_3),
        ("statistics oracle duality", criterion_4),
        ("sign structure", criterion_5),
        ("metric asymptotics", criterion_6),
        ("bg eigenproperty", criterion_7),
        ("berry phase", criterion_8),
        ("laplace bridge", criterion_9),
        ("figure reproduction", criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (passed, summary) = match check() {
            Ok(o) => (o.passed, o.summary),
            Err(e) => (false, format!("error: {e}")),
        };
        if !passed {
            failures += 1;
        }
        println!(
            "{} criterion {:>2} {name}: {summary}",
            if passed { "PASS" } else { "FAIL" },
            i + 1
        );
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
