//! Self-check suites run by `nlcs verify`.
//!
//! Each check reports the largest deviation it observed and the tolerance it
//! was held to.

use num_complex::Complex64;

use crate::algebra::{AlgebraKind, DeformationSpec};
use crate::coherent::{coefficients, direct_normalization, normalization, CsFamily, CsSpec};
use crate::error::{Error, Result};
use crate::geometry::{
    berry_phase_loop, connection_closed, connection_fd_oracle, gamma_quadrature_error, laplace_check, LaplaceProbe,
    LoopSpec, DEFAULT_QUAD_NODES,
};
use crate::roots::deformation_roots;
use crate::statistics::{intensity_correlation, mandel_q, mean_photon, moments_oracle};

const LABELS: [f64; 4] = [0.5, 1.0, 3.0, 8.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Algebra,
    Stats,
    Laplace,
    Berry,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "algebra" => Ok(Suite::Algebra),
            "stats" => Ok(Suite::Stats),
            "laplace" => Ok(Suite::Laplace),
            "berry" => Ok(Suite::Berry),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidInput(format!("unknown suite '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub max_error: f64,
    pub tolerance: f64,
    pub detail: Option<String>,
}

impl CheckLine {
    fn measured(name: &str, max_error: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            passed: max_error <= tolerance,
            max_error,
            tolerance,
            detail: None,
        }
    }

    fn from_result(name: &str, result: Result<f64>, tolerance: f64) -> Self {
        match result {
            Ok(err) => Self::measured(name, err, tolerance),
            Err(e) => Self {
                name: name.into(),
                passed: false,
                max_error: f64::INFINITY,
                tolerance,
                detail: Some(e.to_string()),
            },
        }
    }

    pub fn render(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{status} {} max_error={:.3e} tol={:.1e}",
            self.name, self.max_error, self.tolerance
        );
        if let Some(detail) = &self.detail {
            line.push_str(&format!(" ({detail})"));
        }
        line
    }
}

/// Runs `suite`; `user` adds a unitarity check for a caller-supplied
/// deformation.
pub fn run_suite(suite: Suite, user: Option<&DeformationSpec>) -> Vec<CheckLine> {
    let mut lines = Vec::new();
    if let Some(def) = user {
        let check = def.validate_unitarity(50).map(|_| 0.0);
        lines.push(CheckLine::from_result("user/unitarity", check, 0.0));
    }
    if matches!(suite, Suite::Algebra | Suite::All) {
        lines.extend(algebra_checks());
    }
    if matches!(suite, Suite::Stats | Suite::All) {
        lines.extend(stats_checks());
    }
    if matches!(suite, Suite::Laplace | Suite::All) {
        lines.extend(laplace_checks());
    }
    if matches!(suite, Suite::Berry | Suite::All) {
        lines.extend(berry_checks());
    }
    lines
}

fn algebra_specs() -> Result<Vec<DeformationSpec>> {
    let mut out = Vec::new();
    for kind in [AlgebraKind::Su2Like, AlgebraKind::Su11Like] {
        for coeffs in [vec![2.0], vec![1.0, 2.0], vec![1.0, 0.5, 2.0]] {
            for label in LABELS {
                out.push(DeformationSpec::new(kind, coeffs.clone(), label)?);
            }
        }
    }
    Ok(out)
}

fn index_range(def: &DeformationSpec) -> std::ops::RangeInclusive<usize> {
    0..=def.two_j().unwrap_or(50).min(50)
}

fn algebra_checks() -> Vec<CheckLine> {
    let commutator = || -> Result<f64> {
        let mut worst: f64 = 0.0;
        for def in algebra_specs()? {
            for n in index_range(&def) {
                let lhs = def.ladder_sq(n)? - def.ladder_sq(n + 1)?;
                let rhs = def.poly_p(def.diagonal(n));
                worst = worst.max((lhs - rhs).abs() / def.identity_scale(n));
            }
        }
        Ok(worst)
    };
    let casimir = || -> Result<f64> {
        let mut worst: f64 = 0.0;
        for def in algebra_specs()? {
            for n in index_range(&def) {
                let diff = def.casimir_on_state(n)? - def.casimir_eigenvalue();
                worst = worst.max(diff.abs() / def.identity_scale(n));
            }
        }
        Ok(worst)
    };
    let factorisation = || -> Result<f64> {
        let mut worst: f64 = 0.0;
        for def in algebra_specs()? {
            let roots = deformation_roots(&def)?;
            for n in 0..=50 {
                let direct = def.deformation_factor(n as f64);
                let factored = roots.eval(n as f64);
                worst = worst.max((factored - direct).norm() / direct.abs().max(1.0));
            }
        }
        Ok(worst)
    };
    let higgs_roots = || -> Result<f64> {
        let mut worst: f64 = 0.0;
        for label in LABELS {
            for (kind, scale) in [
                (AlgebraKind::Su2Like, 2.0 * label + 1.0),
                (AlgebraKind::Su11Like, -(2.0 * label - 1.0)),
            ] {
                let roots = deformation_roots(&DeformationSpec::higgs(kind, 2.0, label)?)?.roots;
                for expected in [
                    Complex64::new(0.5 * scale, 0.5 * scale),
                    Complex64::new(0.5 * scale, -0.5 * scale),
                ] {
                    let nearest = roots
                        .iter()
                        .map(|r| (r - expected).norm())
                        .fold(f64::INFINITY, f64::min);
                    worst = worst.max(nearest);
                }
            }
        }
        Ok(worst)
    };
    vec![
        CheckLine::from_result("algebra/commutator", commutator(), 1e-10),
        CheckLine::from_result("algebra/casimir", casimir(), 1e-10),
        CheckLine::from_result("algebra/root-factorisation", factorisation(), 1e-10),
        CheckLine::from_result("algebra/higgs-roots", higgs_roots(), 1e-12),
    ]
}

fn stats_states() -> Result<Vec<CsSpec>> {
    let mut out = Vec::new();
    for family in CsFamily::ALL {
        for coeffs in [vec![1.0], vec![1.0, 2.0], vec![0.5, 0.1, 2.0]] {
            let linear_pcs = family == CsFamily::Su11Pcs && coeffs.len() == 1;
            let grid: &[f64] = if linear_pcs { &[0.2, 0.5, 0.8] } else { &[0.3, 1.5, 4.0] };
            for label in LABELS {
                for &xbar in grid {
                    let def = DeformationSpec::new(family.kind(), coeffs.clone(), label)?;
                    out.push(CsSpec::from_xbar(family, def, xbar)?);
                }
            }
        }
    }
    Ok(out)
}

fn stats_checks() -> Vec<CheckLine> {
    let duality = || -> Result<f64> {
        let mut worst: f64 = 0.0;
        for s in stats_states()? {
            let series = normalization(&s)?;
            let direct = direct_normalization(&s, 1e-15)?;
            worst = worst.max((series - direct).abs() / series);
        }
        Ok(worst)
    };
    let oracle = || -> Result<f64> {
        let mut worst: f64 = 0.0;
        for s in stats_states()? {
            let m = moments_oracle(&coefficients(&s, 1e-15)?);
            let mean = mean_photon(&s)?;
            worst = worst
                .max((mean - m.mean).abs() / mean.max(1.0))
                .max((intensity_correlation(&s)? - m.intensity_correlation()).abs())
                .max((mandel_q(&s)? - m.mandel_q()).abs());
        }
        Ok(worst)
    };
    let identity = || -> Result<f64> {
        let mut worst: f64 = 0.0;
        for s in stats_states()? {
            let expected = mean_photon(&s)? * (intensity_correlation(&s)? - 1.0);
            worst = worst.max((mandel_q(&s)? - expected).abs());
        }
        Ok(worst)
    };
    let signs = || -> Result<f64> {
        let mut violations = 0.0;
        let grid: Vec<f64> = (1..=20).map(|i| 0.5 * i as f64).collect();
        for label in LABELS {
            for (family, coeffs) in [
                (CsFamily::Su2Pcs, vec![1.0]),
                (CsFamily::Su2Pcs, vec![1.0, 2.0]),
                (CsFamily::Su11Bgcs, vec![1.0, 2.0]),
                (CsFamily::Su11Pcs, vec![1.0, 2.0]),
            ] {
                for &x in &grid {
                    let def = DeformationSpec::new(family.kind(), coeffs.clone(), label)?;
                    if mandel_q(&CsSpec::from_xbar(family, def, x)?)? >= 0.0 {
                        violations += 1.0;
                    }
                }
            }
            for i in 1..=9 {
                let def = DeformationSpec::linear(AlgebraKind::Su11Like, label)?;
                let s = CsSpec::from_xbar(CsFamily::Su11Pcs, def, 0.1 * i as f64)?;
                if mandel_q(&s)? <= 0.0 || intensity_correlation(&s)? <= 1.0 {
                    violations += 1.0;
                }
            }
        }
        Ok(violations)
    };
    vec![
        CheckLine::from_result("stats/normalisation-duality", duality(), 1e-9),
        CheckLine::from_result("stats/oracle-duality", oracle(), 1e-8),
        CheckLine::from_result("stats/mandel-identity", identity(), 1e-10),
        CheckLine::from_result("stats/sign-violations", signs(), 0.0),
    ]
}

fn laplace_checks() -> Vec<CheckLine> {
    let probes = |len_max: usize| -> Result<f64> {
        let mut worst: f64 = 0.0;
        for len in 1..=len_max {
            let raw: Vec<Complex64> = (0..len)
                .map(|n| Complex64::from_polar(1.0 + n as f64, 0.7 * n as f64))
                .collect();
            let norm = raw.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            let c: Vec<Complex64> = raw.iter().map(|x| x / norm).collect();
            for k in [0.5, 1.0, 3.0] {
                for def in [
                    DeformationSpec::linear(AlgebraKind::Su11Like, k)?,
                    DeformationSpec::higgs(AlgebraKind::Su11Like, 2.0, k)?,
                ] {
                    for z in [1.0, 2.0] {
                        let r = laplace_check(&LaplaceProbe::new(c.clone(), def.clone(), z, DEFAULT_QUAD_NODES)?)?;
                        worst = worst.max(r.gap);
                    }
                }
            }
        }
        Ok(worst)
    };
    let gamma_quad = || -> Result<f64> {
        [0.5, 1.0, 3.0]
            .iter()
            .map(|&k| gamma_quadrature_error(k, 6, DEFAULT_QUAD_NODES))
            .try_fold(0.0_f64, |acc, e| e.map(|e| acc.max(e)))
    };
    vec![
        CheckLine::from_result("laplace/ground-state", probes(1), 1e-12),
        CheckLine::from_result("laplace/probe-gap", probes(6), 1e-8),
        CheckLine::from_result("laplace/gamma-quadrature", gamma_quad(), 1e-10),
    ]
}

fn berry_checks() -> Vec<CheckLine> {
    let loops = || -> Result<f64> {
        let mut worst: f64 = 0.0;
        for j in [0.5, 1.0, 3.0] {
            for r in [0.5, 1.0, 2.0] {
                let def = DeformationSpec::linear(AlgebraKind::Su2Like, j)?;
                let spec = CsSpec::new(CsFamily::Su2Pcs, def, Complex64::new(r, 0.0))?;
                let gamma = berry_phase_loop(&spec, &LoopSpec::new(r, 1.0, 64)?)?;
                let expected = -4.0 * std::f64::consts::PI * j * r * r / (1.0 + r * r);
                worst = worst.max((gamma - expected).abs());
            }
        }
        Ok(worst)
    };
    let oracle = || -> Result<f64> {
        let mut worst: f64 = 0.0;
        for family in CsFamily::ALL {
            for coeffs in [vec![1.0], vec![1.0, 2.0]] {
                for label in [0.5, 1.0, 3.0] {
                    for amp in [Complex64::from_polar(0.3, 0.4), Complex64::from_polar(0.8, -2.0)] {
                        let def = DeformationSpec::new(family.kind(), coeffs.clone(), label)?;
                        let spec = CsSpec::new(family, def, amp)?;
                        for v in [Complex64::new(0.0, 1.0), Complex64::new(0.6, -0.3)] {
                            let fd = connection_fd_oracle(&spec, v, None)?;
                            worst = worst.max((fd - connection_closed(&spec, v)?).norm());
                        }
                    }
                }
            }
        }
        Ok(worst)
    };
    vec![
        CheckLine::from_result("berry/linear-su2-loop", loops(), 1e-8),
        CheckLine::from_result("berry/fd-oracle", oracle(), 1e-6),
    ]
}
