//! Photon statistics and the metric factor.
//!
//! With `N(xbar)` the normalisation constant of a state:
//!
//! ```text
//! mean   = xbar N' / N
//! I      = N'' N / N'^2
//! Q      = xbar (N'' / N' - N' / N)
//! omega  = N' / N + xbar (N'' / N - N'^2 / N^2)
//! ```
//!
//! Derivatives come from parameter-shifted series, never finite differences.
//! [`FamilyForms`] spells the same quantities out per family in terms of the
//! once- and twice-shifted series, and [`moments_oracle`] recomputes them by
//! brute force from a coefficient vector.

use num_complex::Complex64;
use serde::Serialize;

use crate::coherent::{closed_weight, coefficients, CoefficientVector, CsFamily, CsSpec};
use crate::error::{Error, Result};
use crate::hypergeom::{pfq, pochhammer, DEFAULT_EPS, DEFAULT_MAX_TERMS};

/// Photon statistics of one state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatRecord {
    pub xbar: f64,
    pub photon_dist: Vec<f64>,
    pub mean_n: f64,
    /// `None` at `xbar = 0`, where the correlation is `0 / 0`.
    pub intensity_corr: Option<f64>,
    pub mandel_q: f64,
    pub metric: f64,
}

impl StatRecord {
    pub fn compute(spec: &CsSpec, eps: f64) -> Result<Self> {
        let photon_dist = coefficients(spec, eps)?.probabilities();
        let intensity_corr = match intensity_correlation(spec) {
            Ok(v) => Some(v),
            Err(Error::DegenerateInput(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(Self {
            xbar: spec.xbar(),
            photon_dist,
            mean_n: mean_photon(spec)?,
            intensity_corr,
            mandel_q: mandel_q(spec)?,
            metric: metric_factor(spec)?,
        })
    }

    /// `key=value` rendering used by the command-line front end.
    pub fn to_key_value(&self) -> String {
        let corr = self
            .intensity_corr
            .map_or_else(|| "undefined".to_string(), |v| format!("{v:.16e}"));
        format!(
            "xbar={:.16e} mean={:.16e} I={} Q={:.16e} omega={:.16e}",
            self.xbar, self.mean_n, corr, self.mandel_q, self.metric
        )
    }
}

/// Evaluation grid over the series variable for a set of representation labels.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub xbar_min: f64,
    pub xbar_max: f64,
    pub points: usize,
    pub labels: Vec<f64>,
}

/// Labels used when none are given.
pub const DEFAULT_LABELS: [f64; 4] = [0.5, 1.0, 3.0, 8.0];

impl GridSpec {
    pub fn new(xbar_min: f64, xbar_max: f64, points: usize, labels: Vec<f64>) -> Result<Self> {
        if !(xbar_min >= 0.0) || !xbar_max.is_finite() || xbar_max < xbar_min {
            return Err(Error::InvalidInput(format!("bad grid range {xbar_min}:{xbar_max}")));
        }
        if points == 0 || (points == 1 && xbar_max != xbar_min) {
            return Err(Error::InvalidInput(format!(
                "grid needs at least two points, got {points}"
            )));
        }
        if labels.is_empty() {
            return Err(Error::InvalidInput("grid needs at least one label".into()));
        }
        Ok(Self {
            xbar_min,
            xbar_max,
            points,
            labels,
        })
    }

    /// Parses `min:max:n`.
    pub fn parse_range(text: &str) -> Result<(f64, f64, usize)> {
        let parts: Vec<&str> = text.split(':').collect();
        let bad = || Error::InvalidInput(format!("grid must look like min:max:n, got '{text}'"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let min = parts[0].trim().parse().map_err(|_| bad())?;
        let max = parts[1].trim().parse().map_err(|_| bad())?;
        let n = parts[2].trim().parse().map_err(|_| bad())?;
        Ok((min, max, n))
    }

    /// Evenly spaced grid values; the endpoints are hit exactly.
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.xbar_min];
        }
        let step = (self.xbar_max - self.xbar_min) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.xbar_max
                } else {
                    self.xbar_min + step * i as f64
                }
            })
            .collect()
    }
}

/// `P(n) = |c_n|^2` for `n = 0..=n_max`, zero-padded past the retained support.
pub fn photon_distribution(spec: &CsSpec, n_max: usize) -> Result<Vec<f64>> {
    let mut probs = coefficients(spec, crate::coherent::DEFAULT_TRUNCATION_EPS)?.probabilities();
    probs.resize(n_max + 1, 0.0);
    Ok(probs)
}

/// `P(n)` from the Pochhammer closed form divided by the series value of `N`.
pub fn photon_distribution_closed(spec: &CsSpec, n_max: usize) -> Result<Vec<f64>> {
    let norm = crate::coherent::normalization(spec)?;
    (0..=n_max).map(|n| Ok(closed_weight(spec, n)? / norm)).collect()
}

fn normalization_derivatives(spec: &CsSpec) -> Result<[f64; 3]> {
    spec.normalization_series()?.derivatives(spec.xbar())
}

/// Mean photon number `xbar N' / N`.
pub fn mean_photon(spec: &CsSpec) -> Result<f64> {
    let xbar = spec.xbar();
    if xbar == 0.0 {
        return Ok(0.0);
    }
    let [n0, n1, _] = normalization_derivatives(spec)?;
    Ok(xbar * n1 / n0)
}

/// Intensity correlation `N'' N / N'^2`.
pub fn intensity_correlation(spec: &CsSpec) -> Result<f64> {
    if spec.xbar() == 0.0 {
        return Err(Error::DegenerateInput(
            "intensity correlation is 0/0 at zero amplitude".into(),
        ));
    }
    let [n0, n1, n2] = normalization_derivatives(spec)?;
    Ok(n2 * n0 / (n1 * n1))
}

/// Mandel parameter `xbar (N'' / N' - N' / N)`.
pub fn mandel_q(spec: &CsSpec) -> Result<f64> {
    let xbar = spec.xbar();
    if xbar == 0.0 {
        return Ok(0.0);
    }
    let [n0, n1, n2] = normalization_derivatives(spec)?;
    Ok(xbar * (n2 / n1 - n1 / n0))
}

/// Metric factor `N'/N + xbar (N''/N - N'^2/N^2)`.
pub fn metric_factor(spec: &CsSpec) -> Result<f64> {
    let xbar = spec.xbar();
    let [n0, n1, n2] = normalization_derivatives(spec)?;
    let r1 = n1 / n0;
    Ok(r1 + xbar * (n2 / n0 - r1 * r1))
}

/// Moments of the photon number computed by direct summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    /// `<n>`
    pub mean: f64,
    /// `<n (n - 1)>`
    pub fact2: f64,
    /// `<n^2> - <n>^2`
    pub var: f64,
}

impl Moments {
    pub fn intensity_correlation(&self) -> f64 {
        self.fact2 / (self.mean * self.mean)
    }

    pub fn mandel_q(&self) -> f64 {
        self.var / self.mean - 1.0
    }
}

pub fn moments_oracle(v: &CoefficientVector) -> Moments {
    let mut mean = 0.0;
    let mut fact2 = 0.0;
    for (n, p) in v.probabilities().into_iter().enumerate() {
        let n = n as f64;
        mean += n * p;
        fact2 += n * (n - 1.0) * p;
    }
    let var = fact2 + mean - mean * mean;
    Moments { mean, fact2, var }
}

/// The family-specific expressions for mean, `I`, `Q` and `omega` written
/// in terms of the series `F_s` whose parameters are all shifted by `s`.
#[derive(Debug, Clone)]
pub struct FamilyForms {
    family: CsFamily,
    xbar: f64,
    label: f64,
    /// `prod_i (1 - root_i)` and `prod_i (1 - root_i)_2`.
    chain1: Complex64,
    chain2: Complex64,
    /// `prod_i (2 - root_i)`.
    chain_shift: Complex64,
    f: [Complex64; 3],
}

impl FamilyForms {
    pub fn new(spec: &CsSpec) -> Result<Self> {
        let series = spec.normalization_series()?;
        let base = series.params.with_arg(series.sign * spec.xbar());
        let roots = spec.roots()?;
        let shifted = roots.shifted(1.0);
        let prod = |n: usize| {
            shifted
                .iter()
                .fold(Complex64::new(1.0, 0.0), |acc, a| acc * pochhammer(*a, n))
        };
        let mut f = [Complex64::new(0.0, 0.0); 3];
        for (s, slot) in f.iter_mut().enumerate() {
            // past a vanishing numerator parameter F_s only ever appears
            // multiplied by zero, and for su(2) it need not converge
            let killed = base
                .numer
                .iter()
                .any(|a| a.im == 0.0 && (0..s).any(|t| a.re + t as f64 == 0.0));
            if !killed {
                *slot = pfq(&base.shifted(s as f64), DEFAULT_EPS, DEFAULT_MAX_TERMS)?.value;
            }
        }
        Ok(Self {
            family: spec.family(),
            xbar: spec.xbar(),
            label: spec.deformation().label(),
            chain1: prod(1),
            chain2: prod(2),
            chain_shift: roots.shifted(2.0).iter().product(),
            f,
        })
    }

    pub fn mean(&self) -> f64 {
        let [f0, f1, _] = self.f;
        let (x, l) = (self.xbar, self.label);
        match self.family {
            CsFamily::Su2Pcs => (-x * (-2.0 * l) * f1 / f0 * self.chain1).re,
            CsFamily::Su11Bgcs => (x / (2.0 * l) * f1 / f0 / self.chain1).re,
            CsFamily::Su11Pcs => (x * f1 / f0 * (2.0 * l) / self.chain1).re,
        }
    }

    pub fn intensity_correlation(&self) -> f64 {
        let [f0, f1, f2] = self.f;
        let l = self.label;
        let shape = f0 * f2 / (f1 * f1);
        match self.family {
            CsFamily::Su2Pcs => ((-2.0 * l + 1.0) / (-2.0 * l) * self.chain_shift / self.chain1 * shape).re,
            CsFamily::Su11Bgcs => ((2.0 * l) / (2.0 * l + 1.0) * self.chain1 / self.chain_shift * shape).re,
            CsFamily::Su11Pcs => ((2.0 * l + 1.0) / (2.0 * l) * self.chain1 / self.chain_shift * shape).re,
        }
    }

    pub fn mandel_q(&self) -> f64 {
        let [f0, f1, f2] = self.f;
        let (x, l) = (self.xbar, self.label);
        match self.family {
            CsFamily::Su2Pcs => {
                let a = (-2.0 * l + 1.0) * f2 / f1 * self.chain_shift;
                let b = (-2.0 * l) * f1 / f0 * self.chain1;
                (-x * (a - b)).re
            }
            CsFamily::Su11Bgcs => {
                let a = f2 / f1 / ((2.0 * l + 1.0) * self.chain_shift);
                let b = f1 / f0 / ((2.0 * l) * self.chain1);
                (x * (a - b)).re
            }
            CsFamily::Su11Pcs => {
                let a = f2 / f1 * (2.0 * l + 1.0) / self.chain_shift;
                let b = f1 / f0 * (2.0 * l) / self.chain1;
                (x * (a - b)).re
            }
        }
    }

    pub fn metric(&self) -> f64 {
        let [f0, f1, f2] = self.f;
        let (x, l) = (self.xbar, self.label);
        let r1 = f1 / f0;
        let r2 = f2 / f0;
        let two_l = 2.0 * l;
        let rising2 = two_l * (two_l + 1.0);
        match self.family {
            CsFamily::Su2Pcs => {
                let falling2 = (-two_l) * (-two_l + 1.0);
                (-(-two_l) * r1 * self.chain1 + x * falling2 * r2 * self.chain2
                    - x * two_l * two_l * r1 * r1 * self.chain1 * self.chain1)
                    .re
            }
            CsFamily::Su11Bgcs => {
                (r1 / (two_l * self.chain1) + x * r2 / (rising2 * self.chain2)
                    - x * r1 * r1 / (two_l * two_l * self.chain1 * self.chain1))
                    .re
            }
            CsFamily::Su11Pcs => {
                (r1 * two_l / self.chain1 + x * r2 * rising2 / self.chain2
                    - x * r1 * r1 * two_l * two_l / (self.chain1 * self.chain1))
                    .re
            }
        }
    }
}
