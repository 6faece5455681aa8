//! The three coherent-state families over the integer basis `|n>`.
//!
//! | family    | algebra  | unnormalised `c_n`                          | series variable      |
//! |-----------|----------|---------------------------------------------|----------------------|
//! | `Su2Pcs`  | su(2)    | `sqrt(C(2j, n) [chi_n]!) zeta^n`            | `x = alpha_p |zeta|^2` |
//! | `Su11Bgcs`| su(1,1)  | `xi^n / sqrt([phi_n]!)`                     | `y = |xi|^2 / beta_p`  |
//! | `Su11Pcs` | su(1,1)  | `sqrt((2k)_n / (n! [rho_n]!)) eta^n`         | `z = |eta|^2 / beta_p` |
//!
//! Each normalisation constant is a generalized hypergeometric series in the
//! series variable (see [`NormalizationSeries`]).

use num_complex::Complex64;

use crate::algebra::{AlgebraKind, DeformationSpec};
use crate::error::{Error, Result};
use crate::hypergeom::{self, pfq, pfq_shifted, SeriesParams, DEFAULT_EPS, DEFAULT_MAX_TERMS};
use crate::roots::{deformation_roots, RootSet};

/// Default truncation threshold for coefficient vectors.
pub const DEFAULT_TRUNCATION_EPS: f64 = 1e-14;
/// Hard cap on the length of an su(1,1) coefficient vector.
pub const MAX_TRUNCATION: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CsFamily {
    /// Perelomov states of the deformed su(2).
    Su2Pcs,
    /// Barut-Girardello states (lowering-operator eigenstates) of su(1,1).
    Su11Bgcs,
    /// Perelomov states of the deformed su(1,1).
    Su11Pcs,
}

impl CsFamily {
    pub const ALL: [CsFamily; 3] = [CsFamily::Su2Pcs, CsFamily::Su11Bgcs, CsFamily::Su11Pcs];

    pub fn kind(self) -> AlgebraKind {
        match self {
            CsFamily::Su2Pcs => AlgebraKind::Su2Like,
            CsFamily::Su11Bgcs | CsFamily::Su11Pcs => AlgebraKind::Su11Like,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CsFamily::Su2Pcs => "su2-pcs",
            CsFamily::Su11Bgcs => "su11-bgcs",
            CsFamily::Su11Pcs => "su11-pcs",
        }
    }
}

impl std::str::FromStr for CsFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "su2-pcs" | "su2" => Ok(CsFamily::Su2Pcs),
            "su11-bgcs" | "bgcs" => Ok(CsFamily::Su11Bgcs),
            "su11-pcs" | "pcs" => Ok(CsFamily::Su11Pcs),
            other => Err(Error::InvalidInput(format!("unknown family '{other}'"))),
        }
    }
}

/// A coherent state: family, deformation and complex amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct CsSpec {
    family: CsFamily,
    deformation: DeformationSpec,
    amplitude: Complex64,
}

impl CsSpec {
    pub fn new(family: CsFamily, deformation: DeformationSpec, amplitude: Complex64) -> Result<Self> {
        if deformation.kind() != family.kind() {
            return Err(Error::InvalidInput(format!(
                "family {} needs a {:?} deformation",
                family.name(),
                family.kind()
            )));
        }
        deformation.require_positive_leading()?;
        if !amplitude.re.is_finite() || !amplitude.im.is_finite() {
            return Err(Error::InvalidInput("amplitude must be finite".into()));
        }
        let spec = Self {
            family,
            deformation,
            amplitude,
        };
        if family == CsFamily::Su11Pcs && spec.deformation.is_linear() && spec.xbar() >= 1.0 {
            return Err(Error::DomainError(format!(
                "linear su(1,1) Perelomov states need z < 1, got z = {}",
                spec.xbar()
            )));
        }
        Ok(spec)
    }

    /// State with a real non-negative amplitude chosen so that the series
    /// variable equals `xbar`.
    pub fn from_xbar(family: CsFamily, deformation: DeformationSpec, xbar: f64) -> Result<Self> {
        if !(xbar >= 0.0) || !xbar.is_finite() {
            return Err(Error::InvalidInput(format!("series variable must be >= 0, got {xbar}")));
        }
        let lead = deformation.leading();
        let modulus_sq = match family {
            CsFamily::Su2Pcs => xbar / lead,
            CsFamily::Su11Bgcs | CsFamily::Su11Pcs => xbar * lead,
        };
        Self::new(family, deformation, Complex64::new(modulus_sq.max(0.0).sqrt(), 0.0))
    }

    pub fn family(&self) -> CsFamily {
        self.family
    }

    pub fn deformation(&self) -> &DeformationSpec {
        &self.deformation
    }

    pub fn amplitude(&self) -> Complex64 {
        self.amplitude
    }

    /// Same family and deformation at another amplitude.
    pub fn with_amplitude(&self, amplitude: Complex64) -> Result<Self> {
        Self::new(self.family, self.deformation.clone(), amplitude)
    }

    /// Series variable: `x`, `y` or `z`.
    pub fn xbar(&self) -> f64 {
        let m2 = self.amplitude.norm_sqr();
        match self.family {
            CsFamily::Su2Pcs => self.deformation.leading() * m2,
            CsFamily::Su11Bgcs | CsFamily::Su11Pcs => m2 / self.deformation.leading(),
        }
    }

    pub fn roots(&self) -> Result<RootSet> {
        deformation_roots(&self.deformation)
    }

    pub fn normalization_series(&self) -> Result<NormalizationSeries> {
        NormalizationSeries::new(self.family, &self.deformation)
    }

    /// Squared ratio `|c_{n+1} / c_n|^2` of consecutive unnormalised
    /// coefficients.
    fn ratio_sq(&self, n: usize) -> Result<f64> {
        let m2 = self.amplitude.norm_sqr();
        let ladder = self.deformation.ladder_sq(n + 1)?;
        let next = (n + 1) as f64;
        Ok(match self.family {
            CsFamily::Su2Pcs => ladder / (next * next) * m2,
            CsFamily::Su11Bgcs => {
                if ladder == 0.0 {
                    return Err(Error::UnitarityViolation { n: n + 1, value: 0.0 });
                }
                m2 / ladder
            }
            CsFamily::Su11Pcs => {
                if ladder == 0.0 {
                    return Err(Error::UnitarityViolation { n: n + 1, value: 0.0 });
                }
                let rising = 2.0 * self.deformation.label() + n as f64;
                rising * rising * m2 / ladder
            }
        })
    }
}

/// The normalisation constant `N(xbar)` as a hypergeometric series with
/// argument `sign * xbar`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationSeries {
    pub params: SeriesParams,
    /// `-1` for su(2) (argument `-x`), `+1` otherwise.
    pub sign: f64,
}

impl NormalizationSeries {
    pub fn new(family: CsFamily, deformation: &DeformationSpec) -> Result<Self> {
        let roots = deformation_roots(deformation)?;
        let l = deformation.label();
        let one = |v: f64| Complex64::new(v, 0.0);
        let shifted = roots.shifted(1.0);
        let (numer, denom, sign) = match family {
            CsFamily::Su2Pcs => {
                let mut numer = vec![one(-2.0 * l)];
                numer.extend(shifted);
                (numer, vec![], -1.0)
            }
            CsFamily::Su11Bgcs => {
                let mut denom = vec![one(2.0 * l)];
                denom.extend(shifted);
                (vec![], denom, 1.0)
            }
            CsFamily::Su11Pcs => (vec![one(2.0 * l)], shifted, 1.0),
        };
        Ok(Self {
            params: SeriesParams::new(numer, denom, 0.0),
            sign,
        })
    }

    /// `d^order N / d xbar^order` at `xbar`.
    pub fn derivative(&self, xbar: f64, order: usize) -> Result<f64> {
        let params = self.params.with_arg(self.sign * xbar);
        let result = if order == 0 {
            pfq(&params, DEFAULT_EPS, DEFAULT_MAX_TERMS)?
        } else {
            pfq_shifted(&params, order, DEFAULT_EPS, DEFAULT_MAX_TERMS)?
        };
        Ok(self.sign.powi(order as i32) * result.value.re)
    }

    /// `(N, N', N'')` at `xbar`.
    pub fn derivatives(&self, xbar: f64) -> Result<[f64; 3]> {
        Ok([
            self.derivative(xbar, 0)?,
            self.derivative(xbar, 1)?,
            self.derivative(xbar, 2)?,
        ])
    }
}

/// `N(xbar)` for the state, from the hypergeometric series.
pub fn normalization(spec: &CsSpec) -> Result<f64> {
    spec.normalization_series()?.derivative(spec.xbar(), 0)
}

/// Truncated coefficients over `|0>, .., |N>`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    pub coeffs: Vec<Complex64>,
    /// Norm bound on the truncation defect: the last retained coefficient
    /// together with the geometric bound on everything discarded. Its square
    /// bounds the discarded probability.
    pub tail_bound: f64,
    /// `ln sum |c_n|^2` of the unnormalised coefficients with `c_0 = 1`.
    pub log_norm: f64,
}

impl CoefficientVector {
    /// Wraps raw coefficients (no normalisation applied).
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Self {
        let log_norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().ln();
        Self {
            coeffs,
            tail_bound: 0.0,
            log_norm,
        }
    }

    /// Basis vector `|n>` embedded in `len` components.
    pub fn basis(n: usize, len: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); len.max(n + 1)];
        coeffs[n] = Complex64::new(1.0, 0.0);
        Self::from_coeffs(coeffs)
    }

    /// Index of the last retained component.
    pub fn truncation(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// `<self|other>`, treating missing components as zero.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.conj() * b).sum()
    }

    /// Norm of `self - other`, padding the shorter vector with zeros.
    pub fn distance(&self, other: &Self) -> f64 {
        let len = self.len().max(other.len());
        let zero = Complex64::new(0.0, 0.0);
        (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(zero);
                let b = other.coeffs.get(i).copied().unwrap_or(zero);
                (a - b).norm_sqr()
            })
            .sum::<f64>()
            .sqrt()
    }

    /// Squared magnitudes `|c_n|^2`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.norm_sqr()).collect()
    }
}

/// Builds the normalised coefficient vector of `spec`.
///
/// Magnitudes come from the closed-form ratio `c_{n+1} / c_n` accumulated in
/// log space, so no generalised factorial is ever formed. su(2) states keep
/// all `2j + 1` components; su(1,1) states are truncated once the
/// [`CoefficientVector::tail_bound`] drops below `eps`.
pub fn coefficients(spec: &CsSpec, eps: f64) -> Result<CoefficientVector> {
    let amplitude = spec.amplitude();
    let phase = amplitude.arg();
    let mut log_mag = vec![0.0_f64];
    let mut tail_bound = 0.0;

    match spec.family() {
        CsFamily::Su2Pcs => {
            let two_j = spec.deformation().two_j().unwrap_or(0);
            for n in 0..two_j {
                let r = spec.ratio_sq(n)?;
                let prev = log_mag[n];
                log_mag.push(prev + 0.5 * r.ln());
            }
        }
        CsFamily::Su11Bgcs | CsFamily::Su11Pcs => {
            if amplitude.norm() > 0.0 {
                let geometric_floor = if spec.family() == CsFamily::Su11Pcs && spec.deformation().is_linear() {
                    spec.xbar()
                } else {
                    0.0
                };
                let mut log_sum = 0.0_f64;
                let mut prev_ratio = f64::INFINITY;
                let mut n = 0;
                loop {
                    let r = spec.ratio_sq(n)?;
                    let r_eff = r.max(geometric_floor);
                    let last_prob = (2.0 * log_mag[n] - log_sum).exp();
                    if r_eff < 1.0 && (r <= prev_ratio || geometric_floor > 0.0) {
                        let bound = (last_prob * (1.0 + r_eff / (1.0 - r_eff))).sqrt();
                        if bound < eps {
                            tail_bound = bound;
                            break;
                        }
                    }
                    if n + 1 >= MAX_TRUNCATION {
                        return Err(Error::ConvergenceFailure { terms: MAX_TRUNCATION });
                    }
                    let next = log_mag[n] + 0.5 * r.ln();
                    log_mag.push(next);
                    log_sum = log_add_exp(log_sum, 2.0 * next);
                    prev_ratio = r;
                    n += 1;
                }
            }
        }
    }

    let log_norm = log_mag
        .iter()
        .fold(f64::NEG_INFINITY, |acc, l| log_add_exp(acc, 2.0 * l));
    let coeffs = log_mag
        .iter()
        .enumerate()
        .map(|(n, l)| Complex64::from_polar((l - 0.5 * log_norm).exp(), n as f64 * phase))
        .collect();
    Ok(CoefficientVector {
        coeffs,
        tail_bound,
        log_norm,
    })
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `N(xbar)` from direct summation of the unnormalised coefficients.
pub fn direct_normalization(spec: &CsSpec, eps: f64) -> Result<f64> {
    Ok(coefficients(spec, eps)?.log_norm.exp())
}

fn check_su2_length(deformation: &DeformationSpec, v: &CoefficientVector) -> Result<()> {
    if let Some(two_j) = deformation.two_j() {
        if v.len() > two_j + 1 {
            return Err(Error::InvalidInput(format!(
                "vector of length {} exceeds the representation dimension {}",
                v.len(),
                two_j + 1
            )));
        }
    }
    Ok(())
}

/// Lowering operator on a truncated vector: `(Lv)_n = sqrt(ladder_sq(n + 1)) v_{n+1}`.
pub fn apply_lowering(deformation: &DeformationSpec, v: &CoefficientVector) -> Result<CoefficientVector> {
    check_su2_length(deformation, v)?;
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for (n, (slot, next)) in out.iter_mut().zip(v.coeffs.iter().skip(1)).enumerate() {
        *slot = next * deformation.ladder_sq(n + 1)?.sqrt();
    }
    Ok(CoefficientVector::from_coeffs(out))
}

/// Raising operator: `(Rv)_{n+1} = sqrt(ladder_sq(n + 1)) v_n`. su(1,1)
/// vectors grow by one component; su(2) vectors stop at `|2j>`.
pub fn apply_raising(deformation: &DeformationSpec, v: &CoefficientVector) -> Result<CoefficientVector> {
    check_su2_length(deformation, v)?;
    let len = match deformation.two_j() {
        Some(two_j) => (v.len() + 1).min(two_j + 1),
        None => v.len() + 1,
    };
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    for n in 0..v.len() {
        if n + 1 < len {
            out[n + 1] = v.coeffs[n] * deformation.ladder_sq(n + 1)?.sqrt();
        }
    }
    Ok(CoefficientVector::from_coeffs(out))
}

/// `|| K_- |xi> - xi |xi> ||` on the truncated Barut-Girardello state.
pub fn bg_eigen_residual(spec: &CsSpec, eps: f64) -> Result<f64> {
    if spec.family() != CsFamily::Su11Bgcs {
        return Err(Error::InvalidInput(
            "eigen residual is defined for Barut-Girardello states only".into(),
        ));
    }
    let v = coefficients(spec, eps)?;
    let lowered = apply_lowering(spec.deformation(), &v)?;
    Ok(lowered.distance(&v.scaled(spec.amplitude())))
}

/// Unnormalised coefficient `|c_n|^2` from the Pochhammer closed form, an
/// independent route to [`coefficients`].
pub fn closed_weight(spec: &CsSpec, n: usize) -> Result<f64> {
    let roots = spec.roots()?;
    let l = spec.deformation().label();
    let xbar = spec.xbar();
    let chain = roots.pochhammer_product(1.0, n).re;
    let fact = hypergeom::pochhammer_real(1.0, n);
    Ok(match spec.family() {
        CsFamily::Su2Pcs => {
            let two_j = spec.deformation().two_j().unwrap_or(0);
            if n > two_j {
                return Ok(0.0);
            }
            // C(2j, n) = (-1)^n (-2j)_n / n!
            let binom = hypergeom::pochhammer_real(-(two_j as f64), n).abs() / fact;
            binom * chain * xbar.powi(n as i32)
        }
        CsFamily::Su11Bgcs => xbar.powi(n as i32) / (fact * hypergeom::pochhammer_real(2.0 * l, n) * chain),
        CsFamily::Su11Pcs => hypergeom::pochhammer_real(2.0 * l, n) * xbar.powi(n as i32) / (fact * chain),
    })
}
