use num_complex::Complex64;

use crate::coherent::{coefficients, CsFamily, CsSpec};
use crate::error::{Error, Result};
use crate::hypergeom::{pfq, DEFAULT_EPS, DEFAULT_MAX_TERMS};

/// Truncation threshold used for the finite-difference oracle.
const ORACLE_EPS: f64 = 1e-15;

/// Circular amplitude path `alpha(t) = r e^{i w t}` over one period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopSpec {
    pub radius: f64,
    pub angular_rate: f64,
    pub samples: usize,
}

impl LoopSpec {
    pub fn new(radius: f64, angular_rate: f64, samples: usize) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidInput(format!(
                "loop radius must be positive, got {radius}"
            )));
        }
        if angular_rate == 0.0 || !angular_rate.is_finite() {
            return Err(Error::InvalidInput(
                "loop angular rate must be finite and nonzero".into(),
            ));
        }
        if samples < 16 {
            return Err(Error::InvalidInput(format!(
                "loop needs at least 16 samples, got {samples}"
            )));
        }
        Ok(Self {
            radius,
            angular_rate,
            samples,
        })
    }

    pub fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.angular_rate.abs()
    }

    pub fn amplitude(&self, t: f64) -> Complex64 {
        Complex64::from_polar(self.radius, self.angular_rate * t)
    }

    pub fn velocity(&self, t: f64) -> Complex64 {
        Complex64::new(0.0, self.angular_rate) * self.amplitude(t)
    }
}

/// Real `A(xbar)` with `<psi| d/dt |psi> = A (alpha* alpha' - alpha'* alpha)`.
///
/// Per family `A` is a prefactor times `F_1 / F_0`, the ratio of the
/// once-shifted to the unshifted normalisation series:
///
/// - su(2) PCS: `2j [chi_1]! / 2`
/// - su(1,1) BG: `1 / (2 (2k) [rho_1]!)`
/// - su(1,1) PCS: `2k / (2 [rho_1]!)`
pub fn connection_coefficient(spec: &CsSpec) -> Result<f64> {
    let series = spec.normalization_series()?;
    let base = series.params.with_arg(series.sign * spec.xbar());
    let f0 = pfq(&base, DEFAULT_EPS, DEFAULT_MAX_TERMS)?.value;
    let f1 = pfq(&base.shifted(1.0), DEFAULT_EPS, DEFAULT_MAX_TERMS)?.value;
    let ratio = (f1 / f0).re;
    let def = spec.deformation();
    let two_l = 2.0 * def.label();
    let first = def.deformation_factor(1.0);
    Ok(match spec.family() {
        CsFamily::Su2Pcs => two_l * first / 2.0 * ratio,
        CsFamily::Su11Bgcs => ratio / (2.0 * two_l * first),
        CsFamily::Su11Pcs => two_l / (2.0 * first) * ratio,
    })
}

/// `i int_0^T A (alpha* alpha' - alpha'* alpha) dt` by the composite
/// trapezoid rule on `samples` uniform intervals.
pub fn loop_integral(template: &CsSpec, path: &LoopSpec) -> Result<Complex64> {
    let period = path.period();
    let h = period / path.samples as f64;
    let mut acc = crate::hypergeom::ComplexNeumaierSum::new();
    for i in 0..=path.samples {
        let t = h * i as f64;
        let alpha = path.amplitude(t);
        let velocity = path.velocity(t);
        let a = connection_coefficient(&template.with_amplitude(alpha)?)?;
        let integrand = Complex64::i() * a * (alpha.conj() * velocity - velocity.conj() * alpha);
        let weight = if i == 0 || i == path.samples { 0.5 } else { 1.0 };
        acc += integrand * (weight * h);
    }
    Ok(acc.value())
}

/// Berry phase for the circular loop; the integral is real up to rounding,
/// and a residual imaginary part above `1e-10` is reported as an error.
pub fn berry_phase_loop(template: &CsSpec, path: &LoopSpec) -> Result<f64> {
    let gamma = loop_integral(template, path)?;
    if gamma.im.abs() > 1e-10 * gamma.re.abs().max(1.0) {
        return Err(Error::DomainError(format!(
            "Berry phase has imaginary part {}",
            gamma.im
        )));
    }
    Ok(gamma.re)
}

/// `<psi(alpha)| [|psi(alpha + v dt)> - |psi(alpha - v dt)>] / (2 dt)` from
/// truncated coefficient vectors. `dt` defaults to
/// `1e-5 max(|alpha|, 1) / |v|`.
pub fn connection_fd_oracle(spec: &CsSpec, velocity: Complex64, dt: Option<f64>) -> Result<Complex64> {
    if velocity.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let alpha = spec.amplitude();
    let dt = dt.unwrap_or(1e-5 * alpha.norm().max(1.0) / velocity.norm());
    let centre = coefficients(spec, ORACLE_EPS)?;
    let forward = coefficients(&spec.with_amplitude(alpha + velocity * dt)?, ORACLE_EPS)?;
    let backward = coefficients(&spec.with_amplitude(alpha - velocity * dt)?, ORACLE_EPS)?;
    Ok((centre.inner(&forward) - centre.inner(&backward)) / (2.0 * dt))
}

/// Closed-form counterpart of [`connection_fd_oracle`].
pub fn connection_closed(spec: &CsSpec, velocity: Complex64) -> Result<Complex64> {
    let alpha = spec.amplitude();
    Ok(connection_coefficient(spec)? * (alpha.conj() * velocity - velocity.conj() * alpha))
}
