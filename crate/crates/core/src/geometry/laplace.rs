use num_complex::Complex64;

use super::quadrature::{half_line, GaussLaguerre};
use crate::algebra::{AlgebraKind, DeformationSpec};
use crate::error::{Error, Result};
use crate::hypergeom::{gamma, pochhammer_real};

/// Default number of Gauss-Laguerre nodes.
pub const DEFAULT_QUAD_NODES: usize = 64;
const NORM_TOL: f64 = 1e-12;
const ADAPTIVE_TOL: f64 = 1e-11;

/// A finite su(1,1) state `sum_n c_n |k, n>` together with the point `Z`
/// at which the Laplace relation is tested.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplaceProbe {
    pub c: Vec<Complex64>,
    pub deformation: DeformationSpec,
    pub z: f64,
    pub quad_nodes: usize,
}

impl LaplaceProbe {
    pub fn new(c: Vec<Complex64>, deformation: DeformationSpec, z: f64, quad_nodes: usize) -> Result<Self> {
        if deformation.kind() != AlgebraKind::Su11Like {
            return Err(Error::InvalidInput("Laplace probes need an su(1,1) deformation".into()));
        }
        if c.is_empty() {
            return Err(Error::InvalidInput("probe needs at least one coefficient".into()));
        }
        let norm: f64 = c.iter().map(|x| x.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidInput(format!(
                "probe coefficients must be normalised, sum |c|^2 = {norm}"
            )));
        }
        if !(z > 0.0) || !z.is_finite() {
            return Err(Error::InvalidInput(format!("Z must be positive, got {z}")));
        }
        if quad_nodes == 0 {
            return Err(Error::InvalidInput("quadrature needs at least one node".into()));
        }
        deformation.validate_unitarity(c.len())?;
        Ok(Self {
            c,
            deformation,
            z,
            quad_nodes,
        })
    }

    pub fn k(&self) -> f64 {
        self.deformation.label()
    }

    /// `[rho_n]!` for `n = 0..len`.
    fn rho_factorials(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.c.len());
        let mut acc = 1.0;
        for n in 0..self.c.len() {
            if n > 0 {
                acc *= self.deformation.deformation_factor(n as f64);
            }
            out.push(acc);
        }
        out
    }
}

/// `F(xi) = sum_n c_n (Gamma(2k) / (n! Gamma(n + 2k) [rho_n]!))^{1/2} xi^n`.
pub fn bg_series_f(probe: &LaplaceProbe, xi: f64) -> Complex64 {
    let k2 = 2.0 * probe.k();
    let rho = probe.rho_factorials();
    let mut acc = crate::hypergeom::ComplexNeumaierSum::new();
    let mut power = 1.0;
    for (n, c) in probe.c.iter().enumerate() {
        let scale = (pochhammer_real(1.0, n) * pochhammer_real(k2, n) * rho[n]).sqrt();
        acc += c * (power / scale);
        power *= xi;
    }
    acc.value()
}

/// `G(1/Z) = sum_n c_n (Gamma(n + 2k) / (n! Gamma(2k) [rho_n]!))^{1/2} Z^{-n}`.
pub fn pcs_series_g(probe: &LaplaceProbe) -> Complex64 {
    let k2 = 2.0 * probe.k();
    let rho = probe.rho_factorials();
    let mut acc = crate::hypergeom::ComplexNeumaierSum::new();
    let mut power = 1.0;
    for (n, c) in probe.c.iter().enumerate() {
        let scale = (pochhammer_real(k2, n) / (pochhammer_real(1.0, n) * rho[n])).sqrt();
        acc += c * (scale * power);
        power /= probe.z;
    }
    acc.value()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureMethod {
    GaussLaguerre,
    AdaptiveKronrod,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceReport {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub gap: f64,
    pub method: QuadratureMethod,
}

/// `(Z^{2k} / Gamma(2k)) int_0^inf xi^{2k-1} F(xi) e^{-Z xi} dxi`.
///
/// With `u = Z xi` this is `Gamma(2k)^{-1} int u^{2k-1} e^{-u} F(u / Z) du`,
/// which the generalized Gauss-Laguerre rule integrates exactly for the
/// polynomial `F` of a finite probe. If two neighbouring rule sizes disagree
/// the integral is redone adaptively.
pub fn laplace_rhs(probe: &LaplaceProbe) -> Result<(Complex64, QuadratureMethod)> {
    let alpha = 2.0 * probe.k() - 1.0;
    let norm = gamma(2.0 * probe.k())?;
    let integrand = |u: f64| bg_series_f(probe, u / probe.z);
    let rules = GaussLaguerre::new(probe.quad_nodes, alpha).and_then(|a| {
        GaussLaguerre::new(if probe.quad_nodes > 1 { probe.quad_nodes - 1 } else { 2 }, alpha).map(|b| (a, b))
    });
    if let Ok((fine, coarse)) = rules {
        let a = fine.integrate(integrand);
        let b = coarse.integrate(integrand);
        if (a - b).norm() <= 1e-12 * a.norm().max(norm) {
            return Ok((a / norm, QuadratureMethod::GaussLaguerre));
        }
    }
    let value = half_line(|u| integrand(u) * (u.powf(alpha) * (-u).exp()), ADAPTIVE_TOL * norm)?;
    Ok((value / norm, QuadratureMethod::AdaptiveKronrod))
}

/// Both sides of the Laplace relation and their gap.
pub fn laplace_check(probe: &LaplaceProbe) -> Result<LaplaceReport> {
    let lhs = pcs_series_g(probe);
    let (rhs, method) = laplace_rhs(probe)?;
    Ok(LaplaceReport {
        lhs,
        rhs,
        gap: (lhs - rhs).norm(),
        method,
    })
}

/// Right-hand side with the prefactor `Z^{2k} / sqrt(Gamma(2k))` in place of
/// `Z^{2k} / Gamma(2k)`, for comparison.
pub fn laplace_rhs_sqrt_prefactor(probe: &LaplaceProbe) -> Result<Complex64> {
    let (rhs, _) = laplace_rhs(probe)?;
    Ok(rhs * gamma(2.0 * probe.k())?.sqrt())
}

/// Largest relative error of `Z^{2k+n} int xi^{2k+n-1} e^{-Z xi} dxi` against
/// `Gamma(n + 2k)` for `n = 0..=n_max`, using the `nodes`-point rule.
pub fn gamma_quadrature_error(k: f64, n_max: usize, nodes: usize) -> Result<f64> {
    let rule = GaussLaguerre::new(nodes, 2.0 * k - 1.0)?;
    let mut worst: f64 = 0.0;
    for n in 0..=n_max {
        let got = rule.integrate(|u| Complex64::new(u.powi(n as i32), 0.0)).re;
        let want = gamma(n as f64 + 2.0 * k)?;
        worst = worst.max((got - want).abs() / want);
    }
    Ok(worst)
}
