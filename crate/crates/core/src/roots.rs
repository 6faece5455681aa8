//! Roots of the deformation factor.
//!
//! `chi_n` (or `rho_n`) is a real polynomial of degree `2p - 2` in `n` with
//! leading coefficient `c_p`, so `chi_n = c_p prod_i (n - a_i)` and the
//! generalised factorial becomes a product of Pochhammer symbols
//! `[chi_n]! = c_p^n prod_i (1 - a_i)_n`.
//!
//! The cubic case has closed-form roots; higher degrees go through an
//! Aberth-Ehrlich simultaneous iteration.

use num_complex::Complex64;

use crate::algebra::{AlgebraKind, DeformationSpec};
use crate::error::{Error, Result};
use crate::hypergeom::pochhammer;

const MAX_ITERATIONS: usize = 500;
const RESIDUAL_TOL: f64 = 1e-12;

/// Leading coefficient and roots of the deformation factor.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub leading: f64,
    pub roots: Vec<Complex64>,
}

impl RootSet {
    /// `leading * prod_i (n - root_i)`.
    pub fn eval(&self, n: f64) -> Complex64 {
        self.roots.iter().fold(Complex64::new(self.leading, 0.0), |acc, r| {
            acc * (Complex64::new(n, 0.0) - r)
        })
    }

    /// The shifted parameters `shift - root_i` that appear in the
    /// hypergeometric series.
    pub fn shifted(&self, shift: f64) -> Vec<Complex64> {
        self.roots.iter().map(|r| Complex64::new(shift, 0.0) - r).collect()
    }

    /// `prod_i (shift - root_i)_n`.
    pub fn pochhammer_product(&self, shift: f64, n: usize) -> Complex64 {
        self.shifted(shift)
            .into_iter()
            .fold(Complex64::new(1.0, 0.0), |acc, a| acc * pochhammer(a, n))
    }
}

/// Factorises the deformation factor of `spec`.
pub fn deformation_roots(spec: &DeformationSpec) -> Result<RootSet> {
    let leading = spec.leading();
    let roots = match spec.p() {
        1 => Vec::new(),
        2 => cubic_roots(spec),
        _ => {
            let poly = deformation_polynomial(spec);
            conjugate_pairs(aberth_roots(&poly)?)
        }
    };
    Ok(RootSet { leading, roots })
}

/// Closed-form roots of the cubic (Higgs) deformation with arbitrary `c_1`.
fn cubic_roots(spec: &DeformationSpec) -> Vec<Complex64> {
    let (c1, c2) = (spec.coeffs()[0], spec.coeffs()[1]);
    let l = spec.label();
    let (lin, disc, sign) = match spec.kind() {
        AlgebraKind::Su2Like => {
            let b = 2.0 * l + 1.0;
            (b, b * b - 8.0 * l * (l + 1.0) - 4.0 * c1 / c2, 1.0)
        }
        AlgebraKind::Su11Like => {
            let b = 2.0 * l - 1.0;
            (b, b * b - 8.0 * l * (l - 1.0) - 4.0 * c1 / c2, -1.0)
        }
    };
    let root = Complex64::new(disc, 0.0).sqrt();
    let lin = Complex64::new(lin, 0.0);
    vec![(lin + root) * (0.5 * sign), (lin - root) * (0.5 * sign)]
}

/// Monomial coefficients (ascending powers of `n`) of the deformation factor.
pub fn deformation_polynomial(spec: &DeformationSpec) -> Vec<f64> {
    let l = spec.label();
    let (fixed, moving) = match spec.kind() {
        AlgebraKind::Su2Like => (l * (l + 1.0), vec![l * (l + 1.0), -(2.0 * l + 1.0), 1.0]),
        AlgebraKind::Su11Like => (l * (l - 1.0), vec![l * (l - 1.0), 2.0 * l - 1.0, 1.0]),
    };
    let p = spec.p();
    // powers of the moving quadratic, moving^0 ..= moving^(p-1)
    let mut powers = vec![vec![1.0]];
    for _ in 1..p {
        let next = poly_mul(powers.last().unwrap(), &moving);
        powers.push(next);
    }
    let mut out = vec![0.0; 2 * p - 1];
    for (idx, c) in spec.coeffs().iter().enumerate() {
        let r = idx + 1;
        for s in 1..=r {
            let weight = c * fixed.powi((r - s) as i32);
            for (i, v) in powers[s - 1].iter().enumerate() {
                out[i] += weight * v;
            }
        }
    }
    out
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn horner(poly: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut value = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    for c in poly.iter().rev() {
        deriv = deriv * z + value;
        value = value * z + c;
    }
    (value, deriv)
}

/// Residual `|p(z)| / sum_i |c_i| max(|z|, 1)^i`. The floor on `|z|` keeps
/// roots at the origin from looking unconverged.
fn relative_residual(poly: &[f64], z: Complex64) -> f64 {
    let (value, _) = horner(poly, z);
    let r = z.norm().max(1.0);
    let scale = poly.iter().rev().fold(0.0, |acc, c| acc * r + c.abs());
    if scale == 0.0 {
        value.norm()
    } else {
        value.norm() / scale
    }
}

/// All complex roots of a real polynomial given by ascending coefficients,
/// via Aberth-Ehrlich iteration followed by Newton polishing.
pub fn aberth_roots(poly: &[f64]) -> Result<Vec<Complex64>> {
    let mut poly = poly.to_vec();
    while poly.len() > 1 && poly[poly.len() - 1] == 0.0 {
        poly.pop();
    }
    let degree = poly.len() - 1;
    if degree == 0 {
        return Ok(Vec::new());
    }
    let lead = poly[degree];
    // Cauchy bound on root magnitudes
    let radius = 1.0 + poly[..degree].iter().map(|c| (c / lead).abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|i| {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / degree as f64 + 0.4;
            Complex64::from_polar(0.5 * radius, theta)
        })
        .collect();

    for _ in 0..MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for i in 0..degree {
            let (value, deriv) = horner(&poly, z[i]);
            if value.norm() == 0.0 {
                continue;
            }
            let newton = value / deriv;
            let repulsion: Complex64 = (0..degree).filter(|&k| k != i).map(|k| (z[i] - z[k]).inv()).sum();
            let step = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step < 1e-15 {
            break;
        }
    }

    for root in z.iter_mut() {
        for _ in 0..3 {
            let (value, deriv) = horner(&poly, *root);
            if deriv.norm() == 0.0 || value.norm() == 0.0 {
                break;
            }
            let candidate = *root - value / deriv;
            if relative_residual(&poly, candidate) <= relative_residual(&poly, *root) {
                *root = candidate;
            } else {
                break;
            }
        }
    }

    let residual = z.iter().map(|r| relative_residual(&poly, *r)).fold(0.0, f64::max);
    if residual > RESIDUAL_TOL {
        return Err(Error::RootSolveFailure {
            iterations: MAX_ITERATIONS,
            residual,
        });
    }
    Ok(z)
}

/// Forces the root set of a real polynomial into exact conjugate pairs
/// (or exactly real roots).
fn conjugate_pairs(mut roots: Vec<Complex64>) -> Vec<Complex64> {
    for r in roots.iter_mut() {
        if r.im.abs() <= 1e-9 * r.norm().max(1.0) {
            r.im = 0.0;
        }
    }
    let mut upper: Vec<usize> = (0..roots.len()).filter(|&i| roots[i].im > 0.0).collect();
    let mut lower: Vec<usize> = (0..roots.len()).filter(|&i| roots[i].im < 0.0).collect();
    if upper.len() != lower.len() {
        return roots;
    }
    upper.sort_by(|&a, &b| roots[a].re.total_cmp(&roots[b].re));
    for &u in &upper {
        let (pos, _) = lower
            .iter()
            .enumerate()
            .map(|(pos, &l)| (pos, (roots[u] - roots[l].conj()).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("paired counts are equal");
        let l = lower.remove(pos);
        let mean = (roots[u] + roots[l].conj()) * 0.5;
        roots[u] = mean;
        roots[l] = mean.conj();
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(b.im.total_cmp(&a.im)));
    roots
}
