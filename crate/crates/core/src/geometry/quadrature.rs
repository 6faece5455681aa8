//! Quadrature rules for integrals over `[0, inf)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hypergeom::log_gamma;

/// Nodes and weights of the generalized Gauss-Laguerre rule for the weight
/// `u^alpha e^{-u}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLaguerre {
    pub alpha: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

const NEWTON_ITERATIONS: usize = 100;
const NEWTON_TOL: f64 = 1e-13;

impl GaussLaguerre {
    /// Builds an `n`-point rule. Node guesses follow the usual asymptotic
    /// interpolation and are refined by Newton's method on the three-term
    /// recurrence.
    pub fn new(n: usize, alpha: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "Gauss-Laguerre rule needs at least one node".into(),
            ));
        }
        if !(alpha > -1.0) {
            return Err(Error::DomainError(format!(
                "Gauss-Laguerre weight needs alpha > -1, got {alpha}"
            )));
        }
        let nf = n as f64;
        let log_scale = log_gamma(alpha + nf)? - log_gamma(nf)?;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let mut z = 0.0_f64;
        for i in 0..n {
            z = match i {
                0 => (1.0 + alpha) * (3.0 + 0.92 * alpha) / (1.0 + 2.4 * nf + 1.8 * alpha),
                1 => z + (15.0 + 6.25 * alpha) / (1.0 + 0.9 * alpha + 2.5 * nf),
                _ => {
                    let ai = (i - 1) as f64;
                    z + ((1.0 + 2.55 * ai) / (1.9 * ai) + 1.26 * ai * alpha / (1.0 + 3.5 * ai)) * (z - nodes[i - 2])
                        / (1.0 + 0.3 * alpha)
                }
            };
            let mut step = f64::INFINITY;
            for _ in 0..NEWTON_ITERATIONS {
                let (p1, p2) = laguerre_pair(n, alpha, z);
                step = p1 / ((nf * p1 - (nf + alpha) * p2) / z);
                z -= step;
                if step.abs() <= NEWTON_TOL * z.abs().max(1.0) {
                    break;
                }
            }
            if !(step.abs() <= NEWTON_TOL * z.abs().max(1.0)) || !z.is_finite() {
                return Err(Error::QuadratureFailure {
                    estimate: step.abs(),
                    tolerance: NEWTON_TOL,
                });
            }
            let (p1, previous) = laguerre_pair(n, alpha, z);
            let derivative = (nf * p1 - (nf + alpha) * previous) / z;
            nodes[i] = z;
            weights[i] = -log_scale.exp() / (derivative * nf * previous);
        }
        Ok(Self { alpha, nodes, weights })
    }

    /// `sum_i w_i f(u_i)`.
    pub fn integrate<F: Fn(f64) -> Complex64>(&self, f: F) -> Complex64 {
        let mut acc = crate::hypergeom::ComplexNeumaierSum::new();
        for (u, w) in self.nodes.iter().zip(&self.weights) {
            acc += f(*u) * *w;
        }
        acc.value()
    }
}

/// `(L_n^alpha(z), L_{n-1}^alpha(z))` by the upward recurrence.
fn laguerre_pair(n: usize, alpha: f64, z: f64) -> (f64, f64) {
    let mut p1 = 1.0;
    let mut p2 = 0.0;
    for j in 0..n {
        let jf = j as f64;
        let p3 = p2;
        p2 = p1;
        p1 = ((2.0 * jf + 1.0 + alpha - z) * p2 - (jf + alpha) * p3) / (jf + 1.0);
    }
    (p1, p2)
}

// 7-point Gauss / 15-point Kronrod pair on [-1, 1].
const KRONROD_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for KRONROD_NODES[1], [3], [5] and the centre.
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 4000;

fn kronrod_panel<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mid = f(centre);
    let mut kronrod = mid * KRONROD_WEIGHTS[7];
    let mut gauss = mid * GAUSS_WEIGHTS[3];
    for i in 0..7 {
        let dx = half * KRONROD_NODES[i];
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += pair * KRONROD_WEIGHTS[i];
        if i % 2 == 1 {
            gauss += pair * GAUSS_WEIGHTS[i / 2];
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).norm())
}

/// Globally adaptive Gauss-Kronrod integration of `f` over `[a, b]`,
/// bisecting the panel with the largest error estimate until the summed
/// estimate drops below `tol`.
pub fn adaptive_kronrod<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Result<Complex64> {
    let mut panels = vec![{
        let (v, e) = kronrod_panel(&f, a, b);
        (a, b, v, e)
    }];
    loop {
        let error: f64 = panels.iter().map(|p| p.3).sum();
        let value: Complex64 = panels.iter().map(|p| p.2).sum();
        if error <= tol {
            return Ok(value);
        }
        if panels.len() >= MAX_INTERVALS {
            return Err(Error::QuadratureFailure {
                estimate: error,
                tolerance: tol,
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .expect("at least one panel");
        let (lo, hi, _, _) = panels.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        for (l, h) in [(lo, mid), (mid, hi)] {
            let (v, e) = kronrod_panel(&f, l, h);
            panels.push((l, h, v, e));
        }
    }
}

/// `int_0^inf f(u) du` through the map `u = t / (1 - t)`.
pub fn half_line<F: Fn(f64) -> Complex64>(f: F, tol: f64) -> Result<Complex64> {
    adaptive_kronrod(
        |t| {
            if t >= 1.0 {
                return Complex64::new(0.0, 0.0);
            }
            let s = 1.0 - t;
            let value = f(t / s) / (s * s);
            if value.re.is_finite() && value.im.is_finite() {
                value
            } else {
                Complex64::new(0.0, 0.0)
            }
        },
        0.0,
        1.0,
        tol,
    )
}
