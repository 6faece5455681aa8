//! Generalized hypergeometric series `pFq[a; b; x]` with complex parameters
//! and real argument.
//!
//! Every normalisation constant and every statistic in this crate reduces to
//! ratios of these series and their parameter-shifted derivatives, so the
//! evaluation here is deliberately conservative: terms come from the ratio
//! recurrence, accumulation is compensated, and a terminating upper
//! parameter stops the sum at exactly the right index.

mod special;
mod summation;

pub use special::{gamma, log_gamma, pochhammer, pochhammer_real};
pub use summation::{compensated_sum, ComplexNeumaierSum, NeumaierSum};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default relative stopping threshold for a single term.
pub const DEFAULT_EPS: f64 = 1e-16;
/// Default cap on the number of evaluated terms.
pub const DEFAULT_MAX_TERMS: usize = 10_000;
/// Distance under which a parameter counts as a non-positive integer.
pub const INTEGER_TOL: f64 = 1e-12;
/// Number of consecutive negligible terms required to stop.
const SMALL_RUN: usize = 5;

/// Upper parameters, lower parameters and argument of a series.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesParams {
    pub numer: Vec<Complex64>,
    pub denom: Vec<Complex64>,
    pub arg: f64,
}

impl SeriesParams {
    pub fn new(numer: Vec<Complex64>, denom: Vec<Complex64>, arg: f64) -> Self {
        Self { numer, denom, arg }
    }

    /// Convenience constructor for purely real parameters.
    pub fn real(numer: &[f64], denom: &[f64], arg: f64) -> Self {
        let c = |v: &[f64]| v.iter().map(|x| Complex64::new(*x, 0.0)).collect();
        Self::new(c(numer), c(denom), arg)
    }

    pub fn with_arg(&self, arg: f64) -> Self {
        Self { arg, ..self.clone() }
    }

    /// Every parameter increased by `by`.
    pub fn shifted(&self, by: f64) -> Self {
        let shift = |v: &[Complex64]| v.iter().map(|z| z + by).collect();
        Self {
            numer: shift(&self.numer),
            denom: shift(&self.denom),
            arg: self.arg,
        }
    }

    /// Index `m` of the last nonzero term if some upper parameter equals
    /// `-m` for a non-negative integer `m`.
    pub fn termination_index(&self) -> Option<usize> {
        self.numer.iter().filter_map(|a| nonpositive_integer(*a)).min()
    }

    /// Coefficient of `arg^n` computed independently of the recurrence,
    /// `prod (a)_n / prod (b)_n / n!`.
    pub fn term_coefficient(&self, n: usize) -> Complex64 {
        let up = self
            .numer
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, a| acc * pochhammer(*a, n));
        let down = self
            .denom
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, b| acc * pochhammer(*b, n));
        up / down / pochhammer_real(1.0, n)
    }
}

/// Converged value of a series together with evaluation diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: Complex64,
    pub terms_used: usize,
    /// The sum stopped because an upper parameter is a non-positive integer
    /// (or every later term is exactly zero), not by the convergence test.
    pub terminated: bool,
    /// Relative error estimate: size of the last term for convergent sums,
    /// a rounding bound for terminating ones.
    pub est_error: f64,
}

fn nonpositive_integer(z: Complex64) -> Option<usize> {
    let nearest = z.re.round();
    if z.im.abs() <= INTEGER_TOL && nearest <= 0.0 && (z.re - nearest).abs() <= INTEGER_TOL {
        Some((-nearest) as usize)
    } else {
        None
    }
}

fn check_poles(params: &SeriesParams, termination: Option<usize>) -> std::result::Result<(), usize> {
    for (idx, b) in params.denom.iter().enumerate() {
        if let Some(d) = nonpositive_integer(*b) {
            // the term of index n + 1 divides by (b + n); only harmless when
            // the series has already stopped
            match termination {
                Some(m) if m <= d => {}
                _ => return Err(idx),
            }
        }
    }
    Ok(())
}

/// Sums `pFq[numer; denom; arg]`.
///
/// Stops exactly at the termination index when an upper parameter is a
/// non-positive integer; otherwise once `SMALL_RUN` consecutive terms fall
/// below `eps` relative to the running sum.
pub fn pfq(params: &SeriesParams, eps: f64, max_terms: usize) -> Result<SeriesResult> {
    let termination = params.termination_index();
    if let Err(idx) = check_poles(params, termination) {
        return Err(Error::DivergentSeries(format!(
            "lower parameter {idx} = {} is a pole of the series",
            params.denom[idx]
        )));
    }
    if termination.is_none() {
        let (p, q) = (params.numer.len(), params.denom.len());
        if p > q + 1 {
            return Err(Error::DivergentSeries(format!(
                "{p}F{q} with no terminating upper parameter"
            )));
        }
        if p == q + 1 && params.arg.abs() >= 1.0 {
            return Err(Error::DivergentSeries(format!(
                "{p}F{q} needs |x| < 1, got x = {}",
                params.arg
            )));
        }
    }

    let ratio = |n: usize| -> Complex64 {
        let nf = n as f64;
        let up = params
            .numer
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, a| acc * (a + nf));
        let down = params
            .denom
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, b| acc * (b + nf));
        up / down * (params.arg / (nf + 1.0))
    };

    let mut sum = ComplexNeumaierSum::new();
    let mut magnitude = NeumaierSum::new();
    let mut term = Complex64::new(1.0, 0.0);
    sum += term;
    magnitude += 1.0;

    if let Some(m) = termination {
        if m + 1 > max_terms {
            return Err(Error::ConvergenceFailure { terms: max_terms });
        }
        for n in 0..m {
            term *= ratio(n);
            sum += term;
            magnitude += term.norm();
        }
        let value = sum.value();
        return Ok(SeriesResult {
            value,
            terms_used: m + 1,
            terminated: true,
            est_error: rounding_estimate(magnitude.value(), value, m + 1),
        });
    }

    let mut small = 0;
    let mut n = 0;
    loop {
        if n + 1 >= max_terms {
            return Err(Error::ConvergenceFailure { terms: max_terms });
        }
        term *= ratio(n);
        n += 1;
        if term.norm() == 0.0 {
            let value = sum.value();
            return Ok(SeriesResult {
                value,
                terms_used: n,
                terminated: true,
                est_error: rounding_estimate(magnitude.value(), value, n),
            });
        }
        sum += term;
        magnitude += term.norm();
        let current = sum.value().norm();
        if term.norm() < eps * current {
            small += 1;
            if small >= SMALL_RUN {
                return Ok(SeriesResult {
                    value: sum.value(),
                    terms_used: n + 1,
                    terminated: false,
                    est_error: term.norm() / current,
                });
            }
        } else {
            small = 0;
        }
    }
}

fn rounding_estimate(abs_sum: f64, value: Complex64, terms: usize) -> f64 {
    let v = value.norm();
    if v == 0.0 {
        return f64::INFINITY;
    }
    // compensated accumulation leaves roughly one rounding per term product
    f64::EPSILON * abs_sum * (terms as f64).sqrt() / v
}

/// `order`-th derivative of `pFq` with respect to its argument, using
/// `d/dx pFq[a; b; x] = (prod a / prod b) pFq[a + 1; b + 1; x]`.
pub fn pfq_shifted(params: &SeriesParams, order: usize, eps: f64, max_terms: usize) -> Result<SeriesResult> {
    let mut prefactor = Complex64::new(1.0, 0.0);
    let mut current = params.clone();
    let mut vanishes = false;
    for _ in 0..order {
        for (idx, b) in current.denom.iter().enumerate() {
            if nonpositive_integer(*b) == Some(0) {
                return Err(Error::ZeroDenominator { index: idx });
            }
        }
        for a in &current.numer {
            if nonpositive_integer(*a) == Some(0) {
                vanishes = true;
            }
            prefactor *= a;
        }
        for b in &current.denom {
            prefactor /= b;
        }
        current = current.shifted(1.0);
    }
    if vanishes {
        return Ok(SeriesResult {
            value: Complex64::new(0.0, 0.0),
            terms_used: 0,
            terminated: true,
            est_error: 0.0,
        });
    }
    if let Err(idx) = check_poles(&current, current.termination_index()) {
        return Err(Error::ZeroDenominator { index: idx });
    }
    let mut result = pfq(&current, eps, max_terms)?;
    result.value *= prefactor;
    Ok(result)
}
