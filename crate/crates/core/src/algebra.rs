//! Odd-degree polynomial deformations of su(2) and su(1,1).
//!
//! A deformation of degree `2p - 1` is fixed by `p` real coefficients
//! `c_1..c_p` through the structure function
//!
//! ```text
//! g(m) = sum_r c_r [m (m + 1)]^r
//! ```
//!
//! The commutator `[X+, X-]` is `g(X0) - g(X0 - 1)` for the compact algebra and
//! `g(X0 - 1) - g(X0)` for the noncompact one. States are labelled by the
//! integer index `n` with diagonal eigenvalue `-j + n` (su(2)) or `k + n`
//! (su(1,1)).

use crate::error::{Error, Result};

/// Relative tolerance under which a slightly negative squared ladder
/// coefficient is treated as an exact zero.
pub const POSITIVITY_TOL: f64 = 1e-12;

/// Compact (finite-dimensional) versus noncompact (discrete series) algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    Su2Like,
    Su11Like,
}

/// A polynomial deformation together with the representation it acts on.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformationSpec {
    kind: AlgebraKind,
    coeffs: Vec<f64>,
    label: f64,
}

impl DeformationSpec {
    /// Builds a deformation from `coeffs = [c_1, .., c_p]` and the
    /// representation label (`j` for su(2), `k` for su(1,1)).
    ///
    /// The sign of the leading coefficient is not checked here; coherent
    /// states additionally require it to be positive (see
    /// [`DeformationSpec::require_positive_leading`]).
    pub fn new(kind: AlgebraKind, coeffs: Vec<f64>, label: f64) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput(
                "at least one deformation coefficient is required".into(),
            ));
        }
        if let Some(c) = coeffs.iter().find(|c| !c.is_finite() || **c == 0.0) {
            return Err(Error::InvalidInput(format!(
                "deformation coefficients must be finite and nonzero, got {c}"
            )));
        }
        if !label.is_finite() || label <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "representation label must be positive, got {label}"
            )));
        }
        let label = match kind {
            AlgebraKind::Su2Like => {
                let two_j = (2.0 * label).round();
                if (2.0 * label - two_j).abs() > 1e-12 {
                    return Err(Error::InvalidInput(format!("j = {label} is not a half-integer")));
                }
                two_j / 2.0
            }
            AlgebraKind::Su11Like => label,
        };
        Ok(Self { kind, coeffs, label })
    }

    /// Undeformed algebra (`p = 1`, `c_1 = 1`).
    pub fn linear(kind: AlgebraKind, label: f64) -> Result<Self> {
        Self::new(kind, vec![1.0], label)
    }

    /// Cubic (Higgs) deformation with `c_1 = 1` and the given `c_2`.
    pub fn higgs(kind: AlgebraKind, c2: f64, label: f64) -> Result<Self> {
        Self::new(kind, vec![1.0, c2], label)
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    /// Half the degree plus one-half: the polynomial degree is `2p - 1`.
    pub fn p(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `c_p`, i.e. `alpha_p` or `beta_p`.
    pub fn leading(&self) -> f64 {
        self.coeffs[self.coeffs.len() - 1]
    }

    /// `j` or `k`.
    pub fn label(&self) -> f64 {
        self.label
    }

    pub fn is_linear(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// `2j` for su(2); `None` for su(1,1).
    pub fn two_j(&self) -> Option<usize> {
        match self.kind {
            AlgebraKind::Su2Like => Some((2.0 * self.label).round() as usize),
            AlgebraKind::Su11Like => None,
        }
    }

    pub fn require_positive_leading(&self) -> Result<()> {
        if self.leading() > 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "leading deformation coefficient must be positive, got {}",
                self.leading()
            )))
        }
    }

    /// `g(m) = sum_r c_r [m (m + 1)]^r`.
    pub fn structure_g(&self, m: f64) -> f64 {
        let q = m * (m + 1.0);
        // Horner in q, the constant term vanishes.
        self.coeffs.iter().rev().fold(0.0, |acc, c| (acc + c) * q)
    }

    /// The commutator polynomial `P(m)` as a difference of structure
    /// functions.
    pub fn poly_p(&self, m: f64) -> f64 {
        match self.kind {
            AlgebraKind::Su2Like => self.structure_g(m) - self.structure_g(m - 1.0),
            AlgebraKind::Su11Like => self.structure_g(m - 1.0) - self.structure_g(m),
        }
    }

    /// The commutator polynomial from its explicit expansion
    /// `+-2 sum_r c_r m^r sum_s (m + 1)^(r - s) (m - 1)^(s - 1)`.
    pub fn poly_p_expanded(&self, m: f64) -> f64 {
        let mut total = 0.0;
        for (idx, c) in self.coeffs.iter().enumerate() {
            let r = idx as i32 + 1;
            let inner: f64 = (1..=r).map(|s| (m + 1.0).powi(r - s) * (m - 1.0).powi(s - 1)).sum();
            total += c * m.powi(r) * inner;
        }
        match self.kind {
            AlgebraKind::Su2Like => 2.0 * total,
            AlgebraKind::Su11Like => -2.0 * total,
        }
    }

    /// Eigenvalue of the diagonal generator on basis state `n`.
    pub fn diagonal(&self, n: usize) -> f64 {
        match self.kind {
            AlgebraKind::Su2Like => -self.label + n as f64,
            AlgebraKind::Su11Like => self.label + n as f64,
        }
    }

    /// Squared matrix element of the lowering operator on `|n>`:
    /// `psi_n = g(j) - g(-j + n - 1)` or `phi_n = g(k + n - 1) - g(k - 1)`.
    pub fn ladder_sq(&self, n: usize) -> Result<f64> {
        let (upper, lower) = match self.kind {
            AlgebraKind::Su2Like => {
                let two_j = self.two_j().unwrap_or(0);
                if n > two_j + 1 {
                    return Err(Error::DomainError(format!(
                        "ladder index {n} outside the representation of dimension {}",
                        two_j + 1
                    )));
                }
                (
                    self.structure_g(self.label),
                    self.structure_g(-self.label + n as f64 - 1.0),
                )
            }
            AlgebraKind::Su11Like => (
                self.structure_g(self.label + n as f64 - 1.0),
                self.structure_g(self.label - 1.0),
            ),
        };
        let value = upper - lower;
        if value >= 0.0 {
            return Ok(value);
        }
        let scale = upper.abs().max(lower.abs()).max(1.0);
        if value >= -POSITIVITY_TOL * scale {
            Ok(0.0)
        } else {
            Err(Error::UnitarityViolation { n, value })
        }
    }

    /// `n (2j + 1 - n) chi_n` or `n (2k - 1 + n) rho_n`, the factored form of
    /// [`DeformationSpec::ladder_sq`] without any positivity check.
    pub fn ladder_sq_factored(&self, n: usize) -> f64 {
        let nf = n as f64;
        let linear = match self.kind {
            AlgebraKind::Su2Like => nf * (2.0 * self.label + 1.0 - nf),
            AlgebraKind::Su11Like => nf * (2.0 * self.label - 1.0 + nf),
        };
        linear * self.deformation_factor(nf)
    }

    /// Deformation factor `chi_n` (su(2)) or `rho_n` (su(1,1)) as the double
    /// sum over `r, s`. Identically one for the linear algebra with `c_1 = 1`.
    pub fn deformation_factor(&self, n: f64) -> f64 {
        let (fixed, moving) = self.factor_arguments(n);
        let mut total = 0.0;
        for (idx, c) in self.coeffs.iter().enumerate() {
            let r = idx as i32 + 1;
            let inner: f64 = (1..=r).map(|s| fixed.powi(r - s) * moving.powi(s - 1)).sum();
            total += c * inner;
        }
        total
    }

    /// The two quadratic expressions the deformation factor is built from:
    /// `j(j+1)` and `(j-n)(j-n+1)`, or `k(k-1)` and `(k+n)(k+n-1)`.
    pub(crate) fn factor_arguments(&self, n: f64) -> (f64, f64) {
        let l = self.label;
        match self.kind {
            AlgebraKind::Su2Like => (l * (l + 1.0), (l - n) * (l - n + 1.0)),
            AlgebraKind::Su11Like => (l * (l - 1.0), (l + n) * (l + n - 1.0)),
        }
    }

    /// Checks `ladder_sq(n) >= 0` for `n = 1..=2j` (su(2)) or `n = 1..=n_cap`
    /// (su(1,1)); positivity of the whole su(1,1) tower is not decided
    /// symbolically.
    pub fn validate_unitarity(&self, n_cap: usize) -> Result<()> {
        let top = match self.kind {
            AlgebraKind::Su2Like => self.two_j().unwrap_or(0),
            AlgebraKind::Su11Like => n_cap,
        };
        for n in 1..=top {
            self.ladder_sq(n)?;
        }
        Ok(())
    }

    /// Casimir eigenvalue `g(j)` or `g(k - 1)`.
    pub fn casimir_eigenvalue(&self) -> f64 {
        match self.kind {
            AlgebraKind::Su2Like => self.structure_g(self.label),
            AlgebraKind::Su11Like => self.structure_g(self.label - 1.0),
        }
    }

    /// The Casimir evaluated as an operator on `|n>` from the ladder
    /// coefficients and the structure function at the diagonal eigenvalue.
    pub fn casimir_on_state(&self, n: usize) -> Result<f64> {
        let m = self.diagonal(n);
        let anticomm = self.ladder_sq(n)? + self.ladder_sq(n + 1)?;
        let diag = self.structure_g(m) + self.structure_g(m - 1.0);
        Ok(match self.kind {
            AlgebraKind::Su2Like => 0.5 * (anticomm + diag),
            AlgebraKind::Su11Like => 0.5 * (diag - anticomm),
        })
    }

    /// Magnitude of the structure-function values that enter identities at
    /// basis index `n`; used to turn absolute residuals into relative ones.
    pub fn identity_scale(&self, n: usize) -> f64 {
        let m = self.diagonal(n);
        [
            self.casimir_eigenvalue(),
            self.structure_g(m),
            self.structure_g(m - 1.0),
            self.structure_g(m + 1.0),
        ]
        .iter()
        .fold(1.0_f64, |acc, v| acc.max(v.abs()))
    }
}
