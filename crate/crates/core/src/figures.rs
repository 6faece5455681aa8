//! Plot data for the figure catalog.
//!
//! Each figure id is `<prefix>-<quantity>`:
//!
//! | prefix        | family                       | deformation         |
//! |---------------|------------------------------|---------------------|
//! | `su2`         | su(2) Perelomov              | linear              |
//! | `nsu2`        | su(2) Perelomov              | Higgs `(1, 2)`      |
//! | `su11-bgcs`   | su(1,1) Barut-Girardello     | linear              |
//! | `nsu11-bgcs`  | su(1,1) Barut-Girardello     | Higgs `(1, 2)`      |
//! | `su11-pcs`    | su(1,1) Perelomov            | linear              |
//! | `nsu11-pcs`   | su(1,1) Perelomov            | Higgs `(1, 2)`      |
//!
//! and the quantity is one of `photdist`, `mean`, `intcorr`, `mandel`,
//! `metric`. Curves are tabulated as `xbar,label_0.5,label_1,...`; photon
//! distributions in long form as `label,n,p_n`.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::DeformationSpec;
use crate::coherent::{coefficients, CsFamily, CsSpec, DEFAULT_TRUNCATION_EPS};
use crate::error::{Error, Result};
use crate::statistics::{intensity_correlation, mandel_q, mean_photon, metric_factor, GridSpec, DEFAULT_LABELS};

pub const DEFAULT_POINTS: usize = 200;
pub const DEFAULT_XBAR_MAX: f64 = 10.0;
/// Upper end of the default grid for linear su(1,1) Perelomov states, whose
/// normalisation diverges at `z = 1`.
pub const DEFAULT_LINEAR_PCS_MAX: f64 = 0.95;
pub const DEFAULT_DIST_XBAR: f64 = 1.0;
pub const DEFAULT_LINEAR_PCS_DIST_XBAR: f64 = 0.5;
/// Higgs coefficients used by the nonlinear figures.
pub const HIGGS_COEFFS: [f64; 2] = [1.0, 2.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    PhotonDistribution,
    Mean,
    IntensityCorrelation,
    Mandel,
    Metric,
}

impl Quantity {
    pub const ALL: [Quantity; 5] = [
        Quantity::PhotonDistribution,
        Quantity::Mean,
        Quantity::IntensityCorrelation,
        Quantity::Mandel,
        Quantity::Metric,
    ];

    pub fn suffix(self) -> &'static str {
        match self {
            Quantity::PhotonDistribution => "photdist",
            Quantity::Mean => "mean",
            Quantity::IntensityCorrelation => "intcorr",
            Quantity::Mandel => "mandel",
            Quantity::Metric => "metric",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FigureId {
    pub family: CsFamily,
    pub nonlinear: bool,
    pub quantity: Quantity,
}

impl FigureId {
    /// Every figure id, in catalog order.
    pub fn catalog() -> Vec<FigureId> {
        let mut out = Vec::new();
        for family in CsFamily::ALL {
            for nonlinear in [false, true] {
                for quantity in Quantity::ALL {
                    out.push(FigureId {
                        family,
                        nonlinear,
                        quantity,
                    });
                }
            }
        }
        out
    }

    fn prefix(&self) -> &'static str {
        match (self.family, self.nonlinear) {
            (CsFamily::Su2Pcs, false) => "su2",
            (CsFamily::Su2Pcs, true) => "nsu2",
            (CsFamily::Su11Bgcs, false) => "su11-bgcs",
            (CsFamily::Su11Bgcs, true) => "nsu11-bgcs",
            (CsFamily::Su11Pcs, false) => "su11-pcs",
            (CsFamily::Su11Pcs, true) => "nsu11-pcs",
        }
    }

    pub fn name(&self) -> String {
        format!("{}-{}", self.prefix(), self.quantity.suffix())
    }

    pub fn parse(text: &str) -> Result<Self> {
        FigureId::catalog()
            .into_iter()
            .find(|id| id.name() == text)
            .ok_or_else(|| Error::InvalidInput(format!("unknown figure id '{text}'")))
    }

    pub fn default_coeffs(&self) -> Vec<f64> {
        if self.nonlinear {
            HIGGS_COEFFS.to_vec()
        } else {
            vec![1.0]
        }
    }

    fn is_linear_pcs(&self, coeffs: &[f64]) -> bool {
        self.family == CsFamily::Su11Pcs && coeffs.len() == 1
    }
}

impl std::fmt::Display for FigureId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Jsonl,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "jsonl" => Ok(OutputFormat::Jsonl),
            other => Err(Error::InvalidInput(format!("unknown format '{other}'"))),
        }
    }
}

/// A fully resolved figure: id, deformation coefficients, grid (curves) or
/// evaluation point (distributions).
#[derive(Debug, Clone, PartialEq)]
pub struct FigureRequest {
    pub id: FigureId,
    pub coeffs: Vec<f64>,
    pub grid: GridSpec,
    pub dist_xbar: f64,
    pub eps: f64,
}

impl FigureRequest {
    /// Request with the default grid, labels and coefficients.
    pub fn with_defaults(id: FigureId) -> Self {
        Self::with_coeffs(id, id.default_coeffs())
    }

    /// Default request for a caller-chosen deformation.
    pub fn with_coeffs(id: FigureId, coeffs: Vec<f64>) -> Self {
        let linear_pcs = id.is_linear_pcs(&coeffs);
        let max = if linear_pcs {
            DEFAULT_LINEAR_PCS_MAX
        } else {
            DEFAULT_XBAR_MAX
        };
        Self {
            id,
            coeffs,
            grid: GridSpec {
                xbar_min: 0.0,
                xbar_max: max,
                points: DEFAULT_POINTS,
                labels: DEFAULT_LABELS.to_vec(),
            },
            dist_xbar: if linear_pcs {
                DEFAULT_LINEAR_PCS_DIST_XBAR
            } else {
                DEFAULT_DIST_XBAR
            },
            eps: DEFAULT_TRUNCATION_EPS,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.id.is_linear_pcs(&self.coeffs) {
            let top = if self.id.quantity == Quantity::PhotonDistribution {
                self.dist_xbar
            } else {
                self.grid.xbar_max
            };
            if top >= 1.0 {
                return Err(Error::DomainError(format!(
                    "linear su(1,1) Perelomov figures need z < 1, got {top}"
                )));
            }
        }
        if !(self.eps > 0.0) {
            return Err(Error::InvalidInput(format!("eps must be positive, got {}", self.eps)));
        }
        GridSpec::new(
            self.grid.xbar_min,
            self.grid.xbar_max,
            self.grid.points,
            self.grid.labels.clone(),
        )?;
        Ok(())
    }

    fn state(&self, label: f64, xbar: f64) -> Result<CsSpec> {
        let def = DeformationSpec::new(self.id.family.kind(), self.coeffs.clone(), label)?;
        CsSpec::from_xbar(self.id.family, def, xbar)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FigureData {
    /// `values[i][l]` is the quantity at `xbar[i]` for `labels[l]`.
    Curves {
        xbar: Vec<f64>,
        labels: Vec<f64>,
        values: Vec<Vec<f64>>,
    },
    /// `(label, n, p_n)` rows.
    Distribution { rows: Vec<(f64, usize, f64)> },
}

/// Evaluates the figure. Grid points are computed in parallel; the result is
/// independent of scheduling.
pub fn generate(req: &FigureRequest) -> Result<FigureData> {
    req.validate()?;
    if req.id.quantity == Quantity::PhotonDistribution {
        let mut rows = Vec::new();
        for &label in &req.grid.labels {
            let v = coefficients(&req.state(label, req.dist_xbar)?, req.eps)?;
            let mut probs = v.probabilities();
            while probs.len() > 1 && probs.last() == Some(&0.0) {
                probs.pop();
            }
            rows.extend(probs.into_iter().enumerate().map(|(n, p)| (label, n, p)));
        }
        return Ok(FigureData::Distribution { rows });
    }

    let xbar = req.grid.values();
    let labels = req.grid.labels.clone();
    let values = xbar
        .par_iter()
        .map(|&x| {
            labels
                .iter()
                .map(|&l| curve_value(req, l, x))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FigureData::Curves { xbar, labels, values })
}

fn curve_value(req: &FigureRequest, label: f64, xbar: f64) -> Result<f64> {
    let spec = req.state(label, xbar)?;
    match req.id.quantity {
        Quantity::Mean => mean_photon(&spec),
        Quantity::IntensityCorrelation => match intensity_correlation(&spec) {
            Err(Error::DegenerateInput(_)) => Ok(f64::NAN),
            other => other,
        },
        Quantity::Mandel => mandel_q(&spec),
        Quantity::Metric => metric_factor(&spec),
        Quantity::PhotonDistribution => unreachable!("distributions are not curves"),
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

fn label_column(label: f64) -> String {
    format!("label_{label}")
}

#[derive(Serialize)]
struct CurveLine<'a> {
    figure: &'a str,
    label: f64,
    xbar: f64,
    value: f64,
}

#[derive(Serialize)]
struct DistLine<'a> {
    figure: &'a str,
    label: f64,
    n: usize,
    p_n: f64,
}

/// Renders figure data as CSV or JSON lines.
pub fn render(id: FigureId, data: &FigureData, format: OutputFormat) -> Result<String> {
    let name = id.name();
    let mut out = String::new();
    match (data, format) {
        (FigureData::Curves { xbar, labels, values }, OutputFormat::Csv) => {
            out.push_str("xbar");
            for l in labels {
                let _ = write!(out, ",{}", label_column(*l));
            }
            out.push('\n');
            for (x, row) in xbar.iter().zip(values) {
                out.push_str(&format_value(*x));
                for v in row {
                    let _ = write!(out, ",{}", format_value(*v));
                }
                out.push('\n');
            }
        }
        (FigureData::Curves { xbar, labels, values }, OutputFormat::Jsonl) => {
            for (x, row) in xbar.iter().zip(values) {
                for (l, v) in labels.iter().zip(row) {
                    let line = CurveLine {
                        figure: &name,
                        label: *l,
                        xbar: *x,
                        value: *v,
                    };
                    out.push_str(&serde_json::to_string(&line).map_err(|e| Error::InvalidInput(e.to_string()))?);
                    out.push('\n');
                }
            }
        }
        (FigureData::Distribution { rows }, OutputFormat::Csv) => {
            out.push_str("label,n,p_n\n");
            for (l, n, p) in rows {
                let _ = writeln!(out, "{l},{n},{}", format_value(*p));
            }
        }
        (FigureData::Distribution { rows }, OutputFormat::Jsonl) => {
            for (l, n, p) in rows {
                let line = DistLine {
                    figure: &name,
                    label: *l,
                    n: *n,
                    p_n: *p,
                };
                out.push_str(&serde_json::to_string(&line).map_err(|e| Error::InvalidInput(e.to_string()))?);
                out.push('\n');
            }
        }
    }
    Ok(out)
}

/// Writes `content` to a sibling temporary file and renames it over `path`.
pub fn write_atomic(path: &Path, content: &str) -> std::io::Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or_else(|| Path::new("."));
    let file_name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = dir.join(format!(".{file_name}.{}.tmp", std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(content.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path).inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp);
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_complete_and_unique() {
        let ids = FigureId::catalog();
        assert_eq!(ids.len(), 30);
        let mut names: Vec<String> = ids.iter().map(FigureId::name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 30);
        for id in ids {
            assert_eq!(FigureId::parse(&id.name()).unwrap(), id);
        }
        assert!(FigureId::parse("su3-mandel").is_err());
    }

    #[test]
    fn su2_mandel_columns_coincide() {
        let mut req = FigureRequest::with_defaults(FigureId::parse("su2-mandel").unwrap());
        req.grid.points = 21;
        let FigureData::Curves { xbar, values, .. } = generate(&req).unwrap() else {
            panic!()
        };
        for (x, row) in xbar.iter().zip(&values) {
            for v in row {
                assert!((v - row[0]).abs() < 1e-10);
                assert!((v + x / (1.0 + x)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn zero_amplitude_distribution() {
        let mut req = FigureRequest::with_defaults(FigureId::parse("nsu2-photdist").unwrap());
        req.dist_xbar = 0.0;
        req.grid.labels = vec![3.0];
        let data = generate(&req).unwrap();
        assert_eq!(
            data,
            FigureData::Distribution {
                rows: vec![(3.0, 0, 1.0)]
            }
        );
        let csv = render(req.id, &data, OutputFormat::Csv).unwrap();
        assert_eq!(csv, "label,n,p_n\n3,0,1.0000000000000000e0\n");
    }

    #[test]
    fn linear_pcs_positivity_and_domain() {
        let mut req = FigureRequest::with_defaults(FigureId::parse("su11-pcs-mandel").unwrap());
        req.grid = GridSpec::new(0.1, 0.9, 9, DEFAULT_LABELS.to_vec()).unwrap();
        let FigureData::Curves { values, .. } = generate(&req).unwrap() else {
            panic!()
        };
        assert!(values.iter().flatten().all(|v| *v > 0.0));
        req.grid.xbar_max = 1.0;
        assert!(matches!(generate(&req), Err(Error::DomainError(_))));
    }

    #[test]
    fn rendering() {
        let id = FigureId::parse("su2-intcorr").unwrap();
        let data = FigureData::Curves {
            xbar: vec![0.0, 1.0],
            labels: vec![0.5, 1.0],
            values: vec![vec![f64::NAN, f64::NAN], vec![0.0, 0.5]],
        };
        let csv = render(id, &data, OutputFormat::Csv).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "xbar,label_0.5,label_1");
        assert_eq!(lines.next().unwrap(), "0.0000000000000000e0,NaN,NaN");
        let jsonl = render(id, &data, OutputFormat::Jsonl).unwrap();
        assert_eq!(jsonl.lines().count(), 4);
        let first: serde_json::Value = serde_json::from_str(jsonl.lines().next().unwrap()).unwrap();
        assert_eq!(first["figure"], "su2-intcorr");
        assert!(first["value"].is_null());
    }

    #[test]
    fn atomic_write_replaces_content() {
        let dir = std::env::temp_dir().join(format!("nlcs-fig-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("out.csv");
        write_atomic(&path, "a\n").unwrap();
        write_atomic(&path, "b\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "b\n");
        assert_eq!(std::fs::read_dir(&dir).unwrap().count(), 1);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
