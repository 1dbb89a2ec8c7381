//! Sequences of vector measures with diagnostics for wide, strict and range
//! convergence, plus the built-in scenarios behind the counterexamples.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{directed_hausdorff, hausdorff_distance, DualVector, Vector};
use crate::measures::{MeasurableSet, VectorMeasure};
use crate::norms::{direction_grid, Seminorm};
use crate::zonotopes::vertices_2d;

/// A finite indexed sequence of measures with a declared limit.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub norm: Seminorm,
    pub sequence: Vec<VectorMeasure>,
    pub limit: VectorMeasure,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        self.norm.validate()?;
        for m in self.sequence.iter().chain(std::iter::once(&self.limit)) {
            if m.space_dim() != self.limit.space_dim() {
                return Err(Error::DimMismatch {
                    expected: self.limit.space_dim(),
                    got: m.space_dim(),
                });
            }
            if m.dim() != self.limit.dim() {
                return Err(Error::DimMismatch { expected: self.limit.dim(), got: m.dim() });
            }
        }
        Ok(())
    }
}

/// Upper-level probe of wide convergence against a finite dictionary of
/// compactly supported hat functions anchored at the declared limit.
///
/// The dictionary covers the limit's atom sites (an inflated bounding box at
/// the given per-axis resolution, plus one hat per limit atom), so mass that
/// escapes to infinity is eventually invisible, as it must be against any
/// fixed compactly supported test function. A finite dictionary cannot
/// quantify over all of C_c, so this is a diagnostic, never a certificate.
pub fn wide_proxy(mu: &VectorMeasure, limit: &VectorMeasure, resolution: usize) -> Result<f64> {
    if mu.dim() != limit.dim() || mu.space_dim() != limit.space_dim() {
        return Err(Error::DimMismatch { expected: limit.dim(), got: mu.dim() });
    }
    let m = limit.space_dim();
    let mut lo = vec![f64::INFINITY; m];
    let mut hi = vec![f64::NEG_INFINITY; m];
    for a in limit.atoms() {
        for i in 0..m {
            lo[i] = lo[i].min(a.site[i]);
            hi[i] = hi[i].max(a.site[i]);
        }
    }
    if limit.atoms().is_empty() {
        lo = vec![-1.0; m];
        hi = vec![1.0; m];
    }
    for i in 0..m {
        lo[i] -= 1.0;
        hi[i] += 1.0;
    }
    let res = resolution.max(1);
    let steps: Vec<f64> = (0..m).map(|i| (hi[i] - lo[i]) / res as f64).collect();
    let mut hats: Vec<(Vec<f64>, Vec<f64>)> = Vec::new(); // (center, half-widths)
    let mut index = vec![0usize; m];
    loop {
        let center: Vec<f64> = (0..m)
            .map(|i| lo[i] + (index[i] as f64 + 0.5) * steps[i])
            .collect();
        hats.push((center, steps.clone()));
        let mut axis = 0;
        loop {
            if axis == m {
                break;
            }
            index[axis] += 1;
            if index[axis] < res {
                break;
            }
            index[axis] = 0;
            axis += 1;
        }
        if axis == m {
            break;
        }
    }
    for a in limit.atoms() {
        hats.push((a.site.clone(), vec![1.0; m]));
    }
    let mut worst = 0.0f64;
    for (center, width) in &hats {
        let integral = |meas: &VectorMeasure| -> Vector {
            meas.atoms().iter().fold(Vector::zeros(meas.dim()), |acc, a| {
                let phi: f64 = a
                    .site
                    .iter()
                    .zip(center.iter().zip(width))
                    .map(|(x, (c, w))| (1.0 - (x - c).abs() / w).max(0.0))
                    .product();
                acc.add(&a.value.scale(phi))
            })
        };
        worst = worst.max(integral(mu).sub(&integral(limit)).norm2());
    }
    Ok(worst)
}

/// Per-index diagnostics row.
#[derive(Clone, Debug, Serialize)]
pub struct DiagnosticsRow {
    pub index: usize,
    pub wide_proxy: f64,
    pub mass: f64,
    pub mass_gap: f64,
    pub range_hausdorff: f64,
    pub range_lsc_deficiency: f64,
    pub projected_gap_max: f64,
}

/// The three trend verdicts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Converging,
    NotConverging,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictSet {
    pub wide: Verdict,
    pub strict: Verdict,
    pub range: Verdict,
    /// Conjunction over the per-direction projected-variation columns.
    pub projected: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagnosticsReport {
    pub scenario: String,
    pub limit_mass: f64,
    pub rows: Vec<DiagnosticsRow>,
    /// projected-variation gaps, one inner vector per sequence index,
    /// aligned with the direction grid
    pub projected_gaps: Vec<Vec<f64>>,
    pub direction_grid: usize,
}

impl DiagnosticsReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "index,wide_proxy,mass,mass_gap,range_hausdorff,range_lsc_deficiency,projected_gap_max\n",
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.index,
                r.wide_proxy,
                r.mass,
                r.mass_gap,
                r.range_hausdorff,
                r.range_lsc_deficiency,
                r.projected_gap_max
            ));
        }
        out
    }
}

/// Projected variations are 2-Lipschitz in the direction, so a uniform grid
/// of this size controls the whole sphere.
pub const DEFAULT_DIRECTION_GRID: usize = 64;
pub const DEFAULT_WIDE_RESOLUTION: usize = 8;

fn range_polygon(mu: &VectorMeasure) -> Result<crate::geometry::ConvexPolygon> {
    let lifted = if mu.dim() == 1 {
        let atoms = mu
            .atoms()
            .iter()
            .map(|a| {
                (
                    a.site.clone(),
                    Vector::new(vec![a.value.coords()[0], 0.0]).unwrap(),
                )
            })
            .collect();
        VectorMeasure::new(mu.space_dim(), 2, atoms)?
    } else {
        mu.clone()
    };
    vertices_2d(&lifted.range(&MeasurableSet::All)?)
}

/// Fills every diagnostics column for the scenario.
pub fn run_diagnostics(s: &Scenario) -> Result<DiagnosticsReport> {
    s.validate()?;
    let d = s.limit.dim();
    if d > 2 {
        return Err(Error::BadDim(d));
    }
    let dirs: Vec<DualVector> = direction_grid(d, DEFAULT_DIRECTION_GRID)?
        .into_iter()
        .map(DualVector::from_vector)
        .collect();
    let limit_mass = s.limit.total_variation(&MeasurableSet::All, &s.norm)?;
    let limit_poly = range_polygon(&s.limit)?;
    let limit_proj: Vec<f64> = dirs
        .iter()
        .map(|eta| s.limit.projected_variation(&MeasurableSet::All, eta))
        .collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(s.sequence.len());
    let mut projected_gaps = Vec::with_capacity(s.sequence.len());
    for (i, mu) in s.sequence.iter().enumerate() {
        let mass = mu.total_variation(&MeasurableSet::All, &s.norm)?;
        let poly = range_polygon(mu)?;
        let gaps: Vec<f64> = dirs
            .iter()
            .zip(&limit_proj)
            .map(|(eta, lp)| {
                mu.projected_variation(&MeasurableSet::All, eta)
                    .map(|p| (p - lp).abs())
            })
            .collect::<Result<_>>()?;
        let gap_max = gaps.iter().fold(0.0f64, |m, g| m.max(*g));
        rows.push(DiagnosticsRow {
            index: i + 1,
            wide_proxy: wide_proxy(mu, &s.limit, DEFAULT_WIDE_RESOLUTION)?,
            mass,
            mass_gap: (mass - limit_mass).abs(),
            range_hausdorff: hausdorff_distance(&poly, &limit_poly),
            range_lsc_deficiency: directed_hausdorff(&limit_poly, &poly),
            projected_gap_max: gap_max,
        });
        projected_gaps.push(gaps);
    }
    Ok(DiagnosticsReport {
        scenario: s.name.clone(),
        limit_mass,
        rows,
        projected_gaps,
        direction_grid: DEFAULT_DIRECTION_GRID,
    })
}

/// Trend classification of one metric column.
///
/// "Converging" when the last-window values all sit at or below `tol`, or
/// when the column decreases monotonically with a total factor of at least
/// 10. "Not-converging" when the window stays above `tol` with relative
/// oscillation under 10%. Anything else is inconclusive. A finite-index
/// verdict is a heuristic about a true limit; these constants are artifact
/// choices.
pub fn classify_column(col: &[f64], window: usize, tol: f64) -> Verdict {
    if col.is_empty() {
        return Verdict::Inconclusive;
    }
    let w = window.clamp(1, col.len());
    let tail = &col[col.len() - w..];
    if tail.iter().all(|x| *x <= tol) {
        return Verdict::Converging;
    }
    let monotone = col.windows(2).all(|p| p[1] <= p[0]);
    let last = *col.last().unwrap();
    if monotone && last > 0.0 && col[0] >= 10.0 * last {
        return Verdict::Converging;
    }
    let t_min = tail.iter().fold(f64::INFINITY, |m, x| m.min(*x));
    let t_max = tail.iter().fold(f64::NEG_INFINITY, |m, x| m.max(*x));
    if t_min > tol && t_max > 0.0 && (t_max - t_min) < 0.1 * t_max {
        return Verdict::NotConverging;
    }
    Verdict::Inconclusive
}

/// Verdicts for the wide, strict, range and projected columns of a report.
pub fn verdicts(report: &DiagnosticsReport, window: usize, tol: f64) -> VerdictSet {
    let col = |f: fn(&DiagnosticsRow) -> f64| -> Vec<f64> { report.rows.iter().map(f).collect() };
    let wide = classify_column(&col(|r| r.wide_proxy), window, tol);
    let strict = classify_column(&col(|r| r.mass_gap), window, tol);
    let range = classify_column(&col(|r| r.range_hausdorff), window, tol);
    let n_dirs = report.projected_gaps.first().map_or(0, |g| g.len());
    let mut projected = Verdict::Converging;
    for j in 0..n_dirs {
        let column: Vec<f64> = report.projected_gaps.iter().map(|g| g[j]).collect();
        match classify_column(&column, window, tol) {
            Verdict::Converging => {}
            Verdict::NotConverging => {
                projected = Verdict::NotConverging;
                break;
            }
            Verdict::Inconclusive => projected = Verdict::Inconclusive,
        }
    }
    VerdictSet { wide, strict, range, projected }
}

/// Deterministic parameters of the built-in scenarios.
#[derive(Clone, Debug, Default)]
pub struct BuiltinParams {
    /// first atom value; defaults to e1 of V
    pub v: Option<Vec<f64>>,
    /// second atom value (dirac_split only); defaults to e2 of V
    pub w: Option<Vec<f64>>,
    /// anchor site; defaults to the origin of X = R^1
    pub x: Option<Vec<f64>>,
    /// displacement direction in X; defaults to the first basis vector
    pub u: Option<Vec<f64>>,
}

pub const BUILTIN_SCENARIOS: [&str; 4] =
    ["dirac_split", "aligned_merge", "cancelling_pair", "mass_escape"];

/// The scenarios behind the paper-level counterexamples:
/// dirac_split v d_x + w d_{x+u/n} -> (v+w) d_x,
/// aligned_merge v d_x + v d_{x+u/n} -> 2v d_x,
/// cancelling_pair v d_x - v d_{x+u/n} -> 0,
/// mass_escape v d_{n u} -> 0.
pub fn builtin_scenario(
    name: &str,
    params: &BuiltinParams,
    norm: Seminorm,
    len: usize,
) -> Result<Scenario> {
    let x = params.x.clone().unwrap_or_else(|| vec![0.0]);
    let m = x.len();
    let u = params.u.clone().unwrap_or_else(|| {
        let mut u = vec![0.0; m];
        u[0] = 1.0;
        u
    });
    if u.len() != m {
        return Err(Error::DimMismatch { expected: m, got: u.len() });
    }
    let v = params.v.clone().unwrap_or_else(|| vec![1.0, 0.0]);
    let d = v.len();
    let v = Vector::new(v)?;
    let shifted = |t: f64| -> Vec<f64> { x.iter().zip(&u).map(|(a, b)| a + t * b).collect() };
    let (sequence, limit): (Vec<VectorMeasure>, VectorMeasure) = match name {
        "dirac_split" => {
            let w = Vector::new(params.w.clone().unwrap_or_else(|| {
                let mut w = vec![0.0; d];
                if d > 1 {
                    w[1] = 1.0;
                } else {
                    w[0] = 1.0;
                }
                w
            }))?;
            let seq = (1..=len)
                .map(|n| {
                    VectorMeasure::new(
                        m,
                        d,
                        vec![(x.clone(), v.clone()), (shifted(1.0 / n as f64), w.clone())],
                    )
                })
                .collect::<Result<_>>()?;
            (seq, VectorMeasure::new(m, d, vec![(x.clone(), v.add(&w))])?)
        }
        "aligned_merge" => {
            let seq = (1..=len)
                .map(|n| {
                    VectorMeasure::new(
                        m,
                        d,
                        vec![(x.clone(), v.clone()), (shifted(1.0 / n as f64), v.clone())],
                    )
                })
                .collect::<Result<_>>()?;
            (seq, VectorMeasure::new(m, d, vec![(x.clone(), v.scale(2.0))])?)
        }
        "cancelling_pair" => {
            let seq = (1..=len)
                .map(|n| {
                    VectorMeasure::new(
                        m,
                        d,
                        vec![(x.clone(), v.clone()), (shifted(1.0 / n as f64), v.neg())],
                    )
                })
                .collect::<Result<_>>()?;
            (seq, VectorMeasure::zero(m, d))
        }
        "mass_escape" => {
            let seq = (1..=len)
                .map(|n| VectorMeasure::new(m, d, vec![(shifted(n as f64), v.clone())]))
                .collect::<Result<_>>()?;
            (seq, VectorMeasure::zero(m, d))
        }
        other => return Err(Error::UnknownScenario(other.to_string())),
    };
    Ok(Scenario { name: name.to_string(), norm, sequence, limit })
}
