//! Seminorms on V, dual norms, strict-convexity classification and zonal
//! representations: finite measures sigma on V' inducing the norm
//! v -> sum_j w_j |<eta_j, v>|.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{cross2, dir2, rot90, DualVector, Vector};

/// Seminorms on R^d, d in {1, 2, 3}.
///
/// `Euclidean` and weightless `Lp` evaluate in any supported dimension;
/// `Polygonal` fixes the dimension through its generators, `SumOfCircles`
/// lives in d = 3.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Seminorm {
    Euclidean,
    Lp {
        p: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        weights: Option<Vec<f64>>,
    },
    /// v -> sum_i |<u_i, v>| over the stored generators u_i.
    Polygonal { generators: Vec<Vec<f64>> },
    /// sqrt(v1^2+v2^2) + sqrt(v1^2+v3^2) + sqrt(v2^2+v3^2) on R^3;
    /// strictly convex although its zonal support is three circles.
    SumOfCircles,
}

// Deserialized through a flat raw form: serde's deny_unknown_fields does not
// apply to internally tagged enums, and the schema must reject stray fields.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeminormRaw {
    kind: String,
    #[serde(default)]
    p: Option<f64>,
    #[serde(default)]
    weights: Option<Vec<f64>>,
    #[serde(default)]
    generators: Option<Vec<Vec<f64>>>,
}

impl<'de> Deserialize<'de> for Seminorm {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SeminormRaw::deserialize(de)?;
        let reject = |field: &str| {
            D::Error::custom(format!("field `{field}` not allowed for kind `{}`", raw.kind))
        };
        match raw.kind.as_str() {
            "euclidean" | "sum_of_circles" => {
                if raw.p.is_some() {
                    return Err(reject("p"));
                }
                if raw.weights.is_some() {
                    return Err(reject("weights"));
                }
                if raw.generators.is_some() {
                    return Err(reject("generators"));
                }
                Ok(if raw.kind == "euclidean" {
                    Seminorm::Euclidean
                } else {
                    Seminorm::SumOfCircles
                })
            }
            "lp" => {
                if raw.generators.is_some() {
                    return Err(reject("generators"));
                }
                let p = raw.p.ok_or_else(|| D::Error::custom("kind `lp` requires `p`"))?;
                Ok(Seminorm::Lp { p, weights: raw.weights })
            }
            "polygonal" => {
                if raw.p.is_some() {
                    return Err(reject("p"));
                }
                if raw.weights.is_some() {
                    return Err(reject("weights"));
                }
                let generators = raw
                    .generators
                    .ok_or_else(|| D::Error::custom("kind `polygonal` requires `generators`"))?;
                Ok(Seminorm::Polygonal { generators })
            }
            other => Err(D::Error::custom(format!("unknown seminorm kind: {other}"))),
        }
    }
}

impl Seminorm {
    pub fn lp(p: f64) -> Self {
        Seminorm::Lp { p, weights: None }
    }

    pub fn polygonal(generators: Vec<Vec<f64>>) -> Self {
        Seminorm::Polygonal { generators }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Seminorm::Euclidean | Seminorm::SumOfCircles => Ok(()),
            Seminorm::Lp { p, weights } => {
                if !(*p >= 1.0) {
                    return Err(Error::Invalid(format!("lp exponent must be >= 1, got {p}")));
                }
                if let Some(w) = weights {
                    if w.is_empty() || w.len() > 3 {
                        return Err(Error::Invalid("lp weights must have length 1..=3".into()));
                    }
                    if w.iter().any(|x| !x.is_finite() || *x <= 0.0) {
                        return Err(Error::Invalid("lp weights must be positive and finite".into()));
                    }
                }
                Ok(())
            }
            Seminorm::Polygonal { generators } => {
                if generators.is_empty() {
                    return Err(Error::Invalid("polygonal seminorm needs generators".into()));
                }
                let d = generators[0].len();
                if !(1..=3).contains(&d) {
                    return Err(Error::BadDim(d));
                }
                for g in generators {
                    if g.len() != d {
                        return Err(Error::DimMismatch { expected: d, got: g.len() });
                    }
                    if g.iter().any(|c| !c.is_finite()) {
                        return Err(Error::NonFinite);
                    }
                }
                Ok(())
            }
        }
    }

    /// Dimension pinned by the seminorm, if any.
    pub fn dim(&self) -> Option<usize> {
        match self {
            Seminorm::Euclidean => None,
            Seminorm::Lp { weights, .. } => weights.as_ref().map(|w| w.len()),
            Seminorm::Polygonal { generators } => Some(generators[0].len()),
            Seminorm::SumOfCircles => Some(3),
        }
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        match self.dim() {
            Some(d) if d != got => Err(Error::DimMismatch { expected: d, got }),
            _ => Ok(()),
        }
    }

    /// Seminorm value |v|_V.
    pub fn eval(&self, v: &Vector) -> Result<f64> {
        self.check_dim(v.dim())?;
        Ok(match self {
            Seminorm::Euclidean => v.norm2(),
            Seminorm::Lp { p, weights } => {
                let scaled: Vec<f64> = v
                    .coords()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| weights.as_ref().map_or(1.0, |w| w[i]) * c.abs())
                    .collect();
                lp_of(&scaled, *p)
            }
            Seminorm::Polygonal { generators } => generators
                .iter()
                .map(|g| dot_slice(g, v.coords()).abs())
                .sum(),
            Seminorm::SumOfCircles => {
                let c = v.coords();
                (c[0] * c[0] + c[1] * c[1]).sqrt()
                    + (c[0] * c[0] + c[2] * c[2]).sqrt()
                    + (c[1] * c[1] + c[2] * c[2]).sqrt()
            }
        })
    }

    /// Dual norm |eta|_{V'} = sup { <eta, v> : |v|_V <= 1 }; +inf when eta
    /// does not vanish on the kernel of a degenerate seminorm.
    pub fn dual_eval(&self, eta: &DualVector) -> Result<f64> {
        self.check_dim(eta.dim())?;
        match self {
            Seminorm::Euclidean => Ok(eta.norm2()),
            Seminorm::Lp { p, weights } => {
                let scaled: Vec<f64> = eta
                    .coords()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c.abs() / weights.as_ref().map_or(1.0, |w| w[i]))
                    .collect();
                let q = if *p == 1.0 {
                    f64::INFINITY
                } else if p.is_infinite() {
                    1.0
                } else {
                    p / (p - 1.0)
                };
                Ok(lp_of(&scaled, q))
            }
            Seminorm::Polygonal { generators } => polygonal_dual(generators, eta),
            Seminorm::SumOfCircles => Err(Error::WrongKind(
                "sum_of_circles has no closed-form dual; not supported",
            )),
        }
    }

    /// Exact classification per kind.
    pub fn is_strictly_convex(&self) -> bool {
        match self {
            Seminorm::Euclidean => true,
            Seminorm::Lp { p, .. } => *p > 1.0 && p.is_finite(),
            Seminorm::Polygonal { .. } => false,
            Seminorm::SumOfCircles => true,
        }
    }

    /// Randomized cross-check of [`Self::is_strictly_convex`]: samples pairs
    /// of linearly independent vectors and looks for a near-equality case of
    /// the triangle inequality. Returns false iff a witness is found.
    pub fn strict_convexity_probe(&self, trials: usize, margin: f64, rng_seed: u64) -> bool {
        let d = self.dim().unwrap_or(2);
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        for _ in 0..trials {
            let v = random_unit(&mut rng, d);
            let w = random_unit(&mut rng, d);
            if !independent(&v, &w) {
                continue;
            }
            let nv = self.eval(&v).unwrap();
            let nw = self.eval(&w).unwrap();
            let nvw = self.eval(&v.add(&w)).unwrap();
            if nv + nw == 0.0 {
                continue;
            }
            if nvw >= nv + nw - margin * (nv + nw) {
                return false;
            }
        }
        true
    }
}

fn lp_of(abs_coords: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        return abs_coords.iter().fold(0.0f64, |m, c| m.max(*c));
    }
    if p == 1.0 {
        return abs_coords.iter().sum();
    }
    // scale out the largest entry to avoid overflow for large p
    let m = abs_coords.iter().fold(0.0f64, |m, c| m.max(*c));
    if m == 0.0 {
        return 0.0;
    }
    let s: f64 = abs_coords.iter().map(|c| (c / m).powf(p)).sum();
    m * s.powf(1.0 / p)
}

fn dot_slice(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Dual norm of a polygonal seminorm, by vertex enumeration of the primal
/// unit ball in d <= 2. Polygonal duals in d = 3 are rejected.
fn polygonal_dual(generators: &[Vec<f64>], eta: &DualVector) -> Result<f64> {
    let d = generators[0].len();
    match d {
        1 => {
            let s: f64 = generators.iter().map(|g| g[0].abs()).sum();
            let e = eta.coords()[0];
            if s == 0.0 {
                Ok(if e == 0.0 { 0.0 } else { f64::INFINITY })
            } else {
                Ok(e.abs() / s)
            }
        }
        2 => {
            let gens: Vec<Vector> = generators
                .iter()
                .map(|g| Vector::new(g.clone()).unwrap())
                .collect();
            let nonzero: Vec<&Vector> = gens.iter().filter(|g| !g.is_zero()).collect();
            if nonzero.is_empty() {
                let e = eta.as_vector();
                return Ok(if e.is_zero() { 0.0 } else { f64::INFINITY });
            }
            let full_rank = nonzero
                .iter()
                .any(|g| cross2(nonzero[0], g) != 0.0);
            if !full_rank {
                // rank-1 seminorm: the unit ball is a strip; the dual is
                // finite only on the line spanned by the generators
                let u = nonzero[0];
                let e = eta.as_vector();
                if cross2(e, u).abs() > 1e-12 * e.norm2() * u.norm2() {
                    return Ok(f64::INFINITY);
                }
                let c = e.dot(u) / u.dot(u);
                let total: f64 = nonzero
                    .iter()
                    .map(|g| g.dot(u).abs() / u.dot(u))
                    .sum();
                return Ok(c.abs() / total);
            }
            // vertices of the primal ball lie on the lines <u_i, v> = 0
            let norm = |v: &Vector| -> f64 {
                gens.iter().map(|g| g.dot(v).abs()).sum()
            };
            let mut best = 0.0f64;
            for g in &nonzero {
                let t = rot90(g);
                let nt = norm(&t);
                if nt > 0.0 {
                    best = best.max(eta.pair(&t).abs() / nt);
                }
            }
            Ok(best)
        }
        d => Err(Error::BadDim(d)),
    }
}

fn random_unit(rng: &mut ChaCha8Rng, d: usize) -> Vector {
    loop {
        let coords: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let v = Vector::new(coords).unwrap();
        let n = v.norm2();
        if n > 1e-3 {
            return v.scale(1.0 / n);
        }
    }
}

fn independent(v: &Vector, w: &Vector) -> bool {
    // Gram determinant test, valid in any dimension
    let g = v.dot(v) * w.dot(w) - v.dot(w) * v.dot(w);
    g > 1e-12 * v.dot(v) * w.dot(w)
}

/// A finite weighted set of dual vectors representing sigma in the zonal
/// formula |v| = sum_j w_j |<eta_j, v>|.
///
/// Canonical form: each eta is folded into the closed upper half-space
/// (trailing nonzero coordinate positive), exact duplicates are merged, and
/// atoms are sorted lexicographically. Direction and magnitude of eta are
/// kept as given; only the sign is normalized.
#[derive(Clone, Debug, PartialEq)]
pub struct ZonalMeasure {
    atoms: Vec<(DualVector, f64)>,
}

impl ZonalMeasure {
    pub fn new(atoms: Vec<(DualVector, f64)>) -> Result<Self> {
        let mut canon: Vec<(Vec<f64>, f64)> = Vec::new();
        let dim = atoms.first().map(|(e, _)| e.dim());
        for (eta, w) in &atoms {
            if !w.is_finite() || *w <= 0.0 {
                return Err(Error::Invalid(format!("zonal weight must be > 0, got {w}")));
            }
            if Some(eta.dim()) != dim {
                return Err(Error::DimMismatch { expected: dim.unwrap(), got: eta.dim() });
            }
            let mut c: Vec<f64> = eta.coords().to_vec();
            if !upper_half(&c) {
                for x in &mut c {
                    *x = -*x;
                }
            }
            for x in &mut c {
                if *x == 0.0 {
                    *x = 0.0; // normalize -0.0
                }
            }
            if let Some(entry) = canon.iter_mut().find(|(e, _)| e == &c) {
                entry.1 += w;
            } else {
                canon.push((c, *w));
            }
        }
        canon.sort_by(|a, b| lex_cmp(&a.0, &b.0));
        Ok(Self {
            atoms: canon
                .into_iter()
                .map(|(c, w)| (DualVector::new(c).unwrap(), w))
                .collect(),
        })
    }

    pub fn atoms(&self) -> &[(DualVector, f64)] {
        &self.atoms
    }

    pub fn dim(&self) -> usize {
        self.atoms.first().map_or(0, |(e, _)| e.dim())
    }

    /// The induced seminorm value sum_j w_j |<eta_j, v>|.
    pub fn induced_eval(&self, v: &Vector) -> f64 {
        self.atoms.iter().map(|(e, w)| w * e.pair(v).abs()).sum()
    }

    /// The induced seminorm as a polygonal `Seminorm` (weights absorbed into
    /// the generators).
    pub fn induced_seminorm(&self) -> Seminorm {
        Seminorm::Polygonal {
            generators: self
                .atoms
                .iter()
                .map(|(e, w)| e.coords().iter().map(|c| c * w).collect())
                .collect(),
        }
    }
}

fn upper_half(c: &[f64]) -> bool {
    for x in c.iter().rev() {
        if *x > 0.0 {
            return true;
        }
        if *x < 0.0 {
            return false;
        }
    }
    true
}

fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.total_cmp(y);
        if o != std::cmp::Ordering::Equal {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

/// Exact zonal representation of a 2-D polygonal seminorm: one atom per
/// generator, weight 1.
pub fn zonal_from_polygonal_2d(n: &Seminorm) -> Result<ZonalMeasure> {
    match n {
        Seminorm::Polygonal { generators } if generators[0].len() == 2 => ZonalMeasure::new(
            generators
                .iter()
                .map(|g| Ok((DualVector::new(g.clone())?, 1.0)))
                .collect::<Result<Vec<_>>>()?,
        ),
        Seminorm::Polygonal { generators } => Err(Error::BadDim(generators[0].len())),
        _ => Err(Error::WrongKind("polygonal")),
    }
}

const ZONAL_APPROX_CAP: usize = 18;

/// Constructive zonal representation of an arbitrary 2-D norm within a
/// relative defect `eps`.
///
/// A centrally symmetric polygon Q is inscribed in the dual unit ball; Q is
/// automatically a zonotope in the plane, and the norm with dual ball Q is
/// exactly the zonal norm whose atoms are half the edge vectors of one
/// symmetric half of Q. Since Q sits inside the dual ball, the induced norm
/// never exceeds the input; the sample count doubles until the lower bound
/// (1 - eps) * n certifies on a fine direction grid.
pub fn zonal_approx_2d(n: &Seminorm, eps: f64) -> Result<ZonalMeasure> {
    if !(eps > 0.0) {
        return Err(Error::Invalid("eps must be > 0".into()));
    }
    n.check_dim(2)?;
    if let Seminorm::Polygonal { .. } = n {
        return zonal_from_polygonal_2d(n);
    }
    let mut k = 8usize;
    for _ in 0..ZONAL_APPROX_CAP {
        let sigma = inscribed_zonal(n, k)?;
        if certify_zonal(n, &sigma, eps, 720)? {
            return Ok(sigma);
        }
        k *= 2;
    }
    Err(Error::NoConvergence { eps, cap: ZONAL_APPROX_CAP })
}

fn inscribed_zonal(n: &Seminorm, k: usize) -> Result<ZonalMeasure> {
    // boundary points of the dual ball in k directions of the open upper
    // half-circle; with their antipodes these are the vertices of Q
    let mut verts: Vec<Vector> = Vec::with_capacity(k);
    for j in 0..k {
        let theta = std::f64::consts::PI * (j as f64 + 0.5) / k as f64;
        let b = dir2(theta);
        let r = n.dual_eval(&DualVector::from_vector(b.clone()))?;
        if !r.is_finite() || r <= 0.0 {
            return Err(Error::Invalid("zonal_approx_2d requires a norm (no kernel)".into()));
        }
        verts.push(b.scale(1.0 / r));
    }
    let mut atoms = Vec::with_capacity(k);
    for j in 0..k {
        let next = if j + 1 < k { verts[j + 1].clone() } else { verts[0].neg() };
        let edge = next.sub(&verts[j]).scale(0.5);
        atoms.push((DualVector::from_vector(edge), 1.0));
    }
    ZonalMeasure::new(atoms)
}

fn certify_zonal(n: &Seminorm, sigma: &ZonalMeasure, eps: f64, grid: usize) -> Result<bool> {
    for i in 0..grid {
        let v = dir2(std::f64::consts::PI * (i as f64 + 0.5) / grid as f64);
        let exact = n.eval(&v)?;
        if sigma.induced_eval(&v) < (1.0 - eps) * exact {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Quadrature discretization of the rotation-invariant zonal representation
/// of the Euclidean norm, with its analytic constant kappa:
/// d = 2 uses kappa = 1/4 against arc length, d = 3 uses kappa = 1/(2 pi)
/// against surface area.
pub fn zonal_euclidean(d: usize, nodes: usize) -> Result<(ZonalMeasure, f64)> {
    if nodes < 4 {
        return Err(Error::Invalid(format!("need at least 4 nodes, got {nodes}")));
    }
    match d {
        2 => {
            let kappa = 0.25;
            let w = kappa * std::f64::consts::TAU / nodes as f64;
            let atoms = (0..nodes)
                .map(|j| {
                    let theta = std::f64::consts::TAU * (j as f64 + 0.5) / nodes as f64;
                    (DualVector::from_vector(dir2(theta)), w)
                })
                .collect();
            Ok((ZonalMeasure::new(atoms)?, kappa))
        }
        3 => {
            let kappa = 1.0 / std::f64::consts::TAU;
            // product midpoint rule in (polar, azimuthal) with area weights
            let n_polar = ((nodes as f64 / 2.0).sqrt().round() as usize).max(2);
            let n_azimuth = 2 * n_polar;
            let d_theta = std::f64::consts::PI / n_polar as f64;
            let d_phi = std::f64::consts::TAU / n_azimuth as f64;
            let mut atoms = Vec::with_capacity(n_polar * n_azimuth);
            for i in 0..n_polar {
                let theta = (i as f64 + 0.5) * d_theta;
                let w = kappa * theta.sin() * d_theta * d_phi;
                for j in 0..n_azimuth {
                    let phi = (j as f64 + 0.5) * d_phi;
                    let eta = DualVector::new(vec![
                        theta.sin() * phi.cos(),
                        theta.sin() * phi.sin(),
                        theta.cos(),
                    ])?;
                    atoms.push((eta, w));
                }
            }
            Ok((ZonalMeasure::new(atoms)?, kappa))
        }
        d => Err(Error::BadDim(d)),
    }
}

/// Outcome of checking a candidate zonal representation against a seminorm
/// on a direction grid.
#[derive(Clone, Debug, Serialize)]
pub struct ZonalValidationReport {
    pub grid: usize,
    pub tol: f64,
    pub max_rel_error: f64,
    pub pass: bool,
}

/// Maximum relative error of the induced norm of `sigma` against `n` over a
/// uniform direction grid.
pub fn validate_zonal(
    n: &Seminorm,
    sigma: &ZonalMeasure,
    grid: usize,
    tol: f64,
) -> Result<ZonalValidationReport> {
    let d = sigma.dim();
    n.check_dim(d)?;
    let dirs = direction_grid(d, grid)?;
    let mut max_rel = 0.0f64;
    for v in &dirs {
        let exact = n.eval(v)?;
        let approx = sigma.induced_eval(v);
        let denom = exact.max(1e-300);
        max_rel = max_rel.max((approx - exact).abs() / denom);
    }
    Ok(ZonalValidationReport { grid, tol, max_rel_error: max_rel, pass: max_rel <= tol })
}

/// Uniform unit directions: +/-1 in d=1, a circle grid in d=2, a Fibonacci
/// sphere in d=3.
pub fn direction_grid(d: usize, grid: usize) -> Result<Vec<Vector>> {
    match d {
        1 => Ok(vec![Vector::new(vec![1.0])?, Vector::new(vec![-1.0])?]),
        2 => Ok((0..grid)
            .map(|i| dir2(std::f64::consts::TAU * (i as f64 + 0.5) / grid as f64))
            .collect()),
        3 => {
            let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
            (0..grid)
                .map(|i| {
                    let z = 1.0 - 2.0 * (i as f64 + 0.5) / grid as f64;
                    let r = (1.0 - z * z).sqrt();
                    let phi = std::f64::consts::TAU * (i as f64) / golden;
                    Vector::new(vec![r * phi.cos(), r * phi.sin(), z])
                })
                .collect()
        }
        d => Err(Error::BadDim(d)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v2(x: f64, y: f64) -> Vector {
        Vector::new(vec![x, y]).unwrap()
    }

    #[test]
    fn eval_closed_forms() {
        assert_eq!(Seminorm::Euclidean.eval(&v2(3.0, 4.0)).unwrap(), 5.0);
        assert_eq!(Seminorm::lp(1.0).eval(&v2(1.0, -1.0)).unwrap(), 2.0);
        let soc = Seminorm::SumOfCircles;
        let v = Vector::new(vec![1.0, 0.0, 0.0]).unwrap();
        assert_eq!(soc.eval(&v).unwrap(), 2.0);
    }

    #[test]
    fn eval_dim_mismatch() {
        let soc = Seminorm::SumOfCircles;
        assert!(soc.eval(&v2(1.0, 0.0)).is_err());
    }

    #[test]
    fn dual_closed_forms() {
        let eta = DualVector::new(vec![3.0, 4.0]).unwrap();
        assert_eq!(Seminorm::Euclidean.dual_eval(&eta).unwrap(), 5.0);
        let eta = DualVector::new(vec![1.0, -2.0]).unwrap();
        assert_eq!(Seminorm::lp(1.0).dual_eval(&eta).unwrap(), 2.0);
        // polygonal {(1,0),(0,1)} is the l1 primal norm; its dual is l-inf
        let poly = Seminorm::polygonal(vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        let eta = DualVector::new(vec![1.0, 1.0]).unwrap();
        assert!((poly.dual_eval(&eta).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn dual_of_rank_one_polygonal() {
        let n = Seminorm::polygonal(vec![vec![1.0, 0.0]]);
        let along = DualVector::new(vec![2.0, 0.0]).unwrap();
        assert_eq!(n.dual_eval(&along).unwrap(), 2.0);
        let off = DualVector::new(vec![0.0, 1.0]).unwrap();
        assert!(n.dual_eval(&off).unwrap().is_infinite());
    }

    #[test]
    fn strict_convexity_classification() {
        assert!(Seminorm::Euclidean.is_strictly_convex());
        assert!(!Seminorm::lp(1.0).is_strictly_convex());
        assert!(!Seminorm::lp(f64::INFINITY).is_strictly_convex());
        assert!(Seminorm::lp(4.0).is_strictly_convex());
        assert!(Seminorm::SumOfCircles.is_strictly_convex());
        assert!(!Seminorm::polygonal(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).is_strictly_convex());
    }

    #[test]
    fn probe_matches_classification() {
        assert!(Seminorm::Euclidean.strict_convexity_probe(10_000, 1e-9, 7));
        assert!(!Seminorm::lp(1.0).strict_convexity_probe(10_000, 1e-9, 7));
        let square = Seminorm::polygonal(vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert!(!square.strict_convexity_probe(10_000, 1e-9, 7));
    }

    #[test]
    fn zonal_from_polygonal_roundtrip() {
        let n = Seminorm::polygonal(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]);
        let sigma = zonal_from_polygonal_2d(&n).unwrap();
        assert_eq!(sigma.atoms().len(), 3);
        assert_eq!(sigma.induced_eval(&v2(1.0, 0.0)), 2.0);
        for k in 0..16 {
            let v = dir2(0.3 + k as f64);
            assert!((sigma.induced_eval(&v) - n.eval(&v).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn zonal_canonical_fold() {
        let sigma = ZonalMeasure::new(vec![
            (DualVector::new(vec![0.0, -1.0]).unwrap(), 1.0),
            (DualVector::new(vec![0.0, 1.0]).unwrap(), 2.0),
        ])
        .unwrap();
        assert_eq!(sigma.atoms().len(), 1);
        assert_eq!(sigma.atoms()[0].1, 3.0);
    }

    #[test]
    fn zonal_approx_euclidean() {
        let sigma = zonal_approx_2d(&Seminorm::Euclidean, 1e-3).unwrap();
        let n = sigma.induced_eval(&v2(1.0, 0.0));
        assert!(n <= 1.0 + 1e-12 && n >= 0.999, "got {n}");
    }

    #[test]
    fn zonal_approx_lp4() {
        let n = Seminorm::lp(4.0);
        let sigma = zonal_approx_2d(&n, 1e-2).unwrap();
        for i in 0..360 {
            let v = dir2(std::f64::consts::TAU * i as f64 / 360.0);
            let exact = n.eval(&v).unwrap();
            let approx = sigma.induced_eval(&v);
            assert!(approx <= exact + 1e-12);
            assert!(approx >= (1.0 - 1e-2) * exact);
        }
    }

    #[test]
    fn zonal_euclidean_2d_quadrature() {
        let (sigma, kappa) = zonal_euclidean(2, 10_000).unwrap();
        assert_eq!(kappa, 0.25);
        assert!((sigma.induced_eval(&v2(1.0, 0.0)) - 1.0).abs() < 1e-6);
        let rep = validate_zonal(&Seminorm::Euclidean, &sigma, 360, 1e-5).unwrap();
        assert!(rep.pass, "max rel error {}", rep.max_rel_error);
    }

    #[test]
    fn zonal_euclidean_3d_quadrature() {
        let (sigma, kappa) = zonal_euclidean(3, 20_000).unwrap();
        assert!((kappa - 1.0 / std::f64::consts::TAU).abs() < 1e-15);
        let v = Vector::new(vec![0.3, -0.4, 0.5]).unwrap();
        let exact = v.norm2();
        assert!((sigma.induced_eval(&v) - exact).abs() / exact < 1e-2);
    }

    #[test]
    fn validate_zonal_coarse_fails() {
        let (sigma, _) = zonal_euclidean(2, 4).unwrap();
        let rep = validate_zonal(&Seminorm::Euclidean, &sigma, 360, 1e-6).unwrap();
        assert!(!rep.pass);
    }
}
