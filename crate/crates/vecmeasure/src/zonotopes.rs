//! Zonotopes [0, g_1] + ... + [0, g_m] + offset, vertex enumeration in the
//! plane, containment, anisotropic perimeter and the Crofton-type formula.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    directed_hausdorff, hausdorff_distance, ConvexPolygon, DualVector, Vector, MERGE_TOL,
};
use crate::norms::{Seminorm, ZonalMeasure};

/// Minkowski sum of segments [0, g_i] translated by an offset.
///
/// Canonical form: zero generators dropped, each generator flipped so its
/// trailing nonzero coordinate is positive (the offset absorbs the flip,
/// [0, g] = g + [0, -g]), generators sorted lexicographically.
#[derive(Clone, Debug, PartialEq)]
pub struct Zonotope {
    dim: usize,
    generators: Vec<Vector>,
    offset: Vector,
}

impl Zonotope {
    pub fn new(generators: Vec<Vector>, offset: Vector) -> Result<Self> {
        let dim = offset.dim();
        if !(1..=3).contains(&dim) {
            return Err(Error::BadDim(dim));
        }
        let mut offset = offset;
        let mut gens: Vec<Vector> = Vec::with_capacity(generators.len());
        for g in generators {
            if g.dim() != dim {
                return Err(Error::DimMismatch { expected: dim, got: g.dim() });
            }
            if g.is_zero() {
                continue;
            }
            if upper_half(g.coords()) {
                gens.push(g);
            } else {
                offset = offset.add(&g);
                gens.push(g.neg());
            }
        }
        gens.sort_by(|a, b| {
            a.coords()
                .iter()
                .zip(b.coords())
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| *o != std::cmp::Ordering::Equal)
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        Ok(Self { dim, generators: gens, offset })
    }

    pub fn from_generators(generators: Vec<Vector>, dim: usize) -> Result<Self> {
        Self::new(generators, Vector::zeros(dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn offset(&self) -> &Vector {
        &self.offset
    }

    /// h(u) = <u, offset> + sum_i max(0, <u, g_i>).
    pub fn support(&self, u: &DualVector) -> Result<f64> {
        if u.dim() != self.dim {
            return Err(Error::DimMismatch { expected: self.dim, got: u.dim() });
        }
        Ok(u.pair(&self.offset)
            + self
                .generators
                .iter()
                .map(|g| u.pair(g).max(0.0))
                .sum::<f64>())
    }

    pub fn scale_hint(&self) -> f64 {
        self.generators
            .iter()
            .chain(std::iter::once(&self.offset))
            .flat_map(|v| v.coords().iter())
            .fold(0.0f64, |m, c| m.max(c.abs()))
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

/// Vertex enumeration of a planar zonotope by the angle-sorted generator
/// walk. Degenerate inputs collapse gracefully (parallel generators to a
/// segment, no generators to a point at the offset).
pub fn vertices_2d(z: &Zonotope) -> Result<ConvexPolygon> {
    if z.dim != 2 {
        return Err(Error::DimMismatch { expected: 2, got: z.dim });
    }
    if z.generators.is_empty() {
        return ConvexPolygon::from_points(&[z.offset.clone()]);
    }
    // canonical generators sit in the upper half-plane, so angles lie in [0, pi)
    let mut gens: Vec<(f64, Vector)> = z
        .generators
        .iter()
        .map(|g| (g.y().atan2(g.x()), g.clone()))
        .collect();
    gens.sort_by(|a, b| a.0.total_cmp(&b.0));
    // merge near-parallel generators so the walk emits no collinear triples
    let mut merged: Vec<Vector> = Vec::new();
    let mut last_angle = f64::NEG_INFINITY;
    for (angle, g) in gens {
        if angle - last_angle <= 1e-12 && !merged.is_empty() {
            let top = merged.last_mut().unwrap();
            *top = top.add(&g);
        } else {
            merged.push(g);
            last_angle = angle;
        }
    }
    let mut points = Vec::with_capacity(2 * merged.len());
    let mut cursor = z.offset.clone();
    points.push(cursor.clone());
    for g in &merged {
        cursor = cursor.add(g);
        points.push(cursor.clone());
    }
    for g in merged.iter().take(merged.len() - 1) {
        cursor = cursor.sub(g);
        points.push(cursor.clone());
    }
    ConvexPolygon::from_points(&points)
}

/// Concatenates generators and adds offsets; realizes range additivity over
/// disjoint sets.
pub fn minkowski_sum(a: &Zonotope, b: &Zonotope) -> Result<Zonotope> {
    if a.dim != b.dim {
        return Err(Error::DimMismatch { expected: a.dim, got: b.dim });
    }
    let gens = a
        .generators
        .iter()
        .chain(b.generators.iter())
        .cloned()
        .collect();
    Zonotope::new(gens, a.offset.add(&b.offset))
}

/// Exact planar containment via support comparison on the outer normal fan.
pub fn contains_2d(outer: &Zonotope, inner: &Zonotope) -> Result<bool> {
    if outer.dim != 2 || inner.dim != 2 {
        return Err(Error::DimMismatch { expected: 2, got: outer.dim.max(inner.dim) });
    }
    let outer_poly = vertices_2d(outer)?;
    let inner_poly = vertices_2d(inner)?;
    Ok(polygon_contains(&outer_poly, &inner_poly))
}

/// Every vertex of `inner` must satisfy the support inequalities of `outer`
/// on its edge-normal fan; a segment adds its axis directions, a point falls
/// back to direct comparison.
pub fn polygon_contains(outer: &ConvexPolygon, inner: &ConvexPolygon) -> bool {
    let scale = outer.scale_hint().max(inner.scale_hint()).max(1.0);
    let tol = 1e-12 * scale;
    if outer.is_point() {
        let p = &outer.vertices()[0];
        return inner.vertices().iter().all(|v| v.dist2(p) <= tol);
    }
    let mut dirs = outer.edge_normals();
    if outer.is_segment() {
        let e = outer.vertices()[1].sub(&outer.vertices()[0]);
        let e = e.scale(1.0 / e.norm2());
        dirs.push(DualVector::from_vector(e.clone()));
        dirs.push(DualVector::from_vector(e.neg()));
    }
    dirs.iter()
        .all(|u| inner.support(u) <= outer.support(u) + tol)
}

/// Anisotropic perimeter of a convex polygon: the sum of seminorm lengths of
/// the edge vectors. A segment counts its length twice, a point counts 0.
pub fn perimeter(p: &ConvexPolygon, n: &Seminorm) -> Result<f64> {
    let verts = p.vertices();
    match verts.len() {
        0 | 1 => Ok(0.0),
        2 => Ok(2.0 * n.eval(&verts[1].sub(&verts[0]))?),
        l => {
            let mut total = 0.0;
            for i in 0..l {
                total += n.eval(&verts[(i + 1) % l].sub(&verts[i]))?;
            }
            Ok(total)
        }
    }
}

/// Perimeter of a planar zonotope through its vertex enumeration.
pub fn zonotope_perimeter(z: &Zonotope, n: &Seminorm) -> Result<f64> {
    perimeter(&vertices_2d(z)?, n)
}

#[derive(Clone, Debug, Serialize)]
pub struct MassPerimeterReport {
    pub total_variation: f64,
    pub half_perimeter: f64,
    pub abs_gap: f64,
    pub rel_gap: f64,
}

/// Both sides of the identity mass = half the anisotropic perimeter of the
/// range, with their gap.
pub fn mass_perimeter_identity_check(
    mu: &crate::measures::VectorMeasure,
    n: &Seminorm,
) -> Result<MassPerimeterReport> {
    if mu.dim() != 2 {
        return Err(Error::DimMismatch { expected: 2, got: mu.dim() });
    }
    let tv = mu.total_variation(&crate::measures::MeasurableSet::All, n)?;
    let half = 0.5 * zonotope_perimeter(&mu.range(&crate::measures::MeasurableSet::All)?, n)?;
    let abs_gap = (tv - half).abs();
    let rel_gap = if tv > 0.0 { abs_gap / tv } else { abs_gap };
    Ok(MassPerimeterReport { total_variation: tv, half_perimeter: half, abs_gap, rel_gap })
}

/// Crofton-type perimeter: 2 sum_j w_j diam <eta_j, C>, exact for a discrete
/// zonal measure representing the seminorm.
pub fn crofton_perimeter(c: &ConvexPolygon, sigma: &ZonalMeasure) -> Result<f64> {
    if sigma.dim() != 2 {
        return Err(Error::DimMismatch { expected: 2, got: sigma.dim() });
    }
    let mut total = 0.0;
    for (eta, w) in sigma.atoms() {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for v in c.vertices() {
            let t = eta.pair(v);
            lo = lo.min(t);
            hi = hi.max(t);
        }
        total += w * (hi - lo);
    }
    Ok(2.0 * total)
}

#[derive(Clone, Debug, Serialize)]
pub struct PerimeterMonotonicityReport {
    pub inner_perimeter: f64,
    pub outer_perimeter: f64,
    pub hausdorff: f64,
    pub monotone: bool,
    pub strict_gap_required: bool,
    pub strict_gap_holds: bool,
}

/// Checks Per(inner) <= Per(outer) for nested convex polygons, and the
/// strict gap when the norm is strictly convex and the bodies differ.
pub fn perimeter_monotonicity_check(
    inner: &ConvexPolygon,
    outer: &ConvexPolygon,
    n: &Seminorm,
) -> Result<PerimeterMonotonicityReport> {
    if !polygon_contains(outer, inner) {
        return Err(Error::NotContained);
    }
    let scale = outer.scale_hint().max(1.0);
    let per_inner = perimeter(inner, n)?;
    let per_outer = perimeter(outer, n)?;
    let d_h = hausdorff_distance(inner, outer);
    let monotone = per_inner <= per_outer + 1e-12 * scale;
    let strict_gap_required = n.is_strictly_convex() && d_h > 1e-9 * scale;
    let strict_gap_holds = per_outer - per_inner > 0.0;
    Ok(PerimeterMonotonicityReport {
        inner_perimeter: per_inner,
        outer_perimeter: per_outer,
        hausdorff: d_h,
        monotone,
        strict_gap_required,
        strict_gap_holds,
    })
}

/// One-sided deficiency of planar zonotope containment, through vertex
/// enumeration.
pub fn range_deficiency(target: &Zonotope, cover: &Zonotope) -> Result<f64> {
    Ok(directed_hausdorff(&vertices_2d(target)?, &vertices_2d(cover)?))
}

#[allow(dead_code)]
fn _merge_tol_is_shared() -> f64 {
    MERGE_TOL
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64, y: f64) -> Vector {
        Vector::new(vec![x, y]).unwrap()
    }

    fn zono(gens: &[(f64, f64)]) -> Zonotope {
        Zonotope::from_generators(gens.iter().map(|&(x, y)| v(x, y)).collect(), 2).unwrap()
    }

    #[test]
    fn unit_square_vertices() {
        let p = vertices_2d(&zono(&[(1.0, 0.0), (0.0, 1.0)])).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.support(&DualVector::new(vec![1.0, 1.0]).unwrap()), 2.0);
    }

    #[test]
    fn single_and_parallel_generators() {
        let seg = vertices_2d(&zono(&[(1.0, 0.0)])).unwrap();
        assert!(seg.is_segment());
        let seg2 = vertices_2d(&zono(&[(1.0, 0.0), (1.0, 0.0)])).unwrap();
        assert!(seg2.is_segment());
        assert_eq!(seg2.support(&DualVector::new(vec![1.0, 0.0]).unwrap()), 2.0);
    }

    #[test]
    fn generic_generators_give_2m_vertices() {
        let z = zono(&[(1.0, 0.1), (0.3, 1.0), (-0.5, 0.9), (1.0, 0.7), (0.2, 0.4), (-1.0, 0.2)]);
        let p = vertices_2d(&z).unwrap();
        assert_eq!(p.vertices().len(), 12);
    }

    #[test]
    fn negative_generator_offset_shift() {
        // [0,(−1,0)] = conv{(−1,0),(0,0)} regardless of the canonical flip
        let z = Zonotope::from_generators(vec![v(-1.0, 0.0)], 2).unwrap();
        let p = vertices_2d(&z).unwrap();
        let u = DualVector::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(p.support(&u), 0.0);
        assert_eq!(p.support(&u.neg()), 1.0);
    }

    #[test]
    fn support_formula() {
        let z = zono(&[(1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]);
        let u = DualVector::new(vec![1.0, 1.0]).unwrap();
        assert_eq!(z.support(&u).unwrap(), 4.0);
    }

    #[test]
    fn minkowski_identity_and_square() {
        let z = zono(&[(1.0, 0.0)]);
        let zero = Zonotope::from_generators(vec![], 2).unwrap();
        assert_eq!(minkowski_sum(&z, &zero).unwrap(), z);
        let sq = minkowski_sum(&zono(&[(1.0, 0.0)]), &zono(&[(0.0, 1.0)])).unwrap();
        assert_eq!(vertices_2d(&sq).unwrap().vertices().len(), 4);
    }

    #[test]
    fn containment() {
        let square = zono(&[(1.0, 0.0), (0.0, 1.0)]);
        let diag = zono(&[(1.0, 1.0)]);
        assert!(contains_2d(&square, &square).unwrap());
        assert!(contains_2d(&square, &diag).unwrap());
        assert!(!contains_2d(&diag, &square).unwrap());
    }

    #[test]
    fn perimeter_closed_forms() {
        let square = vertices_2d(&zono(&[(1.0, 0.0), (0.0, 1.0)])).unwrap();
        assert_eq!(perimeter(&square, &Seminorm::Euclidean).unwrap(), 4.0);
        assert_eq!(perimeter(&square, &Seminorm::lp(1.0)).unwrap(), 4.0);
        let seg = vertices_2d(&zono(&[(3.0, 4.0)])).unwrap();
        assert_eq!(perimeter(&seg, &Seminorm::Euclidean).unwrap(), 10.0);
        let pt = vertices_2d(&Zonotope::from_generators(vec![], 2).unwrap()).unwrap();
        assert_eq!(perimeter(&pt, &Seminorm::Euclidean).unwrap(), 0.0);
    }

    #[test]
    fn crofton_on_unit_square() {
        let square = vertices_2d(&zono(&[(1.0, 0.0), (0.0, 1.0)])).unwrap();
        let sigma = ZonalMeasure::new(vec![
            (DualVector::new(vec![1.0, 0.0]).unwrap(), 1.0),
            (DualVector::new(vec![0.0, 1.0]).unwrap(), 1.0),
        ])
        .unwrap();
        assert_eq!(crofton_perimeter(&square, &sigma).unwrap(), 4.0);
        let pt = ConvexPolygon::from_points(&[v(2.0, 2.0)]).unwrap();
        assert_eq!(crofton_perimeter(&pt, &sigma).unwrap(), 0.0);
    }

    #[test]
    fn monotonicity_equality_without_set_equality() {
        let square = vertices_2d(&zono(&[(1.0, 0.0), (0.0, 1.0)])).unwrap();
        let diag = vertices_2d(&zono(&[(1.0, 1.0)])).unwrap();
        // euclidean: strict gap 2*sqrt(2) < 4
        let rep = perimeter_monotonicity_check(&diag, &square, &Seminorm::Euclidean).unwrap();
        assert!(rep.monotone && rep.strict_gap_required && rep.strict_gap_holds);
        assert!((rep.inner_perimeter - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-12);
        // l1: equality of perimeters without equality of the bodies
        let rep = perimeter_monotonicity_check(&diag, &square, &Seminorm::lp(1.0)).unwrap();
        assert!(rep.monotone && !rep.strict_gap_required);
        assert_eq!(rep.inner_perimeter, 4.0);
        assert_eq!(rep.outer_perimeter, 4.0);
        // reversed pair must fail the precondition
        assert!(matches!(
            perimeter_monotonicity_check(&square, &diag, &Seminorm::Euclidean),
            Err(Error::NotContained)
        ));
    }
}
