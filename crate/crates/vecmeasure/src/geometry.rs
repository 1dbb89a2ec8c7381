//! Exact low-dimensional convex geometry: vectors, convex polygons,
//! support functions and Hausdorff distances.
//!
//! All Hausdorff/ball statements in the library are measured in the ambient
//! Euclidean metric, independently of whatever seminorm is under study.

use crate::error::{Error, Result};

/// Points closer than this (absolute Euclidean distance) are merged when
/// building polygons; angle-sorted zonotope walks produce near-duplicate
/// vertices for near-parallel generators.
pub const MERGE_TOL: f64 = 1e-12;

/// A vector in V = R^d, d in {1, 2, 3}.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector {
    coords: Vec<f64>,
}

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { coords })
    }

    pub fn zeros(dim: usize) -> Self {
        Self { coords: vec![0.0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Vector {
        Vector { coords: self.coords.iter().map(|c| c * s).collect() }
    }

    pub fn neg(&self) -> Vector {
        self.scale(-1.0)
    }

    /// Euclidean length.
    pub fn norm2(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dist2(&self, other: &Vector) -> f64 {
        self.sub(other).norm2()
    }

    /// Exact zero vector (all coordinates == 0.0).
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0.0)
    }

    pub fn x(&self) -> f64 {
        self.coords[0]
    }

    pub fn y(&self) -> f64 {
        self.coords[1]
    }
}

/// A functional in V', paired with V by the coordinate dot product.
#[derive(Clone, Debug, PartialEq)]
pub struct DualVector(Vector);

impl DualVector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        Ok(Self(Vector::new(coords)?))
    }

    pub fn from_vector(v: Vector) -> Self {
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn coords(&self) -> &[f64] {
        self.0.coords()
    }

    /// The pairing <eta, v>.
    pub fn pair(&self, v: &Vector) -> f64 {
        self.0.dot(v)
    }

    pub fn as_vector(&self) -> &Vector {
        &self.0
    }

    pub fn scale(&self, s: f64) -> DualVector {
        Self(self.0.scale(s))
    }

    pub fn neg(&self) -> DualVector {
        Self(self.0.neg())
    }

    pub fn norm2(&self) -> f64 {
        self.0.norm2()
    }
}

/// 2-D cross product of (b - a) and (c - a).
pub fn orient2d(a: &Vector, b: &Vector, c: &Vector) -> f64 {
    (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x())
}

pub fn cross2(a: &Vector, b: &Vector) -> f64 {
    a.x() * b.y() - a.y() * b.x()
}

/// Counterclockwise rotation by 90 degrees.
pub fn rot90(v: &Vector) -> Vector {
    Vector { coords: vec![-v.y(), v.x()] }
}

/// Unit vector at angle `theta`.
pub fn dir2(theta: f64) -> Vector {
    Vector { coords: vec![theta.cos(), theta.sin()] }
}

/// A convex polygon in R^2 with counterclockwise vertices.
///
/// Degenerate bodies are allowed: one vertex is a point, two vertices a
/// segment. Vertices are stored in strictly convex position (consecutive
/// collinear vertices removed, near-duplicates merged at [`MERGE_TOL`]).
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Vector>,
}

impl ConvexPolygon {
    /// Convex hull of a point cloud (monotone chain).
    pub fn from_points(points: &[Vector]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyBody);
        }
        for p in points {
            if p.dim() != 2 {
                return Err(Error::DimMismatch { expected: 2, got: p.dim() });
            }
        }
        let mut pts: Vec<Vector> = Vec::new();
        for p in points {
            if !pts.iter().any(|q| q.dist2(p) <= MERGE_TOL) {
                pts.push(p.clone());
            }
        }
        pts.sort_by(|a, b| a.x().total_cmp(&b.x()).then(a.y().total_cmp(&b.y())));
        if pts.len() <= 2 {
            return Ok(Self { vertices: pts });
        }
        let mut lower: Vec<Vector> = Vec::new();
        for p in &pts {
            while lower.len() >= 2
                && orient2d(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0.0
            {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<Vector> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2
                && orient2d(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0.0
            {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() < 2 {
            // all points collinear and merged down to the extremes
            return Ok(Self { vertices: pts });
        }
        Ok(Self { vertices: lower })
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2
    }

    /// Support function h(u) = max over the polygon of <u, x>.
    pub fn support(&self, u: &DualVector) -> f64 {
        self.vertices
            .iter()
            .map(|v| u.pair(v))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest coordinate magnitude; used for relative tolerances.
    pub fn scale_hint(&self) -> f64 {
        self.vertices
            .iter()
            .flat_map(|v| v.coords().iter())
            .fold(0.0f64, |m, c| m.max(c.abs()))
    }

    /// Outward unit edge normals (empty for a point, two for a segment).
    pub fn edge_normals(&self) -> Vec<DualVector> {
        match self.vertices.len() {
            0 | 1 => Vec::new(),
            2 => {
                let e = self.vertices[1].sub(&self.vertices[0]);
                let n = rot90(&e);
                let len = n.norm2();
                vec![
                    DualVector::from_vector(n.scale(1.0 / len)),
                    DualVector::from_vector(n.scale(-1.0 / len)),
                ]
            }
            l => (0..l)
                .map(|i| {
                    let e = self.vertices[(i + 1) % l].sub(&self.vertices[i]);
                    // outward normal of a CCW edge is the clockwise rotation
                    let n = rot90(&e).neg();
                    let len = n.norm2();
                    DualVector::from_vector(n.scale(1.0 / len))
                })
                .collect(),
        }
    }

    /// Euclidean distance from a point to the polygon; 0 inside.
    pub fn distance_to_point(&self, p: &Vector) -> f64 {
        match self.vertices.len() {
            1 => p.dist2(&self.vertices[0]),
            2 => point_segment_distance(p, &self.vertices[0], &self.vertices[1]),
            l => {
                let inside = (0..l).all(|i| {
                    orient2d(&self.vertices[i], &self.vertices[(i + 1) % l], p) >= 0.0
                });
                if inside {
                    return 0.0;
                }
                (0..l)
                    .map(|i| {
                        point_segment_distance(p, &self.vertices[i], &self.vertices[(i + 1) % l])
                    })
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }
}

/// Distance from `p` to the segment [a, b].
pub fn point_segment_distance(p: &Vector, a: &Vector, b: &Vector) -> f64 {
    let ab = b.sub(a);
    let len2 = ab.dot(&ab);
    if len2 == 0.0 {
        return p.dist2(a);
    }
    let t = (p.sub(a).dot(&ab) / len2).clamp(0.0, 1.0);
    p.dist2(&a.add(&ab.scale(t)))
}

/// sup over points of `a` of the distance to `b`; zero iff a is contained in b.
///
/// The supremum over a convex polygon of the (convex) distance function to a
/// convex set is attained at a vertex.
pub fn directed_hausdorff(a: &ConvexPolygon, b: &ConvexPolygon) -> f64 {
    a.vertices()
        .iter()
        .map(|v| b.distance_to_point(v))
        .fold(0.0f64, f64::max)
}

/// Symmetric Hausdorff distance between two convex polygons.
pub fn hausdorff_distance(a: &ConvexPolygon, b: &ConvexPolygon) -> f64 {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}
