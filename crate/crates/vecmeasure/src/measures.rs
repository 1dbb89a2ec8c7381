//! Finitely-atomic vector measures on X = R^m with values in V = R^d:
//! total variation, projected variations, ranges and measure arithmetic.

use crate::error::{Error, Result};
use crate::geometry::{DualVector, Vector};
use crate::norms::Seminorm;
use crate::zonotopes::Zonotope;

/// One atom v * delta_x.
#[derive(Clone, Debug, PartialEq)]
pub struct Atom {
    pub site: Vec<f64>,
    pub value: Vector,
}

/// A purely atomic vector measure mu = sum_i v_i delta_{x_i}.
///
/// Canonical form: atoms at equal sites (exact coordinate equality, after
/// normalizing -0.0) are merged by vector addition, exactly-zero values are
/// dropped, atoms are sorted by site.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorMeasure {
    space_dim: usize,
    dim: usize,
    atoms: Vec<Atom>,
}

impl VectorMeasure {
    pub fn new(space_dim: usize, dim: usize, atoms: Vec<(Vec<f64>, Vector)>) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::BadDim(dim));
        }
        let mut merged: Vec<Atom> = Vec::new();
        for (site, value) in atoms {
            if site.len() != space_dim {
                return Err(Error::DimMismatch { expected: space_dim, got: site.len() });
            }
            if site.iter().any(|c| !c.is_finite()) {
                return Err(Error::NonFinite);
            }
            if value.dim() != dim {
                return Err(Error::DimMismatch { expected: dim, got: value.dim() });
            }
            let site: Vec<f64> = site.iter().map(|c| if *c == 0.0 { 0.0 } else { *c }).collect();
            if let Some(a) = merged.iter_mut().find(|a| a.site == site) {
                a.value = a.value.add(&value);
            } else {
                merged.push(Atom { site, value });
            }
        }
        merged.retain(|a| !a.value.is_zero());
        merged.sort_by(|a, b| {
            a.site
                .iter()
                .zip(&b.site)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| *o != std::cmp::Ordering::Equal)
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        Ok(Self { space_dim, dim, atoms: merged })
    }

    pub fn zero(space_dim: usize, dim: usize) -> Self {
        Self { space_dim, dim, atoms: Vec::new() }
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    fn atoms_in<'a>(&'a self, set: &'a MeasurableSet) -> impl Iterator<Item = &'a Atom> {
        self.atoms.iter().filter(move |a| set.contains(&a.site))
    }

    /// mu(A): the vector sum over atoms in A.
    pub fn evaluate(&self, set: &MeasurableSet) -> Vector {
        self.atoms_in(set)
            .fold(Vector::zeros(self.dim), |acc, a| acc.add(&a.value))
    }

    /// |mu|(A): for atomic measures the partition supremum is attained by
    /// singleton-atom partitions, so this is the sum of atom-value norms.
    pub fn total_variation(&self, set: &MeasurableSet, n: &Seminorm) -> Result<f64> {
        let mut total = 0.0;
        for a in self.atoms_in(set) {
            total += n.eval(&a.value)?;
        }
        Ok(total)
    }

    /// Literal supremum over all set partitions of the atoms in A
    /// (Bell-number enumeration); reference oracle for
    /// [`Self::total_variation`].
    pub fn tv_bruteforce_oracle(&self, set: &MeasurableSet, n: &Seminorm) -> Result<f64> {
        const CAP: usize = 10;
        let values: Vec<&Vector> = self.atoms_in(set).map(|a| &a.value).collect();
        if values.len() > CAP {
            return Err(Error::TooManyAtoms(values.len(), CAP));
        }
        if values.is_empty() {
            return Ok(0.0);
        }
        let mut best = 0.0f64;
        let mut blocks: Vec<Vector> = Vec::new();
        enumerate_partitions(&values, 0, &mut blocks, n, &mut best)?;
        Ok(best)
    }

    /// Total variation of the scalar measure <eta, mu> on A.
    pub fn projected_variation(&self, set: &MeasurableSet, eta: &DualVector) -> Result<f64> {
        if eta.dim() != self.dim {
            return Err(Error::DimMismatch { expected: self.dim, got: eta.dim() });
        }
        Ok(self.atoms_in(set).map(|a| eta.pair(&a.value).abs()).sum())
    }

    /// range_A(mu): the zonotope generated by the atom values in A.
    pub fn range(&self, set: &MeasurableSet) -> Result<Zonotope> {
        Zonotope::from_generators(
            self.atoms_in(set).map(|a| a.value.clone()).collect(),
            self.dim,
        )
    }

    /// Image measure T o mu: same sites, values mapped by T.
    pub fn pushforward(&self, map: &LinearMap) -> Result<VectorMeasure> {
        if map.in_dim() != self.dim {
            return Err(Error::DimMismatch { expected: self.dim, got: map.in_dim() });
        }
        VectorMeasure::new(
            self.space_dim,
            map.out_dim(),
            self.atoms
                .iter()
                .map(|a| (a.site.clone(), map.apply(&a.value)))
                .collect(),
        )
    }

    pub fn add(&self, other: &VectorMeasure) -> Result<VectorMeasure> {
        if other.space_dim != self.space_dim {
            return Err(Error::DimMismatch { expected: self.space_dim, got: other.space_dim });
        }
        if other.dim != self.dim {
            return Err(Error::DimMismatch { expected: self.dim, got: other.dim });
        }
        VectorMeasure::new(
            self.space_dim,
            self.dim,
            self.atoms
                .iter()
                .chain(&other.atoms)
                .map(|a| (a.site.clone(), a.value.clone()))
                .collect(),
        )
    }

    pub fn scale(&self, lambda: f64) -> Result<VectorMeasure> {
        VectorMeasure::new(
            self.space_dim,
            self.dim,
            self.atoms
                .iter()
                .map(|a| (a.site.clone(), a.value.scale(lambda)))
                .collect(),
        )
    }

    pub fn restrict(&self, set: &MeasurableSet) -> Result<VectorMeasure> {
        VectorMeasure::new(
            self.space_dim,
            self.dim,
            self.atoms_in(set)
                .map(|a| (a.site.clone(), a.value.clone()))
                .collect(),
        )
    }

    /// Per-atom maximizing dual vectors: |eta_i|_{V'} = 1 and
    /// <eta_i, v_i> = |v_i|_V, so the certified value equals the total
    /// variation.
    pub fn dual_certificate(
        &self,
        set: &MeasurableSet,
        n: &Seminorm,
    ) -> Result<(Vec<DualVector>, f64)> {
        let mut certs = Vec::new();
        let mut value = 0.0;
        for (idx, a) in self.atoms_in(set).enumerate() {
            let nv = n.eval(&a.value)?;
            if nv == 0.0 {
                return Err(Error::NoCertificate { atom: idx });
            }
            let eta = norming_functional(n, &a.value, nv)?;
            value += eta.pair(&a.value);
            certs.push(eta);
        }
        Ok((certs, value))
    }
}

/// eta with <eta, v> = |v|_V and dual norm 1; per-kind closed forms
/// (subgradient of the seminorm at v).
fn norming_functional(n: &Seminorm, v: &Vector, norm_v: f64) -> Result<DualVector> {
    let coords = match n {
        Seminorm::Euclidean => v.scale(1.0 / norm_v).coords().to_vec(),
        Seminorm::Lp { p, weights } => {
            let w = |i: usize| weights.as_ref().map_or(1.0, |w| w[i]);
            if *p == 1.0 {
                v.coords()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| w(i) * sign(*c))
                    .collect()
            } else if p.is_infinite() {
                let (i_max, _) = v
                    .coords()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (i, w(i) * c.abs()))
                    .max_by(|a, b| a.1.total_cmp(&b.1))
                    .unwrap();
                let mut out = vec![0.0; v.dim()];
                out[i_max] = w(i_max) * sign(v.coords()[i_max]);
                out
            } else {
                v.coords()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        w(i) * sign(*c) * (w(i) * c.abs() / norm_v).powf(*p - 1.0)
                    })
                    .collect()
            }
        }
        Seminorm::Polygonal { generators } => {
            let mut out = vec![0.0; v.dim()];
            for g in generators {
                let s = sign(g.iter().zip(v.coords()).map(|(a, b)| a * b).sum::<f64>());
                for (o, c) in out.iter_mut().zip(g) {
                    *o += s * c;
                }
            }
            out
        }
        Seminorm::SumOfCircles => {
            let c = v.coords();
            let mut out = vec![0.0; 3];
            for &(i, j) in &[(0usize, 1usize), (0, 2), (1, 2)] {
                let r = (c[i] * c[i] + c[j] * c[j]).sqrt();
                if r > 0.0 {
                    out[i] += c[i] / r;
                    out[j] += c[j] / r;
                }
            }
            out
        }
    };
    DualVector::new(coords)
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

fn enumerate_partitions(
    values: &[&Vector],
    next: usize,
    blocks: &mut Vec<Vector>,
    n: &Seminorm,
    best: &mut f64,
) -> Result<()> {
    if next == values.len() {
        let mut total = 0.0;
        for b in blocks.iter() {
            total += n.eval(b)?;
        }
        if total > *best {
            *best = total;
        }
        return Ok(());
    }
    for i in 0..blocks.len() {
        let saved = blocks[i].clone();
        blocks[i] = blocks[i].add(values[next]);
        enumerate_partitions(values, next + 1, blocks, n, best)?;
        blocks[i] = saved;
    }
    blocks.push(values[next].clone());
    enumerate_partitions(values, next + 1, blocks, n, best)?;
    blocks.pop();
    Ok(())
}

/// An axis-aligned closed box [lo, hi] in R^m.
#[derive(Clone, Debug, PartialEq)]
pub struct AxisBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

/// Measurable sets with decidable exact membership: everything, a finite
/// union of axis-aligned boxes, or an explicit site list.
#[derive(Clone, Debug, PartialEq)]
pub enum MeasurableSet {
    All,
    Boxes(Vec<AxisBox>),
    Sites(Vec<Vec<f64>>),
}

impl MeasurableSet {
    pub fn contains(&self, site: &[f64]) -> bool {
        match self {
            MeasurableSet::All => true,
            MeasurableSet::Boxes(boxes) => boxes.iter().any(|b| {
                site.iter()
                    .zip(b.lo.iter().zip(&b.hi))
                    .all(|(x, (lo, hi))| *lo <= *x && *x <= *hi)
            }),
            MeasurableSet::Sites(sites) => sites.iter().any(|s| {
                s.len() == site.len()
                    && s.iter().zip(site).all(|(a, b)| {
                        let a = if *a == 0.0 { 0.0 } else { *a };
                        let b = if *b == 0.0 { 0.0 } else { *b };
                        a == b
                    })
            }),
        }
    }
}

/// A linear map R^d -> R^d' given by its rows.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    rows: Vec<Vec<f64>>,
}

impl LinearMap {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(Error::Invalid("linear map rows must be nonempty and equal length".into()));
        }
        if rows.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows })
    }

    pub fn identity(d: usize) -> Self {
        Self {
            rows: (0..d)
                .map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
                .collect(),
        }
    }

    pub fn scaling(d: usize, s: f64) -> Self {
        Self {
            rows: (0..d)
                .map(|i| (0..d).map(|j| if i == j { s } else { 0.0 }).collect())
                .collect(),
        }
    }

    /// Rank-one projection v -> <eta, v> onto R.
    pub fn projection(eta: &DualVector) -> Self {
        Self { rows: vec![eta.coords().to_vec()] }
    }

    pub fn in_dim(&self) -> usize {
        self.rows[0].len()
    }

    pub fn out_dim(&self) -> usize {
        self.rows.len()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        Vector::new(
            self.rows
                .iter()
                .map(|r| r.iter().zip(v.coords()).map(|(a, b)| a * b).sum())
                .collect(),
        )
        .expect("finite map applied to finite vector")
    }

    /// The adjoint applied to a dual vector: T' eta = eta o T.
    pub fn adjoint_apply(&self, eta: &DualVector) -> DualVector {
        let mut out = vec![0.0; self.in_dim()];
        for (r, e) in self.rows.iter().zip(eta.coords()) {
            for (o, c) in out.iter_mut().zip(r) {
                *o += e * c;
            }
        }
        DualVector::new(out).expect("finite adjoint image")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize, d: usize) -> Vector {
        let mut c = vec![0.0; d];
        c[i] = 1.0;
        Vector::new(c).unwrap()
    }

    fn two_atom() -> VectorMeasure {
        VectorMeasure::new(
            1,
            2,
            vec![(vec![0.0], e(0, 2)), (vec![1.0], e(1, 2))],
        )
        .unwrap()
    }

    #[test]
    fn canonical_form_merges_and_drops() {
        let mu = VectorMeasure::new(
            1,
            2,
            vec![
                (vec![0.0], e(0, 2)),
                (vec![-0.0], e(1, 2)),
                (vec![1.0], e(0, 2)),
                (vec![1.0], e(0, 2).neg()),
            ],
        )
        .unwrap();
        assert_eq!(mu.atoms().len(), 1);
        assert_eq!(mu.atoms()[0].value, e(0, 2).add(&e(1, 2)));
    }

    #[test]
    fn tv_closed_forms() {
        let mu = two_atom();
        assert_eq!(mu.total_variation(&MeasurableSet::All, &Seminorm::lp(1.0)).unwrap(), 2.0);
        let zero = VectorMeasure::zero(1, 2);
        assert_eq!(zero.total_variation(&MeasurableSet::All, &Seminorm::Euclidean).unwrap(), 0.0);
        let single = VectorMeasure::new(
            1,
            2,
            vec![(vec![0.0], Vector::new(vec![3.0, 4.0]).unwrap())],
        )
        .unwrap();
        assert_eq!(single.total_variation(&MeasurableSet::All, &Seminorm::Euclidean).unwrap(), 5.0);
    }

    #[test]
    fn oracle_matches_and_respects_cancellation() {
        let mu = two_atom();
        let tv = mu.total_variation(&MeasurableSet::All, &Seminorm::lp(1.0)).unwrap();
        let oracle = mu.tv_bruteforce_oracle(&MeasurableSet::All, &Seminorm::lp(1.0)).unwrap();
        assert_eq!(tv, oracle);
        // atoms v and -v at distinct sites: grouping them would cancel
        let v = Vector::new(vec![2.0, 1.0]).unwrap();
        let mu = VectorMeasure::new(1, 2, vec![(vec![0.0], v.clone()), (vec![1.0], v.neg())])
            .unwrap();
        let oracle = mu.tv_bruteforce_oracle(&MeasurableSet::All, &Seminorm::Euclidean).unwrap();
        assert!((oracle - 2.0 * v.norm2()).abs() < 1e-15);
    }

    #[test]
    fn oracle_cap() {
        let atoms: Vec<_> = (0..11).map(|i| (vec![i as f64], e(0, 2))).collect();
        let mu = VectorMeasure::new(1, 2, atoms).unwrap();
        assert!(matches!(
            mu.tv_bruteforce_oracle(&MeasurableSet::All, &Seminorm::Euclidean),
            Err(Error::TooManyAtoms(11, 10))
        ));
    }

    #[test]
    fn projected_variation_examples() {
        let mu = two_atom();
        let eta = DualVector::new(vec![1.0, 1.0]).unwrap();
        assert_eq!(mu.projected_variation(&MeasurableSet::All, &eta).unwrap(), 2.0);
        let zero_eta = DualVector::new(vec![0.0, 0.0]).unwrap();
        assert_eq!(mu.projected_variation(&MeasurableSet::All, &zero_eta).unwrap(), 0.0);
        let v = Vector::new(vec![1.0, 0.0]).unwrap();
        let mu = VectorMeasure::new(1, 2, vec![(vec![0.0], v.clone()), (vec![1.0], v.neg())])
            .unwrap();
        let eta = DualVector::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(mu.projected_variation(&MeasurableSet::All, &eta).unwrap(), 2.0);
    }

    #[test]
    fn measure_arithmetic() {
        let mu = two_atom();
        let diff = mu.add(&mu.scale(-1.0).unwrap()).unwrap();
        assert!(diff.atoms().is_empty());
        let tv = mu.total_variation(&MeasurableSet::All, &Seminorm::Euclidean).unwrap();
        let tv_neg = mu
            .scale(-1.0)
            .unwrap()
            .total_variation(&MeasurableSet::All, &Seminorm::Euclidean)
            .unwrap();
        assert_eq!(tv, tv_neg);
        assert_eq!(mu.restrict(&MeasurableSet::All).unwrap(), mu);
    }

    #[test]
    fn restrict_by_box_and_sites() {
        let mu = two_atom();
        let left = MeasurableSet::Boxes(vec![AxisBox { lo: vec![-0.5], hi: vec![0.5] }]);
        assert_eq!(mu.restrict(&left).unwrap().atoms().len(), 1);
        let site = MeasurableSet::Sites(vec![vec![1.0]]);
        assert_eq!(mu.restrict(&site).unwrap().atoms().len(), 1);
        assert_eq!(
            mu.total_variation(&left, &Seminorm::Euclidean).unwrap()
                + mu.total_variation(&site, &Seminorm::Euclidean).unwrap(),
            mu.total_variation(&MeasurableSet::All, &Seminorm::Euclidean).unwrap()
        );
    }

    #[test]
    fn pushforward_identity_and_scaling() {
        let mu = two_atom();
        assert_eq!(mu.pushforward(&LinearMap::identity(2)).unwrap(), mu);
        let doubled = mu.pushforward(&LinearMap::scaling(2, 2.0)).unwrap();
        assert_eq!(
            doubled.total_variation(&MeasurableSet::All, &Seminorm::Euclidean).unwrap(),
            2.0 * mu.total_variation(&MeasurableSet::All, &Seminorm::Euclidean).unwrap()
        );
    }

    #[test]
    fn dual_certificate_attains_tv() {
        for n in [
            Seminorm::Euclidean,
            Seminorm::lp(1.0),
            Seminorm::lp(3.0),
            Seminorm::lp(f64::INFINITY),
            Seminorm::polygonal(vec![vec![1.0, 0.2], vec![-0.3, 1.0]]),
        ] {
            let mu = VectorMeasure::new(
                1,
                2,
                vec![
                    (vec![0.0], Vector::new(vec![0.7, -1.3]).unwrap()),
                    (vec![1.0], Vector::new(vec![-2.0, 0.4]).unwrap()),
                ],
            )
            .unwrap();
            let (certs, value) = mu.dual_certificate(&MeasurableSet::All, &n).unwrap();
            let tv = mu.total_variation(&MeasurableSet::All, &n).unwrap();
            assert!((value - tv).abs() < 1e-12 * tv, "kind {n:?}");
            for eta in &certs {
                let dual = n.dual_eval(eta).unwrap();
                assert!((dual - 1.0).abs() < 1e-9, "dual norm {dual} for {n:?}");
            }
        }
        let zero = VectorMeasure::zero(1, 2);
        let (certs, value) = zero.dual_certificate(&MeasurableSet::All, &Seminorm::Euclidean).unwrap();
        assert!(certs.is_empty());
        assert_eq!(value, 0.0);
    }
}
