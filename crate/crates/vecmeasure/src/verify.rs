//! Seeded randomized verification suites. Each suite exercises one block of
//! library invariants on reproducible random instances; failures dump the
//! offending instance as reusable JSON.
//!
//! The RNG is ChaCha8 (rand_chacha); a per-trial stream is derived from the
//! suite seed with a splitmix64 step, so reports are byte-identical for a
//! fixed configuration regardless of thread scheduling.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::convergence::{
    builtin_scenario, run_diagnostics, verdicts, BuiltinParams, Scenario, Verdict,
};
use crate::error::{Error, Result};
use crate::geometry::{hausdorff_distance, DualVector, Vector};
use crate::io::MeasureJson;
use crate::measures::{LinearMap, MeasurableSet, VectorMeasure};
use crate::norms::{zonal_euclidean, zonal_from_polygonal_2d, Seminorm, ZonalMeasure};
use crate::zonotopes::{
    contains_2d, mass_perimeter_identity_check, perimeter, vertices_2d, zonotope_perimeter,
};

pub const SUITES: [&str; 8] = [
    "tv-oracle",
    "perimeter-identity",
    "zonal-identity",
    "crofton",
    "monotonicity",
    "continuity-bound",
    "range-laws",
    "convergence-theorems",
];

// Suite tolerances, fixed from the invariants they check.
pub const TV_ORACLE_RTOL: f64 = 1e-12;
pub const PERIMETER_RTOL: f64 = 1e-9;
pub const ZONAL_EXACT_RTOL: f64 = 1e-12;
pub const ZONAL_EUCLID_RTOL: f64 = 1e-5;
pub const ZONAL_EUCLID_NODES: usize = 10_000;
pub const CROFTON_RTOL: f64 = 1e-12;
pub const MONOTONE_ATOL: f64 = 1e-12;
pub const STRICT_DH: f64 = 1e-6;
pub const CONTINUITY_ATOL: f64 = 1e-12;
pub const RANGE_LAW_ATOL: f64 = 1e-9;
pub const VERDICT_TOL: f64 = 1e-6;
pub const VERDICT_WINDOW: usize = 20;

#[derive(Clone, Debug, Serialize)]
pub struct CheckFailure {
    pub trial: usize,
    pub description: String,
    pub instance: serde_json::Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub tol: f64,
    pub checks_run: usize,
    pub failures: Vec<CheckFailure>,
    pub passed: bool,
}

fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ (trial as u64).wrapping_mul(0x100000001b3)))
}

pub fn rand_vector(rng: &mut ChaCha8Rng, d: usize, scale: f64) -> Vector {
    Vector::new((0..d).map(|_| rng.gen_range(-scale..scale)).collect()).unwrap()
}

pub fn rand_measure(
    rng: &mut ChaCha8Rng,
    space_dim: usize,
    d: usize,
    max_atoms: usize,
) -> VectorMeasure {
    let count = rng.gen_range(1..=max_atoms);
    let atoms = (0..count)
        .map(|_| {
            (
                (0..space_dim).map(|_| rng.gen_range(-3.0..3.0)).collect(),
                rand_vector(rng, d, 2.0),
            )
        })
        .collect();
    VectorMeasure::new(space_dim, d, atoms).unwrap()
}

pub fn rand_polygonal(rng: &mut ChaCha8Rng, d: usize) -> Seminorm {
    let count = rng.gen_range(2..=4);
    let mut gens: Vec<Vec<f64>> = Vec::with_capacity(count + 1);
    for _ in 0..count {
        loop {
            let g: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.5..1.5)).collect();
            if g.iter().map(|c| c * c).sum::<f64>().sqrt() > 0.3 {
                gens.push(g);
                break;
            }
        }
    }
    if d == 2 {
        // guarantee full rank so the polygonal seminorm is a norm
        let g0 = &gens[0];
        gens.push(vec![-g0[1], g0[0]]);
    }
    Seminorm::polygonal(gens)
}

pub fn rand_norm(rng: &mut ChaCha8Rng, d: usize) -> Seminorm {
    match rng.gen_range(0..4) {
        0 => Seminorm::Euclidean,
        1 => {
            let ps = [1.0, 1.5, 2.0, 3.0, 4.0, f64::INFINITY];
            Seminorm::lp(ps[rng.gen_range(0..ps.len())])
        }
        2 => Seminorm::Lp {
            p: [1.0, 2.0, 3.0][rng.gen_range(0..3)],
            weights: Some((0..d).map(|_| rng.gen_range(0.5..2.0)).collect()),
        },
        _ => rand_polygonal(rng, d),
    }
}

fn measure_instance(mu: &VectorMeasure, n: &Seminorm) -> serde_json::Value {
    json!({
        "measure": MeasureJson::from_measure(mu),
        "norm": n,
    })
}

fn rel_gap(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// One tv-oracle trial: closed-form total variation against the literal
/// partition supremum.
pub fn tv_oracle_trial(rng: &mut ChaCha8Rng, rtol: f64) -> std::result::Result<(), (String, serde_json::Value)> {
    let d = rng.gen_range(1..=3);
    let mu = rand_measure(rng, 1, d, 8);
    let n = rand_norm(rng, d);
    let tv = mu.total_variation(&MeasurableSet::All, &n).unwrap();
    let oracle = mu.tv_bruteforce_oracle(&MeasurableSet::All, &n).unwrap();
    if rel_gap(tv, oracle) > rtol {
        return Err((
            format!("total_variation {tv} != oracle {oracle}"),
            measure_instance(&mu, &n),
        ));
    }
    Ok(())
}

/// Transformations that preserve the range and therefore the mass: atom
/// splitting, permutation and collinear splitting.
pub fn rodriguez_invariance_trial(
    rng: &mut ChaCha8Rng,
    rtol: f64,
) -> std::result::Result<(), (String, serde_json::Value)> {
    let d = rng.gen_range(1..=3);
    let mu = rand_measure(rng, 1, d, 6);
    let n = rand_norm(rng, d);
    let tv = mu.total_variation(&MeasurableSet::All, &n).unwrap();
    // split every atom value v into v/2 + v/2 at two fresh sites
    let mut split_atoms = Vec::new();
    for (i, a) in mu.atoms().iter().enumerate() {
        let half = a.value.scale(0.5);
        split_atoms.push((vec![100.0 + 2.0 * i as f64], half.clone()));
        split_atoms.push((vec![101.0 + 2.0 * i as f64], half));
    }
    let split = VectorMeasure::new(1, d, split_atoms).unwrap();
    let tv_split = split.total_variation(&MeasurableSet::All, &n).unwrap();
    if rel_gap(tv, tv_split) > rtol {
        return Err((
            format!("atom splitting changed TV: {tv} -> {tv_split}"),
            measure_instance(&mu, &n),
        ));
    }
    // permute atoms (canonical form must make order irrelevant)
    let mut perm: Vec<_> = mu
        .atoms()
        .iter()
        .map(|a| (a.site.clone(), a.value.clone()))
        .collect();
    perm.reverse();
    let permuted = VectorMeasure::new(1, d, perm).unwrap();
    let tv_perm = permuted.total_variation(&MeasurableSet::All, &n).unwrap();
    if tv_perm != tv {
        return Err((
            format!("permutation changed TV: {tv} -> {tv_perm}"),
            measure_instance(&mu, &n),
        ));
    }
    // collinear split: one value v into alpha v and (1 - alpha) v
    let alpha = rng.gen_range(0.1..0.9);
    let mut collinear = Vec::new();
    for (i, a) in mu.atoms().iter().enumerate() {
        if i == 0 {
            collinear.push((vec![200.0], a.value.scale(alpha)));
            collinear.push((vec![201.0], a.value.scale(1.0 - alpha)));
        } else {
            collinear.push((a.site.clone(), a.value.clone()));
        }
    }
    let collinear = VectorMeasure::new(1, d, collinear).unwrap();
    let tv_col = collinear.total_variation(&MeasurableSet::All, &n).unwrap();
    if rel_gap(tv, tv_col) > rtol {
        return Err((
            format!("collinear split changed TV: {tv} -> {tv_col}"),
            measure_instance(&mu, &n),
        ));
    }
    Ok(())
}

pub fn perimeter_norm_family(rng: &mut ChaCha8Rng) -> Vec<Seminorm> {
    vec![
        Seminorm::Euclidean,
        Seminorm::lp(1.0),
        Seminorm::lp(4.0),
        rand_polygonal(rng, 2),
    ]
}

/// One perimeter trial: mass = half the range perimeter, and the zonotope
/// perimeter lemma Per = 2 sum |g_i|.
pub fn perimeter_trial(
    rng: &mut ChaCha8Rng,
    rtol: f64,
) -> std::result::Result<(), (String, serde_json::Value)> {
    let mu = rand_measure(rng, 1, 2, 50);
    for n in perimeter_norm_family(rng) {
        let rep = mass_perimeter_identity_check(&mu, &n).unwrap();
        if rep.rel_gap > rtol {
            return Err((
                format!(
                    "mass {} vs half-perimeter {} (rel gap {})",
                    rep.total_variation, rep.half_perimeter, rep.rel_gap
                ),
                measure_instance(&mu, &n),
            ));
        }
        let z = mu.range(&MeasurableSet::All).unwrap();
        let per = zonotope_perimeter(&z, &n).unwrap();
        let gen_sum: f64 = z.generators().iter().map(|g| n.eval(g).unwrap()).sum();
        if rel_gap(per, 2.0 * gen_sum) > rtol {
            return Err((
                format!("zonotope perimeter {per} vs 2*sum|g| {}", 2.0 * gen_sum),
                measure_instance(&mu, &n),
            ));
        }
    }
    Ok(())
}

fn zonal_mass(mu: &VectorMeasure, sigma: &ZonalMeasure) -> f64 {
    sigma
        .atoms()
        .iter()
        .map(|(eta, w)| w * mu.projected_variation(&MeasurableSet::All, eta).unwrap())
        .sum()
}

/// Mass representation |mu|(X) = sum_j w_j |<eta_j, mu>|(X).
pub fn zonal_identity_trial(
    rng: &mut ChaCha8Rng,
    euclid_sigma: &ZonalMeasure,
    rtol_exact: f64,
    rtol_euclid: f64,
) -> std::result::Result<(), (String, serde_json::Value)> {
    // polygonal norm with its exact sigma in d = 2
    let n = rand_polygonal(rng, 2);
    let mu = rand_measure(rng, 1, 2, 10);
    let sigma = zonal_from_polygonal_2d(&n).unwrap();
    let tv = mu.total_variation(&MeasurableSet::All, &n).unwrap();
    let zm = zonal_mass(&mu, &sigma);
    if rel_gap(tv, zm) > rtol_exact {
        return Err((
            format!("polygonal zonal mass {zm} vs TV {tv}"),
            measure_instance(&mu, &n),
        ));
    }
    // directly induced zonal norm in a random dimension
    let d = rng.gen_range(1..=3);
    let atoms = (0..rng.gen_range(1..=4))
        .map(|_| {
            (
                DualVector::from_vector(rand_vector(rng, d, 1.5)),
                rng.gen_range(0.1..2.0),
            )
        })
        .filter(|(e, _)| !e.as_vector().is_zero())
        .collect::<Vec<_>>();
    if !atoms.is_empty() {
        let sigma = ZonalMeasure::new(atoms).unwrap();
        let induced = sigma.induced_seminorm();
        let mu = rand_measure(rng, 1, d, 10);
        let tv = mu.total_variation(&MeasurableSet::All, &induced).unwrap();
        let zm = zonal_mass(&mu, &sigma);
        if rel_gap(tv, zm) > rtol_exact {
            return Err((
                format!("induced zonal mass {zm} vs TV {tv} in d={d}"),
                measure_instance(&mu, &induced),
            ));
        }
    }
    // Euclidean d = 2 through the quadrature sigma
    let mu = rand_measure(rng, 1, 2, 10);
    let tv = mu
        .total_variation(&MeasurableSet::All, &Seminorm::Euclidean)
        .unwrap();
    let zm = zonal_mass(&mu, euclid_sigma);
    if rel_gap(tv, zm) > rtol_euclid {
        return Err((
            format!("euclidean quadrature zonal mass {zm} vs TV {tv}"),
            measure_instance(&mu, &Seminorm::Euclidean),
        ));
    }
    Ok(())
}

/// Crofton-type formula against the edge-sum perimeter for exact discrete
/// sigma.
pub fn crofton_trial(
    rng: &mut ChaCha8Rng,
    rtol: f64,
) -> std::result::Result<(), (String, serde_json::Value)> {
    let n = rand_polygonal(rng, 2);
    let sigma = zonal_from_polygonal_2d(&n).unwrap();
    let mu = rand_measure(rng, 1, 2, 12);
    let poly = vertices_2d(&mu.range(&MeasurableSet::All).unwrap()).unwrap();
    let per = perimeter(&poly, &n).unwrap();
    let cro = crate::zonotopes::crofton_perimeter(&poly, &sigma).unwrap();
    if rel_gap(per, cro) > rtol {
        return Err((
            format!("crofton {cro} vs perimeter {per}"),
            measure_instance(&mu, &n),
        ));
    }
    Ok(())
}

/// Mass monotonicity under range containment, with the Euclidean strict
/// case.
pub fn monotonicity_trial(
    rng: &mut ChaCha8Rng,
    atol: f64,
) -> std::result::Result<(), (String, serde_json::Value)> {
    for n in [Seminorm::Euclidean, Seminorm::lp(3.0), rand_polygonal(rng, 2)] {
        let mu = rand_measure(rng, 1, 2, 10);
        let shrunk = mu
            .atoms()
            .iter()
            .map(|a| (a.site.clone(), a.value.scale(rng.gen_range(0.0..1.0))))
            .collect();
        let nu = VectorMeasure::new(1, 2, shrunk).unwrap();
        let outer = mu.range(&MeasurableSet::All).unwrap();
        let inner = nu.range(&MeasurableSet::All).unwrap();
        if !contains_2d(&outer, &inner).unwrap() {
            return Err((
                "scaled-generator range not contained".into(),
                measure_instance(&mu, &n),
            ));
        }
        let tv_mu = mu.total_variation(&MeasurableSet::All, &n).unwrap();
        let tv_nu = nu.total_variation(&MeasurableSet::All, &n).unwrap();
        if tv_nu > tv_mu + atol {
            return Err((
                format!("containment with TV(nu) {tv_nu} > TV(mu) {tv_mu}"),
                measure_instance(&mu, &n),
            ));
        }
        if matches!(n, Seminorm::Euclidean) {
            let dh = hausdorff_distance(
                &vertices_2d(&inner).unwrap(),
                &vertices_2d(&outer).unwrap(),
            );
            if dh > STRICT_DH && tv_mu - tv_nu <= 0.0 {
                return Err((
                    format!("strict monotonicity violated at d_H {dh}"),
                    measure_instance(&mu, &n),
                ));
            }
        }
        // independent pair: the ordering must hold whenever containment does
        let other = rand_measure(rng, 1, 2, 6);
        let other_range = other.range(&MeasurableSet::All).unwrap();
        if contains_2d(&outer, &other_range).unwrap() {
            let tv_other = other.total_variation(&MeasurableSet::All, &n).unwrap();
            if tv_other > tv_mu + atol {
                return Err((
                    format!("independent containment with TV {tv_other} > {tv_mu}"),
                    measure_instance(&other, &n),
                ));
            }
        }
    }
    Ok(())
}

/// Hausdorff-Lipschitz continuity of the range in the measure.
pub fn continuity_trial(
    rng: &mut ChaCha8Rng,
    atol: f64,
) -> std::result::Result<(), (String, serde_json::Value)> {
    let sites: Vec<Vec<f64>> = (0..rng.gen_range(1..=8))
        .map(|_| vec![rng.gen_range(-3.0..3.0)])
        .collect();
    let mk = |rng: &mut ChaCha8Rng| {
        VectorMeasure::new(
            1,
            2,
            sites
                .iter()
                .map(|s| (s.clone(), rand_vector(rng, 2, 2.0)))
                .collect(),
        )
        .unwrap()
    };
    let mu = mk(rng);
    let nu = mk(rng);
    let dh = hausdorff_distance(
        &vertices_2d(&mu.range(&MeasurableSet::All).unwrap()).unwrap(),
        &vertices_2d(&nu.range(&MeasurableSet::All).unwrap()).unwrap(),
    );
    let diff_tv = nu
        .add(&mu.scale(-1.0).unwrap())
        .unwrap()
        .total_variation(&MeasurableSet::All, &Seminorm::Euclidean)
        .unwrap();
    if dh > diff_tv + atol {
        return Err((
            format!("d_H {dh} exceeds |nu - mu| {diff_tv}"),
            json!({
                "mu": MeasureJson::from_measure(&mu),
                "nu": MeasureJson::from_measure(&nu),
            }),
        ));
    }
    Ok(())
}

/// Range calculus: symmetry about mu(X)/2, sublinearity, additivity over a
/// disjoint split, pushforward linearity and the 1-D diameter identity.
pub fn range_laws_trial(
    rng: &mut ChaCha8Rng,
    atol: f64,
) -> std::result::Result<(), (String, serde_json::Value)> {
    let mu = rand_measure(rng, 1, 2, 10);
    let total = mu.evaluate(&MeasurableSet::All);
    let z = mu.range(&MeasurableSet::All).unwrap();
    for k in 0..16 {
        let u = DualVector::from_vector(crate::geometry::dir2(
            std::f64::consts::TAU * (k as f64 + 0.3) / 16.0,
        ));
        // symmetry: h(u) - <u, mu(X)> = h(-u)
        let lhs = z.support(&u).unwrap() - u.pair(&total);
        let rhs = z.support(&u.neg()).unwrap();
        if (lhs - rhs).abs() > atol {
            return Err((
                format!("range symmetry broken: {lhs} vs {rhs}"),
                measure_instance(&mu, &Seminorm::Euclidean),
            ));
        }
    }
    let nu = rand_measure(rng, 1, 2, 10);
    let sum = mu.add(&nu).unwrap();
    let z_nu = nu.range(&MeasurableSet::All).unwrap();
    let z_sum = sum.range(&MeasurableSet::All).unwrap();
    for k in 0..16 {
        let u = DualVector::from_vector(crate::geometry::dir2(
            std::f64::consts::TAU * (k as f64 + 0.7) / 16.0,
        ));
        if z_sum.support(&u).unwrap() > z.support(&u).unwrap() + z_nu.support(&u).unwrap() + atol {
            return Err((
                "range sublinearity broken".into(),
                measure_instance(&mu, &Seminorm::Euclidean),
            ));
        }
    }
    // additivity over a disjoint split of X
    let left = MeasurableSet::Boxes(vec![crate::measures::AxisBox {
        lo: vec![-10.0],
        hi: vec![0.0],
    }]);
    let right = MeasurableSet::Boxes(vec![crate::measures::AxisBox {
        lo: vec![f64::from_bits(0.0f64.to_bits() + 1)],
        hi: vec![10.0],
    }]);
    let z_left = mu.range(&left).unwrap();
    let z_right = mu.range(&right).unwrap();
    let z_joined = crate::zonotopes::minkowski_sum(&z_left, &z_right).unwrap();
    for k in 0..16 {
        let u = DualVector::from_vector(crate::geometry::dir2(
            std::f64::consts::TAU * (k as f64 + 0.1) / 16.0,
        ));
        if (z_joined.support(&u).unwrap() - z.support(&u).unwrap()).abs() > atol {
            return Err((
                "range additivity over disjoint sets broken".into(),
                measure_instance(&mu, &Seminorm::Euclidean),
            ));
        }
    }
    // pushforward linearity through the adjoint identity
    let map = LinearMap::new(vec![
        vec![rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)],
        vec![rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)],
    ])
    .unwrap();
    let pushed = mu.pushforward(&map).unwrap().range(&MeasurableSet::All).unwrap();
    for k in 0..16 {
        let u = DualVector::from_vector(crate::geometry::dir2(
            std::f64::consts::TAU * (k as f64 + 0.9) / 16.0,
        ));
        let lhs = pushed.support(&u).unwrap();
        let rhs = z.support(&map.adjoint_apply(&u)).unwrap();
        if (lhs - rhs).abs() > atol * (1.0 + lhs.abs().max(rhs.abs())) {
            return Err((
                format!("pushforward linearity broken: {lhs} vs {rhs}"),
                measure_instance(&mu, &Seminorm::Euclidean),
            ));
        }
    }
    // 1-D: TV = diam(range)
    let mu1 = rand_measure(rng, 1, 1, 8);
    let tv = mu1
        .total_variation(&MeasurableSet::All, &Seminorm::Euclidean)
        .unwrap();
    let z1 = mu1.range(&MeasurableSet::All).unwrap();
    let plus = DualVector::new(vec![1.0]).unwrap();
    let diam = z1.support(&plus).unwrap() + z1.support(&plus.neg()).unwrap();
    if (tv - diam).abs() > atol * (1.0 + tv) {
        return Err((
            format!("1-D identity broken: TV {tv} vs diam {diam}"),
            measure_instance(&mu1, &Seminorm::Euclidean),
        ));
    }
    Ok(())
}

/// A same-site sequence mu_n = mu + p/n converging strictly and in range.
pub fn perturbation_scenario(rng: &mut ChaCha8Rng, len: usize) -> Scenario {
    let base = rand_measure(rng, 1, 2, 5);
    let perturbations: Vec<Vector> = base
        .atoms()
        .iter()
        .map(|_| rand_vector(rng, 2, 1e-5))
        .collect();
    let sequence = (1..=len)
        .map(|n| {
            VectorMeasure::new(
                1,
                2,
                base.atoms()
                    .iter()
                    .zip(&perturbations)
                    .map(|(a, p)| (a.site.clone(), a.value.add(&p.scale(1.0 / n as f64))))
                    .collect(),
            )
            .unwrap()
        })
        .collect();
    Scenario {
        name: "perturbation".into(),
        norm: Seminorm::Euclidean,
        sequence,
        limit: base,
    }
}

fn scenario_check(
    s: &Scenario,
    expect_strict: Verdict,
    expect_range: Verdict,
) -> std::result::Result<(), (String, serde_json::Value)> {
    let report = run_diagnostics(s).map_err(|e| (e.to_string(), json!(null)))?;
    let v = verdicts(&report, VERDICT_WINDOW, VERDICT_TOL);
    if v.strict != expect_strict || v.range != expect_range {
        return Err((
            format!(
                "scenario {}: verdicts strict={:?} range={:?}, expected strict={:?} range={:?}",
                s.name, v.strict, v.range, expect_strict, expect_range
            ),
            json!({"scenario": s.name}),
        ));
    }
    // pointwise-projection corollary: the projected verdict tracks range
    if v.projected != v.range {
        return Err((
            format!(
                "scenario {}: projected verdict {:?} disagrees with range {:?}",
                s.name, v.projected, v.range
            ),
            json!({"scenario": s.name}),
        ));
    }
    Ok(())
}

/// Scenario-level theorem checks: the non-strictly-convex counterexample,
/// the strictly convex equivalence, and randomized perturbation runs.
pub fn convergence_theorem_checks(
    seed: u64,
    randomized_runs: usize,
) -> Vec<(String, serde_json::Value)> {
    let mut failures = Vec::new();
    let l1 = builtin_scenario("dirac_split", &BuiltinParams::default(), Seminorm::lp(1.0), 100)
        .unwrap();
    if let Err(f) = (|| {
        let report = run_diagnostics(&l1).map_err(|e| (e.to_string(), json!(null)))?;
        for row in &report.rows {
            if row.mass_gap != 0.0 {
                return Err((
                    format!("dirac_split l1: mass gap {} at n={}", row.mass_gap, row.index),
                    json!(null),
                ));
            }
            if (row.range_hausdorff - std::f64::consts::FRAC_1_SQRT_2).abs() > 1e-12 {
                return Err((
                    format!("dirac_split l1: range d_H {} at n={}", row.range_hausdorff, row.index),
                    json!(null),
                ));
            }
        }
        let v = verdicts(&report, VERDICT_WINDOW, VERDICT_TOL);
        if v.strict != Verdict::Converging || v.range != Verdict::NotConverging {
            return Err((
                format!("dirac_split l1 verdicts: strict={:?} range={:?}", v.strict, v.range),
                json!(null),
            ));
        }
        Ok(())
    })() {
        failures.push(f);
    }
    let euclid =
        builtin_scenario("dirac_split", &BuiltinParams::default(), Seminorm::Euclidean, 100)
            .unwrap();
    if let Err(f) = scenario_check(&euclid, Verdict::NotConverging, Verdict::NotConverging) {
        failures.push(f);
    }
    let merge =
        builtin_scenario("aligned_merge", &BuiltinParams::default(), Seminorm::Euclidean, 100)
            .unwrap();
    if let Err(f) = scenario_check(&merge, Verdict::Converging, Verdict::Converging) {
        failures.push(f);
    }
    for t in 0..randomized_runs {
        let mut rng = trial_rng(seed, 1_000_000 + t);
        let s = perturbation_scenario(&mut rng, 100);
        if let Err(f) = scenario_check(&s, Verdict::Converging, Verdict::Converging) {
            failures.push(f);
        }
    }
    failures
}

fn run_trials<F>(seed: u64, trials: usize, f: F) -> Vec<CheckFailure>
where
    F: Fn(&mut ChaCha8Rng) -> std::result::Result<(), (String, serde_json::Value)> + Sync,
{
    (0..trials)
        .into_par_iter()
        .filter_map(|t| {
            let mut rng = trial_rng(seed, t);
            f(&mut rng).err().map(|(description, instance)| CheckFailure {
                trial: t,
                description,
                instance,
            })
        })
        .collect()
}

/// Runs one named suite. `tol` overrides the suite's headline tolerance.
pub fn run_suite(
    name: &str,
    seed: u64,
    trials: usize,
    tol: Option<f64>,
) -> Result<SuiteReport> {
    let (effective_tol, failures, checks_run) = match name {
        "tv-oracle" => {
            let rtol = tol.unwrap_or(TV_ORACLE_RTOL);
            let mut failures = run_trials(seed, trials, |rng| tv_oracle_trial(rng, rtol));
            failures.extend(run_trials(seed ^ 0xabcd, trials, |rng| {
                rodriguez_invariance_trial(rng, rtol)
            }));
            (rtol, failures, 2 * trials)
        }
        "perimeter-identity" => {
            let rtol = tol.unwrap_or(PERIMETER_RTOL);
            (rtol, run_trials(seed, trials, |rng| perimeter_trial(rng, rtol)), trials)
        }
        "zonal-identity" => {
            let rtol = tol.unwrap_or(ZONAL_EXACT_RTOL);
            let (euclid_sigma, _) = zonal_euclidean(2, ZONAL_EUCLID_NODES)?;
            let failures = run_trials(seed, trials, |rng| {
                zonal_identity_trial(rng, &euclid_sigma, rtol, ZONAL_EUCLID_RTOL)
            });
            (rtol, failures, trials)
        }
        "crofton" => {
            let rtol = tol.unwrap_or(CROFTON_RTOL);
            (rtol, run_trials(seed, trials, |rng| crofton_trial(rng, rtol)), trials)
        }
        "monotonicity" => {
            let atol = tol.unwrap_or(MONOTONE_ATOL);
            (atol, run_trials(seed, trials, |rng| monotonicity_trial(rng, atol)), trials)
        }
        "continuity-bound" => {
            let atol = tol.unwrap_or(CONTINUITY_ATOL);
            (atol, run_trials(seed, trials, |rng| continuity_trial(rng, atol)), trials)
        }
        "range-laws" => {
            let atol = tol.unwrap_or(RANGE_LAW_ATOL);
            (atol, run_trials(seed, trials, |rng| range_laws_trial(rng, atol)), trials)
        }
        "convergence-theorems" => {
            let t = tol.unwrap_or(VERDICT_TOL);
            let runs = trials.min(20);
            let failures = convergence_theorem_checks(seed, runs)
                .into_iter()
                .enumerate()
                .map(|(i, (description, instance))| CheckFailure {
                    trial: i,
                    description,
                    instance,
                })
                .collect();
            (t, failures, 3 + runs)
        }
        other => return Err(Error::Invalid(format!("unknown suite: {other}"))),
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        seed,
        trials,
        tol: effective_tol,
        passed: failures.is_empty(),
        checks_run,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_smoke() {
        for suite in SUITES {
            let trials = if suite == "convergence-theorems" { 3 } else { 40 };
            let rep = run_suite(suite, 42, trials, None).unwrap();
            assert!(rep.passed, "suite {suite} failed: {:?}", rep.failures.first());
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = serde_json::to_vec(&run_suite("tv-oracle", 7, 25, None).unwrap()).unwrap();
        let b = serde_json::to_vec(&run_suite("tv-oracle", 7, 25, None).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
