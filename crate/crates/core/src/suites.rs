//! Named invariant suites. Each suite draws seeded inputs, calls library
//! operations and records, per property, how many checks failed and the
//! largest residual seen. Reports render deterministically.

use std::fmt;

use rand::Rng;

use crate::alignment::Alignment;
use crate::error::{Error, Result};
use crate::geometry::{scalar_mult, GraphSpace, MeanOptions};
use crate::graph::AttributedGraph;
use crate::group::{is_ordinary, isotropy_group, orbit, OrderGuard};
use crate::kernel::{edit_kernel, kernel_trick_metric, mcs_kernel, EditConfig, EditScore, MorphismClass};
use crate::sampling::{random_permutation, relabel, seeded_rng, unit_catalog, AttrDist, GraphSampler};

pub const SUITES: [&str; 8] = ["metric", "cauchy-schwarz", "homogeneity", "wgrt", "cone", "mcs", "mean", "ordinary"];

const SCALARS: [f64; 3] = [0.5, 2.0, 7.0];

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyResult {
    pub name: String,
    pub checked: usize,
    pub failures: usize,
    pub max_residual: Option<f64>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub properties: Vec<PropertyResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyResult::passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} trials {} seed {} tol {:e}", self.suite, self.trials, self.seed, self.tol)?;
        for p in &self.properties {
            write!(
                f,
                "[{}] {}: {}/{} failed",
                if p.passed() { "PASS" } else { "FAIL" },
                p.name,
                p.failures,
                p.checked
            )?;
            if let Some(r) = p.max_residual {
                write!(f, ", max residual {r:.3e}")?;
            }
            writeln!(f)?;
        }
        write!(f, "{}", if self.passed() { "all properties passed" } else { "some properties failed" })
    }
}

struct Tally {
    name: &'static str,
    checked: usize,
    failures: usize,
    max_residual: Option<f64>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            checked: 0,
            failures: 0,
            max_residual: None,
        }
    }

    /// Records a nonnegative residual that must not exceed `bound`.
    fn residual(&mut self, r: f64, bound: f64) {
        self.checked += 1;
        self.max_residual = Some(self.max_residual.map_or(r, |m| m.max(r)));
        if !(r <= bound) {
            self.failures += 1;
        }
    }

    fn flag(&mut self, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
        }
    }

    fn finish(self) -> PropertyResult {
        PropertyResult {
            name: self.name.to_string(),
            checked: self.checked,
            failures: self.failures,
            max_residual: self.max_residual,
        }
    }
}

/// Runs the named suite. `tol` bounds every floating-point residual.
pub fn run_suite(name: &str, trials: usize, seed: u64, tol: f64) -> Result<SuiteReport> {
    let properties = match name {
        "metric" => metric(trials, seed, tol)?,
        "cauchy-schwarz" => cauchy_schwarz(trials, seed, tol)?,
        "homogeneity" => homogeneity(trials, seed, tol)?,
        "wgrt" => wgrt(trials, seed, tol)?,
        "cone" => cone(trials, seed, tol)?,
        "mcs" => mcs()?,
        "mean" => mean(trials, seed, tol)?,
        "ordinary" => ordinary(trials, seed)?,
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        trials,
        seed,
        tol,
        properties,
    })
}

fn integer_sampler() -> GraphSampler {
    GraphSampler::default()
}

fn gaussian_sampler() -> GraphSampler {
    GraphSampler::default().with_attrs(AttrDist::Gaussian { scale: 1.0 })
}

fn metric(trials: usize, seed: u64, tol: f64) -> Result<Vec<PropertyResult>> {
    let mut rng = seeded_rng(seed);
    let sampler = integer_sampler();
    let space = GraphSpace::bounded(4);
    let cfg = space.config();
    let mut symmetry = Tally::new("symmetry");
    let mut triangle = Tally::new("triangle inequality");
    let mut identity = Tally::new("zero distance iff equal orbits");
    let mut relabelled = Tally::new("relabelled copies at distance zero");
    let mut trick = Tally::new("kernel trick matches orbit minimum");
    let mut compact = Tally::new("compact kernel at most orbit kernel");
    let mut midpoint = Tally::new("midpoint halves the distance");
    for _ in 0..trials {
        let dim = sampler.sample_dim(&mut rng);
        let [x, y, z] = [0; 3].map(|_| sampler.sample_with_dim(&mut rng, dim));
        let dxy = space.distance(&x, &y)?;
        let dyx = space.distance(&y, &x)?;
        let dxz = space.distance(&x, &z)?;
        let dyz = space.distance(&y, &z)?;
        symmetry.residual((dxy - dyx).abs(), 0.0);
        triangle.residual((dxz - dxy - dyz).max(0.0), tol);

        let px = x.pad_to_order(4)?.to_matrix();
        let py = y.pad_to_order(4)?.to_matrix();
        let same_orbit = orbit(&px, cfg.guard)?.contains(&py);
        identity.flag((dxy == 0.0) == same_orbit);
        let copy = relabel(&x, &random_permutation(x.order(), &mut rng))?;
        relabelled.residual(space.distance(&x, &copy)?, 0.0);

        let via_kernel = kernel_trick_metric(&x, &y, EditScore::Dot, MorphismClass::All, &cfg)?;
        trick.residual((via_kernel - dxy).abs(), tol);
        let all = edit_kernel(&x, &y, EditScore::Dot, MorphismClass::All, &cfg)?.value;
        let comp = edit_kernel(&x, &y, EditScore::Dot, MorphismClass::Compact, &cfg)?.value;
        compact.residual((comp - all).max(0.0), tol);

        let m = space.midpoint(&x, &y)?;
        let half = dxy / 2.0;
        midpoint.residual((space.distance(&x, &m)? - half).abs(), tol);
        midpoint.residual((space.distance(&y, &m)? - half).abs(), tol);
    }
    Ok([symmetry, triangle, identity, relabelled, trick, compact, midpoint].map(Tally::finish).to_vec())
}

fn cauchy_schwarz(trials: usize, seed: u64, tol: f64) -> Result<Vec<PropertyResult>> {
    let mut rng = seeded_rng(seed);
    let sampler = gaussian_sampler();
    let space = GraphSpace::bounded(4);
    let mut weak = Tally::new("weak Cauchy-Schwarz gap nonnegative");
    let mut equality = Tally::new("equality for positively dependent pairs");
    for _ in 0..trials {
        let dim = sampler.sample_dim(&mut rng);
        let x = sampler.sample_with_dim(&mut rng, dim);
        let y = sampler.sample_with_dim(&mut rng, dim);
        weak.residual((-space.cauchy_schwarz_gap(&x, &y)?).max(0.0), tol);
        for lambda in SCALARS {
            let scaled = scalar_mult(lambda, &x)?;
            equality.residual(space.cauchy_schwarz_gap(&x, &scaled)?.abs(), tol);
        }
    }
    Ok(vec![weak.finish(), equality.finish()])
}

fn homogeneity(trials: usize, seed: u64, tol: f64) -> Result<Vec<PropertyResult>> {
    let mut rng = seeded_rng(seed);
    let sampler = gaussian_sampler();
    let integers = integer_sampler();
    let space = GraphSpace::bounded(4);
    let mut homogeneous = Tally::new("kernel positively homogeneous");
    let mut length = Tally::new("length equals every orbit norm");
    for _ in 0..trials {
        let dim = sampler.sample_dim(&mut rng);
        let x = sampler.sample_with_dim(&mut rng, dim);
        let y = sampler.sample_with_dim(&mut rng, dim);
        let k = space.kernel(&x, &y)?;
        for lambda in SCALARS {
            let ky = space.kernel(&x, &scalar_mult(lambda, &y)?)?;
            homogeneous.residual((ky - lambda * k).abs() / (1.0 + k.abs()), tol);
        }
        let g = integers.sample(&mut rng);
        let l = space.length(&g);
        for element in orbit(&g.to_matrix(), space.guard)?.elements() {
            length.residual((element.norm() - l).abs(), 0.0);
        }
    }
    Ok(vec![homogeneous.finish(), length.finish()])
}

/// An ordinary center drawn from Gaussian attributes; redraws on the
/// probability-zero singular event.
fn ordinary_center<R: Rng>(rng: &mut R, order: usize, dim: usize, guard: OrderGuard) -> Result<Alignment> {
    let sampler = gaussian_sampler();
    loop {
        let z = sampler.sample_shape(rng, order, dim);
        match Alignment::new(&z, order, guard) {
            Err(Error::NotOrdinary(_)) => continue,
            other => return other,
        }
    }
}

fn wgrt(trials: usize, seed: u64, tol: f64) -> Result<Vec<PropertyResult>> {
    let mut rng = seeded_rng(seed);
    let sampler = gaussian_sampler();
    let mut center = Tally::new("isometric at the center");
    let mut expansive = Tally::new("expansive elsewhere");
    let mut domain = Tally::new("aligned points lie in the domain");
    let mut strict = Tally::new("strict expansion observed");
    let mut correspondence = Tally::new("kernel, length and angle correspondences");
    let mut orthogonality = Tally::new("orthogonality correspondence");
    let mut strict_seen = false;
    for _ in 0..trials {
        let n = rng.random_range(2..=4);
        let dim = sampler.sample_dim(&mut rng);
        let a = ordinary_center(&mut rng, n, dim, OrderGuard::default())?;
        let sub = sampler.clone().with_order(1..=n);
        let x = sub.sample_with_dim(&mut rng, dim);
        let y = sub.sample_with_dim(&mut rng, dim);
        let space = a.space();
        let mx = a.align(&x)?;
        let my = a.align(&y)?;
        center.residual((a.center().distance(&mx.matrix) - space.distance(a.center_graph(), &x)?).abs(), tol);
        let e = a.expansion_check(&x, &y)?;
        expansive.residual((e.distance - e.aligned_distance).max(0.0), tol);
        strict_seen |= e.aligned_distance - e.distance > tol;
        domain.flag(a.dirichlet_contains(&mx.matrix)? && a.dirichlet_contains(&my.matrix)?);
        let r = a.correspondence_report(&x)?;
        correspondence.residual(r.max_residual(), tol);
        orthogonality.flag(r.orthogonality_agrees());
    }
    strict.flag(strict_seen);
    Ok([center, expansive, domain, strict, correspondence, orthogonality].map(Tally::finish).to_vec())
}

fn cone(trials: usize, seed: u64, tol: f64) -> Result<Vec<PropertyResult>> {
    let mut rng = seeded_rng(seed);
    let perturbations = gaussian_sampler().with_edge_prob(1.0);
    let mut radius = Tally::new("radius is half the boundary distance");
    let mut inside = Tally::new("constructed pairs lie in the cone");
    let mut isometry = Tally::new("isometric inside the cone");
    for _ in 0..trials {
        let n = rng.random_range(2..=4);
        let dim = perturbations.sample_dim(&mut rng);
        let a = ordinary_center(&mut rng, n, dim, OrderGuard::default())?;
        let rho = a.rho_star();
        let foot = a.boundary_distance()?.expect("order at least two");
        radius.residual((2.0 * rho - foot.distance).abs(), tol);

        let mut point = || -> Result<AttributedGraph> {
            let p = perturbations.sample_shape(&mut rng, n, dim).to_matrix();
            let r = rho * rng.random_range(0.05..0.95);
            let moved = a.center().add(&p.scale(r / p.norm()));
            scalar_mult(rng.random_range(0.2..5.0), &moved.to_graph(false)?)
        };
        let x = point()?;
        let y = point()?;
        let c = a.conic_isometry_check(&x, &y, rho)?;
        inside.flag(c.in_cone);
        isometry.residual((c.distance - c.aligned_distance).abs(), tol);
    }
    Ok([radius, inside, isometry].map(Tally::finish).to_vec())
}

fn mcs() -> Result<Vec<PropertyResult>> {
    let catalog = unit_catalog();
    let cfg = EditConfig::default();
    let mut own = Tally::new("self kernel counts nodes and both edge directions");
    let mut symmetric = Tally::new("symmetric");
    let mut bounded = Tally::new("bounded by both self kernels");
    let mut consistent = Tally::new("node and edge counts add up to the kernel");
    for (_, x) in &catalog {
        let m = mcs_kernel(x, x, &cfg)?;
        own.flag(m.kernel as usize == x.order() + 2 * x.edge_count());
        for (_, y) in &catalog {
            let xy = mcs_kernel(x, y, &cfg)?;
            let yx = mcs_kernel(y, x, &cfg)?;
            symmetric.flag(xy.kernel == yx.kernel);
            let cap = (x.order() + 2 * x.edge_count()).min(y.order() + 2 * y.edge_count());
            bounded.flag(xy.kernel as usize <= cap);
            consistent.flag(xy.kernel as usize == xy.nodes + 2 * xy.edges);
        }
    }
    Ok([own, symmetric, bounded, consistent].map(Tally::finish).to_vec())
}

fn mean(trials: usize, seed: u64, tol: f64) -> Result<Vec<PropertyResult>> {
    let mut rng = seeded_rng(seed);
    let sampler = gaussian_sampler().with_order(3..=3).with_dim(1..=1);
    let space = GraphSpace::bounded(3);
    let mut monotone = Tally::new("Frechet trace non-increasing");
    let mut improves = Tally::new("mean no worse than the best sample point");
    let mut repeated = Tally::new("mean of a repeated graph is the graph");
    let mut reproducible = Tally::new("same seed gives the same mean");
    for t in 0..trials {
        let sample: Vec<AttributedGraph> = (0..3).map(|_| sampler.sample(&mut rng)).collect();
        let options = MeanOptions {
            seed: seed.wrapping_add(t as u64),
            ..MeanOptions::default()
        };
        let m = space.sample_mean(&sample, &options)?;
        let rises = m.trace.windows(2).map(|w| (w[1] - w[0]).max(0.0)).fold(0.0, f64::max);
        monotone.residual(rises, 0.0);
        let mut best_point = f64::INFINITY;
        for g in &sample {
            let f: f64 = sample
                .iter()
                .map(|h| space.distance(g, h).map(|d| d * d))
                .sum::<Result<f64>>()?;
            best_point = best_point.min(f);
        }
        improves.residual((m.frechet - best_point).max(0.0), tol);
        let again = space.sample_mean(&sample, &options)?;
        reproducible.flag(again == m);

        let x = &sample[0];
        let twice = space.sample_mean(&[x.clone(), x.clone()], &options)?;
        repeated.residual(space.distance(&twice.mean, x)?.max(twice.frechet), tol);
    }
    Ok([monotone, improves, repeated, reproducible].map(Tally::finish).to_vec())
}

fn ordinary(trials: usize, seed: u64) -> Result<Vec<PropertyResult>> {
    let mut rng = seeded_rng(seed);
    let sampler = gaussian_sampler().with_order(4..=4);
    let guard = OrderGuard::default();
    let mut generic = Tally::new("Gaussian graphs are ordinary");
    let mut constant = Tally::new("constant graph has full isotropy");
    for _ in 0..trials {
        generic.flag(is_ordinary(&sampler.sample(&mut rng).to_matrix(), guard)?);
    }
    for n in 1..=4 {
        let g = AttributedGraph::weighted(false, &vec![1.0; n], &[])?;
        let size = isotropy_group(&g.to_matrix(), guard)?.len();
        constant.flag(size == (1..=n).product::<usize>());
    }
    Ok(vec![generic.finish(), constant.finish()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(run_suite("bogus", 1, 0, 1e-9), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn every_suite_passes_briefly() {
        for name in SUITES {
            let report = run_suite(name, 5, 11, 1e-9).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let a = run_suite("metric", 10, 3, 1e-9).unwrap().to_string();
        let b = run_suite("metric", 10, 3, 1e-9).unwrap().to_string();
        assert_eq!(a, b);
        assert!(a.starts_with("suite metric trials 10 seed 3"));
    }

    #[test]
    fn failing_property_is_reported() {
        let mut t = Tally::new("p");
        t.residual(1.0, 0.5);
        let p = t.finish();
        assert!(!p.passed());
        assert_eq!(p.max_residual, Some(1.0));
    }
}
