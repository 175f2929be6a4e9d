//! Length, angle and orthogonality of graphs, geodesic midpoints and sample
//! means, all under the dot edit score and the full permutation group.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::AttributedGraph;
use crate::group::{apply_action, quotient_distance, OrderGuard, Permutation};
use crate::kernel::{self, padded_order, EditConfig, EditScore, MorphismClass, Padding};
use crate::matrix::GraphMatrix;

/// Absolute tolerance for the orthogonality predicates.
pub const ORTHOGONALITY_TOL: f64 = 1e-9;

/// Graphs sharing one padding rule and order guard.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GraphSpace {
    pub padding: Padding,
    pub guard: OrderGuard,
}

impl GraphSpace {
    pub fn bounded(order: usize) -> Self {
        GraphSpace {
            padding: Padding::Bound(Some(order)),
            guard: OrderGuard::default(),
        }
    }

    pub fn config(&self) -> EditConfig {
        EditConfig {
            padding: self.padding,
            guard: self.guard,
        }
    }

    /// `κ(X, Y)` over the whole group.
    pub fn kernel(&self, x: &AttributedGraph, y: &AttributedGraph) -> Result<f64> {
        kernel::edit_kernel(x, y, EditScore::Dot, MorphismClass::All, &self.config()).map(|s| s.value)
    }

    pub fn distance(&self, x: &AttributedGraph, y: &AttributedGraph) -> Result<f64> {
        kernel::induced_metric(x, y, EditScore::Dot, &self.config())
    }

    /// `ℓ(X) = √κ(X,X)`, which is the norm of any representation.
    pub fn length(&self, x: &AttributedGraph) -> f64 {
        x.to_matrix().norm()
    }

    /// Cosine of the angle between two graphs of positive length.
    pub fn angle(&self, x: &AttributedGraph, y: &AttributedGraph) -> Result<f64> {
        let (lx, ly) = (self.length(x), self.length(y));
        if lx == 0.0 || ly == 0.0 {
            return Err(Error::ZeroLength);
        }
        Ok((self.kernel(x, y)? / (lx * ly)).clamp(-1.0, 1.0))
    }

    pub fn is_orthogonal(&self, x: &AttributedGraph, y: &AttributedGraph) -> Result<bool> {
        Ok(self.kernel(x, y)?.abs() <= ORTHOGONALITY_TOL)
    }

    /// `κ(X, Y) = κ(X, Z)` for all `Y, Z` in the set.
    pub fn is_orthogonal_to_set(&self, x: &AttributedGraph, set: &[AttributedGraph]) -> Result<bool> {
        let values = set.iter().map(|y| self.kernel(x, y)).collect::<Result<Vec<_>>>()?;
        let spread = match (
            values.iter().copied().reduce(f64::max),
            values.iter().copied().reduce(f64::min),
        ) {
            (Some(hi), Some(lo)) => hi - lo,
            _ => 0.0,
        };
        Ok(spread <= ORTHOGONALITY_TOL)
    }

    /// `ℓ(X)ℓ(Y) − |κ(X,Y)|`.
    pub fn cauchy_schwarz_gap(&self, x: &AttributedGraph, y: &AttributedGraph) -> Result<f64> {
        Ok(self.length(x) * self.length(y) - self.kernel(x, y)?.abs())
    }

    /// Midpoint of an optimally aligned pair of representations, read back
    /// as a graph without null-nodes.
    pub fn midpoint(&self, x: &AttributedGraph, y: &AttributedGraph) -> Result<AttributedGraph> {
        let pair = kernel::pad_pair(x, y, &self.config())?;
        let nearest = quotient_distance(&pair.x, &pair.y, self.guard)?;
        let aligned = apply_action(&nearest.witness, &pair.y)?;
        let mid = pair.x.add(&aligned).scale(0.5);
        Ok(mid.to_graph(x.is_directed() || y.is_directed())?.strip_null_nodes())
    }

    /// Fréchet sample mean by alternating alignment and averaging.
    ///
    /// The first run starts at the input with the smallest Fréchet value;
    /// `restarts` further runs start from averages of randomly permuted
    /// representations drawn from `seed`. The run with the smallest final
    /// value wins, earliest first on ties. This is a local method: the result
    /// is a fixed point of the iteration, not a certified global minimizer.
    pub fn sample_mean(&self, graphs: &[AttributedGraph], options: &MeanOptions) -> Result<SampleMean> {
        let first = graphs.first().ok_or(Error::EmptyInput)?;
        for g in graphs {
            if g.dim() != first.dim() {
                return Err(Error::DimensionMismatch {
                    expected: first.dim(),
                    found: g.dim(),
                });
            }
        }
        let orders: Vec<usize> = graphs.iter().map(|g| g.order()).collect();
        let padding = match self.padding {
            Padding::PairwiseSum => Padding::Bound(None),
            bound => bound,
        };
        let n = padded_order(&orders, padding)?;
        self.guard.check(n)?;
        let reps = graphs
            .iter()
            .map(|g| Ok(g.pad_to_order(n)?.to_matrix()))
            .collect::<Result<Vec<_>>>()?;
        let directed = graphs.iter().any(|g| g.is_directed());

        let mut starts = Vec::with_capacity(1 + options.restarts);
        let mut initial: Option<(f64, &GraphMatrix)> = None;
        for rep in &reps {
            let f = self.frechet(rep, &reps)?;
            if initial.is_none_or(|(best, _)| f < best) {
                initial = Some((f, rep));
            }
        }
        starts.push(initial.expect("non-empty input").1.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        for _ in 0..options.restarts {
            let mut sum = GraphMatrix::zeros(n, first.dim());
            for rep in &reps {
                let mut images: Vec<usize> = (0..n).collect();
                images.shuffle(&mut rng);
                let gamma = Permutation::new(images).expect("shuffled identity");
                sum = sum.add(&apply_action(&gamma, rep)?);
            }
            starts.push(sum.scale(1.0 / reps.len() as f64));
        }

        let mut best: Option<Run> = None;
        for start in starts {
            let run = self.mean_run(start, &reps, options.max_iter)?;
            if best.as_ref().is_none_or(|b| run.frechet < b.frechet) {
                best = Some(run);
            }
        }
        let run = best.expect("at least one run");
        Ok(SampleMean {
            mean: run.representation.to_graph(directed)?.strip_null_nodes(),
            representation: run.representation,
            frechet: run.frechet,
            trace: run.trace,
            iterations: run.iterations,
            converged: run.converged,
        })
    }

    fn frechet(&self, m: &GraphMatrix, reps: &[GraphMatrix]) -> Result<f64> {
        let mut total = 0.0;
        for rep in reps {
            let d = quotient_distance(m, rep, self.guard)?.distance;
            total += d * d;
        }
        Ok(total)
    }

    fn mean_run(&self, start: GraphMatrix, reps: &[GraphMatrix], max_iter: usize) -> Result<Run> {
        let mut current = start;
        let mut value = self.frechet(&current, reps)?;
        let mut trace = vec![value];
        let mut previous: Option<Vec<Permutation>> = None;
        let mut iterations = 0;
        let mut converged = false;
        while iterations < max_iter {
            let witnesses = reps
                .iter()
                .map(|rep| quotient_distance(&current, rep, self.guard).map(|n| n.witness))
                .collect::<Result<Vec<_>>>()?;
            if previous.as_ref() == Some(&witnesses) {
                converged = true;
                break;
            }
            let mut sum = GraphMatrix::zeros(current.order(), current.dim());
            for (gamma, rep) in witnesses.iter().zip(reps) {
                sum = sum.add(&apply_action(gamma, rep)?);
            }
            let next = sum.scale(1.0 / reps.len() as f64);
            let next_value = self.frechet(&next, reps)?;
            iterations += 1;
            // No numerical progress: `current` is already a fixed point.
            if next_value >= value {
                converged = true;
                break;
            }
            current = next;
            value = next_value;
            trace.push(value);
            previous = Some(witnesses);
        }
        Ok(Run {
            representation: current,
            frechet: value,
            trace,
            iterations,
            converged,
        })
    }
}

/// `λX`. Zero would turn every edge into a non-edge and is rejected.
pub fn scalar_mult(lambda: f64, x: &AttributedGraph) -> Result<AttributedGraph> {
    if lambda == 0.0 {
        return Err(Error::ZeroScalar);
    }
    if !lambda.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(x.scaled(lambda))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeanOptions {
    pub max_iter: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for MeanOptions {
    fn default() -> Self {
        MeanOptions {
            max_iter: 100,
            restarts: 4,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleMean {
    pub mean: AttributedGraph,
    pub representation: GraphMatrix,
    pub frechet: f64,
    /// Fréchet value at the start and after every accepted iteration of the
    /// winning run.
    pub trace: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

struct Run {
    representation: GraphMatrix,
    frechet: f64,
    trace: Vec<f64>,
    iterations: usize,
    converged: bool,
}
