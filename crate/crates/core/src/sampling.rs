//! Seeded random graphs, relabelled copies and the unit-label catalog used by
//! the verification suites.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::Result;
use crate::graph::{Attribute, AttributedGraph};
use crate::group::{apply_action, Permutation};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AttrDist {
    /// Uniform integers in `lo..=hi`; edge attributes skip zero.
    Integer { lo: i32, hi: i32 },
    /// Independent standard normal coordinates scaled by `scale`.
    Gaussian { scale: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphSampler {
    pub order: RangeInclusive<usize>,
    pub dim: RangeInclusive<usize>,
    pub directed: bool,
    pub edge_prob: f64,
    pub attrs: AttrDist,
}

impl Default for GraphSampler {
    fn default() -> Self {
        GraphSampler {
            order: 1..=4,
            dim: 1..=2,
            directed: false,
            edge_prob: 0.5,
            attrs: AttrDist::Integer { lo: -3, hi: 3 },
        }
    }
}

impl GraphSampler {
    pub fn with_order(mut self, order: RangeInclusive<usize>) -> Self {
        self.order = order;
        self
    }

    pub fn with_dim(mut self, dim: RangeInclusive<usize>) -> Self {
        self.dim = dim;
        self
    }

    pub fn with_attrs(mut self, attrs: AttrDist) -> Self {
        self.attrs = attrs;
        self
    }

    pub fn with_directed(mut self, directed: bool) -> Self {
        self.directed = directed;
        self
    }

    pub fn with_edge_prob(mut self, p: f64) -> Self {
        self.edge_prob = p;
        self
    }

    pub fn sample_dim<R: Rng>(&self, rng: &mut R) -> usize {
        rng.random_range(self.dim.clone())
    }

    /// Draws one graph, dimension chosen from the sampler's range.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> AttributedGraph {
        let dim = self.sample_dim(rng);
        self.sample_with_dim(rng, dim)
    }

    pub fn sample_with_dim<R: Rng>(&self, rng: &mut R, dim: usize) -> AttributedGraph {
        let n = rng.random_range(self.order.clone());
        self.sample_shape(rng, n, dim)
    }

    pub fn sample_shape<R: Rng>(&self, rng: &mut R, n: usize, dim: usize) -> AttributedGraph {
        let nodes = (0..n).map(|_| self.attribute(rng, dim, false)).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || (!self.directed && j < i) {
                    continue;
                }
                if rng.random_bool(self.edge_prob) {
                    edges.push((i, j, self.attribute(rng, dim, true)));
                }
            }
        }
        AttributedGraph::new(self.directed, dim, nodes, edges).expect("sampled graphs are valid")
    }

    fn attribute<R: Rng>(&self, rng: &mut R, dim: usize, nonzero: bool) -> Attribute {
        loop {
            let coords: Vec<f64> = match self.attrs {
                AttrDist::Integer { lo, hi } => (0..dim).map(|_| rng.random_range(lo..=hi) as f64).collect(),
                AttrDist::Gaussian { scale } => (0..dim)
                    .map(|_| scale * Distribution::<f64>::sample(&StandardNormal, rng))
                    .collect(),
            };
            let attr = Attribute::new(coords);
            if !nonzero || !attr.is_null() {
                return attr;
            }
        }
    }
}

pub fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::new(images).expect("shuffled identity is a permutation")
}

/// The graph obtained by relabelling node `i` as `gamma(i)`.
pub fn relabel(g: &AttributedGraph, gamma: &Permutation) -> Result<AttributedGraph> {
    apply_action(gamma, &g.to_matrix())?.to_graph(g.is_directed())
}

/// Unit-labelled undirected graphs on at most four nodes: paths, cycles,
/// stars and complete graphs, each listed once.
pub fn unit_catalog() -> Vec<(String, AttributedGraph)> {
    let mut shapes: Vec<(String, usize, Vec<(usize, usize)>)> = Vec::new();
    for n in 1..=4 {
        shapes.push((format!("path{n}"), n, (1..n).map(|i| (i - 1, i)).collect()));
    }
    for n in 3..=4 {
        shapes.push((format!("cycle{n}"), n, (0..n).map(|i| (i, (i + 1) % n)).collect()));
    }
    // Smaller stars and complete graphs coincide with paths and the triangle.
    shapes.push(("star4".into(), 4, (1..4).map(|i| (0, i)).collect()));
    let complete = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
    shapes.push(("complete4".into(), 4, complete));
    shapes
        .into_iter()
        .map(|(name, n, edges)| {
            let weighted: Vec<_> = edges.into_iter().map(|(i, j)| (i, j, 1.0)).collect();
            let g = AttributedGraph::weighted(false, &vec![1.0; n], &weighted).expect("catalog graphs are valid");
            (name, g)
        })
        .collect()
}
