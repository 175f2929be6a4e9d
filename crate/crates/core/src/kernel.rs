//! Edit scores and costs, graph edit kernels, their induced metric, the
//! general edit distance, the maximum-common-subgraph kernel and the
//! subpermutation-matrix metric. All exact solvers enumerate the symmetric
//! group on the padded pair.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::AttributedGraph;
use crate::group::{self, cellwise_sum, inner, optimize, squared_gap, Nearest, OrderGuard, Permutation, Sense};
use crate::matrix::GraphMatrix;

/// Similarity `k` of two attributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EditScore {
    /// Inner product on `R^d`.
    Dot,
    /// 1 for equal non-null attributes, 0 otherwise. Null–null pairs score 0
    /// so that padding never contributes.
    Delta,
}

impl EditScore {
    pub fn eval(self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            EditScore::Dot => inner(a, b),
            EditScore::Delta => {
                if a == b && a.iter().any(|&c| c != 0.0) {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

/// Dissimilarity `ε` of two attributes.
#[derive(Debug, Clone, Copy)]
pub enum EditCost {
    /// `k(a,a) + k(b,b) − 2k(a,b)`.
    FromKernel(EditScore),
    /// 0 for equal attributes, 1 otherwise.
    Uniform,
    Custom(fn(&[f64], &[f64]) -> f64),
}

impl EditCost {
    pub fn eval(&self, a: &[f64], b: &[f64]) -> f64 {
        match *self {
            // Same value as the kernel-trick expansion, without cancellation.
            EditCost::FromKernel(EditScore::Dot) => squared_gap(a, b),
            EditCost::FromKernel(k) => k.eval(a, a) + k.eval(b, b) - 2.0 * k.eval(a, b),
            EditCost::Uniform => {
                if a == b {
                    0.0
                } else {
                    1.0
                }
            }
            EditCost::Custom(f) => f(a, b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismClass {
    All,
    /// The smaller graph's own nodes must land on the larger graph's own
    /// nodes.
    Compact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Padding {
    /// Pad to a fixed order; `None` means the larger of the orders involved.
    Bound(Option<usize>),
    /// Pad each pair to the sum of its orders.
    PairwiseSum,
}

impl Default for Padding {
    fn default() -> Self {
        Padding::Bound(None)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EditConfig {
    pub padding: Padding,
    pub guard: OrderGuard,
}

impl EditConfig {
    pub fn bound(order: usize) -> Self {
        EditConfig {
            padding: Padding::Bound(Some(order)),
            ..EditConfig::default()
        }
    }

    pub fn pairwise_sum() -> Self {
        EditConfig {
            padding: Padding::PairwiseSum,
            ..EditConfig::default()
        }
    }
}

/// Two graphs padded to a common order, with their original orders.
#[derive(Debug, Clone)]
pub struct PaddedPair {
    pub x: GraphMatrix,
    pub y: GraphMatrix,
    pub x_order: usize,
    pub y_order: usize,
}

impl PaddedPair {
    pub fn order(&self) -> usize {
        self.x.order()
    }
}

pub fn padded_order(orders: &[usize], padding: Padding) -> Result<usize> {
    let max = orders.iter().copied().max().unwrap_or(0);
    match padding {
        Padding::Bound(None) => Ok(max),
        Padding::Bound(Some(n)) if n < max => Err(Error::PadBelowOrder { order: max, target: n }),
        Padding::Bound(Some(n)) => Ok(n),
        Padding::PairwiseSum => Ok(orders.iter().sum()),
    }
}

pub fn pad_pair(x: &AttributedGraph, y: &AttributedGraph, config: &EditConfig) -> Result<PaddedPair> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: y.dim(),
        });
    }
    let n = padded_order(&[x.order(), y.order()], config.padding)?;
    config.guard.check(n)?;
    Ok(PaddedPair {
        x: x.pad_to_order(n)?.to_matrix(),
        y: y.pad_to_order(n)?.to_matrix(),
        x_order: x.order(),
        y_order: y.order(),
    })
}

/// Admissibility of `γ` (acting on the second graph) for a morphism class.
/// Node `j` of the second graph is matched with node `γ(j)` of the first.
fn admissible(class: MorphismClass, x_order: usize, y_order: usize) -> impl Fn(&[usize]) -> bool + Sync {
    move |images: &[usize]| match class {
        MorphismClass::All => true,
        MorphismClass::Compact if x_order <= y_order => {
            images[y_order..].iter().all(|&i| i >= x_order)
        }
        MorphismClass::Compact => images[..y_order].iter().all(|&i| i < x_order),
    }
}

pub fn is_compact(gamma: &Permutation, x_order: usize, y_order: usize) -> bool {
    admissible(MorphismClass::Compact, x_order, y_order)(gamma.images())
}

/// `Σ_{i,j} k(x[i][j], (γy)[i][j])`.
pub fn transformation_score(
    x: &GraphMatrix,
    y: &GraphMatrix,
    gamma: &Permutation,
    score: EditScore,
) -> Result<f64> {
    x.check_same_shape(y)?;
    check_perm(gamma, x)?;
    let inverse = gamma.inverse();
    Ok(cellwise_sum(x, y, inverse.images(), |a, b| score.eval(a, b)))
}

/// `Σ_{i,j} ε(x[i][j], (γy)[i][j])`.
pub fn transformation_cost(
    x: &GraphMatrix,
    y: &GraphMatrix,
    gamma: &Permutation,
    cost: &EditCost,
) -> Result<f64> {
    x.check_same_shape(y)?;
    check_perm(gamma, x)?;
    let inverse = gamma.inverse();
    Ok(cellwise_sum(x, y, inverse.images(), |a, b| cost.eval(a, b)))
}

fn check_perm(gamma: &Permutation, x: &GraphMatrix) -> Result<()> {
    if gamma.len() != x.order() {
        return Err(Error::SizeMismatch {
            left: gamma.len(),
            right: x.order(),
        });
    }
    Ok(())
}

/// An optimal value with its lexicographically smallest optimizer `γ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Scored {
    pub value: f64,
    pub witness: Permutation,
}

/// Graph edit kernel: the largest transformation score over the morphism
/// class.
pub fn edit_kernel(
    x: &AttributedGraph,
    y: &AttributedGraph,
    score: EditScore,
    class: MorphismClass,
    config: &EditConfig,
) -> Result<Scored> {
    let pair = pad_pair(x, y, config)?;
    Ok(kernel_on_pair(&pair, score, class))
}

pub(crate) fn kernel_on_pair(pair: &PaddedPair, score: EditScore, class: MorphismClass) -> Scored {
    let (value, witness) = optimize(
        pair.order(),
        Sense::Maximize,
        admissible(class, pair.x_order, pair.y_order),
        |_, inverse| cellwise_sum(&pair.x, &pair.y, inverse, |a, b| score.eval(a, b)),
    )
    .expect("the class always contains a compact morphism");
    Scored { value, witness }
}

/// Metric induced by the edit kernel, as the orbit minimum of the
/// matching cost. For the dot score this is `min_γ ‖x − γy‖`.
pub fn induced_metric(
    x: &AttributedGraph,
    y: &AttributedGraph,
    score: EditScore,
    config: &EditConfig,
) -> Result<f64> {
    induced_metric_with_witness(x, y, score, config).map(|n| n.distance)
}

pub fn induced_metric_with_witness(
    x: &AttributedGraph,
    y: &AttributedGraph,
    score: EditScore,
    config: &EditConfig,
) -> Result<Nearest> {
    let pair = pad_pair(x, y, config)?;
    match score {
        EditScore::Dot => group::quotient_distance(&pair.x, &pair.y, config.guard),
        other => {
            let best = cost_on_pair(&pair, &EditCost::FromKernel(other), MorphismClass::All);
            Ok(Nearest {
                distance: best.value.max(0.0).sqrt(),
                witness: best.witness,
            })
        }
    }
}

/// `√(κ(X,X) + κ(Y,Y) − 2κ(X,Y))` evaluated through the kernel, for
/// comparison against the orbit minimum.
pub fn kernel_trick_metric(
    x: &AttributedGraph,
    y: &AttributedGraph,
    score: EditScore,
    class: MorphismClass,
    config: &EditConfig,
) -> Result<f64> {
    let kxx = edit_kernel(x, x, score, class, config)?.value;
    let kyy = edit_kernel(y, y, score, class, config)?.value;
    let kxy = edit_kernel(x, y, score, class, config)?.value;
    Ok((kxx + kyy - 2.0 * kxy).max(0.0).sqrt())
}

/// General graph edit distance: the smallest transformation cost over the
/// morphism class.
pub fn general_ged(
    x: &AttributedGraph,
    y: &AttributedGraph,
    cost: &EditCost,
    class: MorphismClass,
    config: &EditConfig,
) -> Result<Scored> {
    let pair = pad_pair(x, y, config)?;
    Ok(cost_on_pair(&pair, cost, class))
}

fn cost_on_pair(pair: &PaddedPair, cost: &EditCost, class: MorphismClass) -> Scored {
    let (value, witness) = optimize(
        pair.order(),
        Sense::Minimize,
        admissible(class, pair.x_order, pair.y_order),
        |_, inverse| cellwise_sum(&pair.x, &pair.y, inverse, |a, b| cost.eval(a, b)),
    )
    .expect("the class always contains a compact morphism");
    Scored { value, witness }
}

#[derive(Debug, Clone, PartialEq)]
pub struct McsResult {
    /// Delta-score kernel value; ordered cell pairs, so an undirected edge
    /// counts twice.
    pub kernel: u64,
    pub nodes: usize,
    /// Undirected edges are counted once.
    pub edges: usize,
    pub witness: Permutation,
}

/// Maximum common subgraph through the delta-score kernel over compact
/// morphisms.
pub fn mcs_kernel(x: &AttributedGraph, y: &AttributedGraph, config: &EditConfig) -> Result<McsResult> {
    let pair = pad_pair(x, y, config)?;
    let best = kernel_on_pair(&pair, EditScore::Delta, MorphismClass::Compact);
    let n = pair.order();
    let inverse = best.witness.inverse();
    let matched = |i: usize, j: usize| EditScore::Delta.eval(pair.x.cell(i, j), pair.y.cell(inverse.apply(i), inverse.apply(j))) == 1.0;
    let nodes = (0..n).filter(|&i| matched(i, i)).count();
    let ordered_edges = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && matched(i, j))
        .count();
    let undirected = !x.is_directed() && !y.is_directed();
    let edges = if undirected { ordered_edges / 2 } else { ordered_edges };
    let kernel = best.value as u64;
    debug_assert_eq!(kernel as usize, nodes + ordered_edges);
    Ok(McsResult {
        kernel,
        nodes,
        edges,
        witness: best.witness,
    })
}

/// `min_P ‖X − P Y Pᵀ‖` over subpermutation matrices of rank
/// `min(|X|, |Y|)`, enumerated as injections of the smaller node set into the
/// larger. The smaller graph is embedded in the larger graph's frame so that
/// no node of either graph drops out of the norm. Weighted graphs only.
pub fn subperm_metric(x: &AttributedGraph, y: &AttributedGraph, guard: OrderGuard) -> Result<f64> {
    for g in [x, y] {
        if g.dim() != 1 {
            return Err(Error::UnsupportedDimension {
                expected: 1,
                found: g.dim(),
            });
        }
    }
    let (small, large) = if x.order() <= y.order() { (x, y) } else { (y, x) };
    guard.check(large.order())?;
    let s = small.to_matrix();
    let l = large.to_matrix();
    let mut placement = Vec::with_capacity(s.order());
    let mut used = vec![false; l.order()];
    let mut best = f64::INFINITY;
    search_injections(&s, &l, &mut placement, &mut used, &mut best);
    Ok(best.sqrt())
}

fn search_injections(s: &GraphMatrix, l: &GraphMatrix, placement: &mut Vec<usize>, used: &mut [bool], best: &mut f64) {
    if placement.len() == s.order() {
        let mut embedded = GraphMatrix::zeros(l.order(), 1);
        for (a, &pa) in placement.iter().enumerate() {
            for (b, &pb) in placement.iter().enumerate() {
                embedded.cell_mut(pa, pb)[0] = s.cell(a, b)[0];
            }
        }
        *best = best.min(l.distance_squared(&embedded));
        return;
    }
    for target in 0..l.order() {
        if !used[target] {
            used[target] = true;
            placement.push(target);
            search_injections(s, l, placement, used, best);
            placement.pop();
            used[target] = false;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GreedyBound {
    /// Transformation score of the greedy morphism; never above the kernel.
    pub lower_kernel: f64,
    /// Distance along the greedy morphism; never below the induced metric.
    pub upper_metric: f64,
    pub witness: Permutation,
}

/// Polynomial-time feasible morphism: repeatedly match the unmatched node
/// pair with the highest diagonal score, ties to the smallest `(i, j)`.
pub fn greedy_bound(
    x: &AttributedGraph,
    y: &AttributedGraph,
    score: EditScore,
    padding: Padding,
) -> Result<GreedyBound> {
    let config = EditConfig {
        padding,
        guard: OrderGuard(usize::MAX),
    };
    let pair = pad_pair(x, y, &config)?;
    let n = pair.order();
    let mut x_free = vec![true; n];
    let mut y_free = vec![true; n];
    let mut images = vec![0; n];
    for _ in 0..n {
        let mut choice: Option<(f64, usize, usize)> = None;
        for i in (0..n).filter(|&i| x_free[i]) {
            for j in (0..n).filter(|&j| y_free[j]) {
                let s = score.eval(pair.x.cell(i, i), pair.y.cell(j, j));
                if choice.is_none_or(|(best, _, _)| s > best) {
                    choice = Some((s, i, j));
                }
            }
        }
        let (_, i, j) = choice.expect("free nodes remain");
        x_free[i] = false;
        y_free[j] = false;
        images[j] = i;
    }
    let witness = Permutation::new(images).expect("greedy matching is a bijection");
    let lower_kernel = transformation_score(&pair.x, &pair.y, &witness, score)?;
    let upper_metric = transformation_cost(&pair.x, &pair.y, &witness, &EditCost::FromKernel(score))?
        .max(0.0)
        .sqrt();
    Ok(GreedyBound {
        lower_kernel,
        upper_metric,
        witness,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GramKind {
    Kernel,
    Distance,
}

/// Pairwise kernel or distance matrix. `Padding::Bound(None)` pads the whole
/// collection to its largest order. Pairs run in parallel; the result does not
/// depend on scheduling.
pub fn gram_matrix(
    graphs: &[AttributedGraph],
    kind: GramKind,
    score: EditScore,
    class: MorphismClass,
    config: &EditConfig,
) -> Result<Vec<Vec<f64>>> {
    if let Some(first) = graphs.first() {
        for g in graphs {
            if g.dim() != first.dim() {
                return Err(Error::DimensionMismatch {
                    expected: first.dim(),
                    found: g.dim(),
                });
            }
        }
    }
    let padding = match config.padding {
        Padding::Bound(_) => {
            let orders: Vec<usize> = graphs.iter().map(|g| g.order()).collect();
            Padding::Bound(Some(padded_order(&orders, config.padding)?))
        }
        Padding::PairwiseSum => Padding::PairwiseSum,
    };
    let config = EditConfig { padding, ..*config };
    let n = graphs.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let values = pairs
        .par_iter()
        .map(|&(i, j)| match kind {
            GramKind::Kernel => edit_kernel(&graphs[i], &graphs[j], score, class, &config).map(|s| s.value),
            GramKind::Distance => induced_metric(&graphs[i], &graphs[j], score, &config),
        })
        .collect::<Result<Vec<f64>>>()?;
    let mut matrix = vec![vec![0.0; n]; n];
    for (&(i, j), v) in pairs.iter().zip(values) {
        matrix[i][j] = v;
        matrix[j][i] = v;
    }
    Ok(matrix)
}
