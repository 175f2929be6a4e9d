//! The symmetric group acting on graph matrices by simultaneous row and
//! column permutation: orbits, isotropy groups and the quotient distance.
//!
//! Every search enumerates permutations in lexicographic order of their image
//! sequence, so "the" optimizer of an objective is always the
//! lexicographically smallest one.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::GraphMatrix;

/// Default bound on the padded order handed to exhaustive searches.
pub const DEFAULT_ORDER_GUARD: usize = 9;

// Below this order a search runs on the calling thread.
const PARALLEL_FROM: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderGuard(pub usize);

impl Default for OrderGuard {
    fn default() -> Self {
        OrderGuard(DEFAULT_ORDER_GUARD)
    }
}

impl OrderGuard {
    pub fn check(self, order: usize) -> Result<()> {
        if order > self.0 {
            Err(Error::OrderGuard {
                order,
                guard: self.0,
            })
        } else {
            Ok(())
        }
    }
}

/// A bijection of `{0, …, n-1}`; `images[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            images: inverse_of(&self.images),
        }
    }

    /// `self ∘ other`, i.e. `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, i) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")
    }
}

fn inverse_of(images: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; images.len()];
    for (i, &j) in images.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// Steps `images` to its lexicographic successor; false when it was the last.
fn next_permutation(images: &mut [usize]) -> bool {
    let n = images.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && images[i - 1] >= images[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while images[j] <= images[i - 1] {
        j -= 1;
    }
    images.swap(i - 1, j);
    images[i..].reverse();
    true
}

/// All permutations of `{0, …, n-1}` in lexicographic order.
pub fn permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut current: Option<Vec<usize>> = Some((0..n).collect());
    std::iter::from_fn(move || {
        let out = current.take()?;
        let mut next = out.clone();
        if next_permutation(&mut next) {
            current = Some(next);
        }
        Some(Permutation { images: out })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Sense {
    Minimize,
    Maximize,
}

impl Sense {
    fn improves(self, candidate: f64, incumbent: f64) -> bool {
        match self {
            Sense::Minimize => candidate < incumbent,
            Sense::Maximize => candidate > incumbent,
        }
    }
}

/// Exhaustive search over `S_n`. The objective receives the images of `γ` and
/// of `γ⁻¹`. Permutations rejected by `admissible` are skipped. Returns the
/// best value with its lexicographically smallest optimizer, or `None` when
/// nothing is admissible.
pub(crate) fn optimize<A, F>(
    n: usize,
    sense: Sense,
    admissible: A,
    objective: F,
) -> Option<(f64, Permutation)>
where
    A: Fn(&[usize]) -> bool + Sync,
    F: Fn(&[usize], &[usize]) -> f64 + Sync,
{
    let scan_block = |first: Option<usize>| -> Option<(f64, Vec<usize>)> {
        let mut images: Vec<usize> = match first {
            Some(f) => std::iter::once(f).chain((0..n).filter(|&i| i != f)).collect(),
            None => (0..n).collect(),
        };
        let mut inverse = vec![0; n];
        let mut best: Option<(f64, Vec<usize>)> = None;
        loop {
            if admissible(&images) {
                for (i, &j) in images.iter().enumerate() {
                    inverse[j] = i;
                }
                let value = objective(&images, &inverse);
                let better = match &best {
                    None => true,
                    Some((incumbent, _)) => sense.improves(value, *incumbent),
                };
                if better {
                    best = Some((value, images.clone()));
                }
            }
            if !next_permutation(&mut images) || first.is_some_and(|f| images[0] != f) {
                break;
            }
        }
        best
    };

    let blocks: Vec<Option<(f64, Vec<usize>)>> = if n >= PARALLEL_FROM {
        (0..n).into_par_iter().map(|f| scan_block(Some(f))).collect()
    } else {
        vec![scan_block(None)]
    };

    let mut best: Option<(f64, Vec<usize>)> = None;
    for candidate in blocks.into_iter().flatten() {
        let better = match &best {
            None => true,
            Some((incumbent, _)) => sense.improves(candidate.0, *incumbent),
        };
        if better {
            best = Some(candidate);
        }
    }
    best.map(|(v, images)| (v, Permutation { images }))
}

/// `γx`, defined by `(γx)[γ(i)][γ(j)] = x[i][j]`.
pub fn apply_action(gamma: &Permutation, x: &GraphMatrix) -> Result<GraphMatrix> {
    if gamma.len() != x.order() {
        return Err(Error::SizeMismatch {
            left: gamma.len(),
            right: x.order(),
        });
    }
    let n = x.order();
    let mut out = GraphMatrix::zeros(n, x.dim());
    for i in 0..n {
        for j in 0..n {
            out.cell_mut(gamma.apply(i), gamma.apply(j))
                .copy_from_slice(x.cell(i, j));
        }
    }
    Ok(out)
}

/// `Σ_{i,j} f((x)[i][j], (γy)[i][j])`, with `inverse` the images of `γ⁻¹`.
/// Cells are visited in row-major order of `x`, so equal `γy` give bitwise
/// equal sums.
pub(crate) fn cellwise_sum<F>(x: &GraphMatrix, y: &GraphMatrix, inverse: &[usize], f: F) -> f64
where
    F: Fn(&[f64], &[f64]) -> f64,
{
    let n = x.order();
    let mut total = 0.0;
    for i in 0..n {
        let yi = inverse[i];
        for j in 0..n {
            total += f(x.cell(i, j), y.cell(yi, inverse[j]));
        }
    }
    total
}

pub(crate) fn squared_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum()
}

pub(crate) fn inner(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

/// The orbit `{γx : γ ∈ S_n}` as distinct matrices, in order of first
/// appearance along the lexicographic enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    elements: Vec<GraphMatrix>,
}

impl Orbit {
    pub fn elements(&self) -> &[GraphMatrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &GraphMatrix) -> bool {
        self.elements.iter().any(|e| e == x)
    }
}

pub fn orbit(x: &GraphMatrix, guard: OrderGuard) -> Result<Orbit> {
    guard.check(x.order())?;
    let mut seen = BTreeSet::new();
    let mut elements = Vec::new();
    for gamma in permutations(x.order()) {
        let image = apply_action(&gamma, x)?;
        if seen.insert(image.bit_key()) {
            elements.push(image);
        }
    }
    Ok(Orbit { elements })
}

/// `{γ : γx = x}`, in lexicographic order (the identity comes first).
pub fn isotropy_group(x: &GraphMatrix, guard: OrderGuard) -> Result<Vec<Permutation>> {
    guard.check(x.order())?;
    let mut fixers = Vec::new();
    for gamma in permutations(x.order()) {
        if apply_action(&gamma, x)? == *x {
            fixers.push(gamma);
        }
    }
    Ok(fixers)
}

pub fn is_ordinary(x: &GraphMatrix, guard: OrderGuard) -> Result<bool> {
    guard.check(x.order())?;
    let fixed_by_other = permutations(x.order())
        .skip(1)
        .map(|gamma| apply_action(&gamma, x))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .any(|image| image == *x);
    Ok(!fixed_by_other)
}

/// A distance together with the permutation `γ` realizing it on the second
/// argument.
#[derive(Debug, Clone, PartialEq)]
pub struct Nearest {
    pub distance: f64,
    pub witness: Permutation,
}

/// `min_γ ‖x − γy‖` with the lexicographically smallest minimizer.
pub fn quotient_distance(x: &GraphMatrix, y: &GraphMatrix, guard: OrderGuard) -> Result<Nearest> {
    x.check_same_shape(y)?;
    guard.check(x.order())?;
    let (squared, witness) = optimize(
        x.order(),
        Sense::Minimize,
        |_| true,
        |_, inverse| cellwise_sum(x, y, inverse, squared_gap),
    )
    .expect("the identity is always admissible");
    Ok(Nearest {
        distance: squared.sqrt(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_cycle() -> GraphMatrix {
        let mut rows = vec![vec![0.0; 4]; 4];
        for i in 0..4 {
            let j = (i + 1) % 4;
            rows[i][j] = 1.0;
            rows[j][i] = 1.0;
        }
        let refs: Vec<&[f64]> = rows.iter().map(|r| r.as_slice()).collect();
        GraphMatrix::from_scalar_rows(&refs)
    }

    #[test]
    fn permutations_are_lexicographic() {
        let all: Vec<Vec<usize>> = permutations(3).map(|p| p.images().to_vec()).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0]
            ]
        );
        assert_eq!(permutations(0).count(), 1);
        assert_eq!(permutations(5).count(), 120);
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(p.to_string(), "[2 0 1]");
    }

    #[test]
    fn action_examples() {
        let x = GraphMatrix::from_scalar_rows(&[&[1.0, 3.0], &[0.0, 2.0]]);
        assert_eq!(apply_action(&Permutation::identity(2), &x).unwrap(), x);
        assert_eq!(
            apply_action(&Permutation::transposition(2, 0, 1), &x).unwrap(),
            GraphMatrix::from_scalar_rows(&[&[2.0, 0.0], &[3.0, 1.0]])
        );
        assert!(apply_action(&Permutation::identity(3), &x).is_err());
    }

    #[test]
    fn action_is_compatible_with_composition() {
        let x = GraphMatrix::from_flat(3, 1, (0..9).map(|v| v as f64 * 1.5 - 4.0).collect()).unwrap();
        for a in permutations(3) {
            for b in permutations(3) {
                let lhs = apply_action(&a.compose(&b), &x).unwrap();
                let rhs = apply_action(&a, &apply_action(&b, &x).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit(&GraphMatrix::diagonal(&[1.0, 2.0, 3.0]), OrderGuard::default()).unwrap().len(), 6);
        assert_eq!(orbit(&GraphMatrix::diagonal(&[1.0, 1.0, 1.0]), OrderGuard::default()).unwrap().len(), 1);
        assert_eq!(orbit(&four_cycle(), OrderGuard::default()).unwrap().len(), 3);
        assert!(matches!(
            orbit(&GraphMatrix::zeros(4, 1), OrderGuard(3)),
            Err(Error::OrderGuard { order: 4, guard: 3 })
        ));
    }

    #[test]
    fn isotropy_examples() {
        let g = OrderGuard::default();
        let trivial = isotropy_group(&GraphMatrix::diagonal(&[1.0, 2.0]), g).unwrap();
        assert_eq!(trivial, vec![Permutation::identity(2)]);
        assert_eq!(isotropy_group(&GraphMatrix::diagonal(&[4.0; 3]), g).unwrap().len(), 6);
        let dihedral = isotropy_group(&four_cycle(), g).unwrap();
        assert_eq!(dihedral.len(), 8);
        assert!(dihedral[0].is_identity());
        for a in &dihedral {
            for b in &dihedral {
                assert!(dihedral.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn ordinary_points() {
        let g = OrderGuard::default();
        assert!(is_ordinary(&GraphMatrix::diagonal(&[1.0, 2.0, 3.0]), g).unwrap());
        assert!(!is_ordinary(&GraphMatrix::diagonal(&[2.0, 2.0]), g).unwrap());
        assert!(is_ordinary(&GraphMatrix::diagonal(&[7.0]), g).unwrap());
    }

    #[test]
    fn quotient_distance_examples() {
        let g = OrderGuard::default();
        let x = GraphMatrix::diagonal(&[1.0, 2.0]);
        let same = quotient_distance(&x, &x, g).unwrap();
        assert_eq!(same.distance, 0.0);
        assert!(same.witness.is_identity());

        let a = quotient_distance(&GraphMatrix::diagonal(&[3.0, 0.0]), &GraphMatrix::diagonal(&[0.0, 3.0]), g).unwrap();
        assert_eq!(a.distance, 0.0);

        let b = quotient_distance(&x, &GraphMatrix::diagonal(&[5.0, 0.0]), g).unwrap();
        assert_eq!(b.distance, 10f64.sqrt());
        assert_eq!(b.witness, Permutation::transposition(2, 0, 1));
    }

    #[test]
    fn parallel_search_matches_sequential_order() {
        // Order 7 takes the block-parallel path; ties must still resolve to
        // the lexicographically first minimizer.
        let x = GraphMatrix::diagonal(&[1.0, 1.0, 2.0, 2.0, 3.0, 3.0, 0.0]);
        let y = GraphMatrix::diagonal(&[3.0, 2.0, 1.0, 0.0, 3.0, 2.0, 1.0]);
        let got = quotient_distance(&x, &y, OrderGuard::default()).unwrap();
        let mut best: Option<(f64, Permutation)> = None;
        for gamma in permutations(7) {
            let d = x.distance_squared(&apply_action(&gamma, &y).unwrap());
            if best.as_ref().is_none_or(|(b, _)| d < *b) {
                best = Some((d, gamma));
            }
        }
        let (d, gamma) = best.unwrap();
        assert_eq!(got.distance, d.sqrt());
        assert_eq!(got.witness, gamma);
    }
}
