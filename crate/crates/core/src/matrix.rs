//! Matrix representations of graphs as points of the Euclidean space
//! `(R^d)^{n×n}`.

use crate::error::{Error, Result};
use crate::graph::{Attribute, AttributedGraph};

/// An `n×n` array of `R^d` cells stored row-major. The flat cell buffer is
/// the Euclidean point used by every norm and inner product.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphMatrix {
    n: usize,
    dim: usize,
    cells: Vec<f64>,
}

impl GraphMatrix {
    pub fn zeros(n: usize, dim: usize) -> Self {
        GraphMatrix {
            n,
            dim,
            cells: vec![0.0; n * n * dim],
        }
    }

    pub fn from_flat(n: usize, dim: usize, cells: Vec<f64>) -> Result<Self> {
        if cells.len() != n * n * dim {
            return Err(Error::SizeMismatch {
                left: cells.len(),
                right: n * n * dim,
            });
        }
        if cells.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(GraphMatrix {
            n,
            dim,
            cells: cells.into_iter().map(|c| c + 0.0).collect(),
        })
    }

    /// `d = 1` matrix from rows. Panics on ragged input.
    pub fn from_scalar_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        let mut cells = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "rows must form a square matrix");
            cells.extend_from_slice(row);
        }
        GraphMatrix::from_flat(n, 1, cells).expect("finite square matrix")
    }

    /// `d = 1` diagonal matrix.
    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = GraphMatrix::zeros(n, 1);
        for (i, &v) in values.iter().enumerate() {
            m.cells[i * n + i] = v + 0.0;
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.cells
    }

    pub fn cell(&self, i: usize, j: usize) -> &[f64] {
        let start = (i * self.n + j) * self.dim;
        &self.cells[start..start + self.dim]
    }

    pub fn cell_mut(&mut self, i: usize, j: usize) -> &mut [f64] {
        let start = (i * self.n + j) * self.dim;
        &mut self.cells[start..start + self.dim]
    }

    pub fn check_same_shape(&self, other: &GraphMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    /// Panics if the shapes differ.
    pub fn dot(&self, other: &GraphMatrix) -> f64 {
        assert_eq!(self.cells.len(), other.cells.len());
        self.cells.iter().zip(&other.cells).map(|(a, b)| a * b).sum()
    }

    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn distance_squared(&self, other: &GraphMatrix) -> f64 {
        assert_eq!(self.cells.len(), other.cells.len());
        self.cells
            .iter()
            .zip(&other.cells)
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }

    pub fn distance(&self, other: &GraphMatrix) -> f64 {
        self.distance_squared(other).sqrt()
    }

    pub fn add(&self, other: &GraphMatrix) -> GraphMatrix {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GraphMatrix) -> GraphMatrix {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: f64) -> GraphMatrix {
        GraphMatrix {
            n: self.n,
            dim: self.dim,
            cells: self.cells.iter().map(|c| c * factor + 0.0).collect(),
        }
    }

    fn zip_with(&self, other: &GraphMatrix, f: impl Fn(f64, f64) -> f64) -> GraphMatrix {
        assert_eq!(self.cells.len(), other.cells.len());
        GraphMatrix {
            n: self.n,
            dim: self.dim,
            cells: self
                .cells
                .iter()
                .zip(&other.cells)
                .map(|(&a, &b)| f(a, b) + 0.0)
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().all(|&c| c == 0.0)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.cell(i, j) == self.cell(j, i)))
    }

    /// Exact identity key for deduplication (negative zeros are normalized on
    /// construction).
    pub fn bit_key(&self) -> Vec<u64> {
        self.cells.iter().map(|c| c.to_bits()).collect()
    }

    /// Reads the matrix back as a graph of the same order. Zero off-diagonal
    /// cells become non-edges; undirected output requires a symmetric matrix.
    pub fn to_graph(&self, directed: bool) -> Result<AttributedGraph> {
        if !directed && !self.is_symmetric() {
            return Err(Error::Asymmetric);
        }
        let nodes = (0..self.n)
            .map(|i| Attribute::new(self.cell(i, i).to_vec()))
            .collect();
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if i == j || (!directed && j < i) {
                    continue;
                }
                let cell = self.cell(i, j);
                if cell.iter().any(|&c| c != 0.0) {
                    edges.push((i, j, Attribute::new(cell.to_vec())));
                }
            }
        }
        AttributedGraph::new(directed, self.dim, nodes, edges)
    }

    /// Nested `n × n × d` form used by the alignment output file.
    pub fn to_nested(&self) -> Vec<Vec<Vec<f64>>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.cell(i, j).to_vec()).collect())
            .collect()
    }
}
