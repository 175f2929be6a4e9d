//! Attributed graphs over `R^d`, null-node padding and the JSON file format.
//!
//! Non-edges and null-nodes both carry the zero attribute of `R^d`. A stored
//! edge attribute is therefore never zero, and a node is a null-node exactly
//! when it is isolated and its attribute is zero.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::GraphMatrix;

/// A point of the attribute space `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Attribute(Vec<f64>);

impl Attribute {
    /// Negative zeros are normalized to `+0.0` so that bitwise and numeric
    /// equality agree.
    pub fn new(coords: Vec<f64>) -> Self {
        Attribute(coords.into_iter().map(|c| c + 0.0).collect())
    }

    pub fn scalar(value: f64) -> Self {
        Attribute::new(vec![value])
    }

    pub fn zero(dim: usize) -> Self {
        Attribute(vec![0.0; dim])
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_null(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }
}

impl From<Vec<f64>> for Attribute {
    fn from(coords: Vec<f64>) -> Self {
        Attribute::new(coords)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttributedGraph {
    directed: bool,
    dim: usize,
    nodes: Vec<Attribute>,
    // Undirected graphs store both orientations of every edge.
    edges: BTreeMap<(usize, usize), Attribute>,
}

impl AttributedGraph {
    /// Builds and validates a graph. Undirected edges are given once and
    /// symmetrized here.
    pub fn new<I>(directed: bool, dim: usize, nodes: Vec<Attribute>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Attribute)>,
    {
        if dim == 0 {
            return Err(Error::Malformed("attr_dim must be at least 1".into()));
        }
        for node in &nodes {
            check_attribute(node, dim)?;
        }
        let order = nodes.len();
        let mut stored = BTreeMap::new();
        for (from, to, attr) in edges {
            if from == to {
                return Err(Error::SelfLoop(from));
            }
            for index in [from, to] {
                if index >= order {
                    return Err(Error::NodeOutOfRange { index, order });
                }
            }
            check_attribute(&attr, dim)?;
            if attr.is_null() {
                return Err(Error::ZeroEdgeAttribute { from, to });
            }
            if stored.contains_key(&(from, to)) {
                return Err(Error::DuplicateEdge { from, to });
            }
            if !directed {
                stored.insert((to, from), attr.clone());
            }
            stored.insert((from, to), attr);
        }
        Ok(AttributedGraph {
            directed,
            dim,
            nodes,
            edges: stored,
        })
    }

    pub fn empty(directed: bool, dim: usize) -> Result<Self> {
        AttributedGraph::new(directed, dim, Vec::new(), std::iter::empty())
    }

    /// Convenience constructor for weighted graphs (`d = 1`).
    pub fn weighted(directed: bool, nodes: &[f64], edges: &[(usize, usize, f64)]) -> Result<Self> {
        AttributedGraph::new(
            directed,
            1,
            nodes.iter().copied().map(Attribute::scalar).collect(),
            edges.iter().map(|&(i, j, w)| (i, j, Attribute::scalar(w))),
        )
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_attr(&self, i: usize) -> &Attribute {
        &self.nodes[i]
    }

    pub fn node_attrs(&self) -> &[Attribute] {
        &self.nodes
    }

    pub fn edge_attr(&self, i: usize, j: usize) -> Option<&Attribute> {
        self.edges.get(&(i, j))
    }

    /// Edges in ascending `(from, to)` order; undirected edges appear once with
    /// `from < to`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &Attribute)> + '_ {
        let directed = self.directed;
        self.edges
            .iter()
            .filter(move |((i, j), _)| directed || i < j)
            .map(|(&(i, j), a)| (i, j, a))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn is_isolated(&self, i: usize) -> bool {
        !self.edges.keys().any(|&(a, b)| a == i || b == i)
    }

    pub fn is_null_node(&self, i: usize) -> bool {
        self.nodes[i].is_null() && self.is_isolated(i)
    }

    /// Appends null-nodes until the graph has `target` nodes.
    pub fn pad_to_order(&self, target: usize) -> Result<Self> {
        if target < self.order() {
            return Err(Error::PadBelowOrder {
                order: self.order(),
                target,
            });
        }
        let mut padded = self.clone();
        padded.nodes.resize(target, Attribute::zero(self.dim));
        Ok(padded)
    }

    /// Removes every null-node, keeping the relative order of the others.
    pub fn strip_null_nodes(&self) -> Self {
        let keep: Vec<usize> = (0..self.order()).filter(|&i| !self.is_null_node(i)).collect();
        let mut new_index = vec![usize::MAX; self.order()];
        for (k, &i) in keep.iter().enumerate() {
            new_index[i] = k;
        }
        AttributedGraph {
            directed: self.directed,
            dim: self.dim,
            nodes: keep.iter().map(|&i| self.nodes[i].clone()).collect(),
            edges: self
                .edges
                .iter()
                .map(|(&(i, j), a)| ((new_index[i], new_index[j]), a.clone()))
                .collect(),
        }
    }

    /// Matrix representation: node attributes on the diagonal, edge
    /// attributes off the diagonal, zero for non-edges.
    pub fn to_matrix(&self) -> GraphMatrix {
        let n = self.order();
        let mut m = GraphMatrix::zeros(n, self.dim);
        for (i, a) in self.nodes.iter().enumerate() {
            m.cell_mut(i, i).copy_from_slice(a.coords());
        }
        for (&(i, j), a) in &self.edges {
            m.cell_mut(i, j).copy_from_slice(a.coords());
        }
        m
    }

    /// Multiplies every stored attribute by `factor`. `factor` must be nonzero.
    pub(crate) fn scaled(&self, factor: f64) -> Self {
        let scale = |a: &Attribute| Attribute::new(a.coords().iter().map(|c| c * factor).collect());
        AttributedGraph {
            directed: self.directed,
            dim: self.dim,
            nodes: self.nodes.iter().map(scale).collect(),
            edges: self.edges.iter().map(|(&k, a)| (k, scale(a))).collect(),
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text)?;
        AttributedGraph::new(
            file.directed,
            file.attr_dim,
            file.nodes.into_iter().map(Attribute::new).collect(),
            file.edges
                .into_iter()
                .map(|e| (e.from, e.to, Attribute::new(e.attr))),
        )
    }

    pub fn to_json_string(&self) -> String {
        let file = GraphFile {
            directed: self.directed,
            attr_dim: self.dim,
            nodes: self.nodes.iter().map(|a| a.coords().to_vec()).collect(),
            edges: self
                .edges()
                .map(|(from, to, a)| EdgeEntry {
                    from,
                    to,
                    attr: a.coords().to_vec(),
                })
                .collect(),
        };
        serde_json::to_string(&file).expect("graph file serialization is infallible")
    }
}

fn check_attribute(attr: &Attribute, dim: usize) -> Result<()> {
    if attr.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: attr.dim(),
        });
    }
    if attr.coords().iter().any(|c| !c.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(())
}

pub fn parse_graph(text: &str) -> Result<AttributedGraph> {
    AttributedGraph::from_json_str(text)
}

pub fn serialize_graph(graph: &AttributedGraph) -> String {
    graph.to_json_string()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    directed: bool,
    attr_dim: usize,
    nodes: Vec<Vec<f64>>,
    edges: Vec<EdgeEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeEntry {
    from: usize,
    to: usize,
    attr: Vec<f64>,
}
