//! Alignments along an ordinary graph: the Dirichlet fundamental domain of
//! its representation `z`, the map sending every graph to its representation
//! nearest to `z`, isometry cones around `z` and the correspondences between
//! graph-space and vector-space geometry that the alignment carries.
//!
//! The domain `D_z = {x : ⟨x, z⟩ ≥ ⟨x, γz⟩ for all γ}` is never materialized
//! as a list of facets; every query runs over the cached `γz`.

use crate::error::{Error, Result};
use crate::geometry::{GraphSpace, ORTHOGONALITY_TOL};
use crate::graph::AttributedGraph;
use crate::group::{apply_action, is_ordinary, isotropy_group, permutations, quotient_distance, OrderGuard, Permutation};
use crate::kernel::Padding;
use crate::matrix::GraphMatrix;

/// Slack below which a Dirichlet inequality counts as tight.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainLocation {
    Interior,
    Boundary,
    Outside,
}

#[derive(Debug, Clone)]
pub struct Alignment {
    center_graph: AttributedGraph,
    center: GraphMatrix,
    guard: OrderGuard,
    // (γ, γz) for every γ other than the identity.
    images: Vec<(Permutation, GraphMatrix)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Aligned {
    pub matrix: GraphMatrix,
    pub witness: Permutation,
    pub location: DomainLocation,
}

/// Nearest point of `∂D_z` found through the bisector feet `(z + γz)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryFoot {
    pub distance: f64,
    pub gamma: Permutation,
    pub foot: GraphMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Expansion {
    pub distance: f64,
    pub aligned_distance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConicCheck {
    pub distance: f64,
    pub aligned_distance: f64,
    pub in_cone: bool,
}

/// Residuals of the kernel, length, angle and orthogonality correspondences
/// between `(Z, X)` and `(μ(Z), μ(X))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Correspondence {
    pub kernel_residual: f64,
    pub length_residual: f64,
    /// `None` when `X` has zero length.
    pub angle_residual: Option<f64>,
    pub orthogonal_graphs: bool,
    pub orthogonal_vectors: bool,
}

impl Correspondence {
    pub fn max_residual(&self) -> f64 {
        self.kernel_residual
            .max(self.length_residual)
            .max(self.angle_residual.unwrap_or(0.0))
    }

    pub fn orthogonality_agrees(&self) -> bool {
        self.orthogonal_graphs == self.orthogonal_vectors
    }
}

impl Alignment {
    /// Aligns along `Z` padded to `order`. Fails unless the padded center is
    /// ordinary.
    pub fn new(center: &AttributedGraph, order: usize, guard: OrderGuard) -> Result<Self> {
        guard.check(order)?;
        let z = center.pad_to_order(order)?.to_matrix();
        if !is_ordinary(&z, guard)? {
            return Err(Error::NotOrdinary(isotropy_group(&z, guard)?.len()));
        }
        let images = permutations(order)
            .skip(1)
            .map(|gamma| {
                let image = apply_action(&gamma, &z)?;
                Ok((gamma, image))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Alignment {
            center_graph: center.clone(),
            center: z,
            guard,
            images,
        })
    }

    pub fn center(&self) -> &GraphMatrix {
        &self.center
    }

    pub fn center_graph(&self) -> &AttributedGraph {
        &self.center_graph
    }

    pub fn order(&self) -> usize {
        self.center.order()
    }

    pub fn space(&self) -> GraphSpace {
        GraphSpace {
            padding: Padding::Bound(Some(self.order())),
            guard: self.guard,
        }
    }

    fn representation(&self, x: &AttributedGraph) -> Result<GraphMatrix> {
        let m = x.pad_to_order(self.order())?.to_matrix();
        self.center.check_same_shape(&m)?;
        Ok(m)
    }

    pub fn locate(&self, x: &GraphMatrix) -> Result<DomainLocation> {
        self.center.check_same_shape(x)?;
        let own = x.dot(&self.center);
        let min_slack = self
            .images
            .iter()
            .map(|(_, image)| own - x.dot(image))
            .fold(f64::INFINITY, f64::min);
        Ok(if min_slack < -BOUNDARY_TOL {
            DomainLocation::Outside
        } else if min_slack <= BOUNDARY_TOL {
            DomainLocation::Boundary
        } else {
            DomainLocation::Interior
        })
    }

    pub fn dirichlet_contains(&self, x: &GraphMatrix) -> Result<bool> {
        Ok(self.locate(x)? != DomainLocation::Outside)
    }

    pub fn dirichlet_interior(&self, x: &GraphMatrix) -> Result<bool> {
        Ok(self.locate(x)? == DomainLocation::Interior)
    }

    /// Largest isometry-cone radius, `¼ · min_{γ ≠ ε} ‖z − γz‖`.
    pub fn rho_star(&self) -> f64 {
        0.25 * self
            .images
            .iter()
            .map(|(_, image)| self.center.distance(image))
            .fold(f64::INFINITY, f64::min)
    }

    /// Distance from `z` to `∂D_z` measured as the nearest bisector foot
    /// `(z + γz)/2` that lies in `D_z`. `None` for order ≤ 1.
    pub fn boundary_distance(&self) -> Result<Option<BoundaryFoot>> {
        let mut best: Option<BoundaryFoot> = None;
        for (gamma, image) in &self.images {
            let foot = self.center.add(image).scale(0.5);
            if !self.dirichlet_contains(&foot)? {
                continue;
            }
            let distance = self.center.distance(&foot);
            if best.as_ref().is_none_or(|b| distance < b.distance) {
                best = Some(BoundaryFoot {
                    distance,
                    gamma: gamma.clone(),
                    foot,
                });
            }
        }
        Ok(best)
    }

    /// `μ(X)`: the representation of `X` nearest to `z`; ties go to the
    /// lexicographically smallest permutation.
    pub fn align(&self, x: &AttributedGraph) -> Result<Aligned> {
        let m = self.representation(x)?;
        self.align_matrix(&m)
    }

    pub fn align_matrix(&self, x: &GraphMatrix) -> Result<Aligned> {
        let nearest = quotient_distance(&self.center, x, self.guard)?;
        let matrix = apply_action(&nearest.witness, x)?;
        let location = self.locate(&matrix)?;
        Ok(Aligned {
            matrix,
            witness: nearest.witness,
            location,
        })
    }

    pub fn expansion_check(&self, x: &AttributedGraph, y: &AttributedGraph) -> Result<Expansion> {
        let mx = self.align(x)?.matrix;
        let my = self.align(y)?.matrix;
        Ok(Expansion {
            distance: self.space().distance(x, y)?,
            aligned_distance: mx.distance(&my),
        })
    }

    /// Membership in the cone over the open ball `B(z, ρ)`.
    pub fn cone_contains(&self, x: &GraphMatrix, rho: f64) -> Result<bool> {
        if rho <= 0.0 || rho.is_nan() {
            return Err(Error::NonPositiveRadius(rho));
        }
        self.center.check_same_shape(x)?;
        let along = x.dot(&self.center);
        let center_sq = self.center.norm_squared();
        if along > 0.0 {
            Ok(center_sq - along * along / x.norm_squared() < rho * rho)
        } else {
            Ok(center_sq < rho * rho)
        }
    }

    pub fn cone_contains_graph(&self, x: &AttributedGraph, rho: f64) -> Result<bool> {
        let aligned = self.align(x)?.matrix;
        self.cone_contains(&aligned, rho)
    }

    pub fn conic_isometry_check(&self, x: &AttributedGraph, y: &AttributedGraph, rho: f64) -> Result<ConicCheck> {
        let rho_star = self.rho_star();
        if rho > rho_star {
            return Err(Error::RadiusTooLarge { rho, rho_star });
        }
        let mx = self.align(x)?.matrix;
        let my = self.align(y)?.matrix;
        let in_cone = self.cone_contains(&mx, rho)? && self.cone_contains(&my, rho)?;
        Ok(ConicCheck {
            distance: self.space().distance(x, y)?,
            aligned_distance: mx.distance(&my),
            in_cone,
        })
    }

    pub fn correspondence_report(&self, x: &AttributedGraph) -> Result<Correspondence> {
        let space = self.space();
        let mx = self.align(x)?.matrix;
        let z = &self.center;
        let kernel = space.kernel(&self.center_graph, x)?;
        let vector_kernel = z.dot(&mx);
        let length = space.length(x);
        let angle_residual = if length > 0.0 {
            let graph_cos = space.angle(&self.center_graph, x)?;
            let vector_cos = (vector_kernel / (z.norm() * mx.norm())).clamp(-1.0, 1.0);
            Some((graph_cos - vector_cos).abs())
        } else {
            None
        };
        Ok(Correspondence {
            kernel_residual: (kernel - vector_kernel).abs(),
            length_residual: (length - mx.norm()).abs(),
            angle_residual,
            orthogonal_graphs: space.is_orthogonal(&self.center_graph, x)?,
            orthogonal_vectors: vector_kernel.abs() <= ORTHOGONALITY_TOL,
        })
    }

    /// Set orthogonality of `Z` to `U` in the graph space and of `z` to
    /// `μ(U)` in the vector space.
    pub fn set_orthogonality(&self, set: &[AttributedGraph]) -> Result<(bool, bool)> {
        let graph_side = self.space().is_orthogonal_to_set(&self.center_graph, set)?;
        let values = set
            .iter()
            .map(|y| Ok(self.center.dot(&self.align(y)?.matrix)))
            .collect::<Result<Vec<f64>>>()?;
        let spread = values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
            - values.iter().copied().fold(f64::INFINITY, f64::min);
        let vector_side = values.is_empty() || spread <= ORTHOGONALITY_TOL;
        Ok((graph_side, vector_side))
    }
}
