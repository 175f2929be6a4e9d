//! Brute-force reference computations on plain dense arrays. Nothing here
//! calls into the library's numerics; graphs are only read through their
//! attribute accessors.

#![allow(dead_code)]

use gedspace::{Attribute, AttributedGraph};

/// Row-major `n × n × d` array.
#[derive(Debug, Clone, PartialEq)]
pub struct Dense {
    pub n: usize,
    pub d: usize,
    pub v: Vec<f64>,
}

impl Dense {
    pub fn zeros(n: usize, d: usize) -> Self {
        Dense { n, d, v: vec![0.0; n * n * d] }
    }

    pub fn of(g: &AttributedGraph, n: usize) -> Self {
        let d = g.dim();
        let mut m = Dense::zeros(n, d);
        for i in 0..g.order() {
            m.set(i, i, g.node_attr(i).coords());
            for j in 0..g.order() {
                if i != j {
                    if let Some(a) = g.edge_attr(i, j) {
                        m.set(i, j, a.coords());
                    }
                }
            }
        }
        m
    }

    pub fn from_slice(n: usize, d: usize, v: &[f64]) -> Self {
        assert_eq!(v.len(), n * n * d);
        Dense { n, d, v: v.to_vec() }
    }

    fn at(&self, i: usize, j: usize) -> usize {
        (i * self.n + j) * self.d
    }

    pub fn get(&self, i: usize, j: usize) -> &[f64] {
        let s = self.at(i, j);
        &self.v[s..s + self.d]
    }

    pub fn set(&mut self, i: usize, j: usize, c: &[f64]) {
        let s = self.at(i, j);
        self.v[s..s + self.d].copy_from_slice(c);
    }

    /// `(p·x)[p[i]][p[j]] = x[i][j]`.
    pub fn permuted(&self, p: &[usize]) -> Dense {
        let mut out = Dense::zeros(self.n, self.d);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(p[i], p[j], self.get(i, j));
            }
        }
        out
    }

    pub fn dot(&self, o: &Dense) -> f64 {
        let mut s = 0.0;
        for k in 0..self.v.len() {
            s += self.v[k] * o.v[k];
        }
        s
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dist(&self, o: &Dense) -> f64 {
        let mut s = 0.0;
        for k in 0..self.v.len() {
            let t = self.v[k] - o.v[k];
            s += t * t;
        }
        s.sqrt()
    }

    pub fn lin(&self, a: f64, o: &Dense, b: f64) -> Dense {
        Dense {
            n: self.n,
            d: self.d,
            v: self.v.iter().zip(&o.v).map(|(x, y)| a * x + b * y).collect(),
        }
    }

    /// Reads the array back as an undirected graph; cells must be symmetric.
    pub fn to_undirected(&self) -> AttributedGraph {
        let nodes = (0..self.n).map(|i| Attribute::new(self.get(i, i).to_vec())).collect();
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                assert_eq!(self.get(i, j), self.get(j, i));
                if self.get(i, j).iter().any(|&c| c != 0.0) {
                    edges.push((i, j, Attribute::new(self.get(i, j).to_vec())));
                }
            }
        }
        AttributedGraph::new(false, self.d, nodes, edges).unwrap()
    }
}

/// All permutations of `0..n` by recursive insertion.
pub fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &v)| i == v)
}

pub fn min_dist(x: &Dense, y: &Dense) -> f64 {
    perms(x.n).iter().map(|p| x.dist(&y.permuted(p))).fold(f64::INFINITY, f64::min)
}

pub fn max_dot(x: &Dense, y: &Dense) -> f64 {
    perms(x.n).iter().map(|p| x.dot(&y.permuted(p))).fold(f64::NEG_INFINITY, f64::max)
}

/// Maximum over bijections that keep the smaller graph's real nodes on the
/// larger graph's real nodes. `mx`, `my` are the real orders inside the
/// padded arrays.
pub fn compact_max_dot(x: &Dense, mx: usize, y: &Dense, my: usize) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for p in perms(x.n) {
        // y node j sits opposite x node p[j].
        let ok = if my <= mx {
            (0..my).all(|j| p[j] < mx)
        } else {
            (0..my).filter(|&j| p[j] < mx).count() == mx
        };
        if ok {
            best = best.max(x.dot(&y.permuted(&p)));
        }
    }
    best
}

pub fn same_orbit(x: &Dense, y: &Dense) -> bool {
    perms(x.n).iter().any(|p| y.permuted(p) == *x)
}

pub fn isotropy_size(x: &Dense) -> usize {
    perms(x.n).iter().filter(|p| x.permuted(p) == *x).count()
}

/// `⟨x, z⟩ ≥ ⟨x, γz⟩ − tol` for every `γ`.
pub fn in_dirichlet(x: &Dense, z: &Dense, tol: f64) -> bool {
    let own = x.dot(z);
    perms(z.n).iter().all(|p| own >= x.dot(&z.permuted(p)) - tol)
}

/// Distance from `z` to the boundary of its Dirichlet domain through the
/// bisector feet `(z + γz)/2` that lie in the domain.
pub fn bisector_boundary_distance(z: &Dense) -> f64 {
    let mut best = f64::INFINITY;
    for p in perms(z.n) {
        if is_identity(&p) {
            continue;
        }
        let foot = z.lin(0.5, &z.permuted(&p), 0.5);
        if in_dirichlet(&foot, z, 1e-12) {
            best = best.min(z.dist(&foot));
        }
    }
    best
}

/// Membership in the cone over the open ball `B(z, ρ)`: the best positive
/// multiple of `x` is its projection onto the ray, or `λ → 0` when the ray
/// points away from `z`.
pub fn in_cone(x: &Dense, z: &Dense, rho: f64) -> bool {
    let xx = x.dot(x);
    if xx == 0.0 {
        return z.norm() < rho;
    }
    let lambda = x.dot(z) / xx;
    if lambda > 0.0 {
        z.dist(&x.lin(lambda, x, 0.0)) < rho
    } else {
        z.norm() < rho
    }
}

pub fn frechet(m: &Dense, sample: &[Dense]) -> f64 {
    sample.iter().map(|s| min_dist(m, s).powi(2)).sum()
}

/// Global Fréchet optimum of three order-`n` representations: every
/// combination of orbit elements is averaged and scored.
pub fn mean_optimum(sample: &[Dense]) -> f64 {
    let ps = perms(sample[0].n);
    let mut best = f64::INFINITY;
    for a in &ps {
        for b in &ps {
            for c in &ps {
                let s0 = sample[0].permuted(a);
                let s1 = sample[1].permuted(b);
                let s2 = sample[2].permuted(c);
                let avg = s0.lin(1.0 / 3.0, &s1, 1.0 / 3.0).lin(1.0, &s2, 1.0 / 3.0);
                best = best.min(frechet(&avg, sample));
            }
        }
    }
    best
}

/// Largest `|S| + |E|` (and `|S| + 2|E|`) over node subsets `S` of `x`,
/// injections into `y` preserving node attributes, and the edges of `x[S]`
/// whose images are edges of `y` with the same attribute.
pub fn mcs_brute(x: &AttributedGraph, y: &AttributedGraph) -> (usize, usize) {
    let m = x.order();
    let mut best = (0, 0);
    for mask in 0u32..(1 << m) {
        let s: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        injections(&s, y.order(), &mut Vec::new(), &mut |f| {
            if s.iter().zip(f).any(|(&i, &j)| x.node_attr(i) != y.node_attr(j)) {
                return;
            }
            let mut edges = 0;
            for a in 0..s.len() {
                for b in a + 1..s.len() {
                    if let Some(e) = x.edge_attr(s[a], s[b]) {
                        if y.edge_attr(f[a], f[b]) == Some(e) {
                            edges += 1;
                        }
                    }
                }
            }
            best.0 = best.0.max(s.len() + edges);
            best.1 = best.1.max(s.len() + 2 * edges);
        });
    }
    best
}

fn injections(s: &[usize], n: usize, f: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if f.len() == s.len() {
        visit(f);
        return;
    }
    for j in 0..n {
        if !f.contains(&j) {
            f.push(j);
            injections(s, n, f, visit);
            f.pop();
        }
    }
}

pub fn relabel(g: &AttributedGraph, p: &[usize]) -> AttributedGraph {
    let n = g.order();
    let mut nodes = vec![Attribute::zero(g.dim()); n];
    for i in 0..n {
        nodes[p[i]] = g.node_attr(i).clone();
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && (g.is_directed() || i < j) {
                if let Some(a) = g.edge_attr(i, j) {
                    edges.push((p[i], p[j], a.clone()));
                }
            }
        }
    }
    AttributedGraph::new(g.is_directed(), g.dim(), nodes, edges).unwrap()
}
