//! Closed equilateral polygons, open polygonal arcs, and their discrete
//! curvatures.
//!
//! At a vertex `y` with neighbours `x`, `z` and exterior angle
//! `φ = ∠(y−x, z−y)` two curvatures are used:
//!
//! ```text
//! κ_d   = 2 tan(φ/2) / ((|x−y| + |z−y|) / 2)
//! κ_d,2 =        φ   / ((|x−y| + |z−y|) / 2)
//! ```
//!
//! `κ_d,2 ≤ κ_d` always. A doubled-back vertex (`φ = π`) has `κ_d = +∞`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{angle_between, Vec3};

/// Default relative tolerance on edge lengths for [`Polygon::from_vertices`].
pub const EQUILATERAL_TOL: f64 = 1e-9;

/// Parameters closer than this (in units of edges) to a vertex are snapped
/// onto it by the arc-length evaluators.
const VERTEX_SNAP: f64 = 1e-12;

/// Discrete curvature `κ_d` from the two incident edge vectors.
#[inline]
pub fn kappa_d_edges(u: Vec3, v: Vec3) -> f64 {
    let phi = angle_between(u, v);
    let mean = 0.5 * (u.norm() + v.norm());
    if phi >= PI {
        return f64::INFINITY;
    }
    2.0 * (0.5 * phi).tan() / mean
}

/// Alternative curvature `κ_d,2` from the two incident edge vectors.
#[inline]
pub fn kappa_d2_edges(u: Vec3, v: Vec3) -> f64 {
    angle_between(u, v) / (0.5 * (u.norm() + v.norm()))
}

/// `κ_d(x, y, z)` at `y`.
pub fn kappa_d(x: Vec3, y: Vec3, z: Vec3) -> f64 {
    kappa_d_edges(y - x, z - y)
}

/// `κ_d,2(x, y, z)` at `y`.
pub fn kappa_d2(x: Vec3, y: Vec3, z: Vec3) -> f64 {
    kappa_d2_edges(y - x, z - y)
}

/// A closed equilateral polygon `x_0 … x_{n−1}` with cyclic indexing.
///
/// Parameters `t ∈ [0, 1)` are normalized arc length: vertex `k` sits at
/// `t = k/n`. For unit-length polygons this is the unit-speed parametrization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polygon {
    vertices: Vec<Vec3>,
    length: f64,
    edge_length: f64,
}

impl Polygon {
    /// Validates `n ≥ 3`, finiteness and equal edge lengths (relative `tol`).
    pub fn from_vertices(points: Vec<Vec3>, tol: f64) -> Result<Polygon> {
        let n = points.len();
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        let lengths: Vec<f64> = (0..n)
            .map(|i| points[i].dist(points[(i + 1) % n]))
            .collect();
        let length: f64 = lengths.iter().sum();
        let h = length / n as f64;
        if !(h > 0.0) {
            return Err(Error::CoincidentVertices(0, 1));
        }
        for (edge, &l) in lengths.iter().enumerate() {
            if (l - h).abs() > tol * h {
                return Err(Error::NotEquilateral {
                    edge,
                    length: l,
                    expected: h,
                });
            }
        }
        Ok(Polygon {
            vertices: points,
            length,
            edge_length: h,
        })
    }

    /// Builds a polygon known to be equilateral (e.g. by a rigid move of one).
    pub(crate) fn from_trusted(points: Vec<Vec3>, edge_length: f64) -> Polygon {
        let n = points.len();
        Polygon {
            vertices: points,
            length: edge_length * n as f64,
            edge_length,
        }
    }

    /// Planar regular n-gon of length 1 centred at the origin in the e₁e₂ plane.
    pub fn regular(n: usize) -> Result<Polygon> {
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        let nf = n as f64;
        let radius = 1.0 / (2.0 * nf * (PI / nf).sin());
        let pts = (0..n)
            .map(|k| {
                let a = 2.0 * PI * k as f64 / nf;
                Vec3::new(radius * a.cos(), radius * a.sin(), 0.0)
            })
            .collect();
        Polygon::from_vertices(pts, EQUILATERAL_TOL)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Vec3> {
        self.vertices
    }

    /// Total length `L`.
    #[inline]
    pub fn length(&self) -> f64 {
        self.length
    }

    /// Common edge length `L/n`.
    #[inline]
    pub fn edge_length(&self) -> f64 {
        self.edge_length
    }

    /// Vertex with cyclic index (negative indices wrap).
    #[inline]
    pub fn vertex(&self, i: isize) -> Vec3 {
        let n = self.n() as isize;
        self.vertices[i.rem_euclid(n) as usize]
    }

    /// Edge vector `x_{i+1} − x_i`.
    #[inline]
    pub fn edge(&self, i: usize) -> Vec3 {
        let n = self.n();
        self.vertices[(i + 1) % n] - self.vertices[i % n]
    }

    /// Unit direction of edge `i`.
    #[inline]
    pub fn edge_dir(&self, i: usize) -> Vec3 {
        self.edge(i) / self.edge_length
    }

    pub fn centroid(&self) -> Vec3 {
        let sum = self.vertices.iter().fold(Vec3::ZERO, |acc, &v| acc + v);
        sum / self.n() as f64
    }

    /// Splits a parameter into (edge index, fraction in `[0, 1)`), snapping
    /// parameters within rounding of a vertex onto that vertex.
    fn locate(&self, t: f64) -> (usize, f64, bool) {
        let n = self.n();
        let x = t.rem_euclid(1.0) * n as f64;
        let r = x.round();
        if (x - r).abs() < VERTEX_SNAP * n as f64 {
            return ((r as usize) % n, 0.0, true);
        }
        let k = x.floor();
        ((k as usize) % n, x - k, false)
    }

    /// Point at normalized arc-length parameter `t` (mod 1).
    pub fn arc_point(&self, t: f64) -> Vec3 {
        let (k, f, _) = self.locate(t);
        self.vertices[k].lerp(self.vertex(k as isize + 1), f)
    }

    /// Right derivative (unit direction) at `t`.
    pub fn arc_dir(&self, t: f64) -> Vec3 {
        let (k, _, _) = self.locate(t);
        self.edge_dir(k)
    }

    /// Left derivative (unit direction) at `t`; differs from [`arc_dir`]
    /// only at vertex parameters.
    ///
    /// [`arc_dir`]: Polygon::arc_dir
    pub fn arc_dir_left(&self, t: f64) -> Vec3 {
        let n = self.n();
        let (k, _, at_vertex) = self.locate(t);
        if at_vertex {
            self.edge_dir((k + n - 1) % n)
        } else {
            self.edge_dir(k)
        }
    }

    /// Exterior angle `φ_i` at vertex `i`.
    pub fn exterior_angle(&self, i: usize) -> f64 {
        let n = self.n();
        angle_between(self.edge((i + n - 1) % n), self.edge(i))
    }

    /// `κ_d` at vertex `i`.
    pub fn kappa_d(&self, i: usize) -> f64 {
        let n = self.n();
        kappa_d_edges(self.edge((i + n - 1) % n), self.edge(i))
    }

    /// `κ_d,2` at vertex `i`.
    pub fn kappa_d2(&self, i: usize) -> f64 {
        let n = self.n();
        kappa_d2_edges(self.edge((i + n - 1) % n), self.edge(i))
    }

    /// `maxCurv(p) = max_i κ_d` and the first vertex attaining it.
    pub fn max_curv_at(&self) -> (f64, usize) {
        let mut best = (f64::NEG_INFINITY, 0);
        for i in 0..self.n() {
            let k = self.kappa_d(i);
            if k > best.0 {
                best = (k, i);
            }
        }
        best
    }

    pub fn max_curv(&self) -> f64 {
        self.max_curv_at().0
    }

    /// `minRad(p) = 1 / maxCurv(p)`; zero at a doubled-back vertex.
    pub fn min_rad(&self) -> f64 {
        1.0 / self.max_curv()
    }

    pub fn max_curv2(&self) -> f64 {
        (0..self.n())
            .map(|i| self.kappa_d2(i))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Sum of exterior angles. At least `2π` for every closed polygon.
    pub fn total_curvature(&self) -> f64 {
        (0..self.n()).map(|i| self.exterior_angle(i)).sum()
    }

    /// Applies `f` to every vertex. The caller guarantees the result is
    /// still equilateral with the given edge length.
    pub(crate) fn map_trusted(&self, edge_length: f64, f: impl Fn(Vec3) -> Vec3) -> Polygon {
        Polygon::from_trusted(self.vertices.iter().map(|&v| f(v)).collect(), edge_length)
    }

    /// Rigid motion `x ↦ R x + b` where `R` rotates by `angle` about `axis`.
    pub fn transformed(&self, axis: Vec3, angle: f64, shift: Vec3) -> Polygon {
        let axis = axis.normalized().unwrap_or(Vec3::E3);
        self.map_trusted(self.edge_length, |v| v.rotate_about(axis, angle) + shift)
    }

    /// Same polygon with the vertex labels shifted by `k`.
    pub fn relabeled(&self, k: usize) -> Polygon {
        let n = self.n();
        let pts = (0..n).map(|i| self.vertices[(i + k) % n]).collect();
        Polygon::from_trusted(pts, self.edge_length)
    }

    /// Same polygon traversed in the opposite direction.
    pub fn reversed(&self) -> Polygon {
        let mut pts = self.vertices.clone();
        pts.reverse();
        Polygon::from_trusted(pts, self.edge_length)
    }
}

/// An open polygonal chain `p(a_0) … p(a_m)`; edges need not be equal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyArc {
    vertices: Vec<Vec3>,
}

impl PolyArc {
    pub fn new(vertices: Vec<Vec3>) -> Result<PolyArc> {
        if vertices.len() < 2 {
            return Err(Error::ArcTooShort(vertices.len()));
        }
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        for i in 0..vertices.len() - 1 {
            if vertices[i] == vertices[i + 1] {
                return Err(Error::CoincidentVertices(i, i + 1));
            }
        }
        Ok(PolyArc { vertices })
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    /// Number of edges `m`.
    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Edge lengths `|I_k|`.
    pub fn edge_lengths(&self) -> Vec<f64> {
        self.vertices.windows(2).map(|w| w[0].dist(w[1])).collect()
    }

    pub fn length(&self) -> f64 {
        self.edge_lengths().iter().sum()
    }

    /// Endpoint distance `|p(L) − p(0)|`.
    pub fn chord(&self) -> f64 {
        self.vertices[0].dist(*self.vertices.last().unwrap())
    }

    /// Unit edge directions `u_k`.
    pub fn directions(&self) -> Vec<Vec3> {
        self.vertices
            .windows(2)
            .map(|w| (w[1] - w[0]).normalized().unwrap())
            .collect()
    }

    /// `κ_d,2` at interior vertices `1 … m−1`, with the mean of the two
    /// (possibly unequal) incident edges in the denominator.
    pub fn interior_kappa_d2(&self) -> Vec<f64> {
        self.vertices
            .windows(3)
            .map(|w| kappa_d2(w[0], w[1], w[2]))
            .collect()
    }

    pub fn interior_kappa_d(&self) -> Vec<f64> {
        self.vertices
            .windows(3)
            .map(|w| kappa_d(w[0], w[1], w[2]))
            .collect()
    }

    /// `maxCurv₂` over interior vertices (zero for a single edge).
    pub fn max_curv2(&self) -> f64 {
        self.interior_kappa_d2().into_iter().fold(0.0, f64::max)
    }

    pub fn max_curv(&self) -> f64 {
        self.interior_kappa_d().into_iter().fold(0.0, f64::max)
    }

    pub fn min_rad(&self) -> f64 {
        1.0 / self.max_curv()
    }

    /// Whether all edges agree with their mean to relative `tol`.
    pub fn is_equilateral(&self, tol: f64) -> bool {
        let e = self.edge_lengths();
        let h = e.iter().sum::<f64>() / e.len() as f64;
        e.iter().all(|l| (l - h).abs() <= tol * h)
    }

    /// Rigid motion applied to every vertex.
    pub fn map(&self, f: impl Fn(Vec3) -> Vec3) -> PolyArc {
        PolyArc {
            vertices: self.vertices.iter().map(|&v| f(v)).collect(),
        }
    }
}
