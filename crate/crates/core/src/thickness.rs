//! Self-distance machinery and discrete thickness.
//!
//! For a polygon `p` and a point `y = p(t)`, a second point `z = p(s)` is
//! *critical* for `y` when `s` locally extremizes `u ↦ |y − p(u)|²`. A pair
//! is *doubly critical* when each point is critical for the other, *singly
//! critical* when one of them is. Pairs closer than one edge length in arc
//! distance are never considered.
//!
//! Local extremality is decided without sampling:
//!
//! * on an edge interior, `z` is critical iff `y − z` is orthogonal to the
//!   edge (the distance is a convex quadratic along the edge);
//! * at a vertex `x_k` with incoming/outgoing unit directions `d⁻`, `d⁺`,
//!   the one-sided slopes are `a = ⟨x_k − y, d⁻⟩` and `b = ⟨x_k − y, d⁺⟩`.
//!   The vertex is a local minimum iff `a ≤ 0 ≤ b` and a local maximum iff
//!   `a > 0 > b`. A zero slope belongs to the minimum case, since the
//!   distance along an edge leaving with zero slope still increases.
//!
//! Minimal self-distances are infima over the closure of these sets, so edge
//! feet are accepted up to the edge endpoints.
//!
//! Discrete thickness is `Δ_n = min(minRad, dcsd/2)` for simple polygons and
//! zero otherwise.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::geom::{segment_min_distance, Vec3};
use crate::polygon::Polygon;

/// Default perpendicularity / slope tolerance, relative to the polygon length.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Slack on edge-foot parameters (fraction of an edge).
pub const TOL_PARAM: f64 = 1e-9;
/// Default `is_simple` clearance, relative to the polygon length.
pub const DEFAULT_CLEARANCE: f64 = 1e-12;
/// Distances within this of each other count as ties.
pub const TIE_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairKind {
    VertexVertex,
    VertexEdge,
    EdgeEdge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Criticality {
    Doubly,
    Singly,
}

/// Which of the two critical-pair families to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Doubly,
    Singly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Binding {
    Curvature,
    Distance,
}

/// A point of the polygon: a vertex, or edge `j` at fraction `λ`.
#[derive(Clone, Copy, Debug, PartialEq)]
enum Site {
    Vertex(usize),
    Edge(usize, f64),
}

impl Site {
    fn param(self, n: usize) -> f64 {
        match self {
            Site::Vertex(k) => k as f64 / n as f64,
            Site::Edge(j, l) => (j as f64 + l) / n as f64,
        }
    }

    fn edge_index(self) -> usize {
        match self {
            Site::Vertex(k) | Site::Edge(k, _) => k,
        }
    }

    /// Snaps a foot parameter onto a vertex when it sits at an endpoint.
    fn on_edge(j: usize, lambda: f64, n: usize) -> Site {
        if lambda <= TOL_PARAM {
            Site::Vertex(j)
        } else if lambda >= 1.0 - TOL_PARAM {
            Site::Vertex((j + 1) % n)
        } else {
            Site::Edge(j, lambda)
        }
    }
}

/// A critical pair with arc-length parameters `s < t` in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalPair {
    pub s: f64,
    pub t: f64,
    pub kind: PairKind,
    pub distance: f64,
    pub criticality: Criticality,
    /// Edge indices of the two points (a vertex `k` counts as edge `k`),
    /// sorted; used for tie-breaking.
    pub edges: (usize, usize),
}

impl CriticalPair {
    fn new(n: usize, a: Site, b: Site, distance: f64, criticality: Criticality) -> Self {
        let (mut s, mut t) = (a.param(n), b.param(n));
        let (mut ea, mut eb) = (a.edge_index(), b.edge_index());
        if s > t {
            std::mem::swap(&mut s, &mut t);
        }
        if ea > eb {
            std::mem::swap(&mut ea, &mut eb);
        }
        let kind = match (a, b) {
            (Site::Vertex(_), Site::Vertex(_)) => PairKind::VertexVertex,
            (Site::Edge(..), Site::Edge(..)) => PairKind::EdgeEdge,
            _ => PairKind::VertexEdge,
        };
        CriticalPair {
            s,
            t,
            kind,
            distance,
            criticality,
            edges: (ea, eb),
        }
    }

    /// Strictly preferable to `other`: shorter beyond [`TIE_EPS`], or tied and
    /// lexicographically smaller in edge indices.
    fn beats(&self, other: &CriticalPair) -> bool {
        self.distance < other.distance - TIE_EPS
            || (self.distance <= other.distance + TIE_EPS && self.edges < other.edges)
    }
}

/// Keeps the running best pair under [`CriticalPair::beats`].
#[derive(Default)]
struct Best(Option<CriticalPair>);

impl Best {
    fn distance(&self) -> f64 {
        self.0.map_or(f64::INFINITY, |c| c.distance)
    }

    /// Whether a candidate with lower bound `lb` could still win.
    #[inline]
    fn worth(&self, lb: f64) -> bool {
        lb <= self.distance() + TIE_EPS
    }

    fn offer(&mut self, c: CriticalPair) {
        match &self.0 {
            Some(b) if !c.beats(b) => {}
            _ => self.0 = Some(c),
        }
    }
}

/// Shared per-polygon data for the scans.
struct Ctx<'a> {
    p: &'a Polygon,
    n: usize,
    h: f64,
    dirs: Vec<Vec3>,
    mids: Vec<Vec3>,
    tol: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Extremum {
    Min,
    Max,
}

impl<'a> Ctx<'a> {
    fn new(p: &'a Polygon, tol: f64) -> Self {
        let n = p.n();
        let dirs = (0..n).map(|i| p.edge_dir(i)).collect();
        let mids = (0..n)
            .map(|i| p.vertices()[i].lerp(p.vertex(i as isize + 1), 0.5))
            .collect();
        Ctx {
            p,
            n,
            h: p.edge_length(),
            dirs,
            mids,
            tol: tol * p.length(),
        }
    }

    #[inline]
    fn x(&self, k: usize) -> Vec3 {
        self.p.vertices()[k % self.n]
    }

    #[inline]
    fn dir_in(&self, k: usize) -> Vec3 {
        self.dirs[(k + self.n - 1) % self.n]
    }

    fn point(&self, s: Site) -> Vec3 {
        match s {
            Site::Vertex(k) => self.x(k),
            Site::Edge(j, l) => self.x(j) + self.dirs[j] * (l * self.h),
        }
    }

    /// Whether vertex `k` locally extremizes the distance to `y`.
    #[inline]
    fn vertex_extremum(&self, k: usize, y: Vec3) -> Option<Extremum> {
        let w = self.x(k) - y;
        let a = w.dot(self.dir_in(k));
        let b = w.dot(self.dirs[k]);
        if a <= self.tol && b >= -self.tol {
            Some(Extremum::Min)
        } else if a > self.tol && b < -self.tol {
            Some(Extremum::Max)
        } else {
            None
        }
    }

    /// Whether site `s` is critical for the distance to point `y`.
    fn is_critical_for(&self, s: Site, y: Vec3) -> bool {
        match s {
            Site::Vertex(k) => self.vertex_extremum(k, y).is_some(),
            Site::Edge(j, _) => (self.point(s) - y).dot(self.dirs[j]).abs() <= self.tol,
        }
    }

    fn adjacent(&self, i: usize, j: usize) -> bool {
        let n = self.n;
        i == j || (i + 1) % n == j || (j + 1) % n == i
    }

    /// Foot parameter (fraction of the edge) of `y` on the line of edge `j`.
    #[inline]
    fn foot(&self, j: usize, y: Vec3) -> f64 {
        (y - self.x(j)).dot(self.dirs[j]) / self.h
    }

    #[inline]
    fn in_closed_edge(l: f64) -> bool {
        (-TOL_PARAM..=1.0 + TOL_PARAM).contains(&l)
    }

    // ---------------------------------------------------------------------
    // doubly critical candidates, row `i`
    // ---------------------------------------------------------------------

    /// Calls `f` on every doubly critical pair whose row is `i`. `worth` is
    /// consulted with a lower bound on the pair distance before any work.
    fn doubly_row(
        &self,
        i: usize,
        worth: &mut dyn FnMut(f64) -> bool,
        f: &mut dyn FnMut(CriticalPair),
    ) {
        let n = self.n;
        let h = self.h;
        let xi = self.x(i);

        // vertex i with vertex l > i
        for l in i + 1..n {
            let xl = self.x(l);
            let d = xi.dist(xl);
            if !worth(d) {
                continue;
            }
            if self.vertex_extremum(l, xi).is_some() && self.vertex_extremum(i, xl).is_some() {
                f(CriticalPair::new(
                    n,
                    Site::Vertex(i),
                    Site::Vertex(l),
                    d,
                    Criticality::Doubly,
                ));
            }
        }

        // vertex i with the foot on a non-incident edge j
        for j in 0..n {
            if j == i || (j + 1) % n == i {
                continue;
            }
            if !worth(xi.dist(self.mids[j]) - 0.5 * h) {
                continue;
            }
            let l = self.foot(j, xi);
            if !Self::in_closed_edge(l) {
                continue;
            }
            let site = Site::on_edge(j, l.clamp(0.0, 1.0), n);
            if let Site::Vertex(_) = site {
                // handled by the vertex/vertex loop
                continue;
            }
            let q = self.point(site);
            if self.vertex_extremum(i, q).is_some() {
                f(CriticalPair::new(
                    n,
                    Site::Vertex(i),
                    site,
                    xi.dist(q),
                    Criticality::Doubly,
                ));
            }
        }

        // edge i with non-adjacent edge j > i: common perpendicular
        for j in i + 2..n {
            if self.adjacent(i, j) {
                continue;
            }
            if !worth(self.mids[i].dist(self.mids[j]) - h) {
                continue;
            }
            if let Some((a, b)) = self.common_perpendicular(i, j) {
                let d = self.point(a).dist(self.point(b));
                f(CriticalPair::new(n, a, b, d, Criticality::Doubly));
            }
        }
    }

    /// Mutually orthogonal interior points of edges `i` and `j`; for
    /// parallel edges the midpoint of the overlap.
    fn common_perpendicular(&self, i: usize, j: usize) -> Option<(Site, Site)> {
        let (di, dj) = (self.dirs[i], self.dirs[j]);
        let w0 = self.x(i) - self.x(j);
        let b = di.dot(dj);
        let c = di.dot(w0);
        let f = dj.dot(w0);
        let denom = 1.0 - b * b;
        let (s, t) = if denom > 1e-12 {
            let s = (b * f - c) / denom;
            (s, f + s * b)
        } else {
            // parallel: project edge j onto the line of edge i
            let sa = -c;
            let sb = sa + b * self.h;
            let lo = sa.min(sb).max(0.0);
            let hi = sa.max(sb).min(self.h);
            if hi - lo <= TOL_PARAM * self.h {
                return None;
            }
            let s = 0.5 * (lo + hi);
            (s, f + s * b)
        };
        let (ls, lt) = (s / self.h, t / self.h);
        if !Self::in_closed_edge(ls) || !Self::in_closed_edge(lt) {
            return None;
        }
        let a = Site::on_edge(i, ls.clamp(0.0, 1.0), self.n);
        let bsite = Site::on_edge(j, lt.clamp(0.0, 1.0), self.n);
        // endpoint solutions are vertex pairs and belong to the other loops
        if matches!(a, Site::Vertex(_)) || matches!(bsite, Site::Vertex(_)) {
            return None;
        }
        Some((a, bsite))
    }

    // ---------------------------------------------------------------------
    // singly critical candidates, row `i` (the free point y runs on edge i)
    // ---------------------------------------------------------------------

    /// Calls `f` on the locally minimal singly critical pairs `(y, z)` with
    /// `y` on edge `i` and `z` critical for `y`. Each such family of pairs
    /// is parametrized by the position of `y`; its infimum lies among the
    /// finitely many candidates visited here.
    fn singly_row(
        &self,
        i: usize,
        worth: &mut dyn FnMut(f64) -> bool,
        f: &mut dyn FnMut(CriticalPair),
    ) {
        let n = self.n;
        let h = self.h;
        let xi = self.x(i);
        let di = self.dirs[i];
        let y_at = |l: f64| xi + di * (l * h);

        let mut cands: Vec<f64> = Vec::with_capacity(8);

        // z a vertex other than the endpoints of edge i
        for k in 0..n {
            if k == i || k == (i + 1) % n {
                continue;
            }
            let xk = self.x(k);
            if !worth(xk.dist(self.mids[i]) - 0.5 * h) {
                continue;
            }
            cands.clear();
            cands.extend([0.0, 1.0, self.foot(i, xk)]);
            // roots of the one-sided slopes along edge i
            for d in [self.dir_in(k), self.dirs[k]] {
                let slope = di.dot(d) * h;
                if slope.abs() > 1e-15 {
                    cands.push((xk - xi).dot(d) / slope);
                }
            }
            for &l in &cands {
                if !Self::in_closed_edge(l) {
                    continue;
                }
                let l = l.clamp(0.0, 1.0);
                let y = y_at(l);
                if self.vertex_extremum(k, y).is_some() {
                    let ysite = Site::on_edge(i, l, n);
                    self.emit_singly(ysite, y, Site::Vertex(k), xk, f);
                }
            }
        }

        // z the foot of y on the interior of edge j
        for j in 0..n {
            if j == i {
                continue;
            }
            if !worth(self.mids[i].dist(self.mids[j]) - h) {
                continue;
            }
            let dj = self.dirs[j];
            let b = di.dot(dj);
            // μ(λ) = μ0 + λ b
            let mu0 = self.foot(j, xi);
            let parallel = 1.0 - b * b <= 1e-12;
            let next = (i + 1) % n == j;
            let prev = (j + 1) % n == i;
            if parallel && (next || prev) {
                continue;
            }
            cands.clear();
            cands.extend([0.0, 1.0]);
            if b.abs() > 1e-15 {
                cands.push(-mu0 / b);
                cands.push((1.0 - mu0) / b);
            }
            if parallel {
                // constant distance: any admissible λ, take the middle
                let (a0, a1) = ((-mu0) / b, (1.0 - mu0) / b);
                let lo = a0.min(a1).max(0.0);
                let hi = a0.max(a1).min(1.0);
                if hi >= lo {
                    cands.push(0.5 * (lo + hi));
                }
            } else if let Some((a, _)) = self.line_closest(i, j) {
                cands.push(a);
            }
            if (next || prev) && (b - 1.0).abs() > 1e-15 {
                // arc-distance boundary μ = λ
                cands.push(mu0 / (1.0 - b));
            }
            for &l in &cands {
                if !Self::in_closed_edge(l) {
                    continue;
                }
                let l = l.clamp(0.0, 1.0);
                let mu = mu0 + l * b;
                if !Self::in_closed_edge(mu) {
                    continue;
                }
                let mu = mu.clamp(0.0, 1.0);
                // at least one edge length of arc between y and z
                if (next && mu < l - TOL_PARAM) || (prev && l < mu - TOL_PARAM) {
                    continue;
                }
                let y = y_at(l);
                let zsite = Site::on_edge(j, mu, n);
                let z = self.point(zsite);
                let ysite = Site::on_edge(i, l, n);
                if ysite == zsite {
                    continue;
                }
                // a foot snapped onto a vertex is the limit of interior feet
                // and counts even when the vertex itself is not an extremum
                self.emit_singly(ysite, y, zsite, z, f);
            }
        }
    }

    /// Closest points of the lines through edges `i` and `j`, as fractions.
    fn line_closest(&self, i: usize, j: usize) -> Option<(f64, f64)> {
        let (di, dj) = (self.dirs[i], self.dirs[j]);
        let w0 = self.x(i) - self.x(j);
        let b = di.dot(dj);
        let denom = 1.0 - b * b;
        if denom <= 1e-12 {
            return None;
        }
        let c = di.dot(w0);
        let f = dj.dot(w0);
        let s = (b * f - c) / denom;
        Some((s / self.h, (f + s * b) / self.h))
    }

    fn emit_singly(&self, ys: Site, y: Vec3, zs: Site, z: Vec3, f: &mut dyn FnMut(CriticalPair)) {
        let d = y.dist(z);
        if d == 0.0 {
            return;
        }
        let crit = if self.is_critical_for(ys, z) {
            Criticality::Doubly
        } else {
            Criticality::Singly
        };
        f(CriticalPair::new(self.n, ys, zs, d, crit));
    }
}

fn dedup(mut pairs: Vec<CriticalPair>) -> Vec<CriticalPair> {
    pairs.sort_by(|a, b| {
        a.s.partial_cmp(&b.s)
            .unwrap()
            .then(a.t.partial_cmp(&b.t).unwrap())
    });
    let mut out: Vec<CriticalPair> = Vec::with_capacity(pairs.len());
    for c in pairs {
        if let Some(last) = out.last_mut() {
            if (last.s - c.s).abs() < 1e-12 && (last.t - c.t).abs() < 1e-12 {
                if c.criticality == Criticality::Doubly {
                    last.criticality = Criticality::Doubly;
                }
                continue;
            }
        }
        out.push(c);
    }
    out
}

/// All critical pairs of `p` of the requested family. `tol` is relative to
/// the polygon length. In singly mode the list holds the locally minimal
/// representatives of each family (doubly critical ones are tagged so).
pub fn critical_pairs(p: &Polygon, mode: Mode, tol: f64) -> Vec<CriticalPair> {
    let ctx = Ctx::new(p, tol);
    let mut out = Vec::new();
    let mut all = |_: f64| true;
    for i in 0..p.n() {
        match mode {
            Mode::Doubly => ctx.doubly_row(i, &mut all, &mut |c| out.push(c)),
            Mode::Singly => ctx.singly_row(i, &mut all, &mut |c| out.push(c)),
        }
    }
    dedup(out)
}

/// Minimal pair of one family, scanned row by row. Every row is reduced on
/// its own and the rows are merged in index order, so the result does not
/// depend on how rows are distributed over threads.
fn min_pair(p: &Polygon, mode: Mode, tol: f64) -> Option<CriticalPair> {
    let ctx = Ctx::new(p, tol);
    let row = |i: usize| -> Option<CriticalPair> {
        let best = std::cell::RefCell::new(Best::default());
        let mut worth = |lb: f64| best.borrow().worth(lb);
        let mut emit = |c: CriticalPair| best.borrow_mut().offer(c);
        match mode {
            Mode::Doubly => ctx.doubly_row(i, &mut worth, &mut emit),
            Mode::Singly => ctx.singly_row(i, &mut worth, &mut emit),
        }
        best.into_inner().0
    };
    let rows: Vec<Option<CriticalPair>> = crate::par::map_indexed(p.n(), row);
    let mut best = Best::default();
    for c in rows.into_iter().flatten() {
        best.offer(c);
    }
    best.0
}

/// Doubly critical self-distance and its achieving pair; `+∞` without pairs.
pub fn dcsd_pair(p: &Polygon) -> (f64, Option<CriticalPair>) {
    let c = min_pair(p, Mode::Doubly, DEFAULT_TOL);
    (c.map_or(f64::INFINITY, |c| c.distance), c)
}

pub fn dcsd(p: &Polygon) -> f64 {
    dcsd_pair(p).0
}

/// Singly critical self-distance and its achieving pair; `+∞` without pairs.
pub fn scsd_pair(p: &Polygon) -> (f64, Option<CriticalPair>) {
    let c = min_pair(p, Mode::Singly, DEFAULT_TOL);
    (c.map_or(f64::INFINITY, |c| c.distance), c)
}

pub fn scsd(p: &Polygon) -> f64 {
    scsd_pair(p).0
}

/// Minimum distance between non-adjacent edges (`+∞` for triangles).
pub fn min_nonadjacent_distance(p: &Polygon) -> f64 {
    let n = p.n();
    let h = p.edge_length();
    let v = p.vertices();
    let mids: Vec<Vec3> = (0..n).map(|i| v[i].lerp(v[(i + 1) % n], 0.5)).collect();
    let row = |i: usize| {
        let mut best = f64::INFINITY;
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if mids[i].dist(mids[j]) - h >= best {
                continue;
            }
            let d = segment_min_distance(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]).distance;
            best = best.min(d);
        }
        best
    };
    crate::par::map_indexed(n, row)
        .into_iter()
        .fold(f64::INFINITY, f64::min)
}

/// True iff no two non-adjacent edges come within `clearance` (absolute)
/// and no pair of adjacent edges folds back onto itself.
pub fn is_simple(p: &Polygon, clearance: f64) -> bool {
    let n = p.n();
    let v = p.vertices();
    for i in 0..n {
        // adjacent fold: the far end of one edge touching the other edge
        let (a, b, c) = (v[i], v[(i + 1) % n], v[(i + 2) % n]);
        if crate::geom::point_segment_distance(c, a, b).0 <= clearance
            || crate::geom::point_segment_distance(a, b, c).0 <= clearance
        {
            return false;
        }
    }
    min_nonadjacent_distance(p) > clearance
}

/// Full discrete-thickness report of a polygon.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThicknessReport {
    pub n: usize,
    pub length: f64,
    pub min_rad: f64,
    pub max_curv: f64,
    pub max_curv2: f64,
    pub dcsd: f64,
    pub scsd: f64,
    pub delta_n: f64,
    pub inv_delta_n: f64,
    /// `min(minRad, scsd)`, the alternative representation.
    pub min_rad_scsd: f64,
    pub binding: Binding,
    pub achieving_vertex: usize,
    pub achieving_pair: Option<CriticalPair>,
    pub scsd_pair: Option<CriticalPair>,
    pub simple: bool,
}

impl ThicknessReport {
    /// Flat JSON object; infinities become `null`.
    pub fn to_json(&self) -> Value {
        let num = |x: f64| if x.is_finite() { json!(x) } else { Value::Null };
        let pair = self.achieving_pair;
        json!({
            "n": self.n,
            "length": num(self.length),
            "min_rad": num(self.min_rad),
            "max_curv": num(self.max_curv),
            "max_curv2": num(self.max_curv2),
            "dcsd": num(self.dcsd),
            "scsd": num(self.scsd),
            "delta_n": num(self.delta_n),
            "inv_delta_n": num(self.inv_delta_n),
            "min_rad_scsd": num(self.min_rad_scsd),
            "binding": self.binding,
            "simple": self.simple,
            "achieving_vertex": self.achieving_vertex,
            "pair_s": pair.map(|c| c.s),
            "pair_t": pair.map(|c| c.t),
            "pair_kind": pair.map(|c| c.kind),
            "pair_edge_i": pair.map(|c| c.edges.0),
            "pair_edge_j": pair.map(|c| c.edges.1),
            "pair_distance": pair.map(|c| c.distance),
        })
    }
}

/// Computes `Δ_n[p]` with all the intermediate quantities.
pub fn delta_n(p: &Polygon) -> ThicknessReport {
    let simple = is_simple(p, DEFAULT_CLEARANCE * p.length());
    let (max_curv, achieving_vertex) = p.max_curv_at();
    let min_rad = 1.0 / max_curv;
    let (dcsd, achieving_pair) = dcsd_pair(p);
    let (scsd, scsd_pair) = scsd_pair(p);
    let (delta_n, inv_delta_n) = if simple {
        (min_rad.min(0.5 * dcsd), max_curv.max(2.0 / dcsd))
    } else {
        (0.0, f64::INFINITY)
    };
    // near-ties (e.g. regular polygons) count as curvature-bound
    let binding = if simple && max_curv >= (2.0 / dcsd) * (1.0 - 1e-12) {
        Binding::Curvature
    } else {
        Binding::Distance
    };
    ThicknessReport {
        n: p.n(),
        length: p.length(),
        min_rad,
        max_curv,
        max_curv2: p.max_curv2(),
        dcsd,
        scsd,
        delta_n,
        inv_delta_n,
        min_rad_scsd: min_rad.min(scsd),
        binding,
        achieving_vertex,
        achieving_pair,
        scsd_pair,
        simple,
    }
}

/// `Δ_n⁻¹` alone, skipping the singly critical scan; `+∞` when the polygon
/// is not simple at the given absolute clearance.
pub fn inverse_thickness(p: &Polygon, clearance: f64) -> f64 {
    if !is_simple(p, clearance) {
        return f64::INFINITY;
    }
    let max_curv = p.max_curv();
    if max_curv.is_infinite() {
        return f64::INFINITY;
    }
    max_curv.max(2.0 / dcsd(p))
}

/// Total exterior angle along the arc from `s` to `t` (forward, mod 1),
/// counting the full angle at endpoint vertices.
pub fn arc_total_curvature(p: &Polygon, s: f64, t: f64) -> f64 {
    let n = p.n();
    let nf = n as f64;
    let a = s.rem_euclid(1.0) * nf;
    let mut b = t.rem_euclid(1.0) * nf;
    if b < a {
        b += nf;
    }
    let first = (a - 1e-9).ceil() as i64;
    let last = (b + 1e-9).floor() as i64;
    (first..=last)
        .map(|k| p.exterior_angle(k.rem_euclid(n as i64) as usize))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn square_doubly_pairs() {
        let sq = Polygon::regular(4).unwrap();
        let pairs = critical_pairs(&sq, Mode::Doubly, DEFAULT_TOL);
        assert_eq!(pairs.len(), 4, "{pairs:#?}");
        let mut d: Vec<f64> = pairs.iter().map(|c| c.distance).collect();
        d.sort_by(f64::total_cmp);
        assert_relative_eq!(d[0], 0.25, epsilon = 1e-14);
        assert_relative_eq!(d[1], 0.25, epsilon = 1e-14);
        assert_relative_eq!(d[2], 2f64.sqrt() / 4.0, epsilon = 1e-14);
        assert_relative_eq!(d[3], 2f64.sqrt() / 4.0, epsilon = 1e-14);
        assert_eq!(
            pairs
                .iter()
                .filter(|c| c.kind == PairKind::EdgeEdge)
                .count(),
            2
        );
        assert_eq!(
            pairs
                .iter()
                .filter(|c| c.kind == PairKind::VertexVertex)
                .count(),
            2
        );
    }

    #[test]
    fn triangle_dcsd_is_height() {
        let tri = Polygon::regular(3).unwrap();
        assert_relative_eq!(dcsd(&tri), 3f64.sqrt() / 6.0, epsilon = 1e-14);
        let pairs = critical_pairs(&tri, Mode::Doubly, DEFAULT_TOL);
        assert!(pairs.iter().all(|c| c.kind != PairKind::EdgeEdge));
    }

    #[test]
    fn hexagon_distances() {
        let hex = Polygon::regular(6).unwrap();
        let w = 1.0 / (6.0 * (PI / 6.0).tan());
        assert_relative_eq!(dcsd(&hex), w, epsilon = 1e-14);
        assert_relative_eq!(scsd(&hex), w, epsilon = 1e-14);
        let singly = critical_pairs(&hex, Mode::Singly, DEFAULT_TOL);
        assert!(singly.iter().any(|c| (c.distance - w).abs() < 1e-12));
    }

    #[test]
    fn regular_reports() {
        let r4 = delta_n(&Polygon::regular(4).unwrap());
        assert!(r4.simple);
        assert_relative_eq!(r4.delta_n, 0.125, epsilon = 1e-14);
        assert_relative_eq!(r4.inv_delta_n, 8.0, epsilon = 1e-12);
        let r3 = delta_n(&Polygon::regular(3).unwrap());
        assert_relative_eq!(r3.inv_delta_n, 6.0 * 3f64.sqrt(), epsilon = 1e-12);
        assert_relative_eq!(r3.inv_delta_n, 10.3923048, epsilon = 1e-7);
        assert_eq!(r3.binding, Binding::Curvature);
    }

    #[test]
    fn coincident_vertices_give_zero() {
        // two unit triangles meeting at the origin, visited twice
        let (c, s) = ((PI / 6.0).cos(), 0.5);
        let pts = vec![
            Vec3::ZERO,
            Vec3::new(c, s, 0.0),
            Vec3::new(c, -s, 0.0),
            Vec3::ZERO,
            Vec3::new(-c, -s, 0.0),
            Vec3::new(-c, s, 0.0),
        ];
        let p = Polygon::from_vertices(pts.into_iter().map(|v| v / 6.0).collect(), 1e-9).unwrap();
        assert!(!is_simple(&p, DEFAULT_CLEARANCE));
        let r = delta_n(&p);
        assert_eq!(r.delta_n, 0.0);
        assert_eq!(r.inv_delta_n, f64::INFINITY);
        assert!(!r.simple);
    }

    #[test]
    fn regular_is_simple() {
        for n in [3, 4, 5, 10, 64] {
            assert!(is_simple(&Polygon::regular(n).unwrap(), DEFAULT_CLEARANCE));
        }
    }

    #[test]
    fn arc_curvature_between_square_corners() {
        let sq = Polygon::regular(4).unwrap();
        // between opposite edge midpoints: two corners
        assert_relative_eq!(arc_total_curvature(&sq, 0.125, 0.625), PI, epsilon = 1e-12);
        // diagonal vertices, endpoints counted in full
        assert_relative_eq!(
            arc_total_curvature(&sq, 0.0, 0.5),
            1.5 * PI,
            epsilon = 1e-12
        );
    }

    #[test]
    fn report_json_is_flat() {
        let r = delta_n(&Polygon::regular(4).unwrap());
        let v = r.to_json();
        let obj = v.as_object().unwrap();
        assert!(obj.values().all(|x| !x.is_object() && !x.is_array()));
        assert_eq!(obj["binding"], "curvature");
        assert_relative_eq!(obj["delta_n"].as_f64().unwrap(), 0.125, epsilon = 1e-14);
    }
}
