//! Smooth closed curves, equilateral polygons inscribed in them, and the
//! comparison quantities between the two.
//!
//! A curve enters either as an analytic [`CurvePreset`] or as a table of raw
//! closed samples. Both are resampled at `m` equal arc-length steps and
//! scaled to length 1, giving an [`ArcLengthCurve`].

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{circumradius, Vec3};
use crate::polygon::Polygon;
use crate::thickness;

/// Minimum resampling density accepted by [`arc_length_reparam`].
pub const MIN_SAMPLES: usize = 256;
/// Minimum resolution of [`smooth_thickness_proxy`].
pub const MIN_PROXY_SAMPLES: usize = 512;

// 5-point Gauss–Legendre rule on [0, 1].
const GL_X: [f64; 5] = [
    0.046_910_077_030_668,
    0.230_765_344_947_158_45,
    0.5,
    0.769_234_655_052_841_5,
    0.953_089_922_969_332,
];
const GL_W: [f64; 5] = [
    0.118_463_442_528_094_54,
    0.239_314_335_249_683_23,
    0.284_444_444_444_444_45,
    0.239_314_335_249_683_23,
    0.118_463_442_528_094_54,
];

/// Test-curve catalog.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum CurvePreset {
    Circle,
    /// `(R + ρ cos(b·θ)) (cos(a·θ), sin(a·θ)) + ρ sin(b·θ) e₃`, `θ ∈ [0, 2π)`.
    TorusKnot {
        a: u32,
        b: u32,
        big_r: f64,
        rho: f64,
    },
}

impl CurvePreset {
    pub const TREFOIL: CurvePreset = CurvePreset::TorusKnot {
        a: 2,
        b: 3,
        big_r: 2.0,
        rho: 1.0,
    };

    pub fn torus_knot(a: u32, b: u32) -> Result<CurvePreset> {
        CurvePreset::TorusKnot {
            a,
            b,
            big_r: 2.0,
            rho: 1.0,
        }
        .validated()
    }

    fn validated(self) -> Result<CurvePreset> {
        if let CurvePreset::TorusKnot { a, b, big_r, rho } = self {
            let gcd = |mut x: u32, mut y: u32| {
                while y != 0 {
                    (x, y) = (y, x % y);
                }
                x
            };
            if a == 0 || b == 0 || gcd(a, b) != 1 {
                return Err(Error::UnknownPreset(format!(
                    "torus:{a},{b} needs coprime positive a, b"
                )));
            }
            if !(rho > 0.0 && big_r > rho && big_r.is_finite()) {
                return Err(Error::UnknownPreset(format!(
                    "torus radii need R > rho > 0, got R={big_r} rho={rho}"
                )));
            }
        }
        Ok(self)
    }

    /// Position at `u ∈ [0, 1)`.
    pub fn position(&self, u: f64) -> Vec3 {
        let th = 2.0 * PI * u;
        match *self {
            CurvePreset::Circle => Vec3::new(th.cos(), th.sin(), 0.0),
            CurvePreset::TorusKnot { a, b, big_r, rho } => {
                let (a, b) = (a as f64, b as f64);
                let w = big_r + rho * (b * th).cos();
                Vec3::new(w * (a * th).cos(), w * (a * th).sin(), rho * (b * th).sin())
            }
        }
    }

    /// Derivative with respect to `u`.
    pub fn velocity(&self, u: f64) -> Vec3 {
        let th = 2.0 * PI * u;
        let v = match *self {
            CurvePreset::Circle => Vec3::new(-th.sin(), th.cos(), 0.0),
            CurvePreset::TorusKnot { a, b, big_r, rho } => {
                let (a, b) = (a as f64, b as f64);
                let w = big_r + rho * (b * th).cos();
                let dw = -rho * b * (b * th).sin();
                Vec3::new(
                    dw * (a * th).cos() - w * a * (a * th).sin(),
                    dw * (a * th).sin() + w * a * (a * th).cos(),
                    rho * b * (b * th).cos(),
                )
            }
        };
        v * (2.0 * PI)
    }

    /// Arc-length resampling with `m` samples.
    pub fn curve(&self, m: usize) -> Result<ArcLengthCurve> {
        if m < MIN_SAMPLES {
            return Err(Error::CurveSamples(format!(
                "need at least {MIN_SAMPLES} samples, got {m}"
            )));
        }
        let intervals = 4 * m.max(1024);
        Ok(resample(
            &|u| self.position(u),
            &|u| self.velocity(u),
            intervals,
            m,
        ))
    }
}

impl fmt::Display for CurvePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CurvePreset::Circle => write!(f, "circle"),
            CurvePreset::TorusKnot { a, b, big_r, rho } if big_r == 2.0 && rho == 1.0 => {
                write!(f, "torus:{a},{b}")
            }
            CurvePreset::TorusKnot { a, b, big_r, rho } => write!(f, "torus:{a},{b},{big_r},{rho}"),
        }
    }
}

impl FromStr for CurvePreset {
    type Err = Error;

    /// `circle`, `trefoil`, `torus:a,b` or `torus:a,b,R,rho`.
    fn from_str(s: &str) -> Result<CurvePreset> {
        let bad = || Error::UnknownPreset(s.to_string());
        match s.trim() {
            "circle" => Ok(CurvePreset::Circle),
            "trefoil" => Ok(CurvePreset::TREFOIL),
            other => {
                let args = other.strip_prefix("torus:").ok_or_else(bad)?;
                let parts: Vec<&str> = args.split(',').map(str::trim).collect();
                if parts.len() != 2 && parts.len() != 4 {
                    return Err(bad());
                }
                let a = parts[0].parse().map_err(|_| bad())?;
                let b = parts[1].parse().map_err(|_| bad())?;
                let (big_r, rho) = if parts.len() == 4 {
                    (
                        parts[2].parse().map_err(|_| bad())?,
                        parts[3].parse().map_err(|_| bad())?,
                    )
                } else {
                    (2.0, 1.0)
                };
                CurvePreset::TorusKnot { a, b, big_r, rho }.validated()
            }
        }
    }
}

/// A closed unit-length curve sampled at `m` equal arc-length steps.
///
/// Between samples positions are cubic Hermite interpolants of the samples
/// and unit tangents; tangents are interpolated linearly and renormalized.
#[derive(Clone, Debug)]
pub struct ArcLengthCurve {
    pos: Vec<Vec3>,
    tan: Vec<Vec3>,
    source_length: f64,
}

impl ArcLengthCurve {
    pub fn samples(&self) -> usize {
        self.pos.len()
    }

    pub fn positions(&self) -> &[Vec3] {
        &self.pos
    }

    pub fn tangents(&self) -> &[Vec3] {
        &self.tan
    }

    /// Length of the input curve before scaling to 1.
    pub fn source_length(&self) -> f64 {
        self.source_length
    }

    fn locate(&self, t: f64) -> (usize, usize, f64) {
        let m = self.pos.len();
        let x = t.rem_euclid(1.0) * m as f64;
        let k = (x.floor() as usize).min(m - 1);
        (k, (k + 1) % m, x - k as f64)
    }

    /// `γ(t)`, `t` taken mod 1.
    pub fn point(&self, t: f64) -> Vec3 {
        let (k, k1, s) = self.locate(t);
        let dt = 1.0 / self.pos.len() as f64;
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        self.pos[k] * h00
            + self.tan[k] * (h10 * dt)
            + self.pos[k1] * h01
            + self.tan[k1] * (h11 * dt)
    }

    /// Derivative of the position interpolant at `t`.
    pub fn velocity(&self, t: f64) -> Vec3 {
        let (k, k1, s) = self.locate(t);
        let m = self.pos.len() as f64;
        let s2 = s * s;
        let d00 = 6.0 * s2 - 6.0 * s;
        let d10 = 3.0 * s2 - 4.0 * s + 1.0;
        let d01 = -6.0 * s2 + 6.0 * s;
        let d11 = 3.0 * s2 - 2.0 * s;
        (self.pos[k] * d00 + self.pos[k1] * d01) * m + self.tan[k] * d10 + self.tan[k1] * d11
    }

    /// Unit tangent `γ′(t)`.
    pub fn tangent(&self, t: f64) -> Vec3 {
        let (k, k1, s) = self.locate(t);
        self.tan[k]
            .lerp(self.tan[k1], s)
            .normalized()
            .unwrap_or(self.tan[k])
    }

    /// Vertex-per-line export with a `# samples=m` header.
    pub fn to_text(&self) -> String {
        crate::io::format_points(&self.pos, Some(&format!("samples={}", self.pos.len())))
    }
}

/// Resamples a periodic parametrization `u ∈ [0, 1)` at `m` equal arc-length
/// steps, using `intervals` quadrature cells in `u`.
fn resample(
    pos: &dyn Fn(f64) -> Vec3,
    vel: &dyn Fn(f64) -> Vec3,
    intervals: usize,
    m: usize,
) -> ArcLengthCurve {
    let du = 1.0 / intervals as f64;
    let partial = |u0: f64, u1: f64| -> f64 {
        let w = u1 - u0;
        GL_X.iter()
            .zip(GL_W)
            .map(|(&x, wt)| wt * vel(u0 + x * w).norm())
            .sum::<f64>()
            * w
    };
    let mut cum = Vec::with_capacity(intervals + 1);
    cum.push(0.0);
    for k in 0..intervals {
        let u0 = k as f64 * du;
        let last = *cum.last().unwrap();
        cum.push(last + partial(u0, u0 + du));
    }
    let total = cum[intervals];

    let mut ps = Vec::with_capacity(m);
    let mut ts = Vec::with_capacity(m);
    for k in 0..m {
        let target = total * k as f64 / m as f64;
        let cell = match cum.binary_search_by(|c| c.total_cmp(&target)) {
            Ok(i) => i.min(intervals - 1),
            Err(i) => i - 1,
        };
        let (mut lo, mut hi) = (cell as f64 * du, (cell + 1) as f64 * du);
        let u0 = lo;
        let need = target - cum[cell];
        // Newton on S(u) = need, safeguarded by the cell bracket
        let mut u = u0 + du * (need / (cum[cell + 1] - cum[cell]));
        for _ in 0..50 {
            let g = partial(u0, u) - need;
            if g.abs() <= 1e-16 * total {
                break;
            }
            if g > 0.0 {
                hi = u;
            } else {
                lo = u;
            }
            let next = u - g / vel(u).norm();
            u = if next > lo && next < hi {
                next
            } else {
                0.5 * (lo + hi)
            };
            if hi - lo < 1e-17 {
                break;
            }
        }
        ps.push(pos(u) / total);
        ts.push(vel(u).normalized().expect("regular parametrization"));
    }
    ArcLengthCurve {
        pos: ps,
        tan: ts,
        source_length: total,
    }
}

/// Resamples a closed curve given as raw `(u, point)` samples with strictly
/// increasing `u`. The last sample must repeat the first point (closing the
/// curve); it is then dropped. Between raw samples the curve is the cubic
/// Hermite spline through the samples with finite-difference derivatives.
pub fn arc_length_reparam(raw: &[(f64, Vec3)], m: usize) -> Result<ArcLengthCurve> {
    if m < MIN_SAMPLES {
        return Err(Error::CurveSamples(format!(
            "need at least {MIN_SAMPLES} samples, got {m}"
        )));
    }
    if raw.len() < 5 {
        return Err(Error::CurveSamples(format!(
            "only {} raw samples",
            raw.len()
        )));
    }
    let scale = raw
        .iter()
        .map(|(_, p)| p.dist(raw[0].1))
        .fold(0.0, f64::max);
    let (first, last) = (raw[0], raw[raw.len() - 1]);
    if first.1.dist(last.1) > 1e-8 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::CurveSamples("samples do not close".into()));
    }
    for (i, w) in raw.windows(2).enumerate() {
        if !(w[1].0 > w[0].0) {
            return Err(Error::CurveSamples(format!(
                "parameters not increasing at sample {}",
                i + 1
            )));
        }
        if w[0].1 == w[1].1 {
            return Err(Error::CurveSamples(format!(
                "samples {i} and {} coincide",
                i + 1
            )));
        }
        if !w[1].1.is_finite() {
            return Err(Error::CurveSamples(format!("non-finite sample {}", i + 1)));
        }
    }
    let span = last.0 - first.0;
    let k = raw.len() - 1;
    let us: Vec<f64> = raw[..k].iter().map(|(u, _)| (u - first.0) / span).collect();
    let ps: Vec<Vec3> = raw[..k].iter().map(|&(_, p)| p).collect();
    // periodic three-point derivative on a nonuniform grid
    let gap = |i: usize| {
        if i + 1 < k {
            us[i + 1] - us[i]
        } else {
            1.0 - us[k - 1]
        }
    };
    let ds: Vec<Vec3> = (0..k)
        .map(|i| {
            let (hm, hp) = (gap((i + k - 1) % k), gap(i));
            let (pm, p0, pp) = (ps[(i + k - 1) % k], ps[i], ps[(i + 1) % k]);
            (pp - p0) * (hm / (hp * (hm + hp))) + (p0 - pm) * (hp / (hm * (hm + hp)))
        })
        .collect();
    let cell = |u: f64| -> (usize, f64, f64) {
        let u = u.rem_euclid(1.0);
        let i = match us.binary_search_by(|x| x.total_cmp(&u)) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let h = gap(i);
        (i, (u - us[i]) / h, h)
    };
    let pos = |u: f64| {
        let (i, s, h) = cell(u);
        let j = (i + 1) % k;
        let (s2, s3) = (s * s, s * s * s);
        ps[i] * (2.0 * s3 - 3.0 * s2 + 1.0)
            + ds[i] * ((s3 - 2.0 * s2 + s) * h)
            + ps[j] * (-2.0 * s3 + 3.0 * s2)
            + ds[j] * ((s3 - s2) * h)
    };
    let vel = |u: f64| {
        let (i, s, h) = cell(u);
        let j = (i + 1) % k;
        let s2 = s * s;
        (ps[i] * (6.0 * s2 - 6.0 * s) + ps[j] * (-6.0 * s2 + 6.0 * s)) / h
            + ds[i] * (3.0 * s2 - 4.0 * s + 1.0)
            + ds[j] * (3.0 * s2 - 2.0 * s)
    };
    // a few quadrature cells per raw interval, aligned with the spline knots
    let per = 4usize.max((4 * m).div_ceil(k));
    let mut curve = resample_knots(&pos, &vel, &us, per, m);
    if curve.tan.iter().any(|t| !t.is_finite()) {
        return Err(Error::CurveSamples("degenerate tangent".into()));
    }
    curve.pos.shrink_to_fit();
    Ok(curve)
}

/// Like [`resample`] but with quadrature cells subdividing the given knots,
/// so that no cell straddles a spline knot.
fn resample_knots(
    pos: &dyn Fn(f64) -> Vec3,
    vel: &dyn Fn(f64) -> Vec3,
    knots: &[f64],
    per: usize,
    m: usize,
) -> ArcLengthCurve {
    let mut edges: Vec<f64> = Vec::with_capacity(knots.len() * per + 1);
    for (i, &u) in knots.iter().enumerate() {
        let next = knots.get(i + 1).copied().unwrap_or(1.0);
        for j in 0..per {
            edges.push(u + (next - u) * j as f64 / per as f64);
        }
    }
    edges.push(1.0);
    // map a uniform parameter onto the cell edges piecewise linearly and
    // reuse the uniform resampler; the composite map stays regular
    let cells = edges.len() - 1;
    let warp = |v: f64| {
        let x = v * cells as f64;
        let i = (x.floor() as usize).min(cells - 1);
        let f = x - i as f64;
        (
            edges[i] + (edges[i + 1] - edges[i]) * f,
            (edges[i + 1] - edges[i]) * cells as f64,
        )
    };
    resample(
        &|v| pos(warp(v).0),
        &|v| {
            let (u, du) = warp(v);
            vel(u) * du
        },
        cells,
        m,
    )
}

/// Result of [`inscribe_equilateral`]: the polygon with vertices on the
/// curve, its length `L̃ = n·c`, and the curve parameters of the vertices.
#[derive(Clone, Debug)]
pub struct Inscribed {
    pub polygon: Polygon,
    pub length: f64,
    pub chord: f64,
    pub params: Vec<f64>,
    pub closure_gap: f64,
}

/// First parameter after `t0` where the curve leaves the ball of radius `c`
/// about `center`, searched within `t0 + [0, limit]`.
fn first_exit(g: &ArcLengthCurve, center: Vec3, t0: f64, c: f64, limit: f64) -> Option<f64> {
    let f = |t: f64| g.point(t).dist(center) - c;
    let step = 0.25 * c;
    let mut lo = t0;
    let mut flo = f(lo);
    let mut hi = t0;
    loop {
        hi += step;
        if hi - t0 > limit {
            return None;
        }
        let fhi = f(hi);
        if fhi >= 0.0 {
            // Illinois regula falsi on [lo, hi]
            let (mut a, mut fa, mut b, mut fb) = (lo, flo, hi, fhi);
            let mut side = 0;
            for _ in 0..100 {
                let x = (a * fb - b * fa) / (fb - fa);
                let x = if x > a && x < b { x } else { 0.5 * (a + b) };
                let fx = f(x);
                if fx == 0.0 || (b - a) < 1e-16 {
                    return Some(x);
                }
                if (fx < 0.0) == (fa < 0.0) {
                    a = x;
                    fa = fx;
                    if side == -1 {
                        fb *= 0.5;
                    }
                    side = -1;
                } else {
                    b = x;
                    fb = fx;
                    if side == 1 {
                        fa *= 0.5;
                    }
                    side = 1;
                }
            }
            return Some(if fa.abs() < fb.abs() { a } else { b });
        }
        lo = hi;
        flo = fhi;
    }
}

/// Marches `n` chords of length `c` from `γ(0)`; returns the vertex
/// parameters (unwrapped) including the endpoint of the last chord.
fn march(g: &ArcLengthCurve, n: usize, c: f64) -> Option<Vec<f64>> {
    let mut ts = Vec::with_capacity(n + 1);
    let mut t = 0.0;
    ts.push(t);
    for _ in 0..n {
        let x = g.point(t);
        t = first_exit(g, x, t, c, 0.75)?;
        ts.push(t);
    }
    Some(ts)
}

/// Equilateral `n`-gon inscribed in `γ` starting at `γ(0)`.
///
/// The common chord `c` is found by bracketed root finding on the arc
/// overshoot `u_n(c) − 1`, where `u_n(c)` is the (unwrapped) parameter
/// reached after `n` chords; the bracket is `[0.5/n, 1/n]`.
pub fn inscribe_equilateral(g: &ArcLengthCurve, n: usize) -> Result<Inscribed> {
    let fail = |reason: &str| Error::Inscribe {
        n,
        reason: reason.to_string(),
    };
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    let over = |c: f64| march(g, n, c).map(|ts| (ts[n] - 1.0, ts));
    let nf = n as f64;
    let (mut a, mut b) = (0.5 / nf, 1.0 / nf);
    let (mut fa, _) = over(a).ok_or_else(|| fail("n too small for this curve"))?;
    let (mut fb, tb) = over(b).ok_or_else(|| fail("n too small for this curve"))?;
    if !(fa < 0.0 && fb >= 0.0) {
        return Err(fail(
            "n too small for this curve: chord length not bracketed",
        ));
    }
    let mut best = (fb, b, tb);
    let mut side = 0;
    for _ in 0..80 {
        let x = (a * fb - b * fa) / (fb - fa);
        let x = if x > a && x < b { x } else { 0.5 * (a + b) };
        let (fx, tx) = over(x).ok_or_else(|| fail("chord marching failed"))?;
        if fx.abs() < best.0.abs() {
            best = (fx, x, tx);
        }
        if fx == 0.0 || b - a <= 4.0 * f64::EPSILON * b {
            break;
        }
        if fx < 0.0 {
            a = x;
            fa = fx;
            if side == -1 {
                fb *= 0.5;
            }
            side = -1;
        } else {
            b = x;
            fb = fx;
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        }
    }
    let (_, c, ts) = best;
    let verts: Vec<Vec3> = ts[..n].iter().map(|&t| g.point(t)).collect();
    let closure_gap = g.point(ts[n]).dist(verts[0]);
    let closing = verts[n - 1].dist(verts[0]);
    if closure_gap >= 1e-10 || (closing - c).abs() >= 1e-10 {
        return Err(fail(&format!(
            "closure gap {closure_gap:e} after root finding"
        )));
    }
    let polygon = Polygon::from_vertices(verts, 1e-9)?;
    Ok(Inscribed {
        polygon,
        length: nf * c,
        chord: c,
        params: ts[..n].iter().map(|t| t.rem_euclid(1.0)).collect(),
        closure_gap,
    })
}

/// Homothety about the vertex centroid to total length 1.
pub fn rescale_unit(p: &Polygon) -> Polygon {
    let c = p.centroid();
    let k = 1.0 / p.length();
    p.map_trusted(p.edge_length() * k, |v| c + (v - c) * k)
}

/// Ingredients of [`smooth_thickness_proxy`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProxyDetail {
    pub min_rad: f64,
    pub dcsd: f64,
    pub delta: f64,
    pub simple: bool,
}

/// Approximate smooth thickness from `m` samples: the smallest circumradius
/// of consecutive sample triples, against half the doubly critical
/// self-distance of the inscribed equilateral `m`-gon. Converges to `Δ[γ]`
/// as `m → ∞`; zero when that polygon is not simple.
pub fn smooth_thickness_detail(g: &ArcLengthCurve, m: usize) -> Result<ProxyDetail> {
    if m < MIN_PROXY_SAMPLES {
        return Err(Error::Precondition(format!(
            "proxy needs m ≥ {MIN_PROXY_SAMPLES}, got {m}"
        )));
    }
    let pts: Vec<Vec3> = (0..m).map(|k| g.point(k as f64 / m as f64)).collect();
    let min_rad = (0..m)
        .map(|k| circumradius(pts[(k + m - 1) % m], pts[k], pts[(k + 1) % m]))
        .fold(f64::INFINITY, f64::min);
    let fine = inscribe_equilateral(g, m)?.polygon;
    let simple = thickness::is_simple(&fine, thickness::DEFAULT_CLEARANCE * fine.length());
    let dcsd = thickness::dcsd(&fine);
    let delta = if simple { min_rad.min(0.5 * dcsd) } else { 0.0 };
    Ok(ProxyDetail {
        min_rad,
        dcsd,
        delta,
        simple,
    })
}

pub fn smooth_thickness_proxy(g: &ArcLengthCurve, m: usize) -> Result<f64> {
    Ok(smooth_thickness_detail(g, m)?.delta)
}

/// Sup distances between `p` and `γ` over a parameter grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct W1Inf {
    pub position: f64,
    pub derivative: f64,
}

/// Compares `p` and `γ` at normalized arc-length parameters: `grid` equally
/// spaced ones plus every vertex parameter, where both one-sided polygon
/// derivatives are compared. Both curves are traversed from parameter 0.
pub fn w1inf_distance(p: &Polygon, g: &ArcLengthCurve, grid: usize) -> W1Inf {
    let n = p.n();
    let mut position: f64 = 0.0;
    let mut derivative: f64 = 0.0;
    let mut visit = |t: f64, vertex: bool| {
        position = position.max(p.arc_point(t).dist(g.point(t)));
        let tg = g.tangent(t);
        derivative = derivative.max((p.arc_dir(t) - tg).norm());
        if vertex {
            derivative = derivative.max((p.arc_dir_left(t) - tg).norm());
        }
    };
    for k in 0..grid {
        visit(k as f64 / grid as f64, false);
    }
    for k in 0..n {
        visit(k as f64 / n as f64, true);
    }
    W1Inf {
        position,
        derivative,
    }
}
