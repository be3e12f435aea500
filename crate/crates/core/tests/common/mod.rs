//! Shared test helpers: a brute-force self-distance oracle and polygon
//! fixtures.
#![allow(dead_code)]

use std::f64::consts::PI;

use ropelength::{Polygon, Vec3};

/// Self-distance minima found by sampling `(s, t)` on a uniform grid.
#[derive(Debug, Clone, Copy)]
pub struct GridOracle {
    pub dcsd: f64,
    pub scsd: f64,
}

/// Samples the polygon at `N` equally spaced parameters (`N` a multiple of
/// `n` close to `target`, so vertices are samples) and scans all pairs at
/// least one edge apart in arc distance.
///
/// The singly critical minimum can sit on the arc-distance boundary, where
/// the sampled distance is only first-order accurate; it is scanned on a
/// four times finer grid (see [`grid_scsd`]).
///
/// `z` counts as critical for `y` when its sample locally extremizes the
/// sampled squared distance (non-strict, immediate neighbours). A doubly
/// critical pair needs one side exact and lets the other be off by one
/// sample, since the two discrete best responses need not meet on the grid.
/// At a vertex extremum the distance has a kink, so the vertex side must be
/// the exact one; at an edge-interior extremum it is stationary and the
/// slack costs only second order in the spacing.
pub fn grid_oracle(p: &Polygon, target: usize) -> GridOracle {
    let n = p.n();
    let big_n = n * target.div_ceil(n);
    let pts: Vec<Vec3> = (0..big_n)
        .map(|a| p.arc_point(a as f64 / big_n as f64))
        .collect();
    let per_edge = big_n / n;
    let far = |a: usize, b: usize| {
        let d = a.abs_diff(b);
        d.min(big_n - d) >= per_edge
    };
    let f = |a: usize, b: usize| pts[a].dist(pts[b]).powi(2);

    // crit[a * N + b]: sample b extremizes the distance to sample a
    let mut crit = vec![false; big_n * big_n];
    for a in 0..big_n {
        for b in 0..big_n {
            if a == b {
                continue;
            }
            let (l, c, r) = (
                f(a, (b + big_n - 1) % big_n),
                f(a, b),
                f(a, (b + 1) % big_n),
            );
            crit[a * big_n + b] = (c <= l && c <= r) || (c >= l && c >= r);
        }
    }
    // vertex extrema sit exactly on samples, so only non-vertex neighbours
    // may lend their extremum
    let near = |a: usize, b: usize| {
        crit[a * big_n + b]
            || [(b + big_n - 1) % big_n, (b + 1) % big_n]
                .iter()
                .any(|&k| k % per_edge != 0 && crit[a * big_n + k])
    };

    let mut dcsd = f64::INFINITY;
    for a in 0..big_n {
        for b in 0..big_n {
            if a == b || !far(a, b) {
                continue;
            }
            let d = pts[a].dist(pts[b]);
            if d < dcsd
                && ((crit[a * big_n + b] && near(b, a)) || (near(a, b) && crit[b * big_n + a]))
            {
                dcsd = d;
            }
        }
    }
    GridOracle {
        dcsd,
        scsd: grid_scsd(p, 4 * target),
    }
}

/// Singly critical minimum on a grid of about `target` samples. At vertex
/// samples the extremum test compares against points a tiny parameter step
/// away instead of grid neighbours; otherwise a vertex extremum whose slope
/// is just changing sign would be detected a few samples late.
pub fn grid_scsd(p: &Polygon, target: usize) -> f64 {
    let n = p.n();
    let big_n = n * target.div_ceil(n);
    let step = 1.0 / big_n as f64;
    let pts: Vec<Vec3> = (0..big_n).map(|a| p.arc_point(a as f64 * step)).collect();
    let per_edge = big_n / n;
    let eps = 1e-9;
    let mut scsd = f64::INFINITY;
    for a in 0..big_n {
        let y = pts[a];
        let f = |b: usize| y.dist(pts[b % big_n]).powi(2);
        for b in a + per_edge..=a + big_n - per_edge {
            let c = f(b);
            let (l, r) = if b % per_edge == 0 {
                let t = (b % big_n) as f64 * step;
                (
                    y.dist(p.arc_point((t - eps).rem_euclid(1.0))).powi(2),
                    y.dist(p.arc_point(t + eps)).powi(2),
                )
            } else {
                (f(b - 1), f(b + 1))
            };
            if ((c <= l && c <= r) || (c >= l && c >= r)) && c.sqrt() < scsd {
                scsd = c.sqrt();
            }
        }
    }
    scsd
}

pub fn scaled(points: Vec<Vec3>, by: f64) -> Polygon {
    Polygon::from_vertices(points.into_iter().map(|v| v * by).collect(), 1e-9).unwrap()
}

/// A figure-eight-like 3D loop whose two crossing strands pass `gap` apart;
/// every other approach is much farther. `n = 12`, length 1.
pub fn strand_gap(gap: f64) -> Polygon {
    let a = 6.0 * gap; // half the gap before scaling by 1/12
    let knee = |p: Vec3, q: Vec3| {
        let m = p.lerp(q, 0.5);
        let d = q - p;
        let out = Vec3::new(m.x, m.y, 0.0);
        let w = (out - d * (out.dot(d) / d.norm_sq())).normalized().unwrap();
        m + w * (1.0 - d.norm_sq() / 4.0).sqrt()
    };
    let p3 = Vec3::new(1.5, -1.0, a);
    let p5 = Vec3::new(0.0, -1.5, -a);
    let p9 = Vec3::new(-1.0, 1.5, -a);
    let p11 = Vec3::new(-1.5, 0.0, a);
    let v = vec![
        Vec3::new(-0.5, 0.0, a),
        Vec3::new(0.5, 0.0, a),
        Vec3::new(1.5, 0.0, a),
        p3,
        knee(p3, p5),
        p5,
        Vec3::new(0.0, -0.5, -a),
        Vec3::new(0.0, 0.5, -a),
        Vec3::new(0.0, 1.5, -a),
        p9,
        knee(p9, p11),
        p11,
    ];
    scaled(v, 1.0 / 12.0)
}

/// Two unit triangles sharing the origin, which is visited twice.
pub fn coincident_triangles() -> Polygon {
    let c = (PI / 6.0).cos();
    scaled(
        vec![
            Vec3::ZERO,
            Vec3::new(c, 0.5, 0.0),
            Vec3::new(c, -0.5, 0.0),
            Vec3::ZERO,
            Vec3::new(-c, -0.5, 0.0),
            Vec3::new(-c, 0.5, 0.0),
        ],
        1.0 / 6.0,
    )
}

/// A planar equilateral hexagon that is convex but not regular.
pub fn convex_hexagon() -> Polygon {
    let angles = [0.0f64, 50.0, 130.0, 180.0, 230.0, 310.0];
    let mut v = Vec::new();
    let mut x = Vec3::ZERO;
    for a in angles {
        v.push(x);
        let r = a.to_radians();
        x += Vec3::new(r.cos(), r.sin(), 0.0);
    }
    scaled(v, 1.0 / 6.0)
}

/// A non-planar equilateral 8-gon: a regular octagon with alternate
/// vertices lifted up and down.
pub fn skew_octagon() -> Polygon {
    let n = 8;
    let v: Vec<Vec3> = (0..n)
        .map(|k| {
            let a = 2.0 * PI * k as f64 / n as f64;
            Vec3::new(a.cos(), a.sin(), if k % 2 == 0 { 0.35 } else { -0.35 })
        })
        .collect();
    let h = v[0].dist(v[1]);
    scaled(v, 1.0 / (n as f64 * h))
}

/// A triangle-shaped arm `x0 x1 x2` whose apex `x1`, rotated about the
/// `x0 x2` axis by `π/2`, lands on the midpoint of the strand `E0 E1`
/// underneath. The knees `T1`, `T2` close the loop away from the sweep.
pub fn blocking_strand() -> Polygon {
    let h = 3f64.sqrt() / 2.0;
    let knee = |p: Vec3, q: Vec3, out: Vec3| {
        let d = q - p;
        let w = (out - d * (out.dot(d) / d.norm_sq())).normalized().unwrap();
        p.lerp(q, 0.5) + w * (1.0 - d.norm_sq() / 4.0).sqrt()
    };
    let x0 = Vec3::ZERO;
    let x1 = Vec3::new(0.5, -h, 0.0);
    let x2 = Vec3::new(1.0, 0.0, 0.0);
    let e0 = Vec3::new(0.5, -0.5, -h);
    let e1 = Vec3::new(0.5, 0.5, -h);
    let t1 = knee(x2, e0, Vec3::new(1.0, 0.0, 0.0));
    let t2 = knee(e1, x0, Vec3::new(-1.0, 0.0, 0.0));
    scaled(vec![x0, x1, x2, t1, e0, e1, t2], 1.0 / 7.0)
}

pub fn read_fixture(name: &str) -> Polygon {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    ropelength::io::read_polygon(path).unwrap()
}
