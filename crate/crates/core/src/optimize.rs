//! Simulated annealing of `Δ_n⁻¹` over equilateral polygons with crankshaft
//! moves.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{point_segment_distance, segment_min_distance, Vec3};
use crate::polygon::Polygon;
use crate::thickness::{self, is_simple};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnealConfig {
    /// Initial temperature; `None` means half the initial objective.
    pub t0: Option<f64>,
    pub cooling: f64,
    pub steps_per_temp: usize,
    pub t_min: f64,
    pub theta_max: f64,
    pub substeps: usize,
    /// Admissibility clearance relative to the polygon length.
    pub clearance: f64,
    pub seed: u64,
    /// Hard cap on the number of proposals.
    pub max_steps: Option<usize>,
    /// Rescale the proposal angle after each temperature to keep the
    /// acceptance ratio between 0.2 and 0.5.
    pub adaptive: bool,
}

impl Default for AnnealConfig {
    fn default() -> Self {
        AnnealConfig {
            t0: None,
            cooling: 0.95,
            steps_per_temp: 200,
            t_min: 1e-4,
            theta_max: 1.0,
            substeps: 16,
            clearance: 1e-6,
            seed: 0,
            max_steps: None,
            adaptive: true,
        }
    }
}

impl AnnealConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Precondition(m.to_string()));
        if !(self.cooling > 0.0 && self.cooling < 1.0) {
            return bad("cooling factor must lie in (0, 1)");
        }
        if !(self.theta_max > 0.0 && self.theta_max <= PI) {
            return bad("theta_max must lie in (0, π]");
        }
        if self.substeps < 2 {
            return bad("need at least 2 admissibility substeps");
        }
        if self.steps_per_temp == 0 {
            return bad("steps per temperature must be positive");
        }
        if !(self.t_min > 0.0) || self.t0.is_some_and(|t| !(t > 0.0)) {
            return bad("temperatures must be positive");
        }
        if !(self.clearance >= 0.0) {
            return bad("clearance must be non-negative");
        }
        Ok(())
    }
}

/// One proposal. Inadmissible proposals carry an infinite objective.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub step: usize,
    pub temperature: f64,
    pub objective: f64,
    pub accepted: bool,
    pub i: usize,
    pub j: usize,
    pub theta: f64,
    /// Best objective seen up to and including this step.
    pub best: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnealTrace {
    pub initial: f64,
    pub records: Vec<TraceRecord>,
    pub best: Polygon,
    pub best_objective: f64,
}

impl AnnealTrace {
    pub fn accepted(&self) -> impl Iterator<Item = &TraceRecord> {
        self.records.iter().filter(|r| r.accepted)
    }

    /// CSV with columns step, temperature, objective, accepted, i, j, theta,
    /// best.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("step,temperature,objective,accepted,i,j,theta,best\n");
        for r in &self.records {
            writeln!(
                s,
                "{},{},{},{},{},{},{},{}",
                r.step,
                crate::io::fmt_f64(r.temperature),
                crate::io::fmt_f64(r.objective),
                u8::from(r.accepted),
                r.i,
                r.j,
                crate::io::fmt_f64(r.theta),
                crate::io::fmt_f64(r.best),
            )
            .unwrap();
        }
        s
    }
}

/// Vertices strictly between `i` and `j`, going forward.
fn gap(n: usize, i: usize, j: usize) -> usize {
    (j + n - i) % n
}

/// Rotates the vertices strictly between pivots `i` and `j` (forward, mod
/// `n`) by `theta` about the axis through `x_i` and `x_j`.
pub fn crankshaft_move(p: &Polygon, i: usize, j: usize, theta: f64) -> Result<Polygon> {
    let n = p.n();
    if i >= n || j >= n || gap(n, i, j) < 2 {
        return Err(Error::BadPivots(i, j));
    }
    let v = p.vertices();
    let axis = (v[j] - v[i]).normalized().ok_or(Error::BadPivots(i, j))?;
    if theta == 0.0 {
        return Ok(p.clone());
    }
    let mut pts = v.to_vec();
    let mut k = (i + 1) % n;
    while k != j {
        pts[k] = v[i] + (v[k] - v[i]).rotate_about(axis, theta);
        k = (k + 1) % n;
    }
    Ok(Polygon::from_trusted(pts, p.edge_length()))
}

/// Smallest separation between a moved and a fixed edge of `q`, the result
/// of a crankshaft move with pivots `i`, `j`. Edges sharing a pivot are
/// measured by the distance from each far endpoint to the other edge.
/// Moved/moved and fixed/fixed distances are unchanged by the move.
fn moved_fixed_separation(q: &Polygon, i: usize, j: usize) -> f64 {
    let n = q.n();
    let v = q.vertices();
    let g = gap(n, i, j);
    let mut best = f64::INFINITY;
    for a in (0..g).map(|k| (i + k) % n) {
        let (a0, a1) = (v[a], v[(a + 1) % n]);
        for b in (0..n - g).map(|k| (j + k) % n) {
            let (b0, b1) = (v[b], v[(b + 1) % n]);
            let d = if (a + 1) % n == b {
                point_segment_distance(b1, a0, a1)
                    .0
                    .min(point_segment_distance(a0, b0, b1).0)
            } else if (b + 1) % n == a {
                point_segment_distance(a1, b0, b1)
                    .0
                    .min(point_segment_distance(b0, a0, a1).0)
            } else {
                segment_min_distance(a0, a1, b0, b1).distance
            };
            best = best.min(d);
        }
    }
    best
}

/// True iff the polygon is simple with clearance `clearance` (absolute) and
/// stays so at every intermediate angle of the rotation: each of the
/// `substeps` equal sub-rotations is certified by a Lipschitz bound on the
/// edge separation, refined by bisection where needed.
pub fn move_is_admissible(
    p: &Polygon,
    i: usize,
    j: usize,
    theta: f64,
    substeps: usize,
    clearance: f64,
) -> bool {
    is_simple(p, clearance) && sweep_is_clear(p, i, j, theta, substeps, clearance)
}

/// True iff a polygon already known to be simple stays at separation
/// `> clearance` through the whole rotation, not just at sampled angles.
///
/// Every moved point travels at speed at most `r` (its largest distance to
/// the axis) per radian, so the separation is `r`-Lipschitz in the angle.
/// The sweep starts from `substeps` equal intervals and bisects any interval
/// whose endpoint separations do not certify it, up to a fixed depth.
fn sweep_is_clear(
    p: &Polygon,
    i: usize,
    j: usize,
    theta: f64,
    substeps: usize,
    clearance: f64,
) -> bool {
    const MAX_DEPTH: u32 = 12;
    let n = p.n();
    if gap(n, i, j) < 2 {
        return false;
    }
    let v = p.vertices();
    let Some(axis) = (v[j] - v[i]).normalized() else {
        return false;
    };
    let mut r: f64 = 0.0;
    let mut k = (i + 1) % n;
    while k != j {
        let d = v[k] - v[i];
        r = r.max((d - axis * d.dot(axis)).norm());
        k = (k + 1) % n;
    }
    let sep = |phi: f64| match crankshaft_move(p, i, j, phi) {
        Ok(q) => moved_fixed_separation(&q, i, j),
        Err(_) => f64::NEG_INFINITY,
    };
    let s = substeps.max(1);
    let mut stack = Vec::new();
    let mut prev = (0.0, sep(0.0));
    if prev.1 <= clearance {
        return false;
    }
    for k in 1..=s {
        let phi = theta * k as f64 / s as f64;
        let cur = (phi, sep(phi));
        if cur.1 <= clearance {
            return false;
        }
        stack.push((prev, cur, 0));
        prev = cur;
    }
    while let Some(((a, da), (b, db), depth)) = stack.pop() {
        if da.min(db) - 0.5 * r * (b - a).abs() > clearance {
            continue;
        }
        if depth == MAX_DEPTH {
            return false;
        }
        let m = 0.5 * (a + b);
        let dm = sep(m);
        if dm <= clearance {
            return false;
        }
        stack.push(((a, da), (m, dm), depth + 1));
        stack.push(((m, dm), (b, db), depth + 1));
    }
    true
}

/// `max(maxCurv, 2/dcsd)` for a polygon already known to be simple.
fn objective(p: &Polygon) -> f64 {
    let max_curv = p.max_curv();
    if max_curv.is_infinite() {
        return f64::INFINITY;
    }
    max_curv.max(2.0 / thickness::dcsd(p))
}

fn draw_move<R: Rng>(rng: &mut R, n: usize, theta_max: f64) -> (usize, usize, f64) {
    let i = rng.random_range(0..n);
    let g = if n <= 4 {
        2
    } else {
        rng.random_range(2..=n - 2)
    };
    let theta = (2.0 * rng.random::<f64>() - 1.0) * theta_max;
    (i, (i + g) % n, theta)
}

/// Metropolis annealing of `Δ_n⁻¹` under admissible crankshaft moves.
/// Returns the best polygon found and the full trace.
pub fn anneal(p0: &Polygon, cfg: &AnnealConfig) -> Result<(Polygon, AnnealTrace)> {
    cfg.validate()?;
    let clearance = cfg.clearance * p0.length();
    if !is_simple(p0, clearance) {
        return Err(Error::NotSimple);
    }
    let n = p0.n();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut cur = p0.clone();
    let mut f = objective(&cur);
    if !f.is_finite() {
        return Err(Error::NotSimple);
    }
    let initial = f;
    let mut best = (cur.clone(), f);
    let mut temp = cfg.t0.unwrap_or(0.5 * f);
    let mut theta_max = cfg.theta_max;
    let mut records = Vec::new();
    let cap = cfg.max_steps.unwrap_or(usize::MAX);
    let mut step = 0;
    'outer: while temp > cfg.t_min {
        let mut accepted_here = 0;
        for _ in 0..cfg.steps_per_temp {
            if step >= cap {
                break 'outer;
            }
            let (i, j, theta) = draw_move(&mut rng, n, theta_max);
            let u: f64 = rng.random();
            let cand = crankshaft_move(&cur, i, j, theta)
                .ok()
                .filter(|_| sweep_is_clear(&cur, i, j, theta, cfg.substeps, clearance));
            let g = cand.as_ref().map_or(f64::INFINITY, objective);
            let accepted = g.is_finite() && (g <= f || u < (-(g - f) / temp).exp());
            if accepted {
                cur = cand.unwrap();
                f = g;
                accepted_here += 1;
                if f < best.1 {
                    best = (cur.clone(), f);
                }
            }
            records.push(TraceRecord {
                step,
                temperature: temp,
                objective: g,
                accepted,
                i,
                j,
                theta,
                best: best.1,
            });
            step += 1;
        }
        if cfg.adaptive {
            let ratio = accepted_here as f64 / cfg.steps_per_temp as f64;
            if ratio > 0.5 {
                theta_max = (theta_max * 1.25).min(cfg.theta_max);
            } else if ratio < 0.2 {
                theta_max = (theta_max * 0.8).max(1e-6);
            }
        }
        temp *= cfg.cooling;
    }
    let trace = AnnealTrace {
        initial,
        records,
        best: best.0.clone(),
        best_objective: best.1,
    };
    Ok((best.0, trace))
}

/// True iff every exterior angle is within `tol` of `2π/n` and all vertices
/// lie within `tol·L` of the plane through the centroid normal to the
/// Newell normal.
pub fn is_near_regular(p: &Polygon, tol: f64) -> bool {
    let n = p.n();
    let target = 2.0 * PI / n as f64;
    if (0..n).any(|i| (p.exterior_angle(i) - target).abs() > tol) {
        return false;
    }
    let c = p.centroid();
    let v = p.vertices();
    let newell = (0..n).fold(Vec3::ZERO, |acc, i| {
        acc + (v[i] - c).cross(v[(i + 1) % n] - c)
    });
    let Some(normal) = newell.normalized() else {
        return false;
    };
    v.iter()
        .all(|x| (*x - c).dot(normal).abs() <= tol * p.length())
}

/// A random simple polygon: the regular `n`-gon after `moves` crankshaft
/// proposals with angles uniform in `[−π, π]`, each kept only if the result
/// is simple. The knot type is not controlled.
pub fn random_simple_polygon(n: usize, moves: usize, seed: u64) -> Result<Polygon> {
    let mut p = Polygon::regular(n)?;
    if n < 4 {
        return Ok(p);
    }
    let clearance = 1e-9 * p.length();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..moves {
        let (i, j, theta) = draw_move(&mut rng, n, PI);
        if let Ok(q) = crankshaft_move(&p, i, j, theta) {
            if moved_fixed_separation(&q, i, j) > clearance {
                p = q;
            }
        }
    }
    Ok(p)
}

/// Applies `moves` admissible crankshaft proposals with angles uniform in
/// `[−theta_max, theta_max]`, preserving the knot type at the checked
/// resolution.
pub fn perturb(p: &Polygon, moves: usize, theta_max: f64, seed: u64) -> Result<Polygon> {
    let clearance = 1e-6 * p.length();
    if !is_simple(p, clearance) {
        return Err(Error::NotSimple);
    }
    let mut p = p.clone();
    if p.n() < 4 {
        return Ok(p);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..moves {
        let (i, j, theta) = draw_move(&mut rng, p.n(), theta_max);
        if sweep_is_clear(&p, i, j, theta, 16, clearance) {
            p = crankshaft_move(&p, i, j, theta)?;
        }
    }
    Ok(p)
}
