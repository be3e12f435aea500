//! Chord comparison between curvature-bounded polygonal arcs and circles.
//!
//! A polygonal arc whose discrete curvature `κ_d,2` stays below `K` and
//! whose length `L` satisfies `K·L ≤ π` has a strictly longer chord than the
//! arc of length `L` on a circle of curvature `K`. The relaxed variant lets
//! `K·L` exceed `π` by half the curvature budget of the two end edges.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Vec3;
use crate::polygon::PolyArc;

/// Slack on the curvature precondition.
pub const CURVATURE_SLACK: f64 = 1e-12;
/// Margins below this are reported separately as numerically inconclusive.
pub const TINY_MARGIN: f64 = 1e-10;
/// Slack on the sphere chain inequality.
pub const CHAIN_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `K·L ≤ π`.
    Strict,
    /// `K·L ≤ π + K(|I₁| + |I_n|)/2`.
    Relaxed,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "strict" => Ok(Mode::Strict),
            "relaxed" => Ok(Mode::Relaxed),
            _ => Err(Error::Precondition(format!(
                "mode must be strict or relaxed, got {s:?}"
            ))),
        }
    }
}

/// Chord of an arc of length `l` on a circle of curvature `k`.
pub fn circle_chord(k: f64, l: f64) -> f64 {
    if k == 0.0 {
        l
    } else {
        (2.0 / k) * (0.5 * k * l).sin()
    }
}

/// Largest admissible length for an arc with end edges `first`, `last`.
pub fn length_bound(k: f64, mode: Mode, first: f64, last: f64) -> f64 {
    match mode {
        Mode::Strict => PI / k,
        Mode::Relaxed => PI / k + 0.5 * (first + last),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchurCase {
    pub arc: PolyArc,
    pub k: f64,
    pub length: f64,
    pub circle_chord: f64,
    pub polygon_chord: f64,
    /// `polygon_chord − circle_chord`.
    pub margin: f64,
}

/// Compares the chord of `arc` with the comparison circle's chord.
pub fn schur_check(arc: &PolyArc, k: f64, mode: Mode) -> Result<SchurCase> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Precondition(format!("K must be positive, got {k}")));
    }
    let curv = arc.max_curv2();
    if curv > k + CURVATURE_SLACK {
        return Err(Error::Precondition(format!(
            "curvature bound: maxCurv2 = {curv} exceeds K = {k}"
        )));
    }
    let edges = arc.edge_lengths();
    let length: f64 = edges.iter().sum();
    let bound = length_bound(k, mode, edges[0], edges[edges.len() - 1]);
    if length > bound * (1.0 + 1e-15) {
        return Err(Error::Precondition(format!(
            "length bound ({mode:?}): L = {length} exceeds {bound}"
        )));
    }
    let circle = circle_chord(k, length);
    let chord = arc.chord();
    Ok(SchurCase {
        arc: arc.clone(),
        k,
        length,
        circle_chord: circle,
        polygon_chord: chord,
        margin: chord - circle,
    })
}

/// Equilateral arc of `n` edges and length `l`, starting at the origin in
/// direction `e₁`. Each interior vertex bends the direction by an angle
/// drawn uniformly from `[0, K·l/n]` about a uniformly drawn axis
/// orthogonal to the current direction, so `κ_d,2 ≤ K` everywhere.
pub fn random_bounded_arc(n: usize, k: f64, l: f64, seed: u64) -> Result<PolyArc> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    bounded_arc_with(&mut rng, n, k, l, |rng, max| rng.random::<f64>() * max)
}

fn bounded_arc_with<R: Rng>(
    rng: &mut R,
    n: usize,
    k: f64,
    l: f64,
    mut bend: impl FnMut(&mut R, f64) -> f64,
) -> Result<PolyArc> {
    if n < 2 {
        return Err(Error::Precondition(format!(
            "need at least 2 edges, got {n}"
        )));
    }
    if !(k >= 0.0 && k.is_finite() && l > 0.0 && l.is_finite()) {
        return Err(Error::Precondition(format!("infeasible K = {k}, L = {l}")));
    }
    let h = l / n as f64;
    let max_bend = (k * h).min(PI);
    let mut d = Vec3::E1;
    let mut x = Vec3::ZERO;
    let mut pts = Vec::with_capacity(n + 1);
    pts.push(x);
    for step in 0..n {
        if step > 0 {
            let theta = bend(rng, max_bend);
            let a = d.any_orthogonal();
            let b = d.cross(a);
            let phi = rng.random::<f64>() * 2.0 * PI;
            let axis = a * phi.cos() + b * phi.sin();
            d = d.rotate_about(axis, theta);
        }
        x += d * h;
        pts.push(x);
    }
    PolyArc::new(pts)
}

/// Positions of an arc placed tangent to a sphere of radius `r` at `p(0)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphereReport {
    pub k: f64,
    /// `|p(a_k)| − 1/K` for vertices `k = 1..n`.
    pub distances: Vec<f64>,
    /// `⟨p(a_k) − p(0), p(0)⟩ − ⟨η(a_k) − η(0), η(0)⟩` for `k = 1..n`.
    pub chain_slack: Vec<f64>,
}

impl SphereReport {
    pub fn min_distance(&self) -> f64 {
        self.distances.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn min_chain_slack(&self) -> f64 {
        self.chain_slack
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn holds(&self) -> bool {
        self.min_distance() > 0.0 && self.min_chain_slack() >= -CHAIN_SLACK
    }
}

/// Places `arc` so that `p(0) = −r e₂` and the first edge points along `e₁`
/// (sphere centred at the origin, `r = 1/K`) and measures every vertex
/// against the sphere. The arc's first-edge normal that is mapped to `e₂`
/// is `toward_center`, projected orthogonally to the first edge; `None`
/// picks an arbitrary one.
pub fn sphere_exclusion_check(
    arc: &PolyArc,
    k: f64,
    toward_center: Option<Vec3>,
) -> Result<SphereReport> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Precondition(format!("K must be positive, got {k}")));
    }
    if !arc.is_equilateral(1e-9) {
        return Err(Error::Precondition("arc is not equilateral".into()));
    }
    let curv = arc.max_curv2();
    if curv > k + CURVATURE_SLACK {
        return Err(Error::Precondition(format!(
            "curvature bound: maxCurv2 = {curv} exceeds K = {k}"
        )));
    }
    let length = arc.length();
    if k * length > FRAC_PI_2 * (1.0 + 1e-15) {
        return Err(Error::Precondition(format!(
            "length bound: K·L = {} exceeds π/2",
            k * length
        )));
    }
    let r = 1.0 / k;
    let v = arc.vertices();
    let u1 = arc.directions()[0];
    let raw = toward_center.unwrap_or_else(|| u1.any_orthogonal());
    let e2 = (raw - u1 * raw.dot(u1))
        .normalized()
        .ok_or_else(|| Error::Precondition("sphere normal parallel to first edge".into()))?;
    let e3 = u1.cross(e2);
    let h = length / arc.edge_count() as f64;
    let mut distances = Vec::with_capacity(v.len() - 1);
    let mut chain_slack = Vec::with_capacity(v.len() - 1);
    for (idx, x) in v.iter().enumerate().skip(1) {
        let d = *x - v[0];
        let p = Vec3::new(d.dot(u1), d.dot(e2) - r, d.dot(e3));
        distances.push(p.norm() - r);
        let a = idx as f64 * h;
        // ⟨p − p(0), p(0)⟩ with p(0) = −r e₂, against the circle
        // η(a) = r(sin Ka, −cos Ka, 0)
        let lhs = -r * d.dot(e2);
        let rhs = r * r * ((k * a).cos() - 1.0);
        chain_slack.push(lhs - rhs);
    }
    Ok(SphereReport {
        k,
        distances,
        chain_slack,
    })
}

/// Summary of a randomized campaign.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub cases: usize,
    pub min_margin: f64,
    /// Cases with a non-positive margin (for the sphere check: a vertex on
    /// or inside the sphere, or a chain inequality off by more than the
    /// slack).
    pub violations: usize,
    /// Cases with `0 < margin < TINY_MARGIN`, reported but not judged.
    pub tiny: usize,
    pub margins: Vec<f64>,
}

impl CampaignSummary {
    fn from_margins(margins: Vec<f64>, violated: impl Fn(f64) -> bool) -> Self {
        CampaignSummary {
            cases: margins.len(),
            min_margin: margins.iter().copied().fold(f64::INFINITY, f64::min),
            violations: margins.iter().filter(|&&m| violated(m)).count(),
            tiny: margins
                .iter()
                .filter(|&&m| m > 0.0 && m < TINY_MARGIN)
                .count(),
            margins,
        }
    }
}

/// Draws one admissible case: `n ∈ [2, 32]`, `K ∈ [0.25, 4]`, and `L` a
/// uniform fraction of the mode's bound (exactly the bound for a quarter of
/// the strict cases).
fn draw_case(seed: u64, mode: Mode) -> Result<(PolyArc, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(2..=32usize);
    let k = 0.25 + 3.75 * rng.random::<f64>();
    let frac = if mode == Mode::Strict && rng.random::<f64>() < 0.25 {
        1.0
    } else {
        rng.random::<f64>().max(1e-3)
    };
    let lmax = match mode {
        Mode::Strict => PI / k,
        // L ≤ π/K + L/n for equal edges
        Mode::Relaxed => PI / (k * (1.0 - 1.0 / n as f64)),
    };
    let arc = bounded_arc_with(&mut rng, n, k, frac * lmax, |rng, max| {
        rng.random::<f64>() * max
    })?;
    Ok((arc, k))
}

/// Runs `cases` random admissible Schur checks; case `i` uses seed
/// `seed + i`.
pub fn schur_campaign(cases: usize, seed: u64, mode: Mode) -> Result<CampaignSummary> {
    let margins = crate::par::map_indexed(cases, |i| -> Result<f64> {
        let (arc, k) = draw_case(seed.wrapping_add(i as u64), mode)?;
        Ok(schur_check(&arc, k, mode)?.margin)
    })
    .into_iter()
    .collect::<Result<Vec<f64>>>()?;
    Ok(CampaignSummary::from_margins(margins, |m| m <= 0.0))
}

/// Runs `cases` random tangent-sphere checks with `K·L ≤ π/2` and a random
/// sphere normal; the reported margin of a case is the smallest vertex
/// distance to the sphere, and chain-inequality failures count as
/// violations.
pub fn sphere_campaign(cases: usize, seed: u64) -> Result<CampaignSummary> {
    let results = crate::par::map_indexed(cases, |i| -> Result<(f64, f64)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let n = rng.random_range(2..=32usize);
        let k = 0.25 + 3.75 * rng.random::<f64>();
        let frac = if rng.random::<f64>() < 0.25 {
            1.0
        } else {
            rng.random::<f64>().max(1e-3)
        };
        let arc = bounded_arc_with(&mut rng, n, k, frac * FRAC_PI_2 / k, |rng, max| {
            rng.random::<f64>() * max
        })?;
        let normal = Vec3::new(
            rng.random::<f64>() - 0.5,
            rng.random::<f64>() - 0.5,
            rng.random::<f64>() - 0.5,
        );
        let rep = sphere_exclusion_check(&arc, k, Some(normal))?;
        Ok((rep.min_distance(), rep.min_chain_slack()))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let chain_failures = results.iter().filter(|r| r.1 < -CHAIN_SLACK).count();
    let mut summary =
        CampaignSummary::from_margins(results.iter().map(|r| r.0).collect(), |m| m <= 0.0);
    summary.violations += chain_failures;
    Ok(summary)
}
