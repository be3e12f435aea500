mod common;

use std::f64::consts::PI;

use approx::assert_relative_eq;
use ropelength::smooth::*;
use ropelength::thickness::{self, critical_pairs, delta_n, Mode, DEFAULT_TOL};
use ropelength::{Polygon, Vec3};

fn trefoil() -> ArcLengthCurve {
    CurvePreset::TREFOIL.curve(8192).unwrap()
}

#[test]
fn trefoil_samples_are_unit_speed() {
    let coarse = CurvePreset::TREFOIL.curve(4096).unwrap();
    let fine = CurvePreset::TREFOIL.curve(16384).unwrap();
    for k in 0..4096 {
        let t = (k as f64 + 0.5) / 4096.0;
        assert!(
            (coarse.velocity(t).norm() - 1.0).abs() < 1e-6,
            "speed at {t}"
        );
        assert!(
            coarse.point(t).dist(fine.point(t)) < 1e-8,
            "position at {t}"
        );
    }
}

#[test]
fn circle_inscriptions_are_regular() {
    let g = CurvePreset::Circle.curve(4096).unwrap();
    for n in [8, 16, 32, 64, 128] {
        let p = rescale_unit(&inscribe_equilateral(&g, n).unwrap().polygon);
        let expected = 2.0 * n as f64 * (PI / n as f64).tan();
        let inv = delta_n(&p).inv_delta_n;
        assert!((inv - expected).abs() < 1e-8, "n={n}: {inv} vs {expected}");
        // same shape as the regular polygon, up to a rotation about e₃
        let reg = Polygon::regular(n).unwrap();
        let c = p.centroid();
        for (a, b) in p.vertices().iter().zip(reg.vertices()) {
            assert!(((*a - c).norm() - b.norm()).abs() < 1e-12);
        }
    }
}

#[test]
fn trefoil_inscription_residuals() {
    let g = trefoil();
    let ins = inscribe_equilateral(&g, 64).unwrap();
    assert!(ins.closure_gap < 1e-10);
    let v = ins.polygon.vertices();
    for (k, &t) in ins.params.iter().enumerate() {
        assert!(v[k].dist(g.point(t)) < 1e-8);
        let chord = v[k].dist(v[(k + 1) % 64]);
        assert!((chord - ins.chord).abs() < 1e-10, "edge {k}");
    }
    // parameters advance in cyclic order
    assert!(ins.params.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn stored_trefoil_fixtures_match_fresh_inscription() {
    let g = trefoil();
    for n in [24, 48] {
        let stored = common::read_fixture(&format!("trefoil_{n}.txt"));
        let fresh = rescale_unit(&inscribe_equilateral(&g, n).unwrap().polygon);
        for (a, b) in stored.vertices().iter().zip(fresh.vertices()) {
            assert!(a.dist(*b) < 1e-12);
        }
        assert!(stored.total_curvature() > 2.0 * PI + 0.1);
    }
}

#[test]
fn figure_eight_inscription_is_not_simple() {
    let raw: Vec<(f64, Vec3)> = (0..=2000)
        .map(|k| {
            let u = 2.0 * PI * k as f64 / 2000.0;
            (u, Vec3::new(u.cos(), u.sin() * u.cos(), 0.0))
        })
        .collect();
    let g = arc_length_reparam(&raw, 2048).unwrap();
    let p = rescale_unit(&inscribe_equilateral(&g, 16).unwrap().polygon);
    assert!(!thickness::is_simple(&p, thickness::DEFAULT_CLEARANCE));
    assert_eq!(delta_n(&p).delta_n, 0.0);
    assert_eq!(smooth_thickness_proxy(&g, 1024).unwrap(), 0.0);
}

#[test]
fn w1inf_on_circle() {
    let g = CurvePreset::Circle.curve(4096).unwrap();
    let r = 1.0 / (2.0 * PI);
    let ins = inscribe_equilateral(&g, 16).unwrap();
    // unscaled inscribed polygon: the gap is the sagitta
    let raw = w1inf_distance(&ins.polygon, &g, 1600);
    assert_relative_eq!(
        raw.position,
        r * (1.0 - (PI / 16.0).cos()),
        max_relative = 1e-3
    );
    assert_relative_eq!(raw.position, 3.06e-3, max_relative = 2e-3);
    // rescaled about the centre: the polygon straddles the circle
    let unit = w1inf_distance(&rescale_unit(&ins.polygon), &g, 1600);
    let rp = 1.0 / (32.0 * (PI / 16.0).sin());
    let expected = (rp - r).max(r - rp * (PI / 16.0).cos());
    assert_relative_eq!(unit.position, expected, max_relative = 1e-3);
    for n in [64, 256] {
        let p = rescale_unit(&inscribe_equilateral(&g, n).unwrap().polygon);
        let d = w1inf_distance(&p, &g, 10 * n);
        assert!(d.derivative <= 4.0 / n as f64, "{d:?}");
        assert_relative_eq!(
            d.derivative,
            2.0 * (PI / (2.0 * n as f64)).sin(),
            max_relative = 1e-6
        );
    }
}

#[test]
fn trefoil_sweep_sandwich_and_rates() {
    let g = trefoil();
    let proxy = smooth_thickness_detail(&g, 8192).unwrap();
    assert!(proxy.simple);
    let proxy_inv = 1.0 / proxy.delta;
    let mut prev_deficit = f64::INFINITY;
    let mut prev_w: Option<W1Inf> = None;
    for n in [64, 128, 256, 512] {
        let ins = inscribe_equilateral(&g, n).unwrap();
        let p = rescale_unit(&ins.polygon);
        let r = delta_n(&p);
        assert!(r.simple);
        assert_eq!(r.inv_delta_n, r.max_curv.max(2.0 / r.dcsd));
        // liminf side: the deficit below the proxy shrinks
        let deficit = proxy_inv - r.inv_delta_n;
        assert!(deficit < prev_deficit, "n={n}");
        prev_deficit = deficit;
        // curvature of the unscaled inscribed polygon
        let bound = (1.0 + 16.0 * proxy_inv.powi(2) / (n * n) as f64) * proxy_inv;
        assert!(ins.polygon.max_curv() <= bound, "n={n}");
        // O(1/n) in both W^{1,∞} components
        let w = w1inf_distance(&p, &g, 10 * n);
        if let Some(pw) = prev_w {
            assert!(w.position <= 0.6 * pw.position, "n={n}: {w:?} after {pw:?}");
            assert!(
                w.derivative <= 0.6 * pw.derivative,
                "n={n}: {w:?} after {pw:?}"
            );
        }
        prev_w = Some(w);
        if n == 512 {
            assert!(deficit.abs() <= 0.02 * proxy_inv);
            assert!(deficit < 1e-3 * proxy_inv);
        }
    }
}

#[test]
fn trefoil_proxy_converges() {
    let g = trefoil();
    let a = smooth_thickness_proxy(&g, 4096).unwrap();
    let b = smooth_thickness_proxy(&g, 8192).unwrap();
    assert!(((a - b) / b).abs() < 1e-4, "{a} {b}");
}

#[test]
fn inscribed_dcsd_tracks_curve() {
    // on the trefoil the distance term binds with room to spare
    let g = trefoil();
    let proxy = smooth_thickness_detail(&g, 8192).unwrap();
    let delta = proxy.min_rad - 0.5 * proxy.dcsd;
    assert!(delta > 0.01);
    for n in [128, 256, 512] {
        let p = rescale_unit(&inscribe_equilateral(&g, n).unwrap().polygon);
        let w = w1inf_distance(&p, &g, 10 * n);
        if w.position >= delta / 4.0 {
            continue;
        }
        let d = thickness::dcsd(&p);
        assert!(d <= proxy.dcsd + 2.0 * w.position + 1e-6, "n={n}: {d}");
    }
}

#[test]
fn doubly_critical_limits_are_critical_on_curve() {
    let g = trefoil();
    let mut residues = Vec::new();
    for n in [64, 512] {
        let ins = inscribe_equilateral(&g, n).unwrap();
        let p = &ins.polygon;
        let (_, pair) = thickness::dcsd_pair(p);
        let c = pair.unwrap();
        // polygon parameter → curve parameter through the vertex parameters
        let to_curve = |s: f64| {
            let x = s * n as f64;
            let k = x.floor() as usize % n;
            let (a, mut b) = (ins.params[k], ins.params[(k + 1) % n]);
            if b < a {
                b += 1.0;
            }
            a + (b - a) * x.fract()
        };
        let (s, t) = (to_curve(c.s), to_curve(c.t));
        let chord = g.point(t) - g.point(s);
        let res = g
            .tangent(s)
            .dot(chord)
            .abs()
            .max(g.tangent(t).dot(chord).abs())
            / chord.norm();
        residues.push(res);
        // every doubly critical pair keeps at least π of curvature either way
        for c in critical_pairs(p, Mode::Doubly, DEFAULT_TOL) {
            assert!(thickness::arc_total_curvature(p, c.s, c.t) >= PI - 1e-6);
            assert!(thickness::arc_total_curvature(p, c.t, c.s) >= PI - 1e-6);
        }
    }
    // relative to the chord: the cosine of the angle to each tangent
    assert!(
        residues[1] < 0.5 * residues[0] && residues[1] < 5e-3,
        "{residues:?}"
    );
}
