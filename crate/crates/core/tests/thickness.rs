mod common;

use approx::assert_relative_eq;
use common::*;
use ropelength::thickness::{self, critical_pairs, delta_n, Mode, DEFAULT_TOL};
use ropelength::Polygon;

fn small_fixtures() -> Vec<(&'static str, Polygon)> {
    vec![
        ("triangle", Polygon::regular(3).unwrap()),
        ("square", Polygon::regular(4).unwrap()),
        ("hexagon", Polygon::regular(6).unwrap()),
        ("convex hexagon", convex_hexagon()),
        ("skew octagon", skew_octagon()),
        ("strand gap", strand_gap(0.02)),
    ]
}

#[test]
fn grid_oracle_reproduces_regular_values() {
    let sq = grid_oracle(&Polygon::regular(4).unwrap(), 2000);
    assert_relative_eq!(sq.dcsd, 0.25, epsilon = 1e-6);
    assert_relative_eq!(sq.scsd, 0.25, epsilon = 1e-6);
    let tri = grid_oracle(&Polygon::regular(3).unwrap(), 2000);
    assert_relative_eq!(tri.dcsd, 3f64.sqrt() / 6.0, epsilon = 1e-6);
}

#[test]
fn self_distances_match_grid_oracle() {
    for (name, p) in small_fixtures() {
        let o = grid_oracle(&p, 2000);
        let d = thickness::dcsd(&p);
        let s = thickness::scsd(&p);
        assert!(
            (d - o.dcsd).abs() <= 1e-4,
            "{name}: dcsd {d} vs oracle {}",
            o.dcsd
        );
        assert!(
            (s - o.scsd).abs() <= 1e-4,
            "{name}: scsd {s} vs oracle {}",
            o.scsd
        );
    }
}

#[test]
fn strand_gap_scsd() {
    let p = strand_gap(0.02);
    assert_relative_eq!(thickness::scsd(&p), 0.02, epsilon = 1e-6);
    assert_relative_eq!(thickness::dcsd(&p), 0.02, epsilon = 1e-6);
    let r = delta_n(&p);
    assert!(r.simple);
    assert_relative_eq!(r.delta_n, 0.01, epsilon = 1e-6);
}

#[test]
fn pairs_satisfy_distance_invariant() {
    for (name, p) in small_fixtures() {
        for mode in [Mode::Doubly, Mode::Singly] {
            for c in critical_pairs(&p, mode, DEFAULT_TOL) {
                let d = p.arc_point(c.s).dist(p.arc_point(c.t));
                assert!((d - c.distance).abs() <= 1e-12, "{name}: {c:?}");
                assert!(c.s < c.t && c.t < 1.0);
                let arc = (c.t - c.s).min(1.0 - (c.t - c.s));
                assert!(arc >= 1.0 / p.n() as f64 - 1e-12, "{name}: {c:?}");
            }
        }
    }
}

#[test]
fn doubly_pairs_bound_arc_curvature() {
    for (name, p) in small_fixtures() {
        for c in critical_pairs(&p, Mode::Doubly, DEFAULT_TOL) {
            let fwd = thickness::arc_total_curvature(&p, c.s, c.t);
            let back = thickness::arc_total_curvature(&p, c.t, c.s);
            assert!(
                fwd >= std::f64::consts::PI - 1e-6,
                "{name}: {c:?} fwd {fwd}"
            );
            assert!(
                back >= std::f64::consts::PI - 1e-6,
                "{name}: {c:?} back {back}"
            );
        }
    }
}

#[test]
fn invariant_under_relabeling_and_reversal() {
    for (name, p) in small_fixtures() {
        let base = delta_n(&p).inv_delta_n;
        for q in [p.relabeled(3), p.reversed()] {
            let v = delta_n(&q).inv_delta_n;
            assert!((v - base).abs() <= 1e-9 * base, "{name}: {v} vs {base}");
        }
    }
}
