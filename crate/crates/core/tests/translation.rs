//! Geometric checks of the shifted-center solutions.

use std::f64::consts::PI;

use proptest::prelude::*;
use tightgon::circumscribe::tight_standard;
use tightgon::polygon::vertices;
use tightgon::translate::{
    solve_with_shift, translated_vs_concentric, ContactConstraint, Preset, TranslatedSolution,
};

/// Largest inner circumradius that fits the unit m-gon centered at `(u, 0)`,
/// from the half-plane of every outer edge.
fn max_inner_radius(n: u32, m: u32, u: f64) -> f64 {
    let (nf, mf) = (f64::from(n), f64::from(m));
    (0..m)
        .map(|k| {
            let a = (2.0 * f64::from(k) + 1.0) * PI / mf;
            let reach = (0..n)
                .map(|j| (2.0 * PI * f64::from(j) / nf - a).cos())
                .fold(f64::NEG_INFINITY, f64::max);
            ((PI / mf).cos() + u * a.cos()) / reach
        })
        .fold(f64::INFINITY, f64::min)
}

/// Golden-section maximum of `max_inner_radius` over the shift.
fn best_shift(n: u32, m: u32) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (-1.0, 1.0);
    while b - a > 1e-13 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if max_inner_radius(n, m, c) > max_inner_radius(n, m, d) {
            b = d;
        } else {
            a = c;
        }
    }
    let u = 0.5 * (a + b);
    (u, max_inner_radius(n, m, u))
}

fn check_contacts(s: &TranslatedSolution, constraints: &[ContactConstraint]) {
    let inner = vertices(&s.inner());
    let outer = vertices(&s.outer());
    for (c, &t) in constraints.iter().zip(&s.t_values) {
        let p = inner[c.j_i as usize];
        let a = outer[c.j_o as usize];
        let b = outer[(c.j_o as usize + 1) % s.m as usize];
        let e = b.sub(a);
        let recovered = p.sub(a).dot(e) / e.dot(e);
        let off_line = e.cross(p.sub(a)).abs() / e.norm();
        assert!(off_line < 1e-12, "{c:?}: {off_line:e}");
        assert!((recovered - t).abs() < 1e-12, "{c:?}: {recovered} vs {t}");
    }
}

#[test]
fn preset_contacts_lie_on_their_edges() {
    for p in Preset::ALL {
        let s = p.solve().unwrap();
        check_contacts(&s, &p.constraints());
    }
}

#[test]
fn presets_are_contained_and_tight() {
    for p in Preset::ALL {
        let s = p.solve().unwrap();
        let room = max_inner_radius(s.n, s.m, s.shift);
        // the inner polygon fits and touches at that shift
        assert!((room * s.ratio - 1.0).abs() < 1e-9, "{}: {}", p.name(), room * s.ratio);
    }
}

#[test]
fn presets_are_the_best_axis_shift() {
    for p in Preset::ALL {
        let s = p.solve().unwrap();
        let (u, room) = best_shift(s.n, s.m);
        assert!((1.0 / room - s.ratio).abs() < 1e-9, "{}: {} vs {}", p.name(), 1.0 / room, s.ratio);
        assert!((u - s.shift).abs() < 1e-6, "{}: {u} vs {}", p.name(), s.shift);
    }
}

#[test]
fn closed_forms() {
    let sqrt3 = 3f64.sqrt();
    let s = Preset::TriangleInSquare.solve().unwrap();
    assert!((s.ratio - sqrt3 / (2.0 * (sqrt3 - 1.0))).abs() < 1e-12);
    let s = Preset::SquareInTriangle.solve().unwrap();
    assert!((s.ratio - 4.0 / (3.0 * (sqrt3 - 1.0))).abs() < 1e-12);
    assert!((1.0 / s.ratio - 0.549_038).abs() < 1e-6);
    let s = Preset::TriangleInPentagon.solve().unwrap();
    assert!((1.0 / s.ratio - 0.868_6).abs() < 1e-3);
}

#[test]
fn presets_beat_the_concentric_tables() {
    for p in Preset::ALL {
        let (n, m) = p.sides();
        let c = translated_vs_concentric(n, m).unwrap();
        assert!(c.improves, "{c:?}");
    }
}

proptest! {
    #[test]
    fn zero_shift_reproduces_concentric(n in 3u32..25, m in 3u32..25) {
        let tight = tight_standard(n, m).unwrap();
        let c = [ContactConstraint::vertex_on_edge(tight.j_i, tight.j_o)];
        let s = solve_with_shift(n, m, 0.0, &c).unwrap();
        prop_assert!((s.ratio - tight.ratio).abs() < 1e-12 * tight.ratio);
        prop_assert!((s.t_values[0] - tight.t).abs() < 1e-9);
        check_contacts(&s, &c);
    }
}
