//! Static SVG drawings of nested polygons.

use std::fmt::Write;

use tightgon::circumscribe::{rotated_with_code, s_heuristic};
use tightgon::nest::{cascade, CascadeSpec, Mode};
use tightgon::polygon::{vertices, Point2, PolygonSpec};
use tightgon::translate::Preset;
use tightgon::Result;

pub struct Style {
    pub size: u32,
    pub stroke: String,
    /// In pixels, independent of the model scale.
    pub stroke_width: f64,
}

/// Innermost polygon first, every polygon in model units.
pub fn cascade_shapes(spec: &CascadeSpec) -> Result<Vec<PolygonSpec>> {
    let result = cascade(spec)?;
    result
        .sides
        .iter()
        .zip(result.radii())
        .zip(result.absolute_angles())
        .map(|((&n, r), a)| Ok(PolygonSpec::new(n, r)?.with_rotation(a)))
        .collect()
}

pub fn pair_shapes(n: u32, m: u32, mode: Mode) -> Result<Vec<PolygonSpec>> {
    let s = match mode {
        Mode::Standard => 0,
        Mode::Rotated => s_heuristic(n, m)?,
    };
    let sol = rotated_with_code(n, m, s)?;
    Ok(vec![
        PolygonSpec::new(n, 1.0)?,
        PolygonSpec::new(m, sol.base.ratio)?.with_rotation(sol.alpha),
    ])
}

/// Inner polygon at the origin with unit circumradius, outer one shifted.
pub fn preset_shapes(preset: Preset) -> Result<Vec<PolygonSpec>> {
    let sol = preset.solve()?;
    Ok(vec![
        PolygonSpec::new(sol.n, 1.0)?,
        PolygonSpec::new(sol.m, sol.ratio)?.with_center(Point2::new(sol.shift * sol.ratio, 0.0)),
    ])
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('"', "&quot;").replace('<', "&lt;")
}

pub fn render(shapes: &[PolygonSpec], style: &Style) -> String {
    let reach = shapes
        .iter()
        .flat_map(vertices)
        .map(|v| v.norm())
        .fold(0.0, f64::max);
    let half = 1.05 * reach;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{0}" viewBox="{1} {1} {2} {2}">"#,
        style.size,
        fmt(-half),
        fmt(2.0 * half)
    );
    // y up, as in the model
    let _ = writeln!(
        out,
        r#"<g transform="scale(1,-1)" fill="none" stroke="{}">"#,
        escape(&style.stroke)
    );
    for p in shapes {
        let points: Vec<String> = vertices(p)
            .into_iter()
            .map(|v| format!("{},{}", fmt(v.x), fmt(v.y)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polygon data-n="{}" stroke-width="{}" vector-effect="non-scaling-stroke" points="{}"/>"#,
            p.n(),
            style.stroke_width,
            points.join(" ")
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

fn fmt(x: f64) -> String {
    // avoid "-0.000000000000"
    let s = format!("{x:.12}");
    if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        "0.000000000000".into()
    } else {
        s
    }
}
