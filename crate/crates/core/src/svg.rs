//! Standalone SVG drawing of one Newton polygon. Valuations grow upward.

use std::fmt::Write;

use crate::poly::IntPoly;
use crate::polygon::{valuations, NewtonPolygon};

const UNIT: usize = 40;
const MARGIN: usize = 40;

/// Lattice points of `f`, the hull as a single polyline, and a label at
/// each vertex.
pub fn render_polygon(f: &IntPoly, polygon: &NewtonPolygon) -> String {
    let points: Vec<(usize, u64)> = valuations(f, polygon.prime())
        .into_iter()
        .enumerate()
        .filter_map(|(i, v)| v.finite().map(|v| (i, v)))
        .collect();
    let max_i = polygon.degree();
    let max_v = points.iter().map(|&(_, v)| v).max().unwrap_or(0) as usize;
    let width = 2 * MARGIN + max_i * UNIT;
    let height = 2 * MARGIN + max_v * UNIT;
    let px = |i: usize| MARGIN + i * UNIT;
    let py = |v: u64| MARGIN + (max_v - v as usize) * UNIT;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"  <title>Newton polygon of {f} at p = {}</title>"#,
        polygon.prime()
    );
    let _ = writeln!(
        out,
        r##"  <g stroke="#bbb" stroke-width="1"><line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}"/><line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}"/></g>"##,
        x0 = px(0),
        y0 = py(0),
        x1 = px(max_i),
        y1 = py(max_v as u64),
    );
    let hull: Vec<String> = polygon
        .vertices()
        .iter()
        .map(|p| format!("{},{}", px(p.i), py(p.v)))
        .collect();
    let _ = writeln!(
        out,
        r##"  <polyline points="{}" fill="none" stroke="#1f5fa8" stroke-width="2"/>"##,
        hull.join(" ")
    );
    for &(i, v) in &points {
        let _ = writeln!(
            out,
            r##"  <circle cx="{}" cy="{}" r="3" fill="#333"/>"##,
            px(i),
            py(v)
        );
    }
    for p in polygon.vertices() {
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-family="monospace" font-size="11">({},{})</text>"#,
            px(p.i) + 5,
            py(p.v) - 6,
            p.i,
            p.v
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::build_polygon;
    use crate::valuation::Prime;

    #[test]
    fn one_polyline_and_a_label_per_vertex() {
        let f = IntPoly::from_i64s(&[2, 2, 1]);
        let poly = build_polygon(&f, Prime::new(2).unwrap()).unwrap();
        let svg = render_polygon(&f, &poly);
        assert!(svg.starts_with("<svg xmlns="));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(svg.contains(">(0,1)</text>"));
        assert!(svg.contains(">(2,0)</text>"));
        // (0,1) sits above (2,0)
        assert!(svg.contains(r#"points="40,40 120,80""#));
    }
}
