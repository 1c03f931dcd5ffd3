//! SVG drawing: dashed boundary, solid unit-distance edges.

use std::fmt::Write;

use super::document::PolygonDocument;

/// Pixels per diameter unit.
pub const PIXELS_PER_UNIT: f64 = 500.0;
/// Padding on each side, as a fraction of the bounding box.
pub const PADDING: f64 = 0.05;

pub fn render_svg(doc: &PolygonDocument) -> String {
    let v = &doc.vertices;
    let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for &[x, y] in v {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    let (pad_x, pad_y) = (PADDING * (max_x - min_x), PADDING * (max_y - min_y));
    let width = (max_x - min_x + 2.0 * pad_x) * PIXELS_PER_UNIT;
    let height = (max_y - min_y + 2.0 * pad_y) * PIXELS_PER_UNIT;
    // SVG y grows downwards.
    let map = |[x, y]: [f64; 2]| {
        (
            (x - min_x + pad_x) * PIXELS_PER_UNIT,
            (max_y + pad_y - y) * PIXELS_PER_UNIT,
        )
    };

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.2}\" height=\"{height:.2}\" viewBox=\"0 0 {width:.2} {height:.2}\">"
    );
    let _ = writeln!(out, "  <title>{} n={}</title>", doc.family, doc.n);
    out.push_str("  <g class=\"boundary\" stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"6 4\" fill=\"none\">\n");
    for i in 0..v.len() {
        let (a, b) = (map(v[i]), map(v[(i + 1) % v.len()]));
        let _ = writeln!(
            out,
            "    <line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\"/>",
            a.0, a.1, b.0, b.1
        );
    }
    out.push_str("  </g>\n");
    out.push_str("  <g class=\"diameter\" stroke=\"#1f4e9c\" stroke-width=\"2\" fill=\"none\">\n");
    for &[i, j] in &doc.diameter_graph.edges {
        let (a, b) = (map(v[i]), map(v[j]));
        let _ = writeln!(
            out,
            "    <line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\"/>",
            a.0, a.1, b.0, b.1
        );
    }
    out.push_str("  </g>\n</svg>\n");
    out
}
