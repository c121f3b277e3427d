//! SVG figures: the polygon, optionally with hull, covering arcs and layers.

use std::fmt::Write;

use polyangle_core::geometry::MajorSegment;
use polyangle_core::polygonize::OnionPeeling;
use polyangle_core::{Hull, Point, PointSet, Polygon};

/// Optional overlays. The default draws the bare polygon.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overlays<'a> {
    pub hull: Option<&'a Hull>,
    /// Draw the `β_max` arc of every hull edge (needs `hull`).
    pub major_segments: bool,
    pub layers: Option<&'a OnionPeeling>,
}

const LAYER_COLORS: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// User-space coordinates: y grows upwards in the input, downwards in SVG.
fn xy(p: Point) -> (f64, f64) {
    (p.x, -p.y + 0.0)
}

fn path_through(s: &PointSet, chain: &[usize]) -> String {
    let mut d = String::new();
    for (i, &v) in chain.iter().enumerate() {
        let (x, y) = xy(s[v]);
        let _ = write!(d, "{}{x} {y} ", if i == 0 { "M" } else { "L" });
    }
    d.push('Z');
    d
}

/// Arc path from `a` to `b` along the boundary of `seg`.
pub fn arc_path(seg: &MajorSegment) -> String {
    let (_, radius) = seg.circle();
    let (ax, ay) = xy(seg.a);
    let (bx, by) = xy(seg.b);
    let large = u8::from(seg.beta > std::f64::consts::PI);
    // a left bulge runs clockwise from a to b; the y flip makes that the
    // positive-angle direction of SVG
    let sweep = u8::from(seg.side == polyangle_core::Orientation::Left);
    format!("M{ax} {ay} A{radius} {radius} 0 {large} {sweep} {bx} {by}")
}

pub fn render_svg(s: &PointSet, p: &Polygon, overlays: Overlays<'_>) -> String {
    let pts = s.points();
    let fold = |f: fn(f64, f64) -> f64, g: fn(&Point) -> f64| pts.iter().map(g).fold(g(&pts[0]), f);
    let (x0, x1) = (fold(f64::min, |p| p.x), fold(f64::max, |p| p.x));
    let (y0, y1) = (fold(f64::min, |p| p.y), fold(f64::max, |p| p.y));
    let mut arcs = Vec::new();
    if let (Some(hull), true) = (overlays.hull, overlays.major_segments) {
        for (a, b) in hull.edges() {
            arcs.push(MajorSegment::covering(s[a], s[b], hull.m()));
        }
    }
    let (w, h) = (x1 - x0, y1 - y0);
    let (mx, my) = (0.05 * w.max(h), 0.05 * w.max(h));
    let dot = 0.008 * w.max(h);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        x0 - mx,
        -y1 - my + 0.0,
        w + 2.0 * mx,
        h + 2.0 * my
    );
    let _ = writeln!(
        out,
        r#"<g fill="none" stroke-linejoin="round">"#
    );
    if let Some(hull) = overlays.hull {
        let _ = writeln!(
            out,
            r##"<path class="hull" d="{}" stroke="#999999" stroke-width="1" stroke-dasharray="4 3" vector-effect="non-scaling-stroke"/>"##,
            path_through(s, hull.vertices())
        );
    }
    for seg in &arcs {
        let _ = writeln!(
            out,
            r##"<path class="major-segment" d="{}" stroke="#bbbbdd" stroke-width="1" vector-effect="non-scaling-stroke"/>"##,
            arc_path(seg)
        );
    }
    let _ = writeln!(
        out,
        r##"<path class="polygon" d="{}" stroke="#000000" fill="#f2f2f2" fill-opacity="0.6" stroke-width="1.5" vector-effect="non-scaling-stroke"/>"##,
        path_through(s, p.chain())
    );
    let _ = writeln!(out, "</g>");

    let mut color = vec!["#000000"; pts.len()];
    if let Some(peel) = overlays.layers {
        for (i, layer) in peel.layers.iter().enumerate() {
            for c in layer {
                color[c.point] = LAYER_COLORS[i % LAYER_COLORS.len()];
            }
        }
    }
    let _ = writeln!(out, r#"<g class="points">"#);
    for (i, &pt) in pts.iter().enumerate() {
        let (x, y) = xy(pt);
        let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="{dot}" fill="{}"><title>{i}</title></circle>"#, color[i]);
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}
