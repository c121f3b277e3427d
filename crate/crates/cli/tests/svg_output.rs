use std::f64::consts::PI;

use polyangle::generate::{InstanceSpec, Shape};
use polyangle::svg::{render_svg, Overlays};
use polyangle_core::geometry::convex_hull;
use polyangle_core::{polygonize_onion, Point, PointSet, Polygon};

fn paths<'a>(doc: &'a roxmltree::Document, class: &str) -> Vec<&'a str> {
    doc.descendants()
        .filter(|n| n.has_tag_name("path") && n.attribute("class") == Some(class))
        .map(|n| n.attribute("d").unwrap())
        .collect()
}

fn numbers(d: &str) -> Vec<f64> {
    d.split(|c: char| c.is_ascii_alphabetic() || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().unwrap())
        .collect()
}

/// Center of an SVG elliptical arc with equal radii and no rotation, from
/// the endpoint parametrization of the SVG specification (appendix F.6.5),
/// and the point halfway along the drawn arc.
fn arc_center_and_mid(x1: f64, y1: f64, r: f64, large: bool, sweep: bool, x2: f64, y2: f64) -> ((f64, f64), (f64, f64)) {
    let (xp, yp) = ((x1 - x2) / 2.0, (y1 - y2) / 2.0);
    let q = xp * xp + yp * yp;
    let mut coef = ((r * r - q) / q).max(0.0).sqrt();
    if large == sweep {
        coef = -coef;
    }
    let (cx, cy) = (coef * yp + (x1 + x2) / 2.0, -coef * xp + (y1 + y2) / 2.0);
    let t1 = (y1 - cy).atan2(x1 - cx);
    let t2 = (y2 - cy).atan2(x2 - cx);
    let mut dt = t2 - t1;
    if sweep && dt < 0.0 {
        dt += 2.0 * PI;
    }
    if !sweep && dt > 0.0 {
        dt -= 2.0 * PI;
    }
    let tm = t1 + dt / 2.0;
    ((cx, cy), (cx + r * tm.cos(), cy + r * tm.sin()))
}

fn angle_at(x: Point, a: Point, b: Point) -> f64 {
    let (u, v) = ((a.x - x.x, a.y - x.y), (b.x - x.x, b.y - x.y));
    (u.0 * v.1 - u.1 * v.0).abs().atan2(u.0 * v.0 + u.1 * v.1)
}

#[test]
fn hexagon_polygon_is_a_closed_seven_vertex_path() {
    let s = InstanceSpec::new(Shape::RegularCenter, 7, 1).generate().unwrap();
    let p = polygonize_onion(&s).unwrap();
    let svg = render_svg(&s, &p.polygon, Overlays::default());
    let doc = roxmltree::Document::parse(&svg).unwrap();
    assert!(doc.root_element().has_tag_name(("http://www.w3.org/2000/svg", "svg")));
    let poly = paths(&doc, "polygon");
    assert_eq!(poly.len(), 1);
    let d = poly[0];
    assert!(d.starts_with('M') && d.ends_with('Z'));
    assert_eq!(d.matches('L').count(), 6);
    assert_eq!(numbers(d).len(), 14);
    // no overlays requested
    assert!(paths(&doc, "hull").is_empty() && paths(&doc, "major-segment").is_empty());
    assert_eq!(doc.descendants().filter(|n| n.has_tag_name("circle")).count(), 7);
}

#[test]
fn square_has_four_covering_arcs() {
    let side = 4.0;
    let s = PointSet::from_xy(&[(0., 0.), (side, 0.), (side, side), (0., side), (1., 1.5)]).unwrap();
    let hull = convex_hull(&s).unwrap();
    let p = polygonize_onion(&s).unwrap();
    let svg = render_svg(&s, &p.polygon, Overlays { hull: Some(&hull), major_segments: true, layers: None });
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let arcs = paths(&doc, "major-segment");
    assert_eq!(arcs.len(), 4);
    let want_r = side / (2.0 * (2.0 * PI / 4.0).sin());
    for d in arcs {
        let v = numbers(d);
        // M x1 y1 A rx ry rot large sweep x2 y2
        assert_eq!(v.len(), 9);
        assert!((v[2] - want_r).abs() < 1e-12 && (v[3] - want_r).abs() < 1e-12);
        let (_, mid) = arc_center_and_mid(v[0], v[1], v[2], v[5] == 1.0, v[6] == 1.0, v[7], v[8]);
        // back to input coordinates: the arc point must lie inside the square
        // and see the edge at the inscribed angle 2π/m
        let mid = Point::new(mid.0, -mid.1);
        let (a, b) = (Point::new(v[0], -v[1]), Point::new(v[7], -v[8]));
        assert!((-1e-9..=side + 1e-9).contains(&mid.x) && (-1e-9..=side + 1e-9).contains(&mid.y), "{mid:?}");
        assert!((angle_at(mid, a, b) - PI / 2.0).abs() < 1e-9);
    }
}

#[test]
fn arcs_bulge_into_the_hull_for_other_sizes() {
    for k in [3usize, 5, 7, 12] {
        let mut spec = InstanceSpec::new(Shape::RegularRandom, k + 4, k as u64);
        spec.k = Some(k);
        let s = spec.generate().unwrap();
        let hull = convex_hull(&s).unwrap();
        let svg = render_svg(&s, &Polygon::new(hull.vertices().to_vec()), Overlays { hull: Some(&hull), major_segments: true, layers: None });
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let arcs = paths(&doc, "major-segment");
        assert_eq!(arcs.len(), k);
        let want = 2.0 * PI / k as f64;
        for d in arcs {
            let v = numbers(d);
            assert_eq!(v[5] == 1.0, k > 4, "large-arc flag for k = {k}");
            let (_, mid) = arc_center_and_mid(v[0], v[1], v[2], v[5] == 1.0, v[6] == 1.0, v[7], v[8]);
            let (mid, a, b) = (Point::new(mid.0, -mid.1), Point::new(v[0], -v[1]), Point::new(v[7], -v[8]));
            assert!((angle_at(mid, a, b) - want).abs() < 1e-9, "k = {k}");
            // left of the counter-clockwise edge
            assert!((b.x - a.x) * (mid.y - a.y) - (b.y - a.y) * (mid.x - a.x) > 0.0);
        }
    }
}

#[test]
fn layers_are_colored_and_the_view_box_has_a_margin() {
    let s = InstanceSpec::new(Shape::Random, 60, 2).generate().unwrap();
    let p = polygonize_onion(&s).unwrap();
    let svg = render_svg(&s, &p.polygon, Overlays { hull: Some(&p.hull), major_segments: false, layers: p.peeling.as_ref() });
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let vb = numbers(doc.root_element().attribute("viewBox").unwrap());
    let (xs, ys): (Vec<f64>, Vec<f64>) = s.points().iter().map(|q| (q.x, q.y)).unzip();
    let fold = |v: &[f64], f: fn(f64, f64) -> f64| v.iter().copied().reduce(f).unwrap();
    let (w, h) = (fold(&xs, f64::max) - fold(&xs, f64::min), fold(&ys, f64::max) - fold(&ys, f64::min));
    let margin = 0.05 * w.max(h);
    assert!((vb[0] - (fold(&xs, f64::min) - margin)).abs() < 1e-12);
    assert!((vb[1] - (-fold(&ys, f64::max) - margin)).abs() < 1e-12);
    assert!((vb[2] - (w + 2.0 * margin)).abs() < 1e-12);
    assert!((vb[3] - (h + 2.0 * margin)).abs() < 1e-12);
    let fills: std::collections::BTreeSet<&str> = doc
        .descendants()
        .filter(|n| n.has_tag_name("circle"))
        .map(|n| n.attribute("fill").unwrap())
        .collect();
    assert_eq!(fills.len(), 1 + p.peeling.as_ref().unwrap().d().min(6));
    assert_eq!(paths(&doc, "hull").len(), 1);
}
