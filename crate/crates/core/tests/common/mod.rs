#![allow(dead_code)]

use std::f64::consts::PI;

use polyangle_core::PointSet;
use rand::Rng;

pub fn regular_plus_center(k: usize) -> PointSet {
    let mut pts: Vec<(f64, f64)> = (0..k)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / k as f64;
            (t.cos(), t.sin())
        })
        .collect();
    pts.push((0.0, 0.0));
    PointSet::from_xy(&pts).unwrap()
}

/// `n` distinct points, not all collinear, uniform in the unit square.
pub fn random_points<R: Rng>(rng: &mut R, n: usize) -> PointSet {
    loop {
        let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen(), rng.gen())).collect();
        if let Ok(s) = PointSet::from_xy(&pts) {
            if !s.all_collinear() {
                return s;
            }
        }
    }
}

/// Distinct points on a small integer grid: collinear triples and points on
/// hull edges are common.
pub fn grid_points<R: Rng>(rng: &mut R, n: usize, side: i32) -> PointSet {
    loop {
        let mut pts: Vec<(f64, f64)> = (0..n)
            .map(|_| (rng.gen_range(0..side) as f64, rng.gen_range(0..side) as f64))
            .collect();
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pts.dedup();
        if let Ok(s) = PointSet::from_xy(&pts) {
            if !s.all_collinear() {
                return s;
            }
        }
    }
}

/// Up to `m` points at sorted random angles on a random rotated ellipse:
/// a convex polygon in counter-clockwise order.
pub fn random_convex<R: Rng>(rng: &mut R, m: usize) -> Vec<(f64, f64)> {
    let (ax, by) = (rng.gen_range(0.5..3.0), rng.gen_range(0.5..3.0));
    let rot: f64 = rng.gen_range(0.0..PI);
    let mut t: Vec<f64> = (0..m).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
    t.sort_by(f64::total_cmp);
    t.dedup_by(|a, b| (*a - *b).abs() < 1e-3);
    t.iter()
        .map(|&t| {
            let (x, y) = (ax * t.cos(), by * t.sin());
            (x * rot.cos() - y * rot.sin(), x * rot.sin() + y * rot.cos())
        })
        .collect()
}

/// A strictly interior point of a convex polygon: a convex combination with
/// positive weights.
pub fn interior_point<R: Rng>(rng: &mut R, poly: &[(f64, f64)]) -> (f64, f64) {
    let w: Vec<f64> = poly.iter().map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = w.iter().sum();
    let x = poly.iter().zip(&w).map(|(p, w)| p.0 * w).sum::<f64>() / total;
    let y = poly.iter().zip(&w).map(|(p, w)| p.1 * w).sum::<f64>() / total;
    (x, y)
}
