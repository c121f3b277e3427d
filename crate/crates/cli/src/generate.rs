//! Seeded instance generators.

use std::f64::consts::PI;

use polyangle_core::{Point, PointSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Shape {
    /// Uniform points in the bounding box.
    Random,
    /// Regular polygon plus its center.
    RegularCenter,
    /// Regular polygon plus uniform points well inside it.
    RegularRandom,
}

/// Axis-aligned box `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BBox {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Default for BBox {
    fn default() -> Self {
        BBox { x0: -1.0, y0: -1.0, x1: 1.0, y1: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceSpec {
    pub shape: Shape,
    /// Total number of points.
    pub n: usize,
    pub seed: u64,
    pub bbox: BBox,
    /// Corners of the regular polygon for `RegularRandom` (default 6).
    /// `RegularCenter` always uses `n − 1` corners.
    pub k: Option<usize>,
}

impl InstanceSpec {
    pub fn new(shape: Shape, n: usize, seed: u64) -> Self {
        InstanceSpec { shape, n, seed, bbox: BBox::default(), k: None }
    }

    fn corners(&self) -> usize {
        match self.shape {
            Shape::RegularCenter => self.n.saturating_sub(1),
            _ => self.k.unwrap_or(6),
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        let b = self.bbox;
        if !(b.x0 < b.x1 && b.y0 < b.y1) || ![b.x0, b.x1, b.y0, b.y1].iter().all(|v| v.is_finite()) {
            return Err(format!("empty or non-finite bounding box {b:?}"));
        }
        match self.shape {
            Shape::Random if self.n < 3 => Err(format!("need n >= 3, got {}", self.n)),
            Shape::RegularCenter if self.n < 4 => Err(format!("need n >= 4 (a triangle plus its center), got {}", self.n)),
            Shape::RegularRandom if self.corners() < 3 || self.n < self.corners() => Err(format!(
                "need k >= 3 and n >= k, got k = {}, n = {}",
                self.corners(),
                self.n
            )),
            _ => Ok(()),
        }
    }

    pub fn generate(&self) -> Result<PointSet, String> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let b = self.bbox;
        let mut pts = Vec::with_capacity(self.n);
        match self.shape {
            Shape::Random => {
                let mut seen = std::collections::HashSet::new();
                while pts.len() < self.n {
                    let p = Point::new(rng.gen_range(b.x0..b.x1), rng.gen_range(b.y0..b.y1));
                    if seen.insert((p.x.to_bits(), p.y.to_bits())) {
                        pts.push(p);
                    }
                }
            }
            Shape::RegularCenter | Shape::RegularRandom => {
                let k = self.corners();
                let (cx, cy) = ((b.x0 + b.x1) / 2.0, (b.y0 + b.y1) / 2.0);
                let radius = (b.x1 - b.x0).min(b.y1 - b.y0) / 2.0;
                pts.extend((0..k).map(|i| {
                    let t = 2.0 * PI * i as f64 / k as f64;
                    Point::new(cx + radius * t.cos(), cy + radius * t.sin())
                }));
                if self.shape == Shape::RegularCenter {
                    pts.push(Point::new(cx, cy));
                } else {
                    // inside the inscribed circle, shrunk so no point lands on an edge
                    let inner = 0.9 * radius * (PI / k as f64).cos();
                    while pts.len() < self.n {
                        let rho = inner * rng.gen::<f64>().sqrt();
                        let t = rng.gen_range(0.0..2.0 * PI);
                        let p = Point::new(cx + rho * t.cos(), cy + rho * t.sin());
                        if !pts.contains(&p) {
                            pts.push(p);
                        }
                    }
                }
            }
        }
        let s = PointSet::new(pts).map_err(|e| e.to_string())?;
        if s.all_collinear() {
            return Err("generated points are collinear".into());
        }
        Ok(s)
    }
}
