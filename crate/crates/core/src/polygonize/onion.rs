//! Angular onion peeling: all hull edges sweep their arcs concurrently and
//! claim inner points in rounds.

use crate::geometry::{convex_hull, Hull, PointSet};

use super::sweep::{covering_measure, SweepKey};
use super::PolygonizeError;

/// A point met by the sweep arc of a hull edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Claim {
    pub edge: usize,
    pub point: usize,
    pub measure: f64,
}

/// How the concurrent sweep resolves a round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PeelMode {
    /// Every active arc advances to its own next unclaimed point; each edge
    /// claims at most one point per round.
    #[default]
    PerEdge,
    /// Only the globally earliest hit is claimed in each round.
    GlobalHit,
}

/// Layers produced by the concurrent sweep. `d` is the number of rounds.
#[derive(Debug, Clone, PartialEq)]
pub struct OnionPeeling {
    pub layers: Vec<Vec<Claim>>,
    pub mode: PeelMode,
}

impl OnionPeeling {
    /// Depth of the peeling (0 when there are no inner points).
    pub fn d(&self) -> usize {
        self.layers.len()
    }

    pub fn claims(&self) -> impl Iterator<Item = &Claim> {
        self.layers.iter().flatten()
    }

    /// Points claimed by hull edge `j`, in claiming order.
    pub fn claimed_by(&self, j: usize) -> Vec<usize> {
        self.claims().filter(|c| c.edge == j).map(|c| c.point).collect()
    }
}

/// For every hull edge, the inner points inside its closed covering segment,
/// sorted in the order its sweep arc meets them.
pub(crate) fn sweep_lists(s: &PointSet, hull: &Hull) -> Vec<Vec<Claim>> {
    let m = hull.m();
    hull.edges()
        .enumerate()
        .map(|(j, (a, b))| {
            let mut keys: Vec<SweepKey> = hull
                .inner()
                .iter()
                .filter_map(|&x| {
                    covering_measure(s, a, b, x, m).map(|mu| SweepKey::new(s, a, b, x, mu))
                })
                .collect();
            keys.sort_by(SweepKey::cmp);
            keys.into_iter()
                .map(|k| Claim {
                    edge: j,
                    point: k.index,
                    measure: k.measure,
                })
                .collect()
        })
        .collect()
}

/// Depth and layers of the angular onion peeling of `s`.
pub fn onion_depth(s: &PointSet) -> Result<OnionPeeling, PolygonizeError> {
    let hull = convex_hull(s)?;
    peel(s, &hull, PeelMode::PerEdge)
}

pub fn peel(s: &PointSet, hull: &Hull, mode: PeelMode) -> Result<OnionPeeling, PolygonizeError> {
    let lists = sweep_lists(s, hull);
    let m = hull.m();
    let mut claimed = vec![false; s.len()];
    let mut cursor = vec![0usize; m];
    let mut remaining = hull.r();
    let mut layers = Vec::new();
    while remaining > 0 {
        // each active arc's next unclaimed point
        let mut hits: Vec<Claim> = Vec::with_capacity(m);
        for j in 0..m {
            let list = &lists[j];
            while cursor[j] < list.len() && claimed[list[cursor[j]].point] {
                cursor[j] += 1;
            }
            if let Some(c) = list.get(cursor[j]) {
                hits.push(*c);
            }
        }
        if hits.is_empty() {
            let point = hull
                .inner()
                .iter()
                .copied()
                .find(|&x| !claimed[x])
                .unwrap_or_default();
            return Err(PolygonizeError::UnclaimedPoint { point });
        }
        let earlier = |p: &Claim, q: &Claim| {
            p.measure
                .total_cmp(&q.measure)
                .then(p.edge.cmp(&q.edge))
                .is_lt()
        };
        let mut layer: Vec<Claim> = Vec::new();
        match mode {
            PeelMode::PerEdge => {
                for h in &hits {
                    // an arc loses a shared hit to one that meets it strictly earlier
                    let wins = hits
                        .iter()
                        .filter(|o| o.point == h.point)
                        .all(|o| o.edge == h.edge || earlier(h, o));
                    if wins {
                        layer.push(*h);
                    }
                }
            }
            PeelMode::GlobalHit => {
                let first = hits
                    .iter()
                    .copied()
                    .reduce(|p, q| if earlier(&q, &p) { q } else { p });
                layer.extend(first);
            }
        }
        for c in &layer {
            claimed[c.point] = true;
        }
        remaining -= layer.len();
        layers.push(layer);
    }
    Ok(OnionPeeling { layers, mode })
}

/// Sequential claiming: edges in hull order, each taking every still
/// unclaimed point inside its covering segment. Returns per-edge claims in
/// sweep order.
pub(crate) fn claim_edgewise(s: &PointSet, hull: &Hull) -> Result<Vec<Vec<Claim>>, PolygonizeError> {
    let lists = sweep_lists(s, hull);
    let mut claimed = vec![false; s.len()];
    let mut out = Vec::with_capacity(hull.m());
    for list in lists {
        let mine: Vec<Claim> = list.into_iter().filter(|c| !claimed[c.point]).collect();
        for c in &mine {
            claimed[c.point] = true;
        }
        out.push(mine);
    }
    if let Some(&point) = hull.inner().iter().find(|&&x| !claimed[x]) {
        return Err(PolygonizeError::UnclaimedPoint { point });
    }
    Ok(out)
}
