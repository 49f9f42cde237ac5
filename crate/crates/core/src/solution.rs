use serde::Serialize;

use crate::exterior::{DPath, GeodesicEngine};
use crate::geometry::predicates::point_segment_distance;
use crate::geometry::{BoundaryPoint, Point2, Polygon};

/// Stations in boundary order together with the hops that join them into a
/// closed curve around the island.
#[derive(Debug, Clone, Serialize)]
pub struct StationSolution {
    /// Polygon whose vertex 0 is the order anchor used for the station arcs.
    #[serde(skip)]
    pub polygon: Polygon,
    pub stations: Vec<BoundaryPoint>,
    pub hops: Vec<DPath>,
    pub k: usize,
    pub d: f64,
}

impl StationSolution {
    /// Joins `stations` by shortest clockwise d-paths, closing the cycle.
    pub(crate) fn assemble(engine: &GeodesicEngine<'_>, stations: Vec<BoundaryPoint>, d: f64) -> Self {
        let poly = engine.polygon();
        let l = poly.perimeter();
        let k = stations.len();
        let mut hops = Vec::with_capacity(k);
        let mut used = 0.0;
        for i in 0..k {
            let span = if i + 1 < k {
                poly.arc_distance(&stations[i], &stations[i + 1])
            } else {
                (l - used).max(0.0)
            };
            used += span;
            let mut hop = engine.path_span(&stations[i], span, d);
            hop.to = stations[(i + 1) % k];
            hops.push(hop);
        }
        Self {
            polygon: poly.clone(),
            stations,
            hops,
            k,
            d,
        }
    }

    pub fn max_hop(&self) -> f64 {
        self.hops.iter().map(|h| h.total_length).fold(0.0, f64::max)
    }

    /// Closed curve through all hops, first point repeated at the end.
    pub fn cycle(&self) -> Vec<Point2> {
        let mut out = Vec::new();
        for hop in &self.hops {
            let pl = hop.polyline();
            if out.is_empty() {
                out.extend(pl);
            } else {
                out.extend(pl.into_iter().skip(1));
            }
        }
        out
    }

    /// Station arcs measured clockwise from the first station.
    pub fn relative_arcs(&self) -> Vec<f64> {
        let s0 = self.stations[0];
        self.stations.iter().map(|s| self.polygon.arc_distance(&s0, s)).collect()
    }

    /// Checks ordering, hop lengths and that every hull vertex is on the curve.
    pub fn check(&self) -> Result<(), String> {
        if self.stations.is_empty() || self.stations.len() != self.k || self.hops.len() != self.k {
            return Err("station and hop counts disagree".into());
        }
        let arcs = self.relative_arcs();
        if arcs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(format!("stations not strictly increasing: {arcs:?}"));
        }
        if self.max_hop() > self.d + 1e-9 {
            return Err(format!("hop of length {} exceeds d = {}", self.max_hop(), self.d));
        }
        let cycle = self.cycle();
        for h in self.polygon.hull_points() {
            let near = cycle
                .windows(2)
                .map(|w| point_segment_distance(h, w[0], w[1]).0)
                .fold(f64::INFINITY, f64::min);
            if near > 1e-6 {
                return Err(format!("hull vertex ({}, {}) is {near} off the curve", h.x, h.y));
            }
        }
        Ok(())
    }
}
