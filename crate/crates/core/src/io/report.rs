use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Projection;
use crate::certify::{CertificationReport, MinDistanceResult};
use crate::error::IoError;
use crate::geometry::predicates::point_segment_distance;
use crate::geometry::{Point2, Polygon};
use crate::solution::StationSolution;

fn r6(v: f64) -> f64 {
    if v.is_finite() {
        let r = (v * 1e6).round() / 1e6;
        if r == 0.0 {
            0.0
        } else {
            r
        }
    } else {
        v
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub eps: f64,
    pub alpha_d: usize,
    pub alpha_d_plus_eps: usize,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationRecord {
    pub x: f64,
    pub y: f64,
    pub arc: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lat: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HopRecord {
    pub from_idx: usize,
    pub to_idx: usize,
    pub length_m: f64,
    /// Polyline of the hop, from station to station.
    pub legs: Vec<[f64; 2]>,
}

/// Run summary. Field order is the serialized key order; every float is
/// rounded to 6 decimals when the report is built.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projection: Option<String>,
    pub d_m: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    pub epsilon_trace: Vec<TraceRecord>,
    pub k: usize,
    /// `None` when no certification was attempted.
    pub certified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_low: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_high: Option<usize>,
    pub stations: Vec<StationRecord>,
    pub hops: Vec<HopRecord>,
    pub total_seconds: f64,
}

impl Report {
    /// Report for a plain solver run.
    pub fn from_solution(mode: &str, sol: &StationSolution, epsilon: Option<f64>, projection: Option<&Projection>) -> Self {
        let stations = sol
            .stations
            .iter()
            .map(|s| {
                let ll = projection.map(|p| p.inverse(s.point));
                StationRecord {
                    x: r6(s.point.x),
                    y: r6(s.point.y),
                    arc: r6(s.arc),
                    lon: ll.map(|v| r6(v.0)),
                    lat: ll.map(|v| r6(v.1)),
                }
            })
            .collect();
        let hops = sol
            .hops
            .iter()
            .enumerate()
            .map(|(i, h)| HopRecord {
                from_idx: i,
                to_idx: (i + 1) % sol.k,
                length_m: r6(h.total_length),
                legs: h.polyline().into_iter().map(|p| [r6(p.x), r6(p.y)]).collect(),
            })
            .collect();
        Self {
            mode: mode.to_string(),
            projection: projection.map(Projection::describe),
            d_m: r6(sol.d),
            epsilon: epsilon.map(r6),
            epsilon_trace: Vec::new(),
            k: sol.k,
            certified: None,
            k_low: None,
            k_high: None,
            stations,
            hops,
            total_seconds: 0.0,
        }
    }

    /// Attaches the outcome of a certification loop.
    pub fn with_certification(mut self, cert: &CertificationReport) -> Self {
        self.epsilon_trace = cert
            .epsilon_trace
            .iter()
            .map(|e| TraceRecord {
                eps: r6(e.eps),
                alpha_d: e.alpha_d,
                alpha_d_plus_eps: e.alpha_d_plus_eps,
                seconds: r6(e.seconds),
            })
            .collect();
        self.certified = Some(cert.certified());
        self.k_low = Some(cert.k_low);
        self.k_high = Some(cert.k_high);
        self
    }

    pub fn from_min_distance(r: &MinDistanceResult, projection: Option<&Projection>) -> Self {
        let mut rep = Self::from_solution("mindist", &r.stations, Some(r.epsilon), projection);
        rep.d_m = r6(r.d_star);
        rep
    }

    pub fn with_seconds(mut self, s: f64) -> Self {
        self.total_seconds = r6(s);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Re-checks the stored solution against `poly`: increasing arcs, hop
    /// lengths within `d` and every hull vertex on the hop curve. The slack
    /// covers the 6-decimal rounding.
    pub fn check_against(&self, poly: &Polygon) -> Result<(), String> {
        const SLACK: f64 = 1e-5;
        if self.stations.len() != self.k || self.hops.len() != self.k || self.k == 0 {
            return Err("station and hop counts disagree".into());
        }
        let rel: Vec<f64> = {
            let a0 = self.stations[0].arc;
            let l = poly.perimeter();
            self.stations.iter().map(|s| (s.arc - a0).rem_euclid(l)).collect()
        };
        if rel.windows(2).any(|w| w[1] <= w[0]) {
            return Err("station arcs not increasing".into());
        }
        let mut curve: Vec<Point2> = Vec::new();
        for (i, h) in self.hops.iter().enumerate() {
            if h.from_idx != i || h.to_idx != (i + 1) % self.k {
                return Err(format!("hop {i} has wrong endpoints"));
            }
            if h.length_m > self.d_m + SLACK {
                return Err(format!("hop {i} longer than d"));
            }
            let pts: Vec<Point2> = h.legs.iter().map(|&[x, y]| Point2::new(x, y)).collect();
            let len: f64 = pts.windows(2).map(|w| w[0].dist(w[1])).sum();
            if (len - h.length_m).abs() > SLACK * pts.len().max(1) as f64 {
                return Err(format!("hop {i} polyline length {len} != {}", h.length_m));
            }
            let (s, t) = (&self.stations[h.from_idx], &self.stations[h.to_idx]);
            let ends = [pts.first(), pts.last()];
            if ends[0].map_or(true, |p| p.dist(Point2::new(s.x, s.y)) > SLACK)
                || ends[1].map_or(true, |p| p.dist(Point2::new(t.x, t.y)) > SLACK)
            {
                return Err(format!("hop {i} does not join its stations"));
            }
            curve.extend(pts);
        }
        for h in poly.hull_points() {
            let near = curve
                .windows(2)
                .map(|w| point_segment_distance(h, w[0], w[1]).0)
                .fold(f64::INFINITY, f64::min);
            if near > SLACK {
                return Err(format!("hull vertex ({}, {}) off the curve", h.x, h.y));
            }
        }
        Ok(())
    }
}

pub fn write_report(report: &Report, path: &Path) -> Result<(), IoError> {
    super::write_text(path, &(report.to_json() + "\n"))
}

pub fn parse_report(text: &str) -> Result<Report, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Parse(e.to_string()))
}
