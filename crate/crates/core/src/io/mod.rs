//! Input parsing, projection to meters, JSON reports and SVG output.

pub mod geojson;
pub mod project;
pub mod report;
pub mod svg;

use std::path::Path;

use crate::error::IoError;
use crate::geometry::{Point2, Polygon};

pub use geojson::{load_geojson, parse_geojson, GeoPolygon};
pub use project::{project, Projection, EARTH_RADIUS_M};
pub use report::{parse_report, write_report, Report};
pub use svg::{render_svg, write_svg};

/// A parsed input file: either a WGS84 ring or planar vertices in meters.
#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    Geo(GeoPolygon),
    Planar(Vec<Point2>),
}

/// Parses GeoJSON or `{"vertices": [[x, y], ...]}`.
pub fn parse_input(text: &str) -> Result<Input, IoError> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| IoError::Parse(e.to_string()))?;
    if let Some(verts) = v.get("vertices") {
        let pts = geojson::positions(verts).ok_or_else(|| IoError::Parse("vertices must be an array of [x, y] pairs".into()))?;
        return Ok(Input::Planar(pts.into_iter().map(Point2::from).collect()));
    }
    geojson::from_value(&v).map(Input::Geo)
}

/// A validated input polygon with the raw vertices it was built from, in
/// meters and in file order.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub polygon: Polygon,
    pub raw: Vec<Point2>,
    pub projection: Option<Projection>,
}

/// Reads an input file, projecting geographic rings to meters.
pub fn load_polygon(path: &Path) -> Result<Loaded, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let (raw, projection) = match parse_input(&text)? {
        Input::Planar(pts) => (pts, None),
        Input::Geo(g) => {
            let proj = Projection::about(&g.ring);
            (g.ring.iter().map(|&(lon, lat)| proj.forward(lon, lat)).collect(), Some(proj))
        }
    };
    Ok(Loaded {
        polygon: Polygon::validate(&raw)?,
        raw,
        projection,
    })
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<(), IoError> {
    std::fs::write(path, text).map_err(|source| IoError::Io {
        path: path.display().to_string(),
        source,
    })
}
