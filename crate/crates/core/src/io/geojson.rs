use std::path::Path;

use serde_json::Value;

use crate::error::IoError;

/// Outer ring of a polygon in WGS84 degrees, `(lon, lat)`, not closed.
#[derive(Debug, Clone, PartialEq)]
pub struct GeoPolygon {
    pub ring: Vec<(f64, f64)>,
}

pub(crate) fn positions(v: &Value) -> Option<Vec<(f64, f64)>> {
    v.as_array()?
        .iter()
        .map(|p| {
            let a = p.as_array()?;
            if a.len() < 2 {
                return None;
            }
            Some((a[0].as_f64()?, a[1].as_f64()?))
        })
        .collect()
}

fn ring_of(coords: &Value) -> Result<GeoPolygon, IoError> {
    let outer = coords
        .as_array()
        .and_then(|rings| rings.first())
        .ok_or_else(|| IoError::Parse("polygon without rings".into()))?;
    let mut ring = positions(outer).ok_or_else(|| IoError::Parse("malformed ring coordinates".into()))?;
    if ring.len() > 1 && ring.first() == ring.last() {
        ring.pop();
    }
    Ok(GeoPolygon { ring })
}

fn find(v: &Value) -> Result<Option<GeoPolygon>, IoError> {
    match v.get("type").and_then(Value::as_str) {
        Some("Polygon") => ring_of(v.get("coordinates").unwrap_or(&Value::Null)).map(Some),
        Some("MultiPolygon") => match v.get("coordinates").and_then(Value::as_array).and_then(|a| a.first()) {
            Some(first) => ring_of(first).map(Some),
            None => Ok(None),
        },
        Some("Feature") => match v.get("geometry") {
            Some(g) if !g.is_null() => find(g),
            _ => Ok(None),
        },
        Some("FeatureCollection") => {
            for f in v.get("features").and_then(Value::as_array).into_iter().flatten() {
                if let Some(p) = find(f)? {
                    return Ok(Some(p));
                }
            }
            Ok(None)
        }
        Some("GeometryCollection") => {
            for g in v.get("geometries").and_then(Value::as_array).into_iter().flatten() {
                if let Some(p) = find(g)? {
                    return Ok(Some(p));
                }
            }
            Ok(None)
        }
        _ => Ok(None),
    }
}

pub(crate) fn from_value(v: &Value) -> Result<GeoPolygon, IoError> {
    if v.get("type").and_then(Value::as_str).is_none() {
        return Err(IoError::Parse("not a GeoJSON object".into()));
    }
    find(v)?.ok_or(IoError::NoPolygonFound)
}

/// First polygon outer ring in a GeoJSON document.
pub fn parse_geojson(text: &str) -> Result<GeoPolygon, IoError> {
    let v: Value = serde_json::from_str(text).map_err(|e| IoError::Parse(e.to_string()))?;
    from_value(&v)
}

pub fn load_geojson(path: &Path) -> Result<GeoPolygon, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_geojson(&text)
}

/// A GeoJSON Feature holding `g` as a closed Polygon ring.
pub fn to_geojson(g: &GeoPolygon) -> String {
    let mut ring: Vec<[f64; 2]> = g.ring.iter().map(|&(lon, lat)| [lon, lat]).collect();
    if let Some(&first) = ring.first() {
        ring.push(first);
    }
    serde_json::json!({
        "type": "Feature",
        "properties": {},
        "geometry": {"type": "Polygon", "coordinates": [ring]}
    })
    .to_string()
}
