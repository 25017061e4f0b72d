//! JSON geometry documents: `{"type": ..., "items": [...]}`.
//!
//! | type         | item                                         |
//! |--------------|----------------------------------------------|
//! | `disks`      | `{"x", "y"}` (unit-disk-graph centers)       |
//! | `intervals`  | `{"lo", "hi"}`                               |
//! | `rects`      | `{"x_lo", "x_hi", "y_lo", "y_hi"}`           |
//! | `polygons`   | `{"vertices": [[x, y], ...]}` (convex, CCW)  |
//! | `translates` | `{"x", "y"}` offsets, plus a top-level `body` |

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{AxisRect, ConvexPolygon, GeomObject, Point2};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalItem {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolygonItem {
    pub vertices: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum GeometryDoc {
    Disks { items: Vec<Point2> },
    Intervals { items: Vec<IntervalItem> },
    Rects { items: Vec<AxisRect> },
    Polygons { items: Vec<PolygonItem> },
    Translates { body: PolygonItem, items: Vec<Point2> },
}

fn polygon(item: &PolygonItem) -> Result<ConvexPolygon> {
    ConvexPolygon::new(item.vertices.iter().map(|&[x, y]| Point2::new(x, y)).collect())
}

fn item(p: &ConvexPolygon) -> PolygonItem {
    PolygonItem { vertices: p.vertices().iter().map(|v| [v.x, v.y]).collect() }
}

impl GeometryDoc {
    /// Validated objects in item order.
    pub fn objects(&self) -> Result<Vec<GeomObject>> {
        let finite = |p: &Point2| if p.is_finite() { Ok(*p) } else { Err(Error::Invalid("non-finite coordinate".into())) };
        match self {
            GeometryDoc::Disks { items } => items.iter().map(|p| finite(p).map(GeomObject::UnitDiskCenter)).collect(),
            GeometryDoc::Intervals { items } => items
                .iter()
                .map(|i| {
                    if i.lo.is_finite() && i.hi.is_finite() && i.lo <= i.hi {
                        Ok(GeomObject::Interval { lo: i.lo, hi: i.hi })
                    } else {
                        Err(Error::Invalid(format!("bad interval [{}, {}]", i.lo, i.hi)))
                    }
                })
                .collect(),
            GeometryDoc::Rects { items } => {
                items.iter().map(|r| AxisRect::new(r.x_lo, r.x_hi, r.y_lo, r.y_hi).map(GeomObject::Rect)).collect()
            }
            GeometryDoc::Polygons { items } => items.iter().map(|p| polygon(p).map(GeomObject::Polygon)).collect(),
            GeometryDoc::Translates { body, items } => {
                let body = Arc::new(polygon(body)?);
                items
                    .iter()
                    .map(|p| finite(p).map(|offset| GeomObject::Translate { body_id: 0, body: body.clone(), offset }))
                    .collect()
            }
        }
    }

    /// Document for objects of a single kind. Mixed or translate sets with
    /// different bodies are rejected; rectangles and polygons may mix and are
    /// written as polygons.
    pub fn from_objects(objects: &[GeomObject]) -> Result<Self> {
        let mixed = || Error::Invalid("objects of different kinds cannot share one document".into());
        let Some(first) = objects.first() else {
            return Ok(GeometryDoc::Disks { items: Vec::new() });
        };
        Ok(match first {
            GeomObject::UnitDiskCenter(_) => GeometryDoc::Disks {
                items: objects.iter().map(|o| if let GeomObject::UnitDiskCenter(p) = o { Ok(*p) } else { Err(mixed()) }).collect::<Result<_>>()?,
            },
            GeomObject::Interval { .. } => GeometryDoc::Intervals {
                items: objects
                    .iter()
                    .map(|o| if let GeomObject::Interval { lo, hi } = o { Ok(IntervalItem { lo: *lo, hi: *hi }) } else { Err(mixed()) })
                    .collect::<Result<_>>()?,
            },
            GeomObject::Rect(_) if objects.iter().all(|o| matches!(o, GeomObject::Rect(_))) => GeometryDoc::Rects {
                items: objects.iter().filter_map(|o| if let GeomObject::Rect(r) = o { Some(*r) } else { None }).collect(),
            },
            GeomObject::Rect(_) | GeomObject::Polygon(_) => GeometryDoc::Polygons {
                items: objects
                    .iter()
                    .map(|o| match o {
                        GeomObject::Polygon(p) => Ok(item(p)),
                        GeomObject::Rect(r) => r.to_polygon().map(|p| item(&p)),
                        _ => Err(mixed()),
                    })
                    .collect::<Result<_>>()?,
            },
            GeomObject::Translate { body, .. } => GeometryDoc::Translates {
                body: item(body),
                items: objects
                    .iter()
                    .map(|o| match o {
                        GeomObject::Translate { body: b, offset, .. } if **b == **body => Ok(*offset),
                        _ => Err(mixed()),
                    })
                    .collect::<Result<_>>()?,
            },
        })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Parses a geometry document straight to objects.
pub fn read_objects(s: &str) -> Result<Vec<GeomObject>> {
    GeometryDoc::from_json(s)?.objects()
}
