//! `PolygonDocument` JSON and vertex CSV.

use std::io;

use serde::ser::Serialize;
use serde::Deserialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use thiserror::Error;

use crate::constructions::ConstructionReport;
use crate::geometry::{Point2, Polygon};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed CSV at line {line}: {reason}")]
    Csv { line: usize, reason: String },
    #[error("invalid document: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, Deserialize)]
pub struct DocumentMetrics {
    pub perimeter: f64,
    pub width: f64,
    pub diameter: f64,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, Deserialize)]
pub struct DocumentGraph {
    pub edges: Vec<[usize; 2]>,
    pub cycle_length: usize,
    pub pendant_count: usize,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonDocument {
    pub schema_version: String,
    pub family: String,
    pub n: usize,
    pub vertices: Vec<[f64; 2]>,
    pub metrics: DocumentMetrics,
    pub diameter_graph: DocumentGraph,
}

impl PolygonDocument {
    pub fn from_report(r: &ConstructionReport) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            family: r.family.to_string(),
            n: r.n,
            vertices: r.polygon.vertices().iter().map(|p| [p.x, p.y]).collect(),
            metrics: DocumentMetrics {
                perimeter: r.metrics.perimeter,
                width: r.metrics.width,
                diameter: r.metrics.diameter,
            },
            diameter_graph: DocumentGraph {
                edges: r
                    .diameter_graph
                    .edges
                    .iter()
                    .map(|&(i, j)| [i, j])
                    .collect(),
                cycle_length: r.diameter_graph.cycle_length,
                pendant_count: r.diameter_graph.pendant_count,
            },
        }
    }

    pub fn to_json(&self) -> String {
        to_json_string(self)
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        let doc: Self = serde_json::from_str(text)?;
        if doc.vertices.len() != doc.n {
            return Err(DocumentError::Invalid(format!(
                "n = {} but {} vertices listed",
                doc.n,
                doc.vertices.len()
            )));
        }
        if let Some(e) = doc
            .diameter_graph
            .edges
            .iter()
            .find(|e| e[0] >= doc.n || e[1] >= doc.n)
        {
            return Err(DocumentError::Invalid(format!(
                "edge {:?} references a missing vertex",
                e
            )));
        }
        Ok(doc)
    }

    pub fn points(&self) -> Vec<Point2> {
        self.vertices
            .iter()
            .map(|&[x, y]| Point2::new(x, y))
            .collect()
    }

    pub fn polygon(&self) -> crate::Result<Polygon> {
        Polygon::new(self.points())
    }
}

/// Writes floats in exponent form with 17 significant digits.
struct FullPrecision(PrettyFormatter<'static>);

impl Formatter for FullPrecision {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Pretty JSON with every float at full round-trip precision, newline
/// terminated.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser =
        serde_json::Serializer::with_formatter(&mut buf, FullPrecision(PrettyFormatter::new()));
    value
        .serialize(&mut ser)
        .expect("in-memory serialization of plain data cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

pub fn vertices_to_csv(points: &[Point2]) -> String {
    let mut out = String::from("x,y\n");
    for p in points {
        out.push_str(&format!("{:.16e},{:.16e}\n", p.x, p.y));
    }
    out
}

pub fn vertices_from_csv(text: &str) -> Result<Vec<Point2>, DocumentError> {
    let mut pts = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (idx == 0 && line.eq_ignore_ascii_case("x,y")) {
            continue;
        }
        let bad = |reason: &str| DocumentError::Csv {
            line: idx + 1,
            reason: reason.to_string(),
        };
        let mut fields = line.split(',').map(str::trim);
        let (Some(x), Some(y), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(bad("expected two fields"));
        };
        let x: f64 = x.parse().map_err(|_| bad("x is not a number"))?;
        let y: f64 = y.parse().map_err(|_| bad("y is not a number"))?;
        pts.push(Point2::new(x, y));
    }
    Ok(pts)
}
