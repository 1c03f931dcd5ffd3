//! Planar measures and predicates for convex polygons.
//!
//! Lengths are expressed in diameter units, so every quantity handled here is
//! O(1) and all tolerances are absolute.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance used by every geometric predicate.
pub const GEOM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dist(self, other: Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    #[inline]
    pub fn scale(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Reflection across the y-axis.
    #[inline]
    pub fn mirror(self) -> Point2 {
        Point2::new(-self.x, self.y)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl std::ops::Add for Point2 {
    type Output = Point2;
    #[inline]
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for Point2 {
    type Output = Point2;
    #[inline]
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

/// z-component of `(b - a) x (c - a)`.
#[inline]
pub fn cross(a: Point2, b: Point2, c: Point2) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// An ordered vertex cycle.
///
/// Construction checks that there are at least three finite vertices and that
/// no two consecutive vertices coincide, then orients the cycle
/// counterclockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point2>,
}

impl Polygon {
    pub fn new(mut vertices: Vec<Point2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidPolygon(format!(
                "need at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidPolygon(format!("vertex {i} is not finite")));
        }
        let n = vertices.len();
        for i in 0..n {
            if vertices[i].dist(vertices[(i + 1) % n]) <= GEOM_TOL {
                return Err(Error::InvalidPolygon(format!(
                    "vertices {i} and {} coincide",
                    (i + 1) % n
                )));
            }
        }
        if signed_area(&vertices) < 0.0 {
            vertices.reverse();
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }
}

fn signed_area(v: &[Point2]) -> f64 {
    let n = v.len();
    0.5 * (0..n)
        .map(|i| {
            let (a, b) = (v[i], v[(i + 1) % n]);
            a.x * b.y - a.y * b.x
        })
        .sum::<f64>()
}

pub fn perimeter(p: &Polygon) -> f64 {
    p.edges().map(|(a, b)| a.dist(b)).sum()
}

/// Maximum pairwise vertex distance by exhaustive scan.
pub fn diameter(p: &Polygon) -> f64 {
    let v = p.vertices();
    let mut best = 0.0_f64;
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            best = best.max(v[i].dist(v[j]));
        }
    }
    best
}

/// Diameter by rotating calipers over antipodal vertex pairs.
///
/// Only valid for convex input; must agree with [`diameter`].
pub fn diameter_calipers(p: &Polygon) -> Result<f64> {
    require_convex(p)?;
    let v = p.vertices();
    let n = v.len();
    let mut best = 0.0_f64;
    let mut j = 1;
    for i in 0..n {
        let a = v[i];
        let b = v[(i + 1) % n];
        // Advance j while the area of (a, b, v[j+1]) keeps growing.
        while cross(a, b, v[(j + 1) % n]) > cross(a, b, v[j]) {
            j = (j + 1) % n;
        }
        // Near-degenerate ties are resolved by checking the neighbours too.
        for k in [n - 1, 0, 1] {
            let c = v[(j + k) % n];
            best = best.max(a.dist(c)).max(b.dist(c));
        }
    }
    Ok(best)
}

/// Result of the convexity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convexity {
    pub convex: bool,
    /// Vertices whose incident edges are collinear within [`GEOM_TOL`].
    pub collinear: Vec<usize>,
    /// First reflex vertex, when not convex.
    pub reflex: Option<usize>,
}

pub fn convexity(p: &Polygon) -> Convexity {
    let v = p.vertices();
    let n = v.len();
    let mut collinear = Vec::new();
    let mut reflex = None;
    let mut turning = 0.0;
    for i in 0..n {
        let prev = v[(i + n - 1) % n];
        let cur = v[i];
        let next = v[(i + 1) % n];
        let e1 = cur - prev;
        let e2 = next - cur;
        let z = e1.x * e2.y - e1.y * e2.x;
        let scaled = z / (e1.norm() * e2.norm());
        if scaled.abs() <= GEOM_TOL {
            collinear.push(i);
        } else if z < 0.0 && reflex.is_none() {
            reflex = Some(i);
        }
        turning += z.atan2(e1.x * e2.x + e1.y * e2.y);
    }
    // Star-shaped self-intersecting cycles have all left turns but wind twice.
    let winds_once = (turning - std::f64::consts::TAU).abs() < 1e-6;
    Convexity {
        convex: reflex.is_none() && winds_once,
        collinear,
        reflex: if winds_once {
            reflex
        } else {
            reflex.or(Some(0))
        },
    }
}

pub fn is_convex(p: &Polygon) -> bool {
    convexity(p).convex
}

fn require_convex(p: &Polygon) -> Result<()> {
    let c = convexity(p);
    if c.convex {
        Ok(())
    } else {
        Err(Error::NotConvex {
            vertex: c.reflex.unwrap_or(0),
        })
    }
}

/// Minimum over sides of the largest vertex distance to the side's line.
pub fn width(p: &Polygon) -> Result<f64> {
    require_convex(p)?;
    let v = p.vertices();
    let w = p
        .edges()
        .map(|(a, b)| {
            let len = a.dist(b);
            v.iter()
                .map(|&c| cross(a, b, c).abs() / len)
                .fold(0.0_f64, f64::max)
        })
        .fold(f64::INFINITY, f64::min);
    Ok(w)
}

/// Convex hull by monotone chain, counterclockwise, without collinear points.
pub fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup_by(|a, b| a.dist(*b) <= GEOM_TOL);
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point2>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2
                && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= GEOM_TOL
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Perimeter, width, diameter and the two predicates, measured together.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub perimeter: f64,
    pub width: f64,
    pub diameter: f64,
    pub is_convex: bool,
    pub is_small: bool,
}

impl Metrics {
    pub fn measure(p: &Polygon) -> Result<Self> {
        let diameter = diameter(p);
        Ok(Self {
            perimeter: perimeter(p),
            width: width(p)?,
            diameter,
            is_convex: true,
            is_small: (diameter - 1.0).abs() <= GEOM_TOL,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(pts: &[(f64, f64)]) -> Polygon {
        Polygon::new(pts.iter().map(|&(x, y)| Point2::new(x, y)).collect()).unwrap()
    }

    fn unit_square() -> Polygon {
        poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
    }

    #[test]
    fn square_measures() {
        let sq = unit_square();
        assert_eq!(perimeter(&sq), 4.0);
        assert!((diameter(&sq) - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!((width(&sq).unwrap() - 1.0).abs() < 1e-15);
        assert!(is_convex(&sq));
    }

    #[test]
    fn small_square() {
        let r4 = poly(&[(0.0, 0.0), (0.5, 0.5), (0.0, 1.0), (-0.5, 0.5)]);
        assert!((perimeter(&r4) - 2.828427).abs() < 5e-7);
        assert!((width(&r4).unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert_eq!(diameter(&r4), 1.0);
    }

    #[test]
    fn reflex_vertex_detected() {
        let dented = poly(&[(0.0, 0.0), (1.0, 0.0), (0.5, 0.5), (1.0, 1.0), (0.0, 1.0)]);
        let c = convexity(&dented);
        assert!(!c.convex);
        assert_eq!(c.reflex, Some(2));
        assert!(matches!(
            width(&dented),
            Err(Error::NotConvex { vertex: 2 })
        ));
        assert!(diameter_calipers(&dented).is_err());
    }

    #[test]
    fn pentagram_is_not_convex() {
        let star: Vec<Point2> = (0..5)
            .map(|k| {
                let t = std::f64::consts::TAU * (2 * k) as f64 / 5.0;
                Point2::new(t.cos(), t.sin())
            })
            .collect();
        assert!(!is_convex(&Polygon::new(star).unwrap()));
    }

    #[test]
    fn collinear_vertices_are_flagged_not_fatal() {
        let p = poly(&[(0.0, 0.0), (0.5, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        let c = convexity(&p);
        assert!(c.convex);
        assert_eq!(c.collinear, vec![1]);
    }

    #[test]
    fn rejects_bad_vertex_lists() {
        assert!(matches!(
            Polygon::new(vec![Point2::ORIGIN, Point2::new(1.0, 0.0)]),
            Err(Error::InvalidPolygon(_))
        ));
        assert!(Polygon::new(vec![Point2::ORIGIN, Point2::ORIGIN, Point2::new(1.0, 0.0)]).is_err());
        assert!(Polygon::new(vec![
            Point2::ORIGIN,
            Point2::new(f64::NAN, 0.0),
            Point2::new(1.0, 0.0)
        ])
        .is_err());
    }

    #[test]
    fn clockwise_input_is_reoriented() {
        let cw = poly(&[(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)]);
        assert!(signed_area(cw.vertices()) > 0.0);
        assert!(is_convex(&cw));
    }

    #[test]
    fn hull_drops_interior_and_collinear_points() {
        let pts = [
            (0.0, 0.0),
            (1.0, 0.0),
            (0.5, 0.0),
            (0.5, 0.5),
            (1.0, 1.0),
            (0.0, 1.0),
        ]
        .map(|(x, y)| Point2::new(x, y));
        let hull = convex_hull(&pts);
        assert_eq!(hull.len(), 4);
        assert!(signed_area(&hull) > 0.0);
    }
}
