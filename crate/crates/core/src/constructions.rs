//! Polygon families: regular, Reinhardt, the closed-form scalar metrics of
//! `B_n`, and everything built from an angle vector (`D_n`, `D_n*`, `B_n*`).

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::analysis::{extract_diameter_graph, DiameterGraph, UNIT_DISTANCE_TOL};
use crate::error::{require_power_of_two, Error, Result};
use crate::geometry::{convex_hull, convexity, Metrics, Point2, Polygon, GEOM_TOL};
use crate::solver::{delta0, RootMethod};

/// Tolerance on the abscissa closure `|x_last - target|` accepted by
/// [`build_from_angles`].
pub const CLOSURE_TOL: f64 = 1e-9;

/// Tolerance on `Σ c_k α_k = π/2`.
pub const ANGLE_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolygonFamily {
    Regular,
    Reinhardt,
    /// Closed-form prior family; scalar metrics only.
    Bn,
    Dn,
    DnStar,
    BnStar,
    /// Vertex list read from a file.
    External,
}

impl PolygonFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            PolygonFamily::Regular => "regular",
            PolygonFamily::Reinhardt => "reinhardt",
            PolygonFamily::Bn => "bn",
            PolygonFamily::Dn => "dn",
            PolygonFamily::DnStar => "dn-star",
            PolygonFamily::BnStar => "bn-star",
            PolygonFamily::External => "external",
        }
    }
}

impl fmt::Display for PolygonFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Diameter-graph layout an angle vector describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AngleFamily {
    /// Cycle of length `3n/4 - 1` plus `n/4 + 1` pendant edges.
    D,
    /// Cycle of length `n/2 + 1` plus `n/2 - 1` pendant edges.
    B,
}

impl AngleFamily {
    /// Number of angles describing half of the polygon.
    pub fn len(self, n: usize) -> usize {
        match self {
            AngleFamily::D => 3 * n / 8,
            AngleFamily::B => n / 4 + 1,
        }
    }

    /// Multiplicities `c_k`: an angle counted twice is split by a pendant edge.
    pub fn coefficients(self, n: usize) -> Vec<f64> {
        let len = self.len(n);
        match self {
            AngleFamily::D => (0..len)
                .map(|k| if k % 3 == 1 { 2.0 } else { 1.0 })
                .collect(),
            AngleFamily::B => (0..len)
                .map(|k| if k == 0 || k + 1 == len { 1.0 } else { 2.0 })
                .collect(),
        }
    }

    /// Upper bound on each `α_k`.
    pub fn upper_bounds(self, n: usize) -> Vec<f64> {
        match self {
            AngleFamily::D => self
                .coefficients(n)
                .into_iter()
                .map(|c| FRAC_PI_3 / c)
                .collect(),
            AngleFamily::B => {
                let len = self.len(n);
                (0..len)
                    .map(|k| if k + 1 == len { FRAC_PI_3 } else { FRAC_PI_6 })
                    .collect()
            }
        }
    }

    /// Required abscissa of the last half-cycle vertex.
    ///
    /// The closing edge is horizontal with unit length; its direction flips
    /// with the parity of the number of angles.
    pub fn closure_target(self, n: usize) -> f64 {
        if self.len(n).is_multiple_of(2) {
            0.5
        } else {
            -0.5
        }
    }

    fn min_exponent(self) -> u32 {
        match self {
            AngleFamily::D => 4,
            AngleFamily::B => 2,
        }
    }
}

/// Half-polygon turning angles with their multiplicities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleVector {
    n: usize,
    family: AngleFamily,
    alphas: Vec<f64>,
}

impl AngleVector {
    pub fn new(n: usize, family: AngleFamily, alphas: Vec<f64>) -> Result<Self> {
        require_power_of_two(n, family.min_exponent())?;
        let len = family.len(n);
        if alphas.len() != len {
            return Err(Error::domain(format!(
                "{family:?}-family n = {n} needs {len} angles, got {}",
                alphas.len()
            )));
        }
        let upper = family.upper_bounds(n);
        for (k, (&a, &ub)) in alphas.iter().zip(&upper).enumerate() {
            if !a.is_finite() || a < -GEOM_TOL || a > ub + GEOM_TOL {
                return Err(Error::InfeasibleAngles(format!(
                    "alpha_{k} = {a} outside [0, {ub}]"
                )));
            }
        }
        let av = Self { n, family, alphas };
        let sum_residual = av.angle_sum_residual();
        if sum_residual > ANGLE_SUM_TOL {
            return Err(Error::InfeasibleAngles(format!(
                "weighted angle sum misses pi/2 by {sum_residual:e}"
            )));
        }
        Ok(av)
    }

    /// Skips validation; for solver iterates that may sit outside tolerance.
    pub(crate) fn new_unchecked(n: usize, family: AngleFamily, alphas: Vec<f64>) -> Self {
        Self { n, family, alphas }
    }

    /// `α_k = π/n + (-1)^k δ`, the alternating D-family pattern.
    pub fn alternating(n: usize, delta: f64) -> Result<Self> {
        let len = AngleFamily::D.len(n);
        let base = PI / n as f64;
        let alphas = (0..len)
            .map(|k| {
                if k % 2 == 0 {
                    base + delta
                } else {
                    base - delta
                }
            })
            .collect();
        Self::new(n, AngleFamily::D, alphas)
    }

    /// All angles equal to `π/n`.
    pub fn uniform(n: usize, family: AngleFamily) -> Result<Self> {
        require_power_of_two(n, family.min_exponent())?;
        Self::new(n, family, vec![PI / n as f64; family.len(n)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> AngleFamily {
        self.family
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn coefficients(&self) -> Vec<f64> {
        self.family.coefficients(self.n)
    }

    pub fn angle_sum_residual(&self) -> f64 {
        let c = self.coefficients();
        let sum: f64 = self.alphas.iter().zip(&c).map(|(a, c)| a * c).sum();
        (sum - FRAC_PI_2).abs()
    }

    /// Perimeter predicted by the angles, `Σ 4 c_k sin(α_k / 2)`.
    pub fn perimeter(&self) -> f64 {
        self.alphas
            .iter()
            .zip(self.coefficients())
            .map(|(a, c)| 4.0 * c * (a / 2.0).sin())
            .sum()
    }

    /// Signed closure residual `x_last - target`.
    pub fn closure_residual(&self) -> f64 {
        let half = half_cycle(&self.alphas, &self.coefficients());
        half[half.len() - 1].x - self.family.closure_target(self.n)
    }
}

/// Vertices `v_0 .. v_{K-1}` of the half cycle: `v_0` at the origin, every
/// step a unit edge whose direction turns by `c_k α_k` and flips sign.
fn half_cycle(alphas: &[f64], coeffs: &[f64]) -> Vec<Point2> {
    let mut pts = Vec::with_capacity(alphas.len());
    pts.push(Point2::ORIGIN);
    let mut theta = 0.0;
    for k in 1..alphas.len() {
        theta += coeffs[k - 1] * alphas[k - 1];
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        let prev = pts[k - 1];
        pts.push(Point2::new(
            prev.x + sign * theta.sin(),
            prev.y + sign * theta.cos(),
        ));
    }
    pts
}

/// Polygon plus metrics measured from its vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionReport {
    pub family: PolygonFamily,
    pub n: usize,
    pub polygon: Polygon,
    pub metrics: Metrics,
    pub diameter_graph: DiameterGraph,
    /// Alternation amplitude, for `D_n`.
    pub delta: Option<f64>,
}

impl ConstructionReport {
    pub fn from_polygon(
        family: PolygonFamily,
        polygon: Polygon,
        delta: Option<f64>,
    ) -> Result<Self> {
        let metrics = Metrics::measure(&polygon)?;
        let diameter_graph = extract_diameter_graph(&polygon, UNIT_DISTANCE_TOL);
        Ok(Self {
            family,
            n: polygon.len(),
            polygon,
            metrics,
            diameter_graph,
            delta,
        })
    }
}

fn on_circle(center: Point2, radius: f64, angle: f64) -> Point2 {
    Point2::new(
        center.x + radius * angle.cos(),
        center.y + radius * angle.sin(),
    )
}

/// Regular n-gon of unit diameter with a vertex at the origin.
pub fn regular_small_ngon(n: usize) -> Result<ConstructionReport> {
    if n < 3 {
        return Err(Error::domain(format!(
            "regular polygon needs n >= 3, got {n}"
        )));
    }
    let nf = n as f64;
    let radius = if n.is_multiple_of(2) {
        0.5
    } else {
        0.5 / (PI / (2.0 * nf)).cos()
    };
    let center = Point2::new(0.0, radius);
    let vertices = (0..n)
        .map(|k| on_circle(center, radius, -FRAC_PI_2 + 2.0 * PI * k as f64 / nf))
        .collect();
    ConstructionReport::from_polygon(PolygonFamily::Regular, Polygon::new(vertices)?, None)
}

/// Reinhardt polygon `R_{m,n}`: the Reuleaux m-gon with `n/m - 1` vertices
/// inserted at equal angular steps on each arc, then hulled.
pub fn reinhardt_polygon(m: usize, n: usize) -> Result<ConstructionReport> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::domain(format!("m = {m} must be odd and >= 3")));
    }
    if n < m || !n.is_multiple_of(m) {
        return Err(Error::domain(format!("m = {m} must divide n = {n}")));
    }
    let per_arc = n / m;
    let radius = 0.5 / (PI / (2.0 * m as f64)).cos();
    let center = Point2::new(0.0, radius);
    let corners: Vec<Point2> = (0..m)
        .map(|i| on_circle(center, radius, -FRAC_PI_2 + 2.0 * PI * i as f64 / m as f64))
        .collect();

    let step = (PI / m as f64) / per_arc as f64;
    let mut points = corners.clone();
    for i in 0..m {
        let a = corners[i];
        let b = corners[(i + 1) % m];
        let pivot = corners[(i + m.div_ceil(2)) % m];
        let start = (a.y - pivot.y).atan2(a.x - pivot.x);
        let turn = crate::geometry::cross(pivot, a, b).signum();
        for t in 1..per_arc {
            points.push(on_circle(pivot, 1.0, start + turn * step * t as f64));
        }
    }

    let hull = start_at_lowest(convex_hull(&points));
    if hull.len() != n {
        return Err(Error::ConstructionFailure {
            vertex: hull.len(),
            reason: format!("hull kept {} of {n} vertices", hull.len()),
        });
    }
    ConstructionReport::from_polygon(PolygonFamily::Reinhardt, Polygon::new(hull)?, None)
}

fn start_at_lowest(mut v: Vec<Point2>) -> Vec<Point2> {
    if let Some(i) = (0..v.len()).min_by(|&i, &j| {
        v[i].y
            .total_cmp(&v[j].y)
            .then(v[i].x.abs().total_cmp(&v[j].x.abs()))
    }) {
        v.rotate_left(i);
    }
    v
}

/// Perimeter and width of the closed-form `B_n` family.
pub fn bn_scalar_metrics(n: usize) -> Result<(f64, f64)> {
    require_power_of_two(n, 2)?;
    let nf = n as f64;
    let shift = 0.5 * (0.5 * (2.0 * PI / nf).sin()).asin();
    let perimeter = 2.0 * nf * (PI / (2.0 * nf)).sin() * (PI / (2.0 * nf) - shift).cos();
    let width = (PI / nf - shift).cos();
    Ok((perimeter, width))
}

/// Rebuild the full polygon described by an angle vector.
///
/// The half cycle runs from `v_0 = (0, 0)` to the closing horizontal edge;
/// the axis vertex sits at `(0, 1)`; every doubled angle carries a pendant
/// vertex at unit distance along the interior bisector. The other half is
/// the mirror image across the y-axis.
pub fn build_from_angles(av: &AngleVector) -> Result<ConstructionReport> {
    let family = match av.family() {
        AngleFamily::D => PolygonFamily::Dn,
        AngleFamily::B => PolygonFamily::BnStar,
    };
    build_from_angles_as(av, family, None)
}

pub(crate) fn build_from_angles_as(
    av: &AngleVector,
    family: PolygonFamily,
    delta: Option<f64>,
) -> Result<ConstructionReport> {
    let coeffs = av.coefficients();
    let half = half_cycle(av.alphas(), &coeffs);
    let last = half.len() - 1;
    let residual = half[last].x - av.family().closure_target(av.n());
    if residual.abs() > CLOSURE_TOL {
        return Err(Error::InfeasibleAngles(format!(
            "closure residual {residual:e} exceeds {CLOSURE_TOL:e}"
        )));
    }

    let mut pendants = Vec::new();
    for k in 1..half.len() {
        if coeffs[k] != 2.0 {
            continue;
        }
        let next = if k < last {
            half[k + 1]
        } else {
            half[last].mirror()
        };
        let to_next = next - half[k];
        let to_prev = half[k - 1] - half[k];
        let bisector = to_next.scale(1.0 / to_next.norm()) + to_prev.scale(1.0 / to_prev.norm());
        let len = bisector.norm();
        if len <= GEOM_TOL {
            return Err(Error::ConstructionFailure {
                vertex: k,
                reason: "incident edges are opposite".into(),
            });
        }
        pendants.push(half[k] + bisector.scale(1.0 / len));
    }

    let mut vertices = Vec::with_capacity(av.n());
    vertices.push(Point2::ORIGIN);
    vertices.push(Point2::new(0.0, 1.0));
    for p in half[1..].iter().chain(&pendants) {
        vertices.push(*p);
        vertices.push(p.mirror());
    }
    debug_assert_eq!(vertices.len(), av.n());

    let center = vertices
        .iter()
        .fold(Point2::ORIGIN, |acc, p| acc + *p)
        .scale(1.0 / vertices.len() as f64);
    // Counterclockwise from the origin vertex, which points straight down
    // from the centroid.
    let key = |p: &Point2| {
        let a = (p.y - center.y).atan2(p.x - center.x) + FRAC_PI_2;
        if a < 0.0 {
            a + 2.0 * PI
        } else {
            a
        }
    };
    vertices.sort_by(|a, b| key(a).total_cmp(&key(b)));
    if let Some(i) = vertices.iter().position(|p| *p == Point2::ORIGIN) {
        vertices.rotate_left(i);
    }

    let polygon = Polygon::new(vertices).map_err(|e| Error::ConstructionFailure {
        vertex: 0,
        reason: e.to_string(),
    })?;
    let conv = convexity(&polygon);
    if !conv.convex {
        return Err(Error::ConstructionFailure {
            vertex: conv.reflex.unwrap_or(0),
            reason: "vertex set is not in convex position".into(),
        });
    }
    ConstructionReport::from_polygon(family, polygon, delta)
}

/// The polygon `D_n`: alternating angles with amplitude `δ₀(n)`.
pub fn build_dn(n: usize) -> Result<ConstructionReport> {
    require_power_of_two(n, 4)?;
    let root = delta0(n, RootMethod::ClosedForm)?;
    let av = AngleVector::alternating(n, root.delta0)?;
    build_from_angles_as(&av, PolygonFamily::Dn, Some(root.delta0))
}

/// Closed-form perimeter of `D_n`, `2n sin(π/2n) cos(δ₀/2)`.
pub fn dn_perimeter(n: usize) -> Result<f64> {
    let d = delta0(n, RootMethod::ClosedForm)?.delta0;
    let nf = n as f64;
    Ok(2.0 * nf * (PI / (2.0 * nf)).sin() * (d / 2.0).cos())
}

/// Closed-form width of `D_n`, `cos(π/2n + δ₀/2)`.
pub fn dn_width(n: usize) -> Result<f64> {
    let d = delta0(n, RootMethod::ClosedForm)?.delta0;
    Ok((PI / (2.0 * n as f64) + d / 2.0).cos())
}

/// Perimeter upper bound `2n sin(π/2n)`.
pub fn perimeter_upper_bound(n: usize) -> f64 {
    let nf = n as f64;
    2.0 * nf * (PI / (2.0 * nf)).sin()
}

/// Width upper bound `cos(π/2n)`.
pub fn width_upper_bound(n: usize) -> f64 {
    (PI / (2.0 * n as f64)).cos()
}
