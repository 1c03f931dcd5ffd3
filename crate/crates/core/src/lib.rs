//! Convex small polygons (unit diameter) with `n = 2^s` vertices and large
//! perimeter and width.
//!
//! - [`geometry`]: perimeter, diameter, width and convexity of planar polygons.
//! - [`constructions`]: regular and Reinhardt polygons, the alternating-angle
//!   family `D_n`, and polygons rebuilt from an [`AngleVector`].
//! - [`solver`]: the closure root `δ₀(n)` and the perimeter maximization
//!   problems whose optima are `D_n*` and `B_n*`.
//! - [`analysis`]: diameter graphs, cancellation-free gaps to the upper
//!   bounds, asymptotic ratios and the reference tables.
//! - [`cli`]: polygon documents, SVG rendering and the command-line verbs.

pub mod analysis;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod solver;

pub use analysis::{extract_diameter_graph, DiameterGraph, GraphClass};
pub use constructions::{AngleFamily, AngleVector, ConstructionReport, PolygonFamily};
pub use error::{Error, Result};
pub use geometry::{Metrics, Point2, Polygon};
pub use solver::{OptimizationResult, RootResult};
