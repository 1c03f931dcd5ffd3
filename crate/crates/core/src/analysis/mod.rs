//! Diameter graphs, gaps to the upper bounds, and the reference tables.

mod gaps;
mod graph;
mod tables;

pub use gaps::{
    asymptotic_ratio_l, asymptotic_ratio_w, gap_perimeter_bn, gap_perimeter_dn, gap_report,
    gap_width_bn, gap_width_dn, perimeter_gain, GapReport,
};
pub use graph::{extract_diameter_graph, DiameterGraph, GraphClass, UNIT_DISTANCE_TOL};
pub use tables::{make_table, Cell, Table, TableId};
