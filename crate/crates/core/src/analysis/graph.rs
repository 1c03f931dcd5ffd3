use serde::{Deserialize, Serialize};

use crate::geometry::Polygon;

/// Default tolerance on `|distance - 1|` for diameter-graph edges.
pub const UNIT_DISTANCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphClass {
    /// Cycle of length `3n/4 - 1` plus `n/4 + 1` pendant edges.
    DFamily,
    /// Cycle of length `n/2 + 1` plus `n/2 - 1` pendant edges.
    BFamily,
    Other,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiameterGraph {
    /// Vertex index pairs `(i, j)`, `i < j`, at unit distance.
    pub edges: Vec<(usize, usize)>,
    /// Length of the single cycle formed by the non-pendant edges, or 0.
    pub cycle_length: usize,
    pub pendant_count: usize,
    pub classification: GraphClass,
}

struct DisjointSets(Vec<usize>);

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

/// Unit-distance graph of the polygon's vertices, classified by its
/// cycle-plus-pendants structure.
pub fn extract_diameter_graph(p: &Polygon, tol: f64) -> DiameterGraph {
    let v = p.vertices();
    let n = v.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if (v[i].dist(v[j]) - 1.0).abs() <= tol {
                edges.push((i, j));
            }
        }
    }

    let mut degree = vec![0usize; n];
    for &(i, j) in &edges {
        degree[i] += 1;
        degree[j] += 1;
    }
    let (pendant, core): (Vec<_>, Vec<_>) = edges
        .iter()
        .partition(|&&(i, j)| degree[i] == 1 || degree[j] == 1);

    let mut core_degree = vec![0usize; n];
    let mut sets = DisjointSets::new(n);
    for &&(i, j) in &core {
        core_degree[i] += 1;
        core_degree[j] += 1;
        sets.union(i, j);
    }
    let on_cycle: Vec<usize> = (0..n).filter(|&i| core_degree[i] > 0).collect();
    let single_cycle = on_cycle.len() >= 3
        && core.len() == on_cycle.len()
        && on_cycle.iter().all(|&i| core_degree[i] == 2)
        && {
            let root = sets.find(on_cycle[0]);
            on_cycle.iter().all(|&i| sets.find(i) == root)
        };
    // Each pendant edge hangs off the cycle by exactly one endpoint.
    let pendants_attached = pendant.iter().all(|&&(i, j)| {
        (core_degree[i] > 0 && degree[j] == 1) || (core_degree[j] > 0 && degree[i] == 1)
    });

    let cycle_length = if single_cycle { core.len() } else { 0 };
    let pendant_count = pendant.len();
    let classification = if single_cycle && pendants_attached {
        classify(n, cycle_length, pendant_count)
    } else {
        GraphClass::Other
    };
    DiameterGraph {
        edges,
        cycle_length,
        pendant_count,
        classification,
    }
}

fn classify(n: usize, cycle: usize, pendants: usize) -> GraphClass {
    if !n.is_power_of_two() {
        return GraphClass::Other;
    }
    if n >= 16 && cycle == 3 * n / 4 - 1 && pendants == n / 4 + 1 {
        GraphClass::DFamily
    } else if n >= 4 && cycle == n / 2 + 1 && pendants == n / 2 - 1 {
        GraphClass::BFamily
    } else {
        GraphClass::Other
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_dn, regular_small_ngon};
    use crate::geometry::Point2;

    #[test]
    fn dn_structure() {
        for (n, cycle, pendants) in [(16, 11, 5), (32, 23, 9)] {
            let g = build_dn(n).unwrap().diameter_graph;
            assert_eq!(g.cycle_length, cycle);
            assert_eq!(g.pendant_count, pendants);
            assert_eq!(g.classification, GraphClass::DFamily);
            assert_eq!(g.edges.len(), n);
        }
    }

    #[test]
    fn square_diagonals_are_not_a_cycle() {
        let g = regular_small_ngon(4).unwrap().diameter_graph;
        assert_eq!(g.edges.len(), 2);
        assert_eq!(g.cycle_length, 0);
        assert_eq!(g.classification, GraphClass::Other);
    }

    #[test]
    fn odd_regular_is_a_pure_cycle() {
        let g = regular_small_ngon(7).unwrap().diameter_graph;
        assert_eq!(g.cycle_length, 7);
        assert_eq!(g.pendant_count, 0);
        assert_eq!(g.classification, GraphClass::Other);
    }

    #[test]
    fn v8_reference_polygon() {
        let pts = [
            (0.0, 0.0),
            (0.2983, 0.2128),
            (0.5000, 0.5188),
            (0.4217, 0.9067),
            (0.0, 1.0),
            (-0.4217, 0.9067),
            (-0.5000, 0.5188),
            (-0.2983, 0.2128),
        ];
        let p = Polygon::new(pts.iter().map(|&(x, y)| Point2::new(x, y)).collect()).unwrap();
        // four-decimal coordinates are off by up to ~5e-5 from unit length
        let g = extract_diameter_graph(&p, 1e-4);
        assert_eq!(g.edges.len(), 8);
        assert_eq!(g.cycle_length, 5);
        assert_eq!(g.pendant_count, 3);
        assert_eq!(g.classification, GraphClass::BFamily);
    }
}
