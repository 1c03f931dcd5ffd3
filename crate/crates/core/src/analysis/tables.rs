//! Regenerates the four reference tables from the library.

use serde::Serialize;

use super::gaps::{gap_perimeter_bn, gap_perimeter_dn, gap_width_bn, gap_width_dn, perimeter_gain};
use crate::constructions::{
    bn_scalar_metrics, dn_perimeter, dn_width, perimeter_upper_bound, width_upper_bound,
    AngleVector,
};
use crate::error::{Error, Result};
use crate::solver::{delta0, solve_bn_star, solve_dn_star, RootMethod};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TableId {
    /// Perimeters of `D_n`.
    Perimeters,
    /// Widths of `D_n`.
    Widths,
    /// Optimal perimeters `D_n*` and `B_n*`.
    OptimalPerimeters,
    /// Optimal angles of `D_n*`.
    OptimalAngles,
}

impl TableId {
    pub fn from_number(which: u8) -> Result<Self> {
        match which {
            1 => Ok(TableId::Perimeters),
            2 => Ok(TableId::Widths),
            3 => Ok(TableId::OptimalPerimeters),
            4 => Ok(TableId::OptimalAngles),
            _ => Err(Error::Domain(format!("no table {which}; expected 1-4"))),
        }
    }

    pub fn sizes(self) -> &'static [usize] {
        match self {
            TableId::Perimeters => &[16, 32, 64, 128],
            TableId::Widths => &[16, 32, 64, 128, 256],
            TableId::OptimalPerimeters | TableId::OptimalAngles => &[16, 32, 64],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(usize),
    /// Printed with a fixed number of decimals.
    Real(f64, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub id: TableId,
    pub title: &'static str,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    /// Numeric value of a cell, for tests and bindings.
    pub fn value(&self, row: usize, col: usize) -> Option<f64> {
        self.rows.get(row)?.get(col).map(|c| match *c {
            Cell::Int(i) => i as f64,
            Cell::Real(x, _) => x,
        })
    }
}

const DIGITS: usize = 10;
const FRACTION_DIGITS: usize = 4;
const ANGLE_DIGITS: usize = 7;

fn real(x: f64) -> Cell {
    Cell::Real(x, DIGITS)
}

/// Perimeters near the bound agree to ten decimals for large `n`; these rows
/// carry the extra digits needed to tell the columns apart.
fn fine(x: f64, n: usize) -> Cell {
    match n {
        64 => Cell::Real(x, 12),
        128.. => Cell::Real(x, 14),
        _ => real(x),
    }
}

fn regular_perimeter(n: usize) -> f64 {
    let nf = n as f64;
    nf * (std::f64::consts::PI / nf).sin()
}

fn regular_width(n: usize) -> f64 {
    (std::f64::consts::PI / n as f64).cos()
}

pub fn make_table(id: TableId) -> Result<Table> {
    let sizes = id.sizes();
    let (title, header, rows) = match id {
        TableId::Perimeters => {
            let mut rows = Vec::new();
            for &n in sizes {
                let (lb, _) = bn_scalar_metrics(n)?;
                let fraction = 1.0 - gap_perimeter_dn(n)? / gap_perimeter_bn(n)?;
                rows.push(vec![
                    Cell::Int(n),
                    real(regular_perimeter(n)),
                    if n >= 128 {
                        Cell::Real(lb, 12)
                    } else {
                        real(lb)
                    },
                    fine(dn_perimeter(n)?, n),
                    fine(perimeter_upper_bound(n), n),
                    Cell::Real(fraction, FRACTION_DIGITS),
                ]);
            }
            (
                "Perimeters of D_n",
                ["n", "L(R_n)", "L(B_n)", "L(D_n)", "UB_L", "fraction"],
                rows,
            )
        }
        TableId::Widths => {
            let mut rows = Vec::new();
            for &n in sizes {
                let (_, wb) = bn_scalar_metrics(n)?;
                let fraction = 1.0 - gap_width_dn(n)? / gap_width_bn(n)?;
                rows.push(vec![
                    Cell::Int(n),
                    real(regular_width(n)),
                    real(wb),
                    real(dn_width(n)?),
                    real(width_upper_bound(n)),
                    Cell::Real(fraction, FRACTION_DIGITS),
                ]);
            }
            (
                "Widths of D_n",
                ["n", "W(R_n)", "W(B_n)", "W(D_n)", "UB_W", "fraction"],
                rows,
            )
        }
        TableId::OptimalPerimeters => {
            let mut rows = Vec::new();
            for &n in sizes {
                let bstar = converged(solve_bn_star(n)?)?;
                let dstar = converged(solve_dn_star(n)?)?;
                let warm = AngleVector::alternating(n, delta0(n, RootMethod::ClosedForm)?.delta0)?;
                let lambda = perimeter_gain(&dstar.alphas, &warm) / gap_perimeter_dn(n)?;
                rows.push(vec![
                    Cell::Int(n),
                    real(bstar.objective),
                    fine(dn_perimeter(n)?, n),
                    fine(dstar.objective, n),
                    fine(perimeter_upper_bound(n), n),
                    Cell::Real(lambda, FRACTION_DIGITS),
                ]);
            }
            (
                "Perimeters of D_n*",
                ["n", "L(B_n*)", "L(D_n)", "L(D_n*)", "UB_L", "lambda*"],
                rows,
            )
        }
        TableId::OptimalAngles => {
            let mut rows = Vec::new();
            for &n in sizes {
                let dstar = converged(solve_dn_star(n)?)?;
                for (i, chunk) in dstar.alphas.alphas().chunks(6).enumerate() {
                    let mut row = vec![Cell::Int(n), Cell::Int(i)];
                    row.extend(chunk.iter().map(|&a| Cell::Real(a, ANGLE_DIGITS)));
                    rows.push(row);
                }
            }
            let header = vec![
                "n".to_string(),
                "i".to_string(),
                "a(6i)".to_string(),
                "a(6i+1)".to_string(),
                "a(6i+2)".to_string(),
                "a(6i+3)".to_string(),
                "a(6i+4)".to_string(),
                "a(6i+5)".to_string(),
            ];
            return Ok(Table {
                id,
                title: "Angles of D_n*",
                header,
                rows,
            });
        }
    };
    Ok(Table {
        id,
        title,
        header: header.iter().map(|s| s.to_string()).collect(),
        rows,
    })
}

fn converged(r: crate::solver::OptimizationResult) -> Result<crate::solver::OptimizationResult> {
    if r.converged {
        Ok(r)
    } else {
        Err(Error::Numeric(format!(
            "{:?} solve for n = {} did not converge (closure {:e}, gradient {:e})",
            r.problem, r.n, r.residual_closure, r.projected_gradient
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_shapes() {
        let t1 = make_table(TableId::Perimeters).unwrap();
        assert_eq!(t1.rows.len(), 4);
        assert!((t1.value(0, 5).unwrap() - 0.8283).abs() < 5e-5);
        let t2 = make_table(TableId::Widths).unwrap();
        assert_eq!(t2.rows.len(), 5);
        assert!((t2.value(2, 5).unwrap() - 0.9016).abs() < 5e-5);
        assert!(TableId::from_number(5).is_err());
    }
}
