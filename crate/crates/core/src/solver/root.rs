//! The alternation amplitude `δ₀(n)` that closes the `D_n` half cycle.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{require_power_of_two, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootMethod {
    ClosedForm,
    Bisection,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootResult {
    pub n: usize,
    pub delta0: f64,
    /// `|F(δ₀)|` for the closure equation `F`.
    pub residual: f64,
    pub method: RootMethod,
}

const BISECTION_MAX_ITER: usize = 200;
const BRACKET_EPS: f64 = 1e-18;

/// Closure equation in `δ` for alternating angles `π/n ± δ`:
///
/// `sin(π/n) cos δ / cos(2π/n) - cos(π/n) sin δ / sin(2π/n) - sin(2π/n) / (2 cos(2π/n))`.
///
/// Decreasing on `(0, π/n)` for `n >= 16`.
pub fn closure_equation(n: usize, delta: f64) -> f64 {
    let t = PI / n as f64;
    let (s1, c1) = t.sin_cos();
    let (s2, c2) = (2.0 * t).sin_cos();
    s1 * delta.cos() / c2 - c1 * delta.sin() / s2 - s2 / (2.0 * c2)
}

fn closure_equation_derivative(n: usize, delta: f64) -> f64 {
    let t = PI / n as f64;
    let (s1, c1) = t.sin_cos();
    let (s2, c2) = (2.0 * t).sin_cos();
    -s1 * delta.sin() / c2 - c1 * delta.cos() / s2
}

/// `arctan(tan(2π/n) tan(π/n)) - arcsin(sin(2π/n) sin(π/n) / sqrt(4 sin²(π/n) + cos(4π/n)))`.
///
/// No domain check; also used as a perturbation scale for `n < 16`.
pub(crate) fn delta0_closed_form(n: usize) -> f64 {
    let t = PI / n as f64;
    let s1 = t.sin();
    let phase = ((2.0 * t).tan() * t.tan()).atan();
    let amp = ((2.0 * t).sin() * s1 / (4.0 * s1 * s1 + (4.0 * t).cos()).sqrt()).asin();
    phase - amp
}

fn delta0_bisection(n: usize) -> Result<f64> {
    let mut lo = BRACKET_EPS;
    let mut hi = PI / n as f64 - BRACKET_EPS;
    let (f_lo, f_hi) = (closure_equation(n, lo), closure_equation(n, hi));
    if !(f_lo > 0.0 && f_hi < 0.0) {
        return Err(Error::Numeric(format!(
            "closure equation not bracketed on (0, pi/{n}): F = {f_lo:e}, {f_hi:e}"
        )));
    }
    for _ in 0..BISECTION_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if closure_equation(n, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    let polished = mid - closure_equation(n, mid) / closure_equation_derivative(n, mid);
    if closure_equation(n, polished).abs() <= closure_equation(n, mid).abs() {
        Ok(polished)
    } else {
        Ok(mid)
    }
}

/// Root `δ₀(n)` of [`closure_equation`] for `n = 2^s`, `s >= 4`.
pub fn delta0(n: usize, method: RootMethod) -> Result<RootResult> {
    require_power_of_two(n, 4)?;
    let delta = match method {
        RootMethod::ClosedForm => delta0_closed_form(n),
        RootMethod::Bisection => delta0_bisection(n)?,
    };
    Ok(RootResult {
        n,
        delta0: delta,
        residual: closure_equation(n, delta).abs(),
        method,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn methods_agree() {
        for s in 4..=10 {
            let n = 1 << s;
            let a = delta0(n, RootMethod::ClosedForm).unwrap();
            let b = delta0(n, RootMethod::Bisection).unwrap();
            assert!((a.delta0 - b.delta0).abs() <= 1e-14, "n = {n}");
            assert!(a.residual <= 1e-15 && b.residual <= 1e-15, "n = {n}");
            assert!(a.delta0 > 0.0 && a.delta0 < PI / n as f64);
        }
    }

    #[test]
    fn leading_order_at_large_n() {
        let n = 1024;
        let d = delta0(n, RootMethod::ClosedForm).unwrap().delta0;
        let ratio = d * (n as f64).powi(4) / PI.powi(4);
        assert!((ratio - 1.0).abs() < 1e-4);
        // the next term accounts for almost all of the deviation
        let next = 19.0 * PI * PI / (12.0 * (n as f64).powi(2));
        assert!((ratio - 1.0 - next).abs() < 1e-8);
    }

    #[test]
    fn width_of_d16() {
        let d = delta0(16, RootMethod::ClosedForm).unwrap().delta0;
        assert!(((PI / 32.0 + d / 2.0).cos() - 0.9951068324).abs() < 5e-11);
    }

    #[test]
    fn rejects_small_n() {
        assert!(matches!(
            delta0(8, RootMethod::Bisection),
            Err(Error::Domain(_))
        ));
        assert!(delta0(24, RootMethod::ClosedForm).is_err());
    }
}
