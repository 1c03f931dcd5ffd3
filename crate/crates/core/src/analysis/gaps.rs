//! Distances to the upper bounds `2n sin(π/2n)` and `cos(π/2n)`, written as
//! products of sines so that gaps far below the ulp of π stay accurate.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constructions::{perimeter_upper_bound, width_upper_bound, AngleVector};
use crate::error::{require_power_of_two, Result};
use crate::solver::{delta0, solve_dn_star, RootMethod};

fn d0(n: usize) -> Result<f64> {
    Ok(delta0(n, RootMethod::ClosedForm)?.delta0)
}

/// `L̄_n - L(D_n) = 4n sin(π/2n) sin²(δ₀/4)`.
pub fn gap_perimeter_dn(n: usize) -> Result<f64> {
    let d = d0(n)?;
    let nf = n as f64;
    Ok(4.0 * nf * (PI / (2.0 * nf)).sin() * (d / 4.0).sin().powi(2))
}

/// `W̄_n - W(D_n) = 2 sin(δ₀/4) sin(π/2n + δ₀/4)`.
pub fn gap_width_dn(n: usize) -> Result<f64> {
    let d = d0(n)?;
    Ok(2.0 * (d / 4.0).sin() * (PI / (2.0 * n as f64) + d / 4.0).sin())
}

/// `π/2n - ½ arcsin(½ sin(2π/n))`, the angle by which `B_n` falls short.
fn bn_shortfall(n: usize) -> f64 {
    let nf = n as f64;
    PI / (2.0 * nf) - 0.5 * (0.5 * (2.0 * PI / nf).sin()).asin()
}

/// `L̄_n - L(B_n) = 4n sin(π/2n) sin²(φ/2)` with `φ` the `B_n` shortfall.
pub fn gap_perimeter_bn(n: usize) -> Result<f64> {
    require_power_of_two(n, 2)?;
    let nf = n as f64;
    let phi = bn_shortfall(n);
    Ok(4.0 * nf * (PI / (2.0 * nf)).sin() * (phi / 2.0).sin().powi(2))
}

/// `W̄_n - W(B_n) = 2 sin((π/2n + π/n - ψ)/2) sin(φ/2)`, `ψ = π/2n - φ`.
pub fn gap_width_bn(n: usize) -> Result<f64> {
    require_power_of_two(n, 2)?;
    let nf = n as f64;
    let phi = bn_shortfall(n);
    let mid = (PI / nf + phi) / 2.0;
    Ok(2.0 * mid.sin() * (phi / 2.0).sin())
}

/// Perimeter gap over its leading asymptotic term `π⁹/8n⁸`.
pub fn asymptotic_ratio_l(n: usize) -> Result<f64> {
    let nf = n as f64;
    Ok(gap_perimeter_dn(n)? * 8.0 * nf.powi(8) / PI.powi(9))
}

/// Width gap over its leading asymptotic term `π⁵/4n⁵`.
pub fn asymptotic_ratio_w(n: usize) -> Result<f64> {
    let nf = n as f64;
    Ok(gap_width_dn(n)? * 4.0 * nf.powi(5) / PI.powi(5))
}

/// `P(to) - P(from)` for two angle vectors of the same layout, summed term
/// by term as `8 c_k cos((a+b)/4) sin((a-b)/4)`.
pub fn perimeter_gain(to: &AngleVector, from: &AngleVector) -> f64 {
    to.alphas()
        .iter()
        .zip(from.alphas())
        .zip(to.coefficients())
        .map(|((a, b), c)| 8.0 * c * ((a + b) / 4.0).cos() * ((a - b) / 4.0).sin())
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub n: usize,
    pub ub_l: f64,
    pub ub_w: f64,
    pub gap_l: f64,
    pub gap_w: f64,
    /// `(L(D_n) - L(B_n)) / (L̄_n - L(B_n))`.
    pub fraction_l: f64,
    /// `(W(D_n) - W(B_n)) / (W̄_n - W(B_n))`.
    pub fraction_w: f64,
    /// `(L(D_n*) - L(D_n)) / (L̄_n - L(D_n))`.
    pub lambda_star: f64,
}

/// Gaps and fractions for `n = 2^s`, `s >= 4`; runs the `D_n*` solve.
pub fn gap_report(n: usize) -> Result<GapReport> {
    let gap_l = gap_perimeter_dn(n)?;
    let gap_w = gap_width_dn(n)?;
    let opt = solve_dn_star(n)?;
    let warm = AngleVector::alternating(n, d0(n)?)?;
    Ok(GapReport {
        n,
        ub_l: perimeter_upper_bound(n),
        ub_w: width_upper_bound(n),
        gap_l,
        gap_w,
        fraction_l: 1.0 - gap_l / gap_perimeter_bn(n)?,
        fraction_w: 1.0 - gap_w / gap_width_bn(n)?,
        lambda_star: perimeter_gain(&opt.alphas, &warm) / gap_l,
    })
}
