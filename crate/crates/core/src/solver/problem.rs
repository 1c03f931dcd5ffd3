//! Perimeter maximization over half-polygon angles.

use std::f64::consts::FRAC_PI_2;

use nalgebra::{DMatrix, DVector};

use super::nlp::{ConstraintKind, Evaluation, Problem};
use crate::constructions::AngleFamily;

/// Objective, closure constraint and weighted angle sum in the full angle
/// space `α_0 .. α_{K-1}`.
#[derive(Debug, Clone)]
pub struct AngleProblem {
    n: usize,
    family: AngleFamily,
    coeffs: Vec<f64>,
    upper: Vec<f64>,
    target: f64,
}

impl AngleProblem {
    pub fn new(n: usize, family: AngleFamily) -> Self {
        Self {
            n,
            family,
            coeffs: family.coefficients(n),
            upper: family.upper_bounds(n),
            target: family.closure_target(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> AngleFamily {
        self.family
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// Perimeter `Σ 4 c_k sin(α_k/2)`.
    pub fn perimeter(&self, alphas: &[f64]) -> f64 {
        alphas
            .iter()
            .zip(&self.coeffs)
            .map(|(a, c)| 4.0 * c * (a / 2.0).sin())
            .sum()
    }

    pub fn perimeter_gradient(&self, alphas: &[f64]) -> Vec<f64> {
        alphas
            .iter()
            .zip(&self.coeffs)
            .map(|(a, c)| 2.0 * c * (a / 2.0).cos())
            .collect()
    }

    /// Partial sums `θ_k = Σ_{i<k} c_i α_i` for `k = 0..K`.
    fn thetas(&self, alphas: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(alphas.len() + 1);
        let mut acc = 0.0;
        out.push(acc);
        for (a, c) in alphas.iter().zip(&self.coeffs) {
            acc += c * a;
            out.push(acc);
        }
        out
    }

    #[inline]
    fn sign(k: usize) -> f64 {
        if k % 2 == 1 {
            1.0
        } else {
            -1.0
        }
    }

    /// `Σ_{k=1}^{K-1} (-1)^{k-1} sin θ_k - target`.
    pub fn closure(&self, alphas: &[f64]) -> f64 {
        let th = self.thetas(alphas);
        (1..alphas.len())
            .map(|k| Self::sign(k) * th[k].sin())
            .sum::<f64>()
            - self.target
    }

    pub fn closure_gradient(&self, alphas: &[f64]) -> Vec<f64> {
        let th = self.thetas(alphas);
        let len = alphas.len();
        // tail[i] = Σ_{k>i} s_k cos θ_k
        let mut grad = vec![0.0; len];
        let mut tail = 0.0;
        for i in (0..len).rev() {
            if i + 1 < len {
                tail += Self::sign(i + 1) * th[i + 1].cos();
            }
            grad[i] = self.coeffs[i] * tail;
        }
        grad
    }

    fn closure_hessian(&self, alphas: &[f64]) -> DMatrix<f64> {
        let th = self.thetas(alphas);
        let len = alphas.len();
        // tail[m] = Σ_{k>m} s_k sin θ_k
        let mut tail = vec![0.0; len];
        let mut acc = 0.0;
        for m in (0..len).rev() {
            if m + 1 < len {
                acc += Self::sign(m + 1) * th[m + 1].sin();
            }
            tail[m] = acc;
        }
        DMatrix::from_fn(len, len, |i, j| {
            -self.coeffs[i] * self.coeffs[j] * tail[i.max(j)]
        })
    }

    /// `Σ c_k α_k - π/2`.
    pub fn angle_sum(&self, alphas: &[f64]) -> f64 {
        alphas
            .iter()
            .zip(&self.coeffs)
            .map(|(a, c)| a * c)
            .sum::<f64>()
            - FRAC_PI_2
    }

    pub fn upper_bounds(&self) -> &[f64] {
        &self.upper
    }
}

/// The angle problem with the last angle eliminated through the angle sum,
/// posed for minimization of the negated perimeter.
///
/// Constraints: closure `= 0`, and the eliminated angle's bounds as two
/// linear inequalities.
#[derive(Debug, Clone)]
pub struct ReducedProblem {
    full: AngleProblem,
    lower: Vec<f64>,
    upper: Vec<f64>,
    kinds: [ConstraintKind; 3],
}

impl ReducedProblem {
    pub fn new(full: AngleProblem) -> Self {
        let m = full.len() - 1;
        Self {
            lower: vec![0.0; m],
            upper: full.upper[..m].to_vec(),
            full,
            kinds: [
                ConstraintKind::Equality,
                ConstraintKind::NonNegative,
                ConstraintKind::NonNegative,
            ],
        }
    }

    pub fn full(&self) -> &AngleProblem {
        &self.full
    }

    fn last_coeff(&self) -> f64 {
        self.full.coeffs[self.full.len() - 1]
    }

    pub fn expand(&self, x: &[f64]) -> Vec<f64> {
        let partial: f64 = x.iter().zip(&self.full.coeffs).map(|(a, c)| a * c).sum();
        let mut alphas = x.to_vec();
        alphas.push((FRAC_PI_2 - partial) / self.last_coeff());
        alphas
    }

    pub fn reduce(alphas: &[f64]) -> Vec<f64> {
        alphas[..alphas.len() - 1].to_vec()
    }

    /// Jacobian of [`Self::expand`], `K x (K-1)`.
    fn expansion_jacobian(&self) -> DMatrix<f64> {
        let k = self.full.len();
        let last = self.last_coeff();
        DMatrix::from_fn(k, k - 1, |r, c| {
            if r == k - 1 {
                -self.full.coeffs[c] / last
            } else if r == c {
                1.0
            } else {
                0.0
            }
        })
    }

    fn chain(&self, full_grad: &[f64]) -> DVector<f64> {
        let k = self.full.len();
        let last = self.last_coeff();
        DVector::from_iterator(
            k - 1,
            (0..k - 1).map(|i| full_grad[i] - self.full.coeffs[i] / last * full_grad[k - 1]),
        )
    }
}

impl Problem for ReducedProblem {
    fn dim(&self) -> usize {
        self.lower.len()
    }

    fn lower(&self) -> &[f64] {
        &self.lower
    }

    fn upper(&self) -> &[f64] {
        &self.upper
    }

    fn constraint_kinds(&self) -> &[ConstraintKind] {
        &self.kinds
    }

    fn evaluate(&self, x: &[f64]) -> Evaluation {
        let alphas = self.expand(x);
        let last = alphas[alphas.len() - 1];
        let last_ub = self.full.upper[alphas.len() - 1];
        let closure_grad = self.chain(&self.full.closure_gradient(&alphas));
        let last_grad = self.chain(&{
            let mut e = vec![0.0; alphas.len()];
            e[alphas.len() - 1] = 1.0;
            e
        });
        let m = self.dim();
        let mut jac = DMatrix::zeros(3, m);
        jac.row_mut(0).copy_from(&closure_grad.transpose());
        jac.row_mut(1).copy_from(&last_grad.transpose());
        jac.row_mut(2).copy_from(&(-last_grad).transpose());
        Evaluation {
            f: -self.full.perimeter(&alphas),
            grad: -self.chain(&self.full.perimeter_gradient(&alphas)),
            c: DVector::from_vec(vec![self.full.closure(&alphas), last, last_ub - last]),
            jac,
        }
    }

    fn lagrangian_hessian(&self, x: &[f64], multipliers: &[f64]) -> DMatrix<f64> {
        let alphas = self.expand(x);
        let k = alphas.len();
        let mut h = self.full.closure_hessian(&alphas) * (-multipliers[0]);
        for i in 0..k {
            // Hessian of -perimeter is diag(c sin(α/2)).
            h[(i, i)] += self.full.coeffs[i] * (alphas[i] / 2.0).sin();
        }
        let j = self.expansion_jacobian();
        j.transpose() * h * j
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::AngleVector;
    use std::f64::consts::PI;

    #[test]
    fn closure_matches_construction() {
        let av = AngleVector::alternating(32, 1e-4).unwrap();
        let p = AngleProblem::new(32, AngleFamily::D);
        assert!((p.closure(av.alphas()) - av.closure_residual()).abs() < 1e-15);
    }

    #[test]
    fn hessians_match_differences_of_gradients() {
        let p = AngleProblem::new(16, AngleFamily::D);
        let a: Vec<f64> = (0..6)
            .map(|k| PI / 16.0 + 0.01 * (k as f64).sin())
            .collect();
        let h = p.closure_hessian(&a);
        let eps = 1e-6;
        for j in 0..6 {
            let mut ap = a.clone();
            let mut am = a.clone();
            ap[j] += eps;
            am[j] -= eps;
            let (gp, gm) = (p.closure_gradient(&ap), p.closure_gradient(&am));
            for i in 0..6 {
                let fd = (gp[i] - gm[i]) / (2.0 * eps);
                assert!((fd - h[(i, j)]).abs() < 1e-8, "({i},{j})");
            }
        }
    }

    #[test]
    fn reduced_gradient_matches_differences() {
        let r = ReducedProblem::new(AngleProblem::new(16, AngleFamily::B));
        let x: Vec<f64> = (0..4).map(|k| PI / 16.0 + 0.003 * k as f64).collect();
        let ev = r.evaluate(&x);
        let eps = 1e-6;
        for j in 0..4 {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[j] += eps;
            xm[j] -= eps;
            let (ep, em) = (r.evaluate(&xp), r.evaluate(&xm));
            assert!(((ep.f - em.f) / (2.0 * eps) - ev.grad[j]).abs() < 1e-8);
            for c in 0..3 {
                assert!(((ep.c[c] - em.c[c]) / (2.0 * eps) - ev.jac[(c, j)]).abs() < 1e-8);
            }
        }
    }
}
