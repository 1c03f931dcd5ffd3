//! Small dense nonlinear programs: an augmented-Lagrangian outer loop around a
//! projected BFGS inner solve, finished by Newton steps on the KKT system.
//!
//! Problems are posed as minimization of `f(x)` subject to `c_i(x) = 0`,
//! `d_j(x) >= 0` and `lower <= x <= upper`.

use nalgebra::{DMatrix, DVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintKind {
    Equality,
    NonNegative,
}

/// Values and first derivatives at a point.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub f: f64,
    pub grad: DVector<f64>,
    pub c: DVector<f64>,
    /// One row per constraint.
    pub jac: DMatrix<f64>,
}

pub trait Problem {
    fn dim(&self) -> usize;
    fn lower(&self) -> &[f64];
    fn upper(&self) -> &[f64];
    fn constraint_kinds(&self) -> &[ConstraintKind];
    fn evaluate(&self, x: &[f64]) -> Evaluation;
    /// `∇²f - Σ λ_i ∇²c_i`.
    fn lagrangian_hessian(&self, x: &[f64], multipliers: &[f64]) -> DMatrix<f64>;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Options {
    pub max_iterations: usize,
    pub max_outer: usize,
    pub feasibility_tol: f64,
    pub gradient_tol: f64,
    pub initial_penalty: f64,
    pub max_penalty: f64,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            max_iterations: 10_000,
            max_outer: 60,
            feasibility_tol: 1e-10,
            gradient_tol: 1e-12,
            initial_penalty: 10.0,
            max_penalty: 1e12,
        }
    }
}

/// State after one augmented-Lagrangian outer iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OuterRecord {
    pub objective: f64,
    pub infeasibility: f64,
    pub penalty: f64,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub x: Vec<f64>,
    pub objective: f64,
    pub multipliers: Vec<f64>,
    pub infeasibility: f64,
    pub projected_gradient: f64,
    pub iterations: usize,
    pub converged: bool,
    pub history: Vec<OuterRecord>,
}

fn clip(x: &mut [f64], lower: &[f64], upper: &[f64]) {
    for ((xi, &l), &u) in x.iter_mut().zip(lower).zip(upper) {
        *xi = xi.clamp(l, u);
    }
}

fn infeasibility(kinds: &[ConstraintKind], c: &DVector<f64>) -> f64 {
    kinds
        .iter()
        .zip(c.iter())
        .map(|(k, &v)| match k {
            ConstraintKind::Equality => v.abs(),
            ConstraintKind::NonNegative => (-v).max(0.0),
        })
        .fold(0.0, f64::max)
}

/// Gradient with components that point out of an active bound zeroed.
fn projected(grad: &DVector<f64>, x: &[f64], lower: &[f64], upper: &[f64]) -> DVector<f64> {
    DVector::from_iterator(
        grad.len(),
        grad.iter().enumerate().map(|(i, &g)| {
            if (x[i] <= lower[i] && g > 0.0) || (x[i] >= upper[i] && g < 0.0) {
                0.0
            } else {
                g
            }
        }),
    )
}

/// Gradient of the Lagrangian `f - λᵀc`, projected onto the box.
fn kkt_gradient(
    ev: &Evaluation,
    multipliers: &[f64],
    x: &[f64],
    lower: &[f64],
    upper: &[f64],
) -> DVector<f64> {
    let lam = DVector::from_column_slice(multipliers);
    let g = &ev.grad - ev.jac.transpose() * lam;
    projected(&g, x, lower, upper)
}

struct AugmentedLagrangian<'a, P: Problem> {
    problem: &'a P,
    multipliers: Vec<f64>,
    penalty: f64,
}

impl<P: Problem> AugmentedLagrangian<'_, P> {
    /// Powell-Hestenes-Rockafellar merit value and gradient.
    fn value_grad(&self, x: &[f64]) -> (f64, DVector<f64>) {
        let ev = self.problem.evaluate(x);
        let rho = self.penalty;
        let mut value = ev.f;
        let mut weights = DVector::zeros(ev.c.len());
        for (i, kind) in self.problem.constraint_kinds().iter().enumerate() {
            let (c, lam) = (ev.c[i], self.multipliers[i]);
            match kind {
                ConstraintKind::Equality => {
                    value += -lam * c + 0.5 * rho * c * c;
                    weights[i] = lam - rho * c;
                }
                ConstraintKind::NonNegative => {
                    let shifted = (lam - rho * c).max(0.0);
                    value += (shifted * shifted - lam * lam) / (2.0 * rho);
                    weights[i] = shifted;
                }
            }
        }
        let grad = &ev.grad - ev.jac.transpose() * weights;
        (value, grad)
    }

    fn update(&mut self, c: &DVector<f64>) {
        let rho = self.penalty;
        for (i, kind) in self.problem.constraint_kinds().iter().enumerate() {
            self.multipliers[i] = match kind {
                ConstraintKind::Equality => self.multipliers[i] - rho * c[i],
                ConstraintKind::NonNegative => (self.multipliers[i] - rho * c[i]).max(0.0),
            };
        }
    }
}

/// Projected BFGS on a box. Returns the point and the iteration count.
fn projected_bfgs<F>(
    mut fg: F,
    x0: &[f64],
    lower: &[f64],
    upper: &[f64],
    tol: f64,
    max_iter: usize,
) -> (Vec<f64>, usize)
where
    F: FnMut(&[f64]) -> (f64, DVector<f64>),
{
    let dim = x0.len();
    let mut x = x0.to_vec();
    clip(&mut x, lower, upper);
    let (mut fx, mut g) = fg(&x);
    let mut h = DMatrix::<f64>::identity(dim, dim);
    let mut iters = 0;
    while iters < max_iter {
        let pg = projected(&g, &x, lower, upper);
        if pg.amax() <= tol {
            break;
        }
        iters += 1;
        let active: Vec<bool> = (0..dim).map(|i| pg[i] == 0.0 && g[i] != 0.0).collect();
        let mut dir = DVector::zeros(dim);
        for i in (0..dim).filter(|&i| !active[i]) {
            dir[i] = -(0..dim)
                .filter(|&j| !active[j])
                .map(|j| h[(i, j)] * g[j])
                .sum::<f64>();
        }
        if g.dot(&dir) >= 0.0 {
            h.fill_with_identity();
            dir = -&pg;
        }

        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let mut trial: Vec<f64> = x
                .iter()
                .zip(dir.iter())
                .map(|(a, d)| a + step * d)
                .collect();
            clip(&mut trial, lower, upper);
            let delta: f64 = trial
                .iter()
                .zip(&x)
                .zip(g.iter())
                .map(|((t, a), gi)| (t - a) * gi)
                .sum();
            let (ft, gt) = fg(&trial);
            if ft <= fx + 1e-4 * delta && ft.is_finite() {
                accepted = Some((trial, ft, gt));
                break;
            }
            step *= 0.5;
        }
        let Some((trial, ft, gt)) = accepted else {
            break;
        };

        let s = DVector::from_iterator(dim, trial.iter().zip(&x).map(|(t, a)| t - a));
        let y = &gt - &g;
        let sy = s.dot(&y);
        if sy > 1e-14 * s.norm() * y.norm() {
            let rho = 1.0 / sy;
            let hy = &h * &y;
            let yhy = y.dot(&hy);
            h += (&s * s.transpose()) * (rho * rho * yhy + rho)
                - (&hy * s.transpose() + &s * hy.transpose()) * rho;
        }
        if s.amax() == 0.0 {
            break;
        }
        x = trial;
        fx = ft;
        g = gt;
    }
    (x, iters)
}

/// Newton iterations on the KKT conditions with the active set frozen.
fn kkt_polish<P: Problem>(problem: &P, x0: &[f64], mult0: &[f64]) -> Option<(Vec<f64>, Vec<f64>)> {
    let (lower, upper) = (problem.lower(), problem.upper());
    let kinds = problem.constraint_kinds();
    let dim = problem.dim();
    let mut x = x0.to_vec();
    let mut mult = mult0.to_vec();

    let ev0 = problem.evaluate(&x);
    let free: Vec<usize> = (0..dim)
        .filter(|&i| x[i] > lower[i] + 1e-12 && x[i] < upper[i] - 1e-12)
        .collect();
    let active: Vec<usize> = (0..kinds.len())
        .filter(|&i| kinds[i] == ConstraintKind::Equality || ev0.c[i] <= 1e-9)
        .collect();
    for (i, m) in mult.iter_mut().enumerate() {
        if !active.contains(&i) {
            *m = 0.0;
        }
    }
    let (nf, na) = (free.len(), active.len());
    let residual = |ev: &Evaluation, x: &[f64], mult: &[f64]| -> f64 {
        let pg = kkt_gradient(ev, mult, x, lower, upper);
        pg.norm() + infeasibility(kinds, &ev.c)
    };
    let mut best = residual(&ev0, &x, &mult);

    for _ in 0..20 {
        let ev = problem.evaluate(&x);
        let hess = problem.lagrangian_hessian(&x, &mult);
        let lam = DVector::from_column_slice(&mult);
        let lag_grad = &ev.grad - ev.jac.transpose() * lam;

        let size = nf + na;
        let mut kkt = DMatrix::<f64>::zeros(size, size);
        let mut rhs = DVector::<f64>::zeros(size);
        for (a, &i) in free.iter().enumerate() {
            for (b, &j) in free.iter().enumerate() {
                kkt[(a, b)] = hess[(i, j)];
            }
            for (b, &k) in active.iter().enumerate() {
                kkt[(a, nf + b)] = -ev.jac[(k, i)];
                kkt[(nf + b, a)] = ev.jac[(k, i)];
            }
            rhs[a] = -lag_grad[i];
        }
        for (b, &k) in active.iter().enumerate() {
            rhs[nf + b] = -ev.c[k];
        }
        let step = kkt.lu().solve(&rhs)?;

        let mut trial = x.clone();
        for (a, &i) in free.iter().enumerate() {
            trial[i] += step[a];
        }
        if trial
            .iter()
            .zip(lower.iter().zip(upper))
            .any(|(t, (l, u))| t < l || t > u)
        {
            return None;
        }
        let mut trial_mult = mult.clone();
        for (b, &k) in active.iter().enumerate() {
            trial_mult[k] += step[nf + b];
        }
        let trial_res = residual(&problem.evaluate(&trial), &trial, &trial_mult);
        if trial_res.is_nan() || trial_res >= best {
            break;
        }
        best = trial_res;
        x = trial;
        mult = trial_mult;
    }
    Some((x, mult))
}

/// Solve from `x0`. The start need not be feasible.
pub fn solve<P: Problem>(problem: &P, x0: &[f64], opts: &Options) -> Solution {
    let (lower, upper) = (problem.lower(), problem.upper());
    let kinds = problem.constraint_kinds();
    let mut x = x0.to_vec();
    clip(&mut x, lower, upper);

    let mut al = AugmentedLagrangian {
        problem,
        multipliers: vec![0.0; kinds.len()],
        penalty: opts.initial_penalty,
    };
    let mut history = Vec::new();
    let mut iterations = 0;
    let mut prev_infeas = infeasibility(kinds, &problem.evaluate(&x).c);
    let mut inner_tol = 1e-4;

    for _ in 0..opts.max_outer {
        if iterations >= opts.max_iterations {
            break;
        }
        let budget = opts.max_iterations - iterations;
        let (xn, it) = projected_bfgs(|z| al.value_grad(z), &x, lower, upper, inner_tol, budget);
        iterations += it;
        x = xn;
        let ev = problem.evaluate(&x);
        let infeas = infeasibility(kinds, &ev.c);
        al.update(&ev.c);
        history.push(OuterRecord {
            objective: ev.f,
            infeasibility: infeas,
            penalty: al.penalty,
        });
        let stationarity = kkt_gradient(&ev, &al.multipliers, &x, lower, upper).amax();
        if infeas <= 1e-9 && stationarity <= 1e-7 {
            break;
        }
        if infeas > 0.25 * prev_infeas {
            al.penalty = (al.penalty * 10.0).min(opts.max_penalty);
        }
        prev_infeas = infeas;
        inner_tol = (inner_tol * 0.1).max(1e-10);
    }

    let mut multipliers = al.multipliers.clone();
    if let Some((xp, mp)) = kkt_polish(problem, &x, &multipliers) {
        x = xp;
        multipliers = mp;
    }

    let ev = problem.evaluate(&x);
    let infeas = infeasibility(kinds, &ev.c);
    let projected_gradient = kkt_gradient(&ev, &multipliers, &x, lower, upper).norm();
    history.push(OuterRecord {
        objective: ev.f,
        infeasibility: infeas,
        penalty: al.penalty,
    });
    Solution {
        converged: infeas <= opts.feasibility_tol && projected_gradient <= opts.gradient_tol,
        x,
        objective: ev.f,
        multipliers,
        infeasibility: infeas,
        projected_gradient,
        iterations,
        history,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// min (x-2)² + (y-1)²  s.t.  x² - y = 0,  x + y <= 2 (as 2 - x - y >= 0),  0 <= x, y <= 3.
    struct Toy {
        lower: Vec<f64>,
        upper: Vec<f64>,
        kinds: Vec<ConstraintKind>,
    }

    impl Problem for Toy {
        fn dim(&self) -> usize {
            2
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
            Evaluation {
                f: (x[0] - 2.0).powi(2) + (x[1] - 1.0).powi(2),
                grad: DVector::from_vec(vec![2.0 * (x[0] - 2.0), 2.0 * (x[1] - 1.0)]),
                c: DVector::from_vec(vec![x[0] * x[0] - x[1], 2.0 - x[0] - x[1]]),
                jac: DMatrix::from_row_slice(2, 2, &[2.0 * x[0], -1.0, -1.0, -1.0]),
            }
        }
        fn lagrangian_hessian(&self, _x: &[f64], m: &[f64]) -> DMatrix<f64> {
            DMatrix::from_row_slice(2, 2, &[2.0 - 2.0 * m[0], 0.0, 0.0, 2.0])
        }
    }

    #[test]
    fn toy_problem_hits_the_kink() {
        // Both constraints active at (1, 1).
        let toy = Toy {
            lower: vec![0.0, 0.0],
            upper: vec![3.0, 3.0],
            kinds: vec![ConstraintKind::Equality, ConstraintKind::NonNegative],
        };
        let sol = solve(&toy, &[0.2, 2.5], &Options::default());
        assert!(sol.converged, "{sol:?}");
        assert!((sol.x[0] - 1.0).abs() < 1e-12);
        assert!((sol.x[1] - 1.0).abs() < 1e-12);
        assert!(sol.multipliers[1] > 0.0);
    }

    #[test]
    fn bfgs_respects_box() {
        let (x, _) = projected_bfgs(
            |z| {
                let f = (z[0] + 1.0).powi(2) + (z[1] - 0.5).powi(2);
                (
                    f,
                    DVector::from_vec(vec![2.0 * (z[0] + 1.0), 2.0 * (z[1] - 0.5)]),
                )
            },
            &[0.7, 0.9],
            &[0.0, 0.0],
            &[1.0, 1.0],
            1e-12,
            500,
        );
        assert_eq!(x[0], 0.0);
        assert!((x[1] - 0.5).abs() < 1e-10);
    }
}
