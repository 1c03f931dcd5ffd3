//! Root finding for `δ₀(n)` and perimeter maximization for `D_n*` and `B_n*`.
//!
//! Optima are local: each solve starts from a feasible or near-feasible
//! pattern plus a few seeded perturbations and keeps the best converged
//! point.

pub mod nlp;
pub mod problem;
mod root;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constructions::{
    build_from_angles_as, AngleFamily, AngleVector, ConstructionReport, PolygonFamily,
};
use crate::error::{require_power_of_two, Result};
pub use nlp::OuterRecord;
pub use problem::{AngleProblem, ReducedProblem};
pub use root::{closure_equation, delta0, RootMethod, RootResult};

/// Number of perturbed restarts in addition to the unperturbed warm start.
pub const PERTURBED_STARTS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemKind {
    /// Maximize the perimeter over the `D_n` diameter-graph layout.
    DnStar,
    /// Maximize the perimeter over the `B_n` diameter-graph layout.
    BnStar,
}

impl ProblemKind {
    pub fn family(self) -> AngleFamily {
        match self {
            ProblemKind::DnStar => AngleFamily::D,
            ProblemKind::BnStar => AngleFamily::B,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub seed: u64,
    pub perturbed_starts: usize,
    pub nlp: nlp::Options,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            perturbed_starts: PERTURBED_STARTS,
            nlp: nlp::Options::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub n: usize,
    pub problem: ProblemKind,
    pub alphas: AngleVector,
    /// Perimeter `Σ 4 c_k sin(α_k/2)` at the returned angles.
    pub objective: f64,
    pub residual_closure: f64,
    pub residual_anglesum: f64,
    /// Norm of the projected Lagrangian gradient.
    pub projected_gradient: f64,
    /// Multiplier of the closure constraint.
    pub closure_multiplier: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Which start produced the result; 0 is the unperturbed warm start.
    pub start: usize,
    pub warm_start_objective: f64,
    #[serde(skip)]
    pub history: Vec<OuterRecord>,
}

impl OptimizationResult {
    /// Rebuild the optimal polygon from the returned angles.
    pub fn polygon(&self) -> Result<ConstructionReport> {
        let family = match self.problem {
            ProblemKind::DnStar => PolygonFamily::DnStar,
            ProblemKind::BnStar => PolygonFamily::BnStar,
        };
        build_from_angles_as(&self.alphas, family, None)
    }
}

fn run(
    kind: ProblemKind,
    n: usize,
    warm: Vec<f64>,
    scale: f64,
    opts: &SolveOptions,
) -> OptimizationResult {
    let family = kind.family();
    let reduced = ReducedProblem::new(AngleProblem::new(n, family));
    let full = reduced.full().clone();
    let warm_start_objective = full.perimeter(&warm);
    let x0 = ReducedProblem::reduce(&warm);

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut starts = vec![x0.clone()];
    for _ in 0..opts.perturbed_starts {
        starts.push(
            x0.iter()
                .map(|&a| (a + scale * rng.gen_range(-1.0..=1.0)).max(0.0))
                .collect(),
        );
    }

    let mut best: Option<OptimizationResult> = None;
    for (idx, start) in starts.iter().enumerate() {
        let sol = nlp::solve(&reduced, start, &opts.nlp);
        let mut alphas = reduced.expand(&sol.x);
        let upper = full.upper_bounds();
        for (a, &ub) in alphas.iter_mut().zip(upper) {
            *a = a.clamp(0.0, ub);
        }
        let candidate = OptimizationResult {
            n,
            problem: kind,
            objective: full.perimeter(&alphas),
            residual_closure: full.closure(&alphas).abs(),
            residual_anglesum: full.angle_sum(&alphas).abs(),
            projected_gradient: sol.projected_gradient,
            closure_multiplier: sol.multipliers[0],
            iterations: sol.iterations,
            converged: sol.converged,
            start: idx,
            warm_start_objective,
            history: sol.history,
            alphas: AngleVector::new_unchecked(n, family, alphas),
        };
        let better = match &best {
            None => true,
            Some(b) => match (candidate.converged, b.converged) {
                (true, false) => true,
                (false, true) => false,
                _ => candidate.objective > b.objective + 1e-15,
            },
        };
        if better {
            best = Some(candidate);
        }
    }
    best.expect("at least one start")
}

/// Maximize the perimeter over angle vectors with the `D_n` layout, warm
/// started at the `D_n` angles.
pub fn solve_dn_star(n: usize) -> Result<OptimizationResult> {
    solve_dn_star_with(n, &SolveOptions::default())
}

pub fn solve_dn_star_with(n: usize, opts: &SolveOptions) -> Result<OptimizationResult> {
    require_power_of_two(n, 4)?;
    let d = delta0(n, RootMethod::ClosedForm)?.delta0;
    let warm = AngleVector::alternating(n, d)?;
    Ok(run(ProblemKind::DnStar, n, warm.alphas().to_vec(), d, opts))
}

/// Maximize the perimeter over angle vectors with the `B_n` layout, warm
/// started at uniform angles `π/n`.
pub fn solve_bn_star(n: usize) -> Result<OptimizationResult> {
    solve_bn_star_with(n, &SolveOptions::default())
}

pub fn solve_bn_star_with(n: usize, opts: &SolveOptions) -> Result<OptimizationResult> {
    require_power_of_two(n, 3)?;
    let warm = AngleVector::uniform(n, AngleFamily::B)?;
    let scale = root::delta0_closed_form(n);
    Ok(run(
        ProblemKind::BnStar,
        n,
        warm.alphas().to_vec(),
        scale,
        opts,
    ))
}

/// Solve either problem.
pub fn solve(kind: ProblemKind, n: usize, opts: &SolveOptions) -> Result<OptimizationResult> {
    match kind {
        ProblemKind::DnStar => solve_dn_star_with(n, opts),
        ProblemKind::BnStar => solve_bn_star_with(n, opts),
    }
}
