//! Continuous optimization of set-pair ratio problems and threshold rounding.
//!
//! A [`RatioProblem`] carries the discrete numerator/denominator pair plus
//! (optionally) closed-form evaluators for their extensions. The solver is a
//! Dinkelbach outer loop with exact coordinatewise line search over the
//! breakpoints of the piecewise-linear objective; rounding picks the best
//! threshold pair of the final iterate, which by construction is never worse
//! than the continuous ratio there.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use thiserror::Error;

use crate::cuts::Sense;
use crate::functionals::sup_norm;
use crate::lovasz::{setpair_extension, SetPairFunction};
use crate::setpair::{threshold_pairs, SetPair};

/// Which vectors (and set-pairs) count as feasible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// `x ≠ 0`; pairs other than `(∅,∅)`.
    AllNonzero,
    /// `x` nonconstant; pairs other than `(∅,∅)`, `(∅,V)`, `(V,∅)`.
    Nonconstant,
}

type ExtFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A numerator/denominator pair of set-pair functions with an optimization
/// sense. The denominator extension must be positive on the feasible set.
#[derive(Clone)]
pub struct RatioProblem {
    name: String,
    sense: Sense,
    feasibility: Feasibility,
    num: Arc<dyn SetPairFunction>,
    den: Arc<dyn SetPairFunction>,
    num_ext: Option<ExtFn>,
    den_ext: Option<ExtFn>,
    /// Weights for the mean-zero projection of nonconstant-feasible starts.
    weights: Option<Vec<f64>>,
}

#[derive(Debug, Error, PartialEq)]
pub enum RatioError {
    #[error("{0}: the zero vector is excluded")]
    ZeroVector(String),
    #[error("{0}: constant vectors are excluded")]
    ConstantVector(String),
    #[error("{0}: denominator extension vanishes at this vector")]
    ZeroDenominator(String),
    #[error("non-finite value encountered")]
    NonFinite,
}

#[derive(Debug, Error, PartialEq)]
pub enum RoundError {
    #[error("every threshold pair of the vector is infeasible")]
    AllPairsInfeasible,
}

#[derive(Debug, Error, PartialEq)]
pub enum SolveError {
    #[error("ratio evaluation failed: {0}")]
    Ratio(#[from] RatioError),
    #[error("rounding failed: {0}")]
    Round(#[from] RoundError),
    #[error("no start produced a feasible solution")]
    NoCandidate,
}

impl RatioProblem {
    pub fn new(
        name: impl Into<String>,
        num: Arc<dyn SetPairFunction>,
        den: Arc<dyn SetPairFunction>,
        sense: Sense,
        feasibility: Feasibility,
    ) -> Self {
        RatioProblem {
            name: name.into(),
            sense,
            feasibility,
            num,
            den,
            num_ext: None,
            den_ext: None,
            weights: None,
        }
    }

    /// Attach closed-form extension evaluators (must agree with the generic
    /// extensions of the discrete functions).
    pub fn with_extensions(
        mut self,
        num_ext: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        den_ext: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.num_ext = Some(Arc::new(num_ext));
        self.den_ext = Some(Arc::new(den_ext));
        self
    }

    pub fn with_projection_weights(mut self, weights: Vec<f64>) -> Self {
        self.weights = Some(weights);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn feasibility(&self) -> Feasibility {
        self.feasibility
    }

    pub fn numerator(&self) -> &Arc<dyn SetPairFunction> {
        &self.num
    }

    pub fn denominator(&self) -> &Arc<dyn SetPairFunction> {
        &self.den
    }

    pub fn numerator_extension(&self, x: &[f64]) -> f64 {
        match &self.num_ext {
            Some(f) => f(x),
            None => setpair_extension(self.num.as_ref(), x),
        }
    }

    pub fn denominator_extension(&self, x: &[f64]) -> f64 {
        match &self.den_ext {
            Some(f) => f(x),
            None => setpair_extension(self.den.as_ref(), x),
        }
    }

    fn pair_feasible(&self, p: &SetPair) -> bool {
        match self.feasibility {
            Feasibility::AllNonzero => !p.is_empty(),
            Feasibility::Nonconstant => !p.is_constant_indicator(),
        }
    }

    /// Discrete ratio at a pair; `None` when the pair is excluded or its
    /// denominator vanishes.
    pub fn discrete_ratio(&self, p: &SetPair) -> Option<f64> {
        if !self.pair_feasible(p) {
            return None;
        }
        let den = self.den.evaluate(p);
        if den <= 0.0 {
            return None;
        }
        Some(self.num.evaluate(p) / den)
    }

    fn vector_feasible(&self, x: &[f64]) -> Result<(), RatioError> {
        if x.iter().any(|v| !v.is_finite()) {
            return Err(RatioError::NonFinite);
        }
        match self.feasibility {
            Feasibility::AllNonzero => {
                if x.iter().all(|&v| v == 0.0) {
                    return Err(RatioError::ZeroVector(self.name.clone()));
                }
            }
            Feasibility::Nonconstant => {
                if x.is_empty() || x.iter().all(|&v| v == x[0]) {
                    return Err(RatioError::ConstantVector(self.name.clone()));
                }
            }
        }
        Ok(())
    }

    /// `num^L(x) / den^L(x)` on the feasible set.
    pub fn continuous_ratio(&self, x: &[f64]) -> Result<f64, RatioError> {
        self.vector_feasible(x)?;
        let den = self.denominator_extension(x);
        if !(den > 0.0) {
            return Err(RatioError::ZeroDenominator(self.name.clone()));
        }
        let val = self.numerator_extension(x) / den;
        if !val.is_finite() {
            return Err(RatioError::NonFinite);
        }
        Ok(val)
    }
}

/// The best discrete pair among the positive-gap threshold pairs of `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rounded {
    pub pair: SetPair,
    pub value: f64,
}

/// Evaluate the discrete ratio at every positive-gap threshold pair of `x`
/// and keep the best; ties resolve to the lexicographically smallest pair.
pub fn threshold_round(p: &RatioProblem, x: &[f64]) -> Result<Rounded, RoundError> {
    let chain = threshold_pairs(x).expect("rounding requires finite input");
    let mut best: Option<(f64, SetPair)> = None;
    for (pair, _gap) in chain.positive_links() {
        let Some(value) = p.discrete_ratio(pair) else { continue };
        let replace = match &best {
            None => true,
            Some((bv, bp)) => {
                p.sense().strictly_better(value, *bv)
                    || (value == *bv && pair.lex_cmp(bp) == std::cmp::Ordering::Less)
            }
        };
        if replace {
            best = Some((value, pair.clone()));
        }
    }
    match best {
        Some((value, pair)) => Ok(Rounded { pair, value }),
        None => Err(RoundError::AllPairsInfeasible),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DescentOpts {
    pub max_iters: usize,
    /// Minimum improvement of the Dinkelbach value for a move to be taken.
    pub tol: f64,
}

impl Default for DescentOpts {
    fn default() -> Self {
        DescentOpts { max_iters: 100, tol: 1e-10 }
    }
}

#[derive(Clone, Debug)]
pub struct DescentRun {
    pub x: Vec<f64>,
    /// Ratio at the start of each outer iteration plus the final value;
    /// non-increasing for min problems, non-decreasing for max.
    pub trace: Vec<f64>,
    pub iterations: u64,
}

fn project_weighted_mean_zero(x: &mut [f64], weights: Option<&[f64]>) {
    let (mut num, mut den) = (0.0, 0.0);
    for (i, v) in x.iter().enumerate() {
        let w = weights.map_or(1.0, |ws| ws[i]);
        num += w * v;
        den += w;
    }
    if den > 0.0 {
        let mean = num / den;
        for v in x.iter_mut() {
            *v -= mean;
        }
    }
}

/// Dinkelbach outer loop with exact coordinatewise breakpoint search.
///
/// Each outer iteration fixes `λ` to the current ratio and sweeps the
/// coordinates, moving `x_c` to the best breakpoint of
/// `h(y) = num^L(y) - λ·den^L(y)` (candidates: 0, `±x_j`, and one point past
/// the largest magnitude). Accepted moves improve `h` by more than
/// `opts.tol`, which forces the ratio trace to be monotone.
pub fn local_descent(
    p: &RatioProblem,
    x0: &[f64],
    opts: &DescentOpts,
) -> Result<DescentRun, RatioError> {
    let n = x0.len();
    let mut x = x0.to_vec();
    if p.feasibility() == Feasibility::Nonconstant {
        project_weighted_mean_zero(&mut x, p.weights.as_deref());
    }
    p.vector_feasible(&x)?;

    let sign = match p.sense() {
        Sense::Min => 1.0,
        Sense::Max => -1.0,
    };
    let mut trace = Vec::new();
    let mut iterations = 0u64;

    for _ in 0..opts.max_iters {
        // One-homogeneity lets us renormalize freely; keep ‖x‖∞ = 1.
        let sup = sup_norm(&x);
        if sup > 0.0 {
            for v in x.iter_mut() {
                *v /= sup;
            }
        }
        let lambda = p.continuous_ratio(&x)?;
        trace.push(lambda);
        iterations += 1;

        let h = |y: &[f64]| p.numerator_extension(y) - lambda * p.denominator_extension(y);
        let mut moved = false;
        for c in 0..n {
            let mut candidates: Vec<f64> = vec![0.0];
            let mut maxmag = 0.0f64;
            for (j, &v) in x.iter().enumerate() {
                if j != c {
                    candidates.push(v);
                    candidates.push(-v);
                    maxmag = maxmag.max(v.abs());
                }
            }
            candidates.push(maxmag + 1.0);
            candidates.push(-(maxmag + 1.0));

            let mut best_phi = sign * h(&x);
            let mut best_t: Option<f64> = None;
            let old = x[c];
            for &t in &candidates {
                if t == old {
                    continue;
                }
                x[c] = t;
                let feasible = p.vector_feasible(&x).is_ok()
                    && p.denominator_extension(&x) > 0.0;
                if feasible {
                    let phi = sign * h(&x);
                    if phi.is_finite() && phi < best_phi - opts.tol {
                        best_phi = phi;
                        best_t = Some(t);
                    }
                }
                x[c] = old;
            }
            if let Some(t) = best_t {
                x[c] = t;
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    let final_ratio = p.continuous_ratio(&x)?;
    trace.push(final_ratio);
    Ok(DescentRun { x, trace, iterations })
}

/// Outcome of a multi-start solve: the best rounded pair over all runs.
#[derive(Clone, Debug)]
pub struct SolveReport {
    /// Best rounded discrete ratio over all starts.
    pub best_value: f64,
    /// Terminal continuous iterate of the winning run.
    pub best_vector: Vec<f64>,
    /// The rounded set-pair attaining `best_value`.
    pub rounded: SetPair,
    /// Total outer iterations across all starts.
    pub iterations: u64,
    /// Number of starts actually run (2n signed unit vectors + `restarts`).
    pub starts: u64,
    /// Ratio trace of the winning run.
    pub trace: Vec<f64>,
}

fn sphere_start(n: usize, seed: u64, k: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ k.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut x: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        for v in x.iter_mut() {
            *v /= norm;
        }
    }
    x
}

fn fallback_start(n: usize) -> Vec<f64> {
    (0..n).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect()
}

/// Run [`local_descent`] from `restarts` seeded uniform-on-sphere starts plus
/// all `2n` signed unit vectors, rounding every terminal vector; the report
/// is deterministic for a fixed `(restarts, seed)` regardless of the rayon
/// thread count.
pub fn multi_start_solve(
    p: &RatioProblem,
    n: usize,
    restarts: usize,
    seed: u64,
    opts: &DescentOpts,
) -> Result<SolveReport, SolveError> {
    assert!(restarts >= 1, "restarts must be >= 1");
    let total = 2 * n + restarts;
    let runs: Vec<Option<(f64, u64, DescentRun, SetPair)>> = (0..total)
        .into_par_iter()
        .map(|k| {
            let mut x0 = if k < 2 * n {
                let mut e = vec![0.0; n];
                e[k / 2] = if k % 2 == 0 { 1.0 } else { -1.0 };
                e
            } else {
                sphere_start(n, seed, (k - 2 * n) as u64)
            };
            if p.feasibility() == Feasibility::Nonconstant {
                project_weighted_mean_zero(&mut x0, p.weights.as_deref());
                if x0.iter().all(|&v| v == x0[0]) {
                    x0 = fallback_start(n);
                    project_weighted_mean_zero(&mut x0, p.weights.as_deref());
                }
            }
            let run = local_descent(p, &x0, opts).ok()?;
            let rounded = threshold_round(p, &run.x).ok()?;
            Some((rounded.value, k as u64, run, rounded.pair))
        })
        .collect();

    let mut best: Option<(f64, u64, DescentRun, SetPair)> = None;
    let mut iterations = 0u64;
    for item in runs.into_iter().flatten() {
        iterations += item.2.iterations;
        let replace = match &best {
            None => true,
            Some((bv, bk, _, _)) => {
                p.sense().strictly_better(item.0, *bv) || (item.0 == *bv && item.1 < *bk)
            }
        };
        if replace {
            best = Some(item);
        }
    }
    let (best_value, _, run, rounded) = best.ok_or(SolveError::NoCandidate)?;
    Ok(SolveReport {
        best_value,
        best_vector: run.x,
        rounded,
        iterations,
        starts: total as u64,
        trace: run.trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::{pair_ratio_problem, CutKind, CutProblem};
    use crate::graph::Graph;
    use crate::setpair::indicator;

    fn k3() -> Arc<Graph> {
        Arc::new(Graph::parse_edge_list_str("3 3\n1 2 1\n2 3 1\n1 3 1").unwrap())
    }

    fn c4() -> Arc<Graph> {
        Arc::new(Graph::parse_edge_list_str("4 4\n1 2 1\n2 3 1\n3 4 1\n4 1 1").unwrap())
    }

    #[test]
    fn rounding_returns_the_pair_itself_at_indicators() {
        let g = k3();
        let p = pair_ratio_problem(CutKind::MaxCut, &g);
        let pair = SetPair::of(3, [0, 1], [2]);
        let r = threshold_round(&p, &indicator(&pair, 3)).unwrap();
        assert_eq!(r.pair, pair);
    }

    #[test]
    fn rounding_beats_continuous_on_worked_example() {
        let g = k3();
        let p = pair_ratio_problem(CutKind::MaxCut, &g);
        let x = [0.9, 1.1, -1.0];
        let r = threshold_round(&p, &x).unwrap();
        assert_eq!(r.pair, SetPair::of(3, [0, 1], [2]));
        assert!((r.value - 2.0 / 3.0).abs() <= 1e-12);
        assert!(r.value >= p.continuous_ratio(&x).unwrap() - 1e-12);
    }

    #[test]
    fn rounding_candidates_on_two_level_vector() {
        let g = k3();
        let p = pair_ratio_problem(CutKind::DualCheeger, &g);
        // chain of (2,-1,0): candidates ({1},{2}) and ({1},∅)
        let r = threshold_round(&p, &[2.0, -1.0, 0.0]).unwrap();
        let cand1 = p.discrete_ratio(&SetPair::of(3, [0], [1])).unwrap();
        let cand2 = p.discrete_ratio(&SetPair::of(3, [0], [])).unwrap();
        assert_eq!(r.value, cand1.max(cand2));
    }

    #[test]
    fn rounding_fails_on_all_infeasible() {
        let g = k3();
        let p = pair_ratio_problem(CutKind::Cheeger, &g);
        // x > 0 everywhere: every threshold pair is (S, ∅) with S ∋ argmax …
        // the only positive-gap pairs of a constant vector are (V, ∅).
        assert_eq!(threshold_round(&p, &[1.0, 1.0, 1.0]).unwrap_err(), RoundError::AllPairsInfeasible);
    }

    #[test]
    fn descent_from_discrete_optimum_stops_immediately() {
        let g = k3();
        let p = pair_ratio_problem(CutKind::MaxCut, &g);
        let x0 = indicator(&SetPair::of(3, [0, 1], [2]), 3);
        let run = local_descent(&p, &x0, &DescentOpts::default()).unwrap();
        assert_eq!(run.iterations, 1);
        assert!((run.trace[0] - 2.0 / 3.0).abs() <= 1e-12);
    }

    #[test]
    fn descent_trace_is_monotone() {
        let mut runs = 0;
        for kind in CutKind::ALL {
            let g = c4();
            let p = pair_ratio_problem(kind, &g);
            for s in 0..15u64 {
                let x0 = sphere_start(4, 99, s);
                let Ok(run) = local_descent(&p, &x0, &DescentOpts::default()) else { continue };
                for w in run.trace.windows(2) {
                    match p.sense() {
                        Sense::Min => assert!(w[1] <= w[0] + 1e-9, "trace {:?}", run.trace),
                        Sense::Max => assert!(w[1] >= w[0] - 1e-9, "trace {:?}", run.trace),
                    }
                }
                runs += 1;
            }
        }
        assert!(runs >= 100);
    }

    #[test]
    fn dual_cheeger_descent_converges_on_k3() {
        let g = k3();
        let p = pair_ratio_problem(CutKind::DualCheeger, &g);
        let run = local_descent(&p, &[0.3, 0.7, -1.0], &DescentOpts { max_iters: 50, tol: 1e-10 })
            .unwrap();
        let value = *run.trace.last().unwrap();
        assert!((value - 2.0 / 3.0).abs() <= 1e-9, "converged to {value}");
    }

    #[test]
    fn multi_start_matches_oracle_on_k3_maxcut() {
        let g = k3();
        let p = pair_ratio_problem(CutKind::MaxCut, &g);
        let report = multi_start_solve(&p, 3, 20, 1, &DescentOpts::default()).unwrap();
        assert!((report.best_value - 2.0 / 3.0).abs() <= 1e-9);
    }

    #[test]
    fn bipartite_dual_cheeger_reaches_one() {
        let g = c4();
        let p = pair_ratio_problem(CutKind::DualCheeger, &g);
        let report = multi_start_solve(&p, 4, 20, 7, &DescentOpts::default()).unwrap();
        assert!((report.best_value - 1.0).abs() <= 1e-9);
        assert_eq!(
            CutProblem::new(CutKind::DualCheeger, Arc::clone(&g))
                .discrete_optimum()
                .unwrap()
                .value,
            1.0
        );
    }

    #[test]
    fn solve_report_is_thread_count_invariant() {
        let g = c4();
        let p = pair_ratio_problem(CutKind::AntiCheeger, &g);
        let solve = || {
            let report = multi_start_solve(&p, 4, 10, 3, &DescentOpts::default()).unwrap();
            (report.best_value, report.rounded.clone(), report.iterations, report.best_vector.clone())
        };
        let pool1 = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let pool8 = rayon::ThreadPoolBuilder::new().num_threads(8).build().unwrap();
        let r1 = pool1.install(solve);
        let r8 = pool8.install(solve);
        assert_eq!(r1, r8);
    }

    #[test]
    fn rounding_dominance_random_sample() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for kind in CutKind::ALL {
            let g = c4();
            let p = pair_ratio_problem(kind, &g);
            for _ in 0..500 {
                let x: Vec<f64> =
                    (0..4).map(|_| rand::Rng::random_range(&mut rng, -1.0..1.0)).collect();
                let Ok(cont) = p.continuous_ratio(&x) else { continue };
                let Ok(r) = threshold_round(&p, &x) else { continue };
                match p.sense() {
                    Sense::Max => assert!(r.value >= cont - 1e-9, "{kind:?}: {} < {cont}", r.value),
                    Sense::Min => assert!(r.value <= cont + 1e-9, "{kind:?}: {} > {cont}", r.value),
                }
            }
        }
    }
}
