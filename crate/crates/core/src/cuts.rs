//! The seven named cut problems: exact discrete definitions with exhaustive
//! oracles, the equivalent continuous objectives, and the set-pair ratio
//! forms that tie the two together.
//!
//! Oracles enumerate 2^n subsets (maxcut, Cheeger, anti-Cheeger) or 3^n
//! disjoint pairs / three-part assignments (dual Cheeger and the max 3-cut
//! family). Enumeration parallelizes over code ranges with a deterministic
//! reduction: ties keep the smallest candidate code, so results are
//! identical for any thread count.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::functionals::{
    dnorm1, ihat, iplus, median_dev, sup_norm, table_function, tv, TableRow,
};
use crate::graph::{Graph, VertexSet};
use crate::lovasz::SetPairFunction;
use crate::relax::{Feasibility, RatioProblem};
use crate::setpair::SetPair;

/// Enumeration guard for the 3^n oracles.
pub const THREE_CUT_GUARD: usize = 16;
/// Enumeration guard for the 2^n oracles.
pub const TWO_CUT_GUARD: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Min,
    Max,
}

impl Sense {
    pub fn strictly_better(self, a: f64, b: f64) -> bool {
        match self {
            Sense::Min => a < b,
            Sense::Max => a > b,
        }
    }
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Min => "min",
            Sense::Max => "max",
        })
    }
}

impl FromStr for Sense {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min" => Ok(Sense::Min),
            "max" => Ok(Sense::Max),
            other => Err(format!("unknown sense {other:?} (expected min or max)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CutKind {
    DualCheeger,
    Max3Cut,
    RatioMax3CutI,
    RatioMax3CutII,
    MaxCut,
    Cheeger,
    AntiCheeger,
}

impl CutKind {
    pub const ALL: [CutKind; 7] = [
        CutKind::DualCheeger,
        CutKind::Max3Cut,
        CutKind::RatioMax3CutI,
        CutKind::RatioMax3CutII,
        CutKind::MaxCut,
        CutKind::Cheeger,
        CutKind::AntiCheeger,
    ];

    /// Every kind maximizes except the Cheeger cut.
    pub fn sense(self) -> Sense {
        match self {
            CutKind::Cheeger => Sense::Min,
            _ => Sense::Max,
        }
    }

    /// Kinds whose oracle walks all 3^n disjoint pairs (the rest walk 2^n
    /// subsets).
    pub fn enumerates_pairs(self) -> bool {
        matches!(
            self,
            CutKind::DualCheeger | CutKind::Max3Cut | CutKind::RatioMax3CutI | CutKind::RatioMax3CutII
        )
    }

    pub fn cli_name(self) -> &'static str {
        match self {
            CutKind::DualCheeger => "dual-cheeger",
            CutKind::Max3Cut => "max3cut",
            CutKind::RatioMax3CutI => "ratio-max3cut-1",
            CutKind::RatioMax3CutII => "ratio-max3cut-2",
            CutKind::MaxCut => "maxcut",
            CutKind::Cheeger => "cheeger",
            CutKind::AntiCheeger => "anti-cheeger",
        }
    }
}

impl fmt::Display for CutKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for CutKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CutKind::ALL
            .into_iter()
            .find(|k| k.cli_name() == s)
            .ok_or_else(|| format!("unknown problem kind {s:?}"))
    }
}

/// The optimizer of a discrete cut problem.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// A subset `S` (2-cut problems).
    Set(VertexSet),
    /// A disjoint pair `(S₁, S₂)` (dual Cheeger).
    Pair(SetPair),
    /// A full three-part partition `(A, B, C)`.
    Triple([VertexSet; 3]),
    /// A full k-part partition (k-cut).
    Partition(crate::kcut::KPartition),
}

#[derive(Clone, Debug)]
pub struct CutResult {
    pub value: f64,
    pub witness: Witness,
    /// Number of feasible candidates the oracle evaluated.
    pub evaluations: u64,
}

#[derive(Debug, Error, PartialEq)]
pub enum CutError {
    #[error("{kind} oracle guard exceeded: n={n} > {limit}")]
    GuardExceeded { kind: String, n: usize, limit: usize },
    #[error("graph has zero volume")]
    ZeroVolume,
    #[error("no feasible candidate")]
    NoFeasibleCandidate,
    #[error("witness shape does not match problem kind")]
    WitnessShape,
    #[error("witness is infeasible for this problem")]
    InfeasibleWitness,
}

/// Continuous-objective evaluation failure; the message names the exclusion
/// rule of the problem kind.
#[derive(Debug, Error, PartialEq)]
pub enum ObjectiveError {
    #[error("{kind}: the zero vector is excluded (feasible set is x != 0)")]
    ZeroVector { kind: String },
    #[error("{kind}: constant vectors are excluded (feasible set is nonconstant x)")]
    ConstantVector { kind: String },
    #[error("{kind}: objective denominator vanishes at this vector")]
    ZeroDenominator { kind: String },
}

#[derive(Clone)]
pub struct CutProblem {
    kind: CutKind,
    graph: Arc<Graph>,
}

fn mask_vol(g: &Graph, mask: u64) -> f64 {
    let mut total = 0.0;
    for i in 0..g.n() {
        if (mask >> i) & 1 == 1 {
            total += g.degree(i);
        }
    }
    total
}

fn mask_boundary(g: &Graph, mask: u64) -> f64 {
    let mut total = 0.0;
    for e in g.edges() {
        if ((mask >> e.u) ^ (mask >> e.v)) & 1 == 1 {
            total += e.w;
        }
    }
    total
}

fn mask_cross(g: &Graph, a: u64, b: u64) -> f64 {
    let mut total = 0.0;
    for e in g.edges() {
        let (bu, bv) = ((1u64 << e.u), (1u64 << e.v));
        if (a & bu != 0 && b & bv != 0) || (a & bv != 0 && b & bu != 0) {
            total += e.w;
        }
    }
    total
}

fn two_cut_value(kind: CutKind, g: &Graph, s: u64, full: u64) -> Option<f64> {
    match kind {
        CutKind::MaxCut => Some(2.0 * mask_boundary(g, s) / g.total_volume()),
        CutKind::Cheeger => {
            if s == 0 || s == full {
                return None;
            }
            let den = mask_vol(g, s).min(mask_vol(g, full & !s));
            if den == 0.0 {
                return None;
            }
            Some(mask_boundary(g, s) / den)
        }
        CutKind::AntiCheeger => {
            let den = mask_vol(g, s).max(mask_vol(g, full & !s));
            if den == 0.0 {
                return None;
            }
            Some(mask_boundary(g, s) / den)
        }
        _ => unreachable!("three-cut kind routed to two-cut evaluator"),
    }
}

fn three_cut_value(kind: CutKind, g: &Graph, a: u64, b: u64, full: u64) -> Option<f64> {
    let c = full & !(a | b);
    match kind {
        CutKind::DualCheeger => {
            if a | b == 0 {
                return None;
            }
            let den = mask_vol(g, a) + mask_vol(g, b);
            if den == 0.0 {
                return None;
            }
            Some(2.0 * mask_cross(g, a, b) / den)
        }
        CutKind::Max3Cut | CutKind::RatioMax3CutI | CutKind::RatioMax3CutII => {
            let num =
                2.0 * (mask_cross(g, a, b) + mask_cross(g, b, c) + mask_cross(g, c, a));
            let den = match kind {
                CutKind::Max3Cut => g.total_volume(),
                CutKind::RatioMax3CutI => {
                    if a | b == 0 {
                        return None;
                    }
                    mask_vol(g, a) + mask_vol(g, b)
                }
                CutKind::RatioMax3CutII => mask_vol(g, a | b).max(mask_vol(g, c)),
                _ => unreachable!(),
            };
            if den == 0.0 {
                return None;
            }
            Some(num / den)
        }
        _ => unreachable!("two-cut kind routed to three-cut evaluator"),
    }
}

fn decode_trits(n: usize, mut code: u64) -> (u64, u64) {
    let (mut a, mut b) = (0u64, 0u64);
    for i in 0..n {
        match code % 3 {
            1 => a |= 1 << i,
            2 => b |= 1 << i,
            _ => {}
        }
        code /= 3;
    }
    (a, b)
}

impl CutProblem {
    pub fn new(kind: CutKind, graph: Arc<Graph>) -> Self {
        CutProblem { kind, graph }
    }

    pub fn kind(&self) -> CutKind {
        self.kind
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn sense(&self) -> Sense {
        self.kind.sense()
    }

    /// Global optimum by exhaustive enumeration. Candidates with vanishing
    /// denominators are excluded per each kind's constraint set; ties keep
    /// the smallest candidate code.
    pub fn discrete_optimum(&self) -> Result<CutResult, CutError> {
        let g = &*self.graph;
        let n = g.n();
        if g.total_volume() == 0.0 {
            return Err(CutError::ZeroVolume);
        }
        let kind = self.kind;
        let sense = kind.sense();
        let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };

        let total: u64 = if kind.enumerates_pairs() {
            if n > THREE_CUT_GUARD {
                return Err(CutError::GuardExceeded {
                    kind: kind.cli_name().into(),
                    n,
                    limit: THREE_CUT_GUARD,
                });
            }
            3u64.pow(n as u32)
        } else {
            if n > TWO_CUT_GUARD {
                return Err(CutError::GuardExceeded {
                    kind: kind.cli_name().into(),
                    n,
                    limit: TWO_CUT_GUARD,
                });
            }
            1u64 << n
        };

        let eval = |code: u64| -> Option<f64> {
            if kind.enumerates_pairs() {
                let (a, b) = decode_trits(n, code);
                three_cut_value(kind, g, a, b, full)
            } else {
                two_cut_value(kind, g, code, full)
            }
        };
        // Witness order for ties: lexicographic on member lists (first
        // component, then second). Decoded lazily; ties are rare.
        let lex_less = |c1: u64, c2: u64| -> bool {
            use std::cmp::Ordering;
            let ord = if kind.enumerates_pairs() {
                let (a1, b1) = decode_trits(n, c1);
                let (a2, b2) = decode_trits(n, c2);
                VertexSet::from_mask(n, a1)
                    .lex_cmp(&VertexSet::from_mask(n, a2))
                    .then_with(|| VertexSet::from_mask(n, b1).lex_cmp(&VertexSet::from_mask(n, b2)))
            } else {
                VertexSet::from_mask(n, c1).lex_cmp(&VertexSet::from_mask(n, c2))
            };
            ord == Ordering::Less
        };

        let (best, evaluations) = (0..total)
            .into_par_iter()
            .fold(
                || (None::<(f64, u64)>, 0u64),
                |(mut best, mut count), code| {
                    if let Some(value) = eval(code) {
                        count += 1;
                        let replace = match best {
                            None => true,
                            Some((bv, bc)) => {
                                sense.strictly_better(value, bv)
                                    || (value == bv && lex_less(code, bc))
                            }
                        };
                        if replace {
                            best = Some((value, code));
                        }
                    }
                    (best, count)
                },
            )
            .reduce(
                || (None, 0),
                |(a, ca), (b, cb)| {
                    let merged = match (a, b) {
                        (None, b) => b,
                        (a, None) => a,
                        (Some((av, ac)), Some((bv, bc))) => {
                            if sense.strictly_better(bv, av) || (bv == av && lex_less(bc, ac)) {
                                Some((bv, bc))
                            } else {
                                Some((av, ac))
                            }
                        }
                    };
                    (merged, ca + cb)
                },
            );

        let (value, code) = best.ok_or(CutError::NoFeasibleCandidate)?;
        let witness = if kind.enumerates_pairs() {
            let (a, b) = decode_trits(n, code);
            let set_a = VertexSet::from_mask(n, a);
            let set_b = VertexSet::from_mask(n, b);
            if kind == CutKind::DualCheeger {
                Witness::Pair(SetPair::new(set_a, set_b).expect("trits are disjoint"))
            } else {
                let set_c = VertexSet::from_mask(n, full & !(a | b));
                Witness::Triple([set_a, set_b, set_c])
            }
        } else {
            Witness::Set(VertexSet::from_mask(n, code))
        };
        Ok(CutResult { value, witness, evaluations })
    }

    /// The defining discrete formula evaluated at a witness, with the same
    /// arithmetic as the oracle.
    pub fn discrete_value(&self, witness: &Witness) -> Result<f64, CutError> {
        let g = &*self.graph;
        let n = g.n();
        assert!(n <= 64, "witness evaluation requires n <= 64");
        let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let to_mask = |s: &VertexSet| -> u64 {
            let mut m = 0u64;
            for i in s.iter() {
                m |= 1 << i;
            }
            m
        };
        let value = match (self.kind.enumerates_pairs(), witness) {
            (false, Witness::Set(s)) => two_cut_value(self.kind, g, to_mask(s), full),
            (true, Witness::Pair(p)) if self.kind == CutKind::DualCheeger => {
                three_cut_value(self.kind, g, to_mask(p.a()), to_mask(p.b()), full)
            }
            (true, Witness::Triple([a, b, c])) if self.kind != CutKind::DualCheeger => {
                let (ma, mb, mc) = (to_mask(a), to_mask(b), to_mask(c));
                if ma & mb != 0 || mb & mc != 0 || mc & ma != 0 || ma | mb | mc != full {
                    return Err(CutError::WitnessShape);
                }
                three_cut_value(self.kind, g, ma, mb, full)
            }
            _ => return Err(CutError::WitnessShape),
        };
        value.ok_or(CutError::InfeasibleWitness)
    }

    /// The equivalent continuous objective at `x`, oriented so its optimum
    /// over the feasible vectors equals the discrete optimum.
    pub fn continuous_objective(&self, x: &[f64]) -> Result<f64, ObjectiveError> {
        let g = &*self.graph;
        let kind = self.kind;
        let name = || kind.cli_name().to_string();
        match kind {
            CutKind::Cheeger => {
                if x.is_empty() || x.iter().all(|&v| v == x[0]) {
                    return Err(ObjectiveError::ConstantVector { kind: name() });
                }
            }
            _ => {
                if x.iter().all(|&v| v == 0.0) {
                    return Err(ObjectiveError::ZeroVector { kind: name() });
                }
            }
        }
        let ratio = |num: f64, den: f64| {
            if den <= 0.0 {
                Err(ObjectiveError::ZeroDenominator { kind: name() })
            } else {
                Ok(num / den)
            }
        };
        match kind {
            CutKind::DualCheeger => {
                let den = dnorm1(g, x);
                ratio(iplus(g, x), den).map(|r| 1.0 - r)
            }
            CutKind::Max3Cut => {
                ratio(tv(g, x) + ihat(g, x), g.total_volume() * sup_norm(x))
            }
            CutKind::RatioMax3CutI => {
                let den = dnorm1(g, x);
                ratio(den - iplus(g, x) + 2.0 * ihat(g, x), den)
            }
            CutKind::RatioMax3CutII => {
                let abs_x: Vec<f64> = x.iter().map(|v| v.abs()).collect();
                let den = g.total_volume() * sup_norm(x) - median_dev(g, &abs_x).value;
                ratio(2.0 * tv(g, x) - dnorm1(g, x) + iplus(g, x), den)
            }
            CutKind::MaxCut => ratio(tv(g, x), g.total_volume() * sup_norm(x)),
            CutKind::Cheeger => ratio(tv(g, x), median_dev(g, x).value),
            CutKind::AntiCheeger => {
                let den = 2.0 * g.total_volume() * sup_norm(x) - median_dev(g, x).value;
                ratio(tv(g, x), den)
            }
        }
    }

    /// The set-pair ratio form whose optimum over feasible pairs equals the
    /// discrete optimum.
    pub fn pair_ratio_problem(&self) -> RatioProblem {
        pair_ratio_problem(self.kind, &self.graph)
    }
}

/// Build the numerator/denominator set-pair functions (with closed-form
/// extensions) for a problem kind over a fixed graph.
pub fn pair_ratio_problem(kind: CutKind, graph: &Arc<Graph>) -> RatioProblem {
    let name = kind.cli_name();
    let sense = kind.sense();
    let g = Arc::clone(graph);

    // 2·(F1 - F2): numerator shared by the max 3-cut family.
    let three_cut_num = {
        let g = Arc::clone(graph);
        move |p: &SetPair| {
            let f1 = g.boundary_weight(p.a()) + g.boundary_weight(p.b());
            let f2 = g.cross_weight(p.a(), p.b()).expect("pair components are disjoint");
            2.0 * (f1 - f2)
        }
    };
    let three_cut_num_ext = {
        let g = Arc::clone(graph);
        move |x: &[f64]| tv(&g, x) + ihat(&g, x)
    };

    match kind {
        CutKind::MaxCut => {
            let num = table_function(&g, TableRow::F1);
            let den = table_function(&g, TableRow::G1);
            let (ge, gn) = (Arc::clone(&g), Arc::clone(&g));
            RatioProblem::new(name, Arc::new(num), Arc::new(den), sense, Feasibility::AllNonzero)
                .with_extensions(
                    move |x| tv(&gn, x),
                    move |x| ge.total_volume() * sup_norm(x),
                )
        }
        CutKind::DualCheeger => {
            let gn = Arc::clone(&g);
            let num = move |p: &SetPair| {
                2.0 * gn.cross_weight(p.a(), p.b()).expect("pair components are disjoint")
            };
            let den = table_function(&g, TableRow::G2);
            let (ge, gd) = (Arc::clone(&g), Arc::clone(&g));
            RatioProblem::new(name, Arc::new(num), Arc::new(den), sense, Feasibility::AllNonzero)
                .with_extensions(
                    move |x| dnorm1(&ge, x) - iplus(&ge, x),
                    move |x| dnorm1(&gd, x),
                )
        }
        CutKind::Max3Cut => {
            let den = table_function(&g, TableRow::G1);
            let ge = Arc::clone(&g);
            RatioProblem::new(
                name,
                Arc::new(three_cut_num),
                Arc::new(den),
                sense,
                Feasibility::AllNonzero,
            )
            .with_extensions(three_cut_num_ext, move |x| ge.total_volume() * sup_norm(x))
        }
        CutKind::RatioMax3CutI => {
            let den = table_function(&g, TableRow::G2);
            let ge = Arc::clone(&g);
            RatioProblem::new(
                name,
                Arc::new(three_cut_num),
                Arc::new(den),
                sense,
                Feasibility::AllNonzero,
            )
            .with_extensions(three_cut_num_ext, move |x| dnorm1(&ge, x))
        }
        CutKind::RatioMax3CutII => {
            let gd = Arc::clone(&g);
            let den = move |p: &SetPair| {
                let ab = p.a().union(p.b());
                gd.volume(&ab).max(gd.volume(&ab.complement()))
            };
            let ge = Arc::clone(&g);
            RatioProblem::new(
                name,
                Arc::new(three_cut_num),
                Arc::new(den),
                sense,
                Feasibility::AllNonzero,
            )
            .with_extensions(three_cut_num_ext, move |x| {
                let abs_x: Vec<f64> = x.iter().map(|v| v.abs()).collect();
                ge.total_volume() * sup_norm(x) - median_dev(&ge, &abs_x).value
            })
        }
        CutKind::Cheeger => {
            let num = table_function(&g, TableRow::F1);
            let den = table_function(&g, TableRow::G3);
            let (gn, ge) = (Arc::clone(&g), Arc::clone(&g));
            RatioProblem::new(name, Arc::new(num), Arc::new(den), sense, Feasibility::Nonconstant)
                .with_extensions(move |x| tv(&gn, x), move |x| median_dev(&ge, x).value)
                .with_projection_weights(graph.degrees().to_vec())
        }
        CutKind::AntiCheeger => {
            let num = table_function(&g, TableRow::F1);
            let g3 = table_function(&g, TableRow::G3);
            let gd = Arc::clone(&g);
            let den = move |p: &SetPair| 2.0 * gd.total_volume() - g3.evaluate(p);
            let (gn, ge) = (Arc::clone(&g), Arc::clone(&g));
            RatioProblem::new(name, Arc::new(num), Arc::new(den), sense, Feasibility::AllNonzero)
                .with_extensions(
                    move |x| tv(&gn, x),
                    move |x| 2.0 * ge.total_volume() * sup_norm(x) - median_dev(&ge, x).value,
                )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setpair::{enumerate_setpairs, indicator};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn k3() -> Arc<Graph> {
        Arc::new(Graph::parse_edge_list_str("3 3\n1 2 1\n2 3 1\n1 3 1").unwrap())
    }

    fn c4() -> Arc<Graph> {
        Arc::new(Graph::parse_edge_list_str("4 4\n1 2 1\n2 3 1\n3 4 1\n4 1 1").unwrap())
    }

    fn p2() -> Arc<Graph> {
        Arc::new(Graph::parse_edge_list_str("2 1\n1 2 1").unwrap())
    }

    /// Connected-ish random graph with weights in (0, 1] and no isolated
    /// vertices (every vertex sits on a random spanning cycle).
    pub(crate) fn seeded_graph(seed: u64, n: usize) -> Arc<Graph> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges: Vec<(usize, usize, f64)> = Vec::new();
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            order.swap(i, rng.random_range(0..=i));
        }
        for i in 0..n {
            let (u, v) = (order[i], order[(i + 1) % n]);
            if u != v && !edges.iter().any(|&(a, b, _)| (a, b) == (u.min(v), u.max(v))) {
                edges.push((u.min(v), u.max(v), rng.random_range(0.0f64..1.0).max(1e-3)));
            }
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if !edges.iter().any(|&(a, b, _)| (a, b) == (u, v)) && rng.random::<f64>() < 0.4 {
                    edges.push((u, v, rng.random_range(0.0f64..1.0).max(1e-3)));
                }
            }
        }
        Arc::new(Graph::from_edges(n, edges).unwrap())
    }

    #[test]
    fn named_values_on_k3() {
        let g = k3();
        let check = |kind: CutKind, expected: f64| {
            let r = CutProblem::new(kind, Arc::clone(&g)).discrete_optimum().unwrap();
            assert!((r.value - expected).abs() <= 1e-12, "{kind}: {} vs {expected}", r.value);
            r
        };
        check(CutKind::MaxCut, 2.0 / 3.0);
        check(CutKind::DualCheeger, 2.0 / 3.0);
        check(CutKind::Max3Cut, 1.0);
        check(CutKind::Cheeger, 1.0);
        check(CutKind::AntiCheeger, 0.5);
        check(CutKind::RatioMax3CutII, 1.5);
        // The feasible family allows empty parts: ({1}, ∅, {2,3}) scores
        // 2·(w12+w13)/vol({1}) = 2, and the continuous objective reaches the
        // same value at the indicator of ({1}, ∅).
        let r = check(CutKind::RatioMax3CutI, 2.0);
        let p = CutProblem::new(CutKind::RatioMax3CutI, g);
        assert_eq!(p.continuous_objective(&[1.0, 0.0, 0.0]).unwrap(), 2.0);
        assert!((p.discrete_value(&r.witness).unwrap() - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn maxcut_witness_is_a_two_one_split() {
        let g = k3();
        let r = CutProblem::new(CutKind::MaxCut, g).discrete_optimum().unwrap();
        let Witness::Set(s) = &r.witness else { panic!("expected a set witness") };
        assert!(s.len() == 1 || s.len() == 2);
    }

    #[test]
    fn dual_cheeger_on_bipartite_cycle_is_one() {
        let g = c4();
        let r = CutProblem::new(CutKind::DualCheeger, g).discrete_optimum().unwrap();
        assert_eq!(r.value, 1.0);
        let Witness::Pair(p) = &r.witness else { panic!("expected a pair witness") };
        // the bipartition
        assert_eq!(p.a().len() + p.b().len(), 4);
        assert_eq!(r.evaluations as usize, 3usize.pow(4) - 1 /* (∅,∅) excluded */);
    }

    #[test]
    fn witness_value_round_trips_exactly() {
        for seed in 0..5u64 {
            let g = seeded_graph(seed, 6);
            for kind in CutKind::ALL {
                let p = CutProblem::new(kind, Arc::clone(&g));
                let r = p.discrete_optimum().unwrap();
                assert_eq!(p.discrete_value(&r.witness).unwrap(), r.value, "{kind}");
            }
        }
    }

    #[test]
    fn continuous_objective_worked_examples() {
        let g = k3();
        let x = [1.0, 1.0, -1.0];
        let dc = CutProblem::new(CutKind::DualCheeger, Arc::clone(&g));
        assert!((dc.continuous_objective(&x).unwrap() - 2.0 / 3.0).abs() <= 1e-12);
        let mc = CutProblem::new(CutKind::MaxCut, Arc::clone(&g));
        assert!((mc.continuous_objective(&x).unwrap() - 2.0 / 3.0).abs() <= 1e-12);
        let ac = CutProblem::new(CutKind::AntiCheeger, Arc::clone(&g));
        assert!((ac.continuous_objective(&x).unwrap() - 0.5).abs() <= 1e-12);
        let m3 = CutProblem::new(CutKind::Max3Cut, Arc::clone(&g));
        let y = indicator(&SetPair::of(3, [0], [1]), 3);
        assert!((m3.continuous_objective(&y).unwrap() - 1.0).abs() <= 1e-12);

        let ch = CutProblem::new(CutKind::Cheeger, p2());
        assert!((ch.continuous_objective(&[1.0, -1.0]).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn continuous_objective_exclusion_errors() {
        let g = k3();
        let ch = CutProblem::new(CutKind::Cheeger, Arc::clone(&g));
        assert!(matches!(
            ch.continuous_objective(&[0.4, 0.4, 0.4]),
            Err(ObjectiveError::ConstantVector { .. })
        ));
        let mc = CutProblem::new(CutKind::MaxCut, g);
        assert!(matches!(
            mc.continuous_objective(&[0.0, 0.0, 0.0]),
            Err(ObjectiveError::ZeroVector { .. })
        ));
    }

    #[test]
    fn indicator_sweep_attains_oracle_and_random_never_beats() {
        let mut rng = ChaCha8Rng::seed_from_u64(314);
        for seed in 0..4u64 {
            let n = 5 + (seed as usize % 2);
            let g = seeded_graph(100 + seed, n);
            for kind in CutKind::ALL {
                let problem = CutProblem::new(kind, Arc::clone(&g));
                let oracle = problem.discrete_optimum().unwrap().value;
                let sense = kind.sense();
                let mut best: Option<f64> = None;
                for p in enumerate_setpairs(n).unwrap() {
                    let x = indicator(&p, n);
                    if let Ok(v) = problem.continuous_objective(&x) {
                        best = Some(match best {
                            None => v,
                            Some(b) => {
                                if sense.strictly_better(v, b) {
                                    v
                                } else {
                                    b
                                }
                            }
                        });
                    }
                }
                let best = best.expect("some indicator is feasible");
                assert!(
                    (best - oracle).abs() <= 1e-9,
                    "{kind}: indicator sweep {best} vs oracle {oracle}"
                );
                for _ in 0..500 {
                    let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
                    if let Ok(v) = problem.continuous_objective(&x) {
                        match sense {
                            Sense::Max => assert!(v <= oracle + 1e-9, "{kind}: {v} beats {oracle}"),
                            Sense::Min => assert!(v >= oracle - 1e-9, "{kind}: {v} beats {oracle}"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pair_ratio_optimum_matches_oracle() {
        for seed in 0..4u64 {
            let g = seeded_graph(40 + seed, 5);
            for kind in CutKind::ALL {
                let problem = CutProblem::new(kind, Arc::clone(&g));
                let oracle = problem.discrete_optimum().unwrap().value;
                let ratio = problem.pair_ratio_problem();
                let sense = kind.sense();
                let mut best: Option<f64> = None;
                for p in enumerate_setpairs(5).unwrap() {
                    if let Some(v) = ratio.discrete_ratio(&p) {
                        best = Some(match best {
                            None => v,
                            Some(b) => {
                                if sense.strictly_better(v, b) {
                                    v
                                } else {
                                    b
                                }
                            }
                        });
                    }
                }
                let best = best.unwrap();
                assert!(
                    (best - oracle).abs() <= 1e-9,
                    "{kind}: pair ratio optimum {best} vs oracle {oracle}"
                );
            }
        }
    }

    #[test]
    fn symmetric_two_cut_lemma() {
        // For symmetric f, g: opt over subsets of f/g equals opt over pairs
        // of (f(A)+f(B))/(g(A)+g(B)).
        let g = seeded_graph(77, 6);
        let n = 6usize;
        let subsets = 1u64 << n;

        struct Case {
            kind: CutKind,
            f: Box<dyn Fn(&VertexSet) -> f64>,
            gfun: Box<dyn Fn(&VertexSet) -> f64>,
            feasible: Box<dyn Fn(&VertexSet) -> bool>,
        }
        let vol = g.total_volume();
        let cases = vec![
            Case {
                kind: CutKind::MaxCut,
                f: Box::new({
                    let g = Arc::clone(&g);
                    move |s: &VertexSet| g.boundary_weight(s)
                }),
                gfun: Box::new(move |_s: &VertexSet| 0.5 * vol),
                feasible: Box::new(|_s| true),
            },
            Case {
                kind: CutKind::Cheeger,
                f: Box::new({
                    let g = Arc::clone(&g);
                    move |s: &VertexSet| g.boundary_weight(s)
                }),
                gfun: Box::new({
                    let g = Arc::clone(&g);
                    move |s: &VertexSet| g.volume(s).min(g.volume(&s.complement()))
                }),
                feasible: Box::new(move |s: &VertexSet| s.len() != 0 && s.len() != n),
            },
            Case {
                kind: CutKind::AntiCheeger,
                f: Box::new({
                    let g = Arc::clone(&g);
                    move |s: &VertexSet| g.boundary_weight(s)
                }),
                gfun: Box::new({
                    let g = Arc::clone(&g);
                    move |s: &VertexSet| g.volume(s).max(g.volume(&s.complement()))
                }),
                feasible: Box::new(|_s| true),
            },
        ];

        for case in cases {
            let sense = case.kind.sense();
            let mut subset_best: Option<f64> = None;
            for mask in 0..subsets {
                let s = VertexSet::from_mask(n, mask);
                if !(case.feasible)(&s) {
                    continue;
                }
                let den = (case.gfun)(&s);
                if den <= 0.0 {
                    continue;
                }
                let v = (case.f)(&s) / den;
                subset_best = Some(match subset_best {
                    None => v,
                    Some(b) => {
                        if sense.strictly_better(v, b) {
                            v
                        } else {
                            b
                        }
                    }
                });
            }
            let ratio = pair_ratio_problem(case.kind, &g);
            let mut pair_best: Option<f64> = None;
            for p in enumerate_setpairs(n).unwrap() {
                if let Some(v) = ratio.discrete_ratio(&p) {
                    pair_best = Some(match pair_best {
                        None => v,
                        Some(b) => {
                            if sense.strictly_better(v, b) {
                                v
                            } else {
                                b
                            }
                        }
                    });
                }
            }
            let (a, b) = (subset_best.unwrap(), pair_best.unwrap());
            assert!((a - b).abs() <= 1e-9, "{}: subsets {a} vs pairs {b}", case.kind);
        }
    }

    #[test]
    fn oracle_guards() {
        let path17 = Arc::new(
            Graph::from_edges(17, (0..16).map(|i| (i, i + 1, 1.0))).unwrap(),
        );
        assert!(matches!(
            CutProblem::new(CutKind::DualCheeger, Arc::clone(&path17)).discrete_optimum(),
            Err(CutError::GuardExceeded { .. })
        ));
        // 2-cut kinds still fine at n=17
        assert!(CutProblem::new(CutKind::MaxCut, path17).discrete_optimum().is_ok());
        let path25 = Arc::new(
            Graph::from_edges(25, (0..24).map(|i| (i, i + 1, 1.0))).unwrap(),
        );
        assert!(matches!(
            CutProblem::new(CutKind::MaxCut, path25).discrete_optimum(),
            Err(CutError::GuardExceeded { .. })
        ));
    }

    #[test]
    fn zero_volume_is_an_error() {
        let g = Arc::new(Graph::parse_edge_list_str("3 0").unwrap());
        for kind in CutKind::ALL {
            assert_eq!(
                CutProblem::new(kind, Arc::clone(&g)).discrete_optimum().unwrap_err(),
                CutError::ZeroVolume,
                "{kind}"
            );
        }
    }

    #[test]
    fn oracle_is_thread_count_invariant() {
        let g = seeded_graph(9, 7);
        let run = || {
            CutKind::ALL
                .into_iter()
                .map(|kind| {
                    let r = CutProblem::new(kind, Arc::clone(&g)).discrete_optimum().unwrap();
                    (r.value, format!("{:?}", r.witness), r.evaluations)
                })
                .collect::<Vec<_>>()
        };
        let pool1 = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let pool8 = rayon::ThreadPoolBuilder::new().num_threads(8).build().unwrap();
        assert_eq!(pool1.install(run), pool8.install(run));
    }

    #[test]
    fn ratio_max3cut_i_one_minus_relation() {
        // The reported objective r satisfies 1 - r = (I⁺ - 2Î)/‖x‖ pointwise.
        let g = k3();
        let problem = CutProblem::new(CutKind::RatioMax3CutI, Arc::clone(&g));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let x: Vec<f64> = (0..3).map(|_| rng.random_range(-1.0..1.0)).collect();
            let Ok(r) = problem.continuous_objective(&x) else { continue };
            let den = dnorm1(&g, &x);
            let min_form = (iplus(&g, &x) - 2.0 * ihat(&g, &x)) / den;
            assert!((1.0 - r - min_form).abs() <= 1e-12);
        }
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in CutKind::ALL {
            assert_eq!(kind.cli_name().parse::<CutKind>().unwrap(), kind);
        }
        assert!("bogus".parse::<CutKind>().is_err());
    }
}
