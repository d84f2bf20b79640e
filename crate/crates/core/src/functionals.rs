//! Closed-form continuous functionals over graph vectors, the five discrete
//! objective rows they extend, and the degree-weighted median deviation.
//!
//! Naming follows the objective table used throughout the cut solvers:
//!
//! | row  | discrete `f(A,B)`                                | extension `f^L(x)`            |
//! |------|--------------------------------------------------|-------------------------------|
//! | `F1` | `|∂A| + |∂B|`                                    | `I(x) = Σ w_ij |x_i - x_j|`   |
//! | `F2` | `|E(A,B)|`                                       | `(‖x‖ - I⁺(x)) / 2`           |
//! | `G1` | `vol(V)`                                         | `vol(V) · ‖x‖_∞`              |
//! | `G2` | `vol(A) + vol(B)`                                | `‖x‖ = Σ d_i |x_i|`           |
//! | `G3` | `Σ_{X∈{A,B}} min(vol(X), vol(X^c))`              | `min_α ‖x - α·1‖`             |
//!
//! The `G3` extension acts on the raw vector; its `|x|`-variant shows up only
//! inside the second ratio max 3-cut denominator.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::graph::Graph;
use crate::lovasz::SetPairFunction;
use crate::setpair::SetPair;

/// `I(x) = Σ_{i<j} w_ij |x_i - x_j|`, the graph total variation.
pub fn tv(g: &Graph, x: &[f64]) -> f64 {
    assert_eq!(x.len(), g.n(), "vector/graph dimension mismatch");
    g.edges().iter().map(|e| e.w * (x[e.u] - x[e.v]).abs()).sum()
}

/// `I⁺(x) = Σ_{i<j} w_ij |x_i + x_j|`.
pub fn iplus(g: &Graph, x: &[f64]) -> f64 {
    assert_eq!(x.len(), g.n(), "vector/graph dimension mismatch");
    g.edges().iter().map(|e| e.w * (x[e.u] + x[e.v]).abs()).sum()
}

/// `Î(x) = Σ_{i<j} w_ij ||x_i| - |x_j||`.
pub fn ihat(g: &Graph, x: &[f64]) -> f64 {
    assert_eq!(x.len(), g.n(), "vector/graph dimension mismatch");
    g.edges().iter().map(|e| e.w * (x[e.u].abs() - x[e.v].abs()).abs()).sum()
}

/// Degree-weighted 1-norm `‖x‖ = Σ d_i |x_i|`.
pub fn dnorm1(g: &Graph, x: &[f64]) -> f64 {
    assert_eq!(x.len(), g.n(), "vector/graph dimension mismatch");
    x.iter().zip(g.degrees()).map(|(v, d)| d * v.abs()).sum()
}

/// `‖x‖_∞`.
pub fn sup_norm(x: &[f64]) -> f64 {
    x.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MedianDev {
    /// `min_α Σ d_i |v_i - α|`.
    pub value: f64,
    /// A minimizing α: the degree-weighted median of the entries.
    pub minimizer: f64,
}

/// Degree-weighted median deviation, O(n log n).
///
/// The minimizer is the entry `v_{σ(k0)}` where the ascending degree prefix
/// first reaches half the total volume; ties in the sort are broken by
/// vertex index. A graph with zero volume yields `(0, 0)`.
pub fn median_dev(g: &Graph, v: &[f64]) -> MedianDev {
    assert_eq!(v.len(), g.n(), "vector/graph dimension mismatch");
    let vol = g.total_volume();
    if vol == 0.0 {
        return MedianDev { value: 0.0, minimizer: 0.0 };
    }
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&i, &j| v[i].partial_cmp(&v[j]).expect("finite entries").then(i.cmp(&j)));
    let half = 0.5 * vol;
    let mut prefix = 0.0;
    let mut minimizer = v[*order.last().expect("nonzero volume implies n > 0")];
    for &i in &order {
        prefix += g.degree(i);
        if prefix >= half {
            minimizer = v[i];
            break;
        }
    }
    let value = v.iter().zip(g.degrees()).map(|(x, d)| d * (x - minimizer).abs()).sum();
    MedianDev { value, minimizer }
}

/// The five objective rows with closed-form extensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableRow {
    F1,
    F2,
    G1,
    G2,
    G3,
}

impl TableRow {
    pub const ALL: [TableRow; 5] = [TableRow::F1, TableRow::F2, TableRow::G1, TableRow::G2, TableRow::G3];

    pub fn name(self) -> &'static str {
        match self {
            TableRow::F1 => "F1",
            TableRow::F2 => "F2",
            TableRow::G1 => "G1",
            TableRow::G2 => "G2",
            TableRow::G3 => "G3",
        }
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableRow {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "F1" | "f1" => Ok(TableRow::F1),
            "F2" | "f2" => Ok(TableRow::F2),
            "G1" | "g1" => Ok(TableRow::G1),
            "G2" | "g2" => Ok(TableRow::G2),
            "G3" | "g3" => Ok(TableRow::G3),
            other => Err(format!("unknown table row {other:?}")),
        }
    }
}

/// Discrete evaluator for one table row on a fixed graph.
#[derive(Clone)]
pub struct TablePairFn {
    graph: Arc<Graph>,
    row: TableRow,
}

impl TablePairFn {
    pub fn row(&self) -> TableRow {
        self.row
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }
}

impl SetPairFunction for TablePairFn {
    fn evaluate(&self, p: &SetPair) -> f64 {
        let g = &*self.graph;
        match self.row {
            TableRow::F1 => g.boundary_weight(p.a()) + g.boundary_weight(p.b()),
            TableRow::F2 => g
                .cross_weight(p.a(), p.b())
                .expect("set-pair components are disjoint"),
            TableRow::G1 => g.total_volume(),
            TableRow::G2 => g.volume(p.a()) + g.volume(p.b()),
            TableRow::G3 => {
                let half = |s: &crate::graph::VertexSet| {
                    g.volume(s).min(g.volume(&s.complement()))
                };
                half(p.a()) + half(p.b())
            }
        }
    }

    fn name(&self) -> &str {
        self.row.name()
    }

    fn symmetric_hint(&self) -> Option<bool> {
        Some(true) // every table row is invariant under (A,B) -> (B,A)
    }
}

/// Closed-form discrete evaluator for the named row.
pub fn table_function(graph: &Arc<Graph>, row: TableRow) -> TablePairFn {
    TablePairFn { graph: Arc::clone(graph), row }
}

/// Closed-form extension value for the named row; agrees with the generic
/// extension of [`table_function`] to 1e-12.
pub fn table_extension_closed(g: &Graph, row: TableRow, x: &[f64]) -> f64 {
    match row {
        TableRow::F1 => tv(g, x),
        TableRow::F2 => 0.5 * dnorm1(g, x) - 0.5 * iplus(g, x),
        TableRow::G1 => g.total_volume() * sup_norm(x),
        TableRow::G2 => dnorm1(g, x),
        TableRow::G3 => median_dev(g, x).value,
    }
}

/// Named continuous functionals exposed to the CLI `eval` command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Functional {
    I,
    Iplus,
    Ihat,
    DNorm1,
    SupNorm,
    MedianDev,
}

impl Functional {
    pub fn evaluate(self, g: &Graph, x: &[f64]) -> f64 {
        match self {
            Functional::I => tv(g, x),
            Functional::Iplus => iplus(g, x),
            Functional::Ihat => ihat(g, x),
            Functional::DNorm1 => dnorm1(g, x),
            Functional::SupNorm => sup_norm(x),
            Functional::MedianDev => median_dev(g, x).value,
        }
    }
}

impl FromStr for Functional {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "I" | "i" | "tv" => Ok(Functional::I),
            "Iplus" | "iplus" | "I+" => Ok(Functional::Iplus),
            "Ihat" | "ihat" => Ok(Functional::Ihat),
            "norm" | "dnorm1" => Ok(Functional::DNorm1),
            "sup-norm" | "sup" => Ok(Functional::SupNorm),
            "median-dev" => Ok(Functional::MedianDev),
            other => Err(format!("unknown functional {other:?}")),
        }
    }
}
