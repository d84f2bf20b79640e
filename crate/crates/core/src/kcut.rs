//! Ternary encoding of the k-cut problem into a set-pair problem on `[nl]`.
//!
//! A k-partition is carried by `l` blocks of signed vectors (`3^l > k`): at
//! threshold `t`, block `i` contributes trit 1 where `x_j^{(i)} > t`, trit 2
//! where `-x_j^{(i)} > t`, and 0 otherwise, so each vertex spells a base-3
//! code selecting its part. Codes `3^l - k .. 3^l` carry the k parts; the
//! numerator `F` sums their boundaries and the denominator `G` their
//! volumes. Both extensions are computed two ways — the exact piecewise
//! integral (ground truth) and the threshold closed form — and agree to
//! 1e-9.

use std::io::BufRead;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cuts::{CutError, CutResult, Sense, Witness};
use crate::graph::{Graph, VertexSet};

/// Enumeration guard for [`kcut_discrete`].
pub const KCUT_GUARD: u64 = 10_000_000;

#[derive(Debug, Error, PartialEq)]
pub enum KcutError {
    #[error("k={k} out of range for l={l} blocks (need 2 <= k < 3^l)")]
    BadK { k: usize, l: usize },
    #[error("block vector is {got} blocks of length {got_n}, expected n={n}")]
    DimensionMismatch { got: usize, got_n: usize, n: usize },
    #[error("partition has {got} parts, more than k={k}")]
    TooManyParts { got: usize, k: usize },
    #[error("parts overlap at vertex {0}")]
    OverlappingParts(usize),
    #[error("vertex {0} is not covered by any part")]
    IncompleteCover(usize),
    #[error("x lies in the excluded set K (every vertex threshold is zero)")]
    ExcludedSet,
    #[error("denominator G^L vanishes at this vector")]
    ZeroDenominator,
    #[error("k^n = {total} exceeds the enumeration guard {KCUT_GUARD}")]
    GuardExceeded { total: u64 },
    #[error("graph has zero volume")]
    ZeroVolume,
    #[error("line {0}: malformed block line")]
    MalformedLine(usize),
    #[error("non-finite entry in block {0}")]
    NonFinite(usize),
}

/// `l` real vectors of dimension `n`, viewed as one vector in `R^{nl}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockVector {
    n: usize,
    blocks: Vec<Vec<f64>>,
}

impl BlockVector {
    pub fn new(blocks: Vec<Vec<f64>>) -> Result<Self, KcutError> {
        assert!(!blocks.is_empty(), "block vector needs at least one block");
        let n = blocks[0].len();
        for (i, b) in blocks.iter().enumerate() {
            if b.len() != n {
                return Err(KcutError::DimensionMismatch { got: i, got_n: b.len(), n });
            }
            if b.iter().any(|v| !v.is_finite()) {
                return Err(KcutError::NonFinite(i));
            }
        }
        Ok(BlockVector { n, blocks })
    }

    pub fn zeros(l: usize, n: usize) -> Self {
        BlockVector { n, blocks: vec![vec![0.0; n]; l] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, i: usize) -> &[f64] {
        &self.blocks[i]
    }

    pub fn blocks(&self) -> &[Vec<f64>] {
        &self.blocks
    }

    pub fn sup_norm(&self) -> f64 {
        self.blocks.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Text format: `l` lines of `n` whitespace-separated decimals.
    pub fn parse<R: BufRead>(reader: R) -> Result<Self, KcutError> {
        let mut blocks = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line.map_err(|_| KcutError::MalformedLine(idx + 1))?;
            let content = line.trim();
            if content.is_empty() {
                continue;
            }
            let row: Result<Vec<f64>, _> =
                content.split_whitespace().map(|f| f.parse::<f64>()).collect();
            blocks.push(row.map_err(|_| KcutError::MalformedLine(idx + 1))?);
        }
        if blocks.is_empty() {
            return Err(KcutError::MalformedLine(0));
        }
        BlockVector::new(blocks)
    }

    pub fn parse_str(text: &str) -> Result<Self, KcutError> {
        Self::parse(text.as_bytes())
    }

    pub fn to_text(&self) -> String {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
            + "\n"
    }
}

/// A base-3 code with `l` trits; trit `i` belongs to block `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TernaryCode {
    value: u64,
    l: usize,
}

impl TernaryCode {
    pub fn new(value: u64, l: usize) -> Self {
        assert!(value < 3u64.pow(l as u32), "code out of range");
        TernaryCode { value, l }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// Trits from block 1 up (least significant first).
    pub fn digits(&self) -> Vec<u8> {
        let mut v = self.value;
        (0..self.l)
            .map(|_| {
                let d = (v % 3) as u8;
                v /= 3;
                d
            })
            .collect()
    }
}

/// Pairwise-disjoint parts covering the whole vertex set (parts may be
/// empty).
#[derive(Clone, Debug, PartialEq)]
pub struct KPartition {
    n: usize,
    parts: Vec<VertexSet>,
}

impl KPartition {
    pub fn new(n: usize, parts: Vec<VertexSet>) -> Result<Self, KcutError> {
        let mut assignment = vec![usize::MAX; n];
        for (m, part) in parts.iter().enumerate() {
            assert_eq!(part.ground_size(), n, "part over wrong ground set");
            for i in part.iter() {
                if assignment[i] != usize::MAX {
                    return Err(KcutError::OverlappingParts(i + 1));
                }
                assignment[i] = m;
            }
        }
        if let Some(i) = assignment.iter().position(|&m| m == usize::MAX) {
            return Err(KcutError::IncompleteCover(i + 1));
        }
        Ok(KPartition { n, parts })
    }

    pub fn from_assignment(n: usize, k: usize, assignment: &[usize]) -> Self {
        assert_eq!(assignment.len(), n);
        let parts = (0..k)
            .map(|m| VertexSet::from_indices(n, (0..n).filter(|&i| assignment[i] == m)))
            .collect();
        KPartition { n, parts }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn assignment(&self) -> Vec<usize> {
        let mut a = vec![0; self.n];
        for (m, part) in self.parts.iter().enumerate() {
            for i in part.iter() {
                a[i] = m;
            }
        }
        a
    }
}

impl Serialize for KPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("KPartition", 1)?;
        st.serialize_field("parts", &self.parts)?;
        st.end()
    }
}

/// Smallest `l` with `3^l > k`.
pub fn min_blocks(k: usize) -> usize {
    let mut l = 1;
    let mut pow = 3usize;
    while pow <= k {
        l += 1;
        pow *= 3;
    }
    l
}

fn check_k(k: usize, l: usize) -> Result<u64, KcutError> {
    let pow = 3u64.checked_pow(l as u32).ok_or(KcutError::BadK { k, l })?;
    if k < 2 || (k as u64) >= pow {
        return Err(KcutError::BadK { k, l });
    }
    Ok(pow)
}

fn vertex_code(x: &BlockVector, j: usize, t: f64) -> u64 {
    let mut code = 0u64;
    let mut base = 1u64;
    for block in &x.blocks {
        let v = block[j];
        if v > t {
            code += base;
        } else if -v > t {
            code += 2 * base;
        }
        base *= 3;
    }
    code
}

/// Assign every vertex its threshold code at level `t`; entry `c` of the
/// result is the (possibly empty) part `A_c`.
pub fn parts_at_threshold(x: &BlockVector, t: f64) -> Vec<VertexSet> {
    assert!(t >= 0.0, "threshold must be nonnegative");
    let total = 3usize.pow(x.l() as u32);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); total];
    for j in 0..x.n {
        members[vertex_code(x, j, t) as usize].push(j);
    }
    members.into_iter().map(|m| VertexSet::from_indices(x.n, m)).collect()
}

/// `z_j`: the first threshold at which vertex `j`'s code drops below
/// `3^l - k`. The code is non-increasing and right-continuous in `t`, so
/// scanning the magnitudes `|x_j^{(i)}|` in ascending order is exact.
pub fn vertex_thresholds(x: &BlockVector, k: usize) -> Result<Vec<f64>, KcutError> {
    let pow = check_k(k, x.l())?;
    let lim = pow - k as u64;
    let mut z = Vec::with_capacity(x.n);
    for j in 0..x.n {
        let mut candidates: Vec<f64> = vec![0.0];
        candidates.extend(x.blocks.iter().map(|b| b[j].abs()));
        candidates.sort_by(|a, b| a.partial_cmp(b).expect("finite entries"));
        candidates.dedup();
        let zj = candidates
            .into_iter()
            .find(|&t| vertex_code(x, j, t) < lim)
            .expect("code reaches 0 at the largest magnitude");
        z.push(zj);
    }
    Ok(z)
}

/// Membership in the excluded set `K = {x : z_j = 0 for all j}`.
pub fn in_excluded_set(x: &BlockVector, k: usize) -> Result<bool, KcutError> {
    Ok(vertex_thresholds(x, k)?.iter().all(|&z| z == 0.0))
}

fn check_dims(g: &Graph, x: &BlockVector) -> Result<(), KcutError> {
    if x.n != g.n() {
        return Err(KcutError::DimensionMismatch { got: x.l(), got_n: x.n, n: g.n() });
    }
    Ok(())
}

/// Exact piecewise integrals of `(F, G)` over the threshold levels.
fn integral_forms(g: &Graph, k: usize, x: &BlockVector) -> Result<(f64, f64), KcutError> {
    check_dims(g, x)?;
    let pow = check_k(k, x.l())?;
    let lim = pow - k as u64;

    let mut breakpoints: Vec<f64> = vec![0.0];
    breakpoints.extend(x.blocks.iter().flatten().map(|v| v.abs()));
    breakpoints.sort_by(|a, b| a.partial_cmp(b).expect("finite entries"));
    breakpoints.dedup();

    let (mut f_total, mut g_total) = (0.0, 0.0);
    let mut codes = vec![0u64; x.n];
    for w in breakpoints.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let width = hi - lo;
        if width <= 0.0 {
            continue;
        }
        let t = 0.5 * (lo + hi);
        for (j, c) in codes.iter_mut().enumerate() {
            *c = vertex_code(x, j, t);
        }
        let mut f_here = 0.0;
        for e in g.edges() {
            let (cu, cv) = (codes[e.u], codes[e.v]);
            if cu >= lim && cu != cv {
                f_here += e.w;
            }
            if cv >= lim && cv != cu {
                f_here += e.w;
            }
        }
        let mut g_here = 0.0;
        for (j, &c) in codes.iter().enumerate() {
            if c >= lim {
                g_here += g.degree(j);
            }
        }
        f_total += width * f_here;
        g_total += width * g_here;
    }
    Ok((f_total, g_total))
}

/// `F^L` by exact piecewise integration (the ground-truth definition).
pub fn fl_integral(g: &Graph, k: usize, x: &BlockVector) -> Result<f64, KcutError> {
    integral_forms(g, k, x).map(|(f, _)| f)
}

/// `G^L` by exact piecewise integration.
pub fn gl_integral(g: &Graph, k: usize, x: &BlockVector) -> Result<f64, KcutError> {
    integral_forms(g, k, x).map(|(_, gl)| gl)
}

/// Length of the threshold interval on which both endpoints of an edge sit
/// in part `code`: `max(0, U - L)` where `U` caps the positive digits and
/// `L` floors the zero digits.
fn edge_code_interval(x: &BlockVector, u: usize, v: usize, code: u64) -> f64 {
    let mut upper = f64::INFINITY;
    let mut lower = 0.0f64;
    let mut c = code;
    for block in &x.blocks {
        let digit = c % 3;
        c /= 3;
        match digit {
            1 => upper = upper.min(block[u]).min(block[v]),
            2 => upper = upper.min(-block[u]).min(-block[v]),
            _ => lower = lower.max(block[u].abs()).max(block[v].abs()),
        }
    }
    (upper - lower).max(0.0)
}

/// Closed form `F^L = Σ d_j z_j - 2 Σ w_ij Σ_code z_ij^code`.
pub fn fl_closed(g: &Graph, k: usize, x: &BlockVector) -> Result<f64, KcutError> {
    check_dims(g, x)?;
    let pow = check_k(k, x.l())?;
    let lim = pow - k as u64;
    let z = vertex_thresholds(x, k)?;
    let degree_part: f64 = z.iter().zip(g.degrees()).map(|(zj, d)| d * zj).sum();
    let mut cross = 0.0;
    for e in g.edges() {
        let mut s = 0.0;
        for code in lim..pow {
            s += edge_code_interval(x, e.u, e.v, code);
        }
        cross += e.w * s;
    }
    Ok(degree_part - 2.0 * cross)
}

/// Closed form `G^L = Σ d_j z_j`.
pub fn gl_closed(g: &Graph, k: usize, x: &BlockVector) -> Result<f64, KcutError> {
    check_dims(g, x)?;
    check_k(k, x.l())?;
    let z = vertex_thresholds(x, k)?;
    Ok(z.iter().zip(g.degrees()).map(|(zj, d)| d * zj).sum())
}

/// `F^L` (closed form; agrees with [`fl_integral`] to 1e-9).
pub fn kcut_fl(g: &Graph, k: usize, x: &BlockVector) -> Result<f64, KcutError> {
    fl_closed(g, k, x)
}

/// `G^L` (closed form; agrees with [`gl_integral`] to 1e-9).
pub fn kcut_gl(g: &Graph, k: usize, x: &BlockVector) -> Result<f64, KcutError> {
    gl_closed(g, k, x)
}

/// `F^L / G^L`, defined off the excluded set `K`.
pub fn kcut_ratio(g: &Graph, k: usize, x: &BlockVector) -> Result<f64, KcutError> {
    check_dims(g, x)?;
    check_k(k, x.l())?;
    let z = vertex_thresholds(x, k)?;
    if z.iter().all(|&v| v == 0.0) {
        return Err(KcutError::ExcludedSet);
    }
    let den: f64 = z.iter().zip(g.degrees()).map(|(zj, d)| d * zj).sum();
    if den <= 0.0 {
        return Err(KcutError::ZeroDenominator);
    }
    Ok(fl_closed(g, k, x)? / den)
}

/// Encode a partition with the default (minimal) block count.
pub fn encode_partition(p: &KPartition, k: usize) -> Result<BlockVector, KcutError> {
    encode_partition_blocks(p, k, min_blocks(k))
}

/// Encode part `m` (1-based) as code `3^l - k + m - 1`: trit 1 becomes +1,
/// trit 2 becomes -1, trit 0 becomes 0, in every block.
pub fn encode_partition_blocks(p: &KPartition, k: usize, l: usize) -> Result<BlockVector, KcutError> {
    let pow = check_k(k, l)?;
    if p.k() > k {
        return Err(KcutError::TooManyParts { got: p.k(), k });
    }
    let mut blocks = vec![vec![0.0; p.n()]; l];
    for (m, part) in p.parts().iter().enumerate() {
        let code = TernaryCode::new(pow - k as u64 + m as u64, l);
        let digits = code.digits();
        for j in part.iter() {
            for (i, digit) in digits.iter().enumerate() {
                blocks[i][j] = match digit {
                    1 => 1.0,
                    2 => -1.0,
                    _ => 0.0,
                };
            }
        }
    }
    BlockVector::new(blocks)
}

/// `Σ |∂A_m| / Σ vol(A_m)` at a partition, with the same arithmetic as the
/// enumeration oracle.
pub fn kcut_discrete_value(g: &Graph, p: &KPartition) -> Result<f64, KcutError> {
    if g.total_volume() == 0.0 {
        return Err(KcutError::ZeroVolume);
    }
    Ok(assignment_value(g, &p.assignment(), p.k()))
}

fn assignment_value(g: &Graph, assignment: &[usize], k: usize) -> f64 {
    let mut bnd = vec![0.0; k];
    for e in g.edges() {
        let (pu, pv) = (assignment[e.u], assignment[e.v]);
        if pu != pv {
            bnd[pu] += e.w;
            bnd[pv] += e.w;
        }
    }
    let mut vols = vec![0.0; k];
    for (i, &m) in assignment.iter().enumerate() {
        vols[m] += g.degree(i);
    }
    bnd.iter().sum::<f64>() / vols.iter().sum::<f64>()
}

/// Optimum of `Σ|∂A_i| / Σvol(A_i)` over all k^n part assignments (parts may
/// be empty), in the requested sense.
pub fn kcut_discrete(g: &Graph, k: usize, sense: Sense) -> Result<CutResult, CutError> {
    assert!(k >= 2, "k must be at least 2");
    let n = g.n();
    if g.total_volume() == 0.0 {
        return Err(CutError::ZeroVolume);
    }
    let total = (k as u64).checked_pow(n as u32).filter(|&t| t <= KCUT_GUARD).ok_or(
        CutError::GuardExceeded { kind: "kcut".into(), n, limit: KCUT_GUARD as usize },
    )?;

    let decode = |mut code: u64| -> Vec<usize> {
        let mut a = vec![0usize; n];
        for slot in a.iter_mut() {
            *slot = (code % k as u64) as usize;
            code /= k as u64;
        }
        a
    };
    // Partition order for ties: parts compared lexicographically in turn.
    let lex_less = |c1: u64, c2: u64| -> bool {
        use std::cmp::Ordering;
        let p1 = KPartition::from_assignment(n, k, &decode(c1));
        let p2 = KPartition::from_assignment(n, k, &decode(c2));
        for (a, b) in p1.parts().iter().zip(p2.parts()) {
            match a.lex_cmp(b) {
                Ordering::Less => return true,
                Ordering::Greater => return false,
                Ordering::Equal => {}
            }
        }
        false
    };

    let (best, evaluations) = (0..total)
        .into_par_iter()
        .fold(
            || (None::<(f64, u64)>, 0u64),
            |(mut best, mut count), code| {
                let value = assignment_value(g, &decode(code), k);
                count += 1;
                let replace = match best {
                    None => true,
                    Some((bv, bc)) => {
                        sense.strictly_better(value, bv) || (value == bv && lex_less(code, bc))
                    }
                };
                if replace {
                    best = Some((value, code));
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
    let witness = KPartition::from_assignment(n, k, &decode(code));
    Ok(CutResult { value, witness: Witness::Partition(witness), evaluations })
}
