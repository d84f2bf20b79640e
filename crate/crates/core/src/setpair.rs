//! Disjoint set-pairs, indicator vectors, and the threshold chain machinery.
//!
//! A set-pair `(A, B)` is an ordered pair of disjoint vertex subsets; the
//! family of all such pairs over `n` vertices has size `3^n` and is indexed
//! by ternary codes (trit `i` is 0 when vertex `i` is in neither set, 1 when
//! in `A`, 2 when in `B`).

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::VertexSet;

/// Hard cap for exhaustive set-pair enumeration (3^16 ~ 43M).
pub const ENUMERATION_GUARD: usize = 16;

#[derive(Debug, Error, PartialEq)]
pub enum SetPairError {
    #[error("sets A and B overlap")]
    Overlap,
    #[error("inner set is not contained in outer set")]
    NotNested,
    #[error("entry {value} at position {index} is not in {{-1, 0, +1}}")]
    NonTernaryEntry { index: usize, value: f64 },
    #[error("n={0} exceeds the enumeration guard {ENUMERATION_GUARD}")]
    GuardExceeded(usize),
    #[error("non-finite entry at position {0}")]
    NonFinite(usize),
}

/// An ordered pair of disjoint vertex subsets.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SetPair {
    a: VertexSet,
    b: VertexSet,
}

impl SetPair {
    pub fn new(a: VertexSet, b: VertexSet) -> Result<Self, SetPairError> {
        assert_eq!(a.ground_size(), b.ground_size(), "set-pair over mismatched ground sets");
        if !a.is_disjoint(&b) {
            return Err(SetPairError::Overlap);
        }
        Ok(SetPair { a, b })
    }

    pub fn empty(n: usize) -> Self {
        SetPair { a: VertexSet::empty(n), b: VertexSet::empty(n) }
    }

    /// Build from 0-based member lists. Panics on overlap; intended for
    /// literal pairs in code and tests.
    pub fn of(n: usize, a: impl IntoIterator<Item = usize>, b: impl IntoIterator<Item = usize>) -> Self {
        Self::new(VertexSet::from_indices(n, a), VertexSet::from_indices(n, b))
            .expect("overlapping literal set-pair")
    }

    pub fn a(&self) -> &VertexSet {
        &self.a
    }

    pub fn b(&self) -> &VertexSet {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.a.ground_size()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty() && self.b.is_empty()
    }

    /// Both components empty, or `(∅,V)`, or `(V,∅)` — the pairs excluded by
    /// nonconstant-feasible problems.
    pub fn is_constant_indicator(&self) -> bool {
        let n = self.n();
        self.is_empty() || self.a.len() == n || self.b.len() == n
    }

    pub fn swap(&self) -> SetPair {
        SetPair { a: self.b.clone(), b: self.a.clone() }
    }

    /// Componentwise subset test.
    pub fn is_subpair_of(&self, other: &SetPair) -> bool {
        self.a.is_subset_of(&other.a) && self.b.is_subset_of(&other.b)
    }

    /// Lexicographic order: first component's member list, then the second's.
    pub fn lex_cmp(&self, other: &SetPair) -> std::cmp::Ordering {
        self.a.lex_cmp(&other.a).then_with(|| self.b.lex_cmp(&other.b))
    }

    /// Ternary code of the pair; requires `n <= 40` so the code fits in u64.
    pub fn code(&self) -> u64 {
        let n = self.n();
        assert!(n <= 40, "ternary code overflows u64 for n > 40");
        let mut code = 0u64;
        let mut base = 1u64;
        for i in 0..n {
            if self.a.contains(i) {
                code += base;
            } else if self.b.contains(i) {
                code += 2 * base;
            }
            base *= 3;
        }
        code
    }

    pub fn from_code(n: usize, mut code: u64) -> Self {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for i in 0..n {
            match code % 3 {
                1 => a.push(i),
                2 => b.push(i),
                _ => {}
            }
            code /= 3;
        }
        debug_assert_eq!(code, 0, "code has trits beyond n");
        SetPair::of(n, a, b)
    }
}

impl fmt::Display for SetPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_set = |s: &VertexSet| {
            s.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
        };
        write!(f, "A={{{}}};B={{{}}}", fmt_set(&self.a), fmt_set(&self.b))
    }
}

impl Serialize for SetPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SetPair", 2)?;
        st.serialize_field("a", &self.a)?;
        st.serialize_field("b", &self.b)?;
        st.end()
    }
}

/// A nested pair `inner ⊆ outer`, the alternative coordinates for set-pairs.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NestedPair {
    inner: VertexSet,
    outer: VertexSet,
}

impl NestedPair {
    pub fn new(inner: VertexSet, outer: VertexSet) -> Result<Self, SetPairError> {
        if !inner.is_subset_of(&outer) {
            return Err(SetPairError::NotNested);
        }
        Ok(NestedPair { inner, outer })
    }

    pub fn inner(&self) -> &VertexSet {
        &self.inner
    }

    pub fn outer(&self) -> &VertexSet {
        &self.outer
    }
}

/// `(A, B) -> (A, A ∪ B)`.
pub fn nested_from_setpair(p: &SetPair) -> NestedPair {
    NestedPair { inner: p.a().clone(), outer: p.a().union(p.b()) }
}

/// `(X_I, X_O) -> (X_I, X_O \ X_I)`, the inverse of [`nested_from_setpair`].
pub fn setpair_from_nested(q: &NestedPair) -> SetPair {
    SetPair { a: q.inner.clone(), b: q.outer.difference(&q.inner) }
}

/// Signed indicator vector: +1 on `A`, -1 on `B`, 0 elsewhere.
pub fn indicator(p: &SetPair, n: usize) -> Vec<f64> {
    assert_eq!(p.n(), n, "pair/dimension mismatch");
    let mut x = vec![0.0; n];
    for i in p.a().iter() {
        x[i] = 1.0;
    }
    for i in p.b().iter() {
        x[i] = -1.0;
    }
    x
}

/// Inverse of [`indicator`]; fails on any entry outside `{-1, 0, +1}`.
pub fn decode_indicator(x: &[f64]) -> Result<SetPair, SetPairError> {
    let n = x.len();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (i, &v) in x.iter().enumerate() {
        if v == 1.0 {
            a.push(i);
        } else if v == -1.0 {
            b.push(i);
        } else if v != 0.0 {
            return Err(SetPairError::NonTernaryEntry { index: i, value: v });
        }
    }
    Ok(SetPair::of(n, a, b))
}

/// All `3^n` disjoint pairs in ternary-counter order.
pub fn enumerate_setpairs(n: usize) -> Result<impl Iterator<Item = SetPair>, SetPairError> {
    if n > ENUMERATION_GUARD {
        return Err(SetPairError::GuardExceeded(n));
    }
    let total = 3u64.pow(n as u32);
    Ok((0..total).map(move |code| SetPair::from_code(n, code)))
}

/// The threshold chain of a vector: nested set-pairs with nonnegative gaps
/// that reconstruct the vector and whose gaps sum to its sup norm.
#[derive(Clone, Debug)]
pub struct ChainDecomposition {
    n: usize,
    pairs: Vec<SetPair>,
    gaps: Vec<f64>,
    sigma: Option<Vec<usize>>,
}

#[derive(Debug, Error, PartialEq)]
pub enum ChainError {
    #[error("pairs and gaps have different lengths")]
    LengthMismatch,
    #[error("gap {0} is negative or non-finite")]
    BadGap(usize),
    #[error("pair {0} is not contained in pair {1}")]
    NotNested(usize, usize),
    #[error("gap sum {sum} differs from sup norm {sup} of the reconstructed vector")]
    GapSumMismatch { sum: f64, sup: f64 },
}

impl ChainDecomposition {
    /// Assemble a chain by hand (no sort permutation attached); validated.
    pub fn from_links(n: usize, links: Vec<(SetPair, f64)>) -> Result<Self, ChainError> {
        let (pairs, gaps): (Vec<_>, Vec<_>) = links.into_iter().unzip();
        let chain = ChainDecomposition { n, pairs, gaps, sigma: None };
        chain.validate()?;
        Ok(chain)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Pairs from the outermost level down; `pairs()[i+1] ⊆ pairs()[i]`.
    pub fn pairs(&self) -> &[SetPair] {
        &self.pairs
    }

    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }

    /// The sort permutation of `{0, 1, ..., n}` (1-based vertex labels with
    /// the 0 sentinel), present only for threshold chains.
    pub fn sigma(&self) -> Option<&[usize]> {
        self.sigma.as_deref()
    }

    pub fn links(&self) -> impl Iterator<Item = (&SetPair, f64)> {
        self.pairs.iter().zip(self.gaps.iter().copied())
    }

    /// Links with strictly positive gap; after dropping zeros the chain is
    /// unique for a given vector regardless of sort tie-breaking.
    pub fn positive_links(&self) -> impl Iterator<Item = (&SetPair, f64)> {
        self.links().filter(|(_, g)| *g > 0.0)
    }

    /// `Σ λ_i 1_{A_i,B_i}`.
    pub fn reconstruct(&self) -> Vec<f64> {
        let mut x = vec![0.0; self.n];
        for (p, g) in self.links() {
            for i in p.a().iter() {
                x[i] += g;
            }
            for i in p.b().iter() {
                x[i] -= g;
            }
        }
        x
    }

    pub fn gap_sum(&self) -> f64 {
        self.gaps.iter().sum()
    }

    pub fn validate(&self) -> Result<(), ChainError> {
        if self.pairs.len() != self.gaps.len() {
            return Err(ChainError::LengthMismatch);
        }
        for (i, g) in self.gaps.iter().enumerate() {
            if !g.is_finite() || *g < 0.0 {
                return Err(ChainError::BadGap(i));
            }
        }
        for i in 1..self.pairs.len() {
            if !self.pairs[i].is_subpair_of(&self.pairs[i - 1]) {
                return Err(ChainError::NotNested(i, i - 1));
            }
        }
        let x = self.reconstruct();
        let sup = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let sum = self.gap_sum();
        if (sum - sup).abs() > 1e-12 * sup.max(1.0) {
            return Err(ChainError::GapSumMismatch { sum, sup });
        }
        Ok(())
    }
}

/// Threshold decomposition of `x`: coordinates sorted by `|x_i|` ascending
/// (ties by vertex index, with a zero sentinel in front), level `i` holding
/// the pair of strict super-level sets at threshold `|x_{σ(i)}|` and the gap
/// to the next magnitude.
pub fn threshold_pairs(x: &[f64]) -> Result<ChainDecomposition, SetPairError> {
    let n = x.len();
    for (i, v) in x.iter().enumerate() {
        if !v.is_finite() {
            return Err(SetPairError::NonFinite(i));
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| x[i].abs().partial_cmp(&x[j].abs()).unwrap().then(i.cmp(&j)));

    let mut sigma = Vec::with_capacity(n + 1);
    sigma.push(0);
    sigma.extend(order.iter().map(|&i| i + 1));

    let mut pairs = Vec::with_capacity(n);
    let mut gaps = Vec::with_capacity(n);
    let mut prev = 0.0; // |x_{σ(0)}| with the x_0 := 0 sentinel
    for &idx in &order {
        let t = prev;
        let a = VertexSet::from_indices(n, (0..n).filter(|&j| x[j] > t));
        let b = VertexSet::from_indices(n, (0..n).filter(|&j| -x[j] > t));
        pairs.push(SetPair { a, b });
        let next = x[idx].abs();
        gaps.push(next - prev);
        prev = next;
    }
    Ok(ChainDecomposition { n, pairs, gaps, sigma: Some(sigma) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    #[test]
    fn indicator_examples() {
        let p = SetPair::of(3, [0, 1], [2]);
        assert_eq!(indicator(&p, 3), vec![1.0, 1.0, -1.0]);
        assert_eq!(indicator(&SetPair::empty(2), 2), vec![0.0, 0.0]);
        let q = SetPair::of(3, [1], [0]);
        assert_eq!(indicator(&q, 3), vec![-1.0, 1.0, 0.0]);
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode_indicator(&[1.0, 1.0, -1.0]).unwrap(), SetPair::of(3, [0, 1], [2]));
        assert_eq!(
            decode_indicator(&[0.5, 0.0, 0.0]).unwrap_err(),
            SetPairError::NonTernaryEntry { index: 0, value: 0.5 }
        );
        assert_eq!(decode_indicator(&[0.0, 0.0]).unwrap(), SetPair::empty(2));
    }

    #[test]
    fn decode_inverts_indicator_exhaustively() {
        for p in enumerate_setpairs(3).unwrap() {
            assert_eq!(decode_indicator(&indicator(&p, 3)).unwrap(), p);
        }
    }

    #[test]
    fn enumerate_counts() {
        let one: Vec<SetPair> = enumerate_setpairs(1).unwrap().collect();
        assert_eq!(
            one,
            vec![SetPair::empty(1), SetPair::of(1, [0], []), SetPair::of(1, [], [0])]
        );
        assert_eq!(enumerate_setpairs(2).unwrap().count(), 9);
        let codes: HashSet<u64> = enumerate_setpairs(8).unwrap().map(|p| p.code()).collect();
        assert_eq!(codes.len(), 6561);
        assert!(enumerate_setpairs(17).is_err());
    }

    #[test]
    fn code_round_trip() {
        for p in enumerate_setpairs(4).unwrap() {
            assert_eq!(SetPair::from_code(4, p.code()), p);
        }
    }

    #[test]
    fn threshold_pairs_worked_example() {
        // x = (2, -1, 0): levels at thresholds 0, 0, 1.
        let chain = threshold_pairs(&[2.0, -1.0, 0.0]).unwrap();
        assert_eq!(chain.gaps(), &[0.0, 1.0, 1.0]);
        assert_eq!(chain.pairs()[0], SetPair::of(3, [0], [1]));
        assert_eq!(chain.pairs()[1], SetPair::of(3, [0], [1]));
        assert_eq!(chain.pairs()[2], SetPair::of(3, [0], []));
        assert_eq!(chain.reconstruct(), vec![2.0, -1.0, 0.0]);
        assert_eq!(chain.sigma(), Some(&[0, 3, 2, 1][..]));
        chain.validate().unwrap();
    }

    #[test]
    fn threshold_pairs_zero_vector() {
        let chain = threshold_pairs(&[0.0, 0.0, 0.0]).unwrap();
        assert!(chain.gaps().iter().all(|&g| g == 0.0));
        assert_eq!(chain.positive_links().count(), 0);
    }

    #[test]
    fn threshold_pairs_indicator_single_link() {
        let p = SetPair::of(4, [0, 2], [3]);
        let chain = threshold_pairs(&indicator(&p, 4)).unwrap();
        let links: Vec<_> = chain.positive_links().collect();
        assert_eq!(links.len(), 1);
        assert_eq!(links[0], (&p, 1.0));
    }

    #[test]
    fn threshold_pairs_rejects_non_finite() {
        assert_eq!(threshold_pairs(&[1.0, f64::NAN]).unwrap_err(), SetPairError::NonFinite(1));
    }

    fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
        (0..n).map(|_| rng.random_range(-2.0..2.0)).collect()
    }

    #[test]
    fn threshold_reconstruction_many_random_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10_000 {
            let n = rng.random_range(1..=12);
            let x = random_vec(&mut rng, n);
            let chain = threshold_pairs(&x).unwrap();
            chain.validate().unwrap();
            let rec = chain.reconstruct();
            let sup = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for i in 0..n {
                assert!((rec[i] - x[i]).abs() <= 1e-12, "coordinate {i}: {} vs {}", rec[i], x[i]);
            }
            assert!((chain.gap_sum() - sup).abs() <= 1e-12);
        }
    }

    /// Independent reconstruction of Definition-style threshold pairs with
    /// the opposite tie-breaking order; the positive-gap chains must agree.
    fn threshold_pairs_reverse_ties(x: &[f64]) -> Vec<(SetPair, f64)> {
        let n = x.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| x[i].abs().partial_cmp(&x[j].abs()).unwrap().then(j.cmp(&i)));
        let mut out = Vec::new();
        let mut prev = 0.0;
        for &idx in &order {
            let a = VertexSet::from_indices(n, (0..n).filter(|&j| x[j] > prev));
            let b = VertexSet::from_indices(n, (0..n).filter(|&j| -x[j] > prev));
            let gap = x[idx].abs() - prev;
            if gap > 0.0 {
                out.push((SetPair::new(a, b).unwrap(), gap));
            }
            prev = x[idx].abs();
        }
        out
    }

    #[test]
    fn positive_chain_is_tie_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let magnitudes = [0.0, 0.5, 0.5, 1.0, 1.5, 1.5];
        for _ in 0..500 {
            let n = rng.random_range(2..=6);
            let x: Vec<f64> = (0..n)
                .map(|_| {
                    let m = magnitudes[rng.random_range(0..magnitudes.len())];
                    if rng.random::<bool>() {
                        m
                    } else {
                        -m
                    }
                })
                .collect();
            let chain = threshold_pairs(&x).unwrap();
            let ours: Vec<(SetPair, f64)> =
                chain.positive_links().map(|(p, g)| (p.clone(), g)).collect();
            let theirs = threshold_pairs_reverse_ties(&x);
            assert_eq!(ours, theirs, "x = {x:?}");
        }
    }

    #[test]
    fn nested_round_trip() {
        let p = SetPair::of(2, [0], [1]);
        let q = nested_from_setpair(&p);
        assert_eq!(q.inner().labels(), vec![1]);
        assert_eq!(q.outer().labels(), vec![1, 2]);
        assert_eq!(setpair_from_nested(&q), p);
        for p in enumerate_setpairs(3).unwrap() {
            assert_eq!(setpair_from_nested(&nested_from_setpair(&p)), p);
        }
        let e = SetPair::empty(2);
        let q = nested_from_setpair(&e);
        assert!(q.inner().is_empty() && q.outer().is_empty());
    }

    #[test]
    fn display_and_json_forms() {
        let p = SetPair::of(3, [0, 1], [2]);
        assert_eq!(p.to_string(), "A={1,2};B={3}");
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"a":[1,2],"b":[3]}"#);
    }

    #[test]
    fn hand_built_chain_validates() {
        let outer = SetPair::of(3, [0, 1], [2]);
        let inner = SetPair::of(3, [0], []);
        let chain =
            ChainDecomposition::from_links(3, vec![(outer, 1.0), (inner, 2.0)]).unwrap();
        assert_eq!(chain.reconstruct(), vec![3.0, 1.0, -1.0]);
        let bad = ChainDecomposition::from_links(
            3,
            vec![(SetPair::of(3, [0], []), 1.0), (SetPair::of(3, [1], []), 1.0)],
        );
        assert_eq!(bad.unwrap_err(), ChainError::NotNested(1, 0));
    }
}
