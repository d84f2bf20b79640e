//! Weighted undirected graphs, vertex sets, and the elementary cut quantities.
//!
//! Vertices are labeled `1..=n` in the text format and JSON output, and
//! `0..n` everywhere inside the crate. Graphs are immutable after
//! construction; every operation here is pure.

use std::fmt;
use std::io::{BufRead, Write};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// A subset of the vertices `0..n`.
///
/// Stored as a 64-bit mask while `n <= 64` and as a sorted index list above
/// that, which keeps the enumeration-heavy oracles allocation-free without
/// capping graph size.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VertexSet {
    n: usize,
    repr: Repr,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Repr {
    Bits(u64),
    Sorted(Vec<u32>),
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        let repr = if n <= 64 { Repr::Bits(0) } else { Repr::Sorted(Vec::new()) };
        VertexSet { n, repr }
    }

    pub fn full(n: usize) -> Self {
        Self::from_indices(n, 0..n)
    }

    /// Build from 0-based vertex indices. Panics on out-of-range indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, indices: I) -> Self {
        let mut s = Self::empty(n);
        for i in indices {
            assert!(i < n, "vertex index {i} out of range for n={n}");
            s.insert(i);
        }
        s
    }

    /// Build from a mask over the low `n` bits (`n <= 64`).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64, "mask construction requires n <= 64");
        if n < 64 {
            assert_eq!(mask >> n, 0, "mask has bits above n={n}");
        }
        VertexSet { n, repr: Repr::Bits(mask) }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::Bits(m) => m.count_ones() as usize,
            Repr::Sorted(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        match &self.repr {
            Repr::Bits(m) => i < 64 && (m >> i) & 1 == 1,
            Repr::Sorted(v) => v.binary_search(&(i as u32)).is_ok(),
        }
    }

    fn insert(&mut self, i: usize) {
        match &mut self.repr {
            Repr::Bits(m) => *m |= 1u64 << i,
            Repr::Sorted(v) => {
                if let Err(pos) = v.binary_search(&(i as u32)) {
                    v.insert(pos, i as u32);
                }
            }
        }
    }

    /// 0-based members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits: Option<u64> = match &self.repr {
            Repr::Bits(m) => Some(*m),
            Repr::Sorted(_) => None,
        };
        let slice: &[u32] = match &self.repr {
            Repr::Bits(_) => &[],
            Repr::Sorted(v) => v,
        };
        BitsOrSlice { bits, slice, pos: 0 }
    }

    pub fn mask(&self) -> Option<u64> {
        match &self.repr {
            Repr::Bits(m) => Some(*m),
            Repr::Sorted(_) => None,
        }
    }

    fn zip_masks(&self, other: &VertexSet) -> Option<(u64, u64)> {
        match (&self.repr, &other.repr) {
            (Repr::Bits(a), Repr::Bits(b)) => Some((*a, *b)),
            _ => None,
        }
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        assert_eq!(self.n, other.n, "vertex sets over different ground sets");
        if let Some((a, b)) = self.zip_masks(other) {
            return a & b == 0;
        }
        self.iter().all(|i| !other.contains(i))
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        assert_eq!(self.n, other.n, "vertex sets over different ground sets");
        if let Some((a, b)) = self.zip_masks(other) {
            return a & !b == 0;
        }
        self.iter().all(|i| other.contains(i))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.n, other.n, "vertex sets over different ground sets");
        if let Some((a, b)) = self.zip_masks(other) {
            return VertexSet { n: self.n, repr: Repr::Bits(a | b) };
        }
        Self::from_indices(self.n, self.iter().chain(other.iter()))
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.n, other.n, "vertex sets over different ground sets");
        if let Some((a, b)) = self.zip_masks(other) {
            return VertexSet { n: self.n, repr: Repr::Bits(a & b) };
        }
        Self::from_indices(self.n, self.iter().filter(|&i| other.contains(i)))
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.n, other.n, "vertex sets over different ground sets");
        if let Some((a, b)) = self.zip_masks(other) {
            return VertexSet { n: self.n, repr: Repr::Bits(a & !b) };
        }
        Self::from_indices(self.n, self.iter().filter(|&i| !other.contains(i)))
    }

    pub fn complement(&self) -> VertexSet {
        match &self.repr {
            Repr::Bits(m) => {
                let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
                VertexSet { n: self.n, repr: Repr::Bits(full & !m) }
            }
            Repr::Sorted(_) => {
                Self::from_indices(self.n, (0..self.n).filter(|&i| !self.contains(i)))
            }
        }
    }

    /// 1-based labels, ascending — the external form.
    pub fn labels(&self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// Lexicographic order on the ascending member lists (prefixes first).
    pub fn lex_cmp(&self, other: &VertexSet) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

struct BitsOrSlice<'a> {
    bits: Option<u64>,
    slice: &'a [u32],
    pos: usize,
}

impl Iterator for BitsOrSlice<'_> {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        match &mut self.bits {
            Some(m) => {
                if *m == 0 {
                    None
                } else {
                    let i = m.trailing_zeros() as usize;
                    *m &= *m - 1;
                    Some(i)
                }
            }
            None => {
                let v = self.slice.get(self.pos)?;
                self.pos += 1;
                Some(*v as usize)
            }
        }
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for label in self.iter() {
            seq.serialize_element(&(label + 1))?;
        }
        seq.end()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// Immutable weighted undirected graph.
///
/// Edges are canonicalized to `u < v` and sorted lexicographically; degrees
/// and the total volume are fixed at construction so that every later sum is
/// reproducible bit for bit.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    degree: Vec<f64>,
    total_volume: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} out of range 1..={1}")]
    VertexOutOfRange(usize, usize),
    #[error("edge {0}-{1} has invalid weight {2} (must be finite and >= 0)")]
    BadWeight(usize, usize, f64),
    #[error("vertex sets overlap")]
    OverlappingSets,
}

/// Edge-list parse failure; line numbers are 1-based over the raw input.
#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("line {line}: expected header \"n m\"")]
    BadHeader { line: usize },
    #[error("line {line}: malformed edge line (expected \"u v w\")")]
    MalformedLine { line: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: weight {weight} must be finite and >= 0")]
    BadWeight { line: usize, weight: f64 },
    #[error("expected {expected} edge lines, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("io error: {0}")]
    Io(String),
}

impl Graph {
    /// Build from 0-based endpoints, validating all invariants.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self, GraphError> {
        let mut canon: Vec<Edge> = Vec::new();
        for (u, v, w) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u + 1, n));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v + 1, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u + 1));
            }
            if !w.is_finite() || w < 0.0 {
                return Err(GraphError::BadWeight(u + 1, v + 1, w));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            canon.push(Edge { u: a, v: b, w });
        }
        canon.sort_by_key(|e| (e.u, e.v));
        for pair in canon.windows(2) {
            if pair[0].u == pair[1].u && pair[0].v == pair[1].v {
                return Err(GraphError::DuplicateEdge(pair[0].u + 1, pair[0].v + 1));
            }
        }
        // Degrees accumulate in canonical edge order; the total volume is the
        // plain left-to-right sum of the degree vector.
        let mut degree = vec![0.0; n];
        for e in &canon {
            degree[e.u] += e.w;
            degree[e.v] += e.w;
        }
        let total_volume = degree.iter().sum();
        Ok(Graph { n, edges: canon, degree, total_volume })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn degree(&self, i: usize) -> f64 {
        self.degree[i]
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degree
    }

    pub fn total_volume(&self) -> f64 {
        self.total_volume
    }

    /// Total weight of edges with exactly one endpoint in `s`.
    pub fn boundary_weight(&self, s: &VertexSet) -> f64 {
        assert_eq!(s.ground_size(), self.n, "set/graph size mismatch");
        let mut total = 0.0;
        for e in &self.edges {
            if s.contains(e.u) != s.contains(e.v) {
                total += e.w;
            }
        }
        total
    }

    /// Total weight of edges with one endpoint in `a` and the other in `b`.
    pub fn cross_weight(&self, a: &VertexSet, b: &VertexSet) -> Result<f64, GraphError> {
        assert_eq!(a.ground_size(), self.n, "set/graph size mismatch");
        assert_eq!(b.ground_size(), self.n, "set/graph size mismatch");
        if !a.is_disjoint(b) {
            return Err(GraphError::OverlappingSets);
        }
        let mut total = 0.0;
        for e in &self.edges {
            let cross = (a.contains(e.u) && b.contains(e.v)) || (a.contains(e.v) && b.contains(e.u));
            if cross {
                total += e.w;
            }
        }
        Ok(total)
    }

    /// Total weight of edges with both endpoints in `s`.
    pub fn internal_weight(&self, s: &VertexSet) -> f64 {
        assert_eq!(s.ground_size(), self.n, "set/graph size mismatch");
        let mut total = 0.0;
        for e in &self.edges {
            if s.contains(e.u) && s.contains(e.v) {
                total += e.w;
            }
        }
        total
    }

    /// Sum of degrees over `s`, in ascending vertex order.
    pub fn volume(&self, s: &VertexSet) -> f64 {
        assert_eq!(s.ground_size(), self.n, "set/graph size mismatch");
        s.iter().map(|i| self.degree[i]).sum()
    }

    /// Parse the edge-list text format: first non-comment line `n m`, then
    /// `m` lines `u v w` with 1-based endpoints; `#` starts a comment.
    pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<Self, ParseError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges: Vec<(usize, usize, f64)> = Vec::new();
        let mut seen: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| ParseError::Io(e.to_string()))?;
            let lineno = idx + 1;
            let content = match line.split('#').next() {
                Some(c) => c.trim(),
                None => "",
            };
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            match header {
                None => {
                    if fields.len() != 2 {
                        return Err(ParseError::BadHeader { line: lineno });
                    }
                    let n: usize =
                        fields[0].parse().map_err(|_| ParseError::BadHeader { line: lineno })?;
                    let m: usize =
                        fields[1].parse().map_err(|_| ParseError::BadHeader { line: lineno })?;
                    header = Some((n, m));
                }
                Some((n, m)) => {
                    if edges.len() == m {
                        return Err(ParseError::EdgeCountMismatch { expected: m, found: m + 1 });
                    }
                    if fields.len() != 3 {
                        return Err(ParseError::MalformedLine { line: lineno });
                    }
                    let u: usize = fields[0]
                        .parse()
                        .map_err(|_| ParseError::MalformedLine { line: lineno })?;
                    let v: usize = fields[1]
                        .parse()
                        .map_err(|_| ParseError::MalformedLine { line: lineno })?;
                    let w: f64 = fields[2]
                        .parse()
                        .map_err(|_| ParseError::MalformedLine { line: lineno })?;
                    if u == 0 || u > n {
                        return Err(ParseError::VertexOutOfRange { line: lineno, vertex: u, n });
                    }
                    if v == 0 || v > n {
                        return Err(ParseError::VertexOutOfRange { line: lineno, vertex: v, n });
                    }
                    if u == v {
                        return Err(ParseError::SelfLoop { line: lineno, vertex: u });
                    }
                    if !w.is_finite() || w < 0.0 {
                        return Err(ParseError::BadWeight { line: lineno, weight: w });
                    }
                    let key = (u.min(v), u.max(v));
                    if !seen.insert(key) {
                        return Err(ParseError::DuplicateEdge { line: lineno, u: key.0, v: key.1 });
                    }
                    edges.push((u - 1, v - 1, w));
                }
            }
        }
        let (n, m) = header.ok_or(ParseError::BadHeader { line: 0 })?;
        if edges.len() != m {
            return Err(ParseError::EdgeCountMismatch { expected: m, found: edges.len() });
        }
        // All per-line invariants were checked above, so this cannot fail.
        Graph::from_edges(n, edges).map_err(|e| ParseError::Io(e.to_string()))
    }

    pub fn parse_edge_list_str(text: &str) -> Result<Self, ParseError> {
        Self::parse_edge_list(text.as_bytes())
    }

    /// Emit the canonical edge-list form: `u < v`, lexicographically sorted,
    /// shortest round-trip float text.
    pub fn write_edge_list<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "{} {}", self.n, self.edges.len())?;
        for e in &self.edges {
            writeln!(out, "{} {} {}", e.u + 1, e.v + 1, e.w)?;
        }
        Ok(())
    }

    pub fn to_edge_list_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_edge_list(&mut buf).expect("write to Vec cannot fail");
        String::from_utf8(buf).expect("edge list is ascii")
    }
}
