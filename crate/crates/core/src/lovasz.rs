//! Evaluators for the set-pair Lovász extension (sum, integral, and chain
//! forms) and the original single-set extension, plus the algebraic property
//! report used by the `check properties` command.
//!
//! The extension of a nonnegative set-pair function `f` at a vector `x` is
//! the gap-weighted sum of `f` over the threshold pairs of `x`; it agrees
//! with `f` on signed indicator vectors and is positively one-homogeneous
//! and piecewise linear.

use std::io::BufRead;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::VertexSet;
use crate::setpair::{threshold_pairs, ChainDecomposition, ChainError, SetPair};

/// A nonnegative function on disjoint set-pairs, evaluatable from any thread.
pub trait SetPairFunction: Send + Sync {
    fn evaluate(&self, p: &SetPair) -> f64;

    fn name(&self) -> &str {
        "setpair-fn"
    }

    /// `Some(true)` when `f(A,B) = f(B,A)` is known to hold.
    fn symmetric_hint(&self) -> Option<bool> {
        None
    }
}

impl<F: Fn(&SetPair) -> f64 + Send + Sync> SetPairFunction for F {
    fn evaluate(&self, p: &SetPair) -> f64 {
        self(p)
    }
}

impl SetPairFunction for Box<dyn SetPairFunction> {
    fn evaluate(&self, p: &SetPair) -> f64 {
        (**self).evaluate(p)
    }
    fn name(&self) -> &str {
        (**self).name()
    }
    fn symmetric_hint(&self) -> Option<bool> {
        (**self).symmetric_hint()
    }
}

/// A nonnegative function on vertex subsets.
pub trait SetFunction: Send + Sync {
    fn evaluate(&self, s: &VertexSet) -> f64;
}

impl<F: Fn(&VertexSet) -> f64 + Send + Sync> SetFunction for F {
    fn evaluate(&self, s: &VertexSet) -> f64 {
        self(s)
    }
}

/// Dense table over all `3^n` ternary pair codes.
#[derive(Clone, Debug)]
pub struct TabulatedPairFn {
    n: usize,
    name: String,
    values: Vec<f64>,
}

#[derive(Debug, Error, PartialEq)]
pub enum TableError {
    #[error("n={0} too large to tabulate (limit 12)")]
    TooLarge(usize),
    #[error("line {0}: malformed entry (expected \"code value\")")]
    MalformedLine(usize),
    #[error("line {line}: code {code} out of range 0..{total}")]
    CodeOutOfRange { line: usize, code: u64, total: u64 },
    #[error("line {0}: value must be finite and >= 0")]
    BadValue(usize),
    #[error("code {0} appears more than once")]
    DuplicateCode(u64),
    #[error("missing value for code {0}")]
    MissingCode(u64),
    #[error("io error: {0}")]
    Io(String),
}

impl TabulatedPairFn {
    pub const MAX_N: usize = 12;

    pub fn new(n: usize, values: Vec<f64>) -> Result<Self, TableError> {
        if n > Self::MAX_N {
            return Err(TableError::TooLarge(n));
        }
        let total = 3usize.pow(n as u32);
        assert_eq!(values.len(), total, "table length must be 3^n");
        for v in &values {
            assert!(v.is_finite() && *v >= 0.0, "table values must be finite and >= 0");
        }
        Ok(TabulatedPairFn { n, name: "tabulated".into(), values })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Uniform values in `[0, 1]`.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        let total = 3usize.pow(n as u32);
        let values = (0..total).map(|_| rng.random_range(0.0..=1.0)).collect();
        TabulatedPairFn::new(n, values).expect("n checked by caller")
    }

    /// Uniform values with `f(∅,∅)` pinned to zero.
    pub fn random_zero_at_empty(n: usize, rng: &mut impl Rng) -> Self {
        let mut t = Self::random(n, rng);
        t.values[0] = 0.0;
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value_at_code(&self, code: u64) -> f64 {
        self.values[code as usize]
    }

    pub fn set_value_at_code(&mut self, code: u64, v: f64) {
        assert!(v.is_finite() && v >= 0.0);
        self.values[code as usize] = v;
    }

    /// Parse the `code value` text format (one line per code, `#` comments,
    /// every code in `0..3^n` exactly once).
    pub fn parse<R: BufRead>(n: usize, reader: R) -> Result<Self, TableError> {
        if n > Self::MAX_N {
            return Err(TableError::TooLarge(n));
        }
        let total = 3u64.pow(n as u32);
        let mut values = vec![f64::NAN; total as usize];
        for (idx, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| TableError::Io(e.to_string()))?;
            let lineno = idx + 1;
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(TableError::MalformedLine(lineno));
            }
            let code: u64 =
                fields[0].parse().map_err(|_| TableError::MalformedLine(lineno))?;
            let value: f64 =
                fields[1].parse().map_err(|_| TableError::MalformedLine(lineno))?;
            if code >= total {
                return Err(TableError::CodeOutOfRange { line: lineno, code, total });
            }
            if !value.is_finite() || value < 0.0 {
                return Err(TableError::BadValue(lineno));
            }
            if !values[code as usize].is_nan() {
                return Err(TableError::DuplicateCode(code));
            }
            values[code as usize] = value;
        }
        if let Some(missing) = values.iter().position(|v| v.is_nan()) {
            return Err(TableError::MissingCode(missing as u64));
        }
        Ok(TabulatedPairFn { n, name: "tabulated".into(), values })
    }

    pub fn parse_str(n: usize, text: &str) -> Result<Self, TableError> {
        Self::parse(n, text.as_bytes())
    }

    pub fn to_table_string(&self) -> String {
        let mut out = String::new();
        for (code, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{code} {v}\n"));
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        let total = self.values.len() as u64;
        (0..total).all(|code| {
            let swapped = SetPair::from_code(self.n, code).swap().code();
            self.values[code as usize] == self.values[swapped as usize]
        })
    }
}

impl SetPairFunction for TabulatedPairFn {
    fn evaluate(&self, p: &SetPair) -> f64 {
        self.values[p.code() as usize]
    }
    fn name(&self) -> &str {
        &self.name
    }
    fn symmetric_hint(&self) -> Option<bool> {
        Some(self.is_symmetric())
    }
}

/// Sum form of the set-pair extension; `f` is evaluated at most `n` times
/// (only levels with positive gap contribute).
pub fn setpair_extension<F: SetPairFunction + ?Sized>(f: &F, x: &[f64]) -> f64 {
    let chain = threshold_pairs(x).expect("extension requires finite input");
    chain.positive_links().map(|(p, g)| g * f.evaluate(p)).sum()
}

/// Integral form: exact piecewise integration between consecutive magnitude
/// breakpoints. `steps` subdivides each constant piece for diagnostics and
/// does not change the value.
pub fn setpair_extension_integral<F: SetPairFunction + ?Sized>(
    f: &F,
    x: &[f64],
    steps: usize,
) -> f64 {
    assert!(steps >= 1, "steps must be >= 1");
    let n = x.len();
    let mut breakpoints: Vec<f64> = Vec::with_capacity(n + 1);
    breakpoints.push(0.0);
    breakpoints.extend(x.iter().map(|v| v.abs()));
    breakpoints.sort_by(|a, b| a.partial_cmp(b).expect("finite input"));
    breakpoints.dedup();

    let mut total = 0.0;
    for window in breakpoints.windows(2) {
        let (lo, hi) = (window[0], window[1]);
        let width = hi - lo;
        if width <= 0.0 {
            continue;
        }
        let sub = width / steps as f64;
        for s in 0..steps {
            let t = lo + (s as f64 + 0.5) * sub;
            let a = VertexSet::from_indices(n, (0..n).filter(|&j| x[j] > t));
            let b = VertexSet::from_indices(n, (0..n).filter(|&j| -x[j] > t));
            let p = SetPair::new(a, b).expect("super-level sets are disjoint");
            total += sub * f.evaluate(&p);
        }
    }
    total
}

/// Chain form `Σ λ_i f(V_i⁺, V_i⁻)` over any valid chain decomposition.
pub fn setpair_extension_chain<F: SetPairFunction + ?Sized>(
    f: &F,
    chain: &ChainDecomposition,
) -> Result<f64, ChainError> {
    chain.validate()?;
    Ok(chain.positive_links().map(|(p, g)| g * f.evaluate(p)).sum())
}

/// The original Lovász extension over ascending-sorted coordinates with the
/// zero sentinel: `Σ (x_{σ(i+1)} - x_{σ(i)}) f(V_{σ(i)})`, `V_0 = V`.
pub fn original_extension<F: SetFunction + ?Sized>(f: &F, x: &[f64]) -> f64 {
    let n = x.len();
    assert!(x.iter().all(|v| v.is_finite()), "extension requires finite input");
    if n == 0 {
        return 0.0;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| x[i].partial_cmp(&x[j]).unwrap().then(i.cmp(&j)));

    let mut total = 0.0;
    let mut prev = 0.0; // x_{σ(0)} = 0 sentinel
    for (level, &idx) in order.iter().enumerate() {
        let set = if level == 0 {
            VertexSet::full(n)
        } else {
            let t = x[order[level - 1]];
            VertexSet::from_indices(n, (0..n).filter(|&j| x[j] > t))
        };
        total += (x[idx] - prev) * f.evaluate(&set);
        prev = x[idx];
    }
    total
}

/// Max absolute deviations observed for the algebraic identities of the
/// set-pair extension over seeded random inputs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtensionPropertyReport {
    /// `f^L(λx) = λ f^L(x)`, λ > 0.
    pub homogeneity: f64,
    /// `f^L(x + α sign(x)) = f^L(x) + α f(V_0⁺, V_0⁻)`, α ≥ 0.
    pub sign_shift: f64,
    /// `(f + g)^L = f^L + g^L` with `g(A,B) := f(B,A)`.
    pub additivity: f64,
    /// `(λ f)^L = λ f^L`, λ ≥ 0.
    pub scaling: f64,
    /// `max |f^L(x) - f^L(-x)|`; zero exactly when `f` is symmetric.
    pub evenness: f64,
}

impl ExtensionPropertyReport {
    pub fn linear_identities_within(&self, tol: f64) -> bool {
        self.homogeneity <= tol
            && self.sign_shift <= tol
            && self.additivity <= tol
            && self.scaling <= tol
    }
}

pub fn extension_properties_check<F: SetPairFunction + ?Sized>(
    f: &F,
    n: usize,
    trials: usize,
    seed: u64,
) -> ExtensionPropertyReport {
    assert!(trials >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ExtensionPropertyReport {
        homogeneity: 0.0,
        sign_shift: 0.0,
        additivity: 0.0,
        scaling: 0.0,
        evenness: 0.0,
    };
    let transpose = |p: &SetPair| f.evaluate(&p.swap());
    for _ in 0..trials {
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
        let fx = setpair_extension(f, &x);

        let lambda: f64 = rng.random_range(0.1..3.0);
        let scaled: Vec<f64> = x.iter().map(|v| v * lambda).collect();
        report.homogeneity =
            report.homogeneity.max((setpair_extension(f, &scaled) - lambda * fx).abs());

        let alpha: f64 = rng.random_range(0.0..2.0);
        // sign(0) = 0, so zero coordinates stay put
        let shifted: Vec<f64> = x
            .iter()
            .map(|&v| {
                if v > 0.0 {
                    v + alpha
                } else if v < 0.0 {
                    v - alpha
                } else {
                    0.0
                }
            })
            .collect();
        let zero_pair = SetPair::new(
            VertexSet::from_indices(n, (0..n).filter(|&j| x[j] > 0.0)),
            VertexSet::from_indices(n, (0..n).filter(|&j| -x[j] > 0.0)),
        )
        .expect("disjoint by sign");
        let expected = fx + alpha * f.evaluate(&zero_pair);
        report.sign_shift =
            report.sign_shift.max((setpair_extension(f, &shifted) - expected).abs());

        let sum_fn = |p: &SetPair| f.evaluate(p) + transpose(p);
        report.additivity = report.additivity.max(
            (setpair_extension(&sum_fn, &x) - fx - setpair_extension(&transpose, &x)).abs(),
        );

        let scaled_fn = |p: &SetPair| lambda * f.evaluate(p);
        report.scaling =
            report.scaling.max((setpair_extension(&scaled_fn, &x) - lambda * fx).abs());

        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        report.evenness = report.evenness.max((setpair_extension(f, &neg) - fx).abs());
    }
    report
}
