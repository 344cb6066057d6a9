//! Edge-adjacency and transition matrices on the oriented double.
//!
//! Both matrices are indexed by oriented edges: forward copies `0..m`,
//! reversals `m..2m`. Entry `(e, e2)` is live when `e2` continues `e`
//! without backtracking. The integer matrix counts walks; the complex one
//! weights each step by half its turning angle and drives everything
//! downstream that depends on signs.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geometry::TurningTable;
use crate::graph::EmbeddedGraph;
use crate::series::RationalSeries;

/// Which matrix a trace table was computed from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceKind {
    EdgeAdjacency,
    Transition,
}

/// Power traces `Tr M^N` for `N = 1..=max_n`, certified as integers.
#[derive(Debug, Clone)]
pub struct TraceTable {
    pub kind: TraceKind,
    values: Vec<BigInt>,
    /// Worst distance from any raw trace to its certified integer.
    pub max_residual: f64,
}

impl TraceTable {
    pub fn new(kind: TraceKind, values: Vec<BigInt>, max_residual: f64) -> Self {
        TraceTable { kind, values, max_residual }
    }

    pub fn max_n(&self) -> usize {
        self.values.len()
    }

    /// Trace of the `n`-th power, `n >= 1`.
    pub fn value(&self, n: usize) -> &BigInt {
        &self.values[n - 1]
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }
}

/// 0/1 matrix of admissible oriented-edge transitions.
#[derive(Debug, Clone)]
pub struct EdgeAdjacencyMatrix {
    dim: usize,
    entries: Vec<u8>,
}

impl EdgeAdjacencyMatrix {
    pub fn from_graph(g: &EmbeddedGraph) -> Self {
        let dim = g.oriented_count();
        let mut entries = vec![0u8; dim * dim];
        for e in 0..dim {
            let head = g.end(e);
            let rev = g.reverse(e);
            for e2 in 0..dim {
                if g.origin(e2) == head && e2 != rev {
                    entries[e * dim + e2] = 1;
                }
            }
        }
        EdgeAdjacencyMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, e: usize, e2: usize) -> bool {
        self.entries[e * self.dim + e2] == 1
    }

    /// Exact integer traces of `M, M^2, ..., M^max_n`.
    pub fn power_traces(&self, max_n: usize) -> TraceTable {
        let d = self.dim;
        let base: Vec<BigInt> = self.entries.iter().map(|&v| BigInt::from(v)).collect();
        let mut power = base.clone();
        let mut values = Vec::with_capacity(max_n);
        for n in 1..=max_n {
            if n > 1 {
                power = int_mat_mul(&power, &base, d);
            }
            let mut tr = BigInt::zero();
            for i in 0..d {
                tr += &power[i * d + i];
            }
            values.push(tr);
        }
        TraceTable::new(TraceKind::EdgeAdjacency, values, 0.0)
    }

    /// `det(1 - zM)` via Newton's identities over the rationals.
    pub fn char_poly(&self) -> Result<IntegerPolynomial> {
        let traces = self.power_traces(self.dim);
        char_poly_from_traces(&traces, self.dim)
    }
}

fn int_mat_mul(a: &[BigInt], b: &[BigInt], d: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); d * d];
    for i in 0..d {
        for k in 0..d {
            let aik = &a[i * d + k];
            if aik.is_zero() {
                continue;
            }
            for j in 0..d {
                let bkj = &b[k * d + j];
                if bkj.is_zero() {
                    continue;
                }
                out[i * d + j] += aik * bkj;
            }
        }
    }
    out
}

/// Unit-modulus transition weights `exp(i a/2)` on the admissible support,
/// where `a` is the turning accumulated from the midpoint of one edge to
/// the midpoint of the next.
#[derive(Debug, Clone)]
pub struct TransitionMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl TransitionMatrix {
    pub fn from_graph(g: &EmbeddedGraph) -> Result<Self> {
        let dim = g.oriented_count();
        let table = TurningTable::new(g)?;
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for e in 0..dim {
            let head = g.end(e);
            let rev = g.reverse(e);
            for e2 in 0..dim {
                if g.origin(e2) != head || e2 == rev {
                    continue;
                }
                let alpha = table.transition_angle(g, e, e2)?;
                entries[e * dim + e2] = Complex64::from_polar(1.0, alpha / 2.0);
            }
        }
        Ok(TransitionMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, e: usize, e2: usize) -> Complex64 {
        self.entries[e * self.dim + e2]
    }

    /// Complex traces rounded to integers, with the rounding distance
    /// certified against `tolerance`.
    pub fn power_traces(&self, max_n: usize, tolerance: f64) -> Result<TraceTable> {
        let d = self.dim;
        let mut power = self.entries.clone();
        let mut values = Vec::with_capacity(max_n);
        let mut max_residual = 0.0f64;
        for n in 1..=max_n {
            if n > 1 {
                power = complex_mat_mul(&power, &self.entries, d);
            }
            let mut tr = Complex64::new(0.0, 0.0);
            for i in 0..d {
                tr += power[i * d + i];
            }
            let rounded = tr.re.round();
            let residual = (tr - Complex64::new(rounded, 0.0)).norm();
            if !(residual < tolerance) {
                return Err(Error::NonIntegralTrace { power: n, residual, tolerance });
            }
            max_residual = max_residual.max(residual);
            let as_int = rounded
                .to_i64()
                .map(BigInt::from)
                .ok_or_else(|| Error::TooLarge(format!("trace of power {n} overflows i64")))?;
            values.push(as_int);
        }
        Ok(TraceTable::new(TraceKind::Transition, values, max_residual))
    }

    /// `det(1 - zM)` via Newton's identities on the certified traces.
    pub fn char_poly(&self, tolerance: f64) -> Result<IntegerPolynomial> {
        let traces = self.power_traces(self.dim, tolerance)?;
        char_poly_from_traces(&traces, self.dim)
    }
}

fn complex_mat_mul(a: &[Complex64], b: &[Complex64], d: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        for k in 0..d {
            let aik = a[i * d + k];
            if aik.re == 0.0 && aik.im == 0.0 {
                continue;
            }
            for j in 0..d {
                out[i * d + j] += aik * b[k * d + j];
            }
        }
    }
    out
}

/// Coefficients of `det(1 - zM)` from the power traces of `M`.
///
/// Newton's identity `n b_n = -sum_{k=1}^{n} p_k b_{n-k}` runs over exact
/// rationals; the result must come out integral because the matrix entries
/// that produced the traces were (certified) integers in the relevant basis.
pub fn char_poly_from_traces(traces: &TraceTable, dim: usize) -> Result<IntegerPolynomial> {
    if traces.max_n() < dim {
        return Err(Error::MalformedSpec(format!(
            "need {} power traces for the characteristic polynomial, have {}",
            dim,
            traces.max_n()
        )));
    }
    let mut b = vec![BigRational::zero(); dim + 1];
    b[0] = BigRational::one();
    for n in 1..=dim {
        let mut acc = BigRational::zero();
        for k in 1..=n {
            acc += BigRational::from_integer(traces.value(k).clone()) * &b[n - k];
        }
        b[n] = -acc / BigRational::from_integer(BigInt::from(n));
    }
    let coeffs = b
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::NonIntegralCoefficient { degree: i })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntegerPolynomial::new(coeffs))
}

/// Dense integer polynomial with trimmed trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map(Zero::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        IntegerPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntegerPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        IntegerPolynomial { coeffs: vec![BigInt::one()] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^n`, zero past the degree.
    pub fn coeff(&self, n: usize) -> BigInt {
        self.coeffs.get(n).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntegerPolynomial::new(out)
    }

    /// Maps `p(z)` to `p(z^2)`.
    pub fn substitute_z_squared(&self) -> Self {
        let mut out = vec![BigInt::zero(); 2 * self.coeffs.len() - 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[2 * i] = c.clone();
        }
        IntegerPolynomial::new(out)
    }

    /// The polynomial viewed as a series known to the given order.
    pub fn to_series(&self, order: usize) -> RationalSeries {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (i, c) in self.coeffs.iter().enumerate().take(order + 1) {
            coeffs[i] = BigRational::from_integer(c.clone());
        }
        RationalSeries::from_coeffs(coeffs).expect("order + 1 >= 1")
    }
}

impl std::fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use num_traits::Signed;
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mag = c.abs();
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                if i == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{i}")?;
                }
            } else if i == 1 {
                write!(f, "{mag} z")?;
            } else {
                write!(f, "{mag} z^{i}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}
