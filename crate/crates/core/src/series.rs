//! Truncated formal power series with exact rational coefficients.
//!
//! A [`RationalSeries`] stores coefficients `c_0..=c_k` and represents a
//! series known modulo `z^{k+1}`; `k` is the *order*. Arithmetic tracks
//! precision pessimistically: combining two series yields the smaller order.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Sign tag for product-form factors `(1 ± z^N)^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// A power series truncated after `z^order`, with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    coeffs: Vec<BigRational>,
}

impl RationalSeries {
    /// The series `1` known to the given order.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        coeffs[0] = BigRational::one();
        RationalSeries { coeffs }
    }

    /// The series `0` known to the given order.
    pub fn zero(order: usize) -> Self {
        RationalSeries { coeffs: vec![BigRational::zero(); order + 1] }
    }

    /// Builds a series from explicit coefficients `c_0, c_1, ...`.
    ///
    /// The order is `coeffs.len() - 1`; an empty slice is rejected.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::MalformedSpec("series needs at least the constant term".into()));
        }
        Ok(RationalSeries { coeffs })
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_integer_coeffs(coeffs: &[i64], order: usize) -> Self {
        let mut c: Vec<BigRational> =
            coeffs.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect();
        c.resize(order + 1, BigRational::zero());
        c.truncate(order + 1);
        RationalSeries { coeffs: c }
    }

    /// Largest exponent with a known coefficient.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^n`; zero beyond the stored range is *not* implied,
    /// so reads past the order panic to catch precision bugs early.
    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Reduces the order, forgetting higher coefficients.
    pub fn truncated(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        RationalSeries { coeffs: self.coeffs[..keep].to_vec() }
    }

    fn joint_order(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = self.joint_order(other);
        let coeffs = (0..=k).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        RationalSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let k = self.joint_order(other);
        let coeffs = (0..=k).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        RationalSeries { coeffs }
    }

    pub fn neg(&self) -> Self {
        RationalSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        RationalSeries { coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let k = self.joint_order(other);
        let mut coeffs = vec![BigRational::zero(); k + 1];
        for i in 0..=k {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(k - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        RationalSeries { coeffs }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let k = self.order();
        let c0 = self.coeffs[0].recip();
        let mut inv = vec![BigRational::zero(); k + 1];
        inv[0] = c0.clone();
        for n in 1..=k {
            let mut acc = BigRational::zero();
            for j in 1..=n {
                acc += &self.coeffs[j] * &inv[n - j];
            }
            inv[n] = -acc * &c0;
        }
        Ok(RationalSeries { coeffs: inv })
    }

    /// Formal logarithm; requires constant term exactly `1`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm(format!(
                "log needs constant term 1, found {}",
                self.coeffs[0]
            )));
        }
        // With a = 1 + u: (log a)' * a = a', giving
        //   n*l_n = n*a_n - sum_{k=1}^{n-1} k*l_k*a_{n-k}.
        let k = self.order();
        let mut l = vec![BigRational::zero(); k + 1];
        for n in 1..=k {
            let mut acc = &self.coeffs[n] * BigRational::from_integer(BigInt::from(n));
            for j in 1..n {
                acc -= BigRational::from_integer(BigInt::from(j)) * &l[j] * &self.coeffs[n - j];
            }
            l[n] = acc / BigRational::from_integer(BigInt::from(n));
        }
        Ok(RationalSeries { coeffs: l })
    }

    /// Formal exponential; requires constant term exactly `0`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::BadConstantTerm(format!(
                "exp needs constant term 0, found {}",
                self.coeffs[0]
            )));
        }
        // f = e^u satisfies f' = u'f: n*f_n = sum_{k=1}^{n} k*u_k*f_{n-k}.
        let k = self.order();
        let mut f = vec![BigRational::zero(); k + 1];
        f[0] = BigRational::one();
        for n in 1..=k {
            let mut acc = BigRational::zero();
            for j in 1..=n {
                acc += BigRational::from_integer(BigInt::from(j)) * &self.coeffs[j] * &f[n - j];
            }
            f[n] = acc / BigRational::from_integer(BigInt::from(n));
        }
        Ok(RationalSeries { coeffs: f })
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, exponent: i64) -> Result<Self> {
        let base = if exponent < 0 { self.inverse()? } else { self.clone() };
        let mut e = exponent.unsigned_abs();
        let mut acc = RationalSeries::one(self.order());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Expands `prod (1 ± z^N)^{e_N}` to the requested order.
    ///
    /// Exponents are arbitrary (possibly negative or huge) integers: each
    /// factor is expanded with the generalized binomial series, which stays
    /// exact over the rationals.
    pub fn product_form(factors: &[(usize, Sign, BigInt)], order: usize) -> Result<Self> {
        let mut acc = RationalSeries::one(order);
        for (n, sign, exponent) in factors {
            if *n == 0 {
                return Err(Error::MalformedSpec("product factor with N = 0".into()));
            }
            if exponent.is_zero() || *n > order {
                continue;
            }
            acc = acc.mul(&binomial_factor(*n, *sign, exponent, order));
        }
        Ok(acc)
    }

    /// First exponent where the two series disagree, up to the shared order.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        let k = self.joint_order(other);
        (0..=k).find(|&i| self.coeffs[i] != other.coeffs[i])
    }

    /// Whether the two series agree on every shared coefficient.
    pub fn agrees(&self, other: &Self) -> bool {
        self.first_mismatch(other).is_none()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Extracts integer coefficients, or reports the first fractional one.
    pub fn to_integer_coeffs(&self) -> Result<Vec<BigInt>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::NonIntegralCoefficient { degree: i })
                }
            })
            .collect()
    }
}

/// `(1 ± z^n)^e` by the generalized binomial theorem, truncated.
fn binomial_factor(n: usize, sign: Sign, exponent: &BigInt, order: usize) -> RationalSeries {
    let terms = order / n;
    let mut coeffs = vec![BigRational::zero(); order + 1];
    let mut binom = BigRational::one();
    let negate_odd = matches!(sign, Sign::Minus);
    coeffs[0] = BigRational::one();
    for j in 1..=terms {
        // binom(e, j) = binom(e, j-1) * (e - j + 1) / j
        let numer = exponent - BigInt::from(j as i64 - 1);
        binom = binom * BigRational::from_integer(numer)
            / BigRational::from_integer(BigInt::from(j));
        coeffs[j * n] = if negate_odd && j % 2 == 1 { -binom.clone() } else { binom.clone() };
    }
    RationalSeries { coeffs }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                if c.is_negative() {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
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
        write!(f, " [O(z^{})]", self.order() + 1)
    }
}
