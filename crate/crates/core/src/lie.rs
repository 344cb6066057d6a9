//! Free Lie superalgebra dimensions from the determinant coefficients.
//!
//! Reading `1 - det(1 - zT)` as the generating function of a graded set of
//! generators, and the matching expression in `S` as its super-refinement,
//! the Witt-style partition sums below give the graded (super)dimensions
//! of the free Lie superalgebra those generators span. The punchline is
//! that the parity-split dimensions reproduce the sign-split aperiodic
//! cycle counts, and the enveloping algebra's superdimensions reproduce
//! the weighted zeta coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::counting::{divisors, factorial, for_each_partition, moebius};
use crate::error::{Error, Result};
use crate::zeta::GraphAnalysis;

/// One degree of the superdimension comparison.
#[derive(Debug, Clone)]
pub struct SuperdimensionRow {
    pub n: usize,
    /// `-[z^n] det(1 - zT)`: generator count in degree `n`.
    pub t: BigInt,
    /// `-[z^n] det(1 - zS)`: generator supercount in degree `n`.
    pub t_prime: BigInt,
    /// Even generators, `(t + t') / 2`.
    pub t0: BigInt,
    /// Odd generators, `(t - t') / 2`.
    pub t1: BigInt,
    /// Dimension of the even part of the free Lie superalgebra.
    pub dim_even: BigInt,
    /// Dimension of the odd part.
    pub dim_odd: BigInt,
    pub theta_minus: BigInt,
    pub theta_plus: BigInt,
    /// Whether `(dim_even, dim_odd) = (theta-, theta+)`.
    pub matches: bool,
    /// `[z^n]` of the weighted zeta: superdimension of the enveloping
    /// algebra in degree `n`.
    pub enveloping: BigInt,
}

#[derive(Debug, Clone)]
pub struct SuperdimensionTable {
    rows: Vec<SuperdimensionRow>,
}

impl SuperdimensionTable {
    pub fn rows(&self) -> &[SuperdimensionRow] {
        &self.rows
    }

    /// Row for degree `n`, 1-indexed.
    pub fn row(&self, n: usize) -> &SuperdimensionRow {
        &self.rows[n - 1]
    }

    pub fn max_n(&self) -> usize {
        self.rows.len()
    }

    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }
}

/// Splits generator counts into even and odd classes. `t` and `t_prime`
/// are indexed by degree starting at 1. Fails with [`Error::ParityViolation`]
/// when a degree cannot be split integrally.
pub fn generator_split(t: &[BigInt], t_prime: &[BigInt]) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let mut t0 = Vec::with_capacity(t.len());
    let mut t1 = Vec::with_capacity(t.len());
    for (i, (a, b)) in t.iter().zip(t_prime).enumerate() {
        let sum = a + b;
        if sum.is_odd() {
            return Err(Error::ParityViolation { degree: i + 1 });
        }
        t0.push(sum / 2);
        t1.push((a - b) / 2);
    }
    Ok((t0, t1))
}

/// Witt partition sums `W(N) = sum_partitions (|s|-1)!/s! prod t(i)^{s_i}`
/// over `weights[d-1]` generators of each degree `d`. Index 0 is unused and
/// holds zero; `W(N)` sits at index `N`.
pub fn witt_partition_sums(weights: &[BigInt], max_n: usize) -> Vec<BigRational> {
    let max_n = max_n.min(weights.len());
    let mut w = vec![BigRational::zero(); max_n + 1];
    for n in 1..=max_n {
        let mut acc = BigRational::zero();
        for_each_partition(n, &mut |counts| {
            let m: usize = counts.iter().sum();
            let mut term = BigRational::from_integer(factorial(m - 1));
            for (idx, &a) in counts.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let mut power = BigRational::one();
                for _ in 0..a {
                    power *= BigRational::from_integer(weights[idx].clone());
                }
                term *= power / BigRational::from_integer(factorial(a));
            }
            acc += term;
        });
        w[n] = acc;
    }
    w
}

/// Graded dimensions of the free Lie algebra on `weights[d-1]` generators
/// of each degree `d`: `dim L_N = sum_{g|N} (mu(g)/g) W(N/g)` over the
/// partition sums from [`witt_partition_sums`].
pub fn witt_dimensions(weights: &[BigInt], max_n: usize) -> Result<Vec<BigInt>> {
    let max_n = max_n.min(weights.len());
    let w = witt_partition_sums(weights, max_n);
    (1..=max_n)
        .map(|n| {
            let mut acc = BigRational::zero();
            for g in divisors(n) {
                let mu = moebius(g as u64);
                if mu == 0 {
                    continue;
                }
                acc += BigRational::new(BigInt::from(mu), BigInt::from(g)) * &w[n / g];
            }
            if acc.is_integer() {
                Ok(acc.to_integer())
            } else {
                Err(Error::NonIntegerCount(format!("free Lie dimension at N = {n}")))
            }
        })
        .collect()
}

/// Iterates two-colored partitions of `n`: `counts[d-1] = (a0, a1)` parts
/// of degree `d` in the even and odd class respectively.
fn for_each_colored_partition(n: usize, f: &mut impl FnMut(&[(usize, usize)])) {
    let mut counts = vec![(0usize, 0usize); n];
    fn rec(
        remaining: usize,
        d: usize,
        counts: &mut [(usize, usize)],
        f: &mut impl FnMut(&[(usize, usize)]),
    ) {
        if remaining == 0 {
            f(counts);
            return;
        }
        if d == 0 {
            return;
        }
        for total in 0..=(remaining / d) {
            for a0 in 0..=total {
                counts[d - 1] = (a0, total - a0);
                rec(remaining - d * total, d - 1, counts, f);
            }
        }
        counts[d - 1] = (0, 0);
    }
    rec(n, n, &mut counts, f);
}

/// Parity-graded dimensions of the free Lie superalgebra on `t0[d-1]`
/// even and `t1[d-1]` odd generators of each degree `d`.
///
/// The partition sum is graded by how many odd parts it uses; the even and
/// odd dimensions then mix the two grades through parity-restricted
/// Moebius sums (an odd element contributes its square to even degrees,
/// which is what the even-`g` terms account for).
pub fn witt_superdimensions(
    t0: &[BigInt],
    t1: &[BigInt],
    max_n: usize,
) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let max_n = max_n.min(t0.len()).min(t1.len());
    let mut w_even = vec![BigRational::zero(); max_n + 1];
    let mut w_odd = vec![BigRational::zero(); max_n + 1];
    for n in 1..=max_n {
        for_each_colored_partition(n, &mut |counts| {
            let m: usize = counts.iter().map(|&(a0, a1)| a0 + a1).sum();
            let odd_parts: usize = counts.iter().map(|&(_, a1)| a1).sum();
            let mut term = BigRational::from_integer(factorial(m - 1));
            for (idx, &(a0, a1)) in counts.iter().enumerate() {
                for (count, weight) in [(a0, &t0[idx]), (a1, &t1[idx])] {
                    if count == 0 {
                        continue;
                    }
                    let mut power = BigRational::one();
                    for _ in 0..count {
                        power *= BigRational::from_integer(weight.clone());
                    }
                    term *= power / BigRational::from_integer(factorial(count));
                }
            }
            if odd_parts.is_even() {
                w_even[n] += term;
            } else {
                w_odd[n] += term;
            }
        });
    }

    let mut dims_even = Vec::with_capacity(max_n);
    let mut dims_odd = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let mut even_acc = BigRational::zero();
        let mut odd_acc = BigRational::zero();
        for g in divisors(n) {
            let mu = moebius(g as u64);
            if mu == 0 {
                continue;
            }
            let weight = BigRational::new(BigInt::from(mu), BigInt::from(g));
            even_acc += &weight * &w_even[n / g];
            if g.is_even() {
                even_acc += &weight * &w_odd[n / g];
            } else {
                odd_acc += &weight * &w_odd[n / g];
            }
        }
        for (acc, out) in [(even_acc, &mut dims_even), (odd_acc, &mut dims_odd)] {
            if acc.is_integer() {
                out.push(acc.to_integer());
            } else {
                return Err(Error::NonIntegerCount(format!(
                    "free Lie superdimension at N = {n}"
                )));
            }
        }
    }
    Ok((dims_even, dims_odd))
}

/// Builds the full comparison table from an existing analysis.
pub fn superdimension_table(analysis: &GraphAnalysis, max_n: usize) -> Result<SuperdimensionTable> {
    let max_n = max_n.min(analysis.counts.max_n()).max(1);
    let t: Vec<BigInt> = (1..=max_n).map(|n| -analysis.t_poly.coeff(n)).collect();
    let t_prime: Vec<BigInt> = (1..=max_n).map(|n| -analysis.s_poly.coeff(n)).collect();
    let (t0, t1) = generator_split(&t, &t_prime)?;
    let (dims_even, dims_odd) = witt_superdimensions(&t0, &t1, max_n)?;
    let enveloping = analysis.s_poly.to_series(max_n).inverse()?.to_integer_coeffs()?;

    let rows = (1..=max_n)
        .map(|n| {
            let row = analysis.counts.row(n);
            let matches = dims_even[n - 1] == row.theta_minus && dims_odd[n - 1] == row.theta_plus;
            SuperdimensionRow {
                n,
                t: t[n - 1].clone(),
                t_prime: t_prime[n - 1].clone(),
                t0: t0[n - 1].clone(),
                t1: t1[n - 1].clone(),
                dim_even: dims_even[n - 1].clone(),
                dim_odd: dims_odd[n - 1].clone(),
                theta_minus: row.theta_minus.clone(),
                theta_plus: row.theta_plus.clone(),
                matches,
                enveloping: enveloping[n].clone(),
            }
        })
        .collect();
    Ok(SuperdimensionTable { rows })
}

/// Counts Lyndon words (strict minima among their rotations) of each
/// length over a small alphabet, by direct enumeration.
pub fn lyndon_counts(alphabet: usize, max_n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(max_n);
    let mut word = Vec::new();
    for n in 1..=max_n {
        let mut count = 0u64;
        for code in 0..(alphabet as u64).pow(n as u32) {
            word.clear();
            let mut rest = code;
            for _ in 0..n {
                word.push((rest % alphabet as u64) as usize);
                rest /= alphabet as u64;
            }
            if is_lyndon(&word) {
                count += 1;
            }
        }
        out.push(BigInt::from(count));
    }
    out
}

fn is_lyndon(word: &[usize]) -> bool {
    let n = word.len();
    for start in 1..n {
        let rotation = (0..n).map(|i| word[(start + i) % n]);
        match rotation.cmp(word.iter().copied()) {
            std::cmp::Ordering::Greater => continue,
            _ => return false,
        }
    }
    true
}
