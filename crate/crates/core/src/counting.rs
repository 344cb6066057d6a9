//! Cycle counting: walk traces refined into aperiodic class counts.
//!
//! The raw data are the power traces of the two transition matrices. Moebius
//! sums over divisors peel repetitions off closed walks, splitting them into
//! counts of aperiodic cycles, further refined by the sign carried by the
//! winding number. Every division in sight must come out exact; a fractional
//! result means the traces were wrong, and is reported as a hard error.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrices::TraceTable;
use crate::report::IdentityCheck;

/// Moebius function by trial division.
pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1, "moebius needs n >= 1");
    let mut rest = n;
    let mut prime_count = 0u32;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            rest /= p;
            if rest % p == 0 {
                return 0;
            }
            prime_count += 1;
        }
        p += 1;
    }
    if rest > 1 {
        prime_count += 1;
    }
    if prime_count % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All divisors of `n`, ascending.
pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Number of aperiodic necklaces of length `n` over `r` letters:
/// `(1/n) sum_{g|n} mu(g) r^{n/g}`.
pub fn necklace_count(n: usize, r: &BigInt) -> Result<BigInt> {
    let mut acc = BigInt::zero();
    for g in divisors(n) {
        let mu = moebius(g as u64);
        if mu == 0 {
            continue;
        }
        acc += BigInt::from(mu) * r.pow((n / g) as u32);
    }
    exact_div(acc, n, "necklace count")
}

fn exact_div(sum: BigInt, n: usize, what: &str) -> Result<BigInt> {
    let (q, r) = sum.div_rem(&BigInt::from(n));
    if !r.is_zero() {
        return Err(Error::NonIntegerCount(format!("{what} at N = {n} is not integral")));
    }
    Ok(q)
}

/// Everything countable at one walk length.
#[derive(Debug, Clone)]
pub struct CountRow {
    pub n: usize,
    /// Closed non-backtracking walks.
    pub tr_t: BigInt,
    /// The same walks weighted by winding sign, negated.
    pub tr_s: BigInt,
    /// Walks whose winding number is even (sign `+`).
    pub k_plus: BigInt,
    /// Walks whose winding number is odd (sign `-`).
    pub k_minus: BigInt,
    /// Aperiodic cycles.
    pub theta: BigInt,
    /// Exponents of `det(1 - zS)` as a product over cycle lengths.
    pub omega: BigInt,
    /// Aperiodic cycles of sign `+`.
    pub theta_plus: BigInt,
    /// Aperiodic cycles of sign `-`.
    pub theta_minus: BigInt,
}

/// Count rows for `N = 1..=max_n`.
#[derive(Debug, Clone)]
pub struct CountTable {
    rows: Vec<CountRow>,
}

impl CountTable {
    /// Splits and refines the given walk traces. The table length is the
    /// shorter of the two inputs.
    pub fn from_traces(t: &TraceTable, s: &TraceTable) -> Result<CountTable> {
        let max_n = t.max_n().min(s.max_n());
        let mut k_plus: Vec<BigInt> = Vec::with_capacity(max_n);
        let mut k_minus: Vec<BigInt> = Vec::with_capacity(max_n);
        for n in 1..=max_n {
            let diff = t.value(n) - s.value(n);
            let sum = t.value(n) + s.value(n);
            if diff.is_odd() {
                return Err(Error::NonIntegerCount(format!(
                    "walk counts at N = {n} do not split by sign"
                )));
            }
            k_plus.push(diff / 2);
            k_minus.push(sum / 2);
        }

        let mut rows = Vec::with_capacity(max_n);
        for n in 1..=max_n {
            let mut theta_sum = BigInt::zero();
            let mut omega_sum = BigInt::zero();
            let mut plus_sum = BigInt::zero();
            let mut minus_sum = BigInt::zero();
            for g in divisors(n) {
                let mu = moebius(g as u64);
                if mu == 0 {
                    continue;
                }
                let mu = BigInt::from(mu);
                let d = n / g;
                theta_sum += &mu * t.value(d);
                omega_sum += &mu * s.value(d);
                minus_sum += &mu * &k_minus[d - 1];
                if g.is_odd() {
                    plus_sum += &mu * &k_plus[d - 1];
                } else {
                    minus_sum += &mu * &k_plus[d - 1];
                }
            }
            rows.push(CountRow {
                n,
                tr_t: t.value(n).clone(),
                tr_s: s.value(n).clone(),
                k_plus: k_plus[n - 1].clone(),
                k_minus: k_minus[n - 1].clone(),
                theta: exact_div(theta_sum, n, "theta")?,
                omega: exact_div(omega_sum, n, "omega")?,
                theta_plus: exact_div(plus_sum, n, "theta+")?,
                theta_minus: exact_div(minus_sum, n, "theta-")?,
            });
        }
        Ok(CountTable { rows })
    }

    pub fn rows(&self) -> &[CountRow] {
        &self.rows
    }

    /// Row for walk length `n`, 1-indexed.
    pub fn row(&self, n: usize) -> &CountRow {
        &self.rows[n - 1]
    }

    pub fn max_n(&self) -> usize {
        self.rows.len()
    }

    /// First `n` violating `omega = theta- - theta+` (odd `n`) or
    /// `omega = theta- - theta+ + theta+(n/2)` (even `n`), if any.
    pub fn omega_theta_mismatch(&self) -> Option<usize> {
        for row in &self.rows {
            let mut expect = &row.theta_minus - &row.theta_plus;
            if row.n.is_even() {
                expect += &self.row(row.n / 2).theta_plus;
            }
            if expect != row.omega {
                return Some(row.n);
            }
        }
        None
    }

    /// `Tr T^n` rebuilt from aperiodic counts: `sum_{k|n} k theta(k)`.
    pub fn resummed_t_trace(&self, n: usize) -> BigInt {
        divisors(n).iter().map(|&k| BigInt::from(k) * &self.row(k).theta).sum()
    }

    /// `Tr S^n` rebuilt from the product exponents: `sum_{k|n} k omega(k)`.
    pub fn resummed_s_trace(&self, n: usize) -> BigInt {
        divisors(n).iter().map(|&k| BigInt::from(k) * &self.row(k).omega).sum()
    }

    /// `K+` rebuilt from `theta+` alone: `sum_{odd g|n} (n/g) theta+(n/g)`.
    pub fn k_plus_from_theta(&self, n: usize) -> BigInt {
        divisors(n)
            .iter()
            .filter(|g| g.is_odd())
            .map(|&g| BigInt::from(n / g) * &self.row(n / g).theta_plus)
            .sum()
    }

    /// `K-` rebuilt from the sign-split aperiodic counts:
    /// `sum_{g|n} (n/g) theta-(n/g) + sum_{a>=1, 2^a|n} K+(n/2^a)`,
    /// with the inner `K+` itself rebuilt from `theta+`.
    pub fn k_minus_from_theta(&self, n: usize) -> BigInt {
        let mut acc: BigInt = divisors(n)
            .iter()
            .map(|&g| BigInt::from(n / g) * &self.row(n / g).theta_minus)
            .sum();
        let mut half = n;
        while half % 2 == 0 {
            half /= 2;
            acc += self.k_plus_from_theta(half);
        }
        acc
    }
}

/// Which exponential branch a `c` sequence belongs to: `Plus` for
/// `1 - sum c(i) z^i = det(1 - zS)`, `Minus` for its reciprocal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// Iterates integer partitions of `n` as multiplicity vectors
/// `counts[k-1]` = number of parts equal to `k`, calling `f` on each.
pub(crate) fn for_each_partition(n: usize, f: &mut impl FnMut(&[usize])) {
    let mut counts = vec![0usize; n];
    fn rec(remaining: usize, largest: usize, counts: &mut [usize], f: &mut impl FnMut(&[usize])) {
        if remaining == 0 {
            f(counts);
            return;
        }
        for part in (1..=largest.min(remaining)).rev() {
            counts[part - 1] += 1;
            rec(remaining - part, part, counts, f);
            counts[part - 1] -= 1;
        }
    }
    rec(n, n, &mut counts, f);
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// `c` coefficients by explicit partition sums over trace monomials:
/// `c(n) = sum_partitions lambda(|a|) prod_k (Tr S^k)^{a_k} / (a_k! k^{a_k})`
/// with `lambda(m) = (-1)^{m+1}` on the plus branch and `1` on the minus.
///
/// Entry `0` is zero; entry `i` is `c(i)`.
pub fn c_by_partition_sum(s: &TraceTable, branch: Branch, max_n: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); max_n + 1];
    for n in 1..=max_n {
        let mut acc = BigRational::zero();
        for_each_partition(n, &mut |counts| {
            let m: usize = counts.iter().sum();
            let mut term = match branch {
                Branch::Plus if m.is_even() => -BigRational::one(),
                _ => BigRational::one(),
            };
            for (idx, &a) in counts.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let k = idx + 1;
                let tr = BigRational::from_integer(s.value(k).clone());
                let mut power = BigRational::one();
                for _ in 0..a {
                    power *= &tr;
                }
                let denom = BigRational::from_integer(
                    factorial(a) * BigInt::from(k).pow(a as u32),
                );
                term *= power / denom;
            }
            acc += term;
        });
        out[n] = acc;
    }
    out
}

/// `c` coefficients by the differential recursion
/// `n c(n) = Tr S^n -/+ sum_{k<n} Tr S^{n-k} c(k)`.
pub fn c_by_recursion(s: &TraceTable, branch: Branch, max_n: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); max_n + 1];
    for n in 1..=max_n {
        let mut acc = BigRational::from_integer(s.value(n).clone());
        for k in 1..n {
            let cross = BigRational::from_integer(s.value(n - k).clone()) * &out[k];
            match branch {
                Branch::Plus => acc -= cross,
                Branch::Minus => acc += cross,
            }
        }
        out[n] = acc / BigRational::from_integer(BigInt::from(n));
    }
    out
}

/// Traces rebuilt from a `c` sequence by the logarithmic partition sum:
/// `Tr S^N = N sum_partitions sigma (|s|-1)!/s! prod c(i)^{s_i}`, where
/// `sigma` is `1` on the plus branch and `(-1)^{|s|+1}` on the minus.
pub fn traces_from_c(c: &[BigRational], branch: Branch, max_n: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); max_n + 1];
    for n in 1..=max_n {
        let mut acc = BigRational::zero();
        for_each_partition(n, &mut |counts| {
            let m: usize = counts.iter().sum();
            let mut term = match branch {
                Branch::Minus if m.is_even() => -BigRational::one(),
                _ => BigRational::one(),
            };
            term *= BigRational::from_integer(factorial(m - 1));
            for (idx, &a) in counts.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let i = idx + 1;
                let mut power = BigRational::one();
                for _ in 0..a {
                    power *= &c[i];
                }
                term *= power / BigRational::from_integer(factorial(a));
            }
            acc += term;
        });
        out[n] = acc * BigRational::from_integer(BigInt::from(n));
    }
    out
}

/// Product exponents recovered from the plus-branch `c` sequence alone:
/// `omega(n) = c(n) + (1/n) sum_{k<n} (sum_{g|k} g omega(g)) c(n-k)
///            - sum_{g|n, g != n} (g/n) omega(g)`.
pub fn omega_from_c_plus(c_plus: &[BigRational], max_n: usize) -> Vec<BigRational> {
    let mut omega = vec![BigRational::zero(); max_n + 1];
    let mut resummed = vec![BigRational::zero(); max_n + 1];
    for n in 1..=max_n {
        let nn = BigRational::from_integer(BigInt::from(n));
        let mut acc = c_plus[n].clone();
        for k in 1..n {
            acc += &resummed[k] * &c_plus[n - k] / &nn;
        }
        for g in divisors(n) {
            if g == n {
                continue;
            }
            acc -= BigRational::from_integer(BigInt::from(g)) * &omega[g] / &nn;
        }
        omega[n] = acc;
        for multiple in (n..=max_n).step_by(n) {
            resummed[multiple] += BigRational::from_integer(BigInt::from(n)) * &omega[n];
        }
    }
    omega
}

fn rational_int(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

/// Cross-checks every derived sequence against an independent route and
/// returns one check per identity. `euler` holds the even-subgraph counts
/// by edge count, constant term included.
pub fn verify_recursions(
    s: &TraceTable,
    counts: &CountTable,
    euler: &[BigInt],
    max_n: usize,
) -> Vec<IdentityCheck> {
    let max_n = max_n.min(s.max_n()).min(counts.max_n());
    let cp_part = c_by_partition_sum(s, Branch::Plus, max_n);
    let cm_part = c_by_partition_sum(s, Branch::Minus, max_n);
    let cp_rec = c_by_recursion(s, Branch::Plus, max_n);
    let cm_rec = c_by_recursion(s, Branch::Minus, max_n);
    let mut checks = Vec::new();

    let seed_ok = max_n < 1
        || (cp_rec[1] == rational_int(s.value(1)) && cm_rec[1] == rational_int(s.value(1)));
    checks.push(IdentityCheck::new(
        "c-seed",
        seed_ok,
        if seed_ok { None } else { Some(1) },
        format!("{}", cp_rec.get(1).cloned().unwrap_or_else(BigRational::zero)),
        format!("{}", s.value(1)),
    ));

    let newton = (1..=max_n).find(|&n| cp_part[n] != cp_rec[n] || cm_part[n] != cm_rec[n]);
    checks.push(IdentityCheck::new(
        "c-newton",
        newton.is_none(),
        newton,
        newton.map(|n| format!("{} / {}", cp_part[n], cm_part[n])).unwrap_or_default(),
        newton.map(|n| format!("{} / {}", cp_rec[n], cm_rec[n])).unwrap_or_default(),
    ));

    let convolution = (1..=max_n).find(|&n| {
        let mut rhs = cp_rec[n].clone();
        for i in 1..n {
            rhs += &cp_rec[i] * &cm_rec[n - i];
        }
        rhs != cm_rec[n]
    });
    checks.push(IdentityCheck::new(
        "c-convolution",
        convolution.is_none(),
        convolution,
        convolution.map(|n| format!("{}", cm_rec[n])).unwrap_or_default(),
        String::new(),
    ));

    let bound = (1..=max_n).find(|&n| cp_rec[n].abs() > cm_rec[n].abs());
    checks.push(IdentityCheck::new(
        "c-bound",
        bound.is_none(),
        bound,
        bound.map(|n| format!("|{}|", cp_rec[n])).unwrap_or_default(),
        bound.map(|n| format!("|{}|", cm_rec[n])).unwrap_or_default(),
    ));

    let back_p = traces_from_c(&cp_rec, Branch::Plus, max_n);
    let back_m = traces_from_c(&cm_rec, Branch::Minus, max_n);
    let traces_back = (1..=max_n)
        .find(|&n| back_p[n] != rational_int(s.value(n)) || back_m[n] != rational_int(s.value(n)));
    checks.push(IdentityCheck::new(
        "trace-from-c",
        traces_back.is_none(),
        traces_back,
        traces_back.map(|n| format!("{} / {}", back_p[n], back_m[n])).unwrap_or_default(),
        traces_back.map(|n| format!("{}", s.value(n))).unwrap_or_default(),
    ));

    let omega_c = omega_from_c_plus(&cp_rec, max_n);
    let omega_bad = (1..=max_n).find(|&n| omega_c[n] != rational_int(&counts.row(n).omega));
    checks.push(IdentityCheck::new(
        "omega-from-c",
        omega_bad.is_none(),
        omega_bad,
        omega_bad.map(|n| format!("{}", omega_c[n])).unwrap_or_default(),
        omega_bad.map(|n| format!("{}", counts.row(n).omega)).unwrap_or_default(),
    ));

    // 2n a(n) = -n c+(n) + sum_{k=1}^{n-1} (3k - n) a(k) c+(n-k)
    let a = |k: usize| -> BigRational {
        euler.get(k).map(rational_int).unwrap_or_else(BigRational::zero)
    };
    let euler_bad = (1..=max_n).find(|&n| {
        let nn = BigRational::from_integer(BigInt::from(n));
        let mut rhs = -&nn * &cp_rec[n];
        for k in 1..n {
            let weight = BigRational::from_integer(BigInt::from(3 * k as i64 - n as i64));
            rhs += weight * a(k) * &cp_rec[n - k];
        }
        let lhs = BigRational::from_integer(BigInt::from(2 * n)) * a(n);
        lhs != rhs
    });
    checks.push(IdentityCheck::new(
        "euler-from-c",
        euler_bad.is_none(),
        euler_bad,
        euler_bad.map(|n| format!("2n a({n}) with a = {}", a(n))).unwrap_or_default(),
        String::new(),
    ));

    checks
}
