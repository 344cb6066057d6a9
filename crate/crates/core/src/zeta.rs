//! Zeta functions of the two transition matrices and the identity suite
//! tying them to the even-subgraph census and the cycle counts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::counting::{divisors, moebius, verify_recursions, CountTable};
use crate::error::{Error, Result};
use crate::euler::{euler_polynomial, euler_polynomial_brute};
use crate::graph::EmbeddedGraph;
use crate::matrices::{
    char_poly_from_traces, EdgeAdjacencyMatrix, IntegerPolynomial, TraceTable, TransitionMatrix,
};
use crate::oracle;
use crate::report::{IdentityCheck, IdentityReport};
use crate::series::{RationalSeries, Sign};

/// Which zeta function: plain walk counting or winding-weighted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaKind {
    Ihara,
    KacWard,
}

/// Everything the identity suite needs, computed once per graph.
#[derive(Debug, Clone)]
pub struct GraphAnalysis {
    /// `det(1 - zT)` for the walk matrix.
    pub t_poly: IntegerPolynomial,
    /// `det(1 - zS)` for the weighted matrix.
    pub s_poly: IntegerPolynomial,
    pub t_traces: TraceTable,
    pub s_traces: TraceTable,
    pub counts: CountTable,
    /// Even-subgraph census by edge count.
    pub euler: IntegerPolynomial,
    /// Series order used downstream.
    pub order: usize,
}

/// Runs the full pipeline: traces, determinants, counts, census.
pub fn analyze(g: &EmbeddedGraph, order: usize, tolerance: f64) -> Result<GraphAnalysis> {
    let order = order.max(1);
    let dim = g.oriented_count();
    let trace_n = order.max(dim);
    let t_traces = EdgeAdjacencyMatrix::from_graph(g).power_traces(trace_n);
    let s_traces = TransitionMatrix::from_graph(g)?.power_traces(trace_n, tolerance)?;
    let t_poly = char_poly_from_traces(&t_traces, dim)?;
    let s_poly = char_poly_from_traces(&s_traces, dim)?;
    let counts = CountTable::from_traces(&t_traces, &s_traces)?;
    let euler = euler_polynomial(g)?;
    Ok(GraphAnalysis { t_poly, s_poly, t_traces, s_traces, counts, euler, order })
}

/// The zeta function as a truncated series: `det(1 - zM)^{-1}`.
pub fn zeta_series(analysis: &GraphAnalysis, kind: ZetaKind, order: usize) -> Result<RationalSeries> {
    let poly = match kind {
        ZetaKind::Ihara => &analysis.t_poly,
        ZetaKind::KacWard => &analysis.s_poly,
    };
    poly.to_series(order).inverse()
}

/// The sign-refined product `prod_N (1+z^N)^{theta+} (1-z^N)^{theta-}`.
pub fn feynman_product(counts: &CountTable, order: usize) -> Result<RationalSeries> {
    let mut factors = Vec::new();
    for n in 1..=order.min(counts.max_n()) {
        let row = counts.row(n);
        factors.push((n, Sign::Plus, row.theta_plus.clone()));
        factors.push((n, Sign::Minus, row.theta_minus.clone()));
    }
    RationalSeries::product_form(&factors, order)
}

/// `theta+` obtained through the supertrace of the doubled system. The raw
/// reduction gives `Str Q^k = Tr S^k - Tr T^k = -2 K+(k)`, so the Moebius
/// sum needs the extra minus sign and the factor two folded in.
pub fn supertrace_theta_plus(
    t: &TraceTable,
    s: &TraceTable,
    n: usize,
) -> Result<BigInt> {
    let mut acc = BigInt::zero();
    for g in divisors(n) {
        if g.is_even() {
            continue;
        }
        let mu = moebius(g as u64);
        if mu == 0 {
            continue;
        }
        let d = n / g;
        acc += BigInt::from(mu) * (s.value(d) - t.value(d));
    }
    acc = -acc;
    let (q, r) = acc.div_rem(&BigInt::from(2 * n));
    if !r.is_zero() {
        return Err(Error::NonIntegerCount(format!(
            "supertrace route to theta+ fails at N = {n}"
        )));
    }
    Ok(q)
}

fn series_check(id: &str, lhs: &RationalSeries, rhs: &RationalSeries) -> IdentityCheck {
    let fm = lhs.first_mismatch(rhs);
    IdentityCheck::new(id, fm.is_none(), fm, lhs.to_string(), rhs.to_string())
}

fn poly_check(id: &str, lhs: &IntegerPolynomial, rhs: &IntegerPolynomial) -> IdentityCheck {
    let top = lhs.degree().max(rhs.degree());
    let fm = (0..=top).find(|&i| lhs.coeff(i) != rhs.coeff(i));
    IdentityCheck::new(id, fm.is_none(), fm, lhs.to_string(), rhs.to_string())
}

/// Exponential of twice the sign-restricted walk generating function
/// `g(z) = sum_N K(N) z^N / N`.
fn exp_twice_k(counts: &CountTable, plus: bool, order: usize) -> Result<RationalSeries> {
    let mut coeffs = vec![BigRational::zero(); order + 1];
    for n in 1..=order.min(counts.max_n()) {
        let row = counts.row(n);
        let k = if plus { &row.k_plus } else { &row.k_minus };
        coeffs[n] = BigRational::new(BigInt::from(2) * k, BigInt::from(n));
    }
    RationalSeries::from_coeffs(coeffs)?.exp()
}

/// Options for [`verify_all`].
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Series order for the truncated identities.
    pub order: usize,
    /// Residual tolerance for trace certification.
    pub tolerance: f64,
    /// Also run the walk-enumeration oracle.
    pub oracle: bool,
    /// Largest walk length the oracle enumerates.
    pub oracle_max_n: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            order: 10,
            tolerance: crate::geometry::DEFAULT_TOLERANCE,
            oracle: false,
            oracle_max_n: 6,
        }
    }
}

/// Checks every identity the analysis supports and reports them one by one.
pub fn verify_all(g: &EmbeddedGraph, name: &str, opts: &VerifyOptions) -> Result<IdentityReport> {
    let analysis = analyze(g, opts.order, opts.tolerance)?;
    let order = analysis.order;
    let mut report = IdentityReport::new(name, order);

    // det(1 - zS) = E(z)^2, exact polynomial identity
    let euler_squared = analysis.euler.mul(&analysis.euler);
    report.push(poly_check("kac-ward-det", &analysis.s_poly, &euler_squared));

    // E^2 = prod (1+z^N)^{theta+} (1-z^N)^{theta-}
    report.push(series_check(
        "feynman-product",
        &euler_squared.to_series(order),
        &feynman_product(&analysis.counts, order)?,
    ));

    // det(1 - zT) = prod (1-z^N)^{theta}
    let theta_factors: Vec<_> = (1..=order)
        .map(|n| (n, Sign::Minus, analysis.counts.row(n).theta.clone()))
        .collect();
    report.push(series_check(
        "t-det-product",
        &analysis.t_poly.to_series(order),
        &RationalSeries::product_form(&theta_factors, order)?,
    ));

    // det(1 - zS) = prod (1-z^N)^{omega}
    let omega_factors: Vec<_> = (1..=order)
        .map(|n| (n, Sign::Minus, analysis.counts.row(n).omega.clone()))
        .collect();
    report.push(series_check(
        "s-det-product",
        &analysis.s_poly.to_series(order),
        &RationalSeries::product_form(&omega_factors, order)?,
    ));

    // zeta_T = exp(2 g+) zeta_S and zeta_T zeta_S = exp(2 g-)
    let zeta_t = zeta_series(&analysis, ZetaKind::Ihara, order)?;
    let zeta_s = zeta_series(&analysis, ZetaKind::KacWard, order)?;
    report.push(series_check(
        "zeta-ratio-plus",
        &zeta_t,
        &exp_twice_k(&analysis.counts, true, order)?.mul(&zeta_s),
    ));
    report.push(series_check(
        "zeta-product-minus",
        &zeta_t.mul(&zeta_s),
        &exp_twice_k(&analysis.counts, false, order)?,
    ));

    // prod ((1+z^N)/(1-z^N))^{theta+} = det(1 - zS) / det(1 - zT)
    let mut plus_factors = Vec::new();
    for n in 1..=order {
        let e = analysis.counts.row(n).theta_plus.clone();
        plus_factors.push((n, Sign::Plus, e.clone()));
        plus_factors.push((n, Sign::Minus, -e));
    }
    report.push(series_check(
        "plus-ratio",
        &RationalSeries::product_form(&plus_factors, order)?,
        &analysis.s_poly.to_series(order).mul(&zeta_t),
    ));

    // prod ((1+z^N)/(1-z^N))^{theta-}
    //   = det(1 - z^2 T) / (det(1 - zT) det(1 - zS))
    let mut minus_factors = Vec::new();
    for n in 1..=order {
        let e = analysis.counts.row(n).theta_minus.clone();
        minus_factors.push((n, Sign::Plus, e.clone()));
        minus_factors.push((n, Sign::Minus, -e));
    }
    let t_doubled = analysis.t_poly.substitute_z_squared().to_series(order);
    report.push(series_check(
        "minus-ratio",
        &RationalSeries::product_form(&minus_factors, order)?,
        &t_doubled.mul(&zeta_t).mul(&zeta_s),
    ));

    // det(1 - zT) and det(1 - zS) agree coefficient by coefficient mod 2
    let parity_bad = (0..=analysis.t_poly.degree().max(analysis.s_poly.degree()))
        .find(|&i| (analysis.t_poly.coeff(i) - analysis.s_poly.coeff(i)).is_odd());
    report.push(IdentityCheck::new(
        "parity",
        parity_bad.is_none(),
        parity_bad,
        analysis.t_poly.to_string(),
        analysis.s_poly.to_string(),
    ));

    // omega = theta- - theta+ (+ theta+(n/2) at even n)
    let omega_bad = analysis.counts.omega_theta_mismatch();
    report.push(IdentityCheck::new(
        "omega-theta",
        omega_bad.is_none(),
        omega_bad,
        omega_bad.map(|n| format!("omega({n}) = {}", analysis.counts.row(n).omega)).unwrap_or_default(),
        String::new(),
    ));

    // supertrace route reproduces theta+ with the audited sign
    let super_bad = (1..=analysis.counts.max_n()).find_map(|n| {
        match supertrace_theta_plus(&analysis.t_traces, &analysis.s_traces, n) {
            Ok(v) if v == analysis.counts.row(n).theta_plus => None,
            _ => Some(n),
        }
    });
    report.push(IdentityCheck::new(
        "supertrace-theta-plus",
        super_bad.is_none(),
        super_bad,
        String::new(),
        String::new(),
    ));

    // coefficient recursions, both branches, against independent routes
    let euler_coeffs = analysis.euler.coeffs().to_vec();
    for check in verify_recursions(
        &analysis.s_traces,
        &analysis.counts,
        &euler_coeffs,
        analysis.s_traces.max_n(),
    ) {
        report.push(check);
    }

    // even-subgraph census double-checked by raw subset enumeration
    if g.edge_count() <= 16 {
        let brute = euler_polynomial_brute(g)?;
        report.push(poly_check("euler-census", &analysis.euler, &brute));
    }

    if opts.oracle {
        push_oracle_checks(g, &analysis, opts, &mut report)?;
    }

    Ok(report)
}

fn push_oracle_checks(
    g: &EmbeddedGraph,
    analysis: &GraphAnalysis,
    opts: &VerifyOptions,
    report: &mut IdentityReport,
) -> Result<()> {
    let max_n = opts.oracle_max_n.min(analysis.counts.max_n()).max(1);

    let walk_bad = (1..=max_n).find(|&n| {
        BigInt::from(oracle::closed_walks(g, n).len()) != *analysis.t_traces.value(n)
    });
    report.push(IdentityCheck::new(
        "oracle-walk-count",
        walk_bad.is_none(),
        walk_bad,
        walk_bad.map(|n| oracle::closed_walks(g, n).len().to_string()).unwrap_or_default(),
        walk_bad.map(|n| analysis.t_traces.value(n).to_string()).unwrap_or_default(),
    ));

    let mut sign_bad = None;
    for n in 1..=max_n {
        let (plus, minus) = oracle::signed_walk_counts(g, n, opts.tolerance)?;
        let row = analysis.counts.row(n);
        if plus != row.k_plus || minus != row.k_minus {
            sign_bad = Some(n);
            break;
        }
    }
    report.push(IdentityCheck::new(
        "oracle-sign-split",
        sign_bad.is_none(),
        sign_bad,
        String::new(),
        String::new(),
    ));

    let mut class_bad = None;
    for n in 1..=max_n {
        let classes = oracle::cycle_classes(g, n, opts.tolerance)?;
        let plus = classes.iter().filter(|c| c.sign > 0).count();
        let minus = classes.len() - plus;
        let row = analysis.counts.row(n);
        if BigInt::from(classes.len()) != row.theta
            || BigInt::from(plus) != row.theta_plus
            || BigInt::from(minus) != row.theta_minus
        {
            class_bad = Some(n);
            break;
        }
    }
    report.push(IdentityCheck::new(
        "oracle-class-count",
        class_bad.is_none(),
        class_bad,
        String::new(),
        String::new(),
    ));

    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate_graph;

    fn verify(name: &str, params: &[usize], oracle: bool) -> IdentityReport {
        let g = generate_graph(name, params).unwrap();
        let opts = VerifyOptions { oracle, ..VerifyOptions::default() };
        verify_all(&g, name, &opts).unwrap()
    }

    #[test]
    fn triangle_identities_all_pass() {
        let report = verify("cycle", &[3], true);
        assert!(report.all_pass(), "failed: {:?}", report.failed_ids());
    }

    #[test]
    fn single_loop_identities_all_pass() {
        let report = verify("bouquet", &[1], true);
        assert!(report.all_pass(), "failed: {:?}", report.failed_ids());
    }

    #[test]
    fn theta_chain_identities_all_pass() {
        let report = verify("theta_chain", &[2], true);
        assert!(report.all_pass(), "failed: {:?}", report.failed_ids());
    }

    #[test]
    fn zeta_series_of_triangle() {
        let g = generate_graph("cycle", &[3]).unwrap();
        let analysis = analyze(&g, 9, 1e-6).unwrap();
        let zi = zeta_series(&analysis, ZetaKind::Ihara, 9).unwrap();
        // 1/(1 - z^3)^2 = 1 + 2 z^3 + 3 z^6 + 4 z^9 ...
        let expect = RationalSeries::from_integer_coeffs(&[1, 0, 0, 2, 0, 0, 3, 0, 0, 4], 9);
        assert!(zi.agrees(&expect));
        let zk = zeta_series(&analysis, ZetaKind::KacWard, 9).unwrap();
        let expect = RationalSeries::from_integer_coeffs(&[1, 0, 0, -2, 0, 0, 3, 0, 0, -4], 9);
        assert!(zk.agrees(&expect));
    }

    #[test]
    fn supertrace_route_sign() {
        let g = generate_graph("cycle", &[3]).unwrap();
        let analysis = analyze(&g, 6, 1e-6).unwrap();
        let v = supertrace_theta_plus(&analysis.t_traces, &analysis.s_traces, 3).unwrap();
        assert_eq!(v, BigInt::from(2));
    }
}
