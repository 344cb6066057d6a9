//! The ten release criteria, one test per criterion, each printing a single
//! pass/fail line (visible with `--nocapture`).
//!
//! Expected values are frozen closed forms and independent enumerations;
//! nothing here is computed by the code path under test.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use feynman_core::corpus::{euler_equivalent_pair, multiplicity_profile, standard};
use feynman_core::counting::CountTable;
use feynman_core::geometry::TurningTable;
use feynman_core::lie::{superdimension_table, witt_dimensions, witt_partition_sums, lyndon_counts};
use feynman_core::oracle::{closed_walks, cycle_classes, signed_walk_counts};
use feynman_core::zeta::{feynman_product, zeta_series};
use feynman_core::{
    analyze, generate_graph, verify_all, EdgeAdjacencyMatrix, EmbeddedGraph, IntegerPolynomial,
    TransitionMatrix, VerifyOptions, ZetaKind,
};

const TOL: f64 = 1e-6;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

trait Ctx<T> {
    fn ctx(self, what: &str) -> Result<T, String>;
}

impl<T> Ctx<T> for feynman_core::Result<T> {
    fn ctx(self, what: &str) -> Result<T, String> {
        self.map_err(|e| format!("{what}: {e}"))
    }
}

fn report(index: usize, label: &str, result: Result<(), String>) {
    match result {
        Ok(()) => println!("[acceptance] criterion {index:2} ({label}): PASS"),
        Err(msg) => {
            println!("[acceptance] criterion {index:2} ({label}): FAIL - {msg}");
            panic!("criterion {index} ({label}) failed: {msg}");
        }
    }
}

/// (1 + a1 z + a2 z^2 + ...)^exponent by repeated multiplication.
fn poly_power(base: &[i64], exponent: usize) -> IntegerPolynomial {
    let factor = IntegerPolynomial::from_i64(base);
    let mut acc = IntegerPolynomial::from_i64(&[1]);
    for _ in 0..exponent {
        acc = acc.mul(&factor);
    }
    acc
}

fn corpus_subset() -> Result<Vec<(String, EmbeddedGraph)>, String> {
    [
        ("cycle", vec![3usize]),
        ("cycle", vec![4]),
        ("k4", vec![]),
        ("bouquet", vec![2]),
        ("theta_chain", vec![2]),
    ]
    .into_iter()
    .map(|(name, params)| {
        let label = if params.is_empty() {
            name.to_string()
        } else {
            format!("{name}:{}", params[0])
        };
        let g = generate_graph(name, &params).ctx(&label)?;
        Ok((label, g))
    })
    .collect()
}

fn check_bouquet_family() -> Result<(), String> {
    for r in 1..=3usize {
        let label = format!("bouquet:{r}");
        let g = generate_graph("bouquet", &[r]).ctx(&label)?;
        let s = TransitionMatrix::from_graph(&g).ctx(&label)?;
        let traces = s.power_traces(12, TOL).ctx(&label)?;
        ensure!(
            traces.max_residual < 1e-6,
            "{label}: trace residual {} not below 1e-6",
            traces.max_residual
        );
        for n in 1..=12usize {
            let expect = if n % 2 == 0 {
                BigInt::from(2 * r)
            } else {
                -BigInt::from(2 * r)
            };
            ensure!(
                *traces.value(n) == expect,
                "{label}: Tr S^{n} = {}, want {expect}",
                traces.value(n)
            );
        }
        let analysis = analyze(&g, 12, TOL).ctx(&label)?;
        for n in 1..=12usize {
            let expect = match n {
                1 => -BigInt::from(2 * r),
                2 => BigInt::from(2 * r),
                _ => BigInt::zero(),
            };
            let got = &analysis.counts.row(n).omega;
            ensure!(*got == expect, "{label}: Omega({n}) = {got}, want {expect}");
        }
        let e_expect = poly_power(&[1, 1], r);
        ensure!(
            analysis.euler == e_expect,
            "{label}: E = {}, want {e_expect}",
            analysis.euler
        );
        let det_expect = poly_power(&[1, 1], 2 * r);
        ensure!(
            analysis.s_poly == det_expect,
            "{label}: det(1-zS) = {}, want {det_expect}",
            analysis.s_poly
        );
    }
    Ok(())
}

#[test]
fn c01_bouquet_family_closed_forms() {
    report(1, "bouquet family closed forms", check_bouquet_family());
}

fn check_theta_chain_family() -> Result<(), String> {
    for r in 2..=3usize {
        let label = format!("theta_chain:{r}");
        let g = generate_graph("theta_chain", &[r]).ctx(&label)?;
        let s = TransitionMatrix::from_graph(&g).ctx(&label)?;
        let traces = s.power_traces(12, TOL).ctx(&label)?;
        for n in 1..=12usize {
            let expect = if n % 2 == 1 {
                BigInt::zero()
            } else if (n / 2) % 2 == 0 {
                BigInt::from(4 * r)
            } else {
                -BigInt::from(4 * r)
            };
            ensure!(
                *traces.value(n) == expect,
                "{label}: Tr S^{n} = {}, want {expect}",
                traces.value(n)
            );
        }
        let analysis = analyze(&g, 12, TOL).ctx(&label)?;
        for n in 1..=12usize {
            let expect = match n {
                2 => -BigInt::from(2 * r),
                4 => BigInt::from(2 * r),
                _ => BigInt::zero(),
            };
            let got = &analysis.counts.row(n).omega;
            ensure!(*got == expect, "{label}: Omega({n}) = {got}, want {expect}");
        }
        let e_expect = poly_power(&[1, 0, 1], r);
        ensure!(
            analysis.euler == e_expect,
            "{label}: E = {}, want {e_expect}",
            analysis.euler
        );
    }
    Ok(())
}

#[test]
fn c02_theta_chain_family_closed_forms() {
    report(2, "theta-chain family closed forms", check_theta_chain_family());
}

fn check_census_equivalent_pair() -> Result<(), String> {
    let ((label_a, a), (label_b, b)) = euler_equivalent_pair().ctx("pair")?;
    let mut zetas = Vec::new();
    for (label, g) in [(&label_a, &a), (&label_b, &b)] {
        let analysis = analyze(g, 12, TOL).ctx(label)?;
        let e_expect = poly_power(&[1, 0, 1], 3);
        ensure!(
            analysis.euler == e_expect,
            "{label}: E = {}, want {e_expect}",
            analysis.euler
        );
        let det_expect = poly_power(&[1, 0, 1], 6);
        ensure!(
            analysis.s_poly == det_expect,
            "{label}: det(1-zS) = {}, want {det_expect}",
            analysis.s_poly
        );
        for n in 1..=12usize {
            let expect = match n {
                2 => BigInt::from(-6),
                4 => BigInt::from(6),
                _ => BigInt::zero(),
            };
            let got = &analysis.counts.row(n).omega;
            ensure!(*got == expect, "{label}: Omega({n}) = {got}, want {expect}");
        }
        let zeta = zeta_series(&analysis, ZetaKind::KacWard, 12).ctx(label)?;
        zetas.push(zeta);
    }
    ensure!(
        zetas[0].first_mismatch(&zetas[1]).is_none(),
        "zeta series differ at coefficient {:?}",
        zetas[0].first_mismatch(&zetas[1])
    );
    // The two drawings share vertex and edge counts; what separates them is
    // the multiset of parallel-edge multiplicities.
    let profile_a = multiplicity_profile(&a);
    let profile_b = multiplicity_profile(&b);
    ensure!(
        profile_a != profile_b,
        "{label_a} and {label_b} have identical multiplicity profiles {profile_a:?}"
    );
    Ok(())
}

#[test]
fn c03_census_equivalent_pair() {
    report(3, "equal-census non-isomorphic pair", check_census_equivalent_pair());
}

fn check_oracle_walk_counts() -> Result<(), String> {
    for (label, g) in corpus_subset()? {
        let t_traces = EdgeAdjacencyMatrix::from_graph(&g).power_traces(10);
        let s_traces = TransitionMatrix::from_graph(&g)
            .ctx(&label)?
            .power_traces(10, TOL)
            .ctx(&label)?;
        for n in 1..=10usize {
            let walks = closed_walks(&g, n);
            ensure!(
                BigInt::from(walks.len()) == *t_traces.value(n),
                "{label}: {} closed walks of length {n}, Tr T^{n} = {}",
                walks.len(),
                t_traces.value(n)
            );
            let (k_plus, k_minus) = signed_walk_counts(&g, n, TOL).ctx(&label)?;
            let expect_plus = (t_traces.value(n) - s_traces.value(n)) / 2;
            let expect_minus = (t_traces.value(n) + s_traces.value(n)) / 2;
            ensure!(
                k_plus == expect_plus && k_minus == expect_minus,
                "{label}: enumerated (K+, K-) = ({k_plus}, {k_minus}) at N = {n}, \
                 traces give ({expect_plus}, {expect_minus})"
            );
        }
    }
    Ok(())
}

#[test]
fn c04_oracle_walk_counts() {
    report(4, "walk enumeration equals traces", check_oracle_walk_counts());
}

fn check_oracle_class_counts() -> Result<(), String> {
    for (label, g) in corpus_subset()? {
        let analysis = analyze(&g, 10, TOL).ctx(&label)?;
        let counts: &CountTable = &analysis.counts;
        for n in 1..=10usize {
            let classes = cycle_classes(&g, n, TOL).ctx(&label)?;
            let plus = classes.iter().filter(|c| c.sign > 0).count();
            let minus = classes.len() - plus;
            let row = counts.row(n);
            ensure!(
                BigInt::from(plus) == row.theta_plus && BigInt::from(minus) == row.theta_minus,
                "{label}: enumerated (theta+, theta-) = ({plus}, {minus}) at N = {n}, \
                 inversion gives ({}, {})",
                row.theta_plus,
                row.theta_minus
            );
            ensure!(
                counts.k_plus_from_theta(n) == row.k_plus,
                "{label}: K+ round-trip fails at N = {n}"
            );
            ensure!(
                counts.k_minus_from_theta(n) == row.k_minus,
                "{label}: K- round-trip fails at N = {n}"
            );
            ensure!(
                counts.resummed_t_trace(n) == row.tr_t,
                "{label}: Tr T^{n} resummation fails"
            );
            ensure!(
                counts.resummed_s_trace(n) == row.tr_s,
                "{label}: Tr S^{n} resummation fails"
            );
        }
    }
    Ok(())
}

#[test]
fn c05_oracle_class_counts_and_inversions() {
    report(5, "class enumeration and inversion round-trips", check_oracle_class_counts());
}

fn check_feynman_identity() -> Result<(), String> {
    for (label, g) in standard().ctx("corpus")? {
        let analysis = analyze(&g, 10, TOL).ctx(&label)?;
        let product = feynman_product(&analysis.counts, 10).ctx(&label)?;
        let e_squared_poly = analysis.euler.mul(&analysis.euler);
        let e_squared = e_squared_poly.to_series(10);
        ensure!(
            product.first_mismatch(&e_squared).is_none(),
            "{label}: signed product differs from E^2 at coefficient {:?}",
            product.first_mismatch(&e_squared)
        );
        ensure!(
            analysis.s_poly == e_squared_poly,
            "{label}: det(1-zS) = {}, E^2 = {e_squared_poly}",
            analysis.s_poly
        );
    }
    Ok(())
}

#[test]
fn c06_feynman_identity_and_kac_ward() {
    report(6, "signed product equals even-subgraph census squared", check_feynman_identity());
}

fn check_identity_suite() -> Result<(), String> {
    let required = [
        "kac-ward-det",
        "feynman-product",
        "t-det-product",
        "s-det-product",
        "zeta-ratio-plus",
        "zeta-product-minus",
        "plus-ratio",
        "minus-ratio",
        "parity",
        "omega-theta",
        "supertrace-theta-plus",
        "c-seed",
        "c-newton",
        "c-convolution",
        "c-bound",
        "trace-from-c",
        "omega-from-c",
        "euler-from-c",
    ];
    let opts = VerifyOptions {
        order: 10,
        tolerance: TOL,
        oracle: false,
        ..VerifyOptions::default()
    };
    for (label, g) in standard().ctx("corpus")? {
        let report = verify_all(&g, &label, &opts).ctx(&label)?;
        ensure!(
            report.all_pass(),
            "{label}: failing checks {:?}",
            report.failed_ids()
        );
        for id in required {
            ensure!(
                report.checks.iter().any(|c| c.id == id),
                "{label}: check {id:?} missing from suite"
            );
        }
    }
    Ok(())
}

#[test]
fn c07_identity_suite() {
    report(7, "determinant, zeta and recursion identity suite", check_identity_suite());
}

fn check_lie_cross_check() -> Result<(), String> {
    for (label, g) in standard().ctx("corpus")? {
        let analysis = analyze(&g, 10, TOL).ctx(&label)?;
        let table = superdimension_table(&analysis, 10).ctx(&label)?;
        ensure!(
            table.all_match(),
            "{label}: superdimensions disagree with cycle counts at n = {:?}",
            table
                .rows()
                .iter()
                .filter(|r| !r.matches)
                .map(|r| r.n)
                .collect::<Vec<_>>()
        );
        let t: Vec<BigInt> = (1..=10).map(|n| -analysis.t_poly.coeff(n)).collect();
        let t_prime: Vec<BigInt> = (1..=10).map(|n| -analysis.s_poly.coeff(n)).collect();
        let from_t_prime = witt_dimensions(&t_prime, 10).ctx(&label)?;
        let from_t = witt_dimensions(&t, 10).ctx(&label)?;
        for n in 1..=10usize {
            let row = analysis.counts.row(n);
            ensure!(
                from_t_prime[n - 1] == row.omega,
                "{label}: univariate dims on t' give {} at N = {n}, Omega = {}",
                from_t_prime[n - 1],
                row.omega
            );
            ensure!(
                from_t[n - 1] == row.theta,
                "{label}: univariate dims on t give {} at N = {n}, theta = {}",
                from_t[n - 1],
                row.theta
            );
        }
        let w = witt_partition_sums(&t_prime, 10);
        for n in 1..=10usize {
            let expect = BigRational::new(analysis.s_traces.value(n).clone(), BigInt::from(n));
            ensure!(
                w[n] == expect,
                "{label}: W({n}) = {}, want Tr S^{n}/{n} = {expect}",
                w[n]
            );
        }
    }
    Ok(())
}

#[test]
fn c08_lie_superdimension_cross_check() {
    report(8, "free Lie superdimensions reproduce cycle counts", check_lie_cross_check());
}

fn check_classical_witt() -> Result<(), String> {
    for r in 1..=3usize {
        let mut weights = vec![BigInt::zero(); 8];
        weights[0] = BigInt::from(r);
        let dims = witt_dimensions(&weights, 8).ctx("classical")?;
        let lyndon = lyndon_counts(r, 8);
        for n in 1..=8usize {
            ensure!(
                dims[n - 1] == lyndon[n - 1],
                "M({n};{r}) = {}, Lyndon enumeration gives {}",
                dims[n - 1],
                lyndon[n - 1]
            );
        }
        if r == 2 {
            let spot = [2, 1, 2];
            for (n, want) in spot.iter().enumerate() {
                ensure!(
                    dims[n] == BigInt::from(*want),
                    "M({};2) = {}, want {want}",
                    n + 1,
                    dims[n]
                );
            }
        }
    }
    Ok(())
}

#[test]
fn c09_classical_witt_dimensions() {
    report(9, "classical Witt dimensions vs Lyndon words", check_classical_witt());
}

fn check_random_walk_winding() -> Result<(), String> {
    let corpus = standard().ctx("corpus")?;
    let tables: Vec<TurningTable> = corpus
        .iter()
        .map(|(label, g)| TurningTable::new(g).ctx(label))
        .collect::<Result<_, _>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x1db7);
    let mut tested = 0usize;
    while tested < 1000 {
        for ((label, g), table) in corpus.iter().zip(&tables) {
            let mut found = false;
            for _attempt in 0..200 {
                let start = rng.gen_range(0..g.oriented_count());
                let length = rng.gen_range(2..=12usize);
                let mut walk = vec![start];
                for _ in 1..length {
                    let succ: Vec<usize> = g.successors(*walk.last().expect("nonempty")).collect();
                    walk.push(succ[rng.gen_range(0..succ.len())]);
                }
                // Keep the longest closing prefix, if any.
                let closed_len = (2..=length)
                    .rev()
                    .find(|&l| g.successors(walk[l - 1]).any(|e| e == start));
                if let Some(l) = closed_len {
                    walk.truncate(l);
                    let winding = table.walk_winding(g, &walk, TOL).ctx(label)?;
                    ensure!(
                        winding.unsigned_abs() as usize <= l,
                        "{label}: |winding| = {} exceeds walk length {l}",
                        winding.unsigned_abs()
                    );
                    tested += 1;
                    found = true;
                    break;
                }
            }
            ensure!(found, "{label}: no closed walk found in 200 attempts");
            if tested >= 1000 {
                break;
            }
        }
    }
    Ok(())
}

#[test]
fn c10_random_walk_winding_integrality() {
    report(10, "winding integrality on 1000 random closed walks", check_random_walk_winding());
}
