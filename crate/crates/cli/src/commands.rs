//! Implementations of the CLI subcommands.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::json;
use std::path::Path;

use hyperorbit::algebra::fp::Fp;
use hyperorbit::algebra::{Poly, ZZ};
use hyperorbit::curves::HyperCurve;
use hyperorbit::descent::{
    delta_class, gram_pair, ideal_from_divisor, integral_orbit_zp, local_ideal_census,
    mumford_from_points,
};
use hyperorbit::error::{DescentError, PadicError};
use hyperorbit::finite::{
    census_fixed_poly, census_from_fiber, collect_all_fibers, fiber_counts,
    poly_decode, poly_from_invariants, regular_vector_count, so_group, so_order,
};
use hyperorbit::orbit::{
    combinatorial_lemma_check, distinguished_rep, nilpotent_regular,
    nilpotent_subregular, real_component, weight_identities,
};
use hyperorbit::padic::{chabauty_bound_at_3, factor_shape, local_mass_ratios};

use crate::cache::curves_with_cache;
use crate::report::{Fraction, StatReport};
use crate::CliError;

fn parse_coeffs(s: &str) -> Result<Vec<BigInt>, CliError> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<BigInt>()
                .map_err(|_| CliError::validation(format!("bad coefficient: {:?}", part)))
        })
        .collect()
}

fn curve_from_coeffs(c: Vec<BigInt>) -> Result<HyperCurve, CliError> {
    if c.is_empty() || c.len() % 2 != 0 {
        return Err(CliError::validation(
            "expected an even number of coefficients c_2,...,c_(2n+1)",
        ));
    }
    Ok(HyperCurve::new(c.len() / 2, c)?)
}

fn parse_points(s: &str) -> Result<Vec<(BigInt, BigInt)>, CliError> {
    let mut out = Vec::new();
    for part in s.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let inner = part
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| CliError::validation(format!("bad point syntax: {:?}", part)))?;
        let mut halves = inner.split(',');
        let a = halves
            .next()
            .and_then(|v| v.trim().parse::<BigInt>().ok())
            .ok_or_else(|| CliError::validation(format!("bad point: {:?}", part)))?;
        let b = halves
            .next()
            .and_then(|v| v.trim().parse::<BigInt>().ok())
            .ok_or_else(|| CliError::validation(format!("bad point: {:?}", part)))?;
        if halves.next().is_some() {
            return Err(CliError::validation(format!("bad point: {:?}", part)));
        }
        out.push((a, b));
    }
    Ok(out)
}

pub fn run_enumerate(n: usize, x: u64, cache_dir: Option<&Path>) -> Result<StatReport, CliError> {
    let curves = curves_with_cache(n, x, cache_dir)?;
    let mut report = StatReport::new("enumerate");
    report.param("n", n).param("x", x);
    report.count("curves", curves.len());

    // height buckets: H < x / 2^j
    let mut bucket = x;
    let mut buckets = Vec::new();
    while bucket >= 2 {
        let threshold = BigInt::from(bucket);
        let count = curves.iter().filter(|c| c.height_lt(&threshold)).count();
        buckets.push(json!({"h_lt": bucket.to_string(), "count": count}));
        bucket /= 2;
    }
    report.count("height_buckets", buckets);

    // histogram of the real component count m
    let ms: Vec<usize> = curves
        .par_iter()
        .map(|c| real_component(&c.poly()).expect("enumerated curves are separable"))
        .collect();
    let mut histogram = vec![0usize; n + 1];
    for m in &ms {
        histogram[*m] += 1;
    }
    report.count("m_histogram", &histogram);
    report.count(
        "m_histogram_total",
        histogram.iter().sum::<usize>(),
    );

    let mod3 = curves.iter().filter(|c| c.mod3_chabauty_filter()).count();
    report.count("mod3_filter_pass", mod3);
    report.ratio(
        "mod3_filter_rate",
        Fraction::from_counts(mod3 as u64, curves.len() as u64),
    );

    let seven = BigInt::from(7);
    let good7 = curves
        .iter()
        .filter(|c| !(c.discriminant() % &seven).is_zero())
        .count();
    report.ratio(
        "good_reduction_at_7",
        Fraction::from_counts(good7 as u64, curves.len() as u64),
    );
    report.ratio("good_reduction_at_7_expected", Fraction::from_counts(6, 7));
    Ok(report)
}

pub fn run_ffcount(n: usize, p: u64, poly: Option<&str>) -> Result<StatReport, CliError> {
    let mut report = StatReport::new("ffcount");
    report.param("n", n).param("p", p);
    match poly {
        Some(poly) => {
            let coeffs = parse_coeffs(poly)?;
            if coeffs.len() != 2 * n {
                return Err(CliError::validation("expected 2n invariants"));
            }
            let fp = Fp::new(p);
            let c: Vec<u64> = coeffs.iter().map(|v| fp.reduce_int(v)).collect();
            let census = census_fixed_poly(n, p, &c)?;
            report.param("poly", &c);
            report.rows.push(serde_json::to_value(&census).unwrap());
            report.count("total", census.total);
        }
        None => {
            if n != 1 {
                return Err(CliError::infeasible(
                    "full fiber collection is supported for n = 1 only",
                ));
            }
            let fp = Fp::new(p);
            let fibers = collect_all_fibers(n, p)?;
            let group = so_group(n, p)?;
            let mut codes: Vec<usize> = fibers.keys().copied().collect();
            codes.sort_unstable();
            for code in codes {
                let c = poly_decode(p, n, code);
                let f = poly_from_invariants(n, &c);
                if !hyperorbit::algebra::fp::is_separable(&fp, &f) {
                    continue;
                }
                let census = census_from_fiber(&fp, n, p, &c, &f, &group, &fibers[&code]);
                report.rows.push(serde_json::to_value(&census).unwrap());
            }
            report.count("fibers", report.rows.len());
        }
    }
    Ok(report)
}

pub fn run_ffcensus(n: usize, p: u64) -> Result<StatReport, CliError> {
    let mut report = StatReport::new("ffcensus");
    report.param("n", n).param("p", p);
    let order = so_order(n, p);
    report.count("so_order", order.to_string());

    let counts = fiber_counts(n, p)?;
    let fp = Fp::new(p);
    let mut separable = 0u64;
    let mut separable_total = BigInt::zero();
    let mut fiber_identity = true;
    for (code, &count) in counts.iter().enumerate() {
        let c = poly_decode(p, n, code);
        let f = poly_from_invariants(n, &c);
        if hyperorbit::algebra::fp::is_separable(&fp, &f) {
            separable += 1;
            separable_total += count;
            if BigInt::from(count) != order {
                fiber_identity = false;
            }
        }
    }
    report.count("separable_polys", separable);
    report.count("separable_fiber_total", separable_total.to_string());
    report.count(
        "separable_fiber_expected",
        (order.clone() * BigInt::from(separable)).to_string(),
    );
    report.count("fiber_identity_holds", fiber_identity);

    let (regular, total) = regular_vector_count(n, p)?;
    let expected = BigInt::from(p).pow(2 * n as u32) * &order;
    report.count("regular_vectors", regular);
    report.count("regular_expected", expected.to_string());
    report.count("box_size", total.to_string());
    report.count(
        "regular_identity_holds",
        BigInt::from(regular) == expected,
    );
    Ok(report)
}

pub fn run_orbit(
    poly: Option<&str>,
    nilpotent: Option<&str>,
    n: Option<usize>,
    d: i64,
) -> Result<StatReport, CliError> {
    let mut report = StatReport::new("orbit");
    match (poly, nilpotent) {
        (Some(poly), None) => {
            let coeffs = parse_coeffs(poly)?;
            let curve = curve_from_coeffs(coeffs)?;
            let f = curve.poly();
            let b = distinguished_rep(&f)?;
            let genus = curve.genus();
            report.param("n", genus);
            report.param("poly", f.to_dec_strings());
            let mut entries: Vec<String> = Vec::with_capacity(b.rows() * b.cols());
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    entries.push(b.at(i, j).to_string());
                }
            }
            report.count("gram_entries", entries);
            let shape = hyperorbit::orbit::block_tests_on(genus, |i, j| b.at(i, j).is_zero());
            report.count("distinguished_shape", shape.distinguished_shape);
            let back = hyperorbit::algebra::charpoly_pencil_in(
                &hyperorbit::algebra::QQ,
                &b,
                genus,
            )
            .map_err(hyperorbit::error::OrbitError::from)?;
            report.count("invariants_round_trip", back == f.to_rational());
            let pattern = hyperorbit::orbit::sign_pattern(genus, &b)?;
            let (m, tau) = hyperorbit::orbit::classify_component(&pattern);
            report.count("sign_pattern", pattern.to_string());
            report.count("component", json!({"m": m, "tau": tau}));
        }
        (None, Some(kind)) => {
            let n = n.ok_or_else(|| CliError::validation("--n required for nilpotent orbits"))?;
            let rep = match kind {
                "regular" => nilpotent_regular(n),
                _ => nilpotent_subregular(n, &BigInt::from(d))?,
            };
            report.param("n", n);
            report.param("kind", kind);
            report.count("gram", rep.matrix().to_dec_strings());
            let f = hyperorbit::algebra::charpoly_pencil(rep.matrix(), n)
                .map_err(hyperorbit::error::OrbitError::from)?;
            let want = Poly::monomial(&ZZ, BigInt::one(), 2 * n + 1);
            report.count("charpoly_is_pure_power", f == want);
        }
        _ => {
            return Err(CliError::validation(
                "exactly one of --poly or --nilpotent is required",
            ))
        }
    }
    Ok(report)
}

pub fn run_padic_shape(p: u64, poly: &str, prec: Option<usize>) -> Result<StatReport, CliError> {
    let coeffs = parse_coeffs(poly)?;
    let curve = curve_from_coeffs(coeffs)?;
    let shape = factor_shape(&curve.poly(), p, prec)?;
    let mut report = StatReport::new("padic-shape");
    report.param("p", p).param("n", curve.genus());
    report.rows.push(serde_json::to_value(&shape).unwrap());
    report.count("m", shape.m);
    Ok(report)
}

pub fn run_padic_chabauty(curve: &str, terms: Option<usize>) -> Result<StatReport, CliError> {
    let coeffs = parse_coeffs(curve)?;
    let curve = curve_from_coeffs(coeffs)?;
    let mut report = StatReport::new("padic-chabauty");
    report.param("n", curve.genus());
    report.param(
        "curve",
        curve
            .coefficients()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>(),
    );
    match chabauty_bound_at_3(&curve, terms) {
        Ok(rep) => {
            report.count("applicable", true);
            report.count("bound", rep.bound);
            report.count("unit_condition_certified", rep.unit_condition_certified);
            report.count("assumes_rank_le_1", rep.assumes_rank_le_1);
            report.rows = rep
                .differentials
                .iter()
                .map(|d| serde_json::to_value(d).unwrap())
                .collect();
        }
        Err(PadicError::FilterNotPassed) => {
            report.count("applicable", false);
            report.count("reason", "mod-3 filter not passed");
        }
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}

pub fn run_descent_orbit(
    curve: &str,
    points: &str,
    p: u64,
    prec: usize,
) -> Result<StatReport, CliError> {
    let coeffs = parse_coeffs(curve)?;
    let curve = curve_from_coeffs(coeffs)?;
    let f = curve.poly();
    let pts = parse_points(points)?;
    let divisor = mumford_from_points(&pts, &f)?;
    let alpha = delta_class(&divisor, &f);
    let orbit = integral_orbit_zp(&f, &divisor, p, prec)?;
    let mut report = StatReport::new("descent-orbit");
    report
        .param("n", curve.genus())
        .param("p", p)
        .param("prec", prec);
    report.count("b_mod_pk", orbit.b.to_dec_strings());
    report.count("invariants_ok", orbit.invariants_ok);
    let cert = orbit.gram.certificate(&alpha, &f);
    report.rows.push(serde_json::to_value(&cert).unwrap());
    Ok(report)
}

#[derive(serde::Deserialize)]
struct BatchEntry {
    n: usize,
    c: Vec<serde_json::Value>,
    points: Vec<Vec<serde_json::Value>>,
}

fn value_to_bigint(v: &serde_json::Value) -> Result<BigInt, CliError> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| CliError::validation("non-integer number in batch file")),
        serde_json::Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| CliError::validation(format!("bad integer string: {:?}", s))),
        _ => Err(CliError::validation("expected integer or string")),
    }
}

pub fn run_descent_batch(file: &Path, primes: &str, prec: usize) -> Result<StatReport, CliError> {
    let text = std::fs::read_to_string(file)?;
    let entries: Vec<BatchEntry> = serde_json::from_str(&text)
        .map_err(|e| CliError::validation(format!("malformed point file: {}", e)))?;
    let primes: Vec<u64> = primes
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| CliError::validation("bad prime list"))
        })
        .collect::<Result<_, _>>()?;
    let mut report = StatReport::new("descent-batch");
    report.param("file", file.display().to_string());
    report.param("primes", &primes);
    report.param("prec", prec);
    let mut ok = 0usize;
    let mut failures: std::collections::BTreeMap<&'static str, usize> =
        std::collections::BTreeMap::new();
    for entry in &entries {
        let run = || -> Result<serde_json::Value, DescentError> {
            let c: Vec<BigInt> = entry
                .c
                .iter()
                .map(|v| value_to_bigint(v).map_err(|_| DescentError::NonIntegralR))
                .collect::<Result<_, _>>()?;
            let curve = HyperCurve::new(entry.n, c).map_err(|_| DescentError::TooManyPoints)?;
            let f = curve.poly();
            let pts: Vec<(BigInt, BigInt)> = entry
                .points
                .iter()
                .map(|pair| {
                    if pair.len() != 2 {
                        return Err(DescentError::RepeatedX);
                    }
                    Ok((
                        value_to_bigint(&pair[0]).map_err(|_| DescentError::RepeatedX)?,
                        value_to_bigint(&pair[1]).map_err(|_| DescentError::RepeatedX)?,
                    ))
                })
                .collect::<Result<_, _>>()?;
            let divisor = mumford_from_points(&pts, &f)?;
            let alpha = delta_class(&divisor, &f);
            let ideal = ideal_from_divisor(&divisor, &f)?;
            let pair = gram_pair(&ideal, &alpha, &f)?;
            let cert = pair.certificate(&alpha, &f);
            let mut normalized = Vec::new();
            for &p in &primes {
                let orbit = integral_orbit_zp(&f, &divisor, p, prec)?;
                normalized.push(json!({"p": p, "invariants_ok": orbit.invariants_ok}));
            }
            Ok(json!({
                "n": entry.n,
                "certificate": serde_json::to_value(&cert).unwrap(),
                "gm_symmetric": pair.gm_symmetric(),
                "trace_zero": pair.trace_zero(),
                "normalized": normalized,
            }))
        };
        match run() {
            Ok(row) => {
                ok += 1;
                report.rows.push(row);
            }
            Err(e) => {
                let kind = match &e {
                    DescentError::NonIntegralR => "non_integral_r",
                    DescentError::WeierstrassPoint => "weierstrass_point",
                    DescentError::PointOffCurve { .. } => "point_off_curve",
                    DescentError::Padic(PadicError::EvenPrime) => "p_equals_2",
                    _ => "other",
                };
                *failures.entry(kind).or_default() += 1;
                report.rows.push(json!({"error": e.to_string(), "kind": kind}));
            }
        }
    }
    report.count("entries", entries.len());
    report.count("certificates_ok", ok);
    report.count("failures", serde_json::to_value(&failures).unwrap());
    Ok(report)
}

pub fn run_descent_census(
    curve: &str,
    points: &str,
    p: u64,
    bound: Option<usize>,
) -> Result<StatReport, CliError> {
    let coeffs = parse_coeffs(curve)?;
    let curve = curve_from_coeffs(coeffs)?;
    let f = curve.poly();
    let pts = parse_points(points)?;
    let divisor = mumford_from_points(&pts, &f)?;
    let alpha = delta_class(&divisor, &f);
    let census = local_ideal_census(&f, &alpha, p, bound)?;
    let mut report = StatReport::new("descent-census");
    report.param("p", p).param("n", curve.genus());
    report.count("m_p", census.count);
    for entry in &census.ideals {
        report.rows.push(json!({
            "scale": entry.scale,
            "basis": entry.lattice.basis().to_dec_strings(),
            "stabilizer_order": entry.stabilizer_order,
        }));
    }
    Ok(report)
}

pub fn run_chabauty(n: usize, x: u64, cache_dir: Option<&Path>) -> Result<StatReport, CliError> {
    let curves = curves_with_cache(n, x, cache_dir)?;
    let mut report = StatReport::new("chabauty");
    report.param("n", n).param("x", x);
    // density lower bound delta_n >= 1 - 2/(2^n - 1), an identity in
    // the average-rank bound (assumptions-dependent, derived constants)
    let denom = (BigInt::one() << n) - BigInt::one();
    let delta = BigRational::one() - BigRational::new(BigInt::from(2), denom.clone());
    report.ratio("delta_n_lower_bound", Fraction::from_ratio(&delta));
    // identity check: delta * 1 + (1 - delta) * 2^n = 3 exactly
    let lhs = &delta
        + (BigRational::one() - &delta) * BigRational::from_integer(BigInt::one() << n);
    report.count(
        "rank_average_identity_holds",
        lhs == BigRational::from_integer(BigInt::from(3)),
    );
    report.count("stoll_genus3_point_bound", 15 + 2 * 2);

    let filtered: Vec<&HyperCurve> = curves.iter().filter(|c| c.mod3_chabauty_filter()).collect();
    report.count("curves", curves.len());
    report.count("filter_pass", filtered.len());
    let results: Vec<(bool, Option<usize>, usize)> = filtered
        .par_iter()
        .map(|curve| {
            let rep = chabauty_bound_at_3(curve, None).expect("filter passed");
            let max_strassmann = rep
                .differentials
                .iter()
                .filter_map(|d| d.strassmann)
                .max()
                .unwrap_or(0);
            (rep.unit_condition_certified, rep.bound, max_strassmann)
        })
        .collect();
    let certified = results.iter().filter(|r| r.0).count();
    let all_bounded = results
        .iter()
        .all(|r| r.1.map_or(false, |b| b <= 3) && r.2 <= 3);
    report.count("unit_condition_certified", certified);
    report.count("all_bounds_at_most_3", all_bounded);
    Ok(report)
}

pub fn run_localmass(n: usize, x: u64, cache_dir: Option<&Path>) -> Result<StatReport, CliError> {
    let curves = curves_with_cache(n, x, cache_dir)?;
    let mut report = StatReport::new("localmass");
    report.param("n", n).param("x", x);
    let results: Vec<Result<(Vec<serde_json::Value>, bool), String>> = curves
        .par_iter()
        .map(|curve| match local_mass_ratios(curve) {
            Ok((rows, product)) => {
                let rendered: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|r| {
                        json!({
                            "place": r.place.map_or("infinity".to_string(), |p| p.to_string()),
                            "jmod2j": r.jmod2j.to_string(),
                            "j2": r.j2.to_string(),
                            "ratio": r.ratio.to_string(),
                        })
                    })
                    .collect();
                Ok((rendered, product.is_one()))
            }
            Err(e) => Err(e.to_string()),
        })
        .collect();
    let mut supported = 0usize;
    let mut product_one = 0usize;
    let mut unsupported = 0usize;
    for (curve, result) in curves.iter().zip(&results) {
        match result {
            Ok((rows, is_one)) => {
                supported += 1;
                if *is_one {
                    product_one += 1;
                }
                report.rows.push(json!({
                    "c": curve.coefficients().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    "places": rows,
                    "product_is_one": is_one,
                }));
            }
            Err(msg) => {
                unsupported += 1;
                report.rows.push(json!({
                    "c": curve.coefficients().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    "unsupported": msg,
                }));
            }
        }
    }
    report.count("curves", curves.len());
    report.count("supported", supported);
    report.count("unsupported", unsupported);
    report.count("product_is_one", product_one);
    report.count("product_identity_holds", product_one == supported);
    Ok(report)
}

pub fn run_lemmacheck(n: usize) -> Result<StatReport, CliError> {
    let mut report = StatReport::new("lemmacheck");
    report.param("n", n);
    let weights = weight_identities(n);
    report.count("weights_anti_diagonal", weights.anti_diagonal_is_lambda);
    report.count("weights_above_anti_diagonal", weights.above_anti_diagonal);
    report.count("weights_total_product", weights.total_product_ok);
    if n <= 4 {
        let lemma = combinatorial_lemma_check(n)?;
        report.count("subsets_checked", lemma.subsets_checked);
        report.count("inequality_holds", lemma.inequality_holds);
        report.count(
            "equality_exactly_at_extremes",
            lemma.equality_exactly_at_extremes,
        );
    } else {
        report.count("subsets_checked", 0);
        report.count("note", "combinatorial lemma checked exhaustively for n <= 4 only");
    }
    Ok(report)
}
