//! Expansions of the regular differentials of `y^2 = f(x)` at the
//! Weierstrass point in the uniformizer `z` with `z^2 = 1/x + O(z^3)`,
//! their formal integrals, Strassmann zero bounds and the 3-adic Chabauty
//! bound for curves whose only `F_3`-point is the point at infinity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::curves::HyperCurve;
use crate::error::PadicError;

use super::{valuation_rat, PadicApprox};

type Series = Vec<BigRational>; // coefficients of z^0..z^N

fn ser_zero(nterms: usize) -> Series {
    vec![BigRational::zero(); nterms + 1]
}

fn ser_one(nterms: usize) -> Series {
    let mut s = ser_zero(nterms);
    s[0] = BigRational::one();
    s
}

fn ser_mul(a: &Series, b: &Series) -> Series {
    let n = a.len() - 1;
    let mut out = ser_zero(n);
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if i + j > n {
                break;
            }
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

fn ser_pow(a: &Series, e: usize) -> Series {
    let n = a.len() - 1;
    let mut acc = ser_one(n);
    for _ in 0..e {
        acc = ser_mul(&acc, a);
    }
    acc
}

/// Inverse of a series with constant term 1.
fn ser_inv(a: &Series) -> Series {
    let n = a.len() - 1;
    debug_assert!(a[0].is_one());
    let mut inv = ser_zero(n);
    inv[0] = BigRational::one();
    for k in 1..=n {
        let mut acc = BigRational::zero();
        for j in 1..=k {
            if !a[j].is_zero() {
                acc += &a[j] * &inv[k - j];
            }
        }
        inv[k] = -acc;
    }
    inv
}

/// The unit series `U = 1 + sum u_k z^k` with `x = U / z^2` on the curve,
/// solved coefficient by coefficient from
/// `U^(2n) = U^(2n+1) + sum_m c_m z^(2m) U^(2n+1-m)`.
fn curve_unit_series(curve: &HyperCurve, nterms: usize) -> Series {
    let mut u = ser_one(nterms);
    for k in 1..=nterms {
        let defect = relation_defect(curve, &u, nterms);
        // the coefficient of u_k in the defect at order k is +1
        u[k] = -defect[k].clone();
        debug_assert!(k % 2 == 0 || u[k].is_zero(), "odd coefficients vanish");
    }
    debug_assert!(
        relation_defect(curve, &u, nterms).iter().all(|c| c.is_zero()),
        "curve relation satisfied to truncation"
    );
    u
}

/// `U^(2n+1) - U^(2n) + sum_m c_m z^(2m) U^(2n+1-m)`, which vanishes
/// exactly when `y^2 = f(x)` holds for the parametrization.
fn relation_defect(curve: &HyperCurve, u: &Series, nterms: usize) -> Series {
    let n = curve.genus();
    let d = 2 * n + 1;
    let mut powers: Vec<Series> = Vec::with_capacity(d + 1);
    powers.push(ser_one(nterms));
    for _ in 1..=d {
        let last = powers.last().unwrap();
        powers.push(ser_mul(last, u));
    }
    let mut defect = powers[d].clone();
    for (k, c) in defect.iter_mut().zip(&powers[d - 1]) {
        *k -= c;
    }
    for m in 2..=d {
        let cm = BigRational::from_integer(curve.coefficient(m).clone());
        if cm.is_zero() {
            continue;
        }
        let shift = 2 * m;
        if shift > nterms {
            continue;
        }
        for j in 0..=(nterms - shift) {
            let add = &cm * &powers[d - m][j];
            defect[shift + j] += add;
        }
    }
    defect
}

/// Expansion of the regular differential `x^i dx / (2y)` at the Weierstrass
/// point, in the local parameter `-x^n/y` (the sign normalizes the leading
/// coefficient to +1): `omega = (a_0 + a_2 z^2 + ...) dz` with all odd
/// coefficients zero, together with the termwise formal integral
/// `a_0 z + (a_2/3) z^3 + ...`.
#[derive(Clone, Debug)]
pub struct OmegaExpansion {
    pub i: usize,
    /// coefficient of `z^j` in `omega/dz`, `j = 0..=nterms`
    pub coeffs: Vec<BigRational>,
    /// coefficient of `z^j` in the formal integral, `j = 0..=nterms+1`
    pub integral: Vec<BigRational>,
}

pub fn omega_expansion(
    curve: &HyperCurve,
    i: usize,
    nterms: usize,
) -> Result<OmegaExpansion, PadicError> {
    let n = curve.genus();
    assert!(i < n, "differential index 0 <= i <= n-1");
    if curve.discriminant().is_zero() {
        return Err(PadicError::Inseparable);
    }
    // need headroom for the z^(2(n-1-i)) shift
    let shift = 2 * (n - 1 - i);
    if nterms < shift + 2 {
        // too short to certify a unit among a_0, a_2
        return Err(PadicError::TruncationTooShort);
    }
    let work = nterms + shift;
    let u = curve_unit_series(curve, work);
    // omega_i / dz = z^shift * (-2U + zU') * U^(i-n) / 2, then negated
    let mut zdu = ser_zero(work);
    for k in 1..=work {
        zdu[k] = &u[k] * BigRational::from_integer(BigInt::from(k as i64));
    }
    let mut numer = ser_zero(work);
    for k in 0..=work {
        numer[k] = &zdu[k] - &u[k] * BigRational::from_integer(BigInt::from(2));
    }
    let u_inv_pow = ser_pow(&ser_inv(&u), n - i);
    let v = ser_mul(&numer, &u_inv_pow);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    // negate and halve, with the z^(2(n-1-i)) prefactor shifting indices up
    let mut coeffs = vec![BigRational::zero(); nterms + 1];
    for j in shift..=nterms {
        coeffs[j] = -&v[j - shift] * &half;
    }
    debug_assert!(coeffs[shift].is_one(), "leading coefficient normalized");
    for (j, c) in coeffs.iter().enumerate() {
        if j % 2 == 1 && !c.is_zero() {
            return Err(PadicError::TruncationTooShort);
        }
    }
    let mut integral = vec![BigRational::zero(); nterms + 2];
    for (j, c) in coeffs.iter().enumerate() {
        integral[j + 1] = c / BigRational::from_integer(BigInt::from(j as i64 + 1));
    }
    Ok(OmegaExpansion {
        i,
        coeffs,
        integral,
    })
}

/// What is known about the coefficients beyond the truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailBound {
    /// The series is the termwise antiderivative of a p-integral series:
    /// the coefficient of `z^j` has valuation at least `-v_p(j)`.
    IntegralPrimitive,
    /// The caller asserts the truncated tail cannot attain the minimum.
    AssumeDominated,
}

/// Strassmann bound for the zeros of `F` on the disc `p Z_p`: substitute
/// `z = p t`, drop the content, and return the largest index attaining the
/// minimal valuation among the coefficients. With `TailBound::IntegralPrimitive`
/// the dominance of the dropped tail is verified, not assumed.
pub fn strassmann_zero_count(
    series: &[PadicApprox],
    tail: TailBound,
) -> Result<usize, PadicError> {
    let p = series
        .first()
        .ok_or(PadicError::NoUnitCoefficient)?
        .p;
    let mut min_val: Option<i64> = None;
    let mut arg = 0usize;
    for (j, c) in series.iter().enumerate() {
        debug_assert_eq!(c.p, p);
        if let Some(v) = c.valuation {
            let shifted = v + j as i64;
            if min_val.map_or(true, |m| shifted <= m) {
                if min_val == Some(shifted) {
                    arg = arg.max(j);
                } else if min_val.map_or(true, |m| shifted < m) {
                    min_val = Some(shifted);
                    arg = j;
                }
            }
        }
    }
    let v_star = min_val.ok_or(PadicError::NoUnitCoefficient)?;
    match tail {
        TailBound::AssumeDominated => {}
        TailBound::IntegralPrimitive => {
            // for j beyond the truncation, val(c_j) >= j - v_p(j) >= j - log_p(j)
            let t1 = series.len() as i64;
            let mut log = 0i64;
            let mut power = 1i64;
            while power <= t1 {
                power = power.saturating_mul(p as i64);
                if power <= t1 {
                    log += 1;
                }
            }
            if t1 - log <= v_star {
                return Err(PadicError::TruncationTooShort);
            }
        }
    }
    Ok(arg)
}

/// Per-differential data in a Chabauty report.
#[derive(Clone, Debug, Serialize)]
pub struct DifferentialBound {
    pub i: usize,
    pub a0_valuation: Option<i64>,
    pub a2_valuation: Option<i64>,
    /// Strassmann zero bound of the formal integral on `3 Z_3`, when the
    /// unit condition `a_0 or a_2 a unit` holds for this differential.
    pub strassmann: Option<usize>,
}

/// The 3-adic Chabauty bound report for a curve passing the mod-3 filter.
#[derive(Clone, Debug, Serialize)]
pub struct ChabautyReport {
    pub n: usize,
    pub differentials: Vec<DifferentialBound>,
    /// The certificate that every integral differential whose reduction has
    /// at most a double zero at infinity has `a_0` or `a_2` a 3-adic unit.
    pub unit_condition_certified: bool,
    /// `Some(3)` when the unit condition is certified: the zero bound for
    /// the formal integral of the (unknown) annihilating differential.
    pub bound: Option<usize>,
    /// The bound is conditional on the Mordell-Weil rank being at most 1;
    /// this is an input hypothesis, never inferred.
    pub assumes_rank_le_1: bool,
}

pub fn chabauty_bound_at_3(
    curve: &HyperCurve,
    nterms: Option<usize>,
) -> Result<ChabautyReport, PadicError> {
    if !curve.mod3_chabauty_filter() {
        return Err(PadicError::FilterNotPassed);
    }
    let n = curve.genus();
    let nterms = nterms.unwrap_or(4 * n + 10);
    if nterms < 2 * n + 2 {
        return Err(PadicError::TruncationTooShort);
    }
    let mut rows = Vec::with_capacity(n);
    let mut a0_ok = false;
    let mut a2_ok = n == 1;
    for i in 0..n {
        let omega = omega_expansion(curve, i, nterms)?;
        // integrality at 3: the expansion coefficients lie in Z[c][1/2]
        for c in &omega.coeffs {
            if valuation_rat(c, 3).map_or(false, |v| v < 0) {
                return Err(PadicError::TruncationTooShort);
            }
        }
        let a0v = valuation_rat(&omega.coeffs[0], 3);
        let a2v = valuation_rat(&omega.coeffs[2], 3);
        let unit_here = a0v == Some(0) || a2v == Some(0);
        let strassmann = if unit_here {
            let approx: Vec<PadicApprox> = omega
                .integral
                .iter()
                .map(|c| PadicApprox::from_rational(c, 3, 24))
                .collect();
            Some(strassmann_zero_count(&approx, TailBound::IntegralPrimitive)?)
        } else {
            None
        };
        if i == n - 1 && a0v == Some(0) {
            a0_ok = true;
        }
        if n >= 2 && i == n - 2 && a2v == Some(0) {
            a2_ok = true;
        }
        rows.push(DifferentialBound {
            i,
            a0_valuation: a0v,
            a2_valuation: a2v,
            strassmann,
        });
    }
    let certified = a0_ok && a2_ok;
    Ok(ChabautyReport {
        n,
        differentials: rows,
        unit_condition_certified: certified,
        bound: certified.then_some(3),
        assumes_rank_le_1: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::HyperCurve;

    #[test]
    fn unit_series_satisfies_relation() {
        for (n, c) in [(1usize, vec![0i64, 1]), (1, vec![2, 2]), (2, vec![1, -1, 0, 2])] {
            let curve = HyperCurve::from_i64(n, &c).unwrap();
            let u = curve_unit_series(&curve, 20);
            assert!(relation_defect(&curve, &u, 20).iter().all(|x| x.is_zero()));
            for (k, v) in u.iter().enumerate() {
                if k % 2 == 1 {
                    assert!(v.is_zero(), "odd coefficient at {}", k);
                }
            }
        }
    }

    #[test]
    fn omega_leading_coefficients() {
        // n=1, y^2 = x^3 + 1, i=0: a_0 = 1 and odd coefficients vanish
        let curve = HyperCurve::from_i64(1, &[0, 1]).unwrap();
        let omega = omega_expansion(&curve, 0, 20).unwrap();
        assert!(omega.coeffs[0].is_one());
        for (j, c) in omega.coeffs.iter().enumerate() {
            if j % 2 == 1 {
                assert!(c.is_zero());
            }
        }
        // n=2: both differentials have even expansions; omega_0 starts at z^2
        let curve = HyperCurve::from_i64(2, &[1, 1, 1, 1]).unwrap();
        for i in 0..2 {
            let omega = omega_expansion(&curve, i, 20).unwrap();
            for (j, c) in omega.coeffs.iter().enumerate() {
                if j % 2 == 1 {
                    assert!(c.is_zero());
                }
            }
            if i == 0 {
                assert!(omega.coeffs[0].is_zero());
                assert!(omega.coeffs[2].is_one());
            } else {
                assert!(omega.coeffs[0].is_one());
            }
        }
    }

    #[test]
    fn strassmann_examples() {
        // F(z) = z at p = 3: one zero
        let f = [
            PadicApprox::zero(3, 8),
            PadicApprox::from_rational(&BigRational::one(), 3, 8),
        ];
        assert_eq!(
            strassmann_zero_count(&f, TailBound::AssumeDominated).unwrap(),
            1
        );
        // F(z) = 3z + (1/3) z^3: bound 3
        let f = [
            PadicApprox::zero(3, 8),
            PadicApprox::from_rational(&BigRational::from_integer(BigInt::from(3)), 3, 8),
            PadicApprox::zero(3, 8),
            PadicApprox::from_rational(&BigRational::new(BigInt::one(), BigInt::from(3)), 3, 8),
        ];
        assert_eq!(
            strassmann_zero_count(&f, TailBound::AssumeDominated).unwrap(),
            3
        );
        // all-zero series: no unit coefficient
        let f = [PadicApprox::zero(3, 8)];
        assert!(matches!(
            strassmann_zero_count(&f, TailBound::AssumeDominated),
            Err(PadicError::NoUnitCoefficient)
        ));
    }

    #[test]
    fn chabauty_example_curves() {
        // y^2 = x^3 + 2x + 2 passes the filter
        let curve = HyperCurve::from_i64(1, &[2, 2]).unwrap();
        let report = chabauty_bound_at_3(&curve, None).unwrap();
        assert!(report.unit_condition_certified);
        assert_eq!(report.bound, Some(3));
        assert!(report.assumes_rank_le_1);
        for d in &report.differentials {
            if let Some(s) = d.strassmann {
                assert!(s <= 3);
            }
        }
        // (0,1) fails the filter
        let curve = HyperCurve::from_i64(1, &[0, 1]).unwrap();
        assert!(matches!(
            chabauty_bound_at_3(&curve, None),
            Err(PadicError::FilterNotPassed)
        ));
    }
}
