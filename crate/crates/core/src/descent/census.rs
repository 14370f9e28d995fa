//! Exhaustive census of the local ideals at an odd prime: all fractional
//! ideals `I` of `R_p = Z_p[x]/(f)` with `beta I <= I`, `I^2 <= alpha R` and
//! `N(I)^2 = N(alpha)` up to the stated index bound, together with the
//! stabilizer orders needed for the mass weighting when the residue
//! factorization is separable.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::fp::{self, Fp, FpPoly};
use crate::algebra::{LatticeBasis, Mat, Poly, PolyQ, PolyZ, Ring, ZMod, QQ, ZZ};
use crate::error::DescentError;
use crate::padic::{hensel_lift_pair, valuation_int, valuation_rat};

use super::AlphaClass;

const CANDIDATE_LIMIT: u128 = 5_000_000;

/// One qualifying ideal: the normalized primitive part, its scaling, and
/// the stabilizer order when computable.
#[derive(Clone, Debug)]
pub struct IdealEntry {
    /// primitive representative `J <= R` in Hermite normal form
    pub lattice: LatticeBasis,
    /// `I = p^scale J`
    pub scale: i64,
    /// order of the stabilizer group `S*[2] with norm 1`, `S = End(I)`;
    /// `None` when the residue factorization is inseparable (the
    /// idempotent construction needs coprime residue factors)
    pub stabilizer_order: Option<u64>,
}

/// Census result: the ideal count `m_p(alpha)` and per-ideal data.
#[derive(Clone, Debug)]
pub struct IdealCensus {
    pub p: u64,
    pub count: usize,
    pub ideals: Vec<IdealEntry>,
}

/// Count the ideals `I_p` with `beta I <= I`, `I^2 <= alpha R_p` and
/// `N(I)^2 = N(alpha) (mod Z_p*^2)`, enumerating Hermite normal forms of
/// index up to `p^index_bound`.
pub fn local_ideal_census(
    f: &PolyZ,
    alpha: &AlphaClass,
    p: u64,
    index_bound: Option<usize>,
) -> Result<IdealCensus, DescentError> {
    if p == 2 {
        return Err(DescentError::Padic(crate::error::PadicError::EvenPrime));
    }
    let d = f.deg();
    let disc = crate::algebra::discriminant(f).map_err(DescentError::Algebra)?;
    if disc.is_zero() {
        return Err(DescentError::Padic(crate::error::PadicError::Inseparable));
    }
    let v_disc = valuation_int(&disc, p).unwrap() as usize;
    let e = index_bound.unwrap_or(v_disc.max(1));
    let fp = Fp::new(p);

    let empty = |p| IdealCensus {
        p,
        count: 0,
        ideals: Vec::new(),
    };
    // norm precondition: N(I)^2 = N(alpha) mod Z_p*^2 forces v_p(N(alpha))
    // even with square unit part; both depend only on alpha
    let norm_val = valuation_int(&alpha.norm, p).unwrap() as usize;
    if norm_val % 2 == 1 {
        return Ok(empty(p));
    }
    let unit_part = &alpha.norm / BigInt::from(p).pow(norm_val as u32);
    if !fp.is_square(fp.reduce_int(&unit_part)) {
        return Ok(empty(p));
    }
    let a = (norm_val / 2) as i64;

    let _q = QQ;
    let fq = f.to_rational();
    let alpha_inv =
        super::inv_mod(&alpha.alpha.to_rational(), &fq).ok_or(DescentError::ContainmentFailed)?;

    let stab_ctx = StabilizerContext::build(f, p, e, d);

    // every ideal is uniquely p^scale * J with J <= R primitive of index
    // p^j; the norm condition pins scale = (a - j)/d per admissible j
    let mut ideals = Vec::new();
    for j in 0..=e {
        let diff = a - j as i64;
        if diff.rem_euclid(d as i64) != 0 {
            continue;
        }
        let scale = diff.div_euclid(d as i64);
        for diag in compositions(j, d) {
            let total = candidate_count(p, &diag);
            if total > CANDIDATE_LIMIT {
                return Err(DescentError::CensusInfeasible(total));
            }
            enumerate_hnf(p, &diag, &mut |basis: &Mat<BigInt>| {
                if j == 0 || basis_is_primitive(basis, p) {
                    let lattice = LatticeBasis::new(basis.clone(), BigInt::one())
                        .expect("nonsingular HNF");
                    if super::is_beta_stable(&lattice, f)
                        && ideal_squared_contained(&lattice, scale, &alpha_inv, &fq, p)
                    {
                        let stabilizer_order =
                            stab_ctx.as_ref().map(|ctx| ctx.stabilizer_order(&lattice));
                        ideals.push(IdealEntry {
                            lattice,
                            scale,
                            stabilizer_order,
                        });
                    }
                }
            });
        }
    }
    Ok(IdealCensus {
        p,
        count: ideals.len(),
        ideals,
    })
}

fn basis_is_primitive(basis: &Mat<BigInt>, p: u64) -> bool {
    let pb = BigInt::from(p);
    (0..basis.rows()).any(|i| basis.row(i).iter().any(|v| !(v % &pb).is_zero()))
}

/// `I^2 <= alpha R` locally at `p` for `I = p^scale J`: every pairwise
/// product `alpha^(-1) b_i b_j p^(2 scale)` must have p-integral
/// coordinates.
fn ideal_squared_contained(
    lattice: &LatticeBasis,
    scale: i64,
    alpha_inv: &PolyQ,
    fq: &PolyQ,
    p: u64,
) -> bool {
    let q = QQ;
    let d = fq.deg();
    let polys: Vec<PolyQ> = (0..d)
        .map(|i| {
            Poly::from_coeffs(
                &q,
                lattice
                    .basis()
                    .row(i)
                    .iter()
                    .map(|c| BigRational::from_integer(c.clone()))
                    .collect(),
            )
        })
        .collect();
    for i in 0..d {
        for j in i..d {
            let prod = polys[i].mul(&q, &polys[j]).mul(&q, alpha_inv);
            let (_, red) = prod.divmod_monic(&q, fq);
            for c in red.coeffs() {
                if valuation_rat(c, p).map_or(false, |v| v + 2 * scale < 0) {
                    return false;
                }
            }
        }
    }
    true
}

/// All ordered tuples of `parts` nonnegative integers summing to `total`.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; parts];
    fn rec(idx: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if idx + 1 == cur.len() {
            cur[idx] = left;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[idx] = v;
            rec(idx + 1, left - v, cur, out);
        }
    }
    if parts == 0 {
        return out;
    }
    rec(0, total, &mut cur, &mut out);
    out
}

fn candidate_count(p: u64, diag: &[usize]) -> u128 {
    let mut total = 1u128;
    for (col, &dk) in diag.iter().enumerate() {
        for _ in 0..col {
            total = total.saturating_mul((p as u128).pow(dk as u32));
        }
    }
    total
}

/// Enumerate all Hermite normal forms with the given diagonal `p^diag`:
/// entries above the diagonal of column `k` range over `[0, p^diag[k])`.
fn enumerate_hnf(p: u64, diag: &[usize], visit: &mut impl FnMut(&Mat<BigInt>)) {
    let d = diag.len();
    let diag_vals: Vec<BigInt> = diag.iter().map(|&e| BigInt::from(p).pow(e as u32)).collect();
    // positions (i, k) with i < k and diag[k] > 0
    let positions: Vec<(usize, usize)> = (0..d)
        .flat_map(|k| (0..k).map(move |i| (i, k)))
        .filter(|&(_, k)| diag[k] > 0)
        .collect();
    let mut mat = Mat::from_fn(d, d, |i, j| {
        if i == j {
            diag_vals[i].clone()
        } else {
            BigInt::zero()
        }
    });
    fn rec(
        pos_idx: usize,
        positions: &[(usize, usize)],
        diag_vals: &[BigInt],
        mat: &mut Mat<BigInt>,
        visit: &mut impl FnMut(&Mat<BigInt>),
    ) {
        if pos_idx == positions.len() {
            visit(mat);
            return;
        }
        let (i, k) = positions[pos_idx];
        let mut v = BigInt::zero();
        while v < diag_vals[k] {
            mat.set(i, k, v.clone());
            rec(pos_idx + 1, positions, diag_vals, mat, visit);
            v += 1;
        }
        mat.set(i, k, BigInt::zero());
    }
    rec(0, &positions, &diag_vals, &mut mat, visit);
}

/// Idempotent-based stabilizer computation, available when the residue
/// factorization of `f` mod p is separable (all local factors unramified).
struct StabilizerContext {
    p: u64,
    precision: usize,
    /// the Hensel-lifted coprime factors of `f` mod `p^precision`
    degrees: Vec<usize>,
    /// idempotents `eps_i` mod `p^precision` as integer polynomials
    idempotents: Vec<PolyZ>,
    f: PolyZ,
}

impl StabilizerContext {
    fn build(f: &PolyZ, p: u64, e: usize, d: usize) -> Option<StabilizerContext> {
        let fp = Fp::new(p);
        let fbar: FpPoly = fp::trim(f.coeffs().iter().map(|c| fp.reduce_int(c)).collect());
        if !fp::is_separable(&fp, &fbar) {
            return None;
        }
        let precision = 2 * e + 2 * d + 6;
        let factors = fp::factor(&fp, &fbar);
        // peel factors one by one with Hensel lifting
        let mut parts: Vec<PolyZ> = Vec::new();
        let ring = ZMod::new(BigInt::from(p).pow(precision as u32));
        let reduce =
            |g: &PolyZ| Poly::from_coeffs(&ZZ, g.coeffs().iter().map(|c| ring.reduce(c)).collect());
        let mut rest_red = reduce(f);
        for (idx, (gbar, mult)) in factors.iter().enumerate() {
            debug_assert_eq!(*mult, 1);
            if idx + 1 == factors.len() {
                parts.push(rest_red.clone());
                break;
            }
            let fp_rest: FpPoly =
                fp::trim(rest_red.coeffs().iter().map(|c| fp.reduce_int(c)).collect());
            let hbar = fp::poly_divrem(&fp, &fp_rest, gbar).0;
            let (g, h) = hensel_lift_pair(&rest_red, gbar, &hbar, p, precision).ok()?;
            parts.push(g);
            rest_red = h;
        }
        // idempotents: eps_i = (f / g_i) * ((f / g_i)^(-1) mod g_i)
        let mut idempotents = Vec::with_capacity(parts.len());
        let f_red = reduce(f);
        for g in &parts {
            let (cofactor, r) = f_red.divmod_monic(&ring, g);
            debug_assert!(r.is_zero());
            let inv = invert_mod_poly(&cofactor, g, p, precision)?;
            let prod = cofactor.mul(&ring, &inv);
            let (_, eps) = prod.divmod_monic(&ring, &f_red);
            idempotents.push(eps);
        }
        Some(StabilizerContext {
            p,
            precision,
            degrees: parts.iter().map(|g| g.deg()).collect(),
            idempotents,
            f: f_red,
        })
    }

    /// Count the involutions `g = sum +-eps_i` with norm 1 stabilizing the
    /// ideal (scaling by powers of `p` does not change stabilization).
    fn stabilizer_order(&self, lattice: &LatticeBasis) -> u64 {
        let ring = ZMod::new(BigInt::from(self.p).pow(self.precision as u32));
        let k = self.idempotents.len();
        let mut count = 0u64;
        for mask in 0u32..(1 << k) {
            // norm: product of (+-1)^deg over factors
            let mut norm_negative = false;
            for i in 0..k {
                if mask >> i & 1 == 1 && self.degrees[i] % 2 == 1 {
                    norm_negative = !norm_negative;
                }
            }
            if norm_negative {
                continue;
            }
            // g = sum_i sign_i eps_i
            let mut g = PolyZ::zero();
            for (i, eps) in self.idempotents.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    g = g.sub(&ring, eps);
                } else {
                    g = g.add(&ring, eps);
                }
            }
            if self.stabilizes(&g, lattice, &ring) {
                count += 1;
            }
        }
        count
    }

    /// Does multiplication by `g` (known mod p^precision) preserve the
    /// lattice p-locally? Verified by exact rational back-substitution: the
    /// solution coordinates must be p-integral, and the precision margin
    /// makes the verdict independent of the unknown tail.
    fn stabilizes(&self, g: &PolyZ, lattice: &LatticeBasis, _ring: &ZMod) -> bool {
        let q = QQ;
        let d = self.f.deg();
        let fq = self.f.to_rational();
        let gq = g.to_rational();
        for i in 0..d {
            let row = lattice.basis().row(i);
            let bi = Poly::from_coeffs(
                &q,
                row.iter().map(|c| BigRational::from_integer(c.clone())).collect(),
            );
            let prod = bi.mul(&q, &gq);
            let (_, red) = prod.divmod_monic(&q, &fq);
            let mut v = vec![BigRational::zero(); d];
            for (j, c) in red.coeffs().iter().enumerate() {
                v[j] = c.clone();
            }
            if !contains_p_locally(lattice, &v, self.p) {
                return false;
            }
        }
        true
    }
}

/// Membership in the p-localization: solving against the HNF basis must
/// produce p-integral coordinates.
pub fn contains_p_locally(lattice: &LatticeBasis, v: &[BigRational], p: u64) -> bool {
    let d = lattice.rank();
    let denom = BigRational::from_integer(lattice.denominator().clone());
    let h = lattice.basis();
    let mut x = vec![BigRational::zero(); d];
    for col in 0..d {
        let mut rhs = v[col].clone();
        for i in 0..col {
            rhs -= &x[i] * BigRational::from_integer(h.at(i, col).clone()) / &denom;
        }
        let pivot = BigRational::from_integer(h.at(col, col).clone()) / &denom;
        x[col] = rhs / pivot;
        if valuation_rat(&x[col], p).map_or(false, |val| val < 0) {
            return false;
        }
    }
    true
}

/// Invert `a` modulo the monic `g` over `Z/p^k`, assuming the residues are
/// coprime mod p, by Newton iteration from the `F_p` inverse.
fn invert_mod_poly(a: &PolyZ, g: &PolyZ, p: u64, k: usize) -> Option<PolyZ> {
    let fp = Fp::new(p);
    let abar: FpPoly = fp::trim(a.coeffs().iter().map(|c| fp.reduce_int(c)).collect());
    let gbar: FpPoly = fp::trim(g.coeffs().iter().map(|c| fp.reduce_int(c)).collect());
    // inverse mod p via extended Euclid over F_p
    let (mut r0, mut r1) = (gbar.clone(), fp::poly_rem(&fp, &abar, &gbar));
    let (mut t0, mut t1): (FpPoly, FpPoly) = (vec![], vec![1]);
    while !fp::poly_is_zero(&r1) {
        let (quo, rem) = fp::poly_divrem(&fp, &r0, &r1);
        let t2 = fp::poly_sub(&fp, &t0, &fp::poly_mul(&fp, &quo, &t1));
        r0 = std::mem::replace(&mut r1, rem);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if fp::deg(&r0) != 0 {
        return None;
    }
    let inv_lead = fp.inv(r0[0]);
    let mut u = Poly::from_coeffs(
        &ZZ,
        fp::poly_scale(&fp, &t0, inv_lead)
            .iter()
            .map(|&c| BigInt::from(c))
            .collect(),
    );
    let mut prec = 1usize;
    while prec < k {
        prec = (2 * prec).min(k);
        let ring = ZMod::new(BigInt::from(p).pow(prec as u32));
        let two = Poly::constant(&ring, ring.from_i64(2));
        let au = a.mul(&ring, &u);
        let (_, au_red) = au.divmod_monic(&ring, g);
        let corr = two.sub(&ring, &au_red);
        let unew = u.mul(&ring, &corr);
        let (_, unew) = unew.divmod_monic(&ring, g);
        u = unew;
    }
    Some(u)
}
