//! Imaginary quadratic fields, the quaternion algebra of a form, covolumes
//! of arithmetic Kleinian groups, and the log10 index bounds built from
//! them.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{factorize, factorize_u64, is_prime_u64, kronecker_i64, squarefree_part};
use crate::qform::{hilbert_symbol, DiagForm, Place};
use crate::Error;

/// Catalan's constant `Σ (−1)ⁿ/(2n+1)²`.
pub const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932_384_110_774;

/// `2⁷·3⁴·5`, the number of simplices in the right-angled polytope.
pub const POLYTOPE_INDEX: f64 = 51840.0;

#[derive(Clone, Debug, PartialEq)]
pub struct ImagQuadField {
    /// Squarefree `d > 0` with the field `Q(√−d)`.
    pub d: u64,
    pub disc: i64,
    pub d_k: u64,
    pub h_k: u64,
    pub omega_dk: u32,
    pub zeta2: f64,
}

impl ImagQuadField {
    pub fn new(d: u64) -> Result<Self, Error> {
        if d == 0 || factorize_u64(d).factors().iter().any(|(_, e)| *e > 1) {
            return Err(Error::input("d must be a positive squarefree integer"));
        }
        let disc = if d % 4 == 3 {
            -(d as i64)
        } else {
            -4 * d as i64
        };
        let d_k = disc.unsigned_abs();
        let mut k = ImagQuadField {
            d,
            disc,
            d_k,
            h_k: class_number(disc)?,
            omega_dk: factorize_u64(d_k).factors().len() as u32,
            zeta2: 0.0,
        };
        k.zeta2 = zeta_k_2(&k, 1e-12)?;
        Ok(k)
    }
}

fn positive_coeffs(q: &DiagForm) -> Result<[BigInt; 4], Error> {
    let c = q.coeffs();
    if q.rank() != 4 || !q.is_integral() {
        return Err(Error::input("expected an integral form <z1,z2,z3,-z4>"));
    }
    let z: Vec<BigInt> = c.iter().map(|x| x.to_integer()).collect();
    if z[..3].iter().any(|x| !x.is_positive()) || !z[3].is_negative() {
        return Err(Error::input("expected the sign pattern <+,+,+,->"));
    }
    Ok([z[0].clone(), z[1].clone(), z[2].clone(), -z[3].clone()])
}

fn squarefree_int(n: &BigInt) -> BigInt {
    squarefree_part(&crate::arith::big(n)).expect("nonzero").0
}

/// `d = z₁z₂z₃z₄` and the field `Q(√−d)` built on its squarefree part.
pub fn field_from_form(q: &DiagForm) -> Result<(BigInt, ImagQuadField), Error> {
    let z = positive_coeffs(q)?;
    let d_raw: BigInt = z.iter().product();
    let d = squarefree_int(&d_raw)
        .to_u64()
        .ok_or_else(|| Error::input("discriminant too large for field computations"))?;
    Ok((d_raw, ImagQuadField::new(d)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

pub fn splitting_type(k: &ImagQuadField, p: u64) -> Splitting {
    if k.d_k % p == 0 {
        Splitting::Ramified
    } else if kronecker_i64(k.disc, p as i64) == 1 {
        Splitting::Split
    } else {
        Splitting::Inert
    }
}

/// Number of reduced primitive forms `ax² + bxy + cy²` of discriminant
/// `disc < 0`.
pub fn class_number(disc: i64) -> Result<u64, Error> {
    if disc >= 0 || disc.rem_euclid(4) > 1 {
        return Err(Error::input(
            "discriminant must be negative and 0 or 1 mod 4",
        ));
    }
    let n = -disc;
    let mut h = 0;
    let mut a = 1i64;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    Ok(h)
}

/// `ζ_k(2) = ζ(2)·L(2, χ_disc)`, the character sum truncated once the
/// tail bound `d_k/N²` is below `tol`.
pub fn zeta_k_2(k: &ImagQuadField, tol: f64) -> Result<f64, Error> {
    if !(tol > 0.0) {
        return Err(Error::input("tolerance must be positive"));
    }
    let period = k.d_k as usize;
    let chi: Vec<i8> = (0..period)
        .map(|n| kronecker_i64(k.disc, n as i64))
        .collect();
    let n_max = libm::ceil(libm::sqrt(k.d_k as f64 / tol)) as u64;
    let mut l = 0.0;
    for n in (1..=n_max).rev() {
        let c = chi[(n % k.d_k) as usize];
        if c != 0 {
            let nf = n as f64;
            l += c as f64 / (nf * nf);
        }
    }
    Ok(PI * PI / 6.0 * l)
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuatAlgebra {
    pub a: BigInt,
    pub b: BigInt,
    pub field: ImagQuadField,
    /// Rational primes below the finite ramification, with the number of
    /// ramified primes over each and their norm.
    pub ram_f: Vec<(u64, u32, u64)>,
    pub r_f: u32,
    /// Set when the ramification was supplied instead of computed.
    pub overridden: bool,
}

impl QuatAlgebra {
    pub fn ram_norms(&self) -> Vec<u64> {
        self.ram_f
            .iter()
            .flat_map(|&(_, count, norm)| core::iter::repeat(norm).take(count as usize))
            .collect()
    }

    /// Replace the computed ramification by `norms` (one entry per prime).
    pub fn with_ramification(mut self, norms: &[u64]) -> Self {
        self.ram_f = norms.iter().map(|&n| (n, 1, n)).collect();
        self.r_f = norms.len() as u32;
        self.overridden = true;
        self
    }
}

/// `(z₃z₄, z₂z₄)` reduced mod squares, over [`field_from_form`].
pub fn quaternion_from_form(q: &DiagForm) -> Result<QuatAlgebra, Error> {
    let z = positive_coeffs(q)?;
    let (_, field) = field_from_form(q)?;
    let a = squarefree_int(&(&z[2] * &z[3]));
    let b = squarefree_int(&(&z[1] * &z[3]));
    ramified_primes(&a, &b, field)
}

/// A rational quaternion algebra ramified at `p` stays ramified at both
/// primes over a split `p` and splits over inert and ramified `p`.
pub fn ramified_primes(a: &BigInt, b: &BigInt, field: ImagQuadField) -> Result<QuatAlgebra, Error> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::input("quaternion parameters must be nonzero"));
    }
    let mut primes: Vec<u64> = vec![2];
    for n in [a, b] {
        for p in factorize(n.magnitude()).primes() {
            let p = p.to_u64().ok_or_else(|| Error::input("prime too large"))?;
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    primes.sort_unstable();
    let (ra, rb) = (crate::arith::big(a), crate::arith::big(b));
    let mut ram_f = Vec::new();
    for p in primes {
        if hilbert_symbol(&ra, &rb, Place::Prime(p))? == -1
            && splitting_type(&field, p) == Splitting::Split
        {
            ram_f.push((p, 2, p));
        }
    }
    let r_f = ram_f.iter().map(|r| r.1).sum();
    Ok(QuatAlgebra {
        a: a.clone(),
        b: b.clone(),
        field,
        ram_f,
        r_f,
        overridden: false,
    })
}

/// `14.5 + 2^{1/ε + 7}`.
pub fn c_prime_eps(eps: f64) -> f64 {
    14.5 + libm::pow(2.0, 1.0 / eps + 7.0)
}

fn check_eps(eps: f64) -> Result<(), Error> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Error::input("epsilon must be positive"))
    }
}

/// `log10(2^{εC'_ε + 2} · 11² · d_k^{3/2})`.
pub fn c1_eps_log10(k: &ImagQuadField, eps: f64) -> Result<f64, Error> {
    check_eps(eps)?;
    Ok((eps * c_prime_eps(eps) + 2.0) * libm::log10(2.0)
        + libm::log10(121.0)
        + 1.5 * libm::log10(k.d_k as f64))
}

/// `log10(2^{εC'_ε + 2} · 11² · d_k^{A₁ω(d_k) + 3/2})`.
pub fn c_eps_log10(k: &ImagQuadField, eps: f64, a1: f64) -> Result<f64, Error> {
    if !(a1 >= 0.0) {
        return Err(Error::input("A1 must be non-negative"));
    }
    Ok(c1_eps_log10(k, eps)? + a1 * k.omega_dk as f64 * libm::log10(k.d_k as f64))
}

/// `log10` of the bound on the maximal-order index: `0` for type number
/// one, otherwise `d_k^{ω(d_k)·A₁}`.
pub fn c2_log10(k: &ImagQuadField, a1: f64, type_number_one: bool) -> f64 {
    if type_number_one {
        0.0
    } else {
        a1 * k.omega_dk as f64 * libm::log10(k.d_k as f64)
    }
}

fn covolume_base(k: &ImagQuadField) -> f64 {
    libm::pow(k.d_k as f64, 1.5) * k.zeta2 / (4.0 * PI * PI)
}

/// Covolume of the norm-one group of an Eichler order with the given level
/// (prime norm, exponent).
pub fn eichler_covolume(k: &ImagQuadField, ram_norms: &[u64], level: &[(u64, u32)]) -> f64 {
    let ram: f64 = ram_norms.iter().map(|&n| n as f64 - 1.0).product();
    let lev: f64 = level
        .iter()
        .map(|&(n, e)| libm::pow(n as f64, e as f64 - 1.0) * (n as f64 + 1.0))
        .product();
    covolume_base(k) * ram * lev
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovolumeParams {
    pub s_norms: Vec<u64>,
    pub m: u32,
    pub deg_ka: u32,
}

impl CovolumeParams {
    /// `m = |S|` and `[k_A : k] = 1`.
    pub fn new(s_norms: Vec<u64>) -> Self {
        let m = s_norms.len() as u32;
        CovolumeParams {
            s_norms,
            m,
            deg_ka: 1,
        }
    }

    pub fn validate(&self, k: &ImagQuadField) -> Result<(), Error> {
        if self.m as usize > self.s_norms.len() {
            return Err(Error::input("m must not exceed |S|"));
        }
        if self.deg_ka == 0 || u64::from(self.deg_ka) > k.h_k {
            return Err(Error::input(
                "[k_A:k] must lie between 1 and the class number",
            ));
        }
        Ok(())
    }
}

/// Covolume of the normalizer of a maximal order:
/// `d_k^{3/2}ζ_k(2)/(8π²[k_A:k]2^m) · ∏_Ram (N−1)/2 · ∏_S (N+1)`.
pub fn maximal_covolume(
    k: &ImagQuadField,
    ram_norms: &[u64],
    params: &CovolumeParams,
) -> Result<f64, Error> {
    params.validate(k)?;
    let ram: f64 = ram_norms.iter().map(|&n| (n as f64 - 1.0) / 2.0).product();
    let s: f64 = params.s_norms.iter().map(|&n| n as f64 + 1.0).product();
    Ok(covolume_base(k) / (2.0 * params.deg_ka as f64 * libm::pow(2.0, params.m as f64)) * ram * s)
}

/// Norms of the primes of `k` up to `limit`, ascending, one entry per
/// prime ideal.
pub fn prime_norms(k: &ImagQuadField, limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for p in (2..=limit).filter(|&p| is_prime_u64(p)) {
        match splitting_type(k, p) {
            Splitting::Split => out.extend([p, p]),
            Splitting::Ramified => out.push(p),
            Splitting::Inert => {
                if let Some(n) = p.checked_mul(p).filter(|&n| n <= limit) {
                    out.push(n);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Coefficient of `V^ε` when the primes with `((N+1)/2)^ε < 2` are
/// counted separately.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsCoefficient {
    pub eps: f64,
    /// Primes outside the ramification with `(N+1)/2 < 2^{1/ε}`.
    pub small: Vec<u64>,
    pub exact: f64,
    /// Smallest power of two `≥ exact`.
    pub rounded: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SharpS {
    /// Largest `|S|` allowed by `maximal covolume ≤ V`.
    pub max_s: u32,
    /// The norms realizing it.
    pub chosen: Vec<u64>,
    /// `2^{|S| + r_f + 1}·[k_A:k]`.
    pub coefficient: f64,
    pub eps_mode: Option<EpsCoefficient>,
}

const NORM_SEARCH_LIMIT: u64 = 20_000_000;

fn candidate_norms(
    k: &ImagQuadField,
    ram_norms: &[u64],
    needed: impl Fn(u64) -> bool,
) -> Result<Vec<u64>, Error> {
    let mut limit = 64;
    loop {
        let mut norms = prime_norms(k, limit);
        for r in ram_norms {
            if let Some(i) = norms.iter().position(|n| n == r) {
                norms.remove(i);
            }
        }
        if !needed(limit) {
            return Ok(norms);
        }
        if limit >= NORM_SEARCH_LIMIT {
            return Err(Error::input("volume too large for prime-norm enumeration"));
        }
        limit *= 4;
    }
}

/// Largest `|S|` (disjoint from the ramification) compatible with
/// `maximal covolume ≤ V`, taking `m = |S|`, and the resulting index
/// coefficient. With `eps`, also the coefficient of `V^ε`.
pub fn sharp_s_enumeration(
    k: &ImagQuadField,
    ram_norms: &[u64],
    v: f64,
    deg_ka: u32,
    eps: Option<f64>,
) -> Result<SharpS, Error> {
    if !(v > 0.0) {
        return Err(Error::input("volume must be positive"));
    }
    if deg_ka == 0 || u64::from(deg_ka) > k.h_k {
        return Err(Error::input(
            "[k_A:k] must lie between 1 and the class number",
        ));
    }
    let r_f = ram_norms.len() as u32;
    let ram: f64 = ram_norms.iter().map(|&n| (n as f64 - 1.0) / 2.0).product();
    // with m = |S| each prime of S contributes (N+1)/2
    let base = covolume_base(k) / (2.0 * deg_ka as f64) * ram;
    let ratio = v / base;
    let norms = candidate_norms(k, ram_norms, |limit| ((limit as f64) + 1.0) / 2.0 <= ratio)?;
    let mut prod = 1.0;
    let mut chosen = Vec::new();
    for &n in &norms {
        let f = (n as f64 + 1.0) / 2.0;
        if prod * f > ratio {
            break;
        }
        prod *= f;
        chosen.push(n);
    }
    let max_s = chosen.len() as u32;
    let coefficient = libm::pow(2.0, (max_s + r_f + 1) as f64) * deg_ka as f64;

    let eps_mode = match eps {
        None => None,
        Some(e) => {
            check_eps(e)?;
            let t = libm::pow(2.0, 1.0 / e);
            let small_norms =
                candidate_norms(k, ram_norms, |limit| ((limit as f64) + 1.0) / 2.0 < t)?;
            let small: Vec<u64> = small_norms
                .into_iter()
                .filter(|&n| (n as f64 + 1.0) / 2.0 < t)
                .collect();
            let p_j: f64 = small.iter().map(|&n| (n as f64 + 1.0) / 2.0).product();
            let exact = libm::pow(2.0, (r_f + 1 + small.len() as u32) as f64)
                * deg_ka as f64
                * libm::pow(base * p_j, -e);
            let rounded = libm::pow(2.0, libm::ceil(libm::log2(exact) - 1e-9));
            Some(EpsCoefficient {
                eps: e,
                small,
                exact,
                rounded,
            })
        }
    };
    Ok(SharpS {
        max_s,
        chosen,
        coefficient,
        eps_mode,
    })
}

/// `ε·C'_ε + ε·log₂ V`, the generic bound on `r_f + |S|`.
pub fn generic_s_rf_bound(eps: f64, v: f64) -> Result<f64, Error> {
    check_eps(eps)?;
    if !(v > 0.0) {
        return Err(Error::input("volume must be positive"));
    }
    Ok(eps * c_prime_eps(eps) + eps * libm::log(v) / LN_2)
}

/// `log10(120 · C_ε · V^ε)` for groups commensurable with a Bianchi group.
pub fn bianchi_special_index_log10(d: u64, eps: f64, v: f64, a1: f64) -> Result<f64, Error> {
    if !(v > 0.0) {
        return Err(Error::input("volume must be positive"));
    }
    let k = ImagQuadField::new(d)?;
    Ok(libm::log10(120.0) + c_eps_log10(&k, eps, a1)? + eps * libm::log10(v))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TotalIndex {
    /// `log10(C_ε · D · V^ε)`, the index of the special subgroup.
    pub special_log10: f64,
    /// `log10(2⁷3⁴5 · C_ε · D · V^ε)`, the degree of the immersing cover.
    pub cover_log10: f64,
}

/// Combine `log10 C_ε`, `log10 D` and `V^ε`.
pub fn total_index_bound(
    log10_c: f64,
    log10_d: f64,
    eps: f64,
    v: f64,
) -> Result<TotalIndex, Error> {
    check_eps(eps)?;
    if !(v > 0.0) {
        return Err(Error::input("volume must be positive"));
    }
    let special_log10 = log10_c + log10_d + eps * libm::log10(v);
    Ok(TotalIndex {
        special_log10,
        cover_log10: special_log10 + libm::log10(POLYTOPE_INDEX),
    })
}
