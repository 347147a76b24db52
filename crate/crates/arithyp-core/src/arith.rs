//! Integers, rationals and the elementary number theory everything else
//! leans on.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator (`0` is stored as `0/1`).
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Prime factorization as strictly increasing `(prime, exponent)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn product(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    /// Product of the primes carrying an odd exponent.
    pub fn odd_part_kernel(&self) -> BigUint {
        self.factors
            .iter()
            .filter(|(_, e)| e % 2 == 1)
            .fold(BigUint::one(), |acc, (p, _)| acc * p)
    }

    /// Product of `p^(e/2)`, so that `n = kernel * root^2`.
    pub fn square_root_part(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(e / 2))
    }
}

const SMALL_PRIMES: [u64; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

fn strong_probable_prime_u64(n: u64, a: u64) -> bool {
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES[..12] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    SMALL_PRIMES[..12]
        .iter()
        .all(|&a| strong_probable_prime_u64(n, a))
}

fn strong_probable_prime(n: &BigUint, a: &BigUint) -> bool {
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

/// Miller–Rabin with the first 13 prime bases, which is a proof of
/// primality below 3.3·10²⁴. Larger inputs get all 20 bases.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(m) = n.to_u64() {
        return is_prime_u64(m);
    }
    for &p in &SMALL_PRIMES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let bound: BigUint = "3317044064679887385961981".parse().unwrap();
    let bases = if *n < bound { 13 } else { SMALL_PRIMES.len() };
    SMALL_PRIMES[..bases]
        .iter()
        .all(|&a| strong_probable_prime(n, &BigUint::from(a)))
}

fn rho_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    for c in 1..u64::MAX {
        let f = |x: u64| ((x as u128 * x as u128 + c as u128) % n as u128) as u64;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!("rho found no factor of composite {n}")
}

/// Brent's variant of rho, taking one gcd per batch of 128 steps.
fn rho_big(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    const BATCH: usize = 128;
    let dist = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let (mut y, mut r, mut q, mut g) =
            (BigUint::from(2u32), 1usize, BigUint::one(), BigUint::one());
        let (mut x, mut ys) = (y.clone(), y.clone());
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = f(&y);
                    q = q * dist(&x, &y) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = dist(&x, &ys).gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

fn split(n: &BigUint) -> BigUint {
    match n.to_u64() {
        Some(m) => BigUint::from(rho_u64(m)),
        None => rho_big(n),
    }
}

/// `(r, e)` with `n = rᵉ` and `e ≥ 2` as large as possible, if any.
fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    (2..n.bits() as u32).rev().find_map(|e| {
        let r = n.nth_root(e);
        (r.pow(e) == *n).then_some((r, e))
    })
}

/// Factor `n ≥ 1`: trial division by small numbers, then Pollard rho on
/// whatever is left.
pub fn factorize(n: &BigUint) -> Factorization {
    assert!(!n.is_zero(), "factorize(0)");
    let mut found: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut m = n.clone();
    let mut d = 2u32;
    while d < 1000 {
        if BigUint::from(d) * d > m {
            break;
        }
        while (&m % d).is_zero() {
            m /= d;
            *found.entry(BigUint::from(d)).or_insert(0) += 1;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = vec![m];
    while let Some(k) = stack.pop() {
        if k.is_one() {
            continue;
        }
        if is_prime(&k) {
            *found.entry(k).or_insert(0) += 1;
        } else if let Some((root, e)) = perfect_power(&k) {
            stack.extend(core::iter::repeat(root).take(e as usize));
        } else {
            let f = split(&k);
            stack.push(&k / &f);
            stack.push(f);
        }
    }
    Factorization {
        factors: found.into_iter().collect(),
    }
}

pub fn factorize_u64(n: u64) -> Factorization {
    factorize(&BigUint::from(n))
}

/// Write `r = s·t²` with `s` a squarefree integer of the same sign as `r`
/// and `t > 0`.
pub fn squarefree_part(r: &Rational) -> Result<(BigInt, Rational), Error> {
    if r.is_zero() {
        return Err(Error::input("squarefree_part of zero"));
    }
    let num = factorize(r.numer().magnitude());
    let den = factorize(r.denom().magnitude());
    let s_num = num.odd_part_kernel();
    let s_den = den.odd_part_kernel();
    let sign = if r.is_negative() {
        Sign::Minus
    } else {
        Sign::Plus
    };
    let s = BigInt::from_biguint(sign, &s_num * &s_den);
    let t = Rational::new(
        BigInt::from(num.square_root_part()),
        BigInt::from(s_den * den.square_root_part()),
    );
    Ok((s, t))
}

fn jacobi_odd(mut a: BigInt, mut n: BigInt) -> i8 {
    // n odd positive, 0 ≤ a < n
    let mut t = 1i8;
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        let z = a.trailing_zeros().unwrap_or(0);
        if z > 0 {
            a >>= z;
            let r = n.mod_floor(&eight);
            if z % 2 == 1 && (r == BigInt::from(3) || r == BigInt::from(5)) {
                t = -t;
            }
        }
        core::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == BigInt::from(3) && n.mod_floor(&four) == BigInt::from(3) {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// Kronecker symbol `(a/n)`.
pub fn kronecker_symbol(a: &BigInt, n: &BigInt) -> i8 {
    if n.is_zero() {
        return if a.abs().is_one() { 1 } else { 0 };
    }
    let mut result = 1i8;
    let mut n = n.clone();
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            result = -result;
        }
    }
    let z = n.trailing_zeros().unwrap_or(0);
    if z > 0 {
        if a.is_even() {
            return 0;
        }
        let r = a.mod_floor(&BigInt::from(8));
        if z % 2 == 1 && (r == BigInt::from(3) || r == BigInt::from(5)) {
            result = -result;
        }
        n >>= z;
    }
    result * jacobi_odd(a.mod_floor(&n), n)
}

pub fn kronecker_i64(a: i64, n: i64) -> i8 {
    kronecker_symbol(&BigInt::from(a), &BigInt::from(n))
}

/// Smallest non-negative solution of a system of congruences with pairwise
/// coprime moduli.
pub fn crt_solve(congruences: &[(BigInt, BigUint)]) -> Result<BigUint, Error> {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (r, mi) in congruences {
        if mi.is_zero() {
            return Err(Error::input("crt modulus must be positive"));
        }
        let mi = BigInt::from(mi.clone());
        let e = m.extended_gcd(&mi);
        if !e.gcd.is_one() {
            return Err(Error::input("crt moduli are not pairwise coprime"));
        }
        // x + m·k ≡ r (mod mi), with e.x = m⁻¹ mod mi
        let k = ((r - &x) * &e.x).mod_floor(&mi);
        x += &m * k;
        m *= &mi;
        x = x.mod_floor(&m);
    }
    Ok(x.to_biguint().expect("non-negative"))
}

pub fn legendre_u64(a: u64, p: u64) -> i8 {
    kronecker_symbol(&BigInt::from(a), &BigInt::from(p))
}

/// Smallest prime that is a quadratic non-residue modulo the odd prime `p`.
pub fn smallest_nonresidue_prime(p: u64) -> Result<u64, Error> {
    if p == 2 || !is_prime_u64(p) {
        return Err(Error::input("smallest_nonresidue_prime needs an odd prime"));
    }
    (2..p)
        .filter(|&q| is_prime_u64(q))
        .find(|&q| legendre_u64(q, p) == -1)
        .ok_or_else(|| Error::internal("no prime non-residue below p"))
}

/// Primes `≡ a (mod m)` in increasing order.
pub struct PrimesInProgression {
    next: BigUint,
    step: BigUint,
}

impl Iterator for PrimesInProgression {
    type Item = BigUint;

    fn next(&mut self) -> Option<BigUint> {
        loop {
            let c = self.next.clone();
            self.next += &self.step;
            if is_prime(&c) {
                return Some(c);
            }
        }
    }
}

pub fn primes_in_progression(a: &BigInt, m: &BigUint) -> Result<PrimesInProgression, Error> {
    if m.is_zero() {
        return Err(Error::input("modulus must be positive"));
    }
    let mi = BigInt::from(m.clone());
    if !a.gcd(&mi).is_one() {
        return Err(Error::input("gcd(a, m) must be 1"));
    }
    Ok(PrimesInProgression {
        next: a.mod_floor(&mi).to_biguint().expect("non-negative"),
        step: m.clone(),
    })
}

/// Smallest prime `≡ a (mod m)`, found by scanning the progression.
pub fn least_prime_in_ap(a: &BigInt, m: &BigUint) -> Result<BigUint, Error> {
    Ok(primes_in_progression(a, m)?
        .next()
        .expect("progression is infinite"))
}

/// A square root of `a` modulo the prime `p` (Tonelli–Shanks), `None` for a
/// non-residue.
pub fn sqrt_mod_prime(a: &BigInt, p: &BigUint) -> Option<BigUint> {
    let pi = BigInt::from(p.clone());
    let a = a.mod_floor(&pi).to_biguint().expect("non-negative");
    if a.is_zero() || p == &BigUint::from(2u32) {
        return Some(a);
    }
    let one = BigUint::one();
    let pm1 = p - &one;
    if a.modpow(&(&pm1 >> 1u32), p) != one {
        return None;
    }
    let s = pm1.trailing_zeros().expect("p > 2");
    let q = &pm1 >> s;
    let mut z = BigUint::from(2u32);
    while z.modpow(&(&pm1 >> 1u32), p) == one {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + &one) >> 1u32), p);
    while t != one {
        let mut i = 0;
        let mut t2 = t.clone();
        while t2 != one {
            t2 = &t2 * &t2 % p;
            i += 1;
        }
        let b = c.modpow(&(BigUint::one() << (m - i - 1)), p);
        m = i;
        c = &b * &b % p;
        t = t * &c % p;
        r = r * b % p;
    }
    Some(r)
}

/// A square root of `a` modulo the squarefree `n`, `None` if `a` is not a
/// square modulo some prime factor.
pub fn sqrt_mod_squarefree(a: &BigInt, n: &BigUint) -> Option<BigUint> {
    let mut parts = Vec::new();
    for p in factorize(n).primes() {
        parts.push((BigInt::from(sqrt_mod_prime(a, p)?), p.clone()));
    }
    Some(crt_solve(&parts).expect("distinct primes"))
}

/// Exact square root of a non-negative rational, `None` if it is not a
/// perfect square.
pub fn rational_sqrt(r: &Rational) -> Result<Option<Rational>, Error> {
    if r.is_negative() {
        return Err(Error::input("square root of a negative rational"));
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Ok(Some(Rational::new(n, d)))
    } else {
        Ok(None)
    }
}

/// `⌈√n⌉`.
pub fn ceil_sqrt(n: &BigUint) -> BigUint {
    let s = n.sqrt();
    if &(&s * &s) == n {
        s
    } else {
        s + 1u32
    }
}

/// `(v, u)` with `n = p^v·u`, `p ∤ u`. `n` must be nonzero.
pub fn split_valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    let p = BigInt::from(p);
    let mut v = 0;
    let mut u = n.clone();
    loop {
        let (q, r) = u.div_rem(&p);
        if !r.is_zero() {
            return (v, u);
        }
        u = q;
        v += 1;
    }
}

pub fn lcm_of_denominators<'a>(entries: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    entries
        .into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}
