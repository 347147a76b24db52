//! Independent reference implementations used as test oracles. None of
//! these call into the library.

#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::Zero;

pub fn trial_division(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && trial_division(n) == [(n, 1)]
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Legendre symbol by Euler's criterion.
pub fn euler_legendre(a: i64, p: u64) -> i8 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Kronecker symbol from its multiplicative definition.
pub fn kronecker_by_definition(a: i64, n: i64) -> i8 {
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let mut r: i8 = if n < 0 && a < 0 { -1 } else { 1 };
    for (p, e) in trial_division(n.unsigned_abs()) {
        let s = if p == 2 {
            match a.rem_euclid(8) {
                0 | 2 | 4 | 6 => 0,
                1 | 7 => 1,
                _ => -1,
            }
        } else {
            euler_legendre(a, p)
        };
        if e % 2 == 1 {
            r *= s;
        } else if s == 0 {
            r = 0;
        }
    }
    r
}

/// Whether `Σ a_i x_i²` has a primitive zero modulo `p^k`, by convolving
/// the value distributions of the individual terms.
pub fn primitive_zero_mod(coeffs: &[i64], p: u64, k: u32) -> bool {
    let m = p.pow(k) as usize;
    let conv = |restrict: bool| {
        let mut acc = vec![0u64; m];
        acc[0] = 1;
        for &a in coeffs {
            let mut dist = vec![0u64; m];
            for x in 0..m {
                if restrict && x % p as usize != 0 {
                    continue;
                }
                let v = (a.rem_euclid(m as i64) as u128 * (x * x % m) as u128 % m as u128) as usize;
                dist[v] += 1;
            }
            let mut next = vec![0u64; m];
            for (i, &ci) in acc.iter().enumerate() {
                if ci == 0 {
                    continue;
                }
                for (j, &dj) in dist.iter().enumerate() {
                    if dj != 0 {
                        next[(i + j) % m] += ci * dj;
                    }
                }
            }
            acc = next;
        }
        acc[0]
    };
    conv(false) > conv(true)
}

fn squarefree_i64(a: i64) -> i64 {
    let mut s = a.signum();
    for (p, e) in trial_division(a.unsigned_abs()) {
        if e % 2 == 1 {
            s *= p as i64;
        }
    }
    s
}

/// Isotropy over `Q_p` by Hensel lifting from a primitive zero modulo
/// `p³` (odd `p`) or `2⁷`, after reducing coefficients to squarefree.
pub fn locally_isotropic(coeffs: &[i64], p: u64) -> bool {
    let sf: Vec<i64> = coeffs.iter().map(|&a| squarefree_i64(a)).collect();
    primitive_zero_mod(&sf, p, if p == 2 { 7 } else { 3 })
}

/// Hasse–Minkowski with local solubility decided by [`locally_isotropic`].
pub fn isotropic_by_local_search(coeffs: &[i64]) -> bool {
    if coeffs.iter().all(|&a| a > 0) || coeffs.iter().all(|&a| a < 0) {
        return false;
    }
    let mut primes = vec![2u64];
    for &a in coeffs {
        for (p, _) in trial_division(a.unsigned_abs()) {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    primes.into_iter().all(|p| locally_isotropic(coeffs, p))
}

/// `(a, b)_p` for integers: `+1` iff `z² − ax² − by²` is isotropic over
/// `Q_p`.
pub fn hilbert_by_local_search(a: i64, b: i64, p: u64) -> i8 {
    if locally_isotropic(&[1, -a, -b], p) {
        1
    } else {
        -1
    }
}

pub fn isqrt(n: u128) -> Option<u128> {
    let r = (n as f64).sqrt() as u128;
    (r.saturating_sub(2)..=r + 2).find(|&s| s * s == n)
}

/// A nonzero integer zero of `Σ a_i x_i²` with all `|x_i| ≤ bound`, found
/// by enumerating all but the last coordinate.
pub fn exhaustive_zero(coeffs: &[i64], bound: i64) -> Option<Vec<i64>> {
    let n = coeffs.len();
    let last = coeffs[n - 1];
    let mut x = vec![-bound; n - 1];
    loop {
        let s: i128 = x
            .iter()
            .zip(coeffs)
            .map(|(&v, &a)| a as i128 * (v as i128).pow(2))
            .sum();
        if s % last as i128 == 0 {
            let t = -s / last as i128;
            if t >= 0 {
                if let Some(r) = isqrt(t as u128) {
                    if r as i64 <= bound && (r > 0 || x.iter().any(|&v| v != 0)) {
                        let mut y = x.clone();
                        y.push(r as i64);
                        return Some(y);
                    }
                }
            }
        }
        let mut i = 0;
        loop {
            if i == n - 1 {
                return None;
            }
            if x[i] < bound {
                x[i] += 1;
                break;
            }
            x[i] = -bound;
            i += 1;
        }
    }
}

/// Number of reduced primitive positive definite binary forms of
/// discriminant `disc < 0`.
pub fn reduced_form_count(disc: i64) -> u64 {
    let mut count = 0;
    let dd = -disc;
    let mut a = 1;
    while 3 * a * a <= dd {
        for b in -a + 1..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if gcd(gcd(a, b.abs()), c) == 1 {
                count += 1;
            }
        }
        a += 1;
    }
    count
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Unimodular integer matrix built from elementary column operations
/// `col_i += t·col_j` (indices taken mod `n`).
pub fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for &(i, j, t) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        for row in u.iter_mut() {
            row[i] += t * row[j];
        }
    }
    u
}

/// Gram matrix of `⟨z⟩` in the basis given by the columns of `u`.
pub fn congruent_gram(z: &[i64], u: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = z.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| u[k][i] * z[k] * u[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Diagonal entries of a symmetric Gaussian elimination of `g`, borrowing a
/// later basis vector whenever a pivot vanishes.
pub fn diagonalize(g: &[Vec<i64>]) -> Option<Vec<BigRational>> {
    let mut g: Vec<Vec<BigRational>> = g
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let n = g.len();
    let mut out = Vec::new();
    for k in 0..n {
        if g[k][k].is_zero() {
            let j = (k + 1..n).find(|&j| !g[k][j].is_zero())?;
            let t = [1i64, -1, 2]
                .into_iter()
                .map(|t| BigRational::from_integer(t.into()))
                .find(|t| {
                    !(&g[j][j] * t * t + &g[k][j] * BigRational::from_integer(2.into()) * t)
                        .is_zero()
                })?;
            for r in 0..n {
                let v = &g[r][k] + &g[r][j] * &t;
                g[r][k] = v;
            }
            for c in 0..n {
                let v = &g[k][c] + &g[j][c] * &t;
                g[k][c] = v;
            }
        }
        let pivot = g[k][k].clone();
        out.push(pivot.clone());
        for i in k + 1..n {
            let f = &g[i][k] / &pivot;
            for j in k..n {
                let v = &g[i][j] - &f * &g[k][j];
                g[i][j] = v;
            }
        }
        for i in k + 1..n {
            g[k][i] = BigRational::zero();
            g[i][k] = BigRational::zero();
        }
    }
    Some(out)
}
