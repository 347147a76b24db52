//! Explicit rational isometries: Cassels-bounded isotropic vectors,
//! representing 1, Jacobi diagonalization of the orthogonal complement, and
//! the iterated reduction of an integral form to `⟨1,…,1,−1⟩`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{big, ceil_sqrt, int, lcm_of_denominators, rat, squarefree_part, Rational};
use crate::qform::{is_isometric, is_isotropic, DiagForm};
use crate::Error;

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, Error> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::input("matrix dimensions do not match its data"));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::input("ragged matrix rows"));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    /// Columns given as vectors.
    pub fn from_columns(cols: &[Vec<Rational>]) -> Self {
        let n = cols[0].len();
        let mut m = Self::zeros(n, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// `Pᵗ · diag(g) · P`.
    pub fn congruence(&self, g: &DiagForm) -> RatMatrix {
        assert_eq!(self.rows, g.rank(), "form rank must match row count");
        let mut out = Self::zeros(self.cols, self.cols);
        for i in 0..self.cols {
            for j in i..self.cols {
                let mut s = Rational::zero();
                for (k, a) in g.coeffs().iter().enumerate() {
                    let (x, y) = (self.get(k, i), self.get(k, j));
                    if !x.is_zero() && !y.is_zero() {
                        s += a * x * y;
                    }
                }
                out.set(j, i, s.clone());
                out.set(i, j, s);
            }
        }
        out
    }

    pub fn denominator_lcm(&self) -> BigInt {
        lcm_of_denominators(&self.data)
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Rational::zero();
            };
            if p != k {
                for j in 0..n {
                    let t = a.get(k, j).clone();
                    a.set(k, j, a.get(p, j).clone());
                    a.set(p, j, t);
                }
                det = -det;
            }
            let pivot = a.get(k, k).clone();
            det *= &pivot;
            for i in k + 1..n {
                let f = a.get(i, k) / &pivot;
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = a.get(i, j) - &f * a.get(k, j);
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    /// Leading `k × k` block.
    pub fn leading(&self, k: usize) -> RatMatrix {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        m
    }

    /// Solve `self · x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        let n = self.rows;
        let mut a = self.clone();
        let mut b = b.to_vec();
        for k in 0..n {
            let p = (k..n).find(|&i| !a.get(i, k).is_zero())?;
            if p != k {
                for j in 0..n {
                    let t = a.get(k, j).clone();
                    a.set(k, j, a.get(p, j).clone());
                    a.set(p, j, t);
                }
                b.swap(k, p);
            }
            let pivot = a.get(k, k).clone();
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a.get(i, k) / &pivot;
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = a.get(i, j) - &f * a.get(k, j);
                    a.set(i, j, v);
                }
                let v = &b[i] - &f * &b[k];
                b[i] = v;
            }
        }
        Some((0..n).map(|i| &b[i] / a.get(i, i)).collect())
    }

    fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// `n × n` identity with `block` placed on the rows/columns `at`.
    pub fn embed(n: usize, at: &[usize], block: &RatMatrix) -> RatMatrix {
        let mut m = Self::identity(n);
        for (bi, &i) in at.iter().enumerate() {
            for (bj, &j) in at.iter().enumerate() {
                m.set(i, j, block.get(bi, bj).clone());
            }
        }
        m
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;

    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

fn integral_coeffs(g: &DiagForm) -> Result<Vec<BigInt>, Error> {
    if !g.is_integral() {
        return Err(Error::input("form must be integral"));
    }
    Ok(g.coeffs().iter().map(|c| c.to_integer()).collect())
}

/// `E_n(g) = 2·max|a_i|·(3Σ|a_i| + 3)^{n/2}`, rounded up to an integer when
/// the power is irrational.
pub fn bound_e(g: &DiagForm) -> Result<BigInt, Error> {
    let a = integral_coeffs(g)?;
    let n = a.len() as u32;
    let max = a
        .iter()
        .map(|x| x.magnitude().clone())
        .max()
        .expect("rank ≥ 1");
    let k: BigUint = a.iter().map(|x| x.magnitude().clone()).sum::<BigUint>() * 3u32 + 3u32;
    let e = if n % 2 == 0 {
        BigUint::from(2u32) * max * k.pow(n / 2)
    } else {
        ceil_sqrt(&(BigUint::from(4u32) * &max * &max * k.pow(n)))
    };
    Ok(BigInt::from(e))
}

/// `F_n(g) = E^{2n}·n^{n/2}·∏_{k<n} E^{2k+2}·k^{k/2}`, with the square root
/// of the radical part rounded up.
pub fn bound_f(g: &DiagForm) -> Result<BigInt, Error> {
    let e = bound_e(g)?;
    let n = g.rank() as u32;
    let exp = 2 * n + (1..n).map(|k| 2 * k + 2).sum::<u32>();
    let radicand = (1..n).fold(BigUint::from(n).pow(n), |acc, k| {
        acc * BigUint::from(k).pow(k)
    });
    Ok(e.pow(exp) * BigInt::from(ceil_sqrt(&radicand)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundFns {
    pub e: BigInt,
    pub f: BigInt,
    pub g: BigInt,
}

pub fn bound_fns(g: &DiagForm) -> Result<BoundFns, Error> {
    let e = bound_e(g)?;
    let f = bound_f(g)?;
    let gg = &f * &f;
    Ok(BoundFns { e, f, g: gg })
}

/// `⌊(3Σ|a_i|)^{(m−1)/2}⌋`, the largest admissible coordinate.
pub fn cassels_bound(f: &DiagForm) -> Result<BigUint, Error> {
    let a = integral_coeffs(f)?;
    let m = a.len() as u32;
    let s: BigUint = a.iter().map(|x| x.magnitude().clone()).sum::<BigUint>() * 3u32;
    Ok(s.pow(m - 1).sqrt())
}

trait SearchInt: Clone + Ord + Zero {
    fn lift(v: i64) -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn exact_div(&self, o: &Self) -> Option<Self>;
    fn exact_sqrt(&self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl SearchInt for i128 {
    fn lift(v: i64) -> Self {
        v as i128
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        (self % o == 0).then(|| self / o)
    }
    fn exact_sqrt(&self) -> Option<Self> {
        let r = Roots::sqrt(self);
        (r * r == *self).then_some(r)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl SearchInt for BigInt {
    fn lift(v: i64) -> Self {
        BigInt::from(v)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(o);
        r.is_zero().then_some(q)
    }
    fn exact_sqrt(&self) -> Option<Self> {
        let r = Roots::sqrt(self);
        (&r * &r == *self).then_some(r)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

enum Search {
    Found(Vec<BigInt>),
    Exhausted,
    Overflow,
}

struct Shell<'a, T> {
    coeffs: &'a [T],
    last: &'a T,
    radius: i64,
    limit: &'a T,
    y: Vec<i64>,
}

impl<T: SearchInt> Shell<'_, T> {
    /// Depth-first over coordinate `i` in the order 0, 1, −1, 2, −2, ….
    fn walk(&mut self, i: usize, partial: &T, hit_radius: bool) -> Search {
        let free = self.coeffs.len();
        if i == free {
            if !hit_radius {
                return Search::Exhausted;
            }
            // y_m² = partial / (−a_m)
            let Some(sq) = partial.exact_div(self.last) else {
                return Search::Exhausted;
            };
            if sq < T::zero() {
                return Search::Exhausted;
            }
            let Some(root) = sq.exact_sqrt() else {
                return Search::Exhausted;
            };
            if root > *self.limit {
                return Search::Exhausted;
            }
            let mut out: Vec<BigInt> = self.y.iter().map(|&v| BigInt::from(v)).collect();
            out.push(root.to_big());
            return Search::Found(out);
        }
        let r = self.radius;
        let last_free = i + 1 == free;
        // on the last free coordinate only the shell boundary is new
        let values: Vec<i64> = if last_free && !hit_radius {
            vec![r, -r]
        } else {
            (0..=2 * r)
                .map(|step| {
                    if step % 2 == 1 {
                        (step + 1) / 2
                    } else {
                        -(step / 2)
                    }
                })
                .collect()
        };
        for v in values {
            let at_radius = hit_radius || v.abs() == r;
            let term = match self.coeffs[i].mul(&T::lift(v * v)) {
                Some(t) => t,
                None => return Search::Overflow,
            };
            let next = match partial.add(&term) {
                Some(t) => t,
                None => return Search::Overflow,
            };
            self.y[i] = v;
            match self.walk(i + 1, &next, at_radius) {
                Search::Exhausted => {}
                other => return other,
            }
        }
        Search::Exhausted
    }
}

fn search_with<T: SearchInt>(coeffs: &[T], limit: &T, max_radius: i64) -> Search {
    let (free, last) = coeffs.split_at(coeffs.len() - 1);
    let Some(neg_last) = last[0].mul(&T::lift(-1)) else {
        return Search::Overflow;
    };
    for radius in 1..=max_radius {
        let mut shell = Shell {
            coeffs: free,
            last: &neg_last,
            radius,
            limit,
            y: vec![0; free.len()],
        };
        match shell.walk(0, &T::zero(), false) {
            Search::Exhausted => {}
            other => return other,
        }
    }
    Search::Exhausted
}

/// A nonzero integral zero of the isotropic integral form `f`, within the
/// bound `max|y_i| ≤ (3Σ|a_i|)^{(m−1)/2}`.
///
/// Vectors are visited by increasing max-norm of the first `m − 1`
/// coordinates; within a shell, lexicographically in the coordinate order
/// `0, 1, −1, 2, −2, …`. The last coordinate is solved for and taken
/// non-negative.
pub fn cassels_isotropic_vector(f: &DiagForm) -> Result<Vec<BigInt>, Error> {
    if f.rank() < 2 {
        return Err(Error::input("isotropic vector search needs rank ≥ 2"));
    }
    let bound = cassels_bound(f)?;
    let max_radius = bound.to_i64().unwrap_or(i64::MAX);
    cassels_search(f, &bound, max_radius)?
        .ok_or_else(|| Error::input("form is not isotropic (search within bound exhausted)"))
}

fn cassels_search(
    f: &DiagForm,
    bound: &BigUint,
    max_radius: i64,
) -> Result<Option<Vec<BigInt>>, Error> {
    let a = integral_coeffs(f)?;
    let small: Option<Vec<i128>> = a.iter().map(|x| x.to_i64().map(i128::from)).collect();
    let result = match small {
        Some(s) => match search_with(&s, &bound.to_i128().unwrap_or(i128::MAX), max_radius) {
            Search::Overflow => search_with(&a, &BigInt::from(bound.clone()), max_radius),
            other => other,
        },
        None => search_with(&a, &BigInt::from(bound.clone()), max_radius),
    };
    Ok(match result {
        Search::Found(y) => Some(y),
        _ => None,
    })
}

/// Nonzero `v` with `Σ cᵢ·vᵢ² = 0` for nonzero integers `c`, via a
/// squarefree, pairwise coprime model of the conic.
fn ternary_zero(c: &[BigInt; 3]) -> Option<[BigInt; 3]> {
    let mut c = c.clone();
    let mut scale = [Rational::one(), Rational::one(), Rational::one()];
    loop {
        for i in 0..3 {
            let (k, r) = squarefree_part(&Rational::from_integer(c[i].clone())).ok()?;
            scale[i] /= r;
            c[i] = k;
        }
        let pair = (0..3).find_map(|i| {
            let j = (i + 1) % 3;
            let g = c[i].gcd(&c[j]);
            (!g.is_one()).then_some((i, j, g))
        });
        let Some((i, j, g)) = pair else { break };
        let k = 3 - i - j;
        let h = g.gcd(&c[k]);
        if !h.is_one() {
            for x in c.iter_mut() {
                *x /= &h;
            }
            continue;
        }
        // c_i·x² + c_j·y² + c_k·z² = 0 times g, with g·x, g·y as new unknowns
        c[i] /= &g;
        c[j] /= &g;
        c[k] *= &g;
        scale[i] /= big(&g);
        scale[j] /= big(&g);
    }
    let v = conic_solution(&c)?;
    let x: Vec<Rational> = (0..3).map(|t| &scale[t] * big(&v[t])).collect();
    let l = lcm_of_denominators(&x);
    let mut out: [BigInt; 3] = core::array::from_fn(|t| (&x[t] * big(&l)).to_integer());
    let g = out[0].gcd(&out[1]).gcd(&out[2]);
    for o in out.iter_mut() {
        *o /= &g;
    }
    Some(out)
}

/// Isotropic vector of the integral form `f` (rank ≥ 3): two of its
/// coefficients span a conic with `e = Σ fᵢ·uᵢ²` over the rest, trying small
/// `u` until that conic is isotropic, for each choice of the two.
fn isotropic_by_conics(f: &[BigInt], tries: usize) -> Option<Vec<BigInt>> {
    let n = f.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| f[j].magnitude().cmp(f[i].magnitude()));
    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    for (i, j) in pairs {
        let (p, q) = (order[i], order[j]);
        let rest: Vec<usize> = order
            .iter()
            .copied()
            .filter(|&k| k != p && k != q)
            .collect();
        if let Some(v) = conic_split(f, p, q, &rest, tries) {
            return Some(v);
        }
    }
    None
}

fn conic_split(
    f: &[BigInt],
    p: usize,
    q: usize,
    rest: &[usize],
    tries: usize,
) -> Option<Vec<BigInt>> {
    let mut tried = 0;
    for radius in 1i64.. {
        let mut u = vec![-radius; rest.len()];
        loop {
            if u.iter().any(|x| x.abs() == radius)
                && u.iter().find(|x| **x != 0).is_some_and(|x| *x > 0)
            {
                let e: BigInt = rest.iter().zip(&u).map(|(&i, &ui)| &f[i] * ui * ui).sum();
                if !e.is_zero() {
                    tried += 1;
                    let coeffs = [f[p].clone(), f[q].clone(), e];
                    let conic = DiagForm::new(coeffs.iter().map(big).collect()).ok()?;
                    if is_isotropic(&conic).ok()? {
                        if let Some([x, y, s]) = ternary_zero(&coeffs) {
                            let mut v = vec![BigInt::zero(); f.len()];
                            v[p] = x;
                            v[q] = y;
                            for (&i, &ui) in rest.iter().zip(&u) {
                                v[i] = &s * ui;
                            }
                            return Some(v);
                        }
                    }
                }
                if tried >= tries || rest.len() == 1 && tried >= 1 {
                    return None;
                }
            }
            let Some(pos) = u.iter().rposition(|x| *x < radius) else {
                break;
            };
            u[pos] += 1;
            for x in u.iter_mut().skip(pos + 1) {
                *x = -radius;
            }
        }
    }
    None
}

fn weighted_dot(w: &[BigInt; 3], u: &[BigInt; 3], v: &[BigInt; 3]) -> BigInt {
    (0..3).map(|i| &w[i] * &u[i] * &v[i]).sum()
}

/// LLL reduction (`δ = 3/4`) of a rank-3 basis under the diagonal inner
/// product with weights `w`.
fn lll3(basis: &mut [[BigInt; 3]; 3], w: &[BigInt; 3]) {
    let gram_schmidt = |b: &[[BigInt; 3]; 3]| {
        let mut star: Vec<[Rational; 3]> = Vec::new();
        let mut mu = [
            [Rational::zero(), Rational::zero(), Rational::zero()],
            [Rational::zero(), Rational::zero(), Rational::zero()],
            [Rational::zero(), Rational::zero(), Rational::zero()],
        ];
        let mut norms: Vec<Rational> = Vec::new();
        for i in 0..3 {
            let mut v: [Rational; 3] = [big(&b[i][0]), big(&b[i][1]), big(&b[i][2])];
            for j in 0..i {
                let dot: Rational = (0..3)
                    .map(|t| big(&w[t]) * big(&b[i][t]) * &star[j][t])
                    .sum();
                mu[i][j] = dot / &norms[j];
                for t in 0..3 {
                    let d = &mu[i][j] * &star[j][t];
                    v[t] -= d;
                }
            }
            norms.push((0..3).map(|t| big(&w[t]) * &v[t] * &v[t]).sum());
            star.push(v);
        }
        (mu, norms)
    };
    let mut k = 1;
    while k < 3 {
        for j in (0..k).rev() {
            let (mu, _) = gram_schmidt(basis);
            let r = mu[k][j].round().to_integer();
            if !r.is_zero() {
                for t in 0..3 {
                    let d = &r * &basis[j][t];
                    basis[k][t] -= d;
                }
            }
        }
        let (mu, norms) = gram_schmidt(basis);
        if norms[k] >= (rat(3, 4) - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1] {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
}

/// Small nonzero `v` with `Σ cᵢ·vᵢ² = 0` for squarefree, pairwise coprime
/// coefficients of mixed sign, from the lattice of vectors satisfying the
/// local square-root congruences. `None` if none turns up among small
/// combinations of the reduced basis.
fn conic_solution(c: &[BigInt; 3]) -> Option<[BigInt; 3]> {
    if c.iter().all(Signed::is_positive) || c.iter().all(Signed::is_negative) {
        return None;
    }
    let mut basis = [
        [BigInt::one(), BigInt::zero(), BigInt::zero()],
        [BigInt::zero(), BigInt::one(), BigInt::zero()],
        [BigInt::zero(), BigInt::zero(), BigInt::one()],
    ];
    for i in 0..3 {
        // on primes of cᵢ: v_j ≡ λ·v_k with λ² ≡ −c_k/c_j
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        for p in crate::arith::factorize(c[i].magnitude()).primes() {
            let pi = BigInt::from(p.clone());
            let inv = c[j].mod_floor(&pi).extended_gcd(&pi).x;
            let lambda = BigInt::from(crate::arith::sqrt_mod_prime(&(-&c[k] * inv), p)?);
            let form: Vec<BigInt> = basis
                .iter()
                .map(|b| (&b[j] - &lambda * &b[k]).mod_floor(&pi))
                .collect();
            let pivot = form.iter().position(|f| !f.is_zero())?;
            let inv = form[pivot].extended_gcd(&pi).x;
            let base = basis[pivot].clone();
            for r in 0..3 {
                if r == pivot {
                    continue;
                }
                let m = (&form[r] * &inv).mod_floor(&pi);
                for t in 0..3 {
                    let d = &m * &base[t];
                    basis[r][t] -= d;
                }
            }
            for t in 0..3 {
                basis[pivot][t] *= &pi;
            }
        }
    }
    let w = [c[0].abs(), c[1].abs(), c[2].abs()];
    lll3(&mut basis, &w);
    let value = |v: &[BigInt; 3]| -> BigInt { (0..3).map(|t| &c[t] * &v[t] * &v[t]).sum() };
    let mut best: Option<(BigInt, [BigInt; 3])> = None;
    for k0 in -3i64..=3 {
        for k1 in -3i64..=3 {
            for k2 in 0i64..=3 {
                let v: [BigInt; 3] = core::array::from_fn(|t| {
                    &basis[0][t] * k0 + &basis[1][t] * k1 + &basis[2][t] * k2
                });
                if v.iter().all(Zero::is_zero) || !value(&v).is_zero() {
                    continue;
                }
                let n = weighted_dot(&w, &v, &v);
                if best.as_ref().map_or(true, |(b, _)| n < *b) {
                    best = Some((n, v));
                }
            }
        }
    }
    best.map(|(_, v)| v)
}

/// A rational `x` with `g(x) = 1` for an integral `g` that represents 1
/// (every form isometric to `⟨1,…,1,−1⟩` does).
pub fn represent_one(g: &DiagForm) -> Result<Vec<Rational>, Error> {
    represent_one_within(g, None)?.ok_or_else(|| Error::input("form does not represent 1 over Q"))
}

/// [`represent_one`] with the work optionally capped by `effort`; `None`
/// when the capped attempts find nothing.
fn represent_one_within(g: &DiagForm, effort: Option<u32>) -> Result<Option<Vec<Rational>>, Error> {
    let n = g.rank();
    integral_coeffs(g)?;
    let mut x = vec![Rational::zero(); n];
    if let Some(i) = g.coeffs().iter().position(One::is_one) {
        x[i] = Rational::one();
        return Ok(Some(x));
    }
    let augmented = g.direct_sum(&DiagForm::from_integers(&[-1])?);
    if !is_isotropic(&augmented)? {
        return Err(Error::input("form does not represent 1 over Q"));
    }
    let a = integral_coeffs(&augmented)?;
    let tries = 100 * effort.unwrap_or(4) as usize;
    let y = if let Some(y) = isotropic_by_conics(&a, tries) {
        y
    } else {
        match effort {
            None => cassels_isotropic_vector(&augmented)?,
            Some(e) => {
                match cassels_search(&augmented, &cassels_bound(&augmented)?, search_radius(n, e))?
                {
                    Some(y) => y,
                    None => return Ok(None),
                }
            }
        }
    };
    let last = &y[n];
    if !last.is_zero() {
        for i in 0..n {
            x[i] = Rational::new(y[i].clone(), last.clone());
        }
    } else {
        let i = y.iter().position(|v| !v.is_zero()).expect("nonzero vector");
        let ai = &g.coeffs()[i];
        let alpha = (Rational::one() - ai) / (int(2) * ai * big(&y[i]));
        for k in 0..n {
            x[k] = &alpha * big(&y[k]);
        }
        x[i] += Rational::one();
    }
    if g.eval(&x) != Rational::one() {
        return Err(Error::internal("represent_one produced g(x) != 1"));
    }
    Ok(Some(x))
}

fn primitive_integral(v: &[Rational]) -> Vec<Rational> {
    let l = lcm_of_denominators(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * big(&l)).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| big(&(x / &g))).collect()
}

/// Basis of `{v : Σ a_i x_i v_i = 0}` in echelon order, each vector
/// primitive integral.
fn orthogonal_complement(g: &DiagForm, x: &[Rational]) -> Vec<Vec<Rational>> {
    let n = g.rank();
    let r: Vec<Rational> = g.coeffs().iter().zip(x).map(|(a, xi)| a * xi).collect();
    let j0 = r.iter().position(|v| !v.is_zero()).expect("g(x) ≠ 0");
    (0..n)
        .filter(|&i| i != j0)
        .map(|i| {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::one();
            v[j0] = -(&r[i] / &r[j0]);
            primitive_integral(&v)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisRepair {
    /// Columns `i` and `j` of `P₁` were exchanged.
    Swap(usize, usize),
    /// Column `j` was added to column `i`, then made primitive.
    Shear(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReduceStep {
    pub x: Vec<Rational>,
    pub p1: RatMatrix,
    pub p2: RatMatrix,
    pub p3: RatMatrix,
    pub p: RatMatrix,
    pub form: DiagForm,
    pub repairs: Vec<BasisRepair>,
}

fn leading_minors_nonzero(z: &RatMatrix, from: usize) -> Option<usize> {
    (from..=z.rows()).find(|&k| z.leading(k).determinant().is_zero())
}

/// One pass of "make the first coefficient 1, then diagonalize" for an
/// integral `g` that represents 1: returns
/// `P` with `Pᵗ·diag(g)·P = diag(1, b₂, …, b_n)`, all `b_i` integral.
pub fn reduce_once(g: &DiagForm) -> Result<ReduceStep, Error> {
    let n = g.rank();
    if n < 2 {
        return Err(Error::input("reduce_once needs rank ≥ 2"));
    }
    integral_coeffs(g)?;
    reduce_with(g, represent_one(g)?)
}

fn reduce_with(g: &DiagForm, x: Vec<Rational>) -> Result<ReduceStep, Error> {
    let n = g.rank();
    let mut cols = vec![x.clone()];
    cols.extend(orthogonal_complement(g, &x));

    let mut repairs = Vec::new();
    let mut p1 = RatMatrix::from_columns(&cols);
    let mut z = p1.congruence(g);
    let mut start = 1;
    while let Some(k) = leading_minors_nonzero(&z, start) {
        // leading k×k block singular; k ≥ 2 because z₁₁ = 1
        let col = k - 1;
        let mut fixed = false;
        for other in col + 1..n {
            let mut trial = cols.clone();
            trial.swap(col, other);
            let tp = RatMatrix::from_columns(&trial);
            let tz = tp.congruence(g);
            if !tz.leading(k).determinant().is_zero() {
                cols = trial;
                p1 = tp;
                z = tz;
                repairs.push(BasisRepair::Swap(col, other));
                fixed = true;
                break;
            }
        }
        if !fixed {
            for other in (col + 1..n).chain(1..col) {
                let mut trial = cols.clone();
                let sum: Vec<Rational> = trial[col]
                    .iter()
                    .zip(&trial[other])
                    .map(|(a, b)| a + b)
                    .collect();
                trial[col] = primitive_integral(&sum);
                let tp = RatMatrix::from_columns(&trial);
                let tz = tp.congruence(g);
                if !tz.leading(k).determinant().is_zero() {
                    cols = trial;
                    p1 = tp;
                    z = tz;
                    repairs.push(BasisRepair::Shear(col, other));
                    fixed = true;
                    break;
                }
            }
        }
        if !fixed {
            return Err(Error::internal("could not repair a singular leading minor"));
        }
        start = k;
    }

    let mut w_cols = Vec::with_capacity(n);
    let mut c = Vec::with_capacity(n);
    for k in 1..=n {
        let mut rhs = vec![Rational::zero(); k];
        rhs[k - 1] = Rational::one();
        let w = z
            .leading(k)
            .solve(&rhs)
            .ok_or_else(|| Error::internal("singular leading minor after repair"))?;
        // sign chosen so that the new basis keeps a positive diagonal
        let l = big(&lcm_of_denominators(&w));
        c.push(if w[k - 1].is_negative() { -l } else { l });
        let mut full = w;
        full.resize(n, Rational::zero());
        w_cols.push(full);
    }
    let p2 = RatMatrix::from_columns(&w_cols);
    let p3 = RatMatrix::diagonal(&c);
    let p = &(&p1 * &p2) * &p3;
    let d = p.congruence(g);
    if !d.is_diagonal() || !d.get(0, 0).is_one() {
        return Err(Error::internal("Jacobi step did not diagonalize"));
    }
    let coeffs: Vec<Rational> = (0..n).map(|i| d.get(i, i).clone()).collect();
    if coeffs.iter().any(|b| !b.is_integer()) {
        return Err(Error::internal(
            "Jacobi step produced a non-integral coefficient",
        ));
    }
    Ok(ReduceStep {
        x,
        p1,
        p2,
        p3,
        p,
        form: DiagForm::new(coeffs)?,
        repairs,
    })
}

/// One iteration of the full reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    /// Coordinates that were not yet `1` and got reduced together.
    pub active: Vec<usize>,
    pub x: Vec<Rational>,
    pub p: RatMatrix,
    /// Columns divided by a rational to make coefficients squarefree.
    pub rescale: Vec<(usize, Rational)>,
    /// Full form after this step.
    pub form: DiagForm,
    pub denominator_lcm: BigInt,
    pub repairs: Vec<BasisRepair>,
}

/// `log10` of the congruence index bound under both conventions: `S⁴²` and
/// `(S²)⁴²`, the latter being the 42nd power of the congruence level.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IndexBound {
    pub log10_s42: f64,
    pub log10_level42: f64,
}

pub fn log10_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        libm::log10(n.to_f64().expect("finite").abs())
    } else {
        let shift = bits - 64;
        let top = (n.magnitude() >> shift).to_f64().expect("finite");
        libm::log10(top) + shift as f64 * core::f64::consts::LOG10_2
    }
}

pub fn congruence_index_bound(s: &BigInt) -> Result<IndexBound, Error> {
    if !s.is_positive() {
        return Err(Error::input("denominator lcm must be positive"));
    }
    let l = log10_big(s);
    Ok(IndexBound {
        log10_s42: 42.0 * l,
        log10_level42: 84.0 * l,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsometryWitness {
    pub p: RatMatrix,
    pub source: DiagForm,
    pub target: DiagForm,
    pub s_denom: BigInt,
    pub d_bound: IndexBound,
    pub initial_rescale: Vec<(usize, Rational)>,
    pub steps: Vec<StepRecord>,
}

/// Reduce an integral `g ≅ ⟨1,…,1,−1⟩` to exactly that form.
///
/// Coefficients are kept squarefree by rescaling basis vectors. Coordinates
/// already equal to `1` are left alone. Each step reduces a set of the
/// remaining coordinates that represents 1, picked so that the resulting
/// coefficients stay small, until a single `−1` remains, which is then
/// moved last.
pub fn full_isometry_to_standard(g: &DiagForm) -> Result<IsometryWitness, Error> {
    let n = g.rank();
    integral_coeffs(g)?;
    let (pos, neg) = g.signature();
    let target = DiagForm::standard(pos, 1);
    if neg != 1 || !is_isometric(g, &target) {
        return Err(Error::input("form is not Q-isometric to <1,...,1,-1>"));
    }
    let mut p = RatMatrix::identity(n);
    let mut cur: Vec<Rational> = g.coeffs().to_vec();
    let initial_rescale = rescale_squarefree(&mut p, &mut cur)?;
    let mut steps = Vec::new();
    loop {
        let pending: Vec<usize> = (0..n).filter(|&i| !cur[i].is_one()).collect();
        if pending.len() < 2 {
            if pending.len() != 1 || cur[pending[0]] != int(-1) {
                return Err(Error::internal("reduction did not end at a single -1"));
            }
            break;
        }
        let (active, step) = choose_step(&cur, &pending)?;
        p = &p * &RatMatrix::embed(n, &active, &step.p);
        for (k, &i) in active.iter().enumerate() {
            cur[i] = step.form.coeffs()[k].clone();
        }
        let rescale = rescale_squarefree(&mut p, &mut cur)?;
        steps.push(StepRecord {
            denominator_lcm: step.p.denominator_lcm(),
            active,
            x: step.x,
            p: step.p,
            rescale,
            form: DiagForm::new(cur.clone())?,
            repairs: step.repairs,
        });
    }
    let neg_at = cur
        .iter()
        .position(|c| c.is_negative())
        .expect("one negative");
    let mut order: Vec<usize> = (0..n).filter(|&i| i != neg_at).collect();
    order.push(neg_at);
    let mut perm = RatMatrix::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        perm.set(old, new, Rational::one());
    }
    p = &p * &perm;
    if !verify_isometry(&p, g, &target) {
        return Err(Error::internal(format!("assembled isometry fails for {g}")));
    }
    let s_denom = p.denominator_lcm();
    let d_bound = congruence_index_bound(&s_denom)?;
    Ok(IsometryWitness {
        p,
        source: g.clone(),
        target,
        s_denom,
        d_bound,
        initial_rescale,
        steps,
    })
}

fn represents_one(coeffs: &[Rational]) -> Result<bool, Error> {
    let mut c = coeffs.to_vec();
    c.push(int(-1));
    is_isotropic(&DiagForm::new(c)?)
}

/// Points visited by the cut-off searches used to compare candidate steps.
const LOOKAHEAD_POINTS: f64 = 2.0e3;

/// Max-norm radius whose shell walk over `free` coordinates visits about
/// `effort·LOOKAHEAD_POINTS` points.
fn search_radius(free: usize, effort: u32) -> i64 {
    let points = LOOKAHEAD_POINTS * f64::from(effort);
    ((libm::pow(points, 1.0 / free as f64) - 1.0) / 2.0).max(1.0) as i64
}

fn result_size(step: &ReduceStep) -> (u64, u64) {
    let bits: Vec<u64> = step
        .form
        .coeffs()
        .iter()
        .map(|c| c.numer().bits())
        .collect();
    (bits.iter().copied().max().unwrap_or(0), bits.iter().sum())
}

/// Among the subsets of `pending` that represent 1, reduce the one whose
/// result has the smallest coefficients, judged by cut-off searches whose
/// effort grows until one of them succeeds.
fn choose_step(cur: &[Rational], pending: &[usize]) -> Result<(Vec<usize>, ReduceStep), Error> {
    let mut candidates: Vec<(u32, u64, Vec<usize>)> = if pending.len() > 12 {
        vec![(0, 0, pending.to_vec())]
    } else {
        (1u32..1 << pending.len())
            .filter(|m| m.count_ones() >= 2)
            .map(|m| {
                let idx: Vec<usize> = (0..pending.len())
                    .filter(|b| m >> b & 1 == 1)
                    .map(|b| pending[b])
                    .collect();
                let size: u64 = idx.iter().map(|&i| cur[i].numer().bits()).sum();
                (m.count_ones(), size, idx)
            })
            .collect()
    };
    candidates.sort();
    let mut usable = Vec::new();
    for (_, _, idx) in candidates {
        let sub = DiagForm::new(idx.iter().map(|&i| cur[i].clone()).collect())?;
        if represents_one(sub.coeffs())? {
            usable.push((idx, sub));
        }
    }
    if usable.is_empty() {
        return Err(Error::internal("no remaining coordinates represent 1"));
    }
    let mut effort = 1;
    loop {
        let mut best: Option<((u64, u64), usize, ReduceStep)> = None;
        for (k, (_, sub)) in usable.iter().enumerate() {
            if let Some(x) = represent_one_within(sub, Some(effort))? {
                let step = reduce_with(sub, x)?;
                let size = result_size(&step);
                if best.as_ref().map_or(true, |(b, _, _)| size < *b) {
                    best = Some((size, k, step));
                }
            }
        }
        if let Some((_, k, step)) = best {
            return Ok((usable.swap_remove(k).0, step));
        }
        effort *= 4;
    }
}

/// Divide column `i` of `p` by `t` wherever `cur[i] = s·t²` with `s`
/// squarefree and `t ≠ 1`; returns the `(i, 1/t)` applied.
fn rescale_squarefree(
    p: &mut RatMatrix,
    cur: &mut [Rational],
) -> Result<Vec<(usize, Rational)>, Error> {
    let mut applied = Vec::new();
    for (i, c) in cur.iter_mut().enumerate() {
        let (sf, t) = squarefree_part(c)?;
        if t.is_one() {
            continue;
        }
        let f = t.recip();
        for r in 0..p.rows() {
            let v = p.get(r, i) * &f;
            p.set(r, i, v);
        }
        *c = big(&sf);
        applied.push((i, f));
    }
    Ok(applied)
}

/// Exact check of `Pᵗ·diag(g)·P = diag(h)`.
pub fn verify_isometry(p: &RatMatrix, g: &DiagForm, h: &DiagForm) -> bool {
    if p.rows() != g.rank() || p.cols() != h.rank() {
        return false;
    }
    p.congruence(g) == RatMatrix::diagonal(h.coeffs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embed_places_block() {
        let b = RatMatrix::from_rows(vec![vec![int(1), int(2)], vec![int(3), int(4)]]).unwrap();
        let m = RatMatrix::embed(3, &[0, 2], &b);
        assert_eq!(m.get(0, 2), &int(2));
        assert_eq!(m.get(1, 1), &int(1));
        assert_eq!(m.get(2, 0), &int(3));
    }

    #[test]
    fn determinant_and_solve() {
        let m = RatMatrix::from_rows(vec![
            vec![int(0), int(2), int(1)],
            vec![int(1), int(1), int(0)],
            vec![int(3), int(0), int(1)],
        ])
        .unwrap();
        assert_eq!(m.determinant(), int(-5));
        let x = m.solve(&[int(1), int(2), int(3)]).unwrap();
        let back: Vec<Rational> = (0..3)
            .map(|i| (0..3).map(|j| m.get(i, j) * &x[j]).sum())
            .collect();
        assert_eq!(back, vec![int(1), int(2), int(3)]);
    }
}
