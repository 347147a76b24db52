//! Diagonal rational quadratic forms and their complete set of
//! `Q`-isometry invariants.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{
    factorize, int, is_prime_u64, kronecker_symbol, rational_sqrt, split_valuation,
    squarefree_part, Rational,
};
use crate::Error;

/// `⟨a₁, …, a_n⟩`, every coefficient nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagForm {
    coeffs: Vec<Rational>,
}

impl DiagForm {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self, Error> {
        if coeffs.is_empty() {
            return Err(Error::input("a form needs at least one coefficient"));
        }
        if coeffs.iter().any(Zero::is_zero) {
            return Err(Error::input("degenerate form: zero coefficient"));
        }
        Ok(DiagForm { coeffs })
    }

    pub fn from_integers(coeffs: &[i64]) -> Result<Self, Error> {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// `⟨1,…,1,−1,…,−1⟩` with `pos` ones and `neg` minus ones.
    pub fn standard(pos: usize, neg: usize) -> Self {
        let mut coeffs = Vec::with_capacity(pos + neg);
        coeffs.extend((0..pos).map(|_| int(1)));
        coeffs.extend((0..neg).map(|_| int(-1)));
        DiagForm { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn signature(&self) -> (usize, usize) {
        let pos = self.coeffs.iter().filter(|c| c.is_positive()).count();
        (pos, self.rank() - pos)
    }

    pub fn is_definite(&self) -> bool {
        let (p, n) = self.signature();
        p == 0 || n == 0
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn discriminant(&self) -> Rational {
        self.coeffs.iter().fold(Rational::one(), |acc, c| acc * c)
    }

    /// Squarefree integer representing the discriminant modulo squares.
    pub fn disc_class(&self) -> BigInt {
        squarefree_part(&self.discriminant()).expect("nonzero").0
    }

    pub fn direct_sum(&self, other: &DiagForm) -> DiagForm {
        let mut coeffs = self.coeffs.clone();
        coeffs.extend(other.coeffs.iter().cloned());
        DiagForm { coeffs }
    }

    pub fn scaled(&self, lambda: &Rational) -> Result<DiagForm, Error> {
        if lambda.is_zero() {
            return Err(Error::input("scaling by zero"));
        }
        Ok(DiagForm {
            coeffs: self.coeffs.iter().map(|c| c * lambda).collect(),
        })
    }

    /// Sub-form on the given coordinates, in that order.
    pub fn restrict(&self, indices: &[usize]) -> DiagForm {
        DiagForm {
            coeffs: indices.iter().map(|&i| self.coeffs[i].clone()).collect(),
        }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.rank(), "vector length must match rank");
        self.coeffs
            .iter()
            .zip(x)
            .fold(Rational::zero(), |acc, (a, xi)| acc + a * xi * xi)
    }

    /// Each coefficient replaced by its squarefree integer class. The result
    /// is isometric to `self`.
    pub fn squarefree_reduced(&self) -> DiagForm {
        DiagForm {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| Rational::from_integer(squarefree_part(c).expect("nonzero").0))
                .collect(),
        }
    }
}

impl fmt::Display for DiagForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(">")
    }
}

/// A place of `Q`: a rational prime or the real place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl Place {
    pub fn prime(p: u64) -> Result<Place, Error> {
        if is_prime_u64(p) {
            Ok(Place::Prime(p))
        } else {
            Err(Error::input("place must be a prime"))
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

/// Parity of the `p`-adic valuation of `r` and an integer unit in the same
/// `Q_p` square class as `r·p^(-v)`.
fn local_split(r: &Rational, p: u64) -> (u32, BigInt) {
    let (vn, un) = split_valuation(r.numer(), p);
    let (vd, ud) = split_valuation(r.denom(), p);
    ((vn + vd) % 2, un * ud)
}

fn mod8(u: &BigInt) -> u32 {
    u.mod_floor(&BigInt::from(8)).to_u32().expect("small")
}

/// `(a, b)_v`: `+1` iff `a x² + b y² = z²` has a nontrivial solution over
/// the completion of `Q` at `v`.
pub fn hilbert_symbol(a: &Rational, b: &Rational, v: Place) -> Result<i8, Error> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::input("Hilbert symbol of zero"));
    }
    let p = match v {
        Place::Infinity => {
            return Ok(if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            });
        }
        Place::Prime(p) => p,
    };
    if !is_prime_u64(p) {
        return Err(Error::input("place must be a prime"));
    }
    let (alpha, u) = local_split(a, p);
    let (beta, w) = local_split(b, p);
    if p == 2 {
        let (u8_, w8) = (mod8(&u), mod8(&w));
        let eps = |x: u32| ((x - 1) / 2) & 1;
        let omega = |x: u32| if x == 3 || x == 5 { 1 } else { 0 };
        let e = eps(u8_) * eps(w8) + alpha * omega(w8) + beta * omega(u8_);
        return Ok(if e % 2 == 0 { 1 } else { -1 });
    }
    let pb = BigInt::from(p);
    let mut s: i8 = if alpha * beta == 1 && p % 4 == 3 {
        -1
    } else {
        1
    };
    if beta == 1 {
        s *= kronecker_symbol(&u, &pb);
    }
    if alpha == 1 {
        s *= kronecker_symbol(&w, &pb);
    }
    Ok(s)
}

/// `ε_v(q) = ∏_{i<j} (a_i, a_j)_v`.
pub fn hasse_witt(q: &DiagForm, v: Place) -> i8 {
    let c = q.coeffs();
    let mut e = 1;
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            e *= hilbert_symbol(&c[i], &c[j], v).expect("nonzero coefficients");
        }
    }
    e
}

fn primes_of(r: &Rational, out: &mut BTreeSet<Place>) {
    for n in [r.numer(), r.denom()] {
        for p in factorize(n.magnitude()).primes() {
            let p = p
                .to_u64()
                .expect("prime factors of coefficients fit in 64 bits");
            out.insert(Place::Prime(p));
        }
    }
}

/// `2`, `∞`, and every prime dividing a numerator or denominator.
/// Hasse–Witt invariants are trivial away from this set.
pub fn relevant_places(q: &DiagForm) -> BTreeSet<Place> {
    let mut out = BTreeSet::new();
    out.insert(Place::Prime(2));
    out.insert(Place::Infinity);
    for c in q.coeffs() {
        primes_of(c, &mut out);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantProfile {
    pub rank: usize,
    pub signature: (usize, usize),
    pub disc_class: BigInt,
    pub hasse_witt: BTreeMap<Place, i8>,
}

impl InvariantProfile {
    /// Places where the Hasse–Witt invariant is `-1`.
    pub fn nontrivial_places(&self) -> Vec<Place> {
        self.hasse_witt
            .iter()
            .filter(|(_, &e)| e == -1)
            .map(|(&v, _)| v)
            .collect()
    }
}

pub fn invariant_profile(q: &DiagForm) -> InvariantProfile {
    let hasse_witt = relevant_places(q)
        .into_iter()
        .map(|v| (v, hasse_witt(q, v)))
        .collect();
    InvariantProfile {
        rank: q.rank(),
        signature: q.signature(),
        disc_class: q.disc_class(),
        hasse_witt,
    }
}

/// Hasse–Minkowski: rank, signature, discriminant class and every local
/// Hasse–Witt invariant agree.
pub fn is_isometric(q: &DiagForm, r: &DiagForm) -> bool {
    if q.rank() != r.rank() || q.signature() != r.signature() || q.disc_class() != r.disc_class() {
        return false;
    }
    let mut places = relevant_places(q);
    places.extend(relevant_places(r));
    places
        .into_iter()
        .all(|v| hasse_witt(q, v) == hasse_witt(r, v))
}

/// A squarefree `λ` with `λ·r ≅ q`, if one exists.
pub fn is_similar(q: &DiagForm, r: &DiagForm) -> Result<Option<BigInt>, Error> {
    if q.rank() != r.rank() {
        return Err(Error::input("similarity needs equal ranks"));
    }
    let mut places = relevant_places(q);
    places.extend(relevant_places(r));
    let primes: Vec<BigInt> = places
        .into_iter()
        .filter_map(|v| match v {
            Place::Prime(p) => Some(BigInt::from(p)),
            Place::Infinity => None,
        })
        .collect();
    let mut divisors: Vec<BigInt> = (0u32..1 << primes.len())
        .map(|mask| {
            primes
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(BigInt::one(), |acc, (_, p)| acc * p)
        })
        .collect();
    divisors.sort();
    for d in divisors {
        for lambda in [d.clone(), -d] {
            let scaled = r.scaled(&Rational::from_integer(lambda.clone()))?;
            if is_isometric(&scaled, q) {
                return Ok(Some(lambda));
            }
        }
    }
    Ok(None)
}

/// Whether `r` is a square in `Q_v`.
pub fn is_local_square(r: &Rational, v: Place) -> bool {
    if r.is_zero() {
        return true;
    }
    match v {
        Place::Infinity => r.is_positive(),
        Place::Prime(p) => {
            let (v, u) = local_split(r, p);
            if v == 1 {
                return false;
            }
            if p == 2 {
                mod8(&u) == 1
            } else {
                kronecker_symbol(&u, &BigInt::from(p)) == 1
            }
        }
    }
}

/// Whether `q` is isotropic at the single place `v`.
pub fn is_locally_isotropic(q: &DiagForm, v: Place) -> bool {
    if v == Place::Infinity {
        return !q.is_definite();
    }
    let d = q.discriminant();
    let minus_one = int(-1);
    match q.rank() {
        0 | 1 => false,
        2 => is_local_square(&-d, v),
        3 => hilbert_symbol(&minus_one, &-d, v).expect("nonzero") == hasse_witt(q, v),
        4 => {
            let aniso = is_local_square(&d, v)
                && hasse_witt(q, v) == -hilbert_symbol(&minus_one, &minus_one, v).expect("nonzero");
            !aniso
        }
        _ => true,
    }
}

/// Whether `q` represents zero nontrivially over `Q`.
pub fn is_isotropic(q: &DiagForm) -> Result<bool, Error> {
    match q.rank() {
        1 => Err(Error::input("isotropy needs rank at least 2")),
        2 => {
            let minus_d = -q.discriminant();
            Ok(!minus_d.is_negative() && rational_sqrt(&minus_d)?.is_some())
        }
        _ => Ok(relevant_places(q)
            .into_iter()
            .all(|v| is_locally_isotropic(q, v))),
    }
}
