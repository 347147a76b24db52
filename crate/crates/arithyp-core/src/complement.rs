//! Positive-definite ternary complements: given `q` of signature (3,1),
//! build `q_c = ⟨x, c, c·d·x⟩` with `q_c ⊕ q ≅ ⟨1,1,1,1,1,1,−1⟩`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive};

use crate::arith::{big, crt_solve, factorize, primes_in_progression, smallest_nonresidue_prime};
use crate::qform::{hasse_witt, hilbert_symbol, is_isometric, relevant_places, DiagForm, Place};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementWitness {
    pub q: DiagForm,
    /// `⟨x, c, cdx⟩` with each coefficient reduced to its squarefree class.
    pub qc: DiagForm,
    /// `⟨x, c, cdx⟩` as constructed.
    pub qc_raw: DiagForm,
    pub c: BigInt,
    pub x: BigInt,
    pub d: BigInt,
    /// `x·c·cdx = x²c²d`.
    pub alpha_beta_gamma: BigInt,
    pub x_choice: XChoice,
}

/// How `x` was assembled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XChoice {
    pub x: BigInt,
    /// Local representatives `(p, x_p)` for `p | 2cd` with their target
    /// symbols `(x_p, −cd)_p`.
    pub local: Vec<(u64, BigInt, i8)>,
    /// CRT lift of the local representatives.
    pub x_prime: BigInt,
    /// Primes outside `2cd` where `x'` still has the wrong symbol.
    pub t_prime: Vec<u64>,
    pub modulus: BigInt,
    pub aux_prime: Option<BigUint>,
}

fn check_shape(q: &DiagForm) -> Result<BigInt, Error> {
    if q.rank() != 4 || q.signature() != (3, 1) {
        return Err(Error::input("complement needs a form of signature (3,1)"));
    }
    if !q.is_integral() {
        return Err(Error::input("complement needs an integral form"));
    }
    Ok(-q.discriminant().to_integer())
}

fn prime_list(n: &BigInt) -> Vec<u64> {
    factorize(n.magnitude())
        .primes()
        .map(|p| p.to_u64().expect("64-bit prime"))
        .collect()
}

fn valuation(n: &BigInt, p: u64) -> u32 {
    crate::arith::split_valuation(n, p).0
}

/// `c = ∏_{p | 2d} p^{z_p}`, with `z_p = 0` when `v_p(d)` is odd and `1`
/// otherwise.
pub fn choose_c(q: &DiagForm) -> Result<BigInt, Error> {
    let d = check_shape(q)?;
    let c = prime_list(&(BigInt::from(2) * &d))
        .into_iter()
        .filter(|&p| valuation(&d, p) % 2 == 0)
        .fold(BigInt::one(), |acc, p| acc * p);
    Ok(c)
}

fn hs(a: &BigInt, b: &BigInt, p: u64) -> i8 {
    hilbert_symbol(&big(a), &big(b), Place::Prime(p)).expect("nonzero")
}

/// Target symbols `ε'_p = (c, −d)_p · ε_p(q)` at the primes of `2cd`; every
/// other place has `ε'_p = +1`.
fn target_symbols(q: &DiagForm, c: &BigInt, d: &BigInt) -> Vec<(u64, i8)> {
    let cd = c * d;
    prime_list(&(BigInt::from(2) * &cd))
        .into_iter()
        .map(|p| (p, hs(c, &-d, p) * hasse_witt(q, Place::Prime(p))))
        .collect()
}

fn local_candidates(p: u64, target: i8) -> Result<Vec<BigInt>, Error> {
    if target == 1 {
        return Ok(alloc::vec![BigInt::one()]);
    }
    let c: Vec<i64> = if p == 2 {
        alloc::vec![3, 5, 7, 2, 6, 10, 14]
    } else {
        let n = smallest_nonresidue_prime(p)? as i64;
        let p = p as i64;
        alloc::vec![n, p, p * n]
    };
    Ok(c.into_iter().map(BigInt::from).collect())
}

/// Find `x > 0` with `(x, −cd)_p = (c, −d)_p · ε_p(q)` at every prime.
pub fn choose_x(q: &DiagForm, c: &BigInt) -> Result<XChoice, Error> {
    let d = check_shape(q)?;
    if !c.is_positive() {
        return Err(Error::input("c must be positive"));
    }
    let minus_cd = -(c * &d);
    let targets = target_symbols(q, c, &d);
    let trivial = |x: BigInt| XChoice {
        x: x.clone(),
        local: targets
            .iter()
            .map(|&(p, e)| (p, BigInt::one(), e))
            .collect(),
        x_prime: x,
        t_prime: Vec::new(),
        modulus: BigInt::one(),
        aux_prime: None,
    };
    if targets.iter().all(|&(_, e)| e == 1) {
        return Ok(trivial(BigInt::one()));
    }

    let mut local = Vec::new();
    let mut congruences = Vec::new();
    for &(p, target) in &targets {
        let xp = local_candidates(p, target)?
            .into_iter()
            .find(|xp| hs(xp, &minus_cd, p) == target)
            .ok_or_else(|| Error::internal("no local representative for x"))?;
        let unit = valuation(&xp, p) == 0;
        let modulus: u64 = match (p, unit) {
            (2, true) => 8,
            (2, false) => 16,
            (_, true) => p,
            (_, false) => p * p,
        };
        congruences.push((xp.clone(), BigUint::from(modulus)));
        local.push((p, xp, target));
    }
    let x_prime = BigInt::from(crt_solve(&congruences)?);
    let in_s: BTreeSet<u64> = targets.iter().map(|&(p, _)| p).collect();

    let t_prime: Vec<u64> = prime_list(&x_prime)
        .into_iter()
        .filter(|p| !in_s.contains(p) && hs(&x_prime, &minus_cd, *p) == -1)
        .collect();
    let modulus = in_s
        .iter()
        .filter(|&&p| p != 2)
        .fold(BigInt::from(8), |acc, &p| acc * p);

    let (x, aux_prime) = if t_prime.is_empty() {
        (x_prime.clone(), None)
    } else {
        let a = t_prime.iter().fold(BigInt::one(), |acc, &l| acc * l);
        let aux = primes_in_progression(&a, modulus.magnitude())?
            .find(|r| r.to_u64().map_or(true, |r| !t_prime.contains(&r)))
            .expect("infinite progression");
        (&x_prime * &a * BigInt::from(aux.clone()), Some(aux))
    };

    let choice = XChoice {
        x,
        local,
        x_prime,
        t_prime,
        modulus,
        aux_prime,
    };
    check_x(&choice.x, &minus_cd, &targets)?;
    Ok(choice)
}

fn check_x(x: &BigInt, minus_cd: &BigInt, targets: &[(u64, i8)]) -> Result<(), Error> {
    let mut primes: BTreeSet<u64> = targets.iter().map(|&(p, _)| p).collect();
    primes.extend(prime_list(x));
    for p in primes {
        let want = targets
            .iter()
            .find(|&&(t, _)| t == p)
            .map_or(1, |&(_, e)| e);
        if hs(x, minus_cd, p) != want {
            return Err(Error::internal("x has the wrong Hilbert symbol"));
        }
    }
    Ok(())
}

pub fn complementary_form(q: &DiagForm) -> Result<ComplementWitness, Error> {
    let d = check_shape(q)?;
    let c = choose_c(q)?;
    let x_choice = choose_x(q, &c)?;
    let x = x_choice.x.clone();
    let cdx = &c * &d * &x;
    let qc_raw = DiagForm::new(alloc::vec![big(&x), big(&c), big(&cdx)])?;
    let qc = qc_raw.squarefree_reduced();
    if !verify_complement(q, &qc) {
        return Err(Error::internal("constructed complement does not verify"));
    }
    let alpha_beta_gamma = &x * &x * &c * &c * &d;
    Ok(ComplementWitness {
        q: q.clone(),
        qc,
        qc_raw,
        c,
        x,
        d,
        alpha_beta_gamma,
        x_choice,
    })
}

/// `q_c` positive definite, `disc(q_c) = −disc(q)` modulo squares, equal
/// Hasse–Witt invariants everywhere, and `q_c ⊕ q ≅ ⟨1,1,1,1,1,1,−1⟩`.
pub fn verify_complement(q: &DiagForm, qc: &DiagForm) -> bool {
    if qc.rank() != 3 || qc.signature() != (3, 0) {
        return false;
    }
    let minus_disc = -q.discriminant();
    if qc.disc_class()
        != DiagForm::new(alloc::vec![minus_disc])
            .expect("nonzero")
            .disc_class()
    {
        return false;
    }
    let mut places = relevant_places(q);
    places.extend(relevant_places(qc));
    if places
        .into_iter()
        .any(|v| hasse_witt(q, v) != hasse_witt(qc, v))
    {
        return false;
    }
    is_isometric(&qc.direct_sum(q), &DiagForm::standard(6, 1))
}
