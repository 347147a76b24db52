mod common;

use arithyp_core::arith::*;
use arithyp_core::qform::*;
use arithyp_core::{DiagForm, Place};
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

fn form(z: &[i64]) -> DiagForm {
    DiagForm::from_integers(z).unwrap()
}

fn factor_pairs(n: u64) -> Vec<(u64, u32)> {
    factorize_u64(n)
        .factors()
        .iter()
        .map(|(p, e)| (p.to_u64().unwrap(), *e))
        .collect()
}

#[test]
fn factorization_worked_values() {
    assert!(factorize_u64(1).is_empty());
    assert_eq!(factor_pairs(100), vec![(2, 2), (5, 2)]);
    assert_eq!(factor_pairs(777_600), vec![(2, 7), (3, 5), (5, 2)]);
}

#[test]
fn factorization_matches_trial_division() {
    for n in (1..5000u64).chain([999_983 * 2, 1_000_003 * 999_983, (1 << 40) + 15]) {
        assert_eq!(factor_pairs(n), common::trial_division(n), "n = {n}");
    }
}

#[test]
fn large_factorization_reassembles() {
    let primes = [998_244_353u64, 1_000_000_007, 1_000_000_007, 1_000_000_009];
    let n: BigUint = primes.iter().map(|&p| BigUint::from(p)).product();
    let f = factorize(&n);
    assert_eq!(f.factors().len(), 3);
    assert_eq!(f.product(), n);
    assert!(f.primes().all(is_prime));
}

#[test]
fn primality_matches_trial_division() {
    for n in 0..20_000u64 {
        assert_eq!(is_prime_u64(n), common::is_prime(n), "n = {n}");
    }
}

#[test]
fn squarefree_worked_values() {
    assert_eq!(squarefree_part(&int(1)).unwrap(), (BigInt::from(1), int(1)));
    assert_eq!(
        squarefree_part(&int(-100)).unwrap(),
        (BigInt::from(-1), int(10))
    );
    assert_eq!(
        squarefree_part(&rat(50, 9)).unwrap(),
        (BigInt::from(2), rat(5, 3))
    );
    assert!(squarefree_part(&int(0)).is_err());
}

#[test]
fn squarefree_part_reconstructs() {
    for n in -300i64..=300 {
        for d in 1..=12 {
            if n == 0 {
                continue;
            }
            let r = rat(n, d);
            let (s, t) = squarefree_part(&r).unwrap();
            assert_eq!(big(&s) * &t * &t, r);
            let sf = common::trial_division(s.magnitude().to_u64().unwrap());
            assert!(sf.iter().all(|&(_, e)| e == 1));
        }
    }
}

#[test]
fn kronecker_worked_values() {
    assert_eq!(kronecker_i64(1, 3), 1);
    assert_eq!(kronecker_i64(-7, 3), -1);
    assert_eq!(kronecker_i64(-4, 5), 1);
}

#[test]
fn kronecker_matches_definition() {
    for a in -60i64..=60 {
        for n in -60i64..=60 {
            assert_eq!(
                kronecker_i64(a, n),
                common::kronecker_by_definition(a, n),
                "({a}/{n})"
            );
            assert_eq!(
                kronecker_symbol(&BigInt::from(a), &BigInt::from(n)),
                common::kronecker_by_definition(a, n)
            );
        }
    }
}

fn crt(pairs: &[(i64, u64)]) -> u64 {
    let c: Vec<(BigInt, BigUint)> = pairs
        .iter()
        .map(|&(r, m)| (BigInt::from(r), BigUint::from(m)))
        .collect();
    crt_solve(&c).unwrap().to_u64().unwrap()
}

#[test]
fn crt_worked_values_and_scan() {
    assert_eq!(crt(&[(0, 1)]), 0);
    assert_eq!(crt(&[(3, 8), (1, 3)]), 19);
    assert_eq!(crt(&[(2, 5), (3, 7)]), 17);
    let moduli = [4u64, 9, 5, 7];
    for r0 in 0..4 {
        for r1 in 0..9 {
            for r2 in [0, 3] {
                let pairs = [(r0, 4), (r1, 9), (r2, 5), (-1, 7)];
                let got = crt(&pairs);
                let m: u64 = moduli.iter().product();
                let scan = (0..m)
                    .find(|&x| {
                        pairs
                            .iter()
                            .all(|&(r, md)| x as i64 % md as i64 == r.rem_euclid(md as i64))
                    })
                    .unwrap();
                assert_eq!(got, scan);
            }
        }
    }
    let bad = [
        (BigInt::from(1), BigUint::from(4u32)),
        (BigInt::from(0), BigUint::from(6u32)),
    ];
    assert!(crt_solve(&bad).is_err());
}

#[test]
fn nonresidue_worked_values_and_scan() {
    assert_eq!(smallest_nonresidue_prime(5).unwrap(), 2);
    assert_eq!(smallest_nonresidue_prime(7).unwrap(), 3);
    assert_eq!(smallest_nonresidue_prime(3).unwrap(), 2);
    for p in (3..3000u64).filter(|&p| common::is_prime(p)) {
        let scan = (2..p)
            .filter(|&q| common::is_prime(q))
            .find(|&q| common::euler_legendre(q as i64, p) == -1)
            .unwrap();
        assert_eq!(smallest_nonresidue_prime(p).unwrap(), scan, "p = {p}");
    }
}

#[test]
fn least_prime_in_progression_worked_values_and_scan() {
    let lp = |a: i64, m: u64| {
        least_prime_in_ap(&BigInt::from(a), &BigUint::from(m))
            .unwrap()
            .to_u64()
            .unwrap()
    };
    assert_eq!(lp(1, 1), 2);
    assert_eq!(lp(1, 4), 5);
    assert_eq!(lp(3, 10), 3);
    for m in 1..60u64 {
        for a in -20i64..20 {
            if common::gcd(a, m as i64) != 1 {
                continue;
            }
            let scan = (2u64..)
                .find(|&q| common::is_prime(q) && (q as i64 - a).rem_euclid(m as i64) == 0)
                .unwrap();
            assert_eq!(lp(a, m), scan, "a = {a}, m = {m}");
        }
    }
    assert!(least_prime_in_ap(&BigInt::from(2), &BigUint::from(4u32)).is_err());
}

#[test]
fn rational_square_roots() {
    assert_eq!(rational_sqrt(&int(0)).unwrap(), Some(int(0)));
    assert_eq!(rational_sqrt(&rat(49, 4)).unwrap(), Some(rat(7, 2)));
    assert_eq!(rational_sqrt(&int(2)).unwrap(), None);
    assert!(rational_sqrt(&int(-1)).is_err());
}

#[test]
fn hilbert_worked_values() {
    let h = |a: i64, b: i64, v: Place| hilbert_symbol(&int(a), &int(b), v).unwrap();
    for v in [Place::Prime(2), Place::Prime(3), Place::Infinity] {
        assert_eq!(h(1, -7, v), 1);
    }
    assert_eq!(h(2, 5, Place::Prime(5)), -1);
    assert_eq!(h(7, 7, Place::Prime(7)), -1);
    assert_eq!(h(7, 7, Place::Infinity), 1);
    assert_eq!(h(-1, -1, Place::Infinity), -1);
}

#[test]
fn hilbert_symbol_matches_local_search() {
    let vals: Vec<i64> = (-15i64..=15).filter(|&a| a != 0).collect();
    for p in [2u64, 3, 5, 7] {
        for &a in &vals {
            for &b in &vals {
                let got = hilbert_symbol(&int(a), &int(b), Place::Prime(p)).unwrap();
                assert_eq!(
                    got,
                    common::hilbert_by_local_search(a, b, p),
                    "({a},{b})_{p}"
                );
            }
        }
    }
}

#[test]
fn hilbert_symbol_accepts_fractions() {
    // (a·s², b)_p = (a, b)_p
    for (a, b) in [(2, 5), (3, -1), (-7, 14)] {
        for p in [2u64, 3, 5, 7] {
            let lhs = hilbert_symbol(&rat(a * 9, 4), &rat(b, 25), Place::Prime(p)).unwrap();
            assert_eq!(lhs, common::hilbert_by_local_search(a, b, p));
        }
    }
}

#[test]
fn hasse_witt_worked_values() {
    let b7 = form(&[1, 1, 1, -7]);
    for p in [2, 3, 5, 7, 11] {
        assert_eq!(hasse_witt(&b7, Place::Prime(p)), 1);
    }
    let m = form(&[1, 2, 5, -10]);
    assert_eq!(hasse_witt(&m, Place::Prime(5)), -1);
    assert_eq!(hasse_witt(&m, Place::Prime(3)), 1);
}

#[test]
fn relevant_place_sets() {
    let set = |z: &[i64]| relevant_places(&form(z)).into_iter().collect::<Vec<_>>();
    assert_eq!(set(&[1, 1]), vec![Place::Prime(2), Place::Infinity]);
    assert_eq!(
        set(&[1, 2, 5, -10]),
        vec![Place::Prime(2), Place::Prime(5), Place::Infinity]
    );
    assert_eq!(
        set(&[1, 1, 1, -7]),
        vec![Place::Prime(2), Place::Prime(7), Place::Infinity]
    );
}

#[test]
fn invariant_profiles() {
    let p = invariant_profile(&form(&[1, -1]));
    assert_eq!(
        (p.rank, p.signature, p.disc_class.clone()),
        (2, (1, 1), BigInt::from(-1))
    );
    assert!(p.nontrivial_places().is_empty());
    let p = invariant_profile(&form(&[1, 2, 5, -10]));
    assert_eq!(
        (p.signature, p.disc_class.clone()),
        ((3, 1), BigInt::from(-1))
    );
    assert_eq!(
        p.nontrivial_places(),
        vec![Place::Prime(2), Place::Prime(5)]
    );
    let p = invariant_profile(&form(&[1, 1, 1, -7]));
    assert_eq!(p.disc_class, BigInt::from(-7));
    assert!(p.nontrivial_places().is_empty());
}

#[test]
fn isometry_classes() {
    let q = form(&[3, 7, 11, -13]);
    assert!(is_isometric(&q, &q));
    assert!(is_isometric(
        &form(&[2, 5, 10, 1, 2, 5, -10]),
        &DiagForm::standard(6, 1)
    ));
    assert!(!is_isometric(&form(&[1, 1, 1, -7]), &form(&[1, 1, 1, -1])));
    // ⟨1,1⟩ ≅ ⟨2,2⟩ but not ⟨1,3⟩
    assert!(is_isometric(&form(&[1, 1]), &form(&[2, 2])));
    assert!(!is_isometric(&form(&[1, 1]), &form(&[1, 3])));
}

/// Rank-2 and rank-3 isometry decided by searching for a rational basis
/// change: `⟨a,b⟩ ≅ ⟨c,d⟩` iff `ab ≡ cd` mod squares and `⟨a,b⟩`
/// represents `c`.
#[test]
fn binary_isometry_matches_representation_search() {
    let vals = [-6i64, -5, -3, -2, -1, 1, 2, 3, 5, 6];
    for &a in &vals {
        for &b in &vals {
            for &c in &vals {
                for &d in &vals {
                    let same_disc = {
                        let (s1, _) = squarefree_part(&int(a * b)).unwrap();
                        let (s2, _) = squarefree_part(&int(c * d)).unwrap();
                        s1 == s2
                    };
                    // ⟨a,b,−c⟩ isotropic ⟺ ⟨a,b⟩ represents c
                    let represents = common::isotropic_by_local_search(&[a, b, -c]);
                    let expected = same_disc && represents;
                    assert_eq!(
                        is_isometric(&form(&[a, b]), &form(&[c, d])),
                        expected,
                        "<{a},{b}> vs <{c},{d}>"
                    );
                }
            }
        }
    }
}

#[test]
fn similarity() {
    let q = form(&[3, 7, 11, -13]);
    assert_eq!(is_similar(&q, &q).unwrap(), Some(BigInt::from(1)));
    assert_eq!(is_similar(&form(&[1, 1]), &form(&[1, -1])).unwrap(), None);
    // ⟨1/z1, z2(z3z4)², z3(z2z4)², −(z2z3z4)²z4⟩ and ⟨z1,z2,z3,−z4⟩·z1
    let (z1, z2, z3, z4): (i64, i64, i64, i64) = (1, 2, 5, 10);
    let lhs = DiagForm::new(vec![
        rat(1, z1),
        int(z2 * (z3 * z4).pow(2)),
        int(z3 * (z2 * z4).pow(2)),
        int(-(z2 * z3 * z4).pow(2) * z4),
    ])
    .unwrap();
    let rhs = form(&[z1, z2, z3, -z4]);
    assert_eq!(is_similar(&lhs, &rhs).unwrap(), Some(BigInt::from(z1)));
}

#[test]
fn isotropy_worked_values() {
    assert!(is_isotropic(&form(&[1, -1])).unwrap());
    assert!(!is_isotropic(&form(&[1, 2, 5, -10])).unwrap());
    assert!(is_isotropic(&form(&[1, 1, 1, -2])).unwrap());
    assert!(!is_isotropic(&form(&[1, 1, 1, -7])).unwrap());
    assert!(!is_isotropic(&form(&[1, 1, 1])).unwrap());
    assert!(is_isotropic(&form(&[1, 1, 1, 1, -7])).unwrap());
}

#[test]
fn isotropy_matches_local_search_on_grid() {
    let vals = [-7i64, -3, -2, -1, 1, 2, 3, 5, 6, 7];
    for &a in &vals {
        for &b in &vals {
            for &c in &vals {
                let z = [a, b, c];
                assert_eq!(
                    is_isotropic(&form(&z)).unwrap(),
                    common::isotropic_by_local_search(&z),
                    "{z:?}"
                );
                for p in [2u64, 3, 5, 7] {
                    assert_eq!(
                        is_locally_isotropic(&form(&z), Place::Prime(p)),
                        common::locally_isotropic(&z, p)
                    );
                }
            }
        }
    }
}

#[test]
fn seven_is_not_a_sum_of_three_squares() {
    // exhaustive search up to the Cassels bound (3·10)^{3/2} < 165
    assert!(common::exhaustive_zero(&[1, 1, 1, -7], 30).is_none());
    assert!(common::exhaustive_zero(&[1, 1, 1, -2], 2).is_some());
}

#[test]
fn local_squares() {
    assert!(is_local_square(&int(-7), Place::Prime(2)));
    assert!(!is_local_square(&int(3), Place::Prime(2)));
    assert!(is_local_square(&int(2), Place::Prime(7)));
    assert!(!is_local_square(&int(-1), Place::Infinity));
    assert!(is_local_square(&rat(4, 9), Place::Prime(3)));
}
