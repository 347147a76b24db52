//! Published reference data: two explicit isometries, the normal matrix
//! and the vertex list of the Coxeter simplex, and quoted constants.

use arithyp_core::arith::{rat, Rational};
use arithyp_core::isometry::RatMatrix;
use arithyp_core::real::Real;
use arithyp_core::DiagForm;

fn matrix(rows: [[(i64, i64); 7]; 7]) -> RatMatrix {
    RatMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&(n, d)| rat(n, d)).collect::<Vec<Rational>>())
            .collect(),
    )
    .expect("7x7")
}

const O: (i64, i64) = (0, 1);
const I: (i64, i64) = (1, 1);

/// `⟨1,1,7⟩ ⊕ ⟨1,1,1,−7⟩`.
pub fn bianchi7_source() -> DiagForm {
    DiagForm::from_integers(&[1, 1, 7, 1, 1, 1, -7]).expect("nonzero")
}

/// Published isometry from [`bianchi7_source`] to `⟨1,…,1,−1⟩`; the blank
/// entry in row 6 is read as 0.
pub fn bianchi7_isometry() -> RatMatrix {
    matrix([
        [I, O, O, O, O, O, O],
        [O, I, O, O, O, O, O],
        [O, O, (4, 7), O, O, O, (3, 7)],
        [O, O, O, I, O, O, O],
        [O, O, O, O, I, O, O],
        [O, O, O, O, O, I, O],
        [O, O, (-3, 7), O, O, O, (-4, 7)],
    ])
}

/// `⟨2,5,10⟩ ⊕ ⟨1,2,5,−10⟩`.
pub fn m306_source() -> DiagForm {
    DiagForm::from_integers(&[2, 5, 10, 1, 2, 5, -10]).expect("nonzero")
}

pub fn m306_isometry() -> RatMatrix {
    matrix([
        [(1, 5), O, (-3, 10), (3, 4), O, (1, 10), (9, 20)],
        [(-1, 5), O, O, O, O, (2, 5), O],
        [O, O, (-9, 20), (9, 40), (11, 20), O, (27, 40)],
        [O, I, O, O, O, O, O],
        [(-3, 5), O, (-1, 10), (1, 4), O, (-3, 10), (3, 20)],
        [O, O, (-3, 5), O, O, O, (2, 5)],
        [O, O, (-11, 20), (11, 40), (9, 20), O, (33, 40)],
    ])
}

/// The published complement of `⟨1,1,1,−7⟩`.
pub fn bianchi7_complement() -> DiagForm {
    DiagForm::from_integers(&[1, 1, 7]).expect("nonzero")
}

pub fn m306_complement() -> DiagForm {
    DiagForm::from_integers(&[2, 5, 10]).expect("nonzero")
}

fn s<R: Real>(n: i64, d: i64) -> R {
    R::from_ratio(n, d).sqrt()
}

fn f<R: Real>(n: i64, d: i64) -> R {
    R::from_ratio(n, d)
}

/// Published normal matrix, entries as closed forms.
pub fn reference_normals<R: Real>() -> Vec<Vec<R>> {
    let z = || R::zero();
    vec![
        vec![R::one(), f(-1, 2), z(), z(), z(), z(), z()],
        vec![z(), s::<R>(3, 4), z(), -s::<R>(1, 3), z(), z(), z()],
        vec![z(), z(), R::one(), f(-1, 2), z(), z(), z()],
        vec![
            z(),
            z(),
            z(),
            f::<R>(1, 2) * s(5, 3),
            -s::<R>(3, 5),
            z(),
            z(),
        ],
        vec![z(), z(), z(), z(), s(2, 5), f::<R>(-1, 2) * s(5, 2), z()],
        vec![
            z(),
            z(),
            z(),
            z(),
            z(),
            f::<R>(1, 2) * s(3, 2),
            -(f::<R>(2, 1) / s(3, 1)),
        ],
        vec![z(), z(), z(), z(), z(), z(), s(1, 3)],
    ]
}

/// Published vertex list; the ideal vertex at scale 1.
pub fn reference_vertices<R: Real>() -> Vec<Vec<R>> {
    let z = || R::zero();
    let r3 = || s::<R>(3, 1);
    vec![
        vec![
            -R::one(),
            -(R::one() / r3()),
            z(),
            -(f::<R>(2, 1) / s(15, 1)),
            -s::<R>(2, 5),
            -s::<R>(2, 3),
            f::<R>(2, 1) * s(2, 3),
        ],
        vec![
            z(),
            -(R::one() / r3()),
            z(),
            -(f::<R>(2, 1) / s(15, 1)),
            -s::<R>(2, 5),
            -s::<R>(2, 3),
            f::<R>(2, 1) * s(2, 3),
        ],
        vec![
            z(),
            z(),
            -(R::one() / s(2, 1)),
            -s::<R>(3, 10),
            -(f::<R>(3, 2) / s(5, 1)),
            -(r3() / f(2, 1)),
            r3(),
        ],
        vec![
            z(),
            z(),
            z(),
            -(R::one() / s(5, 1)),
            -s::<R>(3, 10),
            -(R::one() / s(2, 1)),
            s(2, 1),
        ],
        vec![
            z(),
            z(),
            z(),
            z(),
            f(-1, 2),
            f::<R>(-1, 2) * s(5, 3),
            s(5, 3),
        ],
        vec![
            z(),
            z(),
            z(),
            z(),
            z(),
            -(R::one() / r3()),
            f::<R>(2, 1) / r3(),
        ],
        vec![z(), z(), z(), z(), z(), z(), R::one()],
    ]
}

pub const QUOTED_V0: f64 = 1.112;
pub const QUOTED_K: f64 = 7e150;
pub const QUOTED_M306_VOLUME: f64 = 3.66386;
/// Published congruence levels: `L(49)` and `1600 = 40²`.
pub const QUOTED_BIANCHI7_LEVEL: u64 = 49;
pub const QUOTED_M306_LEVEL: u64 = 1600;
