//! Hyperboloid-model geometry of the 6-dimensional Coxeter simplex with one
//! ideal vertex, its horoball, and the constants that feed the geodesic
//! residual finiteness bound.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::real::Real;
use crate::Error;

pub type Matrix<R> = Vec<Vec<R>>;

/// `Σ_{i<n} x_i y_i − x_n y_n`, the last coordinate being time-like.
pub fn lorentz_product<R: Real>(x: &[R], y: &[R]) -> Result<R, Error> {
    if x.len() != y.len() || x.is_empty() {
        return Err(Error::input(
            "Lorentz product of vectors of different length",
        ));
    }
    let n = x.len() - 1;
    let space = (0..n).fold(R::zero(), |acc, i| acc + x[i].clone() * y[i].clone());
    Ok(space - x[n].clone() * y[n].clone())
}

fn dot<R: Real>(x: &[R], y: &[R]) -> R {
    lorentz_product(x, y).expect("equal lengths")
}

/// Edge weights of the 7-node diagram: a path 1–2–4–5–6–7 with node 3
/// hanging off 4, all labels 3 except 6–7 labelled 4. Nodes are 0-based.
pub const SIMPLEX_DIAGRAM: [(usize, usize, u32); 6] = [
    (0, 1, 3),
    (1, 3, 3),
    (2, 3, 3),
    (3, 4, 3),
    (4, 5, 3),
    (5, 6, 4),
];

/// `−cos(π/m)` for the labels that occur in crystallographic diagrams.
fn edge_weight<R: Real>(m: u32) -> Result<R, Error> {
    match m {
        2 => Ok(R::zero()),
        3 => Ok(-R::from_ratio(1, 2)),
        4 => Ok(-(R::one() / R::from_i64(2).sqrt())),
        6 => Ok(-(R::from_i64(3).sqrt() / R::from_i64(2))),
        _ => Err(Error::input(format!("unsupported edge label {m}"))),
    }
}

/// Gram matrix of a Coxeter diagram on `n` nodes; absent edges are right
/// angles.
pub fn gram_from_diagram<R: Real>(
    n: usize,
    edges: &[(usize, usize, u32)],
) -> Result<Matrix<R>, Error> {
    let mut a: Matrix<R> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { R::one() } else { R::zero() })
                .collect()
        })
        .collect();
    for &(i, j, m) in edges {
        if i >= n || j >= n || i == j {
            return Err(Error::input("diagram edge out of range"));
        }
        let w = edge_weight::<R>(m)?;
        a[i][j] = w.clone();
        a[j][i] = w;
    }
    Ok(a)
}

/// Upper-triangular `C` with `Cᵗ·J·C = A`, `J = diag(1,…,1,−1)`, positive
/// diagonal. Column `i` of `C` is the unit normal of the `i`-th side.
pub fn lorentz_gram_factor<R: Real>(a: &Matrix<R>) -> Result<Matrix<R>, Error> {
    let dim = a.len();
    if dim < 2 || a.iter().any(|r| r.len() != dim) {
        return Err(Error::input("Gram matrix must be square of size ≥ 2"));
    }
    let last = dim - 1;
    let mut c: Matrix<R> = vec![vec![R::zero(); dim]; dim];
    for j in 0..dim {
        for i in 0..j {
            let s = (0..i).fold(R::zero(), |acc, r| acc + c[r][i].clone() * c[r][j].clone());
            c[i][j] = (a[i][j].clone() - s) / c[i][i].clone();
        }
        let s = (0..j).fold(R::zero(), |acc, r| acc + c[r][j].clone() * c[r][j].clone());
        let pivot = a[j][j].clone() - s;
        if j < last {
            if pivot <= R::zero() {
                return Err(Error::input("Gram matrix does not have signature (n,1)"));
            }
            c[j][j] = pivot.sqrt();
        } else {
            if pivot >= R::zero() {
                return Err(Error::input("Gram matrix does not have signature (n,1)"));
            }
            c[j][j] = (-pivot).sqrt();
        }
    }
    Ok(c)
}

pub fn transpose<R: Real>(m: &Matrix<R>) -> Matrix<R> {
    let (r, c) = (m.len(), m[0].len());
    (0..c)
        .map(|j| (0..r).map(|i| m[i][j].clone()).collect())
        .collect()
}

pub fn mat_mul<R: Real>(a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(R::zero(), |acc, r| acc + a[i][r].clone() * b[r][j].clone()))
                .collect()
        })
        .collect()
}

/// Gauss–Jordan inverse with partial pivoting.
pub fn invert<R: Real>(m: &Matrix<R>) -> Result<Matrix<R>, Error> {
    let n = m.len();
    let mut a: Matrix<R> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { R::one() } else { R::zero() }));
            r
        })
        .collect();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| a[x][k].abs().partial_cmp(&a[y][k].abs()).expect("finite"))
            .expect("non-empty");
        if a[p][k].abs() == R::zero() {
            return Err(Error::input("singular matrix"));
        }
        a.swap(k, p);
        let pivot = a[k][k].clone();
        for v in a[k].iter_mut() {
            *v = v.clone() / pivot.clone();
        }
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..2 * n {
                let v = a[i][j].clone() - f.clone() * a[k][j].clone();
                a[i][j] = v;
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Max-norm of `Cᵗ·J·C − A`.
pub fn gram_residual<R: Real>(c: &Matrix<R>, a: &Matrix<R>) -> R {
    let cols = transpose(c);
    let mut worst = R::zero();
    for i in 0..a.len() {
        for j in 0..a.len() {
            let d = (dot(&cols[i], &cols[j]) - a[i][j].clone()).abs();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

#[derive(Clone, Debug)]
pub struct CoxeterSimplex<R> {
    pub gram: Matrix<R>,
    /// Side normals as columns.
    pub normals: Matrix<R>,
    /// `normals⁻¹`.
    pub frame: Matrix<R>,
    /// `vertices[i]` is opposite side `i`.
    pub vertices: Vec<Vec<R>>,
    pub ideal: Vec<usize>,
}

/// Vertices `x_i` with `x_i ∘ v_j = 0` for `j ≠ i`. Finite vertices lie on
/// the upper sheet; an ideal vertex is scaled so that the largest
/// `x_j ∘ x_i` over the other vertices is `−1`.
pub fn vertices_from_normals<R: Real>(
    c: &Matrix<R>,
) -> Result<(Matrix<R>, Vec<Vec<R>>, Vec<usize>), Error> {
    let dim = c.len();
    let frame = invert(c)?;
    let tol = R::from_f64(1e-10);
    let mut verts: Vec<Vec<R>> = frame
        .iter()
        .map(|row| {
            let mut x = row.clone();
            x[dim - 1] = -x[dim - 1].clone();
            if x[dim - 1] < R::zero() {
                x.iter_mut().for_each(|v| *v = -v.clone());
            }
            x
        })
        .collect();
    let mut ideal = Vec::new();
    for (i, x) in verts.iter_mut().enumerate() {
        let q = dot(x, x);
        let scale = x
            .iter()
            .fold(R::zero(), |acc, v| acc + v.clone() * v.clone());
        if q.abs() <= tol.clone() * scale {
            ideal.push(i);
        } else if q < R::zero() {
            let s = (-q).sqrt();
            x.iter_mut().for_each(|v| *v = v.clone() / s.clone());
        } else {
            return Err(Error::input("simplex has a vertex outside the light cone"));
        }
    }
    for &i in &ideal {
        let mut best: Option<R> = None;
        for (j, y) in verts.iter().enumerate() {
            if j == i || ideal.contains(&j) {
                continue;
            }
            let p = dot(&verts[i], y);
            if best.as_ref().map_or(true, |b| p > *b) {
                best = Some(p);
            }
        }
        let best = best.ok_or_else(|| Error::input("no finite vertex to normalize against"))?;
        let s = -best;
        verts[i].iter_mut().for_each(|v| *v = v.clone() / s.clone());
    }
    Ok((frame, verts, ideal))
}

pub fn coxeter_simplex<R: Real>(gram: Matrix<R>) -> Result<CoxeterSimplex<R>, Error> {
    let normals = lorentz_gram_factor(&gram)?;
    let (frame, vertices, ideal) = vertices_from_normals(&normals)?;
    Ok(CoxeterSimplex {
        gram,
        normals,
        frame,
        vertices,
        ideal,
    })
}

/// The simplex of [`SIMPLEX_DIAGRAM`].
pub fn p6_simplex<R: Real>() -> Result<CoxeterSimplex<R>, Error> {
    coxeter_simplex(gram_from_diagram(7, &SIMPLEX_DIAGRAM)?)
}

/// `y` lies in the horoball `{y : y ∘ b ≥ −1}`.
pub fn horoball_contains<R: Real>(b: &[R], y: &[R], tol: R) -> Result<bool, Error> {
    Ok(lorentz_product(y, b)? >= -R::one() - tol)
}

/// Where the geodesic from `x` towards the center of the horoball `b`
/// meets its boundary.
pub fn project_to_horosphere<R: Real>(x: &[R], b: &[R]) -> Result<Vec<R>, Error> {
    let s = lorentz_product(x, b)?;
    if s > -R::one() {
        return Err(Error::input("point lies inside the horoball"));
    }
    let t = (-s.clone()).ln();
    let e = (-t.clone()).exp();
    let k = t.sinh() / s;
    Ok(x.iter()
        .zip(b)
        .map(|(xi, bi)| e.clone() * xi.clone() - k.clone() * bi.clone())
        .collect())
}

pub fn hyp_distance<R: Real>(x: &[R], y: &[R]) -> Result<R, Error> {
    let c = -lorentz_product(x, y)?;
    if c < R::one() - R::from_f64(1e-12) {
        return Err(Error::input("points are not both on the hyperboloid"));
    }
    if c <= R::one() {
        return Ok(R::zero());
    }
    Ok(c.acosh())
}

/// Euclidean length in a horosphere of a chord of hyperbolic length `d`.
pub fn horosphere_chord<R: Real>(d: R) -> R {
    R::from_i64(2) * (d / R::from_i64(2)).sinh()
}

/// Radius of the ball cut from a totally geodesic slice by a horoball whose
/// deepest point is at height `h` below it.
pub fn slice_radius_from_height<R: Real>(h: R) -> Result<R, Error> {
    if h < R::zero() {
        return Err(Error::input("height must be non-negative"));
    }
    Ok(h.exp().acosh())
}

/// Ball-model picture of the same slice: a horoball of Euclidean radius
/// `r ∈ [1/2, 1)` tangent at the south pole. Returns `(height, Euclidean
/// slice radius, hyperbolic slice radius)`.
pub fn ball_model_slice<R: Real>(r: R) -> Result<(R, R, R), Error> {
    if r < R::from_ratio(1, 2) || r >= R::one() {
        return Err(Error::input("horoball radius must lie in [1/2, 1)"));
    }
    let h = (r.clone() / (R::one() - r.clone())).ln();
    let rho2 = R::from_i64(2) * r - R::one();
    let hyp = (R::one() + R::from_i64(2) * rho2.clone() / (R::one() - rho2.clone())).acosh();
    Ok((h, rho2.sqrt(), hyp))
}

/// In-radius of the all-right spherical `n`-simplex.
pub fn spherical_inradius<R: Real>(n: u32) -> R {
    spherical_barycenter_distance(n, n - 1)
}

/// Spherical distance from the center of the all-right `n`-simplex to the
/// barycenter of one of its `k`-faces.
pub fn spherical_barycenter_distance<R: Real>(n: u32, k: u32) -> R {
    (R::from_i64(k as i64 + 1).sqrt() / R::from_i64(n as i64 + 1).sqrt()).acos()
}

/// Volume of the Euclidean unit ball in `Rⁿ`.
pub fn unit_ball_volume<R: Real>(n: u32) -> R {
    let mut v = if n % 2 == 0 { R::one() } else { R::from_i64(2) };
    let mut k = if n % 2 == 0 { 2 } else { 3 };
    while k <= n {
        v = v * R::from_i64(2) * R::pi() / R::from_i64(k as i64);
        k += 2;
    }
    v
}

/// Volume of the radius-`radius` tube around a geodesic segment of length
/// `len` in `H^{n+1}`.
pub fn tube_volume<R: Real>(n: u32, radius: R, len: R) -> R {
    unit_ball_volume::<R>(n) * radius.sinh().powi(n) * len
}

/// `ln(√(n+1) + √n)`.
pub fn tube_radius<R: Real>(n: u32) -> R {
    (R::from_i64(n as i64 + 1).sqrt() + R::from_i64(n as i64).sqrt()).ln()
}

#[derive(Clone, Debug)]
pub struct P6Constants<R> {
    pub tube_radius: R,
    pub d_max: R,
    pub sigma_volume: R,
    pub group_order: u64,
    pub cusp_edge: R,
    pub cusp_section_volume: R,
    pub v0_assembled: R,
    pub v0_closed: R,
    pub v5: R,
}

pub const P6_GROUP_ORDER: u64 = 51840;

pub fn p6_constants<R: Real>() -> P6Constants<R> {
    let two = R::from_i64(2);
    let pi3 = R::pi().powi(3);
    let sigma_volume = pi3.clone() / R::from_i64(777_600);
    let cusp_edge = R::one() / two.sqrt();
    let cusp_section_volume = cusp_edge.powi(5) * two.clone() / R::from_i64(32 * 120);
    let order = R::from_i64(P6_GROUP_ORDER as i64);
    let v0_assembled =
        order * (sigma_volume.clone() - cusp_section_volume.clone() / R::from_i64(5));
    let c = two.powi(2) * two.sqrt();
    let v0_closed = (c.clone() * pi3 - R::from_i64(81)) / (c * R::from_i64(15));
    P6Constants {
        tube_radius: tube_radius(6),
        d_max: R::from_i64(3).sqrt().acosh(),
        sigma_volume,
        group_order: P6_GROUP_ORDER,
        cusp_edge,
        cusp_section_volume,
        v0_assembled,
        v0_closed,
        v5: unit_ball_volume(5),
    }
}

/// `x⁵/5 − 2x³/3 + x − 8/15`, so that `π³·p(cosh r)` is the volume of a
/// radius-`r` ball in `H⁶`.
pub fn ball_poly<R: Real>(x: R) -> R {
    let x2 = x.clone() * x.clone();
    let x3 = x2.clone() * x.clone();
    let x5 = x3.clone() * x2;
    x5 / R::from_i64(5) - R::from_ratio(2, 3) * x3 + x - R::from_ratio(8, 15)
}

pub fn ball_volume_h6<R: Real>(r: R) -> R {
    R::pi().powi(3) * ball_poly(r.cosh())
}

/// How the largest embedded ball is bounded from the volume.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RmaxMode {
    /// `p(cosh r) = vol`, with the `H⁶` polynomial and no `π³`.
    PaperH6,
    /// `π(sinh 2r − 2r) = vol`, the ball volume in `H³`.
    Dim3,
}

fn bisect<R: Real>(f: impl Fn(R) -> R, lo: R, target: R) -> R {
    let mut lo = lo;
    let mut hi = lo.clone() + R::one();
    while f(hi.clone()) < target {
        hi = hi.clone() + (hi.clone() - lo.clone());
    }
    for _ in 0..400 {
        let mid = (lo.clone() + hi.clone()) / R::from_i64(2);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid.clone()) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) / R::from_i64(2)
}

/// Upper bound on `cosh r_max` for a ball embedded in a manifold of volume
/// `vol`.
pub fn rmax_bound<R: Real>(vol: R, mode: RmaxMode) -> Result<R, Error> {
    if vol <= R::zero() {
        return Err(Error::input("volume must be positive"));
    }
    Ok(match mode {
        RmaxMode::PaperH6 => bisect(ball_poly::<R>, R::one(), vol),
        RmaxMode::Dim3 => {
            let f = |r: R| R::pi() * ((R::from_i64(2) * r.clone()).sinh() - R::from_i64(2) * r);
            bisect(f, R::zero(), vol).cosh()
        }
    })
}

/// `2·v_n(1)/V_core · sinhⁿ(R + d_core)`, the coefficient of the geodesic
/// length in the index bound.
pub fn rf_growth_constant<R: Real>(n: u32, v_core: R, d_core: R, radius: R) -> R {
    R::from_i64(2) * unit_ball_volume::<R>(n) / v_core * (radius + d_core).sinh().powi(n)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EffectiveK {
    pub log10_k: f64,
    pub cosh_rmax: f64,
    pub h_max: f64,
    /// `2(2R + d_max + h_max)`.
    pub sinh_arg: f64,
    pub log10_sinh5: f64,
    pub log10_v5_over_v0: f64,
}

/// `ln sinh x` without overflow.
pub fn ln_sinh(x: f64) -> f64 {
    if x < 1.0 {
        libm::log(libm::sinh(x))
    } else {
        x + libm::log1p(-libm::exp(-2.0 * x)) - core::f64::consts::LN_2
    }
}

/// `log10` of `51840 · C · D · vol^ε · (v₅(1)/V₀) · sinh⁵(2(2R + d_max + ln p⁻¹(vol)))`.
pub fn effective_k(
    vol: f64,
    eps: f64,
    log10_c: f64,
    log10_d: f64,
    mode: RmaxMode,
) -> Result<EffectiveK, Error> {
    if !(vol > 0.0) || !(eps > 0.0) {
        return Err(Error::input("volume and epsilon must be positive"));
    }
    let k = p6_constants::<f64>();
    let cosh_rmax = rmax_bound(vol, mode)?;
    let h_max = libm::log(cosh_rmax);
    let sinh_arg = 2.0 * (2.0 * k.tube_radius + k.d_max + h_max);
    let log10_sinh5 = 5.0 * ln_sinh(sinh_arg) / core::f64::consts::LN_10;
    let log10_v5_over_v0 = libm::log10(k.v5 / k.v0_closed);
    let log10_k = libm::log10(P6_GROUP_ORDER as f64)
        + log10_c
        + log10_d
        + eps * libm::log10(vol)
        + log10_v5_over_v0
        + log10_sinh5;
    Ok(EffectiveK {
        log10_k,
        cosh_rmax,
        h_max,
        sinh_arg,
        log10_sinh5,
        log10_v5_over_v0,
    })
}
