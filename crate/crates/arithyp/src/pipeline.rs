//! The end-to-end run: invariants, field and quaternion algebra,
//! complement, explicit isometry, index bounds, geometry and `K`.

use arithyp_core::bounds::{
    c1_eps_log10, c2_log10, c_eps_log10, c_prime_eps, field_from_form, quaternion_from_form,
    sharp_s_enumeration, total_index_bound, CATALAN,
};
use arithyp_core::complement::{complementary_form, verify_complement};
use arithyp_core::geometry::{effective_k, p6_constants, rmax_bound, RmaxMode};
use arithyp_core::isometry::{full_isometry_to_standard, log10_big, verify_isometry};
use arithyp_core::qform::{invariant_profile, is_isometric, is_isotropic};
use arithyp_core::DiagForm;

use crate::config::Config;
use crate::fixtures::QUOTED_K;
use crate::report::{
    form_strings, matrix_strings, sci_from_log10, Bound, ComplementReport, FieldReport,
    GeometryReport, InvariantsReport, IsometryReport, KReport, PipelineReport, Provenance,
    SettingsReport, SharpReport,
};
use crate::AppError;

/// Exponent of `d` in the a priori bound on the isometry index.
pub const ISOMETRY_EXPONENT: f64 = 2.4e15;
/// Exponent of `d` in the a priori bound on the degree of the immersing cover.
pub const COVER_EXPONENT: f64 = 2.975e13;

/// Worked examples whose published constants are reproduced verbatim.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// `⟨1,2,5,−10⟩`: index at most `16·1600⁴²`.
    M306,
    /// `⟨1,1,1,−7⟩`: index at most `8·49⁴²·V^{1/2}`.
    Bianchi7,
}

impl Preset {
    pub fn detect(q: &DiagForm) -> Option<Preset> {
        let z = form_strings(q);
        if z == ["1", "2", "5", "-10"] {
            Some(Preset::M306)
        } else if z == ["1", "1", "1", "-7"] {
            Some(Preset::Bianchi7)
        } else {
            None
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::M306 => "m306",
            Preset::Bianchi7 => "bianchi7",
        }
    }

    /// `(coefficient, published level, exponent of V)`.
    fn data(self) -> (f64, f64, f64) {
        match self {
            Preset::M306 => (16.0, 1600.0, 0.0),
            Preset::Bianchi7 => (8.0, 49.0, 0.5),
        }
    }
}

/// `4·G`, the volume of the m306 example.
pub fn m306_volume() -> f64 {
    4.0 * CATALAN
}

/// `K` for the m306 data: `C·V^ε = 16`, `D = 1600⁴²`, `ε = 1`.
pub fn k_m306(vol: f64, mode: RmaxMode) -> Result<KReport, AppError> {
    let log10_c = 16f64.log10() - vol.log10();
    let log10_d = 42.0 * 1600f64.log10();
    let mut r = k_report(vol, 1.0, log10_c, log10_d, mode, Provenance::PaperPreset)?;
    r.preset = Some(Preset::M306.name().into());
    r.quoted = Some(format!("{QUOTED_K:e}"));
    r.note = Some(format!(
        "published example quotes K ≈ {}; the same formula evaluates to {} (documented discrepancy)",
        sci_from_log10(QUOTED_K.log10()),
        r.log10_k.display
    ));
    Ok(r)
}

pub fn k_report(
    vol: f64,
    eps: f64,
    log10_c: f64,
    log10_d: f64,
    mode: RmaxMode,
    provenance: Provenance,
) -> Result<KReport, AppError> {
    let k = effective_k(vol, eps, log10_c, log10_d, mode).map_err(|e| AppError::at("K", e))?;
    Ok(KReport {
        preset: None,
        volume: vol,
        eps,
        log10_c,
        log10_d,
        cosh_rmax: k.cosh_rmax,
        h_max: k.h_max,
        sinh_argument: k.sinh_arg,
        log10_k: Bound::new("K", k.log10_k, provenance),
        quoted: None,
        note: None,
    })
}

pub fn run_pipeline(
    q: &DiagForm,
    eps: f64,
    vol: Option<f64>,
    config: &Config,
) -> Result<PipelineReport, AppError> {
    config.validate()?;
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(AppError::Input("epsilon must be positive".into()));
    }
    if let Some(v) = vol {
        if !(v > 0.0 && v.is_finite()) {
            return Err(AppError::Input("volume must be positive".into()));
        }
    }
    if q.rank() != 4 || q.signature() != (3, 1) || !q.is_integral() {
        return Err(AppError::Input(format!(
            "{q} is not an integral form of signature (3,1)"
        )));
    }
    let preset = Preset::detect(q);
    let mut warnings = Vec::new();

    let profile = invariant_profile(q);
    let isotropic = is_isotropic(q).map_err(|e| AppError::at("invariants", e))?;
    let invariants = InvariantsReport::new(q, &profile, isotropic);

    let (d_raw, _) = field_from_form(q).map_err(|e| AppError::at("field", e))?;
    let mut alg = quaternion_from_form(q).map_err(|e| AppError::at("field", e))?;
    let computed_ram = alg.ram_norms();
    if let Some(norms) = &config.ram_override {
        alg = alg.with_ramification(norms);
    }
    let k = alg.field.clone();
    let field = FieldReport {
        d: k.d,
        discriminant: k.disc,
        d_k: k.d_k,
        class_number: k.h_k,
        omega_dk: k.omega_dk,
        zeta_k_2: k.zeta2,
        quaternion_a: alg.a.to_string(),
        quaternion_b: alg.b.to_string(),
        ramification: alg.ram_f.clone(),
        ram_norms: alg.ram_norms(),
        r_f: alg.r_f,
        ramification_overridden: alg.overridden,
    };
    if preset == Some(Preset::Bianchi7) {
        warnings.push(format!(
            "published-example discrepancy: the example calls this group non-cocompact, but the form is {} over Q",
            if isotropic { "isotropic" } else { "anisotropic (7 is not a sum of three rational squares)" }
        ));
        warnings.push(format!(
            "published-example discrepancy: the example takes the algebra to be a matrix algebra (r_f = 0); computed Ram_f norms {computed_ram:?}{}",
            if alg.overridden { ", overridden by configuration" } else { "" }
        ));
    }

    let standard = DiagForm::standard(3, 1);
    let complement = if is_isometric(q, &standard) {
        let qc = DiagForm::standard(3, 0);
        ComplementReport {
            verified: verify_complement(q, &qc),
            qc: qc.to_string(),
            qc_raw: qc.to_string(),
            c: "1".into(),
            x: "1".into(),
            d: d_raw.to_string(),
            path: "standard".into(),
        }
    } else {
        let w = complementary_form(q).map_err(|e| AppError::at("complement", e))?;
        ComplementReport {
            verified: verify_complement(q, &w.qc),
            qc: w.qc.to_string(),
            qc_raw: w.qc_raw.to_string(),
            c: w.c.to_string(),
            x: w.x.to_string(),
            d: w.d.to_string(),
            path: "constructed".into(),
        }
    };
    if !complement.verified {
        return Err(AppError::Internal(
            "[complement] complement does not verify".into(),
        ));
    }
    let qc = parse_diag(&complement.qc).map_err(|e| AppError::at("complement", e))?;

    let w =
        full_isometry_to_standard(&qc.direct_sum(q)).map_err(|e| AppError::at("isometry", e))?;
    let verified = verify_isometry(&w.p, &w.source, &w.target);
    if !verified {
        return Err(AppError::Internal(
            "[isometry] assembled isometry does not verify".into(),
        ));
    }
    let isometry = IsometryReport {
        source: w.source.to_string(),
        target: w.target.to_string(),
        matrix: matrix_strings(&w.p),
        s: w.s_denom.to_string(),
        steps: w.steps.len(),
        verified,
        d_s42: Bound::new("D (S^42)", w.d_bound.log10_s42, Provenance::Computed),
        d_level42: Bound::new(
            "D (level^42)",
            w.d_bound.log10_level42,
            Provenance::Computed,
        ),
    };

    let stage = |e| AppError::at("bounds", e);
    let log10_a = config.a.log10();
    let log10_d_raw = log10_big(&d_raw);
    let c1 = c1_eps_log10(&k, eps).map_err(stage)?;
    let c_eps = c_eps_log10(&k, eps, config.a1).map_err(stage)?;
    let c2 = c2_log10(&k, config.a1, config.type_number_one);
    let mut bounds = vec![
        Bound::new("C1_eps", c1, Provenance::Computed),
        Bound::new(
            "C2",
            c2,
            if config.type_number_one {
                Provenance::Computed
            } else {
                Provenance::Parameterized
            },
        ),
        Bound::new("C_eps", c_eps, Provenance::Parameterized),
        Bound::new(
            "D a priori",
            log10_a + ISOMETRY_EXPONENT * log10_d_raw,
            Provenance::Parameterized,
        ),
        Bound::new(
            "cover a priori",
            log10_a + COVER_EXPONENT * log10_d_raw,
            Provenance::Parameterized,
        ),
    ];

    let sharp_raw = sharp_s_enumeration(
        &k,
        &alg.ram_norms(),
        vol.unwrap_or(1.0),
        config.deg_ka,
        Some(eps),
    )
    .map_err(stage)?;
    let eps_mode = sharp_raw.eps_mode.clone();
    let sharp = SharpReport {
        volume: vol,
        ram_norms: alg.ram_norms(),
        max_s: vol.map(|_| sharp_raw.max_s),
        chosen_norms: if vol.is_some() {
            sharp_raw.chosen.clone()
        } else {
            Vec::new()
        },
        coefficient: vol.map(|_| sharp_raw.coefficient),
        eps_coefficient: eps_mode.as_ref().map(|e| e.exact),
        eps_coefficient_rounded: eps_mode.as_ref().map(|e| e.rounded),
        small_norms: eps_mode.map(|e| e.small).unwrap_or_default(),
    };

    if let Some(v) = vol {
        let total = total_index_bound(c_eps, w.d_bound.log10_s42, eps, v).map_err(stage)?;
        bounds.push(Bound::new(
            "special index",
            total.special_log10,
            Provenance::Parameterized,
        ));
        bounds.push(Bound::new(
            "cover index",
            total.cover_log10,
            Provenance::Parameterized,
        ));
        bounds.push(Bound::new(
            "sharp index",
            sharp_raw.coefficient.log10() + w.d_bound.log10_level42,
            Provenance::Computed,
        ));
    }
    if let Some(p) = preset {
        let (coef, level, v_exp) = p.data();
        let l = coef.log10() + 42.0 * level.log10() + v_exp * vol.map_or(0.0, f64::log10);
        bounds.push(Bound::new("preset index", l, Provenance::PaperPreset));
        if v_exp > 0.0 && vol.is_none() {
            warnings.push(format!("preset index excludes the factor V^{v_exp}"));
        }
    }

    let mode = RmaxMode::from(config.r_max_mode);
    let g = p6_constants::<f64>();
    let cosh_rmax = vol
        .map(|v| rmax_bound(v, mode))
        .transpose()
        .map_err(|e| AppError::at("geometry", e))?;
    let geometry = GeometryReport {
        tube_radius: g.tube_radius,
        d_max: g.d_max,
        sigma_volume: g.sigma_volume,
        v0: g.v0_closed,
        v5: g.v5,
        cosh_rmax,
        h_max: cosh_rmax.map(f64::ln),
    };

    let k_bound = match vol {
        Some(v) => Some(
            k_report(
                v,
                eps,
                c_eps,
                w.d_bound.log10_s42,
                mode,
                Provenance::Parameterized,
            )?
            .log10_k,
        ),
        None => None,
    };
    let k_preset = match (preset, vol) {
        (Some(Preset::M306), Some(v)) => Some(k_m306(v, mode)?),
        _ => None,
    };

    Ok(PipelineReport {
        input: form_strings(q),
        invariants,
        field,
        complement,
        isometry,
        settings: SettingsReport {
            eps,
            volume: vol,
            a: config.a,
            a1: config.a1,
            deg_ka: config.deg_ka,
            type_number_one: config.type_number_one,
            precision: config.precision,
        },
        c_prime_eps: c_prime_eps(eps),
        bounds,
        sharp: Some(sharp),
        geometry,
        k: k_bound,
        k_preset,
        warnings,
    })
}

/// Inverse of the `Display` of [`DiagForm`].
pub fn parse_diag(s: &str) -> Result<DiagForm, arithyp_core::Error> {
    let inner = s.trim().trim_start_matches('<').trim_end_matches('>');
    let coeffs = inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| arithyp_core::Error::input(format!("bad coefficient {t:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    DiagForm::new(coeffs)
}
