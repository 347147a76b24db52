//! Serializable reports. Rationals and big integers are rendered as
//! strings so that they survive JSON round trips exactly.

use std::fmt::Write as _;

use arithyp_core::isometry::RatMatrix;
use arithyp_core::qform::InvariantProfile;
use arithyp_core::DiagForm;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    #[serde(rename = "computed")]
    Computed,
    #[serde(rename = "parameterized (A, A₁)")]
    Parameterized,
    #[serde(rename = "paper-preset")]
    PaperPreset,
}

impl Provenance {
    pub fn label(self) -> &'static str {
        match self {
            Provenance::Computed => "computed",
            Provenance::Parameterized => "parameterized (A, A₁)",
            Provenance::PaperPreset => "paper-preset",
        }
    }
}

/// A numeric bound, stored as `log10` with a human-readable rendering.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bound {
    pub name: String,
    pub log10: f64,
    pub provenance: Provenance,
    pub display: String,
}

impl Bound {
    pub fn new(name: &str, log10: f64, provenance: Provenance) -> Bound {
        Bound {
            name: name.to_string(),
            log10,
            provenance,
            display: match provenance {
                Provenance::Parameterized => format!("≤ 10^{log10:.4} · (A, A₁ parameterized)"),
                _ => format!("≤ 10^{log10:.4}"),
            },
        }
    }
}

/// `m·10^e` with three significant digits.
pub fn sci_from_log10(l: f64) -> String {
    if !l.is_finite() {
        return l.to_string();
    }
    let e = l.floor();
    let m = 10f64.powf(l - e);
    let (m, e) = if format!("{m:.2}") == "10.00" {
        (1.0, e + 1.0)
    } else {
        (m, e)
    };
    format!("{m:.2}e{e}")
}

pub fn form_strings(q: &DiagForm) -> Vec<String> {
    q.coeffs().iter().map(ToString::to_string).collect()
}

pub fn matrix_strings(p: &RatMatrix) -> Vec<Vec<String>> {
    (0..p.rows())
        .map(|i| p.row(i).iter().map(ToString::to_string).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub form: String,
    pub rank: usize,
    pub signature: (usize, usize),
    pub disc_class: String,
    /// `(place, ε_v)` at every place where the invariant can be nontrivial.
    pub hasse_witt: Vec<(String, i8)>,
    pub nontrivial_at: Vec<String>,
    pub isotropic: bool,
    pub cocompact: bool,
}

impl InvariantsReport {
    pub fn new(q: &DiagForm, profile: &InvariantProfile, isotropic: bool) -> Self {
        InvariantsReport {
            form: q.to_string(),
            rank: profile.rank,
            signature: profile.signature,
            disc_class: profile.disc_class.to_string(),
            hasse_witt: profile
                .hasse_witt
                .iter()
                .map(|(v, e)| (v.to_string(), *e))
                .collect(),
            nontrivial_at: profile
                .nontrivial_places()
                .iter()
                .map(ToString::to_string)
                .collect(),
            isotropic,
            cocompact: !isotropic,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldReport {
    /// `k = Q(√−d)`.
    pub d: u64,
    pub discriminant: i64,
    pub d_k: u64,
    pub class_number: u64,
    pub omega_dk: u32,
    pub zeta_k_2: f64,
    pub quaternion_a: String,
    pub quaternion_b: String,
    /// `(rational prime, number of ramified primes above it, their norm)`.
    pub ramification: Vec<(u64, u32, u64)>,
    pub ram_norms: Vec<u64>,
    pub r_f: u32,
    pub ramification_overridden: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplementReport {
    pub qc: String,
    pub qc_raw: String,
    pub c: String,
    pub x: String,
    pub d: String,
    /// `standard` when `q ≅ ⟨1,1,1,−1⟩` and `⟨1,1,1⟩` is used directly.
    pub path: String,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsometryReport {
    pub source: String,
    pub target: String,
    pub matrix: Vec<Vec<String>>,
    /// Least common multiple of the denominators.
    pub s: String,
    pub steps: usize,
    pub verified: bool,
    pub d_s42: Bound,
    pub d_level42: Bound,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SettingsReport {
    pub eps: f64,
    pub volume: Option<f64>,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "A1")]
    pub a1: f64,
    pub deg_ka: u32,
    pub type_number_one: bool,
    pub precision: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SharpReport {
    pub volume: Option<f64>,
    pub ram_norms: Vec<u64>,
    pub max_s: Option<u32>,
    pub chosen_norms: Vec<u64>,
    pub coefficient: Option<f64>,
    pub eps_coefficient: Option<f64>,
    pub eps_coefficient_rounded: Option<f64>,
    pub small_norms: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometryReport {
    pub tube_radius: f64,
    pub d_max: f64,
    pub sigma_volume: f64,
    pub v0: f64,
    pub v5: f64,
    pub cosh_rmax: Option<f64>,
    pub h_max: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KReport {
    pub preset: Option<String>,
    pub volume: f64,
    pub eps: f64,
    pub log10_c: f64,
    pub log10_d: f64,
    pub cosh_rmax: f64,
    pub h_max: f64,
    pub sinh_argument: f64,
    pub log10_k: Bound,
    pub quoted: Option<String>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub input: Vec<String>,
    pub invariants: InvariantsReport,
    pub field: FieldReport,
    pub complement: ComplementReport,
    pub isometry: IsometryReport,
    pub settings: SettingsReport,
    pub c_prime_eps: f64,
    pub bounds: Vec<Bound>,
    pub sharp: Option<SharpReport>,
    pub geometry: GeometryReport,
    /// `log10 K` when a volume was supplied.
    pub k: Option<Bound>,
    pub k_preset: Option<KReport>,
    pub warnings: Vec<String>,
}

impl PipelineReport {
    pub fn bound(&self, name: &str) -> Option<&Bound> {
        self.bounds.iter().find(|b| b.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let inv = &self.invariants;
        let _ = writeln!(s, "form            {}", inv.form);
        let _ = writeln!(
            s,
            "signature       {:?}, disc class {}",
            inv.signature, inv.disc_class
        );
        let _ = writeln!(
            s,
            "Hasse-Witt      nontrivial at {{{}}}",
            inv.nontrivial_at.join(", ")
        );
        let _ = writeln!(
            s,
            "isotropic       {} (cocompact: {})",
            inv.isotropic, inv.cocompact
        );
        let f = &self.field;
        let _ = writeln!(
            s,
            "field           Q(sqrt(-{})), d_k = {}, h_k = {}, zeta_k(2) = {:.12}",
            f.d, f.d_k, f.class_number, f.zeta_k_2
        );
        let _ = writeln!(
            s,
            "quaternion      ({}, {}), Ram_f norms {:?}{}",
            f.quaternion_a,
            f.quaternion_b,
            f.ram_norms,
            if f.ramification_overridden {
                " (override)"
            } else {
                ""
            }
        );
        let c = &self.complement;
        let _ = writeln!(
            s,
            "complement      {} [{}], verified {}",
            c.qc, c.path, c.verified
        );
        let iso = &self.isometry;
        let _ = writeln!(
            s,
            "isometry        S = {}, {} steps, verified {}",
            iso.s, iso.steps, iso.verified
        );
        let _ = writeln!(s, "C'_eps          {}", self.c_prime_eps);
        if let Some(sh) = &self.sharp {
            if let (Some(m), Some(c)) = (sh.max_s, sh.coefficient) {
                let _ = writeln!(
                    s,
                    "sharp S         |S| <= {m} {:?}, coefficient {c}",
                    sh.chosen_norms
                );
            }
            if let (Some(e), Some(r)) = (sh.eps_coefficient, sh.eps_coefficient_rounded) {
                let _ = writeln!(
                    s,
                    "eps coefficient {e:.6} (rounded {r}), small norms {:?}",
                    sh.small_norms
                );
            }
        }
        for b in &self.bounds {
            let _ = writeln!(
                s,
                "{:<15} log10 = {:.4} ({}) [{}]",
                b.name,
                b.log10,
                b.display,
                b.provenance.label()
            );
        }
        let g = &self.geometry;
        let _ = writeln!(s, "V0              {:.10}", g.v0);
        if let Some(k) = &self.k {
            let _ = writeln!(
                s,
                "{:<15} log10 = {:.4} [{}]",
                k.name,
                k.log10,
                k.provenance.label()
            );
        }
        if let Some(k) = &self.k_preset {
            let b = &k.log10_k;
            let _ = writeln!(
                s,
                "K (preset)      log10 = {:.4} [{}]",
                b.log10,
                b.provenance.label()
            );
            if let Some(n) = &k.note {
                let _ = writeln!(s, "note: {n}");
            }
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        s
    }
}
