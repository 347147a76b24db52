use std::path::PathBuf;
use std::process::ExitCode;

use arithyp::config::Config;
use arithyp::corpus::{geometry_audit, render, verify_paper_corpus, Status};
use arithyp::hp::{self, Hp};
use arithyp::pipeline::{k_m306, k_report, run_pipeline};
use arithyp::report::{matrix_strings, InvariantsReport, Provenance};
use arithyp::{parse_form, AppError};
use arithyp_core::complement::complementary_form;
use arithyp_core::geometry::{p6_constants, p6_simplex, RmaxMode};
use arithyp_core::isometry::full_isometry_to_standard;
use arithyp_core::qform::{invariant_profile, is_isotropic};
use arithyp_core::real::Real;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "arithyp",
    version,
    about = "Quadratic forms of signature (3,1), their complements, explicit isometries and index bounds"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Decimal digits for high-precision geometry (overrides the config).
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// TOML file with A, A1, deg_ka, type_number_one, precision, ram_override, r_max_mode.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetArg {
    M306,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rank, signature, discriminant, Hasse-Witt invariants and isotropy.
    Invariants { q: String },
    /// A positive definite ternary complement of q.
    Complement { q: String },
    /// An explicit isometry from the complement plus q to the standard form.
    Isometry { q: String },
    /// Full pipeline with index bounds.
    Bounds {
        q: String,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        vol: Option<f64>,
    },
    /// Normals, vertices and constants of the Coxeter simplex.
    Geometry,
    /// The geodesic residual finiteness constant.
    KConstant {
        #[arg(long)]
        vol: f64,
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        log10_c: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        log10_d: f64,
        #[arg(long)]
        preset: Option<PresetArg>,
    },
    /// Reproduce every published worked value.
    VerifyPaper,
}

fn emit(json: bool, value: serde_json::Value, text: String) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("serializable")
        );
    } else {
        print!("{text}");
    }
}

fn core(stage: &str) -> impl Fn(arithyp_core::Error) -> AppError + '_ {
    move |e| AppError::at(stage, e)
}

fn run(cli: Cli) -> Result<bool, AppError> {
    let mut config = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    if let Some(p) = cli.precision {
        config.precision = p;
    }
    config.validate()?;
    hp::set_precision_digits(config.precision);
    let mode = RmaxMode::from(config.r_max_mode);

    match cli.cmd {
        Cmd::Invariants { q } => {
            let q = parse_form(&q)?;
            let iso = is_isotropic(&q).map_err(core("invariants"))?;
            let r = InvariantsReport::new(&q, &invariant_profile(&q), iso);
            let text = format!(
                "form {}\nsignature {:?}\ndisc class {}\nHasse-Witt {:?}\nisotropic {}\n",
                r.form, r.signature, r.disc_class, r.hasse_witt, r.isotropic
            );
            emit(
                cli.json,
                serde_json::to_value(&r).expect("serializable"),
                text,
            );
        }
        Cmd::Complement { q } => {
            let q = parse_form(&q)?;
            let w = complementary_form(&q).map_err(core("complement"))?;
            let v = json!({
                "q": w.q.to_string(), "qc": w.qc.to_string(), "qc_raw": w.qc_raw.to_string(),
                "c": w.c.to_string(), "x": w.x.to_string(), "d": w.d.to_string(),
                "x_prime": w.x_choice.x_prime.to_string(), "modulus": w.x_choice.modulus.to_string(),
                "aux_prime": w.x_choice.aux_prime.as_ref().map(ToString::to_string),
            });
            let text = format!(
                "q_c = {} (constructed as {}, c = {}, x = {})\n",
                w.qc, w.qc_raw, w.c, w.x
            );
            emit(cli.json, v, text);
        }
        Cmd::Isometry { q } => {
            let q = parse_form(&q)?;
            let w = complementary_form(&q).map_err(core("complement"))?;
            let iso = full_isometry_to_standard(&w.qc.direct_sum(&q)).map_err(core("isometry"))?;
            let v = json!({
                "source": iso.source.to_string(), "target": iso.target.to_string(),
                "matrix": matrix_strings(&iso.p), "s": iso.s_denom.to_string(),
                "steps": iso.steps.len(),
                "log10_d_s42": iso.d_bound.log10_s42, "log10_d_level42": iso.d_bound.log10_level42,
            });
            let text = format!(
                "{} -> {}\n{}\nS = {}, log10 S^42 = {:.4}, log10 (S^2)^42 = {:.4}\n",
                iso.source,
                iso.target,
                iso.p,
                iso.s_denom,
                iso.d_bound.log10_s42,
                iso.d_bound.log10_level42
            );
            emit(cli.json, v, text);
        }
        Cmd::Bounds { q, eps, vol } => {
            let q = parse_form(&q)?;
            let r = run_pipeline(&q, eps, vol, &config)?;
            emit(
                cli.json,
                serde_json::to_value(&r).expect("serializable"),
                r.to_text(),
            );
        }
        Cmd::Geometry => {
            let s = p6_simplex::<Hp>().map_err(core("geometry"))?;
            let k = p6_constants::<Hp>();
            let digits = config.precision as usize;
            let dec = |x: &Hp| x.to_decimal(digits);
            let rows = |m: &Vec<Vec<Hp>>| {
                m.iter()
                    .map(|r| r.iter().map(dec).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
            };
            let audit = geometry_audit().map_err(core("geometry"))?;
            let v = json!({
                "precision_digits": config.precision,
                "normals": rows(&s.normals),
                "vertices": rows(&s.vertices),
                "ideal_vertices": s.ideal,
                "tube_radius": dec(&k.tube_radius), "d_max": dec(&k.d_max),
                "sigma_volume": dec(&k.sigma_volume), "group_order": k.group_order,
                "cusp_edge": dec(&k.cusp_edge), "cusp_section_volume": dec(&k.cusp_section_volume),
                "v0": dec(&k.v0_closed), "v0_assembled": dec(&k.v0_assembled), "v5": dec(&k.v5),
                "gram_residual": audit.gram_residual,
            });
            let mut text = format!("precision {} digits\nvertices:\n", config.precision);
            for (i, x) in s.vertices.iter().enumerate() {
                let r: Vec<String> = x.iter().map(|v| format!("{:.12}", v.to_f64())).collect();
                text.push_str(&format!("  x{} = ({})\n", i + 1, r.join(", ")));
            }
            text.push_str(&format!(
                "R = {}\nd_max = {}\nsigma volume = {}\nV0 = {}\nv5(1) = {}\n",
                dec(&k.tube_radius),
                dec(&k.d_max),
                dec(&k.sigma_volume),
                dec(&k.v0_closed),
                dec(&k.v5)
            ));
            emit(cli.json, v, text);
        }
        Cmd::KConstant {
            vol,
            eps,
            log10_c,
            log10_d,
            preset,
        } => {
            let r = match preset {
                Some(PresetArg::M306) => k_m306(vol, mode)?,
                None => k_report(vol, eps, log10_c, log10_d, mode, Provenance::Computed)?,
            };
            let mut text = format!(
                "cosh r_max = {:.10}\nsinh argument = {:.10}\nlog10 K = {:.6} ({})\n",
                r.cosh_rmax, r.sinh_argument, r.log10_k.log10, r.log10_k.display
            );
            if let Some(n) = &r.note {
                text.push_str(&format!("note: {n}\n"));
            }
            emit(
                cli.json,
                serde_json::to_value(&r).expect("serializable"),
                text,
            );
        }
        Cmd::VerifyPaper => {
            let checks = verify_paper_corpus();
            let ok = checks.iter().all(|c| c.status != Status::Fail);
            emit(
                cli.json,
                serde_json::to_value(&checks).expect("serializable"),
                render(&checks),
            );
            return Ok(ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
