//! Job descriptions (TOML in), report documents (JSON or flat text out) and the runner.
//!
//! Curve descriptions:
//!
//! ```toml
//! p = 7
//! model = "artin_schreier"   # or "rational", "hyperelliptic"
//! u = [0, 0, 1]              # x-part of u, ascending
//! u_y = []                   # y-part of u (hyperelliptic bases only)
//! m = 2                      # optional, checked against u
//! [base]
//! model = "hyperelliptic"
//! f = [1, 0, 0, 0, 0, 1]
//! ```
//!
//! Morphism descriptions wrap a curve under `[curve]` and add `target`
//! (`"source"`, `"base"` or `"line"`) and `frobenius` (a boolean or a power).

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::construct::{example_family, search_prank0_base};
use crate::criteria::check_liftable;
use crate::curve::{CurveModel, Divisor, Place};
use crate::differentials::{self, cartier_manin_closed_form, cartier_manin_matrix};
use crate::error::{Error, Result};
use crate::field_linalg::{Fp, Poly, PrimeField};
use crate::localfield::{expand_form_at_place, series_is_exact};
use crate::morphisms::{f_exact_hom_space, insep_degree, Cover, MorphismData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Genus, canonical basis, Cartier–Manin matrix, p-rank and a-number.
    AnalyzeCurve,
    /// Cover invariants and the f-exact hom space.
    AnalyzeMorphism,
    /// Full liftability report.
    CheckLift,
    /// Search for p-rank-0 hyperelliptic bases.
    SearchBase,
    /// Build an Artin–Schreier cover with a certified nonzero f-exact hom.
    ConstructExample,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "cartier-lift", version, about = "Cartier operators and liftability of inseparable morphisms of curves")]
pub struct JobDescription {
    #[command(subcommand)]
    pub command: Command,
    /// TOML job description.
    #[arg(long, global = true)]
    pub input: Option<std::path::PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,
    /// Significant coefficients for local expansions.
    #[arg(long, global = true, default_value_t = 256)]
    pub precision: usize,
    /// Candidate budget for search-base.
    #[arg(long, global = true, default_value_t = 1000)]
    pub budget: u64,
    /// Seed for candidate ordering in search-base.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Structured)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Rational,
    Hyperelliptic,
    ArtinSchreier,
}

/// Serializable curve description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDescription {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub model: ModelKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_y: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Box<CurveDescription>>,
}

fn field_of(p: Option<u64>, inherited: Option<u64>) -> Result<PrimeField> {
    let p = match (p, inherited) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::validation("base.p", format!("{a} differs from the outer p = {b}")))
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return Err(Error::validation("p", "missing")),
    };
    PrimeField::new(p)
}

impl CurveDescription {
    pub fn to_model(&self) -> Result<CurveModel> {
        self.to_model_in(None)
    }

    fn to_model_in(&self, inherited: Option<u64>) -> Result<CurveModel> {
        let k = field_of(self.p, inherited)?;
        let unexpected = |name: &str, present: bool| -> Result<()> {
            if present {
                Err(Error::validation(name, format!("not allowed for model {:?}", self.model)))
            } else {
                Ok(())
            }
        };
        match self.model {
            ModelKind::Rational => {
                unexpected("f", self.f.is_some())?;
                unexpected("u", self.u.is_some() || self.u_y.is_some())?;
                unexpected("base", self.base.is_some())?;
                unexpected("m", self.m.is_some())?;
                Ok(CurveModel::rational(k))
            }
            ModelKind::Hyperelliptic => {
                unexpected("u", self.u.is_some() || self.u_y.is_some())?;
                unexpected("base", self.base.is_some())?;
                unexpected("m", self.m.is_some())?;
                let f = self.f.as_ref().ok_or_else(|| Error::validation("f", "missing"))?;
                CurveModel::hyperelliptic(Poly::from_ints(k, f))
            }
            ModelKind::ArtinSchreier => {
                unexpected("f", self.f.is_some())?;
                let base = match &self.base {
                    Some(b) => b.to_model_in(Some(k.p() as u64))?,
                    None => CurveModel::rational(k),
                };
                if base.has_z() {
                    return Err(Error::validation("base", "must be rational or hyperelliptic"));
                }
                let u0 = Poly::from_ints(k, self.u.as_deref().unwrap_or(&[]));
                let u1 = Poly::from_ints(k, self.u_y.as_deref().unwrap_or(&[]));
                if !u1.is_zero() && !base.has_y() {
                    return Err(Error::validation("u_y", "the base has no y coordinate"));
                }
                let mut u = base.from_x_poly(&u0);
                if let Some(y) = base.y() {
                    u = u.add(&base.mul(&y, &base.from_x_poly(&u1)));
                }
                let order = base
                    .pole_order(&u)
                    .filter(|&o| o > 0)
                    .ok_or_else(|| Error::validation("u", "must be nonconstant"))?;
                let m = self.m.unwrap_or(order);
                CurveModel::artin_schreier(&base, u, m)
            }
        }
    }

    /// Description that parses back to `curve`.
    pub fn from_model(curve: &CurveModel) -> Self {
        let p = Some(curve.p() as u64);
        let ints = |q: &Poly| q.coeffs().iter().map(|&c| c as i64).collect::<Vec<_>>();
        let base_desc = |with_p: bool| CurveDescription {
            p: if with_p { p } else { None },
            model: if curve.has_y() { ModelKind::Hyperelliptic } else { ModelKind::Rational },
            f: curve.hyperelliptic_polynomial().map(ints),
            u: None,
            u_y: None,
            m: None,
            base: None,
        };
        match curve.artin_schreier_layer() {
            None => base_desc(true),
            Some(layer) => CurveDescription {
                p,
                model: ModelKind::ArtinSchreier,
                f: None,
                u: Some(ints(layer.u.part(0, 0))),
                u_y: curve.has_y().then(|| ints(layer.u.part(1, 0))),
                m: Some(layer.m),
                base: Some(Box::new(base_desc(false))),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FrobeniusSpec {
    Twist(bool),
    Power(u32),
}

impl FrobeniusSpec {
    fn power(self) -> u32 {
        match self {
            FrobeniusSpec::Twist(b) => u32::from(b),
            FrobeniusSpec::Power(e) => e,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetKind {
    Source,
    Base,
    Line,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDescription {
    pub curve: CurveDescription,
    pub target: TargetKind,
    pub frobenius: FrobeniusSpec,
}

impl MorphismDescription {
    pub fn to_morphism(&self) -> Result<MorphismData> {
        let x = self.curve.to_model()?;
        let y = match self.target {
            TargetKind::Source => x.clone(),
            TargetKind::Base => x.base(),
            TargetKind::Line => x.line(),
        };
        Ok(MorphismData::with_frobenius_power(Cover::new(&x, &y)?, self.frobenius.power()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchDescription {
    pub p: u64,
    pub genus: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructDescription {
    pub p: u64,
    pub f: Vec<i64>,
    pub m: u64,
}

pub fn parse_toml<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    toml::from_str(text).map_err(|e| {
        let line = e
            .span()
            .map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1)
            .map_or(String::new(), |l| format!("line {l}: "));
        Error::validation("input", format!("{line}{}", e.message()))
    })
}

fn matrix_rows(m: &crate::field_linalg::MatrixModP) -> Vec<Vec<Fp>> {
    m.to_rows()
}

/// `analyze-curve`.
pub fn analyze_curve(desc: &CurveDescription, precision: usize) -> Result<Value> {
    let c = desc.to_model()?;
    let basis = differentials::canonical_monomials(&c)?;
    let g = basis.len();
    let (cm, closed_ok) = if g == 0 {
        (Vec::new(), None)
    } else {
        let cm = cartier_manin_matrix(&c)?;
        let closed_ok = if c.has_y() && !c.has_z() {
            let closed = cartier_manin_closed_form(&c)?;
            if closed != cm {
                return Err(Error::Internal("generic and closed-form Cartier–Manin matrices differ".into()));
            }
            Some(true)
        } else {
            None
        };
        (matrix_rows(&cm.matrix), closed_ok)
    };
    let (p_rank, a_number) = differentials::cartier_invariants(&c)?;
    // Exact regular forms must be exact in the completion at infinity.
    let mut local_checks = 0usize;
    if g > 0 {
        let m = cartier_manin_matrix(&c)?;
        for v in m.matrix.kernel() {
            let form = differentials::DifferentialForm::new(c.from_coordinates(&v, &basis));
            let s = expand_form_at_place(&c, &form, &Place::Infinity, precision)?;
            if !series_is_exact(&s)?.is_exact() {
                return Err(Error::Internal(format!(
                    "{} is globally exact but not exact at infinity",
                    form.display(&c)
                )));
            }
            local_checks += 1;
        }
    }
    let forms: Vec<String> = basis
        .iter()
        .map(|&m| differentials::DifferentialForm::monomial(&c, m).display(&c))
        .collect();
    Ok(json!({
        "command": "analyze-curve",
        "curve": CurveDescription::from_model(&c),
        "model": c.to_string(),
        "genus": c.genus(),
        "genus_from_basis": g,
        "omega0_valuation_at_infinity": c.omega0_valuation(),
        "canonical_basis": forms,
        "cartier_manin": cm,
        "closed_form_agrees": closed_ok,
        "p_rank": p_rank,
        "a_number": a_number,
        "kernel_forms_locally_exact": local_checks,
        "precision": precision,
    }))
}

/// `analyze-morphism`.
pub fn analyze_morphism(desc: &MorphismDescription) -> Result<Value> {
    let f = desc.to_morphism()?;
    f.cover.check_hurwitz()?;
    let inf = f.cover.pullback_divisor(&Divisor::single(Place::Infinity, 1))?;
    let hom = if f.frobenius_power == 1 {
        let h = f_exact_hom_space(&f)?;
        json!({
            "eta": h.eta,
            "eta_divisor": h.eta_divisor.to_string(),
            "pole_bound": h.pole_bound,
            "v_dimension": h.v_dimension(),
            "riemann_roch_lower": h.riemann_roch_lower,
            "nonspecial": h.nonspecial,
            "dimension": h.dimension,
            "basis": h.basis.iter().map(|w| w.display(f.source())).collect::<Vec<_>>(),
        })
    } else {
        Value::Null
    };
    Ok(json!({
        "command": "analyze-morphism",
        "morphism": desc,
        "cover": f.cover.kind(),
        "source_genus": f.source().genus(),
        "target_genus": f.target().genus(),
        "deg_h": f.cover.degree(),
        "insep_degree": insep_degree(&f),
        "degree": f.degree(),
        "r": f.cover.ramification_divisor_degree(),
        "d_different": f.cover.different_at_infinity(),
        "pullback_of_infinity": inf.to_string(),
        "hom_space": hom,
    }))
}

/// `check-lift`.
pub fn check_lift(desc: &MorphismDescription) -> Result<Value> {
    let f = desc.to_morphism()?;
    let report = check_liftable(&f)?;
    let mut v = serde_json::to_value(&report).map_err(|e| Error::Internal(e.to_string()))?;
    v["command"] = json!("check-lift");
    v["morphism"] = serde_json::to_value(desc).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(v)
}

/// `search-base`.
pub fn search_base(desc: &SearchDescription, budget: u64, seed: Option<u64>) -> Result<Value> {
    let hits = search_prank0_base(desc.p, desc.genus, budget, seed)?;
    let curves: Vec<CurveDescription> = hits.iter().map(CurveDescription::from_model).collect();
    Ok(json!({
        "command": "search-base",
        "p": desc.p,
        "genus": desc.genus,
        "budget": budget,
        "seed": seed,
        "found": curves.len(),
        "curves": curves,
    }))
}

/// `construct-example`.
pub fn construct_example(desc: &ConstructDescription) -> Result<Value> {
    let k = PrimeField::new(desc.p)?;
    let base = CurveModel::hyperelliptic(Poly::from_ints(k, &desc.f))?;
    let fam = example_family(&base, desc.m)?;
    let mut report = serde_json::to_value(&fam.report).map_err(|e| Error::Internal(e.to_string()))?;
    report["family_dimension"] = json!(fam.family_dimension);
    Ok(json!({
        "command": "construct-example",
        "base": CurveDescription::from_model(&base),
        "cover": CurveDescription::from_model(&fam.spec.cover),
        "m": fam.spec.m,
        "u": fam.spec.u.to_string(),
        "d_different": fam.spec.d_different,
        "genus": fam.spec.genus,
        "p_rank_base": fam.spec.p_rank_base,
        "p_rank": fam.spec.p_rank,
        "lower_bound": fam.lower_bound,
        "v_dimension": fam.hom.v_dimension(),
        "hom_dimension": fam.hom.dimension,
        "family_dimension": fam.family_dimension,
        "certificate": {
            "delta": fam.certificate.delta.display(&fam.spec.cover),
            "xi": fam.certificate.xi,
        },
        "verdict": fam.report.verdict,
        "report": report,
    }))
}

/// Flat `key: value` lines with dotted paths, in key order.
pub fn render_text(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, x, out);
                }
            }
            Value::Array(items) if items.iter().any(|x| x.is_object()) => {
                for (i, x) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            Value::String(s) => {
                let _ = writeln!(out, "{prefix}: {s}");
            }
            other => {
                let _ = writeln!(out, "{prefix}: {other}");
            }
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
            s.push('\n');
            s
        }
        Format::Text => render_text(v),
    }
}

/// Runs a job on the given input text and returns the rendered report.
pub fn run_on_text(job: &JobDescription, input: &str) -> Result<String> {
    let value = match job.command {
        Command::AnalyzeCurve => analyze_curve(&parse_toml(input)?, job.precision)?,
        Command::AnalyzeMorphism => analyze_morphism(&parse_toml(input)?)?,
        Command::CheckLift => check_lift(&parse_toml(input)?)?,
        Command::SearchBase => search_base(&parse_toml(input)?, job.budget, job.seed)?,
        Command::ConstructExample => construct_example(&parse_toml(input)?)?,
    };
    Ok(render(&value, job.format))
}

/// Reads the input, runs the job, writes the report; returns the exit status.
pub fn run(job: &JobDescription) -> i32 {
    let result = (|| -> Result<String> {
        let input = match &job.input {
            Some(path) => std::fs::read_to_string(path)
                .map_err(|e| Error::validation("input", format!("{}: {e}", path.display())))?,
            None => {
                let mut s = String::new();
                std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
                    .map_err(|e| Error::validation("input", e.to_string()))?;
                s
            }
        };
        let report = run_on_text(job, &input)?;
        match &job.output {
            Some(path) => std::fs::write(path, &report)
                .map_err(|e| Error::validation("output", format!("{}: {e}", path.display())))?,
            None => print!("{report}"),
        }
        Ok(report)
    })();
    match result {
        Ok(_) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
