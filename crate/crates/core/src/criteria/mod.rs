//! Necessary conditions, liftability verdicts and rigidified certificates.

use serde::{Deserialize, Serialize};

use crate::curve::CurveModel;
use crate::differentials::{self, cartier, DifferentialForm};
use crate::error::{Error, Result};
use crate::field_linalg::Fp;
use crate::morphisms::{self, f_exact_hom_space, insep_degree, HomSpaceResult, MorphismData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    SeparableTrivial,
    NecessaryFail,
    Liftable,
    NotLiftable,
    InsepTooDeep,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::SeparableTrivial => "SEPARABLE_TRIVIAL",
            Verdict::NecessaryFail => "NECESSARY_FAIL",
            Verdict::Liftable => "LIFTABLE",
            Verdict::NotLiftable => "NOT_LIFTABLE",
            Verdict::InsepTooDeep => "INSEP_TOO_DEEP",
        }
    }
}

/// Numerical invariants and the inequality checks, before any hom-space computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecessaryConditions {
    pub p: u32,
    pub g: u64,
    pub g_prime: u64,
    pub deg_h: u64,
    pub r: u64,
    pub d_different: u64,
    pub a_number: usize,
    pub p_rank_source: usize,
    pub p_rank_target: usize,
    /// `p·r ≥ (2g-2)(p-1)`
    pub ineq_ram_ok: bool,
    /// `a ≥ g'`
    pub ineq_a_ok: bool,
    /// `a ≥ g - 1 - r`
    pub ineq_a2_ok: bool,
    /// `2g - 2 - p·deg h·(2g' - 2) ≥ 0`
    pub degree_ok: bool,
    pub hurwitz_ok: bool,
}

impl NecessaryConditions {
    pub fn all_hold(&self) -> bool {
        self.ineq_ram_ok && self.ineq_a_ok && self.ineq_a2_ok && self.degree_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftabilityReport {
    pub p: u32,
    pub g: u64,
    pub g_prime: u64,
    pub deg_h: u64,
    pub insep_degree: u64,
    pub r: u64,
    pub d_different: u64,
    pub a_number: usize,
    pub p_rank_source: usize,
    pub p_rank_target: usize,
    pub ineq_ram_ok: bool,
    pub ineq_a_ok: bool,
    pub ineq_a2_ok: bool,
    pub degree_ok: bool,
    pub hurwitz_ok: bool,
    pub hom_dimension: usize,
    pub v_dimension: usize,
    pub pole_bound: Option<i64>,
    pub eta: Option<String>,
    /// Basis of the hom space as values on `η`, printed as monomial expansions.
    pub hom_basis: Vec<String>,
    pub verdict: Verdict,
    pub remark: Option<String>,
}

fn target_invariants(t: &CurveModel) -> Result<usize> {
    if t.has_z() {
        return Err(Error::Unsupported("Artin–Schreier targets".into()));
    }
    differentials::p_rank(t)
}

/// All inequalities in exact integer arithmetic.
pub fn necessary_conditions(f: &MorphismData) -> Result<NecessaryConditions> {
    let x = f.source();
    let y = f.target();
    let p = x.p();
    let pi = p as i64;
    let g = x.genus();
    let gp = y.genus();
    let deg_h = f.cover.degree();
    let r = f.cover.ramification_divisor_degree();
    let (p_rank_source, a_number) = differentials::cartier_invariants(x)?;
    let p_rank_target = target_invariants(y)?;
    let (gi, gpi, ri, ai) = (g as i64, gp as i64, r as i64, a_number as i64);
    let hurwitz_ok = f.cover.check_hurwitz().is_ok();
    Ok(NecessaryConditions {
        p,
        g,
        g_prime: gp,
        deg_h,
        r,
        d_different: f.cover.different_at_infinity(),
        a_number,
        p_rank_source,
        p_rank_target,
        ineq_ram_ok: pi * ri >= (2 * gi - 2) * (pi - 1),
        ineq_a_ok: ai >= gpi,
        ineq_a2_ok: ai >= gi - 1 - ri,
        degree_ok: 2 * gi - 2 - pi * deg_h as i64 * (2 * gpi - 2) >= 0,
        hurwitz_ok,
    })
}

const LIFT_REMARK: &str = "a nonzero f-exact homomorphism exists: f degenerates from separable \
morphisms in equal characteristic, and the source/target data also lift to characteristic 0 \
(not computed)";

/// Verdict together with the hom space when one was computed.
pub fn check_liftable_detailed(f: &MorphismData) -> Result<(LiftabilityReport, Option<HomSpaceResult>)> {
    let nc = necessary_conditions(f)?;
    if !nc.hurwitz_ok {
        f.cover.check_hurwitz()?;
    }
    let mut report = LiftabilityReport {
        p: nc.p,
        g: nc.g,
        g_prime: nc.g_prime,
        deg_h: nc.deg_h,
        insep_degree: insep_degree(f),
        r: nc.r,
        d_different: nc.d_different,
        a_number: nc.a_number,
        p_rank_source: nc.p_rank_source,
        p_rank_target: nc.p_rank_target,
        ineq_ram_ok: nc.ineq_ram_ok,
        ineq_a_ok: nc.ineq_a_ok,
        ineq_a2_ok: nc.ineq_a2_ok,
        degree_ok: nc.degree_ok,
        hurwitz_ok: nc.hurwitz_ok,
        hom_dimension: 0,
        v_dimension: 0,
        pole_bound: None,
        eta: None,
        hom_basis: Vec::new(),
        verdict: Verdict::SeparableTrivial,
        remark: None,
    };
    match f.frobenius_power {
        0 => return Ok((report, None)),
        1 => {}
        _ => {
            report.verdict = Verdict::InsepTooDeep;
            report.remark = Some("inseparability degree above p is outside the criterion".into());
            return Ok((report, None));
        }
    }
    let hom = f_exact_hom_space(f)?;
    report.hom_dimension = hom.dimension;
    report.v_dimension = hom.v_dimension();
    report.pole_bound = Some(hom.pole_bound);
    report.eta = Some(hom.eta.to_string());
    report.hom_basis = hom.basis.iter().map(|w| w.display(f.source())).collect();
    report.verdict = if !nc.all_hold() {
        if hom.dimension != 0 {
            return Err(Error::Internal(format!(
                "a necessary condition fails but the hom space has dimension {}",
                hom.dimension
            )));
        }
        Verdict::NecessaryFail
    } else if hom.dimension > 0 {
        report.remark = Some(LIFT_REMARK.into());
        Verdict::Liftable
    } else {
        Verdict::NotLiftable
    };
    Ok((report, Some(hom)))
}

pub fn check_liftable(f: &MorphismData) -> Result<LiftabilityReport> {
    Ok(check_liftable_detailed(f)?.0)
}

/// `(δ(η), ξ)` for a rigidified structure on `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidifiedCertificate {
    pub delta: DifferentialForm,
    pub xi: Fp,
}

impl RigidifiedCertificate {
    /// `α·(δ, ξ) = (αδ, α^-1 ξ)`.
    pub fn scaled(&self, curve: &CurveModel, alpha: Fp) -> Self {
        let k = curve.field();
        Self { delta: self.delta.scale(alpha), xi: k.mul(k.inv(alpha), self.xi) }
    }
}

/// `h^*η` as a multiple of the source's `ω₀`.
fn pulled_back_eta(f: &MorphismData) -> Result<DifferentialForm> {
    let x = f.source();
    let y = f.target();
    morphisms::trivialization(y)?;
    let coeff = if x.has_y() && !y.has_y() { x.y().unwrap() } else { x.one() };
    Ok(DifferentialForm::new(coeff))
}

pub fn verify_rigidified(f: &MorphismData, cert: &RigidifiedCertificate) -> Result<bool> {
    if cert.delta.is_zero() {
        return Ok(false);
    }
    let x = f.source();
    match f.frobenius_power {
        // df = ξ·δ with df(η) = h^*η, so ξ must be a unit and δ(η) = ξ^-1 h^*η.
        0 => {
            if cert.xi == 0 {
                return Ok(false);
            }
            Ok(cert.delta.scale(cert.xi) == pulled_back_eta(f)?)
        }
        // df = 0 on the fiber, so ξ = 0; δ must land in F_*B¹ and respect div η.
        1 => {
            if cert.xi != 0 || !cartier(&cert.delta, x)?.is_zero() {
                return Ok(false);
            }
            let bound = morphisms::pole_bound(f)?;
            Ok(x.pole_order(cert.delta.coeff()).is_some_and(|o| o as i64 <= bound))
        }
        _ => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_linalg::{Poly, PrimeField};
    use crate::morphisms::Cover;

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn frobenius_on_line_is_liftable() {
        let line = CurveModel::rational(k(7));
        let f = MorphismData::new(Cover::identity(&line), true);
        let report = check_liftable(&f).unwrap();
        assert_eq!(report.verdict, Verdict::Liftable);
        let cert = RigidifiedCertificate { delta: DifferentialForm::new(line.one()), xi: 0 };
        assert!(verify_rigidified(&f, &cert).unwrap());
        let zero = RigidifiedCertificate { delta: DifferentialForm::new(line.zero()), xi: 0 };
        assert!(!verify_rigidified(&f, &zero).unwrap());
    }

    #[test]
    fn integer_form_of_ramification_bound() {
        // g = 2, p = 7, h étale onto a genus-2 curve: r = 0 fails 7r >= 12
        let y = CurveModel::hyperelliptic(Poly::from_ints(k(7), &[1, 0, 0, 0, 0, 1])).unwrap();
        let f = MorphismData::new(Cover::identity(&y), true);
        let nc = necessary_conditions(&f).unwrap();
        assert_eq!((nc.g, nc.r), (2, 0));
        assert!(!nc.ineq_ram_ok);
        assert_eq!(check_liftable(&f).unwrap().verdict, Verdict::NecessaryFail);
    }

    #[test]
    fn separable_and_deep() {
        let y = CurveModel::hyperelliptic(Poly::from_ints(k(5), &[0, 1, 0, 1])).unwrap();
        let h = Cover::new(&y, &y.line()).unwrap();
        let sep = MorphismData::new(h.clone(), false);
        assert_eq!(check_liftable(&sep).unwrap().verdict, Verdict::SeparableTrivial);
        let cert = RigidifiedCertificate { delta: DifferentialForm::new(y.y().unwrap().scale(3)), xi: 2 };
        assert!(verify_rigidified(&sep, &cert).unwrap());
        let deep = MorphismData::with_frobenius_power(h, 2);
        assert_eq!(check_liftable(&deep).unwrap().verdict, Verdict::InsepTooDeep);
    }
}
