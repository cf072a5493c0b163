//! p-rank-0 base curves and Artin–Schreier covers carrying nonzero f-exact homs.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::criteria::{
    check_liftable_detailed, verify_rigidified, LiftabilityReport, RigidifiedCertificate, Verdict,
};
use crate::curve::{CurveModel, Monomial, RingElem};
use crate::differentials::{self, cartier_manin_closed_form, p_rank};
use crate::error::{Error, Result};
use crate::field_linalg::{Poly, PrimeField};
use crate::morphisms::{Cover, HomSpaceResult, MorphismData};

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`p` digits of `index`.
pub fn monic_from_index(k: PrimeField, deg: usize, mut index: u64) -> Poly {
    let p = k.p() as u64;
    let mut coeffs = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        coeffs.push((index % p) as u32);
        index /= p;
    }
    coeffs.push(1);
    Poly::from_coeffs(k, coeffs)
}

/// Monic squarefree `y^2 = f` of degree `2g'+1` with p-rank 0.
///
/// Examines at most `budget` candidates in index order, or in a seeded random
/// order when `seed` is given. An empty result is not an error.
pub fn search_prank0_base(
    p: u64,
    g_prime: u64,
    budget: u64,
    seed: Option<u64>,
) -> Result<Vec<CurveModel>> {
    let k = PrimeField::new(p)?;
    if g_prime < 2 {
        return Err(Error::Precondition(format!("base genus must be at least 2, got {g_prime}")));
    }
    let deg = 2 * g_prime as usize + 1;
    let total = (p as u128).checked_pow(deg as u32 - 1).unwrap_or(u128::MAX);
    let limit = (budget as u128).min(total) as u64;
    let indices: Vec<u64> = match seed {
        None => (0..limit).collect(),
        Some(s) => {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            if total <= 4 * budget as u128 {
                let mut all: Vec<u64> = (0..total as u64).collect();
                all.shuffle(&mut rng);
                all.truncate(limit as usize);
                all
            } else {
                use rand::Rng;
                let mut seen = std::collections::BTreeSet::new();
                let mut out = Vec::with_capacity(limit as usize);
                while (out.len() as u64) < limit {
                    let i = rng.random_range(0..total as u64);
                    if seen.insert(i) {
                        out.push(i);
                    }
                }
                out
            }
        }
    };
    let hits = indices
        .par_iter()
        .map(|&i| -> Result<Option<CurveModel>> {
            let f = monic_from_index(k, deg, i);
            if !f.is_squarefree() {
                return Ok(None);
            }
            let c = CurveModel::hyperelliptic(f)?;
            let m = cartier_manin_closed_form(&c)?;
            Ok((m.matrix.stable_rank()? == 0).then_some(c))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(hits.into_iter().flatten().collect())
}

/// Monomial `x^i y^j` of pole order `m` on `base`, least `(i, j)` first.
pub fn monomial_of_pole_order(base: &CurveModel, m: u64) -> Option<Monomial> {
    let (wx, wy, _) = base.coordinate_pole_orders();
    let js: &[u64] = if base.has_y() { &[0, 1] } else { &[0] };
    js.iter()
        .filter_map(|&j| {
            let rest = m.checked_sub(j * wy)?;
            (rest % wx == 0).then_some(Monomial { a: rest / wx, b: j as u8, c: 0 })
        })
        .min_by_key(|mono| (mono.a, mono.b))
}

fn nearest_realizable(base: &CurveModel, m: u64) -> Option<u64> {
    let p = base.p() as u64;
    let ok = |n: u64| n > 0 && !n.is_multiple_of(p) && monomial_of_pole_order(base, n).is_some();
    (1..=m + 2 * p + 2 * base.coordinate_pole_orders().1).find_map(|d| {
        if d <= m && ok(m - d) {
            Some(m - d)
        } else if ok(m + d) {
            Some(m + d)
        } else {
            None
        }
    })
}

/// An Artin–Schreier cover `Z: z^p - z = u` of a base `Y`, with checked invariants.
#[derive(Clone, Debug)]
pub struct CoverSpec {
    pub base: CurveModel,
    pub m: u64,
    pub u: RingElem,
    pub cover: CurveModel,
    pub d_different: u64,
    pub genus: u64,
    pub family_dimension: u64,
    pub p_rank_base: usize,
    pub p_rank: usize,
}

pub fn build_as_cover(base: &CurveModel, m: u64) -> Result<CoverSpec> {
    let p = base.p() as u64;
    if base.has_z() {
        return Err(Error::Unsupported("the base already has an Artin–Schreier layer".into()));
    }
    if m.is_multiple_of(p) {
        return Err(Error::validation("m", format!("m = {m} is divisible by p = {p}")));
    }
    let Some(mono) = monomial_of_pole_order(base, m) else {
        let hint = nearest_realizable(base, m)
            .map_or(String::new(), |n| format!("; nearest realizable pole order is {n}"));
        return Err(Error::validation("m", format!("no monomial has pole order {m}{hint}")));
    };
    let u = base.monomial(mono);
    let z = CurveModel::artin_schreier(base, u.clone(), m)?;
    let d = z.artin_schreier_different();
    let counted = differentials::canonical_monomials(&z)?.len() as i64;
    let formula = (p as i64 * (2 * base.genus() as i64 - 2) + d as i64 + 2) / 2;
    if counted != formula {
        return Err(Error::Internal(format!(
            "genus {counted} from the canonical basis, {formula} from the different"
        )));
    }
    let p_rank_base = p_rank(base)?;
    let p_rank_z = p_rank(&z)?;
    // 1 - p_Z = p (1 - p_Y) - (p - 1)
    if p_rank_z != p as usize * p_rank_base {
        return Err(Error::Internal(format!(
            "p-rank of the cover is {p_rank_z}, expected {}",
            p as usize * p_rank_base
        )));
    }
    Ok(CoverSpec {
        base: base.clone(),
        m,
        u,
        d_different: d,
        genus: formula as u64,
        family_dimension: d / p,
        p_rank_base,
        p_rank: p_rank_z,
        cover: z,
    })
}

/// `(1 - 2p)·p·(g' - 1) + d/2`.
pub fn dimension_lower_bound(p: u64, g_prime: u64, d: u64) -> i64 {
    (1 - 2 * p as i64) * p as i64 * (g_prime as i64 - 1) + d as i64 / 2
}

/// Least `m` making the lower bound positive.
pub fn min_pole_order(p: u64, g_prime: u64) -> u64 {
    (1..).find(|&m| dimension_lower_bound(p, g_prime, (p - 1) * (m + 1)) > 0).unwrap()
}

#[derive(Clone, Debug)]
pub struct ExampleFamily {
    pub spec: CoverSpec,
    pub morphism: MorphismData,
    pub certificate: RigidifiedCertificate,
    pub report: LiftabilityReport,
    pub hom: HomSpaceResult,
    pub lower_bound: i64,
    pub family_dimension: u64,
}

/// `f = (Z → Y) ∘ F` with a nonzero `δ ∈ ker C ∩ V` and its certificate.
pub fn example_family(base: &CurveModel, m: u64) -> Result<ExampleFamily> {
    let p = base.p() as u64;
    let g_prime = base.genus();
    let d = (p - 1) * (m + 1);
    let lower_bound = dimension_lower_bound(p, g_prime, d);
    if lower_bound <= 0 {
        return Err(Error::Precondition(format!(
            "m too small: the lower bound {lower_bound} is not positive; use m >= {}",
            min_pole_order(p, g_prime)
        )));
    }
    let spec = build_as_cover(base, m)?;
    let morphism = MorphismData::new(Cover::new(&spec.cover, base)?, true);
    let (report, hom) = check_liftable_detailed(&morphism)?;
    let hom = hom.expect("an inseparable morphism has a hom space");
    if (hom.v_dimension() as i64) < lower_bound {
        return Err(Error::Internal(format!(
            "dim V = {} is below the lower bound {lower_bound}",
            hom.v_dimension()
        )));
    }
    let Some(delta) = hom.basis.first().cloned() else {
        return Err(Error::Internal(format!(
            "ker C ∩ V = 0 although dim V = {} >= {lower_bound} > 0",
            hom.v_dimension()
        )));
    };
    let certificate = RigidifiedCertificate { delta, xi: 0 };
    if !verify_rigidified(&morphism, &certificate)? {
        return Err(Error::Internal("the extracted certificate does not verify".into()));
    }
    if report.verdict != Verdict::Liftable {
        return Err(Error::Internal(format!("verdict {} for a certified instance", report.verdict.as_str())));
    }
    Ok(ExampleFamily {
        family_dimension: spec.family_dimension,
        spec,
        morphism,
        certificate,
        report,
        hom,
        lower_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_arithmetic() {
        assert_eq!(dimension_lower_bound(7, 2, 186), 2);
        assert_eq!(dimension_lower_bound(7, 2, 24), -79);
        assert_eq!(min_pole_order(7, 2), 30);
    }

    #[test]
    fn search_finds_fermat_quintic() {
        let hits = search_prank0_base(7, 2, 2, None).unwrap();
        let f = Poly::from_ints(PrimeField::new(7).unwrap(), &[1, 0, 0, 0, 0, 1]);
        assert!(hits.iter().any(|c| c.hyperelliptic_polynomial() == Some(&f)));
        assert!(search_prank0_base(5, 0, 10, None).is_err());
    }

    #[test]
    fn monomial_choice() {
        let k = PrimeField::new(7).unwrap();
        let y = CurveModel::hyperelliptic(Poly::from_ints(k, &[1, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(monomial_of_pole_order(&y, 30), Some(Monomial { a: 15, b: 0, c: 0 }));
        assert_eq!(monomial_of_pole_order(&y, 9), Some(Monomial { a: 2, b: 1, c: 0 }));
        assert_eq!(monomial_of_pole_order(&y, 3), None);
        let err = build_as_cover(&y, 3).unwrap_err();
        assert!(err.to_string().contains("nearest"));
        assert!(build_as_cover(&y, 14).is_err());
    }

    #[test]
    fn small_cover_over_prank0_base() {
        let k = PrimeField::new(3).unwrap();
        let y = CurveModel::hyperelliptic(Poly::from_ints(k, &[0, 1, 0, 0, 0, 1])).unwrap();
        if p_rank(&y).unwrap() == 0 {
            let spec = build_as_cover(&y, 4).unwrap();
            assert_eq!(spec.p_rank, 0);
        }
    }
}
