use super::series::LaurentSeries;
use super::SeriesForm;
use crate::curve::{CurveModel, FunctionElement, Place, RingElem};
use crate::differentials::DifferentialForm;
use crate::error::{Error, Result};
use crate::field_linalg::{Fp, Poly, PrimeField};

/// Expansions of the coordinate functions in the chosen uniformizer `t` at a place.
#[derive(Clone, Debug)]
pub struct LocalCoordinates {
    pub x: LaurentSeries,
    pub y: Option<LaurentSeries>,
    pub z: Option<LaurentSeries>,
}

impl LocalCoordinates {
    /// `ω₀ = dx` or `dx/y` as a multiple of `dt`.
    pub fn omega0(&self) -> Result<LaurentSeries> {
        let dx = self.x.derivative();
        match &self.y {
            Some(y) => dx.div(y),
            None => Ok(dx),
        }
    }
}

/// Local coordinates at `place`, each known to relative precision about `rel`.
pub fn local_coordinates(curve: &CurveModel, place: &Place, rel: usize) -> Result<LocalCoordinates> {
    if !curve.contains_place(place) {
        return Err(Error::validation("place", format!("{place} is not a rational place of {curve}")));
    }
    let base = curve.base();
    let (x, y) = match place {
        Place::Infinity => base_at_infinity(&base, rel)?,
        Place::Affine { x: x0, y: y0, .. } => base_affine(&base, *x0, *y0, rel)?,
    };
    let Some(layer) = curve.artin_schreier_layer() else {
        return Ok(LocalCoordinates { x, y, z: None });
    };
    let k = curve.field();
    let p = k.p() as u64;
    let base_coords = LocalCoordinates { x, y, z: None };
    let u = eval_ring(&base, &base_coords, &layer.u, rel)?;
    match place {
        Place::Affine { z: Some(z0), .. } => {
            // z = z0 + ζ with ζ^p - ζ = u and v(u) >= 1: ζ = -Σ u^(p^k)
            let mut zeta = u.neg();
            let mut q = p;
            while u.valuation().is_some_and(|v| (v as u64).saturating_mul(q) < u.abs_precision() as u64) {
                zeta = zeta.sub(&u.spread(q));
                q *= p;
            }
            let z = zeta.add_constant(*z0);
            Ok(LocalCoordinates { z: Some(z), ..base_coords })
        }
        Place::Infinity => {
            let m = layer.m;
            let cu = u.leading_coefficient().ok_or_else(|| {
                Error::Internal("expansion of u at infinity vanished".into())
            })?;
            // u(s) = c_u s^-m U(s); choose z = c_u t^-m so that
            // s^m / U(s) = t^(mp) / (1 - t^(m(p-1))).
            let unit = u.shift(m as i64).scale(k.inv(cu));
            let r = unit.inv()?.nth_root(m)?;
            let sigma_of_s = r.shift(1);
            let s_of_sigma = sigma_of_s.reverse()?;
            let q_len = rel + 1;
            let mut q = vec![0; q_len];
            q[0] = 1;
            let e = (m * (p - 1)) as usize;
            if e < q_len {
                q[e] = k.neg(1);
            }
            let qser = LaurentSeries::new(k, 0, q);
            let sigma_of_t = qser.inv()?.nth_root(m)?.shift(p as i64);
            let s_of_t = s_of_sigma.compose(&sigma_of_t)?;
            let x = base_coords.x.compose(&s_of_t)?;
            let y = match &base_coords.y {
                Some(y) => Some(y.compose(&s_of_t)?),
                None => None,
            };
            let z = LaurentSeries::monomial(k, cu, -(m as i64), rel);
            Ok(LocalCoordinates { x, y, z: Some(z) })
        }
        Place::Affine { z: None, .. } => Err(Error::validation("place", "missing z coordinate")),
    }
}

fn base_at_infinity(base: &CurveModel, rel: usize) -> Result<(LaurentSeries, Option<LaurentSeries>)> {
    let k = base.field();
    match base.hyperelliptic_polynomial() {
        None => Ok((LaurentSeries::monomial(k, 1, -1, rel), None)),
        Some(f) => {
            // x = c t^-2, y = c^(g+1) t^-D R(t), R^2 = Σ f_j c^(j-D-1) t^(2(D-j))
            let d = f.degree().unwrap();
            let g = (d as u64 - 1) / 2;
            let c = f.leading();
            let mut r2 = vec![0; 2 * d + rel + 1];
            let cinv = k.inv(c);
            for (j, &fj) in f.coeffs().iter().enumerate() {
                let scale = k.pow(cinv, (d + 1 - j) as u64);
                r2[2 * (d - j)] = k.mul(fj, scale);
            }
            r2.truncate(rel + 1);
            let r = LaurentSeries::new(k, 0, r2).nth_root(2)?;
            let x = LaurentSeries::monomial(k, c, -2, rel);
            let y = r.scale(k.pow(c, g + 1)).shift(-(d as i64));
            Ok((x, Some(y)))
        }
    }
}

fn base_affine(
    base: &CurveModel,
    x0: Fp,
    y0: Option<Fp>,
    rel: usize,
) -> Result<(LaurentSeries, Option<LaurentSeries>)> {
    let k = base.field();
    let line_x = LaurentSeries::from_poly(k, &[x0, 1], rel as i64);
    match (base.hyperelliptic_polynomial(), y0) {
        (None, _) => Ok((line_x, None)),
        (Some(_), None) => Err(Error::validation("place", "missing y coordinate")),
        (Some(f), Some(0)) => {
            // y = t, x = x0 + w(t^2) where f(x0 + w) = T is reverted.
            let shifted = taylor_shift(f, x0);
            let g = LaurentSeries::from_poly(k, shifted.coeffs(), rel as i64 + 1);
            let w = g.reverse()?;
            let x = w.spread(2).add_constant(x0).truncate_relative(rel);
            let y = LaurentSeries::monomial(k, 1, 1, rel);
            Ok((x, Some(y)))
        }
        (Some(f), Some(y0)) => {
            let shifted = taylor_shift(f, x0);
            let fx = LaurentSeries::from_poly(k, shifted.coeffs(), rel as i64);
            let y2inv = k.inv(k.mul(y0, y0));
            let root = fx.scale(y2inv).nth_root(2)?;
            // nth_root picks the root with leading coefficient sqrt(1); fix the sign to y0.
            let lead = root.leading_coefficient().unwrap();
            let y = root.scale(k.mul(y0, k.inv(lead)));
            Ok((line_x, Some(y)))
        }
    }
}

/// `f(x0 + w)` as a polynomial in `w`.
fn taylor_shift(f: &Poly, x0: Fp) -> Poly {
    let k = f.field();
    let lin = Poly::from_coeffs(k, vec![x0, 1]);
    f.coeffs()
        .iter()
        .rev()
        .fold(Poly::zero(k), |acc, &c| acc.mul(&lin).add(&Poly::constant(k, c)))
}

fn eval_poly(k: PrimeField, q: &Poly, x: &LaurentSeries, rel: usize) -> LaurentSeries {
    let coeffs = q.coeffs();
    let mut acc = LaurentSeries::monomial(k, *coeffs.last().unwrap(), 0, rel.max(1) + 64);
    for &c in coeffs.iter().rev().skip(1) {
        acc = acc.mul(x).add_constant(c);
    }
    acc
}

/// Expansion of a coordinate-ring element; `None` for zero.
fn eval_ring(
    curve: &CurveModel,
    coords: &LocalCoordinates,
    e: &RingElem,
    rel: usize,
) -> Result<LaurentSeries> {
    let k = curve.field();
    let mut total: Option<LaurentSeries> = None;
    let mut zpow: Option<LaurentSeries> = None;
    for c in 0..e.nc() {
        if c > 0 {
            let z = coords.z.as_ref().ok_or_else(|| Error::Internal("missing z expansion".into()))?;
            zpow = Some(match zpow {
                None => z.clone(),
                Some(zp) => zp.mul(z),
            });
        }
        for b in 0..e.nb() {
            let q = e.part(b, c);
            if q.is_zero() {
                continue;
            }
            let mut term = eval_poly(k, q, &coords.x, rel);
            if b == 1 {
                let y = coords.y.as_ref().ok_or_else(|| Error::Internal("missing y expansion".into()))?;
                term = term.mul(y);
            }
            if let Some(zp) = &zpow {
                term = term.mul(zp);
            }
            total = Some(match total {
                None => term,
                Some(t) => t.add(&term),
            });
        }
    }
    total.ok_or_else(|| Error::Precondition("zero element has no expansion".into()))
}

fn with_growing_precision<F>(n: usize, mut attempt: F) -> Result<LaurentSeries>
where
    F: FnMut(usize) -> Result<LaurentSeries>,
{
    let mut rel = n + 16;
    let cap = 64 * (n + 16) + 4096;
    loop {
        let s = attempt(rel)?;
        if s.precision() >= n {
            return Ok(s.truncate_relative(n));
        }
        if rel > cap {
            return Err(Error::Precision(format!(
                "could not reach {n} significant coefficients (working precision {rel})"
            )));
        }
        rel *= 2;
    }
}

/// Laurent expansion of `fn` at `place` to `n` significant coefficients.
pub fn expand_at_place(
    curve: &CurveModel,
    func: &FunctionElement,
    place: &Place,
    n: usize,
) -> Result<LaurentSeries> {
    if func.num.is_zero() {
        return Ok(LaurentSeries::zero(curve.field(), n as i64));
    }
    if func.den.is_zero() {
        return Err(Error::validation("fn", "zero denominator"));
    }
    with_growing_precision(n, |rel| {
        let coords = local_coordinates(curve, place, rel)?;
        let num = eval_ring(curve, &coords, &func.num, rel)?;
        let den = eval_ring(curve, &coords, &func.den, rel)?;
        if den.is_zero() || num.is_zero() {
            return Ok(LaurentSeries::zero(curve.field(), 0));
        }
        num.div(&den)
    })
}

/// Expansion of `a·ω₀` as `u(t) dt` at `place`, to `n` significant coefficients.
pub fn expand_form_at_place(
    curve: &CurveModel,
    form: &DifferentialForm,
    place: &Place,
    n: usize,
) -> Result<SeriesForm> {
    if form.coeff().is_zero() {
        return Ok(SeriesForm::new(LaurentSeries::zero(curve.field(), n as i64)));
    }
    let s = with_growing_precision(n, |rel| {
        let coords = local_coordinates(curve, place, rel)?;
        let a = eval_ring(curve, &coords, form.coeff(), rel)?;
        if a.is_zero() {
            return Ok(a);
        }
        Ok(a.mul(&coords.omega0()?))
    })?;
    Ok(SeriesForm::new(s))
}
