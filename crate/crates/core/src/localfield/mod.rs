//! Completed local fields `F_p((t))` at rational places.
//!
//! Global questions about exactness reduce to formal ones here: a form
//! `Σ a_i t^i dt` is exact in `F_p((t))` iff `a_i = 0` whenever `i ≡ -1 (mod p)`.

mod expand;
mod series;

pub use expand::{expand_at_place, expand_form_at_place, local_coordinates, LocalCoordinates};
pub use series::LaurentSeries;

use crate::error::{Error, Result};

/// The differential `u·dt` in a local coordinate `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesForm {
    pub coefficient: LaurentSeries,
}

/// Outcome of the formal exactness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesExactness {
    /// `d(witness) = ω` to the known precision.
    Exact { witness: LaurentSeries },
    /// The coefficient at `index ≡ -1 (mod p)` is nonzero.
    NotExact { index: i64 },
}

impl SeriesExactness {
    pub fn is_exact(&self) -> bool {
        matches!(self, SeriesExactness::Exact { .. })
    }
}

impl SeriesForm {
    pub fn new(coefficient: LaurentSeries) -> Self {
        Self { coefficient }
    }

    /// `dh` for a series `h`.
    pub fn differential(h: &LaurentSeries) -> Self {
        Self { coefficient: h.derivative() }
    }
}

/// Local Cartier operator: `Σ a_i t^i dt ↦ Σ_j a_{pj+p-1} t^j dt`.
///
/// Over F_p the `p`-th roots of the coefficients are the coefficients themselves.
pub fn series_cartier(omega: &SeriesForm) -> Result<SeriesForm> {
    let u = &omega.coefficient;
    let k = u.field();
    let p = k.p() as i64;
    if u.precision() < p as usize && !u.is_zero() {
        return Err(Error::Precision(format!(
            "need at least {p} known coefficients, have {}",
            u.precision()
        )));
    }
    let abs = u.abs_precision();
    // j ranges over pj + p - 1 in [start, abs)
    let j_lo = (u.start() - p + 1).div_euclid(p) + i64::from((u.start() - p + 1).rem_euclid(p) != 0);
    let j_hi = abs.div_euclid(p); // exclusive
    if u.is_zero() {
        return Ok(SeriesForm::new(LaurentSeries::zero(k, j_hi)));
    }
    let coeffs = (j_lo..j_hi)
        .map(|j| u.coeff(p * j + p - 1).expect("index within known precision"))
        .collect();
    Ok(SeriesForm::new(LaurentSeries::new(k, j_lo, coeffs)))
}

/// Formal exactness: every known `a_i` with `i ≡ -1 (mod p)` vanishes.
///
/// On success the antiderivative `Σ a_i t^(i+1) / (i+1)` is returned.
pub fn series_is_exact(omega: &SeriesForm) -> Result<SeriesExactness> {
    let u = &omega.coefficient;
    let k = u.field();
    let p = k.p() as i64;
    if u.precision() < p as usize && !u.is_zero() {
        return Err(Error::Precision(format!(
            "{} known coefficients do not cover every residue class mod {p}",
            u.precision()
        )));
    }
    if u.is_zero() {
        return Ok(SeriesExactness::Exact { witness: LaurentSeries::zero(k, u.abs_precision() + 1) });
    }
    let start = u.start();
    let mut w = Vec::with_capacity(u.precision());
    for (n, &a) in u.coefficients().iter().enumerate() {
        let i = start + n as i64;
        if (i + 1).rem_euclid(p) == 0 {
            if a != 0 {
                return Ok(SeriesExactness::NotExact { index: i });
            }
            w.push(0);
        } else {
            w.push(k.mul(a, k.inv_int(i + 1)));
        }
    }
    Ok(SeriesExactness::Exact { witness: LaurentSeries::new(k, start + 1, w) })
}
