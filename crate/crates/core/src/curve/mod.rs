//! Explicit curve models over F_p.
//!
//! A model is a tower over the projective line with coordinate `x`:
//!
//! * the line itself;
//! * an odd-degree hyperelliptic curve `y^2 = f(x)`;
//! * an Artin–Schreier cover `z^p - z = u` of either, with `u` a regular function
//!   on the affine chart having a single pole, at infinity, of order `m` prime to `p`.
//!
//! Every layer has exactly one place above infinity, and it is rational. The
//! standard differential `ω₀` is `dx` on towers over the line and `dx/y` on towers
//! containing a hyperelliptic layer; it has no zeros or poles on the affine chart,
//! so its divisor is `(2g - 2)·∞`.
//!
//! Uniformizers at infinity are fixed per model: `x = t^-1` on the line,
//! `x = c·t^-2` on `y^2 = f` with `c` the leading coefficient of `f`, and on an
//! Artin–Schreier layer `z = c_u·t^-m` with `c_u` the leading coefficient of the
//! expansion of `u` in the base uniformizer.

mod place;
mod ring;

use std::fmt;

pub use place::{Divisor, Place};
pub use ring::{Monomial, RingElem};

use crate::error::{Error, Result};
use crate::field_linalg::{Fp, Poly, PrimeField};

/// Artin–Schreier layer `z^p - z = u` over a base model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinSchreierLayer {
    /// `u` as an element of the base coordinate ring.
    pub u: RingElem,
    /// Pole order of `u` at the base's infinite place.
    pub m: u64,
}

/// A quotient `num / den` of coordinate-ring elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionElement {
    pub num: RingElem,
    pub den: RingElem,
}

impl FunctionElement {
    pub fn new(num: RingElem, den: RingElem) -> Self {
        Self { num, den }
    }
}

impl From<RingElem> for FunctionElement {
    fn from(num: RingElem) -> Self {
        let mut den = RingElem::zero_shaped(num.field(), num.nb(), num.nc());
        den.add_monomial(Monomial::ONE, 1);
        Self { num, den }
    }
}

/// Which kind of model sits at the top of the tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Rational,
    Hyperelliptic,
    ArtinSchreierCover,
}

/// A curve over F_p given by an explicit tower of equations.
#[derive(Clone, Debug)]
pub struct CurveModel {
    field: PrimeField,
    hyper: Option<Poly>,
    artin_schreier: Option<ArtinSchreierLayer>,
    cache: RingCache,
}

#[derive(Clone, Debug)]
struct RingCache {
    nb: usize,
    nc: usize,
    wx: u64,
    wy: u64,
    wz: u64,
    /// `f` on hyperelliptic towers, `1` otherwise.
    f: Poly,
    f_prime_half: Poly,
    /// `f^((p-1)/2) = y^(p-1)`.
    f_half_power: Poly,
    /// `f·D(u)` as a base element (nc = 1), where `D = d/dx`.
    f_du: Option<RingElem>,
    /// `(z + u)^c` for `c < p`.
    z_plus_u_powers: Vec<RingElem>,
}

impl PartialEq for CurveModel {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.hyper == other.hyper
            && self.artin_schreier == other.artin_schreier
    }
}

impl Eq for CurveModel {}

impl CurveModel {
    pub fn rational(field: PrimeField) -> Self {
        Self::build(field, None, None)
    }

    /// `y^2 = f(x)` with `f` squarefree of odd degree at least 3.
    pub fn hyperelliptic(f: Poly) -> Result<Self> {
        let deg = f.degree().unwrap_or(0);
        if deg < 3 || deg.is_multiple_of(2) {
            return Err(Error::validation(
                "f",
                format!("degree must be odd and at least 3, got {deg}"),
            ));
        }
        if !f.is_squarefree() {
            return Err(Error::validation("f", format!("{f} is not squarefree")));
        }
        Ok(Self::build(f.field(), Some(f), None))
    }

    /// `z^p - z = u` over `base`, where `u` has a single pole at infinity of order
    /// `m` with `gcd(m, p) = 1`.
    pub fn artin_schreier(base: &CurveModel, u: RingElem, m: u64) -> Result<Self> {
        if base.artin_schreier.is_some() {
            return Err(Error::Unsupported(
                "Artin–Schreier covers of Artin–Schreier covers".into(),
            ));
        }
        let p = base.field.p() as u64;
        if u.nb() != base.cache.nb || u.nc() != 1 {
            return Err(Error::validation("u", "not an element of the base coordinate ring"));
        }
        let Some(order) = base.pole_order(&u) else {
            return Err(Error::validation("u", "u must be nonconstant"));
        };
        if order == 0 {
            return Err(Error::validation("u", "u must be nonconstant"));
        }
        if order != m {
            return Err(Error::validation(
                "m",
                format!("u has pole order {order} at infinity, but m = {m}"),
            ));
        }
        if m.is_multiple_of(p) {
            return Err(Error::validation("m", format!("pole order {m} is divisible by p = {p}")));
        }
        Ok(Self::build(
            base.field,
            base.hyper.clone(),
            Some(ArtinSchreierLayer { u, m }),
        ))
    }

    fn build(
        field: PrimeField,
        hyper: Option<Poly>,
        artin_schreier: Option<ArtinSchreierLayer>,
    ) -> Self {
        let p = field.p() as u64;
        let nb = if hyper.is_some() { 2 } else { 1 };
        let nc = if artin_schreier.is_some() { p as usize } else { 1 };
        let (bx, by) = match &hyper {
            Some(f) => (2, f.degree().unwrap() as u64),
            None => (1, 0),
        };
        let (wx, wy, wz) = match &artin_schreier {
            Some(layer) => (p * bx, p * by, layer.m),
            None => (bx, by, 0),
        };
        let f = hyper.clone().unwrap_or_else(|| Poly::one(field));
        let half = field.inv(2);
        let f_prime_half = f.derivative().scale(half);
        let f_half_power = f.pow((p - 1) / 2);
        let mut cache = RingCache {
            nb,
            nc,
            wx,
            wy,
            wz,
            f,
            f_prime_half,
            f_half_power,
            f_du: None,
            z_plus_u_powers: Vec::new(),
        };
        if let Some(layer) = &artin_schreier {
            // f·D(u) = f u0' + (f u1' + u1 f'/2) y
            let u0 = layer.u.part(0, 0);
            let mut parts = vec![cache.f.mul(&u0.derivative())];
            if nb == 2 {
                let u1 = layer.u.part(1, 0);
                parts.push(cache.f.mul(&u1.derivative()).add(&u1.mul(&cache.f_prime_half)));
            }
            cache.f_du = Some(RingElem::from_parts(nb, parts));
        }
        let mut model = Self { field, hyper, artin_schreier, cache };
        if let Some(u) = model.artin_schreier.as_ref().map(|layer| layer.u.clone()) {
            let mut z_plus_u = model.embed_base(&u);
            z_plus_u.add_monomial(Monomial { a: 0, b: 0, c: 1 }, 1);
            let mut pows = vec![model.one()];
            for c in 1..p as usize {
                let next = model.mul(&pows[c - 1], &z_plus_u);
                pows.push(next);
            }
            model.cache.z_plus_u_powers = pows;
        }
        model
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn variant(&self) -> Variant {
        match (&self.hyper, &self.artin_schreier) {
            (_, Some(_)) => Variant::ArtinSchreierCover,
            (Some(_), None) => Variant::Hyperelliptic,
            (None, None) => Variant::Rational,
        }
    }

    /// The hyperelliptic polynomial, if the tower contains a hyperelliptic layer.
    pub fn hyperelliptic_polynomial(&self) -> Option<&Poly> {
        self.hyper.as_ref()
    }

    pub fn artin_schreier_layer(&self) -> Option<&ArtinSchreierLayer> {
        self.artin_schreier.as_ref()
    }

    /// The model with the Artin–Schreier layer removed (itself if there is none).
    pub fn base(&self) -> CurveModel {
        match self.artin_schreier {
            Some(_) => Self::build(self.field, self.hyper.clone(), None),
            None => self.clone(),
        }
    }

    /// The projective line at the bottom of the tower.
    pub fn line(&self) -> CurveModel {
        Self::rational(self.field)
    }

    pub fn has_y(&self) -> bool {
        self.cache.nb == 2
    }

    pub fn has_z(&self) -> bool {
        self.cache.nc > 1
    }

    /// Genus from the closed formulas (hyperelliptic degree, Artin–Schreier different).
    pub fn genus(&self) -> u64 {
        let p = self.field.p() as i64;
        let base_genus = match &self.hyper {
            Some(f) => (f.degree().unwrap() as i64 - 1) / 2,
            None => 0,
        };
        match &self.artin_schreier {
            None => base_genus as u64,
            Some(layer) => {
                let d = (p - 1) * (layer.m as i64 + 1);
                ((p * (2 * base_genus - 2) + d + 2) / 2) as u64
            }
        }
    }

    /// Degree of the different of the Artin–Schreier layer, `(p-1)(m+1)`, or 0.
    pub fn artin_schreier_different(&self) -> u64 {
        self.artin_schreier
            .as_ref()
            .map_or(0, |l| (self.field.p() as u64 - 1) * (l.m + 1))
    }

    /// Valuation of `ω₀` at infinity, which equals `2g - 2`.
    pub fn omega0_valuation(&self) -> i64 {
        let base = match &self.hyper {
            Some(f) => f.degree().unwrap() as i64 - 3,
            None => -2,
        };
        match &self.artin_schreier {
            None => base,
            Some(_) => {
                self.field.p() as i64 * base + self.artin_schreier_different() as i64
            }
        }
    }

    /// Pole orders at infinity of `x`, `y`, `z` (0 where the coordinate is absent).
    pub fn coordinate_pole_orders(&self) -> (u64, u64, u64) {
        (self.cache.wx, self.cache.wy, self.cache.wz)
    }

    // ---- coordinate ring ----

    pub fn zero(&self) -> RingElem {
        RingElem::zero_shaped(self.field, self.cache.nb, self.cache.nc)
    }

    pub fn one(&self) -> RingElem {
        self.monomial(Monomial::ONE)
    }

    pub fn monomial(&self, m: Monomial) -> RingElem {
        let mut e = self.zero();
        assert!((m.b as usize) < self.cache.nb && (m.c as usize) < self.cache.nc);
        e.add_monomial(m, 1);
        e
    }

    pub fn from_x_poly(&self, q: &Poly) -> RingElem {
        let mut e = self.zero();
        *e.part_mut(0, 0) = q.clone();
        e
    }

    pub fn x(&self) -> RingElem {
        self.monomial(Monomial { a: 1, b: 0, c: 0 })
    }

    pub fn y(&self) -> Option<RingElem> {
        self.has_y().then(|| self.monomial(Monomial { a: 0, b: 1, c: 0 }))
    }

    pub fn z(&self) -> Option<RingElem> {
        self.has_z().then(|| self.monomial(Monomial { a: 0, b: 0, c: 1 }))
    }

    /// Element from `(monomial, coefficient)` pairs.
    pub fn element(&self, terms: &[(Monomial, Fp)]) -> RingElem {
        let mut e = self.zero();
        for &(m, c) in terms {
            e.add_monomial(m, c);
        }
        e
    }

    /// Embeds an element of the base coordinate ring.
    pub fn embed_base(&self, e: &RingElem) -> RingElem {
        assert_eq!(e.nb(), self.cache.nb);
        let mut out = self.zero();
        for c in 0..e.nc().min(self.cache.nc) {
            for b in 0..e.nb() {
                *out.part_mut(b, c) = e.part(b, c).clone();
            }
        }
        out
    }

    /// Product of two base-layer pieces `(P0 + P1 y)(Q0 + Q1 y)`.
    fn base_mul(&self, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
        if self.cache.nb == 1 {
            vec![a[0].mul(&b[0])]
        } else {
            let f = &self.cache.f;
            vec![
                a[0].mul(&b[0]).add(&a[1].mul(&b[1]).mul(f)),
                a[0].mul(&b[1]).add(&a[1].mul(&b[0])),
            ]
        }
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let nb = self.cache.nb;
        let nc = self.cache.nc;
        let k = self.field;
        let mut acc: Vec<Vec<Poly>> = vec![vec![Poly::zero(k); nb]; 2 * nc - 1];
        let pa = a.parts();
        let pb = b.parts();
        for ca in 0..nc {
            let sa = &pa[ca * nb..(ca + 1) * nb];
            if sa.iter().all(Poly::is_zero) {
                continue;
            }
            for cb in 0..nc {
                let sb = &pb[cb * nb..(cb + 1) * nb];
                if sb.iter().all(Poly::is_zero) {
                    continue;
                }
                let prod = self.base_mul(sa, sb);
                for (slot, q) in acc[ca + cb].iter_mut().zip(&prod) {
                    slot.add_assign(q);
                }
            }
        }
        if nc > 1 {
            let u = self.artin_schreier.as_ref().unwrap().u.parts().to_vec();
            // z^k = z^(k-p) (z + u)
            for deg in (nc..2 * nc - 1).rev() {
                let top = std::mem::replace(&mut acc[deg], vec![Poly::zero(k); nb]);
                if top.iter().all(Poly::is_zero) {
                    continue;
                }
                let tu = self.base_mul(&top, &u);
                for (slot, q) in acc[deg - nc + 1].iter_mut().zip(&top) {
                    slot.add_assign(q);
                }
                for (slot, q) in acc[deg - nc].iter_mut().zip(&tu) {
                    slot.add_assign(q);
                }
            }
        }
        acc.truncate(nc);
        RingElem::from_parts(nb, acc.into_iter().flatten().collect())
    }

    pub fn pow(&self, a: &RingElem, mut e: u64) -> RingElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Multiplication by `y`.
    pub fn mul_y(&self, a: &RingElem) -> RingElem {
        assert!(self.has_y());
        let mut out = self.zero();
        for c in 0..self.cache.nc {
            *out.part_mut(0, c) = a.part(1, c).mul(&self.cache.f);
            *out.part_mut(1, c) = a.part(0, c).clone();
        }
        out
    }

    /// Exact division by `y`, `None` if `y` does not divide `a` in the ring.
    pub fn div_y(&self, a: &RingElem) -> Option<RingElem> {
        if !self.has_y() {
            return None;
        }
        let mut out = self.zero();
        for c in 0..self.cache.nc {
            *out.part_mut(0, c) = a.part(1, c).clone();
            *out.part_mut(1, c) = a.part(0, c).div_exact(&self.cache.f)?;
        }
        Some(out)
    }

    // ---- valuations at infinity ----

    pub fn monomial_pole_order(&self, m: Monomial) -> u64 {
        m.a * self.cache.wx + m.b as u64 * self.cache.wy + m.c as u64 * self.cache.wz
    }

    /// Pole order at infinity, `None` for zero.
    pub fn pole_order(&self, e: &RingElem) -> Option<u64> {
        self.leading_term(e).map(|(m, _)| self.monomial_pole_order(m))
    }

    /// Valuation at infinity, `None` for zero.
    pub fn valuation_at_infinity(&self, e: &RingElem) -> Option<i64> {
        self.pole_order(e).map(|o| -(o as i64))
    }

    /// The monomial of largest pole order and its coefficient.
    pub fn leading_term(&self, e: &RingElem) -> Option<(Monomial, Fp)> {
        let mut best: Option<(u64, Monomial, Fp)> = None;
        for c in 0..self.cache.nc {
            for b in 0..self.cache.nb {
                let part = e.part(b, c);
                if let Some(a) = part.degree() {
                    let m = Monomial { a: a as u64, b: b as u8, c: c as u32 };
                    let ord = self.monomial_pole_order(m);
                    if best.is_none_or(|(o, _, _)| ord > o) {
                        best = Some((ord, m, part.leading()));
                    }
                }
            }
        }
        best.map(|(_, m, v)| (m, v))
    }

    /// The unique basis monomial with the given pole order, if the order is a non-gap.
    pub fn monomial_with_pole_order(&self, ord: u64) -> Option<Monomial> {
        let RingCache { nb, nc, wx, wy, wz, .. } = self.cache;
        for c in 0..nc as u64 {
            let Some(rest) = ord.checked_sub(c * wz) else { break };
            for b in 0..nb as u64 {
                let Some(r2) = rest.checked_sub(b * wy) else { break };
                if r2 % wx == 0 {
                    return Some(Monomial { a: r2 / wx, b: b as u8, c: c as u32 });
                }
            }
        }
        None
    }

    /// All basis monomials with pole order at most `bound`, ascending by pole order.
    pub fn monomials_up_to(&self, bound: i64) -> Vec<Monomial> {
        if bound < 0 {
            return Vec::new();
        }
        let bound = bound as u64;
        let RingCache { nb, nc, wx, wy, wz, .. } = self.cache;
        let mut out = Vec::new();
        for c in 0..nc as u64 {
            for b in 0..nb as u64 {
                let base = b * wy + c * wz;
                if base > bound {
                    continue;
                }
                for a in 0..=(bound - base) / wx {
                    out.push(Monomial { a, b: b as u8, c: c as u32 });
                }
            }
        }
        out.sort_by_key(|&m| self.monomial_pole_order(m));
        out
    }

    /// Coordinates of `e` against `monomials`, `None` if `e` leaves their span.
    pub fn coordinates(&self, e: &RingElem, monomials: &[Monomial]) -> Option<Vec<Fp>> {
        let mut v = vec![0; monomials.len()];
        let mut seen = 0usize;
        for (i, &m) in monomials.iter().enumerate() {
            v[i] = e.coefficient(m);
            if v[i] != 0 {
                seen += 1;
            }
        }
        (seen == e.terms().len()).then_some(v)
    }

    pub fn from_coordinates(&self, coords: &[Fp], monomials: &[Monomial]) -> RingElem {
        let mut e = self.zero();
        for (&c, &m) in coords.iter().zip(monomials) {
            if c != 0 {
                e.add_monomial(m, c);
            }
        }
        e
    }

    /// Discrete valuation of `func` at `place`.
    ///
    /// At infinity this is read off the monomial pole orders; at affine places it
    /// comes from the local expansion.
    pub fn valuation(&self, func: &FunctionElement, place: &Place) -> Result<i64> {
        if func.num.is_zero() {
            return Err(Error::validation("fn", "the zero function has no valuation"));
        }
        if func.den.is_zero() {
            return Err(Error::validation("fn", "zero denominator"));
        }
        match place {
            Place::Infinity => {
                Ok(self.pole_order(&func.den).unwrap() as i64
                    - self.pole_order(&func.num).unwrap() as i64)
            }
            Place::Affine { .. } => {
                let s = crate::localfield::expand_at_place(self, func, place, 1)?;
                s.valuation()
                    .ok_or_else(|| Error::Internal("nonzero function expanded to zero".into()))
            }
        }
    }

    // ---- Frobenius and the derivation d/dx ----

    /// `m^p`, using `y^p = y f^((p-1)/2)` and `z^p = z + u`.
    pub fn frobenius_monomial(&self, m: Monomial) -> RingElem {
        let p = self.field.p() as usize;
        let mut e = if m.c == 0 {
            self.one()
        } else {
            self.cache.z_plus_u_powers[m.c as usize].clone()
        };
        let mut xpart = Poly::monomial(self.field, 1, m.a as usize * p);
        if m.b == 1 {
            e = self.mul_y(&e);
            xpart = xpart.mul(&self.cache.f_half_power);
        }
        e.mul_poly(&xpart)
    }

    /// `a^p`.
    pub fn frobenius(&self, a: &RingElem) -> RingElem {
        let mut out = self.zero();
        for (m, c) in a.terms() {
            out.add_scaled(c, &self.frobenius_monomial(m));
        }
        out
    }

    /// The unique `b` with `b^p = target`, or `None` if `target` is not a `p`-th power.
    ///
    /// Peels off the monomial of largest pole order: the leading monomial of `μ^p`
    /// has pole order `p·ord(μ)`, so each step strictly lowers the pole order.
    pub fn pth_root(&self, target: &RingElem) -> Option<RingElem> {
        let k = self.field;
        let p = k.p() as u64;
        let mut rest = target.clone();
        let mut root = self.zero();
        while let Some((lead, coeff)) = self.leading_term(&rest) {
            let ord = self.monomial_pole_order(lead);
            if !ord.is_multiple_of(p) {
                return None;
            }
            let mu = self.monomial_with_pole_order(ord / p)?;
            let fm = self.frobenius_monomial(mu);
            let lc = fm.coefficient(lead);
            if lc == 0 {
                return None;
            }
            let s = k.mul(coeff, k.inv(lc));
            root.add_monomial(mu, s);
            rest.add_scaled(k.neg(s), &fm);
        }
        Some(root)
    }

    /// `f · D(a)` with `D = d/dx`; it lies in the coordinate ring.
    ///
    /// `D(y) = f' y / (2 f)` and `D(z) = -D(u)`. On towers without `y`, `f = 1`.
    pub fn f_times_derivative(&self, a: &RingElem) -> RingElem {
        let k = self.field;
        let nb = self.cache.nb;
        let f = &self.cache.f;
        let mut out = self.zero();
        for c in 0..self.cache.nc {
            for b in 0..nb {
                let q = a.part(b, c);
                if q.is_zero() {
                    continue;
                }
                out.part_mut(b, c).add_assign(&f.mul(&q.derivative()));
                if b == 1 {
                    out.part_mut(1, c).add_assign(&q.mul(&self.cache.f_prime_half));
                }
                if c > 0 {
                    let f_du = self.cache.f_du.as_ref().unwrap().parts();
                    let mut piece = vec![Poly::zero(k); nb];
                    piece[b] = q.clone();
                    let prod = self.base_mul(&piece, f_du);
                    let s = k.neg(k.from_u64(c as u64));
                    for (bb, term) in prod.iter().enumerate() {
                        out.part_mut(bb, c - 1).add_scaled_shifted(s, 0, term);
                    }
                }
            }
        }
        out
    }

    /// `f` on hyperelliptic towers and `1` otherwise: the denominator of `D`.
    pub fn derivation_denominator(&self) -> &Poly {
        &self.cache.f
    }

    pub(crate) fn derivation_denominator_derivative(&self) -> Poly {
        self.cache.f.derivative()
    }

    /// `y^(p-1) = f^((p-1)/2)` on hyperelliptic towers, `1` otherwise.
    pub fn y_pow_p_minus_one(&self) -> &Poly {
        &self.cache.f_half_power
    }

    // ---- places ----

    /// Whether `place` is a rational point of this model.
    pub fn contains_place(&self, place: &Place) -> bool {
        match place {
            Place::Infinity => true,
            Place::Affine { x, y, z } => {
                if *x >= self.p() {
                    return false;
                }
                let y_ok = match (&self.hyper, y) {
                    (Some(f), Some(y)) => {
                        *y < self.p() && self.field.mul(*y, *y) == f.eval(*x)
                    }
                    (None, None) => true,
                    _ => false,
                };
                let z_ok = match (&self.artin_schreier, z) {
                    (Some(layer), Some(z)) => {
                        // z^p - z = 0 for z in F_p
                        *z < self.p() && self.evaluate_base(&layer.u, *x, *y) == Some(0)
                    }
                    (None, None) => true,
                    _ => false,
                };
                y_ok && z_ok
            }
        }
    }

    /// Value of a base-ring element at an affine point of the base.
    pub(crate) fn evaluate_base(&self, e: &RingElem, x: Fp, y: Option<Fp>) -> Option<Fp> {
        let k = self.field;
        let mut v = e.part(0, 0).eval(x);
        if e.nb() == 2 {
            v = k.add(v, k.mul(e.part(1, 0).eval(x), y?));
        }
        Some(v)
    }

    /// All affine rational points, by exhaustive search over F_p.
    pub fn rational_affine_places(&self) -> Vec<Place> {
        let k = self.field;
        let mut out = Vec::new();
        for x in k.elements() {
            let ys: Vec<Option<Fp>> = match &self.hyper {
                None => vec![None],
                Some(f) => {
                    let v = f.eval(x);
                    match k.sqrt(v) {
                        None => vec![],
                        Some(0) => vec![Some(0)],
                        Some(r) => {
                            let mut both = vec![r, k.neg(r)];
                            both.sort_unstable();
                            both.into_iter().map(Some).collect()
                        }
                    }
                }
            };
            for y in ys {
                match &self.artin_schreier {
                    None => out.push(Place::Affine { x, y, z: None }),
                    Some(layer) => {
                        if self.evaluate_base(&layer.u, x, y) == Some(0) {
                            for z in k.elements() {
                                out.push(Place::Affine { x, y, z: Some(z) });
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.hyper {
            Some(poly) => write!(f, "y^2 = {poly}")?,
            None => write!(f, "P^1")?,
        }
        if let Some(layer) = &self.artin_schreier {
            let p = self.field.p();
            write!(f, ", z^{p} - z = {}", layer.u)?;
        }
        write!(f, " over F_{}", self.field.p())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn hyper(p: u64, f: &[i64]) -> CurveModel {
        CurveModel::hyperelliptic(Poly::from_ints(k(p), f)).unwrap()
    }

    fn as_over(base: &CurveModel, u_x: &[i64]) -> CurveModel {
        let u = base.from_x_poly(&Poly::from_ints(base.field(), u_x));
        let m = base.pole_order(&u).unwrap();
        CurveModel::artin_schreier(base, u, m).unwrap()
    }

    #[test]
    fn genus_examples() {
        assert_eq!(hyper(7, &[1, 0, 0, 0, 0, 1]).genus(), 2);
        let line5 = CurveModel::rational(k(5));
        assert_eq!(as_over(&line5, &[0, 0, 1]).genus(), 2);
        let line3 = CurveModel::rational(k(3));
        assert_eq!(as_over(&line3, &[0, 0, 1]).genus(), 1);
    }

    #[test]
    fn validation_errors() {
        assert!(CurveModel::hyperelliptic(Poly::from_ints(k(5), &[1, 0, 1])).is_err());
        assert!(CurveModel::hyperelliptic(Poly::from_ints(k(5), &[1, 0, 0, 0, 0, 1])).is_err());
        let line = CurveModel::rational(k(5));
        let u = line.from_x_poly(&Poly::from_ints(k(5), &[0, 0, 0, 0, 0, 1]));
        assert!(CurveModel::artin_schreier(&line, u.clone(), 5).is_err());
        assert!(CurveModel::artin_schreier(&line, u, 4).is_err());
    }

    #[test]
    fn pole_orders_at_infinity() {
        let c = hyper(7, &[1, 0, 0, 0, 0, 1]);
        assert_eq!(c.valuation_at_infinity(&c.x()), Some(-2));
        assert_eq!(c.valuation_at_infinity(&c.y().unwrap()), Some(-5));
        let line = CurveModel::rational(k(5));
        let z = as_over(&line, &[0, 0, 0, 1]);
        assert_eq!(z.valuation_at_infinity(&z.z().unwrap()), Some(-3));
        assert_eq!(z.valuation_at_infinity(&z.x()), Some(-5));
    }

    #[test]
    fn relations_hold() {
        let base = hyper(5, &[1, 2, 0, 1]);
        let u = base.element(&[(Monomial { a: 0, b: 1, c: 0 }, 1), (Monomial { a: 1, b: 0, c: 0 }, 2)]);
        let m = base.pole_order(&u).unwrap();
        let c = CurveModel::artin_schreier(&base, u.clone(), m).unwrap();
        let y = c.y().unwrap();
        let f = c.from_x_poly(c.hyperelliptic_polynomial().unwrap());
        assert_eq!(c.mul(&y, &y), f);
        let z = c.z().unwrap();
        let lhs = c.pow(&z, 5).sub(&z);
        assert_eq!(lhs, c.embed_base(&u));
    }

    #[test]
    fn frobenius_and_root_agree() {
        let base = hyper(5, &[1, 2, 0, 1]);
        let c = as_over(&base, &[0, 1, 3]);
        let a = c.element(&[
            (Monomial { a: 2, b: 1, c: 3 }, 4),
            (Monomial { a: 0, b: 0, c: 1 }, 1),
            (Monomial { a: 1, b: 0, c: 0 }, 2),
        ]);
        let fa = c.frobenius(&a);
        assert_eq!(fa, c.pow(&a, 5));
        assert_eq!(c.pth_root(&fa), Some(a));
        assert_eq!(c.pth_root(&c.x()), None);
    }

    #[test]
    fn monomial_orders_are_distinct() {
        let base = hyper(7, &[1, 0, 0, 0, 0, 1]);
        let c = as_over(&base, &[0, 0, 0, 1]);
        let monos = c.monomials_up_to(300);
        let mut orders: Vec<u64> = monos.iter().map(|&m| c.monomial_pole_order(m)).collect();
        let n = orders.len();
        orders.dedup();
        assert_eq!(orders.len(), n);
        for &m in &monos {
            assert_eq!(c.monomial_with_pole_order(c.monomial_pole_order(m)), Some(m));
        }
    }
}
