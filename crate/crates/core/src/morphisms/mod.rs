//! Morphisms `f = h ∘ F^e` with `h` a supported separable cover, and f-exact homs.
//!
//! Over F_p the Frobenius twist `X^(p)` is identified with `X`, so a morphism is
//! a cover `h: X → Y` together with the exponent `e` of the Frobenius factor.

use crate::curve::{CurveModel, Divisor, FunctionElement, Monomial, Place, RingElem};
use crate::differentials::{self, cartier, DifferentialForm};
use crate::error::{Error, Result};
use crate::field_linalg::{subspace_intersect, Fp, MatrixModP};

/// Supported separable covers; every one is totally ramified above infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverKind {
    Identity,
    /// `y^2 = f` onto the `x`-line.
    HyperellipticProjection,
    /// `z^p - z = u` onto its base.
    ArtinSchreierProjection,
    /// Artin–Schreier cover of a hyperelliptic curve onto the `x`-line.
    Composite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    kind: CoverKind,
    source: CurveModel,
    target: CurveModel,
}

impl Cover {
    pub fn identity(curve: &CurveModel) -> Self {
        Self { kind: CoverKind::Identity, source: curve.clone(), target: curve.clone() }
    }

    /// The natural projection from `source` onto `target`, which must be a layer
    /// of the tower below `source` (or `source` itself).
    pub fn new(source: &CurveModel, target: &CurveModel) -> Result<Self> {
        if source.field() != target.field() {
            return Err(Error::validation("target", "source and target live over different fields"));
        }
        let kind = if source == target {
            CoverKind::Identity
        } else if source.has_z() && *target == source.base() {
            CoverKind::ArtinSchreierProjection
        } else if *target == source.line() {
            match (source.has_y(), source.has_z()) {
                (true, false) => CoverKind::HyperellipticProjection,
                (false, true) => CoverKind::ArtinSchreierProjection,
                (true, true) => CoverKind::Composite,
                (false, false) => unreachable!("source equals the line"),
            }
        } else {
            return Err(Error::Unsupported(format!(
                "no supported cover from {source} onto {target}"
            )));
        };
        Ok(Self { kind, source: source.clone(), target: target.clone() })
    }

    pub fn kind(&self) -> CoverKind {
        self.kind
    }

    pub fn source(&self) -> &CurveModel {
        &self.source
    }

    pub fn target(&self) -> &CurveModel {
        &self.target
    }

    pub fn degree(&self) -> u64 {
        let p = self.source.p() as u64;
        match self.kind {
            CoverKind::Identity => 1,
            CoverKind::HyperellipticProjection => 2,
            CoverKind::ArtinSchreierProjection => p,
            CoverKind::Composite => 2 * p,
        }
    }

    fn hyper_branch_count(&self) -> u64 {
        self.source
            .hyperelliptic_polynomial()
            .map_or(0, |f| f.degree().unwrap() as u64 + 1)
    }

    /// Degree `r` of the ramification divisor.
    pub fn ramification_divisor_degree(&self) -> u64 {
        let p = self.source.p() as u64;
        let d_as = self.source.artin_schreier_different();
        match self.kind {
            CoverKind::Identity => 0,
            CoverKind::HyperellipticProjection => self.hyper_branch_count(),
            CoverKind::ArtinSchreierProjection => d_as,
            // R(h1 ∘ h2) = R(h2) + h2^* R(h1)
            CoverKind::Composite => d_as + p * self.hyper_branch_count(),
        }
    }

    /// Exponent of the different at the place above infinity.
    pub fn different_at_infinity(&self) -> u64 {
        let p = self.source.p() as u64;
        let d_as = self.source.artin_schreier_different();
        match self.kind {
            CoverKind::Identity => 0,
            CoverKind::HyperellipticProjection => 1,
            CoverKind::ArtinSchreierProjection => d_as,
            CoverKind::Composite => d_as + p,
        }
    }

    /// Checks `2g - 2 = deg h·(2g' - 2) + r` with genera counted from canonical bases.
    pub fn check_hurwitz(&self) -> Result<()> {
        let g = differentials::canonical_monomials(&self.source)?.len() as i64;
        let gp = differentials::canonical_monomials(&self.target)?.len() as i64;
        let lhs = 2 * g - 2;
        let rhs = self.degree() as i64 * (2 * gp - 2) + self.ramification_divisor_degree() as i64;
        if lhs != rhs {
            return Err(Error::Internal(format!(
                "Hurwitz fails: 2g-2 = {lhs} but deg h (2g'-2) + r = {rhs}"
            )));
        }
        Ok(())
    }

    /// `h^*` on coordinate rings.
    pub fn pullback(&self, e: &RingElem) -> RingElem {
        let mut out = self.source.zero();
        for (m, c) in e.terms() {
            out.add_monomial(m, c);
        }
        out
    }

    /// `h^* D`.
    pub fn pullback_divisor(&self, d: &Divisor) -> Result<Divisor> {
        let mut out = Divisor::zero();
        for (place, &n) in d.iter() {
            if !self.target.contains_place(place) {
                return Err(Error::validation("divisor", format!("{place} is not a place of {}", self.target)));
            }
            for (q, e) in self.fiber(place)? {
                out.add_at(q, e as i64 * n);
            }
        }
        Ok(out)
    }

    /// Places above `place` with their ramification indices.
    pub fn fiber(&self, place: &Place) -> Result<Vec<(Place, u64)>> {
        if *place == Place::Infinity {
            return Ok(vec![(Place::Infinity, self.degree())]);
        }
        match self.kind {
            CoverKind::Identity => Ok(vec![(place.clone(), 1)]),
            CoverKind::HyperellipticProjection => hyper_fiber(&self.source, place),
            CoverKind::ArtinSchreierProjection => as_fiber(&self.source, place),
            CoverKind::Composite => {
                let mut out = Vec::new();
                for (q, e) in hyper_fiber(&self.source.base(), place)? {
                    for (r, e2) in as_fiber(&self.source, &q)? {
                        out.push((r, e * e2));
                    }
                }
                Ok(out)
            }
        }
    }
}

fn hyper_fiber(curve: &CurveModel, place: &Place) -> Result<Vec<(Place, u64)>> {
    let Place::Affine { x, .. } = *place else { unreachable!() };
    let k = curve.field();
    let f = curve.hyperelliptic_polynomial().expect("hyperelliptic layer");
    let v = f.eval(x);
    match k.sqrt(v) {
        Some(0) => Ok(vec![(Place::Affine { x, y: Some(0), z: None }, 2)]),
        Some(r) => {
            let mut ys = [r, k.neg(r)];
            ys.sort_unstable();
            Ok(ys.iter().map(|&y| (Place::Affine { x, y: Some(y), z: None }, 1)).collect())
        }
        None => Err(Error::Unsupported(format!("the fiber above x = {x} is not rational"))),
    }
}

fn as_fiber(curve: &CurveModel, place: &Place) -> Result<Vec<(Place, u64)>> {
    let Place::Affine { x, y, .. } = *place else { unreachable!() };
    let layer = curve.artin_schreier_layer().expect("Artin–Schreier layer");
    if curve.evaluate_base(&layer.u, x, y) != Some(0) {
        return Err(Error::Unsupported(format!(
            "the fiber above {place} is not rational (u does not vanish there)"
        )));
    }
    Ok(curve.field().elements().map(|z| (Place::Affine { x, y, z: Some(z) }, 1)).collect())
}

/// `f = h ∘ F^e`; `e = frobenius_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismData {
    pub cover: Cover,
    pub frobenius_power: u32,
}

impl MorphismData {
    pub fn new(cover: Cover, frobenius_twist: bool) -> Self {
        Self { cover, frobenius_power: u32::from(frobenius_twist) }
    }

    pub fn with_frobenius_power(cover: Cover, frobenius_power: u32) -> Self {
        Self { cover, frobenius_power }
    }

    pub fn source(&self) -> &CurveModel {
        self.cover.source()
    }

    pub fn target(&self) -> &CurveModel {
        self.cover.target()
    }

    pub fn is_separable(&self) -> bool {
        self.frobenius_power == 0
    }

    pub fn degree(&self) -> u64 {
        self.cover.degree() * insep_degree(self)
    }
}

pub fn insep_degree(f: &MorphismData) -> u64 {
    (f.source().p() as u64).pow(f.frobenius_power)
}

/// The trivializing differential `η` on the target and its valuation at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trivialization {
    pub name: &'static str,
    pub valuation_at_infinity: i64,
}

pub fn trivialization(target: &CurveModel) -> Result<Trivialization> {
    if target.has_z() {
        return Err(Error::Unsupported("Artin–Schreier targets".into()));
    }
    Ok(if target.has_y() {
        Trivialization { name: "dx/y", valuation_at_infinity: target.omega0_valuation() }
    } else {
        Trivialization { name: "dx", valuation_at_infinity: -2 }
    })
}

/// `ker C ∩ V` where `V = {ω : div ω ≥ p·h^*div η}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpaceResult {
    pub dimension: usize,
    /// Values `δ(η)` for a basis of the hom space.
    pub basis: Vec<DifferentialForm>,
    /// `div η` on the target.
    pub eta_divisor: Divisor,
    pub eta: &'static str,
    /// Largest admissible pole order of the coefficient of `ω₀`.
    pub pole_bound: i64,
    /// Monomials spanning `V`.
    pub v_basis: Vec<Monomial>,
    /// Riemann–Roch lower bound `L + 1 - g` for `dim V`.
    pub riemann_roch_lower: i64,
    /// Whether the Riemann–Roch estimate is an equality (`L > 2g - 2`).
    pub nonspecial: bool,
}

impl HomSpaceResult {
    pub fn v_dimension(&self) -> usize {
        self.v_basis.len()
    }

    /// Whether `ω` lies in `V`.
    pub fn contains(&self, curve: &CurveModel, omega: &DifferentialForm) -> bool {
        curve.coordinates(omega.coeff(), &self.v_basis).is_some()
    }
}

fn require_twisted(f: &MorphismData) -> Result<()> {
    match f.frobenius_power {
        1 => Ok(()),
        0 => Err(Error::Precondition("f-exact hom spaces need an inseparable f".into())),
        e => Err(Error::Unsupported(format!("inseparability degree p^{e}"))),
    }
}

/// Pole bound `L = v(ω₀) - p·deg h·v_∞(η)` for coefficients of `ω₀` in `V`.
pub fn pole_bound(f: &MorphismData) -> Result<i64> {
    let eta = trivialization(f.target())?;
    let p = f.source().p() as i64;
    Ok(f.source().omega0_valuation() - p * f.cover.degree() as i64 * eta.valuation_at_infinity)
}

/// Space of f-exact homomorphisms `h^*Ω_Y → F_*B¹_X`, as values on `η`.
pub fn f_exact_hom_space(f: &MorphismData) -> Result<HomSpaceResult> {
    require_twisted(f)?;
    let x = f.source();
    let eta = trivialization(f.target())?;
    let g = x.genus() as i64;
    let bound = pole_bound(f)?;
    let v_basis = x.monomials_up_to(bound);
    let rr = bound + 1 - g;
    let nonspecial = bound > 2 * g - 2;
    let n_v = v_basis.len() as i64;
    if n_v < rr.max(0) || (nonspecial && n_v != rr) {
        return Err(Error::Dimension(format!(
            "dim V = {n_v} contradicts Riemann–Roch (L = {bound}, g = {g})"
        )));
    }
    // ker C on W ⊇ V, where W is the larger of V and the canonical space.
    let w_basis = if bound <= x.omega0_valuation() {
        differentials::canonical_monomials(x)?
    } else {
        v_basis.clone()
    };
    let k = x.field();
    let kernel_w = if w_basis.is_empty() {
        Vec::new()
    } else {
        differentials::cartier_matrix_on(x, &w_basis)?.kernel()
    };
    let n_w = w_basis.len();
    let v_coords: Vec<Vec<Fp>> = (0..v_basis.len())
        .map(|i| {
            let mut e = vec![0; n_w];
            e[i] = 1;
            e
        })
        .collect();
    debug_assert!(v_basis.iter().zip(&w_basis).all(|(a, b)| a == b));
    let inter = subspace_intersect(k, n_w, &kernel_w, &v_coords)?;
    let basis: Vec<DifferentialForm> = inter
        .iter()
        .map(|v| DifferentialForm::new(x.from_coordinates(v, &w_basis)))
        .collect();
    for omega in &basis {
        if !cartier(omega, x)?.is_zero() {
            return Err(Error::Internal("hom-space basis form is not exact".into()));
        }
    }
    check_weak_stability(f, &v_basis)?;
    let eta_divisor = Divisor::single(Place::Infinity, eta.valuation_at_infinity);
    Ok(HomSpaceResult {
        dimension: basis.len(),
        basis,
        eta_divisor,
        eta: eta.name,
        pole_bound: bound,
        v_basis,
        riemann_roch_lower: rr,
        nonspecial,
    })
}

/// `div C(ω) ≥ h^*div η` for every `ω` in `V`.
fn check_weak_stability(f: &MorphismData, v_basis: &[Monomial]) -> Result<()> {
    let x = f.source();
    let eta = trivialization(f.target())?;
    let floor = f.cover.degree() as i64 * eta.valuation_at_infinity;
    for &m in v_basis {
        let c = cartier(&DifferentialForm::monomial(x, m), x)?;
        if let Some(v) = c.valuation_at_infinity(x) {
            if v < floor {
                return Err(Error::Internal(format!(
                    "C({m}·ω₀) has valuation {v} < {floor} at infinity"
                )));
            }
        }
    }
    Ok(())
}

/// Dimension of the hom space computed against `η' = P·η` for a target function `P`
/// with no affine poles: `V' = (h^*P)^p·V` and the count is `dim(ker C ∩ V')`.
pub fn f_exact_hom_dimension_twisted(f: &MorphismData, multiplier: &RingElem) -> Result<usize> {
    require_twisted(f)?;
    let x = f.source();
    let k = x.field();
    if multiplier.is_zero() {
        return Err(Error::validation("multiplier", "must be nonzero"));
    }
    let lifted = f.cover.pullback(multiplier);
    let pp = x.frobenius(&lifted);
    let v_basis = x.monomials_up_to(pole_bound(f)?);
    if v_basis.is_empty() {
        return Ok(0);
    }
    let images: Vec<RingElem> = v_basis
        .iter()
        .map(|&m| {
            let form = DifferentialForm::new(x.mul(&pp, &x.monomial(m)));
            cartier(&form, x).map(|c| c.coeff().clone())
        })
        .collect::<Result<_>>()?;
    let top = images.iter().filter_map(|e| x.pole_order(e)).max().unwrap_or(0);
    let rows = x.monomials_up_to(top as i64);
    let cols: Vec<Vec<Fp>> = images
        .iter()
        .map(|e| x.coordinates(e, &rows).expect("rows cover every image"))
        .collect();
    let m = MatrixModP::from_columns(k, rows.len(), &cols);
    Ok(m.kernel().len())
}

/// Valuation of a form at a rational place, through local expansions off infinity.
pub fn form_valuation(curve: &CurveModel, omega: &DifferentialForm, place: &Place) -> Result<i64> {
    if omega.is_zero() {
        return Err(Error::validation("omega", "the zero form has no valuation"));
    }
    match place {
        Place::Infinity => Ok(omega.valuation_at_infinity(curve).unwrap()),
        // ω₀ has neither zeros nor poles on the affine chart
        _ => curve.valuation(&FunctionElement::from(omega.coeff().clone()), place),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_linalg::{Poly, PrimeField};

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn frobenius_on_the_line() {
        let line = CurveModel::rational(k(5));
        let f = MorphismData::new(Cover::identity(&line), true);
        assert_eq!(insep_degree(&f), 5);
        let hom = f_exact_hom_space(&f).unwrap();
        assert_eq!(hom.pole_bound, 8);
        assert_eq!(hom.v_dimension(), 9);
        assert_eq!(hom.dimension, 8);
        let dx = DifferentialForm::new(line.one());
        assert!(hom.contains(&line, &dx));
    }

    #[test]
    fn pullbacks_at_infinity() {
        let y = CurveModel::hyperelliptic(Poly::from_ints(k(7), &[1, 0, 0, 0, 0, 1])).unwrap();
        let h = Cover::new(&y, &y.line()).unwrap();
        assert_eq!(h.kind(), CoverKind::HyperellipticProjection);
        let d = h.pullback_divisor(&Divisor::single(Place::Infinity, 1)).unwrap();
        assert_eq!(d, Divisor::single(Place::Infinity, 2));
        assert_eq!(h.ramification_divisor_degree(), 6);
        h.check_hurwitz().unwrap();
        // f(0) = 1 is a square: two points above x = 0
        let d0 = h.pullback_divisor(&Divisor::single(Place::affine_x(0), 1)).unwrap();
        assert_eq!(d0.degree(), 2);
        // f(-1) = 0: a single ramified point
        let d6 = h.pullback_divisor(&Divisor::single(Place::affine_x(6), 1)).unwrap();
        assert_eq!(d6.iter().count(), 1);
        assert_eq!(d6.degree(), 2);

        let line = CurveModel::rational(k(5));
        let u = line.from_x_poly(&Poly::from_ints(k(5), &[0, 0, 1]));
        let z = CurveModel::artin_schreier(&line, u, 2).unwrap();
        let h = Cover::new(&z, &line).unwrap();
        assert_eq!(h.ramification_divisor_degree(), 12);
        h.check_hurwitz().unwrap();
        let d = h.pullback_divisor(&Divisor::single(Place::Infinity, 1)).unwrap();
        assert_eq!(d, Divisor::single(Place::Infinity, 5));
        assert!(h.pullback_divisor(&Divisor::single(Place::affine_x(1), 1)).is_err());
        assert_eq!(h.pullback_divisor(&Divisor::single(Place::affine_x(0), 1)).unwrap().degree(), 5);
        assert_eq!(Cover::identity(&z).pullback_divisor(&d).unwrap(), d);
    }

    #[test]
    fn ordinary_source_has_no_homs() {
        // y^2 = x^3 + x over F_5 is ordinary; Frobenius onto itself.
        let e = CurveModel::hyperelliptic(Poly::from_ints(k(5), &[0, 1, 0, 1])).unwrap();
        let f = MorphismData::new(Cover::identity(&e), true);
        assert_eq!(f_exact_hom_space(&f).unwrap().dimension, 0);
    }
}
