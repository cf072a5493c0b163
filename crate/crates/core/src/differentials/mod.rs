//! Differential forms `a·ω₀` with `a` in the coordinate ring, and the Cartier operator.
//!
//! The generic operator uses `C(A dx) = (-D^(p-1) A)^(1/p) dx` with `D = d/dx`.
//! Writing `ω₀ = dx/w` (`w = y` or `1`), `a·ω₀ = w^-p·(a w^(p-1)) dx`, so
//! `C(a·ω₀) = C(a f^((p-1)/2) dx) / w`. Denominators of `D` are powers of `f`, and
//! `p`-th roots are taken by peeling leading monomials (see [`CurveModel::pth_root`]).

use std::fmt;

use crate::curve::{CurveModel, Monomial, RingElem};
use crate::error::{Error, Result};
use crate::field_linalg::{Fp, MatrixModP, Poly};

/// The form `coeff · ω₀`, where `ω₀` is `dx` or `dx/y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialForm {
    coeff: RingElem,
}

impl DifferentialForm {
    pub fn new(coeff: RingElem) -> Self {
        Self { coeff }
    }

    /// `u·dx` for `u` in the coordinate ring.
    pub fn from_dx(curve: &CurveModel, u: &RingElem) -> Self {
        if curve.has_y() {
            Self::new(curve.mul_y(u))
        } else {
            Self::new(u.clone())
        }
    }

    pub fn monomial(curve: &CurveModel, m: Monomial) -> Self {
        Self::new(curve.monomial(m))
    }

    pub fn coeff(&self) -> &RingElem {
        &self.coeff
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn scale(&self, s: Fp) -> Self {
        Self::new(self.coeff.scale(s))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.coeff.add(&other.coeff))
    }

    /// Valuation at infinity, `None` for the zero form.
    pub fn valuation_at_infinity(&self, curve: &CurveModel) -> Option<i64> {
        curve
            .valuation_at_infinity(&self.coeff)
            .map(|v| v + curve.omega0_valuation())
    }

    /// Monomial expansion such as `(3*x^2*y + z)*dx/y`.
    pub fn display(&self, curve: &CurveModel) -> String {
        let omega0 = if curve.has_y() { "dx/y" } else { "dx" };
        if self.coeff.is_zero() {
            return "0".into();
        }
        format!("({})*{omega0}", self.coeff)
    }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*w0", self.coeff)
    }
}

/// `C(ω)`.
pub fn cartier(omega: &DifferentialForm, curve: &CurveModel) -> Result<DifferentialForm> {
    let a = omega.coeff();
    if a.is_zero() {
        return Ok(omega.clone());
    }
    let k = curve.field();
    let p = k.p() as u64;
    let f = curve.derivation_denominator();
    let f_prime = curve.derivation_denominator_derivative();
    // D^j(A) = n / f^j
    let mut n = a.mul_poly(curve.y_pow_p_minus_one());
    for j in 0..p - 1 {
        let fd = curve.f_times_derivative(&n);
        let lower = n.mul_poly(&f_prime).scale(k.from_u64(j));
        n = fd.sub(&lower);
    }
    // -D^(p-1) A = (-n f) / f^p
    let target = n.mul_poly(f).neg();
    let beta = curve
        .pth_root(&target)
        .ok_or_else(|| Error::Internal("Cartier numerator is not a p-th power".into()))?;
    let b = beta
        .div_poly_exact(f)
        .ok_or_else(|| Error::Internal("Cartier image is not regular on the affine chart".into()))?;
    Ok(DifferentialForm::new(b))
}

/// `dh` as a multiple of `ω₀`.
pub fn exact_differential(h: &RingElem, curve: &CurveModel) -> DifferentialForm {
    let fd = curve.f_times_derivative(h);
    let c = if curve.has_y() { curve.mul_y(&fd) } else { fd };
    let coeff = c
        .div_poly_exact(curve.derivation_denominator())
        .expect("dh is regular on the affine chart");
    DifferentialForm::new(coeff)
}

/// Monomials `m` with `m·ω₀` regular everywhere; their count is the genus.
pub fn canonical_monomials(curve: &CurveModel) -> Result<Vec<Monomial>> {
    let monos = curve.monomials_up_to(curve.omega0_valuation());
    if monos.len() as u64 != curve.genus() {
        return Err(Error::Internal(format!(
            "canonical basis has {} elements but the genus is {}",
            monos.len(),
            curve.genus()
        )));
    }
    Ok(monos)
}

pub fn canonical_basis(curve: &CurveModel) -> Result<Vec<DifferentialForm>> {
    Ok(canonical_monomials(curve)?
        .into_iter()
        .map(|m| DifferentialForm::monomial(curve, m))
        .collect())
}

/// Matrix of `C` on a monomial basis; column `j` holds the image of basis element `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartierManinMatrix {
    pub matrix: MatrixModP,
    pub basis: Vec<Monomial>,
}

/// Matrix of `C` on the span of `monos`, which must be `C`-stable.
pub fn cartier_matrix_on(curve: &CurveModel, monos: &[Monomial]) -> Result<MatrixModP> {
    let k = curve.field();
    let mut cols = Vec::with_capacity(monos.len());
    for &m in monos {
        let image = cartier(&DifferentialForm::monomial(curve, m), curve)?;
        let v = curve.coordinates(image.coeff(), monos).ok_or_else(|| {
            Error::Internal(format!("C({m}·ω₀) leaves the span of the given monomials"))
        })?;
        cols.push(v);
    }
    Ok(MatrixModP::from_columns(k, monos.len(), &cols))
}

/// Cartier–Manin matrix from the generic operator.
pub fn cartier_manin_matrix(curve: &CurveModel) -> Result<CartierManinMatrix> {
    let basis = canonical_monomials(curve)?;
    if basis.is_empty() {
        return Err(Error::Precondition("genus 0 curves have no Cartier–Manin matrix".into()));
    }
    Ok(CartierManinMatrix { matrix: cartier_matrix_on(curve, &basis)?, basis })
}

/// Cartier–Manin matrix of `y^2 = f` by coefficient extraction from `f^((p-1)/2)`.
pub fn cartier_manin_closed_form(curve: &CurveModel) -> Result<CartierManinMatrix> {
    if curve.has_z() {
        return Err(Error::Unsupported("closed form needs a plain hyperelliptic model".into()));
    }
    let Some(f) = curve.hyperelliptic_polynomial() else {
        return Err(Error::Precondition("genus 0 curves have no Cartier–Manin matrix".into()));
    };
    let k = curve.field();
    let p = k.p() as usize;
    let g = curve.genus() as usize;
    let h = f.pow((p as u64 - 1) / 2);
    let mut m = MatrixModP::zeros(k, g, g);
    for i in 1..=g {
        for j in 1..=g {
            // c_n with n < 0 vanishes (possible when g > p)
            if i * p >= j {
                m.set(i - 1, j - 1, h.coeff(i * p - j));
            }
        }
    }
    let basis = (0..g as u64).map(|a| Monomial { a, b: 0, c: 0 }).collect();
    Ok(CartierManinMatrix { matrix: m, basis })
}

pub fn p_rank(curve: &CurveModel) -> Result<usize> {
    if curve.genus() == 0 {
        return Ok(0);
    }
    cartier_manin_matrix(curve)?.matrix.stable_rank()
}

pub fn a_number(curve: &CurveModel) -> Result<usize> {
    if curve.genus() == 0 {
        return Ok(0);
    }
    let cm = cartier_manin_matrix(curve)?;
    Ok(cm.basis.len() - cm.matrix.rank())
}

/// p-rank and a-number from one Cartier–Manin computation.
pub fn cartier_invariants(curve: &CurveModel) -> Result<(usize, usize)> {
    if curve.genus() == 0 {
        return Ok((0, 0));
    }
    let cm = cartier_manin_matrix(curve)?;
    Ok((cm.matrix.stable_rank()?, cm.basis.len() - cm.matrix.rank()))
}

/// Result of the global exactness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exactness {
    /// `d(witness) = ω`.
    Exact { witness: RingElem },
    NotExact { cartier_image: DifferentialForm },
}

impl Exactness {
    pub fn is_exact(&self) -> bool {
        matches!(self, Exactness::Exact { .. })
    }
}

pub fn is_exact(omega: &DifferentialForm, curve: &CurveModel) -> Result<bool> {
    Ok(cartier(omega, curve)?.is_zero())
}

/// Exactness with an antiderivative on the affine chart when `C(ω) = 0`.
///
/// The spanning set of candidate monomials starts at twice the pole order of `ω`
/// and doubles until `d(candidate) = ω` is solvable.
pub fn antiderivative(omega: &DifferentialForm, curve: &CurveModel) -> Result<Exactness> {
    let image = cartier(omega, curve)?;
    if !image.is_zero() {
        return Ok(Exactness::NotExact { cartier_image: image });
    }
    if omega.is_zero() {
        return Ok(Exactness::Exact { witness: curve.zero() });
    }
    let k = curve.field();
    let (wx, _, _) = curve.coordinate_pole_orders();
    let order = curve.pole_order(omega.coeff()).unwrap() as i64 - curve.omega0_valuation();
    let mut bound = (2 * order).max(2 * wx as i64 * k.p() as i64);
    let cap = 64 * bound;
    while bound <= cap {
        let candidates: Vec<Monomial> = curve
            .monomials_up_to(bound)
            .into_iter()
            .filter(|&m| m != Monomial::ONE)
            .collect();
        let images: Vec<RingElem> = candidates
            .iter()
            .map(|&m| exact_differential(&curve.monomial(m), curve).coeff().clone())
            .collect();
        let top = images
            .iter()
            .chain(std::iter::once(omega.coeff()))
            .filter_map(|e| curve.pole_order(e))
            .max()
            .unwrap_or(0);
        let rows = curve.monomials_up_to(top as i64);
        let cols: Vec<Vec<Fp>> = images
            .iter()
            .map(|e| curve.coordinates(e, &rows).expect("rows cover every image"))
            .collect();
        let m = MatrixModP::from_columns(k, rows.len(), &cols);
        let rhs = curve.coordinates(omega.coeff(), &rows).expect("rows cover ω");
        if let Some(sol) = m.solve(&rhs)? {
            let witness = curve.from_coordinates(&sol, &candidates);
            debug_assert_eq!(exact_differential(&witness, curve), *omega);
            return Ok(Exactness::Exact { witness });
        }
        bound *= 2;
    }
    Err(Error::Internal("no antiderivative found although C(ω) = 0".into()))
}

/// `h^((p-1)/2)` coefficients, exposed for oracles in tests.
pub fn half_power_coefficients(f: &Poly) -> Vec<Fp> {
    let p = f.field().p() as u64;
    f.pow((p - 1) / 2).coeffs().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_linalg::PrimeField;

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn hyper(p: u64, f: &[i64]) -> CurveModel {
        CurveModel::hyperelliptic(Poly::from_ints(k(p), f)).unwrap()
    }

    #[test]
    fn line_examples() {
        let line = CurveModel::rational(k(5));
        let h = line.from_x_poly(&Poly::from_ints(k(5), &[0, 2, 0, 1]));
        let dh = exact_differential(&h, &line);
        assert!(cartier(&dh, &line).unwrap().is_zero());
        let x4 = DifferentialForm::monomial(&line, Monomial { a: 4, b: 0, c: 0 });
        assert_eq!(cartier(&x4, &line).unwrap().coeff(), &line.one());
        assert!(!is_exact(&x4, &line).unwrap());
    }

    #[test]
    fn named_matrices() {
        let c = hyper(5, &[1, 0, 0, 1]);
        let m = cartier_manin_matrix(&c).unwrap();
        assert_eq!(m.matrix, MatrixModP::from_rows(k(5), &[vec![0]]));
        assert_eq!(p_rank(&c).unwrap(), 0);
        assert_eq!(a_number(&c).unwrap(), 1);

        let c = hyper(5, &[0, 1, 0, 1]);
        let m = cartier_manin_matrix(&c).unwrap();
        assert_eq!(m.matrix, MatrixModP::from_rows(k(5), &[vec![2]]));
        assert_eq!(p_rank(&c).unwrap(), 1);

        let c = hyper(7, &[1, 0, 0, 0, 0, 1]);
        let m = cartier_manin_matrix(&c).unwrap();
        assert_eq!(m.matrix, MatrixModP::from_rows(k(7), &[vec![0, 3], vec![0, 0]]));
        assert_eq!(p_rank(&c).unwrap(), 0);
        assert_eq!(a_number(&c).unwrap(), 1);
    }

    #[test]
    fn generic_matches_closed_form() {
        for (p, f) in [
            (3, vec![1, 1, 0, 1]),
            (5, vec![2, 0, 1, 3, 0, 1]),
            (7, vec![3, 1, 4, 1, 5, 0, 2, 1]),
            (11, vec![1, 2, 3, 4, 5, 1]),
        ] {
            let fpoly = Poly::from_ints(k(p), &f);
            if !fpoly.is_squarefree() {
                continue;
            }
            let c = CurveModel::hyperelliptic(fpoly).unwrap();
            assert_eq!(
                cartier_manin_matrix(&c).unwrap(),
                cartier_manin_closed_form(&c).unwrap(),
                "p = {p}, f = {f:?}"
            );
        }
    }

    #[test]
    fn canonical_basis_of_small_covers() {
        assert!(canonical_basis(&CurveModel::rational(k(5))).unwrap().is_empty());
        let c = hyper(7, &[1, 0, 0, 0, 0, 1]);
        let basis = canonical_monomials(&c).unwrap();
        assert_eq!(basis, vec![Monomial::ONE, Monomial { a: 1, b: 0, c: 0 }]);
        let line = CurveModel::rational(k(3));
        let u = line.from_x_poly(&Poly::from_ints(k(3), &[0, 0, 1]));
        let e = CurveModel::artin_schreier(&line, u, 2).unwrap();
        assert_eq!(canonical_monomials(&e).unwrap(), vec![Monomial::ONE]);
    }

    #[test]
    fn exact_forms_have_witnesses() {
        let c = hyper(5, &[1, 0, 0, 1]);
        let omega = DifferentialForm::new(c.one());
        match antiderivative(&omega, &c).unwrap() {
            Exactness::Exact { witness } => assert_eq!(exact_differential(&witness, &c), omega),
            other => panic!("{other:?}"),
        }
        let xy = c.mul(&c.x(), &c.y().unwrap());
        let d = exact_differential(&xy, &c);
        assert!(is_exact(&d, &c).unwrap());
    }
}
