use cartier_lift::curve::{CurveModel, FunctionElement, Monomial, Place};
use cartier_lift::differentials::canonical_basis;
use cartier_lift::field_linalg::{Poly, PrimeField};
use cartier_lift::localfield::expand_at_place;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::{hyper, k, random_as_cover, random_hyperelliptic, rng};

fn as_over_line(p: u64, u: &[i64], m: u64) -> CurveModel {
    let line = CurveModel::rational(k(p));
    CurveModel::artin_schreier(&line, line.from_x_poly(&Poly::from_ints(k(p), u)), m).unwrap()
}

#[test]
fn genus_examples() {
    assert_eq!(CurveModel::rational(k(5)).genus(), 0);
    assert_eq!(hyper(7, &[1, 0, 0, 0, 0, 1]).genus(), 2);
    assert_eq!(as_over_line(5, &[0, 0, 1], 2).genus(), 2);
    assert_eq!(as_over_line(3, &[0, 0, 1], 2).genus(), 1);
}

#[test]
fn malformed_models_are_rejected() {
    let k5: PrimeField = k(5);
    assert!(CurveModel::hyperelliptic(Poly::from_ints(k5, &[1, 0, 0, 0, 1])).is_err());
    assert!(CurveModel::hyperelliptic(Poly::from_ints(k5, &[0, 0, 1, 1])).is_err());
    let line = CurveModel::rational(k5);
    let x5 = line.from_x_poly(&Poly::from_ints(k5, &[0, 0, 0, 0, 0, 1]));
    assert!(CurveModel::artin_schreier(&line, x5, 5).is_err());
    let x2 = line.from_x_poly(&Poly::from_ints(k5, &[0, 0, 1]));
    assert!(CurveModel::artin_schreier(&line, x2, 3).is_err());
    assert!(PrimeField::new(2).is_err());
    assert!(PrimeField::new(9).is_err());
}

#[test]
fn valuation_examples() {
    let c = hyper(7, &[1, 0, 0, 0, 0, 1]);
    let v = |e| c.valuation(&FunctionElement::from(e), &Place::Infinity).unwrap();
    assert_eq!(v(c.x()), -2);
    assert_eq!(v(c.y().unwrap()), -5);
    for m in [1u64, 2, 4, 8] {
        let mut u = vec![0; m as usize + 1];
        u[m as usize] = 1;
        let z = as_over_line(3, &u, m);
        let zv = z.valuation(&FunctionElement::from(z.z().unwrap()), &Place::Infinity).unwrap();
        assert_eq!(zv, -(m as i64));
    }
    assert!(c.valuation(&FunctionElement::from(c.zero()), &Place::Infinity).is_err());
}

#[test]
fn canonical_basis_examples() {
    assert!(canonical_basis(&CurveModel::rational(k(5))).unwrap().is_empty());
    let c = hyper(7, &[1, 0, 0, 0, 0, 1]);
    let b: Vec<String> = canonical_basis(&c).unwrap().iter().map(|w| w.display(&c)).collect();
    assert_eq!(b, vec!["(1)*dx/y", "(x)*dx/y"]);
    let e = as_over_line(3, &[0, 0, 1], 2);
    let b = canonical_basis(&e).unwrap();
    assert_eq!(b.len(), 1);
    assert_eq!(b[0].coeff(), &e.one());
}

#[test]
fn basis_count_equals_genus_on_sweeps() {
    let mut r = rng(21);
    for i in 0..30 {
        let p = [3u64, 5, 7][i % 3];
        let base = if i % 2 == 0 {
            CurveModel::rational(k(p))
        } else {
            random_hyperelliptic(&mut r, p, 1 + i % 3)
        };
        assert_eq!(canonical_basis(&base).unwrap().len() as u64, base.genus());
        let z = random_as_cover(&mut r, &base, 9);
        assert_eq!(canonical_basis(&z).unwrap().len() as u64, z.genus(), "{z}");
    }
}

#[test]
fn valuations_are_additive() {
    let mut r = ChaCha8Rng::seed_from_u64(5);
    let base = hyper(5, &[1, 2, 0, 1]);
    let u = base.element(&[(Monomial { a: 0, b: 1, c: 0 }, 1), (Monomial { a: 1, b: 0, c: 0 }, 2)]);
    let z = CurveModel::artin_schreier(&base, u, 3).unwrap();
    for c in [base, z] {
        let monos = c.monomials_up_to(25);
        let mut places = vec![Place::Infinity];
        places.extend(c.rational_affine_places().into_iter().take(3));
        for _ in 0..10 {
            let mut rand_elem = || {
                let mut e = c.zero();
                for _ in 0..3 {
                    e.add_monomial(monos[r.random_range(0..monos.len())], r.random_range(1..5));
                }
                e
            };
            let (a, b) = (rand_elem(), rand_elem());
            if a.is_zero() || b.is_zero() {
                continue;
            }
            for place in &places {
                let v = |e: &cartier_lift::curve::RingElem| c.valuation(&FunctionElement::from(e.clone()), place).unwrap();
                assert_eq!(v(&c.mul(&a, &b)), v(&a) + v(&b), "{place}");
                let s = a.add(&b);
                if !s.is_zero() {
                    assert!(v(&s) >= v(&a).min(v(&b)));
                }
                let ex = expand_at_place(&c, &FunctionElement::from(a.clone()), place, 5).unwrap();
                assert_eq!(ex.valuation(), Some(v(&a)));
            }
        }
    }
}

/// The divisor of ω₀ has degree 2g - 2 and is supported at infinity.
#[test]
fn canonical_degree() {
    use cartier_lift::morphisms::form_valuation;
    let mut r = rng(8);
    for _ in 0..6 {
        let c = random_hyperelliptic(&mut r, 5, 2);
        let z = random_as_cover(&mut r, &c, 7);
        for curve in [c, z] {
            let w = cartier_lift::differentials::DifferentialForm::new(curve.one());
            let at_inf = form_valuation(&curve, &w, &Place::Infinity).unwrap();
            assert_eq!(at_inf, 2 * curve.genus() as i64 - 2);
            for place in curve.rational_affine_places().into_iter().take(4) {
                assert_eq!(form_valuation(&curve, &w, &place).unwrap(), 0, "{place} on {curve}");
            }
        }
    }
}
