#![allow(dead_code)]

use cartier_lift::curve::{CurveModel, Monomial, RingElem};
use cartier_lift::field_linalg::{Poly, PrimeField};
use cartier_lift::morphisms::{Cover, MorphismData};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn k(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

pub fn hyper(p: u64, f: &[i64]) -> CurveModel {
    CurveModel::hyperelliptic(Poly::from_ints(k(p), f)).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random squarefree `f` of degree `2g+1` with a random nonzero leading coefficient.
pub fn random_hyperelliptic(rng: &mut ChaCha8Rng, p: u64, g: usize) -> CurveModel {
    loop {
        let mut coeffs: Vec<i64> = (0..2 * g + 1).map(|_| rng.random_range(0..p as i64)).collect();
        coeffs.push(rng.random_range(1..p as i64));
        let f = Poly::from_ints(k(p), &coeffs);
        if f.is_squarefree() {
            return CurveModel::hyperelliptic(f).unwrap();
        }
    }
}

/// Random `u` of pole order exactly `m` on `base`, or `None` if `m` is a gap.
pub fn random_u(rng: &mut ChaCha8Rng, base: &CurveModel, m: u64) -> Option<RingElem> {
    let lead = base.monomial_with_pole_order(m)?;
    let p = base.p();
    let mut u = base.zero();
    u.add_monomial(lead, rng.random_range(1..p));
    for mono in base.monomials_up_to(m as i64 - 1) {
        if mono != Monomial::ONE && rng.random_bool(0.4) {
            u.add_monomial(mono, rng.random_range(0..p));
        }
    }
    Some(u)
}

pub fn random_as_cover(rng: &mut ChaCha8Rng, base: &CurveModel, max_m: u64) -> CurveModel {
    let p = base.p() as u64;
    loop {
        let m = rng.random_range(1..=max_m);
        if m % p == 0 {
            continue;
        }
        if let Some(u) = random_u(rng, base, m) {
            return CurveModel::artin_schreier(base, u, m).unwrap();
        }
    }
}

pub fn frobenius(source: &CurveModel, target: &CurveModel) -> MorphismData {
    MorphismData::new(Cover::new(source, target).unwrap(), true)
}

pub fn separable(source: &CurveModel, target: &CurveModel) -> MorphismData {
    MorphismData::new(Cover::new(source, target).unwrap(), false)
}

/// Morphisms used by the corpus-wide checks.
pub fn corpus() -> Vec<MorphismData> {
    let mut out = Vec::new();
    let mut r = rng(2024);
    for p in [3, 5, 7] {
        let line = CurveModel::rational(k(p));
        out.push(frobenius(&line, &line));
        for _ in 0..2 {
            let z = random_as_cover(&mut r, &line, 8);
            out.push(frobenius(&z, &line));
            out.push(separable(&z, &line));
        }
    }
    let named = [
        hyper(5, &[1, 0, 0, 1]),
        hyper(5, &[0, 1, 0, 1]),
        hyper(7, &[1, 0, 0, 0, 0, 1]),
        hyper(3, &[0, 1, 0, 0, 0, 1]),
    ];
    for c in &named {
        out.push(frobenius(c, c));
        out.push(frobenius(c, &c.line()));
        out.push(separable(c, &c.line()));
    }
    for (p, g) in [(3, 1), (3, 2), (5, 1), (5, 2), (7, 2), (11, 1)] {
        for _ in 0..2 {
            let c = random_hyperelliptic(&mut r, p, g);
            out.push(frobenius(&c, &c));
            out.push(frobenius(&c, &c.line()));
        }
    }
    for base in [hyper(3, &[0, 1, 0, 0, 0, 1]), hyper(5, &[1, 0, 0, 1]), hyper(7, &[1, 0, 0, 0, 0, 1])] {
        let z = random_as_cover(&mut r, &base, 13);
        out.push(frobenius(&z, &base));
        out.push(frobenius(&z, &z.line()));
        out.push(separable(&z, &base));
    }
    out
}
