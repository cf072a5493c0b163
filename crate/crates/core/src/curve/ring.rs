//! Elements of the affine coordinate ring `F_p[x, y, z] / (y^2 - f, z^p - z - u)`.
//!
//! The ring is free over `F_p[x]` with basis `y^b z^c`, `b < nb`, `c < nc`. The
//! monomials `x^a y^b z^c` have pairwise distinct pole orders at the unique place
//! at infinity, so the pole order of an element is the maximum over its monomials.

use std::fmt;

use crate::field_linalg::{Fp, Poly, PrimeField};

/// A monomial `x^a y^b z^c` of the coordinate-ring basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub a: u64,
    pub b: u8,
    pub c: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0, c: 0 };
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.a {
            0 => {}
            1 => parts.push("x".to_string()),
            a => parts.push(format!("x^{a}")),
        }
        if self.b == 1 {
            parts.push("y".to_string());
        }
        match self.c {
            0 => {}
            1 => parts.push("z".to_string()),
            c => parts.push(format!("z^{c}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Element of the affine coordinate ring, stored as `nb * nc` polynomials in `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    nb: usize,
    parts: Vec<Poly>,
}

impl RingElem {
    pub(crate) fn zero_shaped(field: PrimeField, nb: usize, nc: usize) -> Self {
        Self { nb, parts: vec![Poly::zero(field); nb * nc] }
    }

    pub(crate) fn from_parts(nb: usize, parts: Vec<Poly>) -> Self {
        debug_assert!(parts.len().is_multiple_of(nb));
        Self { nb, parts }
    }

    pub fn field(&self) -> PrimeField {
        self.parts[0].field()
    }

    pub fn nb(&self) -> usize {
        self.nb
    }

    pub fn nc(&self) -> usize {
        self.parts.len() / self.nb
    }

    /// The `F_p[x]` coefficient of `y^b z^c`.
    pub fn part(&self, b: usize, c: usize) -> &Poly {
        &self.parts[c * self.nb + b]
    }

    pub(crate) fn part_mut(&mut self, b: usize, c: usize) -> &mut Poly {
        let nb = self.nb;
        &mut self.parts[c * nb + b]
    }

    pub(crate) fn parts(&self) -> &[Poly] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Poly::is_zero)
    }

    pub fn coefficient(&self, m: Monomial) -> Fp {
        if (m.b as usize) >= self.nb || (m.c as usize) >= self.nc() {
            return 0;
        }
        self.part(m.b as usize, m.c as usize).coeff(m.a as usize)
    }

    /// Nonzero terms in ascending `(c, b, a)` order.
    pub fn terms(&self) -> Vec<(Monomial, Fp)> {
        let mut out = Vec::new();
        for c in 0..self.nc() {
            for b in 0..self.nb {
                for (a, &v) in self.part(b, c).coeffs().iter().enumerate() {
                    if v != 0 {
                        out.push((Monomial { a: a as u64, b: b as u8, c: c as u32 }, v));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RingElem) -> RingElem {
        self.zip(other, Poly::add)
    }

    pub fn sub(&self, other: &RingElem) -> RingElem {
        self.zip(other, Poly::sub)
    }

    pub fn neg(&self) -> RingElem {
        self.map(Poly::neg)
    }

    pub fn scale(&self, s: Fp) -> RingElem {
        self.map(|p| p.scale(s))
    }

    pub fn mul_poly(&self, q: &Poly) -> RingElem {
        self.map(|p| p.mul(q))
    }

    /// `self += s * m`.
    pub fn add_monomial(&mut self, m: Monomial, s: Fp) {
        let k = self.field();
        let term = Poly::monomial(k, s, m.a as usize);
        self.part_mut(m.b as usize, m.c as usize).add_assign(&term);
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, s: Fp, other: &RingElem) {
        assert_eq!(self.parts.len(), other.parts.len(), "ring shape mismatch");
        for (a, b) in self.parts.iter_mut().zip(&other.parts) {
            a.add_scaled_shifted(s, 0, b);
        }
    }

    /// Exact division by a polynomial in `x`, `None` if some coefficient is not divisible.
    pub fn div_poly_exact(&self, q: &Poly) -> Option<RingElem> {
        let parts = self
            .parts
            .iter()
            .map(|p| p.div_exact(q))
            .collect::<Option<Vec<_>>>()?;
        Some(RingElem { nb: self.nb, parts })
    }

    fn zip(&self, other: &RingElem, op: impl Fn(&Poly, &Poly) -> Poly) -> RingElem {
        assert_eq!(self.parts.len(), other.parts.len(), "ring shape mismatch");
        RingElem {
            nb: self.nb,
            parts: self.parts.iter().zip(&other.parts).map(|(a, b)| op(a, b)).collect(),
        }
    }

    fn map(&self, op: impl Fn(&Poly) -> Poly) -> RingElem {
        RingElem { nb: self.nb, parts: self.parts.iter().map(op).collect() }
    }
}

impl fmt::Display for RingElem {
    /// Terms printed in ascending monomial order as `c*monomial`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *m == Monomial::ONE {
                write!(f, "{c}")?;
            } else if *c == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}
