use std::fmt;

use super::field::{Fp, PrimeField};

/// Dense univariate polynomial over F_p, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    field: PrimeField,
    coeffs: Vec<Fp>,
}

impl Poly {
    pub fn zero(field: PrimeField) -> Self {
        Self { field, coeffs: Vec::new() }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: PrimeField, c: Fp) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(field: PrimeField, c: Fp, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::from_coeffs(field, coeffs)
    }

    pub fn x(field: PrimeField) -> Self {
        Self::monomial(field, 1, 1)
    }

    pub fn from_coeffs(field: PrimeField, mut coeffs: Vec<Fp>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < field.p()));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    pub fn from_ints(field: PrimeField, ints: &[i64]) -> Self {
        Self::from_coeffs(field, ints.iter().map(|&v| field.from_i64(v)).collect())
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[Fp] {
        &self.coeffs
    }

    #[inline]
    pub fn coeff(&self, k: usize) -> Fp {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Fp {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let k = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| k.add(self.coeff(i), other.coeff(i))).collect();
        Poly::from_coeffs(k, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let k = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| k.sub(self.coeff(i), other.coeff(i))).collect();
        Poly::from_coeffs(k, c)
    }

    pub fn add_assign(&mut self, other: &Poly) {
        let k = self.field;
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), 0);
        }
        for (a, &b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = k.add(*a, b);
        }
        self.trim();
    }

    /// `self += c * x^shift * other`
    pub fn add_scaled_shifted(&mut self, c: Fp, shift: usize, other: &Poly) {
        if c == 0 || other.is_zero() {
            return;
        }
        let k = self.field;
        let need = other.coeffs.len() + shift;
        if need > self.coeffs.len() {
            self.coeffs.resize(need, 0);
        }
        for (i, &b) in other.coeffs.iter().enumerate() {
            let slot = &mut self.coeffs[i + shift];
            *slot = k.add(*slot, k.mul(c, b));
        }
        self.trim();
    }

    pub fn neg(&self) -> Poly {
        let k = self.field;
        Poly::from_coeffs(k, self.coeffs.iter().map(|&a| k.neg(a)).collect())
    }

    pub fn scale(&self, c: Fp) -> Poly {
        let k = self.field;
        if c == 0 {
            return Poly::zero(k);
        }
        Poly::from_coeffs(k, self.coeffs.iter().map(|&a| k.mul(a, c)).collect())
    }

    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; n];
        c.extend_from_slice(&self.coeffs);
        Poly { field: self.field, coeffs: c }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let k = self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(k);
        }
        let p = k.p() as u64;
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut acc = vec![0u64; n];
        // (p-1)^2 < 2^32: a u64 accumulator absorbs 2^32 products.
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let a = a as u64;
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] += a * b as u64;
            }
        }
        Poly::from_coeffs(k, acc.into_iter().map(|v| (v % p) as Fp).collect())
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let k = self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| k.mul(a, k.from_u64(i as u64)))
            .collect();
        Poly::from_coeffs(k, c)
    }

    pub fn eval(&self, x: Fp) -> Fp {
        let k = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| k.add(k.mul(acc, x), c))
    }

    /// Euclidean division; panics if `d` is zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let k = self.field;
        let dd = d.degree().expect("division by the zero polynomial");
        let inv_lead = k.inv(d.leading());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(k), self.clone());
        }
        let mut quot = vec![0; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = k.mul(rem[i], inv_lead);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &b) in d.coeffs.iter().enumerate() {
                let slot = &mut rem[i - dd + j];
                *slot = k.sub(*slot, k.mul(c, b));
            }
        }
        (Poly::from_coeffs(k, quot), Poly::from_coeffs(k, rem))
    }

    /// Exact quotient, `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading()))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// True iff `gcd(f, f') = 1`; for p odd this is nonvanishing discriminant.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Roots in F_p, by exhaustive evaluation.
    pub fn roots(&self) -> Vec<Fp> {
        self.field.elements().filter(|&a| self.eval(a) == 0).collect()
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}*x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}
