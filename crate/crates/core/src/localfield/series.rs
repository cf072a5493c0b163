use std::fmt;

use crate::error::{Error, Result};
use crate::field_linalg::{Fp, PrimeField};

/// Truncated Laurent series `Σ a_i t^i + O(t^N)` over F_p.
///
/// Coefficients are known for exponents `start .. start + len`; everything below
/// `start` is zero. After normalization the first stored coefficient is nonzero,
/// or nothing is stored and the series is zero to absolute precision `start`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentSeries {
    field: PrimeField,
    start: i64,
    coeffs: Vec<Fp>,
}

impl LaurentSeries {
    pub fn new(field: PrimeField, start: i64, coeffs: Vec<Fp>) -> Self {
        let mut s = Self { field, start, coeffs };
        s.normalize();
        s
    }

    /// `O(t^abs)`.
    pub fn zero(field: PrimeField, abs: i64) -> Self {
        Self { field, start: abs, coeffs: Vec::new() }
    }

    /// `c t^e` known to relative precision `prec`.
    pub fn monomial(field: PrimeField, c: Fp, e: i64, prec: usize) -> Self {
        let mut coeffs = vec![0; prec.max(1)];
        coeffs[0] = c;
        Self::new(field, e, coeffs)
    }

    /// Exact polynomial in `t` (ascending coefficients) padded to absolute precision `abs`.
    pub fn from_poly(field: PrimeField, coeffs: &[Fp], abs: i64) -> Self {
        let n = abs.max(0) as usize;
        let mut c = coeffs.to_vec();
        c.resize(n, 0);
        c.truncate(n);
        Self::new(field, 0, c)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Least exponent with a nonzero coefficient; `None` when zero to precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    /// Number of known coefficients from the valuation on.
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// Exponent bound `N` of the error term `O(t^N)`.
    pub fn abs_precision(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn coefficients(&self) -> &[Fp] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, `None` beyond the known precision.
    pub fn coeff(&self, i: i64) -> Option<Fp> {
        if i >= self.abs_precision() {
            None
        } else if i < self.start {
            Some(0)
        } else {
            Some(self.coeffs[(i - self.start) as usize])
        }
    }

    pub fn leading_coefficient(&self) -> Option<Fp> {
        self.coeffs.first().copied()
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|&c| c != 0).unwrap_or(self.coeffs.len());
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.start += lead as i64;
        }
    }

    /// Drops everything at or beyond `t^abs`.
    pub fn truncate_abs(&self, abs: i64) -> Self {
        if abs >= self.abs_precision() {
            return self.clone();
        }
        if abs <= self.start {
            return Self::zero(self.field, abs);
        }
        let keep = (abs - self.start) as usize;
        Self::new(self.field, self.start, self.coeffs[..keep].to_vec())
    }

    /// Keeps at most `n` coefficients from the valuation on.
    pub fn truncate_relative(&self, n: usize) -> Self {
        if self.coeffs.len() <= n {
            return self.clone();
        }
        Self::new(self.field, self.start, self.coeffs[..n].to_vec())
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = self.field;
        let abs = self.abs_precision().min(other.abs_precision());
        let start = self.start.min(other.start).min(abs);
        let coeffs = (start..abs)
            .map(|i| k.add(self.coeff(i).unwrap(), other.coeff(i).unwrap()))
            .collect();
        Self::new(k, start, coeffs)
    }

    pub fn neg(&self) -> Self {
        let k = self.field;
        Self { field: k, start: self.start, coeffs: self.coeffs.iter().map(|&c| k.neg(c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: Fp) -> Self {
        let k = self.field;
        if s == 0 {
            return Self::zero(k, self.abs_precision());
        }
        Self { field: k, start: self.start, coeffs: self.coeffs.iter().map(|&c| k.mul(c, s)).collect() }
    }

    /// Multiplication by `t^n`.
    pub fn shift(&self, n: i64) -> Self {
        Self { field: self.field, start: self.start + n, coeffs: self.coeffs.clone() }
    }

    /// Adds the exact constant `c`.
    pub fn add_constant(&self, c: Fp) -> Self {
        if c == 0 {
            return self.clone();
        }
        let exact = Self::monomial(self.field, c, 0, (self.abs_precision().max(1)) as usize);
        self.add(&exact)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let k = self.field;
        match (self.valuation(), other.valuation()) {
            (None, None) => Self::zero(k, self.start + other.start),
            (None, Some(v)) => Self::zero(k, self.start + v),
            (Some(v), None) => Self::zero(k, other.start + v),
            (Some(va), Some(vb)) => {
                let n = self.coeffs.len().min(other.coeffs.len());
                let p = k.p() as u64;
                let mut acc = vec![0u64; n];
                for (i, &a) in self.coeffs[..n].iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    let a = a as u64;
                    for (j, &b) in other.coeffs[..n - i].iter().enumerate() {
                        acc[i + j] += a * b as u64;
                    }
                }
                Self::new(k, va + vb, acc.into_iter().map(|v| (v % p) as Fp).collect())
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let rel = self.coeffs.len().max(1);
        let mut acc = Self::monomial(self.field, 1, 0, rel);
        let mut base = self.clone();
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

    /// Multiplicative inverse, same relative precision.
    pub fn inv(&self) -> Result<Self> {
        let k = self.field;
        let Some(v) = self.valuation() else {
            return Err(Error::Precision("cannot invert a series that is zero to precision".into()));
        };
        let n = self.coeffs.len();
        let c0 = k.inv(self.coeffs[0]);
        let mut out = vec![0; n];
        out[0] = c0;
        for i in 1..n {
            let mut s = 0;
            for j in 1..=i {
                s = k.add(s, k.mul(self.coeffs[j], out[i - j]));
            }
            out[i] = k.neg(k.mul(c0, s));
        }
        Ok(Self::new(k, -v, out))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// `d/dt`.
    pub fn derivative(&self) -> Self {
        let k = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| k.mul(c, k.from_i64(self.start + i as i64)))
            .collect();
        Self::new(k, self.start - 1, coeffs)
    }

    /// An `n`-th root for `n` prime to `p`.
    ///
    /// Requires `n | v(self)` and an `n`-th root of the leading coefficient in F_p;
    /// the root with that leading coefficient is computed by Newton iteration.
    pub fn nth_root(&self, n: u64) -> Result<Self> {
        let k = self.field;
        if n.is_multiple_of(k.p() as u64) {
            return Err(Error::Precondition(format!("root of order {n} divisible by p")));
        }
        let Some(v) = self.valuation() else {
            return Err(Error::Precision("root of a series that is zero to precision".into()));
        };
        if v.rem_euclid(n as i64) != 0 {
            return Err(Error::Precondition(format!("valuation {v} not divisible by {n}")));
        }
        let lead = self.coeffs[0];
        let root_lead = if n == 2 { k.sqrt(lead) } else { k.nth_root(lead, n) }.ok_or_else(|| {
            Error::Precondition(format!("leading coefficient {lead} has no {n}-th root in F_{}", k.p()))
        })?;
        let rel = self.coeffs.len();
        // unit part U with U(0) = 1, solve r^n = U.
        let unit = Self::new(k, 0, self.coeffs.clone()).scale(k.inv(lead));
        let inv_n = k.inv(k.from_u64(n));
        let mut r = Self::monomial(k, 1, 0, 1);
        let mut have = 1usize;
        while have < rel {
            have = (2 * have).min(rel);
            let r_ext = Self::new(k, 0, {
                let mut c = r.coeffs.clone();
                c.resize(have, 0);
                c
            });
            let u_t = unit.truncate_relative(have);
            let rn1 = r_ext.pow(n - 1);
            let resid = r_ext.mul(&rn1).sub(&u_t);
            let step = resid.mul(&rn1.inv()?).scale(inv_n);
            r = r_ext.sub(&step).truncate_abs(have as i64);
        }
        Ok(r.scale(root_lead).shift(v / n as i64))
    }

    /// `self(s)` for a power series `s` with positive valuation.
    pub fn compose(&self, s: &Self) -> Result<Self> {
        let k = self.field;
        let Some(e) = s.valuation() else {
            return Err(Error::Precision("composition with a series that is zero to precision".into()));
        };
        if e < 1 {
            return Err(Error::Precondition("inner series must have positive valuation".into()));
        }
        let Some(v) = self.valuation() else {
            return Ok(Self::zero(k, self.start.max(0) * e));
        };
        // self = t^v G(t); G(s) is known to O(t^(e*len)) and O(t^abs(s)).
        let target_abs = (e * self.coeffs.len() as i64).min(s.abs_precision());
        let used = ((target_abs + e - 1) / e).max(1) as usize;
        let used = used.min(self.coeffs.len());
        let mut acc = Self::monomial(k, self.coeffs[used - 1], 0, target_abs.max(1) as usize);
        for i in (0..used - 1).rev() {
            acc = acc.mul(s).add_constant(self.coeffs[i]);
            acc = acc.truncate_abs(target_abs);
        }
        let acc = acc.truncate_abs(target_abs);
        let sv = if v >= 0 { s.pow(v as u64) } else { s.pow((-v) as u64).inv()? };
        Ok(acc.mul(&sv))
    }

    /// Compositional inverse of a series with valuation exactly 1.
    pub fn reverse(&self) -> Result<Self> {
        let k = self.field;
        if self.valuation() != Some(1) {
            return Err(Error::Precondition("reversion needs valuation exactly 1".into()));
        }
        let n = self.coeffs.len();
        let c1inv = k.inv(self.coeffs[0]);
        let ds = self.derivative();
        let mut r = Self::monomial(k, c1inv, 1, 1);
        let mut have = 1usize;
        while have < n {
            have = (2 * have).min(n);
            let r_ext = Self::new(k, 1, {
                let mut c = r.coeffs.clone();
                c.resize(have, 0);
                c
            });
            let t = Self::monomial(k, 1, 1, have + 1);
            let resid = self.truncate_relative(have + 1).compose(&r_ext)?.sub(&t);
            let slope = ds.truncate_relative(have + 1).compose(&r_ext)?;
            r = r_ext.sub(&resid.div(&slope)?).truncate_abs(have as i64 + 1);
        }
        Ok(r)
    }

    /// Substitutes `t -> t^n` (`n >= 1`).
    pub fn spread(&self, n: u64) -> Self {
        let n = n as usize;
        let mut c = vec![0; self.coeffs.len().saturating_sub(1) * n + 1];
        for (i, &v) in self.coeffs.iter().enumerate() {
            c[i * n] = v;
        }
        if self.coeffs.is_empty() {
            return Self::zero(self.field, self.start * n as i64);
        }
        // known up to (start + len) * n
        c.resize(self.coeffs.len() * n, 0);
        Self::new(self.field, self.start * n as i64, c)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let e = self.start + i as i64;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                e => write!(f, "{c}*t^{e}")?,
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(t^{})", self.abs_precision())
    }
}
