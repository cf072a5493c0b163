use crate::error::{Error, Result};

/// Residue in `[0, p)`. The modulus lives in the surrounding [`PrimeField`].
pub type Fp = u32;

/// The prime field F_p for an odd prime `p < 2^16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

pub const MAX_PRIME: u32 = 1 << 16;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    /// Validates that `p` is an odd prime below 2^16.
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::validation("p", "characteristic 2 is not supported"));
        }
        if !is_prime(p) {
            return Err(Error::validation("p", format!("{p} is not prime")));
        }
        if p >= MAX_PRIME as u64 {
            return Err(Error::validation("p", format!("{p} exceeds 2^16")));
        }
        Ok(Self { p: p as u32 })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    #[inline]
    pub fn from_i64(self, v: i64) -> Fp {
        v.rem_euclid(self.p as i64) as Fp
    }

    #[inline]
    pub fn from_u64(self, v: u64) -> Fp {
        (v % self.p as u64) as Fp
    }

    #[inline]
    pub fn add(self, a: Fp, b: Fp) -> Fp {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: Fp, b: Fp) -> Fp {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: Fp) -> Fp {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: Fp, b: Fp) -> Fp {
        ((a as u64 * b as u64) % self.p as u64) as Fp
    }

    pub fn pow(self, mut a: Fp, mut e: u64) -> Fp {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: Fp) -> Fp {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn is_square(self, a: Fp) -> bool {
        a == 0 || self.pow(a, (self.p as u64 - 1) / 2) == 1
    }

    /// A square root of `a` (Tonelli–Shanks), or `None` for non-residues.
    pub fn sqrt(self, a: Fp) -> Option<Fp> {
        if a == 0 {
            return Some(0);
        }
        if !self.is_square(a) {
            return None;
        }
        let p = self.p as u64;
        let mut q = p - 1;
        let mut s = 0;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while self.is_square(z) {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul(tt, tt);
                i += 1;
            }
            let b = self.pow(c, 1u64 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }

    /// An `n`-th root of `a` by exhaustive search (p is small).
    pub fn nth_root(self, a: Fp, n: u64) -> Option<Fp> {
        (0..self.p).find(|&r| self.pow(r, n) == a)
    }

    /// Multiplicative inverse of an integer coprime to `p`.
    pub fn inv_int(self, n: i64) -> Fp {
        self.inv(self.from_i64(n))
    }

    pub fn elements(self) -> impl Iterator<Item = Fp> {
        0..self.p
    }

    pub fn units(self) -> impl Iterator<Item = Fp> {
        1..self.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_moduli() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(65537).is_err());
        assert!(PrimeField::new(65521).is_ok());
    }

    #[test]
    fn sqrt_matches_squaring() {
        for p in [3u64, 5, 7, 11, 13, 17, 97, 65521] {
            let k = PrimeField::new(p).unwrap();
            for a in (0..k.p()).take(300) {
                match k.sqrt(a) {
                    Some(r) => assert_eq!(k.mul(r, r), a),
                    None => assert!(!k.is_square(a)),
                }
            }
        }
    }

    #[test]
    fn inverse_and_fermat() {
        let k = PrimeField::new(101).unwrap();
        for a in k.units() {
            assert_eq!(k.mul(a, k.inv(a)), 1);
            assert_eq!(k.pow(a, 101), a);
        }
    }
}
