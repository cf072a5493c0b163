use std::collections::BTreeMap;
use std::fmt;

use crate::field_linalg::Fp;

/// A rational place: an affine point with coordinates in F_p, or the place at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Affine { x: Fp, y: Option<Fp>, z: Option<Fp> },
    Infinity,
}

impl Place {
    pub fn affine_x(x: Fp) -> Self {
        Place::Affine { x, y: None, z: None }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Affine { x, y, z } => {
                write!(f, "({x}")?;
                if let Some(y) = y {
                    write!(f, ", {y}")?;
                }
                if let Some(z) = z {
                    write!(f, ", {z}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Finite formal sum of rational places.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    support: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(place: Place, n: i64) -> Self {
        let mut d = Self::zero();
        d.add_at(place, n);
        d
    }

    pub fn add_at(&mut self, place: Place, n: i64) {
        let slot = self.support.entry(place.clone()).or_insert(0);
        *slot += n;
        if *slot == 0 {
            self.support.remove(&place);
        }
    }

    pub fn multiplicity(&self, place: &Place) -> i64 {
        self.support.get(place).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.support.values().sum()
    }

    pub fn scale(&self, s: i64) -> Divisor {
        let mut d = Divisor::zero();
        for (pl, &n) in &self.support {
            d.add_at(pl.clone(), n * s);
        }
        d
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (pl, &n) in &other.support {
            d.add_at(pl.clone(), n);
        }
        d
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, &i64)> {
        self.support.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.support.iter().map(|(pl, n)| format!("{n}*{pl}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
