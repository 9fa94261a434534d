use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;
use crate::exactalg::{Field, HomogForm};

/// A point `[a:b]` of `P^1(K)` in canonical form: `b = 1` when `b != 0`,
/// otherwise `[1:0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPoint<K: Field> {
    a: K,
    b: K,
}

impl<K: Field> ProjPoint<K> {
    pub fn new(a: K, b: K) -> Result<Self, Error> {
        if b.is_zero() {
            if a.is_zero() {
                return Err(Error::ZeroPoint);
            }
            return Ok(Self::infinity());
        }
        let a = if b.is_one() { a } else { a / &b };
        Ok(ProjPoint { a, b: K::one() })
    }

    /// `[a:1]`
    pub fn affine(a: K) -> Self {
        ProjPoint { a, b: K::one() }
    }

    pub fn from_i64(a: i64) -> Self {
        Self::affine(K::from_i64(a))
    }

    /// `[1:0]`
    pub fn infinity() -> Self {
        ProjPoint { a: K::one(), b: K::zero() }
    }

    pub fn is_infinity(&self) -> bool {
        self.b.is_zero()
    }

    /// The affine coordinate `a/b`, if finite.
    pub fn affine_coord(&self) -> Option<&K> {
        if self.is_infinity() {
            None
        } else {
            Some(&self.a)
        }
    }

    pub fn a(&self) -> &K {
        &self.a
    }

    pub fn b(&self) -> &K {
        &self.b
    }

    /// The linear form `bX - aY` vanishing here.
    pub fn linear_form(&self) -> HomogForm<K> {
        HomogForm::vanishing_at(&self.a, &self.b)
    }

    pub fn map_field<L: Field>(&self, f: impl Fn(&K) -> L) -> ProjPoint<L> {
        ProjPoint::new(f(&self.a), f(&self.b)).expect("field map preserves nonzero points")
    }
}

impl<K: Field> PartialOrd for ProjPoint<K> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite points by affine coordinate, infinity last.
impl<K: Field> Ord for ProjPoint<K> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinity(), other.is_infinity()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => self.a.canonical_cmp(&other.a),
        }
    }
}

impl<K: Field> fmt::Display for ProjPoint<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.a, self.b)
    }
}
