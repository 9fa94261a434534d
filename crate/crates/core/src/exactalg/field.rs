use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;

use super::ext::MinPoly;
use super::poly::Poly;

/// Symbols that may name a field element in map expressions.
#[derive(Clone, Debug, Default)]
pub struct FieldContext {
    /// Minimal polynomial of the generator `w`, when the field is an extension.
    pub minpoly: Option<Arc<MinPoly>>,
}

/// An exact field of characteristic zero.
///
/// Arithmetic never rounds. Operators panic on division by zero, like the
/// underlying big-rational type; use [`Field::inv`] for a checked inverse.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn inv(&self) -> Option<Self>;

    fn from_rational(q: &BigRational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()))
    }

    /// The element as a rational number, if it lies in the prime field.
    fn as_rational(&self) -> Option<BigRational>;

    /// A total order used only for deterministic output.
    fn canonical_cmp(&self, other: &Self) -> Ordering;

    /// Named generator (`w`, `t`) of this field, if it has one.
    fn symbol(_name: char, _ctx: &FieldContext) -> Option<Self> {
        None
    }

    /// Distinct roots in this field of a nonzero polynomial.
    ///
    /// Fields may return a subset when complete root finding is out of reach;
    /// every returned element is a verified root. The default finds roots of
    /// linear polynomials only.
    fn roots(p: &Poly<Self>) -> Vec<Self> {
        if p.degree() == Some(1) {
            let c = p.coeff(1);
            vec![-(p.coeff(0) / &c)]
        } else {
            Vec::new()
        }
    }

    /// Monic gcd of two polynomials, for fields with a faster method than Euclid.
    fn poly_gcd(_a: &Poly<Self>, _b: &Poly<Self>) -> Option<Poly<Self>> {
        None
    }

    /// Rescale a vector so it is the canonical representative of its
    /// projective class. The default makes the first nonzero entry one.
    fn normalize_projective(v: &mut [Self]) {
        if let Some(lead) = v.iter().find(|c| !c.is_zero()).cloned() {
            if lead.is_one() {
                return;
            }
            let inv = lead.inv().expect("nonzero element is invertible");
            for c in v.iter_mut() {
                if !c.is_zero() {
                    *c = c.clone() * &inv;
                }
            }
        }
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }
}
