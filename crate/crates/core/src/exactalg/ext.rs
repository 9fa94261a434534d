//! Simple algebraic extensions `Q(w)` of the rationals with one generator.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;

use super::field::{Field, FieldContext};
use super::poly::Poly;
use super::rational::rational_roots;
use crate::error::Error;

/// Monic minimal polynomial of the generator `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinPoly {
    poly: Poly<BigRational>,
}

impl MinPoly {
    /// Accepts a monic-able polynomial of degree at least two that is
    /// square-free with no rational root.
    ///
    /// Irreducibility is checked completely up to degree three. For higher
    /// degree only cyclotomic polynomials are certified; other inputs are
    /// accepted on the caller's word.
    pub fn new(poly: Poly<BigRational>) -> Result<Self, Error> {
        let deg = poly.degree().unwrap_or(0);
        if deg < 2 {
            return Err(Error::Field(format!(
                "minimal polynomial must have degree >= 2, got {deg}"
            )));
        }
        let poly = poly.monic();
        if poly.gcd(&poly.derivative()).degree() != Some(0) {
            return Err(Error::Field("minimal polynomial is not square-free".into()));
        }
        if !rational_roots(&poly).is_empty() {
            return Err(Error::Field("minimal polynomial has a rational root".into()));
        }
        Ok(MinPoly { poly })
    }

    /// `w^2 + 1`
    pub fn gaussian() -> Self {
        MinPoly { poly: Poly::new(vec![q1(1), q1(0), q1(1)]) }
    }

    /// The `n`-th cyclotomic polynomial, `n >= 3`.
    pub fn cyclotomic(n: u32) -> Result<Self, Error> {
        if n < 3 {
            return Err(Error::Field(format!(
                "cyclotomic field of order {n} is the rationals"
            )));
        }
        Ok(MinPoly { poly: cyclotomic_poly(n) })
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().expect("nonzero minimal polynomial")
    }

    pub fn poly(&self) -> &Poly<BigRational> {
        &self.poly
    }
}

fn q1(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn cyclotomic_poly(n: u32) -> Poly<BigRational> {
    let mut xn = vec![q1(0); n as usize + 1];
    xn[0] = q1(-1);
    xn[n as usize] = q1(1);
    let mut p = Poly::new(xn);
    for d in 1..n {
        if n % d == 0 {
            p = p.exact_div(&cyclotomic_poly(d));
        }
    }
    p
}

/// Element of `Q(w)`, stored as a reduced polynomial in `w`.
///
/// Rational elements carry no modulus, so `zero()` and `one()` need no
/// context; the modulus is picked up from whichever operand has one.
#[derive(Clone, Debug)]
pub struct QExt {
    coeffs: Poly<BigRational>,
    modulus: Option<Arc<MinPoly>>,
}

impl QExt {
    pub fn generator(modulus: Arc<MinPoly>) -> Self {
        QExt::from_poly(Poly::x(), Some(modulus))
    }

    pub fn from_poly(p: Poly<BigRational>, modulus: Option<Arc<MinPoly>>) -> Self {
        let coeffs = match &modulus {
            Some(m) if p.degree().unwrap_or(0) >= m.degree() => p.div_rem(m.poly()).1,
            _ => p,
        };
        debug_assert!(
            modulus.is_some() || coeffs.degree().unwrap_or(0) == 0,
            "irrational element without a modulus"
        );
        QExt { coeffs, modulus }
    }

    pub fn rational(q: BigRational) -> Self {
        QExt { coeffs: Poly::constant(q), modulus: None }
    }

    /// Coefficients in the power basis `1, w, w^2, ...`.
    pub fn coeffs(&self) -> &Poly<BigRational> {
        &self.coeffs
    }

    pub fn modulus(&self) -> Option<&Arc<MinPoly>> {
        self.modulus.as_ref()
    }

    fn join(&self, rhs: &Self) -> Option<Arc<MinPoly>> {
        match (&self.modulus, &rhs.modulus) {
            (Some(a), Some(b)) => {
                debug_assert!(Arc::ptr_eq(a, b) || a == b, "mixed extension fields");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }
}

impl PartialEq for QExt {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for QExt {}

impl fmt::Display for QExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.coeffs.coeffs();
        if cs.len() <= 1 {
            return write!(f, "{}", cs.first().cloned().unwrap_or_else(|| q1(0)));
        }
        let mut first = true;
        for (i, c) in cs.iter().enumerate() {
            if Field::is_zero(c) {
                continue;
            }
            let neg = c < &q1(0);
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = Field::is_one(&mag);
            match (i, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "w")?,
                (1, false) => write!(f, "{mag}*w")?,
                (_, true) => write!(f, "w^{i}")?,
                (_, false) => write!(f, "{mag}*w^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for QExt {
    type Output = QExt;
    fn add(self, rhs: QExt) -> QExt {
        self + &rhs
    }
}

impl<'a> Add<&'a QExt> for QExt {
    type Output = QExt;
    fn add(self, rhs: &'a QExt) -> QExt {
        let m = self.join(rhs);
        QExt { coeffs: self.coeffs.add(&rhs.coeffs), modulus: m }
    }
}

impl Sub for QExt {
    type Output = QExt;
    fn sub(self, rhs: QExt) -> QExt {
        self - &rhs
    }
}

impl<'a> Sub<&'a QExt> for QExt {
    type Output = QExt;
    fn sub(self, rhs: &'a QExt) -> QExt {
        let m = self.join(rhs);
        QExt { coeffs: self.coeffs.sub(&rhs.coeffs), modulus: m }
    }
}

impl Mul for QExt {
    type Output = QExt;
    fn mul(self, rhs: QExt) -> QExt {
        self * &rhs
    }
}

impl<'a> Mul<&'a QExt> for QExt {
    type Output = QExt;
    fn mul(self, rhs: &'a QExt) -> QExt {
        let m = self.join(rhs);
        QExt::from_poly(self.coeffs.mul(&rhs.coeffs), m)
    }
}

impl Div for QExt {
    type Output = QExt;
    fn div(self, rhs: QExt) -> QExt {
        self / &rhs
    }
}

impl<'a> Div<&'a QExt> for QExt {
    type Output = QExt;
    fn div(self, rhs: &'a QExt) -> QExt {
        self * &rhs.inv().expect("division by zero in Q(w)")
    }
}

impl Neg for QExt {
    type Output = QExt;
    fn neg(self) -> QExt {
        QExt { coeffs: self.coeffs.neg(), modulus: self.modulus }
    }
}

impl Field for QExt {
    fn zero() -> Self {
        QExt { coeffs: Poly::zero(), modulus: None }
    }

    fn one() -> Self {
        QExt { coeffs: Poly::one(), modulus: None }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    fn inv(&self) -> Option<Self> {
        match self.coeffs.degree() {
            None => None,
            Some(0) => Some(QExt::rational(self.coeffs.coeff(0).recip())),
            Some(_) => {
                let m = self.modulus.clone().expect("irrational element carries a modulus");
                let (g, s, _) = self.coeffs.ext_gcd(m.poly());
                assert!(g.is_one(), "minimal polynomial is reducible");
                Some(QExt::from_poly(s, Some(m)))
            }
        }
    }

    fn from_rational(q: &BigRational) -> Self {
        QExt::rational(q.clone())
    }

    fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.degree() {
            None => Some(q1(0)),
            Some(0) => Some(self.coeffs.coeff(0)),
            Some(_) => None,
        }
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.coeffs.coeffs(), other.coeffs.coeffs());
        let n = a.len().max(b.len());
        for i in (0..n).rev() {
            let x = a.get(i).cloned().unwrap_or_else(|| q1(0));
            let y = b.get(i).cloned().unwrap_or_else(|| q1(0));
            match x.cmp(&y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    fn symbol(name: char, ctx: &FieldContext) -> Option<Self> {
        match (name, &ctx.minpoly) {
            ('w', Some(m)) => Some(QExt::generator(m.clone())),
            _ => None,
        }
    }

    /// Roots lying in `Q`, plus the root of a linear polynomial.
    fn roots(p: &Poly<Self>) -> Vec<Self> {
        if p.degree() == Some(1) {
            let c = p.coeff(1);
            return vec![-(p.coeff(0) / &c)];
        }
        // x in Q is a root iff every w-component polynomial vanishes at x
        let width = p.coeffs().iter().map(|c| c.coeffs.coeffs().len()).max().unwrap_or(0);
        let mut g = Poly::<BigRational>::zero();
        for j in 0..width {
            let comp = Poly::new(p.coeffs().iter().map(|c| c.coeffs.coeff(j)).collect());
            g = g.gcd(&comp);
        }
        if g.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        rational_roots(&g).into_iter().map(QExt::rational).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_inverse() {
        let m = Arc::new(MinPoly::gaussian());
        let i = QExt::generator(m.clone());
        let z = QExt::one() + &(i.clone() * &QExt::from_i64(2));
        let w = z.inv().unwrap();
        assert!((z * &w).is_one());
        assert_eq!((i.clone() * &i), QExt::from_i64(-1));
    }

    #[test]
    fn cyclotomic_cube_root() {
        let m = Arc::new(MinPoly::cyclotomic(3).unwrap());
        assert_eq!(m.degree(), 2);
        let w = QExt::generator(m);
        assert!(w.pow(3).is_one());
        assert!(!w.pow(2).is_one());
    }

    #[test]
    fn rejects_reducible() {
        let p = Poly::new(vec![q1(-1), q1(0), q1(1)]);
        assert!(MinPoly::new(p).is_err());
    }
}
