//! The field `K(t)` of rational functions in one parameter, and exact
//! projective limits at `t = 0`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;

use super::field::{Field, FieldContext};
use super::poly::Poly;
use crate::error::Error;

/// `num / den` in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc<K: Field> {
    num: Poly<K>,
    den: Poly<K>,
}

impl<K: Field> RatFunc<K> {
    pub fn new(num: Poly<K>, den: Poly<K>) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly<K>, den: Poly<K>) -> Self {
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        if den.is_one() {
            return RatFunc { num, den };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.inv().expect("nonzero");
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn from_poly(p: Poly<K>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: K) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    /// The parameter `t`.
    pub fn t() -> Self {
        RatFunc::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly<K> {
        &self.num
    }

    pub fn den(&self) -> &Poly<K> {
        &self.den
    }

    /// Order of vanishing at `t = 0`; negative for poles, `None` for zero.
    pub fn order_at_zero(&self) -> Option<i64> {
        let vn = self.num.valuation()? as i64;
        let vd = self.den.valuation().expect("nonzero denominator") as i64;
        Some(vn - vd)
    }

    /// Value at `t = t0`, or `None` at a pole.
    pub fn eval(&self, t0: &K) -> Option<K> {
        let d = self.den.eval(t0);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(t0) / &d)
        }
    }

    /// Leading coefficient of the Laurent expansion at `t = 0`.
    fn leading_at_zero(&self) -> Option<K> {
        let vn = self.num.valuation()?;
        let vd = self.den.valuation().expect("nonzero denominator");
        Some(self.num.coeff(vn) / &self.den.coeff(vd))
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }
}

/// Projective limit at `t = 0` of a coordinate vector over `K(t)`.
///
/// Divides every coordinate by `t^v`, where `v` is the least order at zero
/// among the coordinates, then evaluates at zero. Coordinates of higher
/// order go to zero; at least one coordinate of the result is nonzero.
pub fn t_limit<K: Field>(coords: &[RatFunc<K>]) -> Result<Vec<K>, Error> {
    let v = coords
        .iter()
        .filter_map(|c| c.order_at_zero())
        .min()
        .ok_or(Error::ZeroLimit)?;
    Ok(coords
        .iter()
        .map(|c| match c.order_at_zero() {
            Some(o) if o == v => c.leading_at_zero().expect("nonzero"),
            _ => K::zero(),
        })
        .collect())
}

impl<K: Field> fmt::Display for RatFunc<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_t_poly(f, &self.num)?;
        if !self.den.is_one() {
            write!(f, "/(")?;
            write_t_poly(f, &self.den)?;
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn write_t_poly<K: Field>(f: &mut fmt::Formatter<'_>, p: &Poly<K>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let nonzero = p.coeffs().iter().filter(|c| !c.is_zero()).count();
    if nonzero > 1 {
        write!(f, "(")?;
    }
    let mut first = true;
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let rational = c.as_rational();
        let neg = rational.as_ref().is_some_and(|q| q < &BigRational::from_integer(0.into()));
        if !first {
            write!(f, "{}", if neg { "-" } else { "+" })?;
        } else if neg {
            write!(f, "-")?;
        }
        first = false;
        let mag: String = match &rational {
            Some(q) => {
                let m = if neg { -q.clone() } else { q.clone() };
                m.to_string()
            }
            None => format!("({c})"),
        };
        let unit = rational
            .as_ref()
            .is_some_and(|q| *q == BigRational::from_integer(1.into()) || *q == BigRational::from_integer((-1).into()));
        match (i, unit) {
            (0, _) => write!(f, "{mag}")?,
            (1, true) => write!(f, "t")?,
            (1, false) => write!(f, "{mag}*t")?,
            (_, true) => write!(f, "t^{i}")?,
            (_, false) => write!(f, "{mag}*t^{i}")?,
        }
    }
    if nonzero > 1 {
        write!(f, ")")?;
    }
    Ok(())
}

impl<K: Field> Add for RatFunc<K> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self + &rhs
    }
}

impl<'a, K: Field> Add<&'a RatFunc<K>> for RatFunc<K> {
    type Output = Self;
    fn add(self, rhs: &'a RatFunc<K>) -> Self {
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFunc { num: self.num.add(&rhs.num), den: self.den };
            }
            return RatFunc::reduce(self.num.add(&rhs.num), self.den);
        }
        RatFunc::reduce(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl<K: Field> Sub for RatFunc<K> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + &(-rhs)
    }
}

impl<'a, K: Field> Sub<&'a RatFunc<K>> for RatFunc<K> {
    type Output = Self;
    fn sub(self, rhs: &'a RatFunc<K>) -> Self {
        self + &(-rhs.clone())
    }
}

impl<K: Field> Mul for RatFunc<K> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self * &rhs
    }
}

impl<'a, K: Field> Mul<&'a RatFunc<K>> for RatFunc<K> {
    type Output = Self;
    fn mul(self, rhs: &'a RatFunc<K>) -> Self {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RatFunc::from_poly(Poly::zero());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc { num: self.num.mul(&rhs.num), den: self.den };
        }
        // cross-cancel before multiplying
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1);
        let d2 = rhs.den.exact_div(&g1);
        let n2 = rhs.num.exact_div(&g2);
        let d1 = self.den.exact_div(&g2);
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.leading().expect("nonzero").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.inv().expect("nonzero");
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }
}

impl<K: Field> Div for RatFunc<K> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self / &rhs
    }
}

impl<'a, K: Field> Div<&'a RatFunc<K>> for RatFunc<K> {
    type Output = Self;
    fn div(self, rhs: &'a RatFunc<K>) -> Self {
        self * &rhs.inv().expect("division by zero in K(t)")
    }
}

impl<K: Field> Neg for RatFunc<K> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den }
    }
}

impl<K: Field> Field for RatFunc<K> {
    fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }

    fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        let lc = self.num.leading().expect("nonzero").clone();
        let inv = lc.inv().expect("nonzero");
        Some(RatFunc { num: self.den.scale(&inv), den: self.num.scale(&inv) })
    }

    fn from_rational(q: &BigRational) -> Self {
        RatFunc::constant(K::from_rational(q))
    }

    fn as_rational(&self) -> Option<BigRational> {
        if !self.den.is_one() {
            return None;
        }
        match self.num.degree() {
            None => Some(BigRational::from_integer(0.into())),
            Some(0) => self.num.coeff(0).as_rational(),
            Some(_) => None,
        }
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        let cmp_poly = |a: &Poly<K>, b: &Poly<K>| -> Ordering {
            match a.coeffs().len().cmp(&b.coeffs().len()) {
                Ordering::Equal => {
                    for (x, y) in a.coeffs().iter().zip(b.coeffs()).rev() {
                        match x.canonical_cmp(y) {
                            Ordering::Equal => continue,
                            o => return o,
                        }
                    }
                    Ordering::Equal
                }
                o => o,
            }
        };
        cmp_poly(&self.den, &other.den).then_with(|| cmp_poly(&self.num, &other.num))
    }

    fn symbol(name: char, ctx: &FieldContext) -> Option<Self> {
        if name == 't' {
            Some(RatFunc::t())
        } else {
            K::symbol(name, ctx).map(RatFunc::constant)
        }
    }

    /// Roots in `K(t)` of linear polynomials, plus roots lying in `K`.
    fn roots(p: &Poly<Self>) -> Vec<Self> {
        if p.degree() == Some(1) {
            let c = p.coeff(1);
            return vec![-(p.coeff(0) / &c)];
        }
        // clear denominators, then split by powers of t
        let lcm = p
            .coeffs()
            .iter()
            .fold(Poly::<K>::one(), |acc, c| {
                let g = acc.gcd(&c.den);
                acc.mul(&c.den).exact_div(&g)
            });
        let cleared: Vec<Poly<K>> = p
            .coeffs()
            .iter()
            .map(|c| c.num.mul(&lcm.exact_div(&c.den)))
            .collect();
        let width = cleared.iter().map(|c| c.coeffs().len()).max().unwrap_or(0);
        let mut g = Poly::<K>::zero();
        for j in 0..width {
            g = g.gcd(&Poly::new(cleared.iter().map(|c| c.coeff(j)).collect()));
        }
        if g.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        K::roots(&g).into_iter().map(RatFunc::constant).collect()
    }

    /// Scales to coprime polynomial entries whose first nonzero entry is monic.
    fn normalize_projective(v: &mut [Self]) {
        if v.iter().all(|c| c.is_zero()) {
            return;
        }
        let lcm = v.iter().fold(Poly::<K>::one(), |acc, c| {
            if c.den.is_one() {
                acc
            } else {
                let g = acc.gcd(&c.den);
                acc.mul(&c.den).exact_div(&g)
            }
        });
        let mut nums: Vec<Poly<K>> = v
            .iter()
            .map(|c| {
                if lcm.is_one() {
                    c.num.clone()
                } else {
                    c.num.mul(&lcm.exact_div(&c.den))
                }
            })
            .collect();
        let content = nums.iter().fold(Poly::<K>::zero(), |acc, n| {
            if acc.is_one() {
                acc
            } else {
                acc.gcd(n)
            }
        });
        let first = nums.iter().find(|n| !n.is_zero()).expect("nonzero entry");
        let lead = first.leading().expect("nonzero").clone() / &content.leading().expect("nonzero").clone();
        let scale = lead.inv().expect("nonzero");
        for n in nums.iter_mut() {
            if !n.is_zero() {
                let q = if content.is_one() { n.clone() } else { n.exact_div(&content) };
                *n = q.scale(&scale);
            }
        }
        for (c, n) in v.iter_mut().zip(nums) {
            *c = RatFunc { num: n, den: Poly::one() };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = BigRational;
    type Rf = RatFunc<Q>;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn tp(cs: &[i64]) -> Rf {
        Rf::from_poly(Poly::new(cs.iter().map(|&c| q(c)).collect()))
    }

    #[test]
    fn limit_constant_leading_term() {
        let lim = t_limit(&[tp(&[0, 1]), tp(&[1])]).unwrap();
        assert_eq!(lim, vec![q(0), q(1)]);
    }

    #[test]
    fn limit_divides_by_t() {
        let lim = t_limit(&[tp(&[0, 1, 1]), tp(&[0, 1])]).unwrap();
        assert_eq!(lim, vec![q(1), q(1)]);
    }

    #[test]
    fn limit_with_pole() {
        let inv_t = Rf::one() / &Rf::t();
        let lim = t_limit(&[Rf::one(), inv_t.clone()]).unwrap();
        assert_eq!(lim, vec![q(0), q(1)]);
        // oracle: clear the denominator first
        let cleared = [Rf::one() * &Rf::t(), inv_t * &Rf::t()];
        assert_eq!(t_limit(&cleared).unwrap(), lim);
    }

    #[test]
    fn limit_of_zero_vector_is_error() {
        assert!(t_limit(&[Rf::zero(), Rf::zero()]).is_err());
    }

    #[test]
    fn reduced_form_is_canonical() {
        let a = Rf::new(Poly::new(vec![q(-1), q(0), q(1)]), Poly::new(vec![q(-2), q(2)])).unwrap();
        // (t^2 - 1) / (2t - 2) = (t + 1) / 2
        assert_eq!(a, tp(&[1, 1]) * &Rf::from_rational(&Q::new(1.into(), 2.into())));
        assert!(a.den().is_one());
    }

    #[test]
    fn normalization_clears_denominators() {
        let mut v = vec![Rf::one() / &tp(&[1, 1]), tp(&[0, 2])];
        Rf::normalize_projective(&mut v);
        assert_eq!(v, vec![tp(&[1]), tp(&[0, 2, 2])]);
    }
}
