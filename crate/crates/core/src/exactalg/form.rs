//! Homogeneous polynomials in `X, Y`.

use std::fmt;

use super::field::Field;
use super::poly::Poly;
use crate::error::Error;

/// A binary form of fixed degree.
///
/// `coeffs[i]` is the coefficient of `X^(degree - i) Y^i`. The zero form
/// keeps its degree, so that a coordinate of a map can vanish identically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogForm<K: Field> {
    coeffs: Vec<K>,
}

impl<K: Field> HomogForm<K> {
    /// Panics on an empty coefficient vector.
    pub fn new(coeffs: Vec<K>) -> Self {
        assert!(!coeffs.is_empty(), "a form has at least one coefficient");
        HomogForm { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        HomogForm { coeffs: vec![K::zero(); degree + 1] }
    }

    pub fn one() -> Self {
        HomogForm { coeffs: vec![K::one()] }
    }

    pub fn constant(c: K) -> Self {
        HomogForm { coeffs: vec![c] }
    }

    pub fn x() -> Self {
        HomogForm { coeffs: vec![K::one(), K::zero()] }
    }

    pub fn y() -> Self {
        HomogForm { coeffs: vec![K::zero(), K::one()] }
    }

    /// `b X - a Y`, the linear form vanishing at `[a:b]`.
    pub fn vanishing_at(a: &K, b: &K) -> Self {
        HomogForm { coeffs: vec![b.clone(), -a.clone()] }
    }

    /// `X^(degree - k) Y^k`
    pub fn monomial(degree: usize, k: usize) -> Self {
        let mut coeffs = vec![K::zero(); degree + 1];
        coeffs[k] = K::one();
        HomogForm { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &K {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn map_coeffs<L: Field>(&self, f: impl Fn(&K) -> L) -> HomogForm<L> {
        HomogForm { coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Canonical representative: first nonzero coefficient normalized by the
    /// field's projective normalization (one, over number fields).
    pub fn normalized(&self) -> Self {
        let mut c = self.coeffs.clone();
        K::normalize_projective(&mut c);
        HomogForm { coeffs: c }
    }

    pub fn scale(&self, s: &K) -> Self {
        HomogForm { coeffs: self.coeffs.iter().map(|c| c.clone() * s).collect() }
    }

    pub fn neg(&self) -> Self {
        HomogForm { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, Error> {
        if self.degree() != rhs.degree() {
            return Err(Error::DegreeMismatch(self.degree(), rhs.degree()));
        }
        Ok(HomogForm {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() + b).collect(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, Error> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = a.clone() * b;
                out[i + j] = std::mem::replace(&mut out[i + j], K::zero()) + &p;
            }
        }
        HomogForm { coeffs: out }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = HomogForm::one();
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

    /// Value at `(a, b)`.
    pub fn eval(&self, a: &K, b: &K) -> K {
        // Horner in the ratio, homogenized: sum c_i a^(n-i) b^i
        let n = self.degree();
        let mut acc = K::zero();
        let mut bpow = K::one();
        let apows = powers(a, n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc + &(c.clone() * &apows[n - i] * &bpow);
            }
            if i < n {
                bpow = bpow * b;
            }
        }
        acc
    }

    /// `p(x) = H(x, 1)`.
    pub fn dehomogenize(&self) -> Poly<K> {
        Poly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Inverse of [`HomogForm::dehomogenize`] at a given degree.
    pub fn homogenize(p: &Poly<K>, degree: usize) -> Self {
        let d = p.degree().unwrap_or(0);
        assert!(d <= degree, "polynomial degree exceeds target degree");
        let mut coeffs = vec![K::zero(); degree + 1];
        for (j, c) in p.coeffs().iter().enumerate() {
            coeffs[degree - j] = c.clone();
        }
        HomogForm { coeffs }
    }

    /// Order of vanishing at `[1:0]`: the power of `Y` dividing the form.
    fn order_at_infinity(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.degree())
    }

    /// Order of vanishing at `[a:b]`. Panics on the zero form.
    pub fn ord_vanish(&self, a: &K, b: &K) -> u32 {
        assert!(!self.is_zero(), "order of vanishing of the zero form");
        if b.is_zero() {
            return self.order_at_infinity() as u32;
        }
        let x = a.clone() / b;
        self.dehomogenize().root_multiplicity(&x)
    }

    /// `H(P, Q)`; `P` and `Q` must have equal degree.
    pub fn compose(&self, p: &Self, q: &Self) -> Result<Self, Error> {
        if p.degree() != q.degree() {
            return Err(Error::DegreeMismatch(p.degree(), q.degree()));
        }
        let n = self.degree();
        let e = p.degree();
        let ppow = form_powers(p, n);
        let qpow = form_powers(q, n);
        let mut acc = HomogForm::zero(n * e);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = ppow[n - i].mul(&qpow[i]).scale(c);
            acc = acc.add(&term).expect("equal degrees");
        }
        Ok(acc)
    }

    /// Monic-normalized greatest common divisor; `gcd(0, G) = G`.
    pub fn gcd(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.normalized();
        }
        if rhs.is_zero() {
            return self.normalized();
        }
        let k = self.order_at_infinity().min(rhs.order_at_infinity());
        let g = self.dehomogenize().gcd(&rhs.dehomogenize());
        let dg = g.degree().unwrap_or(0);
        let affine = HomogForm::homogenize(&g, dg);
        affine.mul(&HomogForm::monomial(k, k)).normalized()
    }

    /// Exact quotient `self / rhs`.
    pub fn div_exact(&self, rhs: &Self) -> Result<Self, Error> {
        if rhs.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if rhs.degree() > self.degree() {
            return Err(Error::NotDivisible);
        }
        let deg = self.degree() - rhs.degree();
        if self.is_zero() {
            return Ok(HomogForm::zero(deg));
        }
        let (ks, kr) = (self.order_at_infinity(), rhs.order_at_infinity());
        if kr > ks {
            return Err(Error::NotDivisible);
        }
        let (q, r) = self.dehomogenize().div_rem(&rhs.dehomogenize());
        if !r.is_zero() {
            return Err(Error::NotDivisible);
        }
        Ok(HomogForm::homogenize(&q, deg))
    }

    /// Formal partial derivative in `X`.
    pub fn d_dx(&self) -> Self {
        let n = self.degree();
        if n == 0 {
            return HomogForm::zero(0);
        }
        HomogForm {
            coeffs: (0..n)
                .map(|i| self.coeffs[i].clone() * &K::from_i64((n - i) as i64))
                .collect(),
        }
    }

    /// Square-free decomposition.
    ///
    /// Returns normalized, pairwise coprime, square-free forms with strictly
    /// increasing multiplicities whose product of powers equals `self` up to a
    /// nonzero scalar.
    pub fn squarefree_decompose(&self) -> Result<Vec<(Self, u32)>, Error> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let k = self.order_at_infinity() as u32;
        let p = self.dehomogenize();
        let mut parts: Vec<(Self, u32)> = p
            .squarefree()
            .into_iter()
            .map(|(f, m)| {
                let d = f.degree().unwrap_or(0);
                (HomogForm::homogenize(&f, d), m)
            })
            .collect();
        if k > 0 {
            match parts.iter_mut().find(|(_, m)| *m == k) {
                Some((f, _)) => *f = f.mul(&HomogForm::y()),
                None => parts.push((HomogForm::y(), k)),
            }
            parts.sort_by_key(|(_, m)| *m);
        }
        Ok(parts.into_iter().map(|(f, m)| (f.normalized(), m)).collect())
    }

    /// Distinct roots in `P^1(K)` that the field can locate, as `(a, b)` pairs
    /// in canonical form (`b = 1`, or `(1, 0)` for infinity).
    pub fn roots(&self) -> Vec<(K, K)> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut out: Vec<(K, K)> = K::roots(&self.dehomogenize())
            .into_iter()
            .map(|r| (r, K::one()))
            .collect();
        if self.order_at_infinity() > 0 {
            out.push((K::one(), K::zero()));
        }
        out
    }
}

fn powers<K: Field>(a: &K, n: usize) -> Vec<K> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(K::one());
    for i in 0..n {
        let next = out[i].clone() * a;
        out.push(next);
    }
    out
}

fn form_powers<K: Field>(p: &HomogForm<K>, n: usize) -> Vec<HomogForm<K>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(HomogForm::one());
    for i in 0..n {
        let next = out[i].mul(p);
        out.push(next);
    }
    out
}

fn write_monomial(f: &mut fmt::Formatter<'_>, xe: usize, ye: usize) -> fmt::Result {
    let mut parts = Vec::new();
    match xe {
        0 => {}
        1 => parts.push("X".to_string()),
        _ => parts.push(format!("X^{xe}")),
    }
    match ye {
        0 => {}
        1 => parts.push("Y".to_string()),
        _ => parts.push(format!("Y^{ye}")),
    }
    write!(f, "{}", parts.join("*"))
}

impl<K: Field> fmt::Display for HomogForm<K> {
    /// Expanded form in `X, Y`, parseable by the map-expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut first = true;
        let zero = num_rational::BigRational::from_integer(0.into());
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (xe, ye) = (n - i, i);
            let constant = xe == 0 && ye == 0;
            match c.as_rational() {
                Some(q) => {
                    let neg = q < zero;
                    let mag = if neg { -q } else { q };
                    if first {
                        if neg {
                            write!(f, "-")?;
                        }
                    } else {
                        write!(f, " {} ", if neg { "-" } else { "+" })?;
                    }
                    let unit = Field::is_one(&mag);
                    if constant {
                        write!(f, "{mag}")?;
                    } else if unit {
                        write_monomial(f, xe, ye)?;
                    } else {
                        write!(f, "{mag}*")?;
                        write_monomial(f, xe, ye)?;
                    }
                }
                None => {
                    if !first {
                        write!(f, " + ")?;
                    }
                    write!(f, "({c})")?;
                    if !constant {
                        write!(f, "*")?;
                        write_monomial(f, xe, ye)?;
                    }
                }
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational as Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn form(cs: &[i64]) -> HomogForm<Q> {
        HomogForm::new(cs.iter().map(|&c| q(c)).collect())
    }

    fn lin(a: i64, b: i64) -> HomogForm<Q> {
        // vanishes at [a:b]
        HomogForm::vanishing_at(&q(a), &q(b))
    }

    #[test]
    fn squarefree_example_with_y_factor() {
        // (X - Y)^2 Y
        let h = lin(1, 1).pow(2).mul(&HomogForm::y());
        let parts = h.squarefree_decompose().unwrap();
        assert_eq!(parts, vec![(HomogForm::y(), 1), (lin(1, 1).normalized(), 2)]);
    }

    #[test]
    fn squarefree_of_fourth_power() {
        let base = HomogForm::x().mul(&HomogForm::y()).mul(&lin(1, 1)).mul(&lin(2, 1));
        let h = base.pow(4);
        let parts = h.squarefree_decompose().unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].1, 4);
        assert_eq!(parts[0].0.pow(4).normalized(), h.normalized());
    }

    #[test]
    fn squarefree_irreducible() {
        let h = form(&[1, 0, 1]);
        assert_eq!(h.squarefree_decompose().unwrap(), vec![(h.clone(), 1)]);
    }

    #[test]
    fn squarefree_rejects_zero() {
        assert!(matches!(HomogForm::<Q>::zero(3).squarefree_decompose(), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn ord_vanish_example() {
        let h = lin(1, 1).pow(2).mul(&HomogForm::y());
        assert_eq!(h.ord_vanish(&q(1), &q(1)), 2);
        // Y vanishes at infinity, X at zero
        assert_eq!(h.ord_vanish(&q(1), &q(0)), 1);
        assert_eq!(h.ord_vanish(&q(0), &q(1)), 0);
    }

    #[test]
    fn compose_examples() {
        let h = lin(1, 1).pow(2).mul(&HomogForm::y());
        let out = h.compose(&HomogForm::x().neg(), &HomogForm::y()).unwrap();
        assert_eq!(out, lin(-1, 1).pow(2).mul(&HomogForm::y()));
        assert_eq!(h.compose(&HomogForm::x(), &HomogForm::y()).unwrap(), h);
        let xy = HomogForm::<Q>::x().mul(&HomogForm::y());
        let sq = xy.compose(&HomogForm::x().pow(2), &HomogForm::y().pow(2)).unwrap();
        assert_eq!(sq, xy.pow(2));
        assert!(h.compose(&HomogForm::x(), &HomogForm::y().pow(2)).is_err());
    }

    #[test]
    fn gcd_and_division() {
        let a = lin(1, 1).pow(2).mul(&HomogForm::y().pow(3));
        let b = lin(1, 1).mul(&HomogForm::y()).mul(&lin(3, 1));
        let g = a.gcd(&b);
        assert_eq!(g, lin(1, 1).mul(&HomogForm::y()).normalized());
        let quot = a.div_exact(&g).unwrap();
        assert_eq!(quot.mul(&g).normalized(), a.normalized());
        assert!(a.div_exact(&lin(3, 1)).is_err());
    }

    #[test]
    fn display_is_readable() {
        let h = lin(1, 1).pow(2).mul(&HomogForm::y());
        assert_eq!(h.to_string(), "X^2*Y - 2*X*Y^2 + Y^3");
        assert_eq!(form(&[0, -1]).to_string(), "-Y");
    }
}
