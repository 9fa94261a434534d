//! The rationals as a [`Field`], with complete rational root finding.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::Field;
use super::poly::Poly;

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn as_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn roots(p: &Poly<Self>) -> Vec<Self> {
        rational_roots(p)
    }

    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Option<Poly<Self>> {
        Some(super::modgcd::gcd(a, b))
    }
}

/// Primitive integer polynomial with positive leading coefficient that is a
/// rational multiple of `p`.
pub fn primitive_part(p: &Poly<BigRational>) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() {
        for c in ints.iter_mut() {
            *c /= &content;
        }
    }
    if ints.last().is_some_and(|c| c.is_negative()) {
        for c in ints.iter_mut() {
            *c = -c.clone();
        }
    }
    ints
}

/// All distinct rational roots of a nonzero polynomial.
///
/// Roots are found modulo a small prime where the polynomial stays
/// square-free, lifted p-adically, recovered by rational reconstruction and
/// verified exactly.
pub fn rational_roots(p: &Poly<BigRational>) -> Vec<BigRational> {
    let mut roots = Vec::new();
    let Some(deg) = p.degree() else {
        return roots;
    };
    if deg == 0 {
        return roots;
    }
    let mut f = p.clone();
    if let Some(v) = f.valuation() {
        if v > 0 {
            roots.push(<BigRational as Zero>::zero());
            f = f.unshift(v);
        }
    }
    // square-free part
    let g = f.gcd(&f.derivative());
    if g.degree().unwrap_or(0) > 0 {
        f = f.exact_div(&g);
    }
    match f.degree() {
        None | Some(0) => {}
        Some(1) => roots.push(-(f.coeff(0) / f.coeff(1))),
        Some(_) => {
            let ints = primitive_part(&f);
            for r in modular_rational_roots(&ints) {
                if Field::is_zero(&f.eval(&r)) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

fn mod_u64(a: &BigInt, p: u64) -> u64 {
    let r = a.mod_floor(&BigInt::from(p));
    r.to_u64_digits().1.first().copied().unwrap_or(0)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn rem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let inv = pow_mod(b[db], p - 2, p);
    while r.len() > db {
        let top = r.len() - 1;
        let q = r[top] * inv % p;
        if q != 0 {
            for (j, &bj) in b.iter().enumerate() {
                let k = top - db + j;
                r[k] = (r[k] + p - q * bj % p) % p;
            }
        }
        trim(&mut r);
    }
    r
}

fn gcd_is_one_mod(a: &[u64], b: &[u64], p: u64) -> bool {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem_mod(&x, &y, p);
        x = y;
        y = r;
    }
    x.len() == 1
}

fn eval_mod(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

fn eval_big(f: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    f.iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn inv_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Recover `a/b` from `r mod m` with `|a| <= bound_a`, `0 < b <= bound_b`.
fn reconstruct(r: &BigInt, m: &BigInt, bound_a: &BigInt, bound_b: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound_a {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *bound_b {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

fn modular_rational_roots(f: &[BigInt]) -> Vec<BigRational> {
    let lc = f.last().expect("nonzero polynomial").abs();
    let c0 = f[0].abs();
    let df: Vec<BigInt> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    // smallest prime not dividing lc with f square-free mod p
    let mut p = 10_007u64;
    let fp = loop {
        if is_prime(p) && mod_u64(&lc, p) != 0 {
            let fp: Vec<u64> = f.iter().map(|c| mod_u64(c, p)).collect();
            let mut dfp: Vec<u64> = df.iter().map(|c| mod_u64(c, p)).collect();
            trim(&mut dfp);
            if !dfp.is_empty() && gcd_is_one_mod(&fp, &dfp, p) {
                break fp;
            }
        }
        p += 2;
    };
    let residues: Vec<u64> = (0..p).filter(|&x| eval_mod(&fp, x, p) == 0).collect();
    if residues.is_empty() {
        return Vec::new();
    }
    // p^k must exceed 2 * |c0| * |lc|
    let need = BigInt::from(2) * &c0 * &lc + BigInt::one();
    let pb = BigInt::from(p);
    let mut out = Vec::new();
    for r in residues {
        let mut root = BigInt::from(r);
        let mut m = pb.clone();
        let ok = loop {
            if m > need {
                break true;
            }
            let m2 = &m * &m;
            let fv = eval_big(f, &root, &m2);
            let dv = eval_big(&df, &root, &m2);
            let Some(di) = inv_big(&dv, &m2) else {
                break false;
            };
            root = (root - fv * di).mod_floor(&m2);
            m = m2;
        };
        if !ok {
            continue;
        }
        if let Some(q) = reconstruct(&root, &m, &c0, &lc) {
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn from_roots(rs: &[BigRational]) -> Poly<BigRational> {
        rs.iter()
            .fold(Poly::one(), |acc, r| acc.mul(&Poly::linear_root(r)))
    }

    #[test]
    fn finds_mixed_rational_roots() {
        let rs = vec![q(-3, 7), q(0, 1), q(5, 2), q(1000003, 999)];
        let p = from_roots(&rs).mul(&Poly::new(vec![q(1, 1), q(0, 1), q(1, 1)]));
        let mut expected = rs.clone();
        expected.sort();
        assert_eq!(rational_roots(&p), expected);
    }

    #[test]
    fn irreducible_has_no_roots() {
        let p = Poly::new(vec![q(-2, 1), q(0, 1), q(1, 1)]);
        assert!(rational_roots(&p).is_empty());
    }

    #[test]
    fn repeated_roots_reported_once() {
        let p = from_roots(&[q(1, 1), q(1, 1), q(-1, 3)]);
        assert_eq!(rational_roots(&p), vec![q(-1, 3), q(1, 1)]);
    }
}
