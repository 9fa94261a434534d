//! Modular gcd of rational polynomials: gcds modulo word-size primes,
//! combined by CRT until the candidate divides both inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::rational::primitive_part;

const START: u64 = (1 << 31) - 1;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut i = 3;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 2;
    }
    true
}

fn primes() -> impl Iterator<Item = u64> {
    (2..=START).rev().filter(|&n| is_prime(n))
}

fn residue(a: &BigInt, p: u64) -> u64 {
    let r = a.mod_floor(&BigInt::from(p));
    r.to_u64_digits().1.first().copied().unwrap_or(0)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
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

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn monic_mod(v: &mut [u64], p: u64) {
    if let Some(&lc) = v.last() {
        let inv = inv_mod(lc, p);
        for c in v.iter_mut() {
            *c = *c * inv % p;
        }
    }
}

fn rem_mod(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while a.len() > db {
        let top = a.len() - 1;
        let q = a[top] * inv % p;
        if q != 0 {
            let shift = top - db;
            for (i, c) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - q * c % p) % p;
            }
        }
        a.pop();
        trim(a);
    }
}

/// Monic gcd over `Z/p`.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        rem_mod(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    monic_mod(&mut a, p);
    a
}

fn to_poly(v: &[BigInt]) -> Poly<BigRational> {
    Poly::new(v.iter().map(|c| BigRational::from_integer(c.clone())).collect())
}

/// Monic gcd of two rational polynomials.
pub(crate) fn gcd(a: &Poly<BigRational>, b: &Poly<BigRational>) -> Poly<BigRational> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.degree() == Some(0) || b.degree() == Some(0) {
        return Poly::one();
    }
    let (ia, ib) = (primitive_part(a), primitive_part(b));
    let (la, lb) = (ia.last().expect("nonzero"), ib.last().expect("nonzero"));
    let lg = la.gcd(lb);
    let (pa, pb) = (to_poly(&ia), to_poly(&ib));
    let mut best = ia.len().min(ib.len());
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last: Option<Vec<BigInt>> = None;
    for p in primes() {
        if residue(la, p) == 0 || residue(lb, p) == 0 {
            continue;
        }
        let ap: Vec<u64> = ia.iter().map(|c| residue(c, p)).collect();
        let bp: Vec<u64> = ib.iter().map(|c| residue(c, p)).collect();
        let mut g = gcd_mod(ap, bp, p);
        if g.len() == 1 {
            return Poly::one();
        }
        if g.len() > best {
            continue;
        }
        if g.len() < best {
            best = g.len();
            acc.clear();
            modulus = BigInt::one();
            last = None;
        }
        let s = residue(&lg, p);
        for c in g.iter_mut() {
            *c = *c * s % p;
        }
        // CRT
        let bp = BigInt::from(p);
        if acc.is_empty() {
            acc = g.iter().map(|&c| BigInt::from(c)).collect();
        } else {
            let minv = BigInt::from(inv_mod(residue(&modulus, p), p));
            for (x, &c) in acc.iter_mut().zip(&g) {
                let diff = (BigInt::from(c) - residue(x, p)).mod_floor(&bp);
                let k = (diff * &minv).mod_floor(&bp);
                *x += &modulus * k;
            }
        }
        modulus *= &bp;
        let half = &modulus >> 1;
        let sym: Vec<BigInt> = acc
            .iter()
            .map(|x| if *x > half { x - &modulus } else { x.clone() })
            .collect();
        let content = sym.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let mut cand: Vec<BigInt> = sym.iter().map(|c| c / &content).collect();
        if cand.last().is_some_and(|c| c.is_negative()) {
            cand.iter_mut().for_each(|c| *c = -c.clone());
        }
        if last.as_ref() == Some(&cand) {
            let h = to_poly(&cand);
            if h.divides(&pa) && h.divides(&pb) {
                return h.monic();
            }
        }
        last = Some(cand);
    }
    unreachable!("ran out of primes")
}
