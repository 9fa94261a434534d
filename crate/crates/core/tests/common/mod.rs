#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ratdyn::dynamics::in_indeterminacy;
use ratdyn::exactalg::{q, qr, HomogForm, Poly, Qt, RatFunc, Q};
use ratdyn::projmap::{MapPoint, Mobius, ProjPoint};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small(rng: &mut ChaCha8Rng) -> Q {
    let n = rng.gen_range(-4i64..=4);
    if rng.gen_bool(0.2) {
        qr(n, rng.gen_range(2i64..=3))
    } else {
        q(n)
    }
}

pub fn nonzero(rng: &mut ChaCha8Rng) -> Q {
    loop {
        let c = small(rng);
        if c != q(0) {
            return c;
        }
    }
}

/// A point from a small pool, so that roots collide often.
pub fn pool_point(rng: &mut ChaCha8Rng) -> ProjPoint<Q> {
    if rng.gen_bool(0.15) {
        ProjPoint::infinity()
    } else {
        ProjPoint::from_i64(rng.gen_range(-2i64..=3))
    }
}

pub fn random_form(rng: &mut ChaCha8Rng, degree: usize) -> HomogForm<Q> {
    loop {
        let h = HomogForm::new((0..=degree).map(|_| small(rng)).collect());
        if !h.is_zero() {
            return h;
        }
    }
}

/// Product of linear factors from the pool, sometimes with an irreducible quadratic.
pub fn random_hole_poly(rng: &mut ChaCha8Rng, degree: usize) -> HomogForm<Q> {
    let mut h = HomogForm::constant(nonzero(rng));
    let mut left = degree;
    if left >= 2 && rng.gen_bool(0.15) {
        let quad = HomogForm::new(vec![q(1), q(0), q(rng.gen_range(1i64..=3))]);
        h = h.mul(&quad);
        left -= 2;
    }
    for _ in 0..left {
        h = h.mul(&pool_point(rng).linear_form());
    }
    h
}

/// Coprime pair of degree `e`; a constant point when `e = 0`.
pub fn random_reduced(rng: &mut ChaCha8Rng, e: usize) -> (HomogForm<Q>, HomogForm<Q>) {
    if e == 0 {
        let p = pool_point(rng);
        return (HomogForm::constant(p.a().clone()), HomogForm::constant(p.b().clone()));
    }
    loop {
        let p = random_form(rng, e);
        let r = random_form(rng, e);
        if p.gcd(&r).degree() == 0 {
            return (p, r);
        }
    }
}

pub fn random_map(rng: &mut ChaCha8Rng, d: usize) -> MapPoint<Q> {
    let k = rng.gen_range(0..=d);
    let h = random_hole_poly(rng, k);
    let (p, r) = random_reduced(rng, d - k);
    MapPoint::from_parts(&h, &p, &r).unwrap()
}

pub fn random_map_outside_i(rng: &mut ChaCha8Rng, d: usize) -> MapPoint<Q> {
    loop {
        let f = random_map(rng, d);
        if in_indeterminacy(&f).is_none() {
            return f;
        }
    }
}

/// Maps with a constant reduced map.
pub fn random_constant_map(rng: &mut ChaCha8Rng, d: usize) -> MapPoint<Q> {
    let h = random_hole_poly(rng, d);
    let (p, r) = random_reduced(rng, 0);
    MapPoint::from_parts(&h, &p, &r).unwrap()
}

pub fn random_mobius(rng: &mut ChaCha8Rng) -> Mobius<Q> {
    loop {
        if let Ok(m) = Mobius::new(small(rng), small(rng), small(rng), small(rng)) {
            return m;
        }
    }
}

pub fn random_t_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly<Q> {
    let deg = rng.gen_range(0..=max_deg);
    let shift = rng.gen_range(0..=2usize);
    let coeffs: Vec<Q> = (0..=deg).map(|_| small(rng)).collect();
    Poly::new(coeffs).shift(shift)
}

pub fn random_ratfunc(rng: &mut ChaCha8Rng) -> Qt {
    loop {
        let num = random_t_poly(rng, 3);
        let den = random_t_poly(rng, 2);
        if !den.is_zero() {
            return RatFunc::new(num, den).unwrap();
        }
    }
}
