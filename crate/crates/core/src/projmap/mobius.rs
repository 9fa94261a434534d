use std::fmt;

use super::point::ProjPoint;
use crate::error::Error;
use crate::exactalg::{Field, HomogForm};

/// `[X:Y] -> [aX + bY : cX + dY]`, an invertible 2x2 matrix up to scalar.
#[derive(Clone, Debug)]
pub struct Mobius<K: Field> {
    m: [K; 4],
}

impl<K: Field> Mobius<K> {
    pub fn new(a: K, b: K, c: K, d: K) -> Result<Self, Error> {
        let det = a.clone() * &d - b.clone() * &c;
        if det.is_zero() {
            return Err(Error::SingularMobius);
        }
        Ok(Mobius { m: [a, b, c, d] })
    }

    pub fn identity() -> Self {
        Mobius { m: [K::one(), K::zero(), K::zero(), K::one()] }
    }

    /// `[Y:X]`, exchanging zero and infinity.
    pub fn swap() -> Self {
        Mobius { m: [K::zero(), K::one(), K::one(), K::zero()] }
    }

    /// `z -> z + s`
    pub fn translation(s: K) -> Self {
        Mobius { m: [K::one(), s, K::zero(), K::one()] }
    }

    /// `z -> s z`; panics if `s = 0`.
    pub fn scaling(s: K) -> Self {
        assert!(!s.is_zero(), "zero scaling");
        Mobius { m: [s, K::zero(), K::zero(), K::one()] }
    }

    pub fn entries(&self) -> &[K; 4] {
        &self.m
    }

    pub fn det(&self) -> K {
        self.m[0].clone() * &self.m[3] - self.m[1].clone() * &self.m[2]
    }

    pub fn apply(&self, p: &ProjPoint<K>) -> ProjPoint<K> {
        let [a, b, c, d] = &self.m;
        let x = a.clone() * p.a() + &(b.clone() * p.b());
        let y = c.clone() * p.a() + &(d.clone() * p.b());
        ProjPoint::new(x, y).expect("invertible map sends points to points")
    }

    /// The adjugate, which represents the inverse projectively.
    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = &self.m;
        Mobius { m: [d.clone(), -b.clone(), -c.clone(), a.clone()] }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Self {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &other.m;
        Mobius {
            m: [
                a.clone() * e + &(b.clone() * g),
                a.clone() * f + &(b.clone() * h),
                c.clone() * e + &(d.clone() * g),
                c.clone() * f + &(d.clone() * h),
            ],
        }
    }

    /// Canonical representative: first nonzero entry normalized.
    pub fn normalized(&self) -> Self {
        let mut m = self.m.clone();
        K::normalize_projective(&mut m);
        Mobius { m }
    }

    /// The pair of linear forms `(aX + bY, cX + dY)`.
    pub fn coordinate_forms(&self) -> (HomogForm<K>, HomogForm<K>) {
        let [a, b, c, d] = &self.m;
        (
            HomogForm::new(vec![a.clone(), b.clone()]),
            HomogForm::new(vec![c.clone(), d.clone()]),
        )
    }

    /// `H ∘ M`, vanishing at `M^{-1}` of the zeros of `H`.
    pub fn pullback(&self, h: &HomogForm<K>) -> HomogForm<K> {
        let (p, q) = self.coordinate_forms();
        h.compose(&p, &q).expect("linear forms have equal degree")
    }

    /// The unique map sending `p_i` to `q_i`.
    pub fn through(p: [&ProjPoint<K>; 3], q: [&ProjPoint<K>; 3]) -> Result<Self, Error> {
        let np = Self::standard_frame(p)?;
        let nq = Self::standard_frame(q)?;
        Ok(nq.compose(&np.inverse()).normalized())
    }

    /// Sends `[0:1], [1:0], [1:1]` to `p1, p2, p3`.
    fn standard_frame(p: [&ProjPoint<K>; 3]) -> Result<Self, Error> {
        let [p1, p2, p3] = p;
        if p1 == p2 || p1 == p3 || p2 == p3 {
            return Err(Error::CoincidentPoints);
        }
        // solve l*v1 + m*v2 = v3
        let det = p1.a().clone() * p2.b() - p2.a().clone() * p1.b();
        let l = (p3.a().clone() * p2.b() - p2.a().clone() * p3.b()) / &det;
        let m = (p1.a().clone() * p3.b() - p3.a().clone() * p1.b()) / &det;
        // column one is the image of [1:0], column two of [0:1]
        Mobius::new(
            m.clone() * p2.a(),
            l.clone() * p1.a(),
            m * p2.b(),
            l * p1.b(),
        )
    }

    pub fn map_field<L: Field>(&self, f: impl Fn(&K) -> L) -> Mobius<L> {
        let [a, b, c, d] = &self.m;
        Mobius::new(f(a), f(b), f(c), f(d)).expect("field map preserves invertibility")
    }
}

impl<K: Field> PartialEq for Mobius<K> {
    fn eq(&self, other: &Self) -> bool {
        self.normalized().m == other.normalized().m
    }
}

impl<K: Field> Eq for Mobius<K> {}

impl<K: Field> fmt::Display for Mobius<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.coordinate_forms();
        write!(f, "[{p}:{q}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{q, Q};

    fn pt(a: i64) -> ProjPoint<Q> {
        ProjPoint::from_i64(a)
    }

    #[test]
    fn through_identity_and_swap() {
        let (zero, one, inf) = (pt(0), pt(1), ProjPoint::infinity());
        let m = Mobius::through([&zero, &one, &inf], [&zero, &one, &inf]).unwrap();
        assert_eq!(m, Mobius::identity());
        let s = Mobius::through([&zero, &one, &inf], [&inf, &one, &zero]).unwrap();
        assert_eq!(s, Mobius::swap());
    }

    #[test]
    fn through_rejects_coincident() {
        let z = pt(0);
        assert_eq!(
            Mobius::through([&z, &z, &pt(1)], [&pt(0), &pt(1), &pt(2)]),
            Err(Error::CoincidentPoints)
        );
    }

    #[test]
    fn inverse_undoes() {
        let m = Mobius::new(q(2), q(1), q(1), q(1)).unwrap();
        let p = pt(5);
        assert_eq!(m.inverse().apply(&m.apply(&p)), p);
        assert_eq!(m.compose(&m.inverse()), Mobius::identity());
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(Mobius::new(q(1), q(2), q(2), q(4)).err(), Some(Error::SingularMobius));
    }
}
