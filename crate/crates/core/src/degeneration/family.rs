use std::fmt;

use crate::dynamics::iterate_factored;
use crate::error::Error;
use crate::exactalg::{t_limit, Field, HomogForm, RatFunc};
use crate::projmap::{conjugate, decompose, MapPoint, Mobius};

/// A map over `K(t)` together with the conjugator `M_t` applied before
/// taking limits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyPoint<K: Field> {
    pub map: MapPoint<RatFunc<K>>,
    pub conjugator: Mobius<RatFunc<K>>,
}

impl<K: Field> FamilyPoint<K> {
    /// With the default conjugator `[tX+Y:Y]`.
    pub fn new(map: MapPoint<RatFunc<K>>) -> Self {
        FamilyPoint { map, conjugator: blow_up_at_one() }
    }

    pub fn with_conjugator(map: MapPoint<RatFunc<K>>, conjugator: Mobius<RatFunc<K>>) -> Self {
        FamilyPoint { map, conjugator }
    }

    pub fn unconjugated(map: MapPoint<RatFunc<K>>) -> Self {
        FamilyPoint { map, conjugator: Mobius::identity() }
    }

    /// The map at `t = 0`, without conjugation.
    pub fn at_zero(&self) -> Result<MapPoint<K>, Error> {
        limit_map(&self.map)
    }
}

impl<K: Field> fmt::Display for FamilyPoint<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} conjugated by {}", self.map, self.conjugator)
    }
}

/// `[tX+Y:Y]`, zooming in on `[1:1]`.
pub fn blow_up_at_one<K: Field>() -> Mobius<RatFunc<K>> {
    Mobius::new(RatFunc::t(), RatFunc::one(), RatFunc::zero(), RatFunc::one()).expect("det t")
}

pub fn lift_form<K: Field>(h: &HomogForm<K>) -> HomogForm<RatFunc<K>> {
    h.map_coeffs(|c| RatFunc::constant(c.clone()))
}

pub fn lift_map<K: Field>(f: &MapPoint<K>) -> MapPoint<RatFunc<K>> {
    f.map_field(|c| RatFunc::constant(c.clone())).expect("lift of a valid map")
}

/// `X - (1 + s t) Y`
pub fn moving_root<K: Field>(s: i64) -> HomogForm<RatFunc<K>> {
    let a = RatFunc::one() + &(RatFunc::t() * &RatFunc::from_i64(s));
    HomogForm::vanishing_at(&a, &RatFunc::one())
}

fn limit_form<K: Field>(h: &HomogForm<RatFunc<K>>) -> Result<HomogForm<K>, Error> {
    Ok(HomogForm::new(t_limit(h.coeffs())?))
}

fn limit_map<K: Field>(f: &MapPoint<RatFunc<K>>) -> Result<MapPoint<K>, Error> {
    MapPoint::from_coords(f.degree(), t_limit(&f.coords())?)
}

/// `lim_{t->0} M_t^{-1} ∘ F^n ∘ M_t`.
///
/// Lowest `t`-order parts multiply, so each factor of the product formula
/// is sent to the limit separately and only the limit is expanded.
pub fn conjugated_limit<K: Field>(family: &FamilyPoint<K>, n: u32) -> Result<MapPoint<K>, Error> {
    let c = conjugate(&family.map, &family.conjugator);
    let it = iterate_factored(&decompose(&c), n)?;
    let mut hole = HomogForm::one();
    for (h, e) in &it.factors {
        hole = hole.mul(&limit_form(h)?.pow(*e));
    }
    let (p, q) = (&it.reduced.p, &it.reduced.q);
    let split = p.coeffs().len();
    let coords: Vec<RatFunc<K>> = p.coeffs().iter().chain(q.coeffs()).cloned().collect();
    let lim = t_limit(&coords)?;
    let (lp, lq) = lim.split_at(split);
    let out = MapPoint::from_parts(&hole, &HomogForm::new(lp.to_vec()), &HomogForm::new(lq.to_vec()))?;
    debug_assert_eq!(out.degree(), it.degree);
    Ok(out)
}

/// The same limit, from the fully expanded iterate over `K(t)`.
pub fn conjugated_limit_expanded<K: Field>(family: &FamilyPoint<K>, n: u32) -> Result<MapPoint<K>, Error> {
    let c = conjugate(&family.map, &family.conjugator);
    let it = iterate_factored(&decompose(&c), n)?;
    limit_map(&it.expand())
}
