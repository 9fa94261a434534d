//! Composition and iteration of possibly degenerate maps, depth formulas,
//! and hole orbit relations.
//!
//! Compositions are taken in `P^{2de+1}`: coordinates are substituted and no
//! common factor is cancelled. The product formula for iterates keeps the
//! hole polynomial of `f^n` factored as `prod (H_f ∘ f_hat^k)^(d^(n-k-1))`,
//! because its expanded degree grows like `d^n`.

use crate::error::Error;
use crate::exactalg::{Field, HomogForm};
use crate::projmap::{decompose, DecomposedMap, MapPoint, ProjPoint, ReducedMap};

/// Witness that `f` lies in `I(d)`: the constant value of `f_hat` and its depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndeterminacyWitness<K: Field> {
    pub hole: ProjPoint<K>,
    pub depth: u32,
}

/// `f in I(d)` iff `f_hat` is a constant sitting at a hole of `f`.
pub fn in_indeterminacy<K: Field>(f: &MapPoint<K>) -> Option<IndeterminacyWitness<K>> {
    decompose(f)
        .in_indeterminacy()
        .map(|(hole, depth)| IndeterminacyWitness { hole, depth })
}

/// `(f, g) in I(d, e)` iff `g_hat` is a constant `c` with `H_f(c) = 0`.
pub fn in_pair_indeterminacy<K: Field>(f: &MapPoint<K>, g: &MapPoint<K>) -> bool {
    pair_indeterminate(&decompose(f), &decompose(g))
}

fn pair_indeterminate<K: Field>(f: &DecomposedMap<K>, g: &DecomposedMap<K>) -> bool {
    match g.reduced.constant_value() {
        Some(c) => f.hole_poly.eval(c.a(), c.b()).is_zero(),
        None => false,
    }
}

fn substitute<K: Field>(f: &MapPoint<K>, g: &MapPoint<K>) -> Result<MapPoint<K>, Error> {
    let a = f.fa().compose(g.fa(), g.fb())?;
    let b = f.fb().compose(g.fa(), g.fb())?;
    MapPoint::new(a, b)
}

/// `f ∘ g` in `P^{2de+1}`, by substitution without cancellation.
pub fn compose_maps<K: Field>(f: &MapPoint<K>, g: &MapPoint<K>) -> Result<MapPoint<K>, Error> {
    if in_pair_indeterminacy(f, g) {
        return Err(Error::PairIndeterminate);
    }
    substitute(f, g)
}

/// `f^n` by repeated substitution; the brute-force reference.
pub fn iterate_direct<K: Field>(f: &MapPoint<K>, n: u32) -> Result<MapPoint<K>, Error> {
    if n == 0 {
        return Err(Error::InvalidMap("iterate count must be at least 1".into()));
    }
    if n == 1 {
        return Ok(f.clone());
    }
    if in_indeterminacy(f).is_some() {
        return Err(Error::IterateUndefined);
    }
    let mut acc = f.clone();
    for _ in 1..n {
        acc = substitute(f, &acc)?;
    }
    Ok(acc)
}

/// `f^n` with its hole polynomial kept as a product of powers.
#[derive(Clone, Debug)]
pub struct FactoredIterate<K: Field> {
    pub degree: usize,
    /// `(H_f ∘ f_hat^k, d^(n-k-1))` for `k = 0..n`; constant factors dropped.
    pub factors: Vec<(HomogForm<K>, u64)>,
    pub reduced: ReducedMap<K>,
}

impl<K: Field> FactoredIterate<K> {
    pub fn hole_degree(&self) -> usize {
        self.factors.iter().map(|(h, e)| h.degree() * *e as usize).sum()
    }

    pub fn hole_poly(&self) -> HomogForm<K> {
        self.factors
            .iter()
            .fold(HomogForm::one(), |acc, (h, e)| acc.mul(&h.pow(*e)))
    }

    pub fn expand(&self) -> MapPoint<K> {
        let h = self.hole_poly();
        MapPoint::from_parts(&h, &self.reduced.p, &self.reduced.q).expect("iterate is a valid map")
    }

    /// Order of vanishing at `z` without expanding the product.
    pub fn depth_at(&self, z: &ProjPoint<K>) -> u64 {
        self.factors
            .iter()
            .map(|(h, e)| h.ord_vanish(z.a(), z.b()) as u64 * e)
            .sum()
    }
}

fn checked_pow(d: usize, k: u32) -> Result<u64, Error> {
    (d as u64)
        .checked_pow(k)
        .ok_or_else(|| Error::Unsupported(format!("degree {d}^{k} overflows")))
}

pub fn iterate_factored<K: Field>(
    dm: &DecomposedMap<K>,
    n: u32,
) -> Result<FactoredIterate<K>, Error> {
    if n == 0 {
        return Err(Error::InvalidMap("iterate count must be at least 1".into()));
    }
    if n > 1 && dm.in_indeterminacy().is_some() {
        return Err(Error::IterateUndefined);
    }
    let d = dm.degree;
    let mut factors = Vec::with_capacity(n as usize);
    let mut fk = ReducedMap::identity();
    for k in 0..n {
        let e = checked_pow(d, n - k - 1)?;
        let hk = dm.hole_poly.compose(&fk.p, &fk.q)?;
        if hk.degree() > 0 {
            factors.push((hk, e));
        } else {
            debug_assert!(!hk.is_zero(), "orbit of a constant map avoids the holes");
        }
        fk = dm.reduced.compose(&fk);
        debug_assert_eq!(fk.degree(), dm.reduced.degree().pow(k + 1));
    }
    let degree = checked_pow(d, n)? as usize;
    Ok(FactoredIterate { degree, factors, reduced: fk })
}

/// `f^n` from the product formula over the reduced map.
pub fn iterate_formula<K: Field>(f: &MapPoint<K>, n: u32) -> Result<MapPoint<K>, Error> {
    let dm = decompose(f);
    if dm.in_indeterminacy().is_some() {
        return Err(Error::IterateUndefined);
    }
    Ok(iterate_factored(&dm, n)?.expand())
}

/// Depth of `f^n` at `z` from depths and local degrees of `f` along the
/// orbit of `z`.
pub fn depth_of_iterate<K: Field>(f: &MapPoint<K>, n: u32, z: &ProjPoint<K>) -> Result<u64, Error> {
    let dm = decompose(f);
    if dm.in_indeterminacy().is_some() {
        return Err(Error::IterateUndefined);
    }
    depth_of_iterate_decomposed(&dm, n, z)
}

pub fn depth_of_iterate_decomposed<K: Field>(
    dm: &DecomposedMap<K>,
    n: u32,
    z: &ProjPoint<K>,
) -> Result<u64, Error> {
    if n == 0 {
        return Err(Error::InvalidMap("iterate count must be at least 1".into()));
    }
    let d = dm.degree as u64;
    let mut total = checked_pow(dm.degree, n - 1)? * dm.depth_at(z) as u64;
    let mut point = z.clone();
    let mut mult: u64 = 1;
    for k in 1..n {
        mult *= dm.reduced.local_degree(&point) as u64;
        if mult == 0 {
            break;
        }
        point = dm.reduced.apply(&point);
        let depth = dm.depth_at(&point) as u64;
        total += d.pow(n - 1 - k) * mult * depth;
    }
    Ok(total)
}

/// `d_z(f ∘ g) = d * d_z(g) + m_z(g_hat) * d_{g_hat(z)}(f)`, for nonconstant `g_hat`.
pub fn depth_of_composition<K: Field>(
    f: &MapPoint<K>,
    g: &MapPoint<K>,
    z: &ProjPoint<K>,
) -> Result<u64, Error> {
    let (df, dg) = (decompose(f), decompose(g));
    if dg.reduced.is_constant() {
        return Err(Error::ConstantReducedMap);
    }
    let w = dg.reduced.apply(z);
    Ok(df.degree as u64 * dg.depth_at(z) as u64
        + dg.reduced.local_degree(z) as u64 * df.depth_at(&w) as u64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRelation<K: Field> {
    pub source: ProjPoint<K>,
    pub target: ProjPoint<K>,
    pub time: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRelations<K: Field> {
    pub relations: Vec<OrbitRelation<K>>,
    /// `f_hat` is constant; relations are not reported.
    pub constant_reduced_map: bool,
    /// Number of hole descriptors without a rational location.
    pub irrational_descriptors: usize,
}

pub fn default_horizon(degree: usize) -> u32 {
    (degree * degree + 1) as u32
}

/// Relations `f_hat^n(h1) = h2` between rational holes, `1 <= n <= horizon`.
///
/// Each ordered pair `(h1, h2)` is reported once, at its first time.
/// Output is sorted by source, then time.
pub fn hole_orbit_relations<K: Field>(f: &MapPoint<K>, horizon: u32) -> OrbitRelations<K> {
    let dm = decompose(f);
    let irrational_descriptors = dm.profile.iter().filter(|h| h.descriptor.point().is_none()).count();
    if dm.reduced.is_constant() {
        return OrbitRelations { relations: Vec::new(), constant_reduced_map: true, irrational_descriptors };
    }
    let holes: Vec<ProjPoint<K>> = dm.rational_holes().map(|(p, _)| p.clone()).collect();
    let mut relations = Vec::new();
    for h1 in &holes {
        let mut seen: Vec<&ProjPoint<K>> = Vec::new();
        let mut w = h1.clone();
        for n in 1..=horizon {
            w = dm.reduced.apply(&w);
            if let Some(h2) = holes.iter().find(|h| **h == w) {
                if !seen.contains(&h2) {
                    seen.push(h2);
                    relations.push(OrbitRelation { source: h1.clone(), target: h2.clone(), time: n });
                }
            }
        }
    }
    OrbitRelations { relations, constant_reduced_map: false, irrational_descriptors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{q, Q};

    fn lin(a: i64, b: i64) -> HomogForm<Q> {
        HomogForm::vanishing_at(&q(a), &q(b))
    }

    fn pt(a: i64) -> ProjPoint<Q> {
        ProjPoint::from_i64(a)
    }

    fn example() -> MapPoint<Q> {
        let h = lin(1, 1).pow(2).mul(&HomogForm::y());
        MapPoint::from_parts(&h, &HomogForm::x().neg(), &HomogForm::y()).unwrap()
    }

    fn example_squared() -> MapPoint<Q> {
        // (X-Y)^8 (X+Y)^2 Y^5 [X:Y]
        let h = lin(1, 1).pow(8).mul(&lin(-1, 1).pow(2)).mul(&HomogForm::y().pow(5));
        MapPoint::from_parts(&h, &HomogForm::x(), &HomogForm::y()).unwrap()
    }

    fn four_holes_at_zero() -> MapPoint<Q> {
        // XY(X-Y)(X-2Y) [0:1]
        let h = HomogForm::x().mul(&HomogForm::y()).mul(&lin(1, 1)).mul(&lin(2, 1));
        MapPoint::from_parts(&h, &HomogForm::constant(q(0)), &HomogForm::constant(q(1))).unwrap()
    }

    fn odd_swap(d: u64, a: i64) -> MapPoint<Q> {
        let k = (d - 1) / 2;
        let h = HomogForm::x().pow(k).mul(&HomogForm::y().pow(k));
        MapPoint::from_parts(&h, &HomogForm::y().scale(&q(a)), &HomogForm::x()).unwrap()
    }

    #[test]
    fn indeterminacy_membership() {
        let w = in_indeterminacy(&four_holes_at_zero()).unwrap();
        assert_eq!(w, IndeterminacyWitness { hole: pt(0), depth: 1 });
        assert!(in_indeterminacy(&example()).is_none());
        // H(1,0) != 0 with constant value [1:0]
        let h = lin(1, 1).mul(&lin(2, 1));
        let f = MapPoint::from_parts(&h, &HomogForm::constant(q(1)), &HomogForm::constant(q(0))).unwrap();
        assert!(in_indeterminacy(&f).is_none());
    }

    #[test]
    fn pair_indeterminacy() {
        let f = MapPoint::from_parts(&HomogForm::x(), &HomogForm::x(), &HomogForm::y()).unwrap();
        let g_zero = MapPoint::from_parts(&lin(1, 1), &HomogForm::constant(q(0)), &HomogForm::constant(q(1))).unwrap();
        assert!(in_pair_indeterminacy(&f, &g_zero));
        assert_eq!(compose_maps(&f, &g_zero), Err(Error::PairIndeterminate));
        assert!(!in_pair_indeterminacy(&f, &example()));
        let g_one = MapPoint::from_parts(&lin(0, 1), &HomogForm::constant(q(1)), &HomogForm::constant(q(1))).unwrap();
        assert!(!in_pair_indeterminacy(&f, &g_one));
    }

    #[test]
    fn compose_with_identity() {
        let f = example();
        assert_eq!(compose_maps(&f, &MapPoint::identity()).unwrap(), f);
    }

    #[test]
    fn compose_with_constant_inner_map() {
        // f = XY[X:Y] after a map with constant value 2, which is not a hole of f
        let f = MapPoint::from_parts(&HomogForm::x().mul(&HomogForm::y()), &HomogForm::x(), &HomogForm::y()).unwrap();
        let g = MapPoint::from_parts(&lin(1, 1), &HomogForm::constant(q(2)), &HomogForm::constant(q(1))).unwrap();
        let fg = compose_maps(&f, &g).unwrap();
        assert_eq!(fg.degree(), 3);
        let dm = fg.decompose();
        assert_eq!(dm.reduced.constant_value(), Some(pt(2)));
        // oracle: direct substitution gives (X-Y)^3 * f(2,1)
        assert_eq!(dm.hole_poly, lin(1, 1).pow(3).normalized());
    }

    #[test]
    fn iterate_example_both_ways() {
        let f = example();
        assert_eq!(iterate_direct(&f, 1).unwrap(), f);
        assert_eq!(iterate_direct(&f, 2).unwrap(), example_squared());
        assert_eq!(iterate_formula(&f, 2).unwrap(), example_squared());
        assert_eq!(compose_maps(&f, &f).unwrap(), example_squared());
    }

    #[test]
    fn iterate_constant_reduced_map() {
        // c = 3 is not a hole: f^n = H^(d^(n-1)) [3:1]
        let h = HomogForm::x().mul(&HomogForm::y()).mul(&lin(1, 1)).mul(&lin(2, 1));
        let f = MapPoint::from_parts(&h, &HomogForm::constant(q(3)), &HomogForm::constant(q(1))).unwrap();
        let expected = MapPoint::from_parts(&h.pow(4), &HomogForm::constant(q(3)), &HomogForm::constant(q(1))).unwrap();
        assert_eq!(iterate_direct(&f, 2).unwrap(), expected);
        assert_eq!(iterate_formula(&f, 2).unwrap(), expected);
    }

    #[test]
    fn iterate_rejects_indeterminacy() {
        let f = four_holes_at_zero();
        assert_eq!(iterate_direct(&f, 2), Err(Error::IterateUndefined));
        assert_eq!(iterate_formula(&f, 2), Err(Error::IterateUndefined));
        assert_eq!(iterate_direct(&f, 1).unwrap(), f);
    }

    #[test]
    fn odd_swap_closed_forms() {
        let f1 = odd_swap(3, 1);
        let sq = MapPoint::from_parts(&HomogForm::x().pow(4).mul(&HomogForm::y().pow(4)), &HomogForm::x(), &HomogForm::y()).unwrap();
        assert_eq!(iterate_formula(&f1, 2).unwrap(), sq);
        let cube = MapPoint::from_parts(&HomogForm::x().pow(13).mul(&HomogForm::y().pow(13)), &HomogForm::y(), &HomogForm::x()).unwrap();
        assert_eq!(iterate_formula(&f1, 3).unwrap(), cube);
    }

    #[test]
    fn depth_formulas() {
        let f = example();
        assert_eq!(depth_of_iterate(&f, 1, &pt(1)).unwrap(), 2);
        assert_eq!(depth_of_iterate(&f, 2, &pt(1)).unwrap(), 8);
        assert_eq!(depth_of_iterate(&f, 2, &ProjPoint::infinity()).unwrap(), 5);
        assert_eq!(depth_of_iterate(&f, 2, &pt(-1)).unwrap(), 2);
        assert_eq!(depth_of_iterate(&odd_swap(3, 1), 2, &pt(0)).unwrap(), 4);
        assert_eq!(depth_of_composition(&f, &f, &pt(1)).unwrap(), 8);
        assert_eq!(depth_of_composition(&f, &f, &ProjPoint::infinity()).unwrap(), 5);
        // nondegenerate Möbius g: depth transported from f
        let g = MapPoint::from_parts(&HomogForm::one(), &lin(-1, 1), &HomogForm::y()).unwrap();
        assert_eq!(depth_of_composition(&f, &g, &pt(0)).unwrap(), 2);
    }

    #[test]
    fn orbit_relations_of_example() {
        let rel = hole_orbit_relations(&example(), 2);
        let triples: Vec<_> = rel.relations.iter().map(|r| (r.source.clone(), r.target.clone(), r.time)).collect();
        assert_eq!(triples, vec![(pt(1), pt(1), 2), (ProjPoint::infinity(), ProjPoint::infinity(), 1)]);
    }

    #[test]
    fn translation_has_no_relations() {
        let h = lin(1, 1);
        let f = MapPoint::from_parts(&h, &lin(-1, 1), &HomogForm::y()).unwrap();
        for horizon in [1, 5, 20] {
            assert!(hole_orbit_relations(&f, horizon).relations.is_empty());
        }
        let c = hole_orbit_relations(&four_holes_at_zero(), 3);
        assert!(c.constant_reduced_map && c.relations.is_empty());
    }
}
