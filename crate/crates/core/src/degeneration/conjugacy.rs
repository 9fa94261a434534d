use std::fmt;

use num_integer::Integer;

use crate::error::Error;
use crate::exactalg::{Field, Poly};
use crate::git::{classify_decomposed, Verdict};
use crate::projmap::{conjugate, decompose, DecomposedMap, MapPoint, Mobius, ProjPoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjugacyWitness<K: Field> {
    /// `conjugate(g, M) == h`.
    Mobius(Mobius<K>),
    /// `M = frame_g ∘ [λX:Y] ∘ frame_h^{-1}` with `λ^exponent = value`, a
    /// solution that needs an extension of the field.
    Scaling { frame_g: Mobius<K>, frame_h: Mobius<K>, exponent: u64, value: K },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistinctReason {
    Degree(usize, usize),
    ReducedDegree(usize, usize),
    HoleCount(usize, usize),
    DepthMultiset(Vec<u32>, Vec<u32>),
    MarkedPoints(usize, usize),
    ExhaustedSearch { candidates: usize },
}

impl fmt::Display for DistinctReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistinctReason::Degree(a, b) => write!(f, "degrees differ: {a} vs {b}"),
            DistinctReason::ReducedDegree(a, b) => write!(f, "reduced degrees differ: {a} vs {b}"),
            DistinctReason::HoleCount(a, b) => write!(f, "hole counts differ: {a} vs {b}"),
            DistinctReason::DepthMultiset(a, b) => write!(f, "depth multisets differ: {a:?} vs {b:?}"),
            DistinctReason::MarkedPoints(a, b) => {
                write!(f, "marked point configurations differ ({a} vs {b} points)")
            }
            DistinctReason::ExhaustedSearch { candidates } => {
                write!(f, "no conjugacy among {candidates} matchings of marked points")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjugacyResult<K: Field> {
    Equivalent(ConjugacyWitness<K>),
    Distinct(DistinctReason),
}

impl<K: Field> ConjugacyResult<K> {
    pub fn is_distinct(&self) -> bool {
        matches!(self, ConjugacyResult::Distinct(_))
    }
}

impl<K: Field> fmt::Display for ConjugacyResult<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConjugacyResult::Equivalent(ConjugacyWitness::Mobius(m)) => write!(f, "Equivalent via {m}"),
            ConjugacyResult::Equivalent(ConjugacyWitness::Scaling { frame_g, frame_h, exponent, value }) => write!(
                f,
                "Equivalent via {frame_g} ∘ [λX:Y] ∘ ({frame_h})^-1 with λ^{exponent} = {value}"
            ),
            ConjugacyResult::Distinct(r) => write!(f, "Distinct: {r}"),
        }
    }
}

/// Conjugation-invariant data attached to a marked point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Label {
    depth: u32,
    image_depth: u32,
    fixed_order: u32,
    inbound: Vec<u32>,
    constant_value: bool,
}

fn fixed_points_rational<K: Field>(dm: &DecomposedMap<K>) -> bool {
    let ff = dm.reduced.fixed_form();
    if ff.is_zero() {
        return false;
    }
    let distinct: usize = ff
        .squarefree_decompose()
        .map(|v| v.iter().map(|(g, _)| g.degree()).sum())
        .unwrap_or(0);
    ff.roots().len() == distinct
}

fn marked_points<K: Field>(dm: &DecomposedMap<K>, with_fixed: bool) -> Vec<(ProjPoint<K>, Label)> {
    let holes: Vec<(ProjPoint<K>, u32)> = dm.rational_holes().map(|(p, m)| (p.clone(), m)).collect();
    let mut pts: Vec<ProjPoint<K>> = holes.iter().map(|(p, _)| p.clone()).collect();
    pts.extend(holes.iter().map(|(p, _)| dm.reduced.apply(p)));
    if let Some(c) = dm.reduced.constant_value() {
        pts.push(c);
    }
    let ff = dm.reduced.fixed_form();
    if with_fixed {
        pts.extend(ff.roots().into_iter().map(|(a, b)| ProjPoint::new(a, b).expect("nonzero")));
    }
    pts.sort();
    pts.dedup();
    let constant = dm.reduced.constant_value();
    pts.into_iter()
        .map(|z| {
            let mut inbound: Vec<u32> = holes
                .iter()
                .filter(|(p, _)| dm.reduced.apply(p) == z)
                .map(|(_, m)| *m)
                .collect();
            inbound.sort_unstable();
            let label = Label {
                depth: dm.depth_at(&z),
                image_depth: dm.depth_at(&dm.reduced.apply(&z)),
                fixed_order: if ff.is_zero() { u32::MAX } else { ff.ord_vanish(z.a(), z.b()) },
                inbound,
                constant_value: constant.as_ref() == Some(&z),
            };
            (z, label)
        })
        .collect()
}

/// Decides whether stable maps `g` and `h` are conjugate.
pub fn conjugacy_test<K: Field>(g: &MapPoint<K>, h: &MapPoint<K>) -> Result<ConjugacyResult<K>, Error> {
    let (dg, dh) = (decompose(g), decompose(h));
    for (name, dm) in [("first", &dg), ("second", &dh)] {
        let c = classify_decomposed(dm);
        if c.verdict != Verdict::Stable {
            return Err(Error::NotStable(format!("{name} map is {}: {}", c.verdict, c.witness)));
        }
    }
    let distinct = |r| Ok(ConjugacyResult::Distinct(r));
    if dg.degree != dh.degree {
        return distinct(DistinctReason::Degree(dg.degree, dh.degree));
    }
    if dg.reduced.degree() != dh.reduced.degree() {
        return distinct(DistinctReason::ReducedDegree(dg.reduced.degree(), dh.reduced.degree()));
    }
    if dg.hole_count() != dh.hole_count() {
        return distinct(DistinctReason::HoleCount(dg.hole_count(), dh.hole_count()));
    }
    if dg.depth_multiset() != dh.depth_multiset() {
        return distinct(DistinctReason::DepthMultiset(dg.depth_multiset(), dh.depth_multiset()));
    }
    if dg.has_irrational_holes() || dh.has_irrational_holes() {
        return Err(Error::Inconclusive("irrational holes".into()));
    }
    let with_fixed = fixed_points_rational(&dg) && fixed_points_rational(&dh);
    let mg = marked_points(&dg, with_fixed);
    let mh = marked_points(&dh, with_fixed);
    let sorted_labels = |m: &[(ProjPoint<K>, Label)]| {
        let mut v: Vec<Label> = m.iter().map(|(_, l)| l.clone()).collect();
        v.sort();
        v
    };
    if sorted_labels(&mg) != sorted_labels(&mh) {
        return distinct(DistinctReason::MarkedPoints(mg.len(), mh.len()));
    }
    match mh.len() {
        0 | 1 => Err(Error::Inconclusive("fewer than two marked points".into())),
        2 => two_point_search(g, h, &mg, &mh),
        _ => frame_search(g, h, &mg, &mh),
    }
}

fn frame_search<K: Field>(
    g: &MapPoint<K>,
    h: &MapPoint<K>,
    mg: &[(ProjPoint<K>, Label)],
    mh: &[(ProjPoint<K>, Label)],
) -> Result<ConjugacyResult<K>, Error> {
    let anchors = [&mh[0], &mh[1], &mh[2]];
    fn matches<'a, K: Field>(mg: &'a [(ProjPoint<K>, Label)], l: &'a Label) -> impl Iterator<Item = &'a ProjPoint<K>> {
        mg.iter().filter(move |(_, m)| m == l).map(|(p, _)| p)
    }
    let mut candidates = 0;
    for a in matches(mg, &anchors[0].1) {
        for b in matches(mg, &anchors[1].1).filter(|b| *b != a) {
            for c in matches(mg, &anchors[2].1).filter(|c| *c != a && *c != b) {
                candidates += 1;
                let m = Mobius::through([&anchors[0].0, &anchors[1].0, &anchors[2].0], [a, b, c])?;
                if conjugate(g, &m) == *h {
                    return Ok(ConjugacyResult::Equivalent(ConjugacyWitness::Mobius(m)));
                }
            }
        }
    }
    Ok(ConjugacyResult::Distinct(DistinctReason::ExhaustedSearch { candidates }))
}

/// Sends `[0:1]` to `a` and `[1:0]` to `b`.
fn frame<K: Field>(a: &ProjPoint<K>, b: &ProjPoint<K>) -> Result<Mobius<K>, Error> {
    let third = (1..).map(ProjPoint::from_i64).find(|p| p != a && p != b).expect("unbounded");
    Mobius::through([&ProjPoint::from_i64(0), &ProjPoint::infinity(), &ProjPoint::from_i64(1)], [a, b, &third])
}

fn two_point_search<K: Field>(
    g: &MapPoint<K>,
    h: &MapPoint<K>,
    mg: &[(ProjPoint<K>, Label)],
    mh: &[(ProjPoint<K>, Label)],
) -> Result<ConjugacyResult<K>, Error> {
    let frame_h = frame(&mh[0].0, &mh[1].0)?;
    let hh = conjugate(h, &frame_h);
    let mut candidates = 0;
    for (i, j) in [(0, 1), (1, 0)] {
        if mg[i].1 != mh[0].1 || mg[j].1 != mh[1].1 {
            continue;
        }
        candidates += 1;
        let frame_g = frame(&mg[i].0, &mg[j].0)?;
        let gg = conjugate(g, &frame_g);
        let Some((exponent, value)) = solve_scaling(&gg, &hh) else { continue };
        let lambda = if exponent == 0 {
            Some(K::one())
        } else {
            let mut c = vec![K::zero(); exponent as usize + 1];
            c[0] = -value.clone();
            c[exponent as usize] = K::one();
            K::roots(&Poly::new(c)).into_iter().next()
        };
        let witness = match lambda {
            Some(l) => {
                let s = Mobius::scaling(l);
                let m = frame_g.compose(&s).compose(&frame_h.inverse()).normalized();
                debug_assert!(conjugate(g, &m) == *h);
                ConjugacyWitness::Mobius(m)
            }
            None => ConjugacyWitness::Scaling { frame_g, frame_h, exponent, value },
        };
        return Ok(ConjugacyResult::Equivalent(witness));
    }
    Ok(ConjugacyResult::Distinct(DistinctReason::ExhaustedSearch { candidates }))
}

fn signed_pow<K: Field>(x: &K, e: i64) -> K {
    let p = x.pow(e.unsigned_abs());
    if e < 0 {
        p.inv().expect("nonzero")
    } else {
        p
    }
}

/// Finds `λ^G = V` equivalent to `conjugate(g, [λX:Y]) == h`, or `None` when
/// no `λ` exists even over the algebraic closure.
fn solve_scaling<K: Field>(g: &MapPoint<K>, h: &MapPoint<K>) -> Option<(u64, K)> {
    // [λX:Y] turns the coefficient of X^{d-i} Y^i into λ^{d-i} times it in
    // the first coordinate and λ^{d-i+1} times it in the second
    let d = g.degree() as i64;
    let exps = |f: &MapPoint<K>| -> Vec<(i64, K)> {
        let a = f.fa().coeffs().iter().enumerate().map(|(i, c)| (d - i as i64, c.clone()));
        let b = f.fb().coeffs().iter().enumerate().map(|(i, c)| (d - i as i64 + 1, c.clone()));
        a.chain(b).collect()
    };
    let (eg, eh) = (exps(g), exps(h));
    if eg.iter().zip(&eh).any(|((_, x), (_, y))| x.is_zero() != y.is_zero()) {
        return None;
    }
    let j0 = eg.iter().position(|(_, c)| !c.is_zero())?;
    let (e0, g0, h0) = (eg[j0].0, eg[j0].1.clone(), eh[j0].1.clone());
    let (mut big_g, mut v) = (0i64, K::one());
    for ((e, gj), (_, hj)) in eg.iter().zip(&eh) {
        if gj.is_zero() {
            continue;
        }
        let mut k = e - e0;
        let mut rho = g0.clone() * hj / &(gj.clone() * &h0);
        if k < 0 {
            k = -k;
            rho = rho.inv().expect("nonzero");
        }
        if k == 0 {
            if !rho.is_one() {
                return None;
            }
            continue;
        }
        if big_g == 0 {
            big_g = k;
            v = rho;
            continue;
        }
        let ext = big_g.extended_gcd(&k);
        let w = signed_pow(&v, ext.x) * &signed_pow(&rho, ext.y);
        if signed_pow(&w, big_g / ext.gcd) != v || signed_pow(&w, k / ext.gcd) != rho {
            return None;
        }
        big_g = ext.gcd;
        v = w;
    }
    Some((big_g as u64, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{q, HomogForm, Q};

    fn lin(a: i64, b: i64) -> HomogForm<Q> {
        HomogForm::vanishing_at(&q(a), &q(b))
    }

    fn g2() -> MapPoint<Q> {
        let h = HomogForm::x().pow(4).mul(&lin(1, 1).pow(4)).mul(&HomogForm::y().pow(7));
        MapPoint::from_parts(&h, &HomogForm::x(), &HomogForm::y()).unwrap()
    }

    fn f2() -> MapPoint<Q> {
        let h = HomogForm::x().pow(4).mul(&lin(1, 1).pow(4)).mul(&HomogForm::y().pow(7));
        MapPoint::from_parts(&h, &lin(2, 1), &HomogForm::y()).unwrap()
    }

    #[test]
    fn conjugate_is_equivalent() {
        let m = Mobius::new(q(1), q(2), q(3), q(-1)).unwrap();
        let g = g2();
        let h = conjugate(&g, &m);
        match conjugacy_test(&g, &h).unwrap() {
            ConjugacyResult::Equivalent(ConjugacyWitness::Mobius(w)) => assert_eq!(conjugate(&g, &w), h),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn example_limits_are_distinct() {
        assert!(conjugacy_test(&g2(), &f2()).unwrap().is_distinct());
    }

    #[test]
    fn multiset_mismatch() {
        let h = HomogForm::x().mul(&HomogForm::y()).mul(&lin(1, 1)).mul(&lin(2, 1));
        let g = MapPoint::from_parts(&h.pow(4), &HomogForm::constant(q(0)), &HomogForm::constant(q(1))).unwrap();
        let hh = HomogForm::x().pow(5).mul(&HomogForm::y().pow(3)).mul(&lin(1, 1).pow(4)).mul(&lin(2, 1).pow(4));
        let hm = MapPoint::from_parts(&hh, &HomogForm::constant(q(0)), &HomogForm::constant(q(1))).unwrap();
        assert!(matches!(
            conjugacy_test(&g, &hm).unwrap(),
            ConjugacyResult::Distinct(DistinctReason::DepthMultiset(_, _))
        ));
    }

    #[test]
    fn two_marked_points_scaling() {
        // XY[2Y:X] swaps its only holes 0 and inf; its fixed points are irrational
        let f = MapPoint::from_parts(&HomogForm::x().mul(&HomogForm::y()), &HomogForm::y().scale(&q(2)), &HomogForm::x()).unwrap();
        let g = conjugate(&f, &Mobius::scaling(q(3)));
        assert_ne!(f, g);
        match conjugacy_test(&f, &g).unwrap() {
            ConjugacyResult::Equivalent(ConjugacyWitness::Mobius(w)) => assert_eq!(conjugate(&f, &w), g),
            other => panic!("{other}"),
        }
        // XY[Y:X] needs a square root of 2
        let e = MapPoint::from_parts(&HomogForm::x().mul(&HomogForm::y()), &HomogForm::y(), &HomogForm::x()).unwrap();
        match conjugacy_test(&f, &e).unwrap() {
            ConjugacyResult::Equivalent(ConjugacyWitness::Scaling { exponent, value, .. }) => {
                assert_eq!((exponent, value), (2, q(2)));
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn refuses_unstable() {
        let sq = crate::dynamics::iterate_formula(
            &MapPoint::from_parts(&lin(1, 1).pow(2).mul(&HomogForm::y()), &HomogForm::x().neg(), &HomogForm::y()).unwrap(),
            2,
        )
        .unwrap();
        assert!(matches!(conjugacy_test(&sq, &sq), Err(Error::NotStable(_))));
    }
}
