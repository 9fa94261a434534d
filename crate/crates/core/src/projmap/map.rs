use std::fmt;

use super::mobius::Mobius;
use super::point::ProjPoint;
use crate::error::Error;
use crate::exactalg::{Field, HomogForm};

/// A point of `P^{2d+1}`: two degree-`d` forms, not both zero, stored in
/// canonical scalar normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapPoint<K: Field> {
    fa: HomogForm<K>,
    fb: HomogForm<K>,
}

impl<K: Field> MapPoint<K> {
    pub fn new(fa: HomogForm<K>, fb: HomogForm<K>) -> Result<Self, Error> {
        if fa.degree() != fb.degree() {
            return Err(Error::DegreeMismatch(fa.degree(), fb.degree()));
        }
        if fa.degree() == 0 {
            return Err(Error::InvalidMap("degree must be at least 1".into()));
        }
        if fa.is_zero() && fb.is_zero() {
            return Err(Error::InvalidMap("both coordinates vanish".into()));
        }
        let d = fa.degree();
        let mut v: Vec<K> = fa.coeffs().iter().chain(fb.coeffs()).cloned().collect();
        K::normalize_projective(&mut v);
        let fb = HomogForm::new(v.split_off(d + 1));
        Ok(MapPoint { fa: HomogForm::new(v), fb })
    }

    /// `H * [P:Q]`
    pub fn from_parts(h: &HomogForm<K>, p: &HomogForm<K>, q: &HomogForm<K>) -> Result<Self, Error> {
        MapPoint::new(h.mul(p), h.mul(q))
    }

    /// The identity `[X:Y]`.
    pub fn identity() -> Self {
        MapPoint { fa: HomogForm::x(), fb: HomogForm::y() }
    }

    pub fn degree(&self) -> usize {
        self.fa.degree()
    }

    pub fn fa(&self) -> &HomogForm<K> {
        &self.fa
    }

    pub fn fb(&self) -> &HomogForm<K> {
        &self.fb
    }

    /// All `2d + 2` coordinates of the point in `P^{2d+1}`.
    pub fn coords(&self) -> Vec<K> {
        self.fa.coeffs().iter().chain(self.fb.coeffs()).cloned().collect()
    }

    pub fn from_coords(degree: usize, mut coords: Vec<K>) -> Result<Self, Error> {
        if coords.len() != 2 * degree + 2 {
            return Err(Error::InvalidMap(format!(
                "expected {} coordinates, got {}",
                2 * degree + 2,
                coords.len()
            )));
        }
        let fb = coords.split_off(degree + 1);
        MapPoint::new(HomogForm::new(coords), HomogForm::new(fb))
    }

    pub fn map_field<L: Field>(&self, f: impl Fn(&K) -> L) -> Result<MapPoint<L>, Error> {
        MapPoint::new(self.fa.map_coeffs(&f), self.fb.map_coeffs(&f))
    }

    /// Decomposes the map as `H_f * f_hat`.
    pub fn decompose(&self) -> DecomposedMap<K> {
        decompose(self)
    }
}

impl<K: Field> fmt::Display for MapPoint<K> {
    /// Printed in factored form, `H * [P:Q]`; reparses to the same map.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dm = self.decompose();
        let parts = dm.hole_poly.squarefree_decompose().unwrap_or_default();
        for (g, m) in &parts {
            let bare = g.degree() == 1
                && g.coeffs().iter().filter(|c| !c.is_zero()).count() == 1
                && g.coeffs().iter().all(|c| c.is_zero() || c.is_one());
            if bare {
                write!(f, "{g}")?;
            } else {
                write!(f, "({g})")?;
            }
            if *m > 1 {
                write!(f, "^{m}")?;
            }
            write!(f, "*")?;
        }
        let (p, q) = (&dm.reduced.p, &dm.reduced.q);
        write!(f, "[{p} : {q}]")
    }
}

/// A reduced map `[P:Q]` with coprime coordinates of common degree `e`.
/// Degree zero encodes a constant map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedMap<K: Field> {
    pub p: HomogForm<K>,
    pub q: HomogForm<K>,
}

impl<K: Field> ReducedMap<K> {
    /// Strips the common factor of `p` and `q`.
    pub fn new(p: HomogForm<K>, q: HomogForm<K>) -> Result<Self, Error> {
        if p.degree() != q.degree() {
            return Err(Error::DegreeMismatch(p.degree(), q.degree()));
        }
        if p.is_zero() && q.is_zero() {
            return Err(Error::InvalidMap("reduced map with both coordinates zero".into()));
        }
        let g = p.gcd(&q);
        let (p, q) = if g.degree() == 0 {
            (p, q)
        } else {
            (p.div_exact(&g)?, q.div_exact(&g)?)
        };
        let d = p.degree();
        let mut v: Vec<K> = p.coeffs().iter().chain(q.coeffs()).cloned().collect();
        K::normalize_projective(&mut v);
        let q = HomogForm::new(v.split_off(d + 1));
        Ok(ReducedMap { p: HomogForm::new(v), q })
    }

    pub fn constant(c: &ProjPoint<K>) -> Self {
        ReducedMap::new(HomogForm::constant(c.a().clone()), HomogForm::constant(c.b().clone()))
            .expect("a point is nonzero")
    }

    pub fn identity() -> Self {
        ReducedMap { p: HomogForm::x(), q: HomogForm::y() }
    }

    pub fn from_mobius(m: &Mobius<K>) -> Self {
        let (p, q) = m.coordinate_forms();
        ReducedMap::new(p, q).expect("invertible")
    }

    pub fn degree(&self) -> usize {
        self.p.degree()
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    pub fn constant_value(&self) -> Option<ProjPoint<K>> {
        if self.is_constant() {
            Some(ProjPoint::new(self.p.coeff(0).clone(), self.q.coeff(0).clone()).expect("nonzero"))
        } else {
            None
        }
    }

    pub fn as_mobius(&self) -> Option<Mobius<K>> {
        if self.degree() != 1 {
            return None;
        }
        Mobius::new(
            self.p.coeff(0).clone(),
            self.p.coeff(1).clone(),
            self.q.coeff(0).clone(),
            self.q.coeff(1).clone(),
        )
        .ok()
    }

    pub fn apply(&self, z: &ProjPoint<K>) -> ProjPoint<K> {
        ProjPoint::new(self.p.eval(z.a(), z.b()), self.q.eval(z.a(), z.b()))
            .expect("coprime coordinates have no common zero")
    }

    /// `self ∘ other`. Coprime pairs compose to a coprime pair, so no gcd is taken.
    pub fn compose(&self, other: &Self) -> Self {
        let p = self.p.compose(&other.p, &other.q).expect("equal degrees");
        let q = self.q.compose(&other.p, &other.q).expect("equal degrees");
        let d = p.degree();
        let mut v: Vec<K> = p.coeffs().iter().chain(q.coeffs()).cloned().collect();
        K::normalize_projective(&mut v);
        let q = HomogForm::new(v.split_off(d + 1));
        let out = ReducedMap { p: HomogForm::new(v), q };
        debug_assert_eq!(out.degree(), self.degree() * other.degree());
        out
    }

    pub fn iterate(&self, k: u32) -> Self {
        let mut acc = ReducedMap::identity();
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    /// `X Q - Y P`, vanishing exactly at the fixed points.
    pub fn fixed_form(&self) -> HomogForm<K> {
        let e = self.degree();
        let (xq, yp) = if e == 0 {
            (HomogForm::x().scale(self.q.coeff(0)), HomogForm::y().scale(self.p.coeff(0)))
        } else {
            (HomogForm::x().mul(&self.q), HomogForm::y().mul(&self.p))
        };
        xq.sub(&yp).expect("equal degrees")
    }

    pub fn fixes(&self, z: &ProjPoint<K>) -> bool {
        self.apply(z) == *z
    }

    /// Local degree at `z`; zero for a constant map.
    pub fn local_degree(&self, z: &ProjPoint<K>) -> u32 {
        if self.is_constant() {
            return 0;
        }
        let w = self.apply(z);
        let form = self.p.scale(w.b()).sub(&self.q.scale(w.a())).expect("equal degrees");
        form.ord_vanish(z.a(), z.b())
    }

    /// All points of the fiber over `w` that lie in `P^1(K)`.
    pub fn preimages(&self, w: &ProjPoint<K>) -> Vec<ProjPoint<K>> {
        if self.is_constant() {
            return Vec::new();
        }
        let form = self.p.scale(w.b()).sub(&self.q.scale(w.a())).expect("equal degrees");
        let mut pts: Vec<ProjPoint<K>> = form
            .roots()
            .into_iter()
            .map(|(a, b)| ProjPoint::new(a, b).expect("nonzero"))
            .collect();
        pts.sort();
        pts
    }
}

impl<K: Field> fmt::Display for ReducedMap<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {}]", self.p, self.q)
    }
}

/// Where a hole sits: a `K`-rational point, or a square-free factor without
/// `K`-rational roots whose roots all share one depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HoleDescriptor<K: Field> {
    Point(ProjPoint<K>),
    Factor(HomogForm<K>),
}

impl<K: Field> HoleDescriptor<K> {
    /// Number of holes over the algebraic closure.
    pub fn degree(&self) -> usize {
        match self {
            HoleDescriptor::Point(_) => 1,
            HoleDescriptor::Factor(f) => f.degree(),
        }
    }

    pub fn point(&self) -> Option<&ProjPoint<K>> {
        match self {
            HoleDescriptor::Point(p) => Some(p),
            HoleDescriptor::Factor(_) => None,
        }
    }
}

impl<K: Field> fmt::Display for HoleDescriptor<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HoleDescriptor::Point(p) => write!(f, "{p}"),
            HoleDescriptor::Factor(g) => write!(f, "roots of {g}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hole<K: Field> {
    pub descriptor: HoleDescriptor<K>,
    pub depth: u32,
}

/// The unique factorization `f = H_f * f_hat` with the depth profile of `H_f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecomposedMap<K: Field> {
    pub degree: usize,
    pub hole_poly: HomogForm<K>,
    pub reduced: ReducedMap<K>,
    /// Rational points first in canonical order, then residual factors.
    pub profile: Vec<Hole<K>>,
}

impl<K: Field> DecomposedMap<K> {
    /// Depth at `z`, zero when `z` is not a hole.
    pub fn depth_at(&self, z: &ProjPoint<K>) -> u32 {
        self.hole_poly.ord_vanish(z.a(), z.b())
    }

    pub fn rational_holes(&self) -> impl Iterator<Item = (&ProjPoint<K>, u32)> {
        self.profile
            .iter()
            .filter_map(|h| h.descriptor.point().map(|p| (p, h.depth)))
    }

    pub fn has_irrational_holes(&self) -> bool {
        self.profile.iter().any(|h| h.descriptor.point().is_none())
    }

    /// Holes counted over the algebraic closure.
    pub fn hole_count(&self) -> usize {
        self.profile.iter().map(|h| h.descriptor.degree()).sum()
    }

    /// Sorted multiset of depths, each repeated by descriptor degree.
    pub fn depth_multiset(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .profile
            .iter()
            .flat_map(|h| std::iter::repeat_n(h.depth, h.descriptor.degree()))
            .collect();
        v.sort_unstable();
        v
    }

    /// The map `H_f * f_hat` as a point of `P^{2d+1}`.
    pub fn recompose(&self) -> MapPoint<K> {
        MapPoint::from_parts(&self.hole_poly, &self.reduced.p, &self.reduced.q)
            .expect("decomposition of a valid map")
    }

    /// `f in I(d)`: constant reduced map sitting at one of its own holes.
    pub fn in_indeterminacy(&self) -> Option<(ProjPoint<K>, u32)> {
        let c = self.reduced.constant_value()?;
        let depth = self.depth_at(&c);
        (depth > 0).then_some((c, depth))
    }
}

/// Splits a hole polynomial into rational points and residual factors.
pub fn hole_profile<K: Field>(h: &HomogForm<K>) -> Vec<Hole<K>> {
    let mut points = Vec::new();
    let mut factors = Vec::new();
    if h.degree() == 0 {
        return points;
    }
    for (g, m) in h.squarefree_decompose().expect("nonzero hole polynomial") {
        let mut residual = g.clone();
        for (a, b) in g.roots() {
            let p = ProjPoint::new(a, b).expect("nonzero");
            residual = residual.div_exact(&p.linear_form()).expect("root divides");
            points.push(Hole { descriptor: HoleDescriptor::Point(p), depth: m });
        }
        if residual.degree() > 0 {
            factors.push(Hole { descriptor: HoleDescriptor::Factor(residual.normalized()), depth: m });
        }
    }
    points.sort_by(|x, y| match (&x.descriptor, &y.descriptor) {
        (HoleDescriptor::Point(p), HoleDescriptor::Point(q)) => p.cmp(q),
        _ => std::cmp::Ordering::Equal,
    });
    points.extend(factors);
    points
}

pub fn decompose<K: Field>(f: &MapPoint<K>) -> DecomposedMap<K> {
    let h = f.fa().gcd(f.fb());
    let p = f.fa().div_exact(&h).expect("gcd divides");
    let q = f.fb().div_exact(&h).expect("gcd divides");
    let reduced = ReducedMap::new(p, q).expect("nonzero map");
    let profile = hole_profile(&h);
    DecomposedMap { degree: f.degree(), hole_poly: h, reduced, profile }
}

/// `M^{-1} ∘ f ∘ M`
pub fn conjugate<K: Field>(f: &MapPoint<K>, m: &Mobius<K>) -> MapPoint<K> {
    let ga = m.pullback(f.fa());
    let gb = m.pullback(f.fb());
    let [a, b, c, d] = m.entries();
    let ra = ga.scale(d).sub(&gb.scale(b)).expect("equal degrees");
    let rb = gb.scale(a).sub(&ga.scale(c)).expect("equal degrees");
    MapPoint::new(ra, rb).expect("conjugation preserves validity")
}
