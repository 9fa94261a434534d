use std::fmt;

use super::conjugacy::{conjugacy_test, ConjugacyResult};
use super::family::{conjugated_limit, lift_form, moving_root, FamilyPoint};
use super::normal::{normal_form, NormalFormTag};
use crate::dynamics::{compose_maps, iterate_formula};
use crate::error::Error;
use crate::exactalg::{Field, HomogForm, RatFunc};
use crate::git::{classify, classify_decomposed, iterate_stability, Strategy, Verdict};
use crate::projmap::{conjugate, decompose, DecomposedMap, MapPoint, Mobius, ProjPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// `f` lies in `I(d)`: families `H[t:1]` and `(H/Y)[tX:Y]`.
    IndeterminacyLocus,
    /// Parabolic reduced map, holes perturbed near `[1:1]`.
    Translation,
    /// Multiplier that is not a root of unity of order at most `n`.
    Multiplier,
    /// Multiplier of order `q <= n`, with three perturbed holes.
    RootOfUnity { order: u32 },
    /// Holes and the reduced map perturbed together; heuristic.
    SimultaneousPerturbation { order: u32 },
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Route::IndeterminacyLocus => f.write_str("indeterminacy-locus"),
            Route::Translation => f.write_str("translation"),
            Route::Multiplier => f.write_str("multiplier"),
            Route::RootOfUnity { order } => write!(f, "root-of-unity (order {order})"),
            Route::SimultaneousPerturbation { order } => {
                write!(f, "simultaneous-perturbation (order {order}, heuristic)")
            }
        }
    }
}

/// Two families converging to a normalized conjugate of `f`.
#[derive(Clone, Debug)]
pub struct Families<K: Field> {
    pub route: Route,
    /// `normalized = conjugate(f, normalization)`.
    pub normalization: Mobius<K>,
    pub normalized: MapPoint<K>,
    pub first: FamilyPoint<K>,
    pub second: FamilyPoint<K>,
}

/// Smallest `q` in `2..=n` with `w^q = 1`.
pub fn root_of_unity_order<K: Field>(w: &K, n: u32) -> Option<u32> {
    let mut p = w.clone();
    for q in 2..=n {
        p = p * w;
        if p.is_one() {
            return Some(q);
        }
    }
    None
}

fn unsupported<T>(msg: &str) -> Result<T, Error> {
    Err(Error::Unsupported(msg.into()))
}

pub fn build_families<K: Field>(f: &MapPoint<K>, n: u32) -> Result<Families<K>, Error> {
    if n < 2 {
        return unsupported("n must be at least 2");
    }
    let dm = decompose(f);
    let cls = classify_decomposed(&dm);
    if cls.verdict != Verdict::Stable {
        return Err(Error::NotStable(format!("{}: {}", cls.verdict, cls.witness)));
    }
    if dm.in_indeterminacy().is_some() {
        return indeterminacy_families(f, &dm);
    }
    match dm.reduced.degree() {
        0 => return unsupported("reduced map is constant, so every iterate is stable and the iterate map is regular"),
        1 => {}
        _ => return unsupported("reduced map of degree at least 2 is not covered"),
    }
    if iterate_stability(f, n, Strategy::Auto)?.verdict == Verdict::Stable {
        return unsupported("f^n is stable, so the iterate map is regular at [f]");
    }
    if dm.degree % 2 == 1 {
        return unsupported("odd degree: f^n is semistable and the iterate map is well-defined at [f]");
    }
    if dm.degree == 2 {
        return unsupported("degree 2 is not covered");
    }
    let nf = normal_form(f)?;
    let d = dm.degree as u64;
    let reduced = decompose(&nf.map).reduced;
    let (p, q) = (lift_form(&reduced.p), lift_form(&reduced.q));
    let h = lift_form(&nf.residual);
    let one = lift_form(&HomogForm::vanishing_at(&K::one(), &K::one()));
    let family = |holes: HomogForm<RatFunc<K>>| -> Result<FamilyPoint<K>, Error> {
        Ok(FamilyPoint::new(MapPoint::from_parts(&holes.mul(&h), &p, &q)?))
    };
    let second = family(moving_root(1).pow(d / 2 - 1).mul(&one))?;
    let order = match nf.tag {
        NormalFormTag::MultiplierForm => root_of_unity_order(nf.parameter.as_ref().expect("multiplier"), n),
        _ => None,
    };
    let (route, first) = match (nf.tag, order) {
        (NormalFormTag::TranslationForm, _) => (Route::Translation, family(moving_root(1).pow(d / 2))?),
        (NormalFormTag::MultiplierForm, Some(order)) => {
            let holes = moving_root(1).pow(d / 2 - 2).mul(&moving_root(-1)).mul(&moving_root(2));
            (Route::RootOfUnity { order }, family(holes)?)
        }
        (NormalFormTag::MultiplierForm, None) => (Route::Multiplier, family(moving_root(1).pow(d / 2))?),
        _ => unreachable!("even degree at least 4"),
    };
    Ok(Families { route, normalization: nf.witness, normalized: nf.map, first, second })
}

/// Sends the constant value to `0`, the deepest other hole to `1` and a
/// third hole (infinity when possible) to infinity.
fn indeterminacy_families<K: Field>(f: &MapPoint<K>, dm: &DecomposedMap<K>) -> Result<Families<K>, Error> {
    let c = dm.reduced.constant_value().expect("constant");
    let others: Vec<(&ProjPoint<K>, u32)> = dm.rational_holes().filter(|(p, _)| **p != c).collect();
    if others.len() < 2 {
        return unsupported("needs three rational holes");
    }
    let deepest = others.iter().map(|(_, m)| *m).max().expect("nonempty");
    let third = others.iter().find(|(_, m)| *m == deepest).expect("max exists").0;
    let second = others
        .iter()
        .map(|(p, _)| *p)
        .filter(|p| *p != third)
        .find(|p| p.is_infinity())
        .or_else(|| others.iter().map(|(p, _)| *p).find(|p| *p != third))
        .expect("two other holes");
    let m = Mobius::through([&ProjPoint::from_i64(0), &ProjPoint::infinity(), &ProjPoint::from_i64(1)], [&c, second, third])?;
    let normalized = conjugate(f, &m);
    let h = lift_form(&decompose(&normalized).hole_poly);
    let t = RatFunc::<K>::t();
    let g = MapPoint::from_parts(&h, &HomogForm::constant(t.clone()), &HomogForm::constant(RatFunc::one()))?;
    let h_over_y = h.div_exact(&HomogForm::y())?;
    let hh = MapPoint::from_parts(&h_over_y, &HomogForm::x().scale(&t), &HomogForm::y())?;
    Ok(Families {
        route: Route::IndeterminacyLocus,
        normalization: m,
        normalized,
        first: FamilyPoint::unconjugated(g),
        second: FamilyPoint::unconjugated(hh),
    })
}

/// `(X-(1+t)Y)^{d/2-1} (X-Y) H' [wXY : tX^2+Y^2]` where the residual is `Y H'`.
pub fn simultaneous_family<K: Field>(fam: &Families<K>) -> Result<FamilyPoint<K>, Error> {
    let dm = decompose(&fam.normalized);
    let d = dm.degree as u64;
    let w = dm.reduced.apply(&ProjPoint::from_i64(1)).affine_coord().cloned().ok_or_else(|| {
        Error::NoCertificate("reduced map is not a multiplier".into())
    })?;
    let one = HomogForm::vanishing_at(&K::one(), &K::one());
    let residual = dm.hole_poly.div_exact(&one.pow(d / 2))?;
    let rest = residual
        .div_exact(&HomogForm::y())
        .map_err(|_| Error::NoCertificate("simultaneous perturbation needs a hole at infinity".into()))?;
    let holes = moving_root::<K>(1).pow(d / 2 - 1).mul(&lift_form(&one)).mul(&lift_form(&rest));
    let t = RatFunc::<K>::t();
    let xy = HomogForm::<RatFunc<K>>::x().mul(&HomogForm::y());
    let p = xy.scale(&RatFunc::constant(w));
    let q = HomogForm::x().pow(2).scale(&t).add(&HomogForm::y().pow(2))?;
    Ok(FamilyPoint::new(MapPoint::from_parts(&holes, &p, &q)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RouteLimits<K: Field> {
    pub first: MapPoint<K>,
    pub second: MapPoint<K>,
    /// On the root-of-unity route: whether the limits built from the
    /// `q`-step limits agree with the direct `n`-step limits.
    pub period_law: Option<bool>,
}

fn periodic_limit<K: Field>(fam: &FamilyPoint<K>, n: u32, q: u32) -> Result<MapPoint<K>, Error> {
    let (k, r) = (n / q, n % q);
    let lq = iterate_formula(&conjugated_limit(fam, q)?, k)?;
    if r == 0 {
        return Ok(lq);
    }
    let lr = conjugated_limit(fam, r)?;
    compose_maps(&lr, &lq)
}

pub fn route_limits<K: Field>(fam: &Families<K>, n: u32) -> Result<RouteLimits<K>, Error> {
    match fam.route {
        Route::RootOfUnity { order } => {
            let first = periodic_limit(&fam.first, n, order)?;
            let second = periodic_limit(&fam.second, n, order)?;
            let direct = (conjugated_limit(&fam.first, n)?, conjugated_limit(&fam.second, n)?);
            let period_law = Some(direct == (first.clone(), second.clone()));
            Ok(RouteLimits { first, second, period_law })
        }
        _ => Ok(RouteLimits {
            first: conjugated_limit(&fam.first, n)?,
            second: conjugated_limit(&fam.second, n)?,
            period_law: None,
        }),
    }
}

/// Evidence that `[f]` is a point of indeterminacy of the `n`-th iterate map.
#[derive(Clone, Debug)]
pub struct Certificate<K: Field> {
    pub map: MapPoint<K>,
    pub n: u32,
    pub route: Route,
    pub normalization: Mobius<K>,
    pub normalized: MapPoint<K>,
    pub families: [FamilyPoint<K>; 2],
    /// Each family specializes to `normalized` at `t = 0`.
    pub converges: [bool; 2],
    pub limits: [MapPoint<K>; 2],
    pub verdicts: [Verdict; 2],
    pub conjugacy: ConjugacyResult<K>,
    pub period_law: Option<bool>,
    /// Equal limits from hole-only perturbation, before the heuristic fallback.
    pub discarded_limits: Option<[MapPoint<K>; 2]>,
}

impl<K: Field> Certificate<K> {
    pub fn narrative(&self) -> String {
        let mut s = match self.route {
            Route::IndeterminacyLocus => {
                "f lies in I(d); families H[t:1] and (H/Y)[tX:Y] have stable iterate limits with different depths at [0:1]".to_string()
            }
            Route::Translation | Route::Multiplier => {
                "holes perturbed near [1:1] and blown up by [tX+Y:Y]; the limits differ".to_string()
            }
            Route::RootOfUnity { order } => format!(
                "multiplier of order {order}; three perturbed holes give limits with different hole counts"
            ),
            Route::SimultaneousPerturbation { .. } => {
                "hole-only perturbations give equal limits; perturbing the reduced map as well separates them (heuristic)".to_string()
            }
        };
        s.push_str(&format!("; {}", self.conjugacy));
        s
    }
}

pub fn certify_indeterminacy<K: Field>(f: &MapPoint<K>, n: u32) -> Result<Certificate<K>, Error> {
    let fam = build_families(f, n)?;
    let limits = route_limits(&fam, n)?;
    let converges = [
        fam.first.at_zero()? == fam.normalized,
        fam.second.at_zero()? == fam.normalized,
    ];
    if converges != [true, true] {
        return Err(Error::NoCertificate("a family does not converge to f".into()));
    }
    let test = |a: &MapPoint<K>, b: &MapPoint<K>| -> Result<ConjugacyResult<K>, Error> {
        conjugacy_test(a, b).map_err(|e| match e {
            Error::NotStable(m) => Error::NoCertificate(format!("limit is not stable: {m}")),
            other => other,
        })
    };
    let conj = test(&limits.first, &limits.second)?;
    let mut cert = Certificate {
        map: f.clone(),
        n,
        route: fam.route,
        normalization: fam.normalization.clone(),
        normalized: fam.normalized.clone(),
        families: [fam.first.clone(), fam.second.clone()],
        converges,
        verdicts: [classify(&limits.first).verdict, classify(&limits.second).verdict],
        limits: [limits.first.clone(), limits.second.clone()],
        conjugacy: conj,
        period_law: limits.period_law,
        discarded_limits: None,
    };
    if cert.conjugacy.is_distinct() {
        return Ok(cert);
    }
    // at d = 4 perturbing holes alone cannot separate the limits
    let order = match fam.route {
        Route::RootOfUnity { order } if decompose(f).degree == 4 => order,
        _ => return Err(Error::NoCertificate(format!("limits are conjugate: {}", cert.conjugacy))),
    };
    let ft = simultaneous_family(&fam)?;
    let lf = conjugated_limit(&ft, n)?;
    let conj = test(&limits.second, &lf)?;
    if !conj.is_distinct() {
        return Err(Error::NoCertificate("simultaneous perturbation also gives conjugate limits".into()));
    }
    cert.discarded_limits = Some(cert.limits.clone());
    cert.route = Route::SimultaneousPerturbation { order };
    cert.families = [fam.second.clone(), ft];
    cert.verdicts = [classify(&limits.second).verdict, classify(&lf).verdict];
    cert.limits = [limits.second.clone(), lf];
    cert.conjugacy = conj;
    cert.period_law = None;
    Ok(cert)
}
