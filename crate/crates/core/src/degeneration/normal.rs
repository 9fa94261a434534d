use std::fmt;

use crate::error::Error;
use crate::exactalg::{Field, HomogForm};
use crate::git::{classify_decomposed, Verdict};
use crate::projmap::{conjugate, decompose, DecomposedMap, MapPoint, Mobius, ProjPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalFormTag {
    /// `(X-Y)^{d/2} H [X+Y:Y]`
    TranslationForm,
    /// `(X-Y)^{d/2} H [wX:Y]`
    MultiplierForm,
    /// `X^{(d-1)/2} Y^{(d-1)/2} [aY:X]`
    OddSwapForm,
    /// `(X-Y) [wX:Y]`
    Degree2Form,
}

impl fmt::Display for NormalFormTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NormalFormTag::TranslationForm => "TranslationForm",
            NormalFormTag::MultiplierForm => "MultiplierForm",
            NormalFormTag::OddSwapForm => "OddSwapForm",
            NormalFormTag::Degree2Form => "Degree2Form",
        };
        f.write_str(s)
    }
}

/// `conjugate(f, witness) == map`, and `map` has the tagged shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm<K: Field> {
    pub tag: NormalFormTag,
    /// Hole polynomial with the `(X-Y)^{d/2}` part removed; `X^k Y^k` for the odd form.
    pub residual: HomogForm<K>,
    /// The multiplier `w` or the odd-form coefficient `a`; none for translations.
    pub parameter: Option<K>,
    pub witness: Mobius<K>,
    pub map: MapPoint<K>,
}

pub fn normal_form<K: Field>(f: &MapPoint<K>) -> Result<NormalForm<K>, Error> {
    let dm = decompose(f);
    let cls = classify_decomposed(&dm);
    if cls.verdict != Verdict::Stable {
        return Err(Error::NotStable(format!("{}: {}", cls.verdict, cls.witness)));
    }
    if dm.reduced.degree() != 1 {
        return Err(Error::NoNormalForm(format!(
            "reduced map has degree {}, need 1",
            dm.reduced.degree()
        )));
    }
    if dm.degree % 2 == 0 {
        even_form(f, &dm)
    } else {
        odd_form(f, &dm)
    }
}

fn even_form<K: Field>(f: &MapPoint<K>, dm: &DecomposedMap<K>) -> Result<NormalForm<K>, Error> {
    let half = (dm.degree / 2) as u32;
    let h = dm
        .rational_holes()
        .find(|(_, m)| *m == half)
        .map(|(p, _)| p.clone())
        .ok_or_else(|| {
            let depths = dm.depth_multiset();
            Error::NoNormalForm(format!("no rational hole of depth {half}; depths {depths:?}"))
        })?;
    let fhat = dm.reduced.as_mobius().expect("degree one");
    let fixed = dm.reduced.fixed_form();
    let roots: Vec<ProjPoint<K>> = fixed
        .roots()
        .into_iter()
        .map(|(a, b)| ProjPoint::new(a, b).expect("nonzero"))
        .collect();
    let parabolic = fixed.squarefree_decompose()?.iter().any(|(_, m)| *m == 2);
    let (tag, witness) = if parabolic {
        let p = &roots[0];
        let pre = fhat.inverse().apply(&h);
        let m = Mobius::through(
            [&ProjPoint::from_i64(0), &ProjPoint::infinity(), &ProjPoint::from_i64(1)],
            [&pre, p, &h],
        )?;
        (NormalFormTag::TranslationForm, m)
    } else {
        if roots.len() < 2 {
            return Err(Error::NoNormalForm(format!(
                "fixed points of the reduced map are not rational: {fixed}"
            )));
        }
        let mut roots = roots;
        roots.sort();
        // a fixed hole goes to infinity
        if dm.depth_at(&roots[0]) > 0 && dm.depth_at(&roots[1]) == 0 {
            roots.swap(0, 1);
        }
        let m = Mobius::through(
            [&ProjPoint::from_i64(0), &ProjPoint::infinity(), &ProjPoint::from_i64(1)],
            [&roots[0], &roots[1], &h],
        )?;
        let tag = if dm.degree == 2 { NormalFormTag::Degree2Form } else { NormalFormTag::MultiplierForm };
        (tag, m)
    };
    let map = conjugate(f, &witness);
    let ndm = decompose(&map);
    let one = HomogForm::vanishing_at(&K::one(), &K::one());
    let residual = ndm.hole_poly.div_exact(&one.pow(half as u64))?.normalized();
    let parameter = match tag {
        NormalFormTag::TranslationForm => None,
        _ => ndm.reduced.apply(&ProjPoint::from_i64(1)).affine_coord().cloned(),
    };
    Ok(NormalForm { tag, residual, parameter, witness, map })
}

fn odd_form<K: Field>(f: &MapPoint<K>, dm: &DecomposedMap<K>) -> Result<NormalForm<K>, Error> {
    let k = ((dm.degree - 1) / 2) as u32;
    let holes: Vec<(&ProjPoint<K>, u32)> = dm.rational_holes().collect();
    let swapped = holes.len() == 2
        && !dm.has_irrational_holes()
        && holes.iter().all(|(_, m)| *m == k)
        && dm.reduced.apply(holes[0].0) == *holes[1].0
        && dm.reduced.apply(holes[1].0) == *holes[0].0;
    if !swapped {
        return Err(Error::NoNormalForm(format!(
            "odd degree needs two holes of depth {k} swapped by the reduced map"
        )));
    }
    let (h1, h2) = (holes[0].0, holes[1].0);
    let third = (1..)
        .map(ProjPoint::from_i64)
        .find(|p| p != h1 && p != h2)
        .expect("infinitely many candidates");
    let witness = Mobius::through(
        [&ProjPoint::from_i64(0), &ProjPoint::infinity(), &ProjPoint::from_i64(1)],
        [h1, h2, &third],
    )?;
    let map = conjugate(f, &witness);
    let ndm = decompose(&map);
    // [aY:X] sends [1:1] to [a:1]
    let parameter = ndm.reduced.apply(&ProjPoint::from_i64(1)).affine_coord().cloned();
    Ok(NormalForm {
        tag: NormalFormTag::OddSwapForm,
        residual: ndm.hole_poly.normalized(),
        parameter,
        witness,
        map,
    })
}
