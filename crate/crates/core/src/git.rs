//! GIT stability of degenerate maps from hole depths.
//!
//! For even `d`, `f` is stable iff every hole has depth at most `d/2` and no
//! hole of depth exactly `d/2` is fixed by `f_hat`. For odd `d` the stable
//! threshold is `(d-1)/2` and the semistable one `(d+1)/2`, with the same
//! fixed-point exclusion at the threshold.

use std::fmt;

use serde::Serialize;

use crate::dynamics::{depth_of_iterate_decomposed, iterate_factored};
use crate::error::Error;
use crate::exactalg::{Field, HomogForm};
use crate::projmap::{decompose, hole_profile, DecomposedMap, HoleDescriptor, MapPoint, ProjPoint, ReducedMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Stable,
    SemistableNotStable,
    Unstable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Stable => "Stable",
            Verdict::SemistableNotStable => "SemistableNotStable",
            Verdict::Unstable => "Unstable",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness<K: Field> {
    /// No hole reaches a threshold where it could fail.
    DepthsWithinBounds,
    /// The hole deciding the verdict.
    Hole { descriptor: HoleDescriptor<K>, depth: u64, fixed: bool },
}

impl<K: Field> fmt::Display for Witness<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::DepthsWithinBounds => f.write_str("all depths within bounds"),
            Witness::Hole { descriptor, depth, fixed } => {
                let fx = if *fixed { "fixed" } else { "not fixed" };
                write!(f, "hole {descriptor} of depth {depth}, {fx} by the reduced map")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityClass<K: Field> {
    pub verdict: Verdict,
    pub witness: Witness<K>,
}

/// A hole with depth and whether `f_hat` fixes it (some root, for factors).
struct HoleData<K: Field> {
    descriptor: HoleDescriptor<K>,
    depth: u64,
    fixed: bool,
}

fn factor_fixed<K: Field>(factor: &HomogForm<K>, reduced: &ReducedMap<K>) -> bool {
    let fixed = reduced.fixed_form();
    fixed.is_zero() || factor.gcd(&fixed).degree() > 0
}

fn descriptor_fixed<K: Field>(desc: &HoleDescriptor<K>, reduced: &ReducedMap<K>) -> bool {
    match desc {
        HoleDescriptor::Point(p) => reduced.fixes(p),
        HoleDescriptor::Factor(g) => factor_fixed(g, reduced),
    }
}

/// Does `h` pass the condition with bound `bound`?
fn within(h: &HoleData<impl Field>, bound: u64) -> bool {
    h.depth < bound || (h.depth == bound && !h.fixed)
}

fn worst<K: Field>(holes: &[HoleData<K>], bound: u64) -> Option<&HoleData<K>> {
    holes
        .iter()
        .filter(|h| !within(h, bound))
        .fold(None, |best: Option<&HoleData<K>>, h| match best {
            Some(b) if b.depth >= h.depth => Some(b),
            _ => Some(h),
        })
}

fn witness_of<K: Field>(h: &HoleData<K>) -> Witness<K> {
    Witness::Hole { descriptor: h.descriptor.clone(), depth: h.depth, fixed: h.fixed }
}

fn classify_holes<K: Field>(degree: u64, holes: &[HoleData<K>]) -> StabilityClass<K> {
    let (stable_bound, semistable_bound) = if degree % 2 == 0 {
        (degree / 2, degree / 2)
    } else {
        ((degree - 1) / 2, (degree + 1) / 2)
    };
    if let Some(h) = worst(holes, semistable_bound) {
        return StabilityClass { verdict: Verdict::Unstable, witness: witness_of(h) };
    }
    if let Some(h) = worst(holes, stable_bound) {
        return StabilityClass { verdict: Verdict::SemistableNotStable, witness: witness_of(h) };
    }
    StabilityClass { verdict: Verdict::Stable, witness: Witness::DepthsWithinBounds }
}

pub fn classify_decomposed<K: Field>(dm: &DecomposedMap<K>) -> StabilityClass<K> {
    let holes: Vec<HoleData<K>> = dm
        .profile
        .iter()
        .map(|h| HoleData {
            fixed: descriptor_fixed(&h.descriptor, &dm.reduced),
            descriptor: h.descriptor.clone(),
            depth: h.depth as u64,
        })
        .collect();
    classify_holes(dm.degree as u64, &holes)
}

pub fn classify<K: Field>(f: &MapPoint<K>) -> StabilityClass<K> {
    classify_decomposed(&decompose(f))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Fast path when it applies, otherwise symbolic.
    #[default]
    Auto,
    /// Orbit depths; needs `deg f_hat <= 1` and rational holes.
    Fast,
    /// Hole profile of the factored iterate.
    Symbolic,
    /// Run both and insist they agree.
    Both,
}

pub fn fast_path_applies<K: Field>(dm: &DecomposedMap<K>) -> bool {
    dm.reduced.degree() <= 1 && !dm.has_irrational_holes()
}

/// Stability of `f^n`.
pub fn iterate_stability<K: Field>(
    f: &MapPoint<K>,
    n: u32,
    strategy: Strategy,
) -> Result<StabilityClass<K>, Error> {
    let dm = decompose(f);
    if n > 1 && dm.in_indeterminacy().is_some() {
        return Err(Error::IterateUndefined);
    }
    match strategy {
        Strategy::Fast => fast_stability(&dm, n),
        Strategy::Symbolic => symbolic_stability(&dm, n),
        Strategy::Auto if fast_path_applies(&dm) => fast_stability(&dm, n),
        Strategy::Auto => symbolic_stability(&dm, n),
        Strategy::Both => {
            let sym = symbolic_stability(&dm, n)?;
            if fast_path_applies(&dm) {
                let fast = fast_stability(&dm, n)?;
                if fast.verdict != sym.verdict {
                    return Err(Error::StrategyMismatch(format!(
                        "fast path says {}, symbolic path says {}",
                        fast.verdict, sym.verdict
                    )));
                }
            }
            Ok(sym)
        }
    }
}

/// Holes of `f^n` are the backward orbits `f_hat^{-k}(h)`, `k < n`; depths
/// come from the orbit formula.
fn fast_stability<K: Field>(dm: &DecomposedMap<K>, n: u32) -> Result<StabilityClass<K>, Error> {
    if !fast_path_applies(dm) {
        return Err(Error::Unsupported("fast path needs deg f_hat <= 1 and rational holes".into()));
    }
    let holes: Vec<ProjPoint<K>> = dm.rational_holes().map(|(p, _)| p.clone()).collect();
    let mut candidates = holes.clone();
    if let Some(m) = dm.reduced.as_mobius() {
        let inv = m.inverse();
        let mut layer = holes;
        for _ in 1..n {
            layer = layer.iter().map(|p| inv.apply(p)).collect();
            candidates.extend(layer.iter().cloned());
        }
    }
    candidates.sort();
    candidates.dedup();
    let fhat_n = dm.reduced.iterate(n);
    let mut data = Vec::with_capacity(candidates.len());
    for z in candidates {
        let depth = depth_of_iterate_decomposed(dm, n, &z)?;
        if depth > 0 {
            data.push(HoleData { fixed: fhat_n.fixes(&z), descriptor: HoleDescriptor::Point(z), depth });
        }
    }
    let degree = (dm.degree as u64).pow(n);
    Ok(classify_holes(degree, &data))
}

/// Refines `(form, multiplicity)` pairs into pairwise coprime square-free
/// forms with summed multiplicities.
pub fn coprime_base<K: Field>(factors: &[(HomogForm<K>, u64)]) -> Vec<(HomogForm<K>, u64)> {
    let mut base: Vec<(HomogForm<K>, u64)> = Vec::new();
    for (form, e) in factors {
        if form.degree() == 0 {
            continue;
        }
        for (sq, m) in form.squarefree_decompose().expect("nonzero factor") {
            let mut a = sq;
            let weight = *e * m as u64;
            let mut next = Vec::with_capacity(base.len() + 2);
            for (b, mb) in base.drain(..) {
                let g = if a.degree() > 0 { a.gcd(&b) } else { HomogForm::one() };
                if g.degree() == 0 {
                    next.push((b, mb));
                    continue;
                }
                let rest = b.div_exact(&g).expect("gcd divides");
                if rest.degree() > 0 {
                    next.push((rest, mb));
                }
                a = a.div_exact(&g).expect("gcd divides");
                next.push((g, mb + weight));
            }
            if a.degree() > 0 {
                next.push((a, weight));
            }
            base = next;
        }
    }
    base
}

fn symbolic_stability<K: Field>(dm: &DecomposedMap<K>, n: u32) -> Result<StabilityClass<K>, Error> {
    let it = iterate_factored(dm, n)?;
    let mut data = Vec::new();
    for (form, depth) in coprime_base(&it.factors) {
        for hole in hole_profile(&form) {
            debug_assert_eq!(hole.depth, 1);
            data.push(HoleData {
                fixed: descriptor_fixed(&hole.descriptor, &it.reduced),
                descriptor: hole.descriptor,
                depth,
            });
        }
    }
    Ok(classify_holes(it.degree as u64, &data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::iterate_formula;
    use crate::exactalg::{q, Q};

    fn lin(a: i64, b: i64) -> HomogForm<Q> {
        HomogForm::vanishing_at(&q(a), &q(b))
    }

    fn map(h: &HomogForm<Q>, p: HomogForm<Q>, qq: HomogForm<Q>) -> MapPoint<Q> {
        MapPoint::from_parts(h, &p, &qq).unwrap()
    }

    fn example() -> MapPoint<Q> {
        map(&lin(1, 1).pow(2).mul(&HomogForm::y()), HomogForm::x().neg(), HomogForm::y())
    }

    fn odd_swap(d: u64, a: i64) -> MapPoint<Q> {
        let k = (d - 1) / 2;
        map(&HomogForm::x().pow(k).mul(&HomogForm::y().pow(k)), HomogForm::y().scale(&q(a)), HomogForm::x())
    }

    const ALL: [Strategy; 4] = [Strategy::Auto, Strategy::Fast, Strategy::Symbolic, Strategy::Both];

    #[test]
    fn example_and_its_square() {
        assert_eq!(classify(&example()).verdict, Verdict::Stable);
        let sq = iterate_formula(&example(), 2).unwrap();
        let c = classify(&sq);
        assert_eq!(c.verdict, Verdict::Unstable);
        assert_eq!(
            c.witness,
            Witness::Hole { descriptor: HoleDescriptor::Point(ProjPoint::from_i64(1)), depth: 8, fixed: true }
        );
        for s in ALL {
            assert_eq!(iterate_stability(&example(), 2, s).unwrap().verdict, Verdict::Unstable);
        }
    }

    #[test]
    fn odd_configuration() {
        assert_eq!(classify(&odd_swap(3, 1)).verdict, Verdict::Stable);
        let sq = map(&HomogForm::x().pow(4).mul(&HomogForm::y().pow(4)), HomogForm::x(), HomogForm::y());
        assert_eq!(classify(&sq).verdict, Verdict::SemistableNotStable);
        for s in ALL {
            for (n, v) in [(1, Verdict::Stable), (2, Verdict::SemistableNotStable), (3, Verdict::Stable)] {
                assert_eq!(iterate_stability(&odd_swap(3, 2), n, s).unwrap().verdict, v);
            }
        }
    }

    #[test]
    fn irrational_factor_at_threshold() {
        // (X^2+Y^2)^2 [Y:X]: swaps the roots +-i, fixes neither
        let h = HomogForm::new(vec![q(1), q(0), q(1)]).pow(2);
        let f = map(&h, HomogForm::y(), HomogForm::x());
        assert_eq!(classify(&f).verdict, Verdict::Stable);
        // the identity fixes both roots at the threshold (d-1)/2
        let g = map(&h, HomogForm::x(), HomogForm::y());
        let c = classify(&g);
        assert_eq!(c.verdict, Verdict::SemistableNotStable);
        assert!(matches!(c.witness, Witness::Hole { fixed: true, depth: 2, .. }));
    }

    #[test]
    fn constant_reduced_map() {
        let h = HomogForm::x().mul(&HomogForm::y()).mul(&lin(1, 1)).mul(&lin(2, 1));
        let f = map(&h, HomogForm::constant(q(3)), HomogForm::constant(q(1)));
        assert_eq!(classify(&f).verdict, Verdict::Stable);
        for s in ALL {
            assert_eq!(iterate_stability(&f, 3, s).unwrap().verdict, Verdict::Stable);
        }
        // constant at a hole of depth d/2 counts as fixed
        let g = map(&lin(0, 1).pow(2).mul(&HomogForm::y().pow(2)), HomogForm::constant(q(0)), HomogForm::constant(q(1)));
        assert_eq!(classify(&g).verdict, Verdict::Unstable);
        assert_eq!(iterate_stability(&g, 2, Strategy::Auto), Err(Error::IterateUndefined));
    }

    #[test]
    fn even_degree_never_semistable_only() {
        let f = map(&lin(1, 1).pow(2), HomogForm::x().mul(&HomogForm::x()), HomogForm::y().mul(&HomogForm::y()));
        assert_eq!(classify(&f).verdict, Verdict::Unstable);
    }

    #[test]
    fn coprime_base_merges() {
        let a = lin(1, 1).mul(&HomogForm::x());
        let b = lin(1, 1).pow(2).mul(&HomogForm::y());
        let mut base = coprime_base(&[(a, 3), (b, 1)]);
        base.sort_by_key(|(_, m)| *m);
        let ms: Vec<u64> = base.iter().map(|(_, m)| *m).collect();
        assert_eq!(ms, vec![1, 3, 5]);
    }
}
