//! Normal forms, one-parameter families over `K(t)`, their conjugated
//! limits, conjugacy of limit maps and certificates of indeterminacy for
//! the iterate map on moduli space.

mod certify;
mod conjugacy;
mod family;
mod normal;

pub use certify::{
    build_families, certify_indeterminacy, root_of_unity_order, route_limits, simultaneous_family,
    Certificate, Families, Route, RouteLimits,
};
pub use conjugacy::{conjugacy_test, ConjugacyResult, ConjugacyWitness, DistinctReason};
pub use family::{
    blow_up_at_one, conjugated_limit, conjugated_limit_expanded, lift_form, lift_map, moving_root, FamilyPoint,
};
pub use normal::{normal_form, NormalForm, NormalFormTag};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{q, HomogForm, Q};
    use crate::git::Verdict;
    use crate::projmap::{decompose, MapPoint, ProjPoint};

    fn lin(a: i64, b: i64) -> HomogForm<Q> {
        HomogForm::vanishing_at(&q(a), &q(b))
    }

    fn map(h: &HomogForm<Q>, p: HomogForm<Q>, qq: HomogForm<Q>) -> MapPoint<Q> {
        MapPoint::from_parts(h, &p, &qq).unwrap()
    }

    fn example() -> MapPoint<Q> {
        map(&lin(1, 1).pow(2).mul(&HomogForm::y()), HomogForm::x().neg(), HomogForm::y())
    }

    fn g2_shape(p: HomogForm<Q>) -> MapPoint<Q> {
        let h = HomogForm::x().pow(4).mul(&lin(1, 1).pow(4)).mul(&HomogForm::y().pow(7));
        map(&h, p, HomogForm::y())
    }

    #[test]
    fn example_certificate() {
        let cert = certify_indeterminacy(&example(), 2).unwrap();
        assert_eq!(cert.route, Route::SimultaneousPerturbation { order: 2 });
        // three perturbed holes give a conjugate of the pair-perturbation limit
        let [a, b] = cert.discarded_limits.clone().unwrap();
        let h = lin(-1, 1).pow(4).mul(&lin(2, 1).pow(4)).mul(&HomogForm::y().pow(7));
        assert_eq!(a, map(&h, HomogForm::x(), HomogForm::y()));
        assert_eq!(b, g2_shape(HomogForm::x()));
        assert_eq!(cert.limits[0], g2_shape(HomogForm::x()));
        assert_eq!(cert.limits[1], g2_shape(lin(2, 1)));
        assert_eq!(cert.verdicts, [Verdict::Stable, Verdict::Stable]);
        assert!(cert.conjugacy.is_distinct());
    }

    #[test]
    fn indeterminacy_route() {
        let h = HomogForm::x().mul(&HomogForm::y()).mul(&lin(1, 1)).mul(&lin(2, 1));
        let f = map(&h, HomogForm::constant(q(0)), HomogForm::constant(q(1)));
        for n in [2u32, 3] {
            let cert = certify_indeterminacy(&f, n).unwrap();
            assert_eq!(cert.route, Route::IndeterminacyLocus);
            let e = 4u64.pow(n - 1);
            assert_eq!(cert.limits[0], map(&h.pow(e), HomogForm::constant(q(0)), HomogForm::constant(q(1))));
            let d0 = decompose(&cert.limits[1]).depth_at(&ProjPoint::from_i64(0));
            assert_eq!(d0 as u64, (4u64.pow(n) - 1) / 3);
            assert!(cert.conjugacy.is_distinct());
        }
    }

    #[test]
    fn root_of_unity_route() {
        let h = lin(1, 1).pow(3).mul(&HomogForm::x()).mul(&HomogForm::y());
        let f = map(&h, HomogForm::x().neg(), HomogForm::y());
        let cert = certify_indeterminacy(&f, 2).unwrap();
        assert_eq!(cert.route, Route::RootOfUnity { order: 2 });
        assert_eq!(cert.period_law, Some(true));
        let counts: Vec<usize> = cert.limits.iter().map(|l| decompose(l).hole_count()).collect();
        assert_ne!(counts[0], counts[1]);
    }

    #[test]
    fn unsupported_cases() {
        let odd = map(&HomogForm::x().mul(&HomogForm::y()), HomogForm::y(), HomogForm::x());
        assert!(certify_indeterminacy(&odd, 2).unwrap_err().is_unsupported());
        let deg2 = map(&lin(1, 1), HomogForm::x().neg(), HomogForm::y());
        assert!(certify_indeterminacy(&deg2, 2).unwrap_err().is_unsupported());
        // stable iterates
        let trans = map(&lin(1, 1).pow(2).mul(&HomogForm::y()), lin(-1, 1), HomogForm::y());
        assert!(certify_indeterminacy(&trans, 2).unwrap_err().is_unsupported());
    }
}
