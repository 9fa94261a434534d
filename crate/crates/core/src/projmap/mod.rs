//! Points, Möbius transformations and the hole decomposition of maps.

mod map;
mod mobius;
mod point;

pub use map::{
    conjugate, decompose, hole_profile, DecomposedMap, Hole, HoleDescriptor, MapPoint, ReducedMap,
};
pub use mobius::Mobius;
pub use point::ProjPoint;

use crate::error::Error;
use crate::exactalg::Field;

/// The unique Möbius transformation sending `p_i` to `q_i`.
pub fn mobius_through<K: Field>(
    p: [&ProjPoint<K>; 3],
    q: [&ProjPoint<K>; 3],
) -> Result<Mobius<K>, Error> {
    Mobius::through(p, q)
}

/// Local degree of a reduced map at `z`; zero when the map is constant.
pub fn local_degree<K: Field>(reduced: &ReducedMap<K>, z: &ProjPoint<K>) -> u32 {
    reduced.local_degree(z)
}
