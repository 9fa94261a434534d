//! The same computations over Q(i), a cyclotomic field and Q(t).
use ratdyn::cli::{parse_map_in, FieldSpec};
use ratdyn::exactalg::{QExt, Qt};
use ratdyn::git::classify;
use ratdyn::projmap::{decompose, MapPoint};

fn main() {
    let ctx = FieldSpec::Qi.context();
    let f: MapPoint<QExt> = parse_map_in("(X-i*Y)^2*(X+i*Y)*[-X:Y]", &ctx).unwrap();
    println!("{f}: {}", classify(&f).verdict);

    let ctx = "qw:w^2+w+1".parse::<FieldSpec>().unwrap().context();
    let g: MapPoint<QExt> = parse_map_in("(X-Y)^2*Y*[w*X:Y]", &ctx).unwrap();
    for h in &decompose(&g).profile {
        println!("hole {} depth {}", h.descriptor, h.depth);
    }

    let ctx = FieldSpec::Qt.context();
    let u: MapPoint<Qt> = parse_map_in("(X-t*Y)*Y*[X:t*Y]", &ctx).unwrap();
    println!("{u}: {}", classify(&u).verdict);
}
