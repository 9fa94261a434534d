//! Split a degenerate map into its hole polynomial and reduced map.
use ratdyn::cli::parse_map;
use ratdyn::projmap::decompose;

fn main() {
    for s in ["(X-Y)^2*Y*[-X:Y]", "X^2*Y*[X:Y]", "(X^2+Y^2)*[X^2:Y^2]"] {
        let f = parse_map(s).unwrap();
        let dm = decompose(&f);
        println!("{s}");
        println!("  H_f = {}   f_hat = {}", dm.hole_poly, dm.reduced);
        for h in &dm.profile {
            println!("  hole {} depth {}", h.descriptor, h.depth);
        }
    }
}
