//! Certificates that a conjugacy class is a point of indeterminacy of the
//! second iterate map on the compactified moduli space.
use ratdyn::cli::parse_map;
use ratdyn::degeneration::certify_indeterminacy;

fn main() {
    for s in ["(X-Y)^2*Y*[-X:Y]", "X*Y*(X-Y)*(X-2*Y)*[0:1]", "(X-Y)^3*X*Y*[-X:Y]"] {
        let f = parse_map(s).unwrap();
        match certify_indeterminacy(&f, 2) {
            Ok(c) => {
                println!("{s}: {}", c.route);
                println!("  limits {}  |  {}", c.limits[0], c.limits[1]);
                println!("  {}", c.narrative());
            }
            Err(e) => println!("{s}: {e}"),
        }
    }
}
