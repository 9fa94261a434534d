//! Exact t -> 0 limits of iterates of a one-parameter family.
use ratdyn::cli::parse_family;
use ratdyn::degeneration::{conjugated_limit, conjugated_limit_expanded};
use ratdyn::git::classify;

fn main() {
    let fam = parse_family("(X-(1+t)*Y)*(X-Y)*Y*[-X:Y]").unwrap();
    println!("f_t = {}", fam.map);
    println!("f_0 = {}", fam.at_zero().unwrap());
    for n in 1..=3 {
        let l = conjugated_limit(&fam, n).unwrap();
        assert_eq!(l, conjugated_limit_expanded(&fam, n).unwrap());
        println!("n={n}: {l}  {}", classify(&l).verdict);
    }
}
