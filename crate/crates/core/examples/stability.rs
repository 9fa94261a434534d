//! GIT stability from depth data, for a map and its iterates.
use ratdyn::cli::parse_map;
use ratdyn::git::{classify, iterate_stability, Strategy};

fn main() {
    let f = parse_map("(X-Y)^2*Y*[-X:Y]").unwrap();
    let c = classify(&f);
    println!("f:   {} ({})", c.verdict, c.witness);
    let c2 = iterate_stability(&f, 2, Strategy::Both).unwrap();
    println!("f^2: {} ({})", c2.verdict, c2.witness);

    // odd degree, two swapped holes: stability alternates with n
    let g = parse_map("X^2*Y^2*[2*Y:X]").unwrap();
    for n in 1..=4 {
        println!("g^{n}: {}", iterate_stability(&g, n, Strategy::Auto).unwrap().verdict);
    }
}
