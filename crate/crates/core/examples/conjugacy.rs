use ratdyn::cli::parse_map;
use ratdyn::degeneration::conjugacy_test;
use ratdyn::exactalg::q;
use ratdyn::projmap::{conjugate, Mobius};

fn main() {
    let g = parse_map("X^4*(X-Y)^4*Y^7*[X:Y]").unwrap();
    let f = parse_map("X^4*(X-Y)^4*Y^7*[X-2*Y:Y]").unwrap();
    println!("g vs f: {}", conjugacy_test(&g, &f).unwrap());

    let m = Mobius::new(q(1), q(-1), q(2), q(1)).unwrap();
    let h = conjugate(&g, &m);
    println!("g vs {h}: {}", conjugacy_test(&g, &h).unwrap());
}
