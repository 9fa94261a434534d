//! Conjugate a stable map with a degree-one reduced map to normal form.
use ratdyn::cli::parse_map;
use ratdyn::degeneration::normal_form;
use ratdyn::projmap::{conjugate, Mobius};
use ratdyn::exactalg::q;

fn main() {
    let f = parse_map("(X-Y)^2*Y*[-X:Y]").unwrap();
    let m = Mobius::new(q(2), q(1), q(1), q(3)).unwrap();
    let g = conjugate(&f, &m);
    println!("g = {g}");
    let nf = normal_form(&g).unwrap();
    println!("{}: {} via {}", nf.tag, nf.map, nf.witness);
    assert_eq!(nf.map, f);

    let t = parse_map("(X-3*Y)^2*(X+Y)*[X+2*Y:Y]").unwrap();
    let nf = normal_form(&t).unwrap();
    println!("{}: {}", nf.tag, nf.map);
}
