use ratdyn::cli::parse_map;
use ratdyn::dynamics::{depth_of_iterate, iterate_direct, iterate_formula};
use ratdyn::projmap::{decompose, ProjPoint};

fn main() {
    let f = parse_map("(X-Y)^2*Y*[-X:Y]").unwrap();
    for n in 1..=3 {
        let a = iterate_direct(&f, n).unwrap();
        let b = iterate_formula(&f, n).unwrap();
        assert_eq!(a, b);
        println!("f^{n} = {b}");
    }

    // depths along the orbit, without expanding
    let one = ProjPoint::from_i64(1);
    for n in 1..=6 {
        let d = depth_of_iterate(&f, n, &one).unwrap();
        if n <= 3 {
            assert_eq!(d as u32, decompose(&iterate_formula(&f, n).unwrap()).depth_at(&one));
        }
        println!("d_[1:1](f^{n}) = {d}");
    }
}
